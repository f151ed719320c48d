# Assessment package
