# Scenarios package
