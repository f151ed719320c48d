"""
Configurazione del logging su file giornaliero e stderr
"""
import logging
import os
import sys
from datetime import datetime
from typing import Optional

from config.settings import LOG_DIR, LOG_LEVEL, DEBUG

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: Optional[str] = None, log_dir: Optional[str] = None) -> None:
    """Configura il root logger: file logs/laserdos_YYYYMMDD.log + stderr.

    stdout resta riservato ai risultati, così l'output della CLI è
    riproducibile byte per byte.
    """
    log_dir = log_dir or LOG_DIR
    if DEBUG:
        level = "DEBUG"
    level = (level or LOG_LEVEL).upper()

    handlers = [logging.StreamHandler(sys.stderr)]
    try:
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(
            os.path.join(log_dir, f"laserdos_{datetime.now().strftime('%Y%m%d')}.log")
        ))
    except OSError as e:
        # Directory non scrivibile: si continua solo su stderr
        print(f"Impossibile creare il file di log in {log_dir}: {e}", file=sys.stderr)

    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
