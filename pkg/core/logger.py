import logging
import os
from datetime import datetime

from core.config import settings

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logger(name=None, level=None, log_dir=None):
    logger = logging.getLogger(name)

    if not logger.handlers:
        logger.setLevel(level or settings.log_level)
        formatter = logging.Formatter(FORMAT)

        log_dir = log_dir or settings.log_dir
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
            label = name or 'supersym'
            handler = logging.FileHandler(os.path.join(log_dir, f'{label}_{datetime.now().strftime("%Y%m%d")}.log'))
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        # stderr only; stdout carries command output
        console = logging.StreamHandler()
        console.setFormatter(formatter)
        logger.addHandler(console)

    return logger
