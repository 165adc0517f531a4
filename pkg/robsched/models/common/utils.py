"""
Utility functions.
"""
import json
import logging
import os

logger = logging.getLogger('robsched')

LOGGING_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'WARN', 'ERROR', 'CRITICAL', 'FATAL']


def ensure_dir(d, verbose=True):
    if d and not os.path.exists(d):
        if verbose:
            logger.info("Directory {} does not exist; creating...".format(d))
        os.makedirs(d)


def load_config(path, verbose=True):
    with open(path) as f:
        config = json.load(f)
    if verbose:
        logger.info("Config loaded from file {}".format(path))
    return config


def set_logging_level(logging_level, verbose=None):
    # Check verbose for easy logging control
    if verbose == False:
        logging_level = 'ERROR'
    elif verbose == True:
        logging_level = 'INFO'

    # Set logging level
    logging_level = logging_level.upper()
    if logging_level not in LOGGING_LEVELS:
        raise ValueError(
            f"Unrecognized logging level: "
            f"{logging_level}. Must be one of {', '.join(LOGGING_LEVELS)}."
        )
    logger.setLevel(logging_level)
    return logging_level
