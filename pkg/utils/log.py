"""
Logging setup shared by the API and the CLI
"""

import logging

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def configure_logging(level='INFO'):
    """Install a single stream handler on the root logger.

    Safe to call more than once; the level is updated and no handler is duplicated.
    """
    root = logging.getLogger()
    if not any(getattr(h, '_fma_handler', False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._fma_handler = True
        root.addHandler(handler)
    root.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    return root
