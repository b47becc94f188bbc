"""
Atomic report writing
"""

import json
import logging
import os
import tempfile

import pandas as pd

logger = logging.getLogger(__name__)


def render(payload, rows, fmt):
    """Serialise a report: rows as CSV, or the full payload as JSON"""
    if fmt == 'json':
        return json.dumps(payload, indent=2, allow_nan=True) + '\n'
    return pd.DataFrame(rows).to_csv(index=False, lineterminator='\n')


def write_atomic(path, text):
    """Write text to path via a temp file in the same directory and os.replace"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix='.tmp-', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    logger.info('wrote %s', path)
