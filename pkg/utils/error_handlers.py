"""
Decorators mapping engine errors onto HTTP responses and CLI exit codes
"""

import logging
from functools import wraps

import click
from flask import jsonify

from fma.errors import FMAError

logger = logging.getLogger(__name__)


def json_errors(f):
    """
    Decorator for API routes.
    Turns an FMAError into its JSON body with the error's HTTP status.
    """
    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except FMAError as e:
            logger.info('request failed: %s', e.message)
            return jsonify(e.to_dict()), e.status_code

    return decorated_function


def cli_errors(f):
    """
    Decorator for CLI commands.
    Prints the error to stderr and exits with 2 (data) or 3 (numerical).
    """
    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except FMAError as e:
            click.echo(f'Error: {e.message}', err=True)
            raise SystemExit(e.exit_code)

    return decorated_function
