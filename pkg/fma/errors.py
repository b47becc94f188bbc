"""
Exceptions raised by the model averaging engine
"""


class FMAError(Exception):
    """Base error. Carries the CLI exit code and the HTTP status used by the API."""
    exit_code = 1
    status_code = 500

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self):
        """Convert to the JSON error body returned by the API"""
        body = {'error': self.message, 'type': type(self).__name__}
        for key, value in self.context.items():
            body[key] = value.to_dict() if hasattr(value, 'to_dict') else value
        return body


class DataError(FMAError, ValueError):
    """Malformed input: parse failures, missing columns, shape mismatches"""
    exit_code = 2
    status_code = 400


class CapacityError(DataError):
    """Requested model space is larger than the enumeration guard allows"""


class NumericalError(FMAError, ArithmeticError):
    """Base for failures inside a numerical routine"""
    exit_code = 3
    status_code = 422


class SingularDesignError(NumericalError):
    """Design matrix of a candidate model is rank deficient or ill-conditioned"""

    def __init__(self, message, model=None, condition=None):
        super().__init__(message, model=model, condition=condition)
        self.model = model
        self.condition = condition


class ConvergenceError(NumericalError):
    """Newton / IRLS iteration stopped without meeting the score tolerance"""

    def __init__(self, message, model=None, iterations=None):
        super().__init__(message, model=model, iterations=iterations)
        self.model = model
        self.iterations = iterations


class SeparationError(ConvergenceError):
    """Coefficients diverge: the response is (quasi-)separated by the design"""
