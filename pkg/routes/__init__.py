"""
API routes for the model averaging service
"""

from flask import Blueprint

api_bp = Blueprint('api', __name__)

# Import route modules to register routes
import routes.weights
import routes.candidates
