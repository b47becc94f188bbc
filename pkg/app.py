"""
Model averaging API
Flask application exposing weight selection and averaged prediction
"""

from flask import Flask, jsonify
from flask_cors import CORS
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from config import Config
from routes import api_bp
from utils.log import configure_logging


def create_app(config_class=Config):
    """Application factory pattern"""
    app = Flask(__name__)
    app.config.from_object(config_class)

    configure_logging(app.config.get('LOG_LEVEL', 'INFO'))

    CORS(app,
         origins=app.config.get('CORS_ORIGINS', []),
         methods=['GET', 'POST', 'OPTIONS'],
         allow_headers=['Content-Type'])

    # Register blueprints
    app.register_blueprint(api_bp, url_prefix='/api')

    @app.route('/health')
    def health():
        """Health check endpoint"""
        return jsonify({'status': 'ok', 'message': 'Model averaging API is running'})

    return app


if __name__ == '__main__':
    create_app().run(debug=True)
