from flask import Flask, jsonify
from .config import Config
import logging

def create_app(config_class=Config):
    """Initialize Flask app with configurations and register blueprints."""
    app = Flask(__name__)
    app.config.from_object(config_class)

    logging.basicConfig(level=app.config.get('LOG_LEVEL', 'WARNING'))

    # Root route
    @app.route('/')
    def index():
        return jsonify({
            "name": "fuzzsim API",
            "version": "1.0.0",
            "endpoints": {
                "compute": "/api/compute",
                "check": "/api/check",
                "degree": "/api/degree"
            },
            "status": "online"
        })

    # Handle favicon.ico requests
    @app.route('/favicon.ico')
    def favicon():
        return "", 204  # Return no content

    # Register blueprints
    from .routes.main import main_bp

    app.register_blueprint(main_bp)

    return app
