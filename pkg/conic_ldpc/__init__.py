from collections.abc import Mapping

from flask import Flask
from flask_socketio import SocketIO

from .config import ENV_PREFIX
from .events import register_events
from .report import Analyzer
from .routes import main
from .utils import analyze, build_code

__all__ = ["Analyzer", "analyze", "build_code", "create_app"]

socketio = SocketIO()


def create_app(config: Mapping | None = None) -> Flask:
    """Creates and configures the Flask application with socketio.

    Args:
        config (Mapping | None): Settings applied on top of the
            ``CONIC_LDPC_*`` environment variables.

    Returns:
        Flask: The configured Flask application.
    """
    app = Flask(__name__)
    app.config.from_prefixed_env(ENV_PREFIX)
    if config is not None:
        app.config.update(config)
    app.register_blueprint(main)
    register_events(socketio)
    socketio.init_app(app)
    return app
