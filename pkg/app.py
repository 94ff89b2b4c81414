import logging

from conic_ldpc import create_app, socketio
from conic_ldpc.config import load_settings

app = create_app()
library_logger = logging.getLogger("conic_ldpc")


if __name__ != "__main__":
    gunicorn_logger = logging.getLogger("gunicorn.error")
    for logger in (app.logger, library_logger):
        logger.handlers = gunicorn_logger.handlers
        logger.setLevel(gunicorn_logger.level)

if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    app.logger.info("Simulation settings: %s", load_settings())
    socketio.run(app, debug=True)
