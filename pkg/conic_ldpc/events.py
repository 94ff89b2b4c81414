import contextlib
from collections.abc import Iterator

import eventlet
from flask import current_app as app
from flask import request
from flask_socketio import SocketIO

from .config import load_settings
from .decoder import ChannelPoint, PointResult, code_rate, iter_simulation
from .exceptions import USER_ERRORS, ParserInvalidRunSpecError
from .parser import parse_snr_grid
from .utils import resolve_matrix

workers = {}

_SOURCE_KEYS = ("family", "q", "alist", "gallager")
_DEFAULT_SNR = "1:0.5:5"


def _int_option(options: dict, key: str, default: int) -> int:
    value = options.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParserInvalidRunSpecError(key, str(value))
    return value


class _Worker:
    """Worker class that runs a bit error rate simulation in a background thread.

    Args:
        socketio (SocketIO): The socketio object.
        client_id (str): The client's socketio ID.
        options (dict): The matrix source (``family`` and ``q``, ``alist`` or
            ``gallager``), ``snr``, ``seed``, ``min_trials``, ``max_trials``,
            ``target_errors`` and ``max_iter``.
    """

    def __init__(self, socketio: SocketIO, client_id: str, options: dict) -> None:
        """Initializes the Worker instance."""
        self.socketio = socketio
        self.client_id = client_id
        self.options = options if isinstance(options, dict) else {}
        self._switch = True

    def _emit(self, event: str, payload: dict) -> None:
        self.socketio.emit(event, payload, to=self.client_id)
        eventlet.sleep(0.01)

    def _points(self) -> Iterator[PointResult]:
        options = self.options
        settings = load_settings()
        source = {key: options[key] for key in _SOURCE_KEYS if key in options}
        matrix = resolve_matrix(**source)
        rate = code_rate(matrix)
        snr_points = [
            ChannelPoint(db, rate)
            for db in parse_snr_grid(str(options.get("snr", _DEFAULT_SNR)))
        ]
        return iter_simulation(
            matrix,
            snr_points,
            min_trials=_int_option(options, "min_trials", 1_000),
            max_trials=_int_option(options, "max_trials", 10_000),
            target_errors=_int_option(options, "target_errors", 100),
            max_iter=_int_option(options, "max_iter", settings.max_iter),
            seed=_int_option(options, "seed", 0),
            batch_size=settings.batch_size,
            workers=settings.threads,
        )

    def start(self) -> None:
        """Runs the simulation and emits every finished point to the client."""
        self._emit("task", {"status": "running"})

        try:
            for point in self._points():
                if not self._switch:
                    break
                self._emit("point", point.to_row())
        except USER_ERRORS as err:
            self._switch = False
            self._emit("task", {"status": "failed", "message": err.message})
            return
        except Exception as err:
            self._switch = False
            self._emit("task", {"status": "failed", "message": str(err)})
            app.logger.exception("Simulation for client %s failed.", self.client_id)
            return

        if self._switch:
            self.stop()

    def is_running(self) -> bool:
        """Returns whether the simulation is running.

        Returns:
            bool: True if the simulation is running, False otherwise.
        """
        return self._switch

    def stop(self) -> None:
        """Stops the simulation after the current point."""
        self._switch = False
        self._emit("task", {"status": "done"})


def register_events(socketio: SocketIO) -> None:
    """Registers the socketio events for the application.

    Args:
        socketio (SocketIO): The socketio object.
    """

    @socketio.on("connect")
    def on_connect() -> None:
        """Event handler for when a client connects."""
        app.logger.info("Client with IP %s has connected.", request.remote_addr)

    @socketio.on("disconnect")
    def on_disconnect() -> None:
        """Event handler for when a client disconnects."""
        with contextlib.suppress(KeyError):
            del workers[request.sid]
        app.logger.info("Client with IP %s has disconnected.", request.remote_addr)

    @socketio.on("simulate")
    def on_simulate(options: dict) -> None:
        """Event handler for when a client sends a simulate event.
        Starts the simulation in a background thread.

        Args:
            options (dict): Matrix source and simulation parameters.
        """
        worker = _Worker(socketio, request.sid, options)
        workers[request.sid] = worker

        app.logger.info(
            "Starting simulation for client with IP %s.", request.remote_addr
        )
        socketio.start_background_task(worker.start)

        while worker.is_running():
            eventlet.sleep(0.1)

        with contextlib.suppress(KeyError):
            del workers[request.sid]
        app.logger.info(
            "Simulation for client with IP %s has finished.", request.remote_addr
        )

    @socketio.on("stop")
    def on_stop() -> None:
        """Event handler for when a client sends a stop event."""
        if request.sid in workers:
            app.logger.info(
                "Stopping simulation for client with IP %s.", request.remote_addr
            )
            workers[request.sid].stop()
            with contextlib.suppress(KeyError):
                del workers[request.sid]
