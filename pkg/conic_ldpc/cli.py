"""Command line: build, analyze, verify and simulate conic codes, or serve the API."""

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import create_app, socketio
from .config import Settings, load_settings
from .decoder import PRESETS, ChannelPoint, code_rate, gallager_code, simulate_ber
from .exceptions import USER_ERRORS, RunConfigError
from .gf2 import SparseBinaryMatrix
from .parser import parse_checks, parse_snr_grid, write_alist
from .report import CHECKS, report_matches
from .utils import (
    analyze,
    build_code,
    matrix_summary,
    matrix_to_json,
    resolve_matrix,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3

FORMATS = {
    "build": ("alist", "json"),
    "analyze": ("json",),
    "verify": ("json",),
    "simulate": ("csv", "json"),
}
DEFAULT_CHECKS = "counts,girth,rank"
DEFAULT_SNR = "1:0.5:5"
_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, validated before any work starts.

    Args:
        subcommand (str): ``build``, ``analyze``, ``verify`` or ``simulate``.
        family (int | None): Conic family of a built code.
        q (int | None): Field order of a built code.
        alist (str | None): Path of an alist matrix to simulate.
        gallager (str | None): Gallager spec to simulate.
        preset (str | None): Named campaign to simulate.
        out (str | None): Output path, standard output when omitted.
        format (str): Output format.
        seed (int): Root seed of the simulation.
        snr (tuple[float, ...]): Eb/N0 points in dB.
        checks (tuple[str, ...]): Report checks.
        min_trials (int): Frames simulated at least per point.
        max_trials (int): Frames simulated at most per point.
        target_errors (int): Frame errors after which a point may stop.
        max_iter (int | None): Decoder iteration cap; the preset's or the
            configured default when omitted.
    """

    subcommand: str
    family: int | None = None
    q: int | None = None
    alist: str | None = None
    gallager: str | None = None
    preset: str | None = None
    out: str | None = None
    format: str = "json"
    seed: int = 0
    snr: tuple[float, ...] = ()
    checks: tuple[str, ...] = ()
    min_trials: int = 10_000
    max_trials: int = 100_000
    target_errors: int = 100
    max_iter: int | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """Builds the configuration from parsed arguments.

        Raises:
            ParserInvalidRunSpecError: If the SNR grid or check list is
                malformed.
        """
        values = vars(args)
        snr = values.get("snr")
        checks = values.get("checks")
        return cls(
            subcommand=args.command,
            family=values.get("family"),
            q=values.get("q"),
            alist=values.get("alist"),
            gallager=values.get("gallager"),
            preset=values.get("preset"),
            out=values.get("out"),
            format=values.get("format") or FORMATS[args.command][0],
            seed=values.get("seed", 0),
            snr=tuple(parse_snr_grid(snr)) if snr else (),
            checks=tuple(parse_checks(checks)) if checks else (),
            min_trials=values.get("min_trials", 10_000),
            max_trials=values.get("max_trials", 100_000),
            target_errors=values.get("target_errors", 100),
            max_iter=values.get("max_iter"),
        )

    def validate(self) -> None:
        """Checks the configuration against the subcommand's requirements.

        Raises:
            RunConfigError: On the first violated requirement.
        """
        if self.format not in FORMATS[self.subcommand]:
            reason = f"format must be one of {', '.join(FORMATS[self.subcommand])}"
            raise RunConfigError(self.subcommand, reason)
        built = self.family is not None or self.q is not None
        if self.subcommand != "simulate":
            if self.family is None or self.q is None:
                raise RunConfigError(self.subcommand, "--family and --q are required")
            return
        sources = [built, self.alist is not None]
        sources += [self.gallager is not None, self.preset is not None]
        if sum(sources) != 1 or (built and (self.family is None or self.q is None)):
            reason = "give exactly one of --family/--q, --alist, --gallager, --preset"
            raise RunConfigError(self.subcommand, reason)
        if self.preset is not None and self.out is None:
            raise RunConfigError(self.subcommand, "--preset needs --out")
        if not self.snr:
            raise RunConfigError(self.subcommand, "the SNR grid is empty")
        if not 1 <= self.min_trials <= self.max_trials:
            reason = "trial bounds must satisfy 1 <= min-trials <= max-trials"
            raise RunConfigError(self.subcommand, reason)
        if self.max_iter is not None and self.max_iter < 1:
            raise RunConfigError(self.subcommand, "--max-iter must be at least 1")

    def to_dict(self) -> dict:
        return asdict(self)


# ---- Output -----------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text)


def _labelled(out: str, label: str) -> str:
    path = Path(out)
    return str(path.with_name(f"{path.stem}_{label}{path.suffix}"))


# ---- Subcommands ------------------------------------------------------------


def _cmd_build(config: RunConfig, _: Settings) -> int:
    _, matrix = build_code(config.family, config.q)
    summary = {"family": config.family, "q": config.q, **matrix_summary(matrix)}
    if config.format == "alist":
        text = write_alist(matrix)
    else:
        text = json.dumps(matrix_to_json(matrix)) + "\n"
    _emit(text, config.out)
    if config.out is not None:
        manifest = {**summary, "format": config.format, "file": config.out}
        Path(f"{config.out}.manifest.json").write_text(
            json.dumps(manifest, indent=2) + "\n"
        )
    logger.info("Built C(%d,%d): %d x %d", config.family, config.q, *matrix.shape)
    return EXIT_OK


def _report(config: RunConfig, settings: Settings, checks: list[str]) -> bool:
    entries = list(analyze(config.family, config.q, checks, settings.threads))
    matches = report_matches(entries)
    report = {
        "family": config.family,
        "q": config.q,
        "entries": entries,
        "matches": matches,
    }
    _emit(json.dumps(report, indent=2) + "\n", config.out)
    return matches


def _exit_status(matches: bool) -> int:  # noqa: FBT001
    if matches:
        return EXIT_OK
    sys.stderr.write("Verification failed: a check disagrees with its expectation.\n")
    return EXIT_MISMATCH


def _cmd_analyze(config: RunConfig, settings: Settings) -> int:
    checks = list(config.checks) or parse_checks(DEFAULT_CHECKS)
    return _exit_status(_report(config, settings, checks))


def _cmd_verify(config: RunConfig, settings: Settings) -> int:
    return _exit_status(_report(config, settings, list(CHECKS)))


def _simulate_one(
    config: RunConfig,
    settings: Settings,
    matrix: SparseBinaryMatrix,
    max_iter: int,
    label: str,
) -> str:
    rate = code_rate(matrix)
    points = [ChannelPoint(db, rate) for db in config.snr]
    result = simulate_ber(
        matrix,
        points,
        min_trials=config.min_trials,
        max_trials=config.max_trials,
        target_errors=config.target_errors,
        max_iter=max_iter,
        seed=config.seed,
        batch_size=settings.batch_size,
        workers=settings.threads,
        run_config={**config.to_dict(), "code": label, "max_iter": max_iter},
    )
    if config.format == "json":
        return result.to_json() + "\n"
    return result.to_csv()


def _write_curve(config: RunConfig, text: str, out: str | None) -> None:
    _emit(text, out)
    if out is not None and config.format == "csv":
        Path(f"{out}.run.json").write_text(
            json.dumps(config.to_dict(), indent=2) + "\n"
        )


def _cmd_simulate(config: RunConfig, settings: Settings) -> int:
    if config.preset is None:
        alist = Path(config.alist).read_text() if config.alist else None
        matrix = resolve_matrix(config.family, config.q, alist, config.gallager)
        max_iter = config.max_iter or settings.max_iter
        text = _simulate_one(config, settings, matrix, max_iter, "code")
        _write_curve(config, text, config.out)
        return EXIT_OK

    campaign = PRESETS[config.preset]
    max_iter = config.max_iter or campaign.max_iter
    codes = [
        (
            f"c{campaign.family}_{campaign.q}",
            resolve_matrix(campaign.family, campaign.q),
        )
    ]
    for spec in campaign.baselines:
        label = f"gallager_{spec.n}_{spec.row_weight}_{spec.col_weight}"
        codes.append((label, gallager_code(spec)))
    for label, matrix in codes:
        text = _simulate_one(config, settings, matrix, max_iter, label)
        _write_curve(config, text, _labelled(config.out, label))
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    app = create_app()
    socketio.run(app, host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "build": _cmd_build,
    "analyze": _cmd_analyze,
    "verify": _cmd_verify,
    "simulate": _cmd_simulate,
}


# ---- Argument parsing -------------------------------------------------------


def _add_code_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", type=int, help="conic family: 1, 2 or 3")
    parser.add_argument("--q", type=int, help="field order, a prime power in 4..32")


def build_parser() -> argparse.ArgumentParser:
    """The argument parser of the ``conic-ldpc`` command."""
    parser = argparse.ArgumentParser(
        prog="conic-ldpc", description="LDPC codes from conics over finite fields."
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv DEBUG"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", help="write a parity-check matrix")
    _add_code_arguments(build)
    build.add_argument("--out", help="output path, standard output if omitted")
    build.add_argument("--format", choices=FORMATS["build"])

    analyze_parser = commands.add_parser("analyze", help="report on a code")
    _add_code_arguments(analyze_parser)
    analyze_parser.add_argument(
        "--checks", help=f"comma-separated subset of {','.join(CHECKS)}"
    )
    analyze_parser.add_argument("--out")

    verify = commands.add_parser("verify", help="run every applicable check")
    _add_code_arguments(verify)
    verify.add_argument("--out")

    simulate = commands.add_parser("simulate", help="bit error rate curve")
    _add_code_arguments(simulate)
    simulate.add_argument("--alist", help="path of an alist parity-check matrix")
    simulate.add_argument("--gallager", help="e.g. n=576,row=9,col=6,seed=1")
    simulate.add_argument("--preset", choices=sorted(PRESETS))
    simulate.add_argument("--snr", default=DEFAULT_SNR, help="low:step:high or list")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--min-trials", type=int, default=10_000)
    simulate.add_argument("--max-trials", type=int, default=100_000)
    simulate.add_argument("--target-errors", type=int, default=100)
    simulate.add_argument("--max-iter", type=int)
    simulate.add_argument("--out")
    simulate.add_argument("--format", choices=FORMATS["simulate"])

    serve = commands.add_parser("serve", help="run the web API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=5000)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Runs the command line.

    Args:
        argv (list[str] | None): Arguments, ``sys.argv[1:]`` when omitted.

    Returns:
        int: 0 on success, 2 on a usage error, 3 when ``verify`` finds a
        mismatch.
    """
    args = build_parser().parse_args(argv)
    level = _LOG_LEVELS[min(args.verbose, len(_LOG_LEVELS) - 1)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "serve":
        return _cmd_serve(args)
    try:
        settings = load_settings()
        config = RunConfig.from_args(args)
        config.validate()
        return _COMMANDS[config.subcommand](config, settings)
    except USER_ERRORS as err:
        sys.stderr.write(f"Error: {err.message}\n")
        return EXIT_USAGE
    except OSError as err:
        sys.stderr.write(f"Error: {err}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
