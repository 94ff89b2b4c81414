"""Sum-product decoding on the AWGN channel and bit error rate campaigns.

Frames are decoded in batches: messages live in a ``(frames, edges)`` array
and the per-check and per-bit sums are sparse matrix products with 0/1
gather matrices. Simulations send the all-zero codeword with BPSK
(0 -> +1, 1 -> -1).
"""

import json
import logging
import math
from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.sparse

from .config import DEFAULT_BATCH_SIZE, DEFAULT_MAX_ITER, DEFAULT_THREADS
from .exceptions import (
    ChannelRateError,
    InvalidDivisibilityError,
    InvalidIterationsError,
    LengthMismatchError,
)
from .gf2 import SparseBinaryMatrix, code_dimension

logger = logging.getLogger(__name__)

LLR_CLAMP = 30.0
TANH_EPSILON = 1e-12
_PRODUCT_LIMIT = 1.0 - 1e-15
_GALLAGER_ATTEMPTS = 100

CSV_COLUMNS = (
    "eb_n0_db",
    "trials",
    "bit_errors",
    "frame_errors",
    "ber",
    "fer",
    "avg_iters",
)


@dataclass(frozen=True)
class ChannelPoint:
    """An operating point of the BPSK/AWGN channel.

    Args:
        eb_n0_db (float): Energy per information bit over noise density, dB.
        rate (float): Code rate k/n.
    """

    eb_n0_db: float
    rate: float

    def __post_init__(self) -> None:
        """Checks the rate.

        Raises:
            ChannelRateError: If the rate is not in (0, 1).
        """
        if not 0.0 < self.rate < 1.0:
            raise ChannelRateError(self.rate)

    @property
    def sigma(self) -> float:
        """Noise standard deviation per BPSK symbol."""
        return math.sqrt(1.0 / (2.0 * self.rate * 10.0 ** (self.eb_n0_db / 10.0)))


@dataclass(frozen=True)
class DecodeResult:
    bits: np.ndarray
    converged: bool
    iterations: int


@dataclass(frozen=True)
class GallagerSpec:
    """Parameters of a regular Gallager code.

    Args:
        n (int): Length, a multiple of ``row_weight``.
        row_weight (int): Ones per row.
        col_weight (int): Ones per column, the number of bands.
        seed (int): Seed of the band permutations.
    """

    n: int
    row_weight: int
    col_weight: int
    seed: int = 0


@dataclass
class PointResult:
    """Counters of one Eb/N0 point.

    Args:
        eb_n0_db (float): The operating point.
        n (int): Code length.
        trials (int): Frames decoded.
        bit_errors (int): Wrong bits over all frames.
        frame_errors (int): Frames with at least one wrong bit.
        iterations (int): Decoder iterations summed over all frames.
    """

    eb_n0_db: float
    n: int
    trials: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    iterations: int = 0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.trials * self.n) if self.trials else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.trials if self.trials else 0.0

    @property
    def avg_iters(self) -> float:
        return self.iterations / self.trials if self.trials else 0.0

    def to_row(self) -> dict:
        """The CSV row of this point."""
        return {
            "eb_n0_db": self.eb_n0_db,
            "trials": self.trials,
            "bit_errors": self.bit_errors,
            "frame_errors": self.frame_errors,
            "ber": self.ber,
            "fer": self.fer,
            "avg_iters": self.avg_iters,
        }


@dataclass
class SimulationResult:
    """A bit error rate curve.

    Args:
        n (int): Code length.
        rate (float): Code rate used for the noise level.
        points (list[PointResult]): One entry per Eb/N0 point.
        run_config (dict): Everything needed to replay the run.
    """

    n: int
    rate: float
    points: list[PointResult] = field(default_factory=list)
    run_config: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for point in self.points:
            row = point.to_row()
            lines.append(",".join(_csv_value(row[column]) for column in CSV_COLUMNS))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "rate": self.rate,
                "run_config": self.run_config,
                "points": [point.to_row() for point in self.points],
            },
            indent=2,
        )


def _csv_value(value: float) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


# ---- Decoder ----------------------------------------------------------------


class SumProductDecoder:
    """Flooding log-domain sum-product decoder for one parity-check matrix.

    Args:
        matrix (SparseBinaryMatrix): Parity-check matrix, rows are checks.
    """

    def __init__(self, matrix: SparseBinaryMatrix) -> None:
        """Builds the edge gather matrices."""
        self.matrix = matrix
        self.n = matrix.n_cols
        n_edges = matrix.nnz
        self._edge_checks = np.repeat(np.arange(matrix.n_rows), matrix.row_weights())
        self._edge_vars = matrix.indices
        ones = np.ones(n_edges)
        edges = np.arange(n_edges)
        self._check_gather = scipy.sparse.csr_matrix(
            (ones, (self._edge_checks, edges)), shape=(matrix.n_rows, n_edges)
        )
        self._var_gather = scipy.sparse.csr_matrix(
            (ones, (self._edge_vars, edges)), shape=(self.n, n_edges)
        )
        self._checks = matrix.to_csr(np.int64)

    def _check_update(self, v2c: np.ndarray) -> np.ndarray:
        t = np.tanh(v2c / 2.0)
        log_mag = np.log(np.maximum(np.abs(t), TANH_EPSILON))
        negative = (t < 0).astype(np.float64)
        mag_sum = (self._check_gather @ log_mag.T).T
        neg_sum = (self._check_gather @ negative.T).T
        extrinsic = np.exp(mag_sum[:, self._edge_checks] - log_mag)
        parity = (neg_sum[:, self._edge_checks] - negative) % 2
        product = np.where(parity > 0.5, -extrinsic, extrinsic)  # noqa: PLR2004
        product = np.clip(product, -_PRODUCT_LIMIT, _PRODUCT_LIMIT)
        return np.clip(2.0 * np.arctanh(product), -LLR_CLAMP, LLR_CLAMP)

    def _syndrome_ok(self, hard: np.ndarray) -> np.ndarray:
        syndrome = (self._checks @ hard.T.astype(np.int64)) % 2
        return ~np.any(syndrome, axis=0)

    def decode_batch(
        self, llr: np.ndarray, max_iter: int = DEFAULT_MAX_ITER
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Decodes a batch of frames.

        Each frame stops as soon as its hard decision satisfies every check.

        Args:
            llr (np.ndarray): ``(frames, n)`` channel log-likelihood ratios,
                positive favouring 0.
            max_iter (int): Iteration cap.

        Returns:
            tuple[np.ndarray, np.ndarray, np.ndarray]: Hard decisions
            ``(frames, n)``, convergence flags and iteration counts.

        Raises:
            LengthMismatchError: If the frames do not have n values.
            InvalidIterationsError: If ``max_iter`` is below 1.
        """
        llr = np.atleast_2d(np.asarray(llr, dtype=np.float64))
        if llr.shape[1] != self.n:
            raise LengthMismatchError(self.n, llr.shape[1])
        if max_iter < 1:
            raise InvalidIterationsError(max_iter)

        frames = llr.shape[0]
        llr = np.clip(llr, -LLR_CLAMP, LLR_CLAMP)
        bits = (llr < 0).astype(np.uint8)
        converged = np.zeros(frames, dtype=bool)
        iterations = np.zeros(frames, dtype=np.int64)

        active = np.arange(frames)
        channel = llr
        v2c = channel[:, self._edge_vars]
        for iteration in range(1, max_iter + 1):
            c2v = self._check_update(v2c)
            total = channel + (self._var_gather @ c2v.T).T
            hard = (total < 0).astype(np.uint8)
            done = self._syndrome_ok(hard)

            bits[active] = hard
            iterations[active] = iteration
            converged[active[done]] = True

            keep = ~done
            if not keep.any():
                break
            active, channel = active[keep], channel[keep]
            v2c = np.clip(
                total[keep][:, self._edge_vars] - c2v[keep], -LLR_CLAMP, LLR_CLAMP
            )
        return bits, converged, iterations

    def decode(self, llr: np.ndarray, max_iter: int = DEFAULT_MAX_ITER) -> DecodeResult:
        bits, converged, iterations = self.decode_batch(
            np.asarray(llr, dtype=np.float64).reshape(1, -1), max_iter
        )
        return DecodeResult(bits[0], bool(converged[0]), int(iterations[0]))


def sum_product_decode(
    matrix: SparseBinaryMatrix, llr: np.ndarray, max_iter: int = DEFAULT_MAX_ITER
) -> DecodeResult:
    """Decodes one frame.

    Args:
        matrix (SparseBinaryMatrix): Parity-check matrix.
        llr (np.ndarray): Channel LLRs, one per column.
        max_iter (int): Iteration cap, at least 1.

    Returns:
        DecodeResult: Hard decision, whether every check is satisfied, and
        the number of iterations run.

    Raises:
        LengthMismatchError: If ``llr`` does not have one value per column.
        InvalidIterationsError: If ``max_iter`` is below 1.
    """
    llr = np.asarray(llr, dtype=np.float64)
    if llr.ndim != 1 or llr.size != matrix.n_cols:
        raise LengthMismatchError(matrix.n_cols, llr.size)
    return SumProductDecoder(matrix).decode(llr, max_iter)


# ---- Simulation -------------------------------------------------------------


def code_rate(matrix: SparseBinaryMatrix) -> float:
    """Dimension over length of the code of ``matrix``."""
    return code_dimension(matrix) / matrix.n_cols


def _batch_rng(seed: int, point_index: int, batch_index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence((seed, point_index, batch_index)))
    )


def _run_batch(
    decoder: SumProductDecoder,
    sigma: float,
    size: int,
    max_iter: int,
    rng: np.random.Generator,
) -> tuple[int, int, int, int]:
    received = 1.0 + sigma * rng.standard_normal((size, decoder.n))
    bits, _, iterations = decoder.decode_batch(2.0 * received / sigma**2, max_iter)
    wrong = bits.sum(axis=1)
    return size, int(wrong.sum()), int(np.count_nonzero(wrong)), int(iterations.sum())


def iter_simulation(  # noqa: PLR0913
    matrix: SparseBinaryMatrix,
    snr_points: Sequence[ChannelPoint],
    *,
    min_trials: int = 10_000,
    max_trials: int = 100_000,
    target_errors: int = 100,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    batch_size: int = DEFAULT_BATCH_SIZE,
    workers: int = DEFAULT_THREADS,
) -> Iterator[PointResult]:
    """Simulates each point in turn, yielding its counters when it finishes.

    A point stops once it has ``max_trials`` frames, or at least
    ``min_trials`` frames and ``target_errors`` frame errors. Batch ``j`` of
    point ``i`` draws its noise from ``PCG64(SeedSequence((seed, i, j)))``
    and batches are accounted in order, so results do not depend on
    ``workers``.

    Yields:
        PointResult: The finished point.
    """
    decoder = SumProductDecoder(matrix)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for point_index, point in enumerate(snr_points):
            sigma = point.sigma
            result = PointResult(point.eb_n0_db, matrix.n_cols)
            batch_index = 0
            scheduled = 0
            finished = False
            while not finished:
                sizes = []
                while len(sizes) < workers and scheduled < max_trials:
                    size = min(batch_size, max_trials - scheduled)
                    sizes.append(size)
                    scheduled += size
                if not sizes:
                    break
                futures = [
                    pool.submit(
                        _run_batch,
                        decoder,
                        sigma,
                        size,
                        max_iter,
                        _batch_rng(seed, point_index, batch_index + k),
                    )
                    for k, size in enumerate(sizes)
                ]
                batch_index += len(sizes)
                for future in futures:
                    trials, bit_errors, frame_errors, iterations = future.result()
                    result.trials += trials
                    result.bit_errors += bit_errors
                    result.frame_errors += frame_errors
                    result.iterations += iterations
                    logger.debug(
                        "%.2f dB: %d frames, %d frame errors",
                        point.eb_n0_db,
                        result.trials,
                        result.frame_errors,
                    )
                    if result.trials >= max_trials or (
                        result.trials >= min_trials
                        and result.frame_errors >= target_errors
                    ):
                        finished = True
                        break
            logger.info(
                "%.2f dB: BER %.3e, FER %.3e over %d frames",
                point.eb_n0_db,
                result.ber,
                result.fer,
                result.trials,
            )
            yield result


def simulate_ber(  # noqa: PLR0913
    matrix: SparseBinaryMatrix,
    snr_points: Sequence[ChannelPoint],
    *,
    min_trials: int = 10_000,
    max_trials: int = 100_000,
    target_errors: int = 100,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    batch_size: int = DEFAULT_BATCH_SIZE,
    workers: int = DEFAULT_THREADS,
    run_config: dict | None = None,
) -> SimulationResult:
    """Measures the bit and frame error rates of a code.

    Args:
        matrix (SparseBinaryMatrix): Parity-check matrix.
        snr_points (Sequence[ChannelPoint]): Operating points.
        min_trials (int): Frames simulated at least per point.
        max_trials (int): Frames simulated at most per point.
        target_errors (int): Frame errors after which a point may stop.
        max_iter (int): Decoder iteration cap.
        seed (int): Root seed.
        batch_size (int): Frames decoded together.
        workers (int): Threads decoding batches.
        run_config (dict | None): Stored with the result for replay.

    Returns:
        SimulationResult: The curve.
    """
    rate = snr_points[0].rate if snr_points else 0.0
    points = list(
        iter_simulation(
            matrix,
            snr_points,
            min_trials=min_trials,
            max_trials=max_trials,
            target_errors=target_errors,
            max_iter=max_iter,
            seed=seed,
            batch_size=batch_size,
            workers=workers,
        )
    )
    return SimulationResult(matrix.n_cols, rate, points, dict(run_config or {}))


# ---- Gallager baselines -----------------------------------------------------


def _duplicate_columns(bands: np.ndarray) -> bool:
    # Column j is identified by its row in each band.
    signatures = np.unique(bands.T, axis=0)
    return signatures.shape[0] < bands.shape[1]


def gallager_code(spec: GallagerSpec) -> SparseBinaryMatrix:
    """Regular Gallager parity-check matrix.

    The first band has ``n / row_weight`` rows of ``row_weight`` consecutive
    ones; each further band is a random column permutation of it. Draws
    with two identical columns are redrawn when enough distinct columns
    exist.

    Args:
        spec (GallagerSpec): Parameters and seed.

    Returns:
        SparseBinaryMatrix: A ``(n * col_weight / row_weight) x n`` matrix with
        every row of weight ``row_weight`` and column of weight ``col_weight``.

    Raises:
        InvalidDivisibilityError: If ``n`` is not a multiple of ``row_weight``.
    """
    n, row_weight, col_weight = spec.n, spec.row_weight, spec.col_weight
    if row_weight < 1 or col_weight < 1 or n % row_weight:
        raise InvalidDivisibilityError(n, row_weight)
    rows_per_band = n // row_weight
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    base = np.arange(n) // row_weight
    can_be_distinct = rows_per_band**col_weight >= n

    for _ in range(_GALLAGER_ATTEMPTS):
        # bands[k, j] is the row, within band k, holding column j.
        bands = np.vstack(
            [base] + [base[rng.permutation(n)] for _ in range(col_weight - 1)]
        )
        if not can_be_distinct or not _duplicate_columns(bands):
            break
    if _duplicate_columns(bands):
        logger.warning(
            "Gallager code n=%d, row=%d, col=%d has duplicate columns",
            n,
            row_weight,
            col_weight,
        )

    rows = (bands + rows_per_band * np.arange(col_weight)[:, None]).ravel()
    cols = np.tile(np.arange(n), col_weight)
    return SparseBinaryMatrix.from_entries(rows_per_band * col_weight, n, rows, cols)


@dataclass(frozen=True)
class Campaign:
    """A named comparison: a conic code against Gallager baselines.

    Args:
        family (int): Conic family.
        q (int): Field order.
        max_iter (int): Decoder iteration cap.
        baselines (tuple[GallagerSpec, ...]): Comparison codes.
    """

    family: int
    q: int
    max_iter: int
    baselines: tuple[GallagerSpec, ...]

    def to_dict(self) -> dict:
        return asdict(self)


PRESETS = {
    "c38": Campaign(3, 8, 50, (GallagerSpec(576, 9, 6), GallagerSpec(580, 10, 6))),
    "c113": Campaign(
        1,
        13,
        500,
        (
            GallagerSpec(2196, 12, 7),
            GallagerSpec(2197, 13, 7),
            GallagerSpec(2198, 14, 8),
        ),
    ),
    "c216": Campaign(
        2, 16, 500, (GallagerSpec(3840, 15, 7), GallagerSpec(3840, 16, 8))
    ),
}
