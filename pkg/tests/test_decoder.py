import csv
import io
import json

import numpy as np
import pytest
from scipy.stats import binomtest

from conic_ldpc.codewords import random_codewords
from conic_ldpc.decoder import (
    CSV_COLUMNS,
    PRESETS,
    ChannelPoint,
    GallagerSpec,
    SumProductDecoder,
    code_rate,
    gallager_code,
    iter_simulation,
    simulate_ber,
    sum_product_decode,
)
from conic_ldpc.exceptions import (
    ChannelRateError,
    InvalidDivisibilityError,
    InvalidIterationsError,
    LengthMismatchError,
)
from conic_ldpc.ffield import field_new
from conic_ldpc.gf2 import SparseBinaryMatrix, code_dimension
from conic_ldpc.incidence import build_structure, incidence_matrix

CLEAN_LLR = 10.0
NOISY_LLR = 4.0
HIGH_SNR_TRIALS = 10_000
CROSSOVER_SNRS = (4.0, 4.5, 5.0)
CONFIDENCE = 0.95


@pytest.fixture(scope="module")
def matrix():
    return incidence_matrix(build_structure(1, field_new(5)))


@pytest.fixture(scope="module")
def rate(matrix):
    return code_rate(matrix)


def _llr(words, magnitude):
    return magnitude * (1.0 - 2.0 * words.astype(np.float64))


def test_sigma():
    assert ChannelPoint(0.0, 0.5).sigma == pytest.approx(1.0)
    assert ChannelPoint(10.0, 0.5).sigma == pytest.approx(np.sqrt(0.1))


@pytest.mark.parametrize("bad_rate", [0.0, 1.0, -0.5, 1.5])
def test_channel_rate_error(bad_rate):
    with pytest.raises(ChannelRateError):
        ChannelPoint(1.0, bad_rate)


def test_code_rate(matrix):
    assert code_rate(matrix) == pytest.approx(44 / 125)


@pytest.mark.parametrize("family", [1, 2, 3])
def test_noiseless_codewords_decode_at_once(family):
    code = incidence_matrix(build_structure(family, field_new(5)))
    words = random_codewords(code, 100, np.random.default_rng(3))
    assert words.any()
    bits, converged, iterations = SumProductDecoder(code).decode_batch(
        _llr(words, CLEAN_LLR)
    )
    assert np.array_equal(bits, words)
    assert converged.all()
    assert set(iterations.tolist()) == {1}


def test_single_error_is_corrected(matrix):
    word = random_codewords(matrix, 1, np.random.default_rng(5))[0]
    llr = _llr(word, NOISY_LLR)
    llr[17] = -llr[17]
    result = sum_product_decode(matrix, llr)
    assert result.converged
    assert np.array_equal(result.bits, word)


def test_decoder_argument_errors(matrix):
    with pytest.raises(LengthMismatchError):
        sum_product_decode(matrix, np.zeros(3))
    with pytest.raises(InvalidIterationsError):
        sum_product_decode(matrix, np.ones(matrix.n_cols), max_iter=0)
    with pytest.raises(LengthMismatchError):
        SumProductDecoder(matrix).decode_batch(np.ones((2, 4)))


def test_high_snr_has_no_errors(matrix, rate):
    result = simulate_ber(
        matrix,
        [ChannelPoint(20.0, rate)],
        min_trials=HIGH_SNR_TRIALS,
        max_trials=HIGH_SNR_TRIALS,
        target_errors=1,
    )
    (point,) = result.points
    assert point.trials == HIGH_SNR_TRIALS
    assert point.bit_errors == point.frame_errors == 0
    assert point.ber == 0.0
    assert point.avg_iters == pytest.approx(1.0)


def test_results_do_not_depend_on_workers(matrix, rate):
    points = [ChannelPoint(snr, rate) for snr in (1.0, 2.0)]
    options = {"min_trials": 256, "max_trials": 1024, "target_errors": 10, "seed": 9}
    single = [p.to_row() for p in iter_simulation(matrix, points, **options)]
    threaded = [
        p.to_row() for p in iter_simulation(matrix, points, workers=3, **options)
    ]
    assert single == threaded


def test_point_stops_on_frame_errors(matrix, rate):
    result = simulate_ber(
        matrix,
        [ChannelPoint(-3.0, rate)],
        min_trials=64,
        max_trials=10_000,
        target_errors=5,
        batch_size=64,
    )
    assert result.points[0].trials == 64
    assert result.points[0].frame_errors >= 5


def test_point_stops_at_max_trials(matrix, rate):
    result = simulate_ber(
        matrix,
        [ChannelPoint(20.0, rate)],
        min_trials=10,
        max_trials=200,
        target_errors=1,
        batch_size=64,
    )
    assert result.points[0].trials == 200


def test_outputs(matrix, rate):
    result = simulate_ber(
        matrix,
        [ChannelPoint(snr, rate) for snr in (0.0, 1.0)],
        min_trials=64,
        max_trials=64,
        run_config={"family": 1, "q": 5},
    )
    rows = list(csv.DictReader(io.StringIO(result.to_csv())))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [float(row["eb_n0_db"]) for row in rows] == [0.0, 1.0]
    assert all(int(row["trials"]) == 64 for row in rows)
    data = json.loads(result.to_json())
    assert data["n"] == 125
    assert data["run_config"] == {"family": 1, "q": 5}
    assert len(data["points"]) == 2


@pytest.mark.parametrize("n, row, col", [(576, 9, 6), (580, 10, 6), (60, 5, 3)])
def test_gallager_code(n, row, col):
    spec = GallagerSpec(n, row, col, seed=2)
    code = gallager_code(spec)
    checks = n * col // row
    assert code.shape == (checks, n)
    assert set(code.row_weights().tolist()) == {row}
    assert set(code.col_weights().tolist()) == {col}
    assert len(set(code.transpose().rows)) == n
    # Every band sums to the all-ones word.
    assert code_dimension(code) >= n - checks + col - 1
    assert code == gallager_code(spec)


def test_gallager_divisibility():
    with pytest.raises(InvalidDivisibilityError):
        gallager_code(GallagerSpec(100, 7, 3))


def test_presets():
    assert set(PRESETS) == {"c38", "c113", "c216"}
    for campaign in PRESETS.values():
        for baseline in campaign.baselines:
            assert baseline.n % baseline.row_weight == 0
    assert PRESETS["c38"].to_dict()["baselines"][0] == {
        "n": 576,
        "row_weight": 9,
        "col_weight": 6,
        "seed": 0,
    }


def test_negated_llrs_flip_decisions():
    # Every check of C(2,5) has even weight, so the all-ones word is a codeword.
    even = incidence_matrix(build_structure(2, field_new(5)))
    llr = np.random.default_rng(11).normal(1.0, 1.5, size=even.n_cols)
    result = sum_product_decode(even, llr)
    flipped = sum_product_decode(even, -llr)
    assert np.array_equal(flipped.bits, 1 - result.bits)
    assert flipped.iterations == result.iterations
    assert flipped.converged == result.converged


def test_stuck_word_reports_no_convergence():
    # One odd check over three bits: every update returns the same posterior
    # -4 + 2 atanh(tanh(2)^2) < 0, so the all-ones decision never satisfies it.
    odd = SparseBinaryMatrix.from_rows([(0, 1, 2)], 3)
    result = sum_product_decode(odd, np.full(3, -4.0), max_iter=5)
    assert result.converged is False
    assert result.iterations == 5
    assert result.bits.tolist() == [1, 1, 1]


def test_ber_decreases_with_snr(matrix, rate):
    result = simulate_ber(
        matrix,
        [ChannelPoint(snr, rate) for snr in (1.0, 3.0, 5.0)],
        min_trials=2000,
        max_trials=2000,
        seed=4,
    )
    bers = [point.ber for point in result.points]
    assert bers == sorted(bers, reverse=True)
    assert bers[0] > bers[-1]


def test_tiny_gallager_code():
    code = gallager_code(GallagerSpec(6, 3, 2))
    assert code.shape == (4, 6)
    assert code.rows[:2] == [(0, 1, 2), (3, 4, 5)]
    assert set(code.col_weights().tolist()) == {2}


def _ber_interval(point):
    test = binomtest(point.bit_errors, point.trials * point.n)
    return test.proportion_ci(confidence_level=CONFIDENCE)


def _crossover_curves(trials):
    campaign = PRESETS["c38"]
    conic = incidence_matrix(build_structure(campaign.family, field_new(campaign.q)))
    gallager = gallager_code(campaign.baselines[0])
    options = {
        "min_trials": trials,
        "max_trials": trials,
        "max_iter": campaign.max_iter,
        "seed": 7,
    }
    curves = []
    for code in (conic, gallager):
        points = [ChannelPoint(snr, code_rate(code)) for snr in CROSSOVER_SNRS]
        curves.append(simulate_ber(code, points, **options).points)
    return curves


def _separations(conic, gallager):
    """Per point: conic significantly better, Gallager significantly better."""
    separations = []
    for c, g in zip(conic, gallager, strict=True):
        c_ci, g_ci = _ber_interval(c), _ber_interval(g)
        separations.append((c_ci.high < g_ci.low, g_ci.high < c_ci.low))
    return separations


def test_conic_code_is_never_significantly_worse_than_gallager():
    conic, gallager = _crossover_curves(4096)
    assert not any(worse for _, worse in _separations(conic, gallager))


@pytest.mark.slow
def test_conic_code_beats_gallager_baseline():
    conic, gallager = _crossover_curves(100_000)
    separations = _separations(conic, gallager)
    if all(better for better, _ in separations):
        return
    lower = sum(c.ber < g.ber for c, g in zip(conic, gallager, strict=True))
    assert lower > len(CROSSOVER_SNRS) / 2
