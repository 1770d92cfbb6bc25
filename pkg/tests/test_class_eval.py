import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcrade.class_eval import (
    EvaluationMatrix,
    SignMatrix,
    class_stats,
    counter_signs,
    mcera,
    read_csv,
    to_csv,
)
from mcrade.errors import CSVFormatError, DimensionError, ValidationError


def naive_mcera(values, signs):
    """Triple loop, no vectorisation."""
    n, m = len(signs), len(values)
    K = len(values[0])
    total = 0.0
    for j in range(n):
        best = 0.0
        for k in range(K):
            corr = sum(signs[j][i] * values[i][k] for i in range(m)) / m
            best = max(best, corr)
        total += best
    return total / n


def test_zero_column_appended_once():
    ev = EvaluationMatrix([[0.5], [1.0]], 0, 1)
    assert ev.f0_inserted and ev.K == 2
    ev2 = EvaluationMatrix([[0.0, 0.5], [0.0, 1.0]], 0, 1)
    assert not ev2.f0_inserted and ev2.K == 2


def test_values_are_read_only():
    ev = EvaluationMatrix([[0.5], [1.0]], 0, 1)
    with pytest.raises(ValueError):
        ev.values[0, 0] = 0.0


def test_out_of_range_entry_names_position():
    with pytest.raises(ValidationError, match="row 1, column 0"):
        EvaluationMatrix([[0.5], [1.5]], 0, 1)


@pytest.mark.parametrize("a,b", [(0.0, 0.0), (0.1, 1.0), (-1.0, -0.5)])
def test_bad_range(a, b):
    with pytest.raises(ValidationError):
        EvaluationMatrix([[0.0]], a, b)


def test_non_finite_rejected():
    with pytest.raises(ValidationError):
        EvaluationMatrix([[np.nan]], 0, 1)


def test_range_constants():
    ev = EvaluationMatrix([[-0.5, 0.3]], -2, 1)
    assert ev.c == 3.0 and ev.z == 2.0
    neg = ev.negated()
    assert (neg.a, neg.b) == (-1.0, 2.0)
    assert ev.scaled(0.5).b == 0.5


def test_mcera_trivial_class_is_zero():
    ev = EvaluationMatrix(np.zeros((4, 1)), 0, 1)
    assert mcera(ev, SignMatrix.generate(3, 4, 0)) == 0.0


def test_mcera_two_point_example():
    ev = EvaluationMatrix([[1.0], [1.0]], 0, 1)
    # sup over {0, (s1+s2)/2}: only (+,+) contributes 1
    vals = [mcera(ev, np.array([s])) for s in itertools.product((-1, 1), repeat=2)]
    assert sorted(vals) == [0.0, 0.0, 0.0, 1.0]


def test_mcera_dimension_mismatch_names_shapes():
    ev = EvaluationMatrix(np.zeros((4, 2)), 0, 1)
    with pytest.raises(DimensionError, match=r"\(2, 3\)"):
        mcera(ev, np.ones((2, 3)))


def test_sign_matrix_rejects_zero():
    with pytest.raises(ValidationError):
        SignMatrix(np.array([[1, 0]]))


def test_counter_signs_submatrix_matches():
    full = counter_signs(11, np.arange(6), np.arange(9))
    part = counter_signs(11, np.array([2, 5]), np.array([0, 7, 8]))
    assert np.array_equal(part, full[np.ix_([2, 5], [0, 7, 8])])


def test_counter_signs_roughly_balanced():
    s = counter_signs(3, np.arange(200), np.arange(500))
    assert abs(s.mean()) < 0.02
    assert not np.array_equal(s, counter_signs(4, np.arange(200), np.arange(500)))


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    m=st.integers(1, 7),
    K=st.integers(1, 4),
    n=st.integers(1, 5),
)
def test_mcera_matches_naive(seed, m, K, n):
    rng = np.random.default_rng(seed)
    ev = EvaluationMatrix(rng.uniform(-0.5, 1.0, (m, K)), -0.5, 1.0)
    sigma = SignMatrix.generate(n, m, seed)
    expect = naive_mcera(ev.values.tolist(), sigma.signs.tolist())
    assert mcera(ev, sigma) == pytest.approx(expect, rel=1e-12, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 8), K=st.integers(1, 5))
def test_stats_match_naive_and_sandwich(seed, m, K):
    rng = np.random.default_rng(seed)
    ev = EvaluationMatrix(rng.uniform(-1.0, 2.0, (m, K)), -1.0, 2.0)
    s = class_stats(ev)
    v = ev.values.tolist()
    cols = list(zip(*v))
    assert s.z_hat == max(abs(x) for row in v for x in row)
    assert s.nu_hat == pytest.approx(max(sum(abs(x) for x in col) / m for col in cols))
    assert s.wvar_hat == pytest.approx(max(sum(x * x for x in col) / m for col in cols))
    assert s.eta_hat == pytest.approx(max(sum(col) / m for col in cols) + 1.0)
    assert s.gamma_hat == pytest.approx(2.0 - min(sum(col) / m for col in cols))
    # MCERA <= nu_hat <= z_hat and wvar_hat <= z_hat**2
    mc = mcera(ev, SignMatrix.generate(3, m, seed))
    assert mc <= s.nu_hat + 1e-12 and s.nu_hat <= s.z_hat + 1e-12
    assert s.wvar_hat <= s.z_hat**2 + 1e-12


def test_stats_trivial_pair():
    s = class_stats(EvaluationMatrix([[1.0], [1.0]], 0, 1))
    # gamma_hat is measured from the smallest mean, here that of the zero function
    assert (s.z_hat, s.nu_hat, s.wvar_hat, s.eta_hat, s.gamma_hat) == (1, 1, 1, 1, 1)


def test_stats_zero_class():
    s = class_stats(EvaluationMatrix(np.zeros((3, 1)), 0, 1))
    assert (s.z_hat, s.nu_hat, s.wvar_hat, s.eta_hat, s.gamma_hat) == (0, 0, 0, 0, 1)


def test_gamma_hat_is_eta_hat_of_negated_class():
    rng = np.random.default_rng(2)
    ev = EvaluationMatrix(rng.uniform(-0.5, 1.0, (6, 3)), -0.5, 1.0)
    assert class_stats(ev).gamma_hat == pytest.approx(class_stats(ev.negated()).eta_hat, abs=1e-15)


def test_csv_round_trip():
    rng = np.random.default_rng(5)
    ev = EvaluationMatrix(rng.uniform(0, 1, (5, 3)), 0, 1, ("f1", "f2", "f3"))
    back = read_csv(to_csv(ev))
    assert np.array_equal(back.values, ev.values)
    assert back.names == ev.names


def test_csv_missing_header():
    with pytest.raises(CSVFormatError, match="line 1.*#range"):
        read_csv("0.1,0.2\n")


def test_csv_bad_token_location():
    with pytest.raises(CSVFormatError, match="line 3, column 2"):
        read_csv("#range,0,1\n0.1,0.2\n0.3,abc\n")


def test_csv_ragged_row():
    with pytest.raises(CSVFormatError, match="line 3"):
        read_csv("#range,0,1\n0.1,0.2\n0.3\n")
