import math

import numpy as np
import pytest

from besovbm import besov
from besovbm.besov import BesovParams
from besovbm.simulate import PathSample, RngSeed, sample_bm
from besovbm.spaces import finite_lq, truncated_lp

SCALAR = finite_lq(1, 2.0)


def constant_path(value, depth=8, space=SCALAR):
    n = 1 << depth
    return PathSample(space, depth, np.full((n + 1, space.dim), float(value)))


def linear_path(depth=12):
    n = 1 << depth
    return PathSample(SCALAR, depth, (np.arange(n + 1) / n)[:, None])


def bm_path(stream, depth=12, sigma=(1.0,), space=SCALAR, seed=314):
    return sample_bm(space, sigma, depth, RngSeed(seed, stream))


# --- L^p norms ---------------------------------------------------------------


@pytest.mark.parametrize("p", [1.0, 2.0, 5.0, math.inf])
def test_lp_norm_constant(p):
    assert besov.lp_norm_path(constant_path(0.7), p) == pytest.approx(0.7, rel=1e-12)


def test_lp_norm_linear():
    path = linear_path()
    tol = 2.0**-path.depth
    assert besov.lp_norm_path(path, 2.0) == pytest.approx(1.0 / math.sqrt(3.0), abs=tol)


def test_lp_norm_zero_path():
    assert besov.lp_norm_path(constant_path(0.0), 2.0) == 0.0


def test_lp_norm_subinterval_alignment():
    path = constant_path(1.0, depth=4)
    assert besov.lp_norm_path(path, 1.0, (0.25, 0.75)) == pytest.approx(0.5 ** (1.0 / 1.0) * 1.0)
    with pytest.raises(ValueError):
        besov.lp_norm_path(path, 1.0, (0.1, 0.9))
    with pytest.raises(ValueError):
        besov.lp_norm_path(path, 1.0, (0.5, 0.25))


# --- dyadic increments --------------------------------------------------------


@pytest.mark.parametrize("n", [1, 3, 6])
@pytest.mark.parametrize("p", [1.0, 2.0, 4.0])
def test_dyadic_increment_linear_closed_form(n, p):
    path = linear_path()
    expected = 2.0**-n * (1.0 - 2.0**-n) ** (1.0 / p)
    assert besov.dyadic_increment_lp(path, n, p) == pytest.approx(expected, rel=1e-12)


def test_dyadic_increment_constant_path():
    assert besov.dyadic_increment_lp(constant_path(3.0), 2, 2.0) == 0.0


def test_dyadic_increment_scale_bounds():
    path = linear_path(depth=6)
    with pytest.raises(ValueError):
        besov.dyadic_increment_lp(path, 0, 2.0)
    with pytest.raises(ValueError):
        besov.dyadic_increment_lp(path, 7, 2.0)


def test_dyadic_increment_bm_mean_near_unit():
    vals = [2.0**4 * besov.dyadic_increment_lp(bm_path(1 + i, depth=16), 8, 2.0) for i in range(200)]
    assert abs(np.mean(vals) - 1.0) < 0.05


# --- Besov seminorm and norm --------------------------------------------------


def test_seminorm_constant_path_zero():
    params = BesovParams(0.5, 2.0, math.inf, 5)
    assert besov.besov_seminorm(constant_path(2.0), params) == 0.0


def test_seminorm_linear_sup_form():
    params = BesovParams(0.5, 2.0, math.inf, 6)
    assert besov.besov_seminorm(linear_path(), params) == pytest.approx(0.5, rel=1e-12)


def test_seminorm_bm_grows_with_cap():
    path = bm_path(3, depth=14)
    vals = [
        besov.besov_seminorm(path, BesovParams(0.5, 2.0, 2.0, n_max)) for n_max in (4, 6, 8)
    ]
    assert vals[0] < vals[1] < vals[2]


def test_besov_norm_zero_path():
    report = besov.besov_norm(constant_path(0.0), BesovParams(0.5, 2.0, math.inf, 4))
    assert report.total == 0.0 and report.lp_part == 0.0 and report.seminorm_part == 0.0


def test_besov_norm_linear_closed_form():
    path = linear_path()
    report = besov.besov_norm(path, BesovParams(0.5, 2.0, math.inf, 6))
    assert report.total == pytest.approx(1.0 / math.sqrt(3.0) + 0.5, abs=2.0**-path.depth)
    assert report.total == pytest.approx(report.lp_part + report.seminorm_part, rel=1e-15)
    assert len(report.per_scale) == 6


def test_besov_norm_bm_finite_every_path():
    params = BesovParams(0.5, 2.0, math.inf, 10)
    for i in range(50):
        total = besov.besov_norm(bm_path(1 + i, depth=16), params).total
        assert math.isfinite(total) and total > 0.0


def test_params_validation():
    with pytest.raises(ValueError):
        BesovParams(0.0, 2.0, 2.0, 4)
    with pytest.raises(ValueError):
        BesovParams(0.5, 0.9, 2.0, 4)
    with pytest.raises(ValueError):
        BesovParams(0.5, 2.0, 0.5, 4)
    with pytest.raises(ValueError):
        BesovParams(0.5, 2.0, 2.0, 0)


# --- exponential Orlicz norms ---------------------------------------------


def test_exp_orlicz_constant_attained_at_p_one():
    assert besov.exp_orlicz_lp_norm(constant_path(0.8), 2.0) == pytest.approx(0.8, rel=1e-12)


def test_exp_orlicz_zero():
    assert besov.exp_orlicz_lp_norm(constant_path(0.0), 2.0) == 0.0


def test_exp_orlicz_p_max_floor():
    with pytest.raises(ValueError):
        besov.exp_orlicz_lp_norm(constant_path(1.0), 2.0, p_max=4)


def test_exp_orlicz_stabilises_in_p_max():
    for i in range(5):
        path = bm_path(1 + i)
        v64 = besov.exp_orlicz_lp_norm(path, 2.0, 64)
        v128 = besov.exp_orlicz_lp_norm(path, 2.0, 128)
        assert abs(v128 - v64) / v64 < 0.01


def test_besov_orlicz_zero():
    assert besov.besov_orlicz_norm(constant_path(0.0), 0.5, 2.0) == 0.0


def test_besov_orlicz_dominates_single_term():
    path = bm_path(9)
    total_p2 = besov.besov_norm(path, BesovParams(0.5, 2.0, math.inf, besov.default_n_max(path.depth))).total
    assert besov.besov_orlicz_norm(path, 0.5, 2.0) >= 2.0**-0.5 * total_p2 - 1e-12


def test_besov_orlicz_bm_finite():
    for i in range(20):
        val = besov.besov_orlicz_norm(bm_path(1 + i, depth=16), 0.5, 2.0)
        assert math.isfinite(val) and val > 0.0


def test_integer_profile_matches_direct_norms():
    path = bm_path(17)
    totals = besov.integer_p_besov_totals(path, 0.5, 8, 6)
    for p in (1, 2, 5, 8):
        direct = besov.besov_norm(path, BesovParams(0.5, float(p), math.inf, 6)).total
        assert totals[p - 1] == pytest.approx(direct, rel=1e-12)


# --- Luxemburg function norm ----------------------------------------------


def test_luxemburg_function_norm_zero():
    assert besov.luxemburg_function_norm(constant_path(0.0), 2.0) == 0.0


def test_luxemburg_function_norm_constant_closed_form():
    c = 0.7
    expected = c / math.sqrt(math.log(2.0))
    assert besov.luxemburg_function_norm(constant_path(c), 2.0) == pytest.approx(expected, abs=1e-6)


def test_luxemburg_function_norm_beta_floor():
    with pytest.raises(ValueError):
        besov.luxemburg_function_norm(constant_path(1.0), 0.5)


def test_exp_orlicz_below_luxemburg_on_bm():
    for i in range(100):
        path = bm_path(1 + i)
        lhs = besov.exp_orlicz_lp_norm(path, 2.0)
        rhs = besov.luxemburg_function_norm(path, 2.0)
        assert lhs <= rhs + 1e-9


# --- structural properties --------------------------------------------------


def test_path_norm_homogeneity():
    path = bm_path(23)
    scaled = PathSample(path.space, path.depth, 2.5 * path.values)
    params = BesovParams(0.5, 2.0, math.inf, 6)
    pairs = [
        (besov.lp_norm_path(scaled, 2.0), 2.5 * besov.lp_norm_path(path, 2.0)),
        (besov.dyadic_increment_lp(scaled, 4, 2.0), 2.5 * besov.dyadic_increment_lp(path, 4, 2.0)),
        (besov.besov_norm(scaled, params).total, 2.5 * besov.besov_norm(path, params).total),
        (besov.exp_orlicz_lp_norm(scaled, 2.0), 2.5 * besov.exp_orlicz_lp_norm(path, 2.0)),
        (besov.besov_orlicz_norm(scaled, 0.5, 2.0), 2.5 * besov.besov_orlicz_norm(path, 0.5, 2.0)),
        (besov.luxemburg_function_norm(scaled, 2.0), 2.5 * besov.luxemburg_function_norm(path, 2.0)),
    ]
    for got, expected in pairs:
        assert abs(got - expected) / expected < 1e-9


def test_norms_monotone_in_caps():
    path = bm_path(29, depth=14)
    semis = [besov.besov_seminorm(path, BesovParams(0.5, 2.0, math.inf, n)) for n in (2, 4, 6, 8)]
    assert all(a <= b + 1e-15 for a, b in zip(semis, semis[1:]))
    orls = [besov.exp_orlicz_lp_norm(path, 2.0, p_max) for p_max in (8, 16, 32, 64)]
    assert all(a <= b + 1e-15 for a, b in zip(orls, orls[1:]))


def test_embedding_chain_p_term_bound():
    for i in range(10):
        path = bm_path(41 + i, depth=14)
        orlicz_val = besov.besov_orlicz_norm(path, 0.5, 2.0)
        for p in (1, 2, 4):
            total = besov.besov_norm(
                path, BesovParams(0.5, float(p), math.inf, besov.default_n_max(path.depth))
            ).total
            assert total <= math.sqrt(p) * orlicz_val + 1e-9


def test_partial_qsum_growth_separates_bm_from_smooth_paths():
    # rough paths keep accumulating q-sum mass between caps 9 and 12; a
    # smooth path's partial sums have already converged there
    depth, n_lo, n_hi = 18, 9, 12
    grow = []
    for i in range(40):
        path = bm_path(1 + i, depth=depth, seed=424242)
        terms = np.array([2.0 ** (m / 2.0) * besov.dyadic_increment_lp(path, m, 2.0) for m in range(1, n_hi + 1)])
        sums = np.cumsum(terms**2)
        grow.append(sums[n_hi - 1] / sums[n_lo - 1])
    grow = np.array(grow)
    assert np.mean(grow >= 1.2) >= 0.95

    lin = linear_path(depth=depth)
    terms = np.array([2.0 ** (m / 2.0) * besov.dyadic_increment_lp(lin, m, 2.0) for m in range(1, n_hi + 1)])
    sums = np.cumsum(terms**2)
    assert sums[n_hi - 1] / sums[n_lo - 1] < 1.05
