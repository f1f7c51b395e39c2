"""Experiment drivers: desk-scale statistical checks of the norm machinery.

Each driver consumes an :class:`ExperimentConfig` and returns an
:class:`ExperimentResult` whose rows carry (params, estimate, ci, reference,
ratio, verdict); every verdict is recomputable from the emitted numbers
alone.  Reports are written as CSV (fixed header), a structured-text (JSON)
mirror, and an optional SVG plot.  Full determinism: identical configs,
including the seed, give byte-identical report files.

Stream layout (the partition of work across workers must not change
results, so every random quantity has a fixed stream):

* stream 0 within the config's base stream: auxiliary Monte Carlo for
  reference moments of ``|W(1)|``;
* streams ``1 + i``: Brownian path number ``i`` (single-space experiments);
* streams ``1 + s * paths + i``: path ``i`` of space model ``s`` and
  ``500_000 + s`` for its reference moments (moment experiment);
* streams ``1000 * (k + 1)``: the supremum pass of ensemble ``k`` in the
  maximal experiment, with per-variable mean passes offset from there.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import besov
from .besov import SCALE_MARGIN, BesovParams, integer_p_besov_totals
from .maxima import EstimateReport, empirical_sup_mean
from .simulate import GaussianVarSpec, EnsembleSpec, PathSample, RngSeed, gaussian_abs_moment, sample_bm
from .spaces import SpaceSpec, diag_weak_variance, dual_exponent, dual_net, finite_lq, iw_norm, truncated_lp

__all__ = [
    "ExperimentConfig",
    "ExperimentResult",
    "ResultRow",
    "EnsembleConfig",
    "default_config",
    "default_ensembles",
    "parse_config_file",
    "parse_config_text",
    "config_from_mapping",
    "ensembles_from_mapping",
    "run",
    "run_limit_experiment",
    "run_divergence_experiment",
    "run_moment_experiment",
    "run_tau_experiment",
    "run_increment_variance_experiment",
    "run_maximal_experiment",
    "exact_test_functional_moment",
    "emit_report",
    "emit_maximal_csv",
    "EXPERIMENTS",
]

DEFAULT_SEED = 20260808
REFERENCE_MC_SAMPLES = 100_000

# Verdict tolerances, frozen with the acceptance bands.
LIMIT_RTOL = 0.02
GROWTH_FACTOR = 1.5
GROWTH_FRACTION = 0.95
TAU_SLACK = 0.9
TEST_FUNCTIONAL_RTOL = 0.02
YOUNG_TOL = 1e-6
BESOV_RATIO_BAND = (1.0, 6.0)
BESOV_STABILITY_MAX = 4.0
ORLICZ_RATIO_BAND = (1.0, 10.0)

EXPERIMENTS = (
    "bm-limit",
    "divergence",
    "moments",
    "tau",
    "maximal",
    "increment-variance",
)


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    space: SpaceSpec = field(default_factory=lambda: finite_lq(1, 2.0))
    sigma: tuple = (1.0,)
    depth: int = 16
    scales: tuple = ()
    p_list: tuple = ()
    q: float = 2.0
    beta: float = 2.0
    p_max: int = 64
    paths: int = 200
    mc_samples: int = 10_000
    seed: RngSeed = field(default_factory=lambda: RngSeed(DEFAULT_SEED))
    out_path: str | None = None
    formats: tuple = ("csv",)


@dataclass(frozen=True)
class EnsembleConfig:
    """One named ensemble: ``count`` variables on a common space.

    Variable n (1-based) has weights ``sigma * decay**(n-1)``; a decay of 1
    gives identically distributed variables, several groups can be merged by
    running the maximal experiment over multiple configs.
    """

    config_id: str
    space: SpaceSpec
    sigma: tuple
    count: int
    decay: float = 1.0

    def build(self) -> EnsembleSpec:
        base = np.asarray(self.sigma, dtype=float)
        variables = tuple(
            GaussianVarSpec(self.space, tuple(base * self.decay ** (n - 1)))
            for n in range(1, self.count + 1)
        )
        return EnsembleSpec(variables)


def _geometric_sigma(dim: int = 16, ratio: float = 0.7) -> tuple:
    return tuple(ratio ** np.arange(dim))


def default_config(experiment: str, seed: int = DEFAULT_SEED) -> ExperimentConfig:
    """Desk-scale defaults: depth 16, a few hundred paths, dimensions <= 16."""
    base = ExperimentConfig(experiment=experiment, seed=RngSeed(seed))
    if experiment == "bm-limit":
        return replace(base, scales=(8, 9, 10), p_list=(1.0, 2.0, 4.0))
    if experiment == "divergence":
        return replace(base, depth=18, q=2.0, p_list=(2.0,))
    if experiment == "moments":
        return replace(base, sigma=_geometric_sigma(), p_list=(1.0, 2.0, 4.0, 8.0))
    if experiment == "tau":
        return replace(base, paths=500, p_list=(1.0, 2.0))
    if experiment == "maximal":
        return base
    if experiment == "increment-variance":
        return replace(base, scales=(2, 4, 6), p_list=(1.0, 2.0, 4.0))
    raise ValueError(f"unknown experiment {experiment!r}")


_CONFIG_SCALARS = {
    "experiment.id",
    "space.kind",
    "space.p",
    "space.dim",
    "sigma",
    "depth",
    "scales",
    "p.list",
    "q",
    "beta",
    "p.max",
    "mc.paths",
    "mc.samples",
    "rng.seed",
    "rng.stream",
    "out.path",
    "out.format",
}
_ENSEMBLE_SUBKEYS = {"space.kind", "space.p", "space.dim", "sigma", "count", "decay"}


def parse_config_text(text: str) -> dict:
    """Parse the flat ``key = value`` config format with dotted keys.

    Blank lines and ``#`` comments are skipped; unknown keys are errors.
    """
    mapping: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in mapping:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        if key in _CONFIG_SCALARS:
            mapping[key] = value
            continue
        parts = key.split(".")
        if parts[0] == "ensemble" and len(parts) >= 3 and ".".join(parts[2:]) in _ENSEMBLE_SUBKEYS:
            mapping[key] = value
            continue
        raise ValueError(f"line {lineno}: unknown config key {key!r}")
    return mapping


def parse_config_file(path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config_text(handle.read())


def _parse_exponent(text: str) -> float:
    if text.lower() in ("inf", "infinity", "oo"):
        return math.inf
    return float(text)


def _parse_floats(text: str) -> tuple:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _space_from_mapping(mapping: dict, prefix: str, fallback: SpaceSpec) -> SpaceSpec:
    kind = mapping.get(prefix + "kind")
    p = mapping.get(prefix + "p")
    dim = mapping.get(prefix + "dim")
    if kind is None and p is None and dim is None:
        return fallback
    kind = kind or fallback.kind
    exponent = _parse_exponent(p) if p is not None else fallback.exponent
    dimension = int(dim) if dim is not None else fallback.dim
    if kind == "finite_lq":
        return finite_lq(dimension, exponent)
    if kind == "truncated_lp":
        return truncated_lp(exponent, dimension)
    raise ValueError(f"unknown space kind {kind!r}")


def config_from_mapping(experiment: str, mapping: dict, seed: int = DEFAULT_SEED) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from parsed config keys."""
    if "experiment.id" in mapping:
        experiment = mapping["experiment.id"]
    cfg = default_config(experiment, seed)
    cfg = replace(cfg, space=_space_from_mapping(mapping, "space.", cfg.space))
    if "sigma" in mapping:
        cfg = replace(cfg, sigma=_parse_floats(mapping["sigma"]))
    if "depth" in mapping:
        cfg = replace(cfg, depth=int(mapping["depth"]))
    if "scales" in mapping:
        cfg = replace(cfg, scales=tuple(int(float(t)) for t in mapping["scales"].split(",") if t.strip()))
    if "p.list" in mapping:
        cfg = replace(cfg, p_list=_parse_floats(mapping["p.list"]))
    if "q" in mapping:
        cfg = replace(cfg, q=_parse_exponent(mapping["q"]))
    if "beta" in mapping:
        cfg = replace(cfg, beta=float(mapping["beta"]))
    if "p.max" in mapping:
        cfg = replace(cfg, p_max=int(mapping["p.max"]))
    if "mc.paths" in mapping:
        cfg = replace(cfg, paths=int(mapping["mc.paths"]))
    if "mc.samples" in mapping:
        cfg = replace(cfg, mc_samples=int(mapping["mc.samples"]))
    stream = int(mapping.get("rng.stream", 0))
    if "rng.seed" in mapping:
        cfg = replace(cfg, seed=RngSeed(int(mapping["rng.seed"]), stream))
    elif stream:
        cfg = replace(cfg, seed=RngSeed(cfg.seed.seed, stream))
    if "out.path" in mapping:
        cfg = replace(cfg, out_path=mapping["out.path"])
    if "out.format" in mapping:
        cfg = replace(cfg, formats=tuple(t.strip() for t in mapping["out.format"].split(",") if t.strip()))
    return cfg


def ensembles_from_mapping(mapping: dict) -> tuple:
    """Collect ``ensemble.<id>.*`` groups into :class:`EnsembleConfig` objects."""
    groups: dict = {}
    for key, value in mapping.items():
        parts = key.split(".")
        if parts[0] != "ensemble":
            continue
        groups.setdefault(parts[1], {})[".".join(parts[2:])] = value
    configs = []
    for config_id in sorted(groups):
        sub = groups[config_id]
        space = _space_from_mapping(sub, "space.", finite_lq(1, 2.0))
        sigma = _parse_floats(sub["sigma"]) if "sigma" in sub else (1.0,)
        count = int(sub.get("count", 1))
        decay = float(sub.get("decay", 1.0))
        configs.append(EnsembleConfig(config_id, space, sigma, count, decay))
    return tuple(configs)


def default_ensembles() -> tuple:
    """Ten stock ensembles: constant, geometric, and spike weight profiles
    on l^1, l^2 and l^inf spaces with up to 256 variables."""
    inf = math.inf
    return (
        EnsembleConfig("c01-scalar-iid-256", finite_lq(1, 2.0), (1.0,), 256),
        EnsembleConfig("c02-scalar-geo-200", finite_lq(1, 2.0), (0.9,), 200, decay=0.9),
        EnsembleConfig("c03-scalar-const-128", finite_lq(1, 2.0), (0.3,), 128),
        EnsembleConfig("c04-scalar-spike", finite_lq(1, 2.0), (5.0,), 64, decay=0.5),
        EnsembleConfig("c05-l2-const-32", truncated_lp(2.0, 8), _geometric_sigma(8, 0.7), 32),
        EnsembleConfig("c06-l1-const-16", truncated_lp(1.0, 4), (0.5, 0.5, 0.5, 0.5), 16),
        EnsembleConfig("c07-linf-geo-64", truncated_lp(inf, 8), _geometric_sigma(8, 0.9), 64, decay=0.97),
        EnsembleConfig("c08-l2-spike-16", truncated_lp(2.0, 2), (1.5, 0.1), 16, decay=0.95),
        EnsembleConfig("c09-linf-pair-8", truncated_lp(inf, 2), (1.0, 1.0), 8),
        EnsembleConfig("c10-l1-geo-100", truncated_lp(1.0, 8), _geometric_sigma(8, 0.6), 100, decay=0.98),
    )


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResultRow:
    params: tuple  # up to four short "key=value" strings
    estimate: float
    ci: float
    reference: float | None
    ratio: float | None
    verdict: bool


@dataclass(frozen=True)
class ExperimentResult:
    experiment: str
    rows: tuple

    def all_pass(self) -> bool:
        return all(row.verdict for row in self.rows)


def _ratio(estimate: float, reference: float) -> float:
    if reference > 0:
        return estimate / reference
    return 1.0 if estimate == 0.0 else math.inf


def _mean_ci(values) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    if arr.size < 2:
        return mean, 0.0
    return mean, 1.96 * float(arr.std(ddof=1)) / math.sqrt(arr.size)


def _effectively_scalar(sigma) -> float | None:
    """The single nonzero weight if there is at most one, else None."""
    arr = np.asarray(sigma, dtype=float)
    nz = arr[arr > 0]
    if nz.size == 0:
        return 0.0
    if nz.size == 1:
        return float(nz[0])
    return None


def _reference_moments(space, sigma, p_values, seed) -> dict:
    """c_p = (E|W(1)|^p)^(1/p) for each requested p, plus p = 1.

    Analytic for an effectively scalar weight sequence; a single Monte Carlo
    batch of 1e5 draws of W(1) otherwise.
    """
    wanted = sorted(set(float(p) for p in p_values) | {1.0})
    scale = _effectively_scalar(sigma)
    if scale is not None:
        return {p: scale * gaussian_abs_moment(p) for p in wanted}
    var = GaussianVarSpec(space, tuple(np.asarray(sigma, dtype=float)))
    sig = var.padded_sigma()
    g = seed.generator().standard_normal((REFERENCE_MC_SAMPLES, space.dim))
    from .spaces import space_norm

    norms = space_norm(space, g * sig)
    return {p: float(np.mean(norms**p) ** (1.0 / p)) for p in wanted}


# ---------------------------------------------------------------------------
# Drivers
# ---------------------------------------------------------------------------


def _check_scales(cfg: ExperimentConfig, scales) -> None:
    cap = cfg.depth - SCALE_MARGIN
    bad = [n for n in scales if not 1 <= n <= cap]
    if bad:
        raise ValueError(f"scales {bad} exceed the trusted range [1, depth - {SCALE_MARGIN}] = [1, {cap}]")


def run_limit_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Scaled dyadic increment norms against the moment of |W(1)|.

    For each scale n and exponent p, the mean over paths of
    ``Y = 2^(n/2) * dyadic_increment_lp(path, n, p)`` is compared with
    ``c_p = (E|W(1)|^p)^(1/p)``; a row passes when the ratio is within 2%.
    """
    scales = cfg.scales or (cfg.depth - SCALE_MARGIN,)
    _check_scales(cfg, scales)
    refs = _reference_moments(cfg.space, cfg.sigma, cfg.p_list, cfg.seed.with_stream(0))
    samples = {(n, p): [] for n in scales for p in cfg.p_list}
    for i in range(cfg.paths):
        path = sample_bm(cfg.space, cfg.sigma, cfg.depth, cfg.seed.with_stream(1 + i))
        for n in scales:
            norms = besov._increment_norms(path, n)
            for p in cfg.p_list:
                y = 2.0 ** (n / 2.0) * besov._reduce_lp(norms, 2.0**-cfg.depth, p)
                samples[(n, p)].append(y)
    rows = []
    for n in scales:
        for p in cfg.p_list:
            estimate, ci = _mean_ci(samples[(n, p)])
            ref = refs[float(p)]
            ratio = _ratio(estimate, ref)
            verdict = abs(ratio - 1.0) <= LIMIT_RTOL if ref > 0 else estimate == 0.0
            rows.append(
                ResultRow(
                    (f"n={n}", f"p={p:g}", f"t={2.0**-n:.8g}"),
                    estimate,
                    ci,
                    ref,
                    ratio,
                    verdict,
                )
            )
    return ExperimentResult("bm-limit", tuple(rows))


def run_divergence_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Partial l^q sums of the weighted scale terms as the cap grows.

    Emits the mean partial q-sum seminorm for every cap n, then the fraction
    of paths whose partial q-sum grows by at least ``GROWTH_FACTOR`` between
    the caps ``depth/2`` and ``depth - 6``; that row's verdict requires the
    fraction to reach ``GROWTH_FRACTION``.  A convergent (smooth) path makes
    the growth row fail, which is the intended discrimination.
    """
    if math.isinf(cfg.q):
        raise ValueError("the divergence probe needs a finite q")
    n_lo = cfg.depth // 2
    n_hi = cfg.depth - SCALE_MARGIN
    if n_lo < 1 or n_lo >= n_hi:
        raise ValueError("depth too small for the divergence probe")
    p = cfg.p_list[0] if cfg.p_list else 2.0
    alpha = 0.5
    partial = {n: [] for n in range(1, n_hi + 1)}
    growth = []
    for i in range(cfg.paths):
        path = sample_bm(cfg.space, cfg.sigma, cfg.depth, cfg.seed.with_stream(1 + i))
        terms = besov._weighted_scale_terms(path, alpha, p, n_hi)
        sums = np.cumsum(terms**cfg.q)
        for n in range(1, n_hi + 1):
            partial[n].append(sums[n - 1] ** (1.0 / cfg.q))
        growth.append(_ratio(float(sums[n_hi - 1]), float(sums[n_lo - 1])))
    rows = []
    for n in range(1, n_hi + 1):
        estimate, ci = _mean_ci(partial[n])
        rows.append(ResultRow((f"n_max={n}", f"p={p:g}", f"q={cfg.q:g}"), estimate, ci, None, None, True))
    growth = np.asarray(growth)
    frac = float(np.mean(growth >= GROWTH_FACTOR))
    ci = 1.96 * math.sqrt(max(frac * (1.0 - frac), 1e-12) / len(growth))
    rows.append(
        ResultRow(
            ("growth-fraction", f"n_lo={n_lo}", f"n_hi={n_hi}", f"factor={GROWTH_FACTOR:g}"),
            frac,
            ci,
            GROWTH_FRACTION,
            _ratio(frac, GROWTH_FRACTION),
            frac >= GROWTH_FRACTION,
        )
    )
    rows.append(
        ResultRow(
            ("mean-growth", f"n_lo={n_lo}", f"n_hi={n_hi}"),
            float(growth.mean()),
            1.96 * float(growth.std(ddof=1)) / math.sqrt(len(growth)),
            None,
            None,
            True,
        )
    )
    return ExperimentResult("divergence", tuple(rows))


def _moment_space_models(cfg: ExperimentConfig) -> tuple:
    sigma = cfg.sigma if len(cfg.sigma) > 1 else _geometric_sigma()
    dim = len(sigma)
    return (
        ("scalar", finite_lq(1, 2.0), (1.0,)),
        ("l2", truncated_lp(2.0, dim), sigma),
        ("l1", truncated_lp(1.0, dim), sigma),
        ("linf", truncated_lp(math.inf, dim), sigma),
    )


def run_moment_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """First moments of Besov and exponential Orlicz--Besov path norms.

    Across the four space models (scalar, diagonal l^2 / l^1 / l^inf), the
    mean Besov norm at each integer p is compared with c_p (band [1, 6] and
    max/min stability across p at most 4), and the mean Orlicz--Besov norm
    at beta = 2 is compared with E|W(1)| (band [1, 10]).
    """
    if cfg.paths < 2:
        raise ValueError("at least two paths are required")
    p_ints = []
    for p in cfg.p_list:
        if abs(p - round(p)) > 1e-12 or not 1 <= round(p) <= cfg.p_max:
            raise ValueError("moment experiment exponents must be integers within p_max")
        p_ints.append(int(round(p)))
    n_max = besov.default_n_max(cfg.depth)
    weights = np.arange(1, cfg.p_max + 1) ** (-1.0 / cfg.beta)
    rows = []
    for s, (label, space, sigma) in enumerate(_moment_space_models(cfg)):
        refs = _reference_moments(space, sigma, p_ints, cfg.seed.with_stream(500_000 + s))
        totals = np.empty((cfg.paths, len(p_ints)))
        orlicz_vals = np.empty(cfg.paths)
        for i in range(cfg.paths):
            path = sample_bm(space, sigma, cfg.depth, cfg.seed.with_stream(1 + s * cfg.paths + i))
            profile = integer_p_besov_totals(path, 0.5, cfg.p_max, n_max)
            totals[i] = [profile[p - 1] for p in p_ints]
            orlicz_vals[i] = np.max(weights * profile)
        ratios = []
        for j, p in enumerate(p_ints):
            estimate, ci = _mean_ci(totals[:, j])
            ref = refs[float(p)]
            ratio = _ratio(estimate, ref)
            ratios.append(ratio)
            verdict = BESOV_RATIO_BAND[0] <= ratio <= BESOV_RATIO_BAND[1]
            rows.append(ResultRow((label, f"p={p}", "norm=besov"), estimate, ci, ref, ratio, verdict))
        stability = max(ratios) / min(ratios)
        rows.append(
            ResultRow(
                (label, "stability", f"p_set={'/'.join(str(p) for p in p_ints)}"),
                stability,
                0.0,
                BESOV_STABILITY_MAX,
                stability / BESOV_STABILITY_MAX,
                stability <= BESOV_STABILITY_MAX,
            )
        )
        estimate, ci = _mean_ci(orlicz_vals)
        ref = refs[1.0]
        ratio = _ratio(estimate, ref)
        verdict = ORLICZ_RATIO_BAND[0] <= ratio <= ORLICZ_RATIO_BAND[1]
        rows.append(ResultRow((label, f"beta={cfg.beta:g}", "norm=besov-orlicz"), estimate, ci, ref, ratio, verdict))
    return ExperimentResult("moments", tuple(rows))


def run_tau_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Empirical minimum of the Besov norm over many paths against c_p.

    The smallest sampled ``B^(1/2)_{p,inf}`` norm must stay above
    ``TAU_SLACK * c_p`` (slack covers discretisation and the finite scale
    cap).  A deterministic zero path is injected as a control row; it passes
    when its norm is correctly flagged as violating the band.
    """
    if cfg.paths < 500:
        raise ValueError("the tau probe needs at least 500 paths")
    p_ints = []
    for p in cfg.p_list:
        if abs(p - round(p)) > 1e-12:
            raise ValueError("tau experiment exponents must be integers")
        p_ints.append(int(round(p)))
    p_max = max(p_ints)
    n_max = besov.default_n_max(cfg.depth)
    refs = _reference_moments(cfg.space, cfg.sigma, p_ints, cfg.seed.with_stream(0))
    totals = np.empty((cfg.paths, len(p_ints)))
    for i in range(cfg.paths):
        path = sample_bm(cfg.space, cfg.sigma, cfg.depth, cfg.seed.with_stream(1 + i))
        profile = integer_p_besov_totals(path, 0.5, p_max, n_max)
        totals[i] = [profile[p - 1] for p in p_ints]
    rows = []
    for j, p in enumerate(p_ints):
        minimum = float(totals[:, j].min())
        ref = refs[float(p)]
        ratio = _ratio(minimum, ref)
        rows.append(
            ResultRow((f"p={p}", f"paths={cfg.paths}", "kind=min"), minimum, 0.0, ref, ratio, ratio >= TAU_SLACK)
        )
    zero = PathSample(cfg.space, cfg.depth, np.zeros(((1 << cfg.depth) + 1, cfg.space.dim)))
    for j, p in enumerate(p_ints):
        norm = besov.besov_norm(zero, BesovParams(0.5, float(p), math.inf, n_max)).total
        ref = refs[float(p)]
        ratio = _ratio(norm, ref)
        rows.append(
            ResultRow((f"p={p}", "kind=control", "path=zero"), norm, 0.0, ref, ratio, ratio < TAU_SLACK)
        )
    return ExperimentResult("tau", tuple(rows))


def discrete_increment_integral_variance(depth: int, j: int) -> float:
    """Variance of ``2^-N sum_{t_k in I} (B(t_k + c) - B(t_k))`` for c = 2^-j.

    ``B`` is standard scalar Brownian motion and ``I`` an aligned interval of
    length c; stationarity of the increments makes every aligned placement
    equivalent.  Computed by aggregating the covariances
    ``cov = max(0, c - |t_k - t_l|)`` over pair distances, which tends to
    ``(2/3) c^3`` as the grid refines.
    """
    if not 1 <= j <= depth:
        raise ValueError("need 1 <= j <= depth so that c = 2^-j is on the grid")
    m = 1 << (depth - j)
    h = 2.0**-depth
    c = 2.0**-j
    d = np.arange(m, dtype=float)
    counts = np.where(d == 0, float(m), 2.0 * (m - d))
    return float(h * h * np.sum(counts * (c - d * h)))


def exact_test_functional_moment(space, sigma, depth, j, xstar=None) -> tuple[float, float]:
    """Exact discrete and limiting second moments of the window functional.

    The functional pairs the lag-c increment of the diagonal Brownian motion
    with ``1_I (x) x*`` for an interval of length ``c = 2^-j``.  Returns
    ``(discrete, closed)`` where ``closed = (2/3) c^3 |i_W^* x*|^2`` and
    ``|i_W^* x*|^2 = sum_n sigma_n^2 (x*_n)^2``.
    """
    sig = np.zeros(space.dim)
    w = np.asarray(sigma, dtype=float)
    sig[: w.size] = w
    if xstar is None:
        xs = np.zeros(space.dim)
        xs[int(np.argmax(sig))] = 1.0
    else:
        xs = np.asarray(xstar, dtype=float)
    coupling = float(np.sum(sig**2 * xs**2))
    var_a = discrete_increment_integral_variance(depth, j)
    c = 2.0**-j
    return var_a * coupling, (2.0 / 3.0) * c**3 * coupling


def run_increment_variance_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Weak variance of the lag-c increment process in L^p, three-row check.

    Per (c, p): the test-functional value (exact discrete second moment of
    the window functional, normalised by the functional's L^p' norm) against
    its closed form ``sqrt(2/3) c^(3/2) |i_W^* x*| / (|x*| c^(1/p'))``; the
    net lower bound (the same value maximised over a dual net); and the
    convolution upper value ``c^(1/2 + 1/p) |i_W|``.  The lower bound must
    not exceed the upper value, and the test functional must match its
    closed form within 2%.
    """
    js = tuple(int(j) for j in (cfg.scales or (2, 4, 6)))
    for j in js:
        if not 1 <= j <= cfg.depth:
            raise ValueError("each lag exponent must lie in [1, depth]")
    net = dual_net(cfg.space, max(64, 2 * cfg.space.dim), cfg.seed.with_stream(0))
    sig = np.zeros(cfg.space.dim)
    w = np.asarray(cfg.sigma, dtype=float)
    sig[: w.size] = w
    iw = iw_norm(cfg.space, cfg.sigma)
    rows = []
    for j in js:
        c = 2.0**-j
        var_a = discrete_increment_integral_variance(cfg.depth, j)
        discrete_raw, closed_raw = exact_test_functional_moment(cfg.space, cfg.sigma, cfg.depth, j)
        net_coupling = float(np.max(np.sqrt((net.functionals**2) @ (sig**2))))
        for p in cfg.p_list:
            pprime = dual_exponent(p)
            window = c ** (1.0 / pprime) if not math.isinf(pprime) else 1.0
            estimate = math.sqrt(discrete_raw) / window
            reference = math.sqrt(closed_raw) / window
            ratio = _ratio(estimate, reference)
            verdict = abs(ratio - 1.0) <= TEST_FUNCTIONAL_RTOL if reference > 0 else estimate == 0.0
            rows.append(
                ResultRow((f"c=2^-{j}", f"p={p:g}", "row=test-functional"), estimate, 0.0, reference, ratio, verdict)
            )
            young = c ** (0.5 + 1.0 / p) * iw
            lower = math.sqrt(var_a) * net_coupling / window
            ratio = _ratio(lower, young)
            rows.append(
                ResultRow(
                    (f"c=2^-{j}", f"p={p:g}", "row=net-lower"),
                    lower,
                    0.0,
                    young,
                    ratio,
                    lower <= young * (1.0 + YOUNG_TOL) if young > 0 else lower == 0.0,
                )
            )
            rows.append(
                ResultRow((f"c=2^-{j}", f"p={p:g}", "row=young-upper"), young, 0.0, young, 1.0, True)
            )
    return ExperimentResult("increment-variance", tuple(rows))


def run_maximal_experiment(
    cfg: ExperimentConfig, ensembles: tuple | None = None
) -> tuple:
    """Monte Carlo check of the expected-supremum sandwich per ensemble.

    Returns pairs ``(config_id, EstimateReport)``; ensemble k draws from
    base stream ``1000 (k + 1)`` so that adding or removing configurations
    never perturbs the others.
    """
    if ensembles is None:
        ensembles = default_ensembles()
    out = []
    for k, econf in enumerate(ensembles):
        seed = cfg.seed.with_stream(1000 * (k + 1))
        report = empirical_sup_mean(econf.build(), cfg.mc_samples, seed)
        out.append((econf.config_id, report))
    return tuple(out)


def _maximal_result(pairs) -> ExperimentResult:
    rows = []
    for config_id, report in pairs:
        rows.append(
            ResultRow(
                (config_id,),
                report.estimate,
                report.ci_half_width,
                report.upper_bound,
                _ratio(report.estimate, report.upper_bound),
                report.verdict,
            )
        )
    return ExperimentResult("maximal", tuple(rows))


def run(cfg: ExperimentConfig, ensembles: tuple | None = None) -> ExperimentResult:
    """Dispatch on the experiment id; maximal results are adapted to rows."""
    if cfg.experiment == "bm-limit":
        return run_limit_experiment(cfg)
    if cfg.experiment == "divergence":
        return run_divergence_experiment(cfg)
    if cfg.experiment == "moments":
        return run_moment_experiment(cfg)
    if cfg.experiment == "tau":
        return run_tau_experiment(cfg)
    if cfg.experiment == "maximal":
        return _maximal_result(run_maximal_experiment(cfg, ensembles))
    if cfg.experiment == "increment-variance":
        return run_increment_variance_experiment(cfg)
    raise ValueError(f"unknown experiment {cfg.experiment!r}")


# ---------------------------------------------------------------------------
# Report emission
# ---------------------------------------------------------------------------

CSV_HEADER = "experiment,param_1,param_2,param_3,param_4,estimate,ci,reference,ratio,verdict"
MAXIMAL_CSV_HEADER = "config_id,estimate,ci,lower,upper,verdict"


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return format(float(x), ".12g")


def _csv_lines(result: ExperimentResult):
    yield CSV_HEADER
    for row in result.rows:
        params = list(row.params)[:4] + [""] * (4 - min(len(row.params), 4))
        cells = [result.experiment, *params, _fmt(row.estimate), _fmt(row.ci), _fmt(row.reference),
                 _fmt(row.ratio), "pass" if row.verdict else "fail"]
        yield ",".join(cells)


def _json_payload(result: ExperimentResult) -> dict:
    return {
        "experiment": result.experiment,
        "all_pass": result.all_pass(),
        "rows": [
            {
                "params": list(row.params),
                "estimate": row.estimate,
                "ci": row.ci,
                "reference": row.reference,
                "ratio": row.ratio,
                "verdict": "pass" if row.verdict else "fail",
            }
            for row in result.rows
        ],
    }


def _svg_text(result: ExperimentResult) -> str:
    """Minimal deterministic line/scatter plot of estimates and references.

    The x coordinate is the numeric tail of each row's first ``key=value``
    parameter when available, else the row index.
    """
    width, height, margin = 720, 440, 60
    pts = []
    for idx, row in enumerate(result.rows):
        x = float(idx)
        if row.params:
            tail = row.params[0].rpartition("=")[2]
            try:
                x = float(tail)
            except ValueError:
                x = float(idx)
        pts.append((x, row.estimate, row.reference))
    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{margin}" y="30" font-family="monospace" font-size="16">{result.experiment}</text>',
    ]
    if pts:
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts] + [p[2] for p in pts if p[2] is not None]
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = min(ys), max(ys)
        x_span = (x_hi - x_lo) or 1.0
        y_span = (y_hi - y_lo) or 1.0

        def sx(x):
            return margin + (x - x_lo) / x_span * (width - 2 * margin)

        def sy(y):
            return height - margin - (y - y_lo) / y_span * (height - 2 * margin)

        est = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y, _ in pts)
        body.append(f'<polyline points="{est}" fill="none" stroke="steelblue" stroke-width="1.5"/>')
        for x, y, _ in pts:
            body.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="steelblue"/>')
        ref_pts = [(x, r) for x, _, r in pts if r is not None]
        if ref_pts:
            ref = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in ref_pts)
            body.append(
                f'<polyline points="{ref}" fill="none" stroke="darkorange" '
                f'stroke-width="1.5" stroke-dasharray="6,4"/>'
            )
        body.append(
            f'<text x="{margin}" y="{height - 20}" font-family="monospace" font-size="12">'
            f"estimate (solid) vs reference (dashed)</text>"
        )
    body.append("</svg>")
    return "\n".join(body) + "\n"


def emit_report(result: ExperimentResult, out_base, formats=("csv",)) -> list:
    """Write the result in the requested formats next to ``out_base``.

    ``csv`` writes ``<out_base>.csv`` with the fixed header, ``json-text``
    a structured-text mirror ``<out_base>.json``, ``svg`` a line/scatter
    plot ``<out_base>.svg``.  Output is byte-identical for identical
    results.  I/O failures propagate with the path in the message.
    """
    import os

    out_base = os.fspath(out_base)
    parent = os.path.dirname(out_base)
    if parent:
        os.makedirs(parent, exist_ok=True)
    written = []
    for fmt in formats:
        if fmt == "csv":
            path = out_base + ".csv"
            payload = "\n".join(_csv_lines(result)) + "\n"
        elif fmt == "json-text":
            path = out_base + ".json"
            payload = json.dumps(_json_payload(result), indent=2, sort_keys=True) + "\n"
        elif fmt == "svg":
            path = out_base + ".svg"
            payload = _svg_text(result)
        else:
            raise ValueError(f"unknown report format {fmt!r}")
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(payload)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc
        written.append(path)
    return written


def emit_maximal_csv(pairs, path) -> str:
    """CSV for the maximal experiment: config_id, estimate, ci, lower, upper, verdict."""
    import os

    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
    lines = [MAXIMAL_CSV_HEADER]
    for config_id, report in pairs:
        lines.append(
            ",".join(
                [
                    config_id,
                    _fmt(report.estimate),
                    _fmt(report.ci_half_width),
                    _fmt(report.lower_bound),
                    _fmt(report.upper_bound),
                    "pass" if report.verdict else "fail",
                ]
            )
        )
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")
    return os.fspath(path)
