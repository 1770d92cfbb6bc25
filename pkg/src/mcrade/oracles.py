"""Brute-force ground truth.

Exact ERA by enumerating sign vectors, exhaustive checks of the self-bounding
properties behind the new bounds, and seeded coverage experiments that count
how often a bound misses an exactly computed target.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds as B
from .bounds import Method
from .class_eval import EvaluationMatrix, class_stats, mcera_batch
from .errors import CapacityError, ValidationError

__all__ = [
    "SelfBoundingReport",
    "DomainClass",
    "CoverageReport",
    "all_sign_vectors",
    "era_exact",
    "verify_selfbounding_mcera",
    "verify_selfbounding_sd",
    "verify_selfbounding_wvar",
    "verify_selfbounding_mean_gap",
    "coverage_experiment",
    "random_domain_class",
    "COVERAGE_KINDS",
]

ERA_EXACT_MAX_M = 20
SIGN_ENUM_MAX_NM = 16
SAMPLE_ENUM_MAX_DOMAIN = 8
SAMPLE_ENUM_MAX_M = 8
RC_EXACT_MAX_TUPLES = 2**20

# slack tolerated by the verifiers; the checked inequalities hold exactly in
# real arithmetic, so anything beyond rounding is a genuine violation
VERIFY_TOL = 1e-9


def all_sign_vectors(m: int) -> np.ndarray:
    """All ``2**m`` vectors in ``{-1, +1}^m``; row ``v`` has bit ``i`` of ``v`` set iff entry ``i`` is +1."""
    idx = np.arange(2**m, dtype=np.int64)[:, None]
    bits = (idx >> np.arange(m, dtype=np.int64)[None, :]) & 1
    return (2 * bits - 1).astype(np.int8)


def era_exact(evals: EvaluationMatrix) -> float:
    """Exact ERA: average over all ``2**m`` sign vectors of the supremum correlation."""
    m = evals.m
    if m > ERA_EXACT_MAX_M:
        raise CapacityError(
            f"exact ERA enumerates 2**m = 2**{m} sign vectors; limit is m <= {ERA_EXACT_MAX_M}"
        )
    total = 0.0
    count = 0
    # chunks of 2**14 sign vectors keep memory flat for m up to 20
    chunk = 1 << min(m, 14)
    for start in range(0, 2**m, chunk):
        idx = np.arange(start, min(start + chunk, 2**m), dtype=np.int64)[:, None]
        signs = 2.0 * ((idx >> np.arange(m)[None, :]) & 1) - 1.0
        sups = (signs @ evals.values).max(axis=1) / m
        total += float(sups.sum())
        count += len(sups)
    return total / count


@dataclass(frozen=True)
class SelfBoundingReport:
    """Extremal slacks of an (alpha, beta)-self-bounding check.

    ``max_sum_slack`` is the largest value of ``sum(g - g_i) - alpha g - beta``
    (squared decrements when ``weak``). ``mode`` is ``"exhaustive"`` when every
    configuration was visited and ``"sampled"`` otherwise; a sampled pass is
    evidence, never a proof.
    """

    alpha: float
    beta: float
    max_single_decrement: float
    min_single_decrement: float
    max_sum_slack: float
    weak: bool
    configurations_checked: int
    mode: str = "exhaustive"
    check: str = ""
    tol: float = VERIFY_TOL

    @property
    def passed(self) -> bool:
        ok_sum = self.max_sum_slack <= self.tol * max(1.0, abs(self.beta))
        ok_dec = self.min_single_decrement >= -self.tol
        if not self.weak:
            ok_dec = ok_dec and self.max_single_decrement <= 1.0 + self.tol
        return ok_sum and ok_dec

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "alpha": self.alpha,
            "beta": self.beta,
            "weak": self.weak,
            "max_single_decrement": self.max_single_decrement,
            "min_single_decrement": self.min_single_decrement,
            "max_sum_slack": self.max_sum_slack,
            "configurations_checked": self.configurations_checked,
            "mode": self.mode,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# n-MCERA


def verify_selfbounding_mcera(
    evals: EvaluationMatrix,
    n: int,
    weak: bool = False,
    *,
    order_seed: int | None = None,
    sample_budget: int | None = None,
    seed: int = 0,
) -> SelfBoundingReport:
    """Check the self-bounding property of ``g(sigma) = n m MCERA`` over sign matrices.

    The class is first divided by ``2 z_hat`` so entries lie in ``[-1/2, 1/2]``.
    Strong check: ``(1, n m nu_hat')``. Weak check: ``(2 z_hat', 2 n m wvar_hat')``
    with ``z_hat' = 1/2``. ``g_{j,i}`` is the smaller of ``g`` and ``g`` with
    entry ``(j, i)`` flipped.

    All ``2**(n m)`` matrices are visited when ``n m <= 16``; otherwise
    ``sample_budget`` uniformly drawn matrices are checked, or
    :class:`CapacityError` is raised when no budget is given.
    ``order_seed`` permutes the traversal order (the result must not change).
    """
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    m = evals.m
    st = class_stats(evals)
    vals = evals.values / (2.0 * st.z_hat) if st.z_hat > 0 else evals.values
    z_p = 0.5 if st.z_hat > 0 else 0.0
    nu_p = float((np.abs(vals).sum(axis=0)).max()) / m
    wvar_p = float((vals * vals).sum(axis=0).max()) / m
    if weak:
        alpha, beta = 2.0 * z_p, 2.0 * n * m * wvar_p
    else:
        alpha, beta = 1.0, n * m * nu_p

    if m > ERA_EXACT_MAX_M:
        raise CapacityError(f"per-row tables need 2**m entries; limit is m <= {ERA_EXACT_MAX_M}")
    # g is a sum over rows, so a row's supremum and its single-flip decrements
    # are tabulated once per sign vector
    rows = all_sign_vectors(m).astype(np.float64)
    row_sup = (rows @ vals).max(axis=1)
    flip = np.arange(2**m)[:, None] ^ (1 << np.arange(m))[None, :]
    row_dec = np.maximum(row_sup[:, None] - row_sup[flip], 0.0)
    row_cost = (row_dec**2 if weak else row_dec).sum(axis=1)

    nm = n * m
    if nm <= SIGN_ENUM_MAX_NM:
        configs = np.arange(2**nm, dtype=np.int64)
        if order_seed is not None:
            configs = np.random.default_rng(order_seed).permutation(configs)
        mode = "exhaustive"
        row_ids = (configs[:, None] >> (m * np.arange(n))[None, :]) & (2**m - 1)
    elif sample_budget:
        rng = np.random.default_rng(seed)
        row_ids = rng.integers(0, 2**m, size=(sample_budget, n))
        mode = "sampled"
    else:
        raise CapacityError(
            f"exhaustive check visits 2**(n m) = 2**{nm} sign matrices; limit is n m <= "
            f"{SIGN_ENUM_MAX_NM} (pass sample_budget to sample instead)"
        )
    g = row_sup[row_ids].sum(axis=1)
    cost = row_cost[row_ids].sum(axis=1)
    dec = row_dec[row_ids]
    return SelfBoundingReport(
        alpha=alpha,
        beta=beta,
        max_single_decrement=float(dec.max()),
        min_single_decrement=float(dec.min()),
        max_sum_slack=float((cost - alpha * g - beta).max()),
        weak=weak,
        configurations_checked=int(len(row_ids)),
        mode=mode,
        check="mcera-weak" if weak else "mcera-strong",
    )


# ---------------------------------------------------------------------------
# Functions of the sample over a finite domain


@dataclass(frozen=True, eq=False)
class DomainClass:
    """A finite class on a finite domain with a known sampling distribution.

    ``values[x, k]`` is ``f_k(x)``; ``mu[x]`` the probability of drawing ``x``.
    A constant-zero function is appended when absent.
    """

    values: np.ndarray
    mu: np.ndarray
    a: float
    b: float

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64)
        if vals.ndim != 2 or vals.size == 0:
            raise ValidationError(f"domain values must be a |X| x K matrix, got shape {vals.shape}")
        mu = np.array(self.mu, dtype=np.float64)
        if mu.shape != (vals.shape[0],):
            raise ValidationError(f"mu has shape {mu.shape}, expected ({vals.shape[0]},)")
        if np.any(mu < 0) or not math.isclose(mu.sum(), 1.0, rel_tol=0, abs_tol=1e-12):
            raise ValidationError("mu must be a probability vector")
        a, b = float(self.a), float(self.b)
        if not b > 0 >= a:
            raise ValidationError(f"range must satisfy b > 0 >= a, got a={a}, b={b}")
        if np.any(vals < a) or np.any(vals > b):
            raise ValidationError(f"domain values must lie in [{a}, {b}]")
        if not np.any(np.all(vals == 0.0, axis=0)):
            vals = np.hstack([vals, np.zeros((vals.shape[0], 1))])
        vals.setflags(write=False)
        mu = mu / mu.sum()
        mu.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def size(self) -> int:
        return self.values.shape[0]

    @property
    def c(self) -> float:
        return self.b - self.a

    @property
    def z(self) -> float:
        return max(abs(self.a), abs(self.b))

    def expectations(self) -> np.ndarray:
        return self.mu @ self.values

    def wimpy_variance(self) -> float:
        return float((self.mu @ (self.values**2)).max())

    def eta(self) -> float:
        return float(self.expectations().max() - self.a)

    def gamma(self) -> float:
        return float(self.b - self.expectations().min())

    def tau(self) -> float:
        mean = self.expectations()
        return float((self.mu @ (self.values**2) - mean**2).max())

    def negated(self) -> "DomainClass":
        return DomainClass(-self.values, self.mu, -self.b, -self.a)

    def on_sample(self, indices) -> EvaluationMatrix:
        return EvaluationMatrix(self.values[np.asarray(indices)], self.a, self.b)

    def to_dict(self) -> dict:
        return {"values": self.values.tolist(), "mu": self.mu.tolist(), "a": self.a, "b": self.b}

    @classmethod
    def from_dict(cls, d: dict) -> "DomainClass":
        try:
            return cls(d["values"], d["mu"], d["a"], d["b"])
        except KeyError as exc:
            raise ValidationError(f"generator spec is missing key {exc.args[0]!r}") from None


def random_domain_class(
    rng: np.random.Generator,
    domain_size: int,
    n_functions: int,
    a: float = 0.0,
    b: float = 1.0,
    binary: bool = False,
) -> DomainClass:
    """Random class on ``domain_size`` points with a random (Dirichlet) distribution."""
    if binary:
        vals = np.where(rng.random((domain_size, n_functions)) < 0.5, a, b)
    else:
        vals = rng.uniform(a, b, size=(domain_size, n_functions))
    mu = rng.dirichlet(np.ones(domain_size))
    return DomainClass(vals, mu, a, b)


def _sample_configurations(size, m, symmetric):
    if symmetric:
        return itertools.combinations_with_replacement(range(size), m)
    return itertools.product(range(size), repeat=m)


def _check_sample_function(values, offsets, beta, *, configs, check_name):
    """Generic (1, beta) check for ``g(S) = max_k (sum_j values[s_j, k] - offsets[k])``.

    ``g_i`` is the minimum of ``g`` over replacing ``s_i`` by any domain point.
    """
    configs = np.asarray(list(configs), dtype=np.int64)
    if configs.ndim == 1:
        configs = configs[None, :]
    # sums[t, k] for each configuration t
    sums = values[configs].sum(axis=1)
    g = (sums - offsets).max(axis=1)
    # replace position i by x: sums - values[s_i] + values[x]
    repl = sums[:, None, None, :] - values[configs][:, :, None, :] + values[None, None, :, :]
    g_repl = (repl - offsets).max(axis=3)  # (T, m, |X|)
    g_i = g_repl.min(axis=2)
    dec = g[:, None] - g_i
    slack = dec.sum(axis=1) - g - beta
    return SelfBoundingReport(
        alpha=1.0,
        beta=float(beta),
        max_single_decrement=float(dec.max()),
        min_single_decrement=float(dec.min()),
        max_sum_slack=float(slack.max()),
        weak=False,
        configurations_checked=int(len(configs)),
        mode="exhaustive",
        check=check_name,
    )


def _configs_for(dc_size, m, sample_indices, symmetric, order_seed, sample_budget, seed):
    """Sample configurations to visit, and whether the visit is exhaustive."""
    if sample_indices is not None:
        idx = np.asarray(sample_indices, dtype=np.int64)
        if idx.shape != (m,) or idx.min() < 0 or idx.max() >= dc_size:
            raise ValidationError(f"sample_indices must be {m} indices into a domain of size {dc_size}")
        return idx[None, :], "exhaustive"
    if dc_size > SAMPLE_ENUM_MAX_DOMAIN or m > SAMPLE_ENUM_MAX_M:
        if not sample_budget:
            raise CapacityError(
                f"exhaustive sample enumeration needs |X| <= {SAMPLE_ENUM_MAX_DOMAIN} and m <= "
                f"{SAMPLE_ENUM_MAX_M}, got |X|={dc_size}, m={m} (pass sample_budget to sample instead)"
            )
        rng = np.random.default_rng(seed)
        return rng.integers(0, dc_size, size=(sample_budget, m)), "sampled"
    configs = np.array(list(_sample_configurations(dc_size, m, symmetric)), dtype=np.int64)
    if order_seed is not None:
        configs = np.random.default_rng(order_seed).permutation(configs)
    return configs, "exhaustive"


def _run_checks(values, offsets, beta, configs, mode, check_name):
    # replacement tensors are (chunk, m, |X|, K); keep them near 32 MB
    per_config = configs.shape[1] * values.shape[0] * values.shape[1]
    chunk = max(1, 2**22 // per_config)
    reports = [
        _check_sample_function(values, offsets, beta, configs=configs[i:i + chunk], check_name=check_name)
        for i in range(0, len(configs), chunk)
    ]
    first = reports[0]
    return SelfBoundingReport(
        alpha=first.alpha,
        beta=first.beta,
        max_single_decrement=max(r.max_single_decrement for r in reports),
        min_single_decrement=min(r.min_single_decrement for r in reports),
        max_sum_slack=max(r.max_sum_slack for r in reports),
        weak=False,
        configurations_checked=sum(r.configurations_checked for r in reports),
        mode=mode,
        check=check_name,
    )


def verify_selfbounding_sd(
    dc: DomainClass,
    m: int,
    side: str = "pos",
    sample_indices=None,
    *,
    rescale: bool = False,
    symmetric: bool = True,
    order_seed: int | None = None,
    sample_budget: int | None = None,
    seed: int = 0,
) -> SelfBoundingReport:
    """Check that ``m SD+`` is ``(1, m eta_F)``-self-bounding (``m SD-`` with ``gamma_F``).

    Expectations are exact under ``dc.mu``. Requires ``c <= 1`` unless
    ``rescale`` divides the class by ``c``. Without ``sample_indices`` every
    sample of size ``m`` is visited; since ``g`` is symmetric in the sample,
    ``symmetric=True`` visits each multiset once. Beyond ``|X| <= 8`` and
    ``m <= 8``, ``sample_budget`` uniformly drawn samples are checked instead
    and the report says ``"sampled"``.
    """
    if side not in ("pos", "neg"):
        raise ValidationError(f"side must be 'pos' or 'neg', got {side!r}")
    if dc.c > 1.0:
        if not rescale:
            raise ValidationError(f"range width c={dc.c} exceeds 1; pass rescale=True")
        dc = DomainClass(dc.values / dc.c, dc.mu, dc.a / dc.c, dc.b / dc.c)
    if side == "neg":
        # SD- of F is SD+ of -F, whose eta is gamma_F
        vals, a = -dc.values, -dc.b
    else:
        vals, a = dc.values, dc.a
    means = dc.mu @ vals
    gap = float(means.max() - a)
    configs, mode = _configs_for(dc.size, m, sample_indices, symmetric, order_seed, sample_budget, seed)
    return _run_checks(vals, m * means, m * gap, configs, mode, f"sd-{side}")


def verify_selfbounding_wvar(
    dc: DomainClass,
    m: int,
    sample_indices=None,
    *,
    symmetric: bool = True,
    order_seed: int | None = None,
    sample_budget: int | None = None,
    seed: int = 0,
) -> SelfBoundingReport:
    """Check that ``m wvar_hat`` is ``(1, 0)``-self-bounding after dividing the class by ``z``."""
    vals = (dc.values / dc.z) ** 2
    configs, mode = _configs_for(dc.size, m, sample_indices, symmetric, order_seed, sample_budget, seed)
    return _run_checks(vals, np.zeros(vals.shape[1]), 0.0, configs, mode, "wvar")


def verify_selfbounding_mean_gap(
    dc: DomainClass,
    m: int,
    side: str = "eta",
    sample_indices=None,
    *,
    symmetric: bool = True,
    order_seed: int | None = None,
    sample_budget: int | None = None,
    seed: int = 0,
) -> SelfBoundingReport:
    """Check that ``m eta_hat`` (or ``m gamma_hat``) is ``(1, 0)``-self-bounding after dividing by ``c``.

    ``m eta_hat = max_k sum_j f_k(s_j) - m a``; the ``gamma`` side applies the
    same check to the negated class.
    """
    if side == "eta":
        vals, a = dc.values, dc.a
    elif side == "gamma":
        vals, a = -dc.values, -dc.b
    else:
        raise ValidationError(f"side must be 'eta' or 'gamma', got {side!r}")
    vals = (vals - a) / dc.c
    configs, mode = _configs_for(dc.size, m, sample_indices, symmetric, order_seed, sample_budget, seed)
    return _run_checks(vals, np.zeros(vals.shape[1]), 0.0, configs, mode, side)


# ---------------------------------------------------------------------------
# Coverage experiments


COVERAGE_KINDS = (
    Method.ERA_BD,
    Method.ERA_SB_NU,
    Method.ERA_SB_WVAR,
    Method.RC_FROM_ERA,
    Method.RC_N1_BD,
    Method.RC_N1_VAR,
    Method.WVAR_UB,
    Method.ETA_UB,
    Method.GAMMA_UB,
    Method.SD_BD,
    Method.SD_BOUSQUET,
    Method.SD_SB_POS,
    Method.SD_SB_NEG,
)


@dataclass(frozen=True)
class CoverageReport:
    bound_kind: Method
    trials: int
    failures: int
    delta: float
    m: int
    n: int
    seed: int
    details: dict = field(default_factory=dict)

    @property
    def failure_frequency(self) -> float:
        return self.failures / self.trials

    @property
    def within_tolerance(self) -> bool:
        """Failure frequency at most ``delta`` plus three binomial standard errors."""
        se = math.sqrt(self.delta * (1.0 - self.delta) / self.trials)
        return self.failure_frequency <= self.delta + 3.0 * se

    def to_dict(self) -> dict:
        return {
            "bound_kind": self.bound_kind.value,
            "trials": self.trials,
            "failures": self.failures,
            "failure_frequency": self.failure_frequency,
            "within_tolerance": self.within_tolerance,
            "delta": self.delta,
            "m": self.m,
            "n": self.n,
            "seed": self.seed,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def _multisets(dc: DomainClass, m: int):
    """Every sample multiset of size ``m`` with its probability under ``dc.mu``."""
    if dc.size**m > RC_EXACT_MAX_TUPLES:
        raise CapacityError(
            f"exact expectations over samples need |X|**m <= 2**20, got {dc.size}**{m}"
        )
    log_fact_m = math.lgamma(m + 1)
    out = []
    for combo in itertools.combinations_with_replacement(range(dc.size), m):
        counts = np.bincount(combo, minlength=dc.size)
        if np.any((counts > 0) & (dc.mu == 0)):
            continue
        logp = log_fact_m - sum(math.lgamma(k + 1) for k in counts)
        logp += float(np.sum(counts[counts > 0] * np.log(dc.mu[counts > 0])))
        out.append((combo, math.exp(logp)))
    return out


def _sd_values(dc: DomainClass, samples: np.ndarray, side: str) -> np.ndarray:
    means = dc.values[samples].mean(axis=-2)
    gap = means - dc.expectations() if side == "pos" else dc.expectations() - means
    return gap.max(axis=-1)


def coverage_experiment(
    dc: DomainClass,
    bound_kind,
    trials: int,
    delta: float,
    seed: int,
    m: int = 8,
    n: int = 2,
) -> CoverageReport:
    """Fraction of seeded trials in which a bound fails to cover its exact target.

    Each trial draws a fresh sample of size ``m`` from ``dc.mu`` (and, for the
    MCERA-based kinds, an ``n x m`` sign matrix), computes the bound exactly as
    a user would, and compares it with the ground truth computed by
    enumeration.
    """
    kind = Method(bound_kind)
    if kind not in COVERAGE_KINDS:
        raise ValidationError(f"no coverage experiment for {kind.value}")
    delta = B.check_delta(delta)
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    if m > ERA_EXACT_MAX_M and kind.value.startswith(("ERA", "RC")):
        raise CapacityError(f"exact ERA needs m <= {ERA_EXACT_MAX_M}, got m={m}")

    rng = np.random.default_rng(seed)
    samples = rng.choice(dc.size, size=(trials, m), p=dc.mu)
    n_eff = 1 if kind in (Method.RC_N1_BD, Method.RC_N1_VAR) else n
    signs = np.where(rng.random((trials, n_eff, m)) < 0.5, -1, 1).astype(np.int8)
    details = {}

    era_cache = {}

    def era_of(idx):
        key = tuple(sorted(idx.tolist()))
        if key not in era_cache:
            era_cache[key] = era_exact(dc.on_sample(np.array(key)))
        return era_cache[key]

    truth_rc = None
    if kind in (Method.RC_FROM_ERA, Method.RC_N1_BD, Method.RC_N1_VAR):
        truth_rc = sum(p * era_of(np.array(ms)) for ms, p in _multisets(dc, m))
        details["rc"] = truth_rc
    ez = None
    if kind in (Method.SD_BD, Method.SD_BOUSQUET, Method.SD_SB_POS, Method.SD_SB_NEG):
        side = "neg" if kind is Method.SD_SB_NEG else "pos"
        ms = _multisets(dc, m)
        sd = _sd_values(dc, np.array([x for x, _ in ms]), side)
        ez = float(np.dot([p for _, p in ms], sd))
        details["ez"] = ez
        z_obs = _sd_values(dc, samples, side)

    failures = 0
    for t in range(trials):
        idx = samples[t]
        if kind.value.startswith(("ERA", "RC", "WVAR", "ETA", "GAMMA")):
            ev = dc.on_sample(idx)
            st = class_stats(ev)
        if kind in (Method.ERA_BD, Method.ERA_SB_NU, Method.ERA_SB_WVAR):
            mc = float(mcera_batch(ev, signs[t][None])[0])
            if kind is Method.ERA_BD:
                bound = B.era_bound_bd(dc.z, n, m, delta, mcera=mc).value
            elif kind is Method.ERA_SB_NU:
                bound = B.era_bound_sb_nu(mc, st.z_hat, st.nu_hat, n, m, delta).value
            else:
                bound = B.era_bound_sb_wvar(mc, st.z_hat, st.wvar_hat, n, m, delta).value
            truth = era_of(idx)
        elif kind is Method.RC_FROM_ERA:
            bound = B.rc_bound_from_era(era_of(idx), dc.c, m, delta).value
            truth = truth_rc
        elif kind in (Method.RC_N1_BD, Method.RC_N1_VAR):
            mc = float(mcera_batch(ev, signs[t][None])[0])
            if kind is Method.RC_N1_BD:
                bound = B.rc_bound_n1_bd(mc, dc.z, m, delta).value
            else:
                bound = B.rc_bound_n1_var(mc, dc.z, dc.wimpy_variance(), m, delta).value
            truth = truth_rc
        elif kind is Method.WVAR_UB:
            bound = B.wvar_upper_bound(st.wvar_hat, dc.z, m, delta).value
            truth = dc.wimpy_variance()
        elif kind is Method.ETA_UB:
            bound = B.eta_upper_bound(st.eta_hat, dc.c, m, delta).value
            truth = dc.eta()
        elif kind is Method.GAMMA_UB:
            bound = B.gamma_upper_bound(st.gamma_hat, dc.c, m, delta).value
            truth = dc.gamma()
        else:
            c = dc.c
            if kind is Method.SD_BD:
                bound = B.sd_bound_bd(c, m, delta, ez_upper=ez).value
            elif kind is Method.SD_BOUSQUET:
                bound = B.sd_bound_bousquet(B.SupDeviationInputs(ez, dc.tau(), c, m), delta).value
            elif kind is Method.SD_SB_POS:
                bound = B.sd_bound_sb(B.SupDeviationInputs(ez, 0.0, c, m, eta=dc.eta()), "pos", delta).value
            else:
                bound = B.sd_bound_sb(B.SupDeviationInputs(ez, 0.0, c, m, gamma=dc.gamma()), "neg", delta).value
            truth = float(z_obs[t])
        if truth > bound:
            failures += 1
    return CoverageReport(kind, trials, failures, delta, m, n_eff, seed, details)
