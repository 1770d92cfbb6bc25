"""Closed-form concentration bounds and tail probabilities.

Every explicit bound here is the inversion, at confidence ``1 - delta``, of a
sub-gamma or Bennett-type tail. Unknown quantities (the ERA, the wimpy
variance, E[Z], ...) are explicit parameters; callers either know them or pass
an upper bound, which is sound because every bound is nondecreasing in them.

Notation used throughout: ``L = ln(1/delta)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError, TailValidityError, ValidationError

__all__ = [
    "Method",
    "BoundResult",
    "SupDeviationInputs",
    "TailKind",
    "check_delta",
    "bennett_h",
    "fixed_point",
    "era_bound_bd",
    "era_bound_sb_nu",
    "era_bound_sb_wvar",
    "clamp_era_bound",
    "rc_bound_from_era",
    "rc_bound_n1_bd",
    "rc_bound_n1_var",
    "wvar_upper_bound",
    "eta_upper_bound",
    "gamma_upper_bound",
    "tau_upper_bhatia_davis",
    "sd_bound_bd",
    "sd_bound_bousquet",
    "sd_bound_sb",
    "tail_probability",
    "split_delta",
    "rc_bound_bd_sb",
    "rc_bound_sb_sb",
    "rc_bound_ew_db",
    "sd_bound_chain",
]

# relative slack allowed on orderings that hold exactly in real arithmetic
_ORDER_RTOL = 1e-12


class Method(str, Enum):
    ERA_BD = "ERA_BD"
    ERA_SB_NU = "ERA_SB_NU"
    ERA_SB_WVAR = "ERA_SB_WVAR"
    RC_FROM_ERA = "RC_FROM_ERA"
    RC_N1_BD = "RC_N1_BD"
    RC_N1_VAR = "RC_N1_VAR"
    WVAR_UB = "WVAR_UB"
    ETA_UB = "ETA_UB"
    GAMMA_UB = "GAMMA_UB"
    SD_BD = "SD_BD"
    SD_BOUSQUET = "SD_BOUSQUET"
    SD_SB_POS = "SD_SB_POS"
    SD_SB_NEG = "SD_SB_NEG"
    TAU_BHATIA_DAVIS = "TAU_BHATIA_DAVIS"

    @property
    def cli_name(self) -> str:
        return self.value.lower().replace("_", "-")

    @classmethod
    def from_cli(cls, name: str) -> "Method":
        key = name.strip().upper().replace("-", "_")
        try:
            return cls(key)
        except ValueError:
            raise ValidationError(f"unknown bound method {name!r}") from None


@dataclass(frozen=True)
class BoundResult:
    value: float
    method: Method
    inputs: dict = field(default_factory=dict)
    delta: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise ValidationError(f"{self.method.value} produced invalid value {self.value!r}")

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "value": self.value,
            "delta": self.delta,
            "inputs": dict(self.inputs),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def check_delta(delta: float) -> float:
    delta = float(delta)
    if not 0.0 < delta < 1.0:
        raise ValidationError(f"delta must lie in (0, 1), got {delta}")
    return delta


def _log_inv(delta: float) -> float:
    return -math.log(check_delta(delta))


def _nonneg(**kwargs):
    for name, x in kwargs.items():
        if not (x >= 0 and math.isfinite(x)):
            raise ValidationError(f"{name} must be a finite nonnegative number, got {x!r}")


def _count(**kwargs):
    for name, x in kwargs.items():
        if int(x) != x or x < 1:
            raise ValidationError(f"{name} must be a positive integer, got {x!r}")


def _le(lhs_name, lhs, rhs_name, rhs):
    if lhs > rhs + _ORDER_RTOL * max(1.0, abs(rhs)):
        raise ValidationError(f"need {lhs_name} <= {rhs_name}, got {lhs!r} > {rhs!r}")


def bennett_h(x: float) -> float:
    """``(1 + x) ln(1 + x) - x`` on ``x >= -1``, with ``h(-1) = 1``."""
    x = float(x)
    if x < -1.0 or math.isnan(x):
        raise DomainError(f"bennett_h is defined for x >= -1, got {x}")
    if x == -1.0:
        return 1.0
    return (1.0 + x) * math.log1p(x) - x


def fixed_point(u: float, v: float, y: float) -> float:
    """Largest fixed point of ``r(x) = u + sqrt(v + y x)`` for ``u, v, y >= 0``."""
    for name, val in (("u", u), ("v", v), ("y", y)):
        if val < 0 or math.isnan(val):
            raise DomainError(f"fixed_point needs {name} >= 0, got {val}")
    return u + y / 2.0 + math.sqrt(y * y / 4.0 + u * y + v)


# ---------------------------------------------------------------------------
# Bounds on the ERA from the n-MCERA


def era_bound_bd(z: float, n: int, m: int, delta: float, mcera: float = 0.0) -> BoundResult:
    """Bounded-differences bound: ``ERA <= mcera + z sqrt(2 L / (n m))``.

    With the default ``mcera=0`` the value is the deviation term alone.
    """
    _nonneg(z=z, mcera=mcera)
    _count(n=n, m=m)
    L = _log_inv(delta)
    eps = z * math.sqrt(2.0 * L / (n * m))
    return BoundResult(mcera + eps, Method.ERA_BD, {"z": z, "n": n, "m": m, "mcera": mcera}, delta)


def era_bound_sb_nu(
    mcera: float, z_hat: float, nu_hat: float, n: int, m: int, delta: float
) -> BoundResult:
    """Self-bounding ERA bound driven by the supremum mean absolute value."""
    _nonneg(mcera=mcera, z_hat=z_hat, nu_hat=nu_hat)
    _count(n=n, m=m)
    _le("mcera", mcera, "nu_hat", nu_hat)
    _le("nu_hat", nu_hat, "z_hat", z_hat)
    L = _log_inv(delta)
    inputs = {"mcera": mcera, "z_hat": z_hat, "nu_hat": nu_hat, "n": n, "m": m}
    if z_hat == 0.0:
        return BoundResult(mcera, Method.ERA_SB_NU, inputs, delta)
    t = 2.0 * z_hat * L / (n * m)
    value = mcera + t + math.sqrt(t * t + 4.0 * z_hat * (mcera + nu_hat) * L / (n * m))
    return BoundResult(value, Method.ERA_SB_NU, inputs, delta)


def era_bound_sb_wvar(
    mcera: float, z_hat: float, wvar_hat: float, n: int, m: int, delta: float
) -> BoundResult:
    """Self-bounding ERA bound driven by the empirical wimpy variance."""
    _nonneg(mcera=mcera, z_hat=z_hat, wvar_hat=wvar_hat)
    _count(n=n, m=m)
    _le("wvar_hat", wvar_hat, "z_hat**2", z_hat * z_hat)
    L = _log_inv(delta)
    inputs = {"mcera": mcera, "z_hat": z_hat, "wvar_hat": wvar_hat, "n": n, "m": m}
    if z_hat == 0.0:
        return BoundResult(mcera, Method.ERA_SB_WVAR, inputs, delta)
    t = 2.0 * z_hat * L / (n * m)
    value = mcera + t + math.sqrt(t * t + 4.0 * (z_hat * mcera + wvar_hat) * L / (n * m))
    return BoundResult(value, Method.ERA_SB_WVAR, inputs, delta)


def clamp_era_bound(result: BoundResult, nu_hat: float) -> BoundResult:
    """Cap an ERA upper bound at ``nu_hat``, which always dominates the ERA."""
    if result.method not in (Method.ERA_BD, Method.ERA_SB_NU, Method.ERA_SB_WVAR):
        raise ValidationError(f"cannot clamp a {result.method.value} bound at nu_hat")
    _nonneg(nu_hat=nu_hat)
    inputs = dict(result.inputs, clamp_nu_hat=nu_hat)
    return BoundResult(min(result.value, nu_hat), result.method, inputs, result.delta)


# ---------------------------------------------------------------------------
# Bounds on the Rademacher complexity


def rc_bound_from_era(era_ub: float, c: float, m: int, delta: float) -> BoundResult:
    """RC bound from (an upper bound to) the ERA, using its self-bounding property."""
    _nonneg(era_ub=era_ub)
    _count(m=m)
    if not c > 0:
        raise ValidationError(f"c must be positive, got {c}")
    L = _log_inv(delta)
    t = c * L / m
    value = era_ub + t + math.sqrt(t * t + 2.0 * c * L * era_ub / m)
    return BoundResult(value, Method.RC_FROM_ERA, {"era_ub": era_ub, "c": c, "m": m}, delta)


def rc_bound_n1_bd(mcera1: float, z: float, m: int, delta: float) -> BoundResult:
    """RC bound from a single sign vector by bounded differences over (sample, sign) pairs."""
    _nonneg(mcera1=mcera1)
    _count(m=m)
    if not z > 0:
        raise ValidationError(f"z must be positive, got {z}")
    L = _log_inv(delta)
    value = mcera1 + z * math.sqrt(2.0 * L / m)
    return BoundResult(value, Method.RC_N1_BD, {"mcera1": mcera1, "z": z, "m": m}, delta)


def rc_bound_n1_var(mcera1: float, z: float, wvar_ub: float, m: int, delta: float) -> BoundResult:
    """Variance-aware RC bound from a single sign vector (left Bousquet tail).

    ``wvar_ub`` must upper bound the true wimpy variance, for instance the
    output of :func:`wvar_upper_bound`.
    """
    _nonneg(mcera1=mcera1, z=z, wvar_ub=wvar_ub)
    _count(m=m)
    L = _log_inv(delta)
    t = 2.0 * z * L / m
    value = (
        mcera1
        + math.sqrt(9.0 / 8.0 * t * t + 2.0 * (2.0 * z * mcera1 + wvar_ub) * L / m)
        + 17.0 * z * L / (8.0 * m)
    )
    return BoundResult(value, Method.RC_N1_VAR, {"mcera1": mcera1, "z": z, "wvar_ub": wvar_ub, "m": m}, delta)


# ---------------------------------------------------------------------------
# Estimators of wimpy variance and of the extreme expectations


def _selfbounding_ub(x_hat, scale, m, delta):
    L = _log_inv(delta)
    t = scale * L / m
    return x_hat + t + math.sqrt(t * t + 2.0 * scale * x_hat * L / m)


def wvar_upper_bound(wvar_hat: float, z: float, m: int, delta: float) -> BoundResult:
    _nonneg(wvar_hat=wvar_hat, z=z)
    _count(m=m)
    value = _selfbounding_ub(wvar_hat, z * z, m, delta)
    return BoundResult(value, Method.WVAR_UB, {"wvar_hat": wvar_hat, "z": z, "m": m}, delta)


def eta_upper_bound(eta_hat: float, c: float, m: int, delta: float) -> BoundResult:
    """Upper bound on ``sup_f E[f] - a`` from its empirical counterpart."""
    _nonneg(eta_hat=eta_hat, c=c)
    _count(m=m)
    value = _selfbounding_ub(eta_hat, c, m, delta)
    return BoundResult(value, Method.ETA_UB, {"eta_hat": eta_hat, "c": c, "m": m}, delta)


def gamma_upper_bound(gamma_hat: float, c: float, m: int, delta: float) -> BoundResult:
    """Upper bound on ``b - inf_f E[f]``; the ``eta`` bound applied to the negated class."""
    _nonneg(gamma_hat=gamma_hat, c=c)
    _count(m=m)
    value = _selfbounding_ub(gamma_hat, c, m, delta)
    return BoundResult(value, Method.GAMMA_UB, {"gamma_hat": gamma_hat, "c": c, "m": m}, delta)


def tau_upper_bhatia_davis(eta_ub: float, gamma_ub: float, c: float) -> BoundResult:
    """Upper bound on the largest variance in the class from bounds on eta and gamma.

    Each variance is at most ``(b - E f)(E f - a)``. The one-sided product
    bound ``eta (c - eta)`` is only valid when ``eta <= c / 2`` (the parabola
    is increasing there), and likewise for ``gamma``.
    """
    _nonneg(eta_ub=eta_ub, gamma_ub=gamma_ub)
    if not c > 0:
        raise ValidationError(f"c must be positive, got {c}")
    _le("eta_ub", eta_ub, "c", c)
    _le("gamma_ub", gamma_ub, "c", c)
    eta_ub, gamma_ub = min(eta_ub, c), min(gamma_ub, c)
    candidates = [c * c / 4.0, eta_ub * gamma_ub]
    if eta_ub <= c / 2.0:
        candidates.append(eta_ub * (c - eta_ub))
    if gamma_ub <= c / 2.0:
        candidates.append(gamma_ub * (c - gamma_ub))
    return BoundResult(
        min(candidates), Method.TAU_BHATIA_DAVIS, {"eta_ub": eta_ub, "gamma_ub": gamma_ub, "c": c}
    )


# ---------------------------------------------------------------------------
# Supremum deviations


@dataclass(frozen=True)
class SupDeviationInputs:
    """Quantities needed by the supremum-deviation bounds.

    ``ez_upper`` bounds E[Z] from above, e.g. twice an RC bound. ``eta`` and
    ``gamma`` are only needed by the one-sided self-bounding variants.
    """

    ez_upper: float
    tau: float
    c: float
    m: int
    eta: float | None = None
    gamma: float | None = None

    def __post_init__(self):
        _nonneg(ez_upper=self.ez_upper, tau=self.tau)
        _count(m=self.m)
        if not self.c > 0:
            raise ValidationError(f"c must be positive, got {self.c}")
        _le("tau", self.tau, "c**2/4", self.c * self.c / 4.0)
        if self.eta is not None:
            _nonneg(eta=self.eta)
        if self.gamma is not None:
            _nonneg(gamma=self.gamma)


def sd_bound_bd(c: float, m: int, delta: float, ez_upper: float = 0.0) -> BoundResult:
    """Bounded-differences deviation ``c sqrt(L / (2 m))`` (plus ``ez_upper``)."""
    _nonneg(ez_upper=ez_upper)
    _count(m=m)
    if not c > 0:
        raise ValidationError(f"c must be positive, got {c}")
    L = _log_inv(delta)
    value = ez_upper + c * math.sqrt(L / (2.0 * m))
    return BoundResult(value, Method.SD_BD, {"c": c, "m": m, "ez_upper": ez_upper}, delta)


def sd_bound_bousquet(inp: SupDeviationInputs, delta: float) -> BoundResult:
    L = _log_inv(delta)
    c, m = inp.c, inp.m
    value = inp.ez_upper + math.sqrt(2.0 * L * (inp.tau + 2.0 * c * inp.ez_upper) / m) + c * L / (3.0 * m)
    inputs = {"ez_upper": inp.ez_upper, "tau": inp.tau, "c": c, "m": m}
    return BoundResult(value, Method.SD_BOUSQUET, inputs, delta)


def sd_bound_sb(inp: SupDeviationInputs, side: str, delta: float) -> BoundResult:
    """One-sided self-bounding deviation bound.

    ``side="pos"`` bounds the positive deviation and needs ``inp.eta``;
    ``side="neg"`` bounds the negative one and needs ``inp.gamma``.
    """
    if side == "pos":
        x, name, method = inp.eta, "eta", Method.SD_SB_POS
    elif side == "neg":
        x, name, method = inp.gamma, "gamma", Method.SD_SB_NEG
    else:
        raise ValidationError(f"side must be 'pos' or 'neg', got {side!r}")
    if x is None:
        raise ValidationError(f"side={side!r} requires {name}")
    L = _log_inv(delta)
    c, m = inp.c, inp.m
    t = c * L / (3.0 * m)
    value = inp.ez_upper + math.sqrt(t * t + 2.0 * c * L * (inp.ez_upper + x) / m) + t
    return BoundResult(value, method, {"ez_upper": inp.ez_upper, name: x, "c": c, "m": m}, delta)


# ---------------------------------------------------------------------------
# Tail probabilities


class TailKind(str, Enum):
    ERA_BD = "era_bd"            # exp(-n m eps^2 / (2 z^2))
    RC_FROM_ERA = "rc_from_era"  # Bennett tail of the ERA around the RC
    ERA_SB_NU = "era_sb_nu"
    ERA_SB_WVAR = "era_sb_wvar"
    RC_N1_BD = "rc_n1_bd"
    WVAR = "wvar"
    ETA = "eta"
    GAMMA = "gamma"
    SD_BD = "sd_bd"
    SD_BOUSQUET = "sd_bousquet"
    SD_SB_POS = "sd_sb_pos"
    SD_SB_NEG = "sd_sb_neg"


# kinds whose tail has a Bennett form; `relaxed=True` selects the sub-gamma form
_BENNETT_KINDS = {TailKind.RC_FROM_ERA, TailKind.WVAR, TailKind.ETA, TailKind.GAMMA, TailKind.SD_BOUSQUET}

_TAIL_PARAMS = {
    TailKind.ERA_BD: ("z", "n", "m"),
    TailKind.RC_FROM_ERA: ("rc", "c", "m"),
    TailKind.ERA_SB_NU: ("era", "z_hat", "nu_hat", "n", "m"),
    TailKind.ERA_SB_WVAR: ("era", "z_hat", "wvar_hat", "n", "m"),
    TailKind.RC_N1_BD: ("z", "m"),
    TailKind.WVAR: ("wvar", "z", "m"),
    TailKind.ETA: ("eta", "c", "m"),
    TailKind.GAMMA: ("gamma", "c", "m"),
    TailKind.SD_BD: ("c", "m"),
    TailKind.SD_BOUSQUET: ("ez", "tau", "c", "m"),
    TailKind.SD_SB_POS: ("ez", "eta", "c", "m"),
    TailKind.SD_SB_NEG: ("ez", "gamma", "c", "m"),
}


def _gauss(num, den):
    """``exp(-num / den)`` with the conventions 0/0 -> 0 and x/0 -> inf."""
    if num == 0.0:
        return 1.0
    if den <= 0.0:
        return 0.0
    return math.exp(-num / den)


def _left_bennett(eps, center, scale, m):
    # exp(-(m center / scale) h(-eps / center)), needs eps <= center
    return math.exp(-(m * center / scale) * bennett_h(-eps / center))


def tail_probability(kind, epsilon: float, *, relaxed: bool = False, **params) -> float:
    """Right-hand side of the tail inequality named by ``kind`` at deviation ``epsilon``.

    ``params`` supplies the quantities the formula uses (see ``TailKind``);
    for the ERA kinds ``era`` may be any upper bound to the ERA, such as
    ``nu_hat``. Tails that are only valid for ``epsilon`` below the centre
    raise :class:`TailValidityError` beyond it. The result is clamped to
    ``[0, 1]``.
    """
    try:
        kind = TailKind(kind)
    except ValueError:
        raise ValidationError(f"unknown tail kind {kind!r}") from None
    needed = _TAIL_PARAMS[kind]
    missing = [p for p in needed if p not in params]
    if missing:
        raise ValidationError(f"tail kind {kind.value} needs parameters {missing}")
    extra = set(params) - set(needed)
    if extra:
        raise ValidationError(f"tail kind {kind.value} does not take {sorted(extra)}")
    if relaxed and kind not in _BENNETT_KINDS:
        raise ValidationError(f"tail kind {kind.value} has no Bennett form to relax")
    p = {k: float(v) for k, v in params.items()}
    for k, v in p.items():
        if v < 0 or not math.isfinite(v):
            raise ValidationError(f"parameter {k} must be finite and nonnegative, got {v}")
    eps = float(epsilon)
    if eps < 0 or math.isnan(eps):
        raise ValidationError(f"epsilon must be nonnegative, got {epsilon}")
    if eps == 0.0:
        return 1.0

    def left_tail_guard(center_name):
        if eps > p[center_name] * (1 + _ORDER_RTOL):
            raise TailValidityError(
                f"tail kind {kind.value} holds only for epsilon <= {center_name} "
                f"({eps!r} > {p[center_name]!r})"
            )

    m = p["m"]
    if kind is TailKind.ERA_BD:
        out = _gauss(p["n"] * m * eps * eps, 2.0 * p["z"] ** 2)
    elif kind is TailKind.RC_N1_BD:
        out = _gauss(m * eps * eps, 2.0 * p["z"] ** 2)
    elif kind is TailKind.SD_BD:
        out = _gauss(2.0 * m * eps * eps, p["c"] ** 2)
    elif kind in (TailKind.ERA_SB_NU, TailKind.ERA_SB_WVAR):
        left_tail_guard("era")
        if kind is TailKind.ERA_SB_NU:
            den = 4.0 * p["z_hat"] * (p["era"] + p["nu_hat"])
        else:
            den = 4.0 * (p["z_hat"] * p["era"] + p["wvar_hat"])
        out = _gauss(p["n"] * m * eps * eps, den)
    elif kind in (TailKind.RC_FROM_ERA, TailKind.WVAR, TailKind.ETA, TailKind.GAMMA):
        center_name, scale = {
            TailKind.RC_FROM_ERA: ("rc", p.get("c")),
            TailKind.WVAR: ("wvar", p.get("z", 0.0) ** 2),
            TailKind.ETA: ("eta", p.get("c")),
            TailKind.GAMMA: ("gamma", p.get("c")),
        }[kind]
        left_tail_guard(center_name)
        center = p[center_name]
        if scale == 0.0:
            out = 0.0
        elif relaxed:
            out = _gauss(m * eps * eps, 2.0 * scale * center)
        else:
            out = _left_bennett(min(eps, center), center, scale, m)
    elif kind is TailKind.SD_BOUSQUET:
        c = p["c"]
        v = p["tau"] + 2.0 * c * p["ez"]
        if relaxed:
            out = _gauss(m * eps * eps, 2.0 * (v + c * eps / 3.0))
        elif v == 0.0:
            out = 0.0
        else:
            # Bennett form for ranges c != 1: exp(-(m v / c^2) h(c eps / v))
            out = math.exp(-(m * v / (c * c)) * bennett_h(c * eps / v))
    else:
        x = p["eta"] if kind is TailKind.SD_SB_POS else p["gamma"]
        out = _gauss(m * eps * eps, 2.0 * p["c"] * (p["ez"] + x + eps / 3.0))
    return min(1.0, max(0.0, out))


# ---------------------------------------------------------------------------
# Chained bounds. Each probabilistic step gets an equal share of delta, so the
# chain holds with probability >= 1 - delta by the union bound.


def split_delta(delta: float, parts: int) -> float:
    check_delta(delta)
    _count(parts=parts)
    return delta / parts


def rc_bound_bd_sb(mcera: float, z: float, c: float, n: int, m: int, delta: float) -> BoundResult:
    """RC bound via the bounded-differences ERA bound, then the ERA self-bounding bound."""
    d = split_delta(delta, 2)
    era = era_bound_bd(z, n, m, d, mcera=mcera)
    rc = rc_bound_from_era(era.value, c, m, d)
    return BoundResult(
        rc.value, Method.RC_FROM_ERA,
        {"chain": "ERA_BD>RC_FROM_ERA", "delta_split": [d, d], "mcera": mcera, "z": z, "c": c,
         "n": n, "m": m, "era_ub": era.value},
        delta,
    )


def rc_bound_sb_sb(
    mcera: float, z_hat: float, wvar_hat: float, c: float, n: int, m: int, delta: float
) -> BoundResult:
    """RC bound via the wimpy-variance ERA bound, then the ERA self-bounding bound."""
    d = split_delta(delta, 2)
    era = era_bound_sb_wvar(mcera, z_hat, wvar_hat, n, m, d)
    rc = rc_bound_from_era(era.value, c, m, d)
    return BoundResult(
        rc.value, Method.RC_FROM_ERA,
        {"chain": "ERA_SB_WVAR>RC_FROM_ERA", "delta_split": [d, d], "mcera": mcera, "z_hat": z_hat,
         "wvar_hat": wvar_hat, "c": c, "n": n, "m": m, "era_ub": era.value},
        delta,
    )


def rc_bound_ew_db(mcera1: float, z: float, wvar_hat: float, m: int, delta: float) -> BoundResult:
    """Single-vector variance-aware RC bound with the wimpy variance estimated from the sample."""
    d = split_delta(delta, 2)
    wv = wvar_upper_bound(wvar_hat, z, m, d)
    rc = rc_bound_n1_var(mcera1, z, wv.value, m, d)
    return BoundResult(
        rc.value, Method.RC_N1_VAR,
        {"chain": "WVAR_UB>RC_N1_VAR", "delta_split": [d, d], "mcera1": mcera1, "z": z,
         "wvar_hat": wvar_hat, "m": m, "wvar_ub": wv.value},
        delta,
    )


def sd_bound_chain(
    method, mcera: float, z_hat: float, wvar_hat: float, eta_hat: float, gamma_hat: float,
    c: float, n: int, m: int, delta: float,
) -> BoundResult:
    """Supremum-deviation bound computed from sample quantities only.

    E[Z] is bounded by twice the RC bound of :func:`rc_bound_sb_sb`; the
    extreme expectations come from :func:`eta_upper_bound` and
    :func:`gamma_upper_bound`, and the variance proxy from
    :func:`tau_upper_bhatia_davis`. Every probabilistic step receives an equal
    share of ``delta``.
    """
    method = Method(method)
    extra = {
        Method.SD_BD: (),
        Method.SD_SB_POS: ("eta",),
        Method.SD_SB_NEG: ("gamma",),
        Method.SD_BOUSQUET: ("eta", "gamma"),
    }
    if method not in extra:
        raise ValidationError(f"{method.value} is not a supremum-deviation method")
    parts = 3 + len(extra[method])
    d = split_delta(delta, parts)
    era = era_bound_sb_wvar(mcera, z_hat, wvar_hat, n, m, d)
    rc = rc_bound_from_era(era.value, c, m, d)
    ez = 2.0 * rc.value
    eta = min(eta_upper_bound(eta_hat, c, m, d).value, c) if "eta" in extra[method] else None
    gamma = min(gamma_upper_bound(gamma_hat, c, m, d).value, c) if "gamma" in extra[method] else None
    if method is Method.SD_BD:
        res = sd_bound_bd(c, m, d, ez_upper=ez)
    elif method is Method.SD_BOUSQUET:
        tau = tau_upper_bhatia_davis(eta, gamma, c).value
        res = sd_bound_bousquet(SupDeviationInputs(ez, tau, c, m), d)
    else:
        side = "pos" if method is Method.SD_SB_POS else "neg"
        res = sd_bound_sb(SupDeviationInputs(ez, 0.0, c, m, eta=eta, gamma=gamma), side, d)
    inputs = dict(res.inputs)
    inputs.update({"chain": f"ERA_SB_WVAR>RC_FROM_ERA>{method.value}", "delta_split": [d] * parts,
                   "mcera": mcera, "n": n, "era_ub": era.value, "rc_ub": rc.value})
    return BoundResult(res.value, method, inputs, delta)
