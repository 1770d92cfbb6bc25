"""Deterministic parameter sweeps comparing the bounds.

Each sweep fixes the sample size and confidence, varies one empirical quantity
on a log-spaced grid, and tabulates every competing bound as computed by
:mod:`mcrade.bounds`. The MCERA itself is replaced by a closed-form stand-in,
so the tables are exact functions of the configuration.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bounds as B
from .errors import ValidationError

__all__ = [
    "SweepConfig",
    "SweepTable",
    "CONTOUR_LEVELS",
    "simulated_mcera",
    "mcera_column",
    "sweep",
    "sweep_figure1",
    "sweep_figure2",
    "sweep_figure3",
    "figure1_panels",
    "figure2_panels",
    "figure3_panels",
]

CONTOUR_LEVELS = (0.95, 0.98, 1.0, 1.02, 1.05, 1.1, 1.15)


def simulated_mcera(x: float, m: int, C: float = 1e6) -> float:
    """Typical MCERA of a class whose relevant variance proxy equals ``x``.

    ``min(sqrt(x ln C / m), x)``: a Massart-style bound for ``C`` functions,
    capped by the proxy itself.
    """
    if not 0.0 < x <= 1.0:
        raise ValidationError(f"x must lie in (0, 1], got {x}")
    if not C > 1.0:
        raise ValidationError(f"C must exceed 1, got {C}")
    if m < 1:
        raise ValidationError(f"m must be >= 1, got {m}")
    return min(math.sqrt(x * math.log(C) / m), x)


def mcera_column(x: float, m: int, C: float, mode: str) -> float:
    return x if mode == "worst_case" else simulated_mcera(x, m, C)


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of one sweep panel.

    ``sweep_range`` defaults to ``[1/m, 1]`` (``[1/m, 1/2]`` for the
    deviation comparison, where both axes share the range).
    """

    figure: int
    m: int = 10**6
    n: int = 1
    delta: float = 0.05
    C: float = 1e6
    grid_points: int | None = None
    sweep_range: tuple | None = None
    mcera_mode: str = "simulated"

    def __post_init__(self):
        if self.figure not in (1, 2, 3):
            raise ValidationError(f"figure must be 1, 2 or 3, got {self.figure}")
        if int(self.m) != self.m or self.m < 2:
            raise ValidationError(f"m must be an integer >= 2, got {self.m}")
        if int(self.n) != self.n or self.n < 1:
            raise ValidationError(f"n must be an integer >= 1, got {self.n}")
        B.check_delta(self.delta)
        if not self.C > 1:
            raise ValidationError(f"C must exceed 1, got {self.C}")
        if self.mcera_mode not in ("simulated", "worst_case"):
            raise ValidationError(f"mcera_mode must be 'simulated' or 'worst_case', got {self.mcera_mode!r}")
        m = int(self.m)
        top = 0.5 if self.figure == 3 else 1.0
        points = self.grid_points if self.grid_points is not None else (100 if self.figure == 3 else 200)
        lo, hi = self.sweep_range if self.sweep_range is not None else (1.0 / m, top)
        lo, hi = float(lo), float(hi)
        # small tolerance so that a decimal rendering of 1/m is accepted
        if lo < (1.0 / m) * (1 - 1e-12) or hi > top or not lo < hi:
            raise ValidationError(f"sweep range must satisfy 1/m <= lo < hi <= {top}, got [{lo}, {hi}]")
        if int(points) != points or points < 2:
            raise ValidationError(f"grid_points must be an integer >= 2, got {points}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "C", float(self.C))
        object.__setattr__(self, "grid_points", int(points))
        object.__setattr__(self, "sweep_range", (lo, hi))

    def grid(self) -> np.ndarray:
        lo, hi = self.sweep_range
        g = np.geomspace(lo, hi, self.grid_points)
        # pin the endpoints exactly
        g[0], g[-1] = lo, hi
        return g

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sweep_range"] = list(self.sweep_range)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ValidationError(f"unknown sweep config keys: {sorted(unknown)}")
        d = dict(d)
        if d.get("sweep_range") is not None:
            d["sweep_range"] = tuple(d["sweep_range"])
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "SweepConfig":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SweepTable:
    columns: tuple
    rows: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        if rows.ndim != 2 or rows.shape[1] != len(self.columns):
            raise ValidationError(f"rows of shape {rows.shape} do not match {len(self.columns)} columns")
        if not np.all(np.isfinite(rows)):
            raise ValidationError("sweep produced a non-finite value")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "columns", tuple(self.columns))

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]

    def to_csv(self) -> str:
        out = io.StringIO()
        for key, value in self.metadata.items():
            if isinstance(value, (list, tuple)):
                value = ";".join(repr(float(v)) if isinstance(v, float) else str(v) for v in value)
            elif isinstance(value, float):
                value = repr(value)
            out.write(f"#{key}={value}\n")
        out.write(",".join(self.columns) + "\n")
        for row in self.rows:
            out.write(",".join(repr(float(x)) for x in row) + "\n")
        return out.getvalue()


def _metadata(cfg: SweepConfig, **extra) -> dict:
    meta = {
        "figure": cfg.figure,
        "m": cfg.m,
        "n": cfg.n,
        "delta": cfg.delta,
        "C": cfg.C,
        "grid_points": cfg.grid_points,
        "sweep_range": cfg.sweep_range,
        "mcera_mode": cfg.mcera_mode,
        "z": 1.0,
        "c": 1.0,
        "z_hat": 1.0,
    }
    meta.update(extra)
    return meta


def sweep_figure1(cfg: SweepConfig) -> SweepTable:
    """ERA bounds as the supremum mean absolute value ``nu_hat`` varies.

    Columns: ``mcera``, ``bd`` (bounded differences) and ``sb`` (self-bounding
    with ``nu_hat``). For a ``[0, 1]``-valued class ``nu_hat`` coincides with
    the largest empirical mean, which is what the sweep variable stands for.
    """
    if cfg.figure != 1:
        raise ValidationError("sweep_figure1 needs figure=1")
    rows = []
    for v in cfg.grid():
        mc = mcera_column(v, cfg.m, cfg.C, cfg.mcera_mode)
        bd = B.era_bound_bd(1.0, cfg.n, cfg.m, cfg.delta, mcera=mc).value
        sb = B.era_bound_sb_nu(mc, 1.0, v, cfg.n, cfg.m, cfg.delta).value
        rows.append((v, mc, bd, sb))
    return SweepTable(("sweep_var", "mcera", "bd", "sb"), rows, _metadata(cfg, sweep_var="nu_hat"))


def sweep_figure2(cfg: SweepConfig) -> SweepTable:
    """RC bounds as the empirical wimpy variance varies.

    Columns: ``bd_sb`` and ``sb_sb`` chain an ERA bound into the RC bound;
    for ``n = 1`` the single-vector variance-aware ``ew_db`` is added.
    """
    if cfg.figure != 2:
        raise ValidationError("sweep_figure2 needs figure=2")
    cols = ["sweep_var", "mcera", "bd_sb", "sb_sb"]
    if cfg.n == 1:
        cols.append("ew_db")
    rows = []
    for v in cfg.grid():
        mc = mcera_column(v, cfg.m, cfg.C, cfg.mcera_mode)
        row = [
            v,
            mc,
            B.rc_bound_bd_sb(mc, 1.0, 1.0, cfg.n, cfg.m, cfg.delta).value,
            B.rc_bound_sb_sb(mc, 1.0, v, 1.0, cfg.n, cfg.m, cfg.delta).value,
        ]
        if cfg.n == 1:
            row.append(B.rc_bound_ew_db(mc, 1.0, v, cfg.m, cfg.delta).value)
        rows.append(row)
    return SweepTable(cols, rows, _metadata(cfg, sweep_var="wvar_hat", delta_split="equal"))


def sweep_figure3(cfg: SweepConfig) -> SweepTable:
    """Bousquet versus one-sided self-bounding deviation bound, binary class.

    Long-format grid over ``(E[Z], eta)`` with ``tau = eta (1 - eta)`` and
    ``c = 1``; ``ratio`` is Bousquet divided by self-bounding, so values
    above 1 mark where the new bound is sharper.
    """
    if cfg.figure != 3:
        raise ValidationError("sweep_figure3 needs figure=3")
    g = cfg.grid()
    rows = []
    for ez in g:
        for eta in g:
            tau = eta * (1.0 - eta)
            vd = B.sd_bound_bousquet(B.SupDeviationInputs(ez, tau, 1.0, cfg.m), cfg.delta).value
            sb = B.sd_bound_sb(B.SupDeviationInputs(ez, 0.0, 1.0, cfg.m, eta=eta), "pos", cfg.delta).value
            rows.append((ez, eta, vd, sb, vd / sb))
    meta = _metadata(cfg, levels=CONTOUR_LEVELS, tau="eta*(1-eta)")
    for key in ("n", "C", "mcera_mode", "z", "z_hat"):
        meta.pop(key)
    return SweepTable(("ez", "eta", "vd", "sb", "ratio"), rows, meta)


def sweep(cfg: SweepConfig) -> SweepTable:
    return {1: sweep_figure1, 2: sweep_figure2, 3: sweep_figure3}[cfg.figure](cfg)


def figure1_panels(m: int = 10**6, delta: float = 0.05, C: float = 1e6) -> list:
    """Simulated panels for ``n`` in 1, 10, 100 plus the worst case at ``n = 10``."""
    cfgs = [SweepConfig(1, m, n, delta, C) for n in (1, 10, 100)]
    cfgs.append(SweepConfig(1, m, 10, delta, C, mcera_mode="worst_case"))
    return [(cfg, sweep_figure1(cfg)) for cfg in cfgs]


def figure2_panels(m: int = 10**6, delta: float = 0.05, C: float = 1e6) -> list:
    """Simulated panels for ``n`` in 1, 10, 100 plus the worst case at ``n = 1``."""
    cfgs = [SweepConfig(2, m, n, delta, C) for n in (1, 10, 100)]
    cfgs.append(SweepConfig(2, m, 1, delta, C, mcera_mode="worst_case"))
    return [(cfg, sweep_figure2(cfg)) for cfg in cfgs]


def figure3_panels(delta: float = 0.05) -> list:
    cfgs = [SweepConfig(3, m, delta=delta) for m in (10**3, 10**6)]
    return [(cfg, sweep_figure3(cfg)) for cfg in cfgs]
