import math

import numpy as np
import pytest

from mcrade.errors import ValidationError
from mcrade.simulation import (
    CONTOUR_LEVELS,
    SweepConfig,
    figure1_panels,
    figure2_panels,
    figure3_panels,
    simulated_mcera,
    sweep,
    sweep_figure1,
    sweep_figure2,
)


def test_simulated_mcera_values():
    m = 10**6
    assert simulated_mcera(1 / m, m, 1e6) == 1 / m
    assert simulated_mcera(1.0, m, 1e6) == pytest.approx(3.7170e-3, rel=1e-4)
    assert simulated_mcera(1.0, m, 1e6) == math.sqrt(math.log(1e6) / m)


@pytest.mark.parametrize("x,C", [(0.0, 10.0), (1.5, 10.0), (0.5, 1.0)])
def test_simulated_mcera_domain(x, C):
    with pytest.raises(ValidationError):
        simulated_mcera(x, 100, C)


def test_config_validation():
    with pytest.raises(ValidationError):
        SweepConfig(4)
    with pytest.raises(ValidationError):
        SweepConfig(1, m=100, sweep_range=(1e-3, 1.0))
    with pytest.raises(ValidationError):
        SweepConfig(3, m=100, sweep_range=(0.01, 0.9))
    with pytest.raises(ValidationError):
        SweepConfig(1, mcera_mode="other")
    with pytest.raises(ValidationError):
        SweepConfig.from_dict({"figure": 1, "bogus": 2})


def test_config_dict_round_trip():
    cfg = SweepConfig(2, m=1000, n=3, grid_points=17)
    assert SweepConfig.from_dict(cfg.to_dict()) == cfg


def test_grid_log_spaced_with_exact_ends():
    g = SweepConfig(1, m=1000).grid()
    assert len(g) == 200 and g[0] == 1e-3 and g[-1] == 1.0
    assert np.allclose(np.diff(np.log(g)), np.log(1000) / 199)


def test_figure1_columns():
    cfg = SweepConfig(1, n=10)
    t = sweep_figure1(cfg)
    assert t.columns == ("sweep_var", "mcera", "bd", "sb")
    assert len(t.rows) == 200
    mc, bd, sb = t.column("mcera"), t.column("bd"), t.column("sb")
    assert np.all(bd >= mc) and np.all(sb >= mc)
    # bd at the left end: 1/m plus the deviation term
    assert bd[0] == pytest.approx(1e-6 + 2.44775e-3 / math.sqrt(10), rel=1e-5)
    assert np.all(np.diff(sb) >= 0)
    v = t.column("sweep_var")
    assert np.all(sb[v <= 0.25] < bd[v <= 0.25])


def test_figure1_worst_case_mcera_equals_sweep_variable():
    t = sweep_figure1(SweepConfig(1, mcera_mode="worst_case"))
    assert np.array_equal(t.column("mcera"), t.column("sweep_var"))


def test_figure2_columns():
    t1 = sweep_figure2(SweepConfig(2, n=1))
    t10 = sweep_figure2(SweepConfig(2, n=10))
    assert "ew_db" in t1.columns and "ew_db" not in t10.columns
    for t in (t1, t10):
        mc = t.column("mcera")
        assert all(np.all(t.column(c) >= mc) for c in t.columns[2:])
    # small wimpy variance with one sign vector: EW-DB is sharpest
    assert t1.column("ew_db")[0] < t1.column("sb_sb")[0]


def test_figure3_long_format():
    cfg = SweepConfig(3, m=1000, grid_points=20)
    t = sweep(cfg)
    assert t.columns == ("ez", "eta", "vd", "sb", "ratio")
    assert len(t.rows) == 400
    assert t.metadata["levels"] == CONTOUR_LEVELS
    assert np.all(np.isfinite(t.column("ratio")))
    assert np.allclose(t.column("ratio"), t.column("vd") / t.column("sb"))


def test_figure3_bounds_shrink_with_m():
    panels = figure3_panels()
    assert [c.m for c, _ in panels] == [10**3, 10**6]
    # same (ez, eta) grid, larger m: every bound column shrinks
    sm = sweep(SweepConfig(3, m=1000, sweep_range=(1e-3, 0.5), grid_points=10))
    lg = sweep(SweepConfig(3, m=10**6, sweep_range=(1e-3, 0.5), grid_points=10))
    assert np.array_equal(sm.rows[:, :2], lg.rows[:, :2])
    assert np.all(lg.column("vd") <= sm.column("vd")) and np.all(lg.column("sb") <= sm.column("sb"))


def test_default_panels():
    f1 = figure1_panels()
    assert [(c.n, c.mcera_mode) for c, _ in f1] == [(1, "simulated"), (10, "simulated"), (100, "simulated"), (10, "worst_case")]
    f2 = figure2_panels()
    assert [(c.n, c.mcera_mode) for c, _ in f2] == [(1, "simulated"), (10, "simulated"), (100, "simulated"), (1, "worst_case")]


def test_csv_layout_and_determinism():
    cfg = SweepConfig(1, m=1000, grid_points=5)
    text = sweep(cfg).to_csv()
    lines = text.splitlines()
    meta = [ln for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if not ln.startswith("#")]
    assert "#figure=1" in meta and "#sweep_var=nu_hat" in meta
    assert body[0] == "sweep_var,mcera,bd,sb" and len(body) == 6
    assert text == sweep(SweepConfig(1, m=1000, grid_points=5)).to_csv()
    # repr floats round-trip exactly
    row = [float(x) for x in body[1].split(",")]
    assert row == sweep(cfg).rows[0].tolist()
