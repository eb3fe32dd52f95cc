import math

import pytest

import fene2d


def test_spectral_gap_k1():
    assert fene2d.spectral_gap(1.0, 24) == pytest.approx(5.548074418, abs=1e-9)


def test_gauss_jacobi_integrates_weight():
    nodes, weights = fene2d.gauss_jacobi(6, 1.0, 0.0)
    assert len(nodes) == 6
    # int_0^1 (1 - s) ds = 1/2, int_0^1 (1 - s) s^3 ds = 1/20
    assert sum(weights) == pytest.approx(0.5, rel=1e-14)
    assert sum(w * x**3 for x, w in zip(nodes, weights)) == pytest.approx(0.05, rel=1e-13)


def test_fits_recover_synthetic_exponents():
    t = [0.5 * i for i in range(1, 60)]
    p = fene2d.decay_fit(t, [3.0 * (1 + s) ** -0.5 for s in t], 2.0, 25.0)
    assert p.slope == pytest.approx(-0.5, abs=1e-10)
    assert p.r2 == pytest.approx(1.0, abs=1e-12)
    e = fene2d.exp_fit(t, [math.exp(-2.0 * s) for s in t], 0.0, 10.0)
    assert e.slope == pytest.approx(-2.0, abs=1e-10)


def test_config_round_trip_and_errors():
    cfg = fene2d.parse_config("[fene]\nk = 2\nn_r = 6\n[time]\ndt = 0.01\n")
    assert cfg.fene.k == 2.0 and cfg.fene.n_r == 6 and cfg.dt == 0.01
    again = fene2d.parse_config(cfg.canonical_text())
    assert again.canonical_text() == cfg.canonical_text()
    with pytest.raises(fene2d.ConfigError, match="unknown key: foo"):
        fene2d.parse_config("[fene]\nfoo = 1\n")
    with pytest.raises(ValueError):
        fene2d.parse_config("[fene]\nk = 0.4\n[diagnostics]\np_entropy_p = 2\n")


def test_taylor_green_energy_decay(tmp_path):
    cfg = fene2d.parse_config(
        "[grid]\nnx = 32\nny = 32\n[time]\ndt = 0.001\nt_end = 0.1\nsample_every = 10\n"
        "[init]\nu_preset = taylor_green\n"
    )
    res = fene2d.run_simulation(cfg, tmp_path)
    assert res.status == 0
    s = res.series
    e0 = s["energy_u"][0]
    for t, e in zip(s["t"], s["energy_u"]):
        assert e == pytest.approx(e0 * math.exp(-4.0 * t), rel=1e-6)
    assert max(s["mass_defect"]) < 1e-12
    assert fene2d.read_csv_column(tmp_path / "series.csv", "energy_u")[-1] == pytest.approx(s["energy_u"][-1])
    norms = fene2d.checkpoint_norms(tmp_path / "checkpoint.bin")
    assert norms["t"] == pytest.approx(0.1)
    assert norms["besov_b011"] >= norms["l1"]


def test_heat_baseline_is_exact():
    cfg = fene2d.parse_config("[grid]\nnx = 16\nny = 16\n[time]\nt_end = 0.5\n[init]\nu_preset = taylor_green\n")
    res = fene2d.run_heat_baseline(cfg)
    s = res.series
    assert s["energy_u"][-1] == pytest.approx(s["energy_u"][0] * math.exp(-4.0 * s["t"][-1]), rel=1e-12)


def test_identities_suite_passes():
    lines = fene2d.run_suite("identities")
    assert lines and all(ok for _, ok, _ in lines)
