import math

import pytest

import cellout


def test_dB_round_trip_and_q():
    assert cellout.linear_to_db(cellout.db_to_linear(-7.5)) == pytest.approx(-7.5, abs=1e-12)
    assert cellout.q_function(0.0) == 0.5
    assert cellout.q_function(1.0) == pytest.approx(0.5 * math.erfc(1 / math.sqrt(2)), rel=1e-14)


def test_network_and_moments():
    net = cellout.build_hex_network(1, 1.0)
    assert net.station_count == 7
    prof = cellout.distance_profile(net, 1.0, 0.0)
    assert sorted(prof.interferer_distances) == pytest.approx([1, 3**0.5, 3**0.5, 7**0.5, 7**0.5, 3])
    g = cellout.g_factor_discrete(prof, 3.0)
    y1 = cellout.y_factor_discrete(prof, 3.0)
    y2 = cellout.y_factor_discrete(prof, 6.0)
    assert g == pytest.approx(y2 / y1**2, rel=1e-12)
    m = cellout.yf_moments_discrete(prof, cellout.ChannelParams(eta=3.0, sigma_db=6.0))
    assert 1.0 <= m.h_factor <= 1.0 / math.sqrt(g)


def test_outage_curve_and_inversion():
    m = cellout.YfMoments(-2.0, 5.0)
    grid = [x * 0.5 for x in range(-40, 21)]
    curve = cellout.outage_curve(m, grid, cellout.OutageMode.FADING)
    assert all(a <= b for a, b in zip(curve.probs, curve.probs[1:]))
    d = cellout.sinr_at_outage(m, cellout.OutageMode.FADING, 0.1)
    assert cellout.outage_probability(m, d, cellout.OutageMode.FADING) == pytest.approx(0.1, abs=1e-6)
    adaptive = cellout.outage_probability(m, d, cellout.OutageMode.FADING, quadrature="adaptive")
    assert adaptive == pytest.approx(0.1, abs=1e-6)


def test_fluid_and_errors():
    fp = cellout.FluidParams.hexagonal(1000.0, 9000.0)
    assert 0.0 < cellout.g_fluid(1000.0, 3.0, fp) <= 1.0
    with pytest.raises(cellout.DomainError):
        cellout.y_fluid(1000.0, 2.0, fp)
    with pytest.raises(cellout.ModelViolationError):
        cellout.g_fluid(1000.0, 3.0, cellout.FluidParams.hexagonal(1000.0, 2001.0))
    radius, status = cellout.coverage_radius(
        cellout.ChannelParams(eta=4.0, sigma_db=3.0), fp, cellout.OutageMode.FADING, -15.0, 0.1)
    assert status in (cellout.CoverageStatus.INTERIOR, cellout.CoverageStatus.FULL_CELL)
    assert 0.0 < radius <= 1000.0


def test_simulation_is_reproducible():
    net = cellout.build_hex_network(2, 1000.0)
    params = cellout.ChannelParams(eta=3.0, sigma_db=6.0)
    a = cellout.simulate(net, params, 1000.0, n_angles=4, snapshots=200, seed=9, threads=1)
    b = cellout.simulate(net, params, 1000.0, n_angles=4, snapshots=200, seed=9, threads=3)
    assert len(a) == 800
    assert a == b
    curve, stderr = cellout.empirical_outage(a, [-30.0, 0.0, 30.0])
    assert curve.probs[0] <= curve.probs[1] <= curve.probs[2]
    assert len(stderr) == 3


def test_config_and_experiment(tmp_path):
    with pytest.raises(cellout.ConfigError, match="line 2"):
        cellout.parse_config('{\n  "chanel": {}\n}\n')
    cfg = cellout.parse_config('{"channel": {"sigma_db": 3}, "modes": {"models": ["fluid", "discrete"]}}')
    cfg.output_directory = tmp_path
    rows = cellout.run_experiment(cfg, threads=1)
    assert [r["model_a"] for r in rows] == ["fluid"]
    assert rows[0]["max_deviation"] < 0.2
    assert (tmp_path / "report.csv").exists()


def test_shipped_configs_match_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import json
    import pathlib

    root = pathlib.Path(__file__).resolve().parents[2]
    schema = json.loads((root / "docs" / "config.schema.json").read_text())
    for path in sorted((root / "configs").glob("*.json")):
        text = path.read_text()
        jsonschema.validate(json.loads(text), schema)
        cellout.parse_config(text)
