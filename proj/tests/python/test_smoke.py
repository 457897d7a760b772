import pytest

import hcran


def test_power_constants():
    assert hcran.total_power("mbs", 20.0) == 864.4
    assert hcran.total_power("sbs", 0.0) == 32.0
    with pytest.raises(ValueError):
        hcran.total_power("rrh", 1.0)


def test_jain_index():
    assert hcran.jain_index([1.0, 1.0, 1.0]) == pytest.approx(1.0)
    assert hcran.jain_index([1.0, 0.0]) == pytest.approx(0.5)


def test_resolve_config_applies_overrides():
    text = hcran.resolve_config("delay_sweep", "seeds = 3\n", ["v=1,2"])
    lines = dict(line.split(" = ", 1) for line in text.splitlines())
    assert lines["experiment"] == "delay_sweep"
    assert lines["seeds"] == "3"
    assert lines["v"] == "1, 2"
    assert "alpha" in hcran.config_keys("delay_sweep")


def test_config_error_is_value_error():
    with pytest.raises(hcran.ConfigError, match="v"):
        hcran.resolve_config("delay_sweep", overrides=["v=-1"])
    with pytest.raises(ValueError):
        hcran.resolve_config("delay_sweep", "no_such_key = 1\n")


def test_run_experiment_small_ee_sweep():
    out = hcran.run_experiment("ee_sweep", overrides=["instances=3", "circuit_power=0.2,1.0"])
    assert out["header"][:3] == ["seed", "circuit_power", "mode"]
    assert len(out["rows"]) == 3 * 2 * 2
    assert out["metadata"]["hcran_version"] == hcran.__version__
    ee = out["header"].index("ee")
    for joint, only in zip(out["rows"][::2], out["rows"][1::2]):
        assert float(joint[ee]) >= float(only[ee])
    again = hcran.run_experiment("ee_sweep", overrides=["instances=3", "circuit_power=0.2,1.0"])
    assert again["csv"] == out["csv"]


def test_oracle_passes():
    out = hcran.run_experiment("oracle", "kind = trace_replay\n")
    passed = out["header"].index("passed")
    assert out["rows"][0][passed] == "true"
