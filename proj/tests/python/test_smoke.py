import json
import math

import numpy as np
import pytest

import bladedisk

CONFIG = {
    "stages": [
        {
            "shaft": {
                "outer_diameter": 0.025,
                "inner_diameter": 0.015,
                "length": 0.5,
                "elements": 1,
            },
            "disk": {"diameter": 0.35, "thickness": 0.02, "density": 4430},
            "blades": {
                "count": 8,
                "width": 0.04,
                "root_thickness": 0.00515,
                "tip_thickness": 0.00065,
                "length": 0.4,
                "elements": 2,
                "downwash_angle": 0.3,
            },
        }
    ],
    "material": {"young_modulus": 2e11, "poisson": 0.31, "density": 7833},
    "aero": {
        "air_density": 1.22,
        "freestream_velocity": 200,
        "lift_coefficient": 0.02,
        "drag_coefficient": 0.03,
    },
    "rpm": {"rpm": 6000, "ramp_time": 0.2},
    "cracks": [{"blade": 1, "depth": 0.01, "location": 0.01}],
    "solver": {"duration": 0.6, "dt": 1e-4},
}


@pytest.fixture(scope="session")
def scenario():
    return bladedisk.load(json.dumps(CONFIG))


@pytest.fixture(scope="session")
def result(scenario):
    return bladedisk.simulate(scenario)


def test_scenario_loading(scenario):
    assert scenario.stage_count == 1
    assert scenario.duration == pytest.approx(0.6)
    assert "Scenario" in repr(scenario)


def test_simulate_channels(result):
    ts = result.series
    assert {"stage1_uX", "stage1_uY", "stage1_uZ"} <= set(ts.names)
    n = ts.samples
    assert n == int(round(CONFIG["solver"]["duration"] / CONFIG["solver"]["dt"])) + 1
    times = ts.times
    assert times.shape == (n,)
    assert times[0] == 0.0
    assert np.all(np.diff(times) > 0)
    for name in ts.names:
        values = ts.channel(name)
        assert values.shape == (n,)
        assert np.all(np.isfinite(values))
    assert result.rayleigh_a0 > 0
    assert result.rayleigh_a1 > 0
    assert np.all(np.diff(result.modal_frequencies_hz) >= 0)


def test_rotation_line_in_spectrum(result):
    ts = result.series
    times = ts.times
    mask = times >= 0.3
    spec = bladedisk.spectrum(ts.channel("stage1_uY")[mask], ts.dt)
    freqs = spec.frequencies
    amp = spec.amplitude
    band = (freqs >= 20.0) & (freqs <= 500.0)
    peak = freqs[band][np.argmax(amp[band])]
    rev = 6000.0 / 60.0
    assert min(abs(peak - k * rev) for k in (1, 2, 3, 4)) < 4.0
    floor = np.median(amp[band])
    assert amp[band].max() > 10.0 * floor


def test_modal_report(scenario):
    report = bladedisk.modal(scenario, "assembly", 8)
    assert report["case"] == "assembly"
    freqs = report["frequencies_hz"]
    assert len(freqs) == 8
    assert all(f > 0 for f in freqs)
    assert freqs == sorted(freqs)
    blade = bladedisk.modal(scenario, "blade", 3)["frequencies_hz"]
    assert blade[0] > 0


def test_manifest_roundtrip(scenario):
    manifest = bladedisk.manifest(scenario)
    again = bladedisk.load(json.dumps(manifest))
    assert bladedisk.manifest(again) == manifest


def test_validation_errors():
    bad = dict(CONFIG, solver={"duration": -1.0, "dt": 1e-4})
    with pytest.raises(ValueError):
        bladedisk.load(json.dumps(bad))
    with pytest.raises(bladedisk.ValidationError, match="not valid JSON"):
        bladedisk.load_text("not a config")
    assert issubclass(bladedisk.ValidationError, ValueError)
    assert issubclass(bladedisk.NumericalError, RuntimeError)


def test_signal_helpers():
    dt = 1e-3
    t = np.arange(0, 1.0, dt)
    x = np.sin(2 * math.pi * 50.0 * t)
    spec = bladedisk.spectrum(x, dt)
    k = int(np.argmax(spec.amplitude))
    assert spec.frequencies[k] == pytest.approx(50.0, abs=1.0)
    assert spec.amplitude[k] == pytest.approx(1.0, rel=0.05)

    gram = bladedisk.stft(x, dt, 256, 128)
    assert isinstance(gram.grid, np.ndarray)
    assert gram.grid.shape == (len(gram.frequencies), len(gram.times))
    hot = [int(np.argmax(gram.grid[:, j])) for j in range(gram.grid.shape[1])]
    for k in hot:
        assert gram.frequencies[k] == pytest.approx(50.0, abs=2 / (256 * dt))

    r = bladedisk.radial([3.0, 0.0], [4.0, 0.0])
    assert np.allclose(r, [5.0, 0.0])


def test_simulate_to_directory(scenario, tmp_path):
    out = tmp_path / "run"
    bladedisk.simulate_to_directory(scenario, str(out))
    assert (out / "timeseries.csv").is_file()
    assert (out / "radial_stage1.csv").is_file()
    manifest = json.loads((out / "run.json").read_text())
    assert manifest["stages"][0]["blades"]["count"] == 8
