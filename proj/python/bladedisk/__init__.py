"""Reduced-order bladed-disk rotor dynamics simulator."""

import json as _json

from ._core import (
    NumericalError,
    Scenario,
    SimulationResult,
    Spectrogram,
    Spectrum,
    TimeSeries,
    ValidationError,
    load_file,
    load_text,
    radial,
    run_sweep,
    simulate,
    simulate_to_directory,
    spectrum,
    stage_difference_spectrum,
    stft,
)
from ._core import modal_report_json as _modal_report_json

__all__ = [
    "NumericalError",
    "Scenario",
    "SimulationResult",
    "Spectrogram",
    "Spectrum",
    "TimeSeries",
    "ValidationError",
    "load",
    "load_file",
    "load_text",
    "manifest",
    "modal",
    "radial",
    "run_sweep",
    "simulate",
    "simulate_to_directory",
    "spectrum",
    "stage_difference_spectrum",
    "stft",
]


def load(source):
    """Load a scenario from a JSON config file path or from JSON text."""
    text = str(source)
    if text.lstrip().startswith("{"):
        return load_text(text)
    return load_file(text)


def modal(scenario, case="assembly", count=10):
    """Modal report as a dict for one of the cases blade, shaft, assembly."""
    return _json.loads(_modal_report_json(scenario, case, count))


def manifest(scenario):
    """Fully resolved configuration as a dict."""
    return _json.loads(scenario.manifest())
