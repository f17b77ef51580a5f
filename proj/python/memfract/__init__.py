"""Memfractance extraction from cyclic-voltammetry sweeps."""

from ._core import (
    FitStats,
    FracOrderPair,
    MemfractanceModel,
    NoFeasibleCandidate,
    ParseError,
    PiecewisePolynomial,
    Polynomial,
    SweepConfig,
    __version__,
    classify,
    detect_spikes,
    fit_polynomial,
    gamma,
    gl_derivative,
    load_polynomial_file,
    recip_gamma,
    rl_derivative,
    search,
    simulate_ideal_memristor,
    synth_memfractor,
)

__all__ = [
    "FitStats",
    "FracOrderPair",
    "MemfractanceModel",
    "NoFeasibleCandidate",
    "ParseError",
    "PiecewisePolynomial",
    "Polynomial",
    "SweepConfig",
    "__version__",
    "classify",
    "detect_spikes",
    "fit_polynomial",
    "gamma",
    "gl_derivative",
    "load_polynomial_file",
    "recip_gamma",
    "rl_derivative",
    "search",
    "simulate_ideal_memristor",
    "synth_memfractor",
]
