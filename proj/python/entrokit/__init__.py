"""Numerical toolkit for differential Shannon and Renyi entropies."""

try:
    from ._core import (  # type: ignore[attr-defined]
        Density,
        closed_form,
        converge,
        density,
        discrete_entropy,
        discretized,
        entropy,
        local_comparability,
        mu_alpha,
        sigma_alpha,
        thresholds,
    )
except ImportError:  # module built outside the package (plain CMake build)
    from _core import (  # type: ignore[no-redef]
        Density,
        closed_form,
        converge,
        density,
        discrete_entropy,
        discretized,
        entropy,
        local_comparability,
        mu_alpha,
        sigma_alpha,
        thresholds,
    )

__all__ = [
    "Density",
    "closed_form",
    "converge",
    "density",
    "discrete_entropy",
    "discretized",
    "entropy",
    "local_comparability",
    "mu_alpha",
    "sigma_alpha",
    "thresholds",
]

__version__ = "0.1.0"
