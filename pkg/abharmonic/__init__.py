"""
Numerical toolkit for (alpha, beta)-harmonic functions on the unit disk.

The package solves the Dirichlet problem for the operator

    Delta_{alpha,beta} = (1-|z|^2) d dbar + alpha z d + beta conj(z) dbar - alpha beta

by a Poisson-type integral and by hypergeometric series, evaluates the
closed-form bounds on integral means, derivatives and series
coefficients, and checks them numerically. :func:`get_suite` resolves a
verification suite by name.
"""

from __future__ import annotations

from importlib import import_module
from typing import Callable

__all__ = [
    "errors",
    "config",
    "specfun",
    "kernel",
    "boundary",
    "numdiff",
    "dirichlet",
    "series",
    "bounds",
    "verify",
    "export",
    "cli",
    "get_suite",
    "SUITES",
]

SUITES = {
    "all": "run_all",
    "t31": "run_t31",
    "t32": "run_t32",
    "t33": "run_t33",
    "t44": "run_t44",
    "t45": "run_t45",
    "subharmonic": "run_subharmonic",
    "residual": "residual_suite",
    "sharpness": "run_sharpness",
}


def get_suite(name: str) -> Callable:
    """Return the verification suite runner registered under ``name``.

    Parameters
    ----------
    name : str
        Suite name (case insensitive), one of the keys of :data:`SUITES`.

    Returns
    -------
    callable
        A function taking a :class:`~abharmonic.verify.SuiteConfig` and
        returning a :class:`~abharmonic.verify.VerificationReport`.

    Raises
    ------
    KeyError
        If no suite is registered under ``name``.
    """
    name = name.lower().strip()
    if name not in SUITES:
        raise KeyError(f"No verification suite named: {name}")
    return getattr(import_module(".verify", __name__), SUITES[name])
