"""
Exception hierarchy for the package.

Validation problems (bad parameters, bad boundary data, points outside
the admissible disk) raise :class:`ParameterError`, which is also a
``ValueError`` so that ordinary callers can catch it without importing
this module. Numerical failures that are not caused by the caller's
input raise :class:`ConvergenceError`. The command line front end maps
the two families onto different exit codes.
"""

from __future__ import annotations


class AlphaBetaError(Exception):
    """Base class for every error raised by the package."""


class ParameterError(AlphaBetaError, ValueError):
    """An input violates a documented precondition."""


class PoleError(ParameterError):
    """Gamma evaluated at (or numerically at) a nonpositive integer."""


class OrderTooHighError(ParameterError):
    """A derivative order beyond the implementation bound was requested."""


class ConvergenceError(AlphaBetaError, ArithmeticError):
    """A series hit its iteration cap without meeting the tolerance."""
