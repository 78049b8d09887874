"""
Numerical configuration.

All node counts and radius caps used by the quadrature based solvers
live in a single :class:`QuadratureConfig`. The defaults are the values
the verification harness is calibrated against; the node floor of the
Poisson-type quadrature may be raised (or lowered, down to 64) through
the ``ABH_QUAD_NODES`` environment variable.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from .errors import ParameterError

logger = logging.getLogger(__name__)

QUAD_NODES_ENV = "ABH_QUAD_NODES"
MIN_NODE_FLOOR = 64


@dataclass(frozen=True)
class QuadratureConfig:
    """Node counts and caps for the quadrature based computations.

    Attributes
    ----------
    node_floor : int
        Smallest number of periodic trapezoid nodes used by the
        Poisson-type integral.

    max_radius : float
        Largest admissible evaluation radius; beyond it the trapezoid
        rule needs too many nodes for double precision.

    norm_nodes : int
        Grid used for boundary norms ``||f||_{L^p}``.

    mean_nodes : int
        Minimum number of angles used for integral means.

    ckl_radii, ckl_angles, ckl_rmax :
        Sample grid of the numerical estimate of ``C_{alpha,beta,k,l}``.
    """

    node_floor: int = 512
    max_radius: float = 0.999
    norm_nodes: int = 4096
    mean_nodes: int = 1024
    ckl_radii: int = 64
    ckl_angles: int = 256
    ckl_rmax: float = 0.99

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "QuadratureConfig":
        """Build the default configuration, honouring ``ABH_QUAD_NODES``."""
        environ = os.environ if environ is None else environ
        config = cls()
        raw = environ.get(QUAD_NODES_ENV)
        if raw is None or not raw.strip():
            return config
        try:
            floor = int(raw)
        except ValueError:
            raise ParameterError(
                f"{QUAD_NODES_ENV}={raw!r} is not an integer"
            ) from None
        if floor < MIN_NODE_FLOOR:
            raise ParameterError(
                f"{QUAD_NODES_ENV}={floor} must be at least {MIN_NODE_FLOOR}"
            )
        logger.debug("quadrature node floor overridden to %d", floor)
        return replace(config, node_floor=floor)


def get_config() -> QuadratureConfig:
    """Return the active configuration (environment is read on every call)."""
    return QuadratureConfig.from_env()


def next_power_of_two(n: float) -> int:
    """Smallest power of two that is ``>= n`` (and at least 1)."""
    if n <= 1:
        return 1
    return 1 << math.ceil(math.log2(n))
