"""Closed-form reference results for small arrays.

These are exact solutions of the drift equations in the cases simple
enough to solve by hand: a single pumped guide, a pump-free two-guide
coupler, and the two-guide pair correlation.  They serve as oracles for
the numerical pipeline and are exposed for direct use.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np


def duan_closed_form(g: float, J: float, t: float) -> float:
    """Two-guide correlation M(1,2) at phi = 0 for vacuum input, zero loss.

        M(1,2) = 4 g (2g - J) sin^2(Omega t) / Omega^2,
        Omega = sqrt(J^2 - 4 g^2),

    analytically continued across the degeneracy: for J < 2g the
    oscillation turns hyperbolic, sin^2(Omega t)/Omega^2 ->
    sinh^2(Omega' t)/Omega'^2 with Omega' = sqrt(4g^2 - J^2), and at
    J = 2g the factor limits to t^2.  Negative values (J > 2g) witness
    entanglement of the pair.
    """
    omega = cmath.sqrt(complex(J * J - 4.0 * g * g))
    # t^2 sinc^2 handles both branches and the Omega -> 0 limit in one expression
    factor = (t * np.sinc(omega * t / math.pi)) ** 2
    return float((4.0 * g * (2.0 * g - J) * factor).real)


class SqueezerMoments(NamedTuple):
    """Exact single-guide solution at time t: propagator entries and vacuum moments."""

    a_coeff: complex
    b_coeff: complex
    occupation: float
    anomalous: complex


def squeezer_closed_form(g: float, t: float) -> SqueezerMoments:
    """Single pumped guide (no neighbours): A = cosh 2gt, B = -i sinh 2gt.

    From vacuum input the occupation grows as sinh^2(2gt) and the
    anomalous moment as -i cosh(2gt) sinh(2gt) = -(i/2) sinh(4gt).
    """
    c = math.cosh(2.0 * g * t)
    s = math.sinh(2.0 * g * t)
    return SqueezerMoments(a_coeff=complex(c), b_coeff=-1j * s,
                           occupation=s * s, anomalous=-1j * c * s)


def coupler_closed_form(J: float, t: float) -> np.ndarray:
    """Pump-free two-guide propagator exp(iKt) = [[cos Jt, i sin Jt], [i sin Jt, cos Jt]]."""
    c = math.cos(J * t)
    s = math.sin(J * t)
    return np.array([[c, 1j * s], [1j * s, c]], dtype=complex)
