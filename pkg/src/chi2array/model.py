"""Physical configuration of the waveguide array and its linear drift generators.

A chain of N single-mode waveguides with a quadratic pump interaction on
each site and nearest-neighbour evanescent hopping obeys Heisenberg
equations of the form

    da_j/dt = -2i g_j a_j^dag + i (K a)_j ,

with K the real symmetric tridiagonal hopping matrix and g_j the
per-site pump gain.  Stacking the mode operators as (a; a^dag) turns
this into a linear flow generated by the 2N x 2N block matrix

    S = [[ iK, -2iG],
         [2iG,  -iK]] ,     G = diag(g_1 .. g_N),

whose exponential yields the input-output matrices of the array.  All
rates (g, J, loss) and times are dimensionless; scenario files
conventionally set J = 1 so that time is measured in units of 1/J.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ScenarioError


def _as_finite_floats(values, name: str) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if not all(np.isfinite(out)):
        raise ScenarioError(f"{name} must contain only finite values, got {out}")
    return out


@dataclass(frozen=True)
class ArrayConfig:
    """Immutable description of one waveguide array.

    Parameters
    ----------
    n_modes:
        Number of waveguides N >= 1.
    pump_gains:
        Per-site pump gain g_j, length N.  Real and dimensionless.
    link_couplings:
        Per-link hopping rate J_l on the link (l, l+1), length N - 1
        (empty for a single guide).  Open boundary conditions.
    loss_rate:
        Uniform photon loss rate gamma >= 0, identical for every mode.
    """

    n_modes: int
    pump_gains: tuple[float, ...]
    link_couplings: tuple[float, ...] = ()
    loss_rate: float = 0.0

    def __post_init__(self):
        n = int(self.n_modes)
        if n < 1:
            raise ScenarioError(f"n_modes must be >= 1, got {self.n_modes}")
        object.__setattr__(self, "n_modes", n)
        object.__setattr__(self, "pump_gains",
                           _as_finite_floats(self.pump_gains, "pump_gains"))
        object.__setattr__(self, "link_couplings",
                           _as_finite_floats(self.link_couplings, "link_couplings"))
        object.__setattr__(self, "loss_rate", float(self.loss_rate))
        if len(self.pump_gains) != n:
            raise ScenarioError(
                f"pump_gains must have length n_modes={n}, got {len(self.pump_gains)}")
        if len(self.link_couplings) != n - 1:
            raise ScenarioError(
                f"link_couplings must have length n_modes-1={n - 1}, "
                f"got {len(self.link_couplings)}")
        if not np.isfinite(self.loss_rate) or self.loss_rate < 0:
            raise ScenarioError(f"loss_rate must be finite and >= 0, got {self.loss_rate}")

    @classmethod
    def uniform(cls, n_modes: int, pump_gain: float, coupling: float = 1.0,
                loss_rate: float = 0.0) -> "ArrayConfig":
        """Array with identical gain on every site and identical coupling on every link."""
        return cls(n_modes=n_modes,
                   pump_gains=(pump_gain,) * n_modes,
                   link_couplings=(coupling,) * max(n_modes - 1, 0),
                   loss_rate=loss_rate)

    def with_loss(self, loss_rate: float) -> "ArrayConfig":
        return ArrayConfig(self.n_modes, self.pump_gains, self.link_couplings, loss_rate)


@dataclass(frozen=True, eq=False)
class DriftMatrices:
    """Hopping matrix K (symmetric tridiagonal) and gain matrix G (diagonal)."""

    coupling_matrix: np.ndarray
    gain_matrix: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.coupling_matrix.shape[0]


@dataclass(frozen=True, eq=False)
class BogoliubovGenerator:
    """The 2N x 2N generator S of the Heisenberg flow d/dt (a; a^dag) = S (a; a^dag).

    The block structure S = [[iK, -2iG], [2iG, -iK]] has its lower block
    row equal to the entrywise conjugate of the upper one, which is what
    keeps the bottom half of the flow the adjoint of the top half.
    """

    matrix: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2


def build_drift(config: ArrayConfig) -> DriftMatrices:
    """Assemble K and G from the array configuration.

    Loss does not appear here; it enters only through the dissipative
    moment evolution.
    """
    n = config.n_modes
    K = np.zeros((n, n))
    for l, J in enumerate(config.link_couplings):
        K[l, l + 1] = J
        K[l + 1, l] = J
    G = np.diag(np.asarray(config.pump_gains, dtype=float))
    return DriftMatrices(coupling_matrix=K, gain_matrix=G)


def build_generator(drift: DriftMatrices) -> BogoliubovGenerator:
    """Assemble S = [[iK, -2iG], [2iG, -iK]] and assert its block symmetry."""
    K = drift.coupling_matrix
    G = drift.gain_matrix
    n = K.shape[0]
    S = np.zeros((2 * n, 2 * n), dtype=complex)
    S[:n, :n] = 1j * K
    S[:n, n:] = -2j * G
    S[n:, :n] = 2j * G
    S[n:, n:] = -1j * K
    # constructed, then asserted: the adjoint-preserving structure must hold exactly
    if not (np.array_equal(S[n:, n:], np.conj(S[:n, :n]))
            and np.array_equal(S[n:, :n], np.conj(S[:n, n:]))):
        raise AssertionError("generator lost its adjoint block symmetry")
    return BogoliubovGenerator(matrix=S)
