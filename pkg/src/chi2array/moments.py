"""Gaussian moment description of the field and its evolution, with loss.

Because the dynamics are quadratic in the mode operators, the state is
fully captured by its first moments alpha_j = <a_j> together with the
normal second moments n_jk = <a_j^dag a_k> and the anomalous second
moments m_jk = <a_j a_k>.  Under the drift of the array plus uniform
Markovian photon loss at rate gamma, these satisfy the closed
(affine-)linear system

    d alpha/dt = (iK - gamma/2) alpha - 2i G conj(alpha)
    d n/dt     = -i[K, n] + 2i (G m - conj(m) G) - gamma n
    d m/dt     =  i(K m + m K) - 2i (G n + n^T G + G) - gamma m

where conj() is the entrywise conjugate.  The constant -2iG forcing in
dm/dt is the vacuum-fluctuation seed: it is what lights up the array
even with nothing at the input.

At gamma = 0 the same moments follow from pure operator algebra on the
Bogoliubov propagator; both routes are implemented and are required to
agree, which is the package's main internal cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .bogoliubov import BogoliubovPropagator, propagate
from .errors import PhysicalityError, ScenarioError
from .model import ArrayConfig, build_drift

_STRUCTURE_TOL = 1e-8
_PHYSICALITY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MomentState:
    """First and second moments of an N-mode Gaussian state.

    Attributes
    ----------
    alpha : ndarray, shape (N,)
        First moments <a_j>.
    normal : ndarray, shape (N, N)
        Normal moments n_jk = <a_j^dag a_k>; Hermitian, real
        nonnegative diagonal.
    anomalous : ndarray, shape (N, N)
        Anomalous moments m_jk = <a_j a_k>; symmetric.
    time : float
        Evolution time at which the moments were taken.
    """

    alpha: np.ndarray
    normal: np.ndarray
    anomalous: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        a = np.array(self.alpha, dtype=complex, copy=True).reshape(-1)
        n = np.array(self.normal, dtype=complex, copy=True)
        m = np.array(self.anomalous, dtype=complex, copy=True)
        N = a.shape[0]
        if n.shape != (N, N) or m.shape != (N, N):
            raise ScenarioError(
                f"moment shapes inconsistent: alpha {a.shape}, n {n.shape}, m {m.shape}")
        if not (np.isfinite(a).all() and np.isfinite(n).all() and np.isfinite(m).all()):
            raise ScenarioError("moment state contains non-finite entries")
        scale = max(1.0, float(np.abs(n).max()), float(np.abs(m).max()))
        if np.abs(n - n.conj().T).max() > _STRUCTURE_TOL * scale:
            raise ScenarioError("normal moment matrix is not Hermitian")
        if np.abs(m - m.T).max() > _STRUCTURE_TOL * scale:
            raise ScenarioError("anomalous moment matrix is not symmetric")
        diag = np.diagonal(n)
        if np.abs(diag.imag).max() > _STRUCTURE_TOL * scale \
                or diag.real.min() < -_STRUCTURE_TOL * scale:
            raise ScenarioError("mode occupations must be real and nonnegative")
        for name, value in (("alpha", a), ("normal", n), ("anomalous", m)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "time", float(self.time))

    @property
    def n_modes(self) -> int:
        return self.alpha.shape[0]


def vacuum_state(n_modes: int) -> MomentState:
    """All-mode vacuum: every moment vanishes."""
    if n_modes < 1:
        raise ScenarioError(f"n_modes must be >= 1, got {n_modes}")
    z = np.zeros((n_modes, n_modes), dtype=complex)
    return MomentState(alpha=np.zeros(n_modes, dtype=complex),
                       normal=z.copy(), anomalous=z.copy(), time=0.0)


def coherent_state(n_modes: int, site: int, amplitude: complex) -> MomentState:
    """Coherent light of the given amplitude in one waveguide, vacuum elsewhere.

    `site` is 1-based, matching all user-facing mode indexing.
    """
    if not 1 <= site <= n_modes:
        raise ScenarioError(f"site must be in 1..{n_modes}, got {site}")
    s = site - 1
    alpha = np.zeros(n_modes, dtype=complex)
    alpha[s] = amplitude
    n = np.outer(alpha.conj(), alpha)
    m = np.outer(alpha, alpha)
    return MomentState(alpha=alpha, normal=n, anomalous=m, time=0.0)


def bogoliubov_moments(prop: BogoliubovPropagator, state0: MomentState) -> MomentState:
    """Moments after the lossless map a -> A a + B a^dag, by operator algebra.

    Exact for any input moment triple; the independent counterpart of
    `evolve` at zero loss.
    """
    A, B = prop.a_matrix, prop.b_matrix
    if A.shape[0] != state0.n_modes:
        raise ScenarioError("propagator and state dimensions do not match")
    a0, n0, m0 = state0.alpha, state0.normal, state0.anomalous
    eye = np.eye(state0.n_modes)
    alpha = A @ a0 + B @ a0.conj()
    normal = (A.conj() @ n0 @ A.T + A.conj() @ m0.conj() @ B.T
              + B.conj() @ m0 @ A.T + B.conj() @ (eye + n0.T) @ B.T)
    anomalous = (A @ m0 @ A.T + A @ (eye + n0.T) @ B.T
                 + B @ n0 @ A.T + B @ m0.conj() @ B.T)
    # symmetrise away roundoff so downstream structure checks stay tight
    normal = 0.5 * (normal + normal.conj().T)
    anomalous = 0.5 * (anomalous + anomalous.T)
    return MomentState(alpha=alpha, normal=normal, anomalous=anomalous,
                       time=state0.time + prop.time)


def _moment_rhs(config: ArrayConfig):
    drift = build_drift(config)
    K = drift.coupling_matrix
    G = drift.gain_matrix
    gamma = config.loss_rate
    N = config.n_modes
    half_loss = 0.5 * gamma * np.eye(N)

    def rhs(y: np.ndarray) -> np.ndarray:
        a = y[:N]
        n = y[N:N + N * N].reshape(N, N)
        m = y[N + N * N:].reshape(N, N)
        da = (1j * K - half_loss) @ a - 2j * (G @ a.conj())
        dn = -1j * (K @ n - n @ K) + 2j * (G @ m - m.conj() @ G) - gamma * n
        dm = 1j * (K @ m + m @ K) - 2j * (G @ n + n.T @ G + G) - gamma * m
        return np.concatenate([da, dn.ravel(), dm.ravel()])

    return rhs


def _pack(state: MomentState) -> np.ndarray:
    return np.concatenate([state.alpha, state.normal.ravel(), state.anomalous.ravel()])


def _unpack(y: np.ndarray, n_modes: int, time: float) -> MomentState:
    N = n_modes
    return MomentState(alpha=y[:N],
                       normal=y[N:N + N * N].reshape(N, N),
                       anomalous=y[N + N * N:].reshape(N, N),
                       time=time)


def _check_physical(state: MomentState) -> None:
    from .observables import quadrature_covariance, symplectic_eigenvalues

    nu_min = min(symplectic_eigenvalues(quadrature_covariance(state)))
    if nu_min < 0.5 - _PHYSICALITY_TOL:
        raise PhysicalityError(
            f"evolved state at t={state.time} violates the uncertainty principle: "
            f"minimal symplectic eigenvalue {nu_min!r} < 1/2")


def evolve(config: ArrayConfig, state0: MomentState, t: float,
           tol: float = 1e-10) -> MomentState:
    """Advance the moment triple from state0.time to t under drift plus loss.

    Raises
    ------
    IntegrationError
        Propagated from the integrator on step underflow or divergence.
    PhysicalityError
        If the result violates the uncertainty principle beyond tolerance,
        which signals an inconsistency in the model setup rather than an
        unfortunate parameter choice.
    """
    return evolve_grid(config, state0, [t], tol)[-1]


def evolve_grid(config: ArrayConfig, state0: MomentState, times,
                tol: float = 1e-10) -> list[MomentState]:
    """Moment evolution sampled on an ascending grid of absolute times.

    A single adaptive integration pass covers the whole grid; every
    returned state is structure- and physicality-checked.
    """
    if config.n_modes != state0.n_modes:
        raise ScenarioError("config and state dimensions do not match")
    grid = [float(t) for t in times]
    if any(t < state0.time for t in grid):
        raise ScenarioError("cannot evolve backwards: grid starts before state0.time")
    rhs = _moment_rhs(config)
    rel = [t - state0.time for t in grid]
    ys = kernels.integrate_linear_grid(rhs, _pack(state0), rel, tol)
    states = [_unpack(y, config.n_modes, t) for y, t in zip(ys, grid)]
    for s in states:
        _check_physical(s)
    return states


@dataclass(frozen=True)
class ConsistencyReport:
    """Outcome of the lossless dual-route check (ODE vs operator algebra)."""

    time: float
    tolerance: float
    vacuum_discrepancy: float
    coherent_discrepancy: float

    @property
    def max_discrepancy(self) -> float:
        return max(self.vacuum_discrepancy, self.coherent_discrepancy)

    @property
    def passed(self) -> bool:
        return self.max_discrepancy <= self.tolerance


def consistency_check_lossless(config: ArrayConfig, t: float, tol: float = 1e-8,
                               site: int | None = None,
                               amplitude: complex = 1.0) -> ConsistencyReport:
    """Evolve vacuum and one coherent input by both lossless routes and compare.

    The two routes share no propagation code: one integrates the moment
    ODEs, the other exponentiates the drift generator and applies
    operator algebra.  Reports the largest moment discrepancy; never
    raises on disagreement.
    """
    if config.loss_rate != 0.0:
        raise ScenarioError("consistency_check_lossless requires loss_rate = 0")
    if site is None:
        site = (config.n_modes + 1) // 2
    prop = propagate(config, t)

    def discrepancy(state0: MomentState) -> float:
        via_ode = evolve(config, state0, t, tol=min(1e-12, tol / 10))
        via_algebra = bogoliubov_moments(prop, state0)
        return max(
            float(np.abs(via_ode.alpha - via_algebra.alpha).max(initial=0.0)),
            float(np.abs(via_ode.normal - via_algebra.normal).max()),
            float(np.abs(via_ode.anomalous - via_algebra.anomalous).max()),
        )

    return ConsistencyReport(
        time=float(t), tolerance=float(tol),
        vacuum_discrepancy=discrepancy(vacuum_state(config.n_modes)),
        coherent_discrepancy=discrepancy(coherent_state(config.n_modes, site, amplitude)),
    )
