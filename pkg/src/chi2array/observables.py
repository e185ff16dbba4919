"""Measurable quantities derived from a moment state.

Quadrature conventions
----------------------
Two scalings coexist because both are common in homodyne work:

* q_j = (a_j e^{-i phi} + a_j^dag e^{i phi}) / sqrt(2) and the matching
  p_j, with vacuum variance 1/2.  The covariance type stores this one.
* X_j = a_j e^{-i phi} + a_j^dag e^{i phi} and Y_j = -i (a_j e^{-i phi}
  - a_j^dag e^{i phi}), with vacuum variance 1.  The tripartite witness
  is defined in these units and rescales by 2 internally.

Entanglement witnesses
----------------------
`duan_correlation` is the two-mode EPR-type combination

    M(j,k; phi) = <a_j^dag a_j> + <a_k^dag a_k>
                  - e^{-2i phi} <a_j a_k> - e^{+2i phi} <a_j^dag a_k^dag>,

equal (for zero-mean states) to [Var(q_j - q_k) + Var(p_j + p_k) - 2] / 2.
Negative values witness entanglement of the pair.  The sign pairing of
the anomalous terms, i.e. measuring the *difference* of positions
against the *sum* of momenta, is tied to the pump phase convention of
the drift (squeezing term -2i g a^dag): it is the combination that
actually drops below the separable bound, and it reproduces the
two-guide closed form in `closed_forms.duan_closed_form` at phi = 0.

`vlf_tripartite` is the matching three-mode variance-sum witness

    V(i,j,k; phi) = Var(X_i + (X_j + X_k)/sqrt 2)
                  + Var(Y_i - (Y_j + Y_k)/sqrt 2),

with full tripartite inseparability flagged by V < 4.  The separable
bound 2(|h_i g_i| + |h_j g_j + h_k g_k|) = 4 is the same as for the
mirrored sign choice; again the combination is the one aligned with the
pump phase, dipping below 4 at phi = pi/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import ScenarioError

if TYPE_CHECKING:
    from .moments import MomentState


@dataclass(frozen=True, eq=False)
class QuadratureCovariance:
    """Symmetric 2N x 2N covariance of (q_1..q_N, p_1..p_N) at homodyne phase `phase`.

    Centered on the first moments; the vacuum covariance is identity/2.
    """

    phase: float
    matrix: np.ndarray

    def __post_init__(self):
        s = self.matrix
        if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
            raise ScenarioError(f"covariance must be 2N x 2N, got {s.shape}")
        if np.abs(s - s.T).max() > 1e-9 * max(1.0, np.abs(s).max()):
            raise ScenarioError("covariance matrix must be symmetric")

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2


def intensities(state: "MomentState") -> np.ndarray:
    """Mean photon number I_j = <a_j^dag a_j> at every site."""
    return np.diagonal(state.normal).real.copy()


def participation_ratio(profile: np.ndarray) -> float:
    """(sum I)^2 / sum I^2: the effective number of occupied waveguides."""
    p = np.asarray(profile, dtype=float)
    total = p.sum()
    square = (p ** 2).sum()
    if square == 0.0:
        raise ScenarioError("participation ratio of an all-zero profile is undefined")
    return float(total * total / square)


def _centered(state: "MomentState") -> tuple[np.ndarray, np.ndarray]:
    a = state.alpha
    n_t = state.normal - np.outer(a.conj(), a)
    m_t = state.anomalous - np.outer(a, a)
    return n_t, m_t


def quadrature_covariance(state: "MomentState", phase: float = 0.0) -> QuadratureCovariance:
    """Covariance of the q, p quadratures at local-oscillator phase `phase`.

    Assembled from the centered moments; the phase rotates only the
    anomalous part (it cancels in a^dag a terms).
    """
    n_t, m_t = _centered(state)
    N = state.n_modes
    rot = np.exp(-2j * phase) * m_t
    eye = np.eye(N)
    qq = rot.real + n_t.real + 0.5 * eye
    pp = -rot.real + n_t.real + 0.5 * eye
    qp = rot.imag + n_t.imag
    sigma = np.block([[qq, qp], [qp.T, pp]])
    sigma = 0.5 * (sigma + sigma.T)
    return QuadratureCovariance(phase=float(phase), matrix=sigma)


def symplectic_eigenvalues(cov: QuadratureCovariance) -> list[float]:
    """The N symplectic eigenvalues of the covariance, sorted ascending.

    Computed as the moduli of the eigenvalues of i Omega sigma (each
    appears twice; duplicates are averaged away).  All values >= 1/2 is
    the uncertainty principle; equality on every mode means a pure state.
    """
    sigma = cov.matrix
    N = cov.n_modes
    omega = np.zeros((2 * N, 2 * N))
    omega[:N, N:] = np.eye(N)
    omega[N:, :N] = -np.eye(N)
    mods = np.sort(np.abs(np.linalg.eigvals(1j * omega @ sigma)))
    paired = 0.5 * (mods[0::2] + mods[1::2])
    return [float(v) for v in paired]


def minimum_symplectic_eigenvalue(state: "MomentState", phase: float = 0.0) -> float:
    """Smallest symplectic eigenvalue of the state's quadrature covariance."""
    return min(symplectic_eigenvalues(quadrature_covariance(state, phase)))


def _check_pair(state: "MomentState", j: int, k: int) -> tuple[int, int]:
    N = state.n_modes
    if not (1 <= j <= N and 1 <= k <= N):
        raise ScenarioError(f"mode indices must be in 1..{N}, got ({j}, {k})")
    if j == k:
        raise ScenarioError(f"pair correlation needs two distinct modes, got ({j}, {k})")
    return j - 1, k - 1


def duan_correlation(state: "MomentState", j: int, k: int, phase: float = 0.0,
                     centered: bool = False) -> float:
    """Two-mode correlation M(j,k; phase); M < 0 witnesses entanglement.

    Uses uncentered moments by default, so a mean displacement
    contributes; pass centered=True to subtract the first moments.
    Mode indices are 1-based.
    """
    ji, ki = _check_pair(state, j, k)
    if centered:
        n, m = _centered(state)
    else:
        n, m = state.normal, state.anomalous
    cross = np.exp(-2j * phase) * m[ji, ki]
    return float(n[ji, ji].real + n[ki, ki].real - 2.0 * cross.real)


def duan_correlation_from_covariance(state: "MomentState", j: int, k: int,
                                     phase: float = 0.0,
                                     centered: bool = False) -> float:
    """M(j,k) via the quadrature-covariance route: the independent second path.

    Evaluates [Var(q_j - q_k) + Var(p_j + p_k) - 2] / 2 from the
    covariance matrix, then (unless centered=True) restores the
    displacement contribution |e^{-i phi} alpha_j - conj(e^{-i phi} alpha_k)|^2.
    """
    ji, ki = _check_pair(state, j, k)
    sigma = quadrature_covariance(state, phase).matrix
    N = state.n_modes
    qj, qk = ji, ki
    pj, pk = N + ji, N + ki
    var_qdiff = sigma[qj, qj] + sigma[qk, qk] - 2 * sigma[qj, qk]
    var_psum = sigma[pj, pj] + sigma[pk, pk] + 2 * sigma[pj, pk]
    value = 0.5 * (var_qdiff + var_psum - 2.0)
    if not centered:
        z_j = np.exp(-1j * phase) * state.alpha[ji]
        z_k = np.exp(-1j * phase) * state.alpha[ki]
        value += abs(z_j - np.conj(z_k)) ** 2
    return float(value)


def duan_matrix(state: "MomentState", phase: float = 0.0,
                centered: bool = False) -> np.ndarray:
    """All-pairs M(j,k) as a symmetric N x N matrix; the diagonal is set to 0."""
    if centered:
        n, m = _centered(state)
    else:
        n, m = state.normal, state.anomalous
    occ = np.diagonal(n).real
    M = occ[:, None] + occ[None, :] - 2.0 * (np.exp(-2j * phase) * m).real
    np.fill_diagonal(M, 0.0)
    return 0.5 * (M + M.T)


def vlf_tripartite(state: "MomentState", i: int, j: int, k: int,
                   phase: float = 0.0) -> float:
    """Three-mode variance-sum witness V(i,j,k; phase); V < 4 flags full inseparability.

    Computed from the quadrature covariance in the X, Y convention
    (vacuum Var X = 1, i.e. twice the stored q, p covariance).  Mode
    indices are 1-based and must be distinct; the witness is symmetric
    under swapping j and k.
    """
    N = state.n_modes
    idx = (i, j, k)
    if len(set(idx)) != 3:
        raise ScenarioError(f"tripartite witness needs three distinct modes, got {idx}")
    if not all(1 <= x <= N for x in idx):
        raise ScenarioError(f"mode indices must be in 1..{N}, got {idx}")
    ii, ji, ki = i - 1, j - 1, k - 1
    sigma = quadrature_covariance(state, phase).matrix
    root_half = 1.0 / np.sqrt(2.0)
    cu = np.zeros(2 * N)
    cu[ii] = 1.0
    cu[ji] = root_half
    cu[ki] = root_half
    cv = np.zeros(2 * N)
    cv[N + ii] = 1.0
    cv[N + ji] = -root_half
    cv[N + ki] = -root_half
    # factor 2: X = sqrt(2) q, so variances in X,Y units are twice the q,p ones
    return float(2.0 * (cu @ sigma @ cu + cv @ sigma @ cv))


PHASE_GRID_POINTS = 180


def minimize_duan_phase(state: "MomentState", j: int, k: int,
                        centered: bool = False,
                        grid_points: int = PHASE_GRID_POINTS) -> tuple[float, float]:
    """Grid-minimize M(j,k) over phi in [0, pi) and return (phi_min, M_min).

    M has period pi in phi, so the uniform grid covers all distinct
    phases; ties resolve to the smallest phi, keeping output deterministic.
    """
    phis = np.arange(grid_points) * (np.pi / grid_points)
    values = np.array([duan_correlation(state, j, k, p, centered) for p in phis])
    best = int(np.argmin(values))
    return float(phis[best]), float(values[best])
