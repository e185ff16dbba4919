"""Scenario execution: observable record streams, figure presets, sweeps.

Every run produces a flat list of records, one per (time, observable,
index tuple).  The stream is deterministic: a given spec always yields
the same records in the same order, so emitted files are reproducible
byte for byte.

At zero loss with vacuum input the runner takes the exact
matrix-exponential route through the Bogoliubov propagator; coherent
inputs and lossy arrays go through the moment-ODE integrator.  The two
routes agree to well below 1e-8 wherever both apply, and the test suite
holds them to that.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import observables as obs
from .errors import ScenarioError
from .model import ArrayConfig
from .moments import MomentState, bogoliubov_moments, coherent_state, evolve_grid, vacuum_state
from .bogoliubov import propagate
from .scenario import MINIMIZE, InputSpec, ObservableRequest, OutputSpec, ScenarioSpec, TimeGrid

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5")
SWEEP_AXES = ("g_scale", "J_scale", "gamma", "t", "phi")
MAX_SWEEP_POINTS = 10 ** 6
MAX_SWEEP_DIMS = 3


@dataclass(frozen=True)
class Record:
    """One emitted value.

    `i`, `j`, `k` are 1-based mode indices where applicable (left None
    when unused); for covariance entries `i`, `j` index the 2N x 2N
    matrix of (q_1..q_N, p_1..p_N).  `axes` carries sweep coordinates.
    """

    scenario_id: str
    time: float
    observable: str
    i: int | None
    j: int | None
    k: int | None
    phi: float
    value: float
    axes: tuple[tuple[str, float], ...] = ()


def _initial_state(spec: ScenarioSpec) -> MomentState:
    if spec.input.kind == "coherent":
        return coherent_state(spec.config.n_modes, spec.input.site, spec.input.amplitude)
    return vacuum_state(spec.config.n_modes)


def _states_on_grid(spec: ScenarioSpec, times: np.ndarray, tol: float,
                    force_ode: bool = False) -> list[MomentState]:
    lossless_vacuum = spec.config.loss_rate == 0.0 and spec.input.kind == "vacuum"
    if lossless_vacuum and not force_ode:
        state0 = _initial_state(spec)
        return [bogoliubov_moments(propagate(spec.config, t), state0) for t in times]
    return evolve_grid(spec.config, _initial_state(spec), times, tol)


def _records_for_state(spec: ScenarioSpec, state: MomentState) -> list[Record]:
    out: list[Record] = []
    sid = spec.scenario_id
    t = state.time
    base_phase = 0.0 if spec.phase == MINIMIZE else float(spec.phase)
    req = spec.observables

    if req.intensities:
        for site, value in enumerate(obs.intensities(state), start=1):
            out.append(Record(sid, t, "intensities", site, None, None, base_phase, float(value)))

    for (j, k) in spec.duan_pair_list():
        if spec.phase == MINIMIZE:
            phi, value = obs.minimize_duan_phase(state, j, k)
        else:
            phi = base_phase
            value = obs.duan_correlation(state, j, k, phi)
        out.append(Record(sid, t, "duan", None, j, k, phi, value))

    for (i, j, k) in (req.vlf_triples or ()):
        value = obs.vlf_tripartite(state, i, j, k, base_phase)
        out.append(Record(sid, t, "vlf", i, j, k, base_phase, value))

    if req.covariance:
        sigma = obs.quadrature_covariance(state, base_phase).matrix
        for i in range(sigma.shape[0]):
            for j in range(sigma.shape[1]):
                out.append(Record(sid, t, "covariance", i + 1, j + 1, None,
                                  base_phase, float(sigma[i, j])))

    if req.symplectic_spectrum:
        cov = obs.quadrature_covariance(state, base_phase)
        for idx, nu in enumerate(obs.symplectic_eigenvalues(cov), start=1):
            out.append(Record(sid, t, "symplectic_spectrum", idx, None, None,
                              base_phase, nu))
    return out


def run_scenario(spec: ScenarioSpec, tol: float = 1e-10,
                 force_ode: bool = False) -> list[Record]:
    """Evaluate every requested observable on the scenario's time grid.

    `force_ode` disables the exact lossless shortcut; it exists so tests
    can drive both routes through the same surface.
    """
    times = spec.grid.times()
    states = _states_on_grid(spec, times, tol, force_ode)
    records: list[Record] = []
    for state in states:
        records.extend(_records_for_state(spec, state))
    return records


# ---------------------------------------------------------------------------
# figure presets

def _fig2_specs() -> list[ScenarioSpec]:
    specs = []
    for label, ratio in (("gJ1over2", 0.5), ("gJ1over3", 1.0 / 3.0)):
        specs.append(ScenarioSpec(
            config=ArrayConfig.uniform(21, pump_gain=ratio, coupling=1.0),
            grid=TimeGrid(explicit=(2.5,)),
            observables=ObservableRequest(intensities=True),
            input=InputSpec(kind="coherent", site=10, amplitude=5.0 + 0j),
            phase=0.0,
            scenario_id=f"fig2_{label}",
        ))
    return specs


def _fig3_specs() -> list[ScenarioSpec]:
    # tau = J t / pi on [0, 2] -> t on [0, 2 pi] at J = 1
    taus = np.linspace(0.0, 2.0, 201)
    times = tuple(float(math.pi * tau) for tau in taus)
    specs = []
    for denom in (5, 7, 9):
        specs.append(ScenarioSpec(
            config=ArrayConfig.uniform(5, pump_gain=1.0 / denom, coupling=1.0),
            grid=TimeGrid(explicit=times),
            observables=ObservableRequest(duan_pairs="all"),
            phase=0.0,
            scenario_id=f"fig3_gJ1over{denom}",
        ))
    return specs


def _fig4_specs() -> list[ScenarioSpec]:
    return [ScenarioSpec(
        config=ArrayConfig.uniform(3, pump_gain=2.0 / 3.0, coupling=1.0),
        grid=TimeGrid(t_max=3.0, n_steps=301),
        observables=ObservableRequest(vlf_triples=((2, 1, 3),)),
        phase=math.pi / 2.0,
        scenario_id="fig4_gJ2over3",
    )]


def _fig5_specs() -> list[ScenarioSpec]:
    specs = []
    for label, gamma in (("gamma0", 0.0), ("gamma1over5", 0.2), ("gamma2over5", 0.4)):
        specs.append(ScenarioSpec(
            config=ArrayConfig.uniform(2, pump_gain=0.4, coupling=1.0, loss_rate=gamma),
            grid=TimeGrid(t_max=8.0, n_steps=401),
            observables=ObservableRequest(duan_pairs=((1, 2),)),
            phase=0.0,
            scenario_id=f"fig5_{label}",
        ))
    return specs


_FIGURES = {"fig2": _fig2_specs, "fig3": _fig3_specs, "fig4": _fig4_specs,
            "fig5": _fig5_specs}

_FIGURE_NOTES = {
    "fig2": [
        "output intensity profile across 21 guides at t = 2.5",
        "coherent amplitude 5 in guide 10 (1-based; literally off-centre), g/J in {1/2, 1/3}, J = 1",
    ],
    "fig3": [
        "pair correlation M(j,k) for 5 guides, all pairs, phi = 0",
        "time column is t in units of 1/J; tau = J t / pi runs over [0, 2]",
        "g/J in {1/5, 1/7, 1/9}, J = 1, vacuum input",
    ],
    "fig4": [
        "tripartite witness V(2,1,3) for 3 guides at phi = pi/2, g/J = 2/3, J = 1",
        "time in units of 1/J; V < 4 flags full inseparability",
    ],
    "fig5": [
        "pair correlation M(1,2) for 2 lossy guides at phi = 0, g/J = 2/5, J = 1",
        "loss gamma/J in {0, 1/5, 2/5}; time in units of 1/J",
    ],
}


def figure_specs(figure_id: str) -> list[ScenarioSpec]:
    """The scenario presets behind one of the canned figures."""
    if figure_id not in _FIGURES:
        raise ScenarioError(f"unknown figure id {figure_id!r}; choose from {FIGURE_IDS}")
    return _FIGURES[figure_id]()


def figure_notes(figure_id: str) -> list[str]:
    """Human-readable comment lines describing a figure preset's conventions."""
    if figure_id not in _FIGURE_NOTES:
        raise ScenarioError(f"unknown figure id {figure_id!r}; choose from {FIGURE_IDS}")
    return list(_FIGURE_NOTES[figure_id])


def reproduce_figure(figure_id: str, tol: float = 1e-10) -> list[Record]:
    """Run the preset matching one of the canned figures and return its records."""
    records: list[Record] = []
    for spec in figure_specs(figure_id):
        records.extend(run_scenario(spec, tol=tol))
    return records


# ---------------------------------------------------------------------------
# parameter sweeps

@dataclass(frozen=True)
class SweepAxis:
    """One named sweep axis with its (ascending) grid of values."""

    name: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.name not in SWEEP_AXES:
            raise ScenarioError(f"unknown sweep axis {self.name!r}; choose from {SWEEP_AXES}")
        vals = tuple(sorted(float(v) for v in self.values))
        if not vals:
            raise ScenarioError(f"sweep axis {self.name} has no values")
        if not all(np.isfinite(vals)):
            raise ScenarioError(f"sweep axis {self.name} has non-finite values")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_cli(cls, text: str) -> "SweepAxis":
        """Parse 'name=start:stop:count' into an axis."""
        if "=" not in text:
            raise ScenarioError(f"axis must look like name=start:stop:count, got {text!r}")
        name, _, rhs = text.partition("=")
        parts = rhs.split(":")
        if len(parts) != 3:
            raise ScenarioError(f"axis grid must be start:stop:count, got {rhs!r}")
        try:
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError as exc:
            raise ScenarioError(f"bad axis grid {rhs!r}: {exc}") from exc
        if count < 1:
            raise ScenarioError(f"axis count must be >= 1, got {count}")
        values = (start,) if count == 1 else tuple(np.linspace(start, stop, count))
        return cls(name=name.strip(), values=values)


def _apply_axes(base: ScenarioSpec, coords: dict[str, float]) -> ScenarioSpec:
    spec = base
    cfg = spec.config
    if "g_scale" in coords:
        s = coords["g_scale"]
        cfg = ArrayConfig(cfg.n_modes, tuple(g * s for g in cfg.pump_gains),
                          cfg.link_couplings, cfg.loss_rate)
    if "J_scale" in coords:
        s = coords["J_scale"]
        cfg = ArrayConfig(cfg.n_modes, cfg.pump_gains,
                          tuple(j * s for j in cfg.link_couplings), cfg.loss_rate)
    if "gamma" in coords:
        cfg = cfg.with_loss(coords["gamma"])
    spec = replace(spec, config=cfg)
    if "t" in coords:
        spec = replace(spec, grid=TimeGrid(explicit=(coords["t"],)))
    if "phi" in coords:
        spec = replace(spec, phase=coords["phi"])
    return spec


def sweep(base: ScenarioSpec, axes: list[SweepAxis], tol: float = 1e-10) -> list[Record]:
    """Cartesian-product sweep over up to three named axes.

    Points are evaluated independently; records carry the axis
    coordinates and appear sorted by axis tuple, so output order is
    deterministic no matter how the evaluation is scheduled.
    """
    if not axes:
        return run_scenario(base, tol=tol)
    names = [a.name for a in axes]
    if len(set(names)) != len(names):
        raise ScenarioError(f"duplicate sweep axes: {names}")
    if len(axes) > MAX_SWEEP_DIMS:
        raise ScenarioError(f"at most {MAX_SWEEP_DIMS} sweep axes are supported, got {len(axes)}")
    total = 1
    for a in axes:
        total *= len(a.values)
    n_times = 1 if any(a.name == "t" for a in axes) else spec_grid_size(base)
    if total * n_times > MAX_SWEEP_POINTS:
        raise ScenarioError(
            f"sweep of {total} points x {n_times} times exceeds {MAX_SWEEP_POINTS}")
    if "phi" in names and base.phase == MINIMIZE:
        raise ScenarioError("a phi axis cannot be combined with phase=minimize")

    records: list[Record] = []
    for combo in itertools.product(*(a.values for a in axes)):
        coords = dict(zip(names, combo))
        tagged = tuple(zip(names, combo))
        point_spec = _apply_axes(base, coords)
        for rec in run_scenario(point_spec, tol=tol):
            records.append(replace(rec, axes=tagged))
    return records


def spec_grid_size(spec: ScenarioSpec) -> int:
    return int(spec.grid.times().size)
