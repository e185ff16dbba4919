"""Quantum light in pumped chi^(2) nonlinear waveguide arrays.

Propagates bosonic mode operators under the quadratic array Hamiltonian
(per-site parametric pump, nearest-neighbour evanescent coupling) with
optional uniform Markovian loss, and evaluates intensities, quadrature
covariances, and continuous-variable entanglement witnesses.
"""

from .model import ArrayConfig, BogoliubovGenerator, DriftMatrices, build_drift, build_generator
from .bogoliubov import (
    BogoliubovPropagator,
    compose,
    propagate,
    symplectic_residual,
    walk_amplitude_oracle,
)
from .moments import (
    ConsistencyReport,
    MomentState,
    bogoliubov_moments,
    coherent_state,
    consistency_check_lossless,
    evolve,
    evolve_grid,
    vacuum_state,
)
from .observables import (
    QuadratureCovariance,
    duan_correlation,
    duan_correlation_from_covariance,
    duan_matrix,
    intensities,
    minimize_duan_phase,
    minimum_symplectic_eigenvalue,
    participation_ratio,
    quadrature_covariance,
    symplectic_eigenvalues,
    vlf_tripartite,
)
from .closed_forms import coupler_closed_form, duan_closed_form, squeezer_closed_form
from .scenario import (
    InputSpec,
    ObservableRequest,
    OutputSpec,
    ScenarioSpec,
    TimeGrid,
    emit_spec,
    parse_scenario,
)
from .runner import Record, SweepAxis, figure_specs, reproduce_figure, run_scenario, sweep
from .errors import (
    Chi2ArrayError,
    IntegrationError,
    NumericalError,
    PhysicalityError,
    ScenarioError,
    SymplecticError,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayConfig", "DriftMatrices", "BogoliubovGenerator",
    "build_drift", "build_generator",
    "BogoliubovPropagator", "propagate", "symplectic_residual",
    "compose", "walk_amplitude_oracle",
    "MomentState", "vacuum_state", "coherent_state", "evolve", "evolve_grid",
    "bogoliubov_moments", "consistency_check_lossless", "ConsistencyReport",
    "QuadratureCovariance", "intensities", "participation_ratio",
    "quadrature_covariance", "symplectic_eigenvalues",
    "minimum_symplectic_eigenvalue", "duan_correlation",
    "duan_correlation_from_covariance", "duan_matrix", "minimize_duan_phase",
    "vlf_tripartite",
    "duan_closed_form", "squeezer_closed_form", "coupler_closed_form",
    "ScenarioSpec", "InputSpec", "TimeGrid", "ObservableRequest", "OutputSpec",
    "parse_scenario", "emit_spec",
    "Record", "SweepAxis", "run_scenario", "reproduce_figure", "figure_specs",
    "sweep",
    "Chi2ArrayError", "ScenarioError", "NumericalError", "IntegrationError",
    "SymplecticError", "PhysicalityError",
    "__version__",
]
