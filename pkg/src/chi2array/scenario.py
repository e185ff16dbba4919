"""Scenario files: parsing, validation, and serialization.

A scenario is a flat key-value text file with INI-style sections, one
assignment per line, `#` comments, and comma-separated lists.  Example:

    [array]
    n_modes = 5
    pump_gains = 0.2          # one value broadcasts to every site
    link_couplings = 1.0      # one value broadcasts to every link
    loss_rate = 0.0

    [input]
    state = coherent          # vacuum (default) | coherent
    site = 3                  # 1-based
    amplitude = 5.0           # complex accepted, e.g. 1+2j

    [time]
    t_max = 5.0
    n_steps = 200             # uniform grid; or: times = 0, 0.5, 1.0

    [observables]
    intensities = true
    duan_pairs = all          # or e.g. 1-2, 2-3
    vlf_triples = 2-1-3
    covariance = false
    symplectic_spectrum = false

    [run]
    scenario_id = demo
    phase = 0.0               # radians, or: minimize

    [output]
    format = csv              # csv | json
    path = out.csv            # "-" or absent = stdout

Unknown sections or keys are hard errors: a typo must never silently
change the physics of a run.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import ScenarioError
from .model import ArrayConfig

VALID_FORMATS = ("csv", "json")
OBSERVABLE_NAMES = ("intensities", "duan", "vlf", "covariance", "symplectic_spectrum")
MINIMIZE = "minimize"
DEFAULT_N_STEPS = 200


@dataclass(frozen=True)
class InputSpec:
    """Input light: vacuum everywhere, or a coherent amplitude in one guide."""

    kind: str = "vacuum"
    site: int = 1
    amplitude: complex = 0j

    def __post_init__(self):
        if self.kind not in ("vacuum", "coherent"):
            raise ScenarioError(f"input state must be vacuum or coherent, got {self.kind!r}")


@dataclass(frozen=True)
class TimeGrid:
    """Either a uniform grid (t_max, n_steps points incl. endpoints) or explicit times."""

    t_max: float | None = None
    n_steps: int | None = None
    explicit: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.explicit is not None:
            if self.t_max is not None or self.n_steps is not None:
                raise ScenarioError("give either times or t_max/n_steps, not both")
            ts = tuple(float(t) for t in self.explicit)
            if len(ts) == 0:
                raise ScenarioError("times must contain at least one value")
            if any(t < 0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
                raise ScenarioError("times must be nonnegative and strictly ascending")
            object.__setattr__(self, "explicit", ts)
        else:
            if self.t_max is None:
                raise ScenarioError("time grid needs t_max (or an explicit times list)")
            t_max = float(self.t_max)
            n = DEFAULT_N_STEPS if self.n_steps is None else int(self.n_steps)
            if not np.isfinite(t_max) or t_max < 0:
                raise ScenarioError(f"t_max must be finite and >= 0, got {self.t_max}")
            if n < 1:
                raise ScenarioError(f"n_steps must be >= 1, got {self.n_steps}")
            object.__setattr__(self, "t_max", t_max)
            object.__setattr__(self, "n_steps", n)

    def times(self) -> np.ndarray:
        if self.explicit is not None:
            return np.array(self.explicit, dtype=float)
        if self.n_steps == 1:
            return np.array([self.t_max])
        return np.linspace(0.0, self.t_max, self.n_steps)


@dataclass(frozen=True)
class ObservableRequest:
    """Which quantities a run emits.  At least one must be switched on."""

    intensities: bool = False
    duan_pairs: str | tuple[tuple[int, int], ...] | None = None  # "all" or explicit pairs
    vlf_triples: tuple[tuple[int, int, int], ...] | None = None
    covariance: bool = False
    symplectic_spectrum: bool = False

    def __post_init__(self):
        if isinstance(self.duan_pairs, str) and self.duan_pairs != "all":
            raise ScenarioError(f"duan_pairs must be 'all' or explicit pairs, got {self.duan_pairs!r}")
        if not (self.intensities or self.duan_pairs or self.vlf_triples
                or self.covariance or self.symplectic_spectrum):
            raise ScenarioError("at least one observable must be requested")


@dataclass(frozen=True)
class OutputSpec:
    format: str = "csv"
    path: str | None = None  # None = standard output

    def __post_init__(self):
        if self.format not in VALID_FORMATS:
            raise ScenarioError(f"format must be one of {VALID_FORMATS}, got {self.format!r}")


@dataclass(frozen=True)
class ScenarioSpec:
    """A fully validated, declarative run description."""

    config: ArrayConfig
    grid: TimeGrid
    observables: ObservableRequest
    input: InputSpec = field(default_factory=InputSpec)
    phase: float | str = 0.0  # radians, or MINIMIZE
    output: OutputSpec = field(default_factory=OutputSpec)
    scenario_id: str = "scenario"

    def __post_init__(self):
        N = self.config.n_modes
        if self.input.kind == "coherent" and not 1 <= self.input.site <= N:
            raise ScenarioError(f"input site must be in 1..{N}, got {self.input.site}")
        pairs = self.observables.duan_pairs
        if isinstance(pairs, tuple):
            for (j, k) in pairs:
                if not (1 <= j <= N and 1 <= k <= N) or j == k:
                    raise ScenarioError(f"duan pair ({j},{k}) invalid for n_modes={N}")
        for triple in self.observables.vlf_triples or ():
            if len(set(triple)) != 3 or not all(1 <= x <= N for x in triple):
                raise ScenarioError(f"vlf triple {triple} invalid for n_modes={N}")
        if isinstance(self.phase, str):
            if self.phase != MINIMIZE:
                raise ScenarioError(f"phase must be a number or '{MINIMIZE}', got {self.phase!r}")
            if self.observables.vlf_triples or self.observables.covariance:
                raise ScenarioError(
                    "phase=minimize applies to the pair correlation only; "
                    "it cannot be combined with vlf_triples or covariance")
        else:
            object.__setattr__(self, "phase", float(self.phase))

    def duan_pair_list(self) -> list[tuple[int, int]]:
        """The concrete ordered pair list, expanding 'all' to j < k over all modes."""
        pairs = self.observables.duan_pairs
        if pairs is None:
            return []
        if pairs == "all":
            N = self.config.n_modes
            return [(j, k) for j in range(1, N + 1) for k in range(j + 1, N + 1)]
        return [tuple(p) for p in pairs]


# ---------------------------------------------------------------------------
# parsing

_SECTION_KEYS = {
    "array": {"n_modes", "pump_gains", "link_couplings", "loss_rate"},
    "input": {"state", "site", "amplitude"},
    "time": {"t_max", "n_steps", "times"},
    "observables": {"intensities", "duan_pairs", "vlf_triples",
                    "covariance", "symplectic_spectrum"},
    "run": {"scenario_id", "phase"},
    "output": {"format", "path"},
}


def _floats(text: str, name: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ScenarioError(f"{name}: expected comma-separated numbers, got {text!r}") from exc


def _bool(text: str, name: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ScenarioError(f"{name}: expected a boolean, got {text!r}")


def _index_tuples(text: str, name: str, arity: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        parts = tok.split("-")
        if len(parts) != arity or not all(p.strip().isdigit() for p in parts):
            raise ScenarioError(
                f"{name}: expected entries like "
                f"{'-'.join(str(i + 1) for i in range(arity))}, got {tok!r}")
        out.append(tuple(int(p) for p in parts))
    if not out:
        raise ScenarioError(f"{name}: empty list")
    return tuple(out)


def parse_scenario(text: str) -> ScenarioSpec:
    """Parse and fully validate a scenario file.

    Raises ScenarioError with a line number for syntax problems and with
    the offending field name for validation problems.
    """
    parser = configparser.ConfigParser(
        comment_prefixes=("#",), inline_comment_prefixes=("#",),
        delimiters=("=",), interpolation=None)
    parser.optionxform = str  # keys are case-sensitive; typos must not alias
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ScenarioError(f"scenario syntax error: {exc}") from exc

    for section in parser.sections():
        if section not in _SECTION_KEYS:
            raise ScenarioError(f"unknown section [{section}]")
        for key in parser[section]:
            if key not in _SECTION_KEYS[section]:
                raise ScenarioError(f"unknown key {key!r} in section [{section}]")

    if not parser.has_section("array"):
        raise ScenarioError("missing required section [array]")
    arr = parser["array"]
    if "n_modes" not in arr:
        raise ScenarioError("n_modes: required key missing from [array]")
    try:
        n_modes = int(arr["n_modes"])
    except ValueError as exc:
        raise ScenarioError(f"n_modes: expected an integer, got {arr['n_modes']!r}") from exc
    if n_modes < 1:
        raise ScenarioError(f"n_modes must be >= 1, got {n_modes}")
    if "pump_gains" not in arr:
        raise ScenarioError("pump_gains: required key missing from [array]")
    gains = _floats(arr["pump_gains"], "pump_gains")
    if len(gains) == 1:
        gains = gains * n_modes
    if n_modes > 1 and "link_couplings" not in arr:
        raise ScenarioError("link_couplings: required key missing from [array]")
    couplings = _floats(arr["link_couplings"], "link_couplings") \
        if "link_couplings" in arr else []
    if len(couplings) == 1 and n_modes > 2:
        couplings = couplings * (n_modes - 1)
    loss = float(arr["loss_rate"]) if "loss_rate" in arr else 0.0
    config = ArrayConfig(n_modes=n_modes, pump_gains=tuple(gains),
                         link_couplings=tuple(couplings), loss_rate=loss)

    input_spec = InputSpec()
    if parser.has_section("input"):
        sec = parser["input"]
        kind = sec.get("state", "vacuum").strip()
        if kind == "coherent":
            if "site" not in sec or "amplitude" not in sec:
                raise ScenarioError("coherent input requires both site and amplitude")
            try:
                amplitude = complex(sec["amplitude"].replace(" ", ""))
            except ValueError as exc:
                raise ScenarioError(f"amplitude: not a number: {sec['amplitude']!r}") from exc
            input_spec = InputSpec(kind="coherent", site=int(sec["site"]),
                                   amplitude=amplitude)
        elif kind == "vacuum":
            if "site" in sec or "amplitude" in sec:
                raise ScenarioError("site/amplitude are only valid for state = coherent")
        else:
            raise ScenarioError(f"state must be vacuum or coherent, got {kind!r}")

    if not parser.has_section("time"):
        raise ScenarioError("missing required section [time]")
    tsec = parser["time"]
    if "times" in tsec:
        if "t_max" in tsec or "n_steps" in tsec:
            raise ScenarioError("give either times or t_max/n_steps, not both")
        grid = TimeGrid(explicit=tuple(_floats(tsec["times"], "times")))
    else:
        grid = TimeGrid(t_max=float(tsec["t_max"]) if "t_max" in tsec else None,
                        n_steps=int(tsec["n_steps"]) if "n_steps" in tsec else None)

    if not parser.has_section("observables"):
        raise ScenarioError("missing required section [observables]")
    osec = parser["observables"]
    duan_pairs = None
    if "duan_pairs" in osec:
        raw = osec["duan_pairs"].strip()
        duan_pairs = "all" if raw == "all" else _index_tuples(raw, "duan_pairs", 2)
    vlf_triples = _index_tuples(osec["vlf_triples"], "vlf_triples", 3) \
        if "vlf_triples" in osec else None
    observables = ObservableRequest(
        intensities=_bool(osec["intensities"], "intensities") if "intensities" in osec else False,
        duan_pairs=duan_pairs,
        vlf_triples=vlf_triples,
        covariance=_bool(osec["covariance"], "covariance") if "covariance" in osec else False,
        symplectic_spectrum=_bool(osec["symplectic_spectrum"], "symplectic_spectrum")
        if "symplectic_spectrum" in osec else False,
    )

    phase: float | str = 0.0
    scenario_id = "scenario"
    if parser.has_section("run"):
        rsec = parser["run"]
        if "phase" in rsec:
            raw = rsec["phase"].strip()
            if raw == MINIMIZE:
                phase = MINIMIZE
            else:
                try:
                    phase = float(raw)
                except ValueError as exc:
                    raise ScenarioError(
                        f"phase: expected a number or '{MINIMIZE}', got {raw!r}") from exc
        scenario_id = rsec.get("scenario_id", scenario_id).strip()

    output = OutputSpec()
    if parser.has_section("output"):
        outsec = parser["output"]
        path = outsec.get("path", None)
        if path is not None:
            path = path.strip()
            if path in ("", "-"):
                path = None
        output = OutputSpec(format=outsec.get("format", "csv").strip(), path=path)

    return ScenarioSpec(config=config, grid=grid, observables=observables,
                        input=input_spec, phase=phase, output=output,
                        scenario_id=scenario_id)


def emit_spec(spec: ScenarioSpec) -> str:
    """Serialize a spec to the canonical scenario-file form.

    parse_scenario(emit_spec(s)) == s for every valid spec; the pair is
    tested as a round-trip.
    """
    buf = io.StringIO()
    w = buf.write
    w("[array]\n")
    w(f"n_modes = {spec.config.n_modes}\n")
    w(f"pump_gains = {', '.join(repr(g) for g in spec.config.pump_gains)}\n")
    if spec.config.link_couplings:
        w(f"link_couplings = {', '.join(repr(j) for j in spec.config.link_couplings)}\n")
    w(f"loss_rate = {spec.config.loss_rate!r}\n")
    w("\n[input]\n")
    w(f"state = {spec.input.kind}\n")
    if spec.input.kind == "coherent":
        w(f"site = {spec.input.site}\n")
        w(f"amplitude = {spec.input.amplitude!r}".replace("(", "").replace(")", "") + "\n")
    w("\n[time]\n")
    if spec.grid.explicit is not None:
        w(f"times = {', '.join(repr(t) for t in spec.grid.explicit)}\n")
    else:
        w(f"t_max = {spec.grid.t_max!r}\n")
        w(f"n_steps = {spec.grid.n_steps}\n")
    w("\n[observables]\n")
    obs = spec.observables
    if obs.intensities:
        w("intensities = true\n")
    if obs.duan_pairs == "all":
        w("duan_pairs = all\n")
    elif obs.duan_pairs:
        w(f"duan_pairs = {', '.join(f'{j}-{k}' for j, k in obs.duan_pairs)}\n")
    if obs.vlf_triples:
        w(f"vlf_triples = {', '.join(f'{i}-{j}-{k}' for i, j, k in obs.vlf_triples)}\n")
    if obs.covariance:
        w("covariance = true\n")
    if obs.symplectic_spectrum:
        w("symplectic_spectrum = true\n")
    w("\n[run]\n")
    w(f"scenario_id = {spec.scenario_id}\n")
    w(f"phase = {spec.phase if isinstance(spec.phase, str) else repr(spec.phase)}\n")
    w("\n[output]\n")
    w(f"format = {spec.output.format}\n")
    if spec.output.path:
        w(f"path = {spec.output.path}\n")
    return buf.getvalue()
