"""Render record streams to matplotlib figures.

The report path of the CLI writes these PNGs next to the delimited
output.  Layout is inferred from the records: a single-time intensity
run becomes a profile over the guide index, anything time-resolved
becomes one curve per (scenario, observable, index tuple).  Witness
panels get their separability reference lines (0 for the pair
correlation, 4 for the tripartite witness).
"""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .runner import Record

_REFERENCE_LINES = {"duan": 0.0, "vlf": 4.0}
_Y_LABELS = {
    "intensities": "intensity $\\langle a_j^\\dagger a_j \\rangle$",
    "duan": "pair correlation $M(j,k)$",
    "vlf": "tripartite witness $V(i,j,k)$",
    "symplectic_spectrum": "symplectic eigenvalue",
}


def _series_label(rec: Record) -> str:
    idx = "".join(f",{x}" for x in (rec.i, rec.j, rec.k) if x is not None).lstrip(",")
    label = rec.scenario_id
    if idx:
        label += f" ({idx})"
    return label


def render_records(records: Sequence[Record], path: str, title: str | None = None) -> None:
    """Draw the records and save a PNG to `path`.

    Covariance entries are not drawable as curves and are skipped.
    """
    visible = [r for r in records if r.observable != "covariance"]
    if not visible:
        raise ValueError("no drawable records (covariance matrices are not plotted)")

    by_obs: dict[str, list[Record]] = defaultdict(list)
    for rec in visible:
        by_obs[rec.observable].append(rec)

    n_panels = len(by_obs)
    fig, axes = plt.subplots(n_panels, 1, figsize=(7.0, 3.2 * n_panels), squeeze=False)
    for ax, (name, recs) in zip(axes.ravel(), sorted(by_obs.items())):
        times = {r.time for r in recs}
        if name == "intensities" and len(times) == 1:
            profiles: dict[str, list[Record]] = defaultdict(list)
            for r in recs:
                profiles[r.scenario_id].append(r)
            for sid, rows in profiles.items():
                rows.sort(key=lambda r: r.i)
                ax.plot([r.i for r in rows], [r.value for r in rows],
                        marker="o", ms=3, label=sid)
            ax.set_xlabel("waveguide index $j$")
        else:
            series: dict[tuple, list[Record]] = defaultdict(list)
            for r in recs:
                series[(r.scenario_id, r.i, r.j, r.k)].append(r)
            for key in sorted(series, key=str):
                rows = sorted(series[key], key=lambda r: r.time)
                ax.plot([r.time for r in rows], [r.value for r in rows],
                        lw=1.2, label=_series_label(rows[0]))
            ax.set_xlabel("time $t$ (units of $1/J$)")
        if name in _REFERENCE_LINES:
            ax.axhline(_REFERENCE_LINES[name], color="0.4", lw=0.8, ls="--")
        ax.set_ylabel(_Y_LABELS.get(name, name))
        if len(ax.get_lines()) <= 12:
            ax.legend(fontsize=7, ncol=2)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
