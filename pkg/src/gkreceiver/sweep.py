"""Photon-number sweeps and the datasets behind the comparison figures.

A sweep evaluates every (photon number, receiver, objective) cell on a
linear or logarithmic grid and serializes the results as CSV or JSON.
Cells are independent pure computations: they may be evaluated in parallel,
and rows are gathered and sorted before emission so the output is
byte-identical across runs and worker counts.

Receiver identifiers:

* ``gk-opt``        displacement receiver with beta (and, for capacity, the
                    prior) numerically optimized
* ``kennedy-exact`` exact-nulling receiver, beta = 0 (prior optimized for
                    capacity)
* ``homodyne``      shot-noise-limited homodyne; hard-decision capacity
* ``dolinar``       adaptive receiver attaining the quantum-optimal error;
                    ``helstrom`` is an alias; its capacity is the
                    symbol-by-symbol limit (same as ``c1``)
* ``c1``, ``holevo`` capacity-only benchmark curves

Error-probability rows use equal priors; ``p_opt`` records the prior that
the value was computed with (the optimized prior for capacity rows).
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .optimize import capacity_fixed_beta, capacity_gk, min_error_beta
from .receivers import (
    c1_capacity,
    gk_error,
    helstrom_error,
    holevo_capacity,
    homodyne_capacity,
    homodyne_error,
)

__all__ = [
    "SWEEP_RECEIVERS",
    "ALL_RECEIVERS",
    "OBJECTIVES",
    "FIGURES",
    "SweepSpec",
    "SweepRow",
    "SweepConfigError",
    "run_sweep",
    "emit",
    "load_rows",
    "figure_command",
]

SWEEP_RECEIVERS = ("gk-opt", "kennedy-exact", "homodyne", "dolinar")
CAPACITY_ONLY_RECEIVERS = ("c1", "holevo")
ALL_RECEIVERS = SWEEP_RECEIVERS + ("helstrom",) + CAPACITY_ONLY_RECEIVERS
OBJECTIVES = ("capacity", "perror")
SPACINGS = ("lin", "log")
FORMATS = ("csv", "json")

CSV_HEADER = "n_bar,receiver,objective,beta_opt,p_opt,value,converged"

VALUE_SLACK = 1e-12


class SweepConfigError(ValueError):
    """Invalid sweep configuration."""


@dataclass(frozen=True)
class SweepSpec:
    """Grid, receiver/objective selection, and output destination of a sweep."""

    n_min: float
    n_max: float
    points: int
    spacing: str
    receivers: tuple[str, ...]
    objectives: tuple[str, ...]
    output_format: str
    output_path: str
    jobs: int = 1

    def __post_init__(self):
        try:
            object.__setattr__(self, "n_min", float(self.n_min))
            object.__setattr__(self, "n_max", float(self.n_max))
            object.__setattr__(self, "points", int(self.points))
            object.__setattr__(self, "jobs", int(self.jobs))
        except (TypeError, ValueError) as exc:
            raise SweepConfigError(f"malformed numeric field: {exc}") from exc
        object.__setattr__(self, "receivers", tuple(self.receivers))
        object.__setattr__(self, "objectives", tuple(self.objectives))
        if not 0.0 <= self.n_min < self.n_max:
            raise SweepConfigError(
                f"need 0 <= n_min < n_max, got [{self.n_min}, {self.n_max}]")
        if self.points < 2:
            raise SweepConfigError(f"need at least 2 grid points, got {self.points}")
        if self.spacing not in SPACINGS:
            raise SweepConfigError(f"spacing must be one of {SPACINGS}, got {self.spacing!r}")
        if self.spacing == "log" and self.n_min <= 0.0:
            raise SweepConfigError("logarithmic spacing requires n_min > 0")
        if not self.receivers:
            raise SweepConfigError("at least one receiver is required")
        for r in self.receivers:
            if r not in ALL_RECEIVERS:
                raise SweepConfigError(f"unknown receiver {r!r}; choose from {ALL_RECEIVERS}")
        if not self.objectives:
            raise SweepConfigError("at least one objective is required")
        for o in self.objectives:
            if o not in OBJECTIVES:
                raise SweepConfigError(f"unknown objective {o!r}; choose from {OBJECTIVES}")
        for r in self.receivers:
            if r in CAPACITY_ONLY_RECEIVERS and "perror" in self.objectives:
                raise SweepConfigError(
                    f"receiver {r!r} is a capacity benchmark; it has no perror curve")
        if self.output_format not in FORMATS:
            raise SweepConfigError(
                f"format must be one of {FORMATS}, got {self.output_format!r}")
        if self.jobs < 1:
            raise SweepConfigError(f"jobs must be >= 1, got {self.jobs}")

    def grid(self) -> list[float]:
        k = self.points
        if self.spacing == "lin":
            return [self.n_min + i * (self.n_max - self.n_min) / (k - 1) for i in range(k)]
        lo = math.log10(self.n_min)
        hi = math.log10(self.n_max)
        return [10.0 ** (lo + i * (hi - lo) / (k - 1)) for i in range(k)]


@dataclass(frozen=True)
class SweepRow:
    """One dataset record: the optimum found for a (N, receiver, objective) cell."""

    n_bar: float
    receiver: str
    objective: str
    beta_opt: float | None
    p_opt: float | None
    value: float
    converged: bool

    def __post_init__(self):
        if self.objective == "capacity":
            lo, hi = 0.0, 1.0
        else:
            lo, hi = 0.0, 0.5
        if not lo - VALUE_SLACK <= self.value <= hi + VALUE_SLACK:
            raise ValueError(
                f"{self.objective} value {self.value!r} outside [{lo}, {hi}]")


def evaluate_cell(n_bar: float, receiver: str, objective: str) -> SweepRow:
    """Compute one sweep cell; pure function of its arguments."""
    if objective == "capacity":
        if receiver == "gk-opt":
            r = capacity_gk(n_bar)
            return SweepRow(n_bar, receiver, objective, r.arg_beta, r.arg_p,
                            r.value, r.converged)
        if receiver == "kennedy-exact":
            r = capacity_fixed_beta(n_bar, 0.0)
            return SweepRow(n_bar, receiver, objective, 0.0, r.arg_p,
                            r.value, r.converged)
        if receiver == "homodyne":
            return SweepRow(n_bar, receiver, objective, None, 0.5,
                            homodyne_capacity(n_bar), True)
        if receiver in ("dolinar", "helstrom", "c1"):
            return SweepRow(n_bar, receiver, objective, None, 0.5,
                            c1_capacity(n_bar), True)
        if receiver == "holevo":
            return SweepRow(n_bar, receiver, objective, None, None,
                            holevo_capacity(n_bar), True)
    elif objective == "perror":
        if receiver == "gk-opt":
            r = min_error_beta(n_bar, 0.5)
            return SweepRow(n_bar, receiver, objective, r.arg_beta, 0.5,
                            r.value, r.converged)
        if receiver == "kennedy-exact":
            return SweepRow(n_bar, receiver, objective, 0.0, 0.5,
                            gk_error(n_bar, 0.0, 0.5), True)
        if receiver == "homodyne":
            return SweepRow(n_bar, receiver, objective, None, 0.5,
                            homodyne_error(n_bar), True)
        if receiver in ("dolinar", "helstrom"):
            return SweepRow(n_bar, receiver, objective, None, 0.5,
                            helstrom_error(n_bar, 0.5), True)
    raise SweepConfigError(f"no rule for receiver {receiver!r}, objective {objective!r}")


def _evaluate_cell_tuple(cell):
    return evaluate_cell(*cell)


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate all cells of the sweep, sorted by (n_bar, receiver, objective)."""
    cells = [(n, r, o)
             for n in spec.grid()
             for r in spec.receivers
             for o in spec.objectives]
    if spec.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            rows = list(pool.map(_evaluate_cell_tuple, cells, chunksize=4))
    else:
        rows = [evaluate_cell(*cell) for cell in cells]
    rows.sort(key=lambda r: (r.n_bar, r.receiver, r.objective))
    return rows


def _fmt_opt(x) -> str:
    # repr() of a float is its shortest round-tripping decimal form
    return "" if x is None else repr(x)


def _render_csv(rows) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join((
            repr(r.n_bar), r.receiver, r.objective, _fmt_opt(r.beta_opt),
            _fmt_opt(r.p_opt), repr(r.value), "true" if r.converged else "false")))
    return "\n".join(lines) + "\n"


def _render_json(rows) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2) + "\n"


def emit(rows, output_format: str, path: str) -> None:
    """Persist rows as CSV or JSON; atomic (no partial file on failure)."""
    if output_format not in FORMATS:
        raise SweepConfigError(f"format must be one of {FORMATS}, got {output_format!r}")
    text = _render_csv(rows) if output_format == "csv" else _render_json(rows)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sweep-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _row_from_fields(fields: dict) -> SweepRow:
    return SweepRow(
        n_bar=float(fields["n_bar"]),
        receiver=fields["receiver"],
        objective=fields["objective"],
        beta_opt=None if fields["beta_opt"] is None else float(fields["beta_opt"]),
        p_opt=None if fields["p_opt"] is None else float(fields["p_opt"]),
        value=float(fields["value"]),
        converged=fields["converged"],
    )


def load_rows(path: str, output_format: str) -> list[SweepRow]:
    """Parse a dataset produced by emit(); inverse of the rendering."""
    with open(path) as handle:
        text = handle.read()
    if output_format == "json":
        return [_row_from_fields(obj) for obj in json.loads(text)]
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header in {path!r}")
    rows = []
    for line in lines[1:]:
        n_bar, receiver, objective, beta, p, value, conv = line.split(",")
        rows.append(SweepRow(
            n_bar=float(n_bar), receiver=receiver, objective=objective,
            beta_opt=float(beta) if beta else None,
            p_opt=float(p) if p else None,
            value=float(value), converged=conv == "true"))
    return rows


def _figure_spec(receivers, objectives, output_format, path) -> SweepSpec:
    return SweepSpec(n_min=1e-3, n_max=10.0, points=50, spacing="log",
                     receivers=receivers, objectives=objectives,
                     output_format=output_format, output_path=path)


FIGURES = {
    # capacity attained by each receiver vs the single-copy/collective limits
    "fig-capacity": (("gk-opt", "kennedy-exact", "homodyne", "c1", "holevo"),
                     ("capacity",)),
    # equal-prior one-shot error probabilities
    "fig-perror": (("helstrom", "gk-opt", "kennedy-exact", "homodyne"),
                   ("perror",)),
    # optimal displacement under each objective, side by side
    "fig-beta": (("gk-opt",), ("capacity", "perror")),
}


def figure_command(name: str, path: str, output_format: str = "csv",
                   jobs: int = 1) -> list[SweepRow]:
    """Run one of the preset figure sweeps and persist its dataset."""
    if name not in FIGURES:
        raise SweepConfigError(f"unknown figure {name!r}; choose from {tuple(FIGURES)}")
    receivers, objectives = FIGURES[name]
    spec = _figure_spec(receivers, objectives, output_format, path)
    if jobs != 1:
        spec = SweepSpec(**{**asdict(spec), "jobs": jobs})
    rows = run_sweep(spec)
    emit(rows, output_format, path)
    return rows
