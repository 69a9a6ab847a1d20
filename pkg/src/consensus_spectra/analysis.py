"""Parameter sweeps and the datasets behind the standard figures.

Every row carries both the model's rate and the rate of the symmetric
(a = 0) model of identical topology; their difference is the absolute
error introduced by ignoring link asymmetry.  Rates come from the
canonical pipeline unless the caller switches the method, and rows are
produced in deterministic grid order regardless of any internal
parallelism, so a dataset regenerates bit-identically across runs.

Each figure's grid is fixed here and recorded in the dataset metadata:

* figure 3: ring, n in 4..40 even, a in {0, 0.3, 0.6, 0.9}
* figure 4: torus, odd sides 5..21, a = 0.3
* figure 5: r-nearest ring, n = 400, r in {8, 32, 100, 150},
  a in 0..1 step 0.05 (the displayed radii are chosen so the rates are
  visibly nonzero and the slowest curves hit zero near a = 0.8)
* figure 6: torus prefixes of sides (11, 15, 21, 25, 27), a = 0.3
* figure 7: ring, n in 4..64 even, a in {0.3, 0.9}
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from .design import closed_design, design_pipeline, minimax_h
from .errors import ConsensusSpectraError, ParameterError
from .spectral import full_spectrum
from .topology import Kind, NetworkModel, ring, torus

THREADS_ENV = "CONSENSUS_SPECTRA_THREADS"


@dataclass(frozen=True)
class SweepRow:
    kind: str
    n: int | None
    r: int | None
    dims: tuple[int, ...] | None
    a: float
    h: float
    gamma: float
    rate: float
    rate_symmetric: float
    absolute_error: float
    method: str
    error: str = ""

    def as_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["dims"] = "x".join(str(k) for k in self.dims) if self.dims else ""
        return d


def _design_for(model: NetworkModel, method: str):
    if method == "pipeline":
        return design_pipeline(model)
    if method == "closed":
        return closed_design(model)
    if method == "minimax":
        return minimax_h(full_spectrum(model))
    raise ValueError(f"unknown method {method!r}; expected pipeline, closed or minimax")


def _evaluate_point(model: NetworkModel, method: str) -> SweepRow:
    base = {
        "kind": model.kind.value,
        "n": model.n,
        "r": model.r,
        "dims": model.dims,
        "a": model.a,
        "method": method,
    }
    try:
        design = _design_for(model, method)
        symmetric = dataclasses.replace(model, a=0.0)
        rate_sym = design_pipeline(symmetric).rate
        return SweepRow(
            h=design.h,
            gamma=design.gamma,
            rate=design.rate,
            rate_symmetric=rate_sym,
            absolute_error=rate_sym - design.rate,
            **base,
        )
    except ConsensusSpectraError as exc:
        return SweepRow(
            h=math.nan,
            gamma=math.nan,
            rate=math.nan,
            rate_symmetric=math.nan,
            absolute_error=math.nan,
            error=f"{type(exc).__name__}: {exc}",
            **base,
        )


def _evaluate_grid(models: list[NetworkModel], method: str) -> list[SweepRow]:
    workers = 1
    env = os.environ.get(THREADS_ENV)
    if env:
        workers = max(1, min(int(env), len(models) or 1))
    if workers == 1:
        return [_evaluate_point(m, method) for m in models]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda m: _evaluate_point(m, method), models))


def sweep(template: NetworkModel, varying: dict, method: str = "pipeline") -> list[SweepRow]:
    """One row per point of the cartesian grid over ``varying``.

    ``varying`` maps model fields (n, r, a, dims) to value sequences;
    rows follow the grid order of the dict.  A point that fails
    validation or design is recorded in-row and the sweep continues.
    """
    keys = list(varying)
    unknown = set(keys) - {"n", "r", "a", "dims"}
    if unknown:
        raise ParameterError(f"cannot vary {sorted(unknown)}; expected n, r, a or dims")
    models = []
    for combo in product(*(varying[k] for k in keys)):
        fields = dict(zip(keys, combo))
        if "dims" in fields:
            fields["dims"] = tuple(fields["dims"])
        models.append(dataclasses.replace(template, **fields))
    return _evaluate_grid(models, method)


def absolute_error_curve(kind: Kind, sizes, a: float, method: str = "pipeline") -> list[SweepRow]:
    """Rows over ``sizes`` with the symmetric-minus-asymmetric rate gap."""
    if not 0.0 < a <= 1.0:
        raise ValueError(f"absolute error curve needs a in (0, 1], got {a}")
    models = []
    for size in sizes:
        if kind is Kind.TORUS:
            models.append(NetworkModel(kind=kind, a=a, dims=tuple(size)))
        else:
            models.append(NetworkModel(kind=kind, a=a, n=int(size)))
    return _evaluate_grid(models, method)


@dataclass(frozen=True)
class FigureDataset:
    figure_id: int
    label: str
    rows: list[SweepRow]
    metadata: dict

    @property
    def filename(self) -> str:
        return f"fig{self.figure_id}_{self.label}.csv"


FIG5_RADII = (8, 32, 100, 150)
FIG6_SIDES = (11, 15, 21, 25, 27)


def figure_dataset(figure_id: int, method: str = "pipeline") -> FigureDataset:
    """Full dataset behind one of the standard figures (3 to 7)."""
    if figure_id == 3:
        grid = {"n": list(range(4, 41, 2)), "a": [0.0, 0.3, 0.6, 0.9]}
        rows = sweep(ring(4), grid, method=method)
        return FigureDataset(
            3,
            "ring_rates",
            rows,
            {"grid": "ring n=4..40 even, a in {0, 0.3, 0.6, 0.9}", "method": method},
        )
    if figure_id == 4:
        sides = list(range(5, 22, 2))
        models = [torus((k1, k2), 0.3) for k1 in sides for k2 in sides]
        rows = _evaluate_grid(models, method)
        return FigureDataset(
            4,
            "torus_odd",
            rows,
            {"grid": "torus k1,k2 in 5..21 odd, a=0.3", "method": method},
        )
    if figure_id == 5:
        a_values = [round(0.05 * i, 2) for i in range(21)]
        models = [
            NetworkModel(Kind.R_NEAREST_RING, n=400, r=r, a=a)
            for r in FIG5_RADII
            for a in a_values
        ]
        rows = _evaluate_grid(models, method)
        # per radius, the last grid point where the rate is still above 1%
        visible = {}
        for row in rows:
            if row.rate > 0.01:
                visible[row.r] = max(row.a, visible.get(row.r, 0.0))
        return FigureDataset(
            5,
            "n400",
            rows,
            {
                "grid": f"r-nearest n=400, r in {FIG5_RADII}, a=0..1 step 0.05",
                "method": method,
                "largest_a_with_rate_above_0.01": visible,
            },
        )
    if figure_id == 6:
        models = [ring(FIG6_SIDES[0], 0.3)]
        for m in range(2, len(FIG6_SIDES) + 1):
            models.append(torus(FIG6_SIDES[:m], 0.3))
        rows = _evaluate_grid(models, method)
        return FigureDataset(
            6,
            "dimension",
            rows,
            {"grid": f"prefixes of sides {FIG6_SIDES}, m=1..5, a=0.3", "method": method},
        )
    if figure_id == 7:
        rows = []
        for a in (0.3, 0.9):
            rows.extend(absolute_error_curve(Kind.RING, range(4, 65, 2), a, method=method))
        return FigureDataset(
            7,
            "abs_error",
            rows,
            {"grid": "ring n=4..64 even, a in {0.3, 0.9}", "method": method},
        )
    raise ValueError(f"unknown figure id {figure_id}; expected 3..7")


# --- serialization ------------------------------------------------------------

_COLUMNS = (
    "kind",
    "n",
    "r",
    "dims",
    "a",
    "h",
    "gamma",
    "rate",
    "rate_symmetric",
    "absolute_error",
    "method",
    "error",
)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def rows_to_csv(rows: list[SweepRow]) -> str:
    lines = [";".join(_COLUMNS)]
    for row in rows:
        d = row.as_dict()
        lines.append(";".join(_cell(d[c]) for c in _COLUMNS))
    return "\n".join(lines) + "\n"


def rows_to_jsonl(rows: list[SweepRow]) -> str:
    out = []
    for row in rows:
        d = row.as_dict()
        clean = {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in d.items()}
        out.append(json.dumps(clean))
    return "\n".join(out) + "\n"


def write_figure(dataset: FigureDataset, directory) -> Path:
    path = Path(directory) / dataset.filename
    path.write_text(rows_to_csv(dataset.rows))
    return path
