"""Deterministic grid sweeps over (n, alpha, loss, phase) and their file formats.

A scan has at most two axes.  Cells are stored row-major over the axes in
declaration order (the last axis varies fastest).  Each cell is evaluated on
its own through :func:`evaluate_point`, so results do not depend on
evaluation order or on the number of worker processes.

CSV layout: a header of axis names followed by quantity names, one row per
cell, floats written with 17 significant digits, ``detection_probs`` as a
``;``-separated list and ``regime`` as its label string.

JSON layout, keys in this order::

    {"spec": {"axes": [...], "fixed": {...}, "quantities": [...]},
     "axes": [{"name": ..., "values": [...]}, ...],
     "cells": [{"coords": {...}, "values": {...}}, ...],
     "metadata": {"version": ..., "timestamp": ...}}
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from . import __version__
from . import analytic as an
from .metrology import RegimeLabel, classify_regime

PARAMETERS = ("n", "alpha", "loss", "phase")
QUANTITIES = ("visibility", "fisher_max", "fisher_phi", "detection_probs",
              "advantage_ratio", "regime")
DEFAULT_FIXED = {"n": 2, "alpha": 0.5, "loss": 0.0, "phase": 0.0}
MAX_AXES = 2


class ScanError(ValueError):
    pass


@dataclass(frozen=True)
class Axis:
    """Uniform axis with inclusive endpoints and ``steps`` points."""

    name: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.name not in PARAMETERS:
            raise ScanError(f"unknown axis parameter {self.name!r}; expected one of {PARAMETERS}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ScanError(f"axis {self.name!r}: steps must be an integer >= 2, got {self.steps!r}")
        object.__setattr__(self, "steps", int(self.steps))
        for end in (self.start, self.stop):
            _check_param(self.name, end, f"axis {self.name!r} endpoint")
        if self.name == "n":
            for v in self._raw_values():
                if abs(v - round(v)) > 1e-9:
                    raise ScanError(f"axis 'n' must hit integers only, got {v!r}")

    def _raw_values(self) -> list[float]:
        # index-based spacing keeps both endpoints exact
        last = self.steps - 1
        vals = [self.start + (self.stop - self.start) * k / last for k in range(self.steps)]
        vals[-1] = float(self.stop)
        return vals

    def values(self) -> list[float]:
        vals = self._raw_values()
        if self.name == "n":
            return [int(round(v)) for v in vals]
        return [float(v) for v in vals]

    def to_dict(self) -> dict:
        return {"name": self.name, "start": self.start, "stop": self.stop, "steps": self.steps}


def _check_param(name: str, value: Any, where: str) -> None:
    if name == "n":
        if isinstance(value, bool) or value != round(value) or value < 1:
            raise ScanError(f"{where}: n must be an integer >= 1, got {value!r}")
    elif name in ("alpha", "loss"):
        if not 0.0 <= value <= 1.0:
            raise ScanError(f"{where}: {name} must lie in [0, 1], got {value!r}")
    elif not math.isfinite(value):
        raise ScanError(f"{where}: phase must be finite, got {value!r}")


@dataclass(frozen=True)
class ScanSpec:
    axes: tuple[Axis, ...]
    quantities: tuple[str, ...]
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        axes = tuple(self.axes)
        quantities = tuple(self.quantities)
        if not 1 <= len(axes) <= MAX_AXES:
            raise ScanError(f"a scan needs 1 to {MAX_AXES} axes, got {len(axes)}")
        names = [a.name for a in axes]
        if len(set(names)) != len(names):
            raise ScanError(f"duplicate axis in {names}")
        if not quantities:
            raise ScanError("quantity list is empty")
        for q in quantities:
            if q not in QUANTITIES:
                raise ScanError(f"unknown quantity {q!r}; expected one of {QUANTITIES}")
        if len(set(quantities)) != len(quantities):
            raise ScanError(f"duplicate quantity in {list(quantities)}")
        fixed = dict(self.fixed)
        for k, v in fixed.items():
            if k not in PARAMETERS:
                raise ScanError(f"unknown fixed parameter {k!r}; expected one of {PARAMETERS}")
            if k in names:
                raise ScanError(f"parameter {k!r} is both an axis and fixed")
            _check_param(k, v, "fixed parameter")
        if "n" in fixed:
            fixed["n"] = int(fixed["n"])
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "quantities", quantities)
        object.__setattr__(self, "fixed", fixed)
        if "regime" in quantities:
            ns = axes[names.index("n")].values() if "n" in names else [self.base()["n"]]
            if min(ns) < 2:
                raise ScanError("quantity 'regime' needs n >= 2 at every grid point")

    def base(self) -> dict:
        out = dict(DEFAULT_FIXED)
        out.update(self.fixed)
        return out

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(a.steps for a in self.axes)

    def points(self) -> list[dict]:
        base = self.base()
        grids = [a.values() for a in self.axes]
        out = []
        for combo in _product(grids):
            pt = dict(base)
            pt.update({a.name: v for a, v in zip(self.axes, combo)})
            out.append(pt)
        return out

    def to_dict(self) -> dict:
        return {
            "axes": [a.to_dict() for a in self.axes],
            "fixed": {k: self.fixed[k] for k in PARAMETERS if k in self.fixed},
            "quantities": list(self.quantities),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScanSpec":
        return cls(
            axes=tuple(Axis(a["name"], a["start"], a["stop"], a["steps"]) for a in d["axes"]),
            quantities=tuple(d["quantities"]),
            fixed=dict(d.get("fixed", {})),
        )


def _product(grids: Sequence[Sequence]) -> Iterable[tuple]:
    if not grids:
        yield ()
        return
    for head in grids[0]:
        for tail in _product(grids[1:]):
            yield (head,) + tail


def _degenerate(alpha: float, loss: float) -> bool:
    return alpha in (0.0, 1.0) or loss == 1.0


def evaluate_point(n: int, alpha: float, loss: float, phase: float,
                   quantities: Sequence[str]) -> dict:
    """Evaluate the requested quantities at one grid point.

    Where ``alpha`` is 0 or 1 or ``loss`` is 1 the Fisher information of both
    probes vanishes; ``advantage_ratio`` is then reported as 0 and ``regime``
    as NoAdvantage.
    """
    cfg = an.ProbeConfig(n, alpha, loss, phase)
    out: dict[str, Any] = {}
    for q in quantities:
        if q == "visibility":
            out[q] = an.visibility(alpha, loss, n)
        elif q == "fisher_max":
            out[q] = an.fisher_information_max(n, alpha, loss)
        elif q == "fisher_phi":
            out[q] = an.fisher_information(cfg)
        elif q == "detection_probs":
            out[q] = list(an.coincidence_distribution(cfg).probs)
        elif q == "advantage_ratio":
            out[q] = 0.0 if _degenerate(alpha, loss) else an.advantage_ratio(alpha, loss, n)
        elif q == "regime":
            out[q] = (RegimeLabel.NO_ADVANTAGE if _degenerate(alpha, loss)
                      else classify_regime(alpha, loss, n))
        else:
            raise ScanError(f"unknown quantity {q!r}")
    return out


@dataclass(frozen=True)
class Cell:
    coords: dict
    values: dict


@dataclass(frozen=True)
class ScanResult:
    spec: ScanSpec
    cells: tuple[Cell, ...]
    metadata: dict

    def grid(self, quantity: str) -> np.ndarray:
        """Scalar quantity reshaped to the axis shape (regimes as label strings)."""
        if quantity not in self.spec.quantities:
            raise ScanError(f"quantity {quantity!r} was not computed")
        vals = [c.values[quantity] for c in self.cells]
        if quantity == "regime":
            return np.array([str(v) for v in vals], dtype=object).reshape(self.spec.shape)
        if quantity == "detection_probs":
            raise ScanError("detection_probs is not a scalar quantity")
        return np.array(vals, dtype=float).reshape(self.spec.shape)

    def axis_values(self, name: str) -> list:
        for a in self.spec.axes:
            if a.name == name:
                return a.values()
        raise ScanError(f"{name!r} is not an axis of this scan")


def _eval_chunk(args):
    points, quantities = args
    return [evaluate_point(p["n"], p["alpha"], p["loss"], p["phase"], quantities) for p in points]


def run_scan(spec: ScanSpec, workers: int = 1, timestamp: str | None = None) -> ScanResult:
    """Evaluate ``spec`` on every grid point.

    ``workers > 1`` spreads contiguous chunks over processes; the output is
    identical to a serial run.  ``timestamp`` is recorded in the metadata
    only when given, so that repeated runs stay byte-identical by default.
    """
    points = spec.points()
    quantities = spec.quantities
    if workers <= 1 or len(points) < 2:
        values = _eval_chunk((points, quantities))
    else:
        size = math.ceil(len(points) / workers)
        chunks = [(points[i:i + size], quantities) for i in range(0, len(points), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = [v for part in pool.map(_eval_chunk, chunks) for v in part]
    names = [a.name for a in spec.axes]
    cells = tuple(Cell({k: p[k] for k in names}, v) for p, v in zip(points, values))
    metadata = {"version": __version__}
    if timestamp is not None:
        metadata["timestamp"] = timestamp
    return ScanResult(spec, cells, metadata)


def _fmt(v: Any) -> str:
    if isinstance(v, RegimeLabel):
        return v.value
    if isinstance(v, bool):
        raise TypeError("booleans are not scan values")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        return ";".join(_fmt(x) for x in v)
    return str(v)


def _open_for_write(destination):
    if hasattr(destination, "write"):
        return destination, False
    try:
        return open(destination, "w", newline="", encoding="utf-8"), True
    except OSError as exc:
        raise OSError(f"cannot write scan output to {os.fspath(destination)!r}: {exc.strerror}") from exc


def write_csv(result: ScanResult, destination) -> None:
    """Write ``result`` as CSV to a path or an open text stream."""
    fh, close = _open_for_write(destination)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        names = [a.name for a in result.spec.axes]
        writer.writerow(names + list(result.spec.quantities))
        for cell in result.cells:
            writer.writerow([_fmt(cell.coords[k]) for k in names]
                            + [_fmt(cell.values[q]) for q in result.spec.quantities])
    finally:
        if close:
            fh.close()


def _json_value(v: Any) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    if isinstance(v, RegimeLabel):
        return json.dumps(v.value)
    if v is None or isinstance(v, (bool, str)):
        return json.dumps(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"non-finite value {v!r} cannot be written as JSON")
        text = format(v, ".17g")
        # keep floats recognisable as floats after a round trip
        return text if any(ch in text for ch in ".e") else text + ".0"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def to_json_text(result: ScanResult) -> str:
    spec = result.spec
    doc_axes = [{"name": a.name, "values": a.values()} for a in spec.axes]
    lines = ["{",
             f'  "spec": {_json_value(spec.to_dict())},',
             f'  "axes": {_json_value(doc_axes)},',
             '  "cells": [']
    for k, cell in enumerate(result.cells):
        sep = "," if k < len(result.cells) - 1 else ""
        lines.append(f'    {_json_value({"coords": cell.coords, "values": cell.values})}{sep}')
    lines.append("  ],")
    lines.append(f'  "metadata": {_json_value(result.metadata)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_json(result: ScanResult, destination) -> None:
    """Write ``result`` as one JSON document to a path or an open text stream."""
    fh, close = _open_for_write(destination)
    try:
        fh.write(to_json_text(result))
    finally:
        if close:
            fh.close()


def read_json(source) -> ScanResult:
    """Load a document written by :func:`write_json`."""
    if hasattr(source, "read"):
        doc = json.load(source)
    else:
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)
    spec = ScanSpec.from_dict(doc["spec"])
    cells = []
    for c in doc["cells"]:
        values = dict(c["values"])
        if "regime" in values:
            values["regime"] = RegimeLabel(values["regime"])
        cells.append(Cell(dict(c["coords"]), values))
    return ScanResult(spec, tuple(cells), dict(doc.get("metadata", {})))


def read_csv(source) -> list[dict]:
    """Parse a CSV written by :func:`write_csv` back into typed rows."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        parsed = {}
        for k, v in row.items():
            if k == "regime":
                parsed[k] = RegimeLabel(v)
            elif k == "detection_probs":
                parsed[k] = [float(x) for x in v.split(";")]
            elif k == "n":
                parsed[k] = int(v)
            else:
                parsed[k] = float(v)
        out.append(parsed)
    return out
