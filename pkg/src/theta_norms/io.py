"""Plain-text file formats.

* matrix: one row per line, comma-separated decimals
* sequence: one entry per line, optional first line ``#tail power_decay c s``
* grid: ``node,weight,sample`` per line, optional first line ``#kind counting``
* 2-variable grid: first row holds the Y nodes, then one row of samples per X node
"""

from __future__ import annotations

import csv
import io as _io
import math
from pathlib import Path

import numpy as np

from .errors import ParseError, ThetaNormsError
from .function_space import DiscreteMeasureSpace, GridFunction
from .sequence_space import PowerDecay, WeightedSequence


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None


def _lines(path, text: str | None = None) -> list[tuple[int, str]]:
    # ``text`` lets a caller that already consumed a pipe or FIFO parse it
    if text is None:
        text = read_text(path)
    return [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1) if ln.strip()]


def _floats(path, lineno: int, line: str) -> list[float]:
    try:
        row = next(csv.reader([line]))
        vals = [float(v) for v in row]
    except (ValueError, StopIteration):
        raise ParseError(f"{path}:{lineno}: expected comma-separated numbers, got {line!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise ParseError(f"{path}:{lineno}: non-finite value")
    return vals


def read_matrix_csv(path) -> np.ndarray:
    rows = [_floats(path, i, ln) for i, ln in _lines(path) if not ln.startswith("#")]
    if not rows:
        raise ParseError(f"{path}: empty matrix")
    width = len(rows[0])
    for k, r in enumerate(rows):
        if len(r) != width:
            raise ParseError(f"{path}: row {k + 1} has {len(r)} entries, expected {width}")
    return np.array(rows, dtype=np.float64)


def write_matrix_csv(path, M) -> None:
    M = np.atleast_2d(np.asarray(M, dtype=np.float64))
    Path(path).write_text("".join(",".join(repr(float(v)) for v in row) + "\n" for row in M))


def read_sequence_csv(path, text: str | None = None) -> WeightedSequence:
    tail = None
    values = []
    for i, ln in _lines(path, text):
        if ln.startswith("#"):
            parts = ln[1:].split()
            if parts and parts[0] == "tail":
                if len(parts) != 4 or parts[1] != "power_decay":
                    raise ParseError(f"{path}:{i}: expected '#tail power_decay c s'")
                try:
                    tail = PowerDecay(float(parts[2]), float(parts[3]))
                except ValueError as exc:
                    raise ParseError(f"{path}:{i}: {exc}") from None
            continue
        vals = _floats(path, i, ln)
        if len(vals) != 1:
            raise ParseError(f"{path}:{i}: expected one entry per line")
        values.append(vals[0])
    try:
        return WeightedSequence(np.array(values), tail)
    except ThetaNormsError as exc:
        raise ParseError(f"{path}: {exc}") from None


def write_sequence_csv(path, x: WeightedSequence) -> None:
    out = []
    if x.tail is not None:
        out.append(f"#tail power_decay {x.tail.c!r} {x.tail.s!r}\n")
    out.extend(f"{float(v)!r}\n" for v in x.entries)
    Path(path).write_text("".join(out))


def read_grid_csv(path, text: str | None = None) -> tuple[DiscreteMeasureSpace, GridFunction]:
    kind = "quadrature"
    rows = []
    for i, ln in _lines(path, text):
        if ln.startswith("#"):
            parts = ln[1:].split()
            if parts and parts[0] == "kind":
                if len(parts) != 2:
                    raise ParseError(f"{path}:{i}: expected '#kind quadrature|counting'")
                kind = parts[1]
            continue
        vals = _floats(path, i, ln)
        if len(vals) != 3:
            raise ParseError(f"{path}:{i}: expected node,weight,sample")
        rows.append(vals)
    arr = np.array(rows, dtype=np.float64).reshape(-1, 3)
    try:
        return DiscreteMeasureSpace(kind, arr[:, 0], arr[:, 1]), GridFunction(arr[:, 2])
    except ThetaNormsError as exc:
        raise ParseError(f"{path}: {exc}") from None


def write_grid_csv(path, mu: DiscreteMeasureSpace, f: GridFunction) -> None:
    buf = _io.StringIO()
    if mu.kind != "quadrature":
        buf.write(f"#kind {mu.kind}\n")
    for node, w, s in zip(mu.nodes, mu.weights, f.samples):
        buf.write(f"{float(node)!r},{float(w)!r},{float(s)!r}\n")
    Path(path).write_text(buf.getvalue())


def read_grid2_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Returns ``(y_nodes, samples)`` with ``samples[i, j] = f(x_i, y_j)``."""
    lines = [(i, ln) for i, ln in _lines(path) if not ln.startswith("#")]
    if not lines:
        raise ParseError(f"{path}: empty file")
    y = np.array(_floats(path, *lines[0]))
    rows = []
    for i, ln in lines[1:]:
        r = _floats(path, i, ln)
        if len(r) != y.size:
            raise ParseError(f"{path}:{i}: {len(r)} samples but {y.size} Y nodes")
        rows.append(r)
    return y, np.array(rows, dtype=np.float64).reshape(-1, y.size)


def write_grid2_csv(path, y_nodes, samples) -> None:
    y = np.asarray(y_nodes, dtype=np.float64)
    F = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    lines = [",".join(repr(float(v)) for v in y)]
    lines.extend(",".join(repr(float(v)) for v in row) for row in F)
    Path(path).write_text("\n".join(lines) + "\n")
