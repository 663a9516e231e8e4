"""Dense and sparse binary matrices with 1-based indexing, plus file I/O.

All public interfaces use 1-based row/column indices to match the usual
coding-theory convention [1, n].  Matrices are immutable once built and
safe to share between threads.

File formats
------------
* alist: the de-facto interchange format for sparse parity-check
  matrices (``read_alist`` / ``write_alist``).
* CSV of dense 0/1 values for small base matrices
  (``read_dense_csv`` / ``write_dense_csv``).
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BinaryMatrix",
    "SparseParityCheck",
    "AlistParseError",
    "submatrix_columns",
    "row_weights",
    "read_alist",
    "write_alist",
    "read_dense_csv",
    "write_dense_csv",
]


class BinaryMatrix:
    """Immutable dense 0/1 matrix."""

    __slots__ = ("_a",)

    def __init__(self, entries) -> None:
        a = np.array(entries, dtype=np.uint8)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {a.shape}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"matrix must be at least 1x1, got {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")
        a.setflags(write=False)
        self._a = a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    def entry(self, i: int, j: int) -> int:
        """Entry at row i, column j (1-based)."""
        self._check_row(i)
        self._check_col(j)
        return int(self._a[i - 1, j - 1])

    def column(self, j: int) -> tuple[int, ...]:
        """Column j (1-based) as a tuple of 0/1 ints."""
        self._check_col(j)
        return tuple(int(v) for v in self._a[:, j - 1])

    def to_array(self) -> np.ndarray:
        """Read-only uint8 view of the underlying array."""
        return self._a

    def _check_row(self, i: int) -> None:
        if not 1 <= i <= self.rows:
            raise IndexError(f"row index {i} out of range [1, {self.rows}]")

    def _check_col(self, j: int) -> None:
        if not 1 <= j <= self.cols:
            raise IndexError(f"column index {j} out of range [1, {self.cols}]")

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool((self._a == other._a).all())

    def __hash__(self) -> int:
        return hash((self._a.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols})"


class SparseParityCheck:
    """Immutable sparse binary matrix held as row and column adjacency lists.

    Built from the 1-based row-index lists of each column; the row-side
    adjacency is derived so the two views are consistent by construction.
    """

    __slots__ = ("_rows", "_cols", "_col_rows", "_row_cols")

    def __init__(self, rows: int, cols: int,
                 col_rows: Sequence[Iterable[int]]) -> None:
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix must be at least 1x1, got {rows}x{cols}")
        if len(col_rows) != cols:
            raise ValueError(f"expected {cols} column lists, got {len(col_rows)}")
        per_col: list[tuple[int, ...]] = []
        per_row: list[list[int]] = [[] for _ in range(rows)]
        for j, entries in enumerate(col_rows, start=1):
            idx = sorted(entries)
            for a, b in zip(idx, idx[1:]):
                if a == b:
                    raise ValueError(f"duplicate row index {a} in column {j}")
            if idx and not (1 <= idx[0] and idx[-1] <= rows):
                raise ValueError(f"row index out of range [1, {rows}] in column {j}")
            per_col.append(tuple(idx))
            for i in idx:
                per_row[i - 1].append(j)
        self._rows = rows
        self._cols = cols
        self._col_rows = tuple(per_col)
        self._row_cols = tuple(tuple(c) for c in per_row)

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    def col_rows(self, j: int) -> tuple[int, ...]:
        """Sorted 1-based row indices of the ones in column j."""
        if not 1 <= j <= self._cols:
            raise IndexError(f"column index {j} out of range [1, {self._cols}]")
        return self._col_rows[j - 1]

    def row_cols(self, i: int) -> tuple[int, ...]:
        """Sorted 1-based column indices of the ones in row i."""
        if not 1 <= i <= self._rows:
            raise IndexError(f"row index {i} out of range [1, {self._rows}]")
        return self._row_cols[i - 1]

    @property
    def column_adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._col_rows

    @property
    def row_adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._row_cols

    @classmethod
    def from_dense(cls, m: BinaryMatrix) -> "SparseParityCheck":
        a = m.to_array()
        cols = [list(np.flatnonzero(a[:, j]) + 1) for j in range(m.cols)]
        return cls(m.rows, m.cols, cols)

    def to_dense(self) -> BinaryMatrix:
        a = np.zeros((self._rows, self._cols), dtype=np.uint8)
        for j, idx in enumerate(self._col_rows):
            for i in idx:
                a[i - 1, j] = 1
        return BinaryMatrix(a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseParityCheck):
            return NotImplemented
        return (self._rows == other._rows and self._cols == other._cols
                and self._col_rows == other._col_rows)

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._col_rows))

    def __repr__(self) -> str:
        ones = sum(len(c) for c in self._col_rows)
        return f"SparseParityCheck({self._rows}x{self._cols}, {ones} ones)"


def submatrix_columns(m: BinaryMatrix, idx: Iterable[int]) -> BinaryMatrix:
    """Column-selected submatrix, preserving row count and index order.

    Raises IndexError when any index falls outside [1, m.cols].
    """
    sel = list(idx)
    if not sel:
        raise ValueError("index set must be non-empty for a 1-based submatrix")
    for j in sel:
        if not 1 <= j <= m.cols:
            raise IndexError(f"column index {j} out of range [1, {m.cols}]")
    return BinaryMatrix(m.to_array()[:, [j - 1 for j in sel]])


def row_weights(m: BinaryMatrix) -> tuple[int, ...]:
    """Number of ones in each row."""
    return tuple(int(w) for w in m.to_array().sum(axis=1))


class AlistParseError(ValueError):
    """Malformed alist input; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"alist line {line}: {message}")
        self.line = line


def write_alist(h: SparseParityCheck, sink) -> None:
    """Write h in alist format to a path or text file object.

    Layout: ``n m`` / max column and row degrees / column degrees /
    row degrees / n lines of row indices per column / m lines of column
    indices per row.  All indices 1-based; no zero padding is emitted.
    """
    col_deg = [len(h.col_rows(j)) for j in range(1, h.cols + 1)]
    row_deg = [len(h.row_cols(i)) for i in range(1, h.rows + 1)]
    lines = [
        f"{h.cols} {h.rows}",
        f"{max(col_deg)} {max(row_deg)}",
        " ".join(map(str, col_deg)),
        " ".join(map(str, row_deg)),
    ]
    lines += [" ".join(map(str, h.col_rows(j))) for j in range(1, h.cols + 1)]
    lines += [" ".join(map(str, h.row_cols(i))) for i in range(1, h.rows + 1)]
    text = "\n".join(lines) + "\n"
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w") as f:
            f.write(text)


def _ints(token_line: str, lineno: int) -> list[int]:
    try:
        return [int(t) for t in token_line.split()]
    except ValueError as exc:
        raise AlistParseError(lineno, f"expected integers, got {token_line!r}") from exc


def read_alist(source) -> SparseParityCheck:
    """Parse alist text from a path, text file object, or string.

    Zero padding of short adjacency lines is accepted and dropped.  The
    row-side lists are checked against the column-side ones; any
    inconsistency raises :class:`AlistParseError` with a line number.
    """
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, os.PathLike):
        with open(source) as f:
            text = f.read()
    elif isinstance(source, str) and "\n" not in source and os.path.exists(source):
        with open(source) as f:
            text = f.read()
    else:
        text = str(source)
    lines = text.splitlines()

    def line(k: int) -> str:
        if k >= len(lines):
            raise AlistParseError(k + 1, "unexpected end of file")
        return lines[k]

    head = _ints(line(0), 1)
    if len(head) != 2:
        raise AlistParseError(1, "expected 'n m'")
    n, m = head
    if n < 1 or m < 1:
        raise AlistParseError(1, f"non-positive dimensions {n}x{m}")
    if len(_ints(line(1), 2)) != 2:
        raise AlistParseError(2, "expected max column and row degrees")
    col_deg = _ints(line(2), 3)
    if len(col_deg) != n:
        raise AlistParseError(3, f"expected {n} column degrees, got {len(col_deg)}")
    row_deg = _ints(line(3), 4)
    if len(row_deg) != m:
        raise AlistParseError(4, f"expected {m} row degrees, got {len(row_deg)}")

    col_rows: list[list[int]] = []
    for j in range(n):
        k = 4 + j
        entries = [v for v in _ints(line(k), k + 1) if v != 0]
        if len(entries) != col_deg[j]:
            raise AlistParseError(
                k + 1, f"column {j + 1}: {len(entries)} entries, degree says {col_deg[j]}")
        for v in entries:
            if not 1 <= v <= m:
                raise AlistParseError(k + 1, f"row index {v} out of range [1, {m}]")
        col_rows.append(entries)

    h = SparseParityCheck(m, n, col_rows)
    for i in range(m):
        k = 4 + n + i
        entries = [v for v in _ints(line(k), k + 1) if v != 0]
        if tuple(sorted(entries)) != h.row_cols(i + 1):
            raise AlistParseError(
                k + 1, f"row {i + 1} adjacency inconsistent with column lists")
    return h


def write_dense_csv(m: BinaryMatrix, sink) -> None:
    """Write a dense matrix as comma-separated 0/1 rows."""
    a = m.to_array()
    text = "\n".join(",".join(str(int(v)) for v in row) for row in a) + "\n"
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w") as f:
            f.write(text)


def read_dense_csv(source) -> BinaryMatrix:
    """Read a dense 0/1 matrix from comma-separated rows."""
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, str) and "\n" in source:
        text = source
    else:
        with open(source) as f:
            text = f.read()
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            rows.append([int(t) for t in raw.replace(",", " ").split()])
        except ValueError as exc:
            raise ValueError(f"CSV line {lineno}: expected 0/1 values") from exc
    if not rows:
        raise ValueError("empty CSV input")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError(f"ragged CSV rows, widths {sorted(widths)}")
    return BinaryMatrix(rows)
