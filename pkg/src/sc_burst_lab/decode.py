"""Erasure peeling decoder and burst-correction measurement.

An erased column is recoverable whenever some check row contains it as
its only erased column; peeling repeats this until nothing changes.
The fixed point is independent of scheduling order, so an erasure
pattern is correctable exactly when it contains no non-empty stopping
set.

``compute_wmax`` measures the largest burst length w such that every
length-w burst of consecutive erasures is correctable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .gf2 import BinaryMatrix, SparseParityCheck

__all__ = [
    "DecodeResult",
    "BurstReport",
    "peel",
    "burst_correctable",
    "compute_wmax",
]


@dataclass(frozen=True)
class DecodeResult:
    """Outcome of one peeling run.

    ``iterations`` counts the sweeps over the active check queue in
    which at least one column was resolved.
    """

    success: bool
    residual: frozenset[int]
    iterations: int


@dataclass(frozen=True)
class BurstReport:
    """Maximal correctable burst length of a matrix, with witness.

    ``witness_start`` is the smallest start position of an
    uncorrectable burst of length wmax+1; it is None when wmax equals
    the code length (no uncorrectable burst exists).
    """

    n: int
    wmax: int
    lambda_max: Fraction
    witness_start: int | None


def _column_adjacency(h) -> tuple[list[list[int]], int]:
    """0-based per-column row lists plus row count, for either matrix kind."""
    if isinstance(h, SparseParityCheck):
        return [[i - 1 for i in c] for c in h.column_adjacency], h.rows
    if isinstance(h, BinaryMatrix):
        a = h.to_array()
        return [[int(i) for i in a[:, j].nonzero()[0]] for j in range(h.cols)], h.rows
    raise TypeError(f"expected BinaryMatrix or SparseParityCheck, got {type(h)!r}")


class _Peeler:
    """Reusable peeling engine over a fixed matrix.

    State arrays are versioned with an epoch counter so repeated decodes
    need no per-call clearing; this keeps the burst sweep in
    ``compute_wmax`` cheap.
    """

    def __init__(self, col_rows: list[list[int]], n_rows: int) -> None:
        self.col_rows = col_rows
        self.n = len(col_rows)
        self.m = n_rows
        row_cols: list[list[int]] = [[] for _ in range(n_rows)]
        for c, rows in enumerate(col_rows):
            for r in rows:
                row_cols[r].append(c)
        self.row_cols = row_cols
        self._col_mark = [0] * self.n
        self._col_done = [0] * self.n
        self._row_mark = [0] * n_rows
        self._row_cnt = [0] * n_rows
        self._epoch = 0

    def decode(self, erased: list[int]) -> tuple[int, int]:
        """Peel the given 0-based erased columns.

        Returns (number of unresolved columns, sweep count).  Column
        resolution state for this epoch stays valid until the next call,
        so callers may read residuals via ``residual_of``.
        """
        self._epoch += 1
        cur = self._epoch
        col_mark, col_done = self._col_mark, self._col_done
        row_mark, row_cnt = self._row_mark, self._row_cnt
        col_rows, row_cols = self.col_rows, self.row_cols

        for c in erased:
            col_mark[c] = cur
        frontier: list[int] = []
        for c in erased:
            for r in col_rows[c]:
                if row_mark[r] != cur:
                    row_mark[r] = cur
                    row_cnt[r] = 1
                    frontier.append(r)
                else:
                    row_cnt[r] += 1

        remaining = len(erased)
        sweeps = 0
        while frontier and remaining:
            nxt: list[int] = []
            resolved = False
            for r in frontier:
                if row_cnt[r] != 1:
                    continue
                for c in row_cols[r]:
                    if col_mark[c] == cur and col_done[c] != cur:
                        col_done[c] = cur
                        remaining -= 1
                        resolved = True
                        for r2 in col_rows[c]:
                            row_cnt[r2] -= 1
                            nxt.append(r2)
                        break
                if not remaining:
                    break
            if resolved:
                sweeps += 1
            frontier = nxt
        return remaining, sweeps

    def residual_of(self, erased: Iterable[int]) -> frozenset[int]:
        """1-based unresolved columns from the most recent decode."""
        cur = self._epoch
        return frozenset(
            c + 1 for c in erased
            if self._col_mark[c] == cur and self._col_done[c] != cur)

    def burst_ok(self, start: int, w: int) -> bool:
        """Whether the 0-based burst [start, start+w) peels completely."""
        if w == 0:
            return True
        unresolved, _ = self.decode(list(range(start, start + w)))
        return unresolved == 0


def peel(h, e: Iterable[int]) -> DecodeResult:
    """Run erasure peeling on matrix h with erased column set e (1-based).

    Succeeds exactly when e contains no non-empty stopping set of h.
    """
    col_rows, n_rows = _column_adjacency(h)
    n = len(col_rows)
    erased = sorted(set(e))
    if erased and not (1 <= erased[0] and erased[-1] <= n):
        bad = erased[0] if erased[0] < 1 else erased[-1]
        raise IndexError(f"erased index {bad} out of range [1, {n}]")
    if not erased:
        return DecodeResult(True, frozenset(), 0)
    eng = _Peeler(col_rows, n_rows)
    erased0 = [c - 1 for c in erased]
    unresolved, sweeps = eng.decode(erased0)
    residual = frozenset() if unresolved == 0 else eng.residual_of(erased0)
    return DecodeResult(unresolved == 0, residual, sweeps)


def burst_correctable(h, start: int, w: int) -> bool:
    """Whether the burst of w consecutive erasures at ``start`` is correctable."""
    col_rows, n_rows = _column_adjacency(h)
    n = len(col_rows)
    if w < 0:
        raise ValueError(f"burst length must be >= 0, got {w}")
    if not (1 <= start and start + w - 1 <= n):
        raise IndexError(f"burst [{start}, {start + w - 1}] out of range [1, {n}]")
    return _Peeler(col_rows, n_rows).burst_ok(start - 1, w)


def compute_wmax(h) -> BurstReport:
    """Largest w such that every length-w burst is correctable.

    Sweeps start positions left to right, keeping the current minimum
    over the per-start maximal correctable lengths c(s).  Burst
    correctability is monotone (any failing burst extends to a longer
    failing burst), so wmax equals the minimum of c(s) over the starts
    where c(s) is smaller than the room n-s+1 left in the block, and
    the first start attaining that minimum is the smallest start of a
    failing burst of length wmax+1.  Each start usually costs a single
    decode at the current candidate length; a failed candidate is
    refined by bisection.
    """
    col_rows, n_rows = _column_adjacency(h)
    n = len(col_rows)
    eng = _Peeler(col_rows, n_rows)

    best: int | None = None
    witness: int | None = None
    for s in range(n):
        room = n - s
        t = room if best is None else min(best, room)
        if t == 0 or eng.burst_ok(s, t):
            continue
        lo, hi = 0, t
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if eng.burst_ok(s, mid):
                lo = mid
            else:
                hi = mid
        best, witness = lo, s + 1
        if best == 0:
            break

    wmax = n if best is None else best
    return BurstReport(
        n=n,
        wmax=wmax,
        lambda_max=Fraction(wmax, n),
        witness_start=None if wmax == n else witness,
    )
