"""Stopping sets: enumeration, closed forms for coupled bases, and bounds.

A stopping set is a column index set whose submatrix has no row of
weight one; a fully erased stopping set can never be peeled.  The span
of a matrix is the minimal length (1 + max - min) over its non-empty
stopping sets and exceeds the maximal correctable burst length by
exactly one.

Exhaustive search enumerates the irreducible (inclusion-minimal)
stopping sets by a depth-first completion over columns: whenever a
partial set leaves some row with a single erased column, that row
forces the next column choice.  For coupled base matrices and their
column permutations the irreducible sets are known in closed form: all
pairs of equal columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .construct import CodeParams, build_base_matrix
from .gf2 import BinaryMatrix, SparseParityCheck
from .permute import Permutation

__all__ = [
    "StoppingSet",
    "BoundInterval",
    "CapacityError",
    "EXHAUSTIVE_LIMIT",
    "block_members",
    "is_stopping_set",
    "has_stopping_subset",
    "enumerate_irreducible",
    "irreducible_sc_characterization",
    "span_of",
    "lift_burst_interval",
    "burst_ratio_interval",
]

# Columns beyond which exhaustive stopping-set search is refused.
EXHAUSTIVE_LIMIT = 24


class CapacityError(Exception):
    """Instance too large for the exhaustive path."""


@dataclass(frozen=True)
class StoppingSet:
    """Non-empty set of 1-based column indices."""

    indices: frozenset[int]

    def __post_init__(self) -> None:
        if not self.indices:
            raise ValueError("stopping set must be non-empty")

    @property
    def length(self) -> int:
        """1 + (max - min) over the indices."""
        return 1 + max(self.indices) - min(self.indices)

    def __repr__(self) -> str:
        return f"StoppingSet({sorted(self.indices)})"


@dataclass(frozen=True)
class BoundInterval:
    """Open integer interval (lower, upper); both endpoints excluded."""

    lower: int
    upper: int

    def __post_init__(self) -> None:
        if self.lower >= self.upper:
            raise ValueError(f"need lower < upper, got ({self.lower}, {self.upper})")

    def __contains__(self, value: int) -> bool:
        return self.lower < value < self.upper


def block_members(i: int, k: int) -> tuple[int, ...]:
    """The k consecutive column indices of block i (1-based)."""
    if i < 1 or k < 1:
        raise ValueError(f"block index and width must be >= 1, got i={i}, k={k}")
    return tuple(range((i - 1) * k + 1, (i - 1) * k + k + 1))


def _as_dense(m) -> BinaryMatrix:
    if isinstance(m, BinaryMatrix):
        return m
    if isinstance(m, SparseParityCheck):
        return m.to_dense()
    raise TypeError(f"expected BinaryMatrix or SparseParityCheck, got {type(m)!r}")


def is_stopping_set(m, s: Iterable[int]) -> bool:
    """Whether the submatrix on columns s has no row of weight one.

    The empty set qualifies vacuously.
    """
    dense = _as_dense(m)
    cols = sorted(set(s))
    if not cols:
        return True
    if cols[0] < 1 or cols[-1] > dense.cols:
        bad = cols[0] if cols[0] < 1 else cols[-1]
        raise IndexError(f"column index {bad} out of range [1, {dense.cols}]")
    sub = dense.to_array()[:, [c - 1 for c in cols]]
    return not bool((sub.sum(axis=1) == 1).any())


def has_stopping_subset(m, erased: Iterable[int], limit: int = 20) -> bool:
    """Exhaustively test whether ``erased`` contains a non-empty stopping set.

    Enumerates every non-empty subset of the erased columns, so this is
    the brute-force counterpart of the peeling decoder; cost is
    2^len(erased) and the size is capped at ``limit``.
    """
    dense = _as_dense(m)
    cols = sorted(set(erased))
    if not cols:
        return False
    if cols[0] < 1 or cols[-1] > dense.cols:
        bad = cols[0] if cols[0] < 1 else cols[-1]
        raise IndexError(f"column index {bad} out of range [1, {dense.cols}]")
    if len(cols) > limit:
        raise CapacityError(f"{len(cols)} erased columns exceeds limit {limit}")
    a = dense.to_array()
    row_masks = []
    for i in range(dense.rows):
        mask = 0
        for b, c in enumerate(cols):
            if a[i, c - 1]:
                mask |= 1 << b
        if mask:
            row_masks.append(mask)
    full = (1 << len(cols)) - 1
    sub = full
    while sub:
        if all((sub & rm).bit_count() != 1 for rm in row_masks):
            return True
        sub = (sub - 1) & full
    return False


def _minimal_sets_dfs(m: BinaryMatrix, best_len_prune: bool) -> tuple[list[frozenset[int]], int | None]:
    """All inclusion-minimal stopping sets, found by forced-row completion.

    Any stopping set containing a partial set P must also contain a
    second column of every row that P covers exactly once, so branching
    over the first such row reaches every minimal set whose smallest
    element is the root.  With ``best_len_prune`` only the minimum
    length is guaranteed (branches that cannot shorten it are cut).

    Returns (sets, best_length); the set list may include non-minimal
    completions, which callers filter.
    """
    a = m.to_array()
    n_rows, n_cols = a.shape
    col_rows = [[int(i) for i in a[:, j].nonzero()[0]] for j in range(n_cols)]
    row_cols = [[int(j) for j in a[i, :].nonzero()[0]] for i in range(n_rows)]

    found: list[frozenset[int]] = []
    best: int | None = None
    row_cnt = [0] * n_rows
    seen: set[frozenset[int]] = set()

    def extend(root: int, members: list[int], hi: int) -> None:
        nonlocal best
        deficient = -1
        for r in range(n_rows):
            if row_cnt[r] == 1:
                deficient = r
                break
        if deficient < 0:
            fs = frozenset(members)
            if fs not in seen:
                seen.add(fs)
                found.append(fs)
                span = hi - root + 1
                if best is None or span < best:
                    best = span
            return
        key = frozenset(members)
        if key in seen:
            return
        seen.add(key)
        for c in row_cols[deficient]:
            if c <= root or c in members:
                continue
            new_hi = max(hi, c)
            if best_len_prune and best is not None and new_hi - root + 1 >= best:
                continue
            members.append(c)
            for r in col_rows[c]:
                row_cnt[r] += 1
            extend(root, members, new_hi)
            for r in col_rows[c]:
                row_cnt[r] -= 1
            members.pop()

    for root in range(n_cols):
        if best_len_prune and best == 1:
            break
        for r in col_rows[root]:
            row_cnt[r] += 1
        extend(root, [root], root)
        for r in col_rows[root]:
            row_cnt[r] -= 1

    return found, best


def _filter_minimal(sets: list[frozenset[int]]) -> list[frozenset[int]]:
    """Drop every set that strictly contains another one."""
    kept_masks: list[int] = []
    out = []
    for s in sorted(sets, key=len):
        mask = sum(1 << i for i in s)
        if any(km & mask == km for km in kept_masks):
            continue
        kept_masks.append(mask)
        out.append(s)
    return out


def enumerate_irreducible(m, limit: int = EXHAUSTIVE_LIMIT) -> frozenset[StoppingSet]:
    """All irreducible stopping sets of m, by exhaustive search.

    Irreducible means no proper non-empty subset is itself a stopping
    set.  Raises :class:`CapacityError` beyond ``limit`` columns; use
    :func:`irreducible_sc_characterization` for large coupled bases.
    """
    dense = _as_dense(m)
    if dense.cols > limit:
        raise CapacityError(
            f"{dense.cols} columns exceeds exhaustive limit {limit}; "
            "use irreducible_sc_characterization for coupled base matrices")
    sets, _ = _minimal_sets_dfs(dense, best_len_prune=False)
    return frozenset(StoppingSet(frozenset(i + 1 for i in s))
                     for s in _filter_minimal(sets))


def irreducible_sc_characterization(
        params: CodeParams, p: Permutation | None = None) -> frozenset[StoppingSet]:
    """Irreducible stopping sets of a coupled base matrix, in closed form.

    They are exactly the pairs of column indices inside one block of
    identical columns; with a permutation they are carried to the
    positions holding those columns.  No search is performed.
    """
    k, L = params.k, params.L
    if p is not None and p.size != params.base_cols:
        raise ValueError(f"permutation size {p.size} != base columns {params.base_cols}")
    out = []
    for i in range(1, L + 1):
        members = block_members(i, k)
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                pair = (members[x], members[y])
                if p is not None:
                    pair = (p.preimage(pair[0]), p.preimage(pair[1]))
                out.append(StoppingSet(frozenset(pair)))
    return frozenset(out)


def _recognize_permuted_sc(m: BinaryMatrix) -> CodeParams | None:
    """Match m against a column-permuted coupled base matrix.

    Column-multiset equality with some build_base_matrix(l, r, L) is
    both necessary and sufficient for m to be a column permutation of
    it.
    """
    a = m.to_array()
    weights = set(a.sum(axis=0).tolist())
    if len(weights) != 1:
        return None
    l = int(weights.pop())
    if l < 1:
        return None
    L = m.rows - l + 1
    if L < 1 or m.cols % L:
        return None
    k = m.cols // L
    try:
        params = CodeParams(l, k * l, L)
    except ValueError:
        return None
    ref = build_base_matrix(params.l, params.r, params.L).to_array()
    mine = sorted(a[:, j].tobytes() for j in range(m.cols))
    theirs = sorted(ref[:, j].tobytes() for j in range(m.cols))
    return params if mine == theirs else None


def span_of(m, method: str = "auto", limit: int = EXHAUSTIVE_LIMIT) -> int:
    """Minimum length over the non-empty stopping sets of m.

    Returns cols+1 when no non-empty stopping set exists (every burst
    shorter than the block is then correctable).  ``method`` selects
    the route: "exhaustive" searches irreducible sets directly (up to
    ``limit`` columns), "characterization" requires m to be a
    column-permuted coupled base matrix and reads the span off the
    equal-column pairs, "auto" tries recognition first and falls back
    to search.
    """
    dense = _as_dense(m)
    if method not in ("auto", "exhaustive", "characterization"):
        raise ValueError(f"unknown method {method!r}")

    if method in ("auto", "characterization"):
        params = _recognize_permuted_sc(dense)
        if params is not None:
            return _span_equal_column_pairs(dense)
        if method == "characterization":
            raise ValueError("matrix is not a column-permuted coupled base matrix")

    if dense.cols > limit:
        raise CapacityError(
            f"{dense.cols} columns exceeds exhaustive limit {limit}")
    _, best = _minimal_sets_dfs(dense, best_len_prune=True)
    return dense.cols + 1 if best is None else best


def _span_equal_column_pairs(m: BinaryMatrix) -> int:
    """Span when the irreducible sets are the pairs of equal columns."""
    a = m.to_array()
    groups: dict[bytes, list[int]] = {}
    for j in range(m.cols):
        groups.setdefault(a[:, j].tobytes(), []).append(j)
    best = None
    for positions in groups.values():
        for u, v in zip(positions, positions[1:]):
            span = v - u + 1
            if best is None or span < best:
                best = span
    return m.cols + 1 if best is None else best


def lift_burst_interval(wmax_base: int, M: int) -> BoundInterval:
    """Open interval bounding the lifted code's wmax from the base's.

    A lift with factor M satisfies
    (wmax_base - 1) * M < wmax(H) < (wmax_base + 1) * M.
    """
    if wmax_base < 0:
        raise ValueError(f"wmax_base must be >= 0, got {wmax_base}")
    if M < 1:
        raise ValueError(f"lift factor M must be >= 1, got {M}")
    return BoundInterval((wmax_base - 1) * M, (wmax_base + 1) * M)


def burst_ratio_interval(params: CodeParams, permuted: bool) -> tuple[Fraction, Fraction]:
    """Open interval bounding the maximal correctable burst ratio.

    (0, 2/(kL)) for the plain coupled code; ((L-1)/(kL), (L+1)/(kL))
    after the band splitting permutation.  Both endpoints exact.
    """
    k, L = params.k, params.L
    if permuted:
        return Fraction(L - 1, k * L), Fraction(L + 1, k * L)
    return Fraction(0), Fraction(2, k * L)
