"""Spatially coupled base matrices, design rate, and lift-up.

A coupled base matrix with column weight ``l``, maximal row weight ``r``
and ``L`` sections is the (L+l-1) x kL binary matrix (k = r/l) whose
column block j holds k identical columns with ones exactly in rows
j..j+l-1.  Lifting replaces every 1-entry with an MxM permutation matrix
and every 0-entry with an MxM zero block.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gf2 import BinaryMatrix, SparseParityCheck
from .permute import fisher_yates

__all__ = [
    "CodeParams",
    "LiftSpec",
    "LIFT_STYLES",
    "PRNG_ALGORITHM",
    "build_base_matrix",
    "design_rate",
    "lift",
]

# All randomness in the package is drawn from this generator family so
# that identical seeds reproduce identical artifacts.
PRNG_ALGORITHM = "numpy-pcg64"

LIFT_STYLES = ("random-permutation", "circulant-shift", "identity")


@dataclass(frozen=True)
class CodeParams:
    """Parameters (l, r, L, M) of a coupled code, with derived quantities."""

    l: int
    r: int
    L: int
    M: int = 1

    def __post_init__(self) -> None:
        if self.l < 1:
            raise ValueError(f"column weight l must be >= 1, got {self.l}")
        if self.r < self.l:
            raise ValueError(f"row weight r={self.r} must be >= l={self.l}")
        if self.r % self.l != 0:
            raise ValueError(f"r={self.r} must be divisible by l={self.l}")
        if self.L < 1:
            raise ValueError(f"section count L must be >= 1, got {self.L}")
        if self.M < 1:
            raise ValueError(f"lift factor M must be >= 1, got {self.M}")

    @property
    def k(self) -> int:
        return self.r // self.l

    @property
    def n(self) -> int:
        """Code length of the lifted code, k*L*M."""
        return self.k * self.L * self.M

    @property
    def base_rows(self) -> int:
        return self.L + self.l - 1

    @property
    def base_cols(self) -> int:
        return self.k * self.L

    @property
    def rate(self) -> Fraction:
        return design_rate(self)


def design_rate(params: CodeParams) -> Fraction:
    """Design rate 1 - 1/k - (l-1)/(kL) as an exact rational."""
    k, l, L = params.k, params.l, params.L
    return 1 - Fraction(1, k) - Fraction(l - 1, k * L)


def build_base_matrix(l: int, r: int, L: int) -> BinaryMatrix:
    """Coupled base matrix with a single diagonal band.

    Returns the (L+l-1) x kL matrix whose column block j (k columns)
    has ones exactly in rows j..j+l-1; every column has weight l and
    the fully overlapped rows l..L have weight exactly r.
    """
    p = CodeParams(l, r, L)
    a = np.zeros((p.base_rows, p.base_cols), dtype=np.uint8)
    for j in range(L):
        a[j:j + l, j * p.k:(j + 1) * p.k] = 1
    return BinaryMatrix(a)


@dataclass(frozen=True)
class LiftSpec:
    """How to expand base-matrix ones into MxM permutation blocks.

    One independent block is drawn per 1-entry, in row-major order of
    the base matrix, from a generator seeded with ``seed``; identical
    (base, spec) pairs therefore produce identical lifted matrices.
    """

    M: int
    style: str = "random-permutation"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.M < 1:
            raise ValueError(f"lift factor M must be >= 1, got {self.M}")
        if self.style not in LIFT_STYLES:
            raise ValueError(f"style must be one of {LIFT_STYLES}, got {self.style!r}")


def lift(base: BinaryMatrix, spec: LiftSpec) -> SparseParityCheck:
    """Lift a base matrix into the full parity-check matrix.

    Every 1-entry becomes an MxM permutation block (uniform random,
    random circulant shift, or identity, per ``spec.style``); every
    0-entry becomes an MxM zero block.  The result has M*rows rows and
    M*cols columns and preserves all column weights.
    """
    rng = np.random.default_rng(spec.seed)
    a = base.to_array()
    nrow, ncol = a.shape
    M = spec.M
    col_rows: list[list[int]] = [[] for _ in range(ncol * M)]
    for i in range(nrow):
        for j in range(ncol):
            if not a[i, j]:
                continue
            # image[x] = y means block entry (x, y) is one (0-based)
            if spec.style == "random-permutation":
                image = fisher_yates(rng, M)
            elif spec.style == "circulant-shift":
                shift = int(rng.integers(M))
                image = [(x + shift) % M for x in range(M)]
            else:
                image = list(range(M))
            for x, y in enumerate(image):
                col_rows[j * M + y].append(i * M + x + 1)
    return SparseParityCheck(nrow * M, ncol * M, col_rows)
