"""Column permutations: band splitting permutations and uniform random ones.

A permutation of size n is stored by its forward map f, where column j
of the permuted matrix takes column f(j) of the original.  This is the
direction that turns the single-band coupled base matrix into the
multi-band permuted form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .gf2 import BinaryMatrix, SparseParityCheck

__all__ = [
    "Permutation",
    "band_splitting_permutation",
    "random_permutation",
    "apply_columns",
    "map_index_set",
    "fisher_yates",
    "format_permutation",
    "parse_permutation",
]


@dataclass(frozen=True)
class Permutation:
    """Bijection on [1, n] with precomputed inverse."""

    forward: tuple[int, ...]
    inverse: tuple[int, ...]

    @classmethod
    def from_forward(cls, images: Iterable[int]) -> "Permutation":
        fwd = tuple(int(v) for v in images)
        n = len(fwd)
        if n < 1:
            raise ValueError("permutation must have size >= 1")
        inv = [0] * n
        for j, image in enumerate(fwd, start=1):
            if not 1 <= image <= n:
                raise ValueError(f"image {image} out of range [1, {n}]")
            if inv[image - 1]:
                raise ValueError(f"image {image} repeated; not a bijection")
            inv[image - 1] = j
        return cls(fwd, tuple(inv))

    @property
    def size(self) -> int:
        return len(self.forward)

    def image(self, j: int) -> int:
        """f(j), 1-based."""
        if not 1 <= j <= self.size:
            raise IndexError(f"index {j} out of range [1, {self.size}]")
        return self.forward[j - 1]

    def preimage(self, i: int) -> int:
        """f^-1(i), 1-based."""
        if not 1 <= i <= self.size:
            raise IndexError(f"index {i} out of range [1, {self.size}]")
        return self.inverse[i - 1]

    def is_identity(self) -> bool:
        return all(f == j for j, f in enumerate(self.forward, start=1))


def band_splitting_permutation(k: int, L: int) -> Permutation:
    """Depth-k block interleaver on [1, kL] that splits the diagonal band.

    The forward map is the concatenation of the k strided runs
    (s, s+k, s+2k, ..., s+(L-1)k) for s = 1..k, so the two columns of
    any length-k block of identical columns end up at least L apart.
    """
    if k < 1 or L < 1:
        raise ValueError(f"k and L must be >= 1, got k={k}, L={L}")
    images = [s + t * k for s in range(1, k + 1) for t in range(L)]
    return Permutation.from_forward(images)


def fisher_yates(rng: np.random.Generator, n: int) -> list[int]:
    """Uniform 0-based image list drawn with the Fisher-Yates shuffle."""
    image = list(range(n))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(i + 1))
        image[i], image[j] = image[j], image[i]
    return image


def random_permutation(n: int, seed: int) -> Permutation:
    """Uniformly distributed permutation of [1, n], deterministic per seed."""
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    return Permutation.from_forward([v + 1 for v in fisher_yates(rng, n)])


def apply_columns(m, p: Permutation):
    """Permute columns: column j of the result is column f(j) of m.

    Accepts a dense or sparse matrix and returns the same kind.
    """
    if p.size != m.cols:
        raise ValueError(f"permutation size {p.size} != column count {m.cols}")
    if isinstance(m, BinaryMatrix):
        return BinaryMatrix(m.to_array()[:, [f - 1 for f in p.forward]])
    if isinstance(m, SparseParityCheck):
        cols = [m.col_rows(f) for f in p.forward]
        return SparseParityCheck(m.rows, m.cols, cols)
    raise TypeError(f"expected BinaryMatrix or SparseParityCheck, got {type(m)!r}")


def map_index_set(s: Iterable[int], p: Permutation) -> set[int]:
    """Positions in the permuted matrix holding the original columns in s."""
    out = set()
    for i in s:
        if not 1 <= i <= p.size:
            raise IndexError(f"index {i} out of range [1, {p.size}]")
        out.add(p.inverse[i - 1])
    return out


def format_permutation(p: Permutation) -> str:
    """Single-line serialization: the images f(1..n) separated by spaces."""
    return " ".join(map(str, p.forward))


def parse_permutation(text: str) -> Permutation:
    return Permutation.from_forward(int(t) for t in text.split())
