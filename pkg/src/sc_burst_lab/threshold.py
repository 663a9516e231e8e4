"""Density evolution over the erasure channel and BP threshold search.

Messages live on the directed edges of the base graph.  A variable
node forwards the channel erasure probability times the product of
the other incoming check messages; a check node forwards one minus
the product of (1 - x) over the other incoming variable messages.
Both updates are monotone in the channel parameter, so the threshold
is found by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import BinaryMatrix

__all__ = [
    "ThresholdResult",
    "de_iterate",
    "bp_threshold",
    "regular_bp_threshold",
    "DEFAULT_TOL",
    "DEFAULT_MAX_ITERS",
    "DEFAULT_PRECISION",
]

# Residual below which the erasure state counts as drained, the
# iteration cap, and the bisection half-width.  Coupled-chain density
# evolution converges slowly near threshold, hence the generous cap.
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITERS = 100_000
DEFAULT_PRECISION = 5e-4

# Per-iteration change below which the state is treated as a reached
# (nonzero) fixed point; messages decrease monotonically, so stalling
# above DEFAULT_TOL means the residual will never drain.
_STALL_DELTA = 1e-13


@dataclass(frozen=True)
class ThresholdResult:
    theta: float
    iterations_at_theta: int
    precision: float


def _loo_products(values: np.ndarray, seg_id: np.ndarray, n_seg: int) -> np.ndarray:
    """Per-edge product of the other same-segment entries, zero-safe."""
    nonzero = np.where(values == 0.0, 1.0, values)
    prod = np.ones(n_seg)
    np.multiply.at(prod, seg_id, nonzero)
    zero_count = np.zeros(n_seg, dtype=np.int64)
    np.add.at(zero_count, seg_id, values == 0.0)
    z = zero_count[seg_id]
    out = np.where(z == 0, prod[seg_id] / nonzero, 0.0)
    lone_zero = (z == 1) & (values == 0.0)
    out[lone_zero] = prod[seg_id][lone_zero]
    return out


def de_iterate(base: BinaryMatrix, epsilon: float,
               max_iters: int = DEFAULT_MAX_ITERS,
               tol: float = DEFAULT_TOL) -> tuple[bool, int]:
    """Run density evolution at channel erasure probability ``epsilon``.

    Edge messages start at epsilon.  Returns (converged, iterations):
    converged is True when the largest variable-to-check message fell
    below ``tol``; iteration stops early once the state stalls at a
    nonzero fixed point.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    edge_row, edge_col = np.nonzero(base.to_array())
    n_edges = len(edge_row)
    if n_edges == 0:
        return True, 0
    x = np.full(n_edges, float(epsilon))
    for it in range(1, max_iters + 1):
        check_out = 1.0 - _loo_products(1.0 - x, edge_row, base.rows)
        x_next = epsilon * _loo_products(check_out, edge_col, base.cols)
        delta = float(np.max(np.abs(x_next - x)))
        x = x_next
        if float(x.max()) < tol:
            return True, it
        if delta < _STALL_DELTA:
            return False, it
    return False, max_iters


def bp_threshold(base: BinaryMatrix,
                 precision: float = DEFAULT_PRECISION,
                 max_iters: int = DEFAULT_MAX_ITERS,
                 tol: float = DEFAULT_TOL) -> ThresholdResult:
    """Largest channel erasure probability at which DE converges.

    Bisection over [0, 1]; density evolution is monotone in epsilon,
    so the converged/diverged boundary is a single point.  ``theta``
    is the interval midpoint and ``precision`` its half-width.
    """
    if precision <= 0:
        raise ValueError(f"precision must be > 0, got {precision}")
    converged, iters = de_iterate(base, 1.0, max_iters, tol)
    if converged:
        return ThresholdResult(1.0, iters, precision)
    lo, hi = 0.0, 1.0
    iters_lo = de_iterate(base, 0.0, max_iters, tol)[1]
    while hi - lo > 2 * precision:
        mid = (lo + hi) / 2
        converged, iters = de_iterate(base, mid, max_iters, tol)
        if converged:
            lo, iters_lo = mid, iters
        else:
            hi = mid
    return ThresholdResult((lo + hi) / 2, iters_lo, (hi - lo) / 2)


def regular_bp_threshold(l: int, r: int,
                         precision: float = DEFAULT_PRECISION,
                         max_iters: int = DEFAULT_MAX_ITERS,
                         tol: float = DEFAULT_TOL) -> ThresholdResult:
    """Threshold of the uncoupled (l, r)-regular ensemble.

    Uses the scalar recursion x = eps * (1 - (1 - x)^(r-1))^(l-1)
    rather than a one-node multigraph.
    """
    if precision <= 0:
        raise ValueError(f"precision must be > 0, got {precision}")

    def converges(eps: float) -> tuple[bool, int]:
        x = eps
        for it in range(1, max_iters + 1):
            x_next = eps * (1.0 - (1.0 - x) ** (r - 1)) ** (l - 1)
            if x_next < tol:
                return True, it
            if abs(x_next - x) < _STALL_DELTA:
                return False, it
            x = x_next
        return False, max_iters

    lo, hi = 0.0, 1.0
    iters_lo = converges(0.0)[1]
    if converges(1.0)[0]:
        return ThresholdResult(1.0, iters_lo, precision)
    while hi - lo > 2 * precision:
        mid = (lo + hi) / 2
        ok, iters = converges(mid)
        if ok:
            lo, iters_lo = mid, iters
        else:
            hi = mid
    return ThresholdResult((lo + hi) / 2, iters_lo, (hi - lo) / 2)
