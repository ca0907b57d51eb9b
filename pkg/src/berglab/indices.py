"""Multi-indices and the graded order that fixes every matrix layout.

A multi-index is a plain tuple of non-negative ints.  The order is graded
by total degree; ties are broken by comparing coordinates from the *last*
one down, so e.g. (1,0) comes before (0,1).  All index enumerations in the
package follow this order so that coefficient vectors and Gram matrices
are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import DimensionMismatchError

MultiIndex = tuple  # tuple[int, ...]


def degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def validate_index(alpha, n: int) -> MultiIndex:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != n:
        raise DimensionMismatchError(
            f"multi-index {alpha} has length {len(alpha)}, expected {n}"
        )
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index {alpha} has a negative component")
    return alpha


def order_key(alpha: MultiIndex):
    """Sort key realizing the graded order (ties broken from the last slot)."""
    return (sum(alpha), tuple(reversed(alpha)))


def compare(alpha: MultiIndex, beta: MultiIndex) -> int:
    """Return -1, 0 or 1 as alpha precedes, equals or follows beta."""
    if len(alpha) != len(beta):
        raise DimensionMismatchError(
            f"cannot compare indices of lengths {len(alpha)} and {len(beta)}"
        )
    ka, kb = order_key(alpha), order_key(beta)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def indices_of_degree(n: int, d: int) -> list:
    """All indices with |alpha| = d, in the graded order."""
    if n == 1:
        return [(d,)]
    # smaller last coordinate first
    return [
        rest + (last,)
        for last in range(d + 1)
        for rest in indices_of_degree(n - 1, d - last)
    ]


def indices_up_to(n: int, d: int) -> list:
    """All indices with |alpha| <= d, in the graded order."""
    out = []
    for k in range(d + 1):
        out.extend(indices_of_degree(n, k))
    return out


def sort_indices(indices: Iterable[MultiIndex]) -> list:
    return sorted(indices, key=order_key)
