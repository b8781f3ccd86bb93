"""Span arithmetic for sparse vectors over Q(zeta_N).

Vectors are dicts mapping an orderable key (basis triple, tuple, ...) to a
nonzero CycScalar.  Spans are kept as reduced row-echelon pivot maps so
membership tests and dimension counts are exact.
"""

from __future__ import annotations

from typing import Hashable, Iterable

from .scalars import CycScalar

Vector = dict


def vec_clean(v: Vector) -> Vector:
    return {k: c for k, c in v.items() if c}


def vec_sub_scaled(v: Vector, w: Vector, s: CycScalar) -> Vector:
    """v - s * w."""
    out = dict(v)
    for k, c in w.items():
        delta = s * c
        out[k] = out[k] - delta if k in out else -delta
        if not out[k]:
            del out[k]
    return out


class Span:
    """A growing reduced span; pivots keyed by their minimal coordinate."""

    def __init__(self):
        self.pivots: dict[Hashable, Vector] = {}

    def reduce(self, v: Vector) -> Vector:
        v = vec_clean(v)
        while v:
            lead = min(v)
            if lead not in self.pivots:
                return v
            v = vec_sub_scaled(v, self.pivots[lead], v[lead])
        return v

    def add(self, v: Vector) -> bool:
        """Insert v; returns True when the span grew."""
        rem = self.reduce(v)
        if not rem:
            return False
        lead = min(rem)
        inv = rem[lead].invert()
        normalized = {k: inv * c for k, c in rem.items()}
        # Back-substitute into existing pivots to keep rows reduced.
        for key, row in list(self.pivots.items()):
            if lead in row:
                self.pivots[key] = vec_sub_scaled(row, normalized, row[lead])
        self.pivots[lead] = normalized
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis(self) -> list[Vector]:
        return [dict(self.pivots[k]) for k in sorted(self.pivots)]


def span_of(vectors: Iterable[Vector]) -> Span:
    s = Span()
    for v in vectors:
        s.add(v)
    return s
