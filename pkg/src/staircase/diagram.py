"""Staircase sets of exponents, stored by their finite vertex antichain.

A diagram is a subset G of N^m with G + N^m = G; it is determined by its
minimal elements under the componentwise order, and that antichain is the
stored data. Lengths here are always unweighted totals.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .core import Exponent, total_degree

__all__ = [
    "Diagram",
    "DiagramSlice",
    "exponents_of_length",
    "exponents_upto",
]


def exponents_of_length(arity: int, n: int) -> Iterator[Exponent]:
    """All exponents in N^arity of total degree exactly n."""
    if arity == 0:
        if n == 0:
            yield ()
        return
    if arity == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in exponents_of_length(arity - 1, n - first):
            yield (first,) + rest


def exponents_upto(arity: int, bound: int) -> list[Exponent]:
    """All exponents of total degree at most bound, ascending in the unit order."""
    out: list[Exponent] = []
    for n in range(bound + 1):
        out.extend(sorted(exponents_of_length(arity, n)))
    return out


def _dominates(e: Exponent, v: Exponent) -> bool:
    return all(x >= y for x, y in zip(e, v))


@dataclass(frozen=True)
class Diagram:
    arity: int
    vertices: tuple[Exponent, ...]

    def __post_init__(self):
        vs = tuple(tuple(int(x) for x in v) for v in self.vertices)
        for v in vs:
            if len(v) != self.arity:
                raise ValueError("vertex arity does not match the diagram")
            if any(x < 0 for x in v):
                raise ValueError("vertices must be nonnegative")
        vs = tuple(sorted(set(vs), key=lambda v: (total_degree(v), v)))
        for a in vs:
            for b in vs:
                if a != b and _dominates(a, b):
                    raise ValueError("vertices must form an antichain")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def from_exponents(
        cls, exps: Iterable[Exponent], arity: int | None = None
    ) -> "Diagram":
        """Diagram generated by a finite exponent set (minimal elements kept)."""
        pts = [tuple(int(x) for x in e) for e in exps]
        if pts:
            found = len(pts[0])
            if any(len(p) != found for p in pts):
                raise ValueError("mixed exponent arities")
            if arity is None:
                arity = found
            elif arity != found:
                raise ValueError("exponent arity does not match the requested one")
        elif arity is None:
            raise ValueError("an empty exponent set needs an explicit arity")
        pts = set(pts)
        minimal = [
            p for p in pts if not any(q != p and _dominates(p, q) for q in pts)
        ]
        return cls(arity, tuple(minimal))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, exp: Exponent) -> bool:
        exp = tuple(exp)
        if len(exp) != self.arity:
            raise ValueError("exponent arity does not match the diagram")
        return any(_dominates(exp, v) for v in self.vertices)

    def complement_upto(self, bound: int) -> list[Exponent]:
        """Exponents outside the diagram of length <= bound, order ascending."""
        return [e for e in exponents_upto(self.arity, bound) if not self.contains(e)]

    def hilbert_samuel(self, k: int) -> int:
        """Number of complement exponents of length at most k."""
        if k < 0:
            return 0
        return len(self.complement_upto(k))

    def quotient_dimension(self) -> int:
        """Krull dimension of the monomial quotient attached to the diagram.

        Largest size of a variable subset T such that no vertex is supported
        inside T. The empty diagram gives the full arity; the diagram of the
        unit ideal (vertex at the origin) is clamped to 0, matching its empty
        complement.
        """
        if not self.vertices:
            return self.arity
        supports = [frozenset(i for i, e in enumerate(v) if e) for v in self.vertices]
        for size in range(self.arity, -1, -1):
            for subset in combinations(range(self.arity), size):
                t = frozenset(subset)
                if all(not s <= t for s in supports):
                    return size
        return 0

    def max_vertex_length(self) -> int:
        if not self.vertices:
            raise ValueError("the empty diagram has no vertices")
        return max(total_degree(v) for v in self.vertices)

    def power_of_maximal(self) -> int | None:
        """Least k with every exponent of length k inside, None if there is none."""
        if self.quotient_dimension() > 0:
            return None
        axis_powers = []
        for i in range(self.arity):
            cs = [
                v[i]
                for v in self.vertices
                if all(e == 0 for j, e in enumerate(v) if j != i)
            ]
            axis_powers.append(min(cs))
        worst = 0
        for box in _box_points(axis_powers):
            if not self.contains(box):
                worst = max(worst, total_degree(box) + 1)
        return worst

    def equal_upto(self, other: "Diagram", bound: int) -> bool:
        """Membership agreement for every exponent of length at most bound."""
        if self.arity != other.arity:
            raise ValueError("diagrams have different arities")
        for e in exponents_upto(self.arity, bound):
            if self.contains(e) != other.contains(e):
                return False
        return True

    def to_lists(self) -> list[list[int]]:
        return [list(v) for v in self.vertices]


def _box_points(limits: list[int]) -> Iterator[Exponent]:
    if not limits:
        yield ()
        return
    for first in range(limits[0]):
        for rest in _box_points(limits[1:]):
            yield (first,) + rest


@dataclass(frozen=True)
class DiagramSlice:
    """A diagram certified only on the window of bounded length.

    Membership answers are exact for exponents whose length (weighted by the
    order that produced the slice) is at most `length_bound`; beyond the
    window the staircase may have further vertices.
    """

    diagram: Diagram
    length_bound: int
    certified: bool = True
