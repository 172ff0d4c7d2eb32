"""Independent diagram oracle by exact linear algebra over truncated jets.

Fix a window bound N and work in the finite dimensional space spanned by the
monomials of weighted length below N. Every monomial multiple of a generator
whose initial exponent can land inside the window contributes a row; rows are
reduced with the pivot at the order-minimal position. Because the order is
length-first, tails beyond the window can never overtake an initial exponent
inside it, so the pivot set equals the window of the ideal's diagram of
initial exponents, with no recourse to division or completion arguments.
This route is deliberately disjoint from the standard basis engine and is
used to cross-validate it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Exponent, Order, Poly, Ring, exp_add
from .diagram import Diagram, DiagramSlice
from .standard_basis import standard_basis

__all__ = [
    "TruncationBasis",
    "CrossCheckReport",
    "exponents_below",
    "truncated_diagram",
    "truncated_quotient_dim",
    "oracle_cross_check",
]


def exponents_below(order: Order, bound: int) -> list[Exponent]:
    """Exponents of weighted length strictly below bound, order ascending."""
    if bound <= 0:
        return []
    weights = order.weights
    out: list[Exponent] = []
    prefix: list[int] = []

    def rec(budget: int, i: int) -> None:
        if i == len(weights):
            out.append(tuple(prefix))
            return
        w = weights[i]
        e = 0
        while w * e <= budget:
            prefix.append(e)
            rec(budget - w * e, i + 1)
            prefix.pop()
            e += 1

    rec(bound - 1, 0)
    out.sort(key=order.key)
    return out


def _resolve_ring(gens, ring: Ring | None) -> tuple[tuple[Poly, ...], Ring]:
    gens = tuple(gens)
    if ring is None:
        if not gens:
            raise ValueError("a ring is required when no generators are given")
        ring = gens[0].ring
    for g in gens:
        if not isinstance(g, Poly) or g.ring != ring:
            raise ValueError("generators must be polynomials in one ring")
    return gens, ring


@dataclass
class TruncationBasis:
    """Echelonized row space of the generators' jets below a length bound.

    Pivot columns are normalized to 1 and each pivot is the order-minimal
    nonzero position of its row, so the pivot exponents are initial exponents
    of ideal elements and conversely every initial exponent inside the window
    appears as a pivot.
    """

    ring: Ring
    bound: int
    monomials: tuple[Exponent, ...]
    _index: dict[Exponent, int] = field(repr=False)
    _pivots: dict[int, dict[int, Fraction]] = field(repr=False)

    @classmethod
    def build(cls, gens, bound: int, *, ring: Ring | None = None) -> "TruncationBasis":
        gens, ring = _resolve_ring(gens, ring)
        if bound < 1:
            raise ValueError("the truncation bound must be at least 1")
        order = ring.order
        monomials = exponents_below(order, bound)
        index = {e: i for i, e in enumerate(monomials)}
        basis = cls(ring, bound, tuple(monomials), index, {})
        length = order.length
        for g in gens:
            if g.is_zero:
                continue
            head = length(g.initial_exponent())
            for shift in exponents_below(order, bound - head):
                row: dict[int, Fraction] = {}
                for e, c in g.terms:
                    pos = index.get(exp_add(e, shift))
                    if pos is not None:
                        row[pos] = c
                basis._insert(row)
        return basis

    def _eliminate(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        while row:
            lead = min(row)
            pivot = self._pivots.get(lead)
            if pivot is None:
                return row
            factor = row[lead]
            for col, val in pivot.items():
                new = row.get(col, 0) - factor * val
                if new:
                    row[col] = new
                else:
                    row.pop(col, None)
        return row

    def _insert(self, row: dict[int, Fraction]) -> int | None:
        row = self._eliminate(dict(row))
        if not row:
            return None
        lead = min(row)
        inv = row[lead]
        self._pivots[lead] = {col: val / inv for col, val in row.items()}
        return lead

    def pivot_exponents(self) -> list[Exponent]:
        return [self.monomials[p] for p in sorted(self._pivots)]

    def nonpivot_count(self) -> int:
        return len(self.monomials) - len(self._pivots)

    def project(self, f: Poly) -> dict[int, Fraction]:
        """Coordinates of f inside the window; tail terms are dropped."""
        if f.ring != self.ring:
            raise ValueError("polynomial lives in a different ring")
        row: dict[int, Fraction] = {}
        for e, c in f.terms:
            pos = self._index.get(e)
            if pos is not None:
                row[pos] = c
        return row

    def contains_mod_truncation(self, f: Poly) -> bool:
        """Membership in the generated ideal modulo lengths >= bound."""
        return not self._eliminate(self.project(f))


def truncated_diagram(gens, bound: int, *, ring: Ring | None = None) -> DiagramSlice:
    """Window of the diagram of initial exponents below the length bound."""
    gens, ring = _resolve_ring(gens, ring)
    basis = TruncationBasis.build(gens, bound, ring=ring)
    d = Diagram.from_exponents(basis.pivot_exponents(), arity=ring.arity)
    return DiagramSlice(d, bound - 1, True)


def truncated_quotient_dim(gens, bound: int, *, ring: Ring | None = None) -> int:
    """Dimension of the quotient by the ideal plus all lengths >= bound.

    Equals the number of non-pivot monomials in the window, which is also the
    count of complement exponents of length below the bound.
    """
    gens, ring = _resolve_ring(gens, ring)
    return TruncationBasis.build(gens, bound, ring=ring).nonpivot_count()


@dataclass(frozen=True)
class CrossCheckReport:
    agree: bool
    first_difference: Exponent | None
    bound: int
    oracle_vertices: tuple[Exponent, ...]
    basis_vertices: tuple[Exponent, ...]


def oracle_cross_check(gens, bound: int, *, ring: Ring | None = None) -> CrossCheckReport:
    """Compare the oracle window against the standard basis diagram.

    Any disagreement on an exponent inside the window indicates a defect in
    one of the two engines; the first offender in order position is reported.
    """
    gens, ring = _resolve_ring(gens, ring)
    window = truncated_diagram(gens, bound, ring=ring)
    exact = standard_basis(gens, ring=ring).diagram
    first = None
    for e in exponents_below(ring.order, bound):
        if window.diagram.contains(e) != exact.contains(e):
            first = e
            break
    return CrossCheckReport(
        agree=first is None,
        first_difference=first,
        bound=bound,
        oracle_vertices=window.diagram.vertices,
        basis_vertices=exact.vertices,
    )
