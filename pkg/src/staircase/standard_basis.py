"""Standard bases for local orders via Mora normal form with ecart selection.

The order puts low terms first, so the leading (initial) term of an element
is its order-minimal one and plain division need not terminate: dividing x by
x - x^2 keeps producing higher tails. Mora's remedy is to reduce only the
initial term, to pick among the applicable reducers one of minimal ecart
(top degree minus initial degree, measured in the order's weights), and to
throw the current intermediate result into the reducer pool whenever the
chosen reducer's ecart exceeds its own. Each such self-reduction multiplies
the input by a unit of the local ring, which is tracked exactly. For
polynomial input the procedure terminates; a configurable pool ceiling turns
pathological blowups into a clean resource error instead of a hang.

The Buchberger-style completion processes s-pairs in ascending lcm order and
skips pairs with coprime initial exponents; both are sound for these orders.
Once the partial staircase already has a finite complement, every term whose
weighted length clears that complement lies in the ideal, so reductions may
delete such terms outright. The completion passes that bound to the divider,
which defuses the coefficient blowups deep tails would otherwise cause.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from fractions import Fraction

from .core import Exponent, Poly, Ring, exp_add, exp_divides, exp_lcm, exp_sub
from .diagram import Diagram, _box_points

__all__ = [
    "DEFAULT_POOL_CEILING",
    "POOL_CEILING_ENV",
    "PoolLimitExceeded",
    "MoraStep",
    "MoraTrace",
    "SPairRecord",
    "SBasis",
    "mora_normal_form",
    "standard_basis",
    "diagram_of_ideal",
]

DEFAULT_POOL_CEILING = 10000
POOL_CEILING_ENV = "STAIRCASE_POOL_CEILING"


class PoolLimitExceeded(RuntimeError):
    """The Mora reducer pool outgrew the configured ceiling."""

    def __init__(self, limit: int):
        super().__init__(
            f"reducer pool exceeded the ceiling of {limit}; "
            f"raise {POOL_CEILING_ENV} to allow more"
        )
        self.limit = limit


def _resolve_ceiling(explicit: int | None) -> int:
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(POOL_CEILING_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(
                f"{POOL_CEILING_ENV} must be an integer, got {env!r}"
            ) from None
    return DEFAULT_POOL_CEILING


@dataclass(frozen=True)
class MoraStep:
    reducer: str
    shift: Exponent
    coeff: Fraction


@dataclass(frozen=True)
class MoraTrace:
    """Reduction log: one entry per cancelled initial term.

    `unit` is the unit u of the local ring with u*f - remainder in the ideal
    generated by the reducers; it stays 1 unless intermediate results were
    used as reducers.
    """

    steps: tuple[MoraStep, ...]
    unit: Poly
    pool_added: int

    def format(self) -> str:
        lines = [f"pool additions: {self.pool_added}", f"unit: {self.unit}"]
        for i, s in enumerate(self.steps):
            lines.append(f"step {i}: reducer {s.reducer} shift {s.shift} coeff {s.coeff}")
        return "\n".join(lines)


@dataclass(frozen=True)
class _Reducer:
    poly: Poly
    inexp: Exponent
    lead: Fraction
    ecart: int
    label: str
    unit_part: Poly | None
    index: int


def _weighted_ecart(p: Poly) -> int:
    # Terms are ascending in a length-first order, so the last term carries
    # the maximal weighted length.
    length = p.ring.order.length
    return length(p.terms[-1][0]) - length(p.terms[0][0])


def _drop_deep_terms(p: Poly, cap: int | None) -> Poly:
    if cap is None or p.is_zero:
        return p
    length = p.ring.order.length
    kept = tuple(t for t in p.terms if length(t[0]) < cap)
    if len(kept) == len(p.terms):
        return p
    return Poly(p.ring, kept)


def _zero_dim_length_cap(inexps, ring: Ring) -> int | None:
    """Least L with every exponent of weighted length >= L in the staircase.

    Returns None while some axis has no pure power among the initial
    exponents, i.e. while the staircase complement is infinite. When the
    complement is finite, any monomial of length >= L reduces forever inside
    the staircase, hence converges to an element of the ideal by Krull
    intersection; deleting such terms during division is therefore exact.
    """
    axis_powers = []
    for i in range(ring.arity):
        pures = [e[i] for e in inexps
                 if all(x == 0 for j, x in enumerate(e) if j != i)]
        if not pures:
            return None
        axis_powers.append(min(pures))
    length = ring.order.length
    cap = 0
    for point in _box_points(axis_powers):
        if not any(exp_divides(v, point) for v in inexps):
            cap = max(cap, length(point) + 1)
    return cap


def mora_normal_form(
    f: Poly, reducers, *,
    pool_ceiling: int | None = None,
    length_cap: int | None = None,
) -> tuple[Poly, MoraTrace]:
    """Weak normal form of f against the reducers.

    Returns (remainder, trace). Either the remainder is zero or its initial
    exponent is divisible by no reducer's initial exponent; in all cases
    trace.unit * f is congruent to the remainder modulo the reducer ideal.

    A length_cap deletes every term of weighted length at least the cap as
    soon as it appears. The caller must guarantee that such terms already lie
    in the reducer ideal; the completion loop certifies this from the partial
    staircase before passing a cap.
    """
    reducers = list(reducers)
    ring = f.ring
    for g in reducers:
        if not isinstance(g, Poly) or g.ring != ring:
            raise ValueError("reducers must be polynomials in the same ring")
        if g.is_zero:
            raise ValueError("zero polynomials cannot be reducers")
    ceiling = _resolve_ceiling(pool_ceiling)
    order = ring.order
    key = order.key
    pool = [
        _Reducer(g, g.initial_exponent(), g.initial_coefficient(),
                 _weighted_ecart(g), f"r{i}", None, i)
        for i, g in enumerate(reducers)
    ]
    h = _drop_deep_terms(f, length_cap)
    unit = ring.constant(1)
    steps: list[MoraStep] = []
    added = 0
    while not h.is_zero:
        hexp = h.initial_exponent()
        chosen = None
        chosen_rank = None
        for entry in pool:
            if exp_divides(entry.inexp, hexp):
                rank = (entry.ecart, key(entry.inexp), entry.index)
                if chosen is None or rank < chosen_rank:
                    chosen, chosen_rank = entry, rank
        if chosen is None:
            break
        h_ecart = _weighted_ecart(h)
        if chosen.ecart > h_ecart:
            if len(pool) >= ceiling:
                raise PoolLimitExceeded(ceiling)
            pool.append(
                _Reducer(h, hexp, h.initial_coefficient(), h_ecart,
                         f"p{added}", unit, len(pool))
            )
            added += 1
        shift = exp_sub(hexp, chosen.inexp)
        coeff = h.initial_coefficient() / chosen.lead
        h = _drop_deep_terms(h._sub_shifted(coeff, shift, chosen.poly), length_cap)
        if chosen.unit_part is not None:
            # Initial exponents grow strictly along a reduction chain, so a
            # pooled intermediate always divides with a nonzero shift and the
            # constant term of the unit survives.
            assert any(shift), "pooled reducer used with trivial shift"
            unit = unit - Poly.from_terms(ring, [(shift, coeff)]) * chosen.unit_part
        steps.append(MoraStep(chosen.label, shift, coeff))
    assert h.is_zero or all(
        not exp_divides(entry.inexp, h.initial_exponent()) for entry in pool
    )
    return h, MoraTrace(tuple(steps), unit, added)


@dataclass(frozen=True)
class SPairRecord:
    i: int
    j: int
    lcm: Exponent
    steps: int
    reduced_to_zero: bool
    added_index: int | None
    skipped_coprime: bool = False


@dataclass(frozen=True)
class SBasis:
    """A standard basis together with its staircase and the completion log."""

    generators: tuple[Poly, ...]
    basis: tuple[Poly, ...]
    diagram: Diagram
    trace: tuple[SPairRecord, ...]

    def format_trace(self) -> str:
        lines = []
        for r in self.trace:
            if r.skipped_coprime:
                lines.append(f"pair ({r.i},{r.j}) lcm {r.lcm}: skipped, coprime leads")
            elif r.reduced_to_zero:
                lines.append(f"pair ({r.i},{r.j}) lcm {r.lcm}: 0 in {r.steps} steps")
            else:
                lines.append(
                    f"pair ({r.i},{r.j}) lcm {r.lcm}: new element "
                    f"b{r.added_index} after {r.steps} steps"
                )
        return "\n".join(lines)


def _spoly(f: Poly, g: Poly) -> Poly:
    a, b = f.initial_exponent(), g.initial_exponent()
    lcm = exp_lcm(a, b)
    fa = Poly(f.ring, tuple((exp_add(e, exp_sub(lcm, a)), c) for e, c in f.terms))
    gb = Poly(g.ring, tuple((exp_add(e, exp_sub(lcm, b)), c) for e, c in g.terms))
    return fa.scaled(1 / f.initial_coefficient()) - gb.scaled(1 / g.initial_coefficient())


def standard_basis(
    gens, *, ring: Ring | None = None, pool_ceiling: int | None = None
) -> SBasis:
    """Complete the generators to a standard basis and read off the staircase.

    The returned diagram is exactly the set of initial exponents of the ideal
    the generators span. Zero generators are dropped; basis elements are
    content normalized; s-pairs are processed ascending by lcm so reruns are
    reproducible.
    """
    gens = tuple(gens)
    if ring is None:
        if not gens:
            raise ValueError("a ring is required when no generators are given")
        ring = gens[0].ring
    for g in gens:
        if not isinstance(g, Poly) or g.ring != ring:
            raise ValueError("generators must be polynomials in one ring")
    basis: list[Poly] = [g.content_normalized() for g in gens if not g.is_zero]
    inexps: list[Exponent] = [b.initial_exponent() for b in basis]
    records: list[SPairRecord] = []
    order_key = ring.order.key
    heap: list[tuple[tuple, int, int]] = []

    def push_pairs(j: int) -> None:
        for i in range(j):
            lcm = exp_lcm(inexps[i], inexps[j])
            heapq.heappush(heap, (order_key(lcm), i, j))

    for j in range(len(basis)):
        push_pairs(j)
    cap = _zero_dim_length_cap(inexps, ring)
    while heap:
        _, i, j = heapq.heappop(heap)
        lcm = exp_lcm(inexps[i], inexps[j])
        if lcm == exp_add(inexps[i], inexps[j]):
            records.append(SPairRecord(i, j, lcm, 0, True, None, True))
            continue
        s = _spoly(basis[i], basis[j])
        if s.is_zero:
            records.append(SPairRecord(i, j, lcm, 0, True, None))
            continue
        remainder, trace = mora_normal_form(
            s, basis, pool_ceiling=pool_ceiling, length_cap=cap)
        if remainder.is_zero:
            records.append(SPairRecord(i, j, lcm, len(trace.steps), True, None))
            continue
        remainder = remainder.content_normalized()
        basis.append(remainder)
        inexps.append(remainder.initial_exponent())
        new_index = len(basis) - 1
        records.append(SPairRecord(i, j, lcm, len(trace.steps), False, new_index))
        push_pairs(new_index)
        cap = _zero_dim_length_cap(inexps, ring)
    diagram = Diagram.from_exponents(inexps, arity=ring.arity)
    return SBasis(gens, tuple(basis), diagram, tuple(records))


def diagram_of_ideal(
    gens, *, ring: Ring | None = None, pool_ceiling: int | None = None
) -> Diagram:
    """Exact diagram of initial exponents of the ideal the generators span."""
    return standard_basis(gens, ring=ring, pool_ceiling=pool_ceiling).diagram
