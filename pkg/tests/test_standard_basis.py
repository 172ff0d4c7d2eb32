"""Mora division and the completion loop behind exact staircases."""

import random
from fractions import Fraction

import pytest

from staircase import (
    Diagram,
    PoolLimitExceeded,
    Poly,
    Ring,
    TruncationBasis,
    diagram_of_ideal,
    exp_add,
    exp_divides,
    exp_lcm,
    exp_sub,
    mora_normal_form,
    standard_basis,
    unit_cleared_generators,
)
from helpers import random_ideal, random_poly, random_ring, random_tail

RING = Ring(("x", "y"))
X = RING.variable("x")
Y = RING.variable("y")


def test_mora_pinned_unit_example():
    nf, trace = mora_normal_form(X ** 2, [X - X ** 2])
    assert nf.is_zero
    assert trace.unit == RING.constant(1) - X
    assert trace.pool_added == 1
    assert [step.reducer for step in trace.steps] == ["r0", "p0"]
    nf2, trace2 = mora_normal_form(X, [X - X ** 2])
    assert nf2.is_zero
    assert trace2.unit == RING.constant(1) - X


def test_mora_validates_inputs():
    with pytest.raises(ValueError):
        mora_normal_form(X, [RING.zero()])
    other = Ring(("a",))
    with pytest.raises(ValueError):
        mora_normal_form(X, [other.variable("a")])


def test_mora_remainder_is_irreducible():
    rng = random.Random(201)
    for _ in range(80):
        ring = random_ring(rng)
        reducers = random_ideal(rng, ring)
        f = random_poly(rng, ring, max_degree=5)
        remainder, _ = mora_normal_form(f, reducers)
        if remainder.is_zero:
            continue
        lead = remainder.initial_exponent()
        assert not any(exp_divides(r.initial_exponent(), lead)
                       for r in reducers)


def test_mora_weak_normal_form_identity():
    rng = random.Random(202)
    for _ in range(60):
        ring = random_ring(rng)
        reducers = random_ideal(rng, ring, max_degree=3)
        f = random_poly(rng, ring, max_degree=4)
        remainder, trace = mora_normal_form(f, reducers)
        assert trace.unit.constant_term == 1
        witness = trace.unit * f - remainder
        if witness.is_zero:
            continue
        window = TruncationBasis.build(reducers, 9, ring=ring)
        assert window.contains_mod_truncation(witness)


def test_standard_basis_pinned_examples():
    sb = standard_basis([X ** 2 + Y ** 3, X * Y])
    assert sb.diagram.vertices == ((1, 1), (2, 0), (0, 4))
    sb2 = standard_basis([Y - X ** 2, Y ** 3])
    assert sb2.diagram.vertices == ((0, 1), (6, 0))
    assert any(b == X ** 6 for b in sb2.basis)
    g1, g2 = unit_cleared_generators(RING)
    sb3 = standard_basis([g1, g2])
    assert sb3.diagram.vertices == ((3, 1), (2, 3))
    assert standard_basis([X, Y]).diagram.vertices == ((0, 1), (1, 0))
    assert standard_basis([RING.constant(1) + X]).diagram.vertices == ((0, 0),)


def test_standard_basis_handles_degenerate_generators():
    empty = standard_basis([], ring=RING)
    assert empty.diagram.is_empty
    with_zero = standard_basis([RING.zero(), X])
    assert with_zero.diagram == standard_basis([X]).diagram
    assert standard_basis([2 * X]).basis == (X,)
    with pytest.raises(ValueError):
        standard_basis([])


def test_coprime_leads_are_skipped():
    sb = standard_basis([X ** 2, Y ** 3])
    assert sb.diagram.vertices == ((2, 0), (0, 3))
    assert any(record.skipped_coprime for record in sb.trace)


def test_every_spair_of_the_basis_reduces_to_zero():
    rng = random.Random(203)
    for _ in range(40):
        ring = random_ring(rng)
        gens = random_ideal(rng, ring, max_degree=4)
        sb = standard_basis(gens)
        basis = sb.basis
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                a = basis[i].initial_exponent()
                b = basis[j].initial_exponent()
                lcm = exp_lcm(a, b)
                fa = basis[i] * ring.monomial(exp_sub(lcm, a))
                gb = basis[j] * ring.monomial(exp_sub(lcm, b))
                s = (fa.scaled(1 / basis[i].initial_coefficient())
                     - gb.scaled(1 / basis[j].initial_coefficient()))
                if s.is_zero:
                    continue
                remainder, _ = mora_normal_form(s, list(basis))
                assert remainder.is_zero


def test_diagram_is_invariant_under_units_and_scaling():
    rng = random.Random(204)
    for _ in range(30):
        ring = random_ring(rng)
        gens = random_ideal(rng, ring, max_degree=3)
        base = diagram_of_ideal(gens)
        unit = ring.constant(1) + random_tail(rng, ring, 1, 2)
        scaled = [g.scaled(Fraction(rng.randint(1, 5))) for g in gens]
        assert diagram_of_ideal(scaled, ring=ring) == base
        assert diagram_of_ideal([unit * g for g in gens], ring=ring) == base


def test_initial_exponents_of_members_lie_in_the_diagram():
    rng = random.Random(205)
    for _ in range(40):
        ring = random_ring(rng)
        gens = random_ideal(rng, ring, max_degree=3)
        d = diagram_of_ideal(gens)
        member = ring.zero()
        for g in gens:
            member = member + random_poly(rng, ring, max_degree=2,
                                          zero_ok=True) * g
        if member.is_zero:
            continue
        assert d.contains(member.initial_exponent())


def test_deep_tails_finish_once_the_staircase_is_finite():
    # Ecart-driven division alone treadmills on these generators while the
    # coefficients swell; the finite-complement cap must shortcut the run.
    g1 = X ** 2 + Y ** 3 - 3 * X ** 6
    g2 = X * Y - 2 * X ** 6 + 2 * X ** 4 * Y ** 4 + 3 * X ** 6 * Y ** 2
    sb = standard_basis([g1, g2])
    assert sb.diagram.vertices == ((1, 1), (2, 0), (0, 4))
    assert sum(record.steps for record in sb.trace) <= 10
    deep = X ** 7 * Y - X ** 6 * Y ** 3
    nf, trace = mora_normal_form(
        deep, [X ** 2 + Y ** 3, X * Y, Y ** 4], length_cap=4)
    assert nf.is_zero
    assert not trace.steps


def test_pool_ceiling_explicit_env_and_default(monkeypatch):
    gens = [Y - X ** 2, Y ** 3]
    with pytest.raises(PoolLimitExceeded):
        standard_basis(gens, pool_ceiling=0)
    monkeypatch.setenv("STAIRCASE_POOL_CEILING", "0")
    with pytest.raises(PoolLimitExceeded):
        standard_basis(gens)
    assert standard_basis(gens, pool_ceiling=50).diagram.vertices == (
        (0, 1), (6, 0))
    monkeypatch.setenv("STAIRCASE_POOL_CEILING", "not a number")
    with pytest.raises(ValueError):
        standard_basis(gens)
