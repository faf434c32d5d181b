from __future__ import annotations

import math
import random

import pytest

from coinvariants.errors import CapExceeded, FieldMismatch, InvalidSpec, NotDividing, ParseError, SizeMismatch
from coinvariants.gf import make_field
from coinvariants.groups import (
    GL,
    BlockTriangular,
    Borel,
    Composition,
    Imprimitive,
    Levi,
    MatrixElement,
    Parabolic,
    Trivial,
    Unipotent,
    WeylCartan,
    act,
    closure,
    expected_order,
    generators,
    group_elements,
    is_invariant,
    parse_group,
    sigma_group,
)
from coinvariants.invariants import dickson, gman_system, uI_system
from coinvariants.poly import VarContext
from oracles import gl_elements_brute
from test_suite_helpers import compositions_up_to

F2, F3, F5 = make_field(2), make_field(3), make_field(5)


def test_composition_tau():
    c = Composition((2, 1, 3))
    assert c.n == 6 and c.partial_sums == (0, 2, 3, 6)
    assert [c.tau(s) for s in range(1, 7)] == [0, 0, 2, 3, 3, 3]
    for s in range(1, 7):
        assert c.tau(s) < s
        assert (c.tau(s) == 0) == (s <= 2)
    with pytest.raises(InvalidSpec):
        Composition((2, 0))


def test_unipotent_generators_example():
    gens = generators(Unipotent(Composition((1, 1))), F2)
    assert [g.entries for g in gens] == [((1, 1), (0, 1))]


def test_symmetric_generators_are_transpositions():
    gens = generators(Imprimitive(1, 1, 3), F3)
    assert len(gens) == 2
    for g in gens:
        assert g.is_pseudo_reflection()
        assert all(sum(row) == 1 and set(row) <= {0, 1} for row in g.entries)


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
def test_gl_closure_is_all_invertible_matrices(n, p):
    F = make_field(p)
    elems = group_elements(GL(n), F)
    assert {g.entries for g in elems} == set(gl_elements_brute(n, p))
    assert len(elems) == math.prod(p**n - p**i for i in range(n)) == expected_order(GL(n), F)


def test_closure_examples():
    I2 = MatrixElement.identity(F2, 2)
    assert closure([I2]) == {I2}
    assert len(group_elements(Unipotent(Composition((1, 1))), F2)) == 2
    assert len(group_elements(Imprimitive(2, 2, 2), F3)) == 4
    with pytest.raises(CapExceeded):
        group_elements(GL(3), F3, cap=100)


@pytest.mark.parametrize("q", [2, 3])
def test_unipotent_orders(q):
    F = make_field(q)
    for parts in compositions_up_to(4 if q == 2 else 3):
        spec = Unipotent(Composition(parts))
        e = sum(parts[i] * parts[j] for i in range(len(parts)) for j in range(i + 1, len(parts)))
        assert len(group_elements(spec, F)) == q**e == expected_order(spec, F)


@pytest.mark.parametrize(
    "m,a,n,q", [(1, 1, 3, 2), (2, 1, 2, 3), (2, 2, 2, 3), (2, 1, 3, 3), (4, 2, 2, 5), (4, 1, 2, 5), (3, 3, 2, 7), (2, 2, 4, 3)]
)
def test_imprimitive_orders(m, a, n, q):
    F = make_field(q)
    assert len(group_elements(Imprimitive(m, a, n), F)) == m**n * math.factorial(n) // a


def test_imprimitive_requires_roots():
    with pytest.raises((InvalidSpec, NotDividing)):
        generators(Imprimitive(3, 1, 2), F5)
    with pytest.raises(InvalidSpec):
        Imprimitive(4, 3, 2).validate(F5)


def test_weyl_requires_prime_field():
    with pytest.raises(InvalidSpec):
        WeylCartan(1, 1, 1).validate(make_field(2, 2))
    with pytest.raises(InvalidSpec):
        WeylCartan(1, 1, 2).validate(F2)


@pytest.mark.parametrize(
    "spec,q",
    [
        (Parabolic(Composition((2, 1))), 2),
        (Borel(3), 3),
        (Levi(Composition((1, 2)), (GL(1), GL(2))), 3),
        (BlockTriangular(Composition((1, 1)), (GL(1), Imprimitive(2, 1, 1))), 3),
        (WeylCartan(1, 2, 2), 3),
    ],
)
def test_block_group_orders(spec, q):
    F = make_field(q)
    assert len(group_elements(spec, F)) == expected_order(spec, F)


def test_action_examples():
    c = VarContext(2, F2)
    x1, x2 = c.gens()
    g = MatrixElement(F2, ((1, 1), (0, 1)))
    f = c.parse("x1^2*x2 + x2")
    assert act(MatrixElement.identity(F2, 2), f) == f
    assert act(g, x1) == x1
    assert act(g, x2) == x1 + x2
    with pytest.raises(SizeMismatch):
        act(MatrixElement.identity(F2, 3), f)
    with pytest.raises(FieldMismatch):
        act(MatrixElement.identity(F3, 2), f)


def _random_poly(ctx, rng, deg=4, terms=5):
    from coinvariants.poly import Polynomial

    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, deg) for _ in range(ctx.n))
        out[e] = rng.randrange(ctx.field.q)
    return Polynomial(ctx, out)


def test_action_composition_exhaustive_u11():
    elems = list(group_elements(Unipotent(Composition((1, 1))), F2))
    rng = random.Random(1)
    ctx = VarContext(2, F2)
    polys = [_random_poly(ctx, rng) for _ in range(20)]
    for g in elems:
        for h in elems:
            for f in polys:
                assert act(g, act(h, f)) == act(g @ h, f)


def test_action_composition_sampled_gl23():
    elems = sorted(group_elements(GL(2), F3), key=lambda g: g.entries)
    rng = random.Random(2)
    ctx = VarContext(2, F3)
    for _ in range(200):
        g, h = rng.choice(elems), rng.choice(elems)
        f = _random_poly(ctx, rng)
        assert act(g, act(h, f)) == act(g @ h, f)


def test_action_composition_f4():
    F4 = make_field(2, 2)
    elems = sorted(group_elements(GL(2), F4), key=lambda g: g.entries)
    assert len(elems) == 180
    rng = random.Random(3)
    ctx = VarContext(2, F4)
    for _ in range(50):
        g, h = rng.choice(elems), rng.choice(elems)
        f = _random_poly(ctx, rng, deg=3)
        assert act(g, act(h, f)) == act(g @ h, f)


def test_invariance_examples():
    c = VarContext(2, F3)
    assert is_invariant(c.parse("x1 + x2"), Imprimitive(1, 1, 2))
    c2 = VarContext(2, F2)
    assert is_invariant(c2.parse("x1"), Unipotent(Composition((1, 1))))
    assert not is_invariant(c2.parse("x1"), GL(2))


def test_sigma_examples():
    assert len(sigma_group(gman_system(2, 1, 3, F3))) == 6
    assert sigma_group(uI_system(Composition((1, 1)), F2)) == [(0, 1)]
    assert len(sigma_group(dickson(VarContext(2, F2)))) == 2


@pytest.mark.parametrize(
    "spec,q", [(GL(2), 3), (GL(3), 2), (Unipotent(Composition((1, 2))), 3), (Imprimitive(4, 2, 2), 5),
               (Borel(2), 3), (WeylCartan(1, 1, 2), 3)]
)
def test_generators_are_pseudo_reflections(spec, q):
    F = make_field(q)
    gens = generators(spec, F)
    reflections = None
    for g in gens:
        if g.is_pseudo_reflection():
            assert g.rank_of_difference() == 1
            continue
        # otherwise a product of two reflections lying in the group
        if reflections is None:
            reflections = [h for h in group_elements(spec, F) if h.is_pseudo_reflection()]
        assert any((r @ s) == g for r in reflections for s in reflections)


def test_parse_group():
    assert parse_group("GL(3)") == GL(3)
    assert parse_group("U(2,1)") == Unipotent(Composition((2, 1)))
    assert parse_group("P(2,1)") == Parabolic(Composition((2, 1)))
    assert parse_group("G(2,1,2)") == Imprimitive(2, 1, 2)
    assert parse_group("B(3)") == Borel(3)
    assert parse_group("W(2,1;m=2)") == WeylCartan(2, 1, 2)
    assert parse_group("T(2)") == Trivial(2)
    assert parse_group("S(3)") == Imprimitive(1, 1, 3)
    gi = parse_group("GI(2,1;GL,G(2,1,1))")
    assert gi == BlockTriangular(Composition((2, 1)), (GL(2), Imprimitive(2, 1, 1)))
    assert parse_group("GI(1,2;GL,G(2,1))").blocks[1] == Imprimitive(2, 1, 2)
    assert parse_group("L(1,1;GL,GL)") == Levi(Composition((1, 1)), (GL(1), GL(1)))
    for bad in ["GL(", "X(2)", "GI(1,1;GL)", "W(1,1)", "GL(a)"]:
        with pytest.raises(ParseError):
            parse_group(bad)
