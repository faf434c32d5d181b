from __future__ import annotations

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from coinvariants.errors import CapExceeded, ContextMismatch, ParseError
from coinvariants.gf import make_field
from coinvariants.poly import (
    Monomial,
    Polynomial,
    VarContext,
    divisors,
    homogeneous_component,
    monomials_of_degree,
    poly_arith,
    restrict_vars,
    substitute,
)
from oracles import symbols, to_sympy

F2, F3, F4, F5 = make_field(2), make_field(3), make_field(2, 2), make_field(5)


def P(ctx, text):
    return ctx.parse(text)


def test_arith_examples():
    c2, c3 = VarContext(2, F2), VarContext(2, F3)
    s = P(c2, "x1 + x2")
    assert poly_arith(s, s, "mul") == P(c2, "x1^2 + x2^2")
    assert s + c2.zero == s
    assert (P(c3, "x1 + x2")) ** 2 == P(c3, "x1^2 + 2*x1*x2 + x2^2")
    with pytest.raises(ContextMismatch):
        s + P(c3, "x1")


def test_substitute_examples():
    c = VarContext(2, F2)
    x1, x2 = c.gens()
    assert substitute(x1**2, [x1 + x2, x2]) == x1**2 + x2**2
    f = P(c, "x1^3*x2 + x2^2 + 1")
    assert substitute(f, [x1, x2]) == f
    assert substitute(x1 * x2, [x2, x1]) == x1 * x2


def test_restrict_examples():
    c = VarContext(3, F3)
    assert restrict_vars(P(c, "x1 + x3"), {1, 2}) == P(c, "x1")
    assert restrict_vars(P(c, "x1*x3"), {1, 2}).is_zero()
    assert restrict_vars(P(c, "x1^2 + x1*x2 + x2^2"), {1}) == P(c, "x1^2")


def test_homogeneous_component_examples():
    c = VarContext(2, F3)
    f = P(c, "x1 + x1*x2")
    assert homogeneous_component(f, 1) == P(c, "x1")
    assert homogeneous_component(f, 2) == P(c, "x1*x2")
    assert homogeneous_component(P(c, "x1*x2"), 3).is_zero()


def test_divisors_examples():
    ds = divisors(Monomial((1, 2)))
    assert len(ds) == 6
    assert {d.exps for d in ds} == {(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)}
    assert [d.exps for d in divisors(Monomial((0, 0)))] == [(0, 0)]
    assert len(divisors(Monomial((1, 2, 1)))) == 12
    with pytest.raises(CapExceeded):
        divisors(Monomial((99, 99, 99, 99)), cap=10**7)


def test_zero_coefficients_dropped():
    c = VarContext(2, F3)
    f = Polynomial(c, {(1, 0): 0, (0, 1): 2})
    assert f.terms == {(0, 1): 2}
    assert (P(c, "x1") - P(c, "x1")).terms == {}


def test_parse_and_format():
    c = VarContext(3, F3)
    f = P(c, "x1^2*x2 + 2*x3")
    assert f.format() == "x1^2*x2 + 2*x3"
    assert P(c, " ( x1 + x2 ) ^ 2 ").format() == "x1^2 + 2*x1*x2 + x2^2"
    assert P(c, "x3 + x1").format() == "x1 + x3"
    c4 = VarContext(1, F4)
    assert P(c4, "[0,1]*x1").format() == "[0,1]*x1"
    with pytest.raises(ParseError) as err:
        P(c, "x1 + * x2")
    assert err.value.position is not None
    with pytest.raises(ParseError):
        P(c, "x4")


def test_grlex_enumeration_ascending():
    mons = monomials_of_degree(2, 2)
    assert mons == [(0, 2), (1, 1), (2, 0)]


def test_exponent_cap():
    c = VarContext(1, F2)
    with pytest.raises(CapExceeded):
        c.monomial((2**21,))


def _poly(n, p, max_deg=4, max_terms=5):
    @st.composite
    def build(draw):
        ctx = VarContext(n, make_field(p))
        terms = draw(
            st.dictionaries(
                st.tuples(*[st.integers(0, max_deg) for _ in range(n)]),
                st.integers(0, p - 1),
                max_size=max_terms,
            )
        )
        return Polynomial(ctx, terms)

    return build()


@settings(max_examples=80, deadline=None)
@given(_poly(2, 3), _poly(2, 3), _poly(2, 3))
def test_ring_axioms_f3(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@settings(max_examples=60, deadline=None)
@given(_poly(3, 5), _poly(3, 5))
def test_product_matches_sympy(a, b):
    xs = symbols(3)
    ref = sp.Poly(to_sympy(a, xs) * to_sympy(b, xs), *xs, modulus=5)
    got = sp.Poly(to_sympy(a * b, xs), *xs, modulus=5) if not (a * b).is_zero() else sp.Poly(0, *xs, modulus=5)
    assert ref == got


@settings(max_examples=40, deadline=None)
@given(_poly(2, 2, max_deg=3), st.integers(1, 9))
def test_power_matches_repeated_product(a, k):
    out = a.ctx.one
    for _ in range(k):
        out = out * a
    assert a**k == out


@settings(max_examples=40, deadline=None)
@given(_poly(2, 3, 3), _poly(2, 3, 2), _poly(2, 3, 2), _poly(2, 3, 2), _poly(2, 3, 2))
def test_substitution_composition_law(f, a1, a2, b1, b2):
    A, B = [a1, a2], [b1, b2]
    lhs = substitute(substitute(f, A), B)
    rhs = substitute(f, [substitute(g, B) for g in A])
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(_poly(3, 3))
def test_components_recover_polynomial(f):
    total = f.ctx.zero
    for d, part in f.components().items():
        assert part.is_homogeneous()
        total = total + part
    assert total == f


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(0, 4), st.integers(0, 3), st.integers(0, 2)))
def test_divisors_property(exps):
    m = Monomial(exps)
    ds = divisors(m)
    assert len({d.exps for d in ds}) == len(ds) == (exps[0] + 1) * (exps[1] + 1) * (exps[2] + 1)
    assert all(d.divides(m) for d in ds)


@settings(max_examples=40, deadline=None)
@given(_poly(2, 3))
def test_format_parse_roundtrip(f):
    assert f.ctx.parse(f.format()) == f
