from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from strandlab.fields import QQ, Field
from strandlab.grading import GradingSpec
from strandlab.poly import PolyRing

from conftest import std_ring

S = std_ring(3, [1, 1, 2])
SQ = std_ring(2, field=QQ)


def poly_strategy(ring, max_terms=4, max_exp=3):
    n = ring.spec.nvars
    mono = st.tuples(*[st.integers(0, max_exp) for _ in range(n)])
    coeff = st.integers(-10, 10)
    return st.lists(st.tuples(mono, coeff), max_size=max_terms).map(
        lambda ts: sum((ring.monomial(u, c) for u, c in ts), ring.zero()))


polys = poly_strategy(S)


@given(polys, polys, polys)
@settings(max_examples=60)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p + S.zero() == p
    assert p * S.one() == p
    assert p - p == S.zero()


@given(polys, polys)
@settings(max_examples=60)
def test_degree_multiplicative(p, q):
    if p.is_homogeneous() and q.is_homogeneous() and p and q:
        assert (p * q).degree() == tuple(
            x + y for x, y in zip(p.degree(), q.degree()))


@given(polys)
@settings(max_examples=60)
def test_str_parse_roundtrip(p):
    assert S.parse(str(p)) == p


def test_parser():
    p = S.parse("3*x0^2*x1 - x2")
    assert p.terms == {(2, 1, 0): 3, (0, 0, 1): 32003 - 1}
    assert S.parse("x0*x0") == S.parse("x0^2")
    assert S.parse("0") == S.zero()
    assert S.parse("-x1 + x1") == S.zero()
    with pytest.raises(ValueError):
        S.parse("y0")


def test_rational_coefficients():
    p = SQ.parse("1/2*x0 + x1")
    assert p.terms[(1, 0)] == Fraction(1, 2)
    assert SQ.parse(str(p)) == p


def test_homogeneous_components():
    p = S.parse("x0 + x2 + x0*x1")
    comps = p.homogeneous_components()
    assert sorted(comps) == [(1,), (2,)]
    assert comps[(1,)] == S.parse("x0")
    assert comps[(2,)] == S.parse("x2 + x0*x1")
    assert not p.is_homogeneous()
    assert comps[(2,)].is_homogeneous()


def test_linear_forms():
    assert S.parse("x0 + x2").is_linear_form()  # x2 has weight 2 but is a variable
    assert not S.parse("x1^2").is_linear_form()
    assert not S.parse("x0 + 1").is_linear_form()
    assert S.zero().is_linear_form()


def test_lead_respects_weighted_grevlex():
    # theta-weight dominates: x2 (weight 2) beats x0*x1? both weight 2 --
    # grevlex tiebreak: smaller last exponent wins
    u, _ = (S.parse("x0*x1 + x2")).lead()
    assert u == (1, 1, 0)
    u, _ = (S.parse("x0^2 + x2")).lead()
    assert u == (2, 0, 0)
    u, _ = (S.parse("x0 + x2")).lead()
    assert u == (0, 0, 1)


def test_grading_mismatch_rejected():
    with pytest.raises(ValueError):
        PolyRing(Field(7), GradingSpec(1, ((1,), (-1,)), (1,)))
