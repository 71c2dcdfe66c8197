import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cftower.ffield import (
    FieldError,
    Poly,
    PolyParseError,
    count_monic_irreducibles,
    enumerate_monic_irreducibles,
    factor_trial,
    field_from_q,
    field_make,
    first_monic_irreducibles,
    format_poly,
    is_square_in_residue_field,
    parse_poly,
    poly_arith,
    poly_gcd,
    poly_is_irreducible,
    squarefree_decomposition,
    squarefree_odd_part,
)
from oracles import irreducibles_by_sieve

F7 = field_make(7)
F3 = field_make(3)
Q7 = "x^6+2*x^5+3*x^4+3*x^3+x^2+1"


def P(text, F=F7):
    return parse_poly(text, F)


def test_field_make_prime_and_extension():
    assert F7.q == 7 and F7.modulus is None
    F4 = field_make(2, 2)
    assert F4.modulus == (1, 1, 1)
    with pytest.raises(FieldError):
        field_make(4, 1)


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27])
def test_extension_field_axioms(q):
    F = field_from_q(q)
    els = list(F.elements())
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, b) == F.mul(b, a)
        if b:
            assert F.mul(F.div(a, b), b) == a
    assert F.pow(F.gen, q - 1) == 1


def test_poly_arith_examples():
    assert poly_arith(P("x^2-1"), P("x-1"), "gcd") == P("x+6")
    quo, rem = poly_arith(P("x^3", F3), P("x^2+1", F3), "divmod")
    assert quo == P("x", F3) and rem == P("2*x", F3)
    assert poly_arith(P("x+1"), P("x+2"), "mul") == P("x^2+3*x+2")
    with pytest.raises(ValueError):
        poly_arith(P("x"), P("x"), "pow")


def test_irreducibility_examples():
    assert poly_is_irreducible(P("x^2+4*x+6"))
    assert not poly_is_irreducible(P("x^2-1"))
    assert not poly_is_irreducible(parse_poly("x^2+1", field_make(13)))
    with pytest.raises(ValueError):
        poly_is_irreducible(P("3"))


def test_count_examples():
    assert count_monic_irreducibles(F7, 2) == 21
    assert count_monic_irreducibles(field_make(2), 3) == 2
    assert count_monic_irreducibles(13, 1) == 13
    assert count_monic_irreducibles(field_from_q(9), 1) == 9


@pytest.mark.parametrize("q,d", [(2, 4), (3, 3), (4, 2), (5, 3), (9, 2), (8, 2)])
def test_enumeration_matches_sieve(q, d):
    F = field_from_q(q)
    ours = enumerate_monic_irreducibles(F, d)
    sieve = irreducibles_by_sieve(F, d)
    assert {f.coeffs for f in ours} == set(sieve)
    assert len(ours) == count_monic_irreducibles(F, d)
    assert first_monic_irreducibles(F, d, 3) == ours[:3]


def test_residue_square_examples():
    Q = P(Q7)
    ok, w = is_square_in_residue_field(Q, P("x^2+4*x+6"))
    assert ok and w == P("2*x+3")
    ok, _ = is_square_in_residue_field(P("1"), P("x^2+3*x+1"))
    assert ok
    ok, w = is_square_in_residue_field(P("x"), P("x+1"))
    assert not ok and w is None
    with pytest.raises(ValueError):
        is_square_in_residue_field(P("x+1"), P("x+1"))


def test_residue_square_needs_odd_q():
    F2 = field_make(2)
    with pytest.raises(FieldError):
        is_square_in_residue_field(parse_poly("x", F2), parse_poly("x^2+x+1", F2))


@pytest.mark.parametrize("text", ["x^", "x^^2", "2x+", "(x+1", "y+1", ""])
def test_parse_errors(text):
    with pytest.raises(PolyParseError):
        parse_poly(text, F7)


def test_parse_format_roundtrip_products():
    f = P("x*(x+1)^2*(x^2+4)")
    assert f == P("x") * P("x+1") * P("x+1") * P("x^2+4")
    assert P(format_poly(f)) == f


def test_squarefree_parts():
    f = P("x^3*(x+1)^2*(x+2)")
    parts = dict((m, g) for g, m in squarefree_decomposition(f))
    assert parts == {1: P("x+2"), 2: P("x+1"), 3: P("x")}
    assert squarefree_odd_part(f) == P("x*(x+2)")
    F9 = field_from_q(9)
    g = parse_poly("x^3+1", F9) * parse_poly("x^3+1", F9)  # (x+1)^6 in char 3
    assert squarefree_decomposition(g) == [(parse_poly("x+1", F9), 6)]


def test_factor_trial():
    f = P("x*(x+1)^2*(x^2+4*x+6)")
    got = factor_trial(f)
    assert sorted((str(g), m) for g, m in got) == sorted(
        [(str(P("x")), 1), (str(P("x+1")), 2), (str(P("x^2+4*x+6")), 1)])


coeff = st.lists(st.integers(0, 6), max_size=6).map(lambda cs: Poly(F7, tuple(cs)))


@settings(max_examples=150, deadline=None)
@given(coeff, coeff, coeff)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly(F7, ())
    if not b.is_zero():
        q, r = divmod(a, b)
        assert q * b + r == a and (r.is_zero() or r.deg < b.deg)


@settings(max_examples=100, deadline=None)
@given(coeff, coeff)
def test_gcd_divides(a, b):
    if a.is_zero() and b.is_zero():
        return
    g = poly_gcd(a, b)
    assert g.is_monic()
    assert (a % g).is_zero() and (b % g).is_zero()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=4), st.lists(st.integers(0, 6), min_size=2, max_size=4))
def test_products_are_reducible(a, b):
    fa, fb = Poly(F7, tuple(a[:-1]) + (1,)), Poly(F7, tuple(b[:-1]) + (1,))
    assert not poly_is_irreducible(fa * fb)
