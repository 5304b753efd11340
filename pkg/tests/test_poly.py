from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hurwitz_alex.errors import NotRootsOfUnity
from hurwitz_alex.poly import (ONE, T, CyclotomicFactorization, LaurentPoly, Poly, cyclotomic,
                               eval_at_one, factor_cyclotomic, format_poly, is_squarefree,
                               normalize_sign, poly_gcd, prime_power_multiplicity_bound, product,
                               root_order, totient)

x = sympy.symbols("t")
coeff_lists = st.lists(st.integers(-20, 20), min_size=0, max_size=7)


def to_sympy(p: Poly):
    return sympy.Poly(list(reversed([int(c) for c in p.coeffs])) or [0], x)


# --- arithmetic against sympy -------------------------------------------------

@given(coeff_lists, coeff_lists)
def test_ring_ops_match_sympy(a, b):
    p, q = Poly(tuple(a)), Poly(tuple(b))
    assert to_sympy(p + q) == to_sympy(p) + to_sympy(q)
    assert to_sympy(p * q) == to_sympy(p) * to_sympy(q)
    assert to_sympy(p - q) == to_sympy(p) - to_sympy(q)


@given(coeff_lists, coeff_lists.filter(lambda c: any(c)))
def test_divmod_identity(a, b):
    p, q = Poly(tuple(a)), Poly(tuple(b))
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


@given(coeff_lists.filter(any), coeff_lists.filter(any))
def test_gcd_matches_sympy(a, b):
    p, q = Poly(tuple(a)), Poly(tuple(b))
    g = poly_gcd(p, q)
    expected = sympy.gcd(to_sympy(p), to_sympy(q)).monic().as_expr()
    ours = sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * x ** i
               for i, c in enumerate(g.monic().coeffs))
    assert sympy.expand(ours - expected) == 0


def test_zero_conventions():
    z = Poly(())
    assert z.is_zero() and z.degree is None and str(z) == "0"
    assert Poly((0, 0)) == z


def test_format():
    assert format_poly(T ** 2 - T + 1) == "t^2 - t + 1"
    assert str(-(T - 1)) == "-t + 1"
    assert str(T.scale(2)) == "2t"


# --- cyclotomic ------------------------------------------------------------

@pytest.mark.parametrize("n,expected", [(1, T - 1), (2, T + 1), (6, T ** 2 - T + 1)])
def test_cyclotomic_examples(n, expected):
    assert cyclotomic(n) == expected


def test_cyclotomic_matches_sympy():
    for n in range(1, 121):
        assert to_sympy(cyclotomic(n)) == sympy.Poly(sympy.cyclotomic_poly(n, x), x)


def test_factor_examples():
    f = factor_cyclotomic((T - 1) ** 2 * (T + 1))
    assert f.factors == {1: 2, 2: 1} and f.unit_sign == 1
    assert factor_cyclotomic(T ** 2 + T + 1).factors == {3: 1}
    with pytest.raises(NotRootsOfUnity):
        factor_cyclotomic(T ** 2 - 2)


@given(st.dictionaries(st.integers(1, 30), st.integers(1, 3), max_size=4),
       st.sampled_from([1, -1]), st.integers(0, 3))
def test_factor_reconstruct_roundtrip(fac, sign, tp):
    p = product(cyclotomic(n) ** m for n, m in fac.items()).scale(sign).shift(tp)
    f = factor_cyclotomic(p)
    assert f.factors == fac and f.unit_sign == sign and f.t_power == tp
    assert f.reconstruct() == p


@pytest.mark.parametrize("p,val", [(cyclotomic(4), 2), (cyclotomic(6), 1), ((T - 1) * (T ** 3 + 5), 0)])
def test_eval_at_one(p, val):
    assert eval_at_one(p) == val


@pytest.mark.parametrize("p,k", [(cyclotomic(6), 6), ((T - 1) * (T + 1), 2),
                                 ((T ** 2 + T + 1) * (T + 1), 6)])
def test_root_order(p, k):
    assert root_order(p) == k
    assert ((T ** k - 1) % p).is_zero()


def test_squarefree():
    assert not is_squarefree((T - 1) ** 2)
    assert is_squarefree(T ** 2 - T + 1)
    assert is_squarefree(Poly((7,)))


def test_prime_power_bound():
    assert prime_power_multiplicity_bound((T - 1) ** 2 * (T + 1) ** 3) == ({2: 3}, 2)
    assert prime_power_multiplicity_bound(cyclotomic(6) ** 2) == ({}, 0)
    assert prime_power_multiplicity_bound((T - 1) * cyclotomic(4)) == ({4: 1}, 1)


def test_totient_small():
    assert [totient(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


# --- sign convention -----------------------------------------------------------

@given(coeff_lists.filter(any), st.integers(0, 4), st.sampled_from([1, -1]))
def test_normalize_sign(a, shift, sign):
    p = Poly(tuple(a))
    q, tp, s = normalize_sign(p.shift(shift).scale(sign))
    assert q.coefficient(0) != 0
    assert q.leading * (-1) ** q.degree > 0
    assert q.shift(tp).scale(s) == p.shift(shift).scale(sign)


# --- Laurent -----------------------------------------------------------------

def test_laurent_basics():
    a = LaurentPoly.from_terms({-1: 2, 1: 1})
    assert a.low == -1 and a.high == 1
    assert (a * LaurentPoly.monomial(1, 1)).to_poly() == Poly((2, 0, 1))
    assert LaurentPoly.monomial(-1, 3).is_unit()
    assert not a.is_unit()
    u = LaurentPoly.monomial(-1, 3)
    assert (u * u.unit_inverse()) == LaurentPoly.monomial(1, 0)


def test_product_empty():
    assert product([]) == ONE
