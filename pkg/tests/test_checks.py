import pytest
from hypothesis import given, strategies as st

from hurwitz_alex.checks import (EXACT_QUOTIENT_MAX_DEGREE, VERDICTS, betti_statistic,
                                 classify_realizability, grku_properties)
from hurwitz_alex.errors import NotRootsOfUnity
from hurwitz_alex.poly import T, Poly, cyclotomic, product
from hurwitz_alex.poly import _divisors


def test_properties_g2():
    rep = grku_properties(T ** 2 - 1, 20, 2)
    assert rep["ii"].holds and rep["vi"].holds
    assert rep["vii"].holds is None


def test_properties_example_4_1_violation():
    # two components but mult_1 = 2: (vi) fails
    rep = grku_properties((T - 1) ** 2, 2, 2)
    assert rep["vi"].holds is False
    assert "vi" in rep.failures()
    assert grku_properties((T - 1) ** 2, 2, 3)["vi"].holds


def test_properties_trivial():
    for d in (1, 2, 5):
        rep = grku_properties(Poly((1,)), d, 1)
        assert rep.all_pass


def test_property_iv_uses_invariant_factors():
    assert grku_properties((T - 1) ** 2, 2, 3)["iv"].holds is None
    rep = grku_properties((T - 1) ** 2, 2, 3, invariant_factors=[(T - 1) ** 2])
    assert rep["iv"].holds is False
    rep = grku_properties((T - 1) ** 2, 2, 3, invariant_factors=[T - 1, T - 1])
    assert rep["iv"].holds is True


def test_property_iii_and_vii():
    rep = grku_properties(cyclotomic(6), 4, 1)
    assert rep["iii"].holds is False
    rep = grku_properties(cyclotomic(6), 6, 1)
    assert rep["iii"].holds and rep["vii"].holds
    with pytest.raises(NotRootsOfUnity):
        grku_properties(T ** 2 - 2, 3, 1)


@pytest.mark.parametrize("d", [3, 4, 6, 12, 50, 60])
def test_property_v_branches_agree(d):
    """The exact quotient and the multiplicity witness give the same verdict."""
    from hurwitz_alex import checks
    candidates = [cyclotomic(d) ** (d - 2), (T - 1) ** 2 * cyclotomic(d),
                  (T - 1) ** (d - 1), cyclotomic(2 * d)]
    for p in candidates:
        fast = grku_properties(p, d, 1)["v"].holds
        old = checks.EXACT_QUOTIENT_MAX_DEGREE
        checks.EXACT_QUOTIENT_MAX_DEGREE = -1
        try:
            slow = grku_properties(p, d, 1)["v"].holds
        finally:
            checks.EXACT_QUOTIENT_MAX_DEGREE = old
        assert fast == slow


def test_exact_quotient_threshold_pinned():
    assert EXACT_QUOTIENT_MAX_DEGREE == 2000


# --- classification -----------------------------------------------------------------

@pytest.mark.parametrize("p,verdict", [
    ((T + 1) ** 3 * (T - 1), "NotRealizablePM"),
    (T ** 2 - T + 1, "RealizableThm1"),
    ((T - 1) * cyclotomic(4) ** 2, "UnknownConjecture"),
    ((T - 1) ** 2 * (T + 1), "RealizableThm3"),
    ((T - 1) * cyclotomic(4), "RealizableThm2"),
    (T ** 2 - 2, "NotRootsOfUnityNecessary"),
    (T.scale(2) + Poly((1,)), "NotRootsOfUnityNecessary"),
    (cyclotomic(4), "NotRealizableThm1"),
    (Poly((1,)), "RealizableThm1"),
])
def test_classify_examples(p, verdict):
    c = classify_realizability(p)
    assert c.verdict == verdict and c.verdict in VERDICTS


def test_unknown_conjecture_flag():
    c = classify_realizability((T - 1) * cyclotomic(4) ** 2)
    assert c.data["condition_ii_violated"] is True
    assert c.realizable is None


def test_pm_data():
    c = classify_realizability((T + 1) ** 2)
    assert (c.data["n"], c.data["k"]) == (0, 2)
    assert "Theorem 3" in c.reason


# --- betti statistic ------------------------------------------------------------------

@pytest.mark.parametrize("p,n,r", [(T ** 2 - 1, 2, 1), ((T - 1) ** 3, 7, 0), ((T - 1) ** 3, 1, 0),
                                   (cyclotomic(6) ** 2, 6, 4), (cyclotomic(6) ** 2, 3, 0),
                                   ((1 - T) * (T + 1) ** 2, 2, 2), ((T - 1) ** 2, 12, 0)])
def test_betti_examples(p, n, r):
    assert betti_statistic(p, n) == r


@given(st.dictionaries(st.integers(1, 24), st.integers(1, 3), min_size=1, max_size=4),
       st.integers(1, 30), st.integers(2, 5))
def test_betti_monotone_along_divisibility(fac, n, mult):
    p = product(cyclotomic(m) ** e for m, e in fac.items())
    assert betti_statistic(p, n) <= betti_statistic(p, n * mult)


@given(st.dictionaries(st.integers(1, 24), st.integers(1, 3), min_size=1, max_size=4),
       st.integers(1, 30))
def test_betti_is_root_count(fac, n):
    """Direct count: roots of t^n - 1 other than 1 are the Φ_m roots, m | n, m > 1."""
    p = product(cyclotomic(m) ** e for m, e in fac.items())
    expected = sum(e * cyclotomic(m).degree for m, e in fac.items() if m > 1 and n % m == 0)
    assert betti_statistic(p, n) == expected
