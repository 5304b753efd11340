import random

import pytest
import sympy
from hypothesis import given, strategies as st

from hurwitz_alex.errors import MapIllDefined, NotMonic
from hurwitz_alex.linalg import (IntMatrix, PolyMatrix, abelian_from_relations, charpoly, companion,
                                 hermite_rows, integer_left_kernel, integer_right_kernel,
                                 kernel_of_abelian_map, smith_qt, smith_z, solve_integer)
from hurwitz_alex.involution import random_unimodular
from hurwitz_alex.poly import T, Poly, cyclotomic

x = sympy.symbols("t")


def matrices(max_rows=4, max_cols=4, bound=6):
    return st.integers(1, max_rows).flatmap(lambda m: st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                           min_size=m, max_size=m).map(lambda rows: IntMatrix.from_lists(rows, n))))


def square(max_n=5, bound=5):
    return st.integers(1, max_n).flatmap(lambda n: st.lists(
        st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n
    ).map(lambda rows: IntMatrix.from_lists(rows, n)))


# --- Smith over Z ------------------------------------------------------------

@given(matrices())
def test_smith_z_properties(a):
    s = smith_z(a)
    assert s.U @ a @ s.V == s.D
    assert abs(s.U.det()) == 1 and abs(s.V.det()) == 1
    diag = s.diagonal
    for i in range(len(diag)):
        for j in range(len(a.rows[0]) if a.rows else 0):
            if i != j:
                assert s.D[i, j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a_ == 0 for a_, b in zip(nz, nz[1:]))
    assert diag[len(nz):] == (0,) * (len(diag) - len(nz))


@given(matrices())
def test_smith_z_matches_sympy(a):
    from sympy.matrices.normalforms import smith_normal_form
    ours = [d for d in smith_z(a).diagonal if d]
    theirs = smith_normal_form(sympy.Matrix(a.tolist()), domain=sympy.ZZ)
    theirs = [abs(theirs[i, i]) for i in range(min(theirs.shape)) if theirs[i, i]]
    assert sorted(ours) == sorted(theirs)


@pytest.mark.parametrize("rows,diag", [([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (1, 1, 1)),
                                       ([[2, 0], [0, 3]], (1, 6)),
                                       ([[0, 0], [0, 0]], (0, 0))])
def test_smith_z_examples(rows, diag):
    assert smith_z(IntMatrix.from_lists(rows)).diagonal == diag


# --- kernels, Hermite, membership -----------------------------------------------

@given(matrices())
def test_kernels_are_saturated(a):
    right = integer_right_kernel(a)
    for v in right:
        assert not any(a.apply(v))
    n = a.ncols
    rank = smith_z(a).rank
    assert len(right) == n - rank
    if right:
        # saturated: the kernel lattice has all elementary divisors 1
        k = IntMatrix.from_lists(right, n)
        assert all(d == 1 for d in smith_z(k).diagonal)
    left = integer_left_kernel(a)
    for u in left:
        assert not any((IntMatrix.from_lists([u], a.nrows) @ a).rows[0])


@given(matrices(bound=4))
def test_hermite_spans_same_lattice(a):
    rows = [list(r) for r in a.rows]
    h = hermite_rows(rows)
    for r in rows:
        assert solve_integer(IntMatrix.from_lists(h, a.ncols).transpose(), r) is not None if h else not any(r)
    for r in h:
        assert solve_integer(a.transpose(), r) is not None


def test_solve_integer():
    a = IntMatrix.from_lists([[2, 0], [0, 3]])
    assert solve_integer(a, [4, 9]) == [2, 3]
    assert solve_integer(a, [1, 0]) is None


# --- characteristic polynomial -----------------------------------------------

def _sympy_charpoly(h: IntMatrix):
    """det(h - t Id), from sympy's det(t Id - h)."""
    n = h.nrows
    cp = sympy.Matrix(h.tolist()).charpoly(x).as_expr()
    return sympy.Poly(sympy.expand((-1) ** n * cp), x)


def _to_sympy(p: Poly):
    return sympy.Poly(list(reversed([int(c) for c in p.coeffs])), x)


@given(square())
def test_charpoly_oracle(h):
    assert _to_sympy(charpoly(h)) == _sympy_charpoly(h)


def test_charpoly_examples():
    assert charpoly(IntMatrix.from_lists([[0, -1], [1, 2]])) == (T - 1) ** 2
    assert charpoly(IntMatrix.from_lists([[0, 0, 1], [1, 0, 1], [0, 1, -1]])) == (1 - T) * (T + 1) ** 2
    for r in range(1, 5):
        assert charpoly(IntMatrix.identity(r)) == (1 - T) ** r


@given(square(max_n=4, bound=4), st.integers(0, 10 ** 6))
def test_charpoly_conjugation_invariant(h, seed):
    W = random_unimodular(random.Random(seed), h.nrows)
    assert charpoly(W @ h @ W.inverse()) == charpoly(h)


# --- companion -----------------------------------------------------------------

def test_companion_examples():
    assert companion(T ** 2 - T + 1).tolist() == [[0, -1], [1, 1]]
    assert companion(T - 1).tolist() == [[1]]
    assert charpoly(companion(T ** 2 - T + 1)) == T ** 2 - T + 1
    with pytest.raises(NotMonic):
        companion(T.scale(2) + 1)


@pytest.mark.parametrize("n", range(1, 31))
def test_companion_charpoly(n):
    psi = cyclotomic(n)
    assert charpoly(companion(psi)) == psi.scale((-1) ** psi.degree)


# --- Smith over Q[t] ---------------------------------------------------------------

polys = st.lists(st.integers(-3, 3), min_size=0, max_size=3).map(lambda c: Poly(tuple(c)))


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_smith_qt_transforms(m, n, data):
    a = PolyMatrix(tuple(tuple(data.draw(polys) for _ in range(n)) for _ in range(m)), n)
    s = smith_qt(a, track=True)
    assert s.U @ a @ s.V == s.D
    f = s.invariant_factors
    assert all(p.leading == 1 for p in f)
    assert all((q % p).is_zero() for p, q in zip(f, f[1:]))
    assert s.free_rank == n - len(f)


def test_smith_qt_examples():
    s = smith_qt(PolyMatrix((((T - 1) ** 2,),)))
    assert s.invariant_factors == ((T - 1) ** 2,) and s.free_rank == 0
    s = smith_qt(PolyMatrix(((T - 1, Poly(())), (Poly(()), T - 1))))
    assert s.invariant_factors == (T - 1, T - 1)
    s = smith_qt(PolyMatrix(((T - 1, T + 1),)))
    assert s.invariant_factors == (Poly((1,)),) and s.free_rank == 1


# --- abelian groups and kernels -------------------------------------------------------

def test_abelian_from_relations_examples():
    g = abelian_from_relations(2, IntMatrix.from_lists([[2, 0]]))
    assert g.free_rank == 1 and g.torsion == (2,)
    g = abelian_from_relations(1, IntMatrix.zeros(0, 1))
    assert g.free_rank == 1 and g.torsion == ()
    g = abelian_from_relations(3, IntMatrix.from_lists([[1, -1, 0], [0, 1, -1]]))
    assert str(g) == "Z"


def _in_span(vectors, relations, v):
    gens = list(vectors) + [list(r) for r in relations.rows]
    if not gens:
        return not any(v)
    return solve_integer(IntMatrix.from_lists(gens, len(v)).transpose(), v) is not None


def test_kernel_examples():
    z2 = abelian_from_relations(2, IntMatrix.zeros(0, 2))
    k = kernel_of_abelian_map(z2, IntMatrix.from_lists([[1], [1]]))
    assert len(k) == 1 and k[0] in ([1, -1], [-1, 1])
    zt = abelian_from_relations(2, IntMatrix.from_lists([[0, 2]]))
    k = kernel_of_abelian_map(zt, IntMatrix.from_lists([[1], [0]]))
    assert _in_span(k, zt.relations, [0, 1])
    k = kernel_of_abelian_map(z2, IntMatrix.from_lists([[2, 0], [0, 0]]))
    assert _in_span(k, z2.relations, [0, 1]) and not _in_span(k, z2.relations, [1, 0])
    with pytest.raises(MapIllDefined):
        kernel_of_abelian_map(zt, IntMatrix.from_lists([[0], [1]]))


@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_kernel_saturation(n, c, data):
    rels = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), max_size=3))
    rel = IntMatrix.from_lists(rels, n) if rels else IntMatrix.zeros(0, n)
    dom = abelian_from_relations(n, rel)
    # columns of the map are combinations of vectors killed by the relations
    allowed = integer_right_kernel(rel) if rels else [[int(i == j) for j in range(n)] for i in range(n)]
    cols = []
    for _ in range(c):
        coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=len(allowed), max_size=len(allowed)))
        cols.append([sum(a * v[i] for a, v in zip(coeffs, allowed)) for i in range(n)])
    fm = IntMatrix.from_lists([[col[i] for col in cols] for i in range(n)], c)
    ker = kernel_of_abelian_map(dom, fm)
    for v in ker:
        assert not any((IntMatrix.from_lists([v], n) @ fm).rows[0])
    # every small vector mapping to zero lies in span(kernel) + relations
    for _ in range(10):
        v = data.draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n))
        if not any((IntMatrix.from_lists([v], n) @ fm).rows[0]):
            assert _in_span(ker, dom.relations, v)
