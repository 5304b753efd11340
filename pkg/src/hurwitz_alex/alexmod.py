"""Reidemeister–Schreier rewriting, Alexander polynomials and the integral
module N/N' when x1 has a central power.

Schreier representatives are the powers x1^s.  The kernel N of the map to
Z sending every generator to 1 is generated by a_{s,j} = x1^s x_j x1^-(s+1),
and in N/N' we write a_{s,j} = t^s b_j, j = 2..m, so that conjugation by
x1 is multiplication by t.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .cgroup import CPresentation, Word, irreducible_components, is_hurwitz_presentation
from .errors import NoCentralPower, VerificationFailed
from .linalg import (FgAbelianGroup, IntMatrix, PolyMatrix, abelian_from_relations, companion,
                     smith_qt, solve_integer)
from .poly import T, LaurentPoly, Poly, is_squarefree, product


class ZeroPolynomial:
    """Δ ≡ 0: (N/N') ⊗ C is infinite dimensional.  Kept apart from the
    integer zero polynomial on purpose."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZeroPolynomial()"

    def __str__(self):
        return "0"

    def __eq__(self, other):
        return isinstance(other, ZeroPolynomial)

    def __hash__(self):
        return hash("ZeroPolynomial")


ZERO = ZeroPolynomial()

# a module row: column index j (2..m) -> Laurent coefficient
Row = dict


def rs_row(relator: Word) -> Row:
    """Abelianized rewriting of one relator at shift 0."""
    acc: dict = {}
    s = 0
    for g, e in relator:
        if e > 0:
            if g != 1:
                acc.setdefault(g, {}).setdefault(s, 0)
                acc[g][s] += 1
            s += 1
        else:
            s -= 1
            if g != 1:
                acc.setdefault(g, {}).setdefault(s, 0)
                acc[g][s] -= 1
    out = {}
    for g in sorted(acc):
        lp = LaurentPoly.from_terms(acc[g])
        if not lp.is_zero():
            out[g] = lp
    return out


@dataclass(frozen=True)
class AlexanderModule:
    num_generators: int
    rows: tuple  # one Row per relation, in relation order

    @property
    def num_module_generators(self) -> int:
        return self.num_generators - 1

    def dense_rows(self) -> list:
        zero = LaurentPoly()
        return [[r.get(j, zero) for j in range(2, self.num_generators + 1)] for r in self.rows]


def rs_rewrite(g: CPresentation) -> AlexanderModule:
    return AlexanderModule(g.num_generators, tuple(rs_row(r.relator()) for r in g.relations))


def _shift_row(row: Row, k: int) -> Row:
    return {j: c.shift(k) for j, c in row.items()}


def shift_equivariance_check(g: CPresentation, shifts: int) -> bool:
    """Rewrite x1^k r x1^-k directly and compare with t^k times the row."""
    base = rs_rewrite(g).rows
    for k in range(1, shifts + 1):
        pre, post = Word.gen(1, k), Word.gen(1, -k)
        for rel, row in zip(g.relations, base):
            if rs_row(pre * rel.relator() * post) != _shift_row(row, k):
                return False
    return True


# ---------------------------------------------------------------------------
# unit-pivot elimination over Z[t, 1/t]


def _row_add(dst: Row, src: Row, q: LaurentPoly) -> None:
    for j, c in src.items():
        v = dst.get(j)
        v = q * c if v is None else v + q * c
        if v.is_zero():
            dst.pop(j, None)
        else:
            dst[j] = v


def eliminate_units(rows: list, columns: list):
    """Gaussian elimination on entries ±t^a.  Returns the surviving rows and
    the columns that were not eliminated, plus the pivot log."""
    rows = [dict(r) for r in rows if r]
    cols = list(columns)
    log = []
    while True:
        best = None
        for i, r in enumerate(rows):
            for j in sorted(r):
                if r[j].is_unit():
                    key = (len(r), sum(len(c.coeffs) for c in r.values()), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
                    break
        if best is None:
            break
        _, i, j = best
        piv = rows.pop(i)
        inv = piv[j].unit_inverse()
        for r in rows:
            c = r.get(j)
            if c is not None:
                _row_add(r, piv, -(c * inv))
        rows = [r for r in rows if r]
        cols.remove(j)
        log.append((j, piv))
    return rows, cols, log


def _to_polymatrix(rows: list, cols: list) -> PolyMatrix:
    out = []
    for r in rows:
        low = min(c.low for c in r.values())
        out.append(tuple(r[j].shift(-low).to_poly() if j in r else Poly(()) for j in cols))
    return PolyMatrix(tuple(out), len(cols))


@dataclass(frozen=True)
class AlexanderResult:
    delta: object  # Poly or ZERO
    invariant_factors: tuple
    components: int
    free_rank: int = 0
    module_generators: int = 0
    reduced_shape: tuple = (0, 0)
    hurwitz_syntactic: bool = False

    @property
    def is_zero(self) -> bool:
        return self.delta == ZERO

    @property
    def semisimple(self) -> Optional[bool]:
        """Property (iv) over Q: every invariant factor squarefree."""
        if self.is_zero:
            return None
        return all(is_squarefree(f) for f in self.invariant_factors)


def alexander_polynomial(g: CPresentation) -> AlexanderResult:
    mod = rs_rewrite(g)
    m = g.num_generators
    rows, cols, _ = eliminate_units(list(mod.rows), list(range(2, m + 1)))
    comps = irreducible_components(g)
    hz = is_hurwitz_presentation(g)
    shape = (len(rows), len(cols))
    if not cols:
        return AlexanderResult(Poly((1,)), (), comps, 0, m - 1, shape, hz)
    if not rows:
        return AlexanderResult(ZERO, (), comps, len(cols), m - 1, shape, hz)
    snf = smith_qt(_to_polymatrix(rows, cols))
    if snf.free_rank:
        return AlexanderResult(ZERO, (), comps, snf.free_rank, m - 1, shape, hz)
    factors = tuple(f.strip_t().monic() for f in snf.invariant_factors)
    factors = tuple(f for f in factors if f.degree)
    deg = sum(f.degree for f in factors)
    delta = product(factors)
    if deg % 2:
        delta = -delta
    if hz and (not delta.is_integral() or abs(delta.coefficient(0)) != 1):
        raise VerificationFailed(f"Hurwitz presentation with Delta(0) != +-1: {delta}")
    return AlexanderResult(delta, factors, comps, 0, m - 1, shape, hz)


# ---------------------------------------------------------------------------
# the shift action on a cyclic module


@dataclass(frozen=True)
class CyclicShift:
    """N/N' ≅ Z[t]/(f) generated by b_column; matrix of h in the basis
    t^i b_column = a_{i,column}, i < deg f."""

    column: int
    annihilator: Poly
    matrix: IntMatrix


def cyclic_shift_matrix(g: CPresentation) -> Optional[CyclicShift]:
    """Matrix of h when unit elimination leaves one generator b_j and the
    surviving relations generate the ideal of a monic f with f(0) = ±1.
    Returns None otherwise."""
    rows, cols, _ = eliminate_units(list(rs_rewrite(g).rows), list(range(2, g.num_generators + 1)))
    if len(cols) != 1 or not rows:
        return None
    j = cols[0]
    polys = [r[j].shift(-r[j].low).to_poly() for r in rows]
    polys.sort(key=lambda p: (p.degree, [abs(c) for c in reversed(p.coeffs)]))
    f = polys[0]
    if f.leading not in (1, -1) or abs(f.coefficient(0)) != 1:
        return None
    if f.leading == -1:
        f = -f
    if any(not (p % f).is_zero() for p in polys[1:]):
        return None
    return CyclicShift(j, f, companion(f))


# ---------------------------------------------------------------------------
# central powers of x1 and the integral module


def _syntactic_central_power(g: CPresentation, k: int) -> bool:
    need = set(range(2, g.num_generators + 1))
    for r in g.relations:
        if r.left == r.right and r.conjugator in (Word.gen(1, k), Word.gen(1, -k)):
            need.discard(r.left)
    return not need


def _binomial_periods(m: int, rows, cols) -> dict:
    """Weighted union-find on rows with unit-monomial coefficients.

    b_i = eps * t^gamma * b_parent.  A closed cycle b = eps t^g b gives the
    period g (eps = 1) or 2g (eps = -1).  Node 1 stands for the zero
    element (b_1 ≡ 0).  Returns column -> period (0 = none found).
    """
    parent = list(range(m + 1))
    weight = [(1, 0)] * (m + 1)
    period = [0] * (m + 1)
    period[1] = 1

    def find(a):
        if parent[a] == a:
            return a, (1, 0)
        root, (e2, g2) = find(parent[a])
        e1, g1 = weight[a]
        parent[a] = root
        weight[a] = (e1 * e2, g1 + g2)
        return root, weight[a]

    def link(i, j, eps, gamma):  # b_i = eps t^gamma b_j
        ri, (ei, gi) = find(i)
        rj, (ej, gj) = find(j)
        # b_i = ei t^gi b_ri ; b_j = ej t^gj b_rj
        # => b_ri = ei*eps*ej t^(gamma+gj-gi) b_rj
        e = ei * eps * ej
        gm = gamma + gj - gi
        if ri == rj:
            if gm or e == -1:
                p = abs(gm) if e == 1 else 2 * abs(gm)
                if p:
                    period[ri] = gcd(period[ri], p)
            return
        if ri == 1:
            ri, rj, e, gm = rj, ri, e, -gm
        parent[ri] = rj
        weight[ri] = (e, gm)
        period[rj] = gcd(period[rj], period[ri])

    for r in rows:
        items = list(r.items())
        if len(items) == 1:
            j, c = items[0]
            terms = sorted(c.terms().items())
            if len(terms) == 1:
                link(j, 1, 1, 0)
            elif len(terms) == 2 and all(abs(v) == 1 for _, v in terms):
                (a, ca), (b, cb) = terms
                link(j, j, -ca * cb, b - a)
        elif len(items) == 2:
            (i, ci), (j, cj) = items
            if ci.is_unit() and cj.is_unit():
                (a, ca), = ci.terms().items()
                (b, cb), = cj.terms().items()
                # ca t^a b_i + cb t^b b_j = 0
                link(i, j, -ca * cb, b - a)
    out = {}
    for j in cols:
        root, _ = find(j)
        out[j] = period[root]
    return out


def _window_membership(rows, cols, k: int, window: int) -> bool:
    """(t^k - 1) e_j in the Z-span of t^s * row, |s| <= window, for all j."""
    shifted = []
    for r in rows:
        for s in range(-window, window + 1):
            shifted.append({(j, e + s): v for j, c in r.items() for e, v in c.terms().items()})
    coords = sorted({key for d in shifted for key in d} |
                    {(j, e) for j in cols for e in (0, k)})
    index = {c: n for n, c in enumerate(coords)}
    if not shifted:
        return False
    mat = IntMatrix.from_lists([[d.get(c, 0) for d in shifted] for c in coords], len(shifted))
    for j in cols:
        target = [0] * len(coords)
        target[index[(j, k)]] += 1
        target[index[(j, 0)]] -= 1
        if solve_integer(mat, target) is None:
            return False
    return True


# largest Z-system (rows x shifted relations) the window tier will attempt
WINDOW_MAX_ENTRIES = 20_000


def central_power_certificate(g: CPresentation, k: int) -> str:
    """Name of the first check that shows (t^k - 1) b_j = 0 for all j.

    Tiers: 'syntactic' (relations x1^-k x_i x1^k = x_i), 'trivial' (no
    generator survives unit elimination), 'binomial'
    (periods from two-term rows), 'window' (bounded Z-linear search).
    The last two run on the unit-eliminated rows as well, which present
    the same module on fewer generators.
    """
    if k < 1:
        raise NoCentralPower("central power must be positive")
    if g.num_generators == 1 or _syntactic_central_power(g, k):
        return "syntactic"
    rows = [r for r in rs_rewrite(g).rows if r]
    per = _binomial_periods(g.num_generators, rows, range(2, g.num_generators + 1))
    if all(p and k % p == 0 for p in per.values()):
        return "binomial"
    rows, cols, _ = eliminate_units(rows, list(range(2, g.num_generators + 1)))
    rows = [r for r in rows if r]
    if not cols:
        return "trivial"  # the module vanishes
    per = _binomial_periods(g.num_generators, rows, cols)
    if all(p and k % p == 0 for p in per.values()):
        return "binomial"
    # necessary: t^k - 1 kills the module over Q[t]
    if rows:
        snf = smith_qt(_to_polymatrix(rows, cols))
        if snf.free_rank or any(not ((T ** k - 1) % f).is_zero() for f in snf.invariant_factors):
            raise NoCentralPower(f"t^{k} - 1 does not annihilate N/N' over Q[t]")
    span = max((c.high - c.low for r in rows for c in r.values()), default=0)
    terms = sum(len(c.terms()) for r in rows for c in r.values())
    for window in (k + span, 2 * (k + span)):
        if terms * (2 * window + 1) * len(cols) > WINDOW_MAX_ENTRIES:
            break
        if _window_membership(rows, cols, k, window):
            return "window"
    raise NoCentralPower(f"no certificate that x1^{k} acts trivially on N/N'")


@dataclass(frozen=True)
class IntegralModule:
    group: FgAbelianGroup
    action: IntMatrix  # free part, column convention
    k: int
    certificate: str
    labels: tuple = field(default=())  # (l, j) for each generator index

    @property
    def free_rank(self) -> int:
        return self.group.free_rank


def integral_module(g: CPresentation, k: int, reduce: bool = False) -> IntegralModule:
    """Z-presentation of N/N' on a_{l,j}, 0 <= l < k.

    With ``reduce`` the Λ-rows first go through unit-pivot elimination and
    only the surviving columns j are instantiated; they still generate
    N/N', so kernels computed there lift to words in the same a_{l,j}.
    """
    cert = central_power_certificate(g, k)
    m = g.num_generators
    rows = [r for r in rs_rewrite(g).rows if r]
    cols = list(range(2, m + 1))
    if reduce:
        rows, cols, _ = eliminate_units(rows, cols)
    pos = {j: n for n, j in enumerate(cols)}
    ncols = len(cols)
    n = k * ncols
    labels = tuple((l, j) for l in range(k) for j in cols)

    def idx(l, j):
        return (l % k) * ncols + pos[j]

    rels = []
    for r in rows:
        for s in range(k):
            v = [0] * n
            for j, c in r.items():
                for e, coef in c.terms().items():
                    v[idx(e + s, j)] += coef
            if any(v):
                rels.append(v)
    grp = abelian_from_relations(n, IntMatrix.from_lists(rels, n))
    if n == 0:
        return IntegralModule(grp, IntMatrix.zeros(0, 0), k, cert, labels)
    perm = [[0] * n for _ in range(n)]
    for l in range(k):
        for j in cols:
            perm[idx(l, j)][idx(l + 1, j)] = 1
    A = grp.basis_inverse @ IntMatrix.from_lists(perm, n) @ grp.basis
    r = grp.rank
    free = IntMatrix.from_lists([row[r:] for row in A.rows[r:]], n - r)
    return IntegralModule(grp, free.transpose(), k, cert, labels)
