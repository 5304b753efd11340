"""Integer involutions: the splitting (M, h) = n1 A+ ⊕ n2 A- ⊕ n3 A+-.

A+ is the identity on Z, A- is negation on Z, A+- swaps the coordinates
of Z^2.  Matrices act on column vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotInvolution, VerificationFailed
from .linalg import (FgAbelianGroup, IntMatrix, abelian_from_relations, charpoly, from_columns,
                     hermite_rows, integer_right_kernel)
from .poly import T, Poly


@dataclass(frozen=True)
class InvolutionDecomposition:
    n1: int
    n2: int
    n3: int
    basis: IntMatrix  # columns: M+ part, M- part, then pairs (a_i, h a_i)

    @property
    def counts(self) -> tuple:
        return (self.n1, self.n2, self.n3)

    @property
    def rank(self) -> int:
        return self.n1 + self.n2 + 2 * self.n3


def canonical_block(n1: int, n2: int, n3: int) -> IntMatrix:
    n = n1 + n2 + 2 * n3
    rows = [[0] * n for _ in range(n)]
    for i in range(n1):
        rows[i][i] = 1
    for i in range(n1, n1 + n2):
        rows[i][i] = -1
    for p in range(n3):
        a = n1 + n2 + 2 * p
        rows[a][a + 1] = rows[a + 1][a] = 1
    return IntMatrix.from_lists(rows, n)


# ---------------------------------------------------------------------------
# arithmetic mod 2


def _rref_mod2(rows: list):
    """Reduced row echelon form over F_2.  Returns (rows, pivot columns)."""
    rows = [[x & 1 for x in r] for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _nullspace_mod2(a: list, ncols: int) -> list:
    """Basis of {x : a x = 0 mod 2}, one vector per free column, ascending."""
    red, piv = _rref_mod2(a)
    out = []
    for f in range(ncols):
        if f in piv:
            continue
        x = [0] * ncols
        x[f] = 1
        for row, p in zip(red, piv):
            if row[f]:
                x[p] = 1
        out.append(x)
    return out


def _unimodular_lift(s: list) -> list:
    """Integer matrix with determinant ±1 congruent to s mod 2 (s invertible mod 2)."""
    n = len(s)
    work = [[x & 1 for x in r] for r in s]
    ops = []
    for c in range(n):
        p = next(i for i in range(c, n) if work[i][c])
        if p != c:
            work[c], work[p] = work[p], work[c]
            ops.append(("swap", c, p))
        for i in range(n):
            if i != c and work[i][c]:
                work[i] = [x ^ y for x, y in zip(work[i], work[c])]
                ops.append(("add", i, c))
    # ops_t ... ops_1 s = I mod 2, and each op is an involution mod 2,
    # so s = ops_1 ... ops_t (mod 2); evaluate that product over Z.
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for op, i, j in reversed(ops):
        if op == "swap":
            out[i], out[j] = out[j], out[i]
        else:
            out[i] = [x + y for x, y in zip(out[i], out[j])]
    return out


# ---------------------------------------------------------------------------


def _saturated_kernel(a: IntMatrix) -> list:
    # Hermite form pivoting from the last coordinate, listed by ascending pivot
    return hermite_rows(integer_right_kernel(a), reverse=True)[::-1]


def _fix_parities(alpha: list, cols: list) -> tuple:
    """Adjust the entries of alpha (rows, restricted to ``cols``) by even
    amounts so that they extend to a basis.  Returns the pivot columns."""
    sub = [[row[c] for c in cols] for row in alpha]
    red, piv = _rref_mod2(sub)
    if len(piv) != len(alpha):
        raise VerificationFailed("coset representatives are dependent mod 2")
    # pick the pivot columns of the row space, lift the square block
    block = [[row[p] for p in piv] for row in sub]
    lifted = _unimodular_lift(block)
    for i, row in enumerate(alpha):
        for c_idx, p in enumerate(piv):
            row[cols[p]] = lifted[i][c_idx]
    return [cols[p] for p in piv]


def decompose(h: IntMatrix) -> InvolutionDecomposition:
    if not h.is_square():
        raise NotInvolution("matrix is not square")
    n = h.nrows
    if h @ h != IntMatrix.identity(n):
        raise NotInvolution("h^2 != Id")
    if n == 0:
        return InvolutionDecomposition(0, 0, 0, IntMatrix.zeros(0, 0))
    I = IntMatrix.identity(n)
    plus = _saturated_kernel(h - I)
    minus = _saturated_kernel(h + I)
    r1, r2 = len(plus), len(minus)
    if r1 + r2 != n:
        raise VerificationFailed("eigenlattices do not span M ⊗ Q")
    E = plus + minus  # rows are basis vectors; coordinates 0..r1-1 for M+, r1.. for M-
    Et = [[E[j][i] for j in range(n)] for i in range(n)]  # columns = basis vectors
    alphas = _nullspace_mod2(Et, n)
    n3 = len(alphas)
    # round 1 on the M- coordinates, round 2 on the M+ coordinates
    minus_cols = _fix_parities(alphas, list(range(r1, n))) if n3 else []
    plus_cols = _fix_parities(alphas, list(range(r1))) if n3 else []
    reps = []
    for al in alphas:
        v = [sum(al[j] * E[j][i] for j in range(n)) for i in range(n)]
        if any(x % 2 for x in v):
            raise VerificationFailed("coset representative is not integral")
        reps.append([x // 2 for x in v])
    cols = [plus[j] for j in range(r1) if j not in plus_cols]
    cols += [minus[j - r1] for j in range(r1, n) if j not in minus_cols]
    for a in reps:
        cols.append(a)
        cols.append(list(h.apply(a)))
    U = from_columns(cols, n)
    out = InvolutionDecomposition(r1 - n3, r2 - n3, n3, U)
    if abs(U.det()) != 1:
        raise VerificationFailed("assembled basis is not unimodular")
    if U.inverse() @ h @ U != canonical_block(*out.counts):
        raise VerificationFailed("basis does not conjugate h to the block form")
    return out


def two_rank_of_quotient(h: IntMatrix) -> int:
    """Number of Z/2 factors of M / (M+ ⊕ M-), from an independent SNF."""
    n = h.nrows
    I = IntMatrix.identity(n)
    E = _saturated_kernel(h - I) + _saturated_kernel(h + I)
    grp = abelian_from_relations(n, IntMatrix.from_lists(E, n))
    return sum(1 for d in grp.torsion if d % 2 == 0)


@dataclass(frozen=True)
class SemidirectStats:
    abelianization: FgAbelianGroup
    charpoly_t_minus_h: Poly  # det(t Id - h)

    def invariants(self) -> dict:
        return self.abelianization.invariants()


def semidirect_stats(n1: int, n2: int, n3: int) -> SemidirectStats:
    """Abelianization and det(t Id - h) of M ⋊ <h> for the block involution.

    G/G' = Z ⊕ M/(h - 1)M, computed from the relations e = h e.
    """
    if min(n1, n2, n3) < 0:
        raise ValueError("counts must be non-negative")
    h = canonical_block(n1, n2, n3)
    n = h.nrows
    rels = [[h[i, j] - (1 if i == j else 0) for i in range(n)] + [0] for j in range(n)]
    grp = abelian_from_relations(n + 1, IntMatrix.from_lists(rels, n + 1))
    cp = charpoly(h)
    if n % 2:
        cp = -cp
    expected = (T - 1) ** (n1 + n3) * (T + 1) ** (n2 + n3)
    if cp != expected:
        raise VerificationFailed(f"charpoly {cp} != {expected}")
    return SemidirectStats(grp, cp)


# ---------------------------------------------------------------------------
# random test inputs


def random_unimodular(rng, n: int, bound: int = 3, steps: Optional[int] = None) -> IntMatrix:
    """Product of random elementary operations, kept within |entry| <= bound."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 4 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        s = rng.choice((-1, 1))
        new = [a + s * b for a, b in zip(rows[i], rows[j])]
        if max(abs(x) for x in new) <= bound:
            rows[i] = new
        if rng.random() < 0.3:
            rows[i], rows[j] = rows[j], rows[i]
    if n and rng.random() < 0.5:
        rows[0] = [-x for x in rows[0]]
    return IntMatrix.from_lists(rows, n)


def random_involution(rng, max_rank: int = 10, bound: int = 3):
    """(h, counts) with h = W B W^-1 for a random block B of rank <= max_rank."""
    while True:
        n1, n2, n3 = rng.randint(0, max_rank), rng.randint(0, max_rank), rng.randint(0, max_rank // 2)
        if 0 < n1 + n2 + 2 * n3 <= max_rank:
            break
    B = canonical_block(n1, n2, n3)
    W = random_unimodular(rng, B.nrows, bound)
    return W @ B @ W.inverse(), (n1, n2, n3)
