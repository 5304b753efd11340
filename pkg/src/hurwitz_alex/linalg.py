"""Exact linear algebra over Z and Q[t].

Matrices are immutable row-major tuples at the API boundary; the elimination
routines work on lists of lists internally.  Both Smith normal form routines
use the same deterministic pivot rule: smallest Euclidean size, ties broken
by lowest row, then lowest column.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import MapIllDefined, NotMonic
from .poly import Poly


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple
    ncols: int = -1

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        ncols = self.ncols
        if ncols < 0:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(tuple((0,) * n for _ in range(m)), n)

    @classmethod
    def from_lists(cls, rows, ncols: int = -1) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols)
                               for r in self.rows), other.ncols)

    def apply(self, v: Sequence[int]) -> tuple:
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def __neg__(self):
        return IntMatrix(tuple(tuple(-x for x in r) for r in self.rows), self.ncols)

    def __sub__(self, other):
        return IntMatrix(tuple(tuple(a - b for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)), self.ncols)

    def __add__(self, other):
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)), self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def det(self) -> int:
        return det_int(self.tolist())

    def inverse(self) -> "IntMatrix":
        """Inverse over Z; raises if the matrix is not unimodular."""
        inv = rational_inverse(self.tolist())
        out = []
        for r in inv:
            if any(x.denominator != 1 for x in r):
                raise ArithmeticError("matrix is not invertible over Z")
            out.append([x.numerator for x in r])
        return IntMatrix.from_lists(out, self.nrows)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"


def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
    if not cols:
        return IntMatrix.zeros(nrows, 0)
    return IntMatrix(tuple(zip(*cols)), len(cols))


def det_int(a: list) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_inverse(a: list) -> list:
    n = len(a)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise ArithmeticError("singular matrix")
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [r[n:] for r in m]


def rational_solve(a: list, b: Sequence) -> list:
    """Solve a square non-singular system exactly over Q."""
    inv = rational_inverse(a)
    return [sum(r[j] * b[j] for j in range(len(b))) for r in inv]


# ---------------------------------------------------------------------------
# Smith normal form over Z


@dataclass(frozen=True)
class SmithDecompositionZ:
    """``U @ A @ V == D`` with U, V unimodular and a divisibility chain on D."""

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for i in range(min(self.D.shape)) if self.D[i, i])

    @property
    def diagonal(self) -> tuple:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))


def _ident(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_z(a: IntMatrix) -> SmithDecompositionZ:
    m, n = a.shape
    A = a.tolist()
    U = _ident(m)
    V = _ident(n)

    def row_add(dst, src, q):  # row_dst += q * row_src
        if q:
            rs, rd = A[src], A[dst]
            for j in range(n):
                if rs[j]:
                    rd[j] += q * rs[j]
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]

    def col_add(dst, src, q):  # col_dst += q * col_src
        if q:
            for r in A:
                if r[src]:
                    r[dst] += q * r[src]
            for r in V:
                if r[src]:
                    r[dst] += q * r[src]

    def row_swap(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
            # any remainder smaller than the pivot becomes the new pivot
            cand = None
            for i in range(t + 1, m):
                if A[i][t] and (cand is None or abs(A[i][t]) < cand[0]):
                    cand = (abs(A[i][t]), "r", i)
            for j in range(t + 1, n):
                if A[t][j] and (cand is None or abs(A[t][j]) < cand[0]):
                    cand = (abs(A[t][j]), "c", j)
            if cand is not None:
                if cand[1] == "r":
                    row_swap(t, cand[2])
                else:
                    col_swap(t, cand[2])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecompositionZ(IntMatrix.from_lists(U, m), IntMatrix.from_lists(V, n),
                               IntMatrix.from_lists(A, n))


def integer_left_kernel(a: IntMatrix) -> list:
    """Basis (as row vectors) of {u in Z^m : u A = 0}; saturated."""
    s = smith_z(a)
    return [list(s.U.rows[i]) for i in range(s.rank, a.nrows)]


def integer_right_kernel(a: IntMatrix) -> list:
    """Basis (as vectors) of {x in Z^n : A x = 0}; saturated."""
    s = smith_z(a)
    return [list(s.V.column(j)) for j in range(s.rank, a.ncols)]


def hermite_rows(vectors: Sequence[Sequence[int]], reverse: bool = False) -> list:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Pivots are positive and entries above a pivot are reduced into
    [0, pivot).  With ``reverse=True`` coordinates are processed from the
    last one backwards.  Zero rows are dropped.
    """
    rows = [list(v)[::-1] if reverse else list(v) for v in vectors]
    if not rows:
        return []
    n = len(rows[0])
    out = []
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(rows[i][c]), i))
            rows[r], rows[piv] = rows[piv], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < len(rows) and rows[r][c]:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            r += 1
    out = [row for row in rows[:r] if any(row)]
    return [row[::-1] for row in out] if reverse else out


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Optional[list]:
    """Some x in Z^n with A x = b, or None when no integral solution exists."""
    s = smith_z(a)
    ub = s.U.apply(b)
    r = s.rank
    y = [0] * a.ncols
    for i in range(len(ub)):
        if i < r:
            d = s.D[i, i]
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
        elif ub[i]:
            return None
    return list(s.V.apply(y))


# ---------------------------------------------------------------------------
# characteristic polynomial and companion matrices


def charpoly(h: IntMatrix) -> Poly:
    """det(h - t Id) by fraction-free elimination over Z[t]."""
    if not h.is_square():
        raise ValueError("charpoly needs a square matrix")
    n = h.nrows
    if n == 0:
        return Poly((1,))
    m = [[Poly((h[i, j], -1)) if i == j else Poly((h[i, j],)) for j in range(n)]
         for i in range(n)]
    sign = 1
    prev = Poly((1,))
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly(())
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = m[i][j] * pk - mik * m[k][j]
                m[i][j] = num.exact_div(prev)
        prev = pk
    out = m[n - 1][n - 1]
    return -out if sign < 0 else out


def companion(psi: Poly) -> IntMatrix:
    """Matrix of multiplication by t on Z[t]/(psi) in the basis 1, t, ..., t^(d-1)."""
    if not psi.is_integral() or psi.leading != 1:
        raise NotMonic(f"{psi} is not monic")
    d = psi.degree
    if d < 1:
        raise ValueError("companion matrix needs degree >= 1")
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -psi.coeffs[i]
    return IntMatrix.from_lists(rows, d)


# ---------------------------------------------------------------------------
# Smith normal form over Q[t]


@dataclass(frozen=True)
class PolyMatrix:
    rows: tuple
    ncols: int = -1

    def __post_init__(self):
        rows = tuple(tuple(x if isinstance(x, Poly) else Poly((x,)) for x in r) for r in self.rows)
        ncols = self.ncols if self.ncols >= 0 else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self):
        return len(self.rows)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = Poly(())
                for k, x in enumerate(r):
                    if not x.is_zero():
                        y = other.rows[k][j]
                        if not y.is_zero():
                            acc = acc + x * y
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(tuple(out), other.ncols)


@dataclass(frozen=True)
class SmithDecompositionQt:
    """Cokernel of a relation matrix (rows = relations, columns = generators)
    over Q[t]: ``(+) Q[t]/(d_i) (+) Q[t]^free_rank``.

    ``invariant_factors`` lists the monic non-zero diagonal entries (units
    included) along the divisibility chain.  ``U``/``V`` are recorded only
    when requested, with ``U @ A @ V == D``.
    """

    invariant_factors: tuple
    free_rank: int
    U: Optional[PolyMatrix] = None
    V: Optional[PolyMatrix] = None
    D: Optional[PolyMatrix] = None


def _qt_size(p: Poly):
    return (p.degree, abs(Fraction(p.leading)))


def smith_qt(a: PolyMatrix, track: bool = False) -> SmithDecompositionQt:
    m, n = a.nrows, a.ncols
    A = [list(r) for r in a.rows]
    zero, one = Poly(()), Poly((1,))
    U = [[one if i == j else zero for j in range(m)] for i in range(m)] if track else None
    V = [[one if i == j else zero for j in range(n)] for i in range(n)] if track else None

    def row_add(dst, src, q):
        rs, rd = A[src], A[dst]
        for j in range(n):
            if not rs[j].is_zero():
                rd[j] = rd[j] + q * rs[j]
        if track:
            us, ud = U[src], U[dst]
            for j in range(m):
                if not us[j].is_zero():
                    ud[j] = ud[j] + q * us[j]

    def col_add(dst, src, q):
        for r in A:
            if not r[src].is_zero():
                r[dst] = r[dst] + q * r[src]
        if track:
            for r in V:
                if not r[src].is_zero():
                    r[dst] = r[dst] + q * r[src]

    def row_swap(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if track:
                U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            if track:
                for r in V:
                    r[i], r[j] = r[j], r[i]

    def row_scale(i, c):
        A[i] = [x.scale(c) for x in A[i]]
        if track:
            U[i] = [x.scale(c) for x in U[i]]

    rank = 0
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if not x.is_zero():
                    key = _qt_size(x)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            p = A[t][t]
            if p.degree == 0:
                # unit pivot: clear row and column in one pass
                inv = Fraction(1) / Fraction(p.coeffs[0])
                for i in range(t + 1, m):
                    if not A[i][t].is_zero():
                        row_add(i, t, -A[i][t].scale(inv))
                for j in range(t + 1, n):
                    if not A[t][j].is_zero():
                        col_add(j, t, -A[t][j].scale(inv))
                break
            for i in range(t + 1, m):
                if not A[i][t].is_zero():
                    row_add(i, t, -(A[i][t].divmod(p)[0]))
            for j in range(t + 1, n):
                if not A[t][j].is_zero():
                    col_add(j, t, -(A[t][j].divmod(p)[0]))
            cand = None
            for i in range(t + 1, m):
                if not A[i][t].is_zero():
                    key = _qt_size(A[i][t])
                    if cand is None or key < cand[0]:
                        cand = (key, "r", i)
            for j in range(t + 1, n):
                if not A[t][j].is_zero():
                    key = _qt_size(A[t][j])
                    if cand is None or key < cand[0]:
                        cand = (key, "c", j)
            if cand is not None:
                if cand[1] == "r":
                    row_swap(t, cand[2])
                else:
                    col_swap(t, cand[2])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not A[i][j].is_zero() and not (A[i][j] % p).is_zero():
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, one)
        lead = A[t][t].leading
        if lead != 1:
            row_scale(t, Fraction(1) / Fraction(lead))
        rank += 1
    factors = tuple(A[i][i] for i in range(rank))
    if track:
        return SmithDecompositionQt(factors, n - rank,
                                    PolyMatrix(tuple(map(tuple, U)), m),
                                    PolyMatrix(tuple(map(tuple, V)), n),
                                    PolyMatrix(tuple(map(tuple, A)), n))
    return SmithDecompositionQt(factors, n - rank)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbelianGroup:
    """Cokernel of ``relations`` (rows) on ``num_generators`` generators.

    ``basis`` is the unimodular V of the Smith decomposition: original
    coordinates x become x @ V, in which the relation lattice is spanned by
    d_i e_i.  ``basis_inverse`` row i is generator i of the new basis
    written in the original generators.
    """

    num_generators: int
    relations: IntMatrix
    free_rank: int
    torsion: tuple
    rank: int
    diagonal: tuple
    basis: IntMatrix
    basis_inverse: IntMatrix

    def invariants(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def free_coordinates(self, x: Sequence[int]) -> tuple:
        y = IntMatrix((tuple(x),), self.num_generators) @ self.basis if self.num_generators else IntMatrix(((),), 0)
        return y.rows[0][self.rank:]

    def is_zero_element(self, x: Sequence[int]) -> bool:
        """Membership of x in the relation lattice."""
        if not self.num_generators:
            return True
        y = (IntMatrix((tuple(x),), self.num_generators) @ self.basis).rows[0]
        for i, c in enumerate(y):
            if i < self.rank:
                if c % self.diagonal[i]:
                    return False
            elif c:
                return False
        return True


def abelian_from_relations(generators: int, relations: IntMatrix) -> FgAbelianGroup:
    if relations.nrows and relations.ncols != generators:
        raise ValueError("relation matrix must have one column per generator")
    if not relations.nrows:
        relations = IntMatrix.zeros(0, generators)
    s = smith_z(relations)
    diag = s.diagonal[:s.rank]
    return FgAbelianGroup(
        num_generators=generators,
        relations=relations,
        free_rank=generators - s.rank,
        torsion=tuple(d for d in diag if d > 1),
        rank=s.rank,
        diagonal=diag,
        basis=s.V,
        basis_inverse=s.V.inverse() if generators else s.V,
    )


def kernel_of_abelian_map(domain: FgAbelianGroup, map_on_generators: IntMatrix) -> list:
    """Generators of the kernel of a map from ``domain`` to a free group Z^c.

    Row i of ``map_on_generators`` is the image of generator i.  Returned
    vectors are written in the domain's original generators and include
    every torsion generator of the domain.
    """
    n = domain.num_generators
    if map_on_generators.nrows != n:
        raise ValueError("map needs one row per domain generator")
    if domain.relations.nrows:
        img = domain.relations @ map_on_generators
        if any(any(r) for r in img.rows):
            raise MapIllDefined("a defining relation has non-zero image")
    if n == 0:
        return []
    f_new = domain.basis_inverse @ map_on_generators
    out = []
    for i in range(domain.rank):
        if domain.diagonal[i] > 1:
            out.append(list(domain.basis_inverse.rows[i]))
    free_idx = list(range(domain.rank, n))
    if free_idx:
        sub = IntMatrix(tuple(f_new.rows[i] for i in free_idx), map_on_generators.ncols)
        for u in integer_left_kernel(sub):
            vec = [0] * n
            for coeff, i in zip(u, free_idx):
                if coeff:
                    row = domain.basis_inverse.rows[i]
                    for j in range(n):
                        vec[j] += coeff * row[j]
            out.append(vec)
    return out
