"""Exact univariate polynomials over Z and Q, Laurent polynomials, cyclotomics.

A polynomial is stored as a dense tuple of coefficients, constant term first.
Coefficients are Python ints, or Fractions when a value is genuinely
rational (a Fraction with denominator 1 is always stored as an int), so
integral polynomials never pay for rational arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import NotRootsOfUnity

Coeff = Union[int, Fraction]


def _norm(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    raise TypeError(f"unsupported coefficient {c!r}")


def _trim(coeffs) -> tuple:
    out = [_norm(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    """Polynomial in ``t`` with exact coefficients, ascending degree.

    >>> Poly((1, -1, 1))
    Poly('t^2 - t + 1')
    >>> Poly(()).is_zero()
    True
    """

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    # construction -----------------------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, c, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative exponent")
        return cls((0,) * n + (c,))

    @classmethod
    def t(cls) -> "Poly":
        return cls((0, 1))

    # basic queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        """Degree, or ``None`` for the zero polynomial (never -1)."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def leading(self) -> Coeff:
        return self.coeffs[-1] if self.coeffs else 0

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def valuation(self) -> int:
        """Exponent of the largest power of t dividing self (zero poly -> 0)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def coefficient(self, n: int) -> Coeff:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _norm(acc) if isinstance(acc, (int, Fraction)) else acc

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> "Poly":
        """Multiply by t^n (n >= 0), or divide when -n <= valuation."""
        if n >= 0:
            return Poly((0,) * n + self.coeffs)
        if self.coeffs and self.valuation() < -n:
            raise ValueError("shift would leave a negative exponent")
        return Poly(self.coeffs[-n:])

    def scale(self, c) -> "Poly":
        return Poly(tuple(x * c for x in self.coeffs))

    def divmod(self, other: "Poly"):
        """Division with remainder over Q. Stays in Z[t] when the divisor's
        leading coefficient is +-1 and both inputs are integral."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        unit = lead in (1, -1)
        if len(rem) - 1 < db:
            return Poly(()), self
        quot = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            if unit:
                q = c * lead
            else:
                q = Fraction(c) / lead
            quot[i - db] = q
            for j, bc in enumerate(other.coeffs):
                rem[i - db + j] -= q * bc
        return Poly(quot), Poly(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def content(self) -> Coeff:
        """Positive gcd of the coefficients (rational content for Q[t])."""
        if not self.coeffs:
            return 0
        nums = [Fraction(c).numerator for c in self.coeffs]
        dens = [Fraction(c).denominator for c in self.coeffs]
        g = 0
        for n in nums:
            g = math.gcd(g, n)
        lcm = 1
        for d in dens:
            lcm = lcm * d // math.gcd(lcm, d)
        return _norm(Fraction(g, lcm))

    def primitive(self) -> "Poly":
        """Integral primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        p = self.scale(Fraction(1) / Fraction(c))
        return -p if p.leading < 0 else p

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading
        if lead == 1:
            return self
        return self.scale(Fraction(1) / Fraction(lead))

    def strip_t(self) -> "Poly":
        """Remove the largest power of t dividing self."""
        v = self.valuation()
        return Poly(self.coeffs[v:]) if v else self

    def to_string(self, var: str = "t") -> str:
        return format_poly(self, var)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly('{format_poly(self)}')"


def format_poly(p: Poly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = mono
            elif isinstance(mag, Fraction):
                body = f"{mag}*{mono}"
            else:
                body = f"{mag}{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


T = Poly.t()
ONE = Poly((1,))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_squarefree(p: Poly) -> bool:
    """True iff gcd(p, p') is constant, computed over Q."""
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree test")
    if p.is_constant():
        return True
    return poly_gcd(p, p.derivative()).is_constant()


def eval_at_one(p: Poly):
    return sum(p.coeffs) if p.coeffs else 0


def normalize_sign(p: Poly):
    """Strip a monomial unit so the result has non-zero constant term and
    leading coefficient sign (-1)^degree.

    Returns ``(normalized, t_power, sign)`` with ``p == sign * t^t_power * normalized``.
    """
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    v = p.valuation()
    q = p.strip_t()
    want = -1 if q.degree % 2 else 1
    sign = 1 if (q.leading > 0) == (want > 0) else -1
    return (q if sign == 1 else -q), v, sign


# ---------------------------------------------------------------------------
# Laurent polynomials


@dataclass(frozen=True)
class LaurentPoly:
    """Element of Z[t, 1/t]: ``coeffs[i]`` is the coefficient of t^(low + i)."""

    low: int = 0
    coeffs: tuple = ()

    def __post_init__(self):
        cs = list(self.coeffs)
        low = self.low
        while cs and cs[-1] == 0:
            cs.pop()
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        cs = cs[start:]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "low", low + start if cs else 0)

    @classmethod
    def monomial(cls, c: int, e: int) -> "LaurentPoly":
        return cls(e, (c,))

    @classmethod
    def from_terms(cls, terms: dict) -> "LaurentPoly":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(e, 0) for e in range(lo, hi + 1)))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def terms(self) -> dict:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def is_unit(self) -> bool:
        """Units of Z[t, 1/t] are exactly +-t^a."""
        return len(self.coeffs) == 1 and self.coeffs[0] in (1, -1)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - lo + i] += c
        return LaurentPoly(lo, tuple(out))

    def __neg__(self):
        return LaurentPoly(self.low, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.low, tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return LaurentPoly(self.low + other.low, tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k; coefficients are untouched."""
        return LaurentPoly(self.low + k, self.coeffs) if self.coeffs else self

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ArithmeticError(f"{self} is not a unit of Z[t, 1/t]")
        return LaurentPoly(-self.low, self.coeffs)

    def to_poly(self) -> Poly:
        """The polynomial t^(-low) * self (non-zero constant term)."""
        return Poly(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(self.high, self.low - 1, -1):
            c = self.coeffs[e - self.low]
            if not c:
                continue
            mag = abs(c)
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            body = mono if (mag == 1 and mono) else (f"{mag}{mono}" if mono else str(mag))
            sign = "-" if c < 0 else "+"
            parts.append(body if not parts and sign == "+" else
                         (f"-{body}" if not parts else f" {sign} {body}"))
        return "".join(parts)


# ---------------------------------------------------------------------------
# cyclotomic machinery


def _divisors(n: int) -> list:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factorize_int(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in factorize_int(n):
        result -= result // p
    return result


def prime_power_base(n: int):
    """The prime p if n = p^m with m >= 1, else None."""
    if n < 2:
        return None
    f = factorize_int(n)
    return next(iter(f)) if len(f) == 1 else None


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """Phi_n, by exact division of t^n - 1 by Phi_d for the proper divisors d."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = Poly.monomial(1, n) - 1
    for d in _divisors(n)[:-1]:
        p = p.exact_div(cyclotomic(d))
    return p


@lru_cache(maxsize=8)
def _totient_table(limit: int) -> tuple:
    phi = list(range(limit + 1))
    for i in range(2, limit + 1):
        if phi[i] == i:
            for j in range(i, limit + 1, i):
                phi[j] -= phi[j] // i
    return tuple(phi)


def _index_bound(degree: int) -> int:
    # phi(n) >= sqrt(n/2) for every n, so phi(n) <= D forces n <= 2 D^2.
    return max(2, 2 * degree * degree)


@dataclass(frozen=True)
class CyclotomicFactorization:
    """``unit_sign * t^t_power * prod Phi_n^factors[n]``."""

    factors: dict = field(default_factory=dict)
    unit_sign: int = 1
    t_power: int = 0

    def multiplicity(self, n: int) -> int:
        return self.factors.get(n, 0)

    def reconstruct(self) -> Poly:
        p = Poly.monomial(self.unit_sign, self.t_power)
        for n, m in sorted(self.factors.items()):
            p = p * cyclotomic(n) ** m
        return p

    def degree(self) -> int:
        return sum(totient(n) * m for n, m in self.factors.items())

    def __str__(self):
        if not self.factors:
            return str(self.unit_sign)
        body = "*".join(f"Phi{n}" + (f"^{m}" if m > 1 else "")
                        for n, m in sorted(self.factors.items()))
        pre = "-" if self.unit_sign < 0 else ""
        tp = f"t^{self.t_power}*" if self.t_power else ""
        return pre + tp + body


def factor_cyclotomic(p: Poly) -> CyclotomicFactorization:
    """Write p as +-t^a times a product of cyclotomic polynomials.

    Candidates Phi_n are scanned for ascending n; the scan stops at the
    first index whose totient bound exceeds the remaining degree.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no cyclotomic factorization")
    if not p.is_integral():
        raise NotRootsOfUnity(f"{p} has non-integral coefficients")
    a = p.valuation()
    rest = p.strip_t()
    factors = {}
    deg = rest.degree
    if deg:
        phi = _totient_table(_index_bound(deg))
        n = 1
        while rest.degree and n <= _index_bound(rest.degree):
            if phi[n] <= rest.degree:
                c = cyclotomic(n)
                q, r = rest.divmod(c)
                while r.is_zero():
                    factors[n] = factors.get(n, 0) + 1
                    rest = q
                    if not rest.degree:
                        break
                    q, r = rest.divmod(c)
            n += 1
    if rest.degree:
        raise NotRootsOfUnity(f"{p} has a factor {rest} that is not a product of cyclotomic polynomials")
    if rest.coeffs[0] not in (1, -1):
        raise NotRootsOfUnity(f"{p} has non-unit content {rest.coeffs[0]}")
    return CyclotomicFactorization(dict(sorted(factors.items())), rest.coeffs[0], a)


def root_order(p: Poly) -> int:
    """Smallest k with every root of p a k-th root of unity."""
    f = factor_cyclotomic(p)
    k = 1
    for n in f.factors:
        k = k * n // math.gcd(k, n)
    return k


def prime_power_multiplicity_bound(p: Poly):
    """Multiplicities of Phi_q for prime powers q > 1, and of Phi_1 separately."""
    f = factor_cyclotomic(p)
    pp = {n: m for n, m in f.factors.items() if prime_power_base(n) is not None}
    return pp, f.multiplicity(1)


def poly_from_factorization(factors: dict, sign: int = 1) -> Poly:
    p = Poly((sign,))
    for n, m in sorted(factors.items()):
        p = p * cyclotomic(n) ** m
    return p


def product(polys: Iterable[Poly]) -> Poly:
    out = ONE
    for p in polys:
        out = out * p
    return out
