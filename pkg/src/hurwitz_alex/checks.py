"""Realizability predicates, the property list (i)-(vii) for Alexander
polynomials of Hurwitz C-groups, and the root count r_{n,≠1}."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import NotRootsOfUnity
from .poly import (T, Poly, eval_at_one, factor_cyclotomic, is_squarefree, normalize_sign,
                   prime_power_base, totient, _divisors)

# exact quotient for (v) only when the dividend stays this small
EXACT_QUOTIENT_MAX_DEGREE = 2000


@dataclass(frozen=True)
class PropertyVerdict:
    holds: Optional[bool]  # None = not applicable
    witness: str = ""

    @property
    def label(self) -> str:
        return {True: "pass", False: "FAIL", None: "n/a"}[self.holds]


@dataclass(frozen=True)
class PropertyReport:
    delta: Poly
    degree_d: int
    components_n: int
    verdicts: dict = field(default_factory=dict)  # "i".."vii" -> PropertyVerdict

    def failures(self) -> list:
        return [k for k, v in self.verdicts.items() if v.holds is False]

    @property
    def all_pass(self) -> bool:
        return not self.failures()

    def __getitem__(self, key: str) -> PropertyVerdict:
        return self.verdicts[key]


def _property_v(delta: Poly, d: int, fact) -> PropertyVerdict:
    """Δ divides (t-1)(t^d-1)^(d-2)."""
    if d == 1:
        # (t-1)(t-1)^-1 = 1
        ok = delta.degree == 0 and abs(delta.coeffs[0]) == 1
        return PropertyVerdict(ok, "target is 1 for d = 1")
    total = 1 + d * (d - 2)
    if total <= EXACT_QUOTIENT_MAX_DEGREE:
        target = (T - 1) * (T ** d - 1) ** (d - 2)
        q, r = target.divmod(delta)
        ok = r.is_zero() and q.is_integral()
        return PropertyVerdict(ok, f"quotient {q}" if ok else f"remainder {r}")
    # compare cyclotomic multiplicities: Φ_m appears (d-2)·[m|d] + [m=1] times
    over = []
    for m, mult in fact.factors.items():
        allowed = (d - 2 if d % m == 0 else 0) + (1 if m == 1 else 0)
        if mult > allowed:
            over.append(f"Phi{m}^{mult} > {allowed}")
    ok = not over and abs(fact.unit_sign) == 1 and fact.t_power == 0
    return PropertyVerdict(ok, "cyclotomic multiplicities within bounds" if ok else "; ".join(over))


def grku_properties(delta: Poly, degree_d: int, components_n: int,
                    invariant_factors: Optional[Sequence[Poly]] = None) -> PropertyReport:
    if delta.is_zero():
        raise ValueError("properties need a non-zero Alexander polynomial")
    if degree_d < 1 or components_n < 1:
        raise ValueError("degree and component count must be positive")
    v = {}
    integral = delta.is_integral()
    v["i"] = PropertyVerdict(integral, "integer coefficients" if integral else "non-integer coefficient")
    c0 = delta.coefficient(0)
    v["ii"] = PropertyVerdict(c0 in (1, -1), f"Delta(0) = {c0}")
    fact = factor_cyclotomic(delta)  # raises NotRootsOfUnity
    bad = [m for m in fact.factors if degree_d % m]
    v["iii"] = PropertyVerdict(not bad and fact.t_power == 0,
                               f"indices {sorted(fact.factors)} divide {degree_d}" if not bad
                               else f"Phi{bad[0]} has roots that are not {degree_d}-th roots of unity")
    if invariant_factors is None:
        v["iv"] = PropertyVerdict(None, "invariant factors not supplied")
    else:
        sq = all(is_squarefree(f) for f in invariant_factors if f.degree)
        v["iv"] = PropertyVerdict(sq, "invariant factors squarefree" if sq else "repeated root in an invariant factor")
    v["v"] = _property_v(delta, degree_d, fact)
    m1 = fact.multiplicity(1)
    v["vi"] = PropertyVerdict(m1 == components_n - 1,
                              f"mult of t=1 is {m1}, n - 1 = {components_n - 1}")
    if components_n == 1:
        val = eval_at_one(delta)
        ok = val == 1 and delta.degree % 2 == 0
        v["vii"] = PropertyVerdict(ok, f"Delta(1) = {val}, deg = {delta.degree}")
    else:
        v["vii"] = PropertyVerdict(None, "only for irreducible groups")
    return PropertyReport(delta, degree_d, components_n, v)


# ---------------------------------------------------------------------------
# realizability

VERDICTS = ("RealizableThm1", "RealizableThm2", "RealizableThm3", "NotRealizablePM",
            "NotRealizableThm1", "NotRootsOfUnityNecessary", "UnknownConjecture")


@dataclass(frozen=True)
class Classification:
    verdict: str
    reason: str
    data: dict = field(default_factory=dict)

    @property
    def realizable(self) -> Optional[bool]:
        if self.verdict.startswith("Realizable"):
            return True
        if self.verdict.startswith("NotRealizable") or self.verdict == "NotRootsOfUnityNecessary":
            return False
        return None


def classify_realizability(p: Poly) -> Classification:
    if p.is_zero():
        raise ValueError("classify_realizability needs a non-zero polynomial")
    if not p.is_integral():
        return Classification("NotRootsOfUnityNecessary", f"{p} is not in Z[t]")
    q, _, _ = normalize_sign(p)
    try:
        fact = factor_cyclotomic(q)
    except NotRootsOfUnity as exc:
        return Classification("NotRootsOfUnityNecessary",
                              f"property (iii) fails: {exc}", {"normalized": str(q)})
    data = {"normalized": str(q), "factorization": str(fact),
            "mult1": fact.multiplicity(1)}
    if eval_at_one(q) == 1:
        return Classification("RealizableThm1", "roots of unity and P(1) = 1 (Theorem 1)", data)
    n = fact.multiplicity(1)
    if set(fact.factors) <= {1, 2}:
        k = fact.multiplicity(2)
        data.update(n=n, k=k)
        if n >= k:
            return Classification("RealizableThm3", f"(t-1)^{n}(t+1)^{k} with n >= k (Theorem 3)", data)
        return Classification("NotRealizablePM",
                              f"(t-1)^{n}(t+1)^{k} with n = {n} < k = {k}: excluded by Theorem 3", data)
    over = {m: c for m, c in fact.factors.items()
            if m > 1 and prime_power_base(m) is not None and c > n}
    data["condition_ii_violations"] = {str(m): c for m, c in sorted(over.items())}
    if not over:
        return Classification("RealizableThm2", "condition (ii) holds (Theorem 2)", data)
    if n == 0:
        return Classification(
            "NotRealizableThm1",
            "t = 1 is not a root, so the group would be irreducible, but P(1) != 1 (Theorem 1)", data)
    worst = min(over)
    data["condition_ii_violated"] = True
    return Classification(
        "UnknownConjecture",
        f"condition (ii) fails (mult Phi{worst} = {over[worst]} > {n}); no theorem decides this case",
        data)


def betti_statistic(delta: Poly, n: int) -> int:
    """Roots of Δ, with multiplicity, that are n-th roots of unity other than 1."""
    if n < 1:
        raise ValueError("n must be positive")
    fact = factor_cyclotomic(delta)
    return sum(fact.multiplicity(m) * totient(m) for m in _divisors(n) if m > 1)
