"""Constructive realization of target polynomials as Alexander polynomials
of Hurwitz C-groups, with roundtrip certificates.

Every target and every computed Δ is stored with leading coefficient
(-1)^degree (the det(h - t Id) orientation).  Inputs differing by a unit
±t^a are normalized on entry and the unit is recorded.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .alexmod import alexander_polynomial, integral_module
from .cgroup import (EMPTY, ConjRelation, CPresentation, HurwitzDatum, Word, abelian, commutes,
                     datum_product, g2, irreducible_components)
from .errors import (GeneratorCeilingExceeded, NotRealizable, NotRootsOfUnity, PreconditionFailed,
                     VerificationFailed)
from .linalg import IntMatrix, companion, kernel_of_abelian_map
from .poly import (T, Poly, cyclotomic, eval_at_one, factor_cyclotomic, is_squarefree,
                   normalize_sign, prime_power_base, product, root_order)

DEFAULT_MAX_GENERATORS = 4000


def det_convention(p: Poly) -> Poly:
    """The unit multiple of p with leading coefficient (-1)^deg p."""
    return normalize_sign(p)[0]


def monic_form(p: Poly) -> Poly:
    q = p.strip_t()
    return q if q.leading > 0 else -q


# ---------------------------------------------------------------------------
# the semidirect product M ⋊ F_1


class SemidirectModel:
    """G_Ψ = M ⋊ <x0> with M = Z[t]/(Ψ).

    An element (v, e) stands for μ(v)·x0^e, where v is a polynomial of
    degree < d.  Conjugation x0^-1 μ(v) x0 is μ(t v), so
    (v1, e1)(v2, e2) = (v1 + t^-e1 v2, e1 + e2), and t^-1 is t^(k-1)
    because Ψ divides t^k - 1.
    """

    def __init__(self, psi: Poly, k: Optional[int] = None):
        psi = monic_form(psi)
        if psi.leading != 1 or not psi.is_integral():
            raise PreconditionFailed(f"{psi} is not monic over Z", "monic")
        if abs(psi.coefficient(0)) != 1:
            raise PreconditionFailed(f"h0 is not invertible over Z: Psi(0) = {psi(0)}", "unit constant")
        self.psi = psi
        self.d = psi.degree
        self.k = k if k is not None else root_order(psi)
        if not ((T ** self.k - 1) % psi).is_zero():
            raise PreconditionFailed(f"{psi} does not divide t^{self.k} - 1", "period")
        self.h0 = companion(psi)

    # elements ------------------------------------------------------------
    def _red(self, p: Poly) -> Poly:
        return p % self.psi

    def shift(self, v: Poly, n: int) -> Poly:
        """t^n v in M (n may be negative)."""
        return self._red(v.shift(n % self.k))

    def vector(self, v: Poly) -> tuple:
        return tuple(int(v.coefficient(i)) for i in range(self.d))

    def element(self, v, e: int = 0):
        return (self._red(v if isinstance(v, Poly) else Poly(tuple(v))), e)

    @property
    def identity(self):
        return (Poly(()), 0)

    @property
    def x0(self):
        return (Poly(()), 1)

    def t_elem(self, i: int):
        """t_i = t^i as an element of M."""
        return (self._red(Poly.monomial(1, i)), 0)

    def x_poly(self, p: Poly):
        """x_P = x0 · μ(P)."""
        return self.mul(self.x0, self.element(p))

    def x_t(self, i: int):
        return self.x_poly(Poly.monomial(1, i))

    def mul(self, a, b):
        (v1, e1), (v2, e2) = a, b
        return (self._red(v1 + self.shift(v2, -e1)), e1 + e2)

    def inv(self, a):
        v, e = a
        return (self._red(-self.shift(v, e)), -e)

    def power(self, a, n: int):
        base = a if n >= 0 else self.inv(a)
        out = self.identity
        for _ in range(abs(n)):
            out = self.mul(out, base)
        return out

    def evaluate(self, word: Word, images: dict):
        out = self.identity
        for g, e in word.letters:
            out = self.mul(out, self.power(images[g], e))
        return out


# ---------------------------------------------------------------------------
# certificates


@dataclass
class LayerRecord:
    kind: str  # "theorem1", "layer", "g2", "abelian"
    psi: Poly
    k: int = 0
    d: int = 0
    P: Optional[Poly] = None
    w10: Optional[Word] = None
    kernel_words: tuple = ()
    generators: int = 0
    torsion: tuple = ()
    central_certificate: str = ""


@dataclass
class RealizationCertificate:
    target: Poly
    presentation: CPresentation
    computed_delta: Poly
    central_word: Word
    mode: str
    input_unit: tuple = (0, 1)  # (t_power, sign) removed from the input
    layers: list = field(default_factory=list)

    @property
    def hurwitz_degree(self) -> int:
        return len(self.central_word)

    @property
    def components(self) -> int:
        return irreducible_components(self.presentation)

    @property
    def verified(self) -> bool:
        return self.computed_delta == self.target

    @property
    def datum(self) -> HurwitzDatum:
        return HurwitzDatum(self.presentation, self.central_word)


def _verify(target: Poly, datum: HurwitzDatum, mode: str, layers: list,
            unit=(0, 1)) -> RealizationCertificate:
    res = alexander_polynomial(datum.presentation)
    if res.is_zero or res.delta != target:
        raise VerificationFailed(f"{mode}: computed Delta {res.delta} != target {target}")
    return RealizationCertificate(target, datum.presentation, res.delta, datum.central_word,
                                  mode, unit, layers)


def _check_ceiling(count: int, limit: Optional[int], what: str) -> None:
    if limit is not None and count > limit:
        raise GeneratorCeilingExceeded(
            f"{what} needs {count} generators, above the ceiling of {limit}", "max-generators")


def _normalize_input(p: Poly):
    if p.is_zero():
        raise PreconditionFailed("the zero polynomial is not realizable", "nonzero")
    if not p.is_integral():
        raise PreconditionFailed(f"{p} has non-integer coefficients", "integral")
    q, tp, sign = normalize_sign(p)
    return q, (tp, sign)


def _cyclotomic_or_refuse(p: Poly):
    try:
        return factor_cyclotomic(p)
    except NotRootsOfUnity as exc:
        raise PreconditionFailed(f"not all roots of {p} are roots of unity", "roots of unity") from exc


# ---------------------------------------------------------------------------
# the shared kernel-and-centralize step


def _a_word(l: int, j: int) -> Word:
    return Word.gen(1, l) * Word.gen(j) * Word.gen(1, -(l + 1))


def _centralize(pre: CPresentation, model: SemidirectModel, k: int, record: LayerRecord) -> CPresentation:
    """Compute K = ker(f': N/N' -> M) and make lifts of its generators central."""
    m = pre.num_generators
    im = integral_module(pre, k, reduce=True)
    images = {1: model.x0}
    for i in range(2, m + 1):
        images[i] = model.x_t(i - 2)
    fmap = []
    for l, j in im.labels:
        v, e = model.evaluate(_a_word(l, j), images)
        assert e == 0
        fmap.append(list(model.vector(v)))
    kernel = kernel_of_abelian_map(im.group, IntMatrix.from_lists(fmap, model.d))
    words = []
    for vec in kernel:
        w = EMPTY
        for c, (l, j) in zip(vec, im.labels):
            if c:
                w = w * _a_word(l, j) ** c
        if not w.is_identity():
            words.append(w)
    record.kernel_words = tuple(words)
    record.torsion = im.group.torsion
    record.central_certificate = im.certificate
    extra = [commutes(j, w) for w in words for j in range(1, m + 1)]
    return pre.with_relations(extra)


def _power_word(m: int, k: int) -> Word:
    return Word(tuple((i, k) for i in range(1, m + 1)))


# ---------------------------------------------------------------------------
# Theorem 1


def irreducible_seed(d: int, k: int, w10: Word) -> CPresentation:
    rels = [ConjRelation(i + 1, i, Word.gen(1)) for i in range(2, d + 1)]
    rels += [commutes(i, Word.gen(1, k)) for i in range(2, d + 2)]
    rels.append(ConjRelation(2, 1, w10))
    return CPresentation(d + 1, tuple(rels), name="irreducible_seed")


def conjugator_word(P: Poly) -> Word:
    """w_{1,0} representing μ(P) = ∏ t_i^{c_i}, with t_i = x1^-1 x_{i+2}."""
    w = EMPTY
    for i, c in enumerate(P.coeffs):
        c = int(c)
        if c > 0:
            w = w * (Word.gen(1, -1) * Word.gen(i + 2)) ** c
        elif c < 0:
            w = w * (Word.gen(i + 2, -1) * Word.gen(1)) ** (-c)
    return w


def _theorem1_datum(psi_monic: Poly, max_generators: Optional[int]):
    d = psi_monic.degree
    k = root_order(psi_monic)
    _check_ceiling(d + 1, max_generators, "irreducible seed presentation")
    P = (psi_monic - 1).exact_div(T - 1)
    w10 = conjugator_word(P)
    model = SemidirectModel(psi_monic, k)
    record = LayerRecord("theorem1", det_convention(psi_monic), k, d, P, w10, generators=d + 1)
    g = _centralize(irreducible_seed(d, k, w10), model, k, record)
    g = CPresentation(g.num_generators, g.relations, name=f"thm1[{psi_monic}]")
    return HurwitzDatum.close(g, _power_word(d + 1, k)), record


def _unit_datum() -> HurwitzDatum:
    return HurwitzDatum.of_hurwitz(abelian(1))


def realize_irreducible_squarefree(psi: Poly, max_generators: Optional[int] = DEFAULT_MAX_GENERATORS
                                   ) -> RealizationCertificate:
    target, unit = _normalize_input(psi)
    if target.degree == 0:
        return _verify(target, _unit_datum(), "theorem1", [LayerRecord("abelian", target, generators=1)], unit)
    _cyclotomic_or_refuse(target)
    if not is_squarefree(target):
        raise PreconditionFailed(f"{target} has multiple roots", "squarefree")
    if eval_at_one(target) != 1:
        raise PreconditionFailed(f"Psi(1) = {eval_at_one(target)} != 1", "Psi(1) = 1")
    datum, record = _theorem1_datum(monic_form(target), max_generators)
    return _verify(target, datum, "theorem1", [record], unit)


def squarefree_slices(fact) -> list:
    """Layer i collects every Φ_n of multiplicity >= i."""
    top = max(fact.factors.values(), default=0)
    return [sorted(n for n, m in fact.factors.items() if m >= i) for i in range(1, top + 1)]


def _fold(data: Sequence[HurwitzDatum]) -> HurwitzDatum:
    out = data[0]
    for d in data[1:]:
        out = datum_product(out, d)
    return out


def realize_irreducible(p: Poly, max_generators: Optional[int] = DEFAULT_MAX_GENERATORS
                        ) -> RealizationCertificate:
    target, unit = _normalize_input(p)
    if target.degree == 0:
        return realize_irreducible_squarefree(target)
    fact = _cyclotomic_or_refuse(target)
    if eval_at_one(target) != 1:
        raise PreconditionFailed(f"P(1) = {eval_at_one(target)} != 1", "P(1) = 1")
    data, records = [], []
    for idx in squarefree_slices(fact):
        layer = product(cyclotomic(n) for n in idx)
        assert eval_at_one(layer) == 1
        datum, rec = _theorem1_datum(layer, max_generators)
        data.append(datum)
        records.append(rec)
    _check_ceiling(sum(d.presentation.num_generators for d in data), max_generators, "product")
    return _verify(target, _fold(data), "theorem1", records, unit)


# ---------------------------------------------------------------------------
# Theorem 2


def layer_seed(k: int) -> CPresentation:
    rels = [ConjRelation(i + 1, i, Word.gen(1)) for i in range(2, k + 1)]
    rels.append(ConjRelation(2, k + 1, Word.gen(1)))
    rels += [commutes(j, Word.gen(i, k)) for i in range(2, k + 1) for j in range(1, k + 2) if j != i]
    return CPresentation(k + 1, tuple(rels), name="layer_seed")


def _layer_datum(psi_monic: Poly, max_generators: Optional[int]):
    k = root_order(psi_monic)
    _check_ceiling(k + 1, max_generators, f"layer seed presentation for {psi_monic}")
    model = SemidirectModel(psi_monic, k)
    record = LayerRecord("layer", det_convention(psi_monic), k, psi_monic.degree, generators=k + 1)
    g = _centralize(layer_seed(k), model, k, record)
    g = CPresentation(g.num_generators, g.relations, name=f"layer[{psi_monic}]")
    return HurwitzDatum.close(g, _power_word(k + 1, k)), record


def realize_reducible_layer(psi: Poly, max_generators: Optional[int] = DEFAULT_MAX_GENERATORS
                            ) -> RealizationCertificate:
    target, unit = _normalize_input(psi)
    if target.degree == 0 or not (target % (T - 1)).is_zero():
        raise PreconditionFailed(f"t - 1 does not divide {target}", "(t-1) | Psi")
    _cyclotomic_or_refuse(target)
    if not is_squarefree(target):
        raise PreconditionFailed(f"{target} has multiple roots", "squarefree")
    datum, record = _layer_datum(monic_form(target), max_generators)
    return _verify(target, datum, "theorem2-layer", [record], unit)


def condition_ii(fact) -> list:
    """Prime-power indices q whose multiplicity exceeds that of Φ_1."""
    n = fact.multiplicity(1)
    return [q for q, m in sorted(fact.factors.items())
            if q > 1 and prime_power_base(q) is not None and m > n]


def theorem2_layers(fact):
    """Deterministic split into n reducible layers and a residual.

    Prime-power factors are dealt round-robin over the n layers (each
    layer starts as Φ_1); by condition (ii) no layer receives the same
    factor twice.  Everything else forms the residual with value 1 at 1.
    """
    n = fact.multiplicity(1)
    layers = [[1] for _ in range(n)]
    residual: dict = {}
    turn = 0
    for q, m in sorted(fact.factors.items()):
        if q == 1:
            continue
        if prime_power_base(q) is not None:
            for _ in range(m):
                layers[turn % n].append(q)
                turn += 1
        else:
            residual[q] = m
    return layers, residual


def realize_theorem2(p: Poly, max_generators: Optional[int] = DEFAULT_MAX_GENERATORS
                     ) -> RealizationCertificate:
    target, unit = _normalize_input(p)
    if target.degree == 0:
        return realize_irreducible_squarefree(target)
    fact = _cyclotomic_or_refuse(target)
    bad = condition_ii(fact)
    if bad:
        raise PreconditionFailed(
            f"condition (ii) fails: multiplicity of Phi_{bad[0]} is {fact.multiplicity(bad[0])} "
            f"> multiplicity {fact.multiplicity(1)} of t = 1", "condition (ii)")
    if fact.multiplicity(1) == 0:
        cert = realize_irreducible(target, max_generators)
        cert.mode = "theorem2"
        return cert
    layers, residual = theorem2_layers(fact)
    data, records = [], []
    for idx in layers:
        datum, rec = _layer_datum(product(cyclotomic(n) for n in idx), max_generators)
        data.append(datum)
        records.append(rec)
    if residual:
        res = product(cyclotomic(n) ** m for n, m in sorted(residual.items()))
        for idx in squarefree_slices(factor_cyclotomic(res)):
            datum, rec = _theorem1_datum(product(cyclotomic(n) for n in idx), max_generators)
            data.append(datum)
            records.append(rec)
    _check_ceiling(sum(d.presentation.num_generators for d in data), max_generators, "product")
    return _verify(target, _fold(data), "theorem2", records, unit)


# ---------------------------------------------------------------------------
# Theorem 3


def pm_target(n: int, k: int) -> Poly:
    sign = -1 if (n + k) % 2 else 1
    return ((T - 1) ** n * (T + 1) ** k).scale(sign)


def realize_pm(n: int, k: int, max_generators: Optional[int] = DEFAULT_MAX_GENERATORS
               ) -> RealizationCertificate:
    if n < 0 or k < 0:
        raise PreconditionFailed("n and k must be non-negative", "nonnegative")
    if n < k:
        raise NotRealizable(
            f"(-1)^(n+k)(t-1)^n(t+1)^k with n={n} < k={k} is not the Alexander polynomial "
            "of any Hurwitz C-group (Theorem 3 requires n >= k)", "Theorem 3: n >= k")
    _check_ceiling(4 * k + (n + 1 - k), max_generators, f"G(2)^{k} ◇ Z^{n + 1 - k}")
    data = [HurwitzDatum.of_hurwitz(g2()) for _ in range(k)]
    data.append(HurwitzDatum.of_hurwitz(abelian(n + 1 - k)))
    records = [LayerRecord("g2", T * T - 1, generators=4) for _ in range(k)]
    records.append(LayerRecord("abelian", pm_target(n - k, 0), generators=n + 1 - k))
    return _verify(pm_target(n, k), _fold(data), "theorem3", records)


def realize_auto(p: Poly, mode: str = "auto", max_generators: Optional[int] = DEFAULT_MAX_GENERATORS
                 ) -> RealizationCertificate:
    """Dispatch on the classification (mode 'auto') or force a theorem."""
    from .checks import classify_realizability

    _normalize_input(p)  # zero and non-integral inputs are refused up front
    if mode == "thm1":
        return realize_irreducible(p, max_generators)
    if mode == "thm2":
        return realize_theorem2(p, max_generators)
    if mode == "thm3":
        n, k, unit = _pm_exponents(p)
        cert = realize_pm(n, k, max_generators)
        cert.input_unit = unit
        return cert
    if mode != "auto":
        raise ValueError(f"unknown mode {mode!r}")
    verdict = classify_realizability(p)
    if verdict.verdict == "RealizableThm1":
        return realize_irreducible(p, max_generators)
    if verdict.verdict == "RealizableThm3":
        n, k, unit = _pm_exponents(p)
        cert = realize_pm(n, k, max_generators)
        cert.input_unit = unit
        return cert
    if verdict.verdict == "RealizableThm2":
        return realize_theorem2(p, max_generators)
    if verdict.verdict == "NotRealizablePM":
        raise NotRealizable(verdict.reason, "Theorem 3: n >= k")
    raise PreconditionFailed(verdict.reason, verdict.verdict)


def _pm_exponents(p: Poly):
    target, unit = _normalize_input(p)
    fact = _cyclotomic_or_refuse(target)
    if set(fact.factors) - {1, 2}:
        raise PreconditionFailed(f"{target} is not of the form (t-1)^n (t+1)^k", "Theorem 3 form")
    return fact.multiplicity(1), fact.multiplicity(2), unit
