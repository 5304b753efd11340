"""C-presentations: words, conjugation relations, structural predicates,
Hurwitz products and the builtin example groups."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import InvalidPresentation, UnknownBuiltin


def _reduce(letters: Iterable[tuple]) -> tuple:
    out: list = []
    for g, e in letters:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            s = out[-1][1] + e
            if s:
                out[-1] = (g, s)
            else:
                out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """Freely reduced word in the generators, stored as syllables
    ``(generator_index, exponent)`` with 1-based indices."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce((int(g), int(e)) for g, e in self.letters))

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "Word":
        return cls(((i, e),))

    @classmethod
    def product(cls, gens: Sequence[int]) -> "Word":
        return cls(tuple((g, 1) for g in gens))

    def is_identity(self) -> bool:
        return not self.letters

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __iter__(self):
        """Unit letters ``(g, +-1)`` left to right."""
        for g, e in self.letters:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, step

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)

    def relabel(self, mapping) -> "Word":
        return Word(tuple((mapping(g), e) for g, e in self.letters))

    def to_string(self, labels: Optional[Sequence[str]] = None) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            name = labels[g - 1] if labels else f"x{g}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def __str__(self):
        return self.to_string()


EMPTY = Word()


@dataclass(frozen=True)
class ConjRelation:
    """x_left = conjugator^-1 x_right conjugator."""

    left: int
    right: int
    conjugator: Word = EMPTY

    def relator(self) -> Word:
        """x_i^-1 w^-1 x_j w, the word that is trivial in the group."""
        w = self.conjugator
        return Word.gen(self.left, -1) * w.inverse() * Word.gen(self.right) * w

    def relabel(self, mapping) -> "ConjRelation":
        return ConjRelation(mapping(self.left), mapping(self.right), self.conjugator.relabel(mapping))

    def is_commutation(self) -> bool:
        return self.left == self.right


@dataclass(frozen=True)
class CPresentation:
    num_generators: int
    relations: tuple = ()
    labels: Optional[tuple] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        self.validate()

    def validate(self) -> None:
        m = self.num_generators
        if m < 1:
            raise InvalidPresentation("a C-presentation needs at least one generator")
        if self.labels is not None and len(self.labels) != m:
            raise InvalidPresentation("one label per generator required")
        for n, r in enumerate(self.relations, 1):
            if not isinstance(r, ConjRelation):
                raise InvalidPresentation(f"relation {n} is not a ConjRelation")
            for idx in (r.left, r.right, r.conjugator.max_generator()):
                if idx > m:
                    raise InvalidPresentation(f"relation {n} uses x{idx} but m={m}")
            if any(g < 1 for g in r.conjugator.generators()) or r.left < 1 or r.right < 1:
                raise InvalidPresentation(f"relation {n} has a non-positive generator index")
            # every generator maps to 1 in Z, so every relator has exponent sum 0
            assert r.relator().exponent_sum() == 0

    def with_relations(self, extra: Iterable[ConjRelation], name: str = "") -> "CPresentation":
        return CPresentation(self.num_generators, self.relations + tuple(extra),
                             self.labels, name or self.name)

    def full_product(self) -> Word:
        return Word.product(range(1, self.num_generators + 1))

    def __str__(self):
        from .parsing import format_presentation
        return format_presentation(self)


# ---------------------------------------------------------------------------
# structural predicates


def _components(m: int, pairs: Iterable[tuple]) -> list:
    parent = list(range(m + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(i) for i in range(1, m + 1)]


def component_labels(g: CPresentation) -> list:
    """Representative (smallest index) of each generator's component."""
    return _components(g.num_generators, ((r.left, r.right) for r in g.relations))


def irreducible_components(g: CPresentation) -> int:
    return len(set(component_labels(g)))


def is_hurwitz_presentation(g: CPresentation) -> bool:
    full = g.full_product()
    have = {r.left for r in g.relations if r.left == r.right and r.conjugator == full}
    return len(have) == g.num_generators


def commutes(i: int, w: Word) -> ConjRelation:
    """[x_i, w] = 1 written as x_i = w^-1 x_i w."""
    return ConjRelation(i, i, w)


# ---------------------------------------------------------------------------
# Hurwitz products


def _shifted(g: CPresentation, offset: int) -> tuple:
    return tuple(r.relabel(lambda i: i + offset) for r in g.relations)


def hurwitz_product(g1: CPresentation, g2: CPresentation) -> CPresentation:
    """G1 ◇ G2 with x_{m1} identified with the last generator of G2 and each
    remaining generator of one factor commuting with the other factor's
    full product raised to its own generator count."""
    m1, m2 = g1.num_generators, g2.num_generators
    p1 = Word.product(range(1, m1 + 1))
    p2 = Word.product(range(m1 + 1, m1 + m2 + 1))
    rels = list(g1.relations) + list(_shifted(g2, m1))
    rels.append(ConjRelation(m1, m1 + m2, EMPTY))
    rels += [commutes(j, p2 ** m1) for j in range(1, m1)]
    rels += [commutes(m1 + j, p1 ** m2) for j in range(1, m2)]
    return CPresentation(m1 + m2, tuple(rels), name=_join_names(g1.name, g2.name))


def _join_names(a: str, b: str) -> str:
    return f"({a or '?'})◇({b or '?'})"


@dataclass(frozen=True)
class HurwitzDatum:
    """A presentation together with a positive word Z, containing every
    generator, that is central in the group.  The closure relations
    [x_s, Z] = 1 are part of the presentation, so centrality of Z is
    visible syntactically."""

    presentation: CPresentation
    central_word: Word

    def __post_init__(self):
        z = self.central_word
        if any(e < 0 for _, e in z.letters):
            raise InvalidPresentation("central word must be positive")
        if z.generators() != set(range(1, self.presentation.num_generators + 1)):
            raise InvalidPresentation("central word must contain every generator")

    @property
    def degree(self) -> int:
        return len(self.central_word)

    def is_syntactically_central(self) -> bool:
        z = self.central_word
        have = {r.left for r in self.presentation.relations
                if r.left == r.right and r.conjugator == z}
        return len(have) == self.presentation.num_generators

    @classmethod
    def close(cls, g: CPresentation, z: Word) -> "HurwitzDatum":
        """Append any missing closure relations [x_s, z] = 1."""
        have = {r.left for r in g.relations if r.left == r.right and r.conjugator == z}
        extra = [commutes(s, z) for s in range(1, g.num_generators + 1) if s not in have]
        return cls(g.with_relations(extra) if extra else g, z)

    @classmethod
    def of_hurwitz(cls, g: CPresentation) -> "HurwitzDatum":
        """Datum of a syntactically Hurwitz presentation (Z = x_1...x_m)."""
        return cls.close(g, g.full_product())


def datum_product(d1: HurwitzDatum, d2: HurwitzDatum) -> HurwitzDatum:
    """Hurwitz product of two data.

    The generators at the last positions of Z1 and Z2 are identified; every
    other generator of one factor commutes with the other factor's central
    word raised to the length of its own.  Z1^{M2} Z2^{M1} is then central
    and is recorded together with its closure relations.
    """
    g1, g2 = d1.presentation, d2.presentation
    m1 = g1.num_generators
    z1 = d1.central_word
    z2 = d2.central_word.relabel(lambda i: i + m1)
    M1, M2 = len(z1), len(z2)
    last1, last2 = z1.letters[-1][0], z2.letters[-1][0]
    rels = list(g1.relations) + list(_shifted(g2, m1))
    rels.append(ConjRelation(last1, last2, EMPTY))
    rels += [commutes(s, z2 ** M1) for s in sorted(z1.generators() - {last1})]
    rels += [commutes(s, z1 ** M2) for s in sorted(z2.generators() - {last2})]
    g = CPresentation(m1 + g2.num_generators, tuple(rels), name=_join_names(g1.name, g2.name))
    return HurwitzDatum.close(g, z1 ** M2 * z2 ** M1)


def hurwitz_expand(d: HurwitzDatum) -> CPresentation:
    """Syntactically Hurwitz presentation of the same group.

    One generator y_p per letter position of Z; y_p stands for the p-th
    letter, positions carrying the same generator are identified, and the
    product y_1...y_L (which is Z) is made central explicitly.
    """
    z = [g for g, _ in d.central_word]
    first: dict = {}
    for p, g in enumerate(z, 1):
        first.setdefault(g, p)
    mp = first.__getitem__
    rels = [r.relabel(mp) for r in d.presentation.relations]
    rels += [ConjRelation(p, first[g], EMPTY) for p, g in enumerate(z, 1) if first[g] != p]
    full = Word.product(range(1, len(z) + 1))
    rels += [commutes(p, full) for p in range(1, len(z) + 1)]
    return CPresentation(len(z), tuple(rels), name=f"expand({d.presentation.name})")


# ---------------------------------------------------------------------------
# builtins


def free(m: int) -> CPresentation:
    return CPresentation(m, (), name=f"free:{m}")


def abelian(n: int) -> CPresentation:
    """Z^n as a Hurwitz C-group: pairwise commutation plus centrality of
    the full product."""
    rels = [commutes(i, Word.gen(j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    full = Word.product(range(1, n + 1))
    rels += [commutes(i, full) for i in range(1, n + 1)]
    return CPresentation(n, tuple(rels), name=f"abelian:{n}")


def g2() -> CPresentation:
    full = Word.product((1, 2, 3, 4))
    rels = (
        ConjRelation(4, 1, Word.gen(2, -2)),  # x2^2 x1 x2^-2 = x4
        ConjRelation(3, 2, EMPTY),
        ConjRelation(2, 2, Word.gen(4, -2)),  # x4^2 x2 x4^-2 = x2
    ) + tuple(commutes(i, full) for i in range(1, 5))
    return CPresentation(4, rels, name="g2")


def example_4_1() -> CPresentation:
    rels = (
        ConjRelation(3, 2, Word.gen(1)),
        ConjRelation(3, 2, Word(((3, -1), (1, 1)))),
    )
    return CPresentation(3, rels, name="example_4_1")


def example_4_2() -> CPresentation:
    w = Word(((3, 2), (1, -1), (2, 1), (1, -1), (3, 1)))
    rels = (
        ConjRelation(3, 2, Word.gen(1)),
        commutes(1, w),
    )
    return CPresentation(3, rels, name="example_4_2")


BUILTINS = {
    "free": (free, True),
    "abelian": (abelian, True),
    "g2": (g2, False),
    "example_4_1": (example_4_1, False),
    "example_4_2": (example_4_2, False),
}


def builtin(name: str) -> CPresentation:
    """Look up ``NAME`` or ``NAME:PARAM`` (free:m, abelian:n, g2, ...)."""
    base, _, param = name.partition(":")
    if base not in BUILTINS:
        raise UnknownBuiltin(f"unknown builtin {name!r}; known: {', '.join(sorted(BUILTINS))}")
    fn, takes = BUILTINS[base]
    if takes:
        if not param:
            raise UnknownBuiltin(f"{name} (needs a parameter, e.g. {base}:2)")
        try:
            n = int(param)
        except ValueError:
            raise UnknownBuiltin(f"{name} (parameter must be an integer)") from None
        if n < 1:
            raise UnknownBuiltin(f"{name} (parameter must be positive)")
        return fn(n)
    if param:
        raise UnknownBuiltin(f"{name} (takes no parameter)")
    return fn()
