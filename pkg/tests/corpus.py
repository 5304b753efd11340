"""Shared regression corpus: builtins, products and realized groups."""
from functools import lru_cache

from hurwitz_alex.cgroup import (HurwitzDatum, abelian, datum_product, example_4_1, example_4_2, free,
                                 g2, hurwitz_product)
from hurwitz_alex.poly import T, cyclotomic
from hurwitz_alex.realize import realize_auto, realize_pm

PHI6 = cyclotomic(6)

# (name, presentation, Δ or None for zero)
GOLDEN = [
    ("example_4_1", example_4_1, (T - 1) ** 2),
    ("example_4_2", example_4_2, (1 - T) * (T + 1) ** 2),
    ("g2", g2, T ** 2 - 1),
] + [(f"abelian:{n}", (lambda n=n: abelian(n)), ((T - 1) ** (n - 1)).scale((-1) ** (n - 1)))
     for n in range(1, 6)] + [(f"free:{m}", (lambda m=m: free(m)), None) for m in (2, 3)]

REALIZE_TARGETS = {
    "1": T ** 0,
    "Phi6": PHI6,
    "Phi6^2": PHI6 ** 2,
    "t^2-1": T ** 2 - 1,
    "(t-1)(t+1)Phi6": (T - 1) * (T + 1) * PHI6,
    "(t-1)^2(t+1)^2": (T - 1) ** 2 * (T + 1) ** 2,
}


@lru_cache(maxsize=None)
def realized(name: str):
    return realize_auto(REALIZE_TARGETS[name])


@lru_cache(maxsize=None)
def realized_pm(n: int, k: int):
    return realize_pm(n, k)


def hurwitz_corpus():
    """(name, HurwitzDatum, components) for groups that are Hurwitz."""
    out = [("g2", HurwitzDatum.of_hurwitz(g2()))]
    out += [(f"abelian:{n}", HurwitzDatum.of_hurwitz(abelian(n))) for n in range(1, 6)]
    out.append(("g2*abelian:2", datum_product(HurwitzDatum.of_hurwitz(g2()),
                                              HurwitzDatum.of_hurwitz(abelian(2)))))
    for name in REALIZE_TARGETS:
        out.append((f"realized {name}", realized(name).datum))
    for n, k in ((1, 1), (2, 1), (3, 2)):
        out.append((f"pm({n},{k})", realized_pm(n, k).datum))
    return out


def all_presentations():
    out = [(name, fn()) for name, fn, _ in GOLDEN]
    out.append(("g2 x g2", hurwitz_product(g2(), g2())))
    out += [(name, d.presentation) for name, d in hurwitz_corpus()]
    return out
