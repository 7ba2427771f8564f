"""Shared builders and caches for the test suite.

Atlases and interval contexts are expensive, so they are built once per
process and reused by every test module.
"""
import random
from fractions import Fraction
from functools import lru_cache

from siltgeo import algebra as al
from siltgeo import cpx2
from siltgeo import interval as iv
from siltgeo import repmod as rm
from siltgeo import siltfan as sf


def square_quiver():
    return al.Quiver([1, 2, 3, 4], [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)], ["a*b - c*d"])


BUILDERS = {
    "A2": lambda: al.from_quiver(al.linear_quiver(2)),
    "A3": lambda: al.from_quiver(al.linear_quiver(3)),
    "A4": lambda: al.from_quiver(al.linear_quiver(4)),
    "A3_rad2": lambda: al.from_quiver(al.linear_quiver(3, ["a1*a2"])),
    "square": lambda: al.from_quiver(square_quiver()),
}

PROPERTY_ALGEBRAS = ("A2", "A3", "A4", "A3_rad2", "square")

# algebras where every presilting U gets a full interval context; the rest
# use a fixed sample to keep the suite within its time budget
EXHAUSTIVE = ("A2", "A3", "A3_rad2")
SAMPLE_SIZE = 15


@lru_cache(maxsize=None)
def algebra(name):
    return BUILDERS[name]()


@lru_cache(maxsize=None)
def atlas(name):
    at = sf.enumerate_siltings(algebra(name))
    assert at.complete
    return at


@lru_cache(maxsize=None)
def presilting_lists(name):
    """Every nonzero basic presilting complex, as a summand list, in cell order."""
    cells = atlas(name).cells()
    return tuple(tuple(s) for _, (_, s) in sorted(cells.items()) if s)


@lru_cache(maxsize=None)
def context_indices(name):
    n = len(presilting_lists(name))
    if name in EXHAUSTIVE:
        return tuple(range(n))
    rng = random.Random("contexts-" + name)
    return tuple(sorted(rng.sample(range(n), SAMPLE_SIZE)))


@lru_cache(maxsize=None)
def context(name, idx):
    return iv.context(algebra(name), list(presilting_lists(name)[idx]))


def a4():
    return algebra("A4")


def a4_u():
    """U = (P(4) -> P(3)) (+) P(1) over the A4 path algebra."""
    a = a4()
    u1 = cpx2.TwoTerm(a, [3], [2], [[cpx2._sparse(al.path_algebra_element(a, "a3"))]])
    u2 = cpx2.TwoTerm.stalk(a, [0])
    return [u1, u2]


@lru_cache(maxsize=None)
def a4_context():
    return iv.context(a4(), a4_u())


def random_module(a, rng):
    """Direct sum of one or two quotients of projectives or injectives by radical elements."""
    parts = []
    for _ in range(rng.randint(1, 2)):
        i = rng.randrange(a.n)
        base = rm.projective(a, i) if rng.random() < 0.5 else rm.injective(a, i)
        rad = rm.radical_submodule(base)
        if rad.dim and rng.random() < 0.8:
            vec = [0] * base.dim
            for b in rad.basis:
                c = rng.randint(-2, 2)
                vec = [x + c * y for x, y in zip(vec, b)]
            base = rm.sub_quotient(base, [vec])[1] if any(vec) else base
        parts.append(base)
    return rm.direct_sum(parts)


def frac_vec(v):
    return [Fraction(x) for x in v]
