from fractions import Fraction as F
from functools import lru_cache

import pytest

from superverma.algebra import AlgebraSpec, build_algebra, w_add, w_scale
from superverma.characters import ParabolicDatum, lattice_points

# (name, family, m, n, alpha, pi_l, max offset height)
CONFIGS = [
    ("gl11", "gl", 1, 1, None, (), 4),
    ("gl21", "gl", 2, 1, None, (), 3),
    ("gl21_l", "gl", 2, 1, None, (0,), 3),
    ("gl22_l", "gl", 2, 2, None, (0,), 3),
    ("osp12", "osp", 1, 1, None, (), 4),
    ("osp32", "osp", 3, 1, None, (), 3),
    ("osp32_l", "osp", 3, 1, None, (1,), 3),
    ("osp22_l", "osp", 2, 1, None, (1,), 3),
]
BOREL = ["gl11", "gl21", "osp12", "osp32"]
EVEN = [
    ("gl30", "gl", 3, 0, None, (), 3),
    ("gl30_l", "gl", 3, 0, None, (0,), 3),
]
EXCEPTIONAL = [("d21a_l", "d21a", 0, 0, F(2), (1,), 3)]
ALL = CONFIGS + EVEN + EXCEPTIONAL
BY_NAME = {c[0]: c for c in ALL}


@lru_cache(maxsize=None)
def algebra(family, m, n, alpha=None):
    return build_algebra(AlgebraSpec(family, m, n, alpha), allow_purely_even=True)


@lru_cache(maxsize=None)
def datum(name):
    _, fam, m, n, alpha, pil, _ = BY_NAME[name]
    return ParabolicDatum(algebra(fam, m, n, alpha), list(pil))


def max_height(name):
    return BY_NAME[name][6]


def offsets(pd, depth):
    """Every non-negative combination of simple roots of height <= depth."""
    rs = pd.rs
    out = []
    for pt in lattice_points(len(rs.simple), depth):
        eta = (F(0),) * rs.rank
        for c, s in zip(pt, rs.simple):
            eta = w_add(eta, w_scale(c, s.weight))
        out.append(eta)
    return out


def W(*xs):
    return tuple(F(x) for x in xs)


@pytest.fixture
def gl11():
    return datum("gl11")


@pytest.fixture
def gl21():
    return datum("gl21")


@pytest.fixture
def osp12():
    return datum("osp12")


def random_vector(pd, irrep, mu, rng):
    """Random combination of the PBW basis of M_p(lam) at mu (may be zero-dimensional)."""
    from superverma.verma import PbwVector, basis_of
    keys = basis_of(irrep, mu)[0]
    return PbwVector({k: F(rng.randint(-5, 5), rng.randint(1, 4)) for k in keys})


def random_element(rs, rng):
    """A scaled root vector, or a random Cartan element one time in four."""
    if rng.random() < 0.25:
        return {k: F(rng.randint(-3, 3)) for k in range(rs.rank)}
    return {rng.randrange(rs.rank, rs.dim): F(rng.randint(1, 5), rng.randint(1, 3))}
