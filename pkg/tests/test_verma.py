import random
from fractions import Fraction as F
from math import factorial

import pytest

from superverma.algebra import w_add, w_sub
from superverma.characters import ParabolicDatum
from superverma.errors import DepthError
from superverma.formula import random_dominant
from superverma.linalg import det
from superverma.verma import (PbwVector, act, brute_determinant, build_irrep_l, casimir,
                              gram_block, pairing, singular_kernel, kernel_vectors, weight_of)

from conftest import CONFIGS, W, algebra, datum, random_element, random_vector


def top(irrep):
    return PbwVector({((), irrep.lam, 0): 1})


def test_borel_irrep_is_one_dimensional(gl21):
    lam = W(F(1, 2), 2, 3)
    irrep = build_irrep_l(gl21, lam, 3)
    assert irrep.dim(lam) == 1
    assert irrep.space(lam).gram.to_rows() == [[1]]
    assert irrep.dim(w_sub(lam, W(1, -1, 0))) == 0


def test_levi_irrep_dimensions():
    pd = datum("gl21_l")
    irrep = build_irrep_l(pd, W(1, 0, 0), 3)
    assert irrep.dim(W(1, 0, 0)) == 1
    assert irrep.dim(W(0, 1, 0)) == 1
    # pairing 1, so lam - 2 alpha is killed by the radical
    assert irrep.dim(W(-1, 2, 0)) == 0


def test_cartan_acts_by_weight(gl21):
    lam = W(2, F(1, 3), -1)
    irrep = build_irrep_l(gl21, lam, 3)
    rng = random.Random(1)
    mu = w_sub(lam, W(1, 0, -1))
    v = random_vector(gl21, irrep, mu, rng)
    for k in range(3):
        want = PbwVector({key: mu[k] * c for key, c in v.terms.items()})
        assert act(gl21, irrep, k, v) == want


def test_gl11_raising_after_lowering():
    pd = datum("gl11")
    lam = W(F(5, 2), F(-1, 3))
    irrep = build_irrep_l(pd, lam, 2)
    pos = pd.rs.positive[0]
    neg = pd.rs.negative(pos)
    v = act(pd, irrep, neg.index, top(irrep))
    back = act(pd, irrep, pos.index, v)
    h = pd.rs.h_alpha(pos.weight)
    value = sum(lam[k] * h[k] for k in range(2)) * pd.rs.kappa(pos)
    assert back.terms == {((), lam, 0): value}


def test_nilradical_kills_levi_module():
    pd = datum("gl21_l")
    lam = W(2, 0, 1)
    irrep = build_irrep_l(pd, lam, 3)
    for nu in [lam, W(1, 1, 1)]:
        e = PbwVector({((), nu, 0): 1})
        for r in pd.delta_n:
            assert act(pd, irrep, r.index, e).is_zero()


def test_pairing_examples():
    pd = datum("gl11")
    lam = W(F(7, 3), 2)
    irrep = build_irrep_l(pd, lam, 2)
    v = top(irrep)
    assert pairing(pd, irrep, v, v) == 1
    neg = pd.rs.negative(pd.rs.positive[0])
    u = act(pd, irrep, neg.index, v)
    assert pairing(pd, irrep, u, v) == 0
    block = gram_block(pd, irrep, w_sub(lam, W(1, -1)))
    assert block.size == 1
    assert brute_determinant(pd, irrep, w_sub(lam, W(1, -1))) == lam[0] + lam[1]


def test_gram_block_trivial_cases():
    pd = datum("gl11")
    irrep = build_irrep_l(pd, W(2, 1), 4)
    b = gram_block(pd, irrep, W(2, 1))
    assert b.matrix.to_rows() == [[1]]
    assert brute_determinant(pd, irrep, W(2, 1)) == 1
    assert brute_determinant(pd, irrep, W(1, 2)) == 3
    empty = gram_block(pd, irrep, W(0, 3))
    assert empty.size == 0 and det(empty.matrix) == 1
    with pytest.raises(DepthError):
        brute_determinant(pd, irrep, W(-3, 6))


@pytest.mark.parametrize("a", [F(3), F(2, 7), F(-5, 2)])
def test_osp12_norms_from_recursion(a):
    # x y^k v = c_k y^(k-1) v with c_k = (lam - (k-1) delta, delta) - c_(k-1);
    # y^2 = t x_(-2 delta) with t^2 = 1/2, which rescales the PBW norms
    pd = datum("osp12")
    irrep = build_irrep_l(pd, (a,), 4)
    c, norm = F(0), F(1)
    for k in range(1, 5):
        c = (-a + (k - 1)) - c
        norm *= c
        assert brute_determinant(pd, irrep, (a - k,)) == norm / F(1, 2) ** (k // 2)


@pytest.mark.parametrize("lam", [W(3, 1), W(F(1, 2), 2), W(0, 0)])
def test_sl2_shapovalov(lam):
    pd = ParabolicDatum(algebra("gl", 2, 0), [])
    m = lam[0] - lam[1]
    irrep = build_irrep_l(pd, lam, 4)
    for k in range(5):
        mu = (lam[0] - k, lam[1] + k)
        want = F(factorial(k))
        for j in range(1, k + 1):
            want *= m - j + 1
        assert brute_determinant(pd, irrep, mu) == want


def test_casimir_examples():
    pd = datum("gl11")
    assert casimir(pd, W(0, 0)) == 0
    rho = pd.rs.rho
    assert casimir(pd, tuple(-2 * x for x in rho)) == 0
    for a, b in [(F(3), F(1, 2)), (F(-2, 3), F(5))]:
        assert casimir(pd, (a, b)) == (a + b) * (a - b - 1)


def test_weight_of(gl21):
    lam = W(1, 1, 1)
    irrep = build_irrep_l(gl21, lam, 2)
    mu = w_sub(lam, W(0, 1, -1))
    v = random_vector(gl21, irrep, mu, random.Random(0))
    assert weight_of(irrep, v) == mu


@pytest.mark.parametrize("name", [c[0] for c in CONFIGS])
def test_contravariance_small(name):
    pd = datum(name)
    rs = pd.rs
    rng = random.Random(21)
    lam = random_dominant(pd, rng)
    irrep = build_irrep_l(pd, lam, 3)
    weights = list(pd.weights_below(lam, 2))
    for _ in range(25):
        mu = rng.choice(weights)
        x = random_element(rs, rng)
        (idx,) = x if len(x) == 1 else (0,)
        shift = rs.root_of_index(idx).weight if idx >= rs.rank else (0,) * rs.rank
        u = random_vector(pd, irrep, mu, rng)
        nu = w_add(mu, shift)
        if not pd.leq(nu, lam) or pd.height(w_sub(lam, nu)) > 3:
            continue
        v = random_vector(pd, irrep, nu, rng)
        lhs = pairing(pd, irrep, act(pd, irrep, x, u), v)
        rhs = pairing(pd, irrep, u, act(pd, irrep, rs.sigma_element(x), v))
        assert lhs == rhs


def test_gram_blocks_symmetric():
    pd = datum("osp32_l")
    lam = W(2, F(1, 3))
    irrep = build_irrep_l(pd, lam, 3)
    for mu in pd.weights_below(lam, 3):
        assert gram_block(pd, irrep, mu).matrix.is_symmetric()


def test_singular_kernel_of_gl11():
    pd = datum("gl11")
    lam = W(1, -1)
    irrep = build_irrep_l(pd, lam, 2)
    mu = w_sub(lam, W(1, -1))
    (k,) = kernel_vectors(pd, irrep, mu)
    (s,) = singular_kernel(pd, irrep, mu)
    assert weight_of(irrep, s) == mu
    assert casimir(pd, mu) == casimir(pd, lam)
    assert k.terms.keys() == s.terms.keys()
