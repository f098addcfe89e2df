from fractions import Fraction as F
from itertools import product

import pytest

from superverma.algebra import w_add, w_scale, w_sub
from superverma.characters import FormalChar, ParabolicDatum
from superverma.errors import DomainError, ResourceError
from superverma.formula import adjust_pairings
from superverma.verma import basis_of, build_irrep_l

from conftest import ALL, W, algebra, datum, offsets


def brute_partitions(rs, roots, eta, bound=4):
    """Count by trying every multiplicity vector up to ``bound``."""
    n = 0
    for mult in product(*[range(2 if r.parity else bound + 1) for r in roots]):
        tot = (F(0),) * rs.rank
        for r, k in zip(roots, mult):
            tot = w_add(tot, w_scale(k, r.weight))
        n += tot == tuple(eta)
    return n


def test_partition_count_examples(gl11, gl21):
    assert gl21.partition_count(W(0, 0, 0)) == 1
    assert gl21.partition_count(W(1, 0, -1)) == 2
    assert gl11.partition_count(W(2, -2)) == 0
    assert gl11.partition_count(W(1, -1)) == 1
    # not in Q+
    assert gl21.partition_count(W(-1, 1, 0)) == 0


@pytest.mark.parametrize("name", [c[0] for c in ALL])
def test_partition_count_matches_brute_force(name):
    pd = datum(name)
    for eta in offsets(pd, 3):
        for over, roots in [("full", pd.rs.positive), ("l", pd.delta_l_plus), ("n", pd.delta_n)]:
            assert pd.partition_count(eta, over=over) == brute_partitions(pd.rs, roots, eta)


def test_enumerate_partitions_examples():
    pd = ParabolicDatum(algebra("gl", 2, 1), [0])
    (p,) = pd.enumerate_partitions(W(1, 0, -1), over="n")
    assert p.support() == {W(1, 0, -1): 1}
    borel = datum("gl21")
    (q,) = borel.enumerate_partitions(W(1, 1, -2), over="n")
    assert q.support() == {W(1, 0, -1): 1, W(0, 1, -1): 1}
    (e,) = borel.enumerate_partitions(W(0, 0, 0))
    assert e.size == 0


def test_height(gl21):
    assert gl21.height(W(0, 0, 0)) == 0
    assert gl21.height(W(1, -1, 0)) == 1
    assert gl21.height(W(1, 0, -1)) == 2


def test_weyl_group_sizes():
    assert len(datum("gl21").weyl_group) == 1
    signs = sorted(s for _, s in datum("gl21_l").weyl_group)
    assert signs == [-1, 1]
    full = ParabolicDatum(algebra("gl", 3, 1), [0, 1])
    group = full.weyl_group
    assert len(group) == 6
    assert sum(s for _, s in group) == 0


def test_weyl_cap():
    pd = ParabolicDatum(algebra("gl", 3, 1), [0, 1], weyl_cap=3)
    with pytest.raises(ResourceError):
        pd.weyl_group


def test_dot_action():
    pd = datum("gl21_l")
    e, s = sorted(pd.weyl_group, key=lambda ws: -ws[1])
    lam = W(0, 0, 0)
    assert pd.dot(e[0], lam) == lam
    assert pd.dot(s[0], lam) == W(-1, 1, 0)
    x = W(F(2, 3), 5, -1)
    assert pd.dot(s[0], pd.dot(s[0], x)) == x


def test_verma_character_examples(gl11, gl21):
    lam = W(F(1, 3), 2)
    ch = gl11.ch_verma(lam, 2)
    assert ch.coefficient(lam) == 1
    assert ch.coefficient(w_sub(lam, W(1, -1))) == 1
    assert ch.coefficient(w_sub(lam, W(2, -2))) == 0
    lam = W(0, 0, 0)
    assert gl21.ch_verma(lam, 2).coefficient(W(-2, 2, 0)) == 1


def test_irrep_character_examples():
    assert datum("gl21").ch_irrep_l(W(1, 2, 3), 3).terms == {W(1, 2, 3): 1}
    pd = datum("gl21_l")
    ch = pd.ch_irrep_l(W(1, 0, 0), 3)
    assert ch.terms == {W(1, 0, 0): 1, W(0, 1, 0): 1}
    with pytest.raises(DomainError):
        pd.ch_irrep_l(W(0, 1, 0), 2)
    with pytest.raises(DomainError):
        pd.ch_irrep_l(W(F(1, 2), 0, 0), 2)


def test_parabolic_character_examples():
    pd = datum("gl21_l")
    ch = pd.ch_parabolic_verma(W(0, 0, 0), 3)
    assert ch.coefficient(W(0, 0, 0)) == 1
    assert ch.coefficient(W(-1, 0, 1)) == 1
    assert pd.chi_p(W(0, 0, 0), W(-1, 0, 1)) == 1
    borel = datum("gl21")
    lam = W(F(1, 2), 3, -2)
    assert borel.ch_parabolic_verma(lam, 3) == borel.ch_verma(lam, 3)


def test_chi_p_alpha_examples(gl11):
    lam = W(F(2, 5), 1)
    a = gl11.rs.positive[0]
    nu = w_sub(lam, a.weight)
    assert gl11.chi_p_alpha(nu, a, nu) == 1
    assert gl11.chi_p_alpha(nu, a, w_sub(lam, W(2, -2))) == 0
    assert gl11.chi_p_alpha(nu, a, lam) == 0
    with pytest.raises(DomainError):
        datum("osp12").chi_p_alpha(W(0), datum("osp12").rs.positive[0], W(0))


def test_formal_char_arithmetic():
    a = FormalChar(W(0), 2, {W(0): 1, W(-1): 2})
    b = FormalChar(W(0), 2, {W(-1): 2})
    assert (a - b).terms == {W(0): 1}
    assert (b - b).is_zero()


def sample_weights(pd, k=3):
    rs = pd.rs
    out = []
    for i in range(k):
        base = [F((3 * i + 2 * j) % 7 - 3, 1 + (i + j) % 3) for j in range(rs.rank)]
        out.append(adjust_pairings(pd, base, [(i + j) % 3 for j in range(len(pd.pi_l))]))
    return out


@pytest.mark.parametrize("name", [c[0] for c in ALL])
def test_full_partitions_factor_through_levi_and_nilradical(name):
    pd = datum(name)
    for eta in offsets(pd, 4):
        conv = sum(pd.partition_count(e1, over="l") * pd.partition_count(w_sub(eta, e1), over="n")
                   for e1 in offsets(pd, 4))
        assert pd.partition_count(eta) == conv


@pytest.mark.parametrize("name", [c[0] for c in ALL])
def test_parabolic_character_three_ways(name):
    pd = datum(name)
    for lam in sample_weights(pd):
        alt = FormalChar(lam, 4, {})
        for w, s in pd.weyl_group:
            alt = alt + FormalChar(lam, 4, {k: s * v for k, v in
                                            pd.ch_verma(pd.dot(w, lam), 4 + 10).terms.items()})
        ch = pd.ch_parabolic_verma(lam, 4)
        chv = pd.ch_irrep_l(lam, 4)
        for mu in pd.weights_below(lam, 4):
            prod = sum(c * pd.partition_count(w_sub(nu, mu), over="n") for nu, c in chv.terms.items())
            assert ch.coefficient(mu) == alt.coefficient(mu) == prod


@pytest.mark.parametrize("name", [c[0] for c in ALL if c[5]])
def test_chi_p_is_alternating(name):
    pd = datum(name)
    for lam in sample_weights(pd):
        for w, s in pd.weyl_group:
            wl = pd.dot(w, lam)
            for mu in pd.weights_below(lam, 4):
                assert pd.chi_p(wl, mu) == s * pd.chi_p(lam, mu)


@pytest.mark.parametrize("name", [c[0] for c in ALL])
def test_pbw_dimensions_match_character(name):
    pd = datum(name)
    for lam in sample_weights(pd, 2):
        irrep = build_irrep_l(pd, lam, 4)
        ch = pd.ch_parabolic_verma(lam, 4)
        for mu in pd.weights_below(lam, 4):
            assert len(basis_of(irrep, mu)[0]) == ch.coefficient(mu)
