"""Brute-force parabolic Verma modules and their contravariant forms.

Everything is computed inside the ordinary Verma module M(lam).  Vectors of
M(lam) are combinations of PBW monomials y_1 ... y_k v_lam in negative root
vectors, ordered with the nilradical roots first and the Levi roots after.
The contravariant form of M(lam) descends to the parabolic quotient
M_p(lam), so Gram entries of M_p(lam) are Shapovalov values of lifted
monomials x_{-pi} u v_lam, where u v_lam runs over a basis of V(lam).

V(lam) itself is the Levi Verma module modulo the radical of its form: at
each weight we keep a maximal set of Levi monomials whose Gram block is
nonsingular.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import RootSystem, Weight, fmt_weight, w_add, w_scale, w_sub
from .characters import ParabolicDatum, Partition, lattice_points
from .errors import ConsistencyError, DepthError, SpecError
from .linalg import RatMatrix, det, kernel_basis, nonsingular_principal_subset, solve, vec

DEFAULT_DEPTH = 3


def _add_into(out: dict, src: dict, c) -> None:
    for k, v in src.items():
        nv = out.get(k, 0) + c * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)


class _Straightener:
    """Left multiplication in U(n^-) on PBW monomials (independent of lam)."""

    def __init__(self, rs: RootSystem, order: list[int]):
        self.rs = rs
        self.pos = {idx: p for p, idx in enumerate(order)}
        self.memo: dict = {}

    def lower(self, z: int, mono: tuple) -> dict:
        if not mono or self.pos[z] < self.pos[mono[0]]:
            return {(z,) + mono: Fraction(1)}
        key = (z, mono)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        rs = self.rs
        y, rest = mono[0], mono[1:]
        out: dict = {}
        if z == y:
            if rs.parity[z] == 0:
                out = {(z,) + mono: Fraction(1)}
            else:
                # z z = [z, z] / 2 for odd z
                for k, c in rs.bracket(z, z):
                    _add_into(out, self.lower(k, rest), c / 2)
        else:
            sign = -1 if rs.parity[z] and rs.parity[y] else 1
            for m, c in self.lower(z, rest).items():
                _add_into(out, self.lower(y, m), sign * c)
            for k, c in rs.bracket(z, y):
                _add_into(out, self.lower(k, rest), c)
        self.memo[key] = out
        return out


def _straightener(pd: ParabolicDatum) -> _Straightener:
    st = getattr(pd, "_straightener", None)
    if st is None:
        rs = pd.rs
        order = [rs.negative(r).index for r in pd.delta_n] + \
                [rs.negative(r).index for r in pd.delta_l_plus]
        st = _Straightener(rs, order)
        pd._straightener = st
    return st


class VermaModule:
    """The Verma module M(lam) with memoized action and Shapovalov form."""

    def __init__(self, pd: ParabolicDatum, lam: Sequence):
        self.pd = pd
        self.rs = pd.rs
        self.lam = vec(lam)
        if len(self.lam) != self.rs.rank:
            raise SpecError(f"weight must have {self.rs.rank} coordinates")
        self.st = _straightener(pd)
        self.n_pos = len(self.rs.positive)
        self._act: dict = {}
        self._pair: dict = {}

    def kind(self, idx: int) -> str:
        if idx < self.rs.rank:
            return "h"
        return "+" if idx < self.rs.rank + self.n_pos else "-"

    def weight(self, mono: tuple) -> Weight:
        w = self.lam
        for i in mono:
            w = w_add(w, self.rs.root_of_index(i).weight)
        return w

    def act_basis(self, x: int, mono: tuple) -> dict:
        k = self.kind(x)
        if k == "-":
            return self.st.lower(x, mono)
        if k == "h":
            c = self.weight(mono)[x]
            return {mono: c} if c else {}
        if not mono:
            return {}
        key = (x, mono)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        rs = self.rs
        y, rest = mono[0], mono[1:]
        out: dict = {}
        for b, c in rs.bracket(x, y):
            _add_into(out, self.act_basis(b, rest), c)
        sign = -1 if rs.parity[x] and rs.parity[y] else 1
        for m, c in self.act_basis(x, rest).items():
            _add_into(out, self.st.lower(y, m), sign * c)
        self._act[key] = out
        return out

    def act_element(self, x: dict, v: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for m, cm in v.items():
                _add_into(out, self.act_basis(a, m), ca * cm)
        return out

    def shapovalov(self, row: tuple, col: tuple) -> Fraction:
        """(row v_lam, col v_lam) for PBW monomials, with (v_lam, v_lam) = 1."""
        if not row:
            return Fraction(1) if not col else Fraction(0)
        if len(row) != len(col) and self._weights_differ(row, col):
            return Fraction(0)
        key = (row, col)
        hit = self._pair.get(key)
        if hit is not None:
            return hit
        # (y_1 Y v, w) = (Y v, sigma(y_1) w)
        b, t = self.rs.sigma(row[0])
        total = Fraction(0)
        for m, c in self.act_basis(b, col).items():
            total += t * c * self.shapovalov(row[1:], m)
        self._pair[key] = total
        return total

    def _weights_differ(self, a: tuple, b: tuple) -> bool:
        return self.weight(a) != self.weight(b)

    def pair_vectors(self, u: dict, v: dict) -> Fraction:
        total = Fraction(0)
        for a, ca in u.items():
            for b, cb in v.items():
                if self.weight(a) == self.weight(b):
                    total += ca * cb * self.shapovalov(a, b)
        return total


@dataclass
class LeviSpace:
    nu: Weight
    basis: list  # Levi PBW monomials spanning V(lam)^nu
    gram: RatMatrix


@dataclass
class IrrepL:
    """V(lam) up to a height depth, realized inside the Levi Verma module."""

    module: VermaModule
    depth: int
    spaces: dict = field(default_factory=dict)

    @property
    def lam(self) -> Weight:
        return self.module.lam

    @property
    def pd(self) -> ParabolicDatum:
        return self.module.pd

    def space(self, nu: Weight) -> LeviSpace:
        nu = tuple(nu)
        sp = self.spaces.get(nu)
        if sp is None:
            sp = self._build_space(nu)
            self.spaces[nu] = sp
        return sp

    def _build_space(self, nu: Weight) -> LeviSpace:
        pd, mod = self.pd, self.module
        eta = w_sub(self.lam, nu)
        if pd.positive_coords(eta) is None or pd.partition_count(eta, over="l") == 0:
            return LeviSpace(nu, [], RatMatrix.zero(0, 0))
        monos = []
        for p in pd.enumerate_partitions(eta, over="l"):
            monos.append(_monomial(pd, p))
        full = RatMatrix.from_rows([[mod.shapovalov(a, b) for b in monos] for a in monos])
        keep = nonsingular_principal_subset(full)
        basis = [monos[i] for i in keep]
        return LeviSpace(nu, basis, full.submatrix(keep, keep))

    def dim(self, nu: Weight) -> int:
        return len(self.space(nu).basis)

    def levi_weights(self, height: int) -> list[Weight]:
        """Weights nu of V(lam) with ht(lam - nu) <= height, in a fixed order."""
        pd = self.pd
        idx = pd.pi_l_indices
        out = []
        for pt in lattice_points(len(idx), height):
            eta = (Fraction(0),) * pd.rs.rank
            for c, i in zip(pt, idx):
                if c:
                    eta = w_add(eta, w_scale(c, pd.rs.simple[i].weight))
            nu = w_sub(self.lam, eta)
            if self.dim(nu):
                out.append(nu)
        return out

    def coordinates(self, nu: Weight, mono: tuple) -> tuple:
        """Coordinates of the Levi monomial vector ``mono v_lam`` in the e-basis at nu."""
        sp = self.space(nu)
        if not sp.basis:
            return ()
        rhs = [self.module.shapovalov(e, mono) for e in sp.basis]
        return solve(sp.gram, rhs)


def _monomial(pd: ParabolicDatum, p: Partition) -> tuple:
    rs = pd.rs
    out = []
    for r, k in zip(p.roots, p.multiplicities):
        out.extend([rs.negative(r).index] * k)
    return tuple(out)


def build_irrep_l(pd: ParabolicDatum, lam: Sequence, depth: int = DEFAULT_DEPTH) -> IrrepL:
    pd.require_dominant(lam)
    if depth < 0:
        raise SpecError("depth must be non-negative")
    return IrrepL(VermaModule(pd, lam), depth)


@dataclass
class PbwVector:
    """Vector of M_p(lam): keys are (n-monomial, nu, i) meaning x_{-pi} e_{nu,i}."""

    terms: dict

    def __post_init__(self):
        self.terms = {k: Fraction(v) for k, v in self.terms.items() if v}

    def is_zero(self) -> bool:
        return not self.terms


@dataclass
class GramBlock:
    mu: Weight
    basis_index: list  # (n-monomial, nu, i)
    partitions: list  # Partition over delta_n, parallel to basis_index
    matrix: RatMatrix
    v_blocks: dict  # nu -> (G_nu, |P_n(nu - mu)|)

    @property
    def size(self) -> int:
        return len(self.basis_index)

    def to_json(self) -> dict:
        return {
            "mu": fmt_weight(self.mu),
            "size": self.size,
            "basis": [{"partition": p.to_json(), "nu": fmt_weight(nu), "i": i}
                      for p, (_, nu, i) in zip(self.partitions, self.basis_index)],
            "matrix": [[str(x) for x in row] for row in self.matrix.to_rows()],
        }


def _check_depth(irrep: IrrepL, mu: Weight) -> int:
    eta = w_sub(irrep.lam, mu)
    c = irrep.pd.positive_coords(eta)
    if c is None:
        return -1
    if sum(c) > irrep.depth:
        raise DepthError(f"height of lam - mu is {sum(c)}, beyond depth {irrep.depth}")
    return sum(c)


def basis_of(irrep: IrrepL, mu: Sequence) -> tuple[list, list, dict]:
    """Deterministic basis (n-monomial, nu, i) of M_p(lam)^mu."""
    mu = vec(mu)
    h = _check_depth(irrep, mu)
    if h < 0:
        return [], [], {}
    pd = irrep.pd
    keys, parts, counts = [], [], {}
    for nu in irrep.levi_weights(h):
        ps = pd.enumerate_partitions(w_sub(nu, mu), over="n")
        if not ps:
            continue
        counts[nu] = len(ps)
        for p in ps:
            for i in range(irrep.dim(nu)):
                keys.append((_monomial(pd, p), nu, i))
                parts.append(p)
    return keys, parts, counts


def lift(irrep: IrrepL, key: tuple) -> tuple:
    n_mono, nu, i = key
    return n_mono + irrep.space(nu).basis[i]


def gram_block(pd: ParabolicDatum, irrep: IrrepL, mu: Sequence) -> GramBlock:
    mu = vec(mu)
    keys, parts, counts = basis_of(irrep, mu)
    mod = irrep.module
    lifts = [lift(irrep, k) for k in keys]
    rows = [[mod.shapovalov(a, b) for b in lifts] for a in lifts]
    matrix = RatMatrix.from_rows(rows, cols=len(lifts))
    v_blocks = {nu: (irrep.space(nu).gram, c) for nu, c in counts.items()}
    return GramBlock(mu, keys, parts, matrix, v_blocks)


def normalization(pd: ParabolicDatum, block: GramBlock) -> Fraction:
    """Factor turning det(matrix) into the determinant in the normalized basis.

    Divides out the Levi Gram blocks (the e-basis is not orthonormal) and
    rescales each lowering operator x_{-b}, b in the nilradical, so that
    [x_b, sigma(x_b)] = h_b.
    """
    rs = pd.rs
    out = Fraction(1)
    for nu, (g, count) in block.v_blocks.items():
        d = det(g)
        if d == 0:
            raise ConsistencyError(f"Levi Gram block at {fmt_weight(nu)} is singular")
        out /= d ** count
    for p in block.partitions:
        for r, k in zip(p.roots, p.multiplicities):
            if k:
                _, c = rs.sigma(r.index)
                out *= (c * c / rs.kappa(r)) ** k
    return out


def brute_determinant(pd: ParabolicDatum, irrep: IrrepL, mu: Sequence) -> Fraction:
    block = gram_block(pd, irrep, mu)
    return det(block.matrix) * normalization(pd, block)


def kernel_vectors(pd: ParabolicDatum, irrep: IrrepL, mu: Sequence) -> list[PbwVector]:
    block = gram_block(pd, irrep, mu)
    return [PbwVector(dict(zip(block.basis_index, v))) for v in kernel_basis(block.matrix)]


def to_module(irrep: IrrepL, v: PbwVector) -> dict:
    out: dict = {}
    for key, c in v.terms.items():
        m = lift(irrep, key)
        out[m] = out.get(m, 0) + c
    return out


def from_module(irrep: IrrepL, x: dict) -> PbwVector:
    """Image in M_p(lam) of a combination of PBW monomials of M(lam)."""
    pd = irrep.pd
    n_idx = {pd.rs.negative(r).index for r in pd.delta_n}
    out: dict = {}
    for mono, c in x.items():
        k = 0
        while k < len(mono) and mono[k] in n_idx:
            k += 1
        n_mono, l_mono = mono[:k], mono[k:]
        nu = irrep.module.weight(l_mono)
        _check_depth(irrep, irrep.module.weight(mono))
        coords = irrep.coordinates(nu, l_mono)
        for i, a in enumerate(coords):
            if a:
                key = (n_mono, nu, i)
                out[key] = out.get(key, 0) + c * a
    return PbwVector(out)


def act(pd: ParabolicDatum, irrep: IrrepL, x: dict | int, v: PbwVector) -> PbwVector:
    """Action of a Lie superalgebra element (basis index or {index: coef}) on M_p(lam)."""
    if isinstance(x, int):
        x = {x: Fraction(1)}
    return from_module(irrep, irrep.module.act_element(x, to_module(irrep, v)))


def pairing(pd: ParabolicDatum, irrep: IrrepL, u: PbwVector, v: PbwVector) -> Fraction:
    return irrep.module.pair_vectors(to_module(irrep, u), to_module(irrep, v))


def weight_of(irrep: IrrepL, v: PbwVector) -> Weight | None:
    ws = {irrep.module.weight(lift(irrep, k)) for k in v.terms}
    if len(ws) > 1:
        raise SpecError("vector is not a weight vector")
    return ws.pop() if ws else None


def is_singular(pd: ParabolicDatum, irrep: IrrepL, v: PbwVector) -> bool:
    """True when every simple root vector kills v."""
    return all(act(pd, irrep, a.index, v).is_zero() for a in pd.rs.simple)


def casimir(pd: ParabolicDatum, lam: Sequence) -> Fraction:
    lam = vec(lam)
    rs = pd.rs
    return rs.form(w_add(lam, w_scale(2, rs.rho)), lam)


def kernel_weights(pd: ParabolicDatum, irrep: IrrepL, depth: int) -> list[Weight]:
    """Weights mu with ht(lam - mu) <= depth where the Gram block is singular."""
    out = []
    rs = pd.rs
    for pt in lattice_points(len(rs.simple), depth):
        eta = (Fraction(0),) * rs.rank
        for c, s in zip(pt, rs.simple):
            if c:
                eta = w_add(eta, w_scale(c, s.weight))
        mu = w_sub(irrep.lam, eta)
        block = gram_block(pd, irrep, mu)
        if block.size and det(block.matrix) == 0:
            out.append(mu)
    return out


def singular_kernel(pd: ParabolicDatum, irrep: IrrepL, mu: Sequence) -> list[PbwVector]:
    """Basis of the kernel vectors at mu that every simple root vector kills."""
    kern = kernel_vectors(pd, irrep, mu)
    if not kern:
        return []
    cols = []
    for a in pd.rs.simple:
        images = [act(pd, irrep, a.index, v).terms for v in kern]
        keys = sorted({k for img in images for k in img}, key=repr)
        for k in keys:
            cols.append([img.get(k, Fraction(0)) for img in images])
    if not cols:
        return kern
    combos = kernel_basis(RatMatrix.from_rows(cols, cols=len(kern)))
    out = []
    for c in combos:
        terms: dict = {}
        for coef, v in zip(c, kern):
            for k, x in v.terms.items():
                terms[k] = terms.get(k, 0) + coef * x
        out.append(PbwVector(terms))
    return out
