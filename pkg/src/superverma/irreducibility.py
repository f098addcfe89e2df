"""Irreducibility of parabolic Verma modules.

The criterion sums chi_p(s_a . lam) over the non-isotropic roots a in Psi
and chi_p_alpha(lam - a) over the isotropic ones.  Written in Verma
characters this is a finite combination plus, for every isotropic root and
every w in W_l, an infinite alternating ladder

    sum_{n >= 0} det(w) (-1)^n ch M(w.(lam - a) - n w(a)).

Verma characters are linearly independent, so the sum vanishes iff every
coefficient vanishes.  Ladders are grouped by (direction, line); the tail of a
group far below its starts vanishes iff the signed starts cancel, and what is
left is finite and merged with the other terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .algebra import Root, Weight, fmt_weight, w_add, w_scale, w_sub
from .characters import FormalChar, ParabolicDatum
from .errors import SpecError
from .formula import eval_formula
from .linalg import RatMatrix, rank, vec
from .verma import DEFAULT_DEPTH, build_irrep_l, kernel_weights


@dataclass
class PsiSets:
    noniso: list  # (Root, n_alpha)
    iso: list  # Root

    def is_empty(self) -> bool:
        return not self.noniso and not self.iso

    def roots(self) -> list[Root]:
        return [a for a, _ in self.noniso] + list(self.iso)

    def to_json(self) -> dict:
        return {"noniso": [{"root": fmt_weight(a.weight), "n": n} for a, n in self.noniso],
                "iso": [fmt_weight(a.weight) for a in self.iso]}


def n_alpha(pd: ParabolicDatum, lam: Sequence, a: Root) -> Fraction:
    rs = pd.rs
    return 2 * rs.form(w_add(vec(lam), rs.rho), a.weight) / rs.form(a.weight, a.weight)


def psi_sets(pd: ParabolicDatum, lam: Sequence) -> PsiSets:
    lam = vec(lam)
    pd.require_dominant(lam)
    rs = pd.rs
    noniso, iso = [], []
    for a in pd.delta_n0bar:
        n = n_alpha(pd, lam, a)
        if n.denominator == 1 and n > 0:
            noniso.append((a, int(n)))
    for a in pd.delta1_noniso_plus:
        n = n_alpha(pd, lam, a)
        if n.denominator == 1 and n > 0 and n % 2 == 1:
            noniso.append((a, int(n)))
    lr = w_add(lam, rs.rho)
    for a in pd.delta1bar_plus:
        if rs.form(lr, a.weight) == 0:
            iso.append(a)
    return PsiSets(noniso, iso)


@dataclass
class DeltaClass:
    index: int
    members: list  # roots of the nilradical in this class
    span_witness: Root

    def to_json(self) -> dict:
        return {"index": self.index, "witness": fmt_weight(self.span_witness.weight),
                "members": [fmt_weight(a.weight) for a in self.members]}


def _span_rank(vectors: list) -> int:
    if not vectors:
        return 0
    return rank(RatMatrix.from_rows([list(v) for v in vectors]))


def in_span(pd: ParabolicDatum, alpha: Root, beta: Sequence) -> bool:
    """Is beta in Q Delta_l + Q alpha?"""
    base = [a.weight for a in pd.pi_l] + [alpha.weight]
    return _span_rank(base + [tuple(beta)]) == _span_rank(base)


def delta_classes(pd: ParabolicDatum) -> list[DeltaClass]:
    classes: list[DeltaClass] = []
    for a in pd.delta_n:
        for c in classes:
            if in_span(pd, c.span_witness, a.weight):
                c.members.append(a)
                break
        else:
            classes.append(DeltaClass(len(classes), [a], a))
    return classes


def class_of(pd: ParabolicDatum, classes: list[DeltaClass], a: Root) -> DeltaClass:
    for c in classes:
        if any(m.index == a.index for m in c.members):
            return c
    raise SpecError(f"root {fmt_weight(a.weight)} is not in the nilradical")


def class_roots(pd: ParabolicDatum, cls: DeltaClass) -> list[Root]:
    """The full set (Q Delta_l + Q alpha) cap Delta, both signs, Levi roots included."""
    return [r for r in pd.rs.roots if in_span(pd, cls.span_witness, r.weight)]


class VermaCombination:
    """Integer combination of Verma characters plus alternating ladders."""

    def __init__(self, pd: ParabolicDatum):
        self.pd = pd
        self.finite: dict = {}
        self.ladders: list = []  # (start, direction, sign)

    def _add(self, nu: Weight, c: int):
        v = self.finite.get(nu, 0) + c
        if v:
            self.finite[nu] = v
        else:
            self.finite.pop(nu, None)

    def add_chi_p(self, nu: Sequence, coef: int = 1):
        nu = vec(nu)
        for w, s in self.pd.weyl_group:
            self._add(self.pd.dot(w, nu), coef * s)

    def add_chi_p_alpha(self, nu: Sequence, alpha: Root, coef: int = 1):
        """sum_{n>=0} (-1)^n chi_p(nu - n alpha)."""
        nu = vec(nu)
        for w, s in self.pd.weyl_group:
            self.ladders.append((self.pd.dot(w, nu), w.apply(alpha.weight), coef * s))

    def reduce(self) -> tuple[dict, list]:
        """(finite coefficients after ladder cancellation, ladder groups with a nonzero tail)."""
        groups: dict = {}
        for start, d, s in self.ladders:
            k = next(i for i, x in enumerate(d) if x)
            t = start[k] / d[k]
            rep = w_sub(start, w_scale(t, d))
            frac = t - floor(t)
            groups.setdefault((d, rep, frac), []).append((int(t - frac), s))
        finite = dict(self.finite)
        tails = []
        for (d, rep, frac), items in groups.items():
            lo = min(p for p, _ in items)
            hi = max(p for p, _ in items)
            tail = sum(s * (-1) ** (p - lo) for p, s in items)
            if tail:
                tails.append({"direction": d, "line": rep, "offset": frac, "tail": tail,
                              "starts": sorted(items)})
                continue
            for pos in range(lo + 1, hi + 1):
                c = sum(s * (-1) ** (p - pos) for p, s in items if p >= pos)
                if c:
                    wt = w_add(rep, w_scale(frac + pos, d))
                    v = finite.get(wt, 0) + c
                    if v:
                        finite[wt] = v
                    else:
                        finite.pop(wt, None)
        return finite, tails

    def vanishes(self) -> bool:
        finite, tails = self.reduce()
        return not finite and not tails

    def render(self, top: Sequence, depth: int) -> FormalChar:
        """Truncated formal character below ``top`` (ladders expanded explicitly)."""
        pd = self.pd
        top = vec(top)
        out = FormalChar(top, depth, {})
        terms: dict = {}

        def put(nu, c):
            for mu in pd.weights_below(top, depth):
                p = pd.partition_count(w_sub(nu, mu))
                if p:
                    terms[mu] = terms.get(mu, 0) + c * p

        for nu, c in self.finite.items():
            put(nu, c)
        for start, d, s in self.ladders:
            n = 0
            ht_d = pd.rs.height(d)
            c0 = pd.rs.simple_coords(w_sub(top, start))
            if c0 is None:
                continue
            while sum(c0) + n * ht_d <= depth:
                put(w_sub(start, w_scale(n, d)), s * (-1) ** n)
                n += 1
        out.terms = {k: v for k, v in terms.items() if v}
        return out

    def to_json(self) -> dict:
        finite, tails = self.reduce()
        return {"verma_terms": [{"highest_weight": fmt_weight(k), "coef": v}
                                for k, v in sorted(finite.items())],
                "ladder_tails": [{"direction": fmt_weight(t["direction"]), "tail": t["tail"]}
                                 for t in tails]}


@dataclass
class CriterionResult:
    satisfied: bool  # the sum vanishes, i.e. no obstruction to irreducibility
    combination: VermaCombination
    witness: FormalChar
    shortcut: bool = False

    def to_json(self) -> dict:
        out = {"satisfied": self.satisfied, "shortcut": self.shortcut,
               "witness": self.witness.to_json()}
        if not self.shortcut:
            out.update(self.combination.to_json())
        return out


def _combination(pd: ParabolicDatum, lam: Weight, psi: PsiSets, keep=None) -> VermaCombination:
    comb = VermaCombination(pd)
    for a, n in psi.noniso:
        if keep is None or keep(a):
            comb.add_chi_p(w_sub(lam, w_scale(n, a.weight)))
    for a in psi.iso:
        if keep is None or keep(a):
            comb.add_chi_p_alpha(w_sub(lam, a.weight), a)
    return comb


def criterion_global(pd: ParabolicDatum, lam: Sequence, depth: int = DEFAULT_DEPTH,
                     shortcut: bool = True) -> CriterionResult:
    """Irreducible iff the combined sum vanishes.

    With ``shortcut`` a nonempty isotropic part decides reducibility at once;
    without it the ladder certificate is evaluated in full.
    """
    lam = vec(lam)
    psi = psi_sets(pd, lam)
    comb = _combination(pd, lam, psi)
    witness = comb.render(lam, depth)
    if shortcut and psi.iso:
        return CriterionResult(False, comb, witness, shortcut=True)
    return CriterionResult(comb.vanishes(), comb, witness)


def criterion_per_class(pd: ParabolicDatum, lam: Sequence, cls: DeltaClass,
                        depth: int = DEFAULT_DEPTH) -> CriterionResult:
    lam = vec(lam)
    psi = psi_sets(pd, lam)
    ids = {m.index for m in cls.members}
    comb = _combination(pd, lam, psi, keep=lambda a: a.index in ids)
    return CriterionResult(comb.vanishes(), comb, comb.render(lam, depth))


def _even_roots_in_class(pd: ParabolicDatum, a: Root) -> list[Root]:
    return [b for b in pd.rs.roots if b.parity == 0 and in_span(pd, a, b.weight)]


def condition_M(pd: ParabolicDatum, lam: Sequence) -> bool:
    lam = vec(lam)
    psi = psi_sets(pd, lam)
    if psi.iso:
        return False
    lr = w_add(lam, pd.rs.rho)
    return all(any(pd.rs.form(lr, b.weight) == 0 for b in _even_roots_in_class(pd, a))
               for a, _ in psi.noniso)


def condition_M_plus(pd: ParabolicDatum, lam: Sequence) -> bool:
    lam = vec(lam)
    psi = psi_sets(pd, lam)
    if psi.iso:
        return False
    rs = pd.rs
    lr = w_add(lam, rs.rho)
    levi = {r.weight for r in pd.delta_l}

    def ok(a: Root) -> bool:
        for b in _even_roots_in_class(pd, a):
            if rs.form(lr, b.weight) == 0 and rs.reflect(a.weight, b.weight) in levi:
                return True
        return False

    return all(ok(a) for a, _ in psi.noniso)


def is_regular(pd: ParabolicDatum, lam: Sequence) -> bool:
    rs = pd.rs
    lr = w_add(vec(lam), rs.rho)
    return all(rs.form(lr, b.weight) != 0 for b in rs.positive if b.parity == 0)


def condition_M_plus_plus(pd: ParabolicDatum, lam: Sequence) -> bool | None:
    """Psi empty when (lam+rho, b) != 0 for every even root b; None when not applicable."""
    if not is_regular(pd, lam):
        return None
    return psi_sets(pd, lam).is_empty()


@dataclass
class IrredReport:
    lam: Weight
    irreducible: bool
    psi: PsiSets
    global_result: CriterionResult
    per_class: list  # (DeltaClass, CriterionResult)
    M: bool
    M_plus: bool
    M_plus_plus: bool | None
    brute_check: dict | None = None

    @property
    def verdict(self) -> str:
        return "irreducible" if self.irreducible else "reducible"

    def to_json(self) -> dict:
        mpp = "n/a" if self.M_plus_plus is None else ("true" if self.M_plus_plus else "false")
        return {
            "lambda": fmt_weight(self.lam),
            "verdict": self.verdict,
            "psi": self.psi.to_json(),
            "criterion": self.global_result.to_json(),
            "classes": [dict(c.to_json(), satisfied=r.satisfied) for c, r in self.per_class],
            "M": self.M, "M_plus": self.M_plus, "M_plus_plus": mpp,
            "brute_check": self.brute_check,
        }


def brute_check(pd: ParabolicDatum, lam: Sequence, irreducible: bool, depth: int) -> dict:
    irrep = build_irrep_l(pd, lam, depth)
    ks = kernel_weights(pd, irrep, depth)
    agrees = not (irreducible and ks)
    return {"depth": depth, "agrees": agrees, "kernel_weights": [fmt_weight(k) for k in ks]}


def irreducibility_report(pd: ParabolicDatum, lam: Sequence, depth: int = DEFAULT_DEPTH,
                          brute_depth: int | None = None) -> IrredReport:
    lam = vec(lam)
    psi = psi_sets(pd, lam)
    glob = criterion_global(pd, lam, depth)
    per = [(c, criterion_per_class(pd, lam, c, depth)) for c in delta_classes(pd)]
    rep = IrredReport(lam, glob.satisfied, psi, glob, per, condition_M(pd, lam),
                      condition_M_plus(pd, lam), condition_M_plus_plus(pd, lam))
    if brute_depth is not None:
        rep.brute_check = brute_check(pd, lam, rep.irreducible, brute_depth)
    return rep


def formula_zero_weights(pd: ParabolicDatum, lam: Sequence, depth: int) -> list[Weight]:
    """Weights mu with ht(lam - mu) <= depth where D1 D2 D3 vanishes."""
    lam = vec(lam)
    return [mu for mu in pd.weights_below(lam, depth) if eval_formula(pd, lam, mu).is_zero]
