"""Closed-form determinant of the contravariant form on M_p(lam)^mu.

D(lam; mu) = c * D1 * D2 * D3 with c depending only on lam - mu:

* D1 runs over even nilradical roots a with a/2 not a root, r >= 1, factor
  (lam+rho, a) - r/2 (a, a) with exponent chi_p(lam - r a)_mu;
* D2 runs over odd roots a with 2a a root, odd multiples 2r-1, factor
  (lam+rho, a) - (2r-1)/2 (a, a) with exponent chi_p(lam - (2r-1) a)_mu;
* D3 runs over the remaining odd roots (isotropic here), factor (lam+rho, a)
  with exponent chi_p_alpha(lam - a)_mu.

The constant c is not computed; :func:`verify_offset` checks that the ratio of
the brute-force determinant to D1 D2 D3 depends on lam - mu only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import Root, Weight, fmt_weight, w_add, w_scale, w_sub
from .characters import ParabolicDatum
from .errors import ConsistencyError, DomainError, SamplingError, SpecError
from .linalg import RatMatrix, kernel_basis, solve, vec
from .verma import basis_of, brute_determinant, build_irrep_l

EVEN_BAR = "even_bar"
ODD_NONISO = "odd_noniso"
ODD_ISO = "odd_iso"


@dataclass(frozen=True)
class Factor:
    root: Root
    kind: str
    r: int | None  # multiple of the root; None for isotropic factors
    exponent: int
    value: Fraction  # value of the linear form at lam
    shift: Fraction  # the form is (lam+rho, root) - shift

    def linear_form(self, pd: ParabolicDatum) -> tuple:
        """(coefficients on lam, constant) of the factor as an affine function."""
        rs = pd.rs
        coeffs = rs.form_matrix.apply(self.root.weight)
        return coeffs, rs.form(rs.rho, self.root.weight) - self.shift

    def to_json(self) -> dict:
        return {"root": fmt_weight(self.root.weight), "kind": self.kind, "r": self.r,
                "exponent": self.exponent, "value": str(self.value)}


@dataclass
class FormulaResult:
    lam: Weight
    mu: Weight
    factors: list
    value: Fraction
    is_zero: bool
    groups: list = field(default_factory=list)

    @property
    def total_degree(self) -> int:
        return sum(f.exponent for f in self.factors)

    def to_json(self) -> dict:
        return {"lambda": fmt_weight(self.lam), "mu": fmt_weight(self.mu),
                "factors": [f.to_json() for f in self.factors],
                "value": str(self.value), "is_zero": self.is_zero,
                "total_degree": self.total_degree}


def _max_r(pd: ParabolicDatum, lam: Weight, mu: Weight) -> int:
    c = pd.positive_coords(w_sub(lam, mu))
    if c is None:
        raise DomainError(f"mu = {fmt_weight(mu)} is not below lambda = {fmt_weight(lam)}")
    # W_l permutes the nilradical roots, so every term of chi_p(lam - r a) sits at
    # least r levels below lam; r beyond ht(lam - mu) contributes nothing
    return sum(c)


def enumerate_factors(pd: ParabolicDatum, lam: Sequence, mu: Sequence) -> list[Factor]:
    rs = pd.rs
    lam, mu = vec(lam), vec(mu)
    pd.require_dominant(lam)
    h = _max_r(pd, lam, mu)
    lr = w_add(lam, rs.rho)
    out: list[Factor] = []
    for a in pd.delta_n0bar:
        aa = rs.form(a.weight, a.weight)
        base = rs.form(lr, a.weight)
        for r in range(1, h + 1):
            e = pd.chi_p(w_sub(lam, w_scale(r, a.weight)), mu)
            if e:
                shift = Fraction(r, 2) * aa
                out.append(Factor(a, EVEN_BAR, r, e, base - shift, shift))
    for a in pd.delta1_noniso_plus:
        aa = rs.form(a.weight, a.weight)
        base = rs.form(lr, a.weight)
        for r in range(1, h + 1, 2):
            e = pd.chi_p(w_sub(lam, w_scale(r, a.weight)), mu)
            if e:
                shift = Fraction(r, 2) * aa
                out.append(Factor(a, ODD_NONISO, r, e, base - shift, shift))
    for a in pd.delta1bar_plus:
        e = pd.chi_p_alpha(w_sub(lam, a.weight), a, mu)
        if e:
            out.append(Factor(a, ODD_ISO, None, e, rs.form(lr, a.weight), Fraction(0)))
    return out


def _canonical(coeffs: tuple, const: Fraction) -> tuple[tuple, Fraction]:
    """Scale an affine form so its first nonzero coefficient is 1."""
    lead = next((c for c in coeffs if c), None)
    if lead is None:
        lead = const if const else Fraction(1)
    return (tuple(c / lead for c in coeffs), const / lead), lead


def component_directions(pd: ParabolicDatum) -> list[tuple]:
    """Basis of the directions along which the Levi pairings stay fixed."""
    rs = pd.rs
    if not pd.pi_l:
        return [tuple(Fraction(int(i == j)) for j in range(rs.rank)) for i in range(rs.rank)]
    rows = RatMatrix.from_rows([list(rs.form_matrix.apply(a.weight)) for a in pd.pi_l])
    return kernel_basis(rows)


def product_of(pd: ParabolicDatum, lam: Weight, factors: list[Factor]) -> tuple[Fraction, bool, list]:
    """Exact value of prod value^exponent, merging factors proportional on the component.

    Two factors are merged when their linear forms agree up to a scalar on the
    affine subspace through lam where the Levi pairings are fixed; on that
    subspace the product is a polynomial, so a vanishing group must have a
    non-negative net exponent.
    """
    dirs = component_directions(pd)
    groups: dict = {}
    for f in factors:
        coeffs = tuple(pd.rs.form(f.root.weight, d) for d in dirs)
        key, lead = _canonical(coeffs, f.value)
        g = groups.setdefault(key, {"scale": Fraction(1), "net": 0, "value": f.value / lead})
        g["scale"] *= lead ** f.exponent
        g["net"] += f.exponent
    value = Fraction(1)
    zero = False
    report = []
    for key, g in groups.items():
        v, net = g["value"], g["net"]
        report.append({"value": str(v), "net_exponent": net})
        value *= g["scale"]
        if v == 0:
            if net < 0:
                raise ConsistencyError(
                    f"factor vanishing at lambda = {fmt_weight(lam)} has net exponent {net}")
            if net > 0:
                zero = True
        else:
            value *= v ** net
    return (Fraction(0) if zero else value), zero, report


def eval_formula(pd: ParabolicDatum, lam: Sequence, mu: Sequence) -> FormulaResult:
    lam, mu = vec(lam), vec(mu)
    factors = enumerate_factors(pd, lam, mu)
    value, zero, groups = product_of(pd, lam, factors)
    return FormulaResult(lam, mu, factors, value, zero, groups)


def quasi_root_zero_locus(pd: ParabolicDatum, lam: Sequence, bound: int) -> list[tuple]:
    """Residuals (lam+rho, b) - (b, b)/2 for quasi-roots b = r a with ht(b) <= bound."""
    rs = pd.rs
    lr = w_add(vec(lam), rs.rho)
    out = []
    for a in rs.positive:
        ht = rs.height(a.weight)
        r = 1
        while r * ht <= bound:
            b = w_scale(r, a.weight)
            if not any(b == x for x, _ in out):
                out.append((b, rs.form(lr, b) - rs.form(b, b) / 2))
            r += 1
    return out


# -- sampling and verification

def levi_cartan(pd: ParabolicDatum) -> RatMatrix:
    rs = pd.rs
    return RatMatrix.from_rows([[rs.coroot_pairing(b.weight, a) for b in pd.pi_l] for a in pd.pi_l],
                               cols=len(pd.pi_l))


def adjust_pairings(pd: ParabolicDatum, x: Sequence, targets: Sequence) -> Weight:
    """x - sum c_b b (b in Pi_l) with prescribed coroot pairings against Pi_l."""
    x = vec(x)
    if not pd.pi_l:
        return x
    cur = [pd.rs.coroot_pairing(x, a) for a in pd.pi_l]
    rhs = [c - vec([t])[0] for c, t in zip(cur, targets)]
    # pairing of sum c_b b with a^vee is (A c)_a where A[a][b] = <b, a^vee>
    coeffs = solve(levi_cartan(pd), rhs)
    for c, b in zip(coeffs, pd.pi_l):
        x = w_sub(x, w_scale(c, b.weight))
    return x


def random_dominant(pd: ParabolicDatum, rng: random.Random, pairings: Sequence | None = None,
                    spread: int = 12, max_den: int = 7, max_pairing: int = 2) -> Weight:
    """Random rational lam with the given (or random) Levi coroot pairings."""
    x = [Fraction(rng.randint(-spread * max_den, spread * max_den), rng.randint(1, max_den))
         for _ in range(pd.rs.rank)]
    if pairings is None:
        pairings = [rng.randint(0, max_pairing) for _ in pd.pi_l]
    return adjust_pairings(pd, x, pairings)


def random_integral_dominant(pd: ParabolicDatum, rng: random.Random, spread: int = 3) -> Weight:
    x = [Fraction(rng.randint(-spread, spread)) for _ in range(pd.rs.rank)]
    return adjust_pairings(pd, x, [rng.randint(0, 2) for _ in pd.pi_l])


@dataclass
class Sample:
    lam: Weight
    brute: Fraction
    formula: Fraction

    @property
    def ratio(self) -> Fraction | None:
        return self.brute / self.formula if self.formula else None

    def to_json(self) -> dict:
        r = self.ratio
        return {"lambda": fmt_weight(self.lam), "brute": str(self.brute),
                "formula": str(self.formula), "ratio": None if r is None else str(r)}


@dataclass
class VerificationReport:
    algebra: str
    pi_l: list
    eta: Weight
    seed: int
    pairings: list
    samples: list
    zero_locus: list
    constant_c: Fraction | None
    passed: bool
    reason: str = ""

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "pi_l": self.pi_l, "eta": fmt_weight(self.eta),
                "levi_pairings": [str(k) for k in self.pairings],
                "samples": [s.to_json() for s in self.samples],
                "zero_locus": [s.to_json() for s in self.zero_locus],
                "constant_c": None if self.constant_c is None else str(self.constant_c),
                "pass": self.passed, "reason": self.reason, "seed": self.seed}


def _formula_value(pd, lam, mu, corrupt: bool) -> Fraction:
    res = eval_formula(pd, lam, mu)
    v = res.value
    if corrupt:
        # negative control: one extra linear factor the brute side does not have
        a = pd.delta_n[0] if pd.delta_n else pd.rs.positive[0]
        v *= pd.rs.form(w_add(vec(lam), pd.rs.rho), a.weight)
    return v


def verify_offset(pd: ParabolicDatum, eta: Sequence, samples: int = 3, seed: int = 0,
                  depth: int | None = None, zero_checks: int = 3, corrupt: bool = False,
                  max_attempts: int = 200, pairings: Sequence | None = None) -> VerificationReport:
    """Check that brute/formula is one nonzero constant over sampled lam.

    All samples share the Levi coroot pairings ``pairings`` (drawn from the
    seed when omitted): the dimension of M_p(lam)^mu, and with it the
    constant, can change between components with different pairings.
    """
    eta = vec(eta)
    coords = pd.positive_coords(eta)
    if coords is None:
        raise SpecError(f"eta = {fmt_weight(eta)} is not a non-negative combination of simple roots")
    if samples < 1:
        raise SpecError("need at least one sample")
    h = sum(coords)
    depth = h if depth is None else depth
    if h > depth:
        raise SpecError(f"height of eta is {h}, beyond depth {depth}")
    rng = random.Random(seed)
    if pairings is None:
        pairings = [rng.randint(0, 2) for _ in pd.pi_l]
    pairings = [int(k) for k in pairings]
    if len(pairings) != len(pd.pi_l) or any(k < 0 for k in pairings):
        raise SpecError("need one non-negative integer pairing per Levi simple root")
    drawn: list[Sample] = []
    seen = set()
    attempts = 0
    while len(drawn) < samples:
        attempts += 1
        if attempts > max_attempts:
            raise SamplingError("could not draw enough weights off the zero locus")
        lam = random_dominant(pd, rng, pairings)
        if lam in seen:
            continue
        seen.add(lam)
        mu = w_sub(lam, eta)
        fv = _formula_value(pd, lam, mu, corrupt)
        if fv == 0:
            continue
        irrep = build_irrep_l(pd, lam, h)
        drawn.append(Sample(lam, brute_determinant(pd, irrep, mu), fv))
    zeros: list[Sample] = []
    attempts = 0
    while len(zeros) < zero_checks and attempts < max_attempts:
        attempts += 1
        lam = random_integral_dominant(pd, rng)
        mu = w_sub(lam, eta)
        fv = _formula_value(pd, lam, mu, corrupt)
        if fv != 0 or lam in seen:
            continue
        seen.add(lam)
        irrep = build_irrep_l(pd, lam, h)
        zeros.append(Sample(lam, brute_determinant(pd, irrep, mu), fv))
    ratios = [s.ratio for s in drawn]
    passed = True
    reason = ""
    if any(r == 0 for r in ratios):
        passed, reason = False, "brute determinant vanishes off the zero locus"
    elif len(set(ratios)) != 1:
        passed, reason = False, "ratio brute/formula is not constant"
    elif any(z.brute != 0 for z in zeros):
        passed, reason = False, "formula vanishes where the brute determinant does not"
    const = ratios[0] if passed else None
    return VerificationReport(pd.rs.spec.label, [fmt_weight(a.weight) for a in pd.pi_l], eta, seed,
                              pairings, drawn, zeros, const, passed, reason)


# -- degree along a line

def generic_direction(pd: ParabolicDatum, rng: random.Random, tries: int = 100) -> Weight:
    """Direction orthogonal to the Levi coroots and not orthogonal to any nilradical root."""
    rs = pd.rs
    for _ in range(tries):
        x = [Fraction(rng.randint(-9, 9)) for _ in range(rs.rank)]
        d = adjust_pairings(pd, x, [0] * len(pd.pi_l))
        if all(rs.form(d, a.weight) != 0 for a in pd.delta_n):
            return d
    raise SamplingError("no generic direction found")


def newton_degree(ts: Sequence, ys: Sequence) -> int:
    """Degree of the interpolating polynomial (-1 for the zero polynomial)."""
    coef = list(ys)
    n = len(ts)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (ts[i] - ts[i - j])
    deg = -1
    for k, c in enumerate(coef):
        if c:
            deg = k
    return deg


@dataclass
class DegreeReport:
    eta: Weight
    direction: Weight
    degree: int
    expected: int
    points: int

    @property
    def passed(self) -> bool:
        return self.degree == self.expected

    def to_json(self) -> dict:
        return {"eta": fmt_weight(self.eta), "direction": fmt_weight(self.direction),
                "degree": self.degree, "expected": self.expected, "points": self.points,
                "pass": self.passed}


def degree_check(pd: ParabolicDatum, eta: Sequence, direction: Sequence | None = None,
                 points: int | None = None, seed: int = 0) -> DegreeReport:
    rs = pd.rs
    eta = vec(eta)
    rng = random.Random(seed)
    if direction is None:
        direction = generic_direction(pd, rng)
    direction = vec(direction)
    if any(rs.coroot_pairing(direction, a) != 0 for a in pd.pi_l):
        raise SpecError("direction must be orthogonal to the Levi coroots")
    if any(rs.form(direction, a.weight) == 0 for a in pd.delta_n):
        raise SpecError("direction is not generic")
    base = random_dominant(pd, rng)
    h = sum(pd.positive_coords(eta))
    irrep0 = build_irrep_l(pd, base, h)
    keys, _, _ = basis_of(irrep0, w_sub(base, eta))
    bound = sum(len(k[0]) + len(irrep0.space(k[1]).basis[k[2]]) for k in keys)
    if points is None:
        points = bound + 2
    if points < bound + 2:
        raise SpecError(f"need at least {bound + 2} interpolation points")
    ts, ys = [], []
    for t in range(points):
        lam = w_add(base, w_scale(t, direction))
        irrep = build_irrep_l(pd, lam, h)
        ts.append(Fraction(t))
        ys.append(brute_determinant(pd, irrep, w_sub(lam, eta)))
    expected = eval_formula(pd, base, w_sub(base, eta)).total_degree
    return DegreeReport(eta, direction, newton_degree(ts, ys), expected, points)
