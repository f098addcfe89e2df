"""Root data and explicit realizations of gl(m|n), osp(M|2n) and D(2,1;a).

Every algebra is turned into the same object, a :class:`RootSystem`: a basis
``H_0..H_{r-1}`` of the Cartan subalgebra (dual to the epsilon/delta
coordinates of weights) followed by one root vector per root, a bracket table
of structure constants, and the anti-automorphism ``sigma``.

gl and osp come from supermatrices with the supercommutator; sigma is the
plain transpose, which is an (ungraded) anti-automorphism of U(g).  D(2,1;a)
is built as sl(2)^3 + C^2 (x) C^2 (x) C^2 with parameters (1, a, -1-a).

Root vectors are not rescaled to make ``[x_a, sigma(x_a)] = h_a``; over the
rationals that is impossible for the delta-delta roots of gl(m|n), n >= 2.
The ratio ``kappa(a)`` with ``[x_a, sigma(x_a)] = kappa(a) h_a`` is recorded
instead, and the Gram determinant is corrected by it exactly (see
:mod:`superverma.verma`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import IsotropyError, SpecError
from .linalg import RatMatrix, kernel_basis, rat, solve, vec

FAMILIES = ("gl", "osp", "d21a")

Weight = tuple  # tuple of Fraction, epsilon/delta coordinates


# --- weight arithmetic -------------------------------------------------------

def w_add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def w_sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def w_scale(c, a: Weight) -> Weight:
    return tuple(c * x for x in a)


def w_zero(rank: int) -> Weight:
    return (Fraction(0),) * rank


def is_zero(a: Weight) -> bool:
    return not any(a)


# --- algebra description ----------------------------------------------------

@dataclass(frozen=True)
class AlgebraSpec:
    family: str
    m: int
    n: int
    alpha: Fraction | None = None

    def validate(self, allow_purely_even: bool = False) -> "AlgebraSpec":
        if self.family not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not isinstance(self.m, int) or not isinstance(self.n, int) or self.m < 0 or self.n < 0:
            raise SpecError("m and n must be non-negative integers")
        if self.family == "gl":
            if self.m < 1 or (self.n < 1 and not allow_purely_even):
                raise SpecError("gl(m|n) needs m, n >= 1")
        elif self.family == "osp":
            if self.n < 1 or self.m < 1:
                raise SpecError("osp(M|2n) needs M >= 1 and n >= 1")
        else:
            if self.alpha is None:
                raise SpecError("D(2,1;alpha) needs alpha")
            if self.alpha in (0, -1):
                raise SpecError("D(2,1;alpha) is not simple for alpha in {0, -1}")
        return self

    @property
    def label(self) -> str:
        if self.family == "gl":
            return f"gl({self.m}|{self.n})"
        if self.family == "osp":
            return f"osp({self.m}|{2 * self.n})"
        return f"D(2,1;{self.alpha})"

    def to_json(self) -> dict:
        out = {"family": self.family, "m": self.m, "n": self.n}
        if self.alpha is not None:
            out["alpha"] = str(self.alpha)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraSpec":
        try:
            family = obj["family"]
            m = int(obj.get("m", 0))
            n = int(obj.get("n", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"malformed algebra spec: {exc}") from None
        alpha = obj.get("alpha")
        if alpha is not None:
            try:
                alpha = Fraction(str(alpha))
            except ValueError:
                raise SpecError(f"bad alpha {alpha!r}") from None
        # osp is addressed as osp(M|2n) with "n" meaning the 2n half
        return cls(family, m, n, alpha)


@dataclass(frozen=True)
class Root:
    weight: Weight
    parity: int
    index: int  # basis index of the root vector in the realization

    def __neg__(self):  # pragma: no cover - convenience only
        raise TypeError("use RootSystem.negative(root)")

    @property
    def is_odd(self) -> bool:
        return self.parity == 1


# --- sparse supermatrix helpers --------------------------------------------

def _supercommutator(a: dict, b: dict, pa: int, pb: int) -> dict:
    out: dict = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + x * y
    sign = -1 if not (pa and pb) else 1
    for (i, k), x in b.items():
        for (k2, j), y in a.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + sign * x * y
    return {k: v for k, v in out.items() if v}


@dataclass
class _Realization:
    rank: int
    labels: list[str]
    form: RatMatrix
    regular: Weight
    cartan: list  # basis elements (opaque) spanning h, dual to coordinates
    root_vectors: dict  # weight -> (element, parity)
    bracket_fn: object
    decompose_fn: object  # element -> list of (basis position, coef) over cartan+roots
    transpose_fn: object | None = None


def _gl_realization(m: int, n: int) -> _Realization:
    N = m + n
    par = [0] * m + [1] * n
    labels = [f"e{i + 1}" for i in range(m)] + [f"d{j + 1}" for j in range(n)]

    def wt(i, j):
        w = [Fraction(0)] * N
        w[i] += 1
        w[j] -= 1
        return tuple(w)

    cartan = [{(i, i): Fraction(1)} for i in range(N)]
    roots = {}
    for i in range(N):
        for j in range(N):
            if i != j:
                roots[wt(i, j)] = ({(i, j): Fraction(1)}, (par[i] + par[j]) % 2)
    form = RatMatrix.diag([1] * m + [-1] * n)
    regular = tuple(Fraction(N - k) for k in range(N))
    return _finish_matrix_realization(N, labels, form, regular, cartan, roots, par)


def _osp_realization(M: int, n: int) -> _Realization:
    m = M // 2
    odd_M = M % 2 == 1
    # even indices: e_1..e_m, e_-1..e_-m, [e_0]; odd indices: f_1..f_n, f_-1..f_-n
    even_dim = M
    N = M + 2 * n
    par = [0] * even_dim + [1] * (2 * n)
    rank = m + n
    vec_wt = []
    for i in range(m):
        vec_wt.append(tuple(Fraction(1 if k == i else 0) for k in range(rank)))
    for i in range(m):
        vec_wt.append(tuple(Fraction(-1 if k == i else 0) for k in range(rank)))
    if odd_M:
        vec_wt.append(w_zero(rank))
    for j in range(n):
        vec_wt.append(tuple(Fraction(1 if k == m + j else 0) for k in range(rank)))
    for j in range(n):
        vec_wt.append(tuple(Fraction(-1 if k == m + j else 0) for k in range(rank)))

    B = {}
    for i in range(m):
        B[(i, m + i)] = 1
        B[(m + i, i)] = 1
    if odd_M:
        B[(2 * m, 2 * m)] = 1
    for j in range(n):
        a, b = M + j, M + n + j
        B[(a, b)] = 1
        B[(b, a)] = -1

    cartan = []
    for i in range(m):
        cartan.append({(i, i): Fraction(1), (m + i, m + i): Fraction(-1)})
    for j in range(n):
        cartan.append({(M + j, M + j): Fraction(1), (M + n + j, M + n + j): Fraction(-1)})

    # root spaces: solve the osp condition inside span{E_ab : wt(a)-wt(b) = root}
    groups: dict = {}
    for a in range(N):
        for b in range(N):
            w = w_sub(vec_wt[a], vec_wt[b])
            if not is_zero(w):
                groups.setdefault(w, []).append((a, b))
    roots = {}
    for w, cells in groups.items():
        p = (par[cells[0][0]] + par[cells[0][1]]) % 2
        # condition (X^T B)_{ab} + (-1)^{|X||a|} (B X)_{ab} = 0 for all a, b
        eqs = []
        for a in range(N):
            for b in range(N):
                row = []
                for (i, j) in cells:
                    # X = E_ij: (X^T B)_{ab} = [a == j] B[i, b]; (B X)_{ab} = B[a, i] [b == j]
                    c = 0
                    if a == j:
                        c += B.get((i, b), 0)
                    if b == j:
                        c += (-1) ** (p * par[a]) * B.get((a, i), 0)
                    row.append(c)
                if any(row):
                    eqs.append(row)
        mat = RatMatrix.from_rows(eqs, cols=len(cells)) if eqs else RatMatrix.zero(0, len(cells))
        ker = kernel_basis(mat)
        if len(ker) == 0:
            continue
        if len(ker) != 1:
            raise AssertionError(f"root space for {w} has dimension {len(ker)}")
        v = ker[0]
        scale = next(x for x in v if x != 0)
        elt = {cells[k]: v[k] / scale for k in range(len(cells)) if v[k] != 0}
        roots[w] = (elt, p)

    labels = [f"e{i + 1}" for i in range(m)] + [f"d{j + 1}" for j in range(n)]
    form = RatMatrix.diag([1] * m + [-1] * n)
    # distinguished Borel: epsilons first for osp(2|2n), deltas first otherwise
    order = list(range(rank)) if M == 2 else list(range(m, rank)) + list(range(m))
    regular = [Fraction(0)] * rank
    for pos, k in enumerate(order):
        regular[k] = Fraction(rank - pos)
    # sigma(X) = D X^T D^-1 with D = -1 on f_-j preserves osp
    dsign = [1] * (M + n) + [-1] * n
    return _finish_matrix_realization(N, labels, form, tuple(regular), cartan, roots, par, dsign)


def _finish_matrix_realization(N, labels, form, regular, cartan, roots, par,
                               dsign=None) -> _Realization:
    rank = len(labels)

    def parity_of(elt):
        (i, j) = next(iter(elt))
        return (par[i] + par[j]) % 2

    root_list = list(roots.items())
    # pivot cell per root vector for fast decomposition
    pivots = {}
    for w, (elt, _) in root_list:
        cell = min(elt)
        pivots[cell] = (w, elt[cell])
    # Cartan coordinates: solve on the diagonal
    diag_rows = sorted({c[0] for h in cartan for c in h})
    cmat = RatMatrix.from_rows([[h.get((d, d), 0) for h in cartan] for d in diag_rows], cols=rank)

    def decompose(elt: dict):
        """Return ({weight: coef}, cartan_coords) for an element of the algebra."""
        out = {}
        rest = dict(elt)
        diag = {k: v for k, v in rest.items() if k[0] == k[1]}
        for k in diag:
            rest.pop(k)
        h = None
        if diag:
            b = [diag.get((d, d), 0) for d in diag_rows]
            h = _solve_rect(cmat, b)
        while rest:
            cell = min(rest)
            if cell not in pivots:
                raise AssertionError(f"element not in the algebra: {elt}")
            w, pv = pivots[cell]
            c = rest[cell] / pv
            out[w] = c
            for k, v in roots[w][0].items():
                nv = rest.get(k, 0) - c * v
                if nv:
                    rest[k] = nv
                else:
                    rest.pop(k, None)
        return out, h

    def bracket(a, b, pa, pb):
        return _supercommutator(a, b, pa, pb)

    d = dsign or [1] * N

    def transpose(elt):
        return {(j, i): v * d[j] * d[i] for (i, j), v in elt.items()}

    return _Realization(rank, labels, form, regular, cartan, roots, bracket, decompose, transpose)


def _solve_rect(m: RatMatrix, b):
    from .linalg import solve_consistent
    x = solve_consistent(m, b)
    if x is None:
        raise AssertionError("diagonal element outside the Cartan subalgebra")
    return x


# D(2,1;a): elements are dicts over symbolic basis keys
#   ("h", i), ("e", i), ("f", i) for the three sl(2)'s, ("v", (a, b, c)) odd.

def _d21a_realization(alpha: Fraction) -> _Realization:
    s = (Fraction(1), alpha, -1 - alpha)
    rank = 3
    labels = ["e1", "e2", "e3"]

    def unit(k):
        return tuple(Fraction(1 if t == k else 0) for t in range(3))

    roots = {}
    for i in range(3):
        roots[w_scale(2, unit(i))] = ({("e", i): Fraction(1)}, 0)
        roots[w_scale(-2, unit(i))] = ({("f", i): Fraction(1)}, 0)
    signs = [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
    for sg in signs:
        roots[tuple(Fraction(x) for x in sg)] = ({("v", sg): Fraction(1)}, 1)
    cartan = [{("h", i): Fraction(1)} for i in range(3)]

    def psi(x, y):  # symplectic form on C^2 with psi(+,-) = 1
        if x == y:
            return 0
        return 1 if x == 1 else -1

    def p(x, y):  # sl(2) element p(u,w)(z) = psi(w,z) u + psi(u,z) w
        if x == 1 and y == 1:
            return {"e": Fraction(2)}
        if x == -1 and y == -1:
            return {"f": Fraction(-2)}
        return {"h": Fraction(-1)}

    def act_sl2(kind, i, sg):
        """x_i acting on the odd basis vector v_sg; returns (coef, new_sg) or None."""
        t = sg[i]
        if kind == "h":
            return Fraction(t), sg
        if kind == "e":
            if t == -1:
                return Fraction(1), sg[:i] + (1,) + sg[i + 1:]
            return None
        if t == 1:
            return Fraction(1), sg[:i] + (-1,) + sg[i + 1:]
        return None

    def bracket_basis(x, y):
        (kx, ix), (ky, iy) = x, y
        if kx != "v" and ky != "v":
            if ix != iy:
                return {}
            table = {("h", "e"): ("e", 2), ("h", "f"): ("f", -2), ("e", "f"): ("h", 1)}
            if (kx, ky) in table:
                k, c = table[(kx, ky)]
                return {(k, ix): Fraction(c)}
            if (ky, kx) in table:
                k, c = table[(ky, kx)]
                return {(k, ix): Fraction(-c)}
            return {}
        if kx != "v":
            r = act_sl2(kx, ix, iy)
            return {} if r is None else {("v", r[1]): r[0]}
        if ky != "v":
            r = act_sl2(ky, iy, ix)
            return {} if r is None else {("v", r[1]): -r[0]}
        out = {}
        for i in range(3):
            others = [j for j in range(3) if j != i]
            coef = s[i] * psi(ix[others[0]], iy[others[0]]) * psi(ix[others[1]], iy[others[1]])
            if coef:
                for k, c in p(ix[i], iy[i]).items():
                    out[(k, i)] = out.get((k, i), 0) + coef * c
        return {k: v for k, v in out.items() if v}

    def bracket(a, b, pa, pb):
        out = {}
        for x, cx in a.items():
            for y, cy in b.items():
                for k, v in bracket_basis(x, y).items():
                    out[k] = out.get(k, 0) + cx * cy * v
        return {k: v for k, v in out.items() if v}

    key_to_weight = {next(iter(elt)): w for w, (elt, _) in roots.items()}

    def decompose(elt):
        out = {}
        h = None
        for k, v in elt.items():
            if k[0] == "h":
                if h is None:
                    h = [Fraction(0)] * 3
                h[k[1]] += v
            else:
                out[key_to_weight[k]] = v
        return out, (tuple(h) if h is not None else None)

    form = RatMatrix.diag([x / 2 for x in s])
    regular = (Fraction(4), Fraction(2), Fraction(1))
    return _Realization(rank, labels, form, regular, cartan, roots, bracket, decompose, None)


# --- the root system object --------------------------------------------------

class RootSystem:
    """Full root datum plus structure constants of one algebra instance.

    Basis positions: ``0..rank-1`` are the Cartan elements ``H_k`` (with
    ``<lam, H_k> = lam[k]``), followed by one root vector per root in the
    order of :attr:`roots` (positive roots first, then their negatives in the
    same order).
    """

    def __init__(self, spec: AlgebraSpec, real: _Realization, regular: Weight):
        self.spec = spec
        self.rank = real.rank
        self.labels = real.labels
        self.form_matrix = real.form
        self.regular = regular
        self._real = real

        weights = list(real.root_vectors)
        for w in weights:
            val = sum(a * b for a, b in zip(w, regular))
            if val == 0:
                raise SpecError(f"positivity element {_fmt(regular)} is not regular: "
                                f"root {_fmt(w)} pairs to 0")
        pos = [w for w in weights if sum(a * b for a, b in zip(w, regular)) > 0]
        pos_set = set(pos)
        simple = [w for w in pos
                  if not any(w_sub(w, b) in pos_set for b in pos)]
        order_pos = {k: i for i, k in enumerate(sorted(range(self.rank),
                                                       key=lambda k: -regular[k]))}

        def simple_key(w):
            first = min(order_pos[k] for k in range(self.rank) if w[k] != 0)
            return (first, tuple(-x for x in w))

        simple.sort(key=simple_key)
        self._simple_w = simple
        self._simple_mat = RatMatrix.from_rows([list(s) for s in simple]).transpose()
        self._simple_solver = _SpanSolver(simple, self.rank)

        def height_of(w):
            return sum(self._simple_solver.coords(w))

        pos.sort(key=lambda w: (height_of(w), simple_key(w)))
        ordered = pos + [w_scale(-1, w) for w in pos]
        self.roots: list[Root] = []
        for idx, w in enumerate(ordered):
            parity = real.root_vectors[w][1]
            self.roots.append(Root(w, parity, self.rank + idx))
        self._by_weight = {r.weight: r for r in self.roots}
        self.positive: list[Root] = self.roots[:len(pos)]
        self.simple: list[Root] = [self._by_weight[w] for w in simple]
        self.dim = self.rank + len(self.roots)

        self.parity = [0] * self.rank + [r.parity for r in self.roots]
        self._elements = list(real.cartan) + [real.root_vectors[r.weight][0] for r in self.roots]
        self._build_brackets()
        self._build_sigma()

    # -- construction helpers
    def _to_basis(self, elt) -> dict:
        roots, h = self._real.decompose_fn(elt)
        out = {}
        if h is not None:
            for k, v in enumerate(h):
                if v:
                    out[k] = Fraction(v)
        for w, c in roots.items():
            if c:
                out[self._by_weight[w].index] = Fraction(c)
        return out

    def _build_brackets(self):
        table = {}
        bfn = self._real.bracket_fn
        for a in range(self.dim):
            for b in range(self.dim):
                res = bfn(self._elements[a], self._elements[b], self.parity[a], self.parity[b])
                table[(a, b)] = tuple(sorted(self._to_basis(res).items())) if res else ()
        self._bracket = table

    def _build_sigma(self):
        sigma = {k: (k, Fraction(1)) for k in range(self.rank)}
        if self._real.transpose_fn is not None:
            for r in self.roots:
                img = self._to_basis(self._real.transpose_fn(self._elements[r.index]))
                if len(img) != 1:
                    raise AssertionError(f"transpose of x_{_fmt(r.weight)} left the root space")
                (k, c), = img.items()
                sigma[r.index] = (k, c)
        else:
            sigma.update(self._solve_sigma())
        self._sigma = sigma
        kappa = {}
        for r in self.positive:
            k, c = sigma[r.index]
            br = dict(self.bracket(r.index, k))
            h = self.h_alpha(r.weight)
            ratio = None
            for t in range(self.rank):
                got = br.get(t, 0) * c
                if h[t] != 0:
                    q = got / h[t]
                    if ratio is None:
                        ratio = q
                    elif q != ratio:
                        raise AssertionError("[x_a, sigma(x_a)] is not proportional to h_a")
                elif got != 0:
                    raise AssertionError("[x_a, sigma(x_a)] is not proportional to h_a")
            if not ratio:
                raise AssertionError(f"degenerate pairing for root {_fmt(r.weight)}")
            kappa[r.weight] = ratio
        self._kappa = kappa

    def _solve_sigma(self) -> dict:
        """sigma for D(2,1;a): e_i -> c_i f_i and a per-factor sign on the odd part.

        With c = (1, 1, -1) and sigma(v_(s1,s2,s3)) = prod_i t_i v_(-s1,-s2,-s3),
        where t_i = 1 for s_i = +1 and t_i = -1/c_i otherwise, sigma is an
        anti-automorphism (checked in the test suite).
        """
        c = (1, 1, -1)
        sigma = {}
        for r in self.roots:
            w = r.weight
            neg = self._by_weight[w_scale(-1, w)].index
            if r.parity == 0:
                i = next(k for k in range(3) if w[k] != 0)
                sigma[r.index] = (neg, Fraction(c[i]) if w[i] > 0 else Fraction(1, c[i]))
            else:
                t = Fraction(1)
                for i in range(3):
                    if w[i] < 0:
                        t *= Fraction(-1, c[i])
                sigma[r.index] = (neg, t)
        return sigma

    # -- queries
    def bracket(self, a: int, b: int) -> tuple:
        return self._bracket[(a, b)]

    def sigma(self, a: int) -> tuple:
        """``sigma(basis[a]) = coef * basis[b]``; returns ``(b, coef)``."""
        return self._sigma[a]

    def sigma_element(self, x: dict) -> dict:
        out = {}
        for a, c in x.items():
            b, t = self._sigma[a]
            out[b] = out.get(b, 0) + c * t
        return {k: v for k, v in out.items() if v}

    def bracket_elements(self, x: dict, y: dict) -> dict:
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, v in self._bracket[(a, b)]:
                    out[k] = out.get(k, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def kappa(self, alpha: Root | Weight) -> Fraction:
        w = alpha.weight if isinstance(alpha, Root) else tuple(alpha)
        if w in self._kappa:
            return self._kappa[w]
        return self._kappa[w_scale(-1, w)]

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        if len(x) != self.rank or len(y) != self.rank:
            raise SpecError(f"rank mismatch: expected length {self.rank}")
        B = self.form_matrix
        return sum((rat(x[i]) * B[i, j] * rat(y[j])
                    for i in range(self.rank) for j in range(self.rank) if B[i, j]),
                   Fraction(0))

    def h_alpha(self, alpha: Sequence) -> tuple:
        """Cartan coordinates of h_alpha, i.e. ``<lam, h_alpha> = (lam, alpha)``."""
        return self.form_matrix.apply(vec(alpha))

    def coroot_pairing(self, lam: Sequence, alpha: Root | Sequence) -> Fraction:
        a = alpha.weight if isinstance(alpha, Root) else vec(alpha)
        aa = self.form(a, a)
        if aa == 0:
            raise IsotropyError(f"root {_fmt(a)} is isotropic; no coroot")
        return 2 * self.form(lam, a) / aa

    def reflect(self, alpha: Sequence, x: Sequence) -> Weight:
        a = alpha.weight if isinstance(alpha, Root) else vec(alpha)
        c = self.coroot_pairing(x, a)
        return w_sub(vec(x), w_scale(c, a))

    def is_root(self, w: Sequence) -> bool:
        return tuple(w) in self._by_weight

    def root(self, w: Sequence) -> Root:
        return self._by_weight[tuple(vec(w))]

    def negative(self, r: Root) -> Root:
        return self._by_weight[w_scale(-1, r.weight)]

    def root_of_index(self, idx: int) -> Root:
        return self.roots[idx - self.rank]

    def is_isotropic(self, r: Root) -> bool:
        return r.parity == 1 and self.form(r.weight, r.weight) == 0

    def in_delta0bar(self, r: Root) -> bool:
        if r.parity != 0:
            return False
        half = w_scale(Fraction(1, 2), r.weight)
        return not (half in self._by_weight and self._by_weight[half].parity == 1)

    def in_delta1bar(self, r: Root) -> bool:
        if r.parity != 1:
            return False
        dbl = w_scale(2, r.weight)
        return not (dbl in self._by_weight and self._by_weight[dbl].parity == 0)

    @cached_property
    def rho(self) -> Weight:
        acc = w_zero(self.rank)
        for r in self.positive:
            acc = w_add(acc, r.weight) if r.parity == 0 else w_sub(acc, r.weight)
        return w_scale(Fraction(1, 2), acc)

    def simple_coords(self, w: Sequence) -> tuple | None:
        """Coordinates of ``w`` over the simple roots, or None outside their span."""
        return self._simple_solver.coords(vec(w))

    def height(self, w: Sequence) -> Fraction:
        c = self.simple_coords(w)
        if c is None:
            raise SpecError(f"{_fmt(w)} is not in the span of the roots")
        return sum(c, Fraction(0))

    def describe(self) -> dict:
        return {
            "algebra": self.spec.label,
            "coordinates": self.labels,
            "rank": self.rank,
            "form_diagonal": [str(self.form_matrix[i, i]) for i in range(self.rank)],
            "positive_roots": [
                {"root": fmt_weight(r.weight),
                 "parity": "odd" if r.parity else "even",
                 "isotropic": self.is_isotropic(r)}
                for r in self.positive],
            "simple_roots": [{"index": i, "root": fmt_weight(r.weight),
                              "parity": "odd" if r.parity else "even"}
                             for i, r in enumerate(self.simple)],
            "rho": fmt_weight(self.rho),
        }

    def __repr__(self):
        return f"RootSystem({self.spec.label}, |positive|={len(self.positive)})"


class _SpanSolver:
    """Solve ``w = sum c_i v_i`` for linearly independent ``v_i``."""

    def __init__(self, vectors: list, rank: int):
        self.vectors = vectors
        k = len(vectors)
        cols = RatMatrix.from_rows([list(v) for v in vectors], cols=rank).transpose() \
            if vectors else RatMatrix.zero(rank, 0)
        # choose k coordinate rows that make a nonsingular square system
        rows: list[int] = []
        from .linalg import rank as mrank
        for i in range(rank):
            trial = rows + [i]
            if mrank(cols.submatrix(trial, list(range(k)))) == len(trial):
                rows.append(i)
            if len(rows) == k:
                break
        if len(rows) != k:
            raise AssertionError("simple roots are linearly dependent")
        self.rows = rows
        sq = cols.submatrix(rows, list(range(k)))
        self.inv = RatMatrix.from_rows(
            [list(solve(sq, [1 if t == j else 0 for t in range(k)])) for j in range(k)],
            cols=k).transpose() if k else None
        self.cols = cols
        self._cache: dict = {}

    def coords(self, w: tuple):
        hit = self._cache.get(w, False)
        if hit is not False:
            return hit
        k = len(self.vectors)
        if k == 0:
            res = () if is_zero(w) else None
        else:
            c = self.inv.apply([w[i] for i in self.rows])
            res = c if self.cols.apply(c) == tuple(w) else None
        if len(self._cache) < 200000:
            self._cache[w] = res
        return res


def _is_anti_automorphism(rs: RootSystem, sigma: dict) -> bool:
    for a in range(rs.dim):
        for b in range(rs.dim):
            lhs = {}
            for k, v in rs.bracket(a, b):
                t, c = sigma[k]
                lhs[t] = lhs.get(t, 0) + v * c
            sa, ca = sigma[a]
            sb, cb = sigma[b]
            rhs = {}
            for k, v in rs.bracket(sb, sa):
                rhs[k] = rhs.get(k, 0) + v * ca * cb
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                return False
    return True


def check_anti_automorphism(rs: RootSystem) -> bool:
    """True when sigma([a, b]) = [sigma(b), sigma(a)] on all basis pairs."""
    return _is_anti_automorphism(rs, rs._sigma)


def _fmt(w) -> str:
    return "(" + ", ".join(str(x) for x in w) + ")"


def fmt_weight(w) -> list[str]:
    return [str(x) for x in w]


def build_algebra(spec: AlgebraSpec, positivity="standard",
                  allow_purely_even: bool = False) -> RootSystem:
    """Construct the root system; ``positivity`` is "standard" or a regular element."""
    spec.validate(allow_purely_even=allow_purely_even)
    if spec.family == "gl":
        real = _gl_realization(spec.m, spec.n)
    elif spec.family == "osp":
        real = _osp_realization(spec.m, spec.n)
    else:
        real = _d21a_realization(Fraction(spec.alpha))
    if isinstance(positivity, str):
        if positivity != "standard":
            raise SpecError(f"unknown positivity {positivity!r}")
        regular = real.regular
    else:
        regular = vec(positivity)
        if len(regular) != real.rank:
            raise SpecError(f"regular element must have {real.rank} coordinates")
    return RootSystem(spec, real, regular)


def parse_algebra_json(obj: dict | str) -> tuple[AlgebraSpec, object]:
    """Parse the algebra JSON object; returns (spec, positivity)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    spec = AlgebraSpec.from_json(obj)
    pos = obj.get("positivity", "standard")
    if not isinstance(pos, str):
        try:
            pos = vec(str(x) for x in pos)
        except (ValueError, TypeError):
            raise SpecError(f"bad positivity element {pos!r}") from None
    return spec, pos
