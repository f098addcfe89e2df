"""Truncated formal characters, partition functions and the Levi Weyl group.

Weights below the top weight are addressed by their offset in simple-root
coordinates, so a partition of ``eta`` is a decomposition of a non-negative
integer vector.  Characters are truncated at a height depth; every infinite
sum that appears (inverse factors of the Verma character, the alternating
series defining the isotropic exponents) terminates because the omitted terms
have height larger than the depth.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import Root, RootSystem, Weight, fmt_weight, w_add, w_scale, w_sub
from .errors import DomainError, ResourceError, SpecError
from .linalg import RatMatrix, det, vec

DEFAULT_WEYL_CAP = 10 ** 6


@dataclass(frozen=True)
class Partition:
    """Multiplicities over an ordered list of positive roots."""

    roots: tuple  # tuple of Root, the ordered support set
    multiplicities: tuple  # non-negative ints, parallel to ``roots``

    def __post_init__(self):
        for r, k in zip(self.roots, self.multiplicities):
            if k < 0 or (r.parity == 1 and k > 1):
                raise ValueError(f"invalid multiplicity {k} for root {fmt_weight(r.weight)}")

    @property
    def size(self) -> int:
        return sum(self.multiplicities)

    def total(self, rank: int) -> Weight:
        acc = (Fraction(0),) * rank
        for r, k in zip(self.roots, self.multiplicities):
            if k:
                acc = w_add(acc, w_scale(k, r.weight))
        return acc

    def __getitem__(self, root: Root) -> int:
        return self.multiplicities[self.roots.index(root)]

    def support(self) -> dict:
        return {r.weight: k for r, k in zip(self.roots, self.multiplicities) if k}

    def to_json(self) -> list:
        return [{"root": fmt_weight(r.weight), "mult": k}
                for r, k in zip(self.roots, self.multiplicities) if k]


@dataclass
class FormalChar:
    """Finitely supported integer map on weights, truncated below ``top``."""

    top: Weight
    depth: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(k): v for k, v in self.terms.items() if v}

    def coefficient(self, mu: Sequence) -> int:
        return self.terms.get(tuple(vec(mu)), 0)

    def __add__(self, other: "FormalChar") -> "FormalChar":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return FormalChar(self.top, min(self.depth, other.depth), out)

    def __neg__(self):
        return FormalChar(self.top, self.depth, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, FormalChar) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> list:
        return [{"weight": fmt_weight(k), "coef": v} for k, v in sorted(self.terms.items())]


class _PartitionCounter:
    """Memoized count of partitions of integer vectors over a fixed root list."""

    def __init__(self, vectors: list[tuple], odd: list[bool]):
        self.vectors = vectors
        self.odd = odd
        self.memo: dict = {}

    def count(self, eta: tuple, start: int = 0) -> int:
        if start == len(self.vectors):
            return 1 if not any(eta) else 0
        key = (start, eta)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        v = self.vectors[start]
        total = 0
        cur = eta
        k = 0
        while all(c >= 0 for c in cur):
            total += self.count(cur, start + 1)
            k += 1
            if self.odd[start] and k > 1:
                break
            cur = tuple(c - x for c, x in zip(cur, v))
        self.memo[key] = total
        return total

    def enumerate(self, eta: tuple, start: int = 0) -> list[tuple]:
        if start == len(self.vectors):
            return [()] if not any(eta) else []
        v = self.vectors[start]
        out = []
        cur = eta
        k = 0
        while all(c >= 0 for c in cur):
            if self.count(cur, start + 1):
                out.extend((k,) + rest for rest in self.enumerate(cur, start + 1))
            k += 1
            if self.odd[start] and k > 1:
                break
            cur = tuple(c - x for c, x in zip(cur, v))
        return out


def lattice_points(k: int, depth: int) -> Iterable[tuple]:
    """Non-negative integer vectors of length ``k`` with coordinate sum <= depth."""
    if k == 0:
        yield ()
        return
    for first in range(depth + 1):
        for rest in lattice_points(k - 1, depth - first):
            yield (first,) + rest


class ParabolicDatum:
    """A choice of even simple roots ``pi_l`` and everything derived from it.

    ``pi_l`` is a list of indices into ``rs.simple``.  ``n_order`` optionally
    permutes the nilradical roots; it fixes the PBW ordering used by the Gram
    computations but does not change any character.
    """

    def __init__(self, rs: RootSystem, pi_l: Sequence[int] = (), n_order: Sequence | None = None,
                 weyl_cap: int = DEFAULT_WEYL_CAP):
        self.rs = rs
        idx = list(pi_l)
        for i in idx:
            if not (0 <= i < len(rs.simple)):
                raise SpecError(f"simple root index {i} out of range 0..{len(rs.simple) - 1}")
            if rs.simple[i].parity != 0:
                raise SpecError(f"simple root {i} is odd; the Levi part must be even")
        self.pi_l_indices = tuple(sorted(set(idx)))
        self.pi_l = [rs.simple[i] for i in self.pi_l_indices]
        allowed = set(self.pi_l_indices)

        def in_l(r: Root) -> bool:
            c = rs.simple_coords(r.weight)
            return all(c[k] == 0 for k in range(len(c)) if k not in allowed)

        self.delta_l = [r for r in rs.roots if in_l(r)]
        self.delta_l_plus = [r for r in rs.positive if in_l(r)]
        delta_n = [r for r in rs.positive if not in_l(r)]
        if n_order is not None:
            order = [rs.root(r.weight if isinstance(r, Root) else r) for r in n_order]
            if sorted(o.index for o in order) != sorted(r.index for r in delta_n):
                raise SpecError("n_order must be a permutation of the nilradical roots")
            delta_n = order
        self.delta_n = delta_n
        self.delta_n0 = [r for r in delta_n if r.parity == 0]
        self.delta_n0bar = [r for r in delta_n if rs.in_delta0bar(r)]
        self.delta1_plus = [r for r in rs.positive if r.parity == 1]
        self.delta1bar_plus = [r for r in self.delta1_plus if rs.in_delta1bar(r)]
        self.delta1_noniso_plus = [r for r in self.delta1_plus if not rs.in_delta1bar(r)]
        self.weyl_cap = weyl_cap
        self._counters: dict = {}

    # -- basic predicates
    def with_n_order(self, n_order) -> "ParabolicDatum":
        return ParabolicDatum(self.rs, self.pi_l_indices, n_order, self.weyl_cap)

    def pairings(self, lam: Sequence) -> list[Fraction]:
        return [self.rs.coroot_pairing(lam, a) for a in self.pi_l]

    def is_integral(self, lam: Sequence) -> bool:
        return all(p.denominator == 1 for p in self.pairings(lam))

    def is_dominant(self, lam: Sequence) -> bool:
        return all(p.denominator == 1 and p >= 0 for p in self.pairings(lam))

    def require_dominant(self, lam: Sequence):
        if not self.is_dominant(lam):
            raise DomainError(f"weight {fmt_weight(lam)} is not dominant integral for the "
                              f"Levi simple roots {[fmt_weight(a.weight) for a in self.pi_l]}")

    def height(self, eta: Sequence) -> Fraction:
        return self.rs.height(vec(eta))

    def positive_coords(self, eta: Sequence) -> tuple | None:
        """Simple-root coordinates of ``eta`` as ints when ``eta`` is in Q+, else None."""
        c = self.rs.simple_coords(tuple(eta))
        if c is None:
            return None
        if any(x.denominator != 1 or x < 0 for x in c):
            return None
        return tuple(int(x) for x in c)

    def leq(self, mu: Sequence, lam: Sequence) -> bool:
        return self.positive_coords(w_sub(vec(lam), vec(mu))) is not None

    # -- partitions
    def _root_set(self, over: str) -> list[Root]:
        if over == "full":
            return list(self.rs.positive)
        if over == "l":
            return list(self.delta_l_plus)
        if over == "n":
            return list(self.delta_n)
        raise SpecError(f"unknown partition set {over!r}")

    def _counter(self, over: str, excluded: Root | None = None) -> _PartitionCounter:
        key = (over, excluded.index if excluded is not None else None)
        c = self._counters.get(key)
        if c is None:
            roots = [r for r in self._root_set(over) if excluded is None or r.index != excluded.index]
            vecs = [self.positive_coords(r.weight) for r in roots]
            c = _PartitionCounter(vecs, [r.parity == 1 for r in roots])
            self._counters[key] = c
        return c

    def partition_count(self, eta: Sequence, over: str = "full", excluded: Root | None = None) -> int:
        coords = self.positive_coords(tuple(vec(eta)))
        if coords is None:
            return 0
        if excluded is not None and excluded.parity != 1:
            raise DomainError("only odd roots can be excluded")
        return self._counter(over, excluded).count(coords)

    def enumerate_partitions(self, eta: Sequence, over: str = "n") -> list[Partition]:
        coords = self.positive_coords(tuple(vec(eta)))
        if coords is None:
            return []
        roots = tuple(self._root_set(over))
        return [Partition(roots, mult) for mult in self._counter(over).enumerate(coords)]

    # -- Weyl group of the Levi part
    @cached_property
    def weyl_group(self) -> list[tuple[RatMatrix, int]]:
        rs = self.rs
        n = rs.rank
        gens = []
        for a in self.pi_l:
            aa = rs.form(a.weight, a.weight)
            ba = rs.form_matrix.apply(a.weight)
            gens.append(RatMatrix(n, n, [(1 if i == j else 0) - 2 * a.weight[i] * ba[j] / aa
                                         for i in range(n) for j in range(n)]))
        ident = RatMatrix.identity(n)
        seen = {ident.entries: ident}
        queue = deque([ident])
        while queue:
            w = queue.popleft()
            for g in gens:
                x = g @ w
                if x.entries not in seen:
                    seen[x.entries] = x
                    if len(seen) > self.weyl_cap:
                        raise ResourceError(f"Weyl group exceeds the cap of {self.weyl_cap} elements")
                    queue.append(x)
        return [(w, int(det(w))) for w in seen.values()]

    def reflection(self, alpha: Root) -> RatMatrix:
        rs = self.rs
        n = rs.rank
        aa = rs.form(alpha.weight, alpha.weight)
        ba = rs.form_matrix.apply(alpha.weight)
        return RatMatrix(n, n, [(1 if i == j else 0) - 2 * alpha.weight[i] * ba[j] / aa
                                for i in range(n) for j in range(n)])

    def dot(self, w: RatMatrix, lam: Sequence) -> Weight:
        rho = self.rs.rho
        return w_sub(w.apply(w_add(vec(lam), rho)), rho)

    # -- characters
    def weights_below(self, top: Weight, depth: int):
        k = len(self.rs.simple)
        for pt in lattice_points(k, depth):
            eta = (Fraction(0),) * self.rs.rank
            for c, s in zip(pt, self.rs.simple):
                if c:
                    eta = w_add(eta, w_scale(c, s.weight))
            yield w_sub(top, eta)

    def ch_verma(self, lam: Sequence, depth: int) -> FormalChar:
        lam = vec(lam)
        terms = {mu: self.partition_count(w_sub(lam, mu)) for mu in self.weights_below(lam, depth)}
        return FormalChar(lam, depth, terms)

    def ch_irrep_l(self, lam: Sequence, depth: int) -> FormalChar:
        lam = vec(lam)
        self.require_dominant(lam)
        shifted = [(self.dot(w, lam), s) for w, s in self.weyl_group]
        terms = {}
        for mu in self.weights_below(lam, depth):
            terms[mu] = sum(s * self.partition_count(w_sub(x, mu), over="l") for x, s in shifted)
        return FormalChar(lam, depth, terms)

    def ch_parabolic_verma(self, lam: Sequence, depth: int) -> FormalChar:
        lam = vec(lam)
        self.require_dominant(lam)
        terms = {mu: self.chi_p(lam, mu) for mu in self.weights_below(lam, depth)}
        return FormalChar(lam, depth, terms)

    def chi_p(self, nu: Sequence, mu: Sequence) -> int:
        """Coefficient of e^mu in the alternating sum over W_l of ch M(w.nu)."""
        nu, mu = vec(nu), vec(mu)
        return sum(s * self.partition_count(w_sub(self.dot(w, nu), mu)) for w, s in self.weyl_group)

    def chi_p_alpha(self, nu: Sequence, alpha: Root, mu: Sequence) -> int:
        """Coefficient of e^mu in sum_{n>=0} (-1)^n chi_p(nu - n alpha)."""
        if not (alpha.parity == 1 and self.rs.is_isotropic(alpha)):
            raise DomainError(f"root {fmt_weight(alpha.weight)} is not odd isotropic")
        nu, mu = vec(nu), vec(mu)
        total = 0
        for w, s in self.weyl_group:
            start = w_sub(self.dot(w, nu), mu)
            step = w.apply(alpha.weight)
            c0 = self.rs.simple_coords(start)
            if c0 is None:
                continue
            ht0 = sum(c0)
            ht_step = self.rs.height(step)
            n = 0
            cur = start
            while ht0 - n * ht_step >= 0:
                total += s * (-1) ** n * self.partition_count(cur)
                n += 1
                cur = w_sub(cur, step)
        return total

    def describe(self) -> dict:
        return {
            "pi_l": [fmt_weight(a.weight) for a in self.pi_l],
            "delta_l_plus": [fmt_weight(a.weight) for a in self.delta_l_plus],
            "delta_n": [fmt_weight(a.weight) for a in self.delta_n],
            "weyl_group_order": len(self.weyl_group),
        }
