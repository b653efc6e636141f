"""Determining numbers, generating numbers and their minimum witnesses.

Both searches deepen over the subset size k = 0, 1, 2, ... . Non-existence at a
size is proved with orbit reduction: if D is determining (generating) then so
is its image under any automorphism, so at each node only one representative
per orbit of the current pointwise stabilizer needs to be tried. The reported
witness is the lexicographically least set of the minimum size, found by a
second, order-respecting pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .autos import (SearchStats, aut_order, automorphism_group, enumerate_automorphisms,
                    generator_sequence, stabilizer_orbits, stabilizer_witness)
from .config import CapExceeded, default_caps
from .groups import FiniteGroup, Subset, closure, derived_subgroup, factorize


@dataclass(frozen=True)
class DeterminingReport:
    descriptor: str
    alpha: int
    witness: Subset
    method: str  # enumerated-aut | constrained-search | exhaustive-oracle
    nodes_explored: int


@dataclass(frozen=True)
class GeneratingReport:
    descriptor: str
    gamma: int
    witness: Subset
    nodes_explored: int


class _Budget:
    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.nodes = 0

    def tick(self, lower: int, upper: int | None) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise CapExceeded(f"node budget {self.limit} exhausted", lower, upper)


# --------------------------------------------------------------------------
# pointwise stabilizers, explicit or by search


class _Explicit:
    """Stabilizer of D held as an array of its nontrivial elements."""

    def __init__(self, g: FiniteGroup, d: Subset, maps: np.ndarray):
        self.g, self.d, self.maps = g, d, maps

    def trivial(self) -> bool:
        return len(self.maps) == 0

    def size(self) -> int:
        return len(self.maps) + 1

    def orbits(self) -> list[np.ndarray]:
        """Non-singleton orbits, each sorted, ordered by least element."""
        n = self.g.order
        seen = np.zeros(n, dtype=bool)
        out = []
        moved = np.flatnonzero((self.maps != np.arange(n)).any(axis=0))
        for x in moved:
            if seen[x]:
                continue
            orb = np.union1d(self.maps[:, x], [x])
            seen[orb] = True
            out.append(orb)
        return out

    def restrict(self, x: int) -> "_Explicit":
        return _Explicit(self.g, tuple(sorted(self.d + (int(x),))), self.maps[self.maps[:, x] == x])


class _Chain:
    """Stabilizer of D known by its order, plus generators at the root.

    Orbit lengths give the order of each point stabilizer; once that order is
    small enough the stabilizer is enumerated and the search turns explicit.
    """

    def __init__(self, g: FiniteGroup, d: Subset, order: int, gens, stats: SearchStats, caps):
        self.g, self.d, self.order, self.gens = g, d, order, gens
        self.stats, self.caps = stats, caps
        self._orbits: list[np.ndarray] | None = None

    def trivial(self) -> bool:
        return self.order == 1

    def size(self) -> int:
        return self.order

    def orbits(self) -> list[np.ndarray]:
        if self._orbits is None:
            if self.gens is not None:
                self._orbits = _generated_orbits(self.g.order, self.gens)
            else:
                self._orbits = [np.array(o) for o in stabilizer_orbits(self.g, self.d, self.stats)
                                if len(o) > 1]
        return self._orbits

    def restrict(self, x: int):
        orbit = next(len(o) for o in self.orbits() if x in o)
        order = self.order // orbit
        d = tuple(sorted(self.d + (int(x),)))
        n = self.g.order
        if order <= self.caps.aut_cap and order * n <= self.caps.explicit_work:
            maps = enumerate_automorphisms(self.g, d)
            return _Explicit(self.g, d, maps[(maps != np.arange(n)).any(axis=1)])
        return _Chain(self.g, d, order, None, self.stats, self.caps)


def _generated_orbits(n: int, gens: np.ndarray) -> list[np.ndarray]:
    """Non-singleton orbits of the group generated by the rows of ``gens``."""
    label = np.arange(n)
    while True:
        new = label.copy()
        for s in gens:
            np.minimum.at(new, s, new)
            new = np.minimum(new, new[s])
        new = new[new]
        if (new == label).all():
            break
        label = new
    out = [np.flatnonzero(label == r) for r in np.unique(label)]
    return [o for o in out if len(o) > 1]


def _root_state(g: FiniteGroup, caps):
    stats = SearchStats()
    order = aut_order(g)
    if order <= caps.aut_cap and order * g.order <= caps.explicit_work:
        maps = enumerate_automorphisms(g)
        maps = maps[(maps != np.arange(g.order)).any(axis=1)]
        return _Explicit(g, (), maps), "enumerated-aut", stats
    gens = np.array([s.image for s in automorphism_group(g, 0).generators], dtype=np.int64).reshape(-1, g.order)
    return _Chain(g, (), order, gens, stats, caps), "constrained-search", stats


def _candidates(state, depth_left: int) -> list[np.ndarray]:
    size = state.size()
    if depth_left == 1 and size > state.g.order:
        return []
    orbits = state.orbits()
    if depth_left == 1:
        # the last element must have a regular orbit to kill the whole stabilizer
        orbits = [o for o in orbits if len(o) == size]
    return orbits


def _exists(state, depth_left: int, budget: _Budget, k: int, upper: int):
    budget.tick(k, upper)
    if state.trivial():
        return state.d
    if depth_left == 0:
        return None
    for orb in _candidates(state, depth_left):
        found = _exists(state.restrict(int(orb[0])), depth_left - 1, budget, k, upper)
        if found is not None:
            return found
    return None


def _lex(state, start: int, depth_left: int, budget: _Budget, k: int, collect: list | None):
    budget.tick(k, k)
    if state.trivial():
        if collect is None:
            return state.d
        collect.append(state.d)
        return None
    if depth_left == 0:
        return None
    orbits = _candidates(state, depth_left)
    if not orbits:
        return None
    moved = np.sort(np.concatenate(orbits))
    for x in moved[moved >= start].tolist():
        found = _lex(state.restrict(x), x + 1, depth_left - 1, budget, k, collect)
        if found is not None:
            return found
    return None


def determining_number(g: FiniteGroup, node_budget: int | None = None, caps=None) -> DeterminingReport:
    caps = caps or default_caps()
    if node_budget is not None:
        caps = caps.replace(node_budget=node_budget)
    root, method, stats = _root_state(g, caps)
    upper = len(generator_sequence(g)[0])
    budget = _Budget(caps.node_budget)
    k = 0
    while _exists(root, k, budget, k, upper) is None:
        k += 1
    witness = _lex(root, 0, k, budget, k, None)
    return DeterminingReport(g.descriptor, k, witness, method, budget.nodes + stats.nodes)


def is_determining_set(g: FiniteGroup, d) -> bool:
    return stabilizer_witness(g, tuple(d)) is None


def minimum_determining_sets(g: FiniteGroup, alpha: int | None = None, caps=None) -> list[Subset]:
    """Every determining set of size alpha(G), in lexicographic order."""
    caps = caps or default_caps()
    if alpha is None:
        alpha = determining_number(g, caps=caps).alpha
    if math.comb(g.order, alpha) > caps.subset_budget:
        raise CapExceeded(f"C({g.order},{alpha}) subsets exceed budget {caps.subset_budget}", alpha, alpha)
    root, _, _ = _root_state(g, caps)
    out: list[Subset] = []
    _lex(root, 0, alpha, _Budget(caps.node_budget), alpha, out)
    return out


# --------------------------------------------------------------------------
# generating number


class _Span:
    """Subgroup generated by a prefix, extendable by one element."""

    __slots__ = ("g", "gens", "elems", "seen")

    def __init__(self, g: FiniteGroup, gens=(), elems=None, seen=None):
        self.g = g
        self.gens = tuple(gens)
        self.elems = elems if elems is not None else [0]
        if seen is None:
            seen = bytearray(g.order)
            seen[0] = 1
        self.seen = seen

    def add(self, x: int) -> "_Span":
        rows = self.g.rows
        gens = self.gens + (x,)
        elems = self.elems[:]
        seen = bytearray(self.seen)
        old = len(elems)
        for k in range(old):
            y = rows[elems[k]][x]
            if not seen[y]:
                seen[y] = 1
                elems.append(y)
        k = old
        while k < len(elems):
            r = rows[elems[k]]
            k += 1
            for s in gens:
                y = r[s]
                if not seen[y]:
                    seen[y] = 1
                    elems.append(y)
        return _Span(self.g, gens, elems, seen)


def _gen_search(span: _Span, start: int, depth_left: int, budget: _Budget, k: int, upper: int):
    budget.tick(k, upper)
    n = span.g.order
    if len(span.elems) == n:
        return tuple(sorted(span.gens))
    if depth_left == 0:
        return None
    seen = span.seen
    for x in range(start, n):
        if seen[x]:
            continue
        found = _gen_search(span.add(x), x + 1, depth_left - 1, budget, k, upper)
        if found is not None:
            return found
    return None


def elementary_quotient_rank(g: FiniteGroup) -> int:
    """max over primes p of dim G/G'G^p; every generating set spans that F_p-space."""
    comm = list(derived_subgroup(g))
    best = 0
    for p in factorize(g.order):
        sub = closure(g, comm + [g.power(x, p) for x in range(g.order)])
        q, r = g.order // len(sub), 0
        while q > 1:
            q //= p
            r += 1
        best = max(best, r)
    return best


def generating_number(g: FiniteGroup, node_budget: int | None = None, caps=None) -> GeneratingReport:
    caps = caps or default_caps()
    budget = _Budget(caps.node_budget if node_budget is None else node_budget)
    if g.order == 1:
        return GeneratingReport(g.descriptor, 0, (), 0)
    upper = len(generator_sequence(g)[0])
    reps = [o[0] for o in stabilizer_orbits(g, ()) if o[0] != 0]
    k = max(1, elementary_quotient_rank(g))
    while k < upper:
        # any generating k-set has an automorphic image containing an orbit representative
        if any(_gen_search(_Span(g).add(r), 0, k - 1, budget, k, upper) is not None for r in reps):
            break
        k += 1
    witness = _gen_search(_Span(g), 0, k, budget, k, k)
    return GeneratingReport(g.descriptor, k, witness, budget.nodes)


def is_generating_set(g: FiniteGroup, s) -> bool:
    return len(closure(g, s)) == g.order


def is_deg(g: FiniteGroup, caps=None) -> bool:
    return determining_number(g, caps=caps).alpha == generating_number(g, caps=caps).gamma
