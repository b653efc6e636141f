"""Automorphisms, isomorphisms and homomorphism sets by generator-image search.

Every map is determined by the images of a short generating sequence
g_1, ..., g_r. The search assigns images level by level; after each assignment
the partial map is extended to <g_1..g_i> by breadth-first multiplication and
rejected at the first inconsistency. Candidate images are restricted to
elements with an equal automorphism-invariant fingerprint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .config import CapExceeded, default_caps
from .groups import FiniteGroup, GroupHom, closure, class_sizes, factorize


@dataclass(frozen=True, eq=False)
class Automorphism:
    group: FiniteGroup
    image: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Automorphism) and other.group is self.group and other.image == self.image

    def __hash__(self) -> int:
        return hash(self.image)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))

    def fixes(self, xs) -> bool:
        return all(self.image[x] == x for x in xs)

    def then(self, other: "Automorphism") -> "Automorphism":
        """``other`` after ``self``."""
        return Automorphism(self.group, tuple(other.image[y] for y in self.image))

    def inverse(self) -> "Automorphism":
        out = [0] * len(self.image)
        for x, y in enumerate(self.image):
            out[y] = x
        return Automorphism(self.group, tuple(out))


@dataclass(frozen=True)
class AutGroup:
    group: FiniteGroup
    generators: tuple[Automorphism, ...]
    elements: tuple[tuple[int, ...], ...] | None
    order: int
    capped: bool

    def automorphisms(self) -> Iterator[Automorphism]:
        if self.elements is None:
            raise CapExceeded("automorphism group was not enumerated")
        for img in self.elements:
            yield Automorphism(self.group, img)


# --------------------------------------------------------------------------
# invariants


def fingerprints(g: FiniteGroup) -> list[tuple[int, ...]]:
    """Per element: order, class size, centralizer order, p-th root counts."""
    if "fingerprints" in g.memo:
        return g.memo["fingerprints"]
    n = g.order
    ar = np.arange(n)
    cls = class_sizes(g)
    cols = [g.orders, cls, n // cls]
    for p in sorted(factorize(n)):
        cur = ar.copy()
        for _ in range(p - 1):
            cur = g.table[cur, ar]
        cols.append(np.bincount(cur, minlength=n))
    fps = [tuple(int(v) for v in row) for row in np.stack(cols, axis=1).tolist()]
    g.memo["fingerprints"] = fps
    return fps


def _fp_classes(g: FiniteGroup) -> dict[tuple, list[int]]:
    if "fp_classes" not in g.memo:
        out: dict[tuple, list[int]] = {}
        for x, fp in enumerate(fingerprints(g)):
            out.setdefault(fp, []).append(x)
        g.memo["fp_classes"] = out
    return g.memo["fp_classes"]


def generator_sequence(g: FiniteGroup, prefix: Sequence[int] = ()) -> tuple[list[int], list[int]]:
    """Irredundant generating sequence starting with ``prefix``.

    Prefix elements already generated by earlier ones are dropped; the rest is
    completed greedily with the element of largest order outside the current
    subgroup. Returns ``(gens, level)`` where ``level[x]`` is the index of the
    first generator whose addition brings ``x`` into the subgroup (-1 for 1).
    """
    cache = g.memo.setdefault("genseq", {})
    key = tuple(prefix)
    if key in cache:
        return cache[key]
    n = g.order
    level = [-2] * n
    level[0] = -1
    gens: list[int] = []
    size = 1

    def add(x: int) -> None:
        nonlocal size
        gens.append(x)
        sub = closure(g, gens)
        for y in sub:
            if level[y] == -2:
                level[y] = len(gens) - 1
        size = len(sub)

    for x in prefix:
        if level[x] == -2:
            add(x)
    if size < n:
        if "greedy_order" not in g.memo:
            g.memo["greedy_order"] = sorted(range(n), key=lambda y: (-int(g.orders[y]), y))
        for x in g.memo["greedy_order"]:
            if level[x] == -2:
                add(x)
                if size == n:
                    break
    result = (gens, level)
    if not prefix or len(cache) < 2000:
        cache[key] = result
    return result


# --------------------------------------------------------------------------
# the search core


def _grow(rows_g, rows_h, f, dom, used, gens, imgs, injective):
    """Extend f from <gens[:-1]> to <gens>; None on any inconsistency."""
    f = f[:]
    dom = dom[:]
    if injective:
        used = bytearray(used)
    g, hg = gens[-1], imgs[-1]
    old = len(dom)
    for k in range(old):
        x = dom[k]
        y = rows_g[x][g]
        v = rows_h[f[x]][hg]
        fy = f[y]
        if fy < 0:
            if injective:
                if used[v]:
                    return None
                used[v] = 1
            f[y] = v
            dom.append(y)
        elif fy != v:
            return None
    pairs = list(zip(gens, imgs))
    k = old
    while k < len(dom):
        x = dom[k]
        k += 1
        rx = rows_g[x]
        rfx = rows_h[f[x]]
        for g2, h2 in pairs:
            y = rx[g2]
            v = rfx[h2]
            fy = f[y]
            if fy < 0:
                if injective:
                    if used[v]:
                        return None
                    used[v] = 1
                f[y] = v
                dom.append(y)
            elif fy != v:
                return None
    return f, dom, used


class SearchStats:
    def __init__(self) -> None:
        self.nodes = 0


def _search(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], cands: Sequence[Sequence[int]],
            checks: Sequence[Sequence[tuple[int, int]]] = (), injective: bool = True,
            nontrivial: bool = False, stats: SearchStats | None = None) -> Iterator[list[int]]:
    """Yield complete image arrays of homomorphisms g -> h, in candidate order."""
    rows_g, rows_h = g.rows, h.rows
    r = len(gens)
    checks = list(checks) or [()] * r
    f0 = [-1] * g.order
    f0[0] = 0
    used0 = bytearray(h.order)
    used0[0] = 1
    imgs: list[int] = []

    def rec(i, f, dom, used):
        if i == r:
            if nontrivial and all(a == b for a, b in zip(gens, imgs)):
                return
            yield f
            return
        for c in cands[i]:
            if injective and used[c]:
                continue
            if stats is not None:
                stats.nodes += 1
            imgs.append(c)
            res = _grow(rows_g, rows_h, f, dom, used, list(gens[:i + 1]), imgs, injective)
            if res is not None and all(res[0][x] == y for x, y in checks[i]):
                yield from rec(i + 1, *res)
            imgs.pop()

    if r == 0:
        if not nontrivial:
            yield f0
        return
    yield from rec(0, f0, [0], used0)


def _pinned_problem(g: FiniteGroup, pins: dict[int, int]):
    """Generator sequence, candidate lists and deferred checks for a pinned search."""
    fp = fingerprints(g)
    classes = _fp_classes(g)
    if any(fp[x] != fp[y] for x, y in pins.items()):
        return None
    gens, level = generator_sequence(g, list(pins))
    cands = []
    for x in gens:
        cands.append([pins[x]] if x in pins else classes[fp[x]])
    checks: list[list[tuple[int, int]]] = [[] for _ in gens]
    gen_set = set(gens)
    for x, y in pins.items():
        if x == 0:
            if y != 0:
                return None
            continue
        if x not in gen_set:
            checks[level[x]].append((x, y))
    return gens, cands, checks


def find_automorphism(g: FiniteGroup, pins: dict[int, int], nontrivial: bool = False,
                      stats: SearchStats | None = None) -> Automorphism | None:
    """First automorphism (candidate-index order) honouring ``pins``."""
    prob = _pinned_problem(g, pins)
    if prob is None:
        return None
    gens, cands, checks = prob
    for f in _search(g, g, gens, cands, checks, nontrivial=nontrivial, stats=stats):
        return Automorphism(g, tuple(f))
    return None


def stabilizer_witness(g: FiniteGroup, fixed, stats: SearchStats | None = None) -> Automorphism | None:
    """A nontrivial automorphism fixing ``fixed`` pointwise, or None."""
    return find_automorphism(g, {x: x for x in fixed}, nontrivial=True, stats=stats)


def iter_automorphisms(g: FiniteGroup, pins: dict[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    prob = _pinned_problem(g, pins or {})
    if prob is None:
        return
    gens, cands, checks = prob
    for f in _search(g, g, gens, cands, checks):
        yield tuple(f)


# --------------------------------------------------------------------------
# orbits and the order of Aut(G)


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def stabilizer_orbits(g: FiniteGroup, fixed=(), stats: SearchStats | None = None) -> list[tuple[int, ...]]:
    """Orbits of the pointwise stabilizer of ``fixed`` in Aut(G), without enumerating it.

    Elements are scanned in index order; each is compared against the current
    orbit representatives of equal fingerprint by a pinned search, and every
    automorphism found is applied globally to merge orbits.
    """
    fixed = tuple(sorted(set(fixed)))
    key = ("orbits", fixed)
    if key in g.memo:
        return g.memo[key]
    n = g.order
    fp = fingerprints(g)
    base = {x: x for x in fixed}
    inside = set(closure(g, fixed))
    uf = _UnionFind(n)
    reps: list[int] = []
    for x in range(n):
        if x in inside or uf.find(x) != x:
            continue
        reps = [r for r in reps if uf.find(r) == r]
        for r in reps:
            if fp[r] != fp[x]:
                continue
            sigma = find_automorphism(g, {**base, r: x}, stats=stats)
            if sigma is not None:
                for y, z in enumerate(sigma.image):
                    uf.union(y, z)
                break
        else:
            reps.append(x)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(uf.find(x), []).append(x)
    out = sorted((tuple(v) for v in groups.values()), key=lambda o: o[0])
    if len(g.memo) < 10_000:
        g.memo[key] = out
    return out


def _chain(g: FiniteGroup, fixed: Sequence[int] = ()) -> tuple[int, list[Automorphism], list]:
    """Transversal chain of the pointwise stabilizer of ``fixed`` in Aut(G).

    The base is the generator sequence starting with ``fixed``. Level i is the
    stabilizer of the first i base points acting on point i; its orbit is
    closed under the automorphisms found so far at that level, and each orbit
    point keeps a transversal element mapping the base point onto it.
    """
    fixed_set = set(fixed)
    gens, _ = generator_sequence(g, sorted(fixed_set))
    classes = _fp_classes(g)
    fp = fingerprints(g)
    order = 1
    found: list[Automorphism] = []
    transversals: list[list[tuple[int, ...]]] = []
    ident = tuple(range(g.order))
    pinned = {y: y for y in fixed_set}
    for i, x in enumerate(gens):
        if x in fixed_set:
            continue
        base = {**pinned, **{y: y for y in gens[:i]}}
        trans = {x: ident}
        level_maps: list[Automorphism] = []
        for y in classes[fp[x]]:
            if y in trans:
                continue
            sigma = find_automorphism(g, {**base, x: y})
            if sigma is None:
                continue
            level_maps.append(sigma)
            found.append(sigma)
            # images of the known orbit under stabilizer elements stay in the orbit
            frontier = list(trans)
            while frontier:
                z = frontier.pop()
                tz = trans[z]
                for s in level_maps:
                    w = s.image[z]
                    if w not in trans:
                        trans[w] = tuple(s.image[v] for v in tz)
                        frontier.append(w)
        order *= len(trans)
        transversals.append([trans[y] for y in sorted(trans)])
    return order, found, transversals


def _transversal_chain(g: FiniteGroup) -> tuple[int, list[Automorphism]]:
    """|Aut G| by orbit-stabilizer along the generator sequence, with generators."""
    if "aut_chain" not in g.memo:
        order, found, transversals = _chain(g)
        g.memo["aut_chain"] = (order, found)
        g.memo["aut_transversals"] = transversals
    return g.memo["aut_chain"]


def enumerate_automorphisms(g: FiniteGroup, fixed: Sequence[int] = ()) -> np.ndarray:
    """The pointwise stabilizer of ``fixed`` (all of Aut(G) by default) as a
    sorted (order, n) array, built from the transversals.

    Every element factors uniquely as u_1 u_2 ... u_r with u_i taken from the
    level-i transversal, so the products are formed level by level.
    """
    if fixed:
        order, _, transversals = _chain(g, fixed)
    else:
        order, _ = _transversal_chain(g)
        transversals = g.memo["aut_transversals"]
    dtype = np.int16 if g.order < 2 ** 15 else np.int32
    maps = np.arange(g.order, dtype=dtype)[None, :]
    for trans in reversed(transversals):
        u = np.array(trans, dtype=dtype)
        maps = u[:, maps].reshape(-1, g.order)
    maps = np.unique(maps, axis=0)
    if len(maps) != order:
        raise AssertionError(f"transversal products gave {len(maps)} maps, orbit chain gives {order}")
    return maps


def aut_order(g: FiniteGroup) -> int:
    return _transversal_chain(g)[0]


def generating_automorphisms(g: FiniteGroup, cands: list[Automorphism], elements: set) -> list[Automorphism]:
    """Greedy irredundant subset of ``cands`` generating the group ``elements``."""
    kept: list[Automorphism] = []
    span = {tuple(range(g.order))}
    for s in cands:
        if s.image in span:
            continue
        kept.append(s)
        gens = np.array([k.image for k in kept])
        frontier = np.array(list(span))
        while len(frontier):
            prods = gens[:, frontier].reshape(-1, g.order)  # k after a
            fresh = [t for t in map(tuple, np.unique(prods, axis=0).tolist()) if t not in span]
            span.update(fresh)
            frontier = np.array(fresh)
        if len(span) == len(elements):
            break
    return kept


def automorphism_group(g: FiniteGroup, enumeration_cap: int | None = None) -> AutGroup:
    """Aut(G); fully enumerated when its order is within ``enumeration_cap``."""
    cap = default_caps().aut_cap if enumeration_cap is None else enumeration_cap
    key = ("autgroup", cap)
    if key in g.memo:
        return g.memo[key]
    order, level_maps = _transversal_chain(g)
    if order > cap:
        result = AutGroup(g, tuple(level_maps), None, order, True)
    else:
        elements = tuple(map(tuple, enumerate_automorphisms(g).tolist()))
        # the level maps already generate Aut(G)
        result = AutGroup(g, tuple(level_maps), elements, order, False)
    g.memo[key] = result
    return result


# --------------------------------------------------------------------------
# other maps


def is_automorphism(g: FiniteGroup, image: Sequence[int]) -> bool:
    """Bijective, fixes 1, and f(x s) = f(x) f(s) for every x and generator s.

    Checking the generator edges suffices: any y is a word in the generators,
    so f(xy) = f(x) f(y) follows by induction on the word length.
    """
    f = np.asarray(image, dtype=np.int64)
    n = g.order
    if f.shape != (n,) or f[0] != 0 or f.min() < 0 or f.max() >= n:
        return False
    if len(np.unique(f)) != n:
        return False
    gens, _ = generator_sequence(g)
    t = g.table
    for s in gens:
        if not np.array_equal(f[t[:, s]], t[f, f[s]]):
            return False
    return True


def inner_automorphism(g: FiniteGroup, x: int) -> Automorphism:
    """y -> x y x^-1."""
    t = g.table
    return Automorphism(g, tuple(t[t[x], g.inverse[x]].tolist()))


def hom_set(h: FiniteGroup, k: FiniteGroup, cap: int | None = None) -> list[GroupHom]:
    """All homomorphisms h -> k."""
    cap = default_caps().hom_cap if cap is None else cap
    gens, _ = generator_sequence(h)
    ko = k.orders.tolist()
    cands = [[y for y in range(k.order) if int(h.orders[x]) % ko[y] == 0] for x in gens]
    if math.prod(len(c) for c in cands) > cap:
        raise CapExceeded(f"hom_set({h.descriptor}, {k.descriptor}) exceeds {cap} candidate combinations")
    return [GroupHom(h, k, f) for f in _search(h, k, gens, cands, injective=False)]


def isomorphism(g: FiniteGroup, h: FiniteGroup) -> GroupHom | None:
    if g.order != h.order:
        return None
    fg, fh = fingerprints(g), fingerprints(h)
    if sorted(fg) != sorted(fh):
        return None
    classes = _fp_classes(h)
    gens, _ = generator_sequence(g)
    cands = [classes.get(fg[x], []) for x in gens]
    for f in _search(g, h, gens, cands):
        return GroupHom(g, h, f)
    return None


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return isomorphism(g, h) is not None
