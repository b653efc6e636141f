"""Concrete finite groups stored as Cayley tables.

Elements are indices ``0..n-1`` into a dense multiplication table; index 0 is
always the identity. Subsets and subgroups are plain sorted tuples of indices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .config import CapExceeded, default_caps


class GroupError(ValueError):
    """Invalid construction parameters or a violated precondition."""


Subset = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    labels: tuple[str, ...]
    descriptor: str = "G"
    factors: tuple["FiniteGroup", ...] = ()
    memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        t = np.ascontiguousarray(self.table, dtype=np.int32)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "labels", tuple(self.labels))
        check_table(t, self.labels)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.descriptor!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested Python lists, for tight scalar loops."""
        ints = list(range(self.order))
        get = ints.__getitem__
        return [list(map(get, row)) for row in self.table.tolist()]

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.table == 0, axis=1).astype(np.int32)
        inv.setflags(write=False)
        return inv

    @cached_property
    def inv(self) -> list[int]:
        return self.inverse.tolist()

    @cached_property
    def orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        out = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while True:
            hit = (cur == 0) & (out == 0)
            out[hit] = k
            if out.all():
                break
            cur = self.table[cur, ar]
            k += 1
        out.setflags(write=False)
        return out

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def power(self, x: int, k: int) -> int:
        k %= int(self.orders[x])
        r = 0
        row = self.rows
        for _ in range(k):
            r = row[r][x]
        return r

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroupError(f"{label!r} is not an element of {self.descriptor}") from None

    def label_set(self, xs: Iterable[int]) -> list[str]:
        return [self.labels[x] for x in xs]

    def all(self) -> Subset:
        return tuple(range(self.order))


def check_table(t: np.ndarray, labels: Sequence[str], assoc_cap: int | None = None) -> None:
    """Raise GroupError unless ``t`` is a group table with identity at 0."""
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupError("Cayley table must be a non-empty square array")
    n = t.shape[0]
    ar = np.arange(n)
    if len(labels) != n or len(set(labels)) != n:
        raise GroupError("labels must be n pairwise distinct strings")
    if t.min() < 0 or t.max() >= n:
        raise GroupError("table entries out of range")
    if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
        raise GroupError("index 0 is not the identity")
    if not (np.sort(t, axis=1) == ar).all() or not (np.sort(t, axis=0) == ar[:, None]).all():
        raise GroupError("rows and columns must be permutations")
    if assoc_cap is None:
        assoc_cap = default_caps().assoc_cap
    if n <= assoc_cap:
        for i in range(n):
            # (i*j)*k == i*(j*k) for all j, k
            if not np.array_equal(t[t[i]], t[i][t]):
                raise GroupError("multiplication is not associative")


# --------------------------------------------------------------------------
# constructors


def _check_order(n: int, cap: int | None) -> None:
    cap = default_caps().order_cap if cap is None else cap
    if n > cap:
        raise CapExceeded(f"group order {n} exceeds cap {cap}")


def cyclic(n: int, cap: int | None = None) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    _check_order(n, cap)
    t = np.add.outer(np.arange(n), np.arange(n)) % n
    return FiniteGroup(t, [str(i) for i in range(n)], f"Z({n})")


def dihedral(n: int, cap: int | None = None) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element r^i s^j sits at i + n*j."""
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")
    _check_order(2 * n, cap)
    idx = np.arange(2 * n)
    i, j = idx % n, idx // n
    a, b = i[:, None], j[:, None]
    c, d = i[None, :], j[None, :]
    rot = (a + np.where(b == 1, -c, c)) % n
    t = rot + n * ((b + d) % 2)

    def name(k: int) -> str:
        r = "" if k % n == 0 else ("r" if k % n == 1 else f"r{k % n}")
        s = "s" if k >= n else ""
        return (r + s) or "1"

    return FiniteGroup(t, [name(k) for k in range(2 * n)], f"D({n})")


def dicyclic(order: int, cap: int | None = None) -> FiniteGroup:
    """Dicyclic group of order 4m (Q(8) is the quaternion group).

    Presentation <a, x | a^(2m) = 1, x^2 = a^m, x a x^-1 = a^-1>; a^i x^j sits at
    i + 2m*j.
    """
    if order < 8 or order % 4:
        raise GroupError("dicyclic group needs order 4m with m >= 2")
    _check_order(order, cap)
    m2 = order // 2
    m = m2 // 2
    idx = np.arange(order)
    i, j = idx % m2, idx // m2
    a, b = i[:, None], j[:, None]
    c, d = i[None, :], j[None, :]
    base = a + np.where(b == 1, -c, c)
    both = (b == 1) & (d == 1)
    rot = (base + np.where(both, m, 0)) % m2
    t = rot + m2 * ((b + d) % 2)
    if order == 8:
        names = ["1", "i", "-1", "-i", "j", "k", "-j", "-k"]
    else:
        def name(k: int) -> str:
            r = "" if k % m2 == 0 else ("a" if k % m2 == 1 else f"a{k % m2}")
            return (r + ("x" if k >= m2 else "")) or "1"
        names = [name(k) for k in range(order)]
    return FiniteGroup(t, names, f"Q({order})")


def _perm_group(perms: np.ndarray, n: int, descriptor: str) -> FiniteGroup:
    # perms are in lexicographic order; their base-n codes are increasing
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = perms.astype(np.int64) @ weights
    m = len(perms)
    t = np.empty((m, m), dtype=np.int32)
    # (a*b)(i) = a(b(i)): apply b first
    for start in range(0, m, 256):
        block = perms[start:start + 256]
        comp = block[:, perms]  # comp[a, b, i] = a[b[i]]
        t[start:start + 256] = np.searchsorted(codes, comp.astype(np.int64) @ weights)
    labels = ["".join(str(v + 1) for v in p) for p in perms.tolist()]
    return FiniteGroup(t, labels, descriptor)


def symmetric(n: int, cap: int | None = None) -> FiniteGroup:
    if n < 1:
        raise GroupError("symmetric group needs n >= 1")
    _check_order(math.factorial(n), cap)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    return _perm_group(perms, n, f"S({n})")


def _is_even(p: Sequence[int]) -> bool:
    inv = sum(1 for a, b in itertools.combinations(p, 2) if a > b)
    return inv % 2 == 0


def alternating(n: int, cap: int | None = None) -> FiniteGroup:
    if n < 1:
        raise GroupError("alternating group needs n >= 1")
    _check_order(max(1, math.factorial(n) // 2), cap)
    perms = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    return _perm_group(np.array(perms, dtype=np.int64).reshape(-1, n), n, f"A({n})")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def elementary_abelian(p: int, k: int, cap: int | None = None) -> FiniteGroup:
    if not is_prime(p) or k < 1:
        raise GroupError("EA(p, k) needs p prime and k >= 1")
    _check_order(p ** k, cap)
    return direct_product([cyclic(p)] * k, cap=cap, descriptor=f"EA({p},{k})")


def abelian(orders: Sequence[int], cap: int | None = None) -> FiniteGroup:
    if not orders or any(o < 1 for o in orders):
        raise GroupError("abelian() needs positive factor orders")
    if len(orders) == 1:
        return cyclic(orders[0], cap=cap)
    return direct_product([cyclic(o) for o in orders], cap=cap)


def direct_product(factors: Sequence[FiniteGroup], cap: int | None = None,
                   descriptor: str | None = None) -> FiniteGroup:
    """Componentwise product; the first factor is the most significant digit."""
    factors = tuple(factors)
    if not factors:
        raise GroupError("direct product of no factors")
    total = math.prod(f.order for f in factors)
    _check_order(total, cap)
    t = factors[0].table.astype(np.int64)
    for f in factors[1:]:
        nb = f.order
        na = t.shape[0]
        t = (t[:, None, :, None] * nb + f.table[None, :, None, :]).reshape(na * nb, na * nb)
    labels = ["(" + ",".join(parts) + ")"
              for parts in itertools.product(*(f.labels for f in factors))]
    desc = descriptor or " x ".join(f"({f.descriptor})" if " x " in f.descriptor else f.descriptor
                                    for f in factors)
    return FiniteGroup(t, labels, desc, factors)


def decompose(g: FiniteGroup, x: int) -> tuple[int, ...]:
    """Factor components of a product element (mixed radix)."""
    if not g.factors:
        return (x,)
    out = []
    for f in reversed(g.factors):
        x, r = divmod(x, f.order)
        out.append(r)
    return tuple(reversed(out))


def assemble(g: FiniteGroup, parts: Sequence[int]) -> int:
    if len(parts) != len(g.factors):
        raise GroupError("wrong number of components")
    x = 0
    for f, h in zip(g.factors, parts):
        if not 0 <= h < f.order:
            raise GroupError(f"component {h} is not an element of {f.descriptor}")
        x = x * f.order + h
    return x


def construct(family: str, *params: int, cap: int | None = None) -> FiniteGroup:
    """Build a catalog group by family name (``"cyclic"``, ``"Z"``, ...)."""
    fam = family.lower()
    try:
        if fam in ("cyclic", "z"):
            (n,) = params
            return cyclic(n, cap)
        if fam in ("dihedral", "d"):
            (n,) = params
            return dihedral(n, cap)
        if fam in ("symmetric", "s"):
            (n,) = params
            return symmetric(n, cap)
        if fam in ("alternating", "a"):
            (n,) = params
            return alternating(n, cap)
        if fam in ("quaternion", "dicyclic", "q"):
            (n,) = params
            return dicyclic(n, cap)
        if fam in ("elementary_abelian", "ea"):
            p, k = params
            return elementary_abelian(p, k, cap)
        if fam == "abelian":
            return abelian(params, cap)
        if fam in ("unitriangular", "u", "st", "t"):
            from . import triangular
            n, p = params
            if fam in ("unitriangular", "u"):
                return triangular.unitriangular_group(n, p, cap=cap)
            return triangular.st_group(triangular.TriangularSpec(n, p, det_one=fam == "st"), cap=cap)
    except ValueError as exc:
        if isinstance(exc, GroupError):
            raise
        raise GroupError(f"wrong number of parameters for {family}") from exc
    raise GroupError(f"unknown group family {family!r}")


def from_elements(elements: Sequence, mul, labels: Sequence[str], descriptor: str) -> FiniteGroup:
    """Tabulate a group given hashable elements (identity first) and a product."""
    pos = {e: i for i, e in enumerate(elements)}
    t = [[pos[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(np.array(t), labels, descriptor)


# --------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class GroupHom:
    domain: FiniteGroup
    codomain: FiniteGroup
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))
        if len(self.image) != self.domain.order:
            raise GroupError("image array has wrong length")

    def __call__(self, x: int) -> int:
        return self.image[x]

    def is_homomorphism(self) -> bool:
        return is_homomorphism(self.domain, self.codomain, self.image)

    def kernel(self) -> Subset:
        return tuple(x for x, y in enumerate(self.image) if y == 0)

    def image_set(self) -> Subset:
        return tuple(sorted(set(self.image)))


def is_homomorphism(g: FiniteGroup, h: FiniteGroup, image: Sequence[int]) -> bool:
    """Exhaustive check of f(xy) = f(x)f(y) over all pairs."""
    f = np.asarray(image, dtype=np.int64)
    if f.shape != (g.order,) or f[0] != 0:
        return False
    if f.min() < 0 or f.max() >= h.order:
        return False
    return bool(np.array_equal(f[g.table], h.table[f[:, None], f[None, :]]))


def embeddings(g: FiniteGroup) -> list[GroupHom]:
    out = []
    for i, f in enumerate(g.factors):
        img = []
        for h in range(f.order):
            parts = [0] * len(g.factors)
            parts[i] = h
            img.append(assemble(g, parts))
        out.append(GroupHom(f, g, img))
    return out


def projections(g: FiniteGroup) -> list[GroupHom]:
    comps = [decompose(g, x) for x in range(g.order)]
    return [GroupHom(g, f, [c[i] for c in comps]) for i, f in enumerate(g.factors)]


# --------------------------------------------------------------------------
# structure


def closure(g: FiniteGroup, s: Iterable[int]) -> Subset:
    """The subgroup generated by ``s``."""
    gens = [x for x in dict.fromkeys(s) if x != 0]
    rows = g.rows
    seen = bytearray(g.order)
    seen[0] = 1
    elems = [0]
    i = 0
    while i < len(elems):
        r = rows[elems[i]]
        i += 1
        for x in gens:
            y = r[x]
            if not seen[y]:
                seen[y] = 1
                elems.append(y)
    return tuple(sorted(elems))


def element_order(g: FiniteGroup, x: int) -> int:
    return int(g.orders[x])


def exponent(g: FiniteGroup) -> int:
    return math.lcm(*(int(o) for o in set(g.orders.tolist())))


def centralizer(g: FiniteGroup, s: Iterable[int]) -> Subset:
    t = g.table
    mask = np.ones(g.order, dtype=bool)
    for x in set(s):
        mask &= t[:, x] == t[x, :]
    return tuple(np.flatnonzero(mask).tolist())


def center(g: FiniteGroup) -> Subset:
    if "center" not in g.memo:
        t = g.table
        g.memo["center"] = tuple(np.flatnonzero((t == t.T).all(axis=1)).tolist())
    return g.memo["center"]


def is_abelian(g: FiniteGroup) -> bool:
    return len(center(g)) == g.order


def is_cyclic(g: FiniteGroup) -> bool:
    return bool((g.orders == g.order).any())


def is_p_group(g: FiniteGroup) -> bool:
    return len(factorize(g.order)) == 1


def chi(g: FiniteGroup) -> int:
    """Number of prime divisors of |G| counted with multiplicity."""
    return sum(factorize(g.order).values())


def conjugacy_classes(g: FiniteGroup) -> tuple[Subset, ...]:
    if "classes" in g.memo:
        return g.memo["classes"]
    t, inv = g.table, g.inverse
    n = g.order
    seen = np.zeros(n, dtype=bool)
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        conj = np.unique(t[t[:, x], inv])  # g x g^-1 over all g
        seen[conj] = True
        classes.append(tuple(conj.tolist()))
    g.memo["classes"] = tuple(classes)
    return g.memo["classes"]


def class_sizes(g: FiniteGroup) -> np.ndarray:
    if "class_sizes" not in g.memo:
        out = np.zeros(g.order, dtype=np.int64)
        for c in conjugacy_classes(g):
            out[list(c)] = len(c)
        g.memo["class_sizes"] = out
    return g.memo["class_sizes"]


def is_subgroup(g: FiniteGroup, s: Sequence[int]) -> bool:
    s = sorted(set(s))
    if not s or s[0] != 0:
        return False
    idx = np.array(s)
    prods = g.table[np.ix_(idx, idx)]
    return bool(np.isin(prods, idx).all())


def is_normal(g: FiniteGroup, s: Sequence[int]) -> bool:
    if not is_subgroup(g, s):
        return False
    idx = np.array(sorted(set(s)))
    conj = g.table[g.table[:, idx], g.inverse[:, None]]  # h n h^-1
    return bool(np.isin(conj, idx).all())


def _scan_cap(g: FiniteGroup, cap: int | None) -> None:
    cap = default_caps().subgroup_cap if cap is None else cap
    if g.order > cap:
        raise CapExceeded(f"subgroup scan of order {g.order} exceeds cap {cap}")


def normal_subgroups(g: FiniteGroup, cap: int | None = None) -> list[Subset]:
    """All normal subgroups, as joins of normal closures of single elements."""
    _scan_cap(g, cap)
    if "normal" in g.memo:
        return g.memo["normal"]
    t = g.table
    cls_of = {}
    for c in conjugacy_classes(g):
        for x in c:
            cls_of[x] = c
    basic = {closure(g, cls_of[x]) for x in range(g.order)}
    found = set(basic)
    frontier = list(basic)
    while frontier:
        nxt = []
        for a in frontier:
            for b in basic:
                prod = tuple(np.unique(t[np.ix_(a, b)]).tolist())
                if prod not in found:
                    found.add(prod)
                    nxt.append(prod)
        frontier = nxt
    out = sorted(found, key=lambda s: (len(s), s))
    g.memo["normal"] = out
    return out


def is_simple(g: FiniteGroup, cap: int | None = None) -> bool:
    return g.order >= 2 and len(normal_subgroups(g, cap)) == 2


def subgroups(g: FiniteGroup, cap: int | None = None) -> list[Subset]:
    """Every subgroup, grown from cyclic subgroups by repeated joins."""
    _scan_cap(g, cap)
    if "subgroups" in g.memo:
        return g.memo["subgroups"]
    cyc: dict[Subset, int] = {}
    for x in range(g.order):
        cyc.setdefault(closure(g, [x]), x)
    gens_of = {c: [x] for c, x in cyc.items()}
    found = set(cyc)
    frontier = list(cyc)
    while frontier:
        nxt = []
        for h in frontier:
            hs = set(h)
            for x in cyc.values():
                if x in hs:
                    continue
                j = closure(g, gens_of[h] + [x])
                if j not in found:
                    found.add(j)
                    gens_of[j] = gens_of[h] + [x]
                    nxt.append(j)
        frontier = nxt
    out = sorted(found, key=lambda s: (len(s), s))
    g.memo["subgroups"] = out
    return out


def derived_subgroup(g: FiniteGroup) -> Subset:
    t, inv = g.table, g.inverse
    comm = t[t[t, inv[:, None]], inv[None, :]]  # comm[x, y] = x y x^-1 y^-1
    return closure(g, np.unique(comm).tolist())


def promote(g: FiniteGroup, s: Iterable[int], descriptor: str | None = None) -> FiniteGroup:
    """Build a standalone group from a subgroup given as an index subset."""
    idx = sorted(set(s))
    if not is_subgroup(g, idx):
        raise GroupError("subset is not a subgroup")
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[idx] = np.arange(len(idx))
    a = np.array(idx)
    t = pos[g.table[np.ix_(a, a)]]
    desc = descriptor or f"<{','.join(g.labels[x] for x in idx[:6])}{',...' if len(idx) > 6 else ''}> in {g.descriptor}"
    return FiniteGroup(t, [g.labels[x] for x in idx], desc)


def cosets(g: FiniteGroup, n: Sequence[int]) -> list[Subset]:
    """Left cosets xN, ordered by their smallest element."""
    idx = np.array(sorted(set(n)))
    seen = np.zeros(g.order, dtype=bool)
    out = []
    for x in range(g.order):
        if seen[x]:
            continue
        c = np.sort(g.table[x, idx])
        seen[c] = True
        out.append(tuple(c.tolist()))
    return out


def quotient(g: FiniteGroup, n: Sequence[int]) -> tuple[FiniteGroup, GroupHom]:
    if not is_subgroup(g, n):
        raise GroupError("N is not a subgroup")
    if not is_normal(g, n):
        raise GroupError("N is not normal")
    cs = cosets(g, n)
    which = np.empty(g.order, dtype=np.int64)
    for k, c in enumerate(cs):
        which[list(c)] = k
    reps = np.array([c[0] for c in cs])
    t = which[g.table[np.ix_(reps, reps)]]
    labels = [f"[{g.labels[c[0]]}]" for c in cs]
    q = FiniteGroup(t, labels, f"({g.descriptor})/N{len(n)}")
    return q, GroupHom(g, q, which.tolist())


@dataclass(frozen=True)
class NilpotencyReport:
    is_nilpotent: bool
    series: tuple[Subset, ...]


def upper_central_series(g: FiniteGroup) -> NilpotencyReport:
    """Z_{i+1} = preimage of the center of G/Z_i, iterated to a fixed point."""
    t, inv = g.table, g.inverse
    comm = t[t[t, inv[:, None]], inv[None, :]]  # comm[x, y] = x y x^-1 y^-1
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    series = [(0,)]
    while True:
        nxt = mask[comm].all(axis=1)
        if np.array_equal(nxt, mask):
            break
        mask = nxt
        series.append(tuple(np.flatnonzero(mask).tolist()))
    return NilpotencyReport(bool(mask.all()), tuple(series))


def is_nilpotent(g: FiniteGroup) -> NilpotencyReport:
    if "nilpotency" not in g.memo:
        g.memo["nilpotency"] = upper_central_series(g)
    return g.memo["nilpotency"]


def is_indecomposable(g: FiniteGroup, cap: int | None = None) -> bool:
    """No pair of nontrivial normal subgroups N, M with N ∩ M = 1 and NM = G."""
    ns = [set(s) for s in normal_subgroups(g, cap)]
    for a in ns:
        for b in ns:
            if 1 < len(a) < g.order and 1 < len(b) < g.order and len(a & b) == 1 and len(a) * len(b) == g.order:
                return False
    return True


# --------------------------------------------------------------------------
# Cayley-table text format


def to_text(g: FiniteGroup, with_labels: bool = True) -> str:
    lines = [str(g.order)]
    lines += [" ".join(map(str, row)) for row in g.table.tolist()]
    if with_labels:
        lines.append("labels")
        lines += list(g.labels)
    return "\n".join(lines) + "\n"


def from_text(text: str, descriptor: str = "table") -> FiniteGroup:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    try:
        n = int(lines[0])
        rows = [[int(v) for v in ln.split()] for ln in lines[1:n + 1]]
    except (ValueError, IndexError) as exc:
        raise GroupError(f"malformed Cayley table: {exc}") from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise GroupError("Cayley table must have n rows of n entries")
    rest = lines[n + 1:]
    if rest and rest[0] == "labels":
        labels = rest[1:n + 1]
        if len(labels) != n:
            raise GroupError("label block must have n entries")
    elif rest:
        raise GroupError(f"unexpected trailing content: {rest[0]!r}")
    else:
        labels = [str(i) for i in range(n)]
    return FiniteGroup(np.array(rows), labels, descriptor)
