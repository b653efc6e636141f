"""Brute-force reference implementations, deliberately sharing no search code
with the engine they check.
"""

from __future__ import annotations

import itertools

from .config import CapExceeded, default_caps
from .groups import FiniteGroup
from .search import DeterminingReport, GeneratingReport


def _full_hom_check(rows: list[list[int]], f) -> bool:
    n = len(rows)
    for x in range(n):
        rx, fx = rows[x], rows[f[x]]
        for y in range(n):
            if f[rx[y]] != fx[f[y]]:
                return False
    return True


def brute_force_automorphisms(g: FiniteGroup, cap: int = 10) -> set[tuple[int, ...]]:
    """Scan all (n-1)! bijections fixing the identity."""
    n = g.order
    if n > cap:
        raise CapExceeded(f"bijection scan limited to order {cap}", None, None)
    rows = g.rows
    out = set()
    for rest in itertools.permutations(range(1, n)):
        f = (0,) + rest
        # cheap rejection on squares before the full n^2 check
        if any(f[rows[x][x]] != rows[f[x]][f[x]] for x in range(1, n)):
            continue
        if _full_hom_check(rows, f):
            out.add(f)
    return out



def exhaustive_automorphisms(g: FiniteGroup, cap: int = 24) -> set[tuple[int, ...]]:
    """Every bijection fixing the identity, scanned element by element in index
    order; a partial map is abandoned as soon as some product of assigned
    elements disagrees. Nothing beyond the Cayley table is used."""
    n = g.order
    if n > cap:
        raise CapExceeded(f"bijection scan limited to order {cap}", None, None)
    rows = g.rows
    f = [-1] * n
    f[0] = 0
    used = [False] * n
    used[0] = True
    out = set()

    def consistent(x: int) -> bool:
        fx = f[x]
        for y in range(x + 1):
            for a, b in ((x, y), (y, x)):
                ab = rows[a][b]
                if f[ab] != -1 and f[ab] != rows[f[a]][f[b]]:
                    return False
        # products landing on x from earlier pairs
        for a in range(x):
            for b in range(x):
                if rows[a][b] == x and rows[f[a]][f[b]] != fx:
                    return False
        return True

    def rec(x: int) -> None:
        if x == n:
            out.add(tuple(f))
            return
        for y in range(1, n):
            if used[y]:
                continue
            f[x], used[y] = y, True
            if consistent(x):
                rec(x + 1)
            f[x], used[y] = -1, False

    rec(1)
    return out

def _span(rows: list[list[int]], gens) -> list[int]:
    seen = {0}
    todo = [0]
    while todo:
        x = todo.pop()
        for s in gens:
            y = rows[x][s]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return sorted(seen)


def naive_automorphisms(g: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms via images of a fixed generating list.

    Images are drawn from all elements of the same order, every assignment is
    extended along words in the generators, and the result is accepted only
    after the full multiplication-table check.
    """
    n = g.order
    rows = g.rows
    orders = [len(_span(rows, [x])) for x in range(n)]
    gens: list[int] = []
    while len(_span(rows, gens)) < n:
        inside = set(_span(rows, gens))
        gens.append(next(x for x in range(n) if x not in inside))
    cands = [[y for y in range(n) if orders[y] == orders[x]] for x in gens]
    out = []
    for imgs in itertools.product(*cands):
        f = [-1] * n
        f[0] = 0
        todo = [0]
        ok = True
        while todo and ok:
            x = todo.pop()
            for s, fs in zip(gens, imgs):
                y, fy = rows[x][s], rows[f[x]][fs]
                if f[y] == -1:
                    f[y] = fy
                    todo.append(y)
                elif f[y] != fy:
                    ok = False
                    break
        if ok and len(set(f)) == n and _full_hom_check(rows, f):
            out.append(tuple(f))
    return sorted(out)


def oracle_determining_number(g: FiniteGroup, cap: int | None = None) -> DeterminingReport:
    """Smallest subset, in lexicographic order, fixed by no nontrivial automorphism."""
    cap = default_caps().oracle_cap if cap is None else cap
    n = g.order
    if n > cap:
        raise CapExceeded(f"oracle limited to order {cap}", None, None)
    ident = tuple(range(n))
    masks = set()
    for f in naive_automorphisms(g):
        if f != ident:
            masks.add(sum(1 << x for x in range(n) if f[x] == x))
    nodes = 0
    for k in range(n + 1):
        for d in itertools.combinations(range(n), k):
            nodes += 1
            dm = sum(1 << x for x in d)
            if all(m & dm != dm for m in masks):
                return DeterminingReport(g.descriptor, k, d, "exhaustive-oracle", nodes)
    raise AssertionError("the whole group is always determining")


def oracle_generating_number(g: FiniteGroup, cap: int | None = None) -> GeneratingReport:
    cap = default_caps().oracle_cap if cap is None else cap
    n = g.order
    if n > cap:
        raise CapExceeded(f"oracle limited to order {cap}", None, None)
    rows = g.rows
    nodes = 0
    for k in range(n + 1):
        for s in itertools.combinations(range(n), k):
            nodes += 1
            if len(_span(rows, s)) == n:
                return GeneratingReport(g.descriptor, k, s, nodes)
    raise AssertionError("the whole group always generates")
