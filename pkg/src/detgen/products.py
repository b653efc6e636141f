"""Direct products: characteristic matrices and automorphisms as matrices of maps.

For G = H_1 x ... x H_m an automorphism candidate is a grid (phi_ij) with
phi_ii in Aut(H_i) and phi_ij: H_j -> Z(H_i) for i != j, acting by

    (h_1, ..., h_m) -> (prod_j phi_1j(h_j), ..., prod_j phi_mj(h_j)).

Candidates are never trusted: each induced map is checked to be an
automorphism before it is accepted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .autos import (AutGroup, Automorphism, are_isomorphic, automorphism_group,
                    generating_automorphisms, hom_set, is_automorphism)
from .config import CapExceeded, default_caps
from .groups import (FiniteGroup, GroupError, GroupHom, center, decompose, direct_product,
                     is_indecomposable, promote)
from .search import is_determining_set


def _factors(g: FiniteGroup) -> tuple[FiniteGroup, ...]:
    return g.factors if g.factors else (g,)


def _components(g: FiniteGroup) -> list[np.ndarray]:
    """Component index arrays: comps[i][x] is the H_i entry of x."""
    if "components" not in g.memo:
        fs = _factors(g)
        x = np.arange(g.order)
        comps = []
        for f in reversed(fs):
            x, r = np.divmod(x, f.order)
            comps.append(r)
        g.memo["components"] = comps[::-1]
    return g.memo["components"]


def _assemble_all(fs: Sequence[FiniteGroup], comps: Sequence[np.ndarray]) -> np.ndarray:
    out = np.zeros_like(comps[0])
    for f, c in zip(fs, comps):
        out = out * f.order + c
    return out


# --------------------------------------------------------------------------
# characteristic matrices


@dataclass(frozen=True)
class CharacteristicMatrix:
    group: FiniteGroup
    grid: tuple[tuple[int, ...], ...]  # grid[i][j]: H_i entry of the j-th element

    @property
    def factors(self) -> tuple[FiniteGroup, ...]:
        return _factors(self.group)

    def row(self, i: int) -> tuple[int, ...]:
        return self.grid[i]

    def columns(self) -> list[tuple[int, ...]]:
        return list(zip(*self.grid)) if self.grid and self.grid[0] else []

    def reassemble(self) -> tuple[int, ...]:
        fs = self.factors
        out = []
        for col in self.columns():
            x = 0
            for f, h in zip(fs, col):
                x = x * f.order + h
            out.append(x)
        return tuple(out)

    def labels(self) -> list[list[str]]:
        return [[f.labels[h] for h in r] for f, r in zip(self.factors, self.grid)]


def characteristic_matrix(g: FiniteGroup, xs: Sequence[int]) -> CharacteristicMatrix:
    """m x t grid whose column j is the j-th element of ``xs``, split by factor."""
    for x in xs:
        if not 0 <= x < g.order:
            raise GroupError(f"{x} is not an element of {g.descriptor}")
    cols = [decompose(g, x) for x in xs]
    m = len(_factors(g))
    return CharacteristicMatrix(g, tuple(tuple(c[i] for c in cols) for i in range(m)))


def row_criterion_check(g: FiniteGroup, xs: Sequence[int]) -> bool:
    """Each row of M_X holds a determining set of its factor.

    Only meaningful when ``xs`` is determining in ``g``; anything else is a
    precondition error rather than a verdict.
    """
    if not is_determining_set(g, xs):
        raise GroupError("row criterion needs a determining set of the product")
    cm = characteristic_matrix(g, xs)
    return all(is_determining_set(f, sorted(set(r))) for f, r in zip(cm.factors, cm.grid))


# --------------------------------------------------------------------------
# Bidwell matrices


@dataclass(frozen=True, eq=False)
class BidwellMatrix:
    group: FiniteGroup
    # entries[i][j]: image array of H_j -> H_i (an automorphism on the diagonal)
    entries: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self) -> None:
        fs = _factors(self.group)
        m = len(fs)
        if len(self.entries) != m or any(len(r) != m for r in self.entries):
            raise GroupError("Bidwell matrix must be m x m")
        for i, row in enumerate(self.entries):
            z = set(center(fs[i]))
            for j, img in enumerate(row):
                if len(img) != fs[j].order:
                    raise GroupError(f"entry ({i},{j}) has the wrong domain size")
                if i != j and not set(img) <= z:
                    raise GroupError(f"entry ({i},{j}) leaves the center of {fs[i].descriptor}")

    def entry(self, i: int, j: int) -> GroupHom:
        fs = _factors(self.group)
        return GroupHom(fs[j], fs[i], self.entries[i][j])

    def induced(self) -> tuple[int, ...]:
        """The map on the product, as an image array."""
        fs = _factors(self.group)
        comps = _components(self.group)
        out = []
        for i, f in enumerate(fs):
            acc = np.asarray(self.entries[i][0])[comps[0]]
            for j in range(1, len(fs)):
                acc = f.table[acc, np.asarray(self.entries[i][j])[comps[j]]]
            out.append(acc)
        return tuple(_assemble_all(fs, out).tolist())


def bidwell_apply(a: BidwellMatrix, x: int) -> int:
    fs = _factors(a.group)
    hs = decompose(a.group, x)
    out = 0
    for i, f in enumerate(fs):
        acc = 0
        for j, h in enumerate(hs):
            acc = f.mul(acc, a.entries[i][j][h])
        out = out * f.order + acc
    return out


def identity_matrix(g: FiniteGroup) -> BidwellMatrix:
    fs = _factors(g)
    return BidwellMatrix(g, tuple(
        tuple(tuple(range(fs[j].order)) if i == j else (0,) * fs[j].order for j in range(len(fs)))
        for i in range(len(fs))))


def pairwise_coprime(fs: Sequence[FiniteGroup]) -> bool:
    return all(math.gcd(a.order, b.order) == 1 for a, b in itertools.combinations(fs, 2))


def no_common_direct_factor(fs: Sequence[FiniteGroup]) -> bool:
    """Sufficient test: coprime orders, or indecomposable pairwise non-isomorphic factors."""
    if pairwise_coprime(fs):
        return True
    cap = default_caps().subgroup_cap
    if any(f.order > cap or not is_indecomposable(f) for f in fs):
        return False
    return not any(are_isomorphic(a, b) for a, b in itertools.combinations(fs, 2))


@dataclass(frozen=True)
class BidwellEnumeration:
    group: FiniteGroup
    accepted: tuple[BidwellMatrix, ...]
    candidates: int
    rejected: int

    def images(self) -> set[tuple[int, ...]]:
        return {a.induced() for a in self.accepted}


def _central_homs(h: FiniteGroup, k: FiniteGroup) -> list[tuple[int, ...]]:
    """Hom(h, Z(k)) as image arrays into k."""
    z = center(k)
    zk = promote(k, z, descriptor=f"Z({k.descriptor})")
    return [tuple(z[y] for y in f.image) for f in hom_set(h, zk)]


def bidwell_matrices(g: FiniteGroup, assert_no_common_direct_factor: bool = False,
                     cap: int | None = None) -> BidwellEnumeration:
    fs = _factors(g)
    if not assert_no_common_direct_factor and not no_common_direct_factor(fs):
        raise GroupError("factors may share a direct factor; assert it explicitly if they do not")
    cap = default_caps().hom_cap if cap is None else cap
    m = len(fs)
    choices = []
    for i in range(m):
        for j in range(m):
            if i == j:
                aut = automorphism_group(fs[i])
                if aut.elements is None:
                    raise CapExceeded(f"Aut({fs[i].descriptor}) not enumerable")
                choices.append(list(aut.elements))
            else:
                choices.append(_central_homs(fs[j], fs[i]))
    total = math.prod(len(c) for c in choices)
    if total > cap:
        raise CapExceeded(f"{total} Bidwell candidates exceed cap {cap}")
    accepted = []
    for combo in itertools.product(*choices):
        a = BidwellMatrix(g, tuple(tuple(combo[i * m:(i + 1) * m]) for i in range(m)))
        if is_automorphism(g, a.induced()):
            accepted.append(a)
    return BidwellEnumeration(g, tuple(accepted), total, total - len(accepted))


def bidwell_aut_group(factors: Sequence[FiniteGroup] | FiniteGroup,
                      assert_no_common_direct_factor: bool = False) -> AutGroup:
    """Aut of a direct product assembled from factor automorphisms and central homs."""
    if isinstance(factors, FiniteGroup):
        g = factors
    else:
        g = direct_product(factors)
    enum = bidwell_matrices(g, assert_no_common_direct_factor)
    images = sorted(enum.images())
    if len(images) != len(enum.accepted):
        raise AssertionError("two Bidwell matrices induced the same automorphism")
    autos = [Automorphism(g, im) for im in images]
    gens = generating_automorphisms(g, autos, set(images))
    return AutGroup(g, tuple(gens), tuple(images), len(images), False)
