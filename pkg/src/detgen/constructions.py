"""Explicit automorphisms fixing a maximal subgroup, and tight covers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .autos import Automorphism, are_isomorphic, is_automorphism
from .groups import (FiniteGroup, GroupError, GroupHom, Subset, center, closure, cyclic,
                     direct_product, element_order, elementary_abelian, embeddings, is_abelian,
                     is_normal, is_prime, is_subgroup, quotient)
from .search import determining_number, generating_number, is_determining_set


class PreconditionError(GroupError):
    """A construction was called outside its hypotheses; ``reason`` says which one."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class DelegationRequired(PreconditionError):
    pass


def _verified(g: FiniteGroup, image: Sequence[int], fixed: Sequence[int]) -> Automorphism:
    image = tuple(image)
    if not is_automorphism(g, image):
        raise AssertionError("constructed map is not an automorphism")
    f = Automorphism(g, image)
    if f.is_identity() or not f.fixes(fixed):
        raise AssertionError("constructed map is trivial or moves a fixed element")
    return f


def _prime_index(g: FiniteGroup, m: Sequence[int]) -> int:
    if not is_subgroup(g, m):
        raise PreconditionError("not-subgroup", "M is not a subgroup")
    p, r = divmod(g.order, len(m))
    if r or not is_prime(p):
        raise PreconditionError("index-not-prime", f"M has index {g.order / len(m):g}, not a prime")
    return p


def index_p_fixing_automorphism(g: FiniteGroup, m: Sequence[int], a: int, z: int) -> Automorphism:
    """a^i x -> (az)^i x for 0 <= i < p and x in M.

    Needs M normal of prime index p, z central in M of order p, and a outside M.
    """
    m = tuple(sorted(set(m)))
    p = _prime_index(g, m)
    if not is_normal(g, m):
        raise PreconditionError("not-normal", "M is not normal")
    ms = set(m)
    if a in ms:
        raise PreconditionError("a-in-M", "a must lie outside M")
    if z not in ms:
        raise PreconditionError("z-not-in-M", "z must lie in M")
    if z not in set(center(g)):
        raise PreconditionError("z-not-central", "z must be central")
    if element_order(g, z) != p:
        raise PreconditionError("z-order", f"z must have order {p}")
    az = g.mul(a, z)
    image = [0] * g.order
    for i in range(p):
        ai, azi = g.power(a, i), g.power(az, i)
        for x in m:
            image[g.mul(ai, x)] = g.mul(azi, x)
    return _verified(g, image, m)


def sylow(g: FiniteGroup, p: int) -> Subset:
    """The Sylow p-subgroup of an abelian (or nilpotent) group: all p-power-order elements."""
    out = []
    for x in range(g.order):
        o = element_order(g, x)
        while o % p == 0:
            o //= p
        if o == 1:
            out.append(x)
    return tuple(out)


def odd_index_abelian_automorphism(g: FiniteGroup, m: Sequence[int], delegate: bool = True) -> Automorphism:
    """Inversion on the Sylow p-part P, identity on M, when G = P x M.

    If P meets M nontrivially the index-p construction applies instead; with
    ``delegate`` it is used, otherwise DelegationRequired is raised.
    """
    if not is_abelian(g):
        raise PreconditionError("not-abelian", "G must be abelian")
    m = tuple(sorted(set(m)))
    p = _prime_index(g, m)
    if p == 2:
        raise PreconditionError("even-index", "the index must be an odd prime")
    pp = sylow(g, p)
    ms = set(m)
    meet = [x for x in pp if x in ms and x != 0]
    if meet:
        if not delegate:
            raise DelegationRequired("delegate", "P meets M; use the index-p construction")
        # P ∩ M is a nontrivial p-group, so it has an element of order p
        z = next(x for x in meet if element_order(g, x) == p)
        a = next(x for x in range(g.order) if x not in ms)
        return index_p_fixing_automorphism(g, m, a, z)
    image = [0] * g.order
    inv = g.inv
    for x in pp:
        for y in m:
            image[g.mul(x, y)] = g.mul(inv[x], y)
    return _verified(g, image, m)


def shift_determining_set(g: FiniteGroup, x: int, d: Sequence[int]) -> Subset:
    """xD for an involution x with G = <x> x M, M of odd order and D inside M.

    Returns the shifted set after checking it is determining and generates a
    strictly larger subgroup than D.
    """
    if not is_abelian(g):
        raise PreconditionError("not-abelian", "G must be abelian")
    if element_order(g, x) != 2:
        raise PreconditionError("x-order", "x must have order 2")
    odd = {y for y in range(g.order) if element_order(g, y) % 2}
    if 2 * len(odd) != g.order:
        raise PreconditionError("no-odd-complement", "G is not <x> times a subgroup of odd order")
    d = tuple(sorted(set(d)))
    if not set(d) <= odd:
        raise PreconditionError("D-outside-M", "D must lie in the odd-order complement")
    if not is_determining_set(g, d):
        raise PreconditionError("D-not-determining", "D is not determining")
    shifted = tuple(sorted({g.mul(x, y) for y in d}))
    if not is_determining_set(g, shifted):
        raise AssertionError("shifted set lost the determining property")
    old, new = set(closure(g, d)), set(closure(g, shifted))
    if not old < new:
        raise PreconditionError("no-growth", "the shifted set does not generate a larger subgroup")
    return shifted


# --------------------------------------------------------------------------
# tight covers


def next_prime(n: int) -> int:
    """Smallest prime strictly above n (trial division)."""
    q = n + 1
    while not is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class TightCover:
    base: FiniteGroup
    l: int
    p: int
    cover: FiniteGroup
    embedding: GroupHom

    @property
    def kernel(self) -> Subset:
        """The Z_p^l factor as a subset of the cover."""
        return embeddings(self.cover)[0].image_set()


def tight_cover(h: FiniteGroup) -> TightCover:
    """Z_p^l x H with l = gamma(H) and p the least prime above |H|."""
    if h.order < 2:
        raise GroupError("tight covers need a nontrivial base")
    l = generating_number(h).gamma
    p = next_prime(h.order)
    top = cyclic(p) if l == 1 else elementary_abelian(p, l)
    cover = direct_product([top, h])
    return TightCover(h, l, p, cover, embeddings(cover)[1])


@dataclass(frozen=True)
class CoverCheck:
    alpha: int
    gamma: int

    @property
    def deg(self) -> bool:
        return self.alpha == self.gamma


def check_tight_cover(c: TightCover) -> CoverCheck:
    return CoverCheck(determining_number(c.cover).alpha, generating_number(c.cover).gamma)


def tight_cover_recover(c: TightCover) -> FiniteGroup:
    """Cover modulo its Z_p^l factor, checked isomorphic to the base."""
    q, _ = quotient(c.cover, c.kernel)
    if not are_isomorphic(q, c.base):
        raise AssertionError("recovered quotient is not isomorphic to the base")
    return q
