"""The default catalog of small groups, as group expressions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .expr import atoms, build, parse_group_expr
from .groups import FiniteGroup, is_prime

FAMILIES = ("Z", "EA", "AB", "D", "S", "A", "Q", "U", "ST", "PROD")

CURATED_PRODUCTS = (
    "S(3) x Z(2)", "S(3) x Z(3)", "Q(8) x Z(2)", "Q(8) x Z(3)", "Q(8) x Z(5)",
    "D(4) x Z(2)", "D(4) x Z(3)", "D(4) x Z(5)", "U(3,3) x Z(2)", "Z(2)^2 x Z(9)",
)


@dataclass(frozen=True)
class CatalogSpec:
    max_order: int = 63
    families: tuple[str, ...] = FAMILIES
    include_products: bool = True
    extra: tuple[str, ...] = field(default=())


def _invariant_factor_lists(max_order: int):
    """Non-cyclic d_1 | d_2 (| d_3) with d_1 >= 2 and product at most ``max_order``."""
    for k in (2, 3):
        for ds in itertools.combinations_with_replacement(range(2, max_order // 2 + 1), k):
            if math.prod(ds) <= max_order and all(b % a == 0 for a, b in zip(ds, ds[1:])):
                yield ds


def _elementary(ds) -> bool:
    return len(set(ds)) == 1 and is_prime(ds[0])


def catalog_exprs(spec: CatalogSpec = CatalogSpec()) -> list[str]:
    fam = set(spec.families)
    n = spec.max_order
    out: list[str] = []
    if "Z" in fam:
        out += [f"Z({k})" for k in range(2, n + 1)]
    if "EA" in fam:
        for p in filter(is_prime, range(2, 33)):
            k = 2
            while p ** k <= min(n, 32):
                out.append(f"EA({p},{k})")
                k += 1
    if "AB" in fam:
        abel = [ds for ds in _invariant_factor_lists(min(n, 48)) if not _elementary(ds)]
        abel.sort(key=lambda ds: (math.prod(ds), ds))
        out += [" x ".join(f"Z({d})" for d in ds) for ds in abel]
    if "D" in fam:
        out += [f"D({k})" for k in range(3, 13)]
    if "S" in fam:
        out += ["S(3)", "S(4)"]
    if "A" in fam:
        out += ["A(4)", "A(5)"]
    if "Q" in fam:
        out += ["Q(8)"]
    if "U" in fam:
        out += ["U(3,2)", "U(3,3)"]
    if "ST" in fam:
        out += ["ST(2,3)"]
    if spec.include_products and "PROD" in fam:
        out += list(CURATED_PRODUCTS)
    out += list(spec.extra)
    return [e for e in dict.fromkeys(out) if expr_order(e) <= n]


_ATOM_ORDER = {
    "Z": lambda n: n, "D": lambda n: 2 * n, "Q": lambda n: n,
    "S": math.factorial, "A": lambda n: max(1, math.factorial(n) // 2),
    "EA": lambda p, k: p ** k, "U": lambda n, p: p ** (n * (n - 1) // 2),
    "ST": lambda n, p: (p - 1) ** (n - 1) * p ** (n * (n - 1) // 2),
    "T": lambda n, p: (p - 1) ** n * p ** (n * (n - 1) // 2),
}


def expr_order(text: str) -> int:
    """Order of the group an expression denotes, without building it."""
    total = 1
    for a in atoms(parse_group_expr(text)):
        total *= _ATOM_ORDER[a.name](*a.params)
    return total


def default_catalog(spec: CatalogSpec = CatalogSpec()) -> list[FiniteGroup]:
    return [build(e) for e in catalog_exprs(spec)]
