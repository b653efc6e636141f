"""Catalog-wide verification of the structural claims about alpha and gamma.

Every check is a predicate on one group (or, for the global checks, on the
whole catalog). A check either does not apply, passes, fails with a witness,
or is skipped because a resource cap was hit.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable

from .autos import are_isomorphic, aut_order, automorphism_group, hom_set
from .config import CapExceeded, Caps, default_caps, use_caps
from .constructions import (PreconditionError, check_tight_cover, index_p_fixing_automorphism,
                            next_prime, odd_index_abelian_automorphism, shift_determining_set,
                            tight_cover, tight_cover_recover)
from .groups import (FiniteGroup, center, centralizer, chi, closure, element_order,
                     factorize, is_abelian, is_cyclic, is_nilpotent, is_normal, is_p_group,
                     is_prime, is_simple, normal_subgroups, promote, subgroups)
from .products import (bidwell_matrices, no_common_direct_factor, pairwise_coprime,
                       row_criterion_check)
from .search import (determining_number, generating_number, is_determining_set,
                     minimum_determining_sets)

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class SuiteEntry:
    group: str
    check: str
    verdict: str
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"group": self.group, "check": self.check, "verdict": self.verdict, "detail": self.detail}


@dataclass(frozen=True)
class SuiteReport:
    catalog: str
    entries: tuple[SuiteEntry, ...]
    millis: int = 0

    def count(self, verdict: str) -> int:
        return sum(e.verdict == verdict for e in self.entries)

    @property
    def failures(self) -> list[SuiteEntry]:
        return [e for e in self.entries if e.verdict == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures


class _Facts:
    """Lazily computed invariants of one group, shared by all checks."""

    def __init__(self, g: FiniteGroup, caps: Caps):
        self.g, self.caps = g, caps
        self.n = g.order

    @cached_property
    def det(self):
        return determining_number(self.g, caps=self.caps)

    @cached_property
    def gen(self):
        return generating_number(self.g, caps=self.caps)

    @property
    def alpha(self) -> int:
        return self.det.alpha

    @property
    def gamma(self) -> int:
        return self.gen.gamma

    @cached_property
    def chi(self) -> int:
        return chi(self.g)

    @cached_property
    def abelian(self) -> bool:
        return is_abelian(self.g)

    @cached_property
    def cyclic(self) -> bool:
        return is_cyclic(self.g)

    @cached_property
    def nilpotent(self) -> bool:
        return is_nilpotent(self.g).is_nilpotent

    @cached_property
    def p_group(self) -> bool:
        return is_p_group(self.g)

    @cached_property
    def scannable(self) -> bool:
        return self.n <= self.caps.subgroup_cap

    @cached_property
    def simple(self) -> bool:
        return is_simple(self.g, self.caps.subgroup_cap)

    @cached_property
    def aut_order(self) -> int:
        return aut_order(self.g)

    @cached_property
    def min_sets(self) -> tuple[list, bool]:
        """Minimum determining sets, and whether the list is complete."""
        try:
            return minimum_determining_sets(self.g, self.alpha, caps=self.caps), True
        except CapExceeded:
            return [self.det.witness], False

    def labels(self, xs: Iterable[int]) -> list[str]:
        return [self.g.labels[x] for x in xs]


Check = Callable[[_Facts], "tuple[bool, dict] | None"]
CHECKS: list[tuple[str, Check]] = []


def check(name: str):
    def register(fn: Check) -> Check:
        CHECKS.append((name, fn))
        return fn
    return register


# --------------------------------------------------------------------------
# small determining numbers


@check("alpha-zero-iff-order-two")
def _alpha_zero(f: _Facts):
    return (f.alpha == 0) == (f.n == 2), {"alpha": f.alpha}


@check("alpha-one-iff-cyclic-order-ge-3")
def _alpha_one(f: _Facts):
    return (f.alpha == 1) == (f.cyclic and f.n >= 3), {"alpha": f.alpha, "cyclic": f.cyclic}


@check("nonabelian-alpha-ge-2")
def _nonabelian(f: _Facts):
    if f.abelian:
        return None
    return f.alpha >= 2, {"alpha": f.alpha}


@check("gamma-two-implies-alpha-two")
def _gamma_two(f: _Facts):
    if f.gamma != 2:
        return None
    return f.alpha == 2, {"alpha": f.alpha}


@check("gamma-le-two-order-ge-3-is-deg")
def _small_gamma(f: _Facts):
    if f.n < 3 or f.gamma > 2:
        return None
    return f.alpha == f.gamma, {"alpha": f.alpha, "gamma": f.gamma}


# --------------------------------------------------------------------------
# DEG families


def _deg(f: _Facts) -> tuple[bool, dict]:
    return f.alpha == f.gamma, {"alpha": f.alpha, "gamma": f.gamma}


@check("simple-is-deg")
def _simple(f: _Facts):
    if f.n < 3 or not f.scannable or not f.simple:
        return None
    return _deg(f)


@check("p-group-is-deg")
def _p_group(f: _Facts):
    return _deg(f) if f.n >= 3 and f.p_group else None


@check("abelian-is-deg")
def _abelian(f: _Facts):
    return _deg(f) if f.n >= 3 and f.abelian else None


@check("nilpotent-is-deg")
def _nilpotent(f: _Facts):
    return _deg(f) if f.n >= 3 and f.nilpotent else None


@check("coprime-product-deg")
def _coprime_deg(f: _Facts):
    fs = f.g.factors
    if len(fs) != 2 or math.gcd(fs[0].order, fs[1].order) != 1:
        return None
    a = [determining_number(h, caps=f.caps).alpha for h in fs]
    c = [generating_number(h, caps=f.caps).gamma for h in fs]
    k = 0 if c[0] >= c[1] else 1
    if a[k] != c[k]:
        return None
    return _deg(f)


# --------------------------------------------------------------------------
# bounds


@check("alpha-le-gamma-le-chi")
def _chain(f: _Facts):
    return 0 <= f.alpha <= f.gamma <= f.chi, {"alpha": f.alpha, "gamma": f.gamma, "chi": f.chi}


@check("alpha-equals-chi-consequences")
def _alpha_chi(f: _Facts):
    if f.alpha != f.chi:
        return None
    g = f.g
    bad_orders = [g.labels[x] for x in range(1, f.n) if not is_prime(int(g.orders[x]))]
    detail: dict = {"non_prime_order_elements": bad_orders}
    ok = not bad_orders
    if f.scannable:
        bad_subs = []
        for s in subgroups(g, f.caps.subgroup_cap):
            h = promote(g, s)
            if generating_number(h, caps=f.caps).gamma != chi(h):
                bad_subs.append(f.labels(s))
        detail["subgroups_with_gamma_ne_chi"] = bad_subs
        ok = ok and not bad_subs
    # nilpotent exactly when a power of a single cyclic group of prime order
    elementary = f.abelian and len(factorize(f.n)) == 1 and all(
        int(o) in (1, next(iter(factorize(f.n)))) for o in g.orders)
    detail.update(nilpotent=f.nilpotent, elementary_abelian=elementary)
    return ok and f.nilpotent == elementary, detail


@check("aut-order-bound")
def _aut_bound(f: _Facts):
    bound = math.perm(f.n - 1, f.alpha)
    equal = f.aut_order == bound
    expected = (f.cyclic and is_prime(f.n)) or (f.n == 4 and not f.cyclic)
    return f.aut_order <= bound and equal == expected, {"aut_order": f.aut_order, "bound": bound}


@check("elementary-abelian-alpha-is-rank")
def _elementary(f: _Facts):
    ps = factorize(f.n)
    if len(ps) != 1 or not f.abelian or f.cyclic:
        return None
    p, k = next(iter(ps.items()))
    if any(int(o) not in (1, p) for o in f.g.orders):
        return None
    return f.alpha == k, {"alpha": f.alpha, "rank": k}


# --------------------------------------------------------------------------
# determining sets


@check("generating-set-is-determining")
def _gen_det(f: _Facts):
    return is_determining_set(f.g, f.gen.witness), {"witness": f.labels(f.gen.witness)}


@check("automorphic-image-is-determining")
def _image_det(f: _Facts):
    d = f.det.witness
    bad = []
    for s in automorphism_group(f.g, f.caps.aut_cap).generators:
        img = sorted(s.image[x] for x in d)
        if not is_determining_set(f.g, img):
            bad.append(f.labels(img))
    return not bad, {"witness": f.labels(d), "non_determining_images": bad}


@check("minimum-set-span-has-gamma-alpha")
def _span_rank(f: _Facts):
    sets, complete = f.min_sets
    bad, gammas = [], {}
    for d in sets:
        span = closure(f.g, d)
        if span not in gammas:
            gammas[span] = generating_number(promote(f.g, span), caps=f.caps).gamma
        if gammas[span] != f.alpha:
            bad.append(f.labels(d))
    return not bad, {"sets_checked": len(sets), "complete": complete, "violations": bad}


@check("minimum-set-centralizer-is-center")
def _centralizer(f: _Facts):
    sets, complete = f.min_sets
    z = center(f.g)
    bad = [f.labels(d) for d in sets if centralizer(f.g, d) != z]
    return not bad, {"sets_checked": len(sets), "complete": complete, "violations": bad}


# --------------------------------------------------------------------------
# background structure


@check("prime-square-order-abelian")
def _prime_square(f: _Facts):
    ps = factorize(f.n)
    if list(ps.values()) != [2]:
        return None
    return f.abelian, {}


@check("abelian-and-p-groups-nilpotent")
def _nil_families(f: _Facts):
    if not (f.abelian or f.p_group):
        return None
    return f.nilpotent, {}


@check("nilpotent-subgroup-of-each-divisor")
def _divisors(f: _Facts):
    if not f.nilpotent or not f.scannable:
        return None
    orders = {len(s) for s in subgroups(f.g, f.caps.subgroup_cap)}
    missing = [m for m in range(1, f.n + 1) if f.n % m == 0 and m not in orders]
    return not missing, {"missing_orders": missing}


@check("nilpotent-normal-subgroup-meets-center")
def _normal_center(f: _Facts):
    if not f.nilpotent or not f.scannable:
        return None
    z = set(center(f.g))
    bad = [len(s) for s in normal_subgroups(f.g, f.caps.subgroup_cap) if len(s) > 1 and len(z & set(s)) < 2]
    return not bad, {"violating_orders": bad}


# --------------------------------------------------------------------------
# automorphisms fixing a maximal subgroup


def _maximal_normal_prime_index(f: _Facts):
    for s in subgroups(f.g, f.caps.subgroup_cap):
        q, r = divmod(f.n, len(s))
        if not r and is_prime(q) and is_normal(f.g, s):
            yield s, q


@check("maximal-subgroup-fixing-automorphism")
def _fixing(f: _Facts):
    """Every normal subgroup M of prime index p admits a nontrivial automorphism
    fixing M, whenever M meets the center in an element of order p, or G is
    abelian and p odd."""
    if f.n < 3 or not f.scannable or not (f.p_group or f.abelian):
        return None
    built, bad = 0, []
    for m, p in _maximal_normal_prime_index(f):
        zs = [z for z in m if z in set(center(f.g)) and element_order(f.g, z) == p]
        try:
            if zs:
                a = next(x for x in range(f.n) if x not in set(m))
                index_p_fixing_automorphism(f.g, m, a, zs[0])
            elif f.abelian and p > 2:
                odd_index_abelian_automorphism(f.g, m)
            else:
                if f.p_group:
                    bad.append(f.labels(m))
                continue
        except (PreconditionError, AssertionError) as exc:
            bad.append(f.labels(m) + [str(exc)])
            continue
        built += 1
    return not bad, {"constructed": built, "violations": bad}


@check("odd-complement-shift")
def _shift(f: _Facts):
    if not f.abelian or f.n < 6 or f.n % 4 != 2:
        return None
    odd = [x for x in range(f.n) if element_order(f.g, x) % 2]
    x = next(y for y in range(f.n) if element_order(f.g, y) == 2)
    sets, _ = f.min_sets
    inside = [d for d in sets if set(d) <= set(odd)]
    if not inside:
        return False, {"reason": "no minimum determining set inside the odd part"}
    try:
        shifted = shift_determining_set(f.g, x, inside[0])
    except PreconditionError as exc:
        return False, {"reason": exc.reason}
    return True, {"D": f.labels(inside[0]), "xD": f.labels(shifted)}


# --------------------------------------------------------------------------
# direct products


def _factor_alphas(f: _Facts) -> list[int]:
    return [determining_number(h, caps=f.caps).alpha for h in f.g.factors]


@check("product-alpha-ge-factor-max")
def _product_lower(f: _Facts):
    if not f.g.factors:
        return None
    a = _factor_alphas(f)
    rows = row_criterion_check(f.g, f.det.witness)
    return f.alpha >= max(a) and rows, {"alpha": f.alpha, "factor_alphas": a, "rows_determining": rows}


@check("coprime-product-alpha-is-max")
def _coprime(f: _Facts):
    if not f.g.factors or not pairwise_coprime(f.g.factors):
        return None
    a = _factor_alphas(f)
    return f.alpha == max(a), {"alpha": f.alpha, "factor_alphas": a}


def _trivial_cross_homs(fs) -> bool:
    for i, j in itertools.permutations(range(len(fs)), 2):
        z = center(fs[i])
        if len(z) > 1 and len(hom_set(fs[j], promote(fs[i], z))) > 1:
            return False
    return True


@check("trivial-cross-homs-alpha-is-max")
def _trivial_homs(f: _Facts):
    fs = f.g.factors
    if not fs or not no_common_direct_factor(fs) or not _trivial_cross_homs(fs):
        return None
    a = _factor_alphas(f)
    return f.alpha == max(a), {"alpha": f.alpha, "factor_alphas": a}


@check("centerless-deg-times-rigid")
def _centerless(f: _Facts):
    fs = f.g.factors
    if len(fs) != 2 or not no_common_direct_factor(fs):
        return None
    h1, h2 = fs
    if len(center(h1)) != 1 or aut_order(h2) != 1:
        return None
    a1 = determining_number(h1, caps=f.caps).alpha
    if a1 != generating_number(h1, caps=f.caps).gamma:
        return None
    return f.alpha == a1, {"alpha": f.alpha, "factor_alpha": a1}


@check("prime-power-cyclic-pair-alpha-two")
def _cyclic_pair(f: _Facts):
    fs = f.g.factors
    if len(fs) != 2 or not all(is_cyclic(h) and is_p_group(h) and h.order > 1 for h in fs):
        return None
    if set(factorize(fs[0].order)) != set(factorize(fs[1].order)):
        return None
    return f.alpha == 2, {"alpha": f.alpha}


@check("bidwell-matrices-give-aut")
def _bidwell(f: _Facts):
    fs = f.g.factors
    if not fs or not no_common_direct_factor(fs):
        return None
    enum = bidwell_matrices(f.g)
    images = enum.images()
    ok = len(images) == len(enum.accepted) == f.aut_order
    aut = automorphism_group(f.g, f.caps.aut_cap)
    if ok and aut.elements is not None:
        ok = images == set(aut.elements)
    return ok, {"accepted": len(enum.accepted), "rejected": enum.rejected, "aut_order": f.aut_order}


# --------------------------------------------------------------------------
# running


def _run_group(g: FiniteGroup, caps: Caps) -> list[SuiteEntry]:
    with use_caps(caps):
        return _group_entries(g, caps)


def _group_entries(g: FiniteGroup, caps: Caps) -> list[SuiteEntry]:
    f = _Facts(g, caps)
    out = []
    if g.order < 2:
        return out
    for name, fn in CHECKS:
        try:
            res = fn(f)
        except CapExceeded as exc:
            out.append(SuiteEntry(g.descriptor, name, SKIP, {"reason": str(exc)}))
            continue
        if res is None:
            continue
        ok, detail = res
        out.append(SuiteEntry(g.descriptor, name, PASS if ok else FAIL, detail))
    return out


def _run_packed(args) -> list[SuiteEntry]:
    g, caps = args
    return _run_group(g, caps)


def tight_cover_entries(bases: list[FiniteGroup], caps: Caps, max_base: int = 12) -> list[SuiteEntry]:
    """Covers are DEG and give back their base; distinct bases give distinct covers."""
    out = []
    reps: list[FiniteGroup] = []
    for h in bases:
        if h.order > max_base or h.order < 2 or any(r.order == h.order and are_isomorphic(r, h) for r in reps):
            continue
        reps.append(h)
    covers = {}
    excluded = []
    for h in reps:
        l, p = generating_number(h, caps=caps).gamma, next_prime(h.order)
        if p ** l * h.order > caps.order_cap:
            # cover order above the cap: outside the computable sample
            excluded.append(h.descriptor)
            continue
        try:
            c = tight_cover(h)
            chk = check_tight_cover(c)
        except CapExceeded as exc:
            out.append(SuiteEntry(h.descriptor, "tight-cover-deg", SKIP, {"reason": str(exc)}))
            continue
        covers[h.descriptor] = c
        try:
            tight_cover_recover(c)
            recovered = True
        except AssertionError:
            recovered = False
        detail = {"cover": c.cover.descriptor, "p": c.p, "l": c.l, "alpha": chk.alpha, "gamma": chk.gamma,
                  "recovered": recovered}
        out.append(SuiteEntry(h.descriptor, "tight-cover-deg", PASS if chk.deg and recovered else FAIL, detail))
    clashes = []
    items = list(covers.items())
    for (a, ca), (b, cb) in itertools.combinations(items, 2):
        if ca.cover.order == cb.cover.order and are_isomorphic(ca.cover, cb.cover):
            clashes.append([a, b])
    out.append(SuiteEntry("*", "tight-cover-injective", FAIL if clashes else PASS,
                          {"bases": len(items), "excluded_bases": excluded,
                           "isomorphic_cover_pairs": clashes}))
    return out


def triangular_entries(primes=(5, 7, 11)) -> list[SuiteEntry]:
    from .triangular import verify_BC_determining
    out = []
    for p in primes:
        v = verify_BC_determining(p)
        detail = {"n": v.n, "centralizer_dim": v.centralizer_dim, "case_ii_excluded": v.case_ii_excluded,
                  "alpha": v.alpha, "alpha_conditional": v.alpha_conditional,
                  "gamma_lower_bound": v.gamma_lower_bound, "structural_maps": v.structural_maps,
                  "structural_stabilizer": v.structural_stabilizer}
        out.append(SuiteEntry(f"ST({v.n},{p})", "determining-pair", PASS if v.ok else FAIL, detail))
    return out


def theorem_suite(catalog: list[FiniteGroup], caps: Caps | None = None, workers: int = 1,
                  name: str = "catalog", global_checks: bool = True) -> SuiteReport:
    caps = caps or default_caps()
    start = time.perf_counter()
    if workers > 1 and len(catalog) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            per_group = list(ex.map(_run_packed, [(g, caps) for g in catalog]))
    else:
        per_group = [_run_group(g, caps) for g in catalog]
    entries = [e for es in per_group for e in es]
    if global_checks and catalog:
        with use_caps(caps):
            entries += tight_cover_entries(catalog, caps)
            entries += triangular_entries()
    millis = int((time.perf_counter() - start) * 1000)
    return SuiteReport(name, tuple(entries), millis)


__all__ = ["SuiteEntry", "SuiteReport", "CHECKS", "theorem_suite", "tight_cover_entries",
           "triangular_entries", "PASS", "FAIL", "SKIP"]
