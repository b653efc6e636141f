"""Upper-triangular matrix groups over F_p and the determining pair {B, C}.

The concrete groups enumerate invertible upper-triangular matrices by a mixed
radix code over their free entries, so a matrix's table index is its code and
no lookup structure is needed. The identity has code 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .autos import are_isomorphic, aut_order, is_automorphism, stabilizer_witness
from .config import CapExceeded, default_caps
from .groups import FiniteGroup, GroupError, GroupHom, abelian, factorize, is_prime, quotient
from .search import generating_number


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")


# --------------------------------------------------------------------------
# dense matrices mod p


def _rank_mod_p(a: np.ndarray, p: int) -> int:
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r, c]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        a[rank] = a[rank] * pow(int(a[rank, c]), -1, p) % p
        others = np.flatnonzero(a[:, c])
        others = others[others != rank]
        a[others] = (a[others] - np.outer(a[others, c], a[rank])) % p
        rank += 1
        if rank == rows:
            break
    return rank


@dataclass(frozen=True, eq=False)
class MatrixFp:
    entries: np.ndarray
    p: int

    def __post_init__(self) -> None:
        e = np.array(self.entries, dtype=np.int64) % self.p
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise GroupError("MatrixFp must be square")
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    @classmethod
    def identity(cls, n: int, p: int) -> "MatrixFp":
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def diag(cls, values, p: int) -> "MatrixFp":
        return cls(np.diag(values), p)

    @classmethod
    def reversal(cls, n: int, p: int) -> "MatrixFp":
        """J, the matrix with ones on the anti-diagonal."""
        return cls(np.eye(n, dtype=np.int64)[::-1], p)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij) -> int:
        return int(self.entries[ij])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MatrixFp) and other.p == self.p
                and np.array_equal(other.entries, self.entries))

    def __hash__(self) -> int:
        return hash((self.p, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixFp({self.entries.tolist()}, p={self.p})"

    def __add__(self, other: "MatrixFp") -> "MatrixFp":
        return MatrixFp(self.entries + other.entries, self.p)

    def __matmul__(self, other: "MatrixFp") -> "MatrixFp":
        return MatrixFp(self.entries @ other.entries, self.p)

    def scale(self, c: int) -> "MatrixFp":
        return MatrixFp(self.entries * c, self.p)

    def transpose(self) -> "MatrixFp":
        return MatrixFp(self.entries.T, self.p)

    def det(self) -> int:
        p = self.p
        a = [list(map(int, r)) for r in self.entries]
        n = len(a)
        d = 1
        for c in range(n):
            pivot = next((r for r in range(c, n) if a[r][c]), None)
            if pivot is None:
                return 0
            if pivot != c:
                a[c], a[pivot] = a[pivot], a[c]
                d = -d
            d = d * a[c][c] % p
            inv = pow(a[c][c], -1, p)
            for r in range(c + 1, n):
                m = a[r][c] * inv % p
                if m:
                    a[r] = [(x - m * y) % p for x, y in zip(a[r], a[c])]
        return d % p

    def inverse(self) -> "MatrixFp":
        p, n = self.p, self.n
        a = [list(map(int, r)) + [int(i == j) for j in range(n)] for i, r in enumerate(self.entries)]
        for c in range(n):
            pivot = next((r for r in range(c, n) if a[r][c]), None)
            if pivot is None:
                raise GroupError("singular matrix")
            a[c], a[pivot] = a[pivot], a[c]
            inv = pow(a[c][c], -1, p)
            a[c] = [x * inv % p for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    m = a[r][c]
                    a[r] = [(x - m * y) % p for x, y in zip(a[r], a[c])]
        return MatrixFp(np.array([row[n:] for row in a]), p)

    def inverse_transpose(self) -> "MatrixFp":
        return self.inverse().transpose()

    def j_conjugate(self) -> "MatrixFp":
        """J X J: reverses both the row and the column order."""
        return MatrixFp(self.entries[::-1, ::-1], self.p)

    def is_upper_triangular(self) -> bool:
        return not np.tril(self.entries, -1).any()

    def is_scalar(self) -> bool:
        e = self.entries
        return not (e - np.diag(np.diag(e))).any() and len(set(np.diag(e).tolist())) == 1


# --------------------------------------------------------------------------
# concrete groups


@dataclass(frozen=True)
class TriangularSpec:
    n: int
    p: int
    det_one: bool = True

    def __post_init__(self) -> None:
        if self.n < 2:
            raise GroupError("triangular groups need n >= 2")
        _check_prime(self.p)

    @property
    def order(self) -> int:
        d = 1 if self.det_one else 0
        return (self.p - 1) ** (self.n - d) * self.p ** (self.n * (self.n - 1) // 2)

    @property
    def descriptor(self) -> str:
        return f"{'ST' if self.det_one else 'T'}({self.n},{self.p})"


class _Layout:
    """Mixed-radix code over the free entries of a triangular matrix.

    Free diagonal entries contribute a digit in 0..p-2 standing for the value
    digit+1; strictly upper entries contribute a digit in 0..p-1. When the
    determinant is pinned to 1 the last diagonal entry is not free.
    """

    def __init__(self, n: int, p: int, free_diag: int, unipotent: bool = False):
        self.n, self.p = n, p
        self.free_diag = 0 if unipotent else free_diag
        self.unipotent = unipotent
        self.upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
        self.radix = [p - 1] * self.free_diag + [p] * len(self.upper)
        self.size = math.prod(self.radix)

    def matrices(self) -> np.ndarray:
        n, p = self.n, self.p
        codes = np.arange(self.size)
        digits = []
        for r in reversed(self.radix):
            codes, d = np.divmod(codes, r)
            digits.append(d)
        digits.reverse()
        m = np.zeros((self.size, n, n), dtype=np.int64)
        if self.unipotent:
            m[:, range(n), range(n)] = 1
        else:
            prod = np.ones(self.size, dtype=np.int64)
            for i in range(self.free_diag):
                m[:, i, i] = digits[i] + 1
                prod = prod * m[:, i, i] % p
            if self.free_diag < n:
                inv = np.array([0] + [pow(v, -1, p) for v in range(1, p)])
                m[:, n - 1, n - 1] = inv[prod]
        for k, (i, j) in enumerate(self.upper):
            m[:, i, j] = digits[self.free_diag + k]
        return m

    def encode(self, m: np.ndarray) -> np.ndarray:
        """Codes of a stack of matrices (..., n, n)."""
        code = np.zeros(m.shape[:-2], dtype=np.int64)
        for i in range(self.free_diag):
            code = code * (self.p - 1) + (m[..., i, i] - 1)
        for i, j in self.upper:
            code = code * self.p + m[..., i, j]
        return code


def _tabulate(layout: _Layout, descriptor: str, cap: int | None) -> FiniteGroup:
    cap = default_caps().order_cap if cap is None else cap
    if layout.size > cap:
        raise CapExceeded(f"{descriptor} has order {layout.size} above cap {cap}")
    mats = layout.matrices()
    n, p = layout.n, layout.p
    table = np.empty((layout.size, layout.size), dtype=np.int32)
    block = max(1, 2_000_000 // (layout.size * n * n))
    for lo in range(0, layout.size, block):
        prod = mats[lo:lo + block, None] @ mats[None] % p
        table[lo:lo + block] = layout.encode(prod)
    labels = [";".join(",".join(map(str, r)) for r in m) for m in mats.tolist()]
    g = FiniteGroup(table, labels, descriptor)
    g.memo["matrices"] = mats
    g.memo["layout"] = layout
    return g


def st_group(spec: TriangularSpec, cap: int | None = None) -> FiniteGroup:
    """ST_n(F_p) when ``spec.det_one``, otherwise T*_n(F_p)."""
    free = spec.n - 1 if spec.det_one else spec.n
    return _tabulate(_Layout(spec.n, spec.p, free), spec.descriptor, cap)


def unitriangular_group(n: int, p: int, cap: int | None = None) -> FiniteGroup:
    if n < 2:
        raise GroupError("triangular groups need n >= 2")
    _check_prime(p)
    return _tabulate(_Layout(n, p, 0, unipotent=True), f"U({n},{p})", cap)


def element_matrix(g: FiniteGroup, x: int) -> MatrixFp:
    return MatrixFp(g.memo["matrices"][x], g.memo["layout"].p)


def matrix_index(g: FiniteGroup, m: MatrixFp) -> int:
    """Table index of a matrix in a tabulated triangular group."""
    layout = g.memo["layout"]
    code = int(layout.encode(m.entries))
    if not 0 <= code < g.order or not np.array_equal(g.memo["matrices"][code], m.entries):
        raise GroupError(f"{m!r} is not an element of {g.descriptor}")
    return code


# --------------------------------------------------------------------------
# the determining pair and the structural automorphisms


def _theorem_n(p: int) -> int:
    _check_prime(p)
    if p < 5:
        raise GroupError("the pair {B, C} needs a prime p >= 5")
    return p - 2


def theorem_BC(p: int) -> tuple[MatrixFp, MatrixFp]:
    """B = diag(1..p-2) and C = I + (ones on the superdiagonal), both in ST_{p-2}(F_p)."""
    n = _theorem_n(p)
    b = MatrixFp.diag(range(1, n + 1), p)
    c = MatrixFp(np.eye(n, dtype=np.int64) + np.eye(n, k=1, dtype=np.int64), p)
    return b, c


def commutant_dim(mats: list[MatrixFp], upper: bool = True) -> int:
    """Dimension of {Q (upper triangular) : QM = MQ for every M} over F_p."""
    p, n = mats[0].p, mats[0].n
    unknowns = [(i, j) for i in range(n) for j in range(n) if not upper or i <= j]
    col = {ij: k for k, ij in enumerate(unknowns)}
    eqs = []
    for m in mats:
        e = m.entries
        # (QM - MQ)_{ij} = sum_k q_ik m_kj - m_ik q_kj
        for i in range(n):
            for j in range(n):
                row = np.zeros(len(unknowns), dtype=np.int64)
                for k in range(n):
                    if (i, k) in col:
                        row[col[i, k]] += e[k, j]
                    if (k, j) in col:
                        row[col[k, j]] -= e[i, k]
                eqs.append(row % p)
    return len(unknowns) - _rank_mod_p(np.array(eqs), p)


def joint_centralizer_dim(p: int) -> int:
    return commutant_dim(list(theorem_BC(p)))


def case_ii_entry(p: int) -> int:
    """(1,1) entry of J B^{-T} J; conjugation by upper-triangular Q keeps it."""
    b, _ = theorem_BC(p)
    return b.inverse_transpose().j_conjugate()[0, 0]


def case_ii_excluded(p: int) -> bool:
    b, _ = theorem_BC(p)
    return case_ii_entry(p) != b[0, 0]


def structural_automorphism(spec: TriangularSpec, q: MatrixFp, case: str):
    """A -> Q A Q^-1 (case "i") or A -> Q (J A^-T J) Q^-1 (case "ii")."""
    if case not in ("i", "ii"):
        raise GroupError(f"unknown case {case!r}")
    if q.n != spec.n or q.p != spec.p:
        raise GroupError("Q has the wrong shape or modulus")
    if not q.is_upper_triangular() or q.det() == 0:
        raise GroupError("Q must be upper triangular and invertible")
    qi = q.inverse()

    def f(a: MatrixFp) -> MatrixFp:
        if case == "ii":
            a = a.inverse_transpose().j_conjugate()
        return q @ a @ qi

    return f


def materialize(g: FiniteGroup, q: MatrixFp, case: str) -> tuple[int, ...]:
    """Image array of a structural map on a tabulated triangular group."""
    mats = g.memo["matrices"]
    if case == "ii":
        mats = mats[g.inverse].transpose(0, 2, 1)[:, ::-1, ::-1]
    qi = q.inverse().entries
    img = (q.entries @ mats % q.p) @ qi % q.p
    return tuple(g.memo["layout"].encode(img).tolist())


def structural_family(spec: TriangularSpec):
    """Q ranging over T*_n(F_p) modulo scalars: normalized by q_11 = 1."""
    n, p = spec.n, spec.p
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for diag in itertools.product(range(1, p), repeat=n - 1):
        for up in itertools.product(range(p), repeat=len(upper)):
            e = np.diag((1,) + diag)
            for (i, j), v in zip(upper, up):
                e[i, j] = v
            yield MatrixFp(e, p)


# --------------------------------------------------------------------------
# the diagonal quotient


def _primitive_root(p: int) -> int:
    for r in range(2, p):
        if len({pow(r, k, p) for k in range(1, p)}) == p - 1:
            return r
    return 1


def abelian_rank(orders) -> int:
    """Smallest generating set size of a product of cyclic groups."""
    counts: dict[int, int] = {}
    for o in orders:
        for q in factorize(o):
            counts[q] = counts.get(q, 0) + 1
    return max(counts.values(), default=0)


def diag_quotient_gamma_bound(spec: TriangularSpec) -> int:
    """gamma of (F_p^*)^{n-1}, the image of A -> (a_11, ..., a_{n-1,n-1})."""
    if not spec.det_one:
        raise GroupError("the diagonal quotient bound is stated for ST")
    return abelian_rank([spec.p - 1] * (spec.n - 1))


def tau_hom(g: FiniteGroup) -> GroupHom:
    """A -> discrete logs of the first n-1 diagonal entries, into Z_{p-1}^{n-1}."""
    layout = g.memo["layout"]
    n, p = layout.n, layout.p
    root = _primitive_root(p)
    log = np.zeros(p, dtype=np.int64)
    for k in range(p - 1):
        log[pow(root, k, p)] = k
    target = abelian([p - 1] * (n - 1))
    mats = g.memo["matrices"]
    code = np.zeros(g.order, dtype=np.int64)
    for i in range(n - 1):
        code = code * (p - 1) + log[mats[:, i, i]]
    return GroupHom(g, target, tuple(code.tolist()))


@dataclass(frozen=True)
class QuotientCheck:
    kernel_order: int
    kernel_is_unitriangular: bool
    surjective: bool
    homomorphism: bool
    quotient_order: int
    quotient_matches: bool
    quotient_gamma: int


def check_diag_quotient(g: FiniteGroup) -> QuotientCheck:
    """Cross-check the bound on a concrete ST group through quotient machinery."""
    tau = tau_hom(g)
    kernel = tau.kernel()
    mats = g.memo["matrices"]
    n = mats.shape[1]
    uni = tuple(int(x) for x in np.flatnonzero((mats[:, range(n), range(n)] == 1).all(axis=1)))
    q, _ = quotient(g, kernel)
    return QuotientCheck(
        kernel_order=len(kernel),
        kernel_is_unitriangular=kernel == uni,
        surjective=len(tau.image_set()) == tau.codomain.order,
        homomorphism=tau.is_homomorphism(),
        quotient_order=q.order,
        quotient_matches=are_isomorphic(q, tau.codomain),
        quotient_gamma=generating_number(q).gamma,
    )


def certify_gamma_bound(p: int) -> int:
    """Lower bound gamma(ST_{p-2}(F_p)) >= p-3 without building the group.

    Quadratic characters of the first p-3 diagonal entries give a homomorphism
    onto F_2^{p-3}; the diagonal matrices diag(..., r, ..., r^-1) with r a
    non-residue hit a basis, and any generating set of G must span the image.
    Returns the certified F_2 rank.
    """
    n = _theorem_n(p)
    r = _primitive_root(p)
    vecs = []
    for i in range(n - 1):
        d = [1] * n
        d[i], d[n - 1] = r, pow(r, -1, p)
        m = MatrixFp.diag(d, p)
        if m.det() != 1:
            raise AssertionError("basis matrix left ST")
        vecs.append([int(pow(m[k, k], (p - 1) // 2, p) != 1) for k in range(n - 1)])
    return _rank_mod_p(np.array(vecs), 2)


# --------------------------------------------------------------------------
# combined verdict


@dataclass(frozen=True)
class BCVerdict:
    p: int
    n: int
    group_order: int
    centralizer_dim: int
    case_ii_excluded: bool
    nonabelian: bool
    alpha: int
    alpha_conditional: bool
    gamma_lower_bound: int
    structural_maps: int | None = None
    structural_maps_verified: bool | None = None
    structural_stabilizer: int | None = None
    quotient: QuotientCheck | None = None
    full_aut_order: int | None = None
    full_stabilizer_trivial: bool | None = None

    @property
    def ok(self) -> bool:
        checks = [self.centralizer_dim == 1, self.case_ii_excluded, self.nonabelian,
                  self.gamma_lower_bound == self.p - 3]
        if self.structural_maps is not None:
            checks += [bool(self.structural_maps_verified), self.structural_stabilizer == 1]
        if self.quotient is not None:
            checks += [self.quotient.quotient_gamma == self.p - 3, self.quotient.quotient_matches]
        if self.full_stabilizer_trivial is not None:
            checks += [self.full_stabilizer_trivial, self.full_aut_order == self.structural_maps]
        return all(checks)


def verify_BC_determining(p: int, concrete: bool | None = None, full_search: bool = False) -> BCVerdict:
    """Certify alpha(ST_{p-2}(F_p)) = 2 given the structural classification.

    With ``concrete`` (default: when the group fits the order cap) the whole
    structural family is materialized on the concrete group and verified.
    ``full_search`` additionally computes |Aut G| and searches the pointwise
    stabilizer of {B, C} directly; when both agree the verdict no longer rests
    on the classification.
    """
    n = _theorem_n(p)
    spec = TriangularSpec(n, p)
    b, c = theorem_BC(p)
    if b.det() != 1 or c.det() != 1:
        raise AssertionError("B or C is not in ST")
    verdict = dict(
        p=p, n=n, group_order=spec.order,
        centralizer_dim=joint_centralizer_dim(p),
        case_ii_excluded=case_ii_excluded(p),
        nonabelian=b @ c != c @ b,
        alpha=2, alpha_conditional=True,
        gamma_lower_bound=min(certify_gamma_bound(p), diag_quotient_gamma_bound(spec)),
    )
    if concrete is None:
        concrete = spec.order <= default_caps().order_cap
    if concrete:
        g = st_group(spec)
        bi, ci = matrix_index(g, b), matrix_index(g, c)
        maps = set()
        verified = True
        stab = 0
        for case in ("i", "ii"):
            for q in structural_family(spec):
                img = materialize(g, q, case)
                verified = verified and is_automorphism(g, img)
                maps.add(img)
                if img[bi] == bi and img[ci] == ci:
                    stab += 1
        verdict.update(structural_maps=len(maps), structural_maps_verified=verified,
                       structural_stabilizer=stab, quotient=check_diag_quotient(g))
        if full_search:
            trivial = stabilizer_witness(g, (bi, ci)) is None
            order = aut_order(g)
            verdict.update(full_aut_order=order, full_stabilizer_trivial=trivial,
                           alpha_conditional=not (trivial and order == len(maps)))
    return BCVerdict(**verdict)


__all__ = [
    "MatrixFp", "TriangularSpec", "BCVerdict", "QuotientCheck", "st_group", "unitriangular_group",
    "element_matrix", "matrix_index", "theorem_BC", "joint_centralizer_dim", "commutant_dim",
    "case_ii_entry", "case_ii_excluded", "structural_automorphism", "materialize",
    "structural_family", "diag_quotient_gamma_bound", "tau_hom", "check_diag_quotient",
    "certify_gamma_bound", "verify_BC_determining", "abelian_rank",
]
