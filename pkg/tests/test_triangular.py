import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from detgen import groups as G
from detgen.autos import are_isomorphic, is_automorphism
from detgen.search import generating_number
from detgen.triangular import (MatrixFp, TriangularSpec, case_ii_entry, case_ii_excluded,
                               certify_gamma_bound, check_diag_quotient, diag_quotient_gamma_bound,
                               element_matrix, joint_centralizer_dim, materialize, matrix_index,
                               st_group, structural_automorphism, tau_hom, theorem_BC,
                               unitriangular_group, verify_BC_determining)

from conftest import group

PRIMES = [p for p in range(5, 200) if G.is_prime(p)]


def upper_matrices(n, p):
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    for vals in itertools.product(range(p), repeat=len(cells)):
        e = np.zeros((n, n), dtype=np.int64)
        for (i, j), v in zip(cells, vals):
            e[i, j] = v
        if all(e[i, i] for i in range(n)):
            yield MatrixFp(e, p)


def test_group_orders():
    st23 = st_group(TriangularSpec(2, 3))
    assert st23.order == 6 and are_isomorphic(st23, G.cyclic(6))
    assert TriangularSpec(3, 5).order == 2000
    assert st_group(TriangularSpec(2, 3, det_one=False)).order == 12
    assert unitriangular_group(3, 3).order == 27


def test_st35_concrete_order():
    assert group("ST(3,5)").order == 2000


def test_bad_parameters():
    with pytest.raises(G.GroupError):
        TriangularSpec(3, 4)
    with pytest.raises(G.GroupError):
        theorem_BC(3)


@pytest.mark.parametrize("p,det", [(5, 6), (7, 120)])
def test_b_determinant(p, det):
    b, c = theorem_BC(p)
    assert det % p == 1 and b.det() == 1
    assert b.entries.diagonal().tolist() == list(range(1, p - 1))


@pytest.mark.parametrize("p", PRIMES)
def test_b_and_c_in_st(p):
    b, c = theorem_BC(p)
    assert b.det() == 1 and c.det() == 1
    power = MatrixFp.identity(p - 2, p)
    for _ in range(p):
        power = power @ c
    assert power == MatrixFp.identity(p - 2, p)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_joint_centralizer_is_scalars(p):
    assert joint_centralizer_dim(p) == 1


def test_case_ii_entries():
    assert case_ii_entry(5) == 2 and case_ii_excluded(5)
    assert case_ii_entry(7) == 3 and case_ii_excluded(7)
    i3 = MatrixFp.identity(3, 5)
    assert i3.j_conjugate() == i3 and i3.j_conjugate()[0, 0] == 1


def test_matrix_algebra():
    a = MatrixFp([[2, 3, 1], [0, 4, 2], [0, 0, 3]], 5)
    assert a @ a.inverse() == MatrixFp.identity(3, 5)
    assert a.inverse_transpose() == a.transpose().inverse()
    j = MatrixFp.reversal(3, 5)
    assert a.j_conjugate() == j @ a @ j
    assert a.det() == (2 * 4 * 3) % 5
    assert (a + a) == a.scale(2)


@given(st.lists(st.integers(0, 6), min_size=9, max_size=9))
def test_det_multiplicative(vals):
    a = MatrixFp(np.array(vals).reshape(3, 3), 7)
    b = MatrixFp(np.array(vals[::-1]).reshape(3, 3), 7)
    assert (a @ b).det() == a.det() * b.det() % 7


def test_structural_identity_cases():
    spec = TriangularSpec(3, 5)
    g = group("ST(3,5)")
    ident = tuple(range(g.order))
    assert materialize(g, MatrixFp.identity(3, 5), "i") == ident
    assert materialize(g, MatrixFp.identity(3, 5).scale(3), "i") == ident
    f = structural_automorphism(spec, MatrixFp.identity(3, 5), "i")
    b, _ = theorem_BC(5)
    assert f(b) == b
    with pytest.raises(G.GroupError):
        structural_automorphism(spec, MatrixFp([[1, 0, 0], [1, 1, 0], [0, 0, 1]], 5), "i")


def test_case_ii_on_st23():
    g = st_group(TriangularSpec(2, 3))
    img = materialize(g, MatrixFp.identity(2, 3), "ii")
    assert is_automorphism(g, img)


def test_structural_maps_compose():
    g = group("ST(3,5)")
    q1 = MatrixFp([[1, 2, 0], [0, 3, 1], [0, 0, 4]], 5)
    q2 = MatrixFp([[1, 0, 4], [0, 2, 0], [0, 0, 1]], 5)
    m1, m2 = materialize(g, q1, "i"), materialize(g, q2, "i")
    both = materialize(g, q2 @ q1, "i")
    assert tuple(m2[m1[x]] for x in range(g.order)) == both
    assert m1 != m2


@pytest.mark.parametrize("p", [3, 5])
def test_conjugation_keeps_diagonal(p):
    for q in list(upper_matrices(2, p))[:20]:
        for a in list(upper_matrices(2, p))[:20]:
            c = q @ a @ q.inverse()
            assert c.entries.diagonal().tolist() == a.entries.diagonal().tolist()


def test_element_matrix_round_trip():
    g = group("ST(3,5)")
    for x in (0, 1, 77, 1999):
        assert matrix_index(g, element_matrix(g, x)) == x


def test_tau_quotient():
    g = group("ST(3,5)")
    tau = tau_hom(g)
    assert tau.is_homomorphism()
    chk = check_diag_quotient(g)
    assert chk.kernel_order == 125 and chk.kernel_is_unitriangular
    assert chk.surjective and chk.quotient_order == 16 and chk.quotient_gamma == 2


def test_gamma_bounds():
    assert diag_quotient_gamma_bound(TriangularSpec(3, 5)) == 2
    assert diag_quotient_gamma_bound(TriangularSpec(5, 7)) == 4
    assert generating_number(G.abelian([6] * 4)).gamma == 4
    assert all(diag_quotient_gamma_bound(TriangularSpec(2, p)) == 1 for p in (3, 5, 7))
    for p in (5, 7, 11, 13):
        assert certify_gamma_bound(p) == p - 3


def test_tau_kernel_order_general():
    g = group("ST(2,5)")
    assert len(tau_hom(g).kernel()) == 5


@pytest.mark.parametrize("p,bound", [(7, 4), (11, 8)])
def test_bc_verdict_symbolic(p, bound):
    v = verify_BC_determining(p)
    assert v.ok and v.alpha == 2 and v.alpha_conditional
    assert v.centralizer_dim == 1 and v.case_ii_excluded and v.gamma_lower_bound == bound
    assert v.structural_maps is None


def test_bc_verdict_p5():
    v = verify_BC_determining(5)
    assert v.ok and v.alpha == 2 and v.alpha_conditional
    assert v.group_order == 2000 and v.structural_maps_verified and v.structural_stabilizer == 1
    assert v.structural_maps == 4000
