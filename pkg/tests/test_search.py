import pytest
from hypothesis import given
from hypothesis import strategies as st

from detgen import groups as G
from detgen.autos import automorphism_group
from detgen.config import CapExceeded, default_caps
from detgen.oracles import oracle_determining_number, oracle_generating_number
from detgen.search import (determining_number, generating_number, is_deg, is_determining_set,
                           is_generating_set, minimum_determining_sets)

from conftest import group, oracle_rows, small_groups


def test_is_determining_set_examples():
    s3 = G.symmetric(3)
    gens = [s3.index("213"), s3.index("231")]
    assert is_determining_set(s3, gens)
    assert is_determining_set(G.cyclic(6), [2])
    assert not is_determining_set(s3, [])


@pytest.mark.parametrize("expr,alpha", [("Z(2)", 0), ("Z(3)^2", 2), ("Z(2) x Z(4)", 2), ("S(3)", 2)])
def test_alpha_examples(expr, alpha):
    assert determining_number(group(expr)).alpha == alpha


@pytest.mark.parametrize("expr,gamma", [("Z(6)", 1), ("EA(2,3)", 3), ("Q(8)", 2), ("Z(1)", 0)])
def test_gamma_examples(expr, gamma):
    assert generating_number(group(expr)).gamma == gamma


def test_trivial_group_convention():
    assert determining_number(G.cyclic(1)).alpha == 0


@pytest.mark.parametrize("expr,deg", [("Z(2)", False), ("Z(6)", True), ("S(3)", True)])
def test_deg_examples(expr, deg):
    assert is_deg(group(expr)) is deg


def test_minimum_determining_sets_examples():
    assert minimum_determining_sets(G.cyclic(6)) == [(1,), (2,), (4,), (5,)]
    assert minimum_determining_sets(G.elementary_abelian(2, 2)) == [(1, 2), (1, 3), (2, 3)]
    assert minimum_determining_sets(G.cyclic(2)) == [()]


def test_minimum_sets_budget():
    caps = default_caps().replace(subset_budget=5)
    with pytest.raises(CapExceeded):
        minimum_determining_sets(G.symmetric(4), caps=caps)


def test_oracle_examples():
    assert oracle_determining_number(G.elementary_abelian(2, 2)).alpha == 2
    assert oracle_generating_number(G.cyclic(12)).gamma == 1
    assert oracle_determining_number(G.dicyclic(8)).alpha == 2
    with pytest.raises(CapExceeded):
        oracle_determining_number(G.cyclic(30))


def test_node_budget_reports_bounds():
    with pytest.raises(CapExceeded) as info:
        determining_number(G.elementary_abelian(2, 4), node_budget=3)
    assert info.value.lower is not None and info.value.upper == 4


def test_z6_witness_is_lex_least():
    rep = determining_number(G.cyclic(6))
    assert rep.witness == (1,)


@pytest.mark.parametrize("row", oracle_rows(), ids=lambda r: r["expr"])
def test_engine_matches_frozen_oracle(row):
    g = group(row["expr"])
    a = determining_number(g)
    c = generating_number(g)
    assert (a.alpha, list(a.witness)) == (row["alpha"], row["alpha_witness"])
    assert (c.gamma, list(c.witness)) == (row["gamma"], row["gamma_witness"])


@pytest.mark.parametrize("row", oracle_rows()[::4], ids=lambda r: r["expr"])
def test_search_mode_matches_frozen_oracle(row):
    # force the orbit-stabilizer path instead of the explicit automorphism list
    caps = default_caps().replace(explicit_work=0, aut_cap=0)
    rep = determining_number(group(row["expr"]), caps=caps)
    assert rep.method == "constrained-search"
    assert (rep.alpha, list(rep.witness)) == (row["alpha"], row["alpha_witness"])


@given(small_groups())
def test_report_invariants(g):
    a, c = determining_number(g), generating_number(g)
    assert 0 <= a.alpha <= c.gamma <= G.chi(g)
    assert len(a.witness) == a.alpha and is_determining_set(g, a.witness)
    assert len(c.witness) == c.gamma and is_generating_set(g, c.witness)
    assert is_determining_set(g, c.witness)
    if not G.is_abelian(g):
        assert a.alpha >= 2


@given(small_groups(min_order=2))
def test_minimum_sets_properties(g):
    a = determining_number(g)
    sets = minimum_determining_sets(g, a.alpha)
    assert sets[0] == a.witness and sets == sorted(sets)
    z = G.center(g)
    for d in sets:
        assert G.centralizer(g, d) == z
        h = G.promote(g, G.closure(g, d))
        assert generating_number(h).gamma == a.alpha


@given(small_groups(), st.data())
def test_images_of_determining_sets(g, data):
    aut = automorphism_group(g)
    d = determining_number(g).witness
    sigma = data.draw(st.sampled_from(aut.elements))
    assert is_determining_set(g, sorted({sigma[x] for x in d}))


@given(small_groups(), st.data())
def test_supersets_stay_determining(g, data):
    d = set(determining_number(g).witness)
    extra = data.draw(st.sets(st.integers(0, g.order - 1), max_size=2))
    assert is_determining_set(g, sorted(d | extra))


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_elementary_abelian_alpha_is_rank(p, n):
    assert determining_number(G.elementary_abelian(p, n)).alpha == n
