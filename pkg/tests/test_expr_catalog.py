import pytest
from hypothesis import given
from hypothesis import strategies as st

from detgen import groups as G
from detgen.autos import are_isomorphic
from detgen.catalog import CatalogSpec, catalog_exprs, default_catalog, expr_order
from detgen.expr import Atom, ExprError, Power, Product, atoms, build, parse_group_expr, print_expr


def test_parse_examples():
    node = parse_group_expr("Z(2)^2 x Z(9)")
    assert atoms(node) == [Atom("Z", (2,)), Atom("Z", (2,)), Atom("Z", (9,))]
    assert parse_group_expr("ST(3,5)") == Atom("ST", (3, 5))
    with pytest.raises(ExprError) as info:
        parse_group_expr("Z()")
    assert info.value.offset == 2


@pytest.mark.parametrize("text,offset", [("Z(2) x", 6), ("Q(8", 3), ("Z(0)", 0), ("D(3,4)", 0),
                                         ("Z(2) ? Z(3)", 5), ("Z(2)^0", 5), ("(Z(2)", 5)])
def test_parse_errors(text, offset):
    with pytest.raises(ExprError) as info:
        parse_group_expr(text)
    assert info.value.offset == offset


def test_byte_offsets():
    with pytest.raises(ExprError) as info:
        parse_group_expr("Z(2) x é")
    assert info.value.offset == 7


def test_evaluation():
    g = build("Z(2)^2 x Z(9)")
    assert g.order == 36 and len(g.factors) == 3
    assert are_isomorphic(build("(S(3) x Z(2))"), G.direct_product([G.symmetric(3), G.cyclic(2)]))
    assert build("Z(2) x Z(3) x Z(5)").order == 30
    assert build("(Z(2) x Z(3))^2").order == 36


atom_st = st.one_of(
    st.builds(lambda n: Atom("Z", (n,)), st.integers(1, 12)),
    st.builds(lambda n: Atom("D", (n,)), st.integers(1, 6)),
    st.builds(lambda p, k: Atom("EA", (p, k)), st.sampled_from([2, 3, 5]), st.integers(1, 3)),
    st.just(Atom("Q", (8,))), st.just(Atom("S", (3,))), st.just(Atom("ST", (2, 3))),
)
expr_st = st.recursive(
    atom_st,
    lambda inner: st.one_of(st.builds(Power, inner, st.integers(1, 3)),
                            st.builds(lambda xs: Product(tuple(xs)), st.lists(inner, min_size=2, max_size=3))),
    max_leaves=5,
)


@given(expr_st)
def test_print_parse_round_trip(node):
    text = print_expr(node)
    again = parse_group_expr(text)
    assert print_expr(again) == text
    assert atoms(again) == atoms(node)


def test_catalog_contents():
    exprs = catalog_exprs()
    assert 110 <= len(exprs) <= 130
    assert len(set(exprs)) == len(exprs)
    assert all(f"Z({n})" in exprs for n in range(2, 64))
    for e in ("EA(2,5)", "EA(3,3)", "EA(5,2)", "D(12)", "S(4)", "A(5)", "Q(8)", "U(3,2)", "U(3,3)", "ST(2,3)"):
        assert e in exprs
    assert "S(5)" not in exprs
    assert all(expr_order(e) <= 63 for e in exprs)


def test_catalog_builds_with_matching_orders():
    cat = default_catalog()
    assert [g.order for g in cat] == [expr_order(e) for e in catalog_exprs()]
    assert len({g.descriptor for g in cat}) == len(cat)


def test_catalog_spec_filters():
    small = catalog_exprs(CatalogSpec(max_order=12, include_products=False))
    assert all(expr_order(e) <= 12 for e in small)
    assert catalog_exprs(CatalogSpec(max_order=1)) == []
    only_z = catalog_exprs(CatalogSpec(max_order=10, families=("Z",)))
    assert only_z == [f"Z({n})" for n in range(2, 11)]
