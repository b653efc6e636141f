import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from detgen import groups as G
from detgen.autos import (Automorphism, are_isomorphic, aut_order, automorphism_group,
                          enumerate_automorphisms, fingerprints, hom_set, inner_automorphism,
                          is_automorphism, isomorphism, stabilizer_witness)
from detgen.config import CapExceeded
from detgen.oracles import brute_force_automorphisms

from conftest import group, oracle_rows, small_groups


def full_check(g, image) -> bool:
    """Bijective homomorphism, checked on all n^2 products."""
    f = np.asarray(image)
    if sorted(image) != list(range(g.order)) or f[0] != 0:
        return False
    return bool((f[g.table] == g.table[f[:, None], f[None, :]]).all())


def test_aut_orders():
    assert aut_order(G.elementary_abelian(2, 2)) == 6
    assert aut_order(G.cyclic(6)) == 2
    assert aut_order(G.symmetric(3)) == 6


def test_stabilizer_witness_examples():
    assert stabilizer_witness(G.cyclic(6), [2]) is None
    w = stabilizer_witness(G.cyclic(4), [2])
    assert w is not None and w.image == (0, 3, 2, 1)
    assert stabilizer_witness(G.symmetric(3), []) is not None


def test_hom_set_examples():
    assert len(hom_set(G.cyclic(4), G.cyclic(2))) == 2
    assert len(hom_set(G.symmetric(3), G.cyclic(3))) == 1
    homs = hom_set(G.cyclic(2), G.cyclic(4))
    assert sorted(h.image[1] for h in homs) == [0, 2]


def test_hom_set_cap():
    with pytest.raises(CapExceeded):
        hom_set(G.elementary_abelian(2, 4), G.elementary_abelian(2, 4), cap=10)


def test_isomorphism_examples():
    f = isomorphism(G.direct_product([G.cyclic(2), G.cyclic(3)]), G.cyclic(6))
    assert f is not None and f.is_homomorphism() and sorted(f.image) == list(range(6))
    assert isomorphism(G.cyclic(4), G.elementary_abelian(2, 2)) is None
    assert are_isomorphic(G.symmetric(3), G.dihedral(3))
    assert isomorphism(G.cyclic(4), G.cyclic(5)) is None


def test_inner_automorphism_examples():
    s3 = G.symmetric(3)
    assert inner_automorphism(G.cyclic(5), 3).is_identity()
    f = inner_automorphism(s3, s3.index("213"))
    assert f(s3.index("321")) == s3.index("132") and f(s3.index("132")) == s3.index("321")


@pytest.mark.parametrize("row", [r for r in oracle_rows() if "aut_bruteforce" in r], ids=lambda r: r["expr"])
def test_aut_matches_bijection_scan(row):
    g = group(row["expr"])
    engine = set(automorphism_group(g).elements)
    assert engine == brute_force_automorphisms(g)
    assert len(engine) == row["aut_bruteforce"]


@pytest.mark.parametrize("row", oracle_rows(), ids=lambda r: r["expr"])
def test_aut_order_frozen(row):
    assert aut_order(group(row["expr"])) == row["aut_order"]


@given(small_groups())
def test_enumerated_automorphisms_verify(g):
    aut = automorphism_group(g)
    assert not aut.capped and aut.order == len(aut.elements)
    fps = fingerprints(g)
    ident = tuple(range(g.order))
    assert ident in aut.elements
    for im in aut.elements:
        assert full_check(g, im)
        assert all(fps[x] == fps[im[x]] for x in range(g.order))
    elems = set(aut.elements)
    for a in aut.generators[:3]:
        for b in aut.generators[:3]:
            assert a.then(b).image in elems
        assert a.inverse().image in elems


@given(small_groups())
def test_inner_automorphisms_count(g):
    inner = {inner_automorphism(g, x).image for x in range(g.order)}
    assert len(inner) == g.order // len(G.center(g))
    assert all(full_check(g, im) for im in inner)


@given(small_groups(), st.data())
def test_inn_is_homomorphism(g, data):
    x = data.draw(st.integers(0, g.order - 1))
    y = data.draw(st.integers(0, g.order - 1))
    # conjugation by xy is conjugation by y followed by conjugation by x
    lhs = inner_automorphism(g, g.mul(x, y))
    rhs = inner_automorphism(g, y).then(inner_automorphism(g, x))
    assert lhs == rhs


@given(small_groups(), st.data())
def test_stabilizer_witness_matches_enumeration(g, data):
    fixed = sorted(data.draw(st.sets(st.integers(0, g.order - 1), max_size=2)))
    maps = enumerate_automorphisms(g)
    stab = maps[(maps[:, fixed] == np.asarray(fixed, dtype=maps.dtype)).all(axis=1)] if fixed else maps
    w = stabilizer_witness(g, fixed)
    assert (w is None) == (len(stab) == 1)
    if w is not None:
        assert full_check(g, w.image) and w.fixes(fixed) and not w.is_identity()


@given(small_groups(), st.data())
def test_pointwise_stabilizer_enumeration(g, data):
    fixed = sorted(data.draw(st.sets(st.integers(0, g.order - 1), max_size=2)))
    maps = enumerate_automorphisms(g)
    expect = maps[(maps[:, fixed] == np.asarray(fixed, dtype=maps.dtype)).all(axis=1)] if fixed else maps
    got = enumerate_automorphisms(g, fixed)
    assert np.array_equal(got, expect)


@given(small_groups(), small_groups())
def test_hom_set_contains_trivial_and_verifies(h, k):
    if h.order * k.order > 200:
        return
    homs = hom_set(h, k)
    assert (0,) * h.order in {f.image for f in homs}
    for f in homs:
        assert G.is_homomorphism(h, k, f.image)
    images = {f.image for f in homs}
    for sigma in automorphism_group(k).elements:
        assert {tuple(sigma[y] for y in f.image) for f in homs} == images


def test_is_automorphism_rejects():
    g = G.cyclic(5)
    assert is_automorphism(g, (0, 2, 4, 1, 3))
    assert not is_automorphism(g, (0, 2, 1, 3, 4))
    assert not is_automorphism(g, (1, 0, 2, 3, 4))


def test_large_aut_is_capped():
    aut = automorphism_group(G.elementary_abelian(2, 5), enumeration_cap=1000)
    assert aut.capped and aut.elements is None and aut.order == 9999360
    assert all(full_check(aut.group, s.image) for s in aut.generators)
    assert isinstance(aut.generators[0], Automorphism)
