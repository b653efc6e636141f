import pytest

from detgen.autos import enumerate_automorphisms
from detgen.oracles import brute_force_automorphisms, exhaustive_automorphisms, naive_automorphisms

from conftest import SMALL, group


@pytest.mark.parametrize("expr", [e for e in SMALL if group(e).order <= 8])
def test_exhaustive_matches_brute_force(expr):
    g = group(expr)
    assert exhaustive_automorphisms(g) == brute_force_automorphisms(g)


@pytest.mark.parametrize("expr,order", [("Z(2)^3", 168), ("Q(8)", 24), ("D(4)", 8), ("Z(12)", 4),
                                        ("S(3) x Z(2)", 12)])
def test_known_aut_orders(expr, order):
    g = group(expr)
    assert len(exhaustive_automorphisms(g)) == order
    assert len(naive_automorphisms(g)) == order


def test_engine_matches_exhaustive():
    for e in ("A(4)", "D(6)", "Z(2) x Z(8)"):
        g = group(e)
        maps = {tuple(int(x) for x in row) for row in enumerate_automorphisms(g)}
        assert maps == exhaustive_automorphisms(g)


def test_brute_force_cap():
    with pytest.raises(Exception):
        brute_force_automorphisms(group("Z(12)"), cap=10)
