from itertools import product

import pytest
from hypothesis import given, strategies as st

from locgal.autloc import laut_site_of_functor
from locgal.errors import GroupLawError, GroupMismatch, InputError, NotAnAction
from locgal.gset import (DiscreteGroup, components, coproduct_action, coset_action, equivariant_maps,
                         g_to_laut, groups_up_to_order, hom_from_basepoint, is_equivalence_witness,
                         is_morphism, is_transitive, isomorphism, one_point, product_action,
                         regular_action, restrict, stabilizer_contained, tbg_category, trivial_action)

GROUPS = groups_up_to_order(8)

# number of subgroups, and of conjugacy classes of subgroups
SUBGROUPS = {"1": (1, 1), "Z2": (2, 2), "Z3": (2, 2), "Z4": (3, 3), "Z2xZ2": (5, 5), "Z5": (2, 2),
             "Z6": (4, 4), "S3": (6, 4), "Z7": (2, 2), "Z8": (4, 4), "Z4xZ2": (8, 8),
             "Z2xZ2xZ2": (16, 16), "D4": (10, 8), "Q8": (6, 6)}


def brute_maps(a, b):
    """Every equivariant function, by trying all functions."""
    out = []
    for f in product(range(len(b)), repeat=len(a)):
        if all(b.act[g][f[x]] == f[a.act[g][x]] for g in range(len(a.act)) for x in range(len(a))):
            out.append(f)
    return out


def test_group_catalogue():
    assert len(GROUPS) == 14
    assert [g.order for g in GROUPS] == [1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]
    for g in GROUPS:
        assert (len(g.subgroups), len(g.subgroup_classes)) == SUBGROUPS[g.name]
    for a, b in product(GROUPS, repeat=2):
        assert (isomorphism(a, b) is not None) == (a is b)


def test_group_names_and_errors():
    assert DiscreteGroup.named("Z/2 x Z/2").order == 4
    assert isomorphism(DiscreteGroup.named("Z6"), DiscreteGroup.named("Z2xZ3")) is not None
    assert isomorphism(DiscreteGroup.named("S3"), DiscreteGroup.named("D3")) is not None
    with pytest.raises(InputError):
        DiscreteGroup.named("nonsense")
    with pytest.raises(GroupLawError):
        DiscreteGroup("bad", ("e", "a"), ((0, 1), (1, 1)))


def test_transporters():
    z2, z4 = DiscreteGroup.cyclic(2), DiscreteGroup.cyclic(4)
    assert trivial_action(z2, ["a"]).mu[(0, 0)] == z2.full
    assert regular_action(z2).mu[(0, 1)] == 0b10
    half = coset_action(z4, 0b0101)  # cosets of {0, 2}
    assert len(half) == 2
    assert half.mu[(0, 1)] == 0b1010  # {1, 3}


def test_action_table_is_checked():
    z2 = DiscreteGroup.cyclic(2)
    with pytest.raises(NotAnAction):
        from locgal.gset import action_from_table
        action_from_table(z2, ["a", "b"], [[1, 0], [1, 0]])


def test_transitivity_and_components():
    z2 = DiscreteGroup.cyclic(2)
    assert is_transitive(regular_action(z2))
    assert not is_transitive(trivial_action(z2, ["a", "b"]))
    assert components(trivial_action(z2, ["a", "b"])) == [[0], [1]]
    assert components(regular_action(z2)) == [[0, 1]]
    both = coproduct_action(regular_action(z2), one_point(z2))
    assert components(both) == [[0, 1], [2]]
    assert is_equivalence_witness(both) is None


def test_products_and_coproducts():
    z2 = DiscreteGroup.cyclic(2)
    r = regular_action(z2)
    p = product_action(r, one_point(z2))
    assert len(p) == 2 and is_transitive(p)
    rr = product_action(r, r)
    comps = components(rr)
    assert len(comps) == 2
    for c in comps:
        part = restrict(rr, c)
        assert is_transitive(part) and isomorphic_actions(part, r)
    cop = coproduct_action(r, r)
    assert [len(c) for c in components(cop)] == [2, 2]
    with pytest.raises(GroupMismatch):
        product_action(r, regular_action(DiscreteGroup.cyclic(3)))


def isomorphic_actions(a, b):
    return any(len(set(f)) == len(b) == len(a) for f in equivariant_maps(a, b))


def test_hom_from_basepoint_examples():
    z4 = DiscreteGroup.cyclic(4)
    r, half = regular_action(z4), coset_action(z4, 0b0101)
    assert hom_from_basepoint(r, 0, r, 0) == (0, 1, 2, 3)
    f = hom_from_basepoint(r, 0, half, 0)
    assert f is not None and len(set(f)) == 2 and is_morphism(r, half, f)
    assert hom_from_basepoint(half, 0, r, 0) is None
    assert not stabilizer_contained(half, 0, r, 0)


@given(st.sampled_from(GROUPS), st.data())
def test_basepointed_homs_match_stabilizers(G, data):
    h = data.draw(st.sampled_from(G.subgroups))
    k = data.draw(st.sampled_from(G.subgroups))
    a, b = coset_action(G, h), coset_action(G, k)
    x0 = data.draw(st.integers(0, len(a) - 1))
    y0 = data.draw(st.integers(0, len(b) - 1))
    found = hom_from_basepoint(a, x0, b, y0)
    assert (found is not None) == stabilizer_contained(a, x0, b, y0)
    if len(b) ** len(a) <= 5000:
        brute = [f for f in brute_maps(a, b) if f[x0] == y0]
        assert brute == ([found] if found is not None else [])


def test_tbg_of_z2():
    tgs = tbg_category(DiscreteGroup.cyclic(2))
    C = tgs.category
    assert C.objects == ("R", "P")
    assert [[len(C.hom(x, y)) for y in range(2)] for x in range(2)] == [[2, 1], [0, 1]]


@pytest.mark.parametrize("name,objects", [("Z4", 3), ("S3", 4), ("Z2xZ2", 5)])
def test_tbg_object_counts(name, objects):
    tgs = tbg_category(DiscreteGroup.named(name))
    assert len(tgs.category.objects) == objects
    tgs.category.validate()
    tgs.functor.validate()


@pytest.mark.parametrize("G", GROUPS[:8], ids=lambda g: g.name)
def test_equivariant_maps_match_brute_force(G):
    tgs = tbg_category(G)
    for a, b in product(tgs.actions, repeat=2):
        if len(b) ** len(a) <= 5000:
            assert sorted(equivariant_maps(a, b)) == brute_maps(a, b)


@pytest.mark.parametrize("name", ["1", "Z2", "Z3", "Z4"])
def test_group_presents_a_morphism_into_laut(name):
    tgs = tbg_category(DiscreteGroup.named(name))
    aut = laut_site_of_functor(tgs.category, tgs.functor)
    stats = g_to_laut(tgs, aut)
    assert stats["generators"] == len(aut.generators)
