from itertools import product

import pytest

from locgal.category import (Arrow, FinCategory, SetFunctor, category_of_poset, is_effective,
                             is_strict_epi, kernel_pairs, representable_functor, strict_epi)
from locgal.errors import CategoryLawError, FunctorLawError
from locgal.gset import DiscreteGroup, groups_up_to_order, tbg_category


def two_chain():
    """Objects X, Y and one non-identity arrow X -> Y."""
    return category_of_poset(["X", "Y"], lambda i, j: i <= j)


def group_as_category(G: DiscreteGroup) -> FinCategory:
    return FinCategory.from_keys(["*"], [(0, 0, g) for g in range(G.order)], lambda g, f: G.mul(g, f),
                                 lambda x: 0, name=lambda s, t, k: G.labels[k])


def test_two_chain_arrow_is_not_strict():
    C = two_chain()
    f = next(i for i, a in enumerate(C.arrows) if a.source != a.target)
    res = strict_epi(C, f)
    assert not res
    g, hs = res.witness
    assert hs == ()  # no h : Y -> X undoes f
    assert not is_strict_epi(C, f)


def test_isomorphisms_are_strict_and_effective():
    C = group_as_category(DiscreteGroup.cyclic(3))
    C.validate()
    for f in range(len(C.arrows)):
        assert C.is_iso(f)
        assert is_strict_epi(C, f)
        assert is_effective(C, f)
    assert len(C.automorphisms(0)) == 3


def test_composition_table_is_checked():
    # in Z/3 replacing 1+1=2 by 1 breaks associativity
    C = group_as_category(DiscreteGroup.cyclic(3))
    bad = dict(C.table)
    bad[(1, 1)] = 1
    with pytest.raises(CategoryLawError) as exc:
        FinCategory.from_table(C.objects, [(a.name, a.source, a.target) for a in C.arrows], bad, C.identities)
    assert exc.value.law in ("identity", "associativity")


def test_missing_composite_is_reported():
    arrows = (Arrow("id", 0, 0), Arrow("e", 0, 0))
    with pytest.raises(CategoryLawError):
        FinCategory(("X",), arrows, {(0, 0): 0, (0, 1): 1, (1, 0): 1}, (0,)).validate()


def test_functor_laws_are_checked():
    C = two_chain()
    F = SetFunctor(C, (("a", "b"), ("c",)), tuple((0, 1) if a.source == a.target == 0 else
                                                  (0,) if a.source == a.target else (0, 0) for a in C.arrows))
    F.validate()
    bad = SetFunctor(C, F.fibers, tuple((1, 0) if m == (0, 1) else m for m in F.maps))
    with pytest.raises(FunctorLawError):
        bad.validate()


def test_representable_functor_is_a_functor():
    for G in (DiscreteGroup.cyclic(2), DiscreteGroup.symmetric(3)):
        C = tbg_category(G).category
        for a in range(len(C.objects)):
            F = representable_functor(C, a)
            F.validate()
            assert F.is_faithful() or a != 0


def test_kernel_pairs_of_an_iso_are_diagonal():
    C = group_as_category(DiscreteGroup.cyclic(2))
    assert sorted(kernel_pairs(C, 1)) == [(0, 0), (1, 1)]


@pytest.mark.parametrize("G", groups_up_to_order(6), ids=lambda g: g.name)
def test_strict_epi_matches_surjectivity_on_transitive_gsets(G):
    tgs = tbg_category(G)
    C, F = tgs.category, tgs.functor
    for f, a in enumerate(C.arrows):
        surj = len(set(F.maps[f])) == F.fiber_size(a.target)
        assert is_strict_epi(C, f) == surj


def test_poset_category_hom_sets():
    C = category_of_poset(list("abc"), lambda i, j: i <= j)
    C.validate()
    for x, y in product(range(3), repeat=2):
        assert len(C.hom(x, y)) == (1 if x <= y else 0)
