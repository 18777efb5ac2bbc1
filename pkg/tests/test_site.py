import random
from itertools import product

import pytest

from conftest import random_site
from locgal.autloc import laut_site_of_set
from locgal.errors import InvalidSite, SaturationBudgetExceeded, SearchBudgetExceeded
from locgal.order import MeetSemilattice, bits, validate_preorder
from locgal.site import (LITERAL, MINIMAL, Sieve, SieveClosure, SitePresentation, check_point,
                         compose_step, covering_system, enumerate_points, is_zero, pi_step,
                         point_failure, point_split_failure, product_site, saturate, sheaf_leq,
                         sheafify, sieve_covers, terminal_site)


def brute_points(site):
    n = len(site.base)
    return sorted(m for m in range(1, 1 << n) if point_failure(site, m) is None)


@pytest.fixture
def five():
    """1 on top, a and b below it, c below a, and a bottom 0."""
    order = validate_preorder(list("1abc0"), [(1, 0), (2, 0), (3, 0), (4, 0), (3, 1), (4, 1), (4, 2), (4, 3)],
                              close_reflexive=True)
    return SitePresentation.build(MeetSemilattice.from_order(order), [], "five")


def test_pi_step_along_the_chain(chain2_site):
    out = pi_step({1: [(0,)]}, chain2_site)
    assert out[0] == {(0,)}
    assert out[1] == {(0,)}


def test_pullback_of_iso_and_empty_families(chain2_site):
    assert pi_step({1: [(1,)]}, chain2_site)[0] == {(0,)}
    out = pi_step({1: [()]}, chain2_site)
    assert out[0] == {()} and out[1] == {()}


def test_compose_refines_each_member(five):
    # indices: 1=0, a=1, b=2, c=3, 0=4
    out = compose_step({1: [(3,)], 2: [(2,)]}, {0: [(1, 2)]}, five)
    assert out[0] == {(2, 3)}


def test_compose_with_identities(five):
    iso = {u: [(u,)] for u in range(5)}
    fam = {0: [(1, 2)]}
    assert compose_step(iso, fam, five)[0] == {(1, 2)}
    assert compose_step({1: [(3,)], 2: [(2,)]}, iso, five)[1] == {(3,)}


def test_empty_outer_family_gives_empty_composite(chain2_site):
    out = compose_step({0: [()]}, {1: [(0,)]}, chain2_site)
    assert out[1] == {()}


def test_no_covers_means_identity_only(five):
    rel = saturate(five)
    assert rel.stage_reached == 0
    assert all(rel.families_of(u) == [frozenset([u])] for u in range(5))


def test_chain_saturation(chain2_site):
    rel = saturate(chain2_site)
    # generated families are {1} and {a}; supersets such as {a, 1} cover only as sieves
    assert set(rel.families_of(1)) == {frozenset([1]), frozenset([0])}
    assert rel.families_of(0) == [frozenset([0])]
    assert rel.stage_reached == 0
    assert rel.first_stage(1, [0]) == 0
    assert not rel.contains(1, [0, 1])
    assert rel.refines(1, [0, 1]) and rel.refines(1, [0])
    assert not rel.contains(0, [])


def test_laut_two_has_the_forced_empty_cover():
    aut = laut_site_of_set(2)
    u = aut.element([(0, 0, 0), (0, 1, 0)])
    rel = saturate(aut.site)
    assert rel.contains(u, [])
    assert rel.is_zero(u) and is_zero(u, aut.site)
    assert not rel.is_zero(aut.gen(0, 0, 1))


def test_sieve_examples(chain2_site):
    closure = SieveClosure(chain2_site)
    assert sieve_covers(1, Sieve.generated(chain2_site, 1, [0]), chain2_site, closure)
    for u in range(2):
        assert closure.covers(u, chain2_site.base.down_mask(u))
        assert closure.covers(u, 0) == saturate(chain2_site).is_zero(u)
    with pytest.raises(InvalidSite):
        sieve_covers(0, Sieve(1, 1), chain2_site)


def test_sheaf_order_examples(chain2_site):
    assert sheaf_leq(1, 0, chain2_site)
    assert sheaf_leq(0, 1, chain2_site)
    assert all(sheaf_leq(u, u, chain2_site) for u in range(2))


def test_point_examples(chain2_site):
    pts = enumerate_points(terminal_site())
    assert [p.members for p in pts] == [1]
    pts = enumerate_points(chain2_site)
    assert [p.members for p in pts] == [0b11] == brute_points(chain2_site)
    assert len(enumerate_points(laut_site_of_set(2).site)) == 2


def test_point_budget_and_check(chain2_site):
    with pytest.raises(SearchBudgetExceeded):
        enumerate_points(chain2_site, budget=1)
    assert check_point(chain2_site, 0b11).least == 0
    with pytest.raises(Exception):
        check_point(chain2_site, 0b10)


def test_products(chain2_site):
    t = product_site(chain2_site, terminal_site())
    assert len(t.base) == 2 and len(enumerate_points(t)) == 1
    disc = SitePresentation.build(MeetSemilattice.from_order(validate_preorder(["1", "a", "b", "0"],
                                  [(1, 0), (2, 0), (3, 0), (3, 1), (3, 2)], close_reflexive=True)), [(0, [1, 2])])
    for s1, s2 in [(chain2_site, disc), (disc, disc)]:
        p = product_site(s1, s2)
        nb = len(s2.base)
        got = {pt.least for pt in enumerate_points(p)}
        want = {a.least * nb + b.least for a in enumerate_points(s1) for b in enumerate_points(s2)}
        assert got == want
    two = laut_site_of_set(2).site
    assert len(enumerate_points(product_site(two, two))) == 4


def test_budgets_raise(chain2_site):
    with pytest.raises(SaturationBudgetExceeded):
        saturate(laut_site_of_set(2).site, max_families=3)
    with pytest.raises(SaturationBudgetExceeded):
        saturate(laut_site_of_set(3).site, mode=MINIMAL, max_stage=1)
    with pytest.raises(ValueError):
        saturate(chain2_site, mode="bogus")


SEEDS = range(40)


@pytest.mark.parametrize("seed", SEEDS)
def test_random_site_points_and_sheaf_routes(seed):
    rng = random.Random(seed)
    site = random_site(rng, max_base=9)
    rel = saturate(site)
    n = len(site.base)
    # points: principal-filter search against brute force, and genericity
    pts = enumerate_points(site)
    assert [p.members for p in pts] == sorted(brute_points(site), key=lambda m: pts_order(site, m))
    for p in pts:
        assert point_split_failure(rel, p) is None
    # three independent routes to the sheaf order
    closure = SieveClosure(site)
    system = covering_system(site)
    for u, v in product(range(n), repeat=2):
        staged = rel.sheaf_leq(u, v)
        by_sieve = closure.covers(u, site.base.down_mask(u) & site.base.down_mask(v))
        by_sheaf = bool(sheafify(site, 1 << v, system) >> u & 1)
        assert staged == by_sieve == by_sheaf
    # order laws
    for u, v, w in product(range(n), repeat=3):
        if rel.sheaf_leq(u, v) and rel.sheaf_leq(v, w):
            assert rel.sheaf_leq(u, w)
    for u, v in product(range(n), repeat=2):
        if rel.is_zero(v) and rel.sheaf_leq(u, v):
            assert rel.is_zero(u)


def pts_order(site, mask):
    # enumerate_points lists filters by their least element
    return site.base.meet_all(bits(mask))


@pytest.mark.parametrize("seed", SEEDS)
def test_literal_and_minimal_agree(seed):
    site = random_site(random.Random(1000 + seed), max_base=9)
    lit = saturate(site, mode=LITERAL)
    mini = saturate(site, mode=MINIMAL)
    n = len(site.base)
    for u in range(n):
        minimal_of_literal = [f for f in lit.families[u]
                              if not any(g != f and g & f == g for g in lit.families[u])]
        assert list(mini.families[u]) == minimal_of_literal
        assert mini.is_zero(u) == lit.is_zero(u)
        for v in range(n):
            assert mini.sheaf_leq(u, v) == lit.sheaf_leq(u, v)


@pytest.mark.parametrize("seed", range(15))
@pytest.mark.parametrize("mode", [LITERAL, MINIMAL])
def test_schedule_does_not_change_the_result(seed, mode):
    site = random_site(random.Random(2000 + seed))
    a = saturate(site, mode=mode, order="forward")
    b = saturate(site, mode=mode, order="reverse")
    assert a.to_json() == b.to_json()
    assert a.stages == b.stages
