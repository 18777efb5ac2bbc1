import json
import random

import pytest

from locgal.category import SetFunctor, category_of_poset, representable_functor
from locgal.gset import DiscreteGroup, tbg_category
from locgal.site import LITERAL, MINIMAL
from locgal.verify import (check_assumption, gen_finite_field_site, verify_auxiliar, verify_classical,
                           verify_classifying, verify_gsets, verify_localic, verify_site_laws)

from conftest import random_site


def tbg(name):
    tgs = tbg_category(DiscreteGroup.named(name))
    return tgs.category, tgs.functor


def two_chain_functor(fibers):
    C = category_of_poset(["X", "Y"], lambda i, j: i <= j)
    maps = []
    for a in C.arrows:
        if a.source == a.target:
            maps.append(tuple(range(len(fibers[a.source]))))
        else:
            maps.append(tuple(0 for _ in fibers[a.source]))
    return C, SetFunctor(C, tuple(tuple(f) for f in fibers), tuple(maps))


def test_assumption_fails_on_a_non_strict_arrow():
    C, F = two_chain_functor([("a", "b"), ("c",)])
    F.validate()
    rep = check_assumption(C, F)
    assert not rep.strict_epi_ok
    assert rep.strict_epi_counterexample["arrow"] == C.arrows[
        next(i for i, a in enumerate(C.arrows) if a.source != a.target)].name
    assert not rep.holds
    assert rep.to_json()["holds"] is False
    conds = [c["condition"] for c in rep.as_theorem().counterexamples]
    assert "strict-epi" in conds


def test_assumption_fails_on_an_empty_fiber():
    z2 = DiscreteGroup.cyclic(2)
    from locgal.category import FinCategory
    C = FinCategory.from_keys(["*"], [(0, 0, g) for g in range(2)], lambda g, f: z2.mul(g, f), lambda x: 0)
    F = SetFunctor(C, ((),), ((), ()))
    F.validate()
    rep = check_assumption(C, F)
    assert not rep.fibers_nonempty_ok
    assert rep.fibers_witness == "*"
    assert not rep.holds


@pytest.mark.parametrize("name", ["1", "Z2", "Z3", "Z4", "Z2xZ2"])
def test_assumption_holds_for_transitive_gsets(name):
    C, F = tbg(name)
    rep = check_assumption(C, F, effective=True)
    assert rep.holds
    # isomorphisms always have a kernel pair; a quotient map generally does not,
    # since the pullback of transitive G-sets splits into several orbits
    for f, a in enumerate(C.arrows):
        if C.is_iso(f):
            assert rep.effective[a.name]


def test_quotient_of_z2_has_no_kernel_pair():
    C, F = tbg("Z2")
    rep = check_assumption(C, F, effective=True)
    assert rep.effective == {"R->R:0,1": True, "R->R:1,0": True, "R->P:0H,0H": False, "P->P:0H": True}


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4"])
def test_classical_and_localic_agree(name):
    C, F = tbg(name)
    classical = verify_classical(C, 0)
    localic = verify_localic(C, F, mode=MINIMAL)
    assert classical.passed, classical.summary()
    assert localic.passed, localic.summary()
    # the lifting lemma and the quotient property count the same arrows
    rep = representable_functor(C, 0)
    assert all(rep.fiber_size(x) == F.fiber_size(x) for x in range(len(C.objects)))


@pytest.mark.parametrize("name", ["Z2", "Z3"])
def test_localic_suite_in_literal_mode(name):
    C, F = tbg(name)
    lit = verify_localic(C, F, mode=LITERAL)
    mini = verify_localic(C, F, mode=MINIMAL)
    assert lit.passed and mini.passed
    for a, b in zip(lit.reports, mini.reports):
        assert a.verdict == b.verdict
    assert lit["no-zero-generators"].stats["families"] >= mini["no-zero-generators"].stats["families"]


def test_localic_on_a_field_category():
    C, A, _ = gen_finite_field_site(2, 2)
    rep = verify_localic(C, representable_functor(C, A))
    assert rep.passed, rep.summary()


@pytest.mark.parametrize("name", ["1", "Z2", "Z3", "Z4", "Z2xZ2", "S3"])
def test_auxiliary_factorization(name):
    assert verify_auxiliar(*tbg(name)).verdict


def test_auxiliary_factorization_fails_on_parallel_arrows():
    from locgal.category import FinCategory
    # X => Y by s, t over one-point fibers: nothing Y -> Y carries s to t
    C = FinCategory.from_keys(["X", "Y"], [(0, 0, "id"), (1, 1, "id"), (0, 1, "s"), (0, 1, "t")],
                              lambda g, f: f if g == "id" else g, lambda x: "id")
    C.validate()
    F = SetFunctor(C, (("a",), ("c",)), tuple((0,) for _ in C.arrows))
    F.validate()
    r = verify_auxiliar(C, F)
    assert not r.verdict
    assert any(c["h_found"] == 0 for c in r.counterexamples)


@pytest.mark.parametrize("name", ["1", "Z2", "Z3", "Z4", "Z2xZ2"])
def test_classifying_round_trip(name):
    rep = verify_classifying(DiscreteGroup.named(name))
    assert rep.passed, rep.summary()
    assert rep["point-group-iso"].stats["points"] == DiscreteGroup.named(name).order


@pytest.mark.parametrize("name", ["1", "Z2", "Z3", "Z4", "Z2xZ2", "S3", "Z6", "D4", "Q8"])
def test_gset_suite(name):
    rep = verify_gsets(DiscreteGroup.named(name))
    assert rep.passed, rep.summary()


def test_reports_serialize():
    rep = verify_gsets(DiscreteGroup.named("S3"))
    doc = rep.to_json()
    assert json.loads(json.dumps(doc)) == doc
    assert doc["verdict"] == "pass"
    assert rep.summary().splitlines()[0] == "gsets [S3]: PASS"
    with pytest.raises(KeyError):
        rep["no-such-theorem"]


def test_site_laws_on_the_chain(chain2_site):
    rep = verify_site_laws(chain2_site)
    assert rep.passed, rep.summary()
    assert rep["stabilizes"].stats["stage_reached"] == 0


@pytest.mark.parametrize("seed", range(20))
def test_site_laws_on_random_sites(seed):
    site = random_site(random.Random(seed), max_base=8, max_covers=4)
    rep = verify_site_laws(site, mode=LITERAL)
    assert rep.passed, rep.summary()
