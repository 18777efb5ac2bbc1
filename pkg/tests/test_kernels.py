import pytest
from hypothesis import given, strategies as st

from locgal import _kernels_py as py
from locgal import kernels

masks = st.integers(0, 2**20 - 1)
# sparse masks up to 200 bits, so subset relations actually occur across words
wide = st.sets(st.integers(0, 199), max_size=6).map(lambda s: sum(1 << i for i in s))
any_width = st.one_of(masks, wide)

needs_compiled = pytest.mark.skipif(not kernels.compiled_available(), reason="extension not built")


def test_fallback_is_selected_when_forced():
    with kernels.forced_python():
        assert kernels.active_backend() == "python"
    assert kernels.for_width(2**21) is py


@needs_compiled
def test_compiled_backend_is_default():
    assert kernels.active_backend(64) == "cython"
    assert kernels.active_backend(3000) == "cython"


def test_python_kernels_small_cases():
    assert py.pull(0b101, [2, 1, 0]) == 0b101
    assert py.pull(0b011, [3, 3, 0]) == 0b1000
    assert py.union_product([1, 2], [4]) == [5, 6]
    assert py.union_product([1, 2], [4, 8], limit=1) is None
    assert py.minimize([3, 1, 7, 6]) == [1, 6]
    assert py.unions_upto([1, 2, 4], 2) == [1, 2, 3, 4, 5, 6]
    assert py.unions_upto([], 3) == []


@needs_compiled
@given(masks, st.lists(st.integers(0, 19), min_size=20, max_size=20))
def test_pull_agrees(mask, row):
    c = kernels.for_width(20)
    assert c.pull(mask, row) == py.pull(mask, row)


@needs_compiled
@given(st.lists(masks, max_size=12), st.lists(masks, max_size=12), st.integers(-1, 50))
def test_union_product_agrees(left, right, limit):
    c = kernels.for_width(20)
    assert c.union_product(left, right, limit) == py.union_product(left, right, limit)
    assert c.union_product_min(left, right) == py.union_product_min(left, right)


@needs_compiled
@given(st.lists(masks, max_size=20))
def test_minimize_agrees(ms):
    c = kernels.for_width(20)
    assert c.minimize(ms) == py.minimize(ms)
    kept = py.minimize(ms)
    # every input dominates a kept mask, and kept masks are pairwise incomparable
    assert all(any(k & m == k for k in kept) for m in ms)
    assert all(a == b or a & b != a for a in kept for b in kept)


@needs_compiled
@given(st.lists(st.integers(0, 255), max_size=6), st.integers(1, 4))
def test_unions_upto_agrees(ms, k):
    c = kernels.for_width(8)
    assert c.unions_upto(ms, k) == py.unions_upto(ms, k)


@needs_compiled
@given(st.lists(any_width, max_size=12), st.lists(any_width, max_size=12), st.integers(-1, 50))
def test_multiword_union_product_agrees(left, right, limit):
    c = kernels.for_width(200)
    assert c.union_product(left, right, limit) == py.union_product(left, right, limit)
    assert c.union_product_min(left, right) == py.union_product_min(left, right)


@needs_compiled
@given(st.lists(any_width, max_size=20), st.integers(1, 3))
def test_multiword_minimize_and_unions_agree(ms, k):
    c = kernels.for_width(200)
    assert c.minimize(ms) == py.minimize(ms)
    assert c.unions_upto(ms[:6], k) == py.unions_upto(ms[:6], k)


@needs_compiled
@given(wide, st.lists(st.integers(0, 199), min_size=200, max_size=200))
def test_multiword_pull_agrees(mask, row):
    assert kernels.for_width(200).pull(mask, row) == py.pull(mask, row)


def test_saturation_is_backend_independent():
    from locgal.autloc import laut_site_of_set
    from locgal.site import saturate

    site = laut_site_of_set(2).site
    with kernels.forced_python():
        slow = saturate(site).to_json()
    assert saturate(site).to_json() == slow


def test_wide_saturation_is_backend_independent():
    from locgal.autloc import laut_site_of_functor
    from locgal.gset import DiscreteGroup, tbg_category
    from locgal.site import MINIMAL, saturate

    tgs = tbg_category(DiscreteGroup.named("Z2xZ2"))
    site = laut_site_of_functor(tgs.category, tgs.functor).site
    assert len(site.base) > 64
    with kernels.forced_python():
        slow = saturate(site, mode=MINIMAL).to_json()
    assert saturate(site, mode=MINIMAL).to_json() == slow
