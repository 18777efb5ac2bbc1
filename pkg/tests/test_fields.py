from itertools import product

import pytest
from hypothesis import given, strategies as st

from locgal.fields import (GF, divisors, field_category, field_tower, is_field_hom, is_irreducible,
                           monic_polys, smallest_irreducible)
from locgal.verify import galois_correspondence, gen_finite_field_site, verify_classical

CASES = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2)]


def mobius(n):
    out, k, m = 1, 2, n
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            out = -out
        k += 1
    return -out if m > 1 else out


def gauss_count(p, n):
    """Number of monic irreducibles of degree n over F_p."""
    return sum(mobius(n // d) * p**d for d in divisors(n)) // n


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)])
def test_irreducible_count_matches_gauss(p, n):
    assert sum(is_irreducible(m, p) for m in monic_polys(p, n)) == gauss_count(p, n)


def test_modulus_choice():
    assert smallest_irreducible(2, 4) == [1, 1, 0, 0, 1]  # x^4 + x + 1
    assert smallest_irreducible(2, 3) == [1, 1, 0, 1]  # x^3 + x + 1
    assert smallest_irreducible(2, 2) == [1, 1, 1]
    assert smallest_irreducible(3, 2) == [1, 0, 1]  # x^2 + 1


def test_bad_parameters():
    with pytest.raises(ValueError):
        GF(4, 1)
    with pytest.raises(ValueError):
        GF(7, 7)


@pytest.mark.parametrize("p,n", CASES)
def test_log_tables_match_schoolbook(p, n):
    K = GF(p, n)
    for a, b in product(range(K.q), repeat=2):
        assert K.mul(a, b) == K.mul_poly(a, b)


@given(st.sampled_from([(2, 3), (2, 4), (3, 2)]), st.data())
def test_field_axioms(pn, data):
    K = GF(*pn)
    a, b, c = (data.draw(st.integers(0, K.q - 1)) for _ in range(3))
    assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
    assert K.add(a, K.neg(a)) == 0
    if a:
        assert any(K.mul(a, x) == 1 for x in range(K.q))
    assert K.frobenius(K.mul(a, b)) == K.mul(K.frobenius(a), K.frobenius(b))
    assert K.frobenius(K.add(a, b)) == K.add(K.frobenius(a), K.frobenius(b))


@pytest.mark.parametrize("p,n", CASES)
def test_tower(p, n):
    t = field_tower(p, n)
    assert t.degrees == divisors(n)
    for d in t.degrees:
        assert len(t.subfields[d]) == p**d
    assert len(t.automorphisms()) == n
    for (d, e), maps in t.embeddings.items():
        assert len(maps) == d
        for m in maps:
            assert is_field_hom(t.field, t.subfields[d], m)
            assert set(m) <= set(t.subfields[e])


@pytest.mark.parametrize("p,n", CASES)
def test_minimal_polynomials_vanish(p, n):
    K = GF(p, n)
    for a in range(K.q):
        mp = K.minimal_polynomial(a)
        assert K.poly_eval(mp, a) == 0
        assert all(c < p for c in mp)


def test_field_category_examples():
    C, A, tower = gen_finite_field_site(2, 4)
    C.validate()
    f4 = C.objects.index("GF(2^2)")
    assert len(C.hom(A, f4)) == 2
    assert len(C.automorphisms(A)) == 4
    C, A, _ = gen_finite_field_site(3, 2)
    assert len(C.objects) == 2 and len(C.automorphisms(A)) == 2
    C, A, _ = gen_finite_field_site(2, 1)
    assert len(C.objects) == 1 and len(C.automorphisms(A)) == 1


@pytest.mark.parametrize("p,n", CASES)
def test_field_suites(p, n):
    C, A, tower = gen_finite_field_site(p, n)
    assert verify_classical(C, A).passed
    assert galois_correspondence(tower).verdict


def test_category_composes_embeddings():
    tower = field_tower(2, 4)
    C, A = field_category(tower)
    # every composite of two embeddings is again an embedding of the list
    for (g, f), h in C.table.items():
        assert C.arrows[h].source == C.arrows[f].source
