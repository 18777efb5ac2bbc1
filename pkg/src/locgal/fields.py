"""Finite fields GF(p^n), their subfields, embeddings and the dual category.

Elements are ints whose base-p digits are the polynomial coefficients (lowest
degree first). Multiplication goes through discrete log tables built from a
primitive element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .category import FinCategory
from .errors import NoIrreducibleFound

MAX_ORDER = 7**6


def _digits(a: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(a % p)
        a //= p
    return out


def _from_digits(ds, p: int) -> int:
    out = 0
    for c in reversed(ds):
        out = out * p + c
    return out


def poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by the monic ``m`` (coefficient lists, lowest first)."""
    a = [c % p for c in a]
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def monic_polys(p: int, d: int):
    """Monic polynomials of degree ``d`` in increasing order of their integer code."""
    for code in range(p**d):
        yield _digits(code, p, d) + [1]


def is_irreducible(m: list[int], p: int) -> bool:
    n = len(m) - 1
    for d in range(1, n // 2 + 1):
        for q in monic_polys(p, d):
            if not poly_mod(m, q, p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> list[int]:
    """Least monic irreducible of degree ``n``, ordered by coefficients from the top down."""
    for m in monic_polys(p, n):
        if n == 1 or is_irreducible(m, p):
            return m
    raise NoIrreducibleFound(p, n)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1))


class GF:
    """The field with ``p**n`` elements."""

    def __init__(self, p: int, n: int, max_order: int = MAX_ORDER):
        if not _is_prime(p) or n < 1:
            raise ValueError(f"need a prime p and n >= 1, got p={p}, n={n}")
        if p**n > max_order:
            raise ValueError(f"field of order {p**n} exceeds the budget {max_order}")
        self.p, self.n, self.q = p, n, p**n
        self.modulus = tuple(smallest_irreducible(p, n))
        self._build_logs()

    def add(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        return _from_digits([(x + y) % p for x, y in zip(_digits(a, p, n), _digits(b, p, n))], p)

    def neg(self, a: int) -> int:
        p, n = self.p, self.n
        return _from_digits([(-x) % p for x in _digits(a, p, n)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul_poly(self, a: int, b: int) -> int:
        """Schoolbook product modulo the modulus (used to build the log tables)."""
        p, n = self.p, self.n
        da, db = _digits(a, p, n), _digits(b, p, n)
        prod = [0] * (2 * n)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        r = poly_mod(prod, list(self.modulus), p)
        return _from_digits(r + [0] * (n - len(r)), p)

    def _build_logs(self):
        q = self.q
        for g in range(1, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self.mul_poly(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                self.primitive = g
                self.exp = exp
                self.log = {v: k for k, v in enumerate(exp)}
                return
        raise AssertionError("no primitive element")  # cannot happen in a field

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def frobenius(self, a: int, i: int = 1) -> int:
        return self.power(a, self.p**i)

    def elements(self) -> range:
        return range(self.q)

    def subfield(self, d: int) -> tuple[int, ...]:
        """``{a | a^(p^d) = a}``, sorted."""
        if self.n % d:
            raise ValueError(f"{d} does not divide {self.n}")
        return tuple(a for a in range(self.q) if self.frobenius(a, d) == a)

    def poly_eval(self, coeffs, x: int) -> int:
        """Horner evaluation of a polynomial with field-element coefficients (lowest first)."""
        out = 0
        for c in reversed(coeffs):
            out = self.add(self.mul(out, x), c)
        return out

    def minimal_polynomial(self, a: int) -> tuple[int, ...]:
        """Product of ``(x - a^(p^i))`` over the distinct conjugates; coefficients lie in F_p."""
        conj = []
        c = a
        while c not in conj:
            conj.append(c)
            c = self.frobenius(c)
        poly = [1]
        for r in conj:
            nr = self.neg(r)
            new = [0] * (len(poly) + 1)
            for i, v in enumerate(poly):
                new[i + 1] = self.add(new[i + 1], v)
                new[i] = self.add(new[i], self.mul(v, nr))
            poly = new
        return tuple(poly)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True, eq=False)
class FiniteFieldTower:
    """Subfields ``K_d`` (``d | n``) of GF(p^n) and all embeddings between them.

    ``embeddings[(d, e)]`` lists each embedding ``K_d -> K_e`` as the tuple of
    images of ``subfields[d]`` in order.
    """

    field: GF
    subfields: dict
    embeddings: dict

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def modulus(self) -> tuple[int, ...]:
        return self.field.modulus

    @property
    def degrees(self) -> list[int]:
        return sorted(self.subfields)

    def automorphisms(self) -> list[tuple[int, ...]]:
        return self.embeddings[(self.n, self.n)]

    @cached_property
    def _positions(self):
        return {d: {a: i for i, a in enumerate(els)} for d, els in self.subfields.items()}

    def position(self, d: int, a: int) -> int:
        return self._positions[d][a]


def _subfield_generator(K: GF, elems: tuple[int, ...]) -> int:
    """An element whose powers exhaust the nonzero part of the subfield."""
    size = len(elems) - 1
    for a in elems:
        if a and len({K.power(a, k) for k in range(size)}) == size:
            return a
    return 1  # the prime field of order 2 has the single nonzero element 1


def field_tower(p: int, n: int) -> FiniteFieldTower:
    K = GF(p, n)
    subs = {d: K.subfield(d) for d in divisors(n)}
    embeddings = {}
    for d in subs:
        gen = _subfield_generator(K, subs[d])
        minpoly = K.minimal_polynomial(gen)
        for e in subs:
            if e % d:
                continue
            roots = [b for b in subs[e] if K.poly_eval(minpoly, b) == 0]
            maps = []
            for beta in roots:
                image = {0: 0}
                for k in range(len(subs[d]) - 1):
                    image[K.power(gen, k)] = K.power(beta, k)
                maps.append(tuple(image[a] for a in subs[d]))
            embeddings[(d, e)] = sorted(set(maps))
    return FiniteFieldTower(K, subs, embeddings)


def is_field_hom(K: GF, src: tuple[int, ...], images: tuple[int, ...]) -> bool:
    m = dict(zip(src, images))
    if m.get(1) != 1 or len(set(images)) != len(images):
        return False
    for a, b in product(src, repeat=2):
        if m[K.add(a, b)] != K.add(m[a], m[b]) or m[K.mul(a, b)] != K.mul(m[a], m[b]):
            return False
    return True


def field_category(tower: FiniteFieldTower) -> tuple[FinCategory, int]:
    """The dual of the subfield lattice with all embeddings; returns ``(C, A)``.

    An embedding ``K_d -> K_e`` is an arrow ``K_e -> K_d`` of C; A is the top field.
    """
    degrees = tower.degrees
    obj = {d: i for i, d in enumerate(degrees)}
    arrows = []
    for (d, e), maps in sorted(tower.embeddings.items()):
        for phi in maps:
            arrows.append((obj[e], obj[d], phi))

    def compose(gk, fk):
        # g: K_d -> K_c in C is psi: K_c -> K_d; f: K_e -> K_d is phi: K_d -> K_e
        deg_d = _degree_of(len(fk), tower)
        return tuple(fk[tower.position(deg_d, v)] for v in gk)

    names = [f"GF({tower.p}^{d})" for d in degrees]
    C = FinCategory.from_keys(names, arrows, compose,
                              lambda x: tower.subfields[degrees[x]],
                              name=lambda s, t, k: f"{names[s]}->{names[t]}#{tower.embeddings[(degrees[t], degrees[s])].index(k)}")
    return C, obj[tower.n]


def _degree_of(size: int, tower: FiniteFieldTower) -> int:
    for d, els in tower.subfields.items():
        if len(els) == size:
            return d
    raise KeyError(size)
