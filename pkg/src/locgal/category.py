"""Finite categories and set-valued functors on them.

Arrows are dense integers. ``compose(g, f)`` is ``g o f`` (``f`` first) and is
only defined when ``target(f) == source(g)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Hashable, Sequence

from .errors import CategoryLawError, FunctorLawError


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple
    arrows: tuple[Arrow, ...]
    table: dict  # (g, f) -> g o f
    identities: tuple[int, ...]

    @cached_property
    def _homs(self):
        homs = {(x, y): [] for x in range(len(self.objects)) for y in range(len(self.objects))}
        for i, a in enumerate(self.arrows):
            homs[(a.source, a.target)].append(i)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self._homs[(x, y)]

    def src(self, f: int) -> int:
        return self.arrows[f].source

    def tgt(self, f: int) -> int:
        return self.arrows[f].target

    def compose(self, g: int, f: int) -> int:
        return self.table[(g, f)]

    def is_iso(self, f: int) -> bool:
        a = self.arrows[f]
        return any(self.compose(g, f) == self.identities[a.source]
                   and self.compose(f, g) == self.identities[a.target]
                   for g in self.hom(a.target, a.source))

    def automorphisms(self, x: int) -> tuple[int, ...]:
        return tuple(f for f in self.hom(x, x) if self.is_iso(f))

    def object_index(self, name) -> int:
        return self.objects.index(name)

    def validate(self) -> None:
        """Raise CategoryLawError on the first failing law."""
        n = len(self.objects)
        if len(self.identities) != n:
            raise CategoryLawError("identities", len(self.identities))
        for x, i in enumerate(self.identities):
            a = self.arrows[i]
            if a.source != x or a.target != x:
                raise CategoryLawError("identity endpoints", (x, a.name))
        out_of = {}
        for i, a in enumerate(self.arrows):
            out_of.setdefault(a.source, []).append(i)
        for f, fd in enumerate(self.arrows):
            for g in out_of.get(fd.target, ()):
                h = self.table.get((g, f))
                if h is None:
                    raise CategoryLawError("composition defined", (self.arrows[g].name, fd.name))
                hd = self.arrows[h]
                if hd.source != fd.source or hd.target != self.arrows[g].target:
                    raise CategoryLawError("composite endpoints", (self.arrows[g].name, fd.name))
            if (self.table[(f, self.identities[fd.source])] != f
                    or self.table[(self.identities[fd.target], f)] != f):
                raise CategoryLawError("identity", fd.name)
        for f, fd in enumerate(self.arrows):
            for g in out_of.get(fd.target, ()):
                gf = self.table[(g, f)]
                for h in out_of.get(self.arrows[g].target, ()):
                    if self.table[(h, gf)] != self.table[(self.table[(h, g)], f)]:
                        raise CategoryLawError("associativity",
                                               (self.arrows[h].name, self.arrows[g].name, fd.name))

    @classmethod
    def from_keys(cls, objects: Sequence, arrows: Sequence[tuple[int, int, Hashable]],
                  compose_key: Callable[[Hashable, Hashable], Hashable],
                  identity_key: Callable[[int], Hashable],
                  name: Callable[[int, int, Hashable], str] | None = None) -> "FinCategory":
        """Category of arrows ``(source, target, key)``, composed through keys.

        ``compose_key(gk, fk)`` gives the key of ``g o f``. Arrows are
        identified by (source, target, key); a composite missing from the list
        is a closure failure.
        """
        arrows = list(arrows)
        index = {(s, t, k): i for i, (s, t, k) in enumerate(arrows)}
        if len(index) != len(arrows):
            raise CategoryLawError("distinct arrows", "duplicate (source, target, key)")
        name = name or (lambda s, t, k: f"{objects[s]}->{objects[t]}#{k}")
        arrow_objs = tuple(Arrow(name(s, t, k), s, t) for s, t, k in arrows)
        by_source = {}
        for i, (s, _, _) in enumerate(arrows):
            by_source.setdefault(s, []).append(i)
        table = {}
        for f, (fs, ft, fk) in enumerate(arrows):
            for g in by_source.get(ft, ()):
                _, gt, gk = arrows[g]
                key = (fs, gt, compose_key(gk, fk))
                if key not in index:
                    raise CategoryLawError("closure under composition", (arrow_objs[g].name, arrow_objs[f].name))
                table[(g, f)] = index[key]
        idents = []
        for x in range(len(objects)):
            key = (x, x, identity_key(x))
            if key not in index:
                raise CategoryLawError("identity present", objects[x])
            idents.append(index[key])
        return cls(tuple(objects), arrow_objs, table, tuple(idents))

    @classmethod
    def from_table(cls, objects: Sequence, arrows: Sequence[tuple[str, int, int]],
                   compose: dict, identities: Sequence[int], validate: bool = True) -> "FinCategory":
        cat = cls(tuple(objects), tuple(Arrow(n, s, t) for n, s, t in arrows),
                  dict(compose), tuple(identities))
        if validate:
            cat.validate()
        return cat


@dataclass(frozen=True, eq=False)
class SetFunctor:
    """``fibers[X]`` are the labels of FX; ``maps[f][i]`` is the index of F(f)(i)."""

    category: FinCategory
    fibers: tuple[tuple, ...]
    maps: tuple[tuple[int, ...], ...]

    def fiber_size(self, x: int) -> int:
        return len(self.fibers[x])

    def apply(self, f: int, i: int) -> int:
        return self.maps[f][i]

    def validate(self) -> None:
        C = self.category
        if len(self.fibers) != len(C.objects):
            raise FunctorLawError("fiber per object", len(self.fibers))
        if len(self.maps) != len(C.arrows):
            raise FunctorLawError("map per arrow", len(self.maps))
        for f, a in enumerate(C.arrows):
            m = self.maps[f]
            if len(m) != len(self.fibers[a.source]) or any(
                    not 0 <= v < len(self.fibers[a.target]) for v in m):
                raise FunctorLawError("map shape", a.name)
        for x, i in enumerate(C.identities):
            if self.maps[i] != tuple(range(len(self.fibers[x]))):
                raise FunctorLawError("identity", C.objects[x])
        for (g, f), h in C.table.items():
            mf, mg = self.maps[f], self.maps[g]
            if tuple(mg[v] for v in mf) != self.maps[h]:
                raise FunctorLawError("composition", (C.arrows[g].name, C.arrows[f].name))

    def is_faithful(self) -> bool:
        C = self.category
        for x in range(len(C.objects)):
            for y in range(len(C.objects)):
                images = [self.maps[f] for f in C.hom(x, y)]
                if len(set(images)) != len(images):
                    return False
        return True

    def reflects_isos(self) -> bool:
        C = self.category
        for f, a in enumerate(C.arrows):
            m = self.maps[f]
            bij = len(self.fibers[a.source]) == len(self.fibers[a.target]) and len(set(m)) == len(m)
            if bij and not C.is_iso(f):
                return False
        return True


def representable_functor(C: FinCategory, a: int) -> SetFunctor:
    """``hom(a, -)``: the fiber at X lists arrows a -> X, and f acts by postcomposition."""
    fibers = tuple(C.hom(a, x) for x in range(len(C.objects)))
    position = [{arr: i for i, arr in enumerate(fib)} for fib in fibers]
    maps = []
    for f, fd in enumerate(C.arrows):
        maps.append(tuple(position[fd.target][C.compose(f, x)] for x in fibers[fd.source]))
    return SetFunctor(C, tuple(tuple(C.arrows[x].name for x in fib) for fib in fibers), tuple(maps))


# ---------------------------------------------------------------------------
# strict epimorphisms


def kernel_pairs(C: FinCategory, f: int):
    """Pairs (a, b) of arrows into the source of f with f a = f b, grouped by domain."""
    x = C.src(f)
    out = []
    for w in range(len(C.objects)):
        for a, b in product(C.hom(w, x), repeat=2):
            if C.compose(f, a) == C.compose(f, b):
                out.append((a, b))
    return out


@dataclass(frozen=True)
class StrictEpiResult:
    strict: bool
    witness: tuple | None = None  # (g, factorizations found)

    def __bool__(self):
        return self.strict


def strict_epi(C: FinCategory, f: int) -> StrictEpiResult:
    """Every g coequalizing Ker f factors uniquely as g = h o f."""
    x, y = C.src(f), C.tgt(f)
    ker = kernel_pairs(C, f)
    for z in range(len(C.objects)):
        for g in C.hom(x, z):
            if any(C.compose(g, a) != C.compose(g, b) for a, b in ker):
                continue
            hs = tuple(h for h in C.hom(y, z) if C.compose(h, f) == g)
            if len(hs) != 1:
                return StrictEpiResult(False, (C.arrows[g].name, tuple(C.arrows[h].name for h in hs)))
    return StrictEpiResult(True)


def is_strict_epi(C: FinCategory, f: int) -> bool:
    return strict_epi(C, f).strict


def is_effective(C: FinCategory, f: int) -> bool:
    """Whether the kernel category of f has a terminal object.

    Objects of the kernel are pairs (a, b): W -> X with f a = f b; an arrow
    (a, b) -> (a', b') is u with a' u = a and b' u = b.
    """
    ker = kernel_pairs(C, f)

    def arrows_between(p, q):
        (a, b), (a2, b2) = p, q
        w, w2 = C.src(a), C.src(a2)
        return [u for u in C.hom(w, w2) if C.compose(a2, u) == a and C.compose(b2, u) == b]

    return any(all(len(arrows_between(p, t)) == 1 for p in ker) for t in ker)


def category_of_poset(labels: Sequence, leq: Callable[[int, int], bool]) -> FinCategory:
    n = len(labels)
    arrows = [(i, j, 0) for i in range(n) for j in range(n) if leq(i, j)]
    return FinCategory.from_keys(labels, arrows, lambda g, f: 0, lambda x: 0,
                                 name=lambda s, t, k: f"{labels[s]}<={labels[t]}")
