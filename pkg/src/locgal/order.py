"""Finite preorders, meet-semilattices, frames and the free inf-lattice.

Relations are stored as bit rows: ``up[i]`` has bit ``j`` set when
``i <= j``. Preorders need not be antisymmetric; lattice work always happens
on the poset reflection (one representative per isomorphism class).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import MismatchedBase, NotASemilattice, NotReflexive, NotTransitive


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Preorder:
    """A reflexive, transitive relation on ``elements``."""

    elements: tuple
    up: tuple[int, ...]

    def __len__(self):
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        rows = [0] * len(self.up)
        for i, row in enumerate(self.up):
            for j in bits(row):
                rows[j] |= 1 << i
        return tuple(rows)

    def pairs(self):
        return [(i, j) for i, row in enumerate(self.up) for j in bits(row)]

    def is_antisymmetric(self) -> bool:
        return all(self.up[i] & self.down[i] == 1 << i for i in range(len(self)))

    @cached_property
    def _reflection(self):
        class_of = [-1] * len(self)
        reps = []
        for i in range(len(self)):
            if class_of[i] >= 0:
                continue
            for j in bits(self.up[i] & self.down[i]):
                class_of[j] = len(reps)
            reps.append(i)
        up = []
        for r in reps:
            row = 0
            for j in bits(self.up[r]):
                row |= 1 << class_of[j]
            up.append(row)
        poset = Preorder(tuple(self.elements[r] for r in reps), tuple(up))
        return poset, tuple(class_of), tuple(reps)

    def reflection(self):
        """Poset reflection: ``(poset, class_of, representatives)``."""
        return self._reflection

    @classmethod
    def discrete(cls, elements: Sequence) -> "Preorder":
        return cls(tuple(elements), tuple(1 << i for i in range(len(elements))))

    @classmethod
    def chain(cls, elements: Sequence) -> "Preorder":
        n = len(elements)
        return cls(tuple(elements), tuple(((1 << n) - 1) ^ ((1 << i) - 1) for i in range(n)))

    @classmethod
    def from_function(cls, elements: Sequence, leq) -> "Preorder":
        """Build from a predicate; the predicate must already be a preorder."""
        n = len(elements)
        up = []
        for i in range(n):
            row = 0
            for j in range(n):
                if leq(elements[i], elements[j]):
                    row |= 1 << j
            up.append(row)
        return validate_preorder(elements, [(i, j) for i in range(n) for j in bits(up[i])])


def validate_preorder(elements: Sequence, pairs: Iterable, close_reflexive: bool = False) -> Preorder:
    """Check that ``pairs`` (index pairs ``(i, j)`` meaning ``i <= j``) is a preorder.

    Reflexive pairs may be omitted only when ``close_reflexive`` is set.
    Transitivity is never repaired; the first failing triple (in index order)
    is reported.
    """
    elements = tuple(elements)
    n = len(elements)
    up = [0] * n
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"pair ({i}, {j}) out of range for {n} elements")
        up[i] |= 1 << j
    for i in range(n):
        if not up[i] >> i & 1:
            if not close_reflexive:
                raise NotReflexive(elements[i])
            up[i] |= 1 << i
    for x in range(n):
        for y in bits(up[x]):
            missing = up[y] & ~up[x]
            if missing:
                z = bits(missing)[0]
                raise NotTransitive(elements[x], elements[y], elements[z])
    return Preorder(elements, tuple(up))


@dataclass(frozen=True)
class MeetSemilattice:
    """A finite poset with binary meets and a top element."""

    carrier: Preorder
    meet_table: tuple[tuple[int, ...], ...]
    top: int

    def __len__(self):
        return len(self.carrier)

    @property
    def labels(self):
        return self.carrier.elements

    def leq(self, i: int, j: int) -> bool:
        return self.carrier.leq(i, j)

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def meet_all(self, items: Iterable[int]) -> int:
        return reduce(self.meet, items, self.top)

    def down_mask(self, i: int) -> int:
        return self.carrier.down[i]

    def up_mask(self, i: int) -> int:
        return self.carrier.up[i]

    @classmethod
    def from_order(cls, order: Preorder) -> "MeetSemilattice":
        """Compute meets of a finite poset; non-antisymmetric input is reflected first."""
        if not order.is_antisymmetric():
            order = order.reflection()[0]
        n = len(order)
        down = order.down
        tops = [i for i in range(n) if order.up[i] == 1 << i and down[i] == (1 << n) - 1]
        if not tops:
            raise NotASemilattice("no greatest element")
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                lower = down[i] & down[j]
                glb = [k for k in bits(lower) if down[k] == lower]
                if not glb:
                    raise NotASemilattice(f"no meet of {order.elements[i]!r} and {order.elements[j]!r}",
                                          witness=(i, j))
                table[i][j] = table[j][i] = glb[0]
        return cls(order, tuple(tuple(r) for r in table), tops[0])

    def validate(self) -> None:
        """Check that the stored table really is the meet of the carrier."""
        ref = MeetSemilattice.from_order(self.carrier)
        if ref.meet_table != self.meet_table or ref.top != self.top:
            raise NotASemilattice("meet table disagrees with the order")


@dataclass(frozen=True)
class FiniteFrame:
    """A finite distributive lattice (every finite one is a frame)."""

    carrier: MeetSemilattice
    join_table: tuple[tuple[int, ...], ...]
    bottom: int

    def __len__(self):
        return len(self.carrier)

    def leq(self, i, j):
        return self.carrier.leq(i, j)

    def meet(self, i, j):
        return self.carrier.meet(i, j)

    def join(self, items: Iterable[int]) -> int:
        return reduce(lambda a, b: self.join_table[a][b], items, self.bottom)

    @classmethod
    def from_order(cls, order: Preorder) -> "FiniteFrame":
        lat = MeetSemilattice.from_order(order)
        n = len(lat)
        up = lat.carrier.up
        bottoms = [i for i in range(n) if up[i] == (1 << n) - 1]
        if not bottoms:
            raise NotASemilattice("no least element")
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                upper = up[i] & up[j]
                lub = [k for k in bits(upper) if up[k] == upper]
                table[i][j] = table[j][i] = lub[0]
        frame = cls(lat, tuple(tuple(r) for r in table), bottoms[0])
        bad = frame.distributivity_witness()
        if bad is not None:
            raise NotASemilattice("lattice is not distributive", witness=bad)
        return frame

    @classmethod
    def powerset(cls, n: int) -> "FiniteFrame":
        subsets = list(range(1 << n))
        order = Preorder(tuple(subsets), tuple(
            sum(1 << t for t in subsets if s & t == s) for s in subsets))
        meet = tuple(tuple(a & b for b in subsets) for a in subsets)
        join = tuple(tuple(a | b for b in subsets) for a in subsets)
        return cls(MeetSemilattice(order, meet, (1 << n) - 1), join, 0)

    def distributivity_witness(self):
        n = len(self)
        for u in range(n):
            for v in range(n):
                for w in range(v, n):
                    lhs = self.meet(u, self.join_table[v][w])
                    rhs = self.join_table[self.meet(u, v)][self.meet(u, w)]
                    if lhs != rhs:
                        return (u, v, w)
        return None


@dataclass(frozen=True)
class InfElement:
    """A finitely generated up-set ``[A]`` given by its antichain of generators.

    ``generators`` index the poset reflection of the base preorder, are sorted,
    and never contain two comparable elements.
    """

    base: Preorder = field(compare=False, repr=False)
    generators: tuple[int, ...]

    @classmethod
    def of(cls, base: Preorder, generators: Iterable[int]) -> "InfElement":
        gens = set(generators)
        keep = [g for g in gens if not any(h != g and base.leq(h, g) for h in gens)]
        return cls(base, tuple(sorted(keep)))

    def upset(self) -> int:
        out = 0
        for g in self.generators:
            out |= self.base.up[g]
        return out

    def __str__(self):
        return "[" + ", ".join(f"<{self.base.elements[g]}>" for g in self.generators) + "]"


def _same_base(a: InfElement, b: InfElement) -> None:
    if a.base is not b.base and a.base != b.base:
        raise MismatchedBase()


def leq_free(a: InfElement, b: InfElement) -> bool:
    """``[A] <= [B]``: every generator of B lies above some generator of A."""
    _same_base(a, b)
    return all(any(a.base.leq(x, y) for x in a.generators) for y in b.generators)


def meet_inf(a: InfElement, b: InfElement) -> InfElement:
    _same_base(a, b)
    return InfElement.of(a.base, a.generators + b.generators)


def antichains(poset: Preorder) -> list[tuple[int, ...]]:
    """All antichains of a poset, ordered by size then lexicographically."""
    n = len(poset)
    comparable = [poset.up[i] | poset.down[i] for i in range(n)]
    out = []

    def grow(start, chosen, blocked):
        out.append(tuple(chosen))
        for i in range(start, n):
            if not blocked >> i & 1:
                chosen.append(i)
                grow(i + 1, chosen, blocked | comparable[i])
                chosen.pop()

    grow(0, [], 0)
    out.sort(key=lambda a: (len(a), a))
    return out


@dataclass(frozen=True, eq=False)
class FreeInfLattice(MeetSemilattice):
    """The free inf-lattice on a finite preorder.

    Element ``k`` is the InfElement ``infs[k]``; index 0 is the top ``[]``.
    ``poset`` is the poset reflection of the input, ``class_of`` maps input
    indices to it.
    """

    poset: Preorder = None
    class_of: tuple[int, ...] = ()
    infs: tuple[InfElement, ...] = ()
    upsets: tuple[int, ...] = ()

    @cached_property
    def _index(self):
        return {u: k for k, u in enumerate(self.upsets)}

    def element(self, generators: Iterable[int]) -> int:
        """Index of the meet of the given poset-class generators."""
        up = 0
        for g in generators:
            up |= self.poset.up[g]
        return self._index[up]

    def element_of_input(self, items: Iterable[int]) -> int:
        """Index of the meet of the given input-preorder elements."""
        return self.element(self.class_of[i] for i in items)

    def index_of(self, a: InfElement) -> int:
        if a.base is not self.poset and a.base != self.poset:
            raise MismatchedBase()
        return self._index[a.upset()]

    def generator(self, cls: int) -> int:
        return self.element((cls,))


def free_inf_lattice(d: Preorder, render=None) -> FreeInfLattice:
    """All InfElements over ``d`` up to isomorphism; index 0 is the top ``[]``.

    ``render`` maps an InfElement to its label (default ``[<a>, <b>]``).
    """
    poset, class_of, _ = d.reflection()
    chains = antichains(poset)
    infs = tuple(InfElement(poset, a) for a in chains)
    upsets = tuple(a.upset() for a in infs)
    index = {u: k for k, u in enumerate(upsets)}
    n = len(infs)
    up_rows = []
    for i in range(n):
        row = 0
        ui = upsets[i]
        for j in range(n):
            if upsets[j] & ui == upsets[j]:
                row |= 1 << j
        up_rows.append(row)
    meet = tuple(tuple(index[upsets[i] | upsets[j]] for j in range(n)) for i in range(n))
    render = render or str
    carrier = Preorder(tuple(render(a) for a in infs), tuple(up_rows))
    return FreeInfLattice(carrier, meet, index[0], poset, class_of, infs, upsets)
