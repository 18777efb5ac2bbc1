"""Finite groups, their actions on finite sets, and transitive G-sets.

Groups act on the left. ``mu(x, y)`` is the transporter: for a discrete group
the bit mask of ``{g | g x = y}``; for a presented localic group an element of
the site base (or ``ZERO``), compared through the saturated cover relation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Callable, Sequence

from .category import FinCategory, SetFunctor
from .errors import GroupLawError, GroupMismatch, InputError, LawViolation, NotAnAction
from .order import bits

# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True, eq=False)
class DiscreteGroup:
    """Multiplication table ``table[g][h] = g h``; element 0 is the unit."""

    name: str
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        self.validate()

    def __len__(self):
        return len(self.labels)

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def unit(self) -> int:
        return 0

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        return tuple(next(h for h in range(len(self)) if self.table[g][h] == 0) for g in range(len(self)))

    @property
    def full(self) -> int:
        return (1 << len(self)) - 1

    def validate(self) -> None:
        n = len(self.labels)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise GroupLawError("table shape", n)
        for g in range(n):
            if self.table[0][g] != g or self.table[g][0] != g:
                raise GroupLawError("unit", self.labels[g])
            if sorted(self.table[g]) != list(range(n)):
                raise GroupLawError("latin square", self.labels[g])
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GroupLawError("associativity", (self.labels[a], self.labels[b], self.labels[c]))

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(len(self)) for b in range(a))

    def closure(self, gens: int) -> int:
        """Subgroup (bit mask) generated by the mask ``gens``."""
        sub = 1 | gens
        frontier = bits(sub)
        while frontier:
            new = []
            for a in frontier:
                for b in bits(sub):
                    for c in (self.table[a][b], self.table[b][a]):
                        if not sub >> c & 1:
                            sub |= 1 << c
                            new.append(c)
            frontier = new
        return sub

    @cached_property
    def subgroups(self) -> tuple[int, ...]:
        """All subgroups as masks, sorted by (order, mask)."""
        found = {1}
        frontier = [1]
        while frontier:
            new = []
            for s in frontier:
                for g in range(len(self)):
                    if not s >> g & 1:
                        t = self.closure(s | 1 << g)
                        if t not in found:
                            found.add(t)
                            new.append(t)
            frontier = new
        return tuple(sorted(found, key=lambda m: (bin(m).count("1"), m)))

    def conjugate(self, h: int, g: int) -> int:
        """``g H g^-1`` as a mask."""
        gi = self.inverse[g]
        out = 0
        for x in bits(h):
            out |= 1 << self.table[self.table[g][x]][gi]
        return out

    @cached_property
    def subgroup_classes(self) -> tuple[int, ...]:
        """One representative per conjugacy class of subgroups (the first in subgroup order)."""
        reps, seen = [], set()
        for h in self.subgroups:
            if h in seen:
                continue
            reps.append(h)
            seen.update(self.conjugate(h, g) for g in range(len(self)))
        return tuple(reps)

    def left_cosets(self, h: int) -> tuple[int, ...]:
        """Left cosets ``gH`` as masks, ordered by least element."""
        out, seen = [], 0
        for g in range(len(self)):
            if seen >> g & 1:
                continue
            c = 0
            for x in bits(h):
                c |= 1 << self.table[g][x]
            seen |= c
            out.append(c)
        return tuple(out)

    def subgroup_label(self, h: int) -> str:
        return "{" + ",".join(self.labels[g] for g in bits(h)) + "}"

    # constructors -----------------------------------------------------------

    @classmethod
    def from_elements(cls, name: str, elements: Sequence, mul: Callable, unit) -> "DiscreteGroup":
        elements = list(elements)
        elements.remove(unit)
        elements.insert(0, unit)
        index = {e: i for i, e in enumerate(elements)}
        table = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
        return cls(name, tuple(_label(e) for e in elements), table)

    @classmethod
    def trivial(cls) -> "DiscreteGroup":
        return cls("1", ("e",), ((0,),))

    @classmethod
    def cyclic(cls, n: int) -> "DiscreteGroup":
        return cls(f"Z{n}", tuple(str(i) for i in range(n)),
                   tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))

    @classmethod
    def direct_product(cls, a: "DiscreteGroup", b: "DiscreteGroup", name: str | None = None) -> "DiscreteGroup":
        nb = len(b)
        def inner(s):
            return s[1:-1] if s.startswith("(") else s
        labels = tuple(f"({inner(x)},{y})" for x in a.labels for y in b.labels)
        table = tuple(
            tuple(a.table[i][k] * nb + b.table[j][l] for k in range(len(a)) for l in range(nb))
            for i in range(len(a)) for j in range(nb))
        return cls(name or f"{a.name}x{b.name}", labels, table)

    @classmethod
    def symmetric(cls, n: int) -> "DiscreteGroup":
        perms = list(permutations(range(n)))
        return cls.from_elements(f"S{n}", perms, lambda g, h: tuple(g[h[i]] for i in range(n)),
                                 tuple(range(n)))

    @classmethod
    def dihedral(cls, n: int) -> "DiscreteGroup":
        """Symmetries of an n-gon, order 2n; elements ``(k, s)`` mean ``r^k s^s``."""
        def mul(x, y):
            (a, s), (b, t) = x, y
            return ((a + (-b if s else b)) % n, s ^ t)
        elems = [(k, s) for s in (0, 1) for k in range(n)]
        return cls.from_elements(f"D{n}", elems, mul, (0, 0))

    @classmethod
    def quaternion(cls) -> "DiscreteGroup":
        # units 1,i,j,k as 0..3 with sign; unit products follow i^2 = j^2 = k^2 = ijk = -1
        unit_mul = {
            (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
        }

        def mul(x, y):
            s, u = unit_mul[(x[1], y[1])]
            return (x[0] * y[0] * s, u)
        names = "1ijk"
        elems = [(s, u) for s in (1, -1) for u in range(4)]
        g = cls.from_elements("Q8", elems, mul, (1, 0))
        labels = tuple(("" if s == 1 else "-") + names[u] for s, u in elems)
        return cls("Q8", labels, g.table)

    @classmethod
    def named(cls, name: str) -> "DiscreteGroup":
        key = name.replace("/", "").replace(" ", "").replace("×", "x").upper()
        simple = {"1": cls.trivial, "TRIVIAL": cls.trivial, "E": cls.trivial,
                  "Q8": cls.quaternion}
        if key in simple:
            return simple[key]()
        m = re.fullmatch(r"([SDZ])(\d+)", key)
        if m and "X" not in key:
            kind, n = m.group(1), int(m.group(2))
            if kind == "Z" and n >= 1:
                return cls.trivial() if n == 1 else cls.cyclic(n)
            if kind == "S" and 1 <= n <= 5:
                return cls.symmetric(n)
            if kind == "D" and n >= 3:
                return cls.dihedral(n)
        parts = key.split("X")
        if len(parts) > 1 and all(re.fullmatch(r"Z\d+", p) for p in parts):
            g = cls.cyclic(int(parts[0][1:]))
            for p in parts[1:]:
                g = cls.direct_product(g, cls.cyclic(int(p[1:])))
            return cls(name, g.labels, g.table)
        raise InputError(f"unknown group name {name!r}", where="group")


def _label(e) -> str:
    if isinstance(e, tuple):
        return "".join(map(str, e)) if all(isinstance(v, int) and 0 <= v < 10 for v in e) else str(e)
    return str(e)


def groups_up_to_order(n: int = 8) -> list[DiscreteGroup]:
    """One group per isomorphism class of order at most ``n`` (``n <= 8``)."""
    if n > 8:
        raise ValueError("only orders up to 8 are tabulated")
    names = ["1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z4xZ2", "Z2xZ2xZ2", "D4", "Q8"]
    return [g for g in map(DiscreteGroup.named, names) if len(g) <= n]


def isomorphism(a: DiscreteGroup, b: DiscreteGroup) -> tuple[int, ...] | None:
    """An isomorphism ``a -> b`` as an image table, or ``None``; brute force over generator images."""
    if len(a) != len(b):
        return None
    gens, sub = [], 1
    for g in sorted(range(len(a)), key=lambda g: -a.element_order(g)):
        if not sub >> g & 1:
            gens.append(g)
            sub = a.closure(sub | 1 << g)
    for images in product(range(len(b)), repeat=len(gens)):
        if any(a.element_order(g) != b.element_order(i) for g, i in zip(gens, images)):
            continue
        phi = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            new = []
            for x in frontier:
                for g, i in zip(gens, images):
                    y, v = a.table[x][g], b.table[phi[x]][i]
                    if y in phi:
                        if phi[y] != v:
                            ok = False
                            break
                    else:
                        phi[y] = v
                        new.append(y)
                if not ok:
                    break
            frontier = new
        if not ok or len(set(phi.values())) != len(a):
            continue
        if all(phi[a.table[x][y]] == b.table[phi[x]][phi[y]] for x in range(len(a)) for y in range(len(a))):
            return tuple(phi[x] for x in range(len(a)))
    return None


# ---------------------------------------------------------------------------
# group handles


ZERO = None  # the formal empty join in a presented group


class DiscreteHandle:
    """Frame of all subsets of a discrete group, elements as bit masks."""

    def __init__(self, group: DiscreteGroup):
        self.group = group
        self.top = group.full
        self.zero = 0

    def is_zero(self, u) -> bool:
        return u == 0

    def leq(self, u, v) -> bool:
        return u & ~v == 0

    def meet(self, u, v):
        return u & v

    def __eq__(self, other):
        return isinstance(other, DiscreteHandle) and other.group is self.group

    def __hash__(self):
        return id(self.group)


class PresentedHandle:
    """A localic group known through a saturated site; joins stay formal."""

    def __init__(self, relation):
        self.relation = relation
        base = relation.site.base
        self.top = base.top
        self.zero = ZERO

    def is_zero(self, u) -> bool:
        return u is ZERO or self.relation.is_zero(u)

    def leq(self, u, v) -> bool:
        if u is ZERO:
            return True
        if v is ZERO:
            return self.relation.is_zero(u)
        return self.relation.sheaf_leq(u, v)

    def meet(self, u, v):
        if u is ZERO or v is ZERO:
            return ZERO
        return self.relation.site.base.meet(u, v)

    def __eq__(self, other):
        return isinstance(other, PresentedHandle) and other.relation is self.relation

    def __hash__(self):
        return id(self.relation)


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True, eq=False)
class Action:
    handle: object
    points: tuple
    mu: dict  # (x, y) -> frame element
    act: tuple | None = field(default=None, repr=False)  # act[g][x] for discrete groups

    def __len__(self):
        return len(self.points)

    def transporter(self, x: int, y: int):
        return self.mu[(x, y)]

    def lfix(self, x: int):
        return self.mu[(x, x)]


def action_from_table(group: DiscreteGroup, points: Sequence, act: Sequence[Sequence[int]]) -> Action:
    """Action with ``act[g][x] = g x``; checked to be a group action."""
    n = len(points)
    act = tuple(tuple(r) for r in act)
    if len(act) != len(group) or any(len(r) != n or any(not 0 <= v < n for v in r) for r in act):
        raise NotAnAction("table shape")
    if act[0] != tuple(range(n)):
        raise NotAnAction(("unit", next(x for x in range(n) if act[0][x] != x)))
    for g, h in product(range(len(group)), repeat=2):
        gh = group.mul(g, h)
        for x in range(n):
            if act[gh][x] != act[g][act[h][x]]:
                raise NotAnAction(("compatibility", group.labels[g], group.labels[h], points[x]))
    mu = {}
    for x in range(n):
        for y in range(n):
            m = 0
            for g in range(len(group)):
                if act[g][x] == y:
                    m |= 1 << g
            mu[(x, y)] = m
    return Action(DiscreteHandle(group), tuple(points), mu, act)


def regular_action(group: DiscreteGroup) -> Action:
    return action_from_table(group, group.labels, group.table)


def trivial_action(group: DiscreteGroup, points: Sequence) -> Action:
    return action_from_table(group, points, [list(range(len(points)))] * len(group))


def coset_action(group: DiscreteGroup, h: int) -> Action:
    cosets = group.left_cosets(h)
    where = {}
    for i, c in enumerate(cosets):
        for g in bits(c):
            where[g] = i
    reps = [bits(c)[0] for c in cosets]
    act = [[where[group.mul(g, reps[i])] for i in range(len(cosets))] for g in range(len(group))]
    labels = [group.labels[r] + ("" if h == 1 else "H") for r in reps]
    return action_from_table(group, labels, act)


def is_transitive(a: Action) -> bool:
    return all(not a.handle.is_zero(m) for m in a.mu.values())


def components(a: Action) -> list[list[int]]:
    """Classes of ``x ~ y`` iff ``mu(x, y)`` is not zero, in order of least member."""
    n = len(a)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(n):
        for y in range(n):
            if x != y and not a.handle.is_zero(a.mu[(x, y)]):
                parent[find(y)] = find(x)
    groups = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def is_equivalence_witness(a: Action):
    """The first failing relation law for ``mu != 0``, or ``None``."""
    n = len(a)
    nz = [[not a.handle.is_zero(a.mu[(x, y)]) for y in range(n)] for x in range(n)]
    for x in range(n):
        if not nz[x][x]:
            return "reflexive", x
        for y in range(n):
            if nz[x][y] and not nz[y][x]:
                return "symmetric", (x, y)
            for z in range(n):
                if nz[x][y] and nz[y][z] and not nz[x][z]:
                    return "transitive", (x, y, z)
    return None


def restrict(a: Action, subset: Sequence[int]) -> Action:
    subset = list(subset)
    mu = {(i, j): a.mu[(x, y)] for i, x in enumerate(subset) for j, y in enumerate(subset)}
    act = None
    if a.act is not None:
        pos = {x: i for i, x in enumerate(subset)}
        act = tuple(tuple(pos[row[x]] for x in subset) for row in a.act)
    return Action(a.handle, tuple(a.points[x] for x in subset), mu, act)


def is_morphism(a: Action, b: Action, f: Sequence[int]) -> bool:
    """``mu_a(x, y) <= mu_b(f x, f y)`` for all x, y."""
    h = a.handle
    return all(h.leq(a.mu[(x, y)], b.mu[(f[x], f[y])]) for x in range(len(a)) for y in range(len(a)))


def hom_from_basepoint(a: Action, x0: int, b: Action, y0: int) -> tuple[int, ...] | None:
    """The unique morphism ``a -> b`` sending ``x0`` to ``y0``, if one exists.

    ``a`` must be transitive. Each ``x`` can only go to a ``y`` with
    ``mu_a(x0, x) <= mu_b(y0, y)``; by injectivity of transporters there is at
    most one such ``y``. The candidate is then checked on all pairs.
    """
    if a.handle != b.handle:
        raise GroupMismatch()
    h = a.handle
    image = []
    for x in range(len(a)):
        cands = [y for y in range(len(b)) if h.leq(a.mu[(x0, x)], b.mu[(y0, y)])]
        if len(cands) != 1:
            return None
        image.append(cands[0])
    if image[x0] != y0 or not is_morphism(a, b, image):
        return None
    return tuple(image)


def stabilizer_contained(a: Action, x0: int, b: Action, y0: int) -> bool:
    return a.handle.leq(a.lfix(x0), b.lfix(y0))


def is_surjective(f: Sequence[int], size: int) -> bool:
    return len(set(f)) == size


def product_action(a: Action, b: Action) -> Action:
    if a.handle != b.handle:
        raise GroupMismatch()
    pts = [(x, y) for x in range(len(a)) for y in range(len(b))]
    mu = {(i, j): a.handle.meet(a.mu[(p[0], q[0])], b.mu[(p[1], q[1])])
          for i, p in enumerate(pts) for j, q in enumerate(pts)}
    act = None
    if a.act is not None and b.act is not None:
        nb = len(b)
        act = tuple(tuple(ra[x] * nb + rb[y] for x, y in pts) for ra, rb in zip(a.act, b.act))
    return Action(a.handle, tuple((a.points[x], b.points[y]) for x, y in pts), mu, act)


def coproduct_action(a: Action, b: Action) -> Action:
    if a.handle != b.handle:
        raise GroupMismatch()
    na, nb = len(a), len(b)
    zero = a.handle.zero
    mu = {}
    for i in range(na + nb):
        for j in range(na + nb):
            if i < na and j < na:
                mu[(i, j)] = a.mu[(i, j)]
            elif i >= na and j >= na:
                mu[(i, j)] = b.mu[(i - na, j - na)]
            else:
                mu[(i, j)] = zero
    act = None
    if a.act is not None and b.act is not None:
        act = tuple(ra + tuple(v + na for v in rb) for ra, rb in zip(a.act, b.act))
    pts = tuple(("L", p) for p in a.points) + tuple(("R", p) for p in b.points)
    return Action(a.handle, pts, mu, act)


def one_point(group: DiscreteGroup) -> Action:
    return trivial_action(group, ["*"])


# ---------------------------------------------------------------------------
# the category of transitive G-sets


@dataclass(frozen=True, eq=False)
class TransitiveGSets:
    group: DiscreteGroup
    subgroups: tuple[int, ...]  # one per object
    actions: tuple[Action, ...]
    category: FinCategory
    functor: SetFunctor

    @property
    def regular(self) -> int:
        return 0


def equivariant_maps(a: Action, b: Action) -> list[tuple[int, ...]]:
    """All G-maps ``a -> b`` for a transitive discrete ``a``, by basepoint image."""
    if not len(a):
        return [()]
    out = []
    for y in range(len(b)):
        f = hom_from_basepoint(a, 0, b, y)
        if f is not None:
            out.append(f)
    return out


def tbg_category(group: DiscreteGroup, size_bound: int | None = None) -> TransitiveGSets:
    """Skeleton of nonempty transitive G-sets: one coset space per subgroup class.

    Objects run from the regular G-set to the point; arrows are all G-maps,
    keyed by their underlying function. ``size_bound`` caps the number of
    objects as a guard.
    """
    reps = group.subgroup_classes
    if size_bound is not None and len(reps) > size_bound:
        raise LawViolation("size bound", (len(reps), size_bound))
    actions = tuple(coset_action(group, h) for h in reps)
    names = []
    for h in reps:
        if h == 1:
            names.append("R")
        elif h == group.full:
            names.append("P")
        else:
            names.append("G/" + group.subgroup_label(h))
    arrows = []
    for s, a in enumerate(actions):
        for t, b in enumerate(actions):
            for f in equivariant_maps(a, b):
                arrows.append((s, t, f))

    def compose(g, f):
        return tuple(g[v] for v in f)

    def arrow_name(s, t, f):
        return f"{names[s]}->{names[t]}:" + ",".join(actions[t].points[v] for v in f)

    cat = FinCategory.from_keys(names, arrows, compose,
                                lambda x: tuple(range(len(actions[x]))), name=arrow_name)
    functor = SetFunctor(cat, tuple(a.points for a in actions), tuple(f for _, _, f in arrows))
    return TransitiveGSets(group, reps, actions, cat, functor)


def transporter_image(tgs: TransitiveGSets, aut, u: int) -> int:
    """The subset of G named by a base element of the automorphism site."""
    out = tgs.group.full
    for c in aut.lattice.infs[u].generators:
        x, a, b = aut.class_rep(c)
        out &= tgs.actions[x].mu[(a, b)]
    return out


def g_to_laut(tgs: TransitiveGSets, aut) -> dict:
    """Check ``[(X,<x0|x1>)] -> mu_X(x0, x1)`` presents a morphism ``G -> lAut(F)``.

    Checks monotonicity on the base, that basic covers go to covers of
    subsets, the multiplication law ``{(g, h) | h g in mu(x, y)} =
    U_z mu(x, z) x mu(z, y)`` and the unit law. Raises LawViolation on the
    first failure; returns counts of the checks made.
    """
    G = tgs.group
    base = aut.lattice
    image = [transporter_image(tgs, aut, u) for u in range(len(base))]
    for u in range(len(base)):
        for v in bits(base.up_mask(u)):
            if image[u] & ~image[v]:
                raise LawViolation("monotone", (base.labels[u], base.labels[v]))
    for c in aut.site.covers:
        union = 0
        for m in c.members:
            union |= image[m]
        if image[c.target] & ~union:
            raise LawViolation("covers", (base.labels[c.target], [base.labels[m] for m in c.members]))
    n_mul = 0
    for x, a, b in aut.generators:
        act = tgs.actions[x]
        lhs = {(g, h) for g in range(len(G)) for h in range(len(G)) if act.mu[(a, b)] >> G.mul(h, g) & 1}
        rhs = set()
        for z in range(len(act)):
            rhs.update((g, h) for g in bits(act.mu[(a, z)]) for h in bits(act.mu[(z, b)]))
        if lhs != rhs:
            raise LawViolation("multiplication", aut.diagram.label(aut.diagram.index(x, (a, b))))
        if bool(act.mu[(a, b)] & 1) != (a == b):
            raise LawViolation("unit", aut.diagram.label(aut.diagram.index(x, (a, b))))
        n_mul += 1
    return {"base_elements": len(base), "covers": len(aut.site.covers), "generators": n_mul}
