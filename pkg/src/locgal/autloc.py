"""Sites for the locales of automorphisms of a finite set and of a set-valued functor.

The base of an automorphism site is the free inf-lattice on the doubly
pointed diagram ``D_dF``: elements ``(X, (x0, x1))`` with ``x0, x1`` in ``FX``,
where ``(X, p) <= (Y, q)`` when a single arrow ``X -> Y`` carries both
coordinates of ``p`` onto ``q``. A generator ``[(X,<x0|x1>)]`` stands for
the open set of automorphisms sending ``x0`` to ``x1`` at ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .category import FinCategory, SetFunctor
from .errors import CoverNotPreserved, NotAPoint
from .gset import Action, PresentedHandle
from .order import FreeInfLattice, Preorder, bits, free_inf_lattice
from .site import CoveringRelation, Point, SitePresentation, point_failure


@dataclass(frozen=True, eq=False)
class DiagramPoset:
    """Pointed (or doubly pointed) elements of a set-valued functor.

    ``witnesses[(i, j)]`` lists the arrows carrying element ``i`` to ``j``.
    """

    category: FinCategory
    functor: SetFunctor
    diagonal: bool
    elements: tuple
    order: Preorder
    witnesses: dict

    def __len__(self):
        return len(self.elements)

    def index(self, obj: int, point) -> int:
        return self._index[(obj, point)]

    @cached_property
    def _index(self):
        return {e: i for i, e in enumerate(self.elements)}

    def label(self, i: int) -> str:
        obj, p = self.elements[i]
        name = self.category.objects[obj]
        fib = self.functor.fibers[obj]
        if self.diagonal:
            return f"({name},<{fib[p[0]]}|{fib[p[1]]}>)"
        return f"({fib[p]},{name})"

    def multi_witness(self):
        """First pair with two or more carrying arrows (None when Gamma_F is a poset)."""
        for key in sorted(self.witnesses):
            if len(self.witnesses[key]) > 1:
                return key, self.witnesses[key]
        return None

    @property
    def gamma_is_poset(self) -> bool:
        return self.multi_witness() is None


def diagram_poset(C: FinCategory, F: SetFunctor, diagonal: bool = False) -> DiagramPoset:
    elements = []
    for x in range(len(C.objects)):
        n = F.fiber_size(x)
        if diagonal:
            elements.extend((x, (a, b)) for a in range(n) for b in range(n))
        else:
            elements.extend((x, a) for a in range(n))
    index = {e: i for i, e in enumerate(elements)}
    witnesses = {}
    for f, arrow in enumerate(C.arrows):
        m = F.maps[f]
        for i, (x, p) in enumerate(elements):
            if x != arrow.source:
                continue
            q = (m[p[0]], m[p[1]]) if diagonal else m[p]
            j = index[(arrow.target, q)]
            witnesses.setdefault((i, j), []).append(f)
    up = [0] * len(elements)
    for i, j in witnesses:
        up[i] |= 1 << j
    labels = tuple(elements)
    order = Preorder(labels, tuple(up))
    return DiagramPoset(C, F, diagonal, tuple(elements), order,
                        {k: tuple(v) for k, v in witnesses.items()})


@dataclass(frozen=True, eq=False)
class AutSite:
    """The automorphism site of a functor with its diagram and lattice."""

    site: SitePresentation
    lattice: FreeInfLattice
    diagram: DiagramPoset

    @property
    def category(self) -> FinCategory:
        return self.diagram.category

    @property
    def functor(self) -> SetFunctor:
        return self.diagram.functor

    @property
    def base(self) -> FreeInfLattice:
        return self.lattice

    def generator_class(self, obj: int, x0: int, x1: int) -> int:
        return self.lattice.class_of[self.diagram.index(obj, (x0, x1))]

    def gen(self, obj: int, x0: int, x1: int) -> int:
        """Base element ``[(X,<x0|x1>)]``."""
        return self.lattice.generator(self.generator_class(obj, x0, x1))

    def element(self, gens: Sequence[tuple[int, int, int]]) -> int:
        """Base element ``[(X1,<a1|b1>), ...]`` (the meet of the generators)."""
        return self.lattice.element(self.generator_class(*g) for g in gens)

    @cached_property
    def generators(self) -> tuple[tuple[int, int, int], ...]:
        """All ``(X, x0, x1)`` in diagram order."""
        return tuple((x, p[0], p[1]) for x, p in self.diagram.elements)

    def generator_elements(self) -> list[int]:
        return [self.lattice.generator(c) for c in range(len(self.lattice.poset))]

    def label(self, u: int) -> str:
        return self.lattice.labels[u]

    def class_rep(self, cls: int) -> tuple[int, int, int]:
        i = self.lattice.class_of.index(cls)
        return self.generators[i]

    @cached_property
    def diagonal_classes(self) -> int:
        """Mask of generator classes of the form ``(X, (x, x))``."""
        out = 0
        for i, (x, a, b) in enumerate(self.generators):
            if a == b:
                out |= 1 << self.lattice.class_of[i]
        return out


def _render(diagram: DiagramPoset):
    poset_labels = {}

    def render(inf) -> str:
        if not inf.generators:
            return "1"
        return "[" + ",".join(poset_labels[g] for g in inf.generators) + "]"

    return render, poset_labels


def laut_cover_pattern(n: int):
    """Basic covers of the automorphism site of an n-element set, on pairs ``(a, b)``.

    Yields ``(target, members)``; ``target`` is a list of generator pairs whose
    meet is covered, or None for the top.
    """
    for z in range(n):
        for a in range(n):
            for b in range(a + 1, n):
                yield [(z, a), (z, b)], []
                yield [(a, z), (b, z)], []
    for z in range(n):
        yield None, [(a, z) for a in range(n)]
        yield None, [(z, a) for a in range(n)]


def laut_site_of_functor(C: FinCategory, F: SetFunctor, name: str = "") -> AutSite:
    """Automorphism site: empty covers force functionality and injectivity,
    the two surjectivity-type families cover the top."""
    diagram = diagram_poset(C, F, diagonal=True)
    render, poset_labels = _render(diagram)
    _, class_of, reps = diagram.order.reflection()
    for cls, r in enumerate(reps):
        poset_labels[cls] = diagram.label(r)
    lattice = free_inf_lattice(diagram.order, render)
    aut = AutSite(None, lattice, diagram)
    covers = []
    for x in range(len(C.objects)):
        for target, members in laut_cover_pattern(F.fiber_size(x)):
            t = lattice.top if target is None else aut.element([(x, a, b) for a, b in target])
            covers.append((t, [aut.gen(x, a, b) for a, b in members]))
    site = SitePresentation.build(lattice, covers, name or "lAut(F)")
    return AutSite(site, lattice, diagram)


def one_object_category(name: str = "X") -> FinCategory:
    return FinCategory.from_keys((name,), [(0, 0, "id")], lambda g, f: "id", lambda x: "id",
                                 name=lambda s, t, k: f"id_{name}")


def set_functor(points: Sequence) -> SetFunctor:
    C = one_object_category()
    return SetFunctor(C, (tuple(points),), (tuple(range(len(points))),))


def laut_site_of_set(points) -> AutSite:
    """Automorphism site of a finite set (an int ``k`` means ``0..k-1``)."""
    if isinstance(points, int):
        points = tuple(str(i) for i in range(points))
    F = set_functor(points)
    return laut_site_of_functor(F.category, F, name=f"lAut({len(points)})")


# ---------------------------------------------------------------------------
# content


def content_mask(aut: AutSite, u: int) -> int:
    """Generator classes below ``u``, as a mask over classes."""
    poset = aut.lattice.poset
    out = (1 << len(poset)) - 1
    for g in aut.lattice.infs[u].generators:
        out &= poset.down[g]
    return out


def content(aut: AutSite, u: int) -> set[tuple[int, int, int]]:
    """All generators ``(X, x0, x1)`` with ``[g] <= u``."""
    classes = content_mask(aut, u)
    return {g for i, g in enumerate(aut.generators) if classes >> aut.lattice.class_of[i] & 1}


def content_by_search(aut: AutSite, u: int) -> set[tuple[int, int, int]]:
    """Content through explicit arrow search: one object M, one pair (m0, m1)
    and for each generator of ``u`` an arrow carrying (m0, m1) onto it."""
    C, F = aut.category, aut.functor
    targets = [aut.class_rep(g) for g in aut.lattice.infs[u].generators]
    out = set()
    for m, m0, m1 in aut.generators:
        ok = True
        for (x, a, b) in targets:
            if not any(F.maps[f][m0] == a and F.maps[f][m1] == b for f in C.hom(m, x)):
                ok = False
                break
        if ok:
            out.add((m, m0, m1))
    return out


# ---------------------------------------------------------------------------
# group structure data


@dataclass(frozen=True)
class FormalJoin:
    """A finite formal supremum of product-site elements ``(left, right)``."""

    terms: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def indices(self, right_size: int) -> list[int]:
        """Positions in the product site (left-major)."""
        return [a * right_size + b for a, b in self.terms]


def mul_star(aut: AutSite, obj: int, x0: int, x1: int) -> FormalJoin:
    """``[(X,<x0|x1>)] -> join over z of [(X,<x0|z>)] (x) [(X,<z|x1>)]``."""
    n = aut.functor.fiber_size(obj)
    return FormalJoin(tuple((aut.gen(obj, x0, z), aut.gen(obj, z, x1)) for z in range(n)))


def double_expansions(aut: AutSite, obj: int, x0: int, x1: int):
    """The two ways of expanding the multiplication twice, as sets of triples."""
    n = aut.functor.fiber_size(obj)
    g = aut.gen
    left = set()
    for z in range(n):
        for w in range(n):  # expand the left factor [x0|z]
            left.add((g(obj, x0, w), g(obj, w, z), g(obj, z, x1)))
    right = set()
    for z in range(n):
        for w in range(n):  # expand the right factor [z|x1]
            right.add((g(obj, x0, z), g(obj, z, w), g(obj, w, x1)))
    return left, right


def neutral_point(aut: AutSite) -> Point:
    """The identity automorphism: ``u`` is in the point iff all its generators are diagonal."""
    diag = aut.diagonal_classes
    mask = 0
    for u, inf in enumerate(aut.lattice.infs):
        if all(diag >> g & 1 for g in inf.generators):
            mask |= 1 << u
    reason = point_failure(aut.site, mask)
    if reason is not None:
        raise NotAPoint(reason[0], witness=reason[1])
    return Point(mask, aut.lattice.meet_all(bits(mask)))


def evaluate_at_point(point: Point, u: int) -> bool:
    return u in point


def apply_neutral(join: FormalJoin, point: Point, side: str = "right") -> list[int]:
    """Collapse one factor of each term along a point; keep the other where it evaluates to 1."""
    if side == "right":
        return [a for a, b in join if b in point]
    return [b for a, b in join if a in point]


def lfix(aut: AutSite, obj: int, x: int) -> int:
    return aut.gen(obj, x, x)


def generator_swap(aut: AutSite, u: int) -> int:
    """Experimental involution ``[(X,<a|b>)] -> [(X,<b|a>)]``, extended to meets."""
    gens = [aut.class_rep(c) for c in aut.lattice.infs[u].generators]
    return aut.element([(x, b, a) for x, a, b in gens])


def fiber_embedding(aut: AutSite, obj: int, set_site: AutSite) -> list[int]:
    """The map sending each base element of ``lAut(FX)`` to the lAut(F) element it names."""
    out = []
    for inf in set_site.lattice.infs:
        gens = [set_site.class_rep(c) for c in inf.generators]
        out.append(aut.element([(obj, a, b) for _, a, b in gens]))
    return out


def _pairs_label(points, pairs) -> str:
    if pairs is None:
        return "1"
    return "[" + ",".join(f"<{points[a]}|{points[b]}>" for a, b in pairs) + "]"


def action_on_fiber(aut: AutSite, obj: int, relation: CoveringRelation) -> Action:
    """``lAut(F)`` acting on ``FX``: ``mu(x0, x1) = [(X,<x0|x1>)]``.

    Checked to send every basic cover of ``lAut(FX)`` to a cover.
    """
    points = aut.functor.fibers[obj]
    for target, members in laut_cover_pattern(len(points)):
        t = aut.lattice.top if target is None else aut.element([(obj, a, b) for a, b in target])
        if not relation.refines(t, [aut.gen(obj, a, b) for a, b in members]):
            raise CoverNotPreserved((_pairs_label(points, target), _pairs_label(points, members)))
    n = len(points)
    mu = {(a, b): aut.gen(obj, a, b) for a in range(n) for b in range(n)}
    return Action(PresentedHandle(relation), tuple(points), mu)
