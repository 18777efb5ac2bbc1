"""Sites on finite meet-semilattices and the pretopologies they generate.

A cover family is a set of base elements below a target, encoded as a bit
mask. The generated pretopology is computed by the staged recursion

    Cov_0 = Iso + basic covers,   Cov_1 = pi(Cov_0),   Cov_{n+1} = Cov_n o Cov_1

until a stage repeats. Pullback along ``a <= B`` is the meet with ``a``.

Families are stored as member *sets*, but the one-step pullbacks in ``Cov_1``
keep member multiplicities: when two indices of a pulled-back family land on
the same element, a composite may refine the two copies by different covers.
Dropping that information makes some stages fail to be pullback-stable.

Two storage modes exist. ``literal`` keeps every generated family and is what
the stage-law checks inspect. ``minimal`` keeps only the subset-minimal
families at each target; every query here (sheaf order, zero-ness, point
splitting, the content and fullness theorems) is monotone in the family, so
the answers coincide while the storage stays small.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from . import kernels
from .errors import InvalidSite, NotAPoint, SaturationBudgetExceeded, SearchBudgetExceeded
from .order import MeetSemilattice, Preorder, bits, popcount

DEFAULT_MAX_FAMILIES = 10**6
DEFAULT_MAX_STAGE = 32
DEFAULT_POINT_BUDGET = 10**6

LITERAL = "literal"
MINIMAL = "minimal"


class CoverFamily(NamedTuple):
    target: int
    members: frozenset


@dataclass(frozen=True)
class BasicCover:
    target: int
    members: tuple[int, ...]

    def mask(self) -> int:
        out = 0
        for m in self.members:
            out |= 1 << m
        return out


@dataclass(frozen=True)
class SitePresentation:
    """A meet-semilattice with a list of basic cover families."""

    base: MeetSemilattice
    covers: tuple[BasicCover, ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.base)
        for c in self.covers:
            if not 0 <= c.target < n:
                raise InvalidSite(f"cover target {c.target} out of range", witness=c)
            for m in c.members:
                if not 0 <= m < n or not self.base.leq(m, c.target):
                    raise InvalidSite(f"member {m} is not below target {c.target}", witness=c)

    @classmethod
    def build(cls, base: MeetSemilattice, covers: Iterable, name: str = "") -> "SitePresentation":
        """Site from ``(target, members)`` pairs; exact duplicates are dropped, order kept."""
        seen = set()
        out = []
        for target, members in covers:
            c = BasicCover(int(target), tuple(sorted(int(m) for m in members)))
            if c not in seen:
                seen.add(c)
                out.append(c)
        return cls(base, tuple(out), name)

    def __len__(self):
        return len(self.base)

    def covers_at(self, u: int) -> list[BasicCover]:
        return [c for c in self.covers if c.target == u]


# ---------------------------------------------------------------------------
# one-step operations


def _multiset_key(members: Iterable[int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(members).items()))


def _key_mask(key) -> int:
    out = 0
    for m, _ in key:
        out |= 1 << m
    return out


def _indexed_pullbacks(site: SitePresentation, families: Mapping[int, Iterable]) -> dict[int, set]:
    """Pull back indexed families (member sequences) along every ``a <= target``."""
    base = site.base
    out = {u: set() for u in range(len(base))}
    for target, fams in families.items():
        fams = list(fams)
        for a in bits(base.down_mask(target)):
            row = base.meet_table[a]
            for fam in fams:
                out[a].add(_multiset_key(row[x] for x in fam))
    return out


def pi_step(cov: Mapping[int, Iterable], site: SitePresentation) -> dict[int, set]:
    """All pullbacks of the given families along arrows into their targets.

    ``cov`` maps a target to an iterable of families (member sequences).
    The result maps each element ``a`` to a set of sorted member tuples;
    members hit by several indices repeat, matching indexed families.
    """
    keyed = _indexed_pullbacks(site, cov)
    return {a: {tuple(m for m, k in key for _ in range(k)) for key in keys} for a, keys in keyed.items()}


def compose_step(outer: Mapping[int, Iterable], inner: Mapping[int, Iterable],
                 site: SitePresentation) -> dict[int, set]:
    """Composite ``outer o inner``.

    For each family in ``inner`` and each choice, per index, of a family in
    ``outer`` on that member, emit the union of the chosen families. A member
    repeated ``k`` times in an inner family is refined independently ``k`` times.
    """
    outer_masks = {u: sorted({_members_mask(f) for f in fams}) for u, fams in outer.items()}
    n = len(site.base)
    for u in range(n):
        outer_masks.setdefault(u, [])
    keyed = {u: {_multiset_key(f) for f in fams} for u, fams in inner.items()}
    res = _compose(outer_masks, keyed, n, LITERAL, kernels.for_width(n), limit=-1)
    return {u: {tuple(bits(m)) for m in masks} for u, masks in res.items()}


def _members_mask(members) -> int:
    out = 0
    for m in members:
        out |= 1 << m
    return out


def _compose(outer, inner_keyed, n, mode, K, limit, order="forward"):
    shuffle = random.Random(order).shuffle if isinstance(order, int) else None
    targets = list(range(n))
    if shuffle:
        shuffle(targets)
    elif order == "reverse":
        targets.reverse()
    result = {}
    total = 0
    for u in targets:
        acc = set()
        fams = sorted(inner_keyed.get(u, ()))
        if shuffle:
            shuffle(fams)
        elif order == "reverse":
            fams.reverse()
        for fam in fams:
            partial = [0]
            for member, mult in fam:
                opts = outer[member]
                if mult > 1 and mode == LITERAL:
                    opts = K.unions_upto(opts, mult)
                if mode == LITERAL:
                    partial = K.union_product(partial, opts, limit)
                    if partial is None:
                        raise SaturationBudgetExceeded(limit, "families", reached=total)
                else:
                    partial = K.union_product_min(partial, opts)
                if not partial:
                    break
            acc.update(partial)
        masks = sorted(acc) if mode == LITERAL else K.minimize(acc)
        result[u] = masks
        total += len(masks)
        if 0 <= limit < total:
            raise SaturationBudgetExceeded(limit, "families", reached=total)
    return {u: result[u] for u in range(n)}


# ---------------------------------------------------------------------------
# saturation


@dataclass(frozen=True, eq=False)
class CoveringRelation:
    """Saturated covers per target, with every intermediate stage kept.

    ``families[u]`` is the sorted tuple of member masks covering ``u``;
    ``stages[r][u]`` is the same for stage ``r``. ``stage_reached`` is the
    first stage equal to the final one.
    """

    site: SitePresentation
    mode: str
    families: tuple[tuple[int, ...], ...]
    stages: tuple[tuple[tuple[int, ...], ...], ...]
    stage_reached: int
    cov1_keys: tuple[tuple, ...] = field(repr=False, default=())

    def __len__(self):
        return sum(len(f) for f in self.families)

    @property
    def family_count(self) -> int:
        return len(self)

    def families_of(self, u: int) -> list[frozenset]:
        return [frozenset(bits(m)) for m in self.families[u]]

    def all_families(self):
        for u, masks in enumerate(self.families):
            for m in masks:
                yield CoverFamily(u, frozenset(bits(m)))

    @cached_property
    def _first_stage(self):
        first = {}
        for r, stage in enumerate(self.stages):
            for u, masks in enumerate(stage):
                for m in masks:
                    first.setdefault((u, m), r)
        return first

    def first_stage(self, u: int, members) -> int | None:
        return self._first_stage.get((u, _members_mask(members)))

    def contains(self, u: int, members) -> bool:
        """Literal membership of a family (as a set)."""
        mask = _members_mask(members)
        if self.mode == LITERAL:
            return mask in self._family_sets[u]
        return any(f & mask == f for f in self.families[u]) and mask in self._family_sets[u]

    @cached_property
    def _family_sets(self):
        return tuple(frozenset(f) for f in self.families)

    def refines(self, u: int, members) -> bool:
        """Some generated family at ``u`` has every member below a given member.

        This is "the sieve generated by ``members`` covers ``u``".
        """
        allowed = 0
        for m in members:
            allowed |= self.site.base.down_mask(m)
        return any(f & ~allowed == 0 for f in self.families[u])

    def sheaf_leq(self, u: int, v: int) -> bool:
        """``#u <= #v``: some generated cover of ``u`` lies entirely below ``v``."""
        allowed = self.site.base.down_mask(v)
        return any(f & ~allowed == 0 for f in self.families[u])

    def is_zero(self, u: int) -> bool:
        """The empty family covers ``u``."""
        fams = self.families[u]
        return bool(fams) and fams[0] == 0

    def witness_cover(self, u: int, v: int):
        allowed = self.site.base.down_mask(v)
        for f in self.families[u]:
            if f & ~allowed == 0:
                return frozenset(bits(f))
        return None

    def to_json(self) -> dict:
        labels = self.site.base.labels
        covers = []
        for u, masks in enumerate(self.families):
            for m in masks:
                covers.append({"target": u, "members": bits(m), "stage": self._first_stage[(u, m)]})
        return {
            "kind": "covering-relation",
            "mode": self.mode,
            "stage_reached": self.stage_reached,
            "stages_computed": len(self.stages) - 1,
            "family_count": len(self),
            "elements": [str(x) for x in labels],
            "covers": covers,
        }


def _stage0(site: SitePresentation):
    n = len(site.base)
    indexed = {u: [(u,)] for u in range(n)}
    for c in site.covers:
        indexed[c.target].append(c.members)
    return indexed


def saturate(site: SitePresentation, mode: str = LITERAL, max_families: int = DEFAULT_MAX_FAMILIES,
             max_stage: int = DEFAULT_MAX_STAGE, order: str = "forward") -> CoveringRelation:
    """Generate the pretopology of ``site`` by the staged recursion.

    ``order`` ("forward", "reverse", or an int seeding a random permutation of
    targets and families) only changes the traversal schedule; the result is
    identical either way.
    """
    if mode not in (LITERAL, MINIMAL):
        raise ValueError(f"unknown mode {mode!r}")
    n = len(site.base)
    K = kernels.for_width(n)
    limit = max_families

    indexed0 = _stage0(site)
    stage0 = []
    for u in range(n):
        masks = sorted({_members_mask(f) for f in indexed0[u]})
        stage0.append(tuple(masks if mode == LITERAL else K.minimize(masks)))

    keyed1 = _indexed_pullbacks(site, indexed0)
    stage1 = []
    for u in range(n):
        masks = sorted({_key_mask(k) for k in keyed1[u]})
        stage1.append(tuple(masks if mode == LITERAL else K.minimize(masks)))
    if sum(map(len, stage1)) > limit:
        raise SaturationBudgetExceeded(limit, "families", reached=sum(map(len, stage1)))
    if mode == MINIMAL:
        # a multiset family is redundant when its support already dominates
        keep = [set(stage1[u]) for u in range(n)]
        keyed1 = {u: {k for k in keys if _key_mask(k) in keep[u]} for u, keys in keyed1.items()}

    stages = [tuple(stage0), tuple(stage1)]
    current = stages[1]
    while True:
        if len(stages) - 1 >= max_stage:
            raise SaturationBudgetExceeded(max_stage, "stage", reached=len(stages) - 1)
        outer = {u: list(current[u]) for u in range(n)}
        nxt = _compose(outer, keyed1, n, mode, K, limit, order)
        nxt = tuple(tuple(nxt[u]) for u in range(n))
        if nxt == current:
            break
        stages.append(nxt)
        current = nxt

    final = stages[-1]
    reached = next(r for r, s in enumerate(stages) if s == final)
    cov1_keys = tuple(tuple(sorted(keyed1[u])) for u in range(n))
    return CoveringRelation(site, mode, final, tuple(stages), reached, cov1_keys)


# ---------------------------------------------------------------------------
# stage laws


def stage_monotonicity_witness(rel: CoveringRelation):
    """First ``(nu, rho, u, family)`` with a stage-nu family missing at stage rho."""
    for nu in range(len(rel.stages) - 1):
        for rho in range(nu + 1, len(rel.stages)):
            for u in range(len(rel.site.base)):
                later = set(rel.stages[rho][u])
                for m in rel.stages[nu][u]:
                    if m not in later:
                        return nu, rho, u, frozenset(bits(m))
    return None


def covering_system_witness(stage, site: SitePresentation):
    """Why ``stage`` (per-target masks) fails to contain Iso or be pullback-stable."""
    base = site.base
    n = len(base)
    sets = [set(s) for s in stage]
    for u in range(n):
        if 1 << u not in sets[u]:
            return "iso", u, frozenset([u])
    K = kernels.for_width(n)
    for target in range(n):
        for a in bits(base.down_mask(target)):
            row = base.meet_table[a]
            for m in stage[target]:
                p = K.pull(m, row)
                if p not in sets[a]:
                    return "pullback", (target, a), frozenset(bits(m))
    return None


def stage(rel: CoveringRelation, r: int):
    """Stage ``r``; stages past stabilization equal the final one."""
    return rel.stages[min(r, len(rel.stages) - 1)]


def _stage_composite(rel: CoveringRelation, rho: int, nu: int):
    n = len(rel.site.base)
    outer = {u: list(stage(rel, rho)[u]) for u in range(n)}
    if nu == 1:
        inner = {u: set(rel.cov1_keys[u]) for u in range(n)}
    elif nu == 0:
        inner = {u: {_multiset_key(f) for f in fams} for u, fams in _stage0(rel.site).items()}
    else:
        inner = {u: {tuple((m, 1) for m in bits(f)) for f in stage(rel, nu)[u]} for u in range(n)}
    return _compose(outer, inner, n, rel.mode, kernels.for_width(n), -1)


def composition_check(rel: CoveringRelation, rho: int, nu: int):
    """``(witness, equal)`` for ``Cov_rho o Cov_nu`` against ``Cov_{rho+nu}``.

    ``witness`` is a composite family missing from the stage (None when the
    inclusion holds); ``equal`` records whether the two coincide. For
    ``nu == 1`` the inner families carry their multiplicities; for other
    stages only member sets are stored, so each member is refined once (a
    necessary part of the statement).
    """
    comp = _stage_composite(rel, rho, nu)
    target = stage(rel, rho + nu)
    for u in range(len(rel.site.base)):
        have = set(target[u])
        for m in comp[u]:
            if m not in have:
                return (u, frozenset(bits(m))), False
    return None, all(tuple(comp[u]) == tuple(target[u]) for u in comp)


def composition_bound_witness(rel: CoveringRelation, rho: int, nu: int):
    """A family of ``Cov_rho o Cov_nu`` outside ``Cov_{rho+nu}``, or None."""
    return composition_check(rel, rho, nu)[0]


def composition_equality(rel: CoveringRelation, rho: int, nu: int) -> bool:
    """Whether the composite equals stage ``rho+nu`` (recorded, not asserted)."""
    return composition_check(rel, rho, nu)[1]


# ---------------------------------------------------------------------------
# sieves


@dataclass(frozen=True)
class Sieve:
    target: int
    members: int  # mask, downward closed inside the down-set of target

    @classmethod
    def generated(cls, site: SitePresentation, target: int, members: Iterable[int]) -> "Sieve":
        mask = 0
        for m in members:
            mask |= site.base.down_mask(m)
        return cls(target, mask & site.base.down_mask(target))

    def is_valid(self, site: SitePresentation) -> bool:
        base = site.base
        if self.members & ~base.down_mask(self.target):
            return False
        return all(base.down_mask(w) & ~self.members == 0 for w in bits(self.members))


def _downsets_within(base: MeetSemilattice, universe: int) -> list[int]:
    """Every down-closed subset of ``universe`` (itself down-closed)."""
    elems = bits(universe)
    comparable = {i: (base.up_mask(i) | base.down_mask(i)) for i in elems}
    out = []

    def grow(k, closure, blocked):
        out.append(closure)
        for idx in range(k, len(elems)):
            i = elems[idx]
            if not blocked >> i & 1:
                grow(idx + 1, closure | base.down_mask(i), blocked | comparable[i])

    grow(0, 0, 0)
    return sorted(set(out))


class SieveClosure:
    """Least Grothendieck topology (as covering sieves) containing the basic covers.

    Computed by a least fixpoint over the finite lattice of sieves, closing
    under maximal sieves, pullback and local character. Independent of the
    staged family recursion; used to cross-check it.
    """

    def __init__(self, site: SitePresentation, max_sieves: int = 200_000):
        self.site = site
        base = site.base
        n = len(base)
        self.sieves = [_downsets_within(base, base.down_mask(u)) for u in range(n)]
        if sum(map(len, self.sieves)) > max_sieves:
            raise SaturationBudgetExceeded(max_sieves, "sieves")
        J = [{base.down_mask(u)} for u in range(n)]
        for c in site.covers:
            J[c.target].add(Sieve.generated(site, c.target, c.members).members)
        changed = True
        while changed:
            changed = False
            for u in range(n):
                for s in list(J[u]):
                    for a in bits(base.down_mask(u)):
                        p = s & base.down_mask(a)
                        if p not in J[a]:
                            J[a].add(p)
                            changed = True
            for u in range(n):
                for r in self.sieves[u]:
                    if r in J[u]:
                        continue
                    for s in J[u]:
                        if all(r & base.down_mask(w) in J[w] for w in bits(s)):
                            J[u].add(r)
                            changed = True
                            break
        self.J = tuple(frozenset(j) for j in J)

    def covers(self, u: int, sieve_mask: int) -> bool:
        return sieve_mask in self.J[u]


def sieve_covers(u: int, s: Sieve, site: SitePresentation, closure: SieveClosure | None = None) -> bool:
    if s.target != u:
        raise InvalidSite("sieve target differs from the queried element", witness=(u, s.target))
    closure = closure or SieveClosure(site)
    return closure.covers(u, s.members)


# ---------------------------------------------------------------------------
# sheaf order


def covering_system(site: SitePresentation) -> tuple[tuple[int, ...], ...]:
    """Pullbacks of the basic covers and identities (stage one, as sets)."""
    n = len(site.base)
    keyed = _indexed_pullbacks(site, _stage0(site))
    return tuple(tuple(sorted({_key_mask(k) for k in keyed[u]})) for u in range(n))


def sheafify(site: SitePresentation, seed: int, system=None) -> int:
    """Least 2-valued sheaf containing the down-closure of the mask ``seed``.

    Only pullbacks of basic covers are consulted (no composition), so this is
    a second, independent route to the sheaf order.
    """
    base = site.base
    system = system if system is not None else covering_system(site)
    t = 0
    for i in bits(seed):
        t |= base.down_mask(i)
    changed = True
    while changed:
        changed = False
        for u in range(len(base)):
            if t >> u & 1:
                continue
            if any(f & ~t == 0 for f in system[u]):
                t |= base.down_mask(u)
                changed = True
    return t


def sheaf_leq(u: int, v: int, site_or_rel) -> bool:
    """``#u <= #v`` in the sheaf locale."""
    return _relation(site_or_rel).sheaf_leq(u, v)


def is_zero(u: int, site_or_rel) -> bool:
    return _relation(site_or_rel).is_zero(u)


def _relation(site_or_rel) -> CoveringRelation:
    if isinstance(site_or_rel, CoveringRelation):
        return site_or_rel
    return saturate(site_or_rel, mode=MINIMAL)


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class Point:
    """A cover-splitting filter, given as a mask over the base."""

    members: int
    least: int

    def __contains__(self, i: int) -> bool:
        return bool(self.members >> i & 1)

    def elements(self) -> list[int]:
        return bits(self.members)


def point_failure(site: SitePresentation, mask: int, covers=None):
    """Reason ``mask`` is not a point of ``site``, or ``None``."""
    base = site.base
    n = len(base)
    if not mask >> base.top & 1:
        return "missing top", base.top
    for u in bits(mask):
        if base.up_mask(u) & ~mask:
            return "not upward closed", u
    for u in bits(mask):
        for w in bits(mask):
            if w > u and not mask >> base.meet(u, w) & 1:
                return "not meet closed", (u, w)
    fams = covers if covers is not None else [(c.target, c.mask()) for c in site.covers]
    for target, fam in fams:
        if mask >> target & 1 and not fam & mask:
            return "does not split a cover", (target, frozenset(bits(fam)))
    return None


def enumerate_points(site: SitePresentation, budget: int = DEFAULT_POINT_BUDGET) -> list[Point]:
    """All points of a finite site.

    In a finite meet-semilattice every nonempty meet-closed up-set is the
    principal filter of its least element, so the candidates are exactly the
    principal filters; each is checked against every basic cover.
    """
    base = site.base
    n = len(base)
    if n > budget:
        raise SearchBudgetExceeded(budget, needed=n)
    by_target = {}
    for c in site.covers:
        by_target.setdefault(c.target, []).append(c.mask())
    points = []
    for m in range(n):
        up = base.up_mask(m)
        ok = True
        for target, fams in by_target.items():
            if up >> target & 1 and any(not f & up for f in fams):
                ok = False
                break
        if ok:
            points.append(Point(up, m))
    return points


def check_point(site: SitePresentation, mask: int) -> Point:
    reason = point_failure(site, mask)
    if reason is not None:
        raise NotAPoint(reason[0], witness=reason[1])
    least = site.base.meet_all(bits(mask))
    return Point(mask, least)


def point_split_failure(rel: CoveringRelation, point: Point):
    """A stored family of an element in ``point`` none of whose members is in it."""
    for u in point.elements():
        for f in rel.families[u]:
            if not f & point.members:
                return u, frozenset(bits(f))
    return None


# ---------------------------------------------------------------------------
# products


def product_semilattice(a: MeetSemilattice, b: MeetSemilattice) -> MeetSemilattice:
    na, nb = len(a), len(b)
    labels = tuple((x, y) for x in a.labels for y in b.labels)
    up = []
    for i in range(na):
        ai = bits(a.up_mask(i))
        for j in range(nb):
            bj = bits(b.up_mask(j))
            row = 0
            for k in ai:
                for l in bj:
                    row |= 1 << (k * nb + l)
            up.append(row)
    meet = tuple(
        tuple(a.meet(i, k) * nb + b.meet(j, l) for k in range(na) for l in range(nb))
        for i in range(na) for j in range(nb))
    return MeetSemilattice(Preorder(labels, tuple(up)), meet, a.top * nb + b.top)


def product_site(s1: SitePresentation, s2: SitePresentation) -> SitePresentation:
    """Product presentation: each factor's covers in one coordinate, the other held fixed."""
    base = product_semilattice(s1.base, s2.base)
    nb = len(s2.base)
    covers = []
    for c in s1.covers:
        for v in range(nb):
            covers.append((c.target * nb + v, [m * nb + v for m in c.members]))
    for c in s2.covers:
        for u in range(len(s1.base)):
            covers.append((u * nb + c.target, [u * nb + m for m in c.members]))
    name = f"{s1.name or 'site'} x {s2.name or 'site'}"
    return SitePresentation.build(base, covers, name)


def terminal_site() -> SitePresentation:
    base = MeetSemilattice(Preorder(("1",), (1,)), ((0,),), 0)
    return SitePresentation(base, (), "terminal")
