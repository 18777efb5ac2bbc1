"""Assumption checks and theorem suites.

Every suite returns TheoremReports: a theorem id, a verdict, concrete
counterexamples when the verdict is negative, and resource stats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import autloc, gset, site as site_mod
from .category import FinCategory, SetFunctor, is_effective, representable_functor, strict_epi
from .fields import FiniteFieldTower, divisors, field_category, field_tower
from .gset import DiscreteGroup, TransitiveGSets
from .order import bits

MAX_EXAMPLES = 5


@dataclass
class TheoremReport:
    theorem: str
    verdict: bool
    counterexamples: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def fail(self, witness) -> None:
        self.verdict = False
        if len(self.counterexamples) < MAX_EXAMPLES:
            self.counterexamples.append(witness)

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "verdict": "pass" if self.verdict else "fail",
            "counterexamples": [_jsonable(c) for c in self.counterexamples],
            "stats": {k: _jsonable(v) for k, v in sorted(self.stats.items())},
            "notes": list(self.notes),
        }


@dataclass
class SuiteReport:
    suite: str
    subject: str
    reports: list[TheoremReport]
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.verdict for r in self.reports)

    def __getitem__(self, theorem: str) -> TheoremReport:
        for r in self.reports:
            if r.theorem == theorem:
                return r
        raise KeyError(theorem)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "subject": self.subject,
            "verdict": "pass" if self.passed else "fail",
            "theorems": [r.to_json() for r in self.reports],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        lines = [f"{self.suite} [{self.subject}]: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.reports:
            line = f"  {'pass' if r.verdict else 'FAIL'}  {r.theorem}"
            if r.stats:
                line += "  (" + ", ".join(f"{k}={v}" for k, v in sorted(r.stats.items())) + ")"
            lines.append(line)
            for c in r.counterexamples:
                lines.append(f"        counterexample: {c}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, (list, tuple, set, frozenset)):
        items = sorted(v, key=repr) if isinstance(v, (set, frozenset)) else v
        return [_jsonable(x) for x in items]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)


# ---------------------------------------------------------------------------
# the standing assumption


@dataclass
class AssumptionReport:
    strict_epi_ok: bool
    strict_epi_counterexample: object
    fibers_nonempty_ok: bool
    fibers_witness: object
    preserves_strict_epi_ok: bool
    preserves_counterexample: object
    prorepresentable_ok: bool = True
    prorepresentable_witness: object = None
    gamma_is_poset: bool = True
    effective: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        """All three listed conditions plus cofilteredness of the diagram of F."""
        return self.holds_as_listed and self.prorepresentable_ok

    @property
    def holds_as_listed(self) -> bool:
        return self.strict_epi_ok and self.fibers_nonempty_ok and self.preserves_strict_epi_ok

    def to_json(self) -> dict:
        return {
            "strict_epi_ok": self.strict_epi_ok,
            "strict_epi_counterexample": _jsonable(self.strict_epi_counterexample),
            "fibers_nonempty_ok": self.fibers_nonempty_ok,
            "fibers_witness": _jsonable(self.fibers_witness),
            "preserves_strict_epi_ok": self.preserves_strict_epi_ok,
            "preserves_counterexample": _jsonable(self.preserves_counterexample),
            "prorepresentable_ok": self.prorepresentable_ok,
            "prorepresentable_witness": _jsonable(self.prorepresentable_witness),
            "gamma_is_poset": self.gamma_is_poset,
            "effective": _jsonable(self.effective),
            "holds": self.holds,
        }

    def as_theorem(self) -> TheoremReport:
        r = TheoremReport("assumption", self.holds)
        for ok, w, name in ((self.strict_epi_ok, self.strict_epi_counterexample, "strict-epi"),
                            (self.fibers_nonempty_ok, self.fibers_witness, "nonempty-fibers"),
                            (self.preserves_strict_epi_ok, self.preserves_counterexample, "preserves-strict-epi"),
                            (self.prorepresentable_ok, self.prorepresentable_witness, "cofiltered-diagram")):
            if not ok:
                r.counterexamples.append({"condition": name, "witness": _jsonable(w)})
        return r


def cofiltered_witness(C: FinCategory, F: SetFunctor):
    """Why the category of elements of F fails to be cofiltered, or None.

    Needs: some element; a common predecessor of any two elements; and for
    parallel arrows s, t with F(s) m = F(t) m an arrow u into (M, m) with
    s u = t u.
    """
    elems = [(x, a) for x in range(len(C.objects)) for a in range(F.fiber_size(x))]
    if not elems:
        return ("empty", None)
    for (x, a), (y, b) in product(elems, repeat=2):
        if not any(
                any(F.maps[s][m] == a for s in C.hom(w, x)) and any(F.maps[t][m] == b for t in C.hom(w, y))
                for w, m in elems):
            return ("no common predecessor", (C.objects[x], F.fibers[x][a], C.objects[y], F.fibers[y][b]))
    for w, m in elems:
        for x in range(len(C.objects)):
            for s, t in product(C.hom(w, x), repeat=2):
                if s >= t or F.maps[s][m] != F.maps[t][m]:
                    continue
                ok = any(F.maps[u][n] == m and C.compose(s, u) == C.compose(t, u)
                         for v, n in elems for u in C.hom(v, w))
                if not ok:
                    return ("parallel pair not equalized", (C.arrows[s].name, C.arrows[t].name, F.fibers[w][m]))
    return None


def check_assumption(C: FinCategory, F: SetFunctor, effective: bool = False) -> AssumptionReport:
    epi_bad = None
    strict = {}
    for f in range(len(C.arrows)):
        res = strict_epi(C, f)
        strict[f] = res.strict
        if not res.strict and epi_bad is None:
            epi_bad = {"arrow": C.arrows[f].name, "g_without_unique_h": res.witness}
    empty = next((C.objects[x] for x in range(len(C.objects)) if F.fiber_size(x) == 0), None)
    pres_bad = None
    for f, ok in strict.items():
        a = C.arrows[f]
        if ok and len(set(F.maps[f])) != F.fiber_size(a.target):
            pres_bad = {"arrow": a.name, "image_size": len(set(F.maps[f])), "target_size": F.fiber_size(a.target)}
            break
    cof = cofiltered_witness(C, F)
    diag = autloc.diagram_poset(C, F)
    eff = {}
    if effective:
        eff = {C.arrows[f].name: is_effective(C, f) for f in range(len(C.arrows)) if strict[f]}
    return AssumptionReport(epi_bad is None, epi_bad, empty is None, empty, pres_bad is None, pres_bad,
                            cof is None, cof, diag.gamma_is_poset, eff)


# ---------------------------------------------------------------------------
# representable case


def verify_classical(C: FinCategory, A: int) -> SuiteReport:
    F = representable_functor(C, A)
    assumption = check_assumption(C, F)
    reports = [assumption.as_theorem()]

    r = TheoremReport("arrows-into-basepoint-invertible", True)
    count = 0
    for x in range(len(C.objects)):
        for f in C.hom(x, A):
            count += 1
            if not C.is_iso(f):
                r.fail({"arrow": C.arrows[f].name})
    aut = C.automorphisms(A)
    if len(aut) != len(C.hom(A, A)):
        r.fail({"endomorphisms": len(C.hom(A, A)), "automorphisms": len(aut)})
    r.stats = {"arrows_checked": count, "aut_order": len(aut)}
    reports.append(r)

    r = TheoremReport("aut-transitive", True)
    degenerate = []
    for x in range(len(C.objects)):
        homs = C.hom(A, x)
        if len(homs) <= 1:
            degenerate.append(C.objects[x])
        for a, b in product(homs, repeat=2):
            if not any(C.compose(a, h) == b for h in aut):
                r.fail({"object": C.objects[x], "from": C.arrows[a].name, "to": C.arrows[b].name})
    r.stats = {"objects": len(C.objects), "degenerate_objects": len(degenerate)}
    reports.append(r)

    r = TheoremReport("quotient-universal-property", True)
    checked = 0

    def fix(x):
        return frozenset(h for h in aut if C.compose(x, h) == x)

    for X in range(len(C.objects)):
        for x in C.hom(A, X):
            fx = fix(x)
            for Y in range(len(C.objects)):
                for y in C.hom(A, Y):
                    if not fx <= fix(y):
                        continue
                    checked += 1
                    fs = [f for f in C.hom(X, Y) if C.compose(f, x) == y]
                    if len(fs) != 1:
                        r.fail({"x": C.arrows[x].name, "y": C.arrows[y].name, "factorizations": len(fs)})
    r.stats = {"pairs_checked": checked}
    reports.append(r)
    return SuiteReport("classical", C.objects[A], reports)


# ---------------------------------------------------------------------------
# localic suite


def lifting_counts(C: FinCategory, F: SetFunctor, X: int, x: int, Y: int, y: int) -> int:
    return sum(1 for f in C.hom(X, Y) if F.maps[f][x] == y)


def verify_localic(C: FinCategory, F: SetFunctor, mode: str = site_mod.MINIMAL,
                   max_families: int = site_mod.DEFAULT_MAX_FAMILIES,
                   max_stage: int = site_mod.DEFAULT_MAX_STAGE, subject: str = "") -> SuiteReport:
    assumption = check_assumption(C, F)
    reports = [assumption.as_theorem()]
    aut = autloc.laut_site_of_functor(C, F)
    rel = site_mod.saturate(aut.site, mode=mode, max_families=max_families, max_stage=max_stage)
    lat = aut.lattice
    stats = {"base_elements": len(lat), "families": rel.family_count, "stage_reached": rel.stage_reached,
             "mode": mode}

    r = TheoremReport("faithful-reflects-isos", F.is_faithful() and F.reflects_isos())
    if not r.verdict:
        r.counterexamples.append({"faithful": F.is_faithful(), "reflects_isos": F.reflects_isos()})
    diag = autloc.diagram_poset(C, F)
    if not diag.gamma_is_poset:
        r.notes.append(f"diagram of F is not a poset: {diag.multi_witness()}")
    reports.append(r)

    gens = aut.generator_elements()
    r = TheoremReport("no-zero-generators", True, stats={"generators": len(gens), **stats})
    for g in gens:
        if rel.is_zero(g):
            r.fail(lat.labels[g])
    reports.append(r)

    r = TheoremReport("content-preservation", True)
    examined = 0
    nonempty = [autloc.content_mask(aut, u) != 0 for u in range(len(lat))]
    for u in range(len(lat)):
        if not nonempty[u]:
            continue
        for fam in rel.families[u]:
            examined += 1
            if not any(nonempty[m] for m in bits(fam)):
                r.fail({"target": lat.labels[u], "family": [lat.labels[m] for m in bits(fam)]})
    r.stats = {"covers_examined": examined, **stats}
    if mode == site_mod.MINIMAL:
        r.notes.append("stored families are the subset-minimal generated covers; every generated "
                       "cover contains one, and the property is inherited by supersets")
    reports.append(r)

    r = TheoremReport("generator-fullness", True)
    system = site_mod.covering_system(aut.site)
    pairs = 0
    down_sheaves = {h: site_mod.sheafify(aut.site, 1 << h, system) for h in gens}
    for g in gens:
        for h in gens:
            pairs += 1
            sl = rel.sheaf_leq(g, h)
            if sl != lat.leq(g, h):
                r.fail({"g": lat.labels[g], "h": lat.labels[h], "sheaf_leq": sl, "base_leq": lat.leq(g, h)})
            # the least sheaf containing the down-set of h, computed without composition
            if bool(down_sheaves[h] >> g & 1) != sl:
                r.fail({"g": lat.labels[g], "h": lat.labels[h], "route_disagreement": True})
    r.stats = {"pairs": pairs}
    reports.append(r)

    r = TheoremReport("lifting-lemma", True)
    pairs = 0
    for X in range(len(C.objects)):
        for x in range(F.fiber_size(X)):
            for Y in range(len(C.objects)):
                for y in range(F.fiber_size(Y)):
                    pairs += 1
                    le = rel.sheaf_leq(autloc.lfix(aut, X, x), autloc.lfix(aut, Y, y))
                    n = lifting_counts(C, F, X, x, Y, y)
                    if le != (n == 1) or n > 1:
                        r.fail({"x": (C.objects[X], F.fibers[X][x]), "y": (C.objects[Y], F.fibers[Y][y]),
                                "sheaf_leq": le, "arrows": n})
    r.stats = {"pairs": pairs}
    reports.append(r)

    notes = ["finite input: the fiber functor is representable, so points exist; "
             "the site, saturation and sheaf order are still computed directly"]
    return SuiteReport("localic", subject or f"{len(C.objects)} objects", reports, notes)


def verify_auxiliar(C: FinCategory, F: SetFunctor) -> TheoremReport:
    r = TheoremReport("auxiliary-factorization", True)
    checked = vacuous = 0
    n = len(C.objects)
    for W in range(n):
        for X, Y in product(range(n), repeat=2):
            for f in C.hom(W, X):
                for g in C.hom(W, Y):
                    for x0 in range(F.fiber_size(X)):
                        pre = [w for w in range(F.fiber_size(W)) if F.maps[f][w] == x0]
                        for y0 in range(F.fiber_size(Y)):
                            if not all(F.maps[g][w] == y0 for w in pre):
                                continue
                            if not pre:
                                vacuous += 1
                                continue
                            checked += 1
                            hs = [h for h in C.hom(X, Y) if C.compose(h, f) == g and F.maps[h][x0] == y0]
                            if len(hs) != 1:
                                r.fail({"f": C.arrows[f].name, "g": C.arrows[g].name,
                                        "x0": F.fibers[X][x0], "y0": F.fibers[Y][y0], "h_found": len(hs)})
    r.stats = {"checked": checked, "vacuous": vacuous}
    return r


# ---------------------------------------------------------------------------
# classifying round trip


def point_generators(aut: autloc.AutSite, point) -> frozenset:
    """Generator classes contained in a point."""
    return frozenset(c for c in range(len(aut.lattice.poset)) if aut.lattice.generator(c) in point)


def point_product(aut: autloc.AutSite, p: frozenset, q: frozenset) -> frozenset:
    """Generator classes of ``p . q``: ``[X,<x|y>]`` iff some z has ``[x|z]`` in p and ``[z|y]`` in q."""
    out = set()
    for X, x, y in aut.generators:
        if any(aut.generator_class(X, x, z) in p and aut.generator_class(X, z, y) in q
               for z in range(aut.functor.fiber_size(X))):
            out.add(aut.generator_class(X, x, y))
    return frozenset(out)


def verify_classifying(G: DiscreteGroup, mode: str = site_mod.MINIMAL,
                       max_families: int = site_mod.DEFAULT_MAX_FAMILIES,
                       max_stage: int = site_mod.DEFAULT_MAX_STAGE,
                       point_budget: int = site_mod.DEFAULT_POINT_BUDGET) -> SuiteReport:
    tgs = gset.tbg_category(G)
    C, F = tgs.category, tgs.functor
    aut = autloc.laut_site_of_functor(C, F)
    rel = site_mod.saturate(aut.site, mode=mode, max_families=max_families, max_stage=max_stage)
    points = site_mod.enumerate_points(aut.site, point_budget)
    reports = []

    r = TheoremReport("point-group-iso", True)
    gensets = [point_generators(aut, p) for p in points]
    index = {s: i for i, s in enumerate(gensets)}
    e = autloc.neutral_point(aut)
    unit = index.get(point_generators(aut, e))
    table = []
    for p in gensets:
        row = []
        for q in gensets:
            s = point_product(aut, p, q)
            if s not in index:
                r.fail({"product_not_a_point": sorted(s)})
                row.append(None)
            else:
                row.append(index[s])
        table.append(row)
    iso = None
    if r.verdict and unit is not None:
        k = len(points)
        order = [unit] + [i for i in range(k) if i != unit]
        pos = {p: i for i, p in enumerate(order)}
        relabeled = tuple(tuple(pos[table[a][b]] for b in order) for a in order)
        try:
            pg = DiscreteGroup("points", tuple(str(i) for i in range(k)), relabeled)
        except Exception as exc:  # noqa: BLE001 - reported as a counterexample
            r.fail({"point_group_law": str(exc)})
            pg = None
        if pg is not None:
            iso = gset.isomorphism(G, pg)
            if iso is None:
                r.fail({"not_isomorphic": G.name})
            # the explicit correspondence g -> point of g^-1
            explicit = []
            for g in range(len(G)):
                gi = G.inverse[g]
                s = frozenset(aut.generator_class(X, a, tgs.actions[X].act[gi][a])
                              for X in range(len(C.objects)) for a in range(F.fiber_size(X)))
                explicit.append(index.get(s))
            if None in explicit or len(set(explicit)) != len(G):
                r.fail({"explicit_map": "not a bijection onto the points"})
            else:
                for g, h in product(range(len(G)), repeat=2):
                    if table[explicit[g]][explicit[h]] != explicit[G.mul(g, h)]:
                        r.fail({"explicit_map_not_multiplicative": (G.labels[g], G.labels[h])})
                        break
    elif unit is None:
        r.fail("neutral point missing from the enumerated points")
    for i, p in enumerate(points):
        bad = site_mod.point_split_failure(rel, p)
        if bad is not None:
            r.fail({"point": i, "unsplit_cover": (aut.label(bad[0]), sorted(bad[1]))})
    r.stats = {"points": len(points), "group_order": len(G), "families": rel.family_count,
               "stage_reached": rel.stage_reached}
    reports.append(r)

    r = TheoremReport("lifted-functor-full-faithful", True)
    try:
        r.stats.update(gset.g_to_laut(tgs, aut))
    except Exception as exc:  # LawViolation
        r.fail({"g_to_laut": str(exc)})
    if not F.is_faithful():
        r.fail("functor not faithful")
    actions = [autloc.action_on_fiber(aut, X, rel) for X in range(len(C.objects))]
    morphisms = 0
    for X, Y in product(range(len(C.objects)), repeat=2):
        nx, ny = F.fiber_size(X), F.fiber_size(Y)
        lifted = {F.maps[f] for f in C.hom(X, Y)}
        for fn in product(range(ny), repeat=nx):
            if gset.is_morphism(actions[X], actions[Y], fn):
                morphisms += 1
                if fn not in lifted:
                    r.fail({"not_full": (C.objects[X], C.objects[Y], fn)})
            elif fn in lifted:
                r.fail({"arrow_not_a_morphism": (C.objects[X], C.objects[Y], fn)})
    covered = 0
    for h in G.subgroups:
        target = gset.coset_action(G, h)
        if not any(any(gset.is_surjective(f, len(target)) for f in gset.equivariant_maps(tgs.actions[X], target))
                   for X in range(len(C.objects))):
            r.fail({"transitive_gset_without_cover": G.subgroup_label(h)})
        covered += 1
    r.stats.update({"morphisms": morphisms, "transitive_gsets_covered": covered})
    reports.append(r)
    return SuiteReport("classifying", G.name, reports)


# ---------------------------------------------------------------------------
# finite fields


def gen_finite_field_site(p: int, n: int) -> tuple[FinCategory, int, FiniteFieldTower]:
    tower = field_tower(p, n)
    C, A = field_category(tower)
    return C, A, tower


def galois_correspondence(tower: FiniteFieldTower) -> TheoremReport:
    """Subgroups of Aut(A) against subfields: fixed fields, counts, order reversal, degrees."""
    K = tower.field
    autos = tower.automorphisms()
    elems = tuple(range(K.q))
    idx = {a: i for i, a in enumerate(autos)}
    identity = idx[elems]
    order = [identity] + [i for i in range(len(autos)) if i != identity]
    pos = {a: k for k, a in enumerate(order)}
    table = tuple(tuple(pos[idx[tuple(autos[a][autos[b][v]] for v in elems)]] for b in order) for a in order)
    group = DiscreteGroup(f"Aut(GF({tower.p}^{tower.n}))", tuple(str(i) for i in range(len(autos))), table)
    r = TheoremReport("galois-correspondence", True)
    subfields = {frozenset(els): d for d, els in tower.subfields.items()}
    fixed = {}
    for h in group.subgroups:
        maps = [autos[order[k]] for k in bits(h)]
        fix = frozenset(a for a in elems if all(m[a] == a for m in maps))
        if fix not in subfields:
            r.fail({"fixed_set_not_a_subfield": sorted(fix)})
            continue
        fixed[h] = subfields[fix]
        if bin(h).count("1") * subfields[fix] != tower.n:
            r.fail({"degree_mismatch": (bin(h).count("1"), subfields[fix])})
    if len(set(fixed.values())) != len(group.subgroups) or len(group.subgroups) != len(divisors(tower.n)):
        r.fail({"subgroups": len(group.subgroups), "subfields": len(divisors(tower.n))})
    for h1, h2 in product(fixed, repeat=2):
        sub = h1 & ~h2 == 0
        contained = set(tower.subfields[fixed[h2]]) <= set(tower.subfields[fixed[h1]])
        if sub != contained:
            r.fail({"order_reversal": (bin(h1), bin(h2))})
    r.stats = {"aut_order": len(autos), "subgroups": len(group.subgroups), "subfields": len(tower.subfields)}
    return r


# ---------------------------------------------------------------------------
# properties of transitive G-sets


def verify_gsets(G: DiscreteGroup) -> SuiteReport:
    tgs = gset.tbg_category(G)
    C = tgs.category
    acts = tgs.actions
    n = len(C.objects)
    maps = {(X, Y): [tgs.functor.maps[f] for f in C.hom(X, Y)] for X in range(n) for Y in range(n)}
    reports = []

    r = TheoremReport("morphisms-surjective", True)
    for (X, Y), fs in maps.items():
        for f in fs:
            if not gset.is_surjective(f, len(acts[Y])):
                r.fail({"from": C.objects[X], "to": C.objects[Y], "map": f})
    r.stats = {"arrows": len(C.arrows)}
    reports.append(r)

    r = TheoremReport("cofiltered-agreement", True)
    for (X, Y), fs in maps.items():
        for s, t in product(fs, repeat=2):
            if s != t and any(s[x] == t[x] for x in range(len(acts[X]))):
                r.fail({"from": C.objects[X], "to": C.objects[Y], "s": s, "t": t})
    reports.append(r)

    r = TheoremReport("cofiltered-cone", True)
    for X, Y in product(range(n), repeat=2):
        prod_act = gset.product_action(acts[X], acts[Y])
        ny = len(acts[Y])
        for x, y in product(range(len(acts[X])), range(ny)):
            comp = next(c for c in gset.components(prod_act) if x * ny + y in c)
            M = gset.restrict(prod_act, comp)
            m = comp.index(x * ny + y)
            s = tuple(comp[i] // ny for i in range(len(comp)))
            t = tuple(comp[i] % ny for i in range(len(comp)))
            ok = (gset.is_transitive(M) and gset.is_morphism(M, acts[X], s) and gset.is_morphism(M, acts[Y], t)
                  and s[m] == x and t[m] == y)
            in_skeleton = any(
                any(f[m2] == x for f in maps[(W, X)]) and any(g[m2] == y for g in maps[(W, Y)])
                for W in range(n) for m2 in range(len(acts[W])))
            if not ok or not in_skeleton:
                r.fail({"x": (C.objects[X], x), "y": (C.objects[Y], y)})
    reports.append(r)

    r = TheoremReport("morphisms-strict-epi", True)
    for f in range(len(C.arrows)):
        res = strict_epi(C, f)
        if not res.strict:
            r.fail({"arrow": C.arrows[f].name, "witness": res.witness})
    reports.append(r)

    r = TheoremReport("components-transitive", True)
    examined = 0
    for X, Y in product(range(n), repeat=2):
        for a in (gset.product_action(acts[X], acts[Y]), gset.coproduct_action(acts[X], acts[Y])):
            examined += 1
            bad = gset.is_equivalence_witness(a)
            if bad is not None:
                r.fail({"relation": bad})
            for comp in gset.components(a):
                if not gset.is_transitive(gset.restrict(a, comp)):
                    r.fail({"component": comp})
    triv = gset.trivial_action(G, ["a", "b"])
    if gset.components(triv) != [[0], [1]]:
        r.fail({"trivial_action_components": gset.components(triv)})
    r.stats = {"actions": examined + 1}
    reports.append(r)

    r = TheoremReport("stabilizer-hom-equivalence", True)
    pairs = 0
    for X, Y in product(range(n), repeat=2):
        for x0, y0 in product(range(len(acts[X])), range(len(acts[Y]))):
            pairs += 1
            stab = gset.stabilizer_contained(acts[X], x0, acts[Y], y0)
            h = gset.hom_from_basepoint(acts[X], x0, acts[Y], y0)
            through = [f for f in maps[(X, Y)] if f[x0] == y0]
            if stab != (h is not None) or len(through) != (1 if stab else 0) or (h is not None and h not in through):
                r.fail({"x0": (C.objects[X], x0), "y0": (C.objects[Y], y0), "stabilizer_contained": stab,
                        "hom_found": h is not None, "maps_through": len(through)})
    r.stats = {"pairs": pairs}
    reports.append(r)
    return SuiteReport("gsets", G.name, reports)


# ---------------------------------------------------------------------------
# laws of the staged recursion on an arbitrary site


def verify_site_laws(site: site_mod.SitePresentation, mode: str = site_mod.LITERAL,
                     max_families: int = site_mod.DEFAULT_MAX_FAMILIES,
                     max_stage: int = site_mod.DEFAULT_MAX_STAGE, rel=None) -> SuiteReport:
    """Monotone stages, pullback-stable stages, the composition bound,
    stabilization, and agreement with the sieve-closure oracle."""
    if rel is None:
        rel = site_mod.saturate(site, mode=mode, max_families=max_families, max_stage=max_stage)
    last = len(rel.stages) - 1
    reports = []

    r = TheoremReport("stages-monotone", True)
    w = site_mod.stage_monotonicity_witness(rel)
    if w is not None:
        r.fail({"from_stage": w[0], "to_stage": w[1], "target": w[2], "family": w[3]})
    r.stats = {"stages": last + 1}
    reports.append(r)

    r = TheoremReport("stages-covering-systems", True)
    for k in range(1, last + 1):
        w = site_mod.covering_system_witness(rel.stages[k], site)
        if w is not None:
            r.fail({"stage": k, "law": w[0], "at": w[1], "family": w[2]})
    reports.append(r)

    r = TheoremReport("composition-bound", True)
    pairs = 0
    equalities = 0
    for rho in range(1, last + 1):
        for nu in range(1, last + 1):
            pairs += 1
            w, equal = site_mod.composition_check(rel, rho, nu)
            if w is not None:
                r.fail({"rho": rho, "nu": nu, "target": w[0], "family": w[1]})
            elif equal:
                equalities += 1
    r.stats = {"pairs": pairs, "equal_pairs": equalities}
    reports.append(r)

    r = TheoremReport("stabilizes", rel.stage_reached <= last and rel.stages[-1] == rel.families,
                      stats={"stage_reached": rel.stage_reached})
    reports.append(r)

    r = TheoremReport("sieve-agreement", True)
    closure = site_mod.SieveClosure(site)
    checked = 0
    for u in range(len(site.base)):
        for sieve in closure.sieves[u]:
            checked += 1
            staged = rel.refines(u, bits(sieve))
            if staged != closure.covers(u, sieve):
                r.fail({"target": u, "sieve": bits(sieve), "staged": staged})
        for f in rel.families[u]:
            s = site_mod.Sieve.generated(site, u, bits(f)).members
            if not closure.covers(u, s):
                r.fail({"target": u, "family": bits(f), "oracle": False})
    r.stats = {"sieves_checked": checked}
    reports.append(r)
    return SuiteReport("site", site.name or f"{len(site.base)} elements", reports)
