"""JSON formats for preorders, sites, categories with functors, groups and actions.

Every document carries a ``"kind"`` field. Loading validates structure and
laws; problems raise InputError naming the offending field.
"""

from __future__ import annotations

import json
from typing import Any

from .category import Arrow, FinCategory, SetFunctor
from .errors import InputError, LocgalError
from .gset import DiscreteGroup, action_from_table
from .order import MeetSemilattice, Preorder, bits, validate_preorder
from .site import SitePresentation


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, where=f"{source}:{exc.lineno}:{exc.colno}") from None


def _encode(v, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(x, indent + 1)}" for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(v, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in v):
            return json.dumps(list(v), ensure_ascii=False)
        items = [pad + _encode(x, indent + 1) for x in v]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(v, ensure_ascii=False)


def dumps(doc: Any) -> str:
    """Indented JSON with flat lists kept on one line; stable for a fixed input."""
    return _encode(doc, 0) + "\n"


def _need(doc: dict, key: str, where: str, kind=None):
    if not isinstance(doc, dict):
        raise InputError("expected an object", where=where)
    if key not in doc:
        raise InputError(f"missing field '{key}'", where=where)
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise InputError(f"field '{key}' has the wrong type", where=f"{where}.{key}")
    return v


def _index(value, names: list, where: str) -> int:
    """Resolve an index or a name against ``names``."""
    if isinstance(value, bool):
        raise InputError("expected an index or a name", where=where)
    if isinstance(value, int):
        if not 0 <= value < len(names):
            raise InputError(f"index {value} out of range", where=where)
        return value
    try:
        return names.index(value)
    except ValueError:
        raise InputError(f"unknown name {value!r}", where=where) from None


# ---------------------------------------------------------------------------
# preorders and sites


def preorder_to_json(p: Preorder) -> dict:
    return {"kind": "preorder", "elements": [str(e) for e in p.elements],
            "leq": [[i, j] for i, j in p.pairs()]}


def preorder_from_json(doc: dict, where: str = "preorder") -> Preorder:
    elements = _need(doc, "elements", where, list)
    pairs = _need(doc, "leq", where, list)
    idx = []
    for k, pair in enumerate(pairs):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError("expected a pair", where=f"{where}.leq[{k}]")
        idx.append((_index(pair[0], elements, f"{where}.leq[{k}][0]"),
                     _index(pair[1], elements, f"{where}.leq[{k}][1]")))
    try:
        return validate_preorder(elements, idx, close_reflexive=True)
    except LocgalError as exc:
        raise InputError(str(exc), where=f"{where}.leq") from exc


def semilattice_to_json(s: MeetSemilattice) -> dict:
    doc = preorder_to_json(s.carrier)
    doc["kind"] = "semilattice"
    doc["meet"] = [list(r) for r in s.meet_table]
    doc["top"] = s.top
    return doc


def semilattice_from_json(doc: dict, where: str = "base") -> MeetSemilattice:
    order = preorder_from_json(doc, where)
    if not order.is_antisymmetric():
        raise InputError("site bases must be antisymmetric (use the poset reflection)", where=where)
    try:
        computed = MeetSemilattice.from_order(order)
    except LocgalError as exc:
        raise InputError(str(exc), where=where) from exc
    if "meet" in doc:
        meet = tuple(tuple(r) for r in _need(doc, "meet", where, list))
        top = _index(_need(doc, "top", where), list(order.elements), f"{where}.top")
        if meet != computed.meet_table or top != computed.top:
            raise InputError("meet table or top disagrees with the order", where=f"{where}.meet")
    return computed


def site_to_json(s: SitePresentation) -> dict:
    return {
        "kind": "site",
        "name": s.name,
        "base": semilattice_to_json(s.base),
        "covers": [{"target": c.target, "members": list(c.members)} for c in s.covers],
    }


def site_from_json(doc: dict, where: str = "site") -> SitePresentation:
    base = semilattice_from_json(_need(doc, "base", where, dict), f"{where}.base")
    names = list(base.labels)
    covers = []
    for k, c in enumerate(_need(doc, "covers", where, list)):
        w = f"{where}.covers[{k}]"
        t = _index(_need(c, "target", w), names, f"{w}.target")
        ms = [_index(m, names, f"{w}.members") for m in _need(c, "members", w, list)]
        covers.append((t, ms))
    try:
        return SitePresentation.build(base, covers, doc.get("name", ""))
    except LocgalError as exc:
        raise InputError(str(exc), where=f"{where}.covers") from exc


# ---------------------------------------------------------------------------
# categories and functors


def category_to_json(C: FinCategory, F: SetFunctor | None = None, basepoint: int | None = None,
                     group: DiscreteGroup | None = None) -> dict:
    doc = {
        "kind": "category",
        "objects": list(C.objects),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in C.arrows],
        "compose": [[g, f, h] for (g, f), h in sorted(C.table.items())],
        "identities": list(C.identities),
    }
    if F is not None:
        doc["functor"] = {"fibers": [list(map(str, fib)) for fib in F.fibers],
                          "maps": [list(m) for m in F.maps]}
    if basepoint is not None:
        doc["basepoint"] = basepoint
    if group is not None:
        doc["group"] = group_to_json(group)
    return doc


def category_from_json(doc: dict, where: str = "category"):
    """Returns ``(C, F or None, basepoint or None, group or None)``."""
    objects = _need(doc, "objects", where, list)
    arrows = []
    for k, a in enumerate(_need(doc, "arrows", where, list)):
        w = f"{where}.arrows[{k}]"
        arrows.append(Arrow(str(_need(a, "name", w)), _index(_need(a, "source", w), objects, f"{w}.source"),
                            _index(_need(a, "target", w), objects, f"{w}.target")))
    names = [a.name for a in arrows]
    table = {}
    for k, row in enumerate(_need(doc, "compose", where, list)):
        w = f"{where}.compose[{k}]"
        if not isinstance(row, list) or len(row) != 3:
            raise InputError("expected [g, f, g o f]", where=w)
        g, f, h = (_index(v, names, w) for v in row)
        table[(g, f)] = h
    idents = [_index(v, names, f"{where}.identities") for v in _need(doc, "identities", where, list)]
    C = FinCategory(tuple(objects), tuple(arrows), table, tuple(idents))
    try:
        C.validate()
    except LocgalError as exc:
        raise InputError(str(exc), where=where) from exc
    F = None
    if "functor" in doc:
        w = f"{where}.functor"
        fd = doc["functor"]
        fibers = _need(fd, "fibers", w, (list, dict))
        if isinstance(fibers, dict):
            fibers = [fibers.get(o, []) for o in objects]
        maps = _need(fd, "maps", w, (list, dict))
        if isinstance(maps, dict):
            maps = [maps.get(n) for n in names]
        if any(m is None for m in maps):
            raise InputError("every arrow needs a map", where=f"{w}.maps")
        F = SetFunctor(C, tuple(tuple(f) for f in fibers), tuple(tuple(m) for m in maps))
        try:
            F.validate()
        except LocgalError as exc:
            raise InputError(str(exc), where=w) from exc
    basepoint = None
    if "basepoint" in doc:
        basepoint = _index(doc["basepoint"], objects, f"{where}.basepoint")
    group = group_from_json(doc["group"], f"{where}.group") if "group" in doc else None
    return C, F, basepoint, group


# ---------------------------------------------------------------------------
# groups and actions


def group_to_json(G: DiscreteGroup) -> dict:
    return {"kind": "group", "name": G.name, "elements": list(G.labels), "table": [list(r) for r in G.table]}


def group_from_json(doc, where: str = "group") -> DiscreteGroup:
    if isinstance(doc, str):
        return DiscreteGroup.named(doc)
    elements = _need(doc, "elements", where, list)
    table = _need(doc, "table", where, list)
    rows = [[_index(v, elements, f"{where}.table[{i}]") for v in row] for i, row in enumerate(table)]
    try:
        return DiscreteGroup(str(doc.get("name", "G")), tuple(map(str, elements)), tuple(map(tuple, rows)))
    except LocgalError as exc:
        raise InputError(str(exc), where=where) from exc


def action_to_json(a) -> dict:
    return {"kind": "action", "group": group_to_json(a.handle.group), "points": list(map(str, a.points)),
            "act": [list(r) for r in a.act]}


def action_from_json(doc: dict, where: str = "action"):
    G = group_from_json(_need(doc, "group", where), f"{where}.group")
    points = _need(doc, "points", where, list)
    act = _need(doc, "act", where, list)
    try:
        return action_from_table(G, points, act)
    except LocgalError as exc:
        raise InputError(str(exc), where=f"{where}.act") from exc


def load(doc: dict):
    """Dispatch on ``kind``."""
    kind = _need(doc, "kind", "$", str)
    if kind == "preorder":
        return preorder_from_json(doc)
    if kind == "semilattice":
        return semilattice_from_json(doc)
    if kind == "site":
        return site_from_json(doc)
    if kind == "category":
        return category_from_json(doc)
    if kind == "group":
        return group_from_json(doc)
    if kind == "action":
        return action_from_json(doc)
    raise InputError(f"unknown kind {kind!r}", where="$.kind")


def points_to_json(site: SitePresentation, points) -> dict:
    labels = site.base.labels
    return {
        "kind": "points",
        "count": len(points),
        "points": [{"least": labels[p.least], "members": [labels[i] for i in bits(p.members)]} for p in points],
    }
