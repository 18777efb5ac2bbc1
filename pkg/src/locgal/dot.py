"""DOT export for preorders, sites and diagram posets.

Nodes are the raw elements. Solid edges form the Hasse diagram of the poset
reflection; elements in one isomorphism class are joined by dashed edges.
Basic covers become small hyperedge nodes pointing at their target.
"""

from __future__ import annotations

from .autloc import AutSite, DiagramPoset
from .order import MeetSemilattice, Preorder, bits
from .site import SitePresentation


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_pairs(order: Preorder) -> list[tuple[int, int]]:
    """Covering pairs ``(i, j)`` of the reflection, as class indices with ``i < j``."""
    poset, _, _ = order.reflection()
    n = len(poset)
    out = []
    for i in range(n):
        strict_up = poset.up[i] & ~(1 << i)
        for j in bits(strict_up):
            between = strict_up & poset.down[j] & ~(1 << j)
            if not between:
                out.append((i, j))
    return out


def _order_lines(order: Preorder, labels) -> list[str]:
    lines = [f"  n{i} [label={_quote(labels[i])}];" for i in range(len(order))]
    _, class_of, _ = order.reflection()
    members = {}
    for i, c in enumerate(class_of):
        members.setdefault(c, []).append(i)
    for ms in members.values():
        for a, b in zip(ms, ms[1:]):
            lines.append(f"  n{a} -> n{b} [style=dashed, dir=none];")
    for ci, cj in hasse_pairs(order):
        for a in members[ci]:
            for b in members[cj]:
                lines.append(f"  n{a} -> n{b};")
    return lines


def _wrap(name: str, body: list[str]) -> str:
    head = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    return "\n".join(head + body + ["}"]) + "\n"


def export_dot(obj, name: str | None = None) -> str:
    """Deterministic DOT text for a Preorder, MeetSemilattice, SitePresentation,
    AutSite or DiagramPoset."""
    if isinstance(obj, AutSite):
        obj = obj.site
    if isinstance(obj, DiagramPoset):
        labels = [obj.label(i) for i in range(len(obj))]
        return _wrap(name or "diagram", _order_lines(obj.order, labels))
    if isinstance(obj, SitePresentation):
        base = obj.base
        body = _order_lines(base.carrier, base.labels)
        for k, c in enumerate(obj.covers):
            body.append(f"  c{k} [shape=point, label=\"\", xlabel={_quote('cover ' + str(k))}];")
            body.append(f"  c{k} -> n{c.target} [style=dotted, color=blue];")
            for m in c.members:
                body.append(f"  n{m} -> c{k} [style=dotted, color=blue, arrowhead=none];")
        return _wrap(name or obj.name or "site", body)
    if isinstance(obj, MeetSemilattice):
        return _wrap(name or "semilattice", _order_lines(obj.carrier, obj.labels))
    if isinstance(obj, Preorder):
        return _wrap(name or "preorder", _order_lines(obj, [str(e) for e in obj.elements]))
    raise TypeError(f"cannot export {type(obj).__name__} to DOT")
