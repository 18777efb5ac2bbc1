"""Command-line front end.

    locgal example laut-set K | group NAME | field P N
    locgal points   --input FILE
    locgal saturate --input FILE [--mode literal|minimal]
    locgal verify   [SUITE ...] --input FILE
    locgal export   --input FILE [--what base|site|diagram]

Exit status: 0 all checks pass, 1 a theorem check failed, 2 usage error,
3 a budget was exhausted, 4 bad input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import autloc, io, site as site_mod, verify
from .category import representable_functor
from .dot import export_dot
from .errors import BudgetExceeded, InputError, LocgalError
from .fields import field_tower
from .gset import DiscreteGroup, tbg_category

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3, 4

SUITES = ("assumption", "classical", "localic", "auxiliar", "classifying", "gsets", "fields", "site")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    max_families: int = site_mod.DEFAULT_MAX_FAMILIES
    max_stage: int = site_mod.DEFAULT_MAX_STAGE
    point_budget: int = site_mod.DEFAULT_POINT_BUDGET
    mode: str | None = None
    fmt: str | None = None
    suites: list = field(default_factory=list)
    output: str | None = None

    def validate(self) -> None:
        for name in ("max_families", "max_stage", "point_budget"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name.replace('_', '-')} must be positive")
        for s in self.suites:
            if s not in SUITES:
                raise UsageError(f"unknown suite {s!r} (choose from {', '.join(SUITES)})")


# ---------------------------------------------------------------------------
# examples


def example_doc(kind: str, args: list[str]) -> dict:
    if kind == "laut-set":
        if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
            raise UsageError("example laut-set takes one positive integer")
        aut = autloc.laut_site_of_set(int(args[0]))
        return io.site_to_json(aut.site)
    if kind == "group":
        if len(args) != 1:
            raise UsageError("example group takes a group name such as Z3 or S3")
        G = DiscreteGroup.named(args[0])
        tgs = tbg_category(G)
        return io.category_to_json(tgs.category, tgs.functor, basepoint=0, group=G)
    if kind == "field":
        if len(args) != 2 or not all(a.isdigit() for a in args):
            raise UsageError("example field takes a prime P and an exponent N")
        p, n = map(int, args)
        try:
            C, A, tower = verify.gen_finite_field_site(p, n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        F = representable_functor(C, A)
        doc = io.category_to_json(C, F, basepoint=A)
        doc["field"] = {"p": p, "n": n, "modulus": list(tower.modulus)}
        return doc
    raise UsageError(f"unknown example {kind!r} (laut-set, group, field)")


# ---------------------------------------------------------------------------
# input handling


def read_input(path: str | None) -> dict:
    if path is None:
        raise UsageError("--input is required")
    if path == "-":
        return io.parse_json(sys.stdin.read(), "<stdin>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), where=path) from None
    return io.parse_json(text, path)


def _site_of(doc: dict):
    """A site from a site document, or the automorphism site of a category's functor."""
    kind = doc.get("kind")
    if kind == "site":
        return io.site_from_json(doc), None
    if kind == "category":
        C, F, A, _ = io.category_from_json(doc)
        if F is None:
            if A is None:
                raise InputError("a category needs a functor or a basepoint", where="category")
            F = representable_functor(C, A)
        aut = autloc.laut_site_of_functor(C, F)
        return aut.site, aut
    raise InputError(f"expected a site or a category, got {kind!r}", where="$.kind")


# ---------------------------------------------------------------------------
# commands


def cmd_points(doc: dict, cfg: RunConfig):
    site, _ = _site_of(doc)
    pts = site_mod.enumerate_points(site, cfg.point_budget)
    if (cfg.fmt or "text") == "json":
        return io.dumps(io.points_to_json(site, pts)), EXIT_OK
    labels = site.base.labels
    lines = [f"{len(pts)} points"]
    for p in pts:
        lines.append(f"  least {labels[p.least]}  ({len(p.elements())} elements)")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_saturate(doc: dict, cfg: RunConfig):
    site, _ = _site_of(doc)
    rel = site_mod.saturate(site, mode=cfg.mode or site_mod.LITERAL,
                            max_families=cfg.max_families, max_stage=cfg.max_stage)
    if (cfg.fmt or "json") == "text":
        labels = site.base.labels
        lines = [f"mode {rel.mode}, {len(rel)} families, stable from stage {rel.stage_reached}"]
        for fam in rel.to_json()["covers"]:
            members = ", ".join(str(labels[m]) for m in fam["members"])
            lines.append(f"  {labels[fam['target']]} <| {{{members}}}  (stage {fam['stage']})")
        return "\n".join(lines) + "\n", EXIT_OK
    return io.dumps(rel.to_json()), EXIT_OK


def _default_suites(doc: dict) -> list[str]:
    kind = doc.get("kind")
    if kind == "site":
        return ["site"]
    if kind == "group":
        return ["classical", "classifying", "gsets"]
    if "group" in doc:
        return ["classifying"]
    out = ["classical"] if "basepoint" in doc else []
    if "functor" in doc:
        out.append("localic")
    if "field" in doc:
        out.append("fields")
    return out or ["assumption"]


def run_suite(name: str, doc: dict, cfg: RunConfig) -> verify.SuiteReport:
    kind = doc.get("kind")
    mode = cfg.mode or site_mod.MINIMAL
    budgets = {"max_families": cfg.max_families, "max_stage": cfg.max_stage}
    if name == "site":
        if kind != "site":
            raise UsageError("the site suite needs a site input")
        return verify.verify_site_laws(io.site_from_json(doc), mode=cfg.mode or site_mod.LITERAL, **budgets)

    if kind == "group":
        G = io.group_from_json(doc)
        C = F = None
        A = 0
    elif kind == "category":
        C, F, A, G = io.category_from_json(doc)
    else:
        raise UsageError(f"suite {name!r} needs a category or group input")

    if name in ("classifying", "gsets"):
        if G is None:
            raise UsageError(f"suite {name!r} needs a group (input has no 'group' field)")
        if name == "gsets":
            return verify.verify_gsets(G)
        return verify.verify_classifying(G, mode=mode, point_budget=cfg.point_budget, **budgets)
    if C is None:
        tgs = tbg_category(G)
        C, F = tgs.category, tgs.functor
    if name == "classical":
        if A is None:
            raise UsageError("the classical suite needs a basepoint")
        return verify.verify_classical(C, A)
    if name == "fields":
        spec = doc.get("field")
        if not isinstance(spec, dict):
            raise UsageError("the fields suite needs a 'field' entry (see: example field P N)")
        tower = field_tower(int(spec.get("p", 0)), int(spec.get("n", 0)))
        return verify.SuiteReport("fields", f"GF({tower.p}^{tower.n})", [verify.galois_correspondence(tower)])
    if F is None:
        if A is None:
            raise UsageError(f"suite {name!r} needs a functor or a basepoint")
        F = representable_functor(C, A)
    if name == "assumption":
        return verify.SuiteReport("assumption", f"{len(C.objects)} objects",
                                  [verify.check_assumption(C, F).as_theorem()])
    if name == "localic":
        return verify.verify_localic(C, F, mode=mode, **budgets)
    if name == "auxiliar":
        return verify.SuiteReport("auxiliar", f"{len(C.objects)} objects", [verify.verify_auxiliar(C, F)])
    raise UsageError(f"unknown suite {name!r} (choose from {', '.join(SUITES)})")


def cmd_verify(doc: dict, cfg: RunConfig):
    suites = cfg.suites or _default_suites(doc)
    reports = [run_suite(s, doc, cfg) for s in suites]
    status = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    if (cfg.fmt or "json") == "text":
        return "\n".join(r.summary() for r in reports) + "\n", status
    out = {"kind": "reports", "verdict": "pass" if status == EXIT_OK else "fail",
           "suites": [r.to_json() for r in reports]}
    return io.dumps(out), status


def cmd_export(doc: dict, cfg: RunConfig, what: str | None):
    if (cfg.fmt or "dot") == "json":
        return io.dumps(doc), EXIT_OK
    if (cfg.fmt or "dot") != "dot":
        raise UsageError("export writes dot or json")
    kind = doc.get("kind")
    if kind == "preorder":
        return export_dot(io.preorder_from_json(doc)), EXIT_OK
    if kind == "semilattice":
        return export_dot(io.semilattice_from_json(doc)), EXIT_OK
    if kind == "site":
        s = io.site_from_json(doc)
        return export_dot(s.base if what == "base" else s), EXIT_OK
    if kind == "category":
        C, F, A, _ = io.category_from_json(doc)
        if F is None:
            if A is None:
                raise InputError("a category needs a functor or a basepoint", where="category")
            F = representable_functor(C, A)
        if what == "site":
            return export_dot(autloc.laut_site_of_functor(C, F)), EXIT_OK
        return export_dot(autloc.diagram_poset(C, F, diagonal=what != "pointed"), name="diagram"), EXIT_OK
    raise InputError(f"cannot export kind {kind!r}", where="$.kind")


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="locgal", description="Finite localic Galois theory toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON input file ('-' for stdin)")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--budget-families", type=int, default=site_mod.DEFAULT_MAX_FAMILIES)
    common.add_argument("--budget-stage", type=int, default=site_mod.DEFAULT_MAX_STAGE)
    common.add_argument("--budget-points", type=int, default=site_mod.DEFAULT_POINT_BUDGET)
    common.add_argument("--format", choices=("json", "dot", "text"))
    common.add_argument("--mode", choices=(site_mod.LITERAL, site_mod.MINIMAL))
    common.add_argument("--suite", action="append", default=[],
                        help="comma separated suite ids: " + ", ".join(SUITES))
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("points", parents=[common], help="enumerate the points of a site")
    sub.add_parser("saturate", parents=[common], help="covering relation with stage annotations")
    p = sub.add_parser("verify", parents=[common], help="run theorem suites")
    p.add_argument("suites", nargs="*", help="suite ids (same as --suite)")
    p = sub.add_parser("example", parents=[common], help="emit a built-in input as JSON")
    p.add_argument("kind", choices=("laut-set", "group", "field"))
    p.add_argument("args", nargs="*")
    p = sub.add_parser("export", parents=[common], help="render the input as DOT")
    p.add_argument("--what", choices=("base", "site", "diagram", "pointed"),
                   help="site: base or site (default); category: diagram (default), pointed or site")
    return ap


def _config(ns) -> RunConfig:
    suites = [s for chunk in ns.suite for s in chunk.split(",") if s]
    suites += list(getattr(ns, "suites", []) or [])
    cfg = RunConfig(ns.budget_families, ns.budget_stage, ns.budget_points, ns.mode, ns.format,
                    suites, ns.output)
    cfg.validate()
    return cfg


def run(ns) -> tuple[str, int]:
    cfg = _config(ns)
    if ns.command == "example":
        return io.dumps(example_doc(ns.kind, ns.args)), EXIT_OK
    doc = read_input(ns.input)
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object", where="$")
    if ns.command == "points":
        return cmd_points(doc, cfg)
    if ns.command == "saturate":
        return cmd_saturate(doc, cfg)
    if ns.command == "verify":
        return cmd_verify(doc, cfg)
    return cmd_export(doc, cfg, ns.what)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        text, status = run(ns)
    except UsageError as exc:
        print(f"locgal: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"locgal: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except LocgalError as exc:
        print(f"locgal: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status == EXIT_FAIL:
        print("locgal: a theorem check failed", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
