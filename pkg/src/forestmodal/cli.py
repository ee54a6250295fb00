"""Command-line front end.

Exit status: 0 success or pass, 1 a checked property fails or a
counterexample was found, 2 usage, parse or budget error. Documents go to
standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import GodelAlgebra, validate_godel
from .documents import ParseError, dumps, emit, export_dot, load
from .duality import _preserves, downset_algebra, spectrum, stone_indices
from .errors import BudgetError, ForestModalError, PreconditionError, StructureError, TheoremViolation
from .frames import (
    ONE_REL_CLASSES,
    OneRelFrame,
    TwoRelFrame,
    classify_one_rel,
    classify_two_rel,
    complex_one_rel_checks,
    one_rel_transform_checks,
    prime_transform,
    second_transform,
)
from .modal import GAO, classify, complex_gao, induced_relations, validate_gao, verify_representation
from .order import Forest
from .search import (
    Deadline,
    enum_forests,
    enum_gaos,
    enum_one_rel_frames,
    enum_two_rel_frames,
    find_counterexample,
    resolve_theorem,
    theorem_names,
    verify_theorem,
    THEOREMS,
)


class UsageError(Exception):
    pass


def _out(doc) -> None:
    sys.stdout.write(dumps(doc) + "\n")


def _err(msg: str) -> None:
    sys.stderr.write(msg.rstrip("\n") + "\n")


def _expect(obj, *types, what: str):
    if not isinstance(obj, types):
        names = " or ".join(t.__name__ for t in types)
        raise UsageError(f"{what} needs a {names} document, got {type(obj).__name__}")
    return obj


def _induced_frame(g: GAO) -> TwoRelFrame:
    rb, rd, _ = induced_relations(g)
    return TwoRelFrame(spectrum(g.algebra), rb, rd)


def cmd_validate(args) -> int:
    obj = load(args.input)
    rep = None
    if isinstance(obj, GodelAlgebra):
        rep = validate_godel(obj)
    elif isinstance(obj, GAO):
        rep = validate_godel(obj.algebra) or validate_gao(obj)
    if rep is None:
        _out({"valid": True, "type": emit(obj)["type"]})
        return 0
    _err(f"invalid: {rep.kind} law fails at {', '.join(rep.witness)}")
    _out({"valid": False, "violation": rep.to_json()})
    return 1


def _require_valid(obj):
    alg = obj.algebra if isinstance(obj, GAO) else obj
    rep = validate_godel(alg)
    if rep is None and isinstance(obj, GAO):
        rep = validate_gao(obj)
    if rep is not None:
        raise _Invalid(rep)


class _Invalid(Exception):
    def __init__(self, report):
        self.report = report


def _auto_class(fr: OneRelFrame) -> str:
    flags = classify_one_rel(fr)
    for cls in ("FSD", "CJ", "FS", "W"):
        if flags.classes[cls].holds:
            return cls
    raise PreconditionError("frame is in none of the classes FSD, CJ, FS, W")


def cmd_dual(args) -> int:
    obj = load(args.input)
    if isinstance(obj, GodelAlgebra):
        _require_valid(obj)
        _out(emit(spectrum(obj)))
    elif isinstance(obj, Forest):
        _out(emit(downset_algebra(obj)))
    elif isinstance(obj, GAO):
        _require_valid(obj)
        _out(emit(_induced_frame(obj)))
    elif isinstance(obj, TwoRelFrame):
        req = "forest" if classify_two_rel(obj).classes["forest"].holds else "P"
        _out(emit(complex_gao(obj, require=req)))
    else:
        cls = args.cls or _auto_class(obj)
        g, checks = complex_one_rel_checks(obj, cls)
        if g is None:
            _err(f"complex algebra undefined: {checks.get('detail')}")
            return 1
        _out(emit(g))
    return 0


def cmd_represent(args) -> int:
    obj = _expect(load(args.input), GodelAlgebra, GAO, what="represent")
    _require_valid(obj)
    if isinstance(obj, GodelAlgebra):
        image = downset_algebra(spectrum(obj))
        ok = _preserves(obj, image, stone_indices(obj))
        doc = {"forest": emit(spectrum(obj)), "stone_map": list(stone_indices(obj))}
        if args.verify:
            doc["verified"] = {"ok": ok, "checks": {"stone-isomorphism": ok}}
    else:
        doc = {"frame": emit(_induced_frame(obj))}
        ok = True
        if args.verify:
            rep = verify_representation(obj)
            ok = rep.ok
            doc["verified"] = rep.to_json()
    _out(doc)
    if not ok:
        _err("representation check failed")
        return 1
    return 0


def cmd_classify(args) -> int:
    obj = _expect(load(args.input), GAO, what="classify")
    rep = validate_godel(obj.algebra)
    if rep is not None:
        raise _Invalid(rep)
    _out(classify(obj).to_json())
    return 0


def cmd_frame_class(args) -> int:
    obj = _expect(load(args.input), TwoRelFrame, OneRelFrame, what="frame-class")
    flags = classify_two_rel(obj) if isinstance(obj, TwoRelFrame) else classify_one_rel(obj)
    _out(flags.to_json())
    return 0


def cmd_transform(args) -> int:
    obj = load(args.input)
    if args.kind in ("prime", "second"):
        fr = _expect(obj, TwoRelFrame, what=f"the {args.kind} transform")
        out = prime_transform(fr) if args.kind == "prime" else second_transform(fr)
        _out(emit(out))
        return 0
    fr = _expect(obj, OneRelFrame, what=f"the {args.kind} transform")
    out, checks = one_rel_transform_checks(fr, args.kind.upper())
    doc = emit(out)
    doc["checks"] = checks
    _out(doc)
    failed = [k for k, v in checks.items() if not v]
    if failed:
        _err("transform property fails: " + "; ".join(failed))
        return 1
    return 0


def cmd_complex(args) -> int:
    obj = _expect(load(args.input), TwoRelFrame, OneRelFrame, what="complex")
    if isinstance(obj, TwoRelFrame):
        req = args.cls or "forest"
        if req not in ("forest", "P"):
            raise UsageError("two-relation frames take --class forest or --class P")
        _out(emit(complex_gao(obj, require=req)))
        return 0
    cls = args.cls or _auto_class(obj)
    g, checks = complex_one_rel_checks(obj, cls)
    if g is None:
        _err(f"complex algebra undefined: {checks.get('detail')}")
        return 1
    doc = emit(g)
    doc["checks"] = checks
    _out(doc)
    failed = [k for k, v in checks.items() if v is False]
    if failed:
        _err("expected variety fails: " + "; ".join(failed))
        return 1
    return 0


def cmd_enumerate(args) -> int:
    deadline = Deadline(args.seconds)
    if args.what == "forests":
        stream = (emit(f) for f in enum_forests(args.n, max_nodes=args.max_nodes))
    elif args.what == "gaos":
        stream = (emit(g) for g in enum_gaos(args.n, max_nodes=args.max_nodes, deadline=deadline))
    else:

        def frames():
            for f in enum_forests(args.n, max_nodes=args.max_nodes):
                if args.cls:
                    yield from enum_one_rel_frames(f, args.cls, max_nodes=args.max_nodes, deadline=deadline)
                else:
                    yield from enum_two_rel_frames(
                        f, args.constraint, args.dedup, max_nodes=args.max_nodes, deadline=deadline
                    )

        stream = (emit(fr) for fr in frames())
    for doc in stream:
        sys.stdout.write(json.dumps(doc, ensure_ascii=False) + "\n")
    return 0


def cmd_verify(args) -> int:
    if args.list:
        _out({name: {"aliases": list(th.aliases), "statement": th.statement} for name, th in THEOREMS.items()})
        return 0
    if not args.theorem:
        raise UsageError("verify needs --theorem TAG (or --list)")
    try:
        resolve_theorem(args.theorem)
    except KeyError:
        raise UsageError(
            f"unknown theorem {args.theorem!r}; known: {', '.join(theorem_names())}"
        ) from None
    rep = verify_theorem(args.theorem, args.n, max_nodes=args.max_nodes, seconds=args.seconds)
    _out(rep)
    if not rep["passed"]:
        _err(f"{rep['theorem']}: {rep['failures']} of {rep['instances']} {rep['unit']} fail")
        return 1
    return 0


def cmd_hunt(args) -> int:
    try:
        rep = find_counterexample(args.property, args.n, max_nodes=args.max_nodes, seconds=args.seconds)
    except KeyError:
        raise UsageError(f"unknown property {args.property!r}") from None
    _out(rep)
    return 1 if rep["found"] else 0


def cmd_export_dot(args) -> int:
    obj = load(args.input)
    sys.stdout.write(export_dot(obj))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _err(f"{self.prog}: error: {message}")
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="forestmodal", description="Goedel algebras with operators and their forest frames.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="document path, '-' for stdin, or a shipped fixture name")
        return sp

    def budget(sp):
        sp.add_argument("--max-nodes", type=int, default=None, help="raise the node bound")
        sp.add_argument("--seconds", type=float, default=None, help="wall-clock cap")

    with_input("validate", "check the algebra and operator laws").set_defaults(func=cmd_validate)
    sp = with_input("dual", "algebra <-> forest, GAO <-> frame")
    sp.add_argument("--class", dest="cls", choices=["CJ", "FS", "FSD", "W"], default=None)
    sp.set_defaults(func=cmd_dual)
    sp = with_input("represent", "representation of an algebra or GAO on its prime filters")
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(func=cmd_represent)
    with_input("classify", "variety flags of a GAO").set_defaults(func=cmd_classify)
    with_input("frame-class", "class flags of a frame").set_defaults(func=cmd_frame_class)

    sp = with_input("transform", "frame transforms")
    g = sp.add_mutually_exclusive_group(required=True)
    for kind in ("prime", "second", "cj", "fs", "fsd", "w"):
        g.add_argument(f"--{kind}", dest="kind", action="store_const", const=kind)
    sp.set_defaults(func=cmd_transform)

    sp = with_input("complex", "complex GAO of a frame")
    sp.add_argument("--class", dest="cls", choices=["forest", "P", "CJ", "FS", "FSD", "W"], default=None)
    sp.set_defaults(func=cmd_complex)

    sp = sub.add_parser("enumerate", help="JSON lines of forests, frames or GAOs")
    g = sp.add_mutually_exclusive_group(required=True)
    for what in ("forests", "frames", "gaos"):
        g.add_argument(f"--{what}", dest="what", action="store_const", const=what)
    sp.add_argument("-n", type=int, required=True, help="nodes (forests, frames) or max nodes (gaos)")
    sp.add_argument("--constraint", choices=["forest", "OR", "P"], default="forest")
    sp.add_argument("--class", dest="cls", choices=list(ONE_REL_CLASSES), default=None)
    sp.add_argument("--dedup", choices=["none", "gao", "iso"], default="none")
    budget(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="check a catalogued statement exhaustively")
    sp.add_argument("--theorem", default=None)
    sp.add_argument("-n", type=int, default=3)
    sp.add_argument("--list", action="store_true")
    budget(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("hunt", help="search for a counterexample")
    sp.add_argument("--property", required=True)
    sp.add_argument("-n", type=int, default=3)
    budget(sp)
    sp.set_defaults(func=cmd_hunt)

    with_input("export-dot", "Graphviz DOT of a forest, frame or algebra").set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, BudgetError) as exc:
        _err(f"error: {exc}")
        return 2
    except _Invalid as exc:
        rep = exc.report
        _err(f"invalid: {rep.kind} law fails at {', '.join(rep.witness)}")
        return 2
    except (PreconditionError, TheoremViolation) as exc:
        _err(f"error: {exc}")
        return 1
    except (StructureError, ForestModalError) as exc:
        _err(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
