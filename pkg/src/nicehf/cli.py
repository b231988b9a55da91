"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 computation refused, 3 internal
invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import __version__
from .contact import contact_class, contact_cycle_check, loss_class
from .diagram import PointedDiagram, dump_diagram, parse_diagram
from .domains import extremely_weak_admissibility, strong_admissibility, weak_admissibility
from .errors import ComputationRefused, DiagramSyntaxError, InternalInvariantFailure, NiceHFError, \
    ValidationError
from .floer import differential, hf_hat, is_nice
from .generators import generators_of, partition_spinc
from .knot import hfk_hat, knot_differential, knot_trace
from .moves import collapse_bigon, destabilize, finger_move, stabilize

REPORT_FORMAT = "nicehf-report"
REPORT_VERSION = 1
CONVENTIONS = {
    "field": "F2",
    "orientation": "regions lie to the left of their boundary cycles",
    "maslov_grading": "relative; the first generator of each class has grading 0, taken mod delta",
}


def corpus_dir() -> Path:
    return Path(str(resources.files("nicehf") / "corpus"))


def corpus_names() -> List[str]:
    return sorted(p.stem for p in corpus_dir().glob("*.json"))


def oracle_path(name: str) -> Path:
    return corpus_dir() / "oracles" / f"{name}.json"


def resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    name = p.stem if p.suffix == ".json" else p.name
    cand = corpus_dir() / f"{name}.json"
    if cand.exists():
        return cand
    raise FileNotFoundError(path)


def load(path: str) -> PointedDiagram:
    return parse_diagram(resolve(path).read_text(encoding="utf-8"))


def _matrix_rows(names, mat) -> List[dict]:
    return [{"generator": n, "boundary": [names[i] for i in np.flatnonzero(mat[:, j])]}
            for j, n in enumerate(names)]


# -- subcommands ------------------------------------------------------------------


def cmd_validate(args):
    d = load(args.file)
    return {"valid": True, "genus": d.genus, "points": len(d.points), "regions": len(d.regions),
            "euler_sum": d.euler_sum()}


def cmd_info(args):
    d = load(args.file)
    part = partition_spinc(d)
    return {
        "genus": d.genus,
        "basepoint_z": d.basepoint_z,
        "basepoint_w": d.basepoint_w,
        "generators": [x.name for x in generators_of(d)],
        "regions": [{"name": r.name, "genus": r.genus, "cycles": len(r.boundary), "corners": r.corners,
                     "euler_measure": str(r.euler_measure)} for r in d.regions],
        "h1": str(part.h1),
        "spinc_classes": [{"index": c.index, "size": len(c.generators), "generators": list(c.names)}
                          for c in part.classes],
    }


def cmd_admissible(args):
    d = load(args.file)
    part = partition_spinc(d)
    knot = args.knot
    if knot and d.basepoint_w is None:
        raise ComputationRefused("diagram has no second basepoint", code="NOT_DOUBLY_POINTED")
    check = extremely_weak_admissibility if knot else weak_admissibility
    rows = []
    for c in part.classes or (None,):
        res = check(d, c)
        row = {"class": None if c is None else c.index, "weak": bool(res),
               "witness": res.witness_dict()}
        if args.strong:
            v = strong_admissibility(d, c, args.bound)
            row["strong"] = {"status": v.status, "bound": v.bound, "witness": v.witness_dict(),
                             "maslov": v.maslov}
        rows.append(row)
    return {"kind": "extremely_weak" if knot else "weak", "classes": rows,
            "admissible": all(r["weak"] for r in rows)}


def cmd_nice(args):
    d = load(args.file)
    rep = is_nice(d, knot=args.knot)
    return {"nice": rep.nice, "offending": list(rep.offending), "exempt": list(rep.exempt)}


def cmd_diff(args):
    d = load(args.file)
    fc = knot_differential(d) if args.knot else differential(d)
    return {"generators": list(fc.names), "differential": _matrix_rows(fc.names, fc.matrix),
            "classes": [{"index": c.spinc.index, "delta": c.delta,
                         "grading": dict(zip(c.complex.basis, c.complex.grading))}
                        for c in fc.classes]}


def cmd_homology(args):
    d = load(args.file)
    return hf_hat(d).as_dict()


def cmd_knot(args):
    d = load(args.file)
    out = hfk_hat(d).as_dict()
    try:
        out["trace"] = knot_trace(d).as_dict()
    except NiceHFError as exc:
        out["trace"] = exc.as_dict()
    return out


def _contact_part(d, knot):
    if not contact_cycle_check(d, knot=knot):
        return {"cycle": False}
    return {"cycle": True, **(loss_class(d) if knot else contact_class(d)).as_dict()}


def cmd_contact(args):
    d = load(args.file)
    if d.basepoint_w is None:
        return {"contact": _contact_part(d, False)}
    # the hat complex may be refused (w sits in a non-nice region) while the
    # knot complex is fine, so each part reports on its own
    out = {}
    for key, knot in (("contact", False), ("loss", True)):
        try:
            out[key] = _contact_part(d, knot)
        except ComputationRefused as exc:
            out[key] = {"refused": exc.as_dict()}
    return out


def cmd_move(args):
    d = load(args.file)
    if args.move == "stabilize":
        new = stabilize(d, args.region)
    elif args.move == "destabilize":
        new = destabilize(d, args.index)
    elif args.move == "finger":
        s = (args.s_curve, args.s_segment) + ((True,) if args.s_reversed else ())
        t = (args.t_curve, args.t_segment) + ((True,) if args.t_reversed else ())
        new = finger_move(d, s, args.region, t)
    else:
        new = collapse_bigon(d, args.region)
    text = dump_diagram(new, indent=1)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    return {"move": args.move, "genus": new.genus, "points": len(new.points),
            "regions": len(new.regions), "output": args.output}


def cmd_corpus(args):
    return {"corpus": corpus_names(), "directory": str(corpus_dir())}


# -- plumbing ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a versioned JSON report")
    p = argparse.ArgumentParser(prog="nicehf", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"nicehf {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, file=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if file:
            sp.add_argument("file")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check a diagram document")
    add("info", cmd_info, "generators, regions, H_1 and Spin^c census")
    sp = add("admissible", cmd_admissible, "weak (and optionally strong) admissibility")
    sp.add_argument("--strong", action="store_true")
    sp.add_argument("--bound", type=int, default=10)
    sp.add_argument("--knot", action="store_true", help="extremely weak admissibility")
    sp = add("nice", cmd_nice, "niceness census")
    sp.add_argument("--knot", action="store_true")
    sp = add("diff", cmd_diff, "the differential")
    sp.add_argument("--knot", action="store_true")
    add("homology", cmd_homology, "hat Heegaard Floer homology")
    add("knot", cmd_knot, "hat knot Floer homology")
    add("contact", cmd_contact, "contact and LOSS classes")
    sp = add("move", cmd_move, "apply a diagram move")
    moves = sp.add_subparsers(dest="move", required=True)
    m = moves.add_parser("stabilize")
    m.add_argument("region")
    m = moves.add_parser("destabilize")
    m.add_argument("index", type=int)
    m = moves.add_parser("finger")
    m.add_argument("s_curve", type=int)
    m.add_argument("s_segment", type=int)
    m.add_argument("region")
    m.add_argument("t_curve", type=int)
    m.add_argument("t_segment", type=int)
    m.add_argument("--s-reversed", action="store_true", help="use the reversed side of the alpha segment")
    m.add_argument("--t-reversed", action="store_true", help="use the reversed side of the beta segment")
    m = moves.add_parser("collapse")
    m.add_argument("region")
    for mp in moves.choices.values():
        mp.add_argument("-o", "--output")
    sp.add_argument("-o", "--output", dest="output_outer")
    sp = sub.add_parser("corpus", parents=[common], help="bundled example diagrams")
    sp.add_argument("action", choices=["list"])
    sp.set_defaults(func=cmd_corpus)
    return p


def _human(command: str, body: dict) -> str:
    lines = []

    def emit(key, val, indent=0):
        pad = "  " * indent
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            for k, v in val.items():
                emit(k, v, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(f"{pad}  -")
                for k, v in item.items():
                    emit(k, v, indent + 2)
        else:
            lines.append(f"{pad}{key}: {val}")

    for k, v in body.items():
        emit(k, v)
    return "\n".join(lines)


def _classify(exc: BaseException) -> int:
    if isinstance(exc, InternalInvariantFailure):
        return 3
    if isinstance(exc, ComputationRefused):
        return 2
    if isinstance(exc, (ValidationError, DiagramSyntaxError, FileNotFoundError)):
        return 1
    if isinstance(exc, NiceHFError):
        return 1
    return 3


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "output", None) is None and getattr(args, "output_outer", None):
        args.output = args.output_outer
    report = {"format": REPORT_FORMAT, "version": REPORT_VERSION, "command": args.command}
    try:
        body = args.func(args)
        code = 0
        report.update({"ok": True, "conventions": CONVENTIONS, "result": body})
    except (NiceHFError, FileNotFoundError) as exc:
        code = _classify(exc)
        err = exc.as_dict() if isinstance(exc, NiceHFError) else {"code": "FILE_NOT_FOUND",
                                                                   "message": str(exc)}
        report.update({"ok": False, "error": err, "exit_code": code})
    if args.json:
        out.write(json.dumps(report, indent=2) + "\n")
    elif report["ok"]:
        out.write(_human(args.command, report["result"]) + "\n")
    else:
        err = report["error"]
        details = {k: v for k, v in err.items() if k not in ("code", "message")}
        msg = f"error [{err['code']}]: {err['message']}"
        if details:
            msg += "\n" + _human(args.command, details)
        out.write(msg + "\n")
    return code


def main():  # pragma: no cover - console entry point
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
