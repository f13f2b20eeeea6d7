"""Command-line interface.

    conicstab check "z11*z22 - z12^2" --space sym:2
    conicstab transform "z1*z2 - 1" --space vector:2 --spec "invert(i=1)" --audit
    conicstab support "z11^2 - z22^2" --space sym:2
    conicstab conjecture "..." --space sym:3 --start "z12*z13^2"
    conicstab detpoly --blocks 2,1 --term 0,0=1 --term 1,0=1 --term 2,0=1
    conicstab corpus

Indices on the command line are 1-based.  Exit codes: 0 the command ran,
1 usage or parse error, 2 a licensed audit failed (clean input, verified
counterexample on the output) or a corpus entry failed.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time

import numpy as np

from . import __version__
from .combinat import (STEP_KINDS, DetBlockSpec, conjecture_search, det_support_analysis,
                       sym_support_report, validate_path, vector_support_report)
from .corpus import run_corpus
from .polycore import Polynomial
from .preservers import KINDS, PreconditionError, PreserverSpec, audit, apply, default_cone
from .stabcheck import INTERIOR_MARGIN, RESIDUAL_REL, as_cone, check_stability
from .symmat import SymVarSpace
from .textio import PolynomialSyntaxError, Space, format_polynomial, parse_polynomial

SCHEMA = "conicstab.result/1"

EXIT_OK, EXIT_USAGE, EXIT_AUDIT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- transform mini-language ---------------------------------------------------------

_INDEX_KEYS = {"i", "j"}
_INDEX_LIST_KEYS = {"sigma", "pi", "J"}


def _split_args(body: str) -> list[str]:
    parts, depth, cur, quote = [], 0, [], None
    for ch in body:
        if quote:
            cur.append(ch)
            if ch == quote:
                quote = None
            continue
        if ch in "\"'":
            quote = ch
        elif ch in "[{(":
            depth += 1
        elif ch in "]})":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return parts


def _complex(text) -> complex:
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float)):
        return complex(text)
    return complex(str(text).replace(" ", "").replace("i", "j"))


def parse_transform(text: str, space: Space) -> PreserverSpec:
    """``kind(key=value, ...)`` with JSON values and 1-based indices."""
    m = re.fullmatch(r"\s*([A-Za-z_]+)\s*(?:\((.*)\))?\s*", text, re.S)
    if not m:
        raise UsageError(f"cannot parse transform {text!r}; expected kind(key=value, ...)")
    kind, body = m.group(1), m.group(2) or ""
    if kind not in KINDS:
        raise UsageError(f"unknown transform {kind!r}; choose from {', '.join(KINDS)}")
    params = {}
    for part in _split_args(body):
        if "=" not in part:
            raise UsageError(f"transform argument {part.strip()!r} is not key=value")
        key, raw = (s.strip() for s in part.split("=", 1))
        try:
            val = json.loads(raw)
        except json.JSONDecodeError:
            val = raw.strip("\"'")
        params[key] = val
    for key in _INDEX_KEYS & params.keys():
        params[key] = int(params[key]) - 1
    for key in _INDEX_LIST_KEYS & params.keys():
        params[key] = [int(x) - 1 for x in params[key]]
    if "blocks" in params:
        params["blocks"] = [[int(x) - 1 for x in b] for b in params["blocks"]]
    if "b" in params:
        params["b"] = _complex(params["b"])
    if "a" in params and kind == "affine":
        params["a"] = [_complex(x) for x in params["a"]]
    if "c" in params:
        params["c"] = _complex(params["c"])
    if "g" in params:
        params["g"] = parse_polynomial(str(params["g"]), space)
    return PreserverSpec(kind, params)


# -- helpers -----------------------------------------------------------------------------

def _json_default(o):
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"not serialisable: {type(o)}")


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or _flat_list(x) for x in v)


def _scalar(v) -> str:
    return json.dumps(v, default=_json_default) if not isinstance(v, str) else v


def _space(args, default_text: str | None = None) -> Space:
    if args.space:
        return Space.parse(args.space)
    raise UsageError("--space vector:N or sym:N is required")


def _poly(args, text: str) -> tuple[Polynomial, Space]:
    space = _space(args)
    return parse_polynomial(text, space), space


def _tols(args) -> dict:
    return {"tol_root": args.tol_root, "tol_interior": args.tol_interior}


# -- commands --------------------------------------------------------------------------------

def cmd_check(args):
    f, space = _poly(args, args.poly)
    cone = as_cone(args.cone or ("psd" if space.sym else "orthant"), f, space.sym)
    v = check_stability(f, cone, trials=args.trials, seed=args.seed, **_tols(args))
    return {"polynomial": format_polynomial(f, space.sym), "verdict": v.to_dict()}, EXIT_OK


def cmd_transform(args):
    f, space = _poly(args, args.poly)
    spec = parse_transform(args.spec, space)
    if not args.audit:
        out = apply(spec, f)
        out_sym = space.sym and spec.kind != "psd_diag"
        return {"transform": args.spec.strip(), "input": format_polynomial(f, space.sym),
                "output": format_polynomial(out, out_sym)}, EXIT_OK
    K = as_cone(args.cone, f, space.sym) if args.cone else default_cone(f, spec.is_psd)
    rep = audit(spec, f, K, trials=args.trials, seed=args.seed, **_tols(args))
    out_sym = space.sym and spec.kind != "psd_diag"
    doc = {"input": format_polynomial(f, space.sym), "audit": rep.to_dict(out_sym)}
    doc["audit"]["transform"] = args.spec.strip()
    return doc, EXIT_OK if rep.agreement else EXIT_AUDIT


def cmd_support(args):
    f, space = _poly(args, args.poly)
    rep = sym_support_report(f) if space.sym else vector_support_report(f)
    return {"polynomial": format_polynomial(f, space.sym), "report": rep}, EXIT_OK


def cmd_conjecture(args):
    f, space = _poly(args, args.poly)
    if not space.sym:
        raise UsageError("conjecture needs a symmetric space")
    kinds = tuple(k.strip() for k in args.kinds.split(",")) if args.kinds else STEP_KINDS
    bad = set(kinds) - set(STEP_KINDS)
    if bad:
        raise UsageError(f"unknown step kinds {sorted(bad)}")
    sp = SymVarSpace(space.n)
    if args.start:
        start = parse_polynomial(args.start, space)
        if len(start) != 1:
            raise UsageError("--start must be a single monomial")
        starts = [next(iter(start.support()))]
    else:
        starts = sorted(f.support())
    results = []
    for b in starts:
        r = conjecture_search(f, b, kinds)
        d = r.to_dict(sp)
        d["valid"] = bool(r.found and validate_path(f, r.path))
        results.append(d)
    return {"polynomial": format_polynomial(f, True), "kinds": list(kinds),
            "all_found": all(r["found"] for r in results), "searches": results}, EXIT_OK


def _parse_term(text: str) -> tuple[tuple, complex]:
    if "=" not in text:
        raise UsageError(f"term {text!r} must look like a1,a2,...=coefficient")
    exps, coeff = text.split("=", 1)
    try:
        return tuple(int(x) for x in exps.split(",")), _complex(coeff.strip())
    except ValueError as exc:
        raise UsageError(f"bad term {text!r}: {exc}") from None


def cmd_detpoly(args):
    blocks = tuple(int(x) for x in args.blocks.split(","))
    coeffs = dict(_parse_term(t) for t in args.term)
    spec = DetBlockSpec(blocks, coeffs)
    rep = det_support_analysis(spec)
    doc = {"blocks": list(blocks), "report": rep.to_dict()}
    if args.check:
        f = spec.polynomial()
        doc["polynomial"] = format_polynomial(f, True)
        doc["verdict"] = check_stability(f, default_cone(f, True), trials=args.trials, seed=args.seed,
                                         **_tols(args)).to_dict()
    return doc, EXIT_OK


def cmd_corpus(args):
    rows = run_corpus(args.trials, args.seed, args.key or None)
    failed = [r["key"] for r in rows if not r["passed"]]
    doc = {"entries": rows, "passed": len(rows) - len(failed), "failed": failed}
    return doc, EXIT_OK if not failed else EXIT_AUDIT


COMMANDS = {"check": cmd_check, "transform": cmd_transform, "support": cmd_support,
            "conjecture": cmd_conjecture, "detpoly": cmd_detpoly, "corpus": cmd_corpus}


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subcommand copies suppress their defaults so flags given before the command survive
    def dflt(v):
        return argparse.SUPPRESS if suppress else v

    g = parser.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=dflt(0), help="base seed for all randomised trials")
    g.add_argument("--trials", type=int, default=dflt(200), help="falsifier trials per polynomial")
    g.add_argument("--tol-root", type=float, default=dflt(RESIDUAL_REL),
                   help="relative residual tolerance for witnesses")
    g.add_argument("--tol-interior", type=float, default=dflt(INTERIOR_MARGIN),
                   help="interior margin for witnesses")
    g.add_argument("--space", default=dflt(None), help="variable space: vector:N or sym:N")
    g.add_argument("--out", choices=("json", "text"), default=dflt("json"))
    g.add_argument("--out-file", default=dflt(None), help="write the result document here instead of stdout")
    g.add_argument("--timing", action="store_true", default=dflt(False),
                   help="include wall-clock timing in the document")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)

    p = _Parser(prog="conicstab", description="Conic and psd stability toolkit.")
    _global_options(p, suppress=False)
    p.add_argument("--version", action="version", version=f"conicstab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="falsify stability on a cone")
    c.add_argument("poly")
    c.add_argument("--cone", help="orthant | psd | poly:[v1;v2;...] (default: psd for sym spaces)")

    t = sub.add_parser("transform", parents=[common], help="apply a preserver, optionally audited")
    t.add_argument("poly")
    t.add_argument("--spec", required=True, help='e.g. "psd_dir_derivative(V=[[1,1],[1,1]])"')
    t.add_argument("--audit", action="store_true")
    t.add_argument("--cone")

    s = sub.add_parser("support", parents=[common], help="support combinatorics and classifiers")
    s.add_argument("poly")

    q = sub.add_parser("conjecture", parents=[common], help="step search to a diagonal monomial")
    q.add_argument("poly")
    q.add_argument("--start", help="start monomial (default: every monomial of the support)")
    q.add_argument("--kinds", help="comma list from linear,double,transposition")

    d = sub.add_parser("detpoly", parents=[common], help="determinantal-support analysis")
    d.add_argument("--blocks", required=True, help="block sizes, e.g. 2,1")
    d.add_argument("--term", action="append", default=[], required=True,
                   help="determinantal exponent and coefficient, e.g. 1,0=2 (repeatable)")
    d.add_argument("--check", action="store_true", help="also run the psd falsifier on the polynomial")

    k = sub.add_parser("corpus", parents=[common], help="run the built-in example corpus")
    k.add_argument("--key", action="append", help="run only this entry (repeatable)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        result, code = COMMANDS[args.command](args)
    except (UsageError, PolynomialSyntaxError, PreconditionError, ValueError, IndexError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"conicstab {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    doc = {"schema": SCHEMA, "command": args.command,
           "inputs": {"argv": list(sys.argv[1:] if argv is None else argv), "seed": args.seed,
                      "trials": args.trials, "space": args.space},
           "result": result, "exit_code": code}
    if args.timing:
        doc["timing_seconds"] = time.perf_counter() - start
    if args.out == "json":
        text = json.dumps(doc, indent=2, sort_keys=False, default=_json_default)
    else:
        text = "\n".join(_render_text(json.loads(json.dumps(doc, default=_json_default))))
    if args.out_file:
        with open(args.out_file, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
