"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 parse or validation error, 3 budget
exceeded, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .classes import (DEFAULT_MAX_NODES, attractor_report, export, extended_class,
                      key_str, rauzy_class)
from .errors import GenRauzyError, NodeBudgetExceeded, ReducibleError
from .genperm import canonical, parse
from .induct import iterate, lengths_from_list, make
from .reduce import (find_reduction, is_dynamically_irreducible, is_strongly_irreducible,
                     random_admissible_lengths)
from .strata import signature
from .suspend import find_suspension, make_suitable, polygon

SCHEMA_VERSIONS = {"check": 1, "reduce": 1, "stratum": 1, "class": 1,
                   "attractor": 1, "induct": 1, "suspend": 1}

EXIT_USAGE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=False) + "\n")


def _read_perm(args):
    if args.file:
        with open(args.file) as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise GenRauzyError(f"{args.file}: no permutation found")
        text = lines[0]
    elif args.perm:
        text = args.perm
    else:
        raise _UsageError("a permutation argument or --file is required")
    return parse(text)


class _UsageError(Exception):
    pass


def parse_lambda(p, text):
    """Comma separated rationals in first-occurrence letter order."""
    try:
        vals = [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as e:
        raise GenRauzyError(f"bad length list: {e}") from None
    return lengths_from_list(p, vals)


def _random_admissible(p, seed):
    try:
        return random_admissible_lengths(p, random.Random(seed))
    except ValueError as e:
        raise GenRauzyError(str(e)) from None


def _stratum_or_none(p):
    try:
        return signature(p)
    except ReducibleError:
        return None


# ---------------------------------------------------------------- subcommands

def cmd_check(args, out):
    p = _read_perm(args)
    wit = find_reduction(p)
    irr = wit is None
    res = {"pi": str(p), "canonical": str(canonical(p)), "d": p.d, "type": list(p.type),
           "irreducible": irr,
           "strongly_irreducible": is_strongly_irreducible(p),
           "dynamically_irreducible": irr or is_dynamically_irreducible(p)[0]}
    sig = signature(p) if irr else None
    res["stratum"] = str(sig) if sig else None
    res["signature"] = sig.to_json() if sig else None
    _emit(res, out)
    return 0


def cmd_reduce(args, out):
    p = _read_perm(args)
    wit = find_reduction(p)
    _emit({"pi": str(p), "irreducible": wit is None,
           "witness": wit.to_json() if wit else None}, out)
    return 0


def cmd_stratum(args, out):
    p = _read_perm(args)
    sig = signature(p, check=args.check)
    res = {"pi": str(p), "stratum": str(sig)}
    res.update(sig.to_json())
    _emit(res, out)
    return 0


def _class_summary(g, sig):
    return {"seed": key_str(g.seed), "variant": g.variant, "node_count": len(g),
            "closed": g.closed, "stratum": str(sig) if sig else None}


def _run_class(args, out, build):
    p = _read_perm(args)
    keep = not args.count_only
    try:
        g = build(p, keep)
    except NodeBudgetExceeded as e:
        if e.graph is not None:
            _emit(_class_summary(e.graph, _stratum_or_none(p)), out)
        raise
    if args.count_only:
        _emit(_class_summary(g, _stratum_or_none(p)), out)
    else:
        data = export(g, args.format)
        out.write(data.decode())
    return 0


def cmd_class(args, out):
    return _run_class(args, out, lambda p, keep: rauzy_class(
        p, max_nodes=args.max_nodes, keep_edges=keep, parallel=args.parallel))


def cmd_xclass(args, out):
    return _run_class(args, out, lambda p, keep: extended_class(
        p, variant=args.variant, max_nodes=args.max_nodes, keep_edges=keep,
        parallel=args.parallel))


def cmd_attractor(args, out):
    p = _read_perm(args)
    rep = attractor_report(p, mode=args.mode, max_nodes=args.max_nodes, parallel=args.parallel)
    _emit(rep.to_json(with_nodes=args.nodes), out)
    return 0


def cmd_induct(args, out):
    p = _read_perm(args)
    if args.lam and args.seed is not None:
        raise _UsageError("--lambda and --seed are exclusive")
    if args.lam:
        lam = parse_lambda(p, args.lam)
    else:
        lam = _random_admissible(p, 0 if args.seed is None else args.seed)
    T = make(p, lam)
    trace = iterate(T, max_steps=args.steps)
    out.write(trace.to_jsonl())
    _emit({"termination": trace.termination.value, "steps": len(trace.steps),
           "first_irreducible_index": trace.first_irreducible_index,
           "lengths": {a: str(v) for a, v in T.lam.items()}}, out)
    return 0


def cmd_suspend(args, out):
    p = _read_perm(args)
    lam = parse_lambda(p, args.lam) if args.lam else None
    data = find_suspension(p, lam)
    if data is None:
        out.write("none\n")
        return 0
    if args.polygon:
        data = make_suitable(p, data)
        _emit({"zeta": data.to_json(), "polygon": polygon(p, data).to_json()}, out)
    else:
        _emit(data.to_json(), out)
    return 0


def build_parser():
    ap = _Parser(prog="genrauzy", description="Generalized permutations, Rauzy classes and strata.",
                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version",
                    version=f"genrauzy {__version__} (schemas: "
                            + ", ".join(f"{k}={v}" for k, v in SCHEMA_VERSIONS.items()) + ")")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def perm_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("perm", nargs="?", help='permutation, e.g. "A B A / B C C"')
        sp.add_argument("-f", "--file", help="read the permutation from a file (first non-comment line)")
        return sp

    sp = perm_cmd("check", "validate and report irreducibility")
    sp.set_defaults(func=cmd_check)
    sp = perm_cmd("reduce", "decomposition witness as JSON")
    sp.set_defaults(func=cmd_reduce)
    sp = perm_cmd("stratum", "stratum signature as JSON")
    sp.add_argument("--check", action="store_true", help="cross-check angles in floating point")
    sp.set_defaults(func=cmd_stratum)

    for name, func, help_ in (("class", cmd_class, "Rauzy class"),
                              ("xclass", cmd_xclass, "extended Rauzy class")):
        sp = perm_cmd(name, help_)
        if name == "xclass":
            sp.add_argument("--variant", choices=("weak", "full"), default="weak")
        sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
        sp.add_argument("--format", choices=("dot", "json"), default="json")
        sp.add_argument("--count-only", action="store_true")
        sp.add_argument("--parallel", type=int, default=None, metavar="K")
        sp.set_defaults(func=func)

    sp = perm_cmd("attractor", "partition of the full Rauzy diagram component")
    sp.add_argument("--mode", choices=("forward", "undirected"), default="forward")
    sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    sp.add_argument("--parallel", type=int, default=None, metavar="K")
    sp.add_argument("--nodes", action="store_true", help="list the transient nodes")
    sp.set_defaults(func=cmd_attractor)

    sp = perm_cmd("induct", "Rauzy-Veech induction trace (JSON lines)")
    sp.add_argument("--steps", type=int, default=10000)
    sp.add_argument("--lambda", dest="lam", help="lengths a/b,... in first-occurrence letter order")
    sp.add_argument("--seed", type=int, default=None, help="random admissible lengths from this seed")
    sp.set_defaults(func=cmd_induct)

    sp = perm_cmd("suspend", "suspension data as JSON, or none")
    sp.add_argument("--lambda", dest="lam", help="lengths a/b,... in first-occurrence letter order")
    sp.add_argument("--polygon", action="store_true", help="also emit a suitable polygon")
    sp.set_defaults(func=cmd_suspend)
    return ap


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    args = ap.parse_args(argv)
    if not getattr(args, "func", None):
        ap.print_usage(err)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except _UsageError as e:
        err.write(f"genrauzy: error: {e}\n")
        return EXIT_USAGE
    except GenRauzyError as e:
        err.write(f"genrauzy: {type(e).__name__}: {e}\n")
        return e.exit_code
    except (ValueError, OSError) as e:
        err.write(f"genrauzy: {e}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
