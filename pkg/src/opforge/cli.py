"""Command-line front end.

Exit codes: 0 when every certificate passes, 1 when a certificate fails,
2 when the input cannot be used.  Reports are deterministic: no timings,
sorted keys, and every report records its truncation bounds.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, debug
from .certificate import Certificate, _jsonable
from .complexes import ChainComplex
from .errors import OpforgeError, ParseError

COMMANDS = ("homology", "mc-check", "koszul-check", "bar", "cobar", "ce", "tangent-roundtrip", "selftest")
BUILTINS = "sl2, heisenberg3, abelian:N"


class InputError(Exception):
    """Anything wrong with the command line or input files (exit code 2)."""


# -- input -----------------------------------------------------------------------------------

def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_lie(source: str):
    """A Lie algebra from a builtin name or a JSON file; returns ``(g, weighted)``."""
    from .opcoop import abelian_lie, heisenberg3, lie_algebra_from_json, sl2

    if source == "sl2":
        return sl2(), False
    if source == "heisenberg3":
        return heisenberg3(), False
    if source.startswith("abelian:"):
        try:
            n = int(source.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad builtin {source!r}; expected abelian:N") from None
        if n < 1:
            raise InputError("abelian:N needs N >= 1")
        return abelian_lie(n), False
    obj = _read_json(source)
    if not isinstance(obj, dict):
        raise ParseError(f"{source}: expected a JSON object describing a Lie algebra")
    return lie_algebra_from_json(obj), "weights" in obj


def load_complex(source: str) -> ChainComplex:
    obj = _read_json(source)
    return ChainComplex.from_json(obj)


def parse_degrees(text: str | None):
    if text is None:
        return None
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise InputError(f"--degrees expects LO:HI, got {text!r}") from None
    if lo > hi:
        raise InputError(f"--degrees window {text} is empty")
    return lo, hi


def _window(table: dict, degrees) -> dict:
    if degrees is None:
        return dict(sorted(table.items()))
    lo, hi = degrees
    return {n: v for n, v in sorted(table.items()) if lo <= n <= hi}


# -- commands --------------------------------------------------------------------------------

def _morphism(args, V: ChainComplex | None):
    from .twisting import free_cofree_twist, kappa

    if args.morphism == "kappa":
        return kappa(max(args.max_arity, 2), verify=False)
    return free_cofree_twist(V or ChainComplex({0: 1}), args.max_weight, verify=False)


def cmd_homology(args):
    if not args.input:
        raise InputError("homology needs --input PATH (a chain complex)")
    X = load_complex(args.input)

    def run():
        result = {"dims": _window(X.dims, args.degrees), "homology": _window(X.homology(), args.degrees),
                  "euler": X.euler()}
        return [Certificate("d^2=0", True, {"degrees": len(X.dims)})], result
    return run


def cmd_mc_check(args):
    V = load_complex(args.input) if (args.input and args.morphism == "free-cofree") else None

    def run():
        from .twisting import is_twisting
        alpha = _morphism(args, V)
        N = args.max_arity if args.morphism == "kappa" else 1
        cert = is_twisting(alpha, N)
        return [cert], {"morphism": args.morphism}
    return run


def cmd_koszul_check(args):
    V = load_complex(args.input) if (args.input and args.morphism == "free-cofree") else None

    def run():
        from .twisting import koszul_check
        alpha = _morphism(args, V)
        if args.morphism == "kappa":
            cert = koszul_check(alpha, args.max_arity, jobs=args.jobs)
        else:
            cert = koszul_check(alpha, 1, max_weight=args.max_weight, jobs=args.jobs)
        return [cert], {"morphism": args.morphism}
    return run


def _lie_input(args):
    if not args.input:
        raise InputError(f"{args.command} needs --input ({BUILTINS}, or a JSON file)")
    return load_lie(args.input)


def cmd_bar(args):
    g, _ = _lie_input(args)

    def run():
        from .barcobar import _kappa, bar
        B = bar(g, _kappa(args.max_weight), args.max_weight)
        gr = {w: _window(H, args.degrees) for w, H in B.gr_homology().items()}
        result = {"algebra": g.name, "weight_dims": B.weight_dims(), "homology": _window(B.homology(), args.degrees),
                  "gr_homology": gr, "euler": B.euler()}
        return [B.check()], result
    return run


def cmd_cobar(args):
    g, weighted = _lie_input(args)

    def run():
        from .barcobar import _kappa, bar, cobar, cobar_bar_check
        alpha = _kappa(args.max_weight)
        B = bar(g, alpha, args.max_weight)
        Om = cobar(B.coalgebra(weights="algebra" if weighted else "arity"), alpha, args.max_weight)
        certs = [Om.check()]
        if weighted:
            certs.append(cobar_bar_check(g, args.max_weight))
        result = {"algebra": g.name, "weight_dims": Om.weight_dims(),
                  "homology": _window(Om.homology(), args.degrees), "counit_checked": weighted}
        return certs, result
    return run


def cmd_ce(args):
    g, _ = _lie_input(args)

    def run():
        from .barcobar import ce_algebra, ce_chains
        # ungraded: exterior powers stop at dim g; graded inputs are truncated at --max-weight
        even = all(g.degree(0, i) % 2 == 0 for i in range(g.dim(0)))
        N = max(g.dim(0), 1) if even else args.max_weight
        chains = ce_chains(g, N)
        Hc = chains.homology()
        A = ce_algebra(g, N)
        Hco = A.complex().homology()
        top = max((k for k, v in Hc.items() if v), default=0)
        betti = [Hc.get(k, 0) for k in range(top + 1)]
        # cochains sit in nonpositive homological degree; H^n pairs with H_n
        dual_ok = all(Hco.get(-k, 0) == Hc.get(k, 0) for k in set(Hc) | {-k for k in Hco})
        cert = Certificate("ce-duality", dual_ok, {"chains": Hc, "cochains": Hco})
        result = {"algebra": g.name, "chain_dims": _window(chains.dims, args.degrees),
                  "homology": _window(Hc, args.degrees), "cochain_algebra_dim": A.n,
                  "ce_weight": N}
        if even:
            result["betti"] = betti
        return [cert], result
    return run


def cmd_tangent_roundtrip(args):
    g, _ = _lie_input(args)

    def run():
        from .tangent import dk_unit_check
        cert = dk_unit_check(g)
        return [cert], {"algebra": g.name}
    return run


def cmd_selftest(args):
    from . import selftest
    only = None
    if args.only:
        try:
            only = sorted({int(x) for x in args.only.split(",")})
        except ValueError:
            raise InputError(f"--only expects a comma-separated list of criteria, got {args.only!r}") from None
        bad = [k for k in only if k not in selftest.CRITERIA]
        if bad:
            raise InputError(f"no acceptance criterion {bad[0]}; choose 1..{len(selftest.CRITERIA)}")

    def run():
        res = selftest.run(only=only, jobs=args.jobs)
        certs = []
        for k, c in res.items():
            certs.append(Certificate(f"{k}. {selftest.CRITERIA[k][0]}", c.ok, c.details, c.where))
        return certs, {"criteria": {k: c.ok for k, c in res.items()}}
    return run


HANDLERS = {
    "homology": cmd_homology,
    "mc-check": cmd_mc_check,
    "koszul-check": cmd_koszul_check,
    "bar": cmd_bar,
    "cobar": cmd_cobar,
    "ce": cmd_ce,
    "tangent-roundtrip": cmd_tangent_roundtrip,
    "selftest": cmd_selftest,
}


# -- reporting -------------------------------------------------------------------------------

def _bounds(args) -> dict:
    out = {"max_arity": args.max_arity, "max_weight": args.max_weight}
    if args.degrees is not None:
        out["degrees"] = list(args.degrees)
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(report), sort_keys=True, indent=2)
    lines = [f"opforge {report['version']} {report['command']}  bounds {json.dumps(report['bounds'], sort_keys=True)}"]
    if "error" in report:
        lines.append(f"ERROR {report['error']['type']}: {report['error']['message']}")
    for c in report.get("certificates", []):
        status = "PASS" if c["ok"] else "FAIL"
        tail = f" (first failure at {c['first_failure']})" if "first_failure" in c and not c["ok"] else ""
        lines.append(f"{status} {c['check']}{tail}")
    for k, v in sorted(report.get("result", {}).items()):
        lines.append(f"{k}: {json.dumps(_jsonable(v), sort_keys=True)}")
    lines.append("OK" if report.get("ok") else "FAILED")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opforge", description="Exact certificates for dg operads, bar/cobar and "
                                "Chevalley-Eilenberg complexes over the rationals.")
    p.add_argument("--version", action="version", version=f"opforge {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    env_jobs = os.environ.get("OPFORGE_JOBS")
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--input", help=f"input path, or a builtin Lie algebra ({BUILTINS})")
        s.add_argument("--max-arity", type=int, default=5)
        s.add_argument("--max-weight", type=int, default=6)
        s.add_argument("--degrees", default=None, help="report only degrees LO..HI")
        s.add_argument("--format", choices=("json", "text"), default="text")
        s.add_argument("--jobs", default=env_jobs, help="worker processes (default: $OPFORGE_JOBS or 1)")
        s.add_argument("--debug-inject", action="append", default=[], choices=sorted(debug.KNOWN))
        if name in ("mc-check", "koszul-check"):
            s.add_argument("--morphism", choices=("kappa", "free-cofree"), default="kappa")
        if name == "selftest":
            s.add_argument("--only", default=None, help="comma-separated criterion numbers")
    return p


def _validate(args):
    if args.max_arity < 1 or args.max_weight < 1:
        raise InputError("--max-arity and --max-weight must be at least 1")
    args.degrees = parse_degrees(args.degrees)
    if args.jobs is None:
        args.jobs = 1
    else:
        try:
            args.jobs = int(args.jobs)
        except ValueError:
            raise InputError(f"--jobs expects an integer, got {args.jobs!r}") from None
        if args.jobs < 1:
            raise InputError("--jobs must be at least 1")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = {"tool": "opforge", "version": __version__, "command": args.command}
    code = 0
    try:
        _validate(args)
        report["bounds"] = _bounds(args)
        with debug.injected(*args.debug_inject):
            job = HANDLERS[args.command](args)
            if args.debug_inject:
                report["debug_inject"] = sorted(args.debug_inject)
            try:
                certs, result = job()
            except OpforgeError as exc:
                certs, result = [Certificate(type(exc).__name__, False, {"message": str(exc)},
                                             getattr(exc, "where", None))], {}
        report["certificates"] = [c.to_json() for c in certs]
        report["result"] = result
        report["ok"] = all(c.ok for c in certs)
        code = 0 if report["ok"] else 1
    except (InputError, OpforgeError) as exc:
        report.setdefault("bounds", {"max_arity": args.max_arity, "max_weight": args.max_weight})
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        report["ok"] = False
        code = 2
    print(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
