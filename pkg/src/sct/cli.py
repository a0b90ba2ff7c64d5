"""Command-line interface: ``sct <command> [options]``.

Exit status is 0 on success, 1 when a verification suite has failures and 2
for usage or input errors (including a weight above the configured cap).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from . import __version__, cumulants, ncpart, nsym, operad, symfun, trees, verify
from .fmt import scalar_json
from .poly import poly_to_json

DEFAULT_MAX_WEIGHT = 10
CAP_ENV = "SCT_MAX_WEIGHT"


class UsageError(Exception):
    """Bad input detected after argument parsing; reported with exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                        help="output format (default: text)")
    common.add_argument("--max-weight", type=int, default=argparse.SUPPRESS,
                        help=f"weight cap (default: ${CAP_ENV} or {DEFAULT_MAX_WEIGHT})")

    p = _Parser(prog="sct", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=f"sct {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", parents=[common], help="list trees of a kind and weight")
    e.add_argument("--kind", choices=trees.KINDS, default="all")
    e.add_argument("--weight", type=int, required=True)

    s = sub.add_parser("series", parents=[common], help="print a named operad-group series")
    s.add_argument("--name", choices=sorted(operad.NAMED), required=True)
    s.add_argument("--weight", type=int, required=True)

    n = sub.add_parser("nsym", parents=[common], help="Lagrange series g_n, cumulant K_n or S_n in the K basis")
    n.add_argument("--what", choices=("g", "K", "s-in-K"), required=True)
    n.add_argument("--degree", type=int, required=True)
    n.add_argument("--basis", choices=nsym.BASES, default="S")
    n.add_argument("--method", choices=nsym.CUMULANT_METHODS, default="solve")

    c = sub.add_parser("cumulant", parents=[common], help="free cumulant kappa_n of a1..an")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--mode", choices=cumulants.MODES + ("speicher",), default="scalar")

    k = sub.add_parser("classical", parents=[common], help="univariate cumulants and the star involution")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--what", choices=("k", "unsigned", "h-star", "e-star", "estar-formula"), default="k")

    q = sub.add_parser("partition", parents=[common], help="Kreweras complement or Moebius function")
    q.add_argument("--op", choices=("kreweras", "moebius"), required=True)
    q.add_argument("args", nargs="+", metavar="PARTITION",
                   help="blocks like 1,4|2,3; moebius takes PI (from the bottom) or SIGMA PI")

    v = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    v.add_argument("--suite", choices=("all",) + tuple(verify.SUITES), default="all")
    v.add_argument("--weight", type=int, default=6)
    return p


def max_weight(args: argparse.Namespace) -> int:
    cap = getattr(args, "max_weight", None)
    if cap is not None:
        return cap
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_MAX_WEIGHT
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{CAP_ENV} must be an integer, got {raw!r}") from None


def _check_weight(value: int, label: str, cap: int, minimum: int = 0) -> None:
    if value < minimum:
        raise UsageError(f"{label} must be at least {minimum}")
    if value > cap:
        raise UsageError(f"{label} {value} exceeds the weight cap {cap} (raise it with --max-weight or {CAP_ENV})")


# --- commands: each returns (params, text, json payload, exit status) ------------------

def _enumerate(a, cap):
    _check_weight(a.weight, "weight", cap)
    words = trees.enumerate_words(a.kind, a.weight)
    text = "\n".join(trees.format_tree(w) for w in words)
    payload = {"count": len(words), "trees": [list(w) for w in words]}
    return {"kind": a.kind, "weight": a.weight}, text, payload, 0


def _series(a, cap):
    _check_weight(a.weight, "weight", cap)
    s = operad.series_by_name(a.name, a.weight)
    return {"name": a.name, "weight": a.weight}, str(s), s.to_json(), 0


def _nsym(a, cap):
    _check_weight(a.degree, "degree", cap)
    params = {"what": a.what, "degree": a.degree, "basis": a.basis}
    if a.what == "s-in-K":
        exp = nsym.s_in_K(a.degree) if a.degree else {(): 1}
        payload = {"basis": "K", "terms": [{"index": list(i), **scalar_json(c)} for i, c in exp.items()]}
        return params, nsym.format_K(exp), payload, 0
    if a.what == "g":
        x = nsym.lagrange_g(a.degree).homogeneous(a.degree)
    else:
        params["method"] = a.method
        x = nsym.cumulant_K(a.degree, a.method).homogeneous(a.degree)
    x = nsym.convert(x, a.basis)
    return params, str(x), x.to_json(), 0


def _cumulant(a, cap):
    _check_weight(a.n, "n", cap, minimum=1)
    params = {"n": a.n, "mode": a.mode}
    if a.mode == "speicher":
        p = cumulants.speicher_kappa(a.n)
        return params, str(p), {"polynomial": poly_to_json(p)}, 0
    value = cumulants.kappa_eval(a.n, a.mode)
    if a.mode == "scalar":
        return params, str(value), {"polynomial": poly_to_json(value)}, 0
    return params, str(value), {"expression": value.to_json()}, 0


def _classical(a, cap):
    lo = 2 if a.what == "estar-formula" else 1
    _check_weight(a.n, "n", cap, minimum=lo)
    params = {"n": a.n, "what": a.what}
    rows: list[tuple[str, Any]] = []
    if a.what == "k":
        rows = [(f"k{d}", p) for d, p in enumerate(symfun.classical_cumulants(a.n), 1)]
    elif a.what == "unsigned":
        rows = [(f"|k{d}|", cumulants.unsigned_polynomial(d)) for d in range(1, a.n + 1)]
    elif a.what == "h-star":
        rows = [(f"h{d}*", symfun.h_star(d)) for d in range(1, a.n + 1)]
    elif a.what == "e-star":
        rows = [(f"e{d}*", symfun.e_star(d)) for d in range(1, a.n + 1)]
    else:
        f = symfun.estar_formula(a.n)
        return params, f"-e{a.n}* = {f}", f.to_json(), 0
    text = "\n".join(f"{name} = {p}" for name, p in rows)
    payload = {"rows": [{"name": name, "text": str(p), "polynomial": poly_to_json(p)} for name, p in rows]}
    return params, text, payload, 0


def _partition(a, cap):
    params = {"op": a.op, "args": list(a.args)}
    if a.op == "kreweras":
        if len(a.args) != 1:
            raise UsageError("kreweras takes exactly one partition")
        pi = ncpart.parse_partition(a.args[0])
        _check_weight(pi.n, "size", cap, minimum=1)
        k = ncpart.kreweras(pi)
        return params, ncpart.format_partition(k), {"complement": [list(b) for b in k.blocks]}, 0
    if len(a.args) not in (1, 2):
        raise UsageError("moebius takes PI or SIGMA PI")
    n = max(int(x) for arg in a.args for x in arg.replace("|", ",").split(",") if x.strip())
    _check_weight(n, "size", cap, minimum=1)
    parsed = [ncpart.parse_partition(x, n) for x in a.args]
    sigma, pi = (ncpart.bottom(n), parsed[0]) if len(parsed) == 1 else parsed
    mu = ncpart.moebius(sigma, pi)
    return params, str(mu), {"sigma": [list(b) for b in sigma.blocks], "pi": [list(b) for b in pi.blocks],
                             "moebius": mu}, 0


def _verify(a, cap):
    _check_weight(a.weight, "weight", cap, minimum=1)
    checks = verify.run_suite(a.suite, a.weight)
    passed = sum(c.passed for c in checks)
    failed = len(checks) - passed
    text = "\n".join(c.line() for c in checks) + f"\n{passed} passed, {failed} failed"
    payload = {
        "passed": passed,
        "failed": failed,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
    }
    return {"suite": a.suite, "weight": a.weight}, text, payload, 1 if failed else 0


COMMANDS = {
    "enumerate": _enumerate,
    "series": _series,
    "nsym": _nsym,
    "cumulant": _cumulant,
    "classical": _classical,
    "partition": _partition,
    "verify": _verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "text")
    try:
        cap = max_weight(args)
        params, text, payload, status = COMMANDS[args.command](args, cap)
    except (UsageError, ValueError) as exc:
        print(f"sct {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if fmt == "json":
        payload = dict(payload, text=text)
        envelope = {"command": args.command, "params": params, "result": payload, "version": __version__}
        print(json.dumps(envelope, ensure_ascii=False, indent=2))
    else:
        print(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
