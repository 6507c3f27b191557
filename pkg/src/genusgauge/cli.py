"""Command line entry point: ``genusgauge {eval,feasible,region,scan,fixtures}``.

Exit codes: 0 ok or feasible, 1 scan found failures, 2 usage or invalid
parameters, 3 infeasible, 4 resource limit, 5 fixture problems.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import dedekind, floer, obstruct
from .errors import CapError, GenusGaugeError
from .exact_core import AbGroup, LaurentPoly, as_rat, format_rat
from .fixtures import FixtureError, load_fixtures, replay
from .scan import DEFAULT_BOUNDS, FAMILIES, run_scan

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_RESOURCE = 4
EXIT_FIXTURE = 5

EVAL_FUNCTIONS = ("g", "G", "N", "I", "P", "d2k1", "delta", "qd", "theta", "h1q", "rhoq")


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, LaurentPoly):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit_json(command: str, inputs: dict, result: dict, violated=(), certificate=None, exact=True) -> None:
    doc = {
        "command": command,
        "inputs": _jsonable(inputs),
        "result": _jsonable(result),
        "violated": list(violated),
        "certificate": _jsonable(certificate),
        "exact": exact,
    }
    print(json.dumps(doc, sort_keys=True))


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.function} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))
    return [getattr(args, n) for n in names]


# -- eval ---------------------------------------------------------------------------


def _k_from(args) -> int:
    """``--k`` directly, or half of ``--p``."""
    if args.k is not None:
        return args.k
    if args.p is not None:
        if args.p % 2:
            raise UsageError("--p must be even")
        return args.p // 2
    raise UsageError(f"{args.function} needs --k (or an even --p)")


def evaluate(args) -> tuple[dict, object]:
    fn = args.function
    if fn in ("g", "G", "N", "I", "P", "delta", "theta"):
        k = _k_from(args)
        (q,) = _need(args, "q")
        inputs = {"k": k, "q": q}
        if fn == "g":
            (i,) = _need(args, "i")
            inputs["i"] = i
            inputs["method"] = args.method
            if args.method == "def":
                return inputs, dedekind.g_def(k, q, i)
            if args.method == "sign":
                return inputs, dedekind.g_sign(k, q, i)
            return inputs, dedekind.g_roots(k, q, i)
        if fn == "P":
            (i,) = _need(args, "i")
            inputs["i"] = i
            return inputs, dedekind.p_poly(k, q, i)
        value = {
            "G": lambda: dedekind.big_g(k, q),
            "N": lambda: dedekind.big_n(k, q),
            "I": lambda: dedekind.big_i(k, q),
            "delta": lambda: floer.delta_lens(k, q),
            "theta": lambda: obstruct.theta_lens(k, q),
        }[fn]()
        return inputs, value
    if fn == "d2k1":
        k = _k_from(args)
        (s,) = _need(args, "s")
        return {"k": k, "s": s}, floer.d_lens_2k1(k, s)
    if fn == "qd":
        h, e, label, which = _need(args, "h", "e", "label", "which")
        return {"h": h, "e": e, "label": label, "which": which}, floer.q_bundle_d(h, e, label, which)
    if fn == "h1q":
        h, e = _need(args, "h", "e")
        return {"h": h, "e": e}, floer.h1_of_q(h, e)
    if fn == "rhoq":
        h, e = _need(args, "h", "e")
        return {"h": h, "e": e}, obstruct.rho_q_bundle(h, e)
    raise UsageError(f"unknown function {fn}")


def _format_value(value) -> str:
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def cmd_eval(args) -> int:
    inputs, value = evaluate(args)
    exact = not isinstance(value, float)
    if args.json:
        result = {"value": str(value) if isinstance(value, AbGroup) else _jsonable(value)}
        if isinstance(value, LaurentPoly):
            result["text"] = str(value)
        if isinstance(value, AbGroup):
            result["rank"], result["torsion"] = value.rank, list(value.torsion)
        _emit_json("eval", {"function": args.function, **inputs}, result, exact=exact)
    else:
        print(_format_value(value))
    return EXIT_OK


# -- contexts -------------------------------------------------------------------------


def _int_list(text: str, count: int, flag: str) -> list[int]:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"{flag} expects {count} comma-separated integers") from exc
    if len(parts) != count:
        raise UsageError(f"{flag} expects {count} comma-separated integers")
    return parts


def context_inputs(args) -> dict:
    if args.lens is not None:
        p, q = _int_list(args.lens, 2, "--lens")
        return {"context": "lens", "p": p, "q": q}
    if args.delta is not None:
        return {"context": "delta", "delta": format_rat(as_rat(args.delta)), "phi": args.phi, "k_c": args.k_c}
    if args.definite is not None:
        b, ell = _int_list(args.definite, 2, "--definite")
        return {"context": "definite", "b": b, "l": ell}
    if args.spin is not None:
        sigma, bp, bm = _int_list(args.spin, 3, "--spin")
        return {"context": "spin", "sigma": sigma, "b_plus": bp, "b_minus": bm}
    if args.sphere:
        return {"context": "sphere"}
    raise UsageError("choose a context: --lens, --delta, --definite, --spin or --sphere")


def context_from_inputs(inputs: dict) -> obstruct.Context:
    """Rebuild the obstruction context from the ``inputs`` block of a JSON report."""
    kind = inputs["context"]
    if kind == "lens":
        p = inputs["p"]
        if p < 2 or p % 2:
            raise UsageError(f"--lens needs an even p >= 2, got {p}")
        return obstruct.LensCobordism(p // 2, inputs["q"])
    if kind == "delta":
        return obstruct.GenericCobordism(as_rat(inputs["delta"]), inputs["phi"], inputs["k_c"])
    if kind == "definite":
        return obstruct.ClosedDefinite(inputs["b"], inputs["l"])
    if kind == "spin":
        return obstruct.ClosedSpin(inputs["sigma"], inputs["b_plus"], inputs["b_minus"])
    if kind == "sphere":
        return obstruct.HomologySphere()
    raise UsageError(f"unknown context {kind!r}")


def decide_inputs(inputs: dict) -> obstruct.Verdict:
    ctx = context_from_inputs(inputs)
    return obstruct.decide(obstruct.EmbedQuery(inputs["h"], inputs["e"], ctx))


def cmd_feasible(args) -> int:
    inputs = context_inputs(args) | {"h": args.h, "e": args.e}
    verdict = decide_inputs(inputs)
    if args.json:
        result = {"feasible": verdict.feasible}
        if verdict.witness is not None:
            result["witness"] = verdict.witness
        _emit_json("feasible", inputs, result, verdict.violated, verdict.certificate, verdict.exact)
    else:
        scope = "exact" if verdict.exact else "necessary conditions only"
        if verdict.feasible:
            print(f"feasible ({scope})")
            if verdict.certificate:
                c = verdict.certificate
                plus, minus = c["counts"]
                print(f"certificate: genus {c['base_genus']} base surface, {plus} RP2 summand(s) with e=+2, {minus} with e=-2")
            if verdict.witness:
                print("witness: " + ", ".join(f"{k}={v}" for k, v in verdict.witness.items()))
        else:
            print(f"infeasible ({scope})")
            for name in verdict.violated:
                print(f"  violated: {name}")
    return EXIT_OK if verdict.feasible else EXIT_INFEASIBLE


def cmd_region(args) -> int:
    inputs = context_inputs(args) | {"h_max": args.h_max, "e_max": args.e_max}
    rows = obstruct.region(context_from_inputs(inputs), args.h_max, args.e_max)
    if args.json:
        _emit_json("region", inputs, {"rows": [{"h": h, "e": e, "exact": x} for h, e, x in rows]},
                   exact=all(x for _, _, x in rows))
    else:
        out = sys.stdout
        out.write("h,e,exact\n")
        for h, e, x in rows:
            out.write(f"{h},{e},{'true' if x else 'false'}\n")
    return EXIT_OK


# -- scan and fixtures -------------------------------------------------------------------


def cmd_scan(args) -> int:
    overrides = {key: getattr(args, key) for key in DEFAULT_BOUNDS[args.family]}
    report = run_scan(args.family, overrides, workers=args.workers, time_limit=args.time_limit)
    if args.json:
        _emit_json("scan", {"family": args.family, "workers": args.workers, "time_limit": args.time_limit},
                   report.to_json())
    else:
        print(report.summary_line())
        for name, n in sorted(report.counts.items()):
            print(f"  {name}: {n}")
        if report.failures:
            params, detail = report.failures[0]
            print(f"first counterexample: {params} {detail}".rstrip())
    if not report.complete:
        return EXIT_RESOURCE
    return EXIT_OK if not report.failures else EXIT_FAILURES


def cmd_fixtures(args) -> int:
    try:
        results = replay(load_fixtures(args.file))
    except FixtureError as exc:
        print(f"genusgauge: {exc}", file=sys.stderr)
        return EXIT_FIXTURE
    failed = [r for r in results if not r.passed]
    if args.json:
        rows = [{"name": r.fixture.name, "expected": r.fixture.expected, "got": r.got, "passed": r.passed,
                 "provenance": r.fixture.provenance} for r in results]
        _emit_json("fixtures", {"file": args.file}, {"fixtures": rows, "failed": len(failed)})
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {r.fixture.name}"
            if not r.passed:
                line += f" (expected {r.fixture.expected}, got {r.got})"
            print(line)
        print(f"{len(results) - len(failed)}/{len(results)} fixtures match")
    return EXIT_OK if not failed else EXIT_FIXTURE


# -- parser ----------------------------------------------------------------------------


def _add_context(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--lens", metavar="P,Q", help="L(P,Q) x I with P even")
    group.add_argument("--delta", metavar="D", help="cobordism with twist invariant D (integer or half-integer)")
    group.add_argument("--definite", metavar="B,L", help="closed positive-definite manifold, b2 = B, minimal lift square L")
    group.add_argument("--spin", metavar="SIGMA,B+,B-", help="closed spin manifold")
    group.add_argument("--sphere", action="store_true", help="homology 4-sphere")
    parser.add_argument("--phi", choices=[p.value for p in obstruct.PhiRestriction], default="unknown",
                        help="restriction of the twisting class (with --delta)")
    parser.add_argument("--k-c", type=int, choices=(0, 1), default=None, help="self-linking bit (with --delta)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--workers", type=int, default=1, help="worker processes for scans")

    parser = argparse.ArgumentParser(prog="genusgauge", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="evaluate one function")
    ev.add_argument("function", choices=EVAL_FUNCTIONS)
    for name in ("k", "p", "q", "i", "s", "h", "e"):
        ev.add_argument(f"--{name}", type=int)
    ev.add_argument("--label", choices=[lab.value for lab in floer.SpincQLabel])
    ev.add_argument("--which", choices=("bot", "top"))
    ev.add_argument("--method", choices=("def", "sign", "roots"), default="def", help="formula used for g")
    ev.set_defaults(handler=cmd_eval)

    fe = sub.add_parser("feasible", parents=[common], help="decide one (h, e)")
    _add_context(fe)
    fe.add_argument("--h", type=int, required=True)
    fe.add_argument("--e", type=int, required=True)
    fe.set_defaults(handler=cmd_feasible)

    rg = sub.add_parser("region", parents=[common], help="list feasible (h, e) as CSV")
    _add_context(rg)
    rg.add_argument("--h-max", type=int, required=True)
    rg.add_argument("--e-max", type=int, default=None, help="cap on |e|; needed when e is unbounded above")
    rg.set_defaults(handler=cmd_region)

    sc = sub.add_parser("scan", parents=[common], help="run a verification family")
    sc.add_argument("family", choices=FAMILIES)
    bound_names = sorted({key for b in DEFAULT_BOUNDS.values() for key in b})
    for key in bound_names:
        sc.add_argument("--" + key.replace("_", "-"), dest=key, type=int, default=None)
    sc.add_argument("--time-limit", type=float, default=None, help="seconds before stopping with a partial report")
    sc.set_defaults(handler=cmd_scan)

    fx = sub.add_parser("fixtures", parents=[common], help="replay the regression corpus")
    fx.add_argument("--file", default=None, help="alternative fixture file")
    fx.set_defaults(handler=cmd_fixtures)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "scan":
        unused = [k for k in sorted({k for b in DEFAULT_BOUNDS.values() for k in b})
                  if getattr(args, k) is not None and k not in DEFAULT_BOUNDS[args.family]]
        if unused:
            parser.error(f"{args.family} does not take --{unused[0].replace('_', '-')}")
        if args.workers < 1:
            parser.error("--workers must be at least 1")
    try:
        return args.handler(args)
    except UsageError as exc:
        parser.error(str(exc))
    except CapError as exc:
        print(f"genusgauge: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (GenusGaugeError, ValueError) as exc:
        print(f"genusgauge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
