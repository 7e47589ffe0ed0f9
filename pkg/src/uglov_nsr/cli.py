"""Command line entry point: ``uglov-nsr`` (or ``python -m uglov_nsr``).

Compute:  macdonald, uglov, singular-verma, bosonize
Verify:   verify {relations, singular, qvir, limit-currents, decomposition,
          eigenvalues, characters, all}

Verification reports are JSON objects

    {"suite", "tool_version", "parameters", "cases": [{"id", "status", "details"}],
     "summary": {"pass", "fail", "skip"}, "timing"?}

serialized with sorted keys, so identical runs give identical bytes unless
``--timing`` is requested.  Exit status is 0 iff no case failed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .symfunc import CapacityError, parse_partition

REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "tool_version", "parameters", "cases", "summary"],
    "properties": {
        "suite": {"type": "string"},
        "tool_version": {"type": "string"},
        "parameters": {"type": "object"},
        "cases": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "status", "details"],
                "properties": {
                    "id": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "skip"]},
                    "details": {"type": "object"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["pass", "fail", "skip"],
            "additionalProperties": {"type": "integer"},
        },
        "timing": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}

SUITES = ("relations", "singular", "qvir", "limit-currents", "decomposition", "eigenvalues", "characters")


# ---------------------------------------------------------------------------
# case runners (module level so they pickle for --jobs)
# ---------------------------------------------------------------------------


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _run_fock(sector, D, window):
    from .fock import FockParams, check_ccr

    rep = check_ccr(D, FockParams(sector), window)
    out = [
        {"id": f"ccr/{c['relation']}", "status": c["status"], "details": c.get("witness", {})}
        for c in rep["cases"]
    ]
    out.append({"id": "ccr/mixed", "status": "pass", "details": rep["mixed"]})
    return out


def _run_nsr(sector, D, window):
    from .nsr import check_nsr_relations

    rep = check_nsr_relations(sector, D, window)
    return [
        {"id": f"nsr/{sector}/{c['relation']}", "status": c["status"], "details": c.get("witness", {})}
        for c in rep["cases"]
    ]


def _run_singular(r, s, eps):
    from .nsr import verify_singular_uglov

    rep = verify_singular_uglov(r, s, eps)
    out = []
    for c in rep["cases"]:
        details = {k: v for k, v in c.items() if k not in ("case",)}
        if c["generator"] == "G0-eigen":
            details["eigenvalue"] = rep["g0_eigenvalue"]
        out.append({"id": f"singular/({r},{s})/{c['generator']}/{c['index']}", "status": _status(c["residual_zero"]), "details": details})
    return out


def _run_verma(r, s, eps):
    from .verma import compare_uglov

    rep = compare_uglov(r, s, eps)
    return [{"id": f"verma/({r},{s})", "status": _status(rep["proportional"]), "details": rep}]


def _run_qvir(r, s):
    from .qvir import verify_qvir_singular

    rep = verify_qvir_singular(r, s)
    return [
        {"id": f"qvir/({r},{s})/T/{c['index']}", "status": _status(c["residual_zero"]), "details": c}
        for c in rep["cases"]
    ]


def _run_limit(sector, D, eps):
    from .qvir import check_limit_currents

    rep = check_limit_currents(sector, D, eps)
    return [
        {"id": f"limit/{sector}/T{c['order']}/{c['index']}", "status": c["status"], "details": c}
        for c in rep["cases"]
    ]


def _run_decomposition(D):
    from .qvir import macdonald_decomposition_check

    rep = macdonald_decomposition_check(D)
    return [
        {"id": "decomposition/" + ",".join(map(str, c["partition"])), "status": c["status"], "details": c}
        for c in rep["cases"]
    ]


def _run_eigen(r, s, eps):
    from .qvir import limit_eigenvalue_check

    rep = limit_eigenvalue_check(r, s, eps)
    return [{"id": f"eigenvalues/({r},{s})", "status": _status(rep["passed"]), "details": rep}]


def _run_characters(D):
    from .fock import character_check

    rep = character_check(D)
    return [{"id": f"characters/{D}", "status": _status(rep["passed"]), "details": rep}]


# ---------------------------------------------------------------------------
# suite planning
# ---------------------------------------------------------------------------


def _rectangles(args):
    if args.r is not None or args.s is not None:
        if args.r is None or args.s is None:
            raise SystemExit("error: --r and --s must be given together")
        return [(args.r, args.s)]
    return [(r, s) for r in range(1, args.max_rs + 1) for s in range(1, args.max_rs + 1) if r * s <= args.max_rs]


def _sectors(args):
    return ["NS", "R"] if args.sector == "both" else [args.sector]


def plan(suite: str, args) -> list:
    """List of ``(function, args)`` jobs for one suite."""
    D, eps = args.max_degree, args.epsilon
    jobs = []
    if suite == "relations":
        if args.algebra in ("fock", "all"):
            jobs += [(_run_fock, (sec, D, args.window)) for sec in _sectors(args)[:1]]
        if args.algebra in ("nsr", "all"):
            jobs += [(_run_nsr, (sec, D, args.window)) for sec in _sectors(args)]
    elif suite == "singular":
        jobs += [(_run_singular, (r, s, eps)) for r, s in _rectangles(args)]
        if args.verma:
            jobs += [(_run_verma, (r, s, eps)) for r, s in _rectangles(args)]
    elif suite == "qvir":
        jobs += [(_run_qvir, (r, s)) for r, s in _rectangles(args) if r * s <= 4]
    elif suite == "limit-currents":
        jobs += [(_run_limit, (sec, D, eps)) for sec in _sectors(args)]
    elif suite == "decomposition":
        jobs.append((_run_decomposition, (min(D, 4),)))
    elif suite == "eigenvalues":
        jobs += [(_run_eigen, (r, s, eps)) for r, s in _rectangles(args)]
    elif suite == "characters":
        jobs.append((_run_characters, (args.char_degree,)))
    return jobs


def _call(job):
    fn, a = job
    t0 = time.perf_counter()
    cases = fn(*a)
    return cases, time.perf_counter() - t0


def run_suite(suite: str, args) -> dict:
    suites = SUITES if suite == "all" else (suite,)
    jobs = [j for s in suites for j in plan(s, args)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_call, jobs))
    else:
        results = [_call(j) for j in jobs]
    cases, timing = [], {}
    for cs, dt in results:
        cases.extend(cs)
        for c in cs:
            timing[c["id"]] = round(dt / max(len(cs), 1), 6)
    summary = {k: sum(1 for c in cases if c["status"] == k) for k in ("pass", "fail", "skip")}
    report = {
        "suite": suite,
        "tool_version": __version__,
        "parameters": _parameters(args),
        "cases": cases,
        "summary": summary,
    }
    if args.timing:
        report["timing"] = timing
    return report


def _parameters(args) -> dict:
    keys = ("max_rs", "max_degree", "window", "epsilon", "sector", "algebra", "r", "s", "char_degree", "verma")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def report_passed(report: dict) -> bool:
    return report["summary"]["fail"] == 0


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str)


# ---------------------------------------------------------------------------
# compute commands
# ---------------------------------------------------------------------------


def _terms_json(terms: dict) -> list:
    return [{"partition": list(mu), "coeff": str(c)} for mu, c in sorted(terms.items(), reverse=True)]


def _terms_text(terms: dict, letter: str) -> str:
    if not terms:
        return "0"
    return " + ".join(f"({c})*{letter}[{','.join(map(str, mu))}]" for mu, c in sorted(terms.items(), reverse=True))


def _emit(args, payload: dict, text: str):
    print(dumps(payload) if args.json else text)


def cmd_macdonald(args):
    from .macdonald import macdonald

    mu = parse_partition(args.mu)
    P = macdonald(mu)
    terms = P.expansion.terms if args.basis == "p" else P.m_expansion
    _emit(args, {"partition": list(mu), "basis": args.basis, "terms": _terms_json(terms)}, _terms_text(terms, args.basis))


def cmd_uglov(args):
    from .uglov import uglov, uglov_at

    mu = parse_partition(args.mu)
    U = uglov(mu) if args.gamma == "sym" else uglov_at(mu, Fraction(args.gamma))
    terms = U.expansion.terms if args.basis == "p" else U.m_expansion
    payload = {
        "partition": list(mu),
        "gamma": str(U.gamma),
        "basis": args.basis,
        "terms": _terms_json(terms),
        "first_order_zero": U.first_order_zero,
    }
    _emit(args, payload, _terms_text(terms, args.basis))


def cmd_singular_verma(args):
    from .nsr import sector_of
    from .verma import level_of, highest_weight_rs, singular_vector

    v = singular_vector(args.r, args.s, args.epsilon)
    hw = highest_weight_rs(args.r, args.s, args.epsilon)
    payload = {
        "case": [args.r, args.s],
        "sector": sector_of(args.r, args.s),
        "level": str(level_of(v)),
        "delta": str(hw.delta),
        "vector": v.to_json(),
    }
    _emit(args, payload, f"{v}\nDelta = {hw.delta}")


def cmd_bosonize(args):
    from .verma import bosonize, singular_vector

    f = bosonize(singular_vector(args.r, args.s, args.epsilon), args.r, args.s, args.epsilon)
    _emit(args, {"case": [args.r, args.s], "terms": f.to_json()}, str(f))


def cmd_verify(args):
    report = run_suite(args.suite, args)
    if args.json:
        print(dumps(report))
    else:
        for c in report["cases"]:
            extra = ""
            if c["id"].startswith("singular") and "eigenvalue" in c["details"]:
                extra = f"  G0 eigenvalue {c['details']['eigenvalue']}"
            if c["id"].startswith("eigenvalues"):
                extra = f"  E0={c['details']['E0']} E1={c['details']['E1']}"
            print(f"{c['status'].upper():4}  {c['id']}{extra}")
        s = report["summary"]
        print(f"{args.suite}: {s['pass']} passed, {s['fail']} failed, {s['skip']} skipped")
    return 0 if report_passed(report) else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cache-dir", help="Macdonald cache directory (default: $UGLOV_NSR_CACHE)")
    p.add_argument("--epsilon", type=int, choices=(1, -1), default=1)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="uglov-nsr", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("macdonald", parents=[common], help="P_mu(q,t)")
    p.add_argument("--mu", required=True)
    p.add_argument("--basis", choices=("p", "m"), default="p")
    p.set_defaults(func=cmd_macdonald)

    p = sub.add_parser("uglov", parents=[common], help="Uglov function P^(gamma,2)_mu")
    p.add_argument("--mu", required=True)
    p.add_argument("--gamma", default="sym", help="'sym' or a rational a/b")
    p.add_argument("--basis", choices=("p", "m"), default="p")
    p.set_defaults(func=cmd_uglov)

    for name, fn, text in (
        ("singular-verma", cmd_singular_verma, "singular vector in the Verma module"),
        ("bosonize", cmd_bosonize, "image of the singular vector in Lambda"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--s", type=int, required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--max-rs", type=int, default=6)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--char-degree", type=int, default=20)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--sector", choices=("NS", "R", "both"), default="both")
    p.add_argument("--algebra", choices=("nsr", "fock", "all"), default="all")
    p.add_argument("--verma", action="store_true", help="also compare Verma singular vectors")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="add per-case wall time to the report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cache_dir:
        from .macdonald import set_cache_dir

        set_cache_dir(args.cache_dir)
    try:
        code = args.func(args)
    except (ValueError, CapacityError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
