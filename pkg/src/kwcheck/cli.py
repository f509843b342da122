"""Command-line front end: one JSON report per check on stdout, a summary on stderr.

Exit status is 0 when every check passes, 1 when some check does not pass,
2 for usage errors and 3 when a check hits an internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import traceback
from concurrent.futures import ProcessPoolExecutor

SCHEMA = "kwcheck.report/1"

QUICK_PRIMES = (3, 5, 7)
FULL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23)
GAUSS_PAIRS_FULL = ((3, 7), (3, 13), (5, 11), (7, 29))
PROP_CP_QUICK = ((2, 1), (2, 2), (3, 1), (5, 1), (7, 1))
PROP_CP_FULL = ((2, 1), (2, 2), (2, 3), (2, 7), (3, 1), (3, 2), (3, 4), (5, 1), (5, 3), (7, 1), (7, 2))


# ---------------------------------------------------------------------------
# individual checks; each returns (status, witness payload)


def _class_group(p: int, bound: int | None, effort: int):
    from .classgroup import class_group
    from .cyclo import field_new

    return class_group(field_new(p), bound, max_rounds=effort)


def check_classgroup(p: int, factor_base: int | None = None, effort: int = 4):
    from .stick import minus_class_number

    cg = _class_group(p, factor_base, effort)
    h_minus = minus_class_number(p)
    payload = cg.to_json()
    payload["minus_class_number"] = h_minus
    witnesses_ok = all(w is not None for w in cg.generator_witnesses)
    ok = cg.order == h_minus and witnesses_ok
    return ("pass" if ok else "fail"), payload


def check_stickelberger(p: int, factor_base: int | None = None, effort: int = 4):
    from .stick import verify_annihilation

    cg = _class_group(p, factor_base, effort)
    cert = verify_annihilation(p, cg)
    return cert.pop("status"), cert


def check_gauss_sum(p: int, q: int, g: int | None = None):
    from .stick import verify_stickelberger_factorization

    cert = verify_stickelberger_factorization(p, q, g)
    G = cert.pop("_descended")
    cert["descended_value"] = G.to_json()
    return cert.pop("status"), cert


def check_prop_exp(p: int):
    from .kummer import verify_prop_exp

    cert = verify_prop_exp(p)
    return cert.pop("status"), cert


def check_prop_pex2(bound: int):
    from .lattice import verify_prop_pex2

    cert = verify_prop_pex2(bound)
    return cert.pop("status"), cert


def check_lemma_lc(p: int, amax: int, bmax: int):
    from .lattice import cyclic_compositum_check

    cert = cyclic_compositum_check(p, amax, bmax)
    return cert.pop("status"), cert


def check_prop_cp(p: int, m: int):
    from .lattice import verify_prop_cp_c2

    cert = verify_prop_cp_c2(p, m)
    return cert.pop("status"), cert


def check_subfield(n: int, subgroup: tuple[int, ...]):
    from .lattice import AbelianField, period_generator, ramification_profile

    K = AbelianField.from_subgroup(n, subgroup)
    x, label, poly = period_generator(K)
    return "pass", {
        "field": K.to_json(),
        "generator": label,
        "minimal_polynomial": poly,
        "ramified_primes": sorted(ramification_profile(K)),
        "real": K.is_real(),
    }


CHECKS = {
    "classgroup": check_classgroup,
    "stickelberger": check_stickelberger,
    "gauss-sum": check_gauss_sum,
    "prop-exp": check_prop_exp,
    "prop-pex2": check_prop_pex2,
    "lemma-lc": check_lemma_lc,
    "prop-cp": check_prop_cp,
    "subfield": check_subfield,
}


# ---------------------------------------------------------------------------
# execution


def _version() -> str:
    from . import __version__

    return __version__


def execute(task: tuple[str, dict], timing: bool = False) -> dict:
    """Run one check and wrap it in a report; never raises."""
    name, params = task
    start = time.perf_counter()
    try:
        status, witness = CHECKS[name](**params)
    except (ValueError, TypeError) as exc:
        status, witness = "usage", {"error": str(exc)}
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        from .classgroup import ClassGroupMismatch, ClassGroupSearchExhausted, PrincipalityUndecided

        if isinstance(exc, ClassGroupMismatch):
            status, witness = "fail", dict(exc.witness, reason=str(exc))
        elif isinstance(exc, (PrincipalityUndecided, ClassGroupSearchExhausted)):
            status, witness = "undecided", {"reason": str(exc)}
        else:
            status = "error"
            witness = {"error": f"{type(exc).__name__}: {exc}", "trace": traceback.format_exc().splitlines()[-4:]}
    report = {
        "schema": SCHEMA,
        "check": name,
        "params": {k: (list(v) if isinstance(v, tuple) else v) for k, v in params.items()},
        "status": status,
        "witness": witness,
        "version": _version(),
    }
    if timing:
        report["timing_ms"] = round((time.perf_counter() - start) * 1000)
    return report


def suite_tasks(profile: str) -> list[tuple[str, dict]]:
    if profile not in ("quick", "full"):
        raise ValueError(f"unknown profile {profile}")
    quick = profile == "quick"
    primes = QUICK_PRIMES if quick else FULL_PRIMES
    tasks: list[tuple[str, dict]] = []
    tasks += [("classgroup", {"p": p}) for p in primes]
    tasks += [("stickelberger", {"p": p}) for p in primes]
    pairs = ((3, 7),) if quick else GAUSS_PAIRS_FULL
    tasks += [("gauss-sum", {"p": p, "q": q}) for p, q in pairs]
    tasks += [("prop-exp", {"p": p}) for p in ((3, 5) if quick else (3, 5, 7))]
    tasks.append(("prop-pex2", {"bound": 10000}))
    tasks += [("lemma-lc", {"p": p, "amax": 3, "bmax": 3}) for p in (2, 3)]
    tasks += [("prop-cp", {"p": p, "m": m}) for p, m in (PROP_CP_QUICK if quick else PROP_CP_FULL)]
    return tasks


def run_tasks(tasks, *, jobs: int = 1, timing: bool = False, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(execute, t, timing) for t in tasks]
            reports = (f.result() for f in futures)
            return _emit(reports, out, err)
    return _emit((execute(t, timing) for t in tasks), out, err)


def _emit(reports, out, err) -> int:
    worst = 0
    counts: dict[str, int] = {}
    for rep in reports:
        out.write(json.dumps(rep, sort_keys=True, separators=(",", ":")) + "\n")
        out.flush()
        status = rep["status"]
        counts[status] = counts.get(status, 0) + 1
        params = " ".join(f"{k}={v}" for k, v in sorted(rep["params"].items()) if v is not None)
        extra = f" [{rep['timing_ms']} ms]" if "timing_ms" in rep else ""
        err.write(f"{status.upper():12s} {rep['check']} {params}{extra}\n")
        if status == "error":
            err.write(f"             {rep['witness'].get('error')}\n")
        code = {"pass": 0, "usage": 2, "error": 3}.get(status, 1)
        worst = max(worst, code)
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    err.write(f"summary: {summary or 'no checks'}\n")
    return worst


# ---------------------------------------------------------------------------
# argument parsing


def _subgroup(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError("subgroup must be a comma separated list of integers") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kwcheck", description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1, help="worker processes (output order is fixed)")
    ap.add_argument("--timing", action="store_true", help="add wall time to each report (breaks byte identity)")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run one verification")
    vs = v.add_subparsers(dest="what", required=True)
    s = vs.add_parser("stickelberger")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--factor-base", type=int, default=None)
    s.add_argument("--effort", type=int, default=4)
    s = vs.add_parser("gauss-sum")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--g", type=int, default=None)
    s = vs.add_parser("prop-exp")
    s.add_argument("--p", type=int, required=True)
    s = vs.add_parser("prop-pex2")
    s.add_argument("--bound", type=int, required=True)
    s = vs.add_parser("lemma-lc")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--amax", type=int, required=True)
    s.add_argument("--bmax", type=int, required=True)
    s = vs.add_parser("prop-cp")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--m", type=int, required=True)

    c = sub.add_parser("classgroup", help="class group of Q(zeta_p)")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--factor-base", type=int, default=None)
    c.add_argument("--effort", type=int, default=4)

    f = sub.add_parser("subfield", help="minimal polynomial of the fixed field of a subgroup")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--subgroup", type=_subgroup, required=True)

    u = sub.add_parser("suite", help="run a predefined batch")
    u.add_argument("--profile", choices=("quick", "full"), default="quick")
    return ap


def tasks_from_args(args) -> list[tuple[str, dict]]:
    if args.command == "suite":
        return suite_tasks(args.profile)
    if args.command == "classgroup":
        return [("classgroup", {"p": args.p, "factor_base": args.factor_base, "effort": args.effort})]
    if args.command == "subfield":
        return [("subfield", {"n": args.n, "subgroup": args.subgroup})]
    w = args.what
    if w == "stickelberger":
        return [("stickelberger", {"p": args.p, "factor_base": args.factor_base, "effort": args.effort})]
    if w == "gauss-sum":
        return [("gauss-sum", {"p": args.p, "q": args.q, "g": args.g})]
    if w == "prop-exp":
        return [("prop-exp", {"p": args.p})]
    if w == "prop-pex2":
        return [("prop-pex2", {"bound": args.bound})]
    if w == "lemma-lc":
        return [("lemma-lc", {"p": args.p, "amax": args.amax, "bmax": args.bmax})]
    return [("prop-cp", {"p": args.p, "m": args.m})]


def run(argv=None, out=None, err=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs < 1:
        parser.print_usage(err or sys.stderr)
        return 2
    return run_tasks(tasks_from_args(args), jobs=args.jobs, timing=args.timing, out=out, err=err)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
