"""Command line entry point: ``cullen-sunit <subcommand> ...``.

Exit codes: 0 success (for ``reproduce``: every published value matched),
1 computation finished but disagrees with a published value, 2 usage error.
The default worker count comes from $CULLEN_SUNIT_WORKERS (else 1).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

from .bounds import bound_report, matveev_log_lower, yu_valuation_upper
from .errors import CullenSunitError
from .lifting import LiftTask, find_residues, lift, max_valuation_below
from .pipeline import RunConfig, compare_solutions, run_reproduce
from .recurrence import RecurrenceSpec, preset
from .search import SUnitBox, ShiftSet, factorial_shifts, pm1_shifts, scan_shift_set, solve_factorial_sunit

WORKERS_ENV = "CULLEN_SUNIT_WORKERS"


class UsageError(Exception):
    pass


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parse_big_int(s: str) -> int:
    """Exact integers from '123', '-5', '1e58' or '10^58'."""
    s = s.strip().replace("_", "")
    m = re.fullmatch(r"([-+]?\d+)[eE](\d+)", s)
    if m:
        return int(m.group(1)) * 10 ** int(m.group(2))
    m = re.fullmatch(r"([-+]?\d+)\^(\d+)", s)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    try:
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None


def int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def float_list(s: str) -> list[float]:
    try:
        return [float(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}") from None


def int_pair(s: str) -> tuple[int, int]:
    v = int_list(s)
    if len(v) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {s!r}")
    return v[0], v[1]


def format_big_int(n: int) -> str:
    s = str(n)
    z = len(s) - len(s.rstrip("0"))
    return f"{s[:-z]}e{z}" if z >= 6 else s


def _emit(args, payload: dict, text: str) -> None:
    body = json.dumps(payload, indent=1, sort_keys=True) + "\n" if args.json else text + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as f:
            f.write(body)
    else:
        sys.stdout.write(body)


def cmd_lift(args) -> int:
    res = lift(LiftTask(args.prime, args.target, args.residue, args.depth))
    payload = {**res.to_dict(), "verified": res.verify()}
    _emit(args, payload, str(res.n_final))
    return 0


def cmd_residues(args) -> int:
    res = find_residues(args.prime, args.target)
    _emit(args, {"p": args.prime, "t": str(args.target), "residues": res},
          " ".join(map(str, res)))
    return 0


def cmd_valbound(args) -> int:
    vb = max_valuation_below(args.prime, args.target, args.limit)
    payload = {"p": vb.p, "t": str(vb.t), "limit": str(vb.limit), "k_max": vb.k_max,
               "witnesses": [[n0, str(w)] for n0, w in vb.witnesses]}
    text = f"nu_{vb.p}(n*2^n + 1 - t) < {vb.k_max} for all 0 <= n < {format_big_int(args.limit)}"
    _emit(args, payload, text)
    return 0


def _shift_set(args) -> ShiftSet:
    if args.shifts == "pm1":
        if args.mrange:
            return factorial_shifts(*args.mrange)
        return pm1_shifts()
    vals = int_list(args.shifts)
    if not vals:
        raise UsageError("no shifts given")
    return ShiftSet(vals, [str(v) for v in vals], [None] * len(vals))


def cmd_scan(args) -> int:
    if len(args.primes) != len(args.caps):
        raise UsageError("--primes and --caps need the same length")
    box = SUnitBox(args.primes, args.caps)
    shifts = _shift_set(args)
    t0 = time.perf_counter()
    rep = scan_shift_set(box, shifts, skip_cancelling=not args.keep_cancelling,
                         width=args.width, workers=args.workers, checkpoint=args.checkpoint)
    payload = {"primes": list(box.primes), "caps": list(box.caps), "shifts": len(shifts),
               "report": rep.to_dict()}
    text = (f"max nu_2 = {rep.max_val} at exponents {rep.argmax[:-1] if rep.argmax else None} "
            f"shift {rep.shift_label}\nscanned {rep.count_scanned}, skipped zero "
            f"{rep.count_skipped_zero}, skipped cancelling {rep.count_skipped_cancel}, "
            f"escalations {rep.width_escalations}, {time.perf_counter() - t0:.1f}s")
    _emit(args, payload, text)
    return 0


def cmd_solve(args) -> int:
    primes = args.primes
    if len(primes) != len(args.caps):
        raise UsageError("--primes and --caps need the same length")
    box = SUnitBox(primes, args.caps)
    if args.two_cap is not None:
        box = box.with_two(args.two_cap)
    res = solve_factorial_sunit(args.families, args.nmax, args.mrange, box, workers=args.workers)
    payload = {**res.to_dict(), "comparison": compare_solutions(res)}
    if args.csv:
        with open(args.csv, "w") as f:
            f.write(res.to_csv())
    max_n, max_m = res.headline() if res.records else (None, None)
    text = res.to_csv() + f"values: {res.values}\nmax n (nondegenerate) = {max_n}; max m = {max_m}"
    _emit(args, payload, text)
    return 0


def _load_spec(args) -> RecurrenceSpec:
    if args.spec:
        text = open(args.spec).read() if os.path.exists(args.spec) else args.spec
        return RecurrenceSpec.from_json(text)
    return preset(args.preset)


def cmd_bounds(args) -> int:
    rep = bound_report(_load_spec(args), args.pk, args.K)
    _emit(args, rep.to_dict(), "\n".join(rep.lines()))
    return 0


def _params(args, keys):
    d = {}
    if args.params:
        with open(args.params) as f:
            d.update(json.load(f))
    for k in keys:
        v = getattr(args, k)
        if v is not None:
            d[k] = v
    missing = [k for k in keys if k not in d]
    if missing:
        raise UsageError(f"missing parameters: {', '.join(missing)}")
    return d


def cmd_matveev(args) -> int:
    d = _params(args, ["l", "D", "A", "B_star"])
    v = matveev_log_lower(int(d["l"]), int(d["D"]), d["A"], float(d["B_star"]))
    _emit(args, {"inputs": d, "log_lambda_lower": v}, repr(v))
    return 0


def cmd_yu(args) -> int:
    d = _params(args, ["l", "D", "p", "e_pi", "f_pi", "H", "B_star"])
    v = yu_valuation_upper(int(d["l"]), int(d["D"]), int(d["p"]), int(d["e_pi"]),
                           int(d["f_pi"]), d["H"], float(d["B_star"]))
    _emit(args, {"inputs": d, "nu_upper": v}, repr(v))
    return 0


def cmd_reproduce(args) -> int:
    if args.smoke:
        cfg = RunConfig.smoke_config(workers=args.workers)
    else:
        cfg = RunConfig(workers=args.workers, width=args.width,
                        m_range=args.mrange or (2, 500),
                        factorial_caps=tuple(args.caps) if args.caps else (130, 100, 80),
                        two_cap=args.two_cap)
    bundle = run_reproduce(cfg)
    if args.out:
        bundle.write(args.out)
    if args.json:
        sys.stdout.write(json.dumps([f.to_dict() for f in bundle.fixtures], indent=1) + "\n")
    else:
        sys.stdout.write("\n".join(bundle.summary) + "\n")
    return bundle.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cullen-sunit", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    workers = _default_workers()

    def common(p, out=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if out:
            p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("lift", help="lift one residue class to depth K")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--target", type=parse_big_int, default=0, help="shift t (0: Cullen, 2: Woodall)")
    p.add_argument("--residue", type=int, required=True, help="starting class n0")
    p.add_argument("--depth", type=int, required=True, help="depth K")
    common(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("residues", help="the p-1 classes mod p(p-1) with p | n2^n+1-t")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--target", type=parse_big_int, default=0)
    common(p)
    p.set_defaults(func=cmd_residues)

    p = sub.add_parser("valbound", help="least certified cap on nu_p(n2^n+1-t) below a limit")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--target", type=parse_big_int, default=0)
    p.add_argument("--limit", type=parse_big_int, default=10**58)
    common(p)
    p.set_defaults(func=cmd_valbound)

    p = sub.add_parser("scan-nu2", help="max* nu_2(s + shift) over an S-unit box")
    p.add_argument("--primes", type=int_list, default=[3, 5, 7])
    p.add_argument("--caps", type=int_list, required=True)
    p.add_argument("--shifts", default="pm1",
                   help="'pm1' (with --mrange: +-1 +- m!) or comma-separated integers")
    p.add_argument("--mrange", type=int_pair)
    p.add_argument("--width", type=int, default=32, choices=(24, 32, 64))
    p.add_argument("--workers", type=int, default=workers)
    p.add_argument("--checkpoint", help="JSON checkpoint file; resumes if present")
    p.add_argument("--keep-cancelling", action="store_true",
                   help="do not skip cells where s cancels the +-1 part of the shift")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("solve", help="enumerate u_n +- m! = +-s")
    p.add_argument("--families", type=lambda s: [x for x in s.split(",") if x],
                   default=["cullen", "woodall"])
    p.add_argument("--nmax", type=int, default=30)
    p.add_argument("--mrange", type=int_pair, default=(2, 500))
    p.add_argument("--primes", type=int_list, default=[3, 5, 7])
    p.add_argument("--caps", type=int_list, default=[130, 100, 80])
    p.add_argument("--two-cap", type=int, help="also allow a factor 2^e, e <= this cap")
    p.add_argument("--csv", help="also write the table as CSV here")
    p.add_argument("--workers", type=int, default=workers)
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="evaluate the explicit bounds for a recurrence")
    p.add_argument("--preset", default="cullen", choices=("cullen", "woodall"))
    p.add_argument("--spec", help='JSON {"r":[r1,r2,r3],"u":[u0,u1,u2]} or a file holding it')
    p.add_argument("--pk", type=int, default=7, help="largest prime of the S-unit set")
    p.add_argument("--K", type=int, default=1, help="bound on |A|, |B|")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("matveev", help="lower bound for log|Lambda| (real case)")
    p.add_argument("--l", type=int)
    p.add_argument("--D", type=int)
    p.add_argument("--A", type=float_list)
    p.add_argument("--B-star", dest="B_star", type=float)
    p.add_argument("--params", help="JSON file with any of l, D, A, B_star")
    common(p)
    p.set_defaults(func=cmd_matveev)

    p = sub.add_parser("yu", help="upper bound for a p-adic valuation of Lambda")
    p.add_argument("--l", type=int)
    p.add_argument("--D", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--e-pi", dest="e_pi", type=int)
    p.add_argument("--f-pi", dest="f_pi", type=int)
    p.add_argument("--H", type=float_list)
    p.add_argument("--B-star", dest="B_star", type=float)
    p.add_argument("--params", help="JSON file with any of l, D, p, e_pi, f_pi, H, B_star")
    common(p)
    p.set_defaults(func=cmd_yu)

    p = sub.add_parser("reproduce", help="full pipeline with comparison against published values")
    p.add_argument("--smoke", action="store_true", help="m <= 50, factorial box caps 60,50,40")
    p.add_argument("--mrange", type=int_pair)
    p.add_argument("--caps", type=int_list, help="factorial scan caps a,b,c")
    p.add_argument("--two-cap", type=int)
    p.add_argument("--width", type=int, default=32, choices=(24, 32, 64))
    p.add_argument("--workers", type=int, default=workers)
    p.add_argument("--out", help="bundle directory")
    p.add_argument("--json", action="store_true", help="print fixtures as JSON")
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        ap.error("--workers must be >= 1")
    try:
        return args.func(args)
    except (UsageError, CullenSunitError, ValueError) as e:
        print(f"{ap.prog} {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
