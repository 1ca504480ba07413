"""Command-line front end.

Subcommands mirror the pipeline stages so each step is independently
invocable: weil (Frobenius polynomial at one prime), reduce (toric
witness check at one prime), bound (the full divisor bound), check-small
(the mod-3 certificate), verify (everything, with a verdict per l), and
fetch-hecke (explicit, opt-in network fetch of Hecke tables).

Exit codes: 0 success (for verify: every requested l surjective),
1 failure or inconclusive verdicts, 2 bad reduction, 3 missing Hecke
table.  Output is deterministic byte-for-byte for fixed inputs once
--no-timestamp is passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from .bounds import BoundReport, PrimeDatum, ToricWitness, bound, verdict
from .curve import (
    BadReductionError,
    CurveModelError,
    HyperellipticCurve,
    load_curve,
    reduction_profile,
    weil_polynomial,
)
from .finitefield import is_prime
from .hecke import FixtureDirectory, MissingHeckeTable, fetch_hecke_table, serialize_hecke_table
from .smallprime import DEFAULT_AUX_PRIMES, DEFAULT_REQUIRED_ORDER, certify, frobenius_order

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_REDUCTION = 2
EXIT_MISSING_HECKE = 3


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_witness(text: str) -> tuple[int, int]:
    # "q=3:phi=1"
    try:
        qpart, phipart = text.split(":")
        q = int(qpart.split("=")[1])
        phi = int(phipart.split("=")[1])
        return q, phi
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"witness must look like q=3:phi=1, got {text!r}")


def _primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in _factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def _semistable_reason(curve: HyperellipticCurve, assume: bool) -> str | None:
    if assume:
        return "asserted by user flag"
    if curve.conductor is not None and all(e == 1 for e in _factorize(curve.conductor).values()):
        return f"conductor {curve.conductor} is squarefree"
    return None


def _emit(payload: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------------------
# subcommands


def cmd_weil(args) -> int:
    curve = load_curve(args.curve)
    try:
        w = weil_polynomial(curve, args.p)
    except BadReductionError as exc:
        print(f"error: bad reduction: {exc}", file=sys.stderr)
        return EXIT_BAD_REDUCTION
    payload = {
        "p": args.p,
        "coefficients": [str(c) for c in w.poly().coeffs],
        "alpha": w.alpha,
        "beta": w.beta,
        "gamma": w.gamma,
        "jacobian_order": str(w.order()),
    }
    lines = [
        f"P_{args.p} = {w.poly()}",
        f"P_{args.p}(1) = {w.order()}",
    ]
    _emit(payload, args.json, lines)
    return EXIT_OK


def cmd_reduce(args) -> int:
    curve = load_curve(args.curve)
    prof = reduction_profile(curve, args.q)
    payload = {
        "q": args.q,
        "degree_drop": prof.degree_drop,
        "toric_dim_one": prof.toric_dim_one,
        "multiplicities": {
            str(m): [x[0] for x in part.coeffs]
            for m, part in sorted(prof.multiplicities.items())
        },
        "note": prof.note,
    }
    lines = [f"q = {args.q}", f"toric_dim_one = {str(prof.toric_dim_one).lower()}"]
    for m, part in sorted(prof.multiplicities.items()):
        lines.append(f"multiplicity {m}: {part} (degree {part.degree})")
    if prof.note:
        lines.append(f"note: {prof.note}")
    _emit(payload, args.json, lines)
    return EXIT_OK


def _gather_pipeline(args, need_hecke: bool = True):
    """Shared assembly for bound and verify: curve, data, witnesses, tables."""
    curve = load_curve(args.curve)
    primes = _parse_int_list(args.primes)
    data = [PrimeDatum.from_weil(weil_polynomial(curve, p)) for p in primes]

    witnesses = []
    witness_specs = list(args.witness or [])
    if not witness_specs and curve.component_groups:
        witness_specs = [(q, phi) for q, phi in sorted(curve.component_groups.items())]
    for q, phi in witness_specs:
        prof = reduction_profile(curve, q)
        witnesses.append(ToricWitness(q=q, phi_order=phi, toric_dim_one=prof.toric_dim_one))

    tables = []
    if need_hecke:
        if curve.conductor is None:
            raise CurveModelError("conductor required to enumerate Hecke levels")
        provider = FixtureDirectory(args.hecke)
        for level in _divisors(curve.conductor):
            tables.append(provider.load(level))

    semistable = _semistable_reason(curve, getattr(args, "assume_semistable", False))
    report = bound(data, tables=tables, witnesses=witnesses, semistable=semistable)
    return curve, report


def _report_lines(report: BoundReport) -> list[str]:
    lines = [f"T = {{{', '.join(str(p) for p in report.primes)}}}"]
    for d in report.data:
        lines.append(f"  p = {d.p}: P_p(1) = {d.order}")
    lines.append(f"B1 = {report.b1}")
    for lv in report.levels:
        if lv.dim == 0:
            lines.append(f"level {lv.level}: new subspace is zero-dimensional")
        else:
            lines.append(f"R({lv.level}, T) = {lv.r_mt} (dim {lv.dim})")
    lines.append(f"B2 = {report.b2 if report.b2 is not None else 'undefined'}")
    for t in report.traces:
        lines.append(f"  p = {t.p}: K_p = {t.case1.K}, K'_p = {t.case2.K}")
    lines.append(f"B3 = {report.b3}")
    lines.append(f"B4 = {report.b4}")
    lines.append(f"B(T) = {report.b if report.b is not None else 'undefined'}")
    for w in report.witnesses:
        lines.append(
            f"witness q = {w.q}: toric_dim_one = {str(w.toric_dim_one).lower()}, #Phi_q = {w.phi_order}"
        )
    for a in report.assumptions:
        lines.append(f"assumption: {a}")
    for n in report.notes:
        lines.append(f"note: {n}")
    for d in report.diagnostics:
        lines.append(f"diagnostic: {d}")
    return lines


def cmd_bound(args) -> int:
    try:
        curve, report = _gather_pipeline(args)
    except MissingHeckeTable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING_HECKE
    except BadReductionError as exc:
        print(f"error: bad reduction: {exc}", file=sys.stderr)
        return EXIT_BAD_REDUCTION
    payload = {"curve": curve.name, "bound_report": report.to_dict()}
    if not args.no_timestamp:
        payload["generated_at"] = datetime.now(timezone.utc).isoformat()
    _emit(payload, args.json, _report_lines(report))
    return EXIT_OK if not report.diagnostics else EXIT_FAIL


def cmd_check_small(args) -> int:
    curve = load_curve(args.curve)
    ell = args.ell
    aux = _parse_int_list(args.aux)
    orders = {}
    for p in aux:
        w = weil_polynomial(curve, p)
        orders[p] = frobenius_order(w, ell)
    cert = certify(orders, required_order=args.required_order, ell=ell)
    payload = {"curve": curve.name, "small_prime": cert.to_dict()}
    lines = [f"ell = {ell}"]
    for p, n in sorted(orders.items()):
        lines.append(f"N_{p} = {n}")
    lines.append(f"lcm = {cert.achieved_lcm}")
    lines.append(f"required order = {cert.required_order}")
    lines.append(f"certified = {str(cert.certified).lower()}")
    _emit(payload, args.json, lines)
    return EXIT_OK if cert.certified else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.ell:
        ells = _parse_int_list(args.ell)
    elif args.ell_upto:
        ells = _primes_upto(args.ell_upto)
    else:
        print("error: provide --ell or --ell-upto", file=sys.stderr)
        return EXIT_FAIL
    try:
        curve, report = _gather_pipeline(args)
    except MissingHeckeTable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING_HECKE
    except BadReductionError as exc:
        print(f"error: bad reduction: {exc}", file=sys.stderr)
        return EXIT_BAD_REDUCTION

    cert = None
    if 3 in ells and not args.no_small_prime:
        orders = {}
        for p in _parse_int_list(args.aux):
            orders[p] = frobenius_order(weil_polynomial(curve, p), 3)
        cert = certify(orders, required_order=args.required_order, ell=3)

    verdicts = []
    for ell in sorted(ells):
        v = verdict(ell, report)
        if ell == 3 and cert is not None and cert.certified and not v.surjective:
            reason = (
                f"mod-3 certificate: lcm of Frobenius orders = {cert.achieved_lcm} "
                f"is divisible by {cert.required_order} ({cert.assumption})"
            )
            verdicts.append({"ell": ell, "status": "surjective", "reason": reason})
        else:
            verdicts.append({"ell": ell, "status": v.status, "reason": v.reason})

    payload = {
        "curve": curve.name,
        "assumptions": list(report.assumptions),
        "bound_report": report.to_dict(),
        "small_prime": cert.to_dict() if cert is not None else None,
        "verdicts": verdicts,
    }
    if not args.no_timestamp:
        payload["generated_at"] = datetime.now(timezone.utc).isoformat()

    lines = _report_lines(report)
    lines.append("verdicts:")
    for v in verdicts:
        status = v["status"].upper()
        suffix = f" ({v['reason']})" if v["reason"] else ""
        lines.append(f"  ell = {v['ell']}: {status}{suffix}")
    _emit(payload, args.json, lines)
    return EXIT_OK if all(v["status"] == "surjective" for v in verdicts) else EXIT_FAIL


def cmd_fetch_hecke(args) -> int:
    endpoint = args.endpoint or os.environ.get("HECKE_DB_URL")
    if not endpoint:
        print("error: no endpoint (use --endpoint or HECKE_DB_URL)", file=sys.stderr)
        return EXIT_FAIL
    cache = args.cache or os.environ.get("HECKE_CACHE_DIR")
    table = fetch_hecke_table(args.level, _parse_int_list(args.primes), endpoint, cache_dir=cache)
    if args.print_table:
        sys.stdout.write(serialize_hecke_table(table))
    else:
        print(f"level {table.level}: dim {table.dim}, primes {list(table.primes)}")
        if cache:
            print(f"cached under {Path(cache)}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="g3surj", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--curve", required=True, help="curve JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    w = sub.add_parser("weil", help="Frobenius polynomial at one prime")
    add_common(w)
    w.add_argument("--p", type=int, required=True)
    w.set_defaults(func=cmd_weil)

    r = sub.add_parser("reduce", help="reduction profile / toric witness at one odd prime")
    add_common(r)
    r.add_argument("--q", type=int, required=True)
    r.set_defaults(func=cmd_reduce)

    def add_pipeline(p):
        add_common(p)
        p.add_argument("--primes", default="2,5,7", help="comma-separated good primes T")
        p.add_argument("--witness", action="append", type=_parse_witness,
                       help="toric witness, e.g. q=3:phi=1 (defaults to the curve's component groups)")
        p.add_argument("--hecke", required=True, help="directory of hecke_M<level>.txt tables")
        p.add_argument("--assume-semistable", action="store_true")
        p.add_argument("--no-timestamp", action="store_true")

    b = sub.add_parser("bound", help="compute the divisor bound B(T)")
    add_pipeline(b)
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("check-small", help="small-prime certificate via Frobenius orders")
    add_common(s)
    s.add_argument("--ell", type=int, default=3)
    s.add_argument("--aux", default=",".join(str(p) for p in DEFAULT_AUX_PRIMES))
    s.add_argument("--required-order", type=int, default=DEFAULT_REQUIRED_ORDER)
    s.set_defaults(func=cmd_check_small)

    v = sub.add_parser("verify", help="full verdict table over requested primes l")
    add_pipeline(v)
    v.add_argument("--ell", help="comma-separated list of primes l")
    v.add_argument("--ell-upto", type=int, help="all primes l up to this bound")
    v.add_argument("--aux", default=",".join(str(p) for p in DEFAULT_AUX_PRIMES))
    v.add_argument("--required-order", type=int, default=DEFAULT_REQUIRED_ORDER)
    v.add_argument("--no-small-prime", action="store_true", help="skip the mod-3 certificate")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fetch-hecke", help="fetch a Hecke table over HTTP (explicit network opt-in)")
    f.add_argument("--level", type=int, required=True)
    f.add_argument("--primes", default="2,5,7")
    f.add_argument("--endpoint", help="database URL (default: HECKE_DB_URL)")
    f.add_argument("--cache", help="cache directory (default: HECKE_CACHE_DIR)")
    f.add_argument("--print-table", action="store_true")
    f.set_defaults(func=cmd_fetch_hecke)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CurveModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
