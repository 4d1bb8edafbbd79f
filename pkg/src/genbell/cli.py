"""Command-line front end.

Every subcommand emits OutputRecords: JSON lines by default, or CSV rows of
the record's table with ``--format csv``. Exact integers are always decimal
strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field

import mpmath as mp

from .coherent_states import CoherentFamily, normalization, overlap, state_coefficients
from .core import ApproxValue, FamilyParams, GenBellError, PrecisionContext, recover_integer
from .dobinski import dobinski
from .errata import ERRATA, FORMULA_ERRATA, format_errata
from .generating_functions import egf_coefficients
from .measures import comb_moment, eval_weight, moment_quadrature, weight_spec
from .moment_analysis import asymptotic_b21, asymptotic_b31, hankel_determinants
from .normal_order import bell_number, bell_sequence, stirling_table
from .verification import all_passed, run_all

SCHEMA = "genbell.output/1"


@dataclass
class OutputRecord:
    command: str
    parameters: dict
    results: dict
    rows: list = field(default_factory=list)
    timing: float | None = None
    schema: str = SCHEMA

    def to_json(self) -> str:
        data = {
            "schema": self.schema,
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "rows": self.rows,
        }
        if self.timing is not None:
            data["timing_s"] = self.timing
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        data = json.loads(text)
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        return cls(
            command=data["command"],
            parameters=data["parameters"],
            results=data["results"],
            rows=data["rows"],
            timing=data.get("timing_s"),
        )


def _digits(bits: int) -> int:
    return max(15, int(bits * 0.30103) - 2)


def serialize_approx(v: ApproxValue, bits: int) -> dict:
    d = _digits(bits)
    if isinstance(v.value, mp.mpc):
        value = {"re": mp.nstr(v.value.real, d), "im": mp.nstr(v.value.imag, d)}
    else:
        value = mp.nstr(v.value, d)
    return {"value": value, "error_bound": mp.nstr(v.error_bound, 6), "rigorous": v.rigorous}


def _ctx(args) -> PrecisionContext:
    return PrecisionContext(args.bits, args.tail_bound, args.max_terms)


def _params(args) -> FamilyParams:
    return FamilyParams(args.r, args.s)


# ------------------------------------------------------------------ subcommands


def cmd_stirling(args):
    p = _params(args)
    row = stirling_table(p, args.n)
    rows = [{"k": k, "S": str(v)} for k, v in sorted(row.entries.items())]
    return [OutputRecord("stirling", {"r": p.r, "s": p.s, "n": args.n},
                         {"row_sum": str(row.row_sum())}, rows)]


def cmd_bell(args):
    p = _params(args)
    seq = bell_sequence(p, args.max_n)
    rows = [{"n": n, "B": str(v)} for n, v in enumerate(seq.values)]
    results = {"values": [str(v) for v in seq.values]}
    if args.cross_check:
        ctx = _ctx(args)
        series = [recover_integer(lambda c, n=n: dobinski(p, n, c), ctx)[0] for n in range(args.max_n + 1)]
        for row, v in zip(rows, series):
            row["dobinski"] = str(v)
        results["dobinski_match"] = list(seq.values) == series
    return [OutputRecord("bell", {"r": p.r, "s": p.s, "max_n": args.max_n}, results, rows)]


def cmd_dobinski(args):
    p, ctx = _params(args), _ctx(args)
    value = dobinski(p, args.n, ctx)
    integer, recovered = recover_integer(lambda c: dobinski(p, args.n, c), ctx)
    exact = bell_number(p, args.n)
    results = {
        "approx": serialize_approx(value, ctx.precision_bits),
        "recovered": serialize_approx(recovered, ctx.precision_bits),
        "rounded": str(integer),
        "exact": str(exact),
        "integer_match": integer == exact,
    }
    return [OutputRecord("dobinski", {"r": p.r, "s": p.s, "n": args.n, "bits": ctx.precision_bits}, results)]


def cmd_moments(args):
    p = _params(args)
    ctx = _ctx(args)
    rows = []
    if p.r == p.s:
        kind = "dirac_comb"
        for n in range(1, args.max_n + 1):
            v = comb_moment(p.r, n, ctx)
            exact = bell_number(p, n)
            with mp.workprec(ctx.precision_bits):
                rel = abs(v.value - exact) / exact
            rows.append(_moment_row(n, exact, v, rel, ctx.precision_bits))
    else:
        spec = weight_spec(p.r, p.s, args.variant)
        kind = spec.kind
        qctx = ctx.with_bits(min(ctx.precision_bits, 128))
        for n in range(1, args.max_n + 1):
            rep = moment_quadrature(spec, n, qctx)
            rows.append(_moment_row(n, rep.exact, rep.quadrature, rep.relative_error, qctx.precision_bits))
    passed = all(float(r["relative_error"]) <= 1e-8 for r in rows)
    return [OutputRecord("moments", {"r": p.r, "s": p.s, "max_n": args.max_n, "kind": kind,
                                     "variant": args.variant}, {"all_within_1e-8": passed}, rows)]


def _moment_row(n, exact, approx, rel, bits):
    sa = serialize_approx(approx, bits)
    return {"n": n, "exact": str(exact), "value": sa["value"], "error_bound": sa["error_bound"],
            "rigorous": sa["rigorous"], "relative_error": mp.nstr(rel, 6)}


def cmd_weight(args):
    spec = weight_spec(args.r, args.s, args.variant)
    if not spec.continuous:
        raise ValueError(f"{spec.params} has a discrete comb; use 'moments' for its moments")
    ctx = _ctx(args)
    d = _digits(ctx.precision_bits)
    rows = []
    for x in args.x:
        w = eval_weight(spec, x, ctx)
        rows.append({"x": x, "W": mp.nstr(w.value, d), "error_bound": mp.nstr(w.error_bound, 6)})
    return [OutputRecord("weight", {"r": args.r, "s": args.s, "kind": spec.kind, "variant": args.variant},
                         {}, rows)]


def cmd_hankel(args):
    p = _params(args)
    seq = bell_sequence(p, 2 * args.max_order)
    rows = []
    for order in range(1, args.max_order + 1):
        rep = hankel_determinants(seq, order)
        rows.append({"order": order, "det0": str(rep.det0), "det1": str(rep.det1), "positive": rep.positive})
    return [OutputRecord("hankel", {"r": p.r, "s": p.s, "max_order": args.max_order},
                         {"all_positive": all(r["positive"] for r in rows)}, rows)]


def cmd_egf(args):
    series = egf_coefficients(args.r, args.max_n)
    rows = [{"n": n, "coefficient": str(c), "times_factorial": str(v)}
            for n, (c, v) in enumerate(zip(series, series.egf_values()))]
    return [OutputRecord("egf", {"r": args.r, "max_n": args.max_n}, {}, rows)]


def cmd_asympt(args):
    fn = asymptotic_b21 if args.family == "21" else asymptotic_b31
    ctx = _ctx(args)
    rows = []
    for n in args.n:
        rep = fn(n, ctx)
        rows.append({"n": n, "exact": str(rep.exact), "asymptotic": mp.nstr(rep.asymptotic, 20),
                     "ratio": mp.nstr(rep.ratio, 12), "implied_subleading": mp.nstr(rep.implied_subleading, 8)})
    return [OutputRecord("asympt", {"family": args.family, "n": list(args.n)}, {}, rows)]


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected RE,IM")
    return complex(float(parts[0]), float(parts[1]))


def cmd_coherent(args):
    p, ctx = _params(args), _ctx(args)
    fam = CoherentFamily(p)
    z = args.z
    state = state_coefficients(fam, z, args.cutoff, ctx)
    norm = normalization(fam, abs(z) ** 2, ctx)
    d = _digits(ctx.precision_bits)
    with mp.workprec(ctx.precision_bits):
        rows = [{"n": n, "re": mp.nstr(c.real, d), "im": mp.nstr(c.imag, d),
                 "probability": mp.nstr(abs(c) ** 2, d)}
                for n, c in enumerate(state.coefficients)]
        norm_sq = state.norm_squared()
    results = {
        "normalization": serialize_approx(norm, ctx.precision_bits),
        "norm_squared": mp.nstr(norm_sq, d),
        "tail_weight": mp.nstr(state.tail_weight, 6),
        "self_overlap": serialize_approx(overlap(fam, z, z, ctx), ctx.precision_bits),
    }
    if args.overlap:
        results["overlaps"] = [
            {"w": [w.real, w.imag], **serialize_approx(overlap(fam, z, w, ctx), ctx.precision_bits)}
            for w in args.overlap
        ]
    return [OutputRecord("coherent", {"r": p.r, "s": p.s, "z": [z.real, z.imag], "cutoff": args.cutoff},
                         results, rows)]


def cmd_verify(args):
    results = run_all(args.grid)
    rows = [{"check": r.name, "passed": r.passed, "gating": r.gating, "detail": r.detail} for r in results]
    failures = [r.name for r in results if r.gating and not r.passed]
    rec = OutputRecord("verify", {"target": args.target, "grid": args.grid},
                       {"all_passed": not failures, "failures": failures}, rows)
    return [rec], (0 if all_passed(results) else 1)


def cmd_errata(args):
    entries = ERRATA if args.include_weights else FORMULA_ERRATA
    rows = [e.as_dict() for e in entries]
    results = {"count": len(rows)}
    if args.format == "text":
        results["text"] = format_errata(entries)
    return [OutputRecord("errata", {"include_weights": args.include_weights}, results, rows)]


# ------------------------------------------------------------------ plumbing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bits", type=int, default=256, help="working precision in bits")
    common.add_argument("--tail-bound", type=float, default=1e-30, help="relative truncation target")
    common.add_argument("--max-terms", type=int, default=10**6)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall time in records")

    parser = argparse.ArgumentParser(prog="genbell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def family(sp, s=True):
        sp.add_argument("--r", type=int, required=True)
        if s:
            sp.add_argument("--s", type=int, required=True)

    sp = sub.add_parser("stirling", parents=[common], help="generalized Stirling numbers S_{r,s}(n,k)")
    family(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_stirling)

    sp = sub.add_parser("bell", parents=[common], help="generalized Bell numbers B_{r,s}(0..N)")
    family(sp)
    sp.add_argument("--max-n", type=int, default=10)
    sp.add_argument("--cross-check", action="store_true", help="also round the Dobinski series")
    sp.set_defaults(func=cmd_bell)

    sp = sub.add_parser("dobinski", parents=[common], help="Dobinski series value and integer match")
    family(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_dobinski)

    sp = sub.add_parser("moments", parents=[common], help="moments of the weight function")
    family(sp)
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--variant", choices=("derived", "printed"), default="derived")
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("weight", parents=[common], help="sample the weight function W(x)")
    family(sp)
    sp.add_argument("--x", type=float, nargs="+", default=[0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
    sp.add_argument("--variant", choices=("derived", "printed"), default="derived")
    sp.set_defaults(func=cmd_weight)

    sp = sub.add_parser("hankel", parents=[common], help="Hankel determinants of the Bell sequence")
    family(sp)
    sp.add_argument("--max-order", type=int, default=6)
    sp.set_defaults(func=cmd_hankel)

    sp = sub.add_parser("egf", parents=[common], help="EGF coefficients for B_{r,1}")
    family(sp, s=False)
    sp.add_argument("--max-n", type=int, default=10)
    sp.set_defaults(func=cmd_egf)

    sp = sub.add_parser("asympt", parents=[common], help="asymptotic expansions of B_{2,1}, B_{3,1}")
    sp.add_argument("--family", choices=("21", "31"), required=True)
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.set_defaults(func=cmd_asympt)

    sp = sub.add_parser("coherent", parents=[common], help="coherent-state amplitudes")
    family(sp)
    sp.add_argument("--z", type=_parse_complex, required=True, help="RE,IM (write negatives as --z=-1,0)")
    sp.add_argument("--cutoff", type=int, default=60)
    sp.add_argument("--overlap", type=_parse_complex, action="append", default=[], metavar="RE,IM",
                    help="also report <z|w>; repeatable, write negatives as --overlap=-1,0")
    sp.set_defaults(func=cmd_coherent)

    sp = sub.add_parser("verify", parents=[common], help="run the cross-validation suite")
    sp.add_argument("target", choices=("all",))
    sp.add_argument("--grid", choices=("small", "full"), default="small")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("errata", parents=[common], help="list corrected or flagged published formulas")
    sp.add_argument("--include-weights", action="store_true",
                    help="also list the weight-function constants found wrong by quadrature")
    sp.set_defaults(func=cmd_errata)
    return parser


def render(records, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        for rec in records:
            if not rec.rows:
                continue
            writer = csv.DictWriter(buf, fieldnames=list(rec.rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rec.rows)
        return buf.getvalue()
    if fmt == "text":
        out = []
        for rec in records:
            if "text" in rec.results:
                out.append(rec.results["text"])
            else:
                out.extend(" ".join(f"{k}={v}" for k, v in row.items()) for row in rec.rows)
        return "\n".join(out) + "\n"
    return "".join(rec.to_json() + "\n" for rec in records)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        produced = args.func(args)
    except (GenBellError, ValueError) as exc:
        print(f"genbell {args.command}: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(produced, tuple):
        produced, code = produced
    if args.timing:
        elapsed = round(time.perf_counter() - start, 3)
        for rec in produced:
            rec.timing = elapsed
    text = render(produced, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code:
        failed = produced[0].results.get("failures", [])
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()


__all__ = ["run", "main", "OutputRecord", "build_parser"]
