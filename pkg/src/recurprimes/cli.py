"""Command-line surface.

Every computation is exposed as a reproducible subcommand emitting table,
CSV or JSON output.  CSV blocks start with a ``# schema=<name>`` comment;
JSON payloads carry the same schema name, and integers are emitted as
decimal strings (sequence terms overflow every fixed-width type).

Exit codes: 0 success, 2 usage error, 3 precondition violation, 4 budget
exhaustion under --strict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

from . import arith, biased, census, heuristics, primdiv, sequences
from .errors import PreconditionError, SomosIntegralityError, SomosZeroError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4

LOG2 = 0.69314718055994530942


@dataclass
class RunConfig:
    subcommand: str
    parameters: dict
    output_format: str = "table"
    output_path: str | None = None
    seed: int | None = None
    effort_budget: int | None = None
    threads: int = 1
    strict: bool = False


@dataclass
class Report:
    schema: str
    rows: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    budget_exhausted: bool = False


def _encode_value(v):
    if isinstance(v, bool) or v is None or isinstance(v, float):
        return v
    if isinstance(v, int):
        return str(v)
    return v


def _decode_value(v):
    if isinstance(v, str) and (v.isdigit() or (v.startswith("-") and v[1:].isdigit())):
        return int(v)
    return v


def emit_json(report: Report) -> str:
    payload = {
        "schema": report.schema,
        "rows": [{k: _encode_value(v) for k, v in row.items()} for row in report.rows],
        "notes": report.notes,
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_json(text: str) -> Report:
    """Inverse of emit_json: decimal strings come back as ints."""
    payload = json.loads(text)
    rows = [{k: _decode_value(v) for k, v in row.items()} for row in payload["rows"]]
    return Report(schema=payload["schema"], rows=rows, notes=payload.get("notes", []))


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def emit_csv(report: Report) -> str:
    buf = io.StringIO()
    buf.write(f"# schema={report.schema}\n")
    if report.rows:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.rows[0].keys())
        for row in report.rows:
            writer.writerow(_cell(v) for v in row.values())
    return buf.getvalue()


def emit_table(report: Report) -> str:
    lines = []
    if report.rows:
        headers = list(report.rows[0].keys())
        cells = [[_cell(v) for v in row.values()] for row in report.rows]
        widths = [
            max(len(h), *(len(r[i]) for r in cells)) for i, h in enumerate(headers)
        ]
        lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
        for r in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    for note in report.notes:
        lines.append(f"# {note}")
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return emit_json(report)
    if fmt == "csv":
        return emit_csv(report)
    return emit_table(report)


def _primes_cell(primes, incomplete: bool) -> str:
    body = ",".join(str(p) for p in primes)
    return "{" + body + ("...!" if incomplete else "") + "}"


# ---------------------------------------------------------------- sequences


def _sequence_from_flags(args) -> sequences.SequenceSpec:
    name = args.sequence
    if name == "mersenne":
        return sequences.Mersenne()
    if name == "fibonacci":
        return sequences.LucasU(1, -1)
    if name == "powerdiff":
        _require(args.a is not None and args.b is not None, "powerdiff needs --a and --b")
        return sequences.PowerDiff(args.a, args.b)
    if name in ("lucas-u", "lucas-v"):
        _require(args.trace is not None and args.norm is not None,
                 f"{name} needs --trace and --norm")
        cls = sequences.LucasU if name == "lucas-u" else sequences.LucasV
        return cls(args.trace, args.norm)
    if name == "w":
        _require(args.trace is not None and args.norm is not None,
                 "w needs --trace and --norm")
        return sequences.WSequence(args.trace, args.norm, negate=args.negate)
    if name == "quadratic":
        _require(args.beta is not None, "quadratic needs --beta")
        return sequences.QuadraticPoly(args.beta)
    if name == "somos":
        return sequences.Somos(args.e, args.f, _parse_init(args.init))
    raise PreconditionError(f"unknown sequence {name!r}")


def _parse_init(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise PreconditionError(f"bad --init list {text!r}") from exc


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionError(message)


def cmd_primdiv(args) -> Report:
    spec = _sequence_from_flags(args)
    terms = sequences.generate(spec, args.max_n)
    report = Report(schema="primdiv.v1")
    for n in range(1, args.max_n + 1):
        t = terms[n - 1]
        if t == 0:
            report.rows.append(
                dict(n=n, term=0, factorization="0", primitive_part=None,
                     primitive_primes="{}", has_primitive=None, incomplete=False)
            )
            continue
        part = primdiv.primitive_part(terms, n)
        fac = arith.factor(t, budget=args.budget) if t != 0 else None
        primes, incomplete = primdiv.primitive_primes(terms, n, budget=args.budget)
        report.budget_exhausted |= incomplete or not fac.complete
        report.rows.append(
            dict(
                n=n,
                term=t,
                factorization=str(fac),
                primitive_part=part,
                primitive_primes=_primes_cell(primes, incomplete),
                has_primitive=part > 1,
                incomplete=incomplete or not fac.complete,
            )
        )
    return report


def cmd_somos(args) -> Report:
    integ = sequences.check_somos_integrality(args.e, args.f, _parse_init(args.init),
                                              args.max_n)
    if not integ.all_integral:
        raise SomosIntegralityError(integ.first_violation)
    spec = sequences.Somos(args.e, args.f, _parse_init(args.init))
    terms = sequences.generate(spec, args.max_n)
    parts = primdiv.primitive_part_scan(terms)
    report = Report(schema="somos.v1")
    for n, (t, part) in enumerate(zip(terms, parts), start=1):
        report.rows.append(
            dict(
                n=n,
                term=t,
                is_prime=arith.is_prime(t, seed=args.seed),
                primitive_part=part,
                has_primitive=part > 1,
            )
        )
    report.notes.append(f"integral through n={integ.checked_through}")
    return report


def cmd_recurrence(args) -> Report:
    coeffs = _parse_init(args.coeffs)
    analysis = sequences.analyze_recurrence(coeffs)
    report = Report(schema="recurrence.v1")
    for i, (root, mult) in enumerate(zip(analysis.roots, analysis.multiplicities)):
        report.rows.append(
            dict(index=i, real=root.real, imag=root.imag, multiplicity=mult)
        )
    report.notes.append(f"degenerate={analysis.degenerate}")
    if analysis.degeneracy_witness:
        i, j, m = analysis.degeneracy_witness
        report.notes.append(f"witness: (root{i}/root{j})^{m} = 1")
    report.notes.append(f"residual={analysis.residual:.3e}")
    return report


def cmd_biased(args) -> Report:
    _require(args.max_n <= biased.MAX_COUNT_LIMIT,
             f"--max-n above {biased.MAX_COUNT_LIMIT}")
    if args.method not in ("oracle", "formula", "both"):
        raise PreconditionError(f"unknown method {args.method!r}")
    report = Report(schema="biased.v1")
    oracle = biased.count_biased_oracle(args.max_n) if args.method != "formula" else None
    formula = biased.count_biased_formula(args.max_n) if args.method != "oracle" else None
    count = oracle if oracle is not None else formula
    report.rows.append(
        dict(
            N=args.max_n,
            oracle_count=oracle,
            formula_count=formula,
            ratio=count / args.max_n,
            log2=LOG2,
        )
    )
    return report


def cmd_census(args) -> Report:
    run = census.CensusRun(args.beta, args.max_n, K=args.K)
    if args.audit:
        report = Report(schema="census-audit.v1")
        for rec in run.records():
            report.rows.append(
                dict(
                    n=rec.n,
                    P_n=rec.value,
                    lpf=rec.largest_prime_factor,
                    has_primitive=rec.has_primitive,
                    leftover_prime=rec.leftover_prime,
                )
            )
        return report
    r = run.result
    bounds = None
    if args.max_n >= 1000:
        bounds = census.theorem3_bounds_check(args.beta, args.max_n, args.C, args.D,
                                              run=run)
    logq = census.log_QN_check(args.beta, args.max_n, run=run)
    report = Report(schema="census.v1")
    row = dict(
        beta=r.beta, N=r.N, rho=r.rho, ratio=r.ratio, log2=LOG2,
        no_primitive=r.no_primitive_count, omega_QN=r.omega_QN,
        s=r.s, s_prime=r.s_prime, t=r.t, u=r.u, K=r.K,
        log_QN=r.log_QN, stirling=logq.stirling, gap=logq.gap,
    )
    if bounds:
        row.update(
            upper_ok=bounds.upper_ok, lower_ok=bounds.lower_ok,
            upper_margin=bounds.upper_margin, lower_margin=bounds.lower_margin,
        )
    report.rows.append(row)
    return report


def cmd_heuristics(args) -> Report:
    kind = args.kind
    report = Report(schema=f"heuristics-{kind}.v1")
    if kind == "fermat":
        value = heuristics.fermat_expected_count(args.max_n)
        report.rows.append(
            dict(kind=kind, N=args.max_n, expected=value, bound=1 / LOG2,
                 truncation=f"n<={args.max_n}")
        )
    elif kind == "mersenne":
        mc = heuristics.mersenne_expected_count(args.max_n)
        report.rows.append(
            dict(kind=kind, N=args.max_n, sum_rho=mc.sum_rho, wagstaff=mc.wagstaff,
                 truncation=f"primes p<{args.max_n}")
        )
    elif kind == "somos":
        terms = sequences.generate(
            sequences.Somos(args.e, args.f, _parse_init(args.init)), args.max_n
        )
        fit = heuristics.somos_growth_fit(terms)
        observed = sum(1 for t in terms if arith.is_prime(t, seed=args.seed))
        report.rows.append(
            dict(kind=kind, N=args.max_n, h=fit.h, residual=fit.residual,
                 expected=heuristics.somos_expected_primes(fit.h, args.max_n),
                 ceiling=heuristics.somos_prime_ceiling(fit.h),
                 observed_primes=observed,
                 truncation=f"fit on upper half of n<={args.max_n}")
        )
    elif kind == "bateman-horn":
        _require(args.beta is not None, "bateman-horn needs --beta")
        d = heuristics.bateman_horn_d(args.beta, args.prime_bound)
        report.rows.append(
            dict(kind=kind, beta=args.beta, d=d,
                 truncation=f"primes p<={args.prime_bound}")
        )
    elif kind == "mertens":
        est = heuristics.mertens_partial_sum(args.x)
        report.rows.append(
            dict(kind=kind, x=est.x, partial_sum=est.partial_sum, loglog=est.loglog,
                 A_estimate=est.A_estimate, truncation=f"primes p<{est.x}")
        )
    else:
        raise PreconditionError(f"unknown heuristic kind {kind!r}")
    return report


# ------------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recurprimes",
        description="primitive divisors, biased numbers and prime heuristics",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--out", default=None, help="write output to a file")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for probabilistic primality above 2^64")
        p.add_argument("--budget", type=int, default=None,
                       help="factoring effort budget (rho iterations)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker-count hint (kernels currently run sequentially)")
        p.add_argument("--strict", action="store_true",
                       help="exit 4 when the factoring budget is exhausted")

    p = sub.add_parser("primdiv", help="per-term primitive divisor table")
    p.add_argument("--sequence", required=True,
                   choices=("mersenne", "fibonacci", "powerdiff", "lucas-u",
                            "lucas-v", "w", "quadratic", "somos"))
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--trace", type=int, default=None)
    p.add_argument("--norm", type=int, default=None)
    p.add_argument("--negate", action="store_true")
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--init", default="1,1,1,1")
    common(p)
    p.set_defaults(func=cmd_primdiv)

    p = sub.add_parser("somos", help="Somos terms with prime and primitive flags")
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--init", default="1,1,1,1")
    p.add_argument("--max-n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_somos)

    p = sub.add_parser("recurrence", help="characteristic roots and degeneracy")
    p.add_argument("--coeffs", required=True, help="c0,c1,... as in L(n+k)=sum c_i L(n+i)")
    common(p)
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("biased", help="count biased integers")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--method", default="both", help="oracle, formula or both")
    common(p)
    p.set_defaults(func=cmd_biased)

    p = sub.add_parser("census", help="quadratic sequence census")
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--K", type=int, default=10)
    p.add_argument("--C", type=float, default=0.1)
    p.add_argument("--D", type=float, default=1.0)
    p.add_argument("--audit", action="store_true", help="stream per-n sieve records")
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("heuristics", help="prime-count heuristics")
    p.add_argument("kind", choices=("fermat", "mersenne", "somos", "bateman-horn",
                                    "mertens"))
    p.add_argument("--max-n", type=int, default=100)
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--prime-bound", type=int, default=100_000)
    p.add_argument("--x", type=int, default=1_000_000)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--init", default="1,1,1,1")
    common(p)
    p.set_defaults(func=cmd_heuristics)

    return parser


def config_from_args(args) -> RunConfig:
    skip = {"func", "subcommand", "format", "out", "seed", "budget", "threads", "strict"}
    return RunConfig(
        subcommand=args.subcommand,
        parameters={k: v for k, v in vars(args).items() if k not in skip},
        output_format=args.format,
        output_path=args.out,
        seed=args.seed,
        effort_budget=args.budget,
        threads=args.threads,
        strict=args.strict,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        report = args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (SomosZeroError, SomosIntegralityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.strict and report.budget_exhausted:
        print("error: factoring budget exhausted", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
