"""Command-line entry point: ``codedisc <command> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import codes, lp_bounds as lp, metric_space as ms
from .discrepancy import discrepancy_brute, discrepancy_dual, discrepancy_spectrum
from .errors import (
    DomainError,
    IdentityMismatchError,
    ParseError,
    ResourceLimitError,
    ValidationError,
)
from .identities import verify
from .kernels import ORACLE_LIMIT, lambda_average
from .montecarlo import monte_carlo
from .rational import to_sig
from .tables import hamming_table

EXIT_OK, EXIT_VALIDATION, EXIT_IDENTITY, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class Output:
    """Ordered key/value record plus optional CSV rows."""

    record: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    text: list = field(default_factory=list)
    status: int = EXIT_OK


class Formatter:
    def __init__(self, digits: int):
        self.digits = digits

    def q(self, value) -> str:
        return str(Fraction(value))

    def dec(self, value) -> str:
        return to_sig(Fraction(value), self.digits)

    def both(self, value) -> str:
        return f"{self.q(value)} ({self.dec(value)})"


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out.record, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        if out.rows:
            writer = csv.DictWriter(buf, fieldnames=list(out.rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(out.rows)
        else:
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["key", "value"])
            for k, v in out.record.items():
                writer.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
        return buf.getvalue().rstrip("\n")
    return "\n".join(out.text)


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def _load_code(args) -> codes.BinaryCode:
    if (args.code is None) == (args.file is None):
        raise DomainError("give exactly one of --code or --file")
    if args.code is not None:
        if args.generator:
            raise DomainError("--generator applies to --file only")
        return codes.from_id(args.code)
    text = Path(args.file).read_text()
    name = Path(args.file).name
    if args.generator:
        return codes.parse_generator(text, name=name)
    return codes.parse_code(text, name=name)


def cmd_disc(args, f: Formatter) -> Output:
    code = _load_code(args)
    dd = codes.distance_distribution(code)
    dual = codes.dual_distribution(code)
    value = discrepancy_spectrum(dd)
    dual_value = discrepancy_dual(dual)
    if dual_value != value:
        raise IdentityMismatchError(f"spectrum {value} != dual {dual_value}")
    out = Output()
    r = out.record
    r.update(
        code=code.name or "file",
        n=code.n,
        N=code.N,
        distance_distribution=[f.q(a) for a in dd.A],
        dual_distribution=[f.q(a) for a in dual.values],
        discrepancy=f.q(value),
        decimal=f.dec(value),
    )
    out.text += [
        f"code: {r['code']}",
        f"n = {code.n}, N = {code.N}",
        "A  = (" + ", ".join(r["distance_distribution"]) + ")",
        "A' = (" + ", ".join(r["dual_distribution"]) + ")",
        f"D = {f.both(value)}",
    ]
    if args.brute:
        brute = discrepancy_brute(code, limit=args.oracle_limit)
        r["brute"] = f.q(brute)
        r["oracle_agrees"] = brute == value
        out.text.append(f"definition: {f.both(brute)} [{'agree' if brute == value else 'MISMATCH'}]")
        if brute != value:
            out.status = EXIT_IDENTITY
    out.rows = [{"w": w, "A": f.q(a), "A_dual": f.q(b)} for w, (a, b) in enumerate(zip(dd.A, dual.values))]
    return out


def cmd_bound(args, f: Formatter) -> Output:
    n, N = args.n, args.N
    chosen = [k for k in ("lp", "constant", "two_term", "hamming_type") if getattr(args, k)]
    if not chosen:
        chosen = ["lp"]
    if args.emit_cert and len(chosen) != 1:
        raise DomainError("--emit-cert needs exactly one bound family")
    out = Output(record={"n": n, "N": N})
    lam_avg = lambda_average(n)
    cert = None
    for kind in chosen:
        if kind == "lp":
            res = lp.primal_discrepancy_lp(n, N)
            energy = res.value
            dual_value, cert = lp.dual_lp(n, N)
            if dual_value != energy:
                raise IdentityMismatchError(f"primal {energy} != dual {dual_value}")
            extra = {"distribution": ["1"] + [f.q(a) for a in res.solution]}
        elif kind == "constant":
            energy, cert, extra = lp.bound_constant(n, N), lp.constant_certificate(n, N), {}
        elif kind == "two_term":
            energy, cert, extra = lp.bound_two_term(n, N), lp.two_term_certificate(n, N), {}
        else:
            energy, cert = lp.bound_hamming_type(n, N), lp.hamming_type_certificate(n, N)
            extra = {}
        d = lam_avg - energy / N
        out.record[kind] = {"energy": f.q(energy), "discrepancy": f.q(d), **extra}
        out.text.append(f"{kind}: E <= {f.both(energy)}, D >= {f.both(d)}")
        if "distribution" in extra:
            out.text.append("  distribution: (" + ", ".join(extra["distribution"]) + ")")
        out.rows.append({"bound": kind, "energy": f.q(energy), "discrepancy": f.q(d), "decimal": f.dec(d)})
    if args.emit_cert:
        Path(args.emit_cert).write_text(cert.to_json() + "\n")
        out.record["certificate"] = {"path": args.emit_cert, "feasible": cert.feasible}
        out.text.append(f"certificate written to {args.emit_cert} (feasible: {cert.feasible})")
        if not cert.feasible:
            out.status = EXIT_IDENTITY
    return out


def cmd_table(args, f: Formatter) -> Output:
    out = Output()
    cells = hamming_table()
    out.text.append("row,m,printed,computed,exact,verdict")
    for c in cells:
        computed = str(c.truncated if c.verdict == "truncated" else c.rounded)
        row = {
            "row": c.row,
            "m": c.m,
            "printed": c.printed,
            "computed": computed,
            "exact": f.q(c.exact),
            "verdict": c.verdict,
        }
        out.rows.append(row)
        out.text.append(",".join(str(v) for v in row.values()))
    out.record = {"cells": out.rows}
    return out


def cmd_verify(args, f: Formatter) -> Output:
    rep = verify(args.n_max)
    out = Output(record={"n_max": args.n_max, "checks": len(rep.checks), "passed": rep.passed})
    out.record["failures"] = [str(c) for c in rep.failures]
    out.text.append(rep.summary())
    out.text += [str(c) for c in rep.failures]
    out.rows = [{"check": c.name, "params": json.dumps(c.params), "passed": c.passed} for c in rep.checks]
    if not rep.passed:
        out.status = EXIT_IDENTITY
    return out


def cmd_random(args, f: Formatter) -> Output:
    rep = monte_carlo(args.n, args.N, args.trials, args.seed, args.threads)
    r = {
        "n": rep.n,
        "N": rep.N,
        "trials": rep.trials,
        "seed": rep.seed,
        "mean": f.q(rep.mean),
        "expected": f.q(rep.expected),
        "variance_bound": f.q(rep.variance_bound),
        "exact_variance": f.q(rep.exact_variance),
    }
    text = [
        f"n = {rep.n}, N = {rep.N}, trials = {rep.trials}, seed = {rep.seed}",
        f"sample mean: {f.both(rep.mean)}",
        f"expected:    {f.both(rep.expected)}",
    ]
    if rep.trials > 1:
        r.update(
            variance=f.q(rep.variance),
            standard_error=f"{rep.standard_error:.6g}",
            z=f"{rep.z_score:.4f}" if rep.z_score is not None else None,
            mean_within_3se=rep.mean_ok,
            variance_below_bound=rep.variance_ok,
        )
        text += [
            f"standard error: {rep.standard_error:.6g} (z = {r['z']})",
            f"sample variance: {f.dec(rep.variance)}; bound {f.dec(rep.variance_bound)}; "
            f"exact {f.dec(rep.exact_variance)}",
            f"mean within 3 SE: {rep.mean_ok}; variance below bound: {rep.variance_ok}",
        ]
    else:
        r["value"] = f.q(rep.values[0])
    out = Output(record=r, text=text)
    out.rows = [{"trial": i, "seed": rep.seed + i, "D": f.q(v), "decimal": f.dec(v)} for i, v in enumerate(rep.values)]
    return out


def _load_space(spec: str) -> ms.FiniteMetricSpace:
    path = Path(spec)
    if path.exists():
        return ms.load_space(path.read_text())
    kind, *rest = spec.split(":")
    try:
        ints = [int(v) for v in rest]
        builders = {"cycle": ms.cycle_space, "hamming": ms.hamming_space, "johnson": ms.johnson_space}
        return builders[kind](*ints)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise DomainError(f"no space file or builtin named {spec!r}") from exc


def cmd_space(args, f: Formatter) -> Output:
    S = _load_space(args.space)
    try:
        Z = [int(v) for v in args.subset.split(",") if v.strip()]
    except ValueError as exc:
        raise DomainError(f"bad subset {args.subset!r}") from exc
    D = ms.general_discrepancy(S, Z)
    brute = ms.discrepancy_definition(S, Z)
    r = {"P": S.P, "diameter": S.n, "subset": Z, "discrepancy": f.q(D), "definition": f.q(brute)}
    agree = brute == D
    text = [f"space: P = {S.P}, diameter = {S.n}", f"D = {f.both(D)}", f"definition: {f.both(brute)}"]
    try:
        scheme = ms.scheme_from_space(S)
    except ValidationError as exc:
        r["scheme"] = None
        text.append(f"association scheme: none ({exc})")
    else:
        sd = ms.scheme_discrepancy(scheme, ms.class_distribution(S, Z), len(Z))
        r["scheme"] = f.q(sd)
        agree &= sd == D
        text.append(f"association scheme: {f.both(sd)}")
    if args.weights:
        G = ms.parse_weights(Path(args.weights).read_text())
        DG = ms.weighted_discrepancy(S, Z, G)
        r["weighted"] = f.q(DG)
        r["weighted_orientation"] = ms.WEIGHTED_ORIENTATION
        text.append(f"weighted: {f.both(DG)} ({ms.WEIGHTED_ORIENTATION})")
    r["agree"] = agree
    text.append(f"formulas agree: {agree}")
    out = Output(record=r, text=text)
    out.rows = [{k: (json.dumps(v) if isinstance(v, list) else v) for k, v in r.items()}]
    if not agree:
        out.status = EXIT_IDENTITY
    return out


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def _positive(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--digits", type=_positive, default=6, help="significant digits for decimals")

    p = argparse.ArgumentParser(prog="codedisc", description="Quadratic discrepancy of binary codes.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("disc", parents=[common], help="discrepancy of a code")
    d.add_argument("--code", help="named code, e.g. hamming:3, golay23, random:10:32:7")
    d.add_argument("--file", help="file of codewords (or generator rows with --generator)")
    d.add_argument("--generator", action="store_true")
    d.add_argument("--brute", action="store_true", help="also evaluate the definition directly")
    d.add_argument("--oracle-limit", type=int, default=ORACLE_LIMIT)

    b = sub.add_parser("bound", parents=[common], help="lower bounds on discrepancy for (n, N)")
    b.add_argument("n", type=_positive)
    b.add_argument("N", type=_positive)
    b.add_argument("--lp", action="store_true")
    b.add_argument("--constant", action="store_true")
    b.add_argument("--two-term", action="store_true")
    b.add_argument("--hamming-type", action="store_true")
    b.add_argument("--emit-cert", metavar="PATH")

    t = sub.add_parser("table", parents=[common], help="Hamming/Hadamard table")
    t.add_argument("which", choices=("hamming",), nargs="?", default="hamming")

    v = sub.add_parser("verify", parents=[common], help="run the identity suite")
    v.add_argument("n_max", type=_positive)

    r = sub.add_parser("random", parents=[common], help="Monte-Carlo over random codes")
    r.add_argument("n", type=_positive)
    r.add_argument("N", type=_positive)
    r.add_argument("--trials", type=_positive, default=1000)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--threads", type=_positive, default=None)

    s = sub.add_parser("space", parents=[common], help="discrepancy in a finite metric space")
    s.add_argument("space", help="distance-matrix file, or cycle:m, hamming:n, johnson:v:k")
    s.add_argument("--subset", required=True, help="comma-separated point indices")
    s.add_argument("--weights", metavar="PATH")
    return p


COMMANDS = {
    "disc": cmd_disc,
    "bound": cmd_bound,
    "table": cmd_table,
    "verify": cmd_verify,
    "random": cmd_random,
    "space": cmd_space,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    f = Formatter(args.digits)
    try:
        out = COMMANDS[args.command](args, f)
    except (ParseError, ValidationError, DomainError, OSError) as exc:
        witness = getattr(exc, "witness", None)
        msg = f"error: {exc}" + (f" [witness: {witness}]" if witness is not None else "")
        print(msg, file=sys.stderr)
        return EXIT_VALIDATION
    except IdentityMismatchError as exc:
        print(f"identity failure: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    print(render(out, args.format))
    return out.status


if __name__ == "__main__":
    sys.exit(main())
