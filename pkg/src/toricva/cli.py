"""Command line front end.

Four subcommands:

  analyze    classify divisors from a JSON input file (Cartier, nef, ...)
  verify     run one named statement check on a file, builtin, or fuzz batch
  hilbert    print the Hilbert basis of one maximal cone's dual
  examples   list builtin instances or emit them as JSON input files

Input files describe a complete fan and named divisors:

  {"rank": 2,
   "rays": [[1, 1], [-1, 1], [0, -1]],
   "max_cones": [[0, 1], [1, 2], [0, 2]],
   "divisors": {"D": [1, 0, 0], "half": ["1/2", 0, 0]}}

Rational coefficients are integers or "p/q" strings; floats are rejected so
reports stay exact and byte-reproducible.  Reports are emitted as text or,
with --json, as canonical JSON (sorted keys, rationals as "p/q" strings).

Exit status: 0 when the run completed (negative verdicts included), 1 on bad
input, 2 when a verified statement was falsified or an internal invariant
broke.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .cones import dual_cone
from .divisors import (
    Divisor,
    NotQCartier,
    canonical_divisor,
    local_data,
    poly_contains,
    polytope,
    translated_polytope,
)
from .fans import Fan, build_fan
from .harness import (
    BUILTIN_NAMES,
    CheckReport,
    Instance,
    builtin,
    check_corner_containment,
    check_generation,
    check_interior_bound,
    check_nef_excluding_pspace,
    check_nef_threshold,
    check_nonregular_bound,
    check_wall_bound,
    cone_table,
    generation_scan,
    random_instance,
)
from .intersections import wall_value
from .linalg import N, vec
from .semigroups import hilbert_basis

GLOBAL_STATEMENTS = {
    "generation": check_generation,
    "nef-sharp": check_nef_excluding_pspace,
    "nef": check_nef_threshold,
    "corners": check_corner_containment,
}

CONE_STATEMENTS = ("wall-bound", "interior-bound", "nonregular-bound")

STATEMENTS = tuple(GLOBAL_STATEMENTS) + CONE_STATEMENTS

BUILTIN_SIGNATURES = {
    "projective_space": "projective_space(n[,t])",
    "weighted_112": "weighted_112([t])",
    "hirzebruch": "hirzebruch(a,c0,c1,c2,c3)",
    "product_p1": "product_p1(a,b)",
    "intro_simplex_2d": "intro_simplex_2d(t)",
    "intro_simplex_3d": "intro_simplex_3d(t)",
    "ew_simplex": "ew_simplex(t)",
}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems on the input-error exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: input error: {message}\n")


def _enc_scalar(x):
    f = Fraction(x)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


def _enc_vec(v):
    return [_enc_scalar(c) for c in v.coords]


def _enc_opt(x):
    return None if x is None else _enc_scalar(x)


def _parse_scalar(raw, where: str):
    if isinstance(raw, bool):
        raise InputError(f"{where}: expected a rational, got a boolean")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, float):
        raise InputError(f"{where}: floats are not accepted, use an integer or 'p/q' string")
    if isinstance(raw, str):
        try:
            f = Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: {raw!r} is not a rational") from None
        return int(f) if f.denominator == 1 else f
    raise InputError(f"{where}: expected a rational, got {type(raw).__name__}")


def _parse_int(raw, where: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise InputError(f"{where}: expected an integer")
    return raw


def load_document(path: str) -> tuple[Fan, dict[str, Divisor]]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    for key in ("rank", "rays", "max_cones"):
        if key not in doc:
            raise InputError(f"{path}: missing key {key!r}")
    rank = _parse_int(doc["rank"], "rank")
    if rank < 2:
        raise InputError("rank must be at least 2")
    rays = []
    if not isinstance(doc["rays"], list):
        raise InputError("rays must be a list of integer vectors")
    for i, row in enumerate(doc["rays"]):
        if not isinstance(row, list) or len(row) != rank:
            raise InputError(f"rays[{i}]: expected a list of {rank} integers")
        rays.append(vec([_parse_int(x, f"rays[{i}]") for x in row], N))
    if not isinstance(doc["max_cones"], list):
        raise InputError("max_cones must be a list of index lists")
    cones = []
    for i, row in enumerate(doc["max_cones"]):
        if not isinstance(row, list):
            raise InputError(f"max_cones[{i}]: expected a list of ray indices")
        cones.append(tuple(_parse_int(x, f"max_cones[{i}]") for x in row))
    try:
        fan = build_fan(rays, cones, rank)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    divisors = {}
    raw_divs = doc.get("divisors", {})
    if not isinstance(raw_divs, dict):
        raise InputError("divisors must be an object mapping names to coefficient lists")
    for name, coeffs in raw_divs.items():
        if not isinstance(coeffs, list) or len(coeffs) != len(rays):
            raise InputError(
                f"divisor {name!r}: expected {len(rays)} coefficients, one per ray"
            )
        divisors[name] = Divisor(
            tuple(_parse_scalar(c, f"divisor {name!r}") for c in coeffs)
        )
    return fan, divisors


def _pick_divisor(divisors: dict[str, Divisor], requested: str | None, role: str) -> tuple[str, Divisor]:
    if requested is not None:
        if requested not in divisors:
            known = ", ".join(sorted(divisors)) or "none"
            raise InputError(f"no divisor named {requested!r} (available: {known})")
        return requested, divisors[requested]
    if role == "d":
        if "D" in divisors:
            return "D", divisors["D"]
        if len(divisors) == 1:
            return next(iter(divisors.items()))
        raise InputError("pass --d NAME: the file does not name a divisor 'D'")
    raise InputError(f"internal: unknown role {role}")


def _pick_dprime(fan: Fan, divisors: dict[str, Divisor], requested: str | None):
    """The perturbation defaults to the canonical representative."""
    if requested is not None:
        if requested not in divisors:
            known = ", ".join(sorted(divisors)) or "none"
            raise InputError(f"no divisor named {requested!r} (available: {known})")
        return requested, divisors[requested], []
    if "Dprime" in divisors:
        return "Dprime", divisors["Dprime"], []
    return (
        "canonical",
        canonical_divisor(fan),
        ["perturbation defaults to the canonical divisor; name one with --dprime"],
    )


def _builtin_from_expr(expr: str) -> Instance:
    m = re.fullmatch(r"\s*([a-z0-9_]+)\s*(?:\(([^()]*)\))?\s*", expr)
    if not m:
        raise InputError(f"cannot parse builtin expression {expr!r}")
    name, raw_args = m.group(1), m.group(2)
    args = ()
    if raw_args:
        try:
            args = tuple(int(a) for a in raw_args.split(","))
        except ValueError:
            raise InputError(f"builtin arguments must be integers: {expr!r}") from None
    try:
        return builtin(name, args)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _try_local(fan, d):
    try:
        return local_data(fan, d)
    except NotQCartier:
        return None


def _divisor_verdicts(fan: Fan, d: Divisor, want_very_ample: bool) -> dict:
    out = {}
    local = _try_local(fan, d)
    out["q_cartier"] = local is not None
    if local is None:
        return out
    out["cartier"] = all(u.is_lattice for u in local)
    nef = all(wall_value(fan, local, w) >= 0 for w in fan.walls)
    out["nef"] = nef
    if out["cartier"]:
        out["basepoint_free"] = nef
        if want_very_ample:
            if nef:
                failures, _ = generation_scan(fan, d, local)
                out["very_ample"] = not failures
            else:
                out["very_ample"] = False
    return out


def _instance_json(fan: Fan) -> dict:
    return {
        "rank": fan.rank,
        "rays": [list(r.coords) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }


def _cones_json(fan: Fan, local_d, local_dp) -> list[dict]:
    rows = []
    table = cone_table(fan, local_d, local_dp)
    for cd in table:
        row = {
            "index": cd.cone_index,
            "t": _enc_opt(cd.t),
            "m": _enc_opt(cd.m),
            "lambda_min": _enc_opt(cd.lambda_min_dual),
            "lambda_max": _enc_opt(cd.lambda_max_dual),
        }
        if local_d is not None:
            row["u_sigma"] = _enc_vec(local_d[cd.cone_index])
        if local_dp is not None:
            row["u_sigma_perturbation"] = _enc_vec(local_dp[cd.cone_index])
        rows.append(row)
    return rows


def _walls_json(fan: Fan, local_d, local_sum) -> list[dict]:
    rows = []
    for w in fan.walls:
        row = {"sigma": w.sigma, "tau": w.tau, "rays": list(w.rays)}
        if local_d is not None:
            row["value"] = _enc_scalar(wall_value(fan, local_d, w))
        if local_sum is not None:
            row["combined_value"] = _enc_scalar(wall_value(fan, local_sum, w))
        rows.append(row)
    return rows


def _report_json(rep: CheckReport) -> dict:
    return {
        "statement": rep.statement,
        "label": rep.label,
        "status": rep.status,
        "applicable": rep.applicable,
        "conclusion": rep.conclusion,
        "hypotheses": [
            {"name": h.name, "holds": h.holds, "detail": h.detail}
            for h in rep.hypotheses
        ],
        "failures": [
            {"kind": f.kind, "index": f.index, "message": f.message}
            for f in rep.failures
        ],
        "cones": [
            {
                "index": cd.cone_index,
                "t": _enc_opt(cd.t),
                "m": _enc_opt(cd.m),
                "lambda_min": _enc_opt(cd.lambda_min_dual),
                "lambda_max": _enc_opt(cd.lambda_max_dual),
            }
            for cd in rep.cone_data
        ],
        "notes": list(rep.notes),
    }


def _emit(doc: dict, out) -> None:
    out.write(json.dumps(doc, sort_keys=True, indent=2))
    out.write("\n")


def _fmt_verdicts(v: dict) -> str:
    order = ("q_cartier", "cartier", "nef", "basepoint_free", "very_ample")
    parts = []
    for key in order:
        if key in v:
            parts.append(f"{key.replace('_', ' ')} {'yes' if v[key] else 'no'}")
    return ", ".join(parts)


def cmd_analyze(args, out) -> int:
    fan, divisors = load_document(args.input)
    d_name, d = _pick_divisor(divisors, args.d, "d")
    dp_name, dp, remarks = _pick_dprime(fan, divisors, args.dprime)
    if len(dp.coeffs) != len(fan.rays):
        raise InputError(f"divisor {dp_name!r} does not match the fan's ray count")
    total = d + dp
    remarks.append("projectivity is not certified for hand-entered fans")
    local_d = _try_local(fan, d)
    local_dp = _try_local(fan, dp)
    local_sum = _try_local(fan, total)
    doc = {
        "command": "analyze",
        "input": args.input,
        "instance": _instance_json(fan),
        "divisors": {
            "d": {"name": d_name, "coefficients": [_enc_scalar(c) for c in d.coeffs]},
            "perturbation": {
                "name": dp_name,
                "coefficients": [_enc_scalar(c) for c in dp.coeffs],
            },
            "combined": {"coefficients": [_enc_scalar(c) for c in total.coeffs]},
        },
        "verdicts": {
            "d": _divisor_verdicts(fan, d, args.very_ample),
            "perturbation": _divisor_verdicts(fan, dp, False),
            "combined": _divisor_verdicts(fan, total, args.very_ample),
        },
        "cones": _cones_json(fan, local_d, local_dp),
        "walls": _walls_json(fan, local_d, local_sum),
        "remarks": remarks,
        "exit_status": 0,
    }
    if args.json:
        _emit(doc, out)
        return 0
    print(f"instance: {args.input} (rank {fan.rank}, {len(fan.rays)} rays, "
          f"{len(fan.max_cones)} maximal cones)", file=out)
    print(f"divisor {d_name}: {_fmt_verdicts(doc['verdicts']['d'])}", file=out)
    print(f"perturbation {dp_name}: {_fmt_verdicts(doc['verdicts']['perturbation'])}", file=out)
    print(f"combined: {_fmt_verdicts(doc['verdicts']['combined'])}", file=out)
    for row in doc["cones"]:
        bits = [f"cone {row['index']}:"]
        if "u_sigma" in row:
            bits.append("u_sigma = (" + ", ".join(str(c) for c in row["u_sigma"]) + ")")
        for key in ("t", "m", "lambda_min", "lambda_max"):
            if row[key] is not None:
                bits.append(f"{key} = {row[key]}")
        print("  " + " ".join(bits), file=out)
    for row in doc["walls"]:
        bits = [f"wall rays {tuple(row['rays'])} (cones {row['sigma']}|{row['tau']}):"]
        if "value" in row:
            bits.append(f"value {row['value']}")
        if "combined_value" in row:
            bits.append(f"combined {row['combined_value']}")
        print("  " + " ".join(bits), file=out)
    for r in remarks:
        print(f"note: {r}", file=out)
    return 0


def _gather_instances(args) -> list[Instance]:
    sources = [s for s in (args.input, args.builtin, args.fuzz) if s]
    if len(sources) != 1:
        raise InputError("pass exactly one of INPUT, --builtin, or --fuzz")
    if args.input:
        fan, divisors = load_document(args.input)
        _, d = _pick_divisor(divisors, args.d, "d")
        _, dp, _ = _pick_dprime(fan, divisors, args.dprime)
        if len(dp.coeffs) != len(fan.rays):
            raise InputError("perturbation does not match the fan's ray count")
        return [Instance(fan, d, dp, args.input)]
    if args.builtin:
        return [_builtin_from_expr(args.builtin)]
    dim, seed, count = args.fuzz
    if count < 1:
        raise InputError("fuzz count must be positive")
    try:
        return [random_instance(dim, seed + i) for i in range(count)]
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _run_statement(inst: Instance, args) -> list[CheckReport]:
    name = args.statement
    if name in GLOBAL_STATEMENTS:
        return [GLOBAL_STATEMENTS[name](inst)]
    cones = [args.sigma] if args.sigma is not None else range(len(inst.fan.max_cones))
    reports = []
    for ci in cones:
        if not 0 <= ci < len(inst.fan.max_cones):
            raise InputError(f"no maximal cone with index {ci}")
        if name == "wall-bound":
            r = Fraction(args.r) if args.r is not None else None
            try:
                reports.append(check_wall_bound(inst, ci, r))
            except NotQCartier as exc:
                raise InputError(
                    f"{inst.label}: divisor has no local data on cone {exc.cone_index}"
                ) from None
            except ValueError as exc:
                raise InputError(f"{inst.label}: {exc}") from None
        elif name == "interior-bound":
            reports.append(check_interior_bound(inst, ci, args.interior_bound))
        else:
            reports.append(check_nonregular_bound(inst, ci))
    return reports


def cmd_verify(args, out) -> int:
    if args.r is not None:
        try:
            r = Fraction(args.r)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"--r: {args.r!r} is not a rational") from None
        if r <= 0:
            raise InputError("--r must be positive")
        if args.statement != "wall-bound":
            raise InputError("--r only applies to wall-bound")
    instances = _gather_instances(args)
    entries = []
    tally = {"pass": 0, "fail": 0, "not_applicable": 0}
    for inst in instances:
        for rep in _run_statement(inst, args):
            tally[rep.status] += 1
            entries.append(_report_json(rep))
    falsified = tally["fail"] > 0
    doc = {
        "command": "verify",
        "statement": args.statement,
        "instances": entries,
        "summary": {**tally, "total": sum(tally.values())},
        "exit_status": 2 if falsified else 0,
    }
    if args.input:
        doc["remarks"] = ["projectivity is not certified for hand-entered fans"]
    if args.json:
        _emit(doc, out)
    else:
        print(f"statement: {args.statement}", file=out)
        for e in entries:
            cone_ids = [c["index"] for c in e["cones"]]
            where = f" cone {cone_ids[0]}" if len(cone_ids) == 1 and args.statement in CONE_STATEMENTS else ""
            print(f"  {e['label']}{where}: {e['status']}", file=out)
            for h in e["hypotheses"]:
                if not h["holds"]:
                    detail = f" ({h['detail']})" if h["detail"] else ""
                    print(f"    hypothesis failed: {h['name']}{detail}", file=out)
            for f in e["failures"]:
                print(f"    {f['kind']} {f['index']}: {f['message']}", file=out)
            for n in e["notes"]:
                print(f"    note: {n}", file=out)
        print(
            "summary: pass={pass} fail={fail} not_applicable={not_applicable}".format(**tally),
            file=out,
        )
    return 2 if falsified else 0


def cmd_hilbert(args, out) -> int:
    fan, divisors = load_document(args.input)
    if not 0 <= args.sigma < len(fan.max_cones):
        raise InputError(f"no maximal cone with index {args.sigma}")
    dual = dual_cone(fan.cones[args.sigma])
    basis = hilbert_basis(dual)
    doc = {
        "command": "hilbert",
        "input": args.input,
        "sigma": args.sigma,
        "dual_rays": [_enc_vec(r) for r in dual.rays],
        "basis": [_enc_vec(b) for b in basis],
        "exit_status": 0,
    }
    membership = None
    if args.d is not None:
        name, d = _pick_divisor(divisors, args.d, "d")
        try:
            local = local_data(fan, d)
        except NotQCartier as exc:
            raise InputError(
                f"divisor {name!r} has no local data on cone {exc.cone_index}"
            ) from None
        shifted = translated_polytope(polytope(fan, d), local[args.sigma])
        membership = [
            {"element": _enc_vec(b), "in_shifted_polytope": poly_contains(shifted, b)}
            for b in basis
        ]
        doc["divisor"] = name
        doc["membership"] = membership
    if args.json:
        _emit(doc, out)
        return 0
    print(f"maximal cone {args.sigma}: dual rays {[tuple(r) for r in doc['dual_rays']]}", file=out)
    print(f"Hilbert basis ({len(basis)} elements):", file=out)
    for i, b in enumerate(doc["basis"]):
        line = f"  {tuple(b)}"
        if membership is not None:
            line += "  in shifted polytope: " + ("yes" if membership[i]["in_shifted_polytope"] else "no")
        print(line, file=out)
    return 0


def _safe_name(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", label).strip("_") or "instance"


def cmd_examples(args, out) -> int:
    if args.emit is None:
        for name in BUILTIN_NAMES:
            print(BUILTIN_SIGNATURES[name], file=out)
        return 0
    inst = _builtin_from_expr(args.emit)
    doc = {
        "label": inst.label,
        "rank": inst.fan.rank,
        "rays": [list(r.coords) for r in inst.fan.rays],
        "max_cones": [list(c) for c in inst.fan.max_cones],
        "divisors": {
            "D": [_enc_scalar(c) for c in inst.d.coeffs],
            "Dprime": [_enc_scalar(c) for c in inst.dprime.coeffs],
        },
    }
    target = Path(args.dir) / f"{_safe_name(inst.label)}.json"
    with open(target, "w", encoding="utf-8") as fh:
        _emit(doc, fh)
    print(target, file=out)
    return 0


def _fraction_arg(raw: str) -> str:
    return raw


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricva", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="classify divisors from a JSON input file")
    pa.add_argument("input", help="JSON input file")
    pa.add_argument("--d", help="name of the base divisor (default: D)")
    pa.add_argument("--dprime", help="name of the perturbation (default: canonical)")
    pa.add_argument("--very-ample", action="store_true", help="also decide very ampleness")
    pa.add_argument("--json", action="store_true", help="emit a JSON report")

    pv = sub.add_parser("verify", help="run one statement check")
    pv.add_argument("statement", choices=STATEMENTS)
    pv.add_argument("input", nargs="?", help="JSON input file")
    pv.add_argument("--builtin", help="builtin instance, e.g. 'ew_simplex(4)'")
    pv.add_argument(
        "--fuzz",
        nargs=3,
        type=int,
        metavar=("DIM", "SEED", "COUNT"),
        help="COUNT random instances of dimension DIM starting at SEED",
    )
    pv.add_argument("--d", help="name of the base divisor (default: D)")
    pv.add_argument("--dprime", help="name of the perturbation (default: canonical)")
    pv.add_argument("--sigma", type=int, help="restrict per-cone statements to one cone")
    pv.add_argument("--r", type=_fraction_arg, help="slack for wall-bound's local hypotheses")
    pv.add_argument(
        "--interior-bound",
        type=int,
        default=5,
        metavar="B",
        help="coordinate bound for interior-bound enumeration (default 5)",
    )
    pv.add_argument("--json", action="store_true", help="emit a JSON report")

    ph = sub.add_parser("hilbert", help="Hilbert basis of one dual cone")
    ph.add_argument("input", help="JSON input file")
    ph.add_argument("--sigma", type=int, required=True, help="maximal cone index")
    ph.add_argument("--d", help="also test basis membership in this divisor's shifted polytope")
    ph.add_argument("--json", action="store_true", help="emit a JSON report")

    pe = sub.add_parser("examples", help="list or emit builtin instances")
    pe.add_argument("--emit", help="builtin expression to write as a JSON input file")
    pe.add_argument("--dir", default=".", help="output directory (default: current)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "verify": cmd_verify,
        "hilbert": cmd_hilbert,
        "examples": cmd_examples,
    }
    try:
        return handlers[args.command](args, sys.stdout)
    except InputError as exc:
        print(f"toricva: input error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"toricva: internal invariant violated: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
