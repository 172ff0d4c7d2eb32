"""Command line front end: problem files in, tables or JSON reports out.

Exit codes: 0 the command ran, 1 usage or parse error, 2 the verdict was not
certified-yes although --expect-yes asked for one, 3 the reducer pool
ceiling was hit. Timing goes to stderr so the stdout body is byte-identical
across runs with the same file and flags.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from .core import Order, Ring, determinant
from .demo import presentation_rows
from .determinacy import (
    SourceNotCompleteIntersection,
    flat_ci,
    jet_ideal,
    jet_sweep,
    milnor_mu0,
    regseq_axis_certificate,
    regular_sequence,
)
from .jet_oracle import oracle_cross_check
from .problemfile import ProblemError, parse_problem
from .standard_basis import PoolLimitExceeded, diagram_of_ideal, standard_basis

__all__ = ["main", "build_parser", "REPORT_SCHEMA"]

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "inputs", "seed", "order", "results"],
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "seed": {"type": "integer"},
        "order": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "results": {"type": "array", "items": {"type": "object"}},
    },
    "additionalProperties": False,
}

_DEFAULT_SEED = 0
_DEFAULT_TRIALS = 8
_DEFAULT_SLICE_BOUND = 8


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="staircase",
                     description="Staircases of local ideals: diagrams, "
                                 "standard bases, jets, flatness verdicts.")
    sub = parser.add_subparsers(dest="command", metavar="command",
                                parser_class=_Parser)
    sub.required = True

    def add(name, help_text, needs_file=True):
        p = sub.add_parser(name, help=help_text)
        if needs_file:
            p.add_argument("file", help="problem file path")
        p.add_argument("--order", help="order weights, comma separated")
        p.add_argument("--seed", type=int, default=None,
                       help="random seed (default 0)")
        p.add_argument("--trials", type=int, default=None,
                       help="coordinate-change trials (default 8)")
        p.add_argument("--bound", type=int, default=None,
                       help="length or slice bound")
        p.add_argument("--json", action="store_true", dest="as_json",
                       help="emit the report as JSON")
        p.add_argument("--expect-yes", action="store_true", dest="expect_yes",
                       help="exit 2 unless every verdict is certified-yes")
        return p

    add("diagram", "standard basis and staircase of each ideal")
    add("vertices", "staircase vertices of each ideal")
    add("hilbert", "complement counts of each ideal up to --bound")
    add("dim", "quotient dimension of each ideal")
    add("regseq", "regular-sequence verdict per ideal; --bound adds an "
                  "axis certificate")
    add("flat-ci", "flatness verdict for each map germ")
    add("milnor", "fibre length of each map germ when finite")
    p = add("jet", "jets of each ideal's generators")
    p.add_argument("--mu", required=True, help="jet order (single integer)")
    p = add("sweep", "compare jet staircases against the full staircase")
    p.add_argument("--mu", required=True, help="inclusive range a..b")
    p.add_argument("--len", dest="length", type=int, default=None,
                   help="slice length bound (default mu_max + 3)")
    add("oracle-check", "cross-validate the two staircase engines")
    p = add("det-example", "determinant identity for the built-in family",
            needs_file=False)
    p.add_argument("--mu", default="5..10", help="inclusive range a..b")
    return parser


def _parse_order_flag(text):
    if text is None:
        return None
    try:
        weights = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise _UsageError("--order needs comma-separated integers") from None
    if any(w < 1 for w in weights):
        raise _UsageError("--order weights must be positive")
    return weights


def _parse_mu_range(text):
    parts = text.split("..")
    try:
        if len(parts) == 1:
            low = high = int(parts[0])
        elif len(parts) == 2:
            low, high = int(parts[0]), int(parts[1])
        else:
            raise ValueError(text)
    except ValueError:
        raise _UsageError(f"--mu expects 'a..b', got {text!r}") from None
    if low < 0 or low > high:
        raise _UsageError("--mu range must be nonnegative and ascending")
    return low, high


def _parse_mu_single(text):
    try:
        value = int(text)
    except ValueError:
        raise _UsageError(
            f"--mu expects a single integer here, got {text!r}") from None
    if value < 0:
        raise _UsageError("--mu must be nonnegative")
    return value


def _effective(args, options):
    seed = args.seed if args.seed is not None else options.get("seed",
                                                               _DEFAULT_SEED)
    trials = (args.trials if args.trials is not None
              else options.get("trials", _DEFAULT_TRIALS))
    bound = args.bound if args.bound is not None else options.get("bound")
    return seed, trials, bound


def _points(vertices) -> list[list[int]]:
    return [list(v) for v in vertices]


def _cmd_det_example(args):
    low, high = _parse_mu_range(args.mu)
    if low < 5:
        raise _UsageError("det-example needs mu at least 5")
    weights = _parse_order_flag(args.order) or (1, 1)
    ring = Ring(("x", "y"), order=Order(weights))
    x = ring.variable("x")
    y = ring.variable("y")
    results = []
    all_match = True
    for mu in range(low, high + 1):
        det = determinant(presentation_rows(mu, ring))
        expected = x * y ** (mu + 1)
        match = det == expected
        all_match = all_match and match
        results.append({
            "mu": mu,
            "determinant": det.pretty(),
            "expected": expected.pretty(),
            "match": match,
        })
    report = {
        "command": "det-example",
        "inputs": {"builtin": "truncated-family", "mu": f"{low}..{high}"},
        "seed": args.seed if args.seed is not None else _DEFAULT_SEED,
        "order": list(weights),
        "results": results,
    }
    return report, not all_match


def _dispatch(args):
    if args.command == "det-example":
        return _cmd_det_example(args)

    with open(args.file, "rb") as handle:
        data = handle.read()
    digest = hashlib.sha256(data).hexdigest()
    problem = parse_problem(data.decode("utf-8"),
                            order_override=_parse_order_flag(args.order))
    ring = problem.ring
    seed, trials, bound = _effective(args, problem.options)
    report = {
        "command": args.command,
        "inputs": {
            "file": args.file,
            "sha256": digest,
            "ideals": list(problem.ideals),
            "maps": list(problem.maps),
        },
        "seed": seed,
        "order": list(ring.order.weights),
        "results": [],
    }
    results = report["results"]
    expect_failed = False

    if args.command == "diagram":
        for name, gens in problem.ideals.items():
            sb = standard_basis(gens, ring=ring)
            results.append({
                "name": name,
                "generators": [g.pretty() for g in gens],
                "standard_basis": [g.pretty() for g in sb.basis],
                "vertices": sb.diagram.to_lists(),
                "dimension": sb.diagram.quotient_dimension(),
            })
    elif args.command == "vertices":
        for name, gens in problem.ideals.items():
            d = diagram_of_ideal(gens, ring=ring)
            results.append({"name": name, "vertices": d.to_lists()})
    elif args.command == "hilbert":
        top = bound if bound is not None else _DEFAULT_SLICE_BOUND
        for name, gens in problem.ideals.items():
            d = diagram_of_ideal(gens, ring=ring)
            results.append({
                "name": name,
                "bound": top,
                "values": [d.hilbert_samuel(k) for k in range(top + 1)],
            })
    elif args.command == "dim":
        for name, gens in problem.ideals.items():
            d = diagram_of_ideal(gens, ring=ring)
            results.append({"name": name,
                            "dimension": d.quotient_dimension()})
    elif args.command == "regseq":
        for name, gens in problem.ideals.items():
            verdict = regular_sequence(gens, ring=ring)
            entry = {"name": name, "verdict": verdict.to_dict()}
            if bound is not None:
                axis = regseq_axis_certificate(
                    gens, trials=trials, seed=seed, bound=bound, ring=ring)
                entry["axis_certificate"] = axis.to_dict()
            results.append(entry)
            if not verdict.is_yes:
                expect_failed = True
    elif args.command == "flat-ci":
        for name, spec in problem.maps.items():
            try:
                verdict = flat_ci(spec)
            except SourceNotCompleteIntersection as exc:
                results.append({"name": name, "error": str(exc)})
                expect_failed = True
                continue
            results.append({"name": name, "verdict": verdict.to_dict()})
            if not verdict.is_yes:
                expect_failed = True
    elif args.command == "milnor":
        for name, spec in problem.maps.items():
            value = milnor_mu0(spec)
            results.append({"name": name, "milnor_mu0": value,
                            "finite": value is not None})
    elif args.command == "jet":
        mu = _parse_mu_single(args.mu)
        for name, gens in problem.ideals.items():
            jets = jet_ideal(gens, mu)
            d = diagram_of_ideal(jets, ring=ring)
            results.append({
                "name": name,
                "mu": mu,
                "jets": [p.pretty() for p in jets],
                "vertices": d.to_lists(),
            })
    elif args.command == "sweep":
        low, high = _parse_mu_range(args.mu)
        for name, gens in problem.ideals.items():
            rep = jet_sweep(gens, low, high, length_bound=args.length,
                            ring=ring)
            results.append({
                "name": name,
                "length_bound": rep.length_bound,
                "base_vertices": _points(rep.base_vertices),
                "base_dimension": rep.base_dimension,
                "rows": [{
                    "mu": row.mu,
                    "vertices": _points(row.vertices),
                    "window_vertices": _points(row.window_vertices),
                    "equal": row.equal,
                    "equal_upto_bound": row.equal_upto_bound,
                    "contains_base": row.window_contains_base,
                    "dimension": row.quotient_dimension,
                    "hilbert": list(row.hilbert),
                    "new_points": _points(row.new_on_window),
                } for row in rep.rows],
                "stabilized_at": rep.stabilized_at,
                "summary": rep.summary,
            })
    elif args.command == "oracle-check":
        top = bound if bound is not None else _DEFAULT_SLICE_BOUND
        for name, gens in problem.ideals.items():
            rep = oracle_cross_check(gens, top, ring=ring)
            results.append({
                "name": name,
                "bound": top,
                "agree": rep.agree,
                "first_difference": (list(rep.first_difference)
                                     if rep.first_difference else None),
                "oracle_vertices": _points(rep.oracle_vertices),
                "basis_vertices": _points(rep.basis_vertices),
            })
            if not rep.agree:
                expect_failed = True
    else:
        raise _UsageError(f"unknown command {args.command!r}")
    return report, expect_failed


def _fmt_points(points) -> str:
    if not points:
        return "-"
    return " ".join("(" + ",".join(str(c) for c in p) + ")" for p in points)


def _fmt_flag(value: bool) -> str:
    return "yes" if value else "no"


def _human_entry(command: str, entry: dict) -> list[str]:
    if command == "det-example":
        status = "ok" if entry["match"] else "MISMATCH"
        return [f"mu {entry['mu']}: det = {entry['determinant']} | "
                f"expected {entry['expected']} | {status}"]
    name = entry.get("name", "?")
    if command == "diagram":
        lines = [f"ideal {name}"]
        lines += [f"  generator: {g}" for g in entry["generators"]]
        lines += [f"  basis: {g}" for g in entry["standard_basis"]]
        lines.append(f"  vertices: {_fmt_points(entry['vertices'])}")
        lines.append(f"  dimension: {entry['dimension']}")
        return lines
    if command == "vertices":
        return [f"ideal {name}: {_fmt_points(entry['vertices'])}"]
    if command == "hilbert":
        values = " ".join(str(v) for v in entry["values"])
        return [f"ideal {name}: H(0..{entry['bound']}) = {values}"]
    if command == "dim":
        return [f"ideal {name}: dimension {entry['dimension']}"]
    if command == "regseq":
        verdict = entry["verdict"]
        lines = [f"ideal {name}: {verdict['kind']}",
                 f"  certificate: {json.dumps(verdict['certificate'], sort_keys=True)}"]
        if "axis_certificate" in entry:
            axis = entry["axis_certificate"]
            lines.append(f"  axis certificate: {axis['kind']} "
                         f"{json.dumps(axis['certificate'], sort_keys=True)}")
        return lines
    if command == "flat-ci":
        if "error" in entry:
            return [f"map {name}: error: {entry['error']}"]
        verdict = entry["verdict"]
        return [f"map {name}: {verdict['kind']}",
                f"  certificate: {json.dumps(verdict['certificate'], sort_keys=True)}"]
    if command == "milnor":
        if entry["finite"]:
            return [f"map {name}: milnor_mu0 = {entry['milnor_mu0']}"]
        return [f"map {name}: fibre is not finite"]
    if command == "jet":
        lines = [f"ideal {name} at mu={entry['mu']}:"]
        lines += [f"  {p}" for p in entry["jets"]]
        lines.append(f"  vertices: {_fmt_points(entry['vertices'])}")
        return lines
    if command == "sweep":
        lines = [f"ideal {name}  [length bound {entry['length_bound']}]",
                 f"  base vertices: {_fmt_points(entry['base_vertices'])}"
                 f"  dimension {entry['base_dimension']}"]
        for row in entry["rows"]:
            lines.append(
                f"  mu {row['mu']}: slice {_fmt_points(row['window_vertices'])}"
                f" | equal {_fmt_flag(row['equal'])}"
                f" | equal_upto {_fmt_flag(row['equal_upto_bound'])}"
                f" | contains base {_fmt_flag(row['contains_base'])}"
                f" | dim {row['dimension']}"
                f" | new {_fmt_points(row['new_points'])}")
        lines.append(f"  summary: {entry['summary']}")
        return lines
    if command == "oracle-check":
        if entry["agree"]:
            return [f"ideal {name}: engines agree below length {entry['bound']}"]
        where = ",".join(str(c) for c in entry["first_difference"])
        return [f"ideal {name}: DISAGREE at ({where}) below length {entry['bound']}"]
    return [json.dumps(entry, sort_keys=True)]


def _render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines = [f"command: {report['command']}"]
    inputs = report["inputs"]
    if "file" in inputs:
        lines.append(f"file: {inputs['file']}")
        lines.append(f"sha256: {inputs['sha256']}")
    order = ",".join(str(w) for w in report["order"])
    lines.append(f"seed: {report['seed']}  order: {order}")
    for entry in report["results"]:
        lines.extend(_human_entry(report["command"], entry))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    start = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        report, expect_failed = _dispatch(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ProblemError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 1
    except PoolLimitExceeded as exc:
        print(f"resource ceiling: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(_render(report, as_json=args.as_json))
    elapsed = time.perf_counter() - start
    print(f"elapsed {elapsed:.3f}s", file=sys.stderr)
    return 2 if (args.expect_yes and expect_failed) else 0


if __name__ == "__main__":
    sys.exit(main())
