"""Command line entry point: costing, fusion statistics, thresholds, reference data."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .figures import FigurePoint, emit_figure_data
from .fusion import (
    PhysicalFusionModel,
    StaticBias,
    encoded_fusion_dist,
    exact_encoded_fusion_dist,
    parse_strategy,
    sample_encoded_fusion,
    EXACT_LIMIT,
    OUTCOME_NAMES,
)
from .graphs import GraphState, ResourceFamily, ShorCode
from .records import append_records, format_record, make_record, read_records
from .reference import filter_rows, load_reference_table
from .report import cost_encoded_state, report_table1
from .threshold.estimate import (
    NoCrossing,
    bond_erasure_probabilities,
    estimate_threshold,
    fusion_threshold,
)

EXIT_VALIDATION = 2
EXIT_FLAGGED = 3


def _floats(text: str) -> tuple[float, float]:
    parts = [float(t) for t in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}")
    return parts[0], parts[1]


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _code(text: str) -> ShorCode:
    try:
        return ShorCode.parse(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def _family(text: str) -> ResourceFamily:
    try:
        return ResourceFamily.parse(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="directory for figures and logs")
    common.add_argument("--format", choices=("text", "records"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="fbqc-compare", parents=[common],
                                description="Resource costs and loss thresholds of fusion-based schemes.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cost", parents=[common], help="3GHZ cost of an encoded resource state")
    c.add_argument("--family", type=_family, required=True)
    c.add_argument("--code", type=_code, default=ShorCode(1, 1))
    c.add_argument("--edges", help="edge-list file overriding the base graph")
    c.add_argument("--budget", type=int, default=200_000)
    c.add_argument("--no-validate", action="store_true")

    f = sub.add_parser("fusion-stats", parents=[common], help="outcome distribution of one encoded fusion")
    f.add_argument("--code", type=_code, required=True)
    f.add_argument("--strategy", default="randomized", help="randomized, static or adaptive")
    f.add_argument("--assignment", help="static failure bases, e.g. ZZ,XX,ZZ,XX")
    f.add_argument("--eta", type=float, required=True)
    f.add_argument("--boosted", action="store_true")
    f.add_argument("--photons-per-qubit", type=int, default=1, choices=(1, 2))
    f.add_argument("--swap-roles", action="store_true")
    mode = f.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="enumerate outcome patterns")
    mode.add_argument("--samples", type=int, help="Monte Carlo estimate from this many draws")

    t = sub.add_parser("threshold", parents=[common], help="loss per photon threshold by curve crossing")
    t.add_argument("--family", type=_family, default=ResourceFamily.SIX_RING)
    t.add_argument("--code", type=_code, default=ShorCode(2, 2))
    t.add_argument("--strategy", default="randomized")
    t.add_argument("--assignment")
    t.add_argument("--boosted", action="store_true")
    t.add_argument("--photons-per-qubit", type=int, default=1, choices=(1, 2))
    t.add_argument("--swap-roles", action="store_true")
    t.add_argument("--control", action="store_true",
                   help="bond-erasure control: --bracket is the edge erasure probability")
    t.add_argument("--sizes", type=_ints, default=[8, 12])
    t.add_argument("--trials", type=int, default=5000)
    t.add_argument("--bracket", type=_floats, default=(0.0, 0.08))
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--network", help="network-definition JSON overriding the bundled geometry")
    t.add_argument("--log", help="results log (default OUT/threshold_results.jsonl)")

    sub.add_parser("table1", parents=[common], help="reproduce the 3GHZ costing table").add_argument(
        "--budget", type=int, default=200_000)

    g = sub.add_parser("figure", parents=[common], help="threshold-versus-photons scatter and SVG")
    g.add_argument("--envelope", action="store_true", help="keep only Pareto-best points per series")
    g.add_argument("--computed", help="threshold records to overlay")
    g.add_argument("--filter", action="append", default=[], metavar="K=V")

    r = sub.add_parser("reference", parents=[common], help="embedded threshold data")
    r.add_argument("--filter", action="append", default=[], metavar="K=V")
    return p


def _criteria(items) -> dict:
    out = {}
    for it in items:
        if "=" not in it:
            raise ValueError(f"filter must look like key=value, got {it!r}")
        k, v = it.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _emit(rec: dict, fmt: str) -> None:
    print(format_record(rec, fmt))


def _strategy(args, code):
    strat = parse_strategy(args.strategy, code, args.assignment)
    if isinstance(strat, StaticBias):
        strat.check(code)
    return strat


def cmd_cost(args) -> int:
    edges = GraphState.read(args.edges).sorted_edges() if args.edges else None
    row = cost_encoded_state(args.family, args.code, edges, args.budget, args.seed,
                             validate=not args.no_validate)
    _emit(make_record("cost", family=row.family, code=row.code, qubits=row.qubits,
                      lower_bound=row.lower_bound, cost=row.cost, gap_percent=row.gap_percent,
                      method=row.method, target_matched=row.target_matched,
                      budget=args.budget, seed=args.seed, edges=args.edges), args.format)
    return 0


def cmd_fusion_stats(args) -> int:
    code = args.code
    model = PhysicalFusionModel(args.eta, args.photons_per_qubit, args.boosted)
    strat = _strategy(args, code)
    extra = {}
    if args.samples:
        rng = np.random.default_rng(args.seed)
        out = sample_encoded_fusion(code, strat, model, rng, args.samples, args.swap_roles)
        counts = np.bincount(out, minlength=4)
        probs = counts / args.samples
        mode = "samples"
        extra["samples"] = args.samples
    elif args.exact:
        if code.size > EXACT_LIMIT:
            raise ValueError(f"--exact supports n*m <= {EXACT_LIMIT}")
        dist = exact_encoded_fusion_dist(code, strat, model, args.swap_roles)
        probs = dist.as_tuple()
        extra["exact"] = [str(v) for v in probs]
        mode = "exact"
    else:
        probs = encoded_fusion_dist(code, strat, model, args.swap_roles).as_tuple()
        mode = "closed_form"
    fields = dict(zip(OUTCOME_NAMES, (float(v) for v in probs)))
    _emit(make_record("fusion_stats", code=str(code), strategy=strat.name, eta=args.eta,
                      boosted=args.boosted, photons_per_qubit=args.photons_per_qubit,
                      swap_roles=args.swap_roles, mode=mode, seed=args.seed, **fields, **extra),
          args.format)
    return 0


def cmd_threshold(args) -> int:
    out = Path(args.out)
    log = Path(args.log) if args.log else out / "threshold_results.jsonl"
    common = dict(workers=args.workers, definition_path=args.network)
    if args.control:
        est = estimate_threshold(args.family, bond_erasure_probabilities, args.sizes, args.trials,
                                 args.bracket, args.seed, **common)
        label = dict(family=args.family.value, control="bond_erasure")
    else:
        model = PhysicalFusionModel(0.0, args.photons_per_qubit, args.boosted)
        strat = _strategy(args, args.code)
        est = fusion_threshold(args.family, args.code, strat, model, args.sizes, args.trials,
                               args.bracket, args.seed, args.swap_roles, **common)
        label = dict(family=args.family.value, code=str(args.code), strategy=strat.name,
                     boosted=args.boosted, photons_per_qubit=args.photons_per_qubit,
                     swap_roles=args.swap_roles)
    run = dict(label, seed=args.seed, trials=args.trials, sizes=list(est.sizes),
               bracket=list(est.bracket), network=args.network)
    # trials per point equal the run's trial count
    append_records(log, [make_record("threshold_point", eta=e, L=L, failures=k, **run)
                         for e, L, k, _ in est.points])
    _emit(make_record("threshold", threshold=round(est.threshold, 6), ci_low=round(est.ci_low, 6),
                      ci_high=round(est.ci_high, 6), note=est.note, **run), args.format)
    return 0


def cmd_table1(args) -> int:
    rows = report_table1(args.budget, args.seed)
    flagged = False
    for r in rows:
        flagged |= r.flagged
        _emit(make_record("table1", family=r.row.family, code=r.row.code, qubits=r.row.qubits,
                          published_cost=r.published_cost, cost=r.row.cost, lower_bound=r.row.lower_bound,
                          gap_percent=r.row.gap_percent, ratio_to_published=round(r.ratio, 4),
                          flagged=r.flagged, target_matched=r.row.target_matched,
                          budget=args.budget, seed=args.seed), args.format)
    return EXIT_FLAGGED if flagged else 0


def _computed_points(path) -> list[FigurePoint]:
    pts = []
    for rec in read_records(path):
        if rec.get("kind") != "threshold" or "code" not in rec:
            continue
        code = ShorCode.parse(rec["code"])
        fam = ResourceFamily.parse(rec["family"])
        series = f"computed {rec['strategy']} {fam.value}" + (" boosted" if rec.get("boosted") else "")
        pts.append(FigurePoint(series, fam.base_size * code.size, float(rec["threshold"]), rec["code"]))
    return pts


def cmd_figure(args) -> int:
    rows = filter_rows(load_reference_table(), **_criteria(args.filter))
    computed = _computed_points(args.computed) if args.computed else []
    data, svg = emit_figure_data(rows, computed, envelope=args.envelope)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    svg_path = out / ("figure_envelope.svg" if args.envelope else "figure.svg")
    svg_path.write_bytes(svg)
    for key, pts in data.items():
        for p in pts:
            _emit(make_record("figure_point", series=key, photons=p.photons, lppt=p.lppt,
                              encoding=p.label), args.format)
    _emit(make_record("figure", svg=str(svg_path), envelope=args.envelope,
                      points=sum(len(v) for v in data.values())), args.format)
    return 0


def cmd_reference(args) -> int:
    for r in filter_rows(load_reference_table(), **_criteria(args.filter)):
        _emit(make_record("reference", **r.as_dict()), args.format)
    return 0


COMMANDS = {
    "cost": cmd_cost,
    "fusion-stats": cmd_fusion_stats,
    "threshold": cmd_threshold,
    "table1": cmd_table1,
    "figure": cmd_figure,
    "reference": cmd_reference,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name, default in (("seed", 0), ("out", "fbqc_out"), ("format", "records")):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, KeyError, NoCrossing, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
