"""Command line interface: ``edgereg <group> <command> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .betti import BettiError, FieldSpec, betti_table, default_max_gens
from .digraph import GraphError, WeightedDigraph, classify, edge_ideal, generate_family
from .formulas import (
    lem11_bound,
    predict_depth,
    predict_pd_power_forest,
    predict_reg_power,
    predict_reg_regseq_power,
)
from .harness import (
    DIALECTS,
    LEMMAS,
    THEOREMS,
    RunManifest,
    Status,
    SweepParams,
    export_script,
    persist,
    run_paper_examples,
    sweep_lemma,
    sweep_theorem,
)
from .monomial import (
    IdealFormatError,
    colon_by_monomial,
    parse_ideal,
    parse_monomial,
    polarize,
    power,
)


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _load_ideal(path: str):
    return parse_ideal(_read(path))


def _load_graph(path: str) -> WeightedDigraph:
    D = WeightedDigraph.from_json(_read(path))
    if D.normalized:
        print(f"note: source weights reset to 1 for {', '.join(D.normalized)}", file=sys.stderr)
    return D


def _field(args) -> FieldSpec:
    return FieldSpec(args.field)


def _max_gens(args) -> int:
    return args.max_gens if args.max_gens is not None else default_max_gens()


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# -- ideal ------------------------------------------------------------------------


def cmd_ideal_betti(args) -> int:
    I = _load_ideal(args.file)
    T = betti_table(I, _field(args), max_gens=_max_gens(args), method=args.method)
    if args.format == "table":
        out = T.diagram() + f"\nreg = {T.regularity}, pd = {T.projective_dimension}, depth = {T.depth}\n"
    elif args.format == "csv":
        out = _csv([{"i": i, "j": j, "beta": b} for (i, j), b in T.entries])
    else:
        out = json.dumps(T.to_dict()) + "\n"
    _emit(args, out)
    return 0


def _emit_ideal(args, I) -> int:
    if args.format == "json":
        _emit(args, json.dumps({"ring": list(I.context.names),
                                "generators": [g.to_text() for g in I.generators],
                                "proper": I.is_proper}) + "\n")
    else:
        _emit(args, I.to_text())
    return 0


def cmd_ideal_power(args) -> int:
    return _emit_ideal(args, power(_load_ideal(args.file), args.t))


def cmd_ideal_polarize(args) -> int:
    return _emit_ideal(args, polarize(_load_ideal(args.file)))


def cmd_ideal_colon(args) -> int:
    I = _load_ideal(args.file)
    return _emit_ideal(args, colon_by_monomial(I, parse_monomial(args.by, I.context)))


# -- graph ------------------------------------------------------------------------


def cmd_graph_gen(args) -> int:
    D = generate_family(args.family, args.edges, args.max_weight, args.seed or 0)
    _emit(args, D.to_json() + "\n")
    return 0


def cmd_graph_edge_ideal(args) -> int:
    return _emit_ideal(args, edge_ideal(_load_graph(args.file)))


def cmd_graph_classify(args) -> int:
    _emit(args, json.dumps(classify(_load_graph(args.file)).to_dict()) + "\n")
    return 0


# -- predict ------------------------------------------------------------------------


def cmd_predict(args) -> int:
    if args.theorem == "regseq":
        if not args.degrees:
            raise SystemExit("--degrees is required for regseq")
        pred = predict_reg_regseq_power([int(d) for d in args.degrees.split(",")], args.t)
    else:
        if not args.file:
            raise SystemExit("a digraph JSON file is required")
        D = _load_graph(args.file)
        if args.theorem == "reg-power":
            pred = predict_reg_power(D, args.t)
        elif args.theorem == "pd-power":
            pred = predict_pd_power_forest(D, args.t)
        elif args.theorem == "depth":
            pred = predict_depth(D)
        else:
            pred = lem11_bound(D)[0]
    _emit(args, json.dumps({"value": pred.value, "hypothesis_ok": pred.hypothesis_ok,
                            "provenance": pred.provenance}) + "\n")
    return 0


# -- verify ------------------------------------------------------------------------


def _params(args) -> SweepParams:
    return SweepParams(
        trials=args.trials,
        seed=args.seed or 0,
        max_edges=args.max_edges,
        max_power=args.max_power,
        max_weight=args.max_weight,
        max_gens=_max_gens(args),
        characteristic=args.field,
    )


def _report_rows(reports) -> list[dict]:
    rows = []
    for r in reports:
        row = {"key": r.key, "status": r.status.value}
        for q, p in r.predicted.items():
            row[f"predicted_{q}"] = p["value"]
        row.update({k: r.computed[k] for k in ("reg", "pd", "depth")})
        rows.append(row)
    return rows


def _output_records(args, records, manifest: RunManifest, summary: dict) -> None:
    if args.out:
        persist(records, args.out, manifest)
    elif args.format == "csv":
        sys.stdout.write(_csv(summary["rows"]))
    elif args.format == "table":
        for row in summary["rows"]:
            sys.stdout.write("  ".join(f"{k}={v}" for k, v in row.items()) + "\n")
    else:
        for rec in records:
            sys.stdout.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")
    print(json.dumps(summary["counts"], sort_keys=True), file=sys.stderr)


def _manifest(args, command: str, params: dict | None = None) -> RunManifest:
    return RunManifest(seed=args.seed or 0, max_gens=_max_gens(args), field=args.field,
                       command=command, params=params or {})


def cmd_verify_theorem(args) -> int:
    p = _params(args)
    res = sweep_theorem(args.name, p, jobs=args.jobs)
    counts = res.counts()
    counts["generated"] = res.generated
    manifest = _manifest(args, f"verify theorem {args.name}", asdict(p))
    _output_records(args, res.reports, manifest, {"rows": _report_rows(res.reports), "counts": counts})
    return 1 if res.failures else 0


def cmd_verify_lemma(args) -> int:
    p = _params(args)
    res = sweep_lemma(args.name, p, jobs=args.jobs)
    counts = {"records": len(res.records), "failures": len(res.failures), "skipped": len(res.skipped)}
    rows = [{"key": r.key, "ok": r.ok} for r in res.records]
    manifest = _manifest(args, f"verify lemma {args.name}", asdict(p))
    _output_records(args, res.records, manifest, {"rows": rows, "counts": counts})
    return 1 if res.failures else 0


def cmd_verify_paper(args) -> int:
    reports = run_paper_examples(_field(args), _max_gens(args))
    rows = []
    for r in reports:
        row = {"key": r.key, "status": r.status.value, "paper_ok": r.paper["ok"]}
        row.update({f"cocoa_{q}": v for q, v in r.paper["cocoa"].items()})
        row.update({f"computed_{q}": r.computed[q] for q in r.paper["cocoa"]})
        rows.append(row)
    counts = {"examples": len(reports), "paper_deviations": sum(not r.paper["ok"] for r in reports)}
    _output_records(args, reports, _manifest(args, "verify paper-examples"), {"rows": rows, "counts": counts})
    bad = any(not r.paper["ok"] or r.status is Status.MISMATCH for r in reports)
    return 1 if bad else 0


def cmd_export(args) -> int:
    _emit(args, export_script(_load_ideal(args.file), args.dialect, args.t))
    return 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=32003, help="32003 (default), 2, 0 or another prime")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--max-gens", type=int, default=None,
                        help="generator cap (default $EDGEREG_MAX_GENS or 22)")
    common.add_argument("--format", choices=("json", "table", "csv"), default=None,
                        help="json by default; ideal-valued commands default to the ring/generator text format")
    common.add_argument("--out", default=None, help="write to this path (JSONL append for verify)")

    parser = argparse.ArgumentParser(prog="edgereg", description=__doc__)
    groups = parser.add_subparsers(dest="group", required=True)

    ideal = groups.add_parser("ideal").add_subparsers(dest="command", required=True)
    p = ideal.add_parser("betti", parents=[common])
    p.add_argument("file")
    p.add_argument("--method", choices=("nerve", "taylor"), default="nerve")
    p.set_defaults(func=cmd_ideal_betti)
    p = ideal.add_parser("power", parents=[common])
    p.add_argument("file")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_ideal_power)
    p = ideal.add_parser("polarize", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_ideal_polarize)
    p = ideal.add_parser("colon", parents=[common])
    p.add_argument("file")
    p.add_argument("--by", required=True, help="monomial such as x2*x3^2")
    p.set_defaults(func=cmd_ideal_colon)

    graph = groups.add_parser("graph").add_subparsers(dest="command", required=True)
    p = graph.add_parser("gen", parents=[common])
    p.add_argument("--family", choices=("path", "star-out", "star-in", "broom", "forest"), default="forest")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--max-weight", type=int, default=4)
    p.set_defaults(func=cmd_graph_gen)
    p = graph.add_parser("edge-ideal", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_graph_edge_ideal)
    p = graph.add_parser("classify", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_graph_classify)

    p = groups.add_parser("predict", parents=[common])
    p.add_argument("file", nargs="?")
    p.add_argument("--theorem", choices=("reg-power", "pd-power", "depth", "regseq", "lem11"), required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--degrees", help="comma-separated degrees for --theorem regseq")
    p.set_defaults(func=cmd_predict)

    verify = groups.add_parser("verify").add_subparsers(dest="command", required=True)
    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--trials", type=int, default=50)
    sweep.add_argument("--max-edges", type=int, default=5)
    sweep.add_argument("--max-power", type=int, default=2)
    sweep.add_argument("--max-weight", type=int, default=4)
    sweep.add_argument("--jobs", type=int, default=1)
    p = verify.add_parser("theorem", parents=[common, sweep])
    p.add_argument("--name", choices=THEOREMS, required=True)
    p.set_defaults(func=cmd_verify_theorem)
    p = verify.add_parser("lemma", parents=[common, sweep])
    p.add_argument("--name", choices=LEMMAS, required=True)
    p.set_defaults(func=cmd_verify_lemma)
    p = verify.add_parser("paper-examples", parents=[common])
    p.set_defaults(func=cmd_verify_paper)

    p = groups.add_parser("export", parents=[common])
    p.add_argument("file")
    p.add_argument("--dialect", choices=DIALECTS, required=True)
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BettiError, GraphError, IdealFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
