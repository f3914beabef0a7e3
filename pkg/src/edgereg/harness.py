"""Reproduction runs, seeded sweeps, JSONL persistence and CAS script export."""

from __future__ import annotations

import enum
import hashlib
import itertools
import json
import random
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Callable, Iterable, Sequence

from . import __version__
from .betti import (
    BettiTable,
    FieldSpec,
    betti_table,
    default_max_gens,
    has_linear_resolution,
    projective_dimension,
    quotient_view,
    regularity,
)
from .digraph import (
    WeightedDigraph,
    broom,
    classify,
    digraph,
    edge_ideal,
    generate_forest,
    oriented_line,
    star_in,
    star_out,
)
from .formulas import (
    Prediction,
    Quantity,
    lem11_bound,
    predict_depth,
    predict_pd_power_forest,
    predict_reg_power,
    predict_reg_power_forest,
    predict_reg_regseq_power,
)
from .monomial import (
    Monomial,
    MonomialIdeal,
    VariableContext,
    minimalize,
    parse_monomial,
    polarize,
    power,
    principal,
)
from .splitting import (
    DegenerateSplitError,
    check_leaf_lemmas,
    check_splitting_consequences,
    is_betti_splitting,
    regseq_intersection_holds,
    variable_split,
)


class Status(str, enum.Enum):
    MATCH = "MATCH"
    MISMATCH = "MISMATCH"
    HYPOTHESIS_VIOLATED_MATCH = "HYPOTHESIS_VIOLATED_MATCH"
    HYPOTHESIS_VIOLATED_MISMATCH = "HYPOTHESIS_VIOLATED_MISMATCH"


_COMPUTED_KEY = {
    Quantity.REG_POWER: "reg",
    Quantity.REG_REGSEQ_POWER: "reg",
    Quantity.REG_BASE: "reg",
    Quantity.PD_POWER: "pd",
    Quantity.PD_BASE: "pd",
    Quantity.DEPTH: "depth",
}


def table_digest(T: BettiTable) -> str:
    payload = json.dumps([[i, j, b] for (i, j), b in T.entries], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class VerificationReport:
    key: str
    instance: dict
    predicted: dict[str, dict]
    computed: dict
    status: Status
    hypothesis_ok: bool
    tags: dict = field(default_factory=dict)
    paper: dict | None = None
    timings: dict = field(default_factory=dict)

    @property
    def mismatched(self) -> list[str]:
        return [
            q
            for q, p in self.predicted.items()
            if self.computed.get(_COMPUTED_KEY[Quantity(q)]) != p["value"]
        ]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status.value
        if self.paper is None:
            del d["paper"]
        return d


def _status(hypothesis_ok: bool, agrees: bool) -> Status:
    if hypothesis_ok:
        return Status.MATCH if agrees else Status.MISMATCH
    return Status.HYPOTHESIS_VIOLATED_MATCH if agrees else Status.HYPOTHESIS_VIOLATED_MISMATCH


def compute_invariants(I: MonomialIdeal, fs: FieldSpec, max_gens: int | None) -> tuple[dict, BettiTable]:
    T = betti_table(I, fs, max_gens=max_gens)
    return {
        "reg": regularity(T),
        "pd": projective_dimension(T),
        "depth": T.depth,
        "betti_digest": table_digest(T),
        "generators": len(I),
    }, T


def build_report(
    key: str,
    instance: dict,
    I: MonomialIdeal,
    predictions: Sequence[Prediction],
    fs: FieldSpec,
    max_gens: int | None,
    tags: dict | None = None,
) -> VerificationReport:
    start = time.perf_counter()
    computed, _ = compute_invariants(I, fs, max_gens)
    elapsed = time.perf_counter() - start
    predicted = {p.quantity.value: p.to_dict() for p in predictions}
    hyp = all(p.hypothesis_ok for p in predictions)
    agrees = all(computed[_COMPUTED_KEY[p.quantity]] == p.value for p in predictions)
    return VerificationReport(
        key, instance, predicted, computed, _status(hyp, agrees), hyp, tags or {},
        timings={"oracle_seconds": round(elapsed, 6)},
    )


# -- published examples -------------------------------------------------------------


@dataclass(frozen=True)
class PaperExample:
    key: str
    graph: WeightedDigraph
    t: int
    cocoa: dict[str, int]
    formula: dict[str, int]


PAPER_EXAMPLES: tuple[PaperExample, ...] = (
    PaperExample(
        "published/line-weight-1-interior",
        digraph(dict(x1=1, x2=5, x3=1, x4=8), [("x1", "x2"), ("x2", "x3"), ("x3", "x4")]),
        2,
        {"reg": 18},
        {"reg": 22},
    ),
    PaperExample(
        "published/zigzag-reg",
        digraph(
            dict(x1=1, x2=5, x3=1, x4=8, x5=1, x6=2),
            [("x1", "x2"), ("x3", "x2"), ("x3", "x4"), ("x5", "x4"), ("x5", "x6")],
        ),
        2,
        {"reg": 17},
        {"reg": 23},
    ),
    PaperExample(
        "published/two-paths",
        digraph(
            dict(x1=1, x2=2, x3=1, x4=2, x5=1, x6=2, x7=1, x8=2),
            [("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x5", "x6"), ("x6", "x7"), ("x7", "x8")],
        ),
        2,
        {"pd": 4, "reg": 8},
        {"pd": 5, "reg": 10},
    ),
    PaperExample(
        "published/zigzag-pd",
        digraph(
            dict(x1=1, x2=5, x3=1, x4=8, x5=1, x6=2),
            [("x1", "x2"), ("x3", "x2"), ("x3", "x4"), ("x5", "x4"), ("x5", "x6")],
        ),
        2,
        {"pd": 3},
        {"pd": 4},
    ),
)


def run_paper_example(ex: PaperExample, fs: FieldSpec | None = None, max_gens: int | None = None) -> VerificationReport:
    fs = fs or FieldSpec()
    preds = []
    if "reg" in ex.cocoa:
        preds.append(predict_reg_power(ex.graph, ex.t))
    if "pd" in ex.cocoa:
        preds.append(predict_pd_power_forest(ex.graph, ex.t))
    I = power(edge_ideal(ex.graph), ex.t)
    instance = {"kind": "graph", "graph": ex.graph.to_dict(), "t": ex.t, "ideal": str(I)}
    report = build_report(ex.key, instance, I, preds, fs, max_gens,
                          tags={"family": classify(ex.graph).to_dict()})
    deviations = {
        q: {"cocoa": v, "computed": report.computed[q]}
        for q, v in ex.cocoa.items()
        if report.computed[q] != v
    }
    report.paper = {"cocoa": ex.cocoa, "formula": ex.formula, "deviations": deviations, "ok": not deviations}
    return report


def run_paper_examples(fs: FieldSpec | None = None, max_gens: int | None = None) -> list[VerificationReport]:
    return [run_paper_example(ex, fs, max_gens) for ex in PAPER_EXAMPLES]


# -- sweeps ----------------------------------------------------------------------


@dataclass
class SweepResult:
    name: str
    reports: list[VerificationReport]
    skipped: list[dict]
    generated: int

    @property
    def failures(self) -> list[VerificationReport]:
        return [r for r in self.reports if r.status is Status.MISMATCH]

    def counts(self) -> dict[str, int]:
        out = {s.value: 0 for s in Status}
        for r in self.reports:
            out[r.status.value] += 1
        out["SKIPPED"] = len(self.skipped)
        return out


@dataclass(frozen=True)
class SweepParams:
    trials: int = 50
    seed: int = 0
    max_edges: int = 5
    max_power: int = 2
    max_weight: int = 4
    max_gens: int | None = None
    characteristic: int = 32003


def instance_seed(seed: int, k: int) -> int:
    return seed * 1_000_003 + k


def forest_instances(p: SweepParams) -> list[tuple[str, WeightedDigraph]]:
    out = []
    for k in range(p.trials):
        edges = 1 + k % p.max_edges
        D = generate_forest(edges, p.max_weight, instance_seed(p.seed, k))
        out.append((f"forest/{p.seed}/{k:05d}", D))
    return out


def violating_forest_instances(p: SweepParams) -> list[tuple[str, WeightedDigraph]]:
    """Forests where one non-source interior vertex is forced to weight 1."""
    out = []
    for key, D in forest_instances(p):
        interior = [n for n in D.names if D.degree(n) >= 2 and not D.is_source(n)]
        if not interior:
            continue
        victim = random.Random(key).choice(interior)
        bad = WeightedDigraph(tuple((n, 1 if n == victim else w) for n, w in D.vertices), D.edges)
        out.append((key.replace("forest/", "forest-violating/"), bad))
    return out


def line_instances(p: SweepParams) -> list[tuple[str, WeightedDigraph]]:
    out = []
    for n in range(2, p.max_edges + 2):
        interior = itertools.product(range(2, p.max_weight + 1), repeat=n - 2)
        for mid in interior:
            for last in range(1, p.max_weight + 1):
                weights = (1, *mid, last)
                out.append((f"line/{n}/{'-'.join(map(str, weights))}", oriented_line(weights)))
    return out


def star_instances(p: SweepParams) -> list[tuple[str, WeightedDigraph]]:
    out = []
    W = range(1, p.max_weight + 1)
    for n in range(3, p.max_edges + 2):
        for leaves in itertools.product(W, repeat=n - 1):
            out.append((f"star-out/{n}/{'-'.join(map(str, leaves))}", star_out(leaves)))
        for c in W:
            out.append((f"star-in/{n}/{c}", star_in(c, n - 1)))
        if n >= 4:
            for c in range(2, p.max_weight + 1):
                for leaves in itertools.product(W, repeat=n - 2):
                    out.append((f"broom/{n}/{c}/{'-'.join(map(str, leaves))}", broom(c, leaves)))
    return out


def _weight1_target_leaf(D: WeightedDigraph) -> bool:
    return any(D.weight(z) == 1 for z in D.leaves())


def _graph_task(args) -> tuple[str, list, list]:
    key, graph_dict, p, forest = args
    D = WeightedDigraph.from_dict(graph_dict)
    fs = FieldSpec(p.characteristic)
    cap = default_max_gens() if p.max_gens is None else p.max_gens
    I = edge_ideal(D)
    reports, skipped = [], []
    tags = {"family": classify(D).to_dict(), "weight1_target_leaf": _weight1_target_leaf(D)}
    It = I
    for t in range(1, p.max_power + 1):
        if t > 1:
            It = It * I
        if len(It) > cap:
            skipped.append({"key": f"{key}/t{t}", "generators": len(It), "cap": cap})
            continue
        if forest:
            preds = [predict_reg_power_forest(D, t), predict_pd_power_forest(D, t)]
            if t == 1:
                preds.append(predict_depth(D))
        else:
            preds = [predict_reg_power(D, t)]
        instance = {"kind": "graph", "graph": graph_dict, "t": t}
        reports.append(build_report(f"{key}/t{t}", instance, It, preds, fs, p.max_gens, tags))
    return key, reports, skipped


def _regseq_task(args) -> tuple[str, list, list]:
    key, degrees, shapes, t_max, p = args
    fs = FieldSpec(p.characteristic)
    cap = default_max_gens() if p.max_gens is None else p.max_gens
    I = regseq_ideal(degrees, shapes)
    reports, skipped = [], []
    for t in range(1, t_max + 1):
        It = power(I, t)
        if len(It) > cap:
            skipped.append({"key": f"{key}/t{t}", "generators": len(It), "cap": cap})
            continue
        instance = {"kind": "ideal", "ideal": I.to_text(), "degrees": list(degrees), "t": t}
        pred = predict_reg_regseq_power(degrees, t)
        reports.append(build_report(f"{key}/t{t}", instance, It, [pred], fs, p.max_gens))
    return key, reports, skipped


def regseq_ideal(degrees: Sequence[int], shapes: Sequence[Sequence[int]]) -> MonomialIdeal:
    """Monomials on pairwise-disjoint variable blocks; ``shapes[i]`` are the block exponents."""
    names = [f"y{i + 1}_{j + 1}" for i, s in enumerate(shapes) for j in range(len(s))]
    ctx = VariableContext(tuple(names))
    gens = []
    for i, (d, s) in enumerate(zip(degrees, shapes)):
        if sum(s) != d or min(s) < 1:
            raise ValueError(f"shape {s} does not have degree {d}")
        gens.append(ctx.monomial({f"y{i + 1}_{j + 1}": e for j, e in enumerate(s)}))
    return minimalize(gens, ctx)


def _random_composition(d: int, rng: random.Random) -> tuple[int, ...]:
    parts = rng.randint(1, d)
    cuts = sorted(rng.sample(range(1, d), parts - 1))
    return tuple(b - a for a, b in zip([0, *cuts], [*cuts, d]))


def regseq_instances(p: SweepParams, max_r: int = 4, max_d: int = 4) -> list[tuple]:
    out = []
    for r in range(1, max_r + 1):
        for degrees in itertools.combinations_with_replacement(range(1, max_d + 1), r):
            key = f"regseq/{'-'.join(map(str, degrees))}"
            rng = random.Random(f"{p.seed}/{key}")
            shapes = tuple(_random_composition(d, rng) for d in degrees)
            out.append((key, degrees, shapes))
    return out


def _run_tasks(fn: Callable, tasks: list, jobs: int) -> list:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks, chunksize=4))
    return [fn(t) for t in tasks]


THEOREMS = ("forest", "forest-violating", "line", "star", "regseq")


def sweep_theorem(name: str, params: SweepParams | None = None, *, jobs: int = 1) -> SweepResult:
    p = params or SweepParams()
    if name in ("forest", "forest-violating", "line", "star"):
        make = {
            "forest": forest_instances,
            "forest-violating": violating_forest_instances,
            "line": line_instances,
            "star": star_instances,
        }[name]
        forest = name in ("forest", "forest-violating")
        tasks = [(k, D.to_dict(), p, forest) for k, D in make(p)]
        results = _run_tasks(_graph_task, tasks, jobs)
        generated = len(tasks) * p.max_power
    elif name == "regseq":
        tasks = [(k, d, s, p.max_power, p) for k, d, s in regseq_instances(p)]
        results = _run_tasks(_regseq_task, tasks, jobs)
        generated = len(tasks) * p.max_power
    else:
        raise ValueError(f"unknown theorem sweep {name!r}; choose from {THEOREMS}")
    reports = sorted((r for _, rs, _ in results for r in rs), key=lambda r: r.key)
    skipped = sorted((s for _, _, ss in results for s in ss), key=lambda s: s["key"])
    return SweepResult(name, reports, skipped, generated)


# -- structural lemma sweeps ------------------------------------------------------


@dataclass
class LemmaRecord:
    key: str
    lemma: str
    ok: bool
    details: dict

    def to_dict(self) -> dict:
        return asdict(self)


LEMMAS = (
    "betti-splitting",
    "leaf-lemmas",
    "lem11-bound",
    "additivity",
    "monomial-shift",
    "polarization",
    "regseq-intersection",
)


def _fits(I: MonomialIdeal, cap: int) -> bool:
    return not I.is_zero and len(I) <= cap


def _forest_powers(p: SweepParams, cap: int):
    for key, D in forest_instances(p):
        I = edge_ideal(D)
        It = I
        for t in range(1, p.max_power + 1):
            if t > 1:
                It = It * I
            if len(It) <= cap:
                yield f"{key}/t{t}", D, t, It


def _lemma_task(args) -> tuple[list, list]:
    lemma, key, payload, p = args
    fs = FieldSpec(p.characteristic)
    cap = default_max_gens() if p.max_gens is None else p.max_gens
    records, skipped = [], []
    if lemma == "betti-splitting":
        I = MonomialIdeal.from_text(payload)
        for x in sorted(I.support()):
            try:
                s = variable_split(I, x)
            except DegenerateSplitError:
                continue
            if not all(_fits(q, cap) for q in (s.J, s.K, s.JcapK)):
                skipped.append({"key": f"{key}/{I.context.names[x]}", "cap": cap})
                continue
            TJ = betti_table(s.J, fs, max_gens=cap)
            if not has_linear_resolution(TJ):
                continue
            chk = is_betti_splitting(s, fs, max_gens=cap)
            cons = check_splitting_consequences(s, tables=chk.tables)
            records.append(LemmaRecord(
                f"{key}/{I.context.names[x]}", lemma, chk.ok and cons.ok,
                {"split_variable": I.context.names[x], "witness": chk.witness,
                 "reg": list(cons.reg), "pd": list(cons.pd)},
            ))
    elif lemma == "leaf-lemmas":
        D = WeightedDigraph.from_dict(payload)
        for z in D.leaves():
            for t in range(1, p.max_power + 1):
                rep = check_leaf_lemmas(D, z, t)
                records.append(LemmaRecord(f"{key}/{z}/t{t}", lemma, rep.ok, rep.to_dict()))
    elif lemma == "lem11-bound":
        P = WeightedDigraph.from_dict(payload)
        pred, In = lem11_bound(P)
        if len(In) > cap:
            skipped.append({"key": key, "generators": len(In), "cap": cap})
        else:
            reg = regularity(betti_table(In, fs, max_gens=cap))
            records.append(LemmaRecord(key, lemma, reg <= pred.value,
                                       {"reg": reg, "bound": pred.value, "generators": len(In)}))
    elif lemma == "additivity":
        A_text, B_text = payload
        A, B = MonomialIdeal.from_text(A_text), MonomialIdeal.from_text(B_text)
        ctx = A.context.extend(B.context.names)
        A2, B2 = A.in_context(ctx), B.in_context(ctx)
        S = A2 + B2
        if len(S) > cap:
            skipped.append({"key": key, "generators": len(S), "cap": cap})
        else:
            qa, qb, qs = (quotient_view(betti_table(q, fs, max_gens=cap)) for q in (A, B, S))
            reg_ok = regularity(qs) == regularity(qa) + regularity(qb)
            pd_ok = projective_dimension(qs) == projective_dimension(qa) + projective_dimension(qb)
            records.append(LemmaRecord(key, lemma, reg_ok and pd_ok, {
                "reg": [regularity(qs), regularity(qa), regularity(qb)],
                "pd": [projective_dimension(qs), projective_dimension(qa), projective_dimension(qb)],
            }))
    elif lemma == "monomial-shift":
        I_text, u_powers = payload
        I = MonomialIdeal.from_text(I_text)
        ctx = I.context.extend(u_powers)
        I2 = I.in_context(ctx)
        u = ctx.monomial(u_powers)
        uI = principal(u) * I2
        reg_I = regularity(betti_table(I, fs, max_gens=cap))
        reg_uI = regularity(betti_table(uI, fs, max_gens=cap))
        reg_u = regularity(betti_table(principal(u), fs, max_gens=cap))
        records.append(LemmaRecord(key, lemma, reg_uI == reg_I + u.degree and reg_u == u.degree,
                                   {"reg_I": reg_I, "reg_uI": reg_uI, "deg_u": u.degree}))
    elif lemma == "polarization":
        I = MonomialIdeal.from_text(payload)
        T = betti_table(I, fs, max_gens=cap)
        TP = betti_table(polarize(I), fs, max_gens=cap)
        records.append(LemmaRecord(key, lemma, T.same_betti(TP),
                                   {"digest": table_digest(T), "polarized_digest": table_digest(TP)}))
    elif lemma == "regseq-intersection":
        I = MonomialIdeal.from_text(payload)
        gens = list(I.generators)
        for t in range(2, p.max_power + 1):
            ok = regseq_intersection_holds(gens, t)
            records.append(LemmaRecord(f"{key}/t{t}", lemma, ok, {"t": t}))
    else:
        raise ValueError(f"unknown lemma {lemma!r}; choose from {LEMMAS}")
    return records, skipped


def _random_ideal_text(rng: random.Random, prefix: str, nvars: int, ngens: int, max_exp: int) -> str:
    names = [f"{prefix}{i + 1}" for i in range(nvars)]
    ctx = VariableContext(tuple(names))
    gens = []
    while len(gens) < ngens:
        exps = tuple(rng.randint(0, max_exp) for _ in names)
        if any(exps):
            gens.append(Monomial(ctx, exps))
    return minimalize(gens, ctx).to_text()


def lemma_tasks(lemma: str, p: SweepParams) -> list[tuple]:
    cap = default_max_gens() if p.max_gens is None else p.max_gens
    tasks = []
    if lemma in ("betti-splitting", "polarization"):
        for key, D, t, It in _forest_powers(p, cap):
            tasks.append((lemma, key, It.to_text(), p))
        rng = random.Random(f"{p.seed}/{lemma}")
        for k in range(p.trials):
            text = _random_ideal_text(rng, "x", rng.randint(2, 4), rng.randint(2, 5), 3)
            tasks.append((lemma, f"random/{p.seed}/{k:05d}", text, p))
    elif lemma == "leaf-lemmas":
        for key, D in forest_instances(p):
            tasks.append((lemma, key, D.to_dict(), p))
    elif lemma == "lem11-bound":
        for key, P in line_instances(p):
            if len(P.vertices) >= 3:
                tasks.append((lemma, key.replace("line/", "lem11/"), P.to_dict(), p))
    elif lemma == "additivity":
        forests = forest_instances(p)
        rng = random.Random(f"{p.seed}/{lemma}")
        for k, (key, D) in enumerate(forests):
            other = forests[(k + 1) % len(forests)][1]
            A = edge_ideal(D)
            B = edge_ideal(WeightedDigraph(
                tuple((f"y{n[1:]}", w) for n, w in other.vertices),
                tuple((f"y{u[1:]}", f"y{v[1:]}") for u, v in other.edges),
            ))
            t = rng.randint(1, p.max_power)
            At, Bt = power(A, t), power(B, 1)
            if len(At) + len(Bt) <= cap:
                tasks.append((lemma, f"{key}/t{t}", (At.to_text(), Bt.to_text()), p))
    elif lemma == "monomial-shift":
        rng = random.Random(f"{p.seed}/{lemma}")
        for key, D, t, It in _forest_powers(p, cap):
            u = {f"u{i + 1}": rng.randint(1, 3) for i in range(rng.randint(1, 3))}
            tasks.append((lemma, key, (It.to_text(), u), p))
    elif lemma == "regseq-intersection":
        for key, degrees, shapes in regseq_instances(p):
            if len(degrees) >= 2:
                tasks.append((lemma, key, regseq_ideal(degrees, shapes).to_text(), p))
    else:
        raise ValueError(f"unknown lemma {lemma!r}; choose from {LEMMAS}")
    return tasks


@dataclass
class LemmaSweep:
    lemma: str
    records: list[LemmaRecord]
    skipped: list[dict]

    @property
    def failures(self) -> list[LemmaRecord]:
        return [r for r in self.records if not r.ok]


def sweep_lemma(lemma: str, params: SweepParams | None = None, *, jobs: int = 1) -> LemmaSweep:
    p = params or SweepParams()
    results = _run_tasks(_lemma_task, lemma_tasks(lemma, p), jobs)
    records = sorted((r for rs, _ in results for r in rs), key=lambda r: r.key)
    skipped = sorted((s for _, ss in results for s in ss), key=lambda s: s["key"])
    return LemmaSweep(lemma, records, skipped)


# -- persistence -------------------------------------------------------------------

VOLATILE_KEYS = ("timestamp", "timings")


@dataclass(frozen=True)
class RunManifest:
    seed: int
    max_gens: int
    field: int
    command: str = ""
    params: dict = field(default_factory=dict)
    version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def to_dict(self) -> dict:
        return {"manifest": asdict(self)}


def _record(item) -> dict:
    return item.to_dict() if hasattr(item, "to_dict") else dict(item)


def persist(reports: Iterable, path, manifest: RunManifest) -> int:
    """Append the manifest line and one JSON line per report; returns the report count."""
    count = 0
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(manifest.to_dict(), sort_keys=True) + "\n")
        for idx, rep in enumerate(reports):
            try:
                fh.write(json.dumps(_record(rep), sort_keys=True) + "\n")
            except (OSError, TypeError, ValueError) as exc:
                raise OSError(f"failed to write record {idx}: {exc}") from exc
            count += 1
    return count


def strip_volatile(obj):
    """Drop timestamps and timings, recursively, for byte-level determinism checks."""
    if isinstance(obj, dict):
        return {k: strip_volatile(v) for k, v in obj.items() if k not in VOLATILE_KEYS}
    if isinstance(obj, list):
        return [strip_volatile(v) for v in obj]
    return obj


def stable_lines(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [json.dumps(strip_volatile(json.loads(line)), sort_keys=True) for line in fh if line.strip()]


# -- export ------------------------------------------------------------------------

DIALECTS = ("macaulay2", "cocoa5", "singular")


def export_script(I: MonomialIdeal, dialect: str, t: int = 1) -> str:
    """Script that rebuilds ``I^t`` in an external system and prints its Betti data."""
    if not I.is_proper or I.is_zero:
        raise ValueError("export needs a proper nonzero ideal")
    names = ",".join(I.context.names)
    gens = ", ".join(g.to_text() for g in I.generators)
    if dialect == "macaulay2":
        lines = [
            "-- edgereg export",
            f"R = QQ[{names}];",
            f"I = monomialIdeal({gens});",
            f"J = I^{t};",
            "print betti res module J;",
            "print regularity module J;",
            "print pdim module J;",
        ]
    elif dialect == "cocoa5":
        lines = [
            "-- edgereg export",
            f"use R ::= QQ[{names}];",
            f"I := ideal({gens});",
            f"J := I^{t};",
            "PrintBettiDiagram(J);",
        ]
    elif dialect == "singular":
        lines = [
            "// edgereg export",
            f"ring R = 0,({names}),dp;",
            f"ideal I = {gens};",
            f"ideal J = I^{t};",
            "resolution re = mres(J, 0);",
            'print(betti(re), "betti");',
        ]
    else:
        raise ValueError(f"unknown dialect {dialect!r}; choose from {DIALECTS}")
    return "\n".join(lines) + "\n"


_RING_RE = re.compile(r"QQ\[([^\]]*)\]|ring R = 0,\(([^)]*)\)")
_GENS_RE = re.compile(r"(?:monomialIdeal\(|ideal\(|ideal I = )([^;]*?)\)?;")


def parse_exported_ideal(script: str) -> MonomialIdeal:
    """Recover the base ideal from a script written by :func:`export_script`."""
    ring = _RING_RE.search(script)
    gens = _GENS_RE.search(script)
    if not ring or not gens:
        raise ValueError("not an edgereg export script")
    names = tuple(n.strip() for n in (ring.group(1) or ring.group(2)).split(","))
    ctx = VariableContext(names)
    return minimalize((parse_monomial(g, ctx) for g in gens.group(1).split(",")), ctx)
