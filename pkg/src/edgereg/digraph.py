"""Vertex-weighted digraphs, the families the formulas cover, and their edge ideals."""

from __future__ import annotations

import enum
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .monomial import MonomialIdeal, VariableContext, minimalize


class GraphError(ValueError):
    pass


class Family(str, enum.Enum):
    ROOTED_FOREST = "ROOTED_FOREST"
    ORIENTED_LINE = "ORIENTED_LINE"
    STAR_OUT = "STAR_OUT"
    STAR_IN = "STAR_IN"
    BROOM = "BROOM"
    OTHER = "OTHER"


@dataclass(frozen=True)
class FamilyTag:
    family: Family
    rooted_forest: bool
    weight_condition_ok: bool

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "rooted_forest": self.rooted_forest,
            "weight_condition_ok": self.weight_condition_ok,
        }


@dataclass(frozen=True)
class WeightedDigraph:
    """``D = (V, E, w)``.

    Sources (vertices with no incoming edge, isolated ones included) get
    weight 1 on construction; the names whose weight was changed are kept in
    ``normalized`` so parsers can report them.
    """

    vertices: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str], ...]
    normalized: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        verts = tuple((str(n), int(w)) for n, w in self.vertices)
        edges = tuple((str(u), str(v)) for u, v in self.edges)
        names = [n for n, _ in verts]
        if len(set(names)) != len(names):
            raise GraphError("duplicate vertex names")
        known = set(names)
        for n, w in verts:
            if w < 1:
                raise GraphError(f"weight of {n} must be a positive integer, got {w}")
        seen = set()
        for u, v in edges:
            if u not in known or v not in known:
                raise GraphError(f"edge ({u}, {v}) uses an undeclared vertex")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        targets = {v for _, v in edges}
        fixed, reset = [], list(self.normalized)
        for n, w in verts:
            if n not in targets and w != 1:
                reset.append(n)
                w = 1
            fixed.append((n, w))
        object.__setattr__(self, "vertices", tuple(fixed))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "normalized", tuple(reset))

    # -- accessors -----------------------------------------------------------
    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.vertices)

    @property
    def weights(self) -> dict[str, int]:
        return dict(self.vertices)

    def weight(self, name: str) -> int:
        return self.weights[name]

    @property
    def max_weight(self) -> int:
        return max(w for _, w in self.vertices)

    @property
    def total_weight(self) -> int:
        return sum(w for _, w in self.vertices)

    def degree(self, name: str) -> int:
        return sum((u == name) + (v == name) for u, v in self.edges)

    def in_degree(self, name: str) -> int:
        return sum(v == name for _, v in self.edges)

    def out_degree(self, name: str) -> int:
        return sum(u == name for u, _ in self.edges)

    def is_source(self, name: str) -> bool:
        return self.in_degree(name) == 0

    def leaves(self) -> list[str]:
        """Degree-one vertices that are the head of their only edge."""
        return [n for n in self.names if self.degree(n) == 1 and self.in_degree(n) == 1]

    def context(self) -> VariableContext:
        return VariableContext(self.names)

    # -- JSON ----------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "vertices": [{"name": n, "weight": w} for n, w in self.vertices],
            "edges": [[u, v] for u, v in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> WeightedDigraph:
        try:
            verts = [(v["name"], v.get("weight", 1)) for v in data["vertices"]]
            edges = [tuple(e) for e in data["edges"]]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed digraph JSON: {exc}") from None
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {list(e)} must have two endpoints")
        return cls(tuple(verts), tuple(edges))

    @classmethod
    def from_json(cls, text: str) -> WeightedDigraph:
        return cls.from_dict(json.loads(text))


def digraph(weights: dict[str, int] | Sequence[tuple[str, int]], edges: Iterable) -> WeightedDigraph:
    items = weights.items() if isinstance(weights, dict) else weights
    return WeightedDigraph(tuple(items), tuple(tuple(e) for e in edges))


def edge_ideal(D: WeightedDigraph, context: VariableContext | None = None) -> MonomialIdeal:
    """``I(D) = (x_u * x_v^{w_v} : (u, v) in E)``, optionally in a larger context."""
    ctx = context or D.context()
    w = D.weights
    gens = [ctx.monomial({u: 1}) * ctx.monomial({v: w[v]}) for u, v in D.edges]
    return minimalize(gens, ctx)


def neighborhoods(D: WeightedDigraph, x: str) -> tuple[frozenset[str], frozenset[str]]:
    """``(N^-(x), N^+(x))``."""
    if x not in D.weights:
        raise GraphError(f"unknown vertex {x!r}")
    ins = frozenset(u for u, v in D.edges if v == x)
    outs = frozenset(v for u, v in D.edges if u == x)
    return ins, outs


def delete_vertices(D: WeightedDigraph, P: Iterable[str]) -> WeightedDigraph:
    """Induced subgraph on ``V \\ P``; new sources get weight 1 (never changes the ideal of a forest)."""
    P = set(P)
    unknown = P - set(D.names)
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    verts = tuple((n, w) for n, w in D.vertices if n not in P)
    edges = tuple((u, v) for u, v in D.edges if u not in P and v not in P)
    return WeightedDigraph(verts, edges)


# -- classification -------------------------------------------------------------


def _is_forest(D: WeightedDigraph) -> bool:
    parent = {n: n for n in D.names}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in D.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def is_rooted_forest(D: WeightedDigraph) -> bool:
    indeg = Counter(v for _, v in D.edges)
    return _is_forest(D) and all(c <= 1 for c in indeg.values())


def weight_condition_ok(D: WeightedDigraph) -> bool:
    """``w(x) >= 2`` whenever ``d(x) != 1``.

    Sources with outgoing edges are exempt (their weight is fixed to 1 and never
    enters the ideal). Isolated vertices are not: they count towards the weight
    sum but contribute no generator.
    """
    for n, w in D.vertices:
        d = D.degree(n)
        if d == 1:
            continue
        if d > 0 and D.is_source(n):
            continue
        if w < 2:
            return False
    return True


def _is_oriented_line(D: WeightedDigraph) -> bool:
    n = len(D.vertices)
    if len(D.edges) != n - 1 or n < 2:
        return False
    out = {u: v for u, v in D.edges}
    if len(out) != len(D.edges):
        return False
    starts = [x for x in D.names if D.in_degree(x) == 0]
    if len(starts) != 1:
        return False
    seen, cur = {starts[0]}, starts[0]
    while cur in out:
        cur = out[cur]
        if cur in seen:
            return False
        seen.add(cur)
    return len(seen) == n


def _star_shape(D: WeightedDigraph) -> Family | None:
    n = len(D.vertices)
    if n < 3 or len(D.edges) != n - 1:
        return None
    for c in D.names:
        ins, outs = neighborhoods(D, c)
        others = set(D.names) - {c}
        if outs == others and not ins:
            return Family.STAR_OUT
        if ins == others and not outs:
            return Family.STAR_IN
    if n >= 4:
        for c in D.names:
            ins, outs = neighborhoods(D, c)
            if len(ins) == 1 and len(outs) == n - 2:
                (root,) = ins
                if D.degree(root) == 1 and set(outs) | {root, c} == set(D.names):
                    return Family.BROOM
    return None


def classify(D: WeightedDigraph) -> FamilyTag:
    forest = is_rooted_forest(D)
    if _is_oriented_line(D):
        family = Family.ORIENTED_LINE
    else:
        family = _star_shape(D) or (Family.ROOTED_FOREST if forest else Family.OTHER)
    return FamilyTag(family, forest, weight_condition_ok(D))


def line_center_order(D: WeightedDigraph) -> list[str]:
    """Vertices of an oriented line in path order."""
    if not _is_oriented_line(D):
        raise GraphError("not an oriented line")
    out = dict(D.edges)
    cur = next(x for x in D.names if D.in_degree(x) == 0)
    order = [cur]
    while cur in out:
        cur = out[cur]
        order.append(cur)
    return order


# -- constructors and random instances -------------------------------------------


def _names(n: int) -> list[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def oriented_line(weights: Sequence[int]) -> WeightedDigraph:
    """``x1 -> x2 -> ... -> xn`` with the given weights (``weights[0]`` is reset to 1)."""
    names = _names(len(weights))
    return digraph(list(zip(names, weights)), zip(names, names[1:]))


def star_out(leaf_weights: Sequence[int]) -> WeightedDigraph:
    names = _names(len(leaf_weights) + 1)
    return digraph(list(zip(names, [1, *leaf_weights])), [("x1", v) for v in names[1:]])


def star_in(center_weight: int, leaves: int) -> WeightedDigraph:
    names = _names(leaves + 1)
    return digraph(
        list(zip(names, [center_weight] + [1] * leaves)), [(v, "x1") for v in names[1:]]
    )


def broom(center_weight: int, leaf_weights: Sequence[int]) -> WeightedDigraph:
    """Edges ``x1x2, x2x3, ..., x2xn``."""
    names = _names(len(leaf_weights) + 2)
    weights = [1, center_weight, *leaf_weights]
    edges = [("x1", "x2")] + [("x2", v) for v in names[2:]]
    return digraph(list(zip(names, weights)), edges)


def _assign_weights(
    names: list[str], edges: list[tuple[str, str]], max_weight: int, rng: random.Random
) -> WeightedDigraph:
    skeleton = WeightedDigraph(tuple((n, 1) for n in names), tuple(edges))
    weights = []
    for n in names:
        if skeleton.is_source(n):
            weights.append((n, 1))
        elif skeleton.degree(n) == 1:
            weights.append((n, rng.randint(1, max_weight)))
        else:
            weights.append((n, rng.randint(2, max_weight)))
    return WeightedDigraph(tuple(weights), tuple(edges))


def _check_bounds(edge_count: int, max_weight: int) -> None:
    if edge_count < 1:
        raise ValueError("edge_count must be >= 1")
    if max_weight < 2:
        raise ValueError("max_weight must be >= 2")


def generate_forest(
    edge_count: int, max_weight: int, seed: int, new_root_prob: float = 0.25
) -> WeightedDigraph:
    """Random rooted forest with exactly ``edge_count`` edges and no isolated vertex.

    Each step either hangs a new vertex under a random existing vertex or starts
    a new tree with one edge. Non-leaf non-source vertices get weights in
    ``[2, max_weight]``, leaves in ``[1, max_weight]``.
    """
    _check_bounds(edge_count, max_weight)
    rng = random.Random(seed)
    names = ["x1", "x2"]
    edges = [("x1", "x2")]
    while len(edges) < edge_count:
        if rng.random() < new_root_prob and len(edges) + 1 <= edge_count:
            r, c = f"x{len(names) + 1}", f"x{len(names) + 2}"
            names += [r, c]
            edges.append((r, c))
        else:
            parent = rng.choice(names)
            child = f"x{len(names) + 1}"
            names.append(child)
            edges.append((parent, child))
    return _assign_weights(names, edges, max_weight, rng)


def generate_family(family: str, edge_count: int, max_weight: int, seed: int) -> WeightedDigraph:
    """Seeded instance of ``path``, ``star-out``, ``star-in``, ``broom`` or ``forest``."""
    _check_bounds(edge_count, max_weight)
    rng = random.Random(seed)
    n = edge_count + 1
    names = _names(n)
    if family == "forest":
        return generate_forest(edge_count, max_weight, seed)
    if family == "path":
        edges = list(zip(names, names[1:]))
    elif family == "star-out":
        edges = [("x1", v) for v in names[1:]]
    elif family == "star-in":
        edges = [(v, "x1") for v in names[1:]]
    elif family == "broom":
        if edge_count < 3:
            raise ValueError("a broom needs at least 3 edges")
        edges = [("x1", "x2")] + [("x2", v) for v in names[2:]]
    else:
        raise ValueError(f"unknown family {family!r}")
    return _assign_weights(names, edges, max_weight, rng)
