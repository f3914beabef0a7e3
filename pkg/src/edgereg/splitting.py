"""Exact checks of Betti splittings and of the ideal identities used for leaves."""

from __future__ import annotations

from dataclasses import dataclass, field

from .betti import BettiTable, FieldSpec, betti_table, projective_dimension, regularity
from .digraph import GraphError, WeightedDigraph, delete_vertices, edge_ideal, neighborhoods
from .monomial import MonomialIdeal, Monomial, colon_by_monomial, intersect, minimalize, power, principal


class DegenerateSplitError(ValueError):
    pass


@dataclass(frozen=True)
class SplittingInstance:
    I: MonomialIdeal
    J: MonomialIdeal
    K: MonomialIdeal
    JcapK: MonomialIdeal
    split_variable: int | None = None

    def __post_init__(self):
        gi = set(self.I.generators)
        gj, gk = set(self.J.generators), set(self.K.generators)
        if gj & gk or gj | gk != gi:
            raise ValueError("G(I) must be the disjoint union of G(J) and G(K)")


def split(I: MonomialIdeal, J_gens, split_variable: int | None = None) -> SplittingInstance:
    J_gens = set(J_gens)
    J = minimalize([g for g in I.generators if g in J_gens], I.context)
    K = minimalize([g for g in I.generators if g not in J_gens], I.context)
    if J.is_zero or K.is_zero:
        raise DegenerateSplitError("both parts of a splitting must be nonempty")
    return SplittingInstance(I, J, K, intersect(J, K), split_variable)


def variable_split(I: MonomialIdeal, x: int | str) -> SplittingInstance:
    """``J`` = generators divisible by ``x``, ``K`` = the rest."""
    idx = I.context.index(x) if isinstance(x, str) else x
    return split(I, [g for g in I.generators if g.exponents[idx] > 0], idx)


@dataclass
class SplittingCheck:
    ok: bool
    witness: tuple[int, int, int, int] | None = None  # (i, j, beta_I, beta_J + beta_K + beta_JK)
    tables: dict[str, BettiTable] = field(default_factory=dict)


def _tables(s: SplittingInstance, fs: FieldSpec, max_gens) -> dict[str, BettiTable]:
    return {
        name: betti_table(ideal, fs, max_gens=max_gens)
        for name, ideal in (("I", s.I), ("J", s.J), ("K", s.K), ("JcapK", s.JcapK))
    }


def is_betti_splitting(
    s: SplittingInstance, field: FieldSpec | None = None, *, max_gens: int | None = None
) -> SplittingCheck:
    """Entrywise ``beta_{i,j}(I) = beta_{i,j}(J) + beta_{i,j}(K) + beta_{i-1,j}(J cap K)``."""
    T = _tables(s, field or FieldSpec(), max_gens)
    bi, bj, bk, bjk = (T[k].as_dict() for k in ("I", "J", "K", "JcapK"))
    keys = set(bi) | set(bj) | set(bk) | {(i + 1, j) for i, j in bjk}
    for i, j in sorted(keys):
        rhs = bj.get((i, j), 0) + bk.get((i, j), 0) + bjk.get((i - 1, j), 0)
        lhs = bi.get((i, j), 0)
        if lhs != rhs:
            return SplittingCheck(False, (i, j, lhs, rhs), T)
    return SplittingCheck(True, None, T)


@dataclass
class ConsequenceReport:
    reg_ok: bool
    pd_ok: bool
    reg: tuple[int, int]  # (reg I, max{reg J, reg K, reg(J cap K) - 1})
    pd: tuple[int, int]

    @property
    def ok(self) -> bool:
        return self.reg_ok and self.pd_ok


def check_splitting_consequences(
    s: SplittingInstance,
    field: FieldSpec | None = None,
    *,
    max_gens: int | None = None,
    tables: dict[str, BettiTable] | None = None,
) -> ConsequenceReport:
    T = tables or _tables(s, field or FieldSpec(), max_gens)
    reg_rhs = max(regularity(T["J"]), regularity(T["K"]), regularity(T["JcapK"]) - 1)
    pd_rhs = max(
        projective_dimension(T["J"]), projective_dimension(T["K"]), projective_dimension(T["JcapK"]) + 1
    )
    reg_i, pd_i = regularity(T["I"]), projective_dimension(T["I"])
    return ConsequenceReport(reg_i == reg_rhs, pd_i == pd_rhs, (reg_i, reg_rhs), (pd_i, pd_rhs))


# -- leaf identities -------------------------------------------------------------


@dataclass
class LeafLemmaReport:
    leaf: str
    parent: str
    t: int
    results: dict[str, bool | None]

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.results.values())

    def to_dict(self) -> dict:
        return {"leaf": self.leaf, "parent": self.parent, "t": self.t, "results": self.results}


def _power0(I: MonomialIdeal, t: int) -> MonomialIdeal:
    return I if I.is_zero else power(I, t)


def check_leaf_lemmas(D: WeightedDigraph, z: str, t: int) -> LeafLemmaReport:
    """The three leaf identities as canonical equalities of ideals.

    * ``(I(D)^t, z^{w_z}) = (I(D \\ z)^t, z^{w_z})`` for ``t >= 1``
    * ``(I(D)^t : y z^{w_z}) = I(D)^{t-1}`` for ``t >= 2``
    * ``((I(D)^t : z^{w_z}), y) = ((I(D \\ y)^t : z^{w_z}), y) = (I(D \\ y)^t, y)`` for ``t >= 2``

    Identities that need ``t >= 2`` are reported as ``None`` at ``t = 1``.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    ins, outs = neighborhoods(D, z)
    if len(ins) != 1 or outs:
        raise GraphError(f"{z} is not a leaf with a single in-neighbour")
    (y,) = ins
    ctx = D.context()
    I = edge_ideal(D)
    It = power(I, t)
    zw = ctx.monomial({z: D.weight(z)})
    yv = principal(ctx.variable(y))
    zpow = principal(zw)

    I_minus_z = edge_ideal(delete_vertices(D, {z}), ctx)
    results: dict[str, bool | None] = {"sum_with_leaf_power": It + zpow == _power0(I_minus_z, t) + zpow}
    if t >= 2:
        results["colon_by_edge"] = colon_by_monomial(It, ctx.variable(y) * zw) == power(I, t - 1)
        I_minus_y_t = _power0(edge_ideal(delete_vertices(D, {y}), ctx), t)
        lhs = colon_by_monomial(It, zw) + yv
        mid = (I_minus_y_t.colon(zw) if not I_minus_y_t.is_zero else I_minus_y_t) + yv
        rhs = I_minus_y_t + yv
        results["colon_by_leaf_power"] = lhs == mid == rhs
    else:
        results["colon_by_edge"] = None
        results["colon_by_leaf_power"] = None
    return LeafLemmaReport(z, y, t, results)


def regseq_intersection_holds(us: list[Monomial], t: int) -> bool:
    """``u_r I^{t-1} cap J^t = u_r J^t`` with ``I = (u_1..u_r)``, ``J = (u_1..u_{r-1})``."""
    if len(us) < 2 or t < 2:
        raise ValueError("need r >= 2 and t >= 2")
    ctx = us[0].context
    I = minimalize(us, ctx)
    J = minimalize(us[:-1], ctx)
    ur = principal(us[-1])
    Jt = power(J, t)
    return intersect(ur * power(I, t - 1), Jt) == ur * Jt
