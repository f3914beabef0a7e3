"""Closed-form predictions of reg, pd and depth from graph data alone."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .digraph import Family, GraphError, WeightedDigraph, classify, edge_ideal, line_center_order
from .monomial import MonomialIdeal, minimalize, power


class Quantity(str, enum.Enum):
    REG_POWER = "REG_POWER"
    PD_POWER = "PD_POWER"
    REG_BASE = "REG_BASE"
    PD_BASE = "PD_BASE"
    DEPTH = "DEPTH"
    REG_REGSEQ_POWER = "REG_REGSEQ_POWER"
    LEM11_UPPER_BOUND = "LEM11_UPPER_BOUND"


@dataclass(frozen=True)
class Prediction:
    quantity: Quantity
    value: int
    hypothesis_ok: bool
    provenance: str

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity.value,
            "value": self.value,
            "hypothesis_ok": self.hypothesis_ok,
            "provenance": self.provenance,
        }


def forest_hypothesis_ok(D: WeightedDigraph) -> bool:
    tag = classify(D)
    return tag.rooted_forest and tag.weight_condition_ok


def line_hypothesis_ok(D: WeightedDigraph) -> bool:
    """Oriented line with every interior vertex of weight at least 2."""
    if classify(D).family is not Family.ORIENTED_LINE:
        return False
    order = line_center_order(D)
    return all(D.weight(x) >= 2 for x in order[1:-1])


def star_hypothesis_ok(D: WeightedDigraph) -> bool:
    """One of the three star shapes; the broom additionally needs its centre weight >= 2."""
    fam = classify(D).family
    if fam in (Family.STAR_OUT, Family.STAR_IN):
        return True
    if fam is Family.BROOM:
        center = next(x for x in D.names if D.in_degree(x) == 1 and D.out_degree(x) >= 2)
        return D.weight(center) >= 2
    return False


def _reg_power_value(D: WeightedDigraph, t: int) -> int:
    if t < 1:
        raise ValueError("t must be >= 1")
    return D.total_weight - len(D.edges) + 1 + (t - 1) * (D.max_weight + 1)


def predict_reg_power_forest(D: WeightedDigraph, t: int) -> Prediction:
    """``sum w - |E| + 1 + (t-1)(w+1)`` with ``w`` the largest weight."""
    return Prediction(
        Quantity.REG_POWER, _reg_power_value(D, t), forest_hypothesis_ok(D), "thm:forest-reg"
    )


def predict_reg_power_line(D: WeightedDigraph, t: int) -> Prediction:
    return Prediction(Quantity.REG_POWER, _reg_power_value(D, t), line_hypothesis_ok(D), "thm:line-reg")


def predict_reg_power_star(D: WeightedDigraph, t: int) -> Prediction:
    return Prediction(Quantity.REG_POWER, _reg_power_value(D, t), star_hypothesis_ok(D), "thm:star-reg")


def predict_reg_power(D: WeightedDigraph, t: int) -> Prediction:
    """Same expression as the forest formula, with the hypothesis of the most specific theorem."""
    fam = classify(D).family
    if fam is Family.ORIENTED_LINE:
        return predict_reg_power_line(D, t)
    if fam in (Family.STAR_OUT, Family.STAR_IN, Family.BROOM):
        return predict_reg_power_star(D, t)
    return predict_reg_power_forest(D, t)


def predict_pd_power_forest(D: WeightedDigraph, t: int) -> Prediction:
    if t < 1:
        raise ValueError("t must be >= 1")
    return Prediction(Quantity.PD_POWER, len(D.edges) - 1, forest_hypothesis_ok(D), "thm:forest-pd")


def predict_reg_base(D: WeightedDigraph) -> Prediction:
    return Prediction(
        Quantity.REG_BASE, D.total_weight - len(D.edges) + 1, forest_hypothesis_ok(D), "base:reg"
    )


def predict_pd_base(D: WeightedDigraph) -> Prediction:
    return Prediction(Quantity.PD_BASE, len(D.edges) - 1, forest_hypothesis_ok(D), "base:pd")


def predict_reg_recursion(D: WeightedDigraph, t: int, reg_base: int) -> Prediction:
    if t < 1:
        raise ValueError("t must be >= 1")
    return Prediction(
        Quantity.REG_POWER,
        reg_base + (t - 1) * (D.max_weight + 1),
        forest_hypothesis_ok(D),
        "cor:reg-recursion",
    )


def predict_reg_regseq_power(degrees: Sequence[int], t: int) -> Prediction:
    """``sum d_i - (r-1) + (t-1) max d_i`` for a regular sequence of degrees ``d_i``."""
    if not degrees:
        raise ValueError("need at least one degree")
    if t < 1 or any(d < 1 for d in degrees):
        raise ValueError("degrees and t must be positive")
    r = len(degrees)
    value = sum(degrees) - (r - 1) + (t - 1) * max(degrees)
    return Prediction(Quantity.REG_REGSEQ_POWER, value, True, "thm:regseq-reg")


def predict_depth(D: WeightedDigraph) -> Prediction:
    return Prediction(
        Quantity.DEPTH, len(D.vertices) - len(D.edges) + 1, forest_hypothesis_ok(D), "cor:depth"
    )


def lem11_ideal(P: WeightedDigraph) -> MonomialIdeal:
    """``G(I(P)^2)`` minus the squares of the generators of ``I(P)``."""
    I = edge_ideal(P)
    squares = {g**2 for g in I.generators}
    return minimalize([g for g in power(I, 2).generators if g not in squares], I.context)


def lem11_bound(P: WeightedDigraph) -> tuple[Prediction, MonomialIdeal]:
    """Upper bound ``sum w_i - (n-1) + 1 + (w+1)`` on ``reg(I_n)``, and ``I_n`` itself."""
    if classify(P).family is not Family.ORIENTED_LINE:
        raise GraphError("the bound applies to oriented lines only")
    n = len(P.vertices)
    if n < 3:
        raise GraphError("the bound needs at least 3 vertices")
    value = P.total_weight - (n - 1) + 1 + (P.max_weight + 1)
    pred = Prediction(Quantity.LEM11_UPPER_BOUND, value, line_hypothesis_ok(P), "lem:I_n-bound")
    return pred, lem11_ideal(P)
