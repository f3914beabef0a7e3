"""Edge ideals of vertex-weighted digraphs: exact Betti numbers, regularity and
projective dimension of their powers, and checks of the closed formulas."""

__version__ = "0.1.0"

from .betti import (  # noqa: E402
    BettiTable,
    FieldSpec,
    betti_table,
    depth_of_ideal,
    has_linear_resolution,
    projective_dimension,
    quotient_view,
    regularity,
)
from .digraph import (  # noqa: E402
    Family,
    FamilyTag,
    WeightedDigraph,
    classify,
    delete_vertices,
    edge_ideal,
    generate_forest,
    neighborhoods,
)
from .monomial import (  # noqa: E402
    Monomial,
    MonomialIdeal,
    VariableContext,
    colon_by_monomial,
    intersect,
    minimalize,
    parse_ideal,
    polarize,
    power,
    product,
)
