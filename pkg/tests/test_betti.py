import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from koszul_oracle import koszul_betti
from strategies import small_ideals

from edgereg.betti import (
    BettiError,
    BettiTable,
    FieldSpec,
    GeneratorCapError,
    ImproperIdealError,
    betti_table,
    depth_of_ideal,
    has_linear_resolution,
    lcm_lattice,
    multigraded_betti,
    projective_dimension,
    quotient_view,
    regularity,
)
from edgereg.digraph import edge_ideal, generate_forest, oriented_line
from edgereg.linalg import rank, rank_mod_p, rank_rational
from edgereg.monomial import (
    VariableContext,
    colon_by_monomial,
    parse_ideal,
    parse_monomial,
    polarize,
    power,
    zero_ideal,
)
from edgereg.simplicial import reduced_homology


def I_(text):
    return parse_ideal(text)


def oracle(I, p=32003):
    return koszul_betti([g.exponents for g in I.generators], p)


class TestKnownTables:
    def test_principal(self):
        T = betti_table(I_("ring x1 x2\nx1*x2^2"))
        assert T.as_dict() == {(0, 3): 1}
        assert regularity(T) == 3 and projective_dimension(T) == 0
        assert depth_of_ideal(T, 2) == 2
        assert has_linear_resolution(T)

    def test_complete_intersection(self):
        T = betti_table(I_("ring x1 x2 x3 x4\nx1*x2\nx3*x4"))
        assert T.as_dict() == {(0, 2): 2, (1, 4): 1}
        assert T.as_dict() == oracle(I_("ring x1 x2 x3 x4\nx1*x2\nx3*x4"))
        assert regularity(T) == 3
        assert projective_dimension(T) == 1
        assert T.depth == 3
        assert not has_linear_resolution(T)

    def test_squarefree_path(self):
        I = polarize(edge_ideal(oriented_line([1, 1, 1, 1])))
        T = betti_table(I)
        assert T.as_dict() == {(0, 2): 3, (1, 3): 2}
        assert T.as_dict() == oracle(I)
        assert regularity(T) == 2
        assert projective_dimension(T) == 1

    def test_weighted_star_ideal_is_not_linear(self):
        # x1*(x2^2, x3^2): the single syzygy sits in degree 5, not 4
        I = I_("ring x1 x2 x3\nx1*x2^2\nx1*x3^2")
        T = betti_table(I)
        assert T.as_dict() == oracle(I) == {(0, 3): 2, (1, 5): 1}
        assert not has_linear_resolution(T)

    def test_variable_times_linear_ideal_is_linear(self):
        T = betti_table(I_("ring x1 x2 x3 x4\nx1*x2\nx1*x3\nx1*x4"))
        assert has_linear_resolution(T)

    def test_forest_depth(self):
        D = generate_forest(4, 3, seed=3)
        T = betti_table(edge_ideal(D))
        assert T.depth == len(D.vertices) - len(D.edges) + 1

    def test_zeroth_betti_counts_generators(self):
        I = I_("ring a b c\na^2\na*b^3\nc^4\nb*c")
        T = betti_table(I)
        degs = {}
        for g in I.generators:
            degs[g.degree] = degs.get(g.degree, 0) + 1
        assert {j: v for (i, j), v in T.entries if i == 0} == degs


class TestQuotientView:
    def test_principal(self):
        Q = quotient_view(betti_table(I_("ring x1 x2\nx1*x2^2")))
        assert Q.as_dict() == {(0, 0): 1, (1, 3): 1}
        assert regularity(Q) == 2
        assert projective_dimension(Q) == 1
        with pytest.raises(BettiError):
            quotient_view(Q)


class TestErrors:
    def test_unit_ideal(self):
        U = colon_by_monomial(I_("ring x\nx"), parse_monomial("x", VariableContext(("x",))))
        with pytest.raises(ImproperIdealError):
            betti_table(U)

    def test_zero_ideal(self):
        with pytest.raises(BettiError):
            betti_table(zero_ideal(VariableContext(("x",))))

    def test_cap_reports_needed(self):
        I = power(edge_ideal(oriented_line([1, 2, 2, 2])), 2)
        with pytest.raises(GeneratorCapError) as exc:
            betti_table(I, max_gens=3)
        assert exc.value.needed == len(I)
        assert "--max-gens" in str(exc.value)

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("EDGEREG_MAX_GENS", "2")
        with pytest.raises(GeneratorCapError):
            betti_table(I_("ring a b c\na\nb\nc"))

    def test_bad_field(self):
        with pytest.raises(ValueError):
            FieldSpec(4)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            betti_table(I_("ring a\na"), method="hochster")

    def test_empty_table(self):
        with pytest.raises(BettiError):
            regularity(BettiTable(2, ()))


class TestPaperScale:
    def test_two_path_square_is_21_generators(self):
        D = oriented_line([1, 2, 1, 2])
        I = edge_ideal(D)
        assert len(I) == 3
        big = parse_ideal(
            "ring x1 x2 x3 x4 x5 x6 x7 x8\n"
            "x1*x2^2\nx2*x3\nx3*x4^2\nx5*x6^2\nx6*x7\nx7*x8^2"
        )
        assert len(power(big, 2)) == 21

    def test_taylor_matches_nerve_on_weighted_line_square(self):
        I = power(I_("ring x1 x2 x3 x4\nx1*x2^5\nx2*x3\nx3*x4^8"), 2)
        a = betti_table(I, method="taylor")
        b = betti_table(I, method="nerve")
        assert a == b
        assert a.as_dict() == oracle(I)
        assert regularity(a) == 18


class TestLinearAlgebra:
    def test_rank_mod_p(self):
        M = np.array([[1, 1], [1, -1]])
        assert rank_mod_p(M, 2) == 1
        assert rank_mod_p(M, 3) == 2
        assert rank_rational(M) == 2
        assert rank(M, 0) == 2

    def test_empty(self):
        assert rank(np.zeros((0, 3), dtype=np.int64), 2) == 0

    @given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=5))
    def test_rank_over_large_prime_matches_rationals(self, rows):
        M = np.array(rows, dtype=np.int64)
        assert rank_mod_p(M, 32003) == rank_rational(M)


class TestSimplicial:
    def test_void_and_empty(self):
        assert reduced_homology([0], 2) == {-1: 1}
        assert reduced_homology([0b111], 2) == {}

    def test_circle(self):
        assert reduced_homology([0b011, 0b110, 0b101], 32003) == {1: 1}

    def test_two_points(self):
        assert reduced_homology([0b01, 0b10], 2) == {0: 1}

    def test_projective_plane_depends_on_characteristic(self):
        # six-vertex triangulation of RP^2
        tri = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
               (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
        facets = [sum(1 << v for v in f) for f in tri]
        assert reduced_homology(facets, 2) == {1: 1, 2: 1}
        assert reduced_homology(facets, 32003) == {}
        assert reduced_homology(facets, 0) == {}


class TestLattice:
    def test_lattice_is_closure(self):
        G = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert len(lcm_lattice(G)) == 7


# -- properties ------------------------------------------------------------------


@settings(max_examples=80)
@given(small_ideals())
def test_nerve_taylor_and_koszul_agree(I):
    nerve = betti_table(I)
    assert betti_table(I, method="taylor") == nerve
    assert nerve.as_dict() == oracle(I)


@given(small_ideals(max_gens=4))
def test_multigraded_backends_agree(I):
    assert multigraded_betti(I, method="nerve") == multigraded_betti(I, method="taylor")


@given(small_ideals())
def test_polarization_invariance(I):
    assert betti_table(I).same_betti(betti_table(polarize(I)))


@given(small_ideals(), st.integers(1, 3))
def test_ambient_extension_invariance(I, extra):
    ctx = I.context.extend([f"y{k}" for k in range(extra)])
    assert betti_table(I).same_betti(betti_table(I.in_context(ctx)))


@given(small_ideals())
def test_table_bounds(I):
    T = betti_table(I)
    assert all(v > 0 and i >= 0 for (i, _), v in T.entries)
    assert projective_dimension(T) <= len(I) - 1
    assert sum(v for (i, _), v in T.entries if i == 0) == len(I)


@given(small_ideals(max_gens=4))
def test_rational_field_matches_large_prime(I):
    assert betti_table(I, FieldSpec(0)).same_betti(betti_table(I, FieldSpec(32003)))


@given(small_ideals())
def test_char2_oracle_agreement(I):
    assert betti_table(I, FieldSpec(2)).as_dict() == oracle(I, 2)


def test_characteristic_dependence_is_detected():
    # Stanley-Reisner ideal of the six-vertex real projective plane: its minimal
    # non-faces are the ten triangles missing from the triangulation
    from itertools import combinations

    tri = {frozenset(f) for f in [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
                                  (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]}
    names = [f"v{k}" for k in range(6)]
    gens = ["*".join(names[k] for k in f) for f in combinations(range(6), 3) if frozenset(f) not in tri]
    I = parse_ideal("ring " + " ".join(names) + "\n" + "\n".join(gens))
    t2, tp = betti_table(I, FieldSpec(2)), betti_table(I, FieldSpec(32003))
    assert not t2.same_betti(tp)
    assert t2.as_dict() == oracle(I, 2)
    assert tp.as_dict() == oracle(I, 32003)
