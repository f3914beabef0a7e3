import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from strategies import small_ideals

from edgereg.betti import betti_table, has_linear_resolution
from edgereg.digraph import GraphError, edge_ideal, generate_forest, oriented_line
from edgereg.monomial import colon_by_monomial, ideal_from_exponents, parse_ideal, parse_monomial, power, principal
from edgereg.splitting import (
    DegenerateSplitError,
    SplittingInstance,
    check_leaf_lemmas,
    check_splitting_consequences,
    is_betti_splitting,
    regseq_intersection_holds,
    split,
    variable_split,
)


@st.composite
def linear_j_splits(draw):
    """Ideals whose generators divisible by x0 are u * m^d, m a set of variables.

    Powers of ideals generated by variables have linear resolutions, and so do
    their multiples by a monomial, so the split on x0 has linear J whenever
    minimalization leaves J intact.
    """
    from itertools import combinations_with_replacement

    n = draw(st.integers(3, 4))
    names = [f"x{i}" for i in range(n)]
    u = [draw(st.integers(1, 2))] + [draw(st.integers(0, 1)) for _ in range(n - 1)]
    block = draw(st.lists(st.integers(1, n - 1), min_size=1, max_size=2, unique=True))
    d = draw(st.integers(1, 2))
    J = []
    for combo in combinations_with_replacement(block, d):
        v = u[:]
        for k in combo:
            v[k] += 1
        J.append(tuple(v))
    K = draw(st.lists(
        st.tuples(st.just(0), *[st.integers(0, 3)] * (n - 1)).filter(any), min_size=1, max_size=3
    ))
    return ideal_from_exponents(names, J + K)


def I_(text):
    return parse_ideal(text)


class TestVariableSplit:
    def test_coprime(self):
        I = I_("ring x1 x2 x3 x4\nx1*x2\nx3*x4")
        s = variable_split(I, "x1")
        ctx = I.context
        assert s.J == principal(parse_monomial("x1*x2", ctx))
        assert s.K == principal(parse_monomial("x3*x4", ctx))
        assert s.JcapK == principal(parse_monomial("x1*x2*x3*x4", ctx))
        assert s.split_variable == 0

    def test_pairwise_lcm(self):
        I = I_("ring x1 x2 x3\nx1*x2^3\nx2*x3")
        s = variable_split(I, "x1")
        assert s.JcapK == principal(parse_monomial("x1*x2^3*x3", I.context))

    def test_absorbed(self):
        I = I_("ring x1 x2\nx1\nx1*x2")
        with pytest.raises(DegenerateSplitError):
            variable_split(I, "x1")

    def test_not_a_partition(self):
        I = I_("ring a b\na\nb")
        with pytest.raises(ValueError):
            SplittingInstance(I, I, I, I)


class TestBettiSplitting:
    def test_coprime(self):
        s = variable_split(I_("ring x1 x2 x3 x4\nx1*x2\nx3*x4"), "x1")
        chk = is_betti_splitting(s)
        assert chk.ok and chk.witness is None
        rep = check_splitting_consequences(s, tables=chk.tables)
        assert rep.ok
        assert rep.reg == (3, 3) and rep.pd == (1, 1)

    def test_witness_on_failure(self):
        # path ab, bc, cd split as J = (ab, cd), K = (bc): the Koszul syzygy of J
        # in degree 4 has no counterpart in I
        I = I_("ring a b c d\na*b\nb*c\nc*d")
        s = split(I, [I.generators[0], I.generators[2]])
        chk = is_betti_splitting(s)
        assert not chk.ok
        i, j, lhs, rhs = chk.witness
        assert lhs != rhs

    @given(linear_j_splits())
    def test_linear_j_criterion(self, I):
        try:
            s = variable_split(I, 0)
        except DegenerateSplitError:
            assume(False)
        assume(has_linear_resolution(betti_table(s.J)))
        chk = is_betti_splitting(s)
        assert chk.ok, chk.witness
        assert check_splitting_consequences(s, tables=chk.tables).ok

    @given(small_ideals(max_gens=5), st.data())
    def test_entrywise_identity_implies_max_formulas(self, I, data):
        k = data.draw(st.sampled_from(sorted(I.support())))
        try:
            s = variable_split(I, k)
        except DegenerateSplitError:
            return
        chk = is_betti_splitting(s)
        if chk.ok:
            assert check_splitting_consequences(s, tables=chk.tables).ok


class TestLeafLemmas:
    def test_short_path(self):
        D = oriented_line([1, 3, 2])
        I = edge_ideal(D)
        rep = check_leaf_lemmas(D, "x3", 2)
        assert rep.ok and all(rep.results.values())
        ctx = I.context
        assert colon_by_monomial(power(I, 2), parse_monomial("x2*x3^2", ctx)) == I
        lhs = power(I, 2) + principal(parse_monomial("x3^2", ctx))
        assert lhs == I_("ring x1 x2 x3\nx1^2*x2^6\nx3^2")
        third = colon_by_monomial(power(I, 2), parse_monomial("x3^2", ctx)) + principal(ctx.variable("x2"))
        assert third == principal(ctx.variable("x2"))

    def test_t1_skips_colon_identities(self):
        rep = check_leaf_lemmas(oriented_line([1, 2, 2]), "x3", 1)
        assert rep.results["colon_by_edge"] is None and rep.ok

    def test_not_a_leaf(self):
        with pytest.raises(GraphError):
            check_leaf_lemmas(oriented_line([1, 2, 2]), "x2", 2)

    @given(st.integers(1, 5), st.integers(2, 4), st.integers(0, 10**6), st.integers(1, 3))
    def test_every_leaf_of_every_forest(self, e, w, seed, t):
        D = generate_forest(e, w, seed)
        for z in D.leaves():
            rep = check_leaf_lemmas(D, z, t)
            assert rep.ok, rep.to_dict()

    def test_holds_without_weight_hypothesis(self):
        D = oriented_line([1, 1, 1, 5])
        for t in (2, 3):
            assert check_leaf_lemmas(D, "x4", t).ok


class TestRegSeqIntersection:
    def test_disjoint(self):
        ctx = I_("ring a b c d\na").context
        us = [parse_monomial(t, ctx) for t in ("a^2", "b*c", "d^3")]
        for t in (2, 3):
            assert regseq_intersection_holds(us, t)

    def test_bad_args(self):
        ctx = I_("ring a\na").context
        with pytest.raises(ValueError):
            regseq_intersection_holds([ctx.variable("a")], 2)
