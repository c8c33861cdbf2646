
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esopq.esop import (
    Cube,
    CubeBudgetError,
    Esop,
    cube_and,
    edge_cube,
    esop_eval,
    format_cubes,
    minimize,
    negate_edge_cube,
    or_chain_to_esop,
    pairwise_disjoint,
    violation_sop,
)
from esopq.graphs import Graph, is_independent, p4_fixture, parse_graph6

P4_CUBES = (
    Cube.parse("~x0 x1 x3"),
    Cube.parse("x0 ~x2 x3"),
    Cube.parse("x0 x2"),
)


class TestCube:
    def test_conflicting_polarities_rejected(self):
        with pytest.raises(ValueError):
            Cube(pos=0b1, neg=0b1)

    def test_parse_str_roundtrip(self):
        for text in ("1", "x0", "~x3", "x0 ~x2 x3", "~x0 x1 x3"):
            assert str(Cube.parse(text)) == text

    def test_literals_sorted_by_variable(self):
        c = Cube.from_literals([(5, True), (0, False), (2, False)])
        assert c.literals() == [(0, False), (2, False), (5, True)]

    def test_empty_cube_is_constant_true(self):
        assert Cube().satisfied_by(0)
        assert Cube().satisfied_by(0b1011)

    def test_satisfied_by(self):
        c = Cube.parse("x0 ~x2")
        assert c.satisfied_by(0b001)
        assert not c.satisfied_by(0b101)
        assert not c.satisfied_by(0b100)


class TestCubeAnd:
    def test_contradiction(self):
        assert cube_and(Cube.parse("x0"), Cube.parse("~x0")) is None

    def test_idempotent_merge(self):
        assert cube_and(Cube.parse("x0"), Cube.parse("x0 x1")) == Cube.parse("x0 x1")

    def test_disjoint_merge(self):
        got = cube_and(Cube.parse("~x0 x1"), Cube.parse("x3"))
        assert got == Cube.parse("~x0 x1 x3")


class TestNegateEdgeCube:
    def test_two_cube_expansion(self):
        assert negate_edge_cube(edge_cube(0, 1)).cubes == (
            Cube.parse("~x0 x1"),
            Cube.parse("~x1"),
        )

    @pytest.mark.parametrize("bits,expected", [(0b11, False), (0b00, True),
                                               (0b01, True), (0b10, True)])
    def test_complements_the_edge(self, bits, expected):
        e = negate_edge_cube(edge_cube(0, 1))
        assert esop_eval(e, bits) is expected

    def test_rejects_non_edge_cubes(self):
        with pytest.raises(ValueError):
            negate_edge_cube(Cube.parse("x0"))
        with pytest.raises(ValueError):
            negate_edge_cube(Cube.parse("x0 ~x1"))
        with pytest.raises(ValueError):
            negate_edge_cube(Cube.parse("x0 x1 x2"))


class TestViolationSop:
    def test_k2(self):
        assert violation_sop(parse_graph6("A_")) == [edge_cube(0, 1)]

    def test_p4_order(self):
        assert violation_sop(p4_fixture()) == [
            edge_cube(1, 3), edge_cube(0, 3), edge_cube(0, 2),
        ]

    def test_edgeless(self):
        assert violation_sop(Graph(3, ())) == []


class TestOrChain:
    def test_p4_golden_cubes(self):
        got = or_chain_to_esop(violation_sop(p4_fixture()))
        assert got.cubes == P4_CUBES

    def test_single_edge(self):
        got = or_chain_to_esop([edge_cube(0, 1)])
        assert got.cubes == (edge_cube(0, 1),)

    def test_empty_chain(self):
        assert or_chain_to_esop([]).cubes == ()

    def test_output_is_pairwise_disjoint(self, corpus):
        for g in corpus[5]:
            assert pairwise_disjoint(or_chain_to_esop(violation_sop(g)))

    def test_matches_or_semantics_on_corpus(self, corpus):
        for g in corpus[6][:30]:
            e = or_chain_to_esop(violation_sop(g))
            for bits in range(1 << g.n):
                assert esop_eval(e, bits) == (not is_independent(g, bits))

    def test_budget_exceeded(self):
        # three pairwise vertex-disjoint edges double the cube count twice
        cubes = [edge_cube(0, 1), edge_cube(2, 3), edge_cube(4, 5)]
        with pytest.raises(CubeBudgetError):
            or_chain_to_esop(cubes, cube_budget=3)
        assert len(or_chain_to_esop(cubes).cubes) > 3

    def test_rejects_non_edge_inputs(self):
        with pytest.raises(ValueError):
            or_chain_to_esop([Cube.parse("x0 ~x1")])

    @given(st.lists(
        st.tuples(st.integers(0, 5), st.integers(0, 5)).filter(lambda t: t[0] != t[1]),
        min_size=1, max_size=8, unique_by=lambda t: tuple(sorted(t)),
    ))
    @settings(max_examples=60, deadline=None)
    def test_equivalent_to_or_on_random_edge_lists(self, pairs):
        edges = [tuple(sorted(p)) for p in pairs]
        cubes = [edge_cube(i, j) for i, j in edges]
        e = or_chain_to_esop(cubes)
        assert pairwise_disjoint(e)
        for bits in range(1 << 6):
            want = any((bits >> i) & (bits >> j) & 1 for i, j in edges)
            assert esop_eval(e, bits) == want

    def test_at_most_one_cube_satisfied(self, corpus):
        for g in corpus[5]:
            e = or_chain_to_esop(violation_sop(g))
            for bits in range(1 << g.n):
                assert sum(c.satisfied_by(bits) for c in e.cubes) <= 1


class TestEsopEval:
    def test_p4_feasible_assignment(self):
        e = Esop(P4_CUBES)
        assert esop_eval(e, 0b0011) is False

    def test_p4_violating_assignment(self):
        e = Esop(P4_CUBES)
        assert esop_eval(e, 0b0101) is True

    def test_empty_esop_is_false(self):
        for bits in range(8):
            assert esop_eval(Esop(()), bits) is False


class TestMinimize:
    def test_identical_pair_cancels(self):
        c = Cube.parse("x0 x1")
        assert minimize(Esop((c, c))).cubes == ()

    def test_middle_survivor(self):
        c, d = Cube.parse("x0"), Cube.parse("x1")
        assert minimize(Esop((c, d, c))).cubes == (d,)

    def test_idempotent(self):
        e = Esop((Cube.parse("x0"), Cube.parse("x1"), Cube.parse("x0")))
        once = minimize(e)
        assert minimize(once) == once

    @given(st.lists(st.sampled_from(["x0", "x1", "~x0 x2", "x1 ~x2"]), max_size=8))
    @settings(max_examples=60, deadline=None)
    def test_semantics_preserved(self, names):
        e = Esop(tuple(Cube.parse(t) for t in names))
        m = minimize(e)
        for bits in range(8):
            assert esop_eval(e, bits) == esop_eval(m, bits)


class TestPairwiseDisjoint:
    def test_p4_is_disjoint(self):
        assert pairwise_disjoint(Esop(P4_CUBES))

    def test_overlap_free_cubes_are_not_disjoint(self):
        assert not pairwise_disjoint(Esop((Cube.parse("x0"), Cube.parse("x1"))))

    def test_empty_is_vacuously_disjoint(self):
        assert pairwise_disjoint(Esop(()))


class TestFormatCubes:
    def test_p4_golden_dump(self):
        text = format_cubes(or_chain_to_esop(violation_sop(p4_fixture())))
        assert text == "x0 x2\nx0 ~x2 x3\n~x0 x1 x3"

    def test_sorted_lexicographically_by_literals(self):
        e = Esop((Cube.parse("~x0 x1"), Cube.parse("x0"), Cube.parse("x0 x2")))
        assert format_cubes(e).splitlines() == ["x0", "x0 x2", "~x0 x1"]
