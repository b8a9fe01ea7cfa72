import random

import pytest

from katsura.errors import StructuralError
from katsura.matrices import (
    Cycle,
    MatrixPair,
    enumerate_simple_cycles,
    every_path_extends_to_cycle,
    graph_of,
    is_irreducible,
    is_transitory,
    satisfies_condition_e,
    satisfies_condition_k,
    satisfies_condition_l,
    simple_vertex_cycles,
    validate,
)

from conftest import random_pair

E1 = MatrixPair.from_rows([[2, 1], [1, 2]], [[1, 1], [1, 1]])


def pair_of(a, b):
    return MatrixPair.from_rows(a, b)


class TestValidate:
    def test_ok(self):
        assert validate(E1).ok

    def test_zero_row(self):
        rep = validate(pair_of([[0, 0], [1, 1]], [[0, 0], [0, 0]]))
        assert not rep.ok
        assert "row 1 of A is zero" in rep.violations

    def test_b_off_support(self):
        rep = validate(pair_of([[2, 0], [1, 2]], [[1, 5], [1, 1]]))
        assert not rep.ok
        assert any("B[1][2]" in v for v in rep.violations)

    def test_idempotent_and_pure(self):
        rep1 = validate(E1)
        rep2 = validate(E1)
        assert rep1 == rep2

    def test_structural_errors(self):
        with pytest.raises(StructuralError):
            MatrixPair.from_rows([[1, 2]], [[1, 2]])
        with pytest.raises(StructuralError):
            MatrixPair.from_rows([[1]], [[1], [2]])
        with pytest.raises(StructuralError):
            MatrixPair.from_rows([[-1]], [[0]])
        with pytest.raises(StructuralError):
            MatrixPair.from_rows([[True]], [[0]])


class TestConditionE:
    def test_all_supported_nonzero(self):
        assert satisfies_condition_e(E1)

    def test_zero_on_support(self):
        assert not satisfies_condition_e(pair_of([[2, 1], [1, 2]], [[1, 0], [1, 1]]))

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_zero_b_on_loop(self, n):
        assert not satisfies_condition_e(pair_of([[n]], [[0]]))


def brute_irreducible(pair):
    """Boolean reachability closure: sum_{k=1..N} support^k positive everywhere."""
    n = pair.n
    adj = [[pair.a_at(i + 1, j + 1) >= 1 for j in range(n)] for i in range(n)]
    reach = [row[:] for row in adj]
    power = [row[:] for row in adj]
    for _ in range(n - 1):
        power = [
            [any(power[i][k] and adj[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        reach = [[reach[i][j] or power[i][j] for j in range(n)] for i in range(n)]
    return all(all(row) for row in reach)


class TestIrreducible:
    def test_complete_support(self):
        assert is_irreducible(E1)

    def test_upper_triangular(self):
        assert not is_irreducible(pair_of([[2, 1], [0, 2]], [[1, 1], [0, 1]]))

    def test_single_loop(self):
        assert is_irreducible(pair_of([[3]], [[1]]))

    def test_against_reachability_closure(self):
        rng = random.Random(11)
        for _ in range(200):
            pair = random_pair(rng, n_max=6, a_max=2)
            assert is_irreducible(pair) == brute_irreducible(pair)


def oracle_condition_l(pair):
    """A cycle is exit-free iff each of its vertices emits exactly one edge,
    so scan every simple vertex cycle for that degenerate shape."""
    for verts in simple_vertex_cycles(pair):
        if all(sum(pair.a[v - 1]) == 1 for v in verts):
            return False
    return True


class TestConditionL:
    def test_two_cycle_without_exit(self):
        assert not satisfies_condition_l(pair_of([[0, 1], [1, 0]], [[0, 1], [1, 0]]))

    def test_double_loop(self):
        assert satisfies_condition_l(pair_of([[2]], [[1]]))

    def test_e1(self):
        assert satisfies_condition_l(E1)

    def test_against_cycle_scan(self):
        rng = random.Random(12)
        for _ in range(300):
            pair = random_pair(rng, n_max=5, a_max=3)
            assert satisfies_condition_l(pair) == oracle_condition_l(pair)


def oracle_count_returns(pair, v, bound):
    """Walks v -> v avoiding v internally, counted with edge multiplicity by
    exact powers of the v-deleted adjacency matrix."""
    others = [u for u in pair.vertices if u != v]
    idx = {u: k for k, u in enumerate(others)}
    m = [[pair.a_at(p, q) for q in others] for p in others]
    out_row = [pair.a_at(v, q) for q in others]
    in_col = [pair.a_at(p, v) for p in others]
    total = pair.a_at(v, v)  # length-1 returns
    vec = out_row
    for _ in range(bound - 1):
        total += sum(x * y for x, y in zip(vec, in_col))
        vec = [
            sum(vec[k] * m[k][q] for k in range(len(others)))
            for q in range(len(others))
        ]
        if total >= 5:
            break
    return total


class TestConditionK:
    def test_double_loop(self):
        assert satisfies_condition_k(pair_of([[2]], [[1]]))

    def test_unique_two_cycle(self):
        assert not satisfies_condition_k(pair_of([[0, 1], [1, 0]], [[0, 1], [1, 0]]))

    def test_single_loop(self):
        assert not satisfies_condition_k(pair_of([[1]], [[1]]))

    def test_against_walk_counting(self):
        # the shortest second return walk has length <= 2N, so the bounded
        # count decides "exactly one" exactly
        rng = random.Random(13)
        for _ in range(200):
            pair = random_pair(rng, n_max=4, a_max=2)
            expected = all(
                oracle_count_returns(pair, v, 2 * pair.n) != 1 for v in pair.vertices
            )
            assert satisfies_condition_k(pair) == expected

    def test_irreducible_and_l_implies_k(self):
        rng = random.Random(14)
        for _ in range(400):
            pair = random_pair(rng, n_max=4, a_max=3)
            if is_irreducible(pair) and satisfies_condition_l(pair):
                assert satisfies_condition_k(pair)


def oracle_cycles(pair, max_len):
    """Brute force: all closed edge walks with pairwise distinct vertices,
    deduplicated by least rotation."""
    found = set()

    def walk(edges, visited):
        start, current = edges[0][0], edges[-1][1]
        if current == start:
            rotations = [tuple(edges[k:] + edges[:k]) for k in range(len(edges))]
            found.add(min(rotations))
            return
        if len(edges) == max_len:
            return
        for w in pair.out_vertices(current):
            if w == start or w not in visited:
                for n in range(1, pair.a_at(current, w) + 1):
                    walk(edges + [(current, w, n)], visited | {w})

    for start in pair.vertices:
        for j in pair.out_vertices(start):
            for n in range(1, pair.a_at(start, j) + 1):
                walk([(start, j, n)], {start, j})
    return found


class TestSimpleCycles:
    def test_double_loop(self):
        assert enumerate_simple_cycles(pair_of([[2]], [[1]]), 1) == [
            ((1, 1, 1),),
            ((1, 1, 2),),
        ]

    def test_two_cycle(self):
        cycles = enumerate_simple_cycles(pair_of([[0, 1], [1, 0]], [[0, 1], [1, 0]]), 2)
        assert cycles == [((1, 2, 1), (2, 1, 1))]

    def test_e1_length_one(self):
        assert enumerate_simple_cycles(E1, 1) == [
            ((1, 1, 1),),
            ((1, 1, 2),),
            ((2, 2, 1),),
            ((2, 2, 2),),
        ]

    def test_against_brute_force(self):
        rng = random.Random(15)
        for _ in range(60):
            pair = random_pair(rng, n_max=4, a_max=2)
            for cap in (1, 2, pair.n):
                assert set(enumerate_simple_cycles(pair, cap)) == oracle_cycles(pair, cap)

    def test_bad_cap(self):
        with pytest.raises(StructuralError):
            enumerate_simple_cycles(E1, 0)


class TestTransitory:
    def test_self_loop_with_parallel_exit(self):
        assert not is_transitory(pair_of([[2]], [[1]]), Cycle(((1, 1, 1),)))

    def test_exit_cannot_return(self):
        pair = pair_of([[1, 1], [0, 1]], [[1, 1], [0, 1]])
        assert is_transitory(pair, Cycle(((1, 1, 1),)))

    def test_cycle_without_exits(self):
        pair = pair_of([[0, 1], [1, 0]], [[0, 1], [1, 0]])
        assert is_transitory(pair, Cycle(((1, 2, 1), (2, 1, 1))))

    def test_edge_not_in_graph(self):
        with pytest.raises(StructuralError):
            is_transitory(E1, Cycle(((1, 1, 3),)))

    def test_malformed_cycle(self):
        with pytest.raises(StructuralError):
            Cycle(((1, 2, 1),))  # not closed
        with pytest.raises(StructuralError):
            Cycle(((1, 1, 1), (2, 2, 1)))  # endpoints do not chain


class TestGraph:
    def test_edge_count_is_entry_sum(self):
        rng = random.Random(16)
        for _ in range(50):
            pair = random_pair(rng, n_max=4, a_max=3)
            graph = graph_of(pair)
            assert len(graph.edges) == sum(x for row in pair.a for x in row)
            assert all(1 <= n <= pair.a_at(i, j) for i, j, n in graph.edges)

    def test_offsets_enumerate_multiplicity(self):
        graph = graph_of(E1)
        assert graph.edges == ((1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 2, 1), (2, 2, 2))


class TestPathExtension:
    def test_irreducible_implies(self):
        assert every_path_extends_to_cycle(E1)

    def test_one_way_arc(self):
        assert not every_path_extends_to_cycle(pair_of([[2, 1], [0, 2]], [[1, 1], [0, 1]]))

    def test_single_loop(self):
        assert every_path_extends_to_cycle(pair_of([[1]], [[1]]))
