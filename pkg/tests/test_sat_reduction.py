import random
from itertools import product

import pytest

from knapreduce.csp import SatInstance, is_consistent, par_bruteforce
from knapreduce.embedding import simple_connected_embedding, validate_embedding
from knapreduce.generators import gen_sat_satisfiable
from knapreduce.graphs import Graph, graph_from_edges
from knapreduce.reductions import (
    build_clause_conflict_graph,
    rcsp_assignment_from_sat,
    sat_to_rcsp,
    sat_to_rcsp_disperser_route,
    sat_to_rcsp_embedding_route,
)


def sat(n, clauses, bound=8):
    return SatInstance(n, tuple(tuple(c) for c in clauses), bound)


class TestConflictGraph:
    def test_disjoint_clauses(self):
        phi = sat(6, [(1, 2, 3), (4, 5, 6)])
        assert build_clause_conflict_graph(phi).edges == frozenset()

    def test_shared_variable(self):
        phi = sat(5, [(1, 2, 3), (-1, 4, 5)])
        assert build_clause_conflict_graph(phi).edges == frozenset({(0, 1)})

    def test_pairwise_sharing_triangle(self):
        phi = sat(5, [(1, 2, 3), (1, 4, 5), (2, 4, 3)])
        g = build_clause_conflict_graph(phi)
        assert g.edges == frozenset({(0, 1), (0, 2), (1, 2)})


class TestCoreReduction:
    def test_single_vertex_all_clauses(self):
        phi = sat(4, [(1, 2, 3), (-2, 3, 4)])
        pi = sat_to_rcsp(phi, Graph(1), [frozenset({0, 1})])
        size, _ = par_bruteforce(pi)
        assert size == 1

    def test_satisfiable_formula_fills_any_host(self):
        rng = random.Random(31)
        for i in range(15):
            phi, hidden = gen_sat_satisfiable(
                rng.randint(4, 8), rng.randint(1, 4), 4, rng
            )
            host = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
            clause_sets = [
                frozenset(
                    c for c in range(phi.clause_count) if rng.random() < 0.7
                )
                for _ in range(3)
            ]
            pi = sat_to_rcsp(phi, host, clause_sets)
            # projecting the hidden assignment yields a total consistent witness
            witness = rcsp_assignment_from_sat(phi, host, clause_sets, hidden)
            assert is_consistent(pi, witness)
            assert witness.size() == host.vertex_count
            size, _ = par_bruteforce(pi, enum_cap=10**12, max_nodes=500_000)
            assert size == host.vertex_count

    def test_unsatisfiable_pattern_instance_cross_checked(self):
        # all 8 sign patterns on 3 variables: no assignment satisfies them all
        phi = sat(3, [
            (s1 * 1, s2 * 2, s3 * 3) for s1, s2, s3 in product((1, -1), repeat=3)
        ])
        host = graph_from_edges(2, [(0, 1)])
        clause_sets = [frozenset(range(4)), frozenset(range(3, 8))]
        pi = sat_to_rcsp(phi, host, clause_sets)
        size, witness = par_bruteforce(pi)
        assert is_consistent(pi, witness)
        # independent oracle: a pair is consistent iff the projections agree;
        # otherwise any single vertex can still be assigned alone
        pu, pv = pi.projections[(0, 1)]
        agreeing = any(
            pu[a] == pv[b] for a in range(pi.sigma_size) for b in range(pi.sigma_size)
        )
        assert size == (2 if agreeing else 1)

    def test_empty_clause_set_gives_free_vertex(self):
        phi = sat(3, [(1, 2, 3)])
        pi = sat_to_rcsp(phi, Graph(2), [frozenset({0}), frozenset()])
        size, _ = par_bruteforce(pi)
        assert size == 2

    def test_unsatisfiable_clause_set_warns(self):
        phi = sat(3, [
            (s1 * 1, s2 * 2, s3 * 3) for s1, s2, s3 in product((1, -1), repeat=3)
        ])
        with pytest.warns(UserWarning, match="unsatisfiable"):
            pi = sat_to_rcsp(phi, Graph(1), [frozenset(range(8))])
        size, _ = par_bruteforce(pi)
        # the lone vertex can still take a (sentinel-projected) symbol
        assert size == 1

    def test_alphabet_cap(self):
        phi = sat(9, [(1, 2, 3), (4, 5, 6), (7, 8, 9)])
        with pytest.raises(ValueError):
            sat_to_rcsp(phi, Graph(1), [frozenset({0, 1, 2})], alphabet_cap=16)

    def test_sentinels_never_agree_across_vertices(self):
        phi = sat(3, [(1, 2, 3)])
        host = graph_from_edges(2, [(0, 1)])
        pi = sat_to_rcsp(phi, host, [frozenset({0}), frozenset({0})])
        pu, pv = pi.projections[(0, 1)]
        spare = range(len(pu))
        # padded symbols (if any) map to distinct per-vertex sentinels
        for s in spare:
            if pu[s] >= pi.upsilon_size - host.vertex_count:
                assert pu[s] != pv[s]


class TestRoutes:
    def test_embedding_route_completeness(self):
        rng = random.Random(77)
        for i in range(10):
            phi, _ = gen_sat_satisfiable(rng.randint(4, 9), rng.randint(2, 5), 4, rng)
            pi = sat_to_rcsp_embedding_route(phi, 7)
            assert pi.graph.vertex_count <= 7
            size, _ = par_bruteforce(pi, enum_cap=10**13, max_nodes=2_000_000)
            assert size == pi.graph.vertex_count

    def test_embedding_route_pieces_validate(self):
        rng = random.Random(78)
        phi, _ = gen_sat_satisfiable(6, 4, 4, rng)
        conflict = build_clause_conflict_graph(phi)
        host, emb = simple_connected_embedding(conflict, 7)
        ok, depth = validate_embedding(emb)
        assert ok and depth >= 1

    def test_disperser_route_completeness(self):
        rng = random.Random(79)
        for i in range(8):
            phi, _ = gen_sat_satisfiable(rng.randint(4, 8), rng.randint(2, 4), 4, rng)
            k = rng.randint(4, 6)
            pi = sat_to_rcsp_disperser_route(phi, k, 2, "1/4", seed=500 + i)
            assert pi.graph.vertex_count == k
            size, _ = par_bruteforce(pi, enum_cap=10**13, max_nodes=2_000_000)
            assert size == k

    def test_disperser_route_observed_shortfall_on_unsatisfiable(self):
        # heavily contradictory formula: max-partial falls below the host size
        phi = sat(3, [
            (s1 * 1, s2 * 2, s3 * 3) for s1, s2, s3 in product((1, -1), repeat=3)
        ])
        with pytest.warns(UserWarning):
            pi = sat_to_rcsp_disperser_route(phi, 4, 2, "1/4", seed=9)
        size, _ = par_bruteforce(pi, enum_cap=10**12, max_nodes=500_000)
        assert size < pi.graph.vertex_count

    def test_zero_clause_formula_through_both_routes(self):
        phi = sat(3, [])
        for pi in (
            sat_to_rcsp_embedding_route(phi, 7),
            sat_to_rcsp_disperser_route(phi, 4, 2, "1/4", seed=1),
        ):
            size, _ = par_bruteforce(pi)
            assert size == pi.graph.vertex_count

    def test_routes_are_deterministic(self):
        rng = random.Random(80)
        phi, _ = gen_sat_satisfiable(6, 3, 4, rng)
        a = sat_to_rcsp_disperser_route(phi, 5, 2, "1/4", seed=3)
        b = sat_to_rcsp_disperser_route(phi, 5, 2, "1/4", seed=3)
        assert a.projections == b.projections
