import random
from itertools import product

import pytest

from knapreduce.csp import (
    PartialAssignment,
    RcspInstance,
    is_consistent,
    par_bruteforce,
)
from knapreduce.generators import gen_rcsp, gen_rcsp_planted
from knapreduce.graphs import graph_from_edges
from knapreduce.knapsack import (
    Solution,
    check_feasible,
    max_budget,
    profit,
    solve_bruteforce,
)
from knapreduce.reductions import (
    ReductionCertificate,
    constraint_weight,
    embed_artifacts,
    extract_partial_assignment,
    item_index,
    item_of,
    rcsp_to_vk_embed,
    rcsp_to_vk_simple,
    verify_base_q_digits,
    vk_solution_from_assignment,
)


def swap_instance():
    g = graph_from_edges(2, [(0, 1)])
    return RcspInstance(g, 2, 2, {(0, 1): ((0, 1), (1, 0))})


def planted_k4(seed, sigma=2, upsilon=2):
    rng = random.Random(seed)
    return gen_rcsp_planted(4, sigma, upsilon, rng, regular3=True)


class TestSimpleTarget:
    def test_dimension_is_vertices_plus_two_per_edge(self):
        target = rcsp_to_vk_simple(swap_instance())
        assert target.dimension == 2 + 2 * 1
        assert target.item_count == 2 * 2
        assert set(target.profits) == {1}

    def test_max_budget_is_the_range_size(self):
        pi = swap_instance()
        assert max_budget(rcsp_to_vk_simple(pi)) == pi.upsilon_size

    def test_swap_instance_optimum_matches_par(self):
        pi = swap_instance()
        value, _ = solve_bruteforce(rcsp_to_vk_simple(pi))
        assert value == par_bruteforce(pi)[0] == 2

    def test_roundtrip_on_seeded_instances(self):
        for i in range(60):
            rng = random.Random(5200 + i)
            n = rng.randint(2, 5)
            pi = gen_rcsp(
                n,
                rng.randint(1, 3),
                rng.randint(1, 3),
                rng,
                edge_count=rng.randint(1, min(n * (n - 1) // 2, n + 1)),
            )
            par, witness = par_bruteforce(pi)
            target = rcsp_to_vk_simple(pi)
            opt, solution = solve_bruteforce(target)
            assert par == opt
            extracted = extract_partial_assignment(pi, "simple", solution)
            assert is_consistent(pi, extracted)
            assert extracted.size() == opt

    def test_forward_solution_from_total_assignment(self):
        pi = swap_instance()
        sol = vk_solution_from_assignment(pi, PartialAssignment((0, 1)))
        target = rcsp_to_vk_simple(pi)
        assert check_feasible(target, sol)
        assert profit(target, sol) == 2

    def test_forward_rejects_partial_or_inconsistent(self):
        pi = swap_instance()
        with pytest.raises(ValueError):
            vk_solution_from_assignment(pi, PartialAssignment((0, None)))
        with pytest.raises(ValueError):
            vk_solution_from_assignment(pi, PartialAssignment((0, 0)))

    def test_extract_rejects_infeasible(self):
        pi = swap_instance()
        both_copies = Solution(frozenset({0, 1}))
        with pytest.raises(ValueError):
            extract_partial_assignment(pi, "simple", both_copies)


class TestEmbedArtifacts:
    def test_k4_single_chunk(self):
        pi, _ = planted_k4(1)
        art = embed_artifacts(pi, 10)
        assert art.chunk_count == 1
        assert art.chunk_totals == (16,)
        assert all(c == 4 for c in art.coverage[0])

    def test_coverage_row_sums(self):
        pi, _ = planted_k4(2)
        for chunk_size in (1, 2, 3, 4, 10):
            art = embed_artifacts(pi, chunk_size)
            # chunk totals add up to one per vertex plus two per edge
            assert sum(art.chunk_totals) == 4 + 2 * 6
            assert all(total <= 2 * chunk_size for total in art.chunk_totals)

    def test_base_constant_example(self):
        # chunk size 1, range 2, four vertices, two symbols
        pi, _ = planted_k4(3, sigma=2, upsilon=2)
        art = embed_artifacts(pi, 1)
        assert art.base_q == 3 * 1 * 2 * 4 * 2 == 48
        assert art.sentinel == 48 ** 2 == 2304

    def test_chunk_size_range(self):
        pi, _ = planted_k4(4)
        with pytest.raises(ValueError):
            embed_artifacts(pi, 0)
        with pytest.raises(ValueError):
            embed_artifacts(pi, 11)

    def test_requires_cubic_graph(self):
        with pytest.raises(ValueError):
            rcsp_to_vk_embed(swap_instance(), 1)


class TestEmbedTarget:
    def test_dimension_formula(self):
        pi, _ = planted_k4(5)
        for chunk_size, expected in ((1, 20), (2, 10), (3, 8), (4, 6), (10, 2)):
            target, _ = rcsp_to_vk_embed(pi, chunk_size)
            assert target.dimension == expected

    def test_profits_are_degree_plus_one(self):
        pi, _ = planted_k4(6)
        target, _ = rcsp_to_vk_embed(pi, 2)
        assert set(target.profits) == {4}

    def test_completeness_full_profit_and_tight_weights(self):
        for seed in range(8):
            pi, planted = planted_k4(700 + seed)
            solution = vk_solution_from_assignment(pi, planted)
            pairs = [item_of(pi, i) for i in solution.chosen]
            for chunk_size in (1, 2, 4):
                target, art = rcsp_to_vk_embed(pi, chunk_size)
                assert check_feasible(target, solution)
                assert profit(target, solution) == 16
                # every constraint weight lands exactly on the range size
                for chunk in art.partition:
                    for j in chunk:
                        total = sum(constraint_weight(pi, j, v, s) for v, s in pairs)
                        assert total == pi.upsilon_size

    def test_cost_identities_on_random_subsets(self):
        pi, _ = planted_k4(8)
        for chunk_size in (1, 3):
            target, art = rcsp_to_vk_embed(pi, chunk_size)
            q, big = art.base_q, art.sentinel
            rng = random.Random(chunk_size)
            for _ in range(200):
                chosen = [i for i in range(target.item_count) if rng.getrandbits(1)]
                pairs = [item_of(pi, i) for i in chosen]
                for l, chunk in enumerate(art.partition):
                    stacked = sum(
                        constraint_weight(pi, j, v, s) * q ** (pos + 1)
                        for pos, j in enumerate(chunk)
                        for v, s in pairs
                    )
                    covered = sum(art.coverage[l][v] for v, _ in pairs)
                    assert sum(target.costs[i][2 * l] for i in chosen) == stacked
                    assert (
                        sum(target.costs[i][2 * l + 1] for i in chosen)
                        == big * covered - stacked
                    )
                assert sum(target.profits[i] for i in chosen) == sum(
                    art.coverage[l][v]
                    for l in range(art.chunk_count)
                    for v, _ in pairs
                )

    def test_soundness_exhaustive_on_tiny_instances(self):
        # chunk size 10 puts every constraint in one chunk, the regime where
        # feasible solutions may hold several copies of one vertex
        for seed in (0, 1):
            pi, _ = planted_k4(900 + seed, sigma=2, upsilon=2)
            for chunk_size in (1, 2, 10):
                target, art = rcsp_to_vk_embed(pi, chunk_size)
                full = 16
                multi_copy_seen = False
                for mask in range(1 << target.item_count):
                    solution = Solution(
                        frozenset(i for i in range(target.item_count) if (mask >> i) & 1)
                    )
                    if not check_feasible(target, solution):
                        continue
                    vertices = [item_of(pi, i)[0] for i in solution.chosen]
                    multi_copy_seen |= len(vertices) != len(set(vertices))
                    deficit = full - profit(target, solution)
                    phi = extract_partial_assignment(
                        pi, chunk_size, solution, precomputed=(target, art)
                    )
                    assert is_consistent(pi, phi)
                    assert phi.size() >= 4 - 2 * deficit * chunk_size
                if chunk_size == 10:
                    assert multi_copy_seen  # the regime is actually exercised

    def test_roundtrip_full_assignment_iff_full_profit(self):
        for seed in range(6):
            pi, planted = planted_k4(1000 + seed, sigma=2, upsilon=3)
            par, _ = par_bruteforce(pi)
            assert par == 4  # planted instances admit a total assignment
            target, _ = rcsp_to_vk_embed(pi, 2)
            opt, solution = solve_bruteforce(target)
            assert opt == 16
            recovered = extract_partial_assignment(pi, 2, solution)
            assert recovered.size() == 4

    def test_roundtrip_equivalence_on_unplanted_instances(self):
        # without planting: full optimum profit iff a total assignment exists
        for seed in range(12):
            rng = random.Random(6100 + seed)
            pi = gen_rcsp(4, 2, rng.randint(1, 3), rng, regular3=True)
            par, _ = par_bruteforce(pi)
            target, _ = rcsp_to_vk_embed(pi, rng.choice((1, 2)))
            opt, _ = solve_bruteforce(target)
            assert (par == 4) == (opt == 16), (seed, par, opt)

    def test_roundtrip_equivalence_on_six_vertex_host(self):
        for seed in range(8):
            rng = random.Random(6400 + seed)
            pi = gen_rcsp(6, 1, rng.randint(1, 2), rng, regular3=True)
            par, _ = par_bruteforce(pi)
            target, art = rcsp_to_vk_embed(pi, rng.choice((1, 3)))
            opt, solution = solve_bruteforce(target)
            full = 6 + 2 * len(pi.graph.edges)
            assert (par == 6) == (opt == full), (seed, par, opt)
            deficit = full - opt
            recovered = extract_partial_assignment(
                pi, art.chunk_size, solution, precomputed=(target, art)
            )
            assert is_consistent(pi, recovered)
            assert recovered.size() >= 6 - 2 * deficit * art.chunk_size

    def test_max_budget_bound(self):
        pi, _ = planted_k4(13)
        for chunk_size in (1, 2, 4, 10):
            target, art = rcsp_to_vk_embed(pi, chunk_size)
            # the largest number in the packed target is a chunk's count budget
            assert max_budget(target) <= 2 * chunk_size * art.sentinel

    def test_extraction_roundtrip_from_planted_solution(self):
        pi, planted = planted_k4(42)
        solution = vk_solution_from_assignment(pi, planted)
        for chunk_size in (1, 2, 4):
            recovered = extract_partial_assignment(pi, chunk_size, solution)
            assert recovered == planted
        simple_recovered = extract_partial_assignment(pi, "simple", solution)
        assert simple_recovered == planted

    def test_extract_rejects_infeasible(self):
        pi, _ = planted_k4(11)
        target, _ = rcsp_to_vk_embed(pi, 1)
        everything = Solution(frozenset(range(target.item_count)))
        assert not check_feasible(target, everything)
        with pytest.raises(ValueError):
            extract_partial_assignment(pi, 1, everything)


class TestDigitSums:
    def test_all_equal_digits(self):
        assert verify_base_q_digits([3, 3, 3], 5, 3)

    def test_perturbed_digits_detected(self):
        assert not verify_base_q_digits([4, 2], 5, 3)

    def test_out_of_range_digit(self):
        with pytest.raises(ValueError):
            verify_base_q_digits([5], 5, 3)
        with pytest.raises(ValueError):
            verify_base_q_digits([0], 5, 5)

    def test_equivalence_exhaustive_small_bases(self):
        for base in range(2, 8):
            for width in range(1, 5):
                for target in range(base):
                    for digits in product(range(base), repeat=width):
                        expected = all(a == target for a in digits)
                        assert verify_base_q_digits(list(digits), base, target) == expected


class TestCertificate:
    def test_holds_and_fails(self):
        cert = ReductionCertificate(
            reduction="demo",
            direction="forward",
            source_instance=None,
            target_instance=None,
            source_solution=None,
            target_solution=None,
            source_value=3,
            target_value=3,
            relation="eq",
            source_valid=True,
            target_valid=True,
        )
        assert cert.holds()
        bad = ReductionCertificate(
            reduction="demo",
            direction="forward",
            source_instance=None,
            target_instance=None,
            source_solution=None,
            target_solution=None,
            source_value=3,
            target_value=4,
            relation="eq",
            source_valid=True,
            target_valid=True,
        )
        assert not bad.holds()
        invalid_side = ReductionCertificate(
            reduction="demo",
            direction="backward",
            source_instance=None,
            target_instance=None,
            source_solution=None,
            target_solution=None,
            source_value=5,
            target_value=4,
            relation="ge",
            source_valid=False,
            target_valid=True,
        )
        assert not invalid_side.holds()


def test_item_indexing_roundtrip():
    pi, _ = planted_k4(12, sigma=3)
    for v in range(4):
        for s in range(3):
            assert item_of(pi, item_index(pi, v, s)) == (v, s)
