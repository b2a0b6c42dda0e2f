"""Property-verification suites behind the CLI's verify command.

Each suite draws seeded random instances, runs one family of checks
against the exact oracles, and returns a report with one record per
check.  Suites never sample expected values from the code under test:
every expectation comes from an independent brute-force computation or
an algebraic identity evaluated from first principles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .csp import csp_opt_bruteforce, csp_value, is_consistent, par_bruteforce
from .discretize import digamma, gamma_for_dimension, varpi_down, varpi_up
from .generators import gen_csp2, gen_rcsp, gen_rcsp_planted
from .knapsack import Solution, check_feasible, profit, solve_bruteforce
from .reductions import (
    ReductionCertificate,
    constraint_weight,
    csp2_assignment_from_rcsp,
    csp2_to_rcsp,
    extract_partial_assignment,
    item_index,
    item_of,
    rcsp_to_vk_embed,
    rcsp_to_vk_simple,
    vk_solution_from_assignment,
    verify_base_q_digits,
)
from .serialize import instance_digest

SUITES = (
    "simple-roundtrip",
    "embed-roundtrip",
    "csp-chain",
    "discretize",
    "obs-basic",
    "vkw",
)


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    check: str
    instance: str
    expected: str
    observed: str
    passed: bool


@dataclass
class VerificationReport:
    suite: str
    records: list[CheckRecord]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def counts(self) -> tuple[int, int]:
        ok = sum(1 for r in self.records if r.passed)
        return ok, len(self.records)


def _rec(suite, check, digest, expected, observed, passed) -> CheckRecord:
    return CheckRecord(suite, check, digest, expected, str(observed), bool(passed))


def _derive(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


# ---------------------------------------------------------------------------
# plain reduction roundtrip
# ---------------------------------------------------------------------------

def check_simple_roundtrip(pi) -> list[CheckRecord]:
    digest = instance_digest(pi)
    par, witness = par_bruteforce(pi)
    target = rcsp_to_vk_simple(pi)
    opt, opt_solution = solve_bruteforce(target)
    records = [
        _rec(
            "simple-roundtrip",
            "values-equal",
            digest,
            "max partial assignment == knapsack optimum",
            f"{par} vs {opt}",
            par == opt,
        )
    ]
    forward = Solution(
        frozenset(
            item_index(pi, v, s) for v, s in enumerate(witness.values) if s is not None
        )
    )
    cert = ReductionCertificate(
        reduction="rcsp->vk-simple",
        direction="forward",
        source_instance=pi,
        target_instance=target,
        source_solution=witness,
        target_solution=forward,
        source_value=par,
        target_value=profit(target, forward),
        relation="eq",
        source_valid=is_consistent(pi, witness),
        target_valid=check_feasible(target, forward),
    )
    records.append(
        _rec(
            "simple-roundtrip",
            "forward-witness",
            digest,
            "witness items feasible with equal profit",
            f"profit {cert.target_value}",
            cert.holds(),
        )
    )
    extracted = extract_partial_assignment(pi, "simple", opt_solution)
    records.append(
        _rec(
            "simple-roundtrip",
            "backward-extraction",
            digest,
            "extracted assignment consistent with size == optimum",
            f"size {extracted.size()}",
            is_consistent(pi, extracted) and extracted.size() == opt,
        )
    )
    return records


def run_simple_roundtrip(count: int, seed: int) -> VerificationReport:
    records = []
    for i in range(count):
        rng = _derive(seed, i)
        n = rng.randint(2, 5)
        max_edges = n * (n - 1) // 2
        pi = gen_rcsp(
            n,
            sigma_size=rng.randint(1, 3),
            upsilon_size=rng.randint(1, 3),
            rng=rng,
            edge_count=rng.randint(1, min(max_edges, n + 1)),
        )
        records.extend(check_simple_roundtrip(pi))
    return VerificationReport("simple-roundtrip", records)


# ---------------------------------------------------------------------------
# packed reduction roundtrip
# ---------------------------------------------------------------------------

def check_embed_completeness(pi, planted, chunk_size, target=None) -> list[CheckRecord]:
    """target may be passed explicitly (e.g. a deliberately corrupted copy)
    so negative controls can confirm the harness flags violations."""
    digest = instance_digest(pi)
    if target is None:
        target, _ = rcsp_to_vk_embed(pi, chunk_size)
    full = pi.graph.vertex_count + 2 * len(pi.graph.edges)
    solution = vk_solution_from_assignment(pi, planted)
    feasible = check_feasible(target, solution)
    observed = (
        f"profit {profit(target, solution)}"
        if feasible
        else "planted solution violates a budget"
    )
    ok = feasible and profit(target, solution) == full
    return [
        _rec(
            "embed-roundtrip",
            f"completeness-F{chunk_size}",
            digest,
            f"planted assignment feasible with profit {full}",
            observed,
            ok,
        )
    ]


def check_embed_soundness_exhaustive(pi, chunk_size) -> list[CheckRecord]:
    """Every feasible subset extracts to a consistent assignment within the
    deficit bound.  Exhaustive, so keep the instance tiny."""
    digest = instance_digest(pi)
    target, art = rcsp_to_vk_embed(pi, chunk_size)
    n_items = target.item_count
    full = pi.graph.vertex_count + 2 * len(pi.graph.edges)
    checked = 0
    failures = []
    for mask in range(1 << n_items):
        solution = Solution(frozenset(i for i in range(n_items) if (mask >> i) & 1))
        if not check_feasible(target, solution):
            continue
        checked += 1
        deficit = full - profit(target, solution)
        phi = extract_partial_assignment(
            pi, chunk_size, solution, precomputed=(target, art)
        )
        bound = pi.graph.vertex_count - 2 * deficit * chunk_size
        if not is_consistent(pi, phi):
            failures.append(f"inconsistent extraction at mask {mask}")
        elif phi.size() < bound:
            failures.append(f"size {phi.size()} below bound {bound} at mask {mask}")
    observed = failures[0] if failures else f"{checked} feasible subsets"
    return [
        _rec(
            "embed-roundtrip",
            f"soundness-exhaustive-F{chunk_size}",
            digest,
            "every feasible subset extracts consistently within the size bound",
            observed,
            not failures,
        )
    ]


def run_embed_roundtrip(count: int, seed: int) -> VerificationReport:
    records = []
    for i in range(count):
        rng = _derive(seed, i)
        n = rng.choice((4, 6))
        pi, planted = gen_rcsp_planted(
            n,
            sigma_size=rng.randint(1, 2),
            upsilon_size=rng.randint(1, 3),
            rng=rng,
            regular3=True,
        )
        for chunk_size in (1, 2, n):
            records.extend(check_embed_completeness(pi, planted, chunk_size))
        if n == 4:
            records.extend(check_embed_soundness_exhaustive(pi, rng.choice((1, 2))))
    return VerificationReport("embed-roundtrip", records)


# ---------------------------------------------------------------------------
# binary CSP chain
# ---------------------------------------------------------------------------

def check_csp_chain(gamma) -> list[CheckRecord]:
    digest = instance_digest(gamma)
    edge_total = len(gamma.graph.edges)
    csp_opt = csp_opt_bruteforce(gamma)
    pi = csp2_to_rcsp(gamma)
    par, witness = par_bruteforce(pi)
    records = [
        _rec(
            "csp-chain",
            "full-satisfaction-iff-full-assignment",
            digest,
            f"CSP optimum == {edge_total} iff partial-assignment optimum == {edge_total}",
            f"csp={csp_opt} par={par}",
            (csp_opt == edge_total) == (par == edge_total),
        )
    ]
    deficit = edge_total - par
    extracted = csp2_assignment_from_rcsp(gamma, witness)
    satisfied = csp_value(gamma, extracted)
    records.append(
        _rec(
            "csp-chain",
            "extraction-satisfies-enough-edges",
            digest,
            f"extracted assignment satisfies >= {edge_total} - 6*{deficit}",
            f"satisfied {satisfied}",
            satisfied >= edge_total - 6 * deficit,
        )
    )
    return records


def run_csp_chain(count: int, seed: int) -> VerificationReport:
    records = []
    for i in range(count):
        rng = _derive(seed, i)
        sigma = 2 if i % 4 else 3
        gamma = gen_csp2(
            4, sigma, rng, regular3=True, planted=bool(rng.getrandbits(1))
        )
        records.extend(check_csp_chain(gamma))
    return VerificationReport("csp-chain", records)


# ---------------------------------------------------------------------------
# discretization bounds
# ---------------------------------------------------------------------------

def check_discretization_bounds(dimension: int, budget_max: int) -> list[CheckRecord]:
    gamma = gamma_for_dimension(dimension)
    sandwich_failures = 0
    min_bound_failures = 0
    checked = 0
    for b in range(budget_max + 1):
        budget = (b,)
        for x in range(b + 1):
            checked += 1
            down, up = varpi_down(x, gamma), varpi_up(x, gamma)
            if not (down <= x <= up):
                sandwich_failures += 1
            if x >= 1 and not up < gamma * x:
                sandwich_failures += 1
            value = digamma((x,), budget, gamma).values[0]
            if value > gamma * x:
                min_bound_failures += 1
            if value > b - Fraction(b - x, 1) / gamma:
                min_bound_failures += 1
    return [
        _rec(
            "discretize",
            f"sandwich-d{dimension}",
            f"exhaustive-B{budget_max}",
            "down <= x <= up < gamma*x on every point",
            f"{checked} points, {sandwich_failures} violations",
            sandwich_failures == 0,
        ),
        _rec(
            "discretize",
            f"min-bounds-d{dimension}",
            f"exhaustive-B{budget_max}",
            "value <= gamma*x and value <= B - (B-x)/gamma on every point",
            f"{checked} points, {min_bound_failures} violations",
            min_bound_failures == 0,
        ),
    ]


def run_discretize(budget_max: int, dimensions=(1, 2, 3, 4, 5)) -> VerificationReport:
    records = []
    for dimension in dimensions:
        records.extend(check_discretization_bounds(dimension, budget_max))
    return VerificationReport("discretize", records)


# ---------------------------------------------------------------------------
# packed-cost algebraic identities
# ---------------------------------------------------------------------------

def check_digit_identities(pi, chunk_size, rng, subsets: int) -> list[CheckRecord]:
    digest = instance_digest(pi)
    target, art = rcsp_to_vk_embed(pi, chunk_size)
    q = art.base_q
    big = art.sentinel
    n_items = target.item_count
    failures = [0, 0, 0]
    for _ in range(subsets):
        chosen = [i for i in range(n_items) if rng.getrandbits(1)]
        pairs = [item_of(pi, i) for i in chosen]
        for l, chunk in enumerate(art.partition):
            weight_sum = sum(
                constraint_weight(pi, j, v, s) * q ** (pos + 1)
                for pos, j in enumerate(chunk)
                for (v, s) in pairs
            )
            coverage = sum(art.coverage[l][v] for (v, _) in pairs)
            first = sum(target.costs[i][2 * l] for i in chosen)
            second = sum(target.costs[i][2 * l + 1] for i in chosen)
            if first != weight_sum:
                failures[0] += 1
            if second != big * coverage - weight_sum:
                failures[1] += 1
        total_coverage = sum(
            art.coverage[l][v] for l in range(art.chunk_count) for (v, _) in pairs
        )
        if sum(target.profits[i] for i in chosen) != total_coverage:
            failures[2] += 1
    names = (
        "packed-first-dimension",
        "packed-second-dimension",
        "profit-equals-coverage",
    )
    return [
        _rec(
            "obs-basic",
            f"{name}-F{chunk_size}",
            digest,
            "identity holds exactly on every sampled subset",
            f"{subsets} subsets, {bad} violations",
            bad == 0,
        )
        for name, bad in zip(names, failures)
    ]


def run_obs_basic(instances: int, seed: int, subsets: int = 1000) -> VerificationReport:
    records = []
    for i in range(instances):
        rng = _derive(seed, i)
        n = rng.choice((4, 6))
        pi, _ = gen_rcsp_planted(
            n,
            sigma_size=rng.randint(1, 2),
            upsilon_size=rng.randint(1, 3),
            rng=rng,
            regular3=True,
        )
        chunk_size = rng.choice((1, 2, 3))
        records.extend(check_digit_identities(pi, chunk_size, rng, subsets))
    return VerificationReport("obs-basic", records)


# ---------------------------------------------------------------------------
# saturation checks: coverage cap and forced digit targets
# ---------------------------------------------------------------------------

def check_saturation(pi, chunk_size) -> list[CheckRecord]:
    """Exhaustive over feasible subsets: per-chunk coverage never exceeds the
    chunk total, and meeting it forces every constraint weight to the
    range size (checked both directly and through the digit-sum utility)."""
    digest = instance_digest(pi)
    target, art = rcsp_to_vk_embed(pi, chunk_size)
    m = pi.upsilon_size
    n_items = target.item_count
    cap_failures = 0
    forced_failures = 0
    feasible_count = 0
    saturated_count = 0
    for mask in range(1 << n_items):
        solution = Solution(frozenset(i for i in range(n_items) if (mask >> i) & 1))
        if not check_feasible(target, solution):
            continue
        feasible_count += 1
        pairs = [item_of(pi, i) for i in solution.chosen]
        for l, chunk in enumerate(art.partition):
            coverage = sum(art.coverage[l][v] for (v, _) in pairs)
            if coverage > art.chunk_totals[l]:
                cap_failures += 1
            if coverage == art.chunk_totals[l]:
                saturated_count += 1
                weights = [
                    sum(constraint_weight(pi, j, v, s) for (v, s) in pairs)
                    for j in chunk
                ]
                if not all(w == m for w in weights):
                    forced_failures += 1
                if not verify_base_q_digits(weights, art.base_q, m):
                    forced_failures += 1
    return [
        _rec(
            "vkw",
            f"coverage-cap-F{chunk_size}",
            digest,
            "selected coverage never exceeds the chunk total",
            f"{feasible_count} feasible subsets, {cap_failures} violations",
            cap_failures == 0,
        ),
        _rec(
            "vkw",
            f"saturation-forces-digit-targets-F{chunk_size}",
            digest,
            "saturated chunks have every constraint weight at the range size",
            f"{saturated_count} saturated chunks, {forced_failures} violations",
            forced_failures == 0,
        ),
    ]


def run_vkw(count: int, seed: int) -> VerificationReport:
    records = []
    for i in range(count):
        rng = _derive(seed, i)
        pi, _ = gen_rcsp_planted(
            4,
            sigma_size=rng.randint(1, 2),
            upsilon_size=rng.randint(1, 3),
            rng=rng,
            regular3=True,
        )
        records.extend(check_saturation(pi, rng.choice((1, 2))))
    return VerificationReport("vkw", records)


# ---------------------------------------------------------------------------
# dispatch and rendering
# ---------------------------------------------------------------------------

def run_suite(suite: str, count: int, seed: int) -> VerificationReport:
    if suite == "simple-roundtrip":
        return run_simple_roundtrip(count, seed)
    if suite == "embed-roundtrip":
        return run_embed_roundtrip(count, seed)
    if suite == "csp-chain":
        return run_csp_chain(count, seed)
    if suite == "discretize":
        return run_discretize(budget_max=min(200, max(1, count)))
    if suite == "obs-basic":
        return run_obs_basic(count, seed)
    if suite == "vkw":
        return run_vkw(count, seed)
    raise ValueError(f"unknown suite {suite!r}")


def report_text(report: VerificationReport) -> str:
    lines = []
    for r in report.records:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"[{status}] {r.suite}/{r.check} instance={r.instance} "
            f"expected: {r.expected}; observed: {r.observed}"
        )
    ok, total = report.counts()
    lines.append(f"{report.suite}: {ok}/{total} checks passed")
    return "\n".join(lines) + "\n"


def report_csv(report: VerificationReport) -> str:
    lines = ["suite,check,instance,passed,expected,observed"]
    for r in report.records:

        def q(text: str) -> str:
            return '"' + text.replace('"', '""') + '"'

        lines.append(
            ",".join(
                [r.suite, r.check, r.instance, str(int(r.passed)), q(r.expected), q(r.observed)]
            )
        )
    return "\n".join(lines) + "\n"


def report_json_payload(report: VerificationReport) -> dict:
    return {
        "suite": report.suite,
        "passed": report.passed,
        "records": [
            {
                "suite": r.suite,
                "check": r.check,
                "instance": r.instance,
                "expected": r.expected,
                "observed": r.observed,
                "passed": r.passed,
            }
            for r in report.records
        ],
    }
