"""Constructive reductions between the constraint forms and vector knapsack.

Every reduction here carries both directions: a forward construction that
turns a source solution into a target solution, and a backward extraction
that recovers a source solution from a target one.  The verification
harness exercises both against the brute-force oracles.

Item indexing for both knapsack reductions: the item for (vertex v,
symbol s) is v * sigma_size + s, so solutions transfer between the plain
and the dimension-packed target unchanged.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .csp import (
    Csp2Instance,
    GcspInstance,
    PartialAssignment,
    RcspInstance,
    SatInstance,
    clause_variables,
    is_consistent,
)
from .disperser import build_disperser
from .embedding import simple_connected_embedding
from .graphs import Edge, Graph, complete_graph, graph_from_edges, line_graph
from .knapsack import Solution, VkInstance, check_feasible

DEFAULT_ALPHABET_CAP = 1 << 16

# A packed-dimension constraint is either a vertex index or an oriented edge.
Constraint = Union[int, Edge]


# ---------------------------------------------------------------------------
# 3-SAT -> rectangular CSP
# ---------------------------------------------------------------------------

def build_clause_conflict_graph(phi: SatInstance) -> Graph:
    """Graph on clause indices, joined whenever two clauses share a variable."""
    pairs = []
    variables = [clause_variables(c) for c in phi.clauses]
    for i in range(len(variables)):
        for j in range(i + 1, len(variables)):
            if variables[i] & variables[j]:
                pairs.append((i, j))
    return graph_from_edges(phi.clause_count, pairs)


def _pack_bits(assignment: dict[int, int], variables: tuple[int, ...]) -> int:
    """Pack an assignment on the given (ascending) variables, first variable
    in the most significant bit, so ascending codes enumerate assignment
    vectors in lexicographic order."""
    code = 0
    for v in variables:
        code = (code << 1) | assignment[v]
    return code


def _unpack_bits(code: int, variables: tuple[int, ...]) -> dict[int, int]:
    t = len(variables)
    return {v: (code >> (t - 1 - i)) & 1 for i, v in enumerate(variables)}


def _satisfying_codes(
    phi: SatInstance, clause_indices, alphabet_cap: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(ascending variables, codes of assignments satisfying all the clauses)."""
    used: set[int] = set()
    for c in clause_indices:
        used |= clause_variables(phi.clauses[c])
    variables = tuple(sorted(used))
    t = len(variables)
    if 1 << t > alphabet_cap:
        raise ValueError(
            f"2^{t} candidate assignments exceed the alphabet cap {alphabet_cap}"
        )
    good = []
    for code in range(1 << t):
        assignment = _unpack_bits(code, variables)
        ok = True
        for c in clause_indices:
            if not any(
                assignment[abs(lit)] == (1 if lit > 0 else 0)
                for lit in phi.clauses[c]
            ):
                ok = False
                break
        if ok:
            good.append(code)
    return variables, tuple(good)


def sat_to_rcsp(
    phi: SatInstance,
    host: Graph,
    clause_sets,
    alphabet_cap: int = DEFAULT_ALPHABET_CAP,
) -> RcspInstance:
    """Rectangular CSP whose vertices carry the satisfying assignments of
    their clause set and whose edges force agreement on shared variables.

    One global alphabet of size max_x |Phi_x| indexes each vertex's
    satisfying assignments in lexicographic order; indices beyond a
    vertex's own count project to a per-vertex sentinel, which can never
    agree with the opposite endpoint.  The shared range packs restrictions
    to the edge's common variables below all sentinels.
    """
    if len(clause_sets) != host.vertex_count:
        raise ValueError("one clause set per host vertex required")
    per_vertex = []
    for x in range(host.vertex_count):
        chosen = tuple(sorted(set(clause_sets[x])))
        for c in chosen:
            if not 0 <= c < phi.clause_count:
                raise ValueError(f"clause index {c} out of range")
        variables, codes = _satisfying_codes(phi, chosen, alphabet_cap)
        if not codes:
            warnings.warn(
                f"host vertex {x} hosts an unsatisfiable clause set; it has no "
                f"symbol participating in any consistent assignment",
                stacklevel=2,
            )
        per_vertex.append((variables, codes))

    sigma_size = max(1, max(len(codes) for _, codes in per_vertex) if per_vertex else 1)
    shared: dict[Edge, tuple[int, ...]] = {}
    for (x, y) in host.edge_list:
        vx, _ = per_vertex[x]
        vy, _ = per_vertex[y]
        shared[(x, y)] = tuple(sorted(set(vx) & set(vy)))
    packed_range = 1 << max((len(s) for s in shared.values()), default=0)

    projections = {}
    for (x, y), common in shared.items():
        side = []
        for vertex in (x, y):
            variables, codes = per_vertex[vertex]
            sentinel = packed_range + vertex
            proj = []
            for s in range(sigma_size):
                if s < len(codes):
                    assignment = _unpack_bits(codes[s], variables)
                    proj.append(_pack_bits({v: assignment[v] for v in common}, common))
                else:
                    proj.append(sentinel)
            side.append(tuple(proj))
        projections[(x, y)] = (side[0], side[1])

    return RcspInstance(
        graph=host,
        sigma_size=sigma_size,
        upsilon_size=packed_range + host.vertex_count,
        projections=projections,
    )


def rcsp_assignment_from_sat(
    phi: SatInstance, host: Graph, clause_sets, assignment,
    alphabet_cap: int = DEFAULT_ALPHABET_CAP,
) -> PartialAssignment:
    """Project a satisfying assignment of the formula onto every host vertex.

    Valid (and total) whenever the assignment satisfies all clauses of
    every clause set, in particular whenever it satisfies the formula.
    """
    values = []
    for x in range(host.vertex_count):
        chosen = tuple(sorted(set(clause_sets[x])))
        variables, codes = _satisfying_codes(phi, chosen, alphabet_cap)
        code = _pack_bits({v: int(bool(assignment[v - 1])) for v in variables}, variables)
        if code not in codes:
            raise ValueError(f"assignment does not satisfy the clause set of vertex {x}")
        values.append(codes.index(code))
    return PartialAssignment(tuple(values))


def sat_to_rcsp_embedding_route(
    phi: SatInstance, k: int, alphabet_cap: int = DEFAULT_ALPHABET_CAP
) -> RcspInstance:
    """Clause-conflict graph, embedded into a small cubic host; each host
    vertex receives the clauses whose image covers it."""
    conflict = build_clause_conflict_graph(phi)
    host, emb = simple_connected_embedding(conflict, k)
    clause_sets = [
        frozenset(c for c in range(phi.clause_count) if x in emb.images[c])
        for x in range(host.vertex_count)
    ]
    return sat_to_rcsp(phi, host, clause_sets, alphabet_cap)


def sat_to_rcsp_disperser_route(
    phi: SatInstance,
    k: int,
    cover_count: int,
    epsilon,
    seed: int,
    alphabet_cap: int = DEFAULT_ALPHABET_CAP,
) -> RcspInstance:
    """Complete host graph on k vertices; clause sets drawn from a verified
    covering family over the clause universe."""
    m = phi.clause_count
    eps = Fraction(epsilon)
    if m == 0:
        clause_sets = [frozenset() for _ in range(k)]
    else:
        if eps == 0 or cover_count == 0:
            set_size = m
        else:
            set_size = min(m, math.ceil(Fraction(3 * m) / (eps * cover_count)))
        family = build_disperser(m, k, set_size, cover_count, eps, seed)
        clause_sets = list(family.sets)
    return sat_to_rcsp(phi, complete_graph(k), clause_sets, alphabet_cap)


# ---------------------------------------------------------------------------
# binary CSP -> per-vertex rectangular CSP -> rectangular CSP
# ---------------------------------------------------------------------------

def _pair_code(a: int, b: int, sigma_size: int) -> int:
    return a * sigma_size + b


def _pair_decode(code: int, sigma_size: int) -> tuple[int, int]:
    return divmod(code, sigma_size)


def csp2_to_gcsp(gamma: Csp2Instance) -> GcspInstance:
    """Line-graph construction: each edge of the constraint graph becomes a
    vertex whose alphabet is that edge's allowed pairs; adjacent edges must
    agree on their shared endpoint's symbol."""
    if not gamma.graph.is_regular(3):
        raise ValueError("constraint graph must be 3-regular")
    base_edges = gamma.graph.edge_list
    lgraph = line_graph(gamma.graph)
    sigma = gamma.sigma_size
    alphabets = tuple(
        frozenset(_pair_code(a, b, sigma) for (a, b) in gamma.constraints[e])
        for e in base_edges
    )
    projections = {}
    for (x, y) in lgraph.edge_list:
        ex, ey = base_edges[x], base_edges[y]
        common = set(ex) & set(ey)
        shared_vertex = next(iter(common))
        i = ex.index(shared_vertex)
        j = ey.index(shared_vertex)
        proj_x = {code: _pair_decode(code, sigma)[i] for code in alphabets[x]}
        proj_y = {code: _pair_decode(code, sigma)[j] for code in alphabets[y]}
        projections[(x, y)] = (proj_x, proj_y)
    return GcspInstance(
        graph=lgraph,
        alphabets=alphabets,
        upsilon_size=sigma,
        projections=projections,
    )


def gcsp_assignment_from_csp2(gamma: Csp2Instance, assignment) -> PartialAssignment:
    """Total edge labeling induced by a total assignment satisfying every edge."""
    sigma = gamma.sigma_size
    values = []
    for (u, v) in gamma.graph.edge_list:
        pair = (assignment[u], assignment[v])
        if pair not in gamma.constraints[(u, v)]:
            raise ValueError(f"assignment violates edge ({u}, {v})")
        values.append(_pair_code(*pair, sigma))
    return PartialAssignment(tuple(values))


def csp2_assignment_from_gcsp(gamma: Csp2Instance, phi: PartialAssignment) -> tuple[int, ...]:
    """Read a vertex assignment back off a consistent edge labeling.

    Each vertex copies its symbol from the smallest adjacent labeled edge;
    vertices with no labeled edge default to symbol 0.
    """
    sigma = gamma.sigma_size
    base_edges = gamma.graph.edge_list
    out = []
    for v in range(gamma.graph.vertex_count):
        symbol = 0
        for x, e in enumerate(base_edges):
            if v in e and phi.values[x] is not None:
                symbol = _pair_decode(phi.values[x], sigma)[e.index(v)]
                break
        out.append(symbol)
    return tuple(out)


def _gcsp_symbol_order(delta: GcspInstance) -> tuple[int, ...]:
    return tuple(sorted(frozenset().union(*delta.alphabets)))


def gcsp_to_rcsp(delta: GcspInstance) -> RcspInstance:
    """Collapse per-vertex alphabets into one: out-of-alphabet symbols
    project to a per-vertex sentinel stacked above the shared range."""
    if delta.graph.max_degree() > 4:
        raise ValueError("constraint graph must have maximum degree 4")
    order = _gcsp_symbol_order(delta)
    upsilon_size = delta.upsilon_size + delta.graph.vertex_count
    projections = {}
    for (u, v), (pu, pv) in delta.projections.items():
        proj_u = tuple(
            pu[s] if s in delta.alphabets[u] else delta.upsilon_size + u for s in order
        )
        proj_v = tuple(
            pv[s] if s in delta.alphabets[v] else delta.upsilon_size + v for s in order
        )
        projections[(u, v)] = (proj_u, proj_v)
    return RcspInstance(
        graph=delta.graph,
        sigma_size=len(order),
        upsilon_size=upsilon_size,
        projections=projections,
    )


def rcsp_assignment_from_gcsp(delta: GcspInstance, phi: PartialAssignment) -> PartialAssignment:
    """Reindex a per-vertex-alphabet assignment into the collapsed alphabet."""
    order = _gcsp_symbol_order(delta)
    index = {s: i for i, s in enumerate(order)}
    return PartialAssignment(
        tuple(None if s is None else index[s] for s in phi.values)
    )


def gcsp_assignment_from_rcsp(delta: GcspInstance, phi: PartialAssignment) -> PartialAssignment:
    """Map a collapsed-alphabet assignment back; symbols outside a vertex's
    own alphabet (possible only on vertices with no assigned neighbor) are
    replaced by that vertex's smallest symbol."""
    order = _gcsp_symbol_order(delta)
    values = []
    for x, s in enumerate(phi.values):
        if s is None:
            values.append(None)
            continue
        symbol = order[s]
        values.append(symbol if symbol in delta.alphabets[x] else min(delta.alphabets[x]))
    return PartialAssignment(tuple(values))


def csp2_to_rcsp(gamma: Csp2Instance) -> RcspInstance:
    """Composition through the per-vertex form."""
    return gcsp_to_rcsp(csp2_to_gcsp(gamma))


def rcsp_assignment_from_csp2(gamma: Csp2Instance, assignment) -> PartialAssignment:
    return rcsp_assignment_from_gcsp(
        csp2_to_gcsp(gamma), gcsp_assignment_from_csp2(gamma, assignment)
    )


def csp2_assignment_from_rcsp(gamma: Csp2Instance, phi: PartialAssignment) -> tuple[int, ...]:
    delta = csp2_to_gcsp(gamma)
    return csp2_assignment_from_gcsp(gamma, gcsp_assignment_from_rcsp(delta, phi))


# ---------------------------------------------------------------------------
# rectangular CSP -> vector knapsack, one dimension per constraint endpoint
# ---------------------------------------------------------------------------

def item_index(pi: RcspInstance, v: int, s: int) -> int:
    return v * pi.sigma_size + s


def item_of(pi: RcspInstance, index: int) -> tuple[int, int]:
    return divmod(index, pi.sigma_size)


def rcsp_to_vk_simple(pi: RcspInstance) -> VkInstance:
    """Unit-profit knapsack with one dimension per vertex and two per edge.

    A vertex dimension admits at most one copy of its vertex; the two
    dimensions of an edge are budget-tight exactly when the chosen symbols
    project equally, so feasible solutions are consistent partial
    assignments and vice versa.
    """
    n = pi.graph.vertex_count
    edges = pi.graph.edge_list
    m = pi.upsilon_size
    sigma = pi.sigma_size
    d = n + 2 * len(edges)
    items = n * sigma
    costs = [[0] * d for _ in range(items)]
    for v in range(n):
        for s in range(sigma):
            costs[item_index(pi, v, s)][v] = m
    for t, (u, v) in enumerate(edges):
        dim_u = n + 2 * t
        dim_v = n + 2 * t + 1
        proj_u, proj_v = pi.projections[(u, v)]
        for s in range(sigma):
            costs[item_index(pi, u, s)][dim_u] = proj_u[s]
            costs[item_index(pi, u, s)][dim_v] = m - proj_u[s]
            costs[item_index(pi, v, s)][dim_u] = m - proj_v[s]
            costs[item_index(pi, v, s)][dim_v] = proj_v[s]
    return VkInstance(
        profits=(1,) * items,
        costs=tuple(tuple(c) for c in costs),
        budget=(m,) * d,
    )


# ---------------------------------------------------------------------------
# rectangular CSP -> vector knapsack, many constraints packed per dimension
# ---------------------------------------------------------------------------

def constraint_weight(pi: RcspInstance, constraint: Constraint, v: int, s: int) -> int:
    """Per-constraint weight of item (v, s): the full range size on the
    item's own vertex constraint, the projection value on an edge whose
    first endpoint is v, its complement on an edge whose second endpoint
    is v, and zero elsewhere."""
    m = pi.upsilon_size
    if isinstance(constraint, int):
        return m if constraint == v else 0
    a, b = constraint
    proj_a, proj_b = pi.projections[constraint]
    if v == a:
        return proj_a[s]
    if v == b:
        return m - proj_b[s]
    return 0


@dataclass(frozen=True)
class EmbedReductionArtifacts:
    """Everything the packed reduction derived from (instance, chunk size).

    partition lists the constraints chunk by chunk; a constraint's packing
    position within its chunk (1-based) is its digit exponent.  coverage[l][v]
    counts the constraints of chunk l involving vertex v; chunk_totals[l] is
    the sum of that row.  base_q is the digit base and sentinel the high
    multiplier separating the count digit from the packed digits.
    """

    chunk_size: int
    partition: tuple[tuple[Constraint, ...], ...]
    coverage: tuple[tuple[int, ...], ...]
    chunk_totals: tuple[int, ...]
    base_q: int
    sentinel: int

    @property
    def chunk_count(self) -> int:
        return len(self.partition)

    def digit_exponent(self, chunk: int, constraint: Constraint) -> int:
        return self.partition[chunk].index(constraint) + 1

    def chunk_of(self, constraint: Constraint) -> int:
        for l, chunk in enumerate(self.partition):
            if constraint in chunk:
                return l
        raise ValueError(f"unknown constraint {constraint}")


def embed_artifacts(pi: RcspInstance, chunk_size: int) -> EmbedReductionArtifacts:
    """Deterministic partition and derived counts for the packed reduction.

    Constraints are ordered vertices-first then edges lexicographically and
    chunked into consecutive blocks; the last block may be smaller.
    """
    n = pi.graph.vertex_count
    edges = pi.graph.edge_list
    if not 1 <= chunk_size <= n + len(edges):
        raise ValueError(
            f"chunk size {chunk_size} outside [1, {n + len(edges)}]"
        )
    ordered: list[Constraint] = list(range(n)) + list(edges)
    partition = tuple(
        tuple(ordered[i: i + chunk_size]) for i in range(0, len(ordered), chunk_size)
    )
    coverage = []
    for chunk in partition:
        row = [0] * n
        for constraint in chunk:
            if isinstance(constraint, int):
                row[constraint] += 1
            else:
                row[constraint[0]] += 1
                row[constraint[1]] += 1
        coverage.append(tuple(row))
    base_q = 3 * chunk_size ** 2 * pi.upsilon_size * n * pi.sigma_size
    return EmbedReductionArtifacts(
        chunk_size=chunk_size,
        partition=partition,
        coverage=tuple(coverage),
        chunk_totals=tuple(sum(row) for row in coverage),
        base_q=base_q,
        sentinel=base_q ** (2 * chunk_size),
    )


def rcsp_to_vk_embed(
    pi: RcspInstance, chunk_size: int
) -> tuple[VkInstance, EmbedReductionArtifacts]:
    """Pack many constraints into two dimensions each as base-Q digits.

    The first dimension of a chunk stacks the per-constraint weights into
    separate digits; the second holds the complement against a high
    multiple of the sentinel, which caps how many covered items a feasible
    solution may select and forces every digit to its target once that cap
    is met.  Requires a 3-regular constraint graph.
    """
    if not pi.graph.is_regular(3):
        raise ValueError("constraint graph must be 3-regular")
    art = embed_artifacts(pi, chunk_size)
    n = pi.graph.vertex_count
    sigma = pi.sigma_size
    m = pi.upsilon_size
    q, big = art.base_q, art.sentinel
    r = art.chunk_count
    d = 2 * r
    digit_powers = [
        [q ** (pos + 1) for pos in range(len(chunk))] for chunk in art.partition
    ]

    profits = []
    costs = []
    for v in range(n):
        vertex_profit = sum(art.coverage[l][v] for l in range(r))
        for s in range(sigma):
            row = [0] * d
            for l, chunk in enumerate(art.partition):
                if art.coverage[l][v] == 0:
                    continue
                packed = sum(
                    constraint_weight(pi, j, v, s) * digit_powers[l][pos]
                    for pos, j in enumerate(chunk)
                )
                row[2 * l] = packed
                row[2 * l + 1] = big * art.coverage[l][v] - packed
            profits.append(vertex_profit)
            costs.append(tuple(row))

    budget = []
    for l, chunk in enumerate(art.partition):
        packed_budget = sum(m * power for power in digit_powers[l])
        budget.append(packed_budget)
        budget.append(big * art.chunk_totals[l] - packed_budget)

    inst = VkInstance(
        profits=tuple(profits), costs=tuple(costs), budget=tuple(budget)
    )
    return inst, art


def vk_solution_from_assignment(pi: RcspInstance, phi: PartialAssignment) -> Solution:
    """Item set of a total consistent assignment; feasible in both the plain
    and the packed target, with profit |V| respectively |V| + 2|E|."""
    if len(phi.values) != pi.graph.vertex_count:
        raise ValueError("assignment must cover the vertex set")
    if any(s is None for s in phi.values):
        raise ValueError("assignment must be total")
    if not is_consistent(pi, phi):
        raise ValueError("assignment must be consistent")
    return Solution(
        frozenset(item_index(pi, v, s) for v, s in enumerate(phi.values))
    )


def extract_partial_assignment(
    pi: RcspInstance, variant, solution: Solution, precomputed=None
) -> PartialAssignment:
    """Consistent partial assignment recovered from a feasible solution.

    variant is the string "simple" for the one-dimension-per-endpoint
    target, or the integer chunk size of the packed target.  For the packed
    target only vertices all of whose constraints sit in budget-saturated
    chunks are assigned; the saturation argument guarantees the result is
    consistent and of size at least |V| - 2 * deficit * chunk_size.

    precomputed may hold the (target, artifacts) pair of the packed target
    to spare rebuilding it on repeated extractions.
    """
    if variant == "simple":
        target = rcsp_to_vk_simple(pi) if precomputed is None else precomputed
        if not check_feasible(target, solution):
            raise ValueError("solution is infeasible in the plain target")
        chosen_vertices: set[int] = set()
        values: list[Optional[int]] = [None] * pi.graph.vertex_count
        for index in sorted(solution.chosen):
            v, s = item_of(pi, index)
            if v in chosen_vertices:
                raise ValueError(f"feasible solution selects two copies of vertex {v}")
            chosen_vertices.add(v)
            values[v] = s
        return PartialAssignment(tuple(values))

    chunk_size = int(variant)
    target, art = (
        rcsp_to_vk_embed(pi, chunk_size) if precomputed is None else precomputed
    )
    if not check_feasible(target, solution):
        raise ValueError("solution is infeasible in the packed target")
    selected = [item_of(pi, index) for index in sorted(solution.chosen)]
    saturated = {
        l
        for l in range(art.chunk_count)
        if sum(art.coverage[l][v] for v, _ in selected) == art.chunk_totals[l]
    }
    chunk_of: dict[Constraint, int] = {}
    for l, chunk in enumerate(art.partition):
        for j in chunk:
            chunk_of[j] = l
    values = [None] * pi.graph.vertex_count
    for v in range(pi.graph.vertex_count):
        constraints: list[Constraint] = [v] + list(pi.graph.adjacent_edges(v))
        if all(chunk_of[j] in saturated for j in constraints):
            symbols = [s for (w, s) in selected if w == v]
            if len(symbols) != 1:
                raise ValueError(
                    f"saturation should force exactly one copy of vertex {v}, "
                    f"found {len(symbols)}"
                )
            values[v] = symbols[0]
    return PartialAssignment(tuple(values))


def verify_base_q_digits(digits, base_q: int, target_digit: int) -> bool:
    """True iff the stacked digit sum equals the all-target digit sum.

    Digit stacks with every digit below the base collide only when they
    are identical, so this equality holds exactly when every digit equals
    the target; the exhaustive tests assert that equivalence.
    """
    if base_q < 2:
        raise ValueError("base must be at least 2")
    if not 0 <= target_digit < base_q:
        raise ValueError(f"target digit {target_digit} outside [0, {base_q})")
    for a in digits:
        if not 0 <= a < base_q:
            raise ValueError(f"digit {a} outside [0, {base_q})")
    lhs = sum(a * base_q ** (i + 1) for i, a in enumerate(digits))
    rhs = sum(target_digit * base_q ** (i + 1) for i in range(len(digits)))
    return lhs == rhs


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ReductionCertificate:
    """Binds a source solution to a target solution through one reduction.

    relation compares source_value to target_value: "eq", or "ge"
    (source_value >= target_value).  holds() is what the verification
    harness asserts.
    """

    reduction: str
    direction: str
    source_instance: object
    target_instance: object
    source_solution: object
    target_solution: object
    source_value: int
    target_value: int
    relation: str
    source_valid: bool
    target_valid: bool

    def holds(self) -> bool:
        if not (self.source_valid and self.target_valid):
            return False
        if self.relation == "eq":
            return self.source_value == self.target_value
        if self.relation == "ge":
            return self.source_value >= self.target_value
        raise ValueError(f"unknown relation {self.relation!r}")
