"""Constraint-problem instance models and exact brute-force oracles.

Four instance forms live here: bounded-occurrence 3-SAT, plain binary CSP
over a constraint graph, the rectangular variant whose edges compare two
projections into a shared range, and its per-vertex-alphabet
generalization.  All oracles are exhaustive (with pruning) and refuse
instances above their configured caps instead of truncating the search.

Symbols and vertices are dense 0-based integers throughout; the rectangular
range {1..m} of the literature is stored 0-based here and shifted only at
the file-format boundary.  The unassigned marker for partial assignments is
None.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CapExceededError
from .graphs import Edge, Graph

DEFAULT_SAT_ENUM_CAP = 24
DEFAULT_ASSIGNMENT_ENUM_CAP = 10_000_000

Symbol = Optional[int]


@dataclass(frozen=True)
class SatInstance:
    """3-SAT with at most occurrence_bound appearances per variable.

    Literals are nonzero DIMACS-style integers: +v / -v for variable v in
    1..variable_count.  Every clause mentions three distinct variables.
    """

    variable_count: int
    clauses: tuple[tuple[int, int, int], ...]
    occurrence_bound: int

    def __post_init__(self):
        counts = [0] * (self.variable_count + 1)
        for clause in self.clauses:
            seen = set()
            for lit in clause:
                v = abs(lit)
                if lit == 0 or not 1 <= v <= self.variable_count:
                    raise ValueError(f"literal {lit} out of range")
                seen.add(v)
                counts[v] += 1
            if len(seen) != 3:
                raise ValueError(f"clause {clause} does not use 3 distinct variables")
        if any(c > self.occurrence_bound for c in counts):
            raise ValueError("a variable exceeds the occurrence bound")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


def clause_variables(clause: tuple[int, int, int]) -> frozenset[int]:
    return frozenset(abs(lit) for lit in clause)


def count_satisfied(phi: SatInstance, assignment) -> int:
    """Number of clauses with at least one true literal under assignment
    (a sequence of bools, index v-1 for variable v)."""
    if len(assignment) != phi.variable_count:
        raise ValueError(
            f"assignment length {len(assignment)} != variable count {phi.variable_count}"
        )
    sat = 0
    for clause in phi.clauses:
        for lit in clause:
            value = assignment[abs(lit) - 1]
            if (lit > 0) == bool(value):
                sat += 1
                break
    return sat


def sat_opt_bruteforce(phi: SatInstance, enum_cap: int = DEFAULT_SAT_ENUM_CAP) -> int:
    """Maximum number of simultaneously satisfiable clauses, by full enumeration."""
    n = phi.variable_count
    if n > enum_cap:
        raise CapExceededError(f"{n} variables exceeds enumeration cap {enum_cap}")
    best = 0
    m = phi.clause_count
    for mask in range(1 << n):
        assignment = [(mask >> v) & 1 for v in range(n)]
        best = max(best, count_satisfied(phi, assignment))
        if best == m:
            break
    return best


@dataclass(frozen=True)
class Csp2Instance:
    """Binary CSP: each edge carries a nonempty set of allowed symbol pairs."""

    graph: Graph
    sigma_size: int
    constraints: dict[Edge, frozenset[tuple[int, int]]]

    def __post_init__(self):
        if set(self.constraints) != set(self.graph.edges):
            raise ValueError("constraints must be keyed exactly by the edge set")
        for e, allowed in self.constraints.items():
            if not allowed:
                raise ValueError(f"empty constraint on edge {e}")
            for a, b in allowed:
                if not (0 <= a < self.sigma_size and 0 <= b < self.sigma_size):
                    raise ValueError(f"constraint pair ({a}, {b}) outside alphabet")

    def __hash__(self):
        return hash((self.graph, self.sigma_size, tuple(sorted(self.constraints.items()))))


def csp_value(gamma: Csp2Instance, assignment) -> int:
    """Number of edges whose endpoint pair is allowed under a total assignment."""
    if len(assignment) != gamma.graph.vertex_count:
        raise ValueError("assignment must cover every vertex")
    for a in assignment:
        if not 0 <= a < gamma.sigma_size:
            raise ValueError(f"symbol {a} outside alphabet")
    return sum(
        1
        for (u, v) in gamma.graph.edge_list
        if (assignment[u], assignment[v]) in gamma.constraints[(u, v)]
    )


def csp_opt_bruteforce(
    gamma: Csp2Instance, enum_cap: int = DEFAULT_ASSIGNMENT_ENUM_CAP
) -> int:
    """Maximum number of satisfiable edges over all total assignments."""
    n = gamma.graph.vertex_count
    if gamma.sigma_size ** n > enum_cap:
        raise CapExceededError(
            f"{gamma.sigma_size}^{n} assignments exceeds enumeration cap {enum_cap}"
        )
    edges = gamma.graph.edge_list
    total = len(edges)
    # Edges whose later endpoint is v, for incremental scoring during DFS.
    closing: list[list[Edge]] = [[] for _ in range(n)]
    for e in edges:
        closing[e[1]].append(e)
    remaining_after = [sum(len(closing[w]) for w in range(v + 1, n)) for v in range(n)]
    best = 0
    assignment: list[int] = [0] * n

    def descend(v: int, score: int):
        nonlocal best
        if v == n:
            best = max(best, score)
            return
        if score + len(closing[v]) + remaining_after[v] <= best:
            return
        for s in range(gamma.sigma_size):
            assignment[v] = s
            gained = sum(
                1
                for (u, w) in closing[v]
                if (assignment[u], s) in gamma.constraints[(u, w)]
            )
            descend(v + 1, score + gained)
            if best == total:
                return

    descend(0, 0)
    return best


@dataclass(frozen=True)
class RcspInstance:
    """Rectangular CSP: edge (u, v) is satisfied by (a, b) iff the two
    endpoint projections agree, proj_u[a] == proj_v[b].

    projections maps each edge to a pair (proj_u, proj_v) of tuples of
    length sigma_size with values in 0..upsilon_size-1; entry order follows
    the stored edge orientation u < v.
    """

    graph: Graph
    sigma_size: int
    upsilon_size: int
    projections: dict[Edge, tuple[tuple[int, ...], tuple[int, ...]]]

    def __post_init__(self):
        if self.upsilon_size < 1:
            raise ValueError("upsilon_size must be at least 1")
        if set(self.projections) != set(self.graph.edges):
            raise ValueError("projections must be keyed exactly by the edge set")
        for e, (pu, pv) in self.projections.items():
            for proj in (pu, pv):
                if len(proj) != self.sigma_size:
                    raise ValueError(f"projection on {e} not total on the alphabet")
                if any(not 0 <= t < self.upsilon_size for t in proj):
                    raise ValueError(f"projection on {e} maps outside the range")

    def __hash__(self):
        return hash(
            (
                self.graph,
                self.sigma_size,
                self.upsilon_size,
                tuple(sorted(self.projections.items())),
            )
        )


@dataclass(frozen=True)
class PartialAssignment:
    """Vertex labeling that may leave vertices unassigned (None)."""

    values: tuple[Symbol, ...]

    def size(self) -> int:
        return sum(1 for s in self.values if s is not None)

    def assigned_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, s in enumerate(self.values) if s is not None)


def is_consistent(pi: RcspInstance, phi: PartialAssignment) -> bool:
    """True iff every edge with both endpoints assigned has agreeing projections."""
    if len(phi.values) != pi.graph.vertex_count:
        raise ValueError("partial assignment must cover the vertex set")
    for (u, v), (pu, pv) in pi.projections.items():
        a, b = phi.values[u], phi.values[v]
        if a is None or b is None:
            continue
        if pu[a] != pv[b]:
            return False
    return True


def _max_consistent_partial(
    vertex_count: int,
    symbols_for,
    edges_closing_at,
    agrees,
    enum_states: int,
    enum_cap: int,
    max_nodes: Optional[int],
) -> tuple[int, tuple[Symbol, ...]]:
    """Shared pruned DFS behind the two partial-assignment oracles.

    symbols_for(v) yields the candidate symbols of vertex v;
    edges_closing_at[v] lists edges (u, v) with u < v; agrees(e, a, b)
    tests edge satisfaction.  Branches die as soon as an edge between two
    assigned vertices is violated or the remaining vertices cannot beat
    the incumbent.
    """
    if enum_states > enum_cap:
        raise CapExceededError(
            f"{enum_states} partial assignments exceeds enumeration cap {enum_cap}"
        )
    best_size = 0
    best: tuple[Symbol, ...] = (None,) * vertex_count
    current: list[Symbol] = [None] * vertex_count
    nodes = 0

    def descend(v: int, assigned: int):
        nonlocal best_size, best, nodes
        if v == vertex_count:
            if assigned > best_size:
                best_size = assigned
                best = tuple(current)
            return
        if assigned + (vertex_count - v) <= best_size:
            return
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise CapExceededError(f"search exceeded node budget {max_nodes}")
        for s in symbols_for(v):
            ok = True
            for (u, w) in edges_closing_at[v]:
                a = current[u]
                if a is not None and not agrees((u, w), a, s):
                    ok = False
                    break
            if ok:
                current[v] = s
                descend(v + 1, assigned + 1)
                current[v] = None
                if best_size == vertex_count:
                    return
        descend(v + 1, assigned)

    descend(0, 0)
    return best_size, best


def par_bruteforce(
    pi: RcspInstance,
    enum_cap: int = DEFAULT_ASSIGNMENT_ENUM_CAP,
    max_nodes: Optional[int] = None,
) -> tuple[int, PartialAssignment]:
    """Maximum size of a consistent partial assignment, with a witness."""
    n = pi.graph.vertex_count
    closing: list[list[Edge]] = [[] for _ in range(n)]
    for e in pi.graph.edge_list:
        closing[e[1]].append(e)

    def agrees(e: Edge, a: int, b: int) -> bool:
        pu, pv = pi.projections[e]
        return pu[a] == pv[b]

    size, values = _max_consistent_partial(
        n,
        lambda v: range(pi.sigma_size),
        closing,
        agrees,
        (pi.sigma_size + 1) ** n,
        enum_cap,
        max_nodes,
    )
    return size, PartialAssignment(values)


@dataclass(frozen=True)
class GcspInstance:
    """Rectangular CSP with one alphabet per vertex.

    alphabets[x] is the nonempty symbol set of vertex x (subsets of a shared
    integer symbol space); projections maps each edge to a pair of dicts,
    each defined exactly on its endpoint's alphabet.  None serves as the
    unassigned marker and is outside every alphabet by construction.
    """

    graph: Graph
    alphabets: tuple[frozenset[int], ...]
    upsilon_size: int
    projections: dict[Edge, tuple[dict[int, int], dict[int, int]]]

    def __post_init__(self):
        if len(self.alphabets) != self.graph.vertex_count:
            raise ValueError("one alphabet per vertex required")
        if any(not alpha for alpha in self.alphabets):
            raise ValueError("vertex alphabets must be nonempty")
        if set(self.projections) != set(self.graph.edges):
            raise ValueError("projections must be keyed exactly by the edge set")
        for (u, v), (pu, pv) in self.projections.items():
            if set(pu) != set(self.alphabets[u]) or set(pv) != set(self.alphabets[v]):
                raise ValueError(f"projections on ({u}, {v}) not total on the alphabets")
            for proj in (pu, pv):
                if any(not 0 <= t < self.upsilon_size for t in proj.values()):
                    raise ValueError(f"projection on ({u}, {v}) maps outside the range")

    def __hash__(self):
        return hash(
            (
                self.graph,
                self.alphabets,
                self.upsilon_size,
                tuple(sorted((e, tuple(sorted(pu.items())), tuple(sorted(pv.items()))))
                      for e, (pu, pv) in self.projections.items()),
            )
        )


def gcsp_is_consistent(delta: GcspInstance, phi: PartialAssignment) -> bool:
    """Consistency plus membership: assigned symbols must lie in their
    vertex's own alphabet."""
    if len(phi.values) != delta.graph.vertex_count:
        raise ValueError("partial assignment must cover the vertex set")
    for x, s in enumerate(phi.values):
        if s is not None and s not in delta.alphabets[x]:
            return False
    for (u, v), (pu, pv) in delta.projections.items():
        a, b = phi.values[u], phi.values[v]
        if a is None or b is None:
            continue
        if pu[a] != pv[b]:
            return False
    return True


def gcsp_par_bruteforce(
    delta: GcspInstance,
    enum_cap: int = DEFAULT_ASSIGNMENT_ENUM_CAP,
    max_nodes: Optional[int] = None,
) -> tuple[int, PartialAssignment]:
    """Maximum consistent partial assignment size for the per-vertex form."""
    n = delta.graph.vertex_count
    closing: list[list[Edge]] = [[] for _ in range(n)]
    for e in delta.graph.edge_list:
        closing[e[1]].append(e)
    symbol_lists = [tuple(sorted(alpha)) for alpha in delta.alphabets]

    def agrees(e: Edge, a: int, b: int) -> bool:
        pu, pv = delta.projections[e]
        return pu[a] == pv[b]

    states = 1
    for alpha in symbol_lists:
        states *= len(alpha) + 1
    size, values = _max_consistent_partial(
        n,
        lambda v: symbol_lists[v],
        closing,
        agrees,
        states,
        enum_cap,
        max_nodes,
    )
    return size, PartialAssignment(values)
