"""Simple oriented graphs on dense integer vertices.

Every edge is stored as an ordered pair (u, v) with u < v, so the two
endpoints of an edge have a fixed identity everywhere downstream (cost
tables and projection maps are keyed per endpoint).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import ConstructionError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple graph; edges oriented low-to-high vertex index."""

    vertex_count: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        for u, v in self.edges:
            if not (0 <= u < v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) is not oriented within range")

    @property
    def edge_list(self) -> tuple[Edge, ...]:
        """Edges in lexicographic order; the canonical edge indexing."""
        return tuple(sorted(self.edges))

    def vertices(self) -> range:
        return range(self.vertex_count)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def adjacent_edges(self, v: int) -> tuple[Edge, ...]:
        return tuple(e for e in self.edge_list if v in e)

    def neighbors(self, v: int) -> tuple[int, ...]:
        out = [u + w - v for (u, w) in self.edges if v in (u, w)]
        return tuple(sorted(out))

    def is_regular(self, r: int) -> bool:
        return all(self.degree(v) == r for v in self.vertices())

    def max_degree(self) -> int:
        if self.vertex_count == 0:
            return 0
        return max(self.degree(v) for v in self.vertices())


def graph_from_edges(vertex_count: int, pairs) -> Graph:
    """Build a Graph from unordered pairs, normalizing the orientation."""
    edges = set()
    for a, b in pairs:
        if a == b:
            raise ValueError(f"self-loop at {a}")
        edges.add((min(a, b), max(a, b)))
    return Graph(vertex_count, frozenset(edges))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def circulant_cubic_graph(n: int) -> Graph:
    """3-regular graph on n vertices: an n-cycle plus the n/2 diameters.

    n must be even and at least 4; n = 4 yields K4.
    """
    if n < 4 or n % 2:
        raise ConstructionError(f"no 3-regular graph on {n} vertices (need even n >= 4)")
    pairs = [(i, (i + 1) % n) for i in range(n)]
    pairs += [(i, i + n // 2) for i in range(n // 2)]
    return graph_from_edges(n, pairs)


def line_graph(g: Graph) -> Graph:
    """Line graph: vertices are g's edges (in lexicographic order), joined
    when the underlying edges share exactly one endpoint."""
    base = g.edge_list
    index = {e: i for i, e in enumerate(base)}
    pairs = []
    for i, e in enumerate(base):
        for f in base[i + 1:]:
            if len(set(e) & set(f)) == 1:
                pairs.append((index[e], index[f]))
    return graph_from_edges(len(base), pairs)


def random_regular3_graph(n: int, rng: random.Random, max_tries: int = 1000) -> Graph:
    """Seeded 3-regular simple graph via the pairing model with rejection."""
    if n < 4 or n % 2:
        raise ConstructionError(f"no 3-regular graph on {n} vertices (need even n >= 4)")
    stubs = [v for v in range(n) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(stubs)
        pairs = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
        if any(a == b for a, b in pairs):
            continue
        norm = {(min(a, b), max(a, b)) for a, b in pairs}
        if len(norm) < len(pairs):
            continue
        return Graph(n, frozenset(norm))
    raise ConstructionError(f"pairing model failed to produce a simple graph in {max_tries} tries")


def random_graph(n: int, edge_count: int, rng: random.Random) -> Graph:
    """Seeded graph with exactly edge_count distinct edges."""
    possible = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if edge_count > len(possible):
        raise ValueError(f"cannot place {edge_count} edges on {n} vertices")
    chosen = rng.sample(possible, edge_count)
    return Graph(n, frozenset(chosen))
