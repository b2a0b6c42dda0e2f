"""Connected embeddings of a source graph into a small 3-regular host.

An embedding maps each source vertex to a nonempty connected subgraph of
the host so that adjacent source vertices receive touching images (images
that share a host vertex or are joined by a host edge).  The depth of an
embedding is the largest number of source images meeting at one host
vertex; the provider below reports the depth it achieves rather than
guaranteeing any bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import ConstructionError
from .graphs import Graph, circulant_cubic_graph


@dataclass(frozen=True)
class ConnectedEmbedding:
    source: Graph
    target: Graph
    images: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.images) != self.source.vertex_count:
            raise ValueError("one image per source vertex required")

    def depth(self) -> int:
        """Largest number of source images meeting at one target vertex."""
        if self.target.vertex_count == 0:
            return 0
        meet = [0] * self.target.vertex_count
        for image in self.images:
            for x in image:
                meet[x] += 1
        return max(meet)


def _connected_in(target: Graph, subset: frozenset[int]) -> bool:
    if not subset:
        return False
    start = next(iter(subset))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in target.neighbors(x):
            if y in subset and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen == subset


def _touch(target: Graph, a: frozenset[int], b: frozenset[int]) -> bool:
    if a & b:
        return True
    for x in a:
        for y in target.neighbors(x):
            if y in b:
                return True
    return False


def embedding_violations(emb: ConnectedEmbedding) -> list[str]:
    """Human-readable invariant violations; empty when the embedding is valid."""
    problems = []
    for v, image in enumerate(emb.images):
        if not image:
            problems.append(f"image of source vertex {v} is empty")
            continue
        if any(not 0 <= x < emb.target.vertex_count for x in image):
            problems.append(f"image of source vertex {v} leaves the target vertex set")
            continue
        if not _connected_in(emb.target, image):
            problems.append(f"image of source vertex {v} is disconnected in the target")
    for (u, v) in emb.source.edge_list:
        if emb.images[u] and emb.images[v] and not _touch(emb.target, emb.images[u], emb.images[v]):
            problems.append(f"images of source edge ({u}, {v}) do not touch")
    return problems


def validate_embedding(emb: ConnectedEmbedding) -> tuple[bool, int]:
    """Exhaustive invariant check; returns (valid, depth)."""
    return not embedding_violations(emb), emb.depth()


def _arc_positions(start: int, length: int, n: int) -> frozenset[int]:
    return frozenset((start + t) % n for t in range(min(length, n)))


def simple_connected_embedding(g: Graph, k: int) -> tuple[Graph, ConnectedEmbedding]:
    """Embed g into a 3-regular circulant host with at most k vertices.

    Source vertices receive contiguous arcs of the host cycle: a BFS walk
    places each vertex's arc next to an already-placed neighbor's arc, and
    a growth pass extends arcs until every source edge touches.  Arcs are
    contiguous, hence connected, at every step; depth is whatever the arcs
    end up overlapping to.
    """
    if k <= 6:
        raise ConstructionError(f"host size parameter {k} too small (need k > 6)")
    host_size = k if k % 2 == 0 else k - 1
    host = circulant_cubic_graph(host_size)
    n = g.vertex_count
    if n == 0:
        return host, ConnectedEmbedding(g, host, ())

    start = [0] * n
    length = [0] * n
    placed = [False] * n
    cursor = 0
    for root in range(n):
        if placed[root]:
            continue
        start[root], length[root] = cursor % host_size, 1
        placed[root] = True
        cursor += 2
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if placed[v]:
                    continue
                start[v] = (start[u] + length[u]) % host_size
                length[v] = 1
                placed[v] = True
                queue.append(v)

    def image(v: int) -> frozenset[int]:
        return _arc_positions(start[v], length[v], host_size)

    # Growth pass: extend the later endpoint's arc until every edge touches.
    grown = True
    while grown:
        grown = False
        for (u, v) in g.edge_list:
            while not _touch(host, image(u), image(v)) and length[v] < host_size:
                length[v] += 1
                grown = True

    emb = ConnectedEmbedding(g, host, tuple(image(v) for v in range(n)))
    return host, emb
