"""Instance (de)serialization: UTF-8 JSON with a "kind" discriminator.

Layout notes:
  - vertices and symbols are 0-based sizes with implicit indexing;
  - rectangular projection values are written 1-based (the conventional
    range {1..m}) and shifted back to the internal 0-based form on parse;
  - knapsack costs and budgets are decimal strings, since the packed
    reduction produces integers far beyond 64 bits;
  - output is canonical (sorted keys, fixed indentation, trailing
    newline), so identical instances serialize byte for byte.
"""

from __future__ import annotations

import hashlib
import json

from .csp import Csp2Instance, GcspInstance, RcspInstance, SatInstance
from .graphs import Graph
from .knapsack import VkInstance
from .reductions import EmbedReductionArtifacts


def _graph_payload(graph: Graph) -> dict:
    return {
        "vertices": graph.vertex_count,
        "edges": [list(e) for e in graph.edge_list],
    }


def _graph_from_payload(payload: dict) -> Graph:
    return Graph(
        payload["vertices"], frozenset(tuple(e) for e in payload["edges"])
    )


def instance_payload(obj) -> dict:
    if isinstance(obj, SatInstance):
        return {
            "kind": "sat",
            "variables": obj.variable_count,
            "occurrence_bound": obj.occurrence_bound,
            "clauses": [list(c) for c in obj.clauses],
        }
    if isinstance(obj, Csp2Instance):
        return {
            "kind": "csp2",
            **_graph_payload(obj.graph),
            "sigma_size": obj.sigma_size,
            "constraints": [
                sorted([a, b] for (a, b) in obj.constraints[e]) for e in obj.graph.edge_list
            ],
        }
    if isinstance(obj, RcspInstance):
        return {
            "kind": "rcsp",
            **_graph_payload(obj.graph),
            "sigma_size": obj.sigma_size,
            "upsilon_size": obj.upsilon_size,
            "projections": [
                {
                    "u": [t + 1 for t in obj.projections[e][0]],
                    "v": [t + 1 for t in obj.projections[e][1]],
                }
                for e in obj.graph.edge_list
            ],
        }
    if isinstance(obj, GcspInstance):
        alphabets = [sorted(a) for a in obj.alphabets]
        return {
            "kind": "gcsp",
            **_graph_payload(obj.graph),
            "upsilon_size": obj.upsilon_size,
            "alphabets": alphabets,
            "projections": [
                {
                    "u": [obj.projections[e][0][s] for s in alphabets[e[0]]],
                    "v": [obj.projections[e][1][s] for s in alphabets[e[1]]],
                }
                for e in obj.graph.edge_list
            ],
        }
    if isinstance(obj, VkInstance):
        return {
            "kind": "vk",
            "dimension": obj.dimension,
            "profits": list(obj.profits),
            "costs": [[str(x) for x in row] for row in obj.costs],
            "budget": [str(b) for b in obj.budget],
        }
    raise ValueError(f"cannot serialize {type(obj).__name__}")


def serialize_instance(obj) -> str:
    return json.dumps(instance_payload(obj), sort_keys=True, indent=1) + "\n"


def parse_instance(text: str):
    payload = json.loads(text)
    kind = payload.get("kind")
    if kind == "sat":
        return SatInstance(
            payload["variables"],
            tuple(tuple(c) for c in payload["clauses"]),
            payload["occurrence_bound"],
        )
    if kind == "csp2":
        graph = _graph_from_payload(payload)
        constraints = {
            e: frozenset(tuple(p) for p in pairs)
            for e, pairs in zip(graph.edge_list, payload["constraints"])
        }
        return Csp2Instance(graph, payload["sigma_size"], constraints)
    if kind == "rcsp":
        graph = _graph_from_payload(payload)
        projections = {
            e: (
                tuple(t - 1 for t in entry["u"]),
                tuple(t - 1 for t in entry["v"]),
            )
            for e, entry in zip(graph.edge_list, payload["projections"])
        }
        return RcspInstance(
            graph, payload["sigma_size"], payload["upsilon_size"], projections
        )
    if kind == "gcsp":
        graph = _graph_from_payload(payload)
        alphabets = tuple(frozenset(a) for a in payload["alphabets"])
        projections = {}
        for e, entry in zip(graph.edge_list, payload["projections"]):
            order_u = sorted(alphabets[e[0]])
            order_v = sorted(alphabets[e[1]])
            projections[e] = (
                dict(zip(order_u, entry["u"])),
                dict(zip(order_v, entry["v"])),
            )
        return GcspInstance(graph, alphabets, payload["upsilon_size"], projections)
    if kind == "vk":
        return VkInstance(
            tuple(payload["profits"]),
            tuple(tuple(int(x) for x in row) for row in payload["costs"]),
            tuple(int(b) for b in payload["budget"]),
        )
    raise ValueError(f"unknown instance kind {kind!r}")


def instance_digest(obj) -> str:
    """Short stable digest used by verification records."""
    return hashlib.sha256(serialize_instance(obj).encode()).hexdigest()[:12]


def artifacts_payload(art: EmbedReductionArtifacts) -> dict:
    """Audit record for the packed reduction: the partition (digit exponents
    are the 1-based positions within each chunk), coverage counts, and the
    derived big constants as decimal strings."""
    partition = [
        [["v", j] if isinstance(j, int) else ["e", j[0], j[1]] for j in chunk]
        for chunk in art.partition
    ]
    return {
        "kind": "embed-artifacts",
        "chunk_size": art.chunk_size,
        "partition": partition,
        "coverage": [list(row) for row in art.coverage],
        "chunk_totals": list(art.chunk_totals),
        "base_q": str(art.base_q),
        "sentinel": str(art.sentinel),
    }


def serialize_artifacts(art: EmbedReductionArtifacts) -> str:
    return json.dumps(artifacts_payload(art), sort_keys=True, indent=1) + "\n"
