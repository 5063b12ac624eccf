from typing import FrozenSet

import networkx as nx

from bbext.star.graph import Edge, PartyGraph


def max_matching(g: PartyGraph) -> FrozenSet[Edge]:
    """Maximum-cardinality matching (blossom); vertices and edges go in sorted, so the result is deterministic"""
    graph = nx.Graph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from(g.sorted_edges())
    matching = nx.max_weight_matching(graph, maxcardinality=True)
    return frozenset((min(u, v), max(u, v)) for u, v in matching)


def is_matching(g: PartyGraph, matching) -> bool:
    seen = set()
    for u, v in matching:
        if not g.has_edge(u, v) or u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def brute_force_max_matching_size(g: PartyGraph) -> int:
    """Exhaustive search: the lowest free vertex is either left unmatched or matched to each free neighbour"""

    def search(free: FrozenSet[int]) -> int:
        if len(free) < 2:
            return 0
        v = min(free)
        rest = free - {v}
        best = search(rest)
        for u in rest:
            if g.has_edge(u, v):
                best = max(best, 1 + search(rest - {u}))
        return best

    return search(frozenset(g.vertices))
