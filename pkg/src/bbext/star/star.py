import itertools
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from bbext.star.graph import PartyGraph
from bbext.star.matching import max_matching


@dataclass(frozen=True)
class StarResult:
    C: FrozenSet[int]
    D: FrozenSet[int]


def is_star(g: PartyGraph, C, D, n: int, t: int) -> bool:
    """The (n,t)-star definition: C ⊆ D, |C| >= n - 2t, |D| >= n - t, every c in C adjacent to every other d in D"""
    if not set(C) <= set(D) or len(C) < n - 2 * t or len(D) < n - t:
        return False
    return all(g.has_edge(c, d) for c in C for d in D if c != d)


def star(g: PartyGraph, n: int, t: int) -> Optional[StarResult]:
    """Find an (n,t)-star through a maximum matching of the complement graph; None means noSTAR"""
    h = g.complement()
    matching = max_matching(h)
    matched = {v for edge in matching for v in edge}
    unmatched = set(g.vertices) - matched
    # unmatched vertices that see both endpoints of some matching edge in H
    triangles = {v for v in unmatched if any(h.has_edge(v, a) and h.has_edge(v, b) for a, b in matching)}
    C = unmatched - triangles
    B = {v for v in matched if any(h.has_edge(v, c) for c in C)}
    D = set(g.vertices) - B
    if len(C) >= n - 2 * t and len(D) >= n - t:
        return StarResult(frozenset(C), frozenset(D))
    return None


def derive_fe(g: PartyGraph, C, D, n: int, t: int) -> Optional[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """
    F: vertices with at least t + 1 neighbours in C.
    E: vertices with at least 2t + 1 neighbours in F.
    Every vertex counts as its own neighbour in both.
    """
    C = set(C)
    F = frozenset(v for v in g.vertices if len((g.neighbors(v) | {v}) & C) >= t + 1)
    E = frozenset(v for v in g.vertices if len((g.neighbors(v) | {v}) & F) >= 2 * t + 1)
    if len(F) < 2 * t + 1 or len(E) < 2 * t + 1:
        return None
    return F, E


def brute_force_star_exists(g: PartyGraph, n: int, t: int) -> bool:
    """Exhaustive search over cliques C with the largest compatible D; meant for n <= 10"""
    if n - 2 * t <= 0:
        return True  # the empty C with D = P
    for size in range(n - 2 * t, n + 1):
        for C in itertools.combinations(g.vertices, size):
            if not all(g.has_edge(u, v) for u, v in itertools.combinations(C, 2)):
                continue
            D = set(C) | {v for v in g.vertices if all(g.has_edge(v, c) for c in C)}
            if len(D) >= n - t:
                return True
    return False
