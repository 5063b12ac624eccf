"""Matching optimality against exhaustive search, validity of every star found, and honest-clique graphs."""
import itertools
from typing import List

import numpy as np

from bbext.checks.base import PropertyResult, scaled
from bbext.protocols.error_free import find_eset
from bbext.star import (
    PartyGraph,
    brute_force_max_matching_size,
    brute_force_star_exists,
    is_matching,
    is_star,
    max_matching,
    star,
)


def random_graph(rng: np.random.Generator, n: int, density: float) -> PartyGraph:
    pairs = itertools.combinations(range(1, n + 1), 2)
    return PartyGraph.from_edges(n, (pair for pair in pairs if rng.random() < density))


def honest_clique_graph(rng: np.random.Generator, n: int, honest) -> PartyGraph:
    """Honest parties pairwise adjacent; every edge touching a corrupt party present at random"""
    honest = set(honest)
    pairs = itertools.combinations(range(1, n + 1), 2)
    return PartyGraph.from_edges(n, (p for p in pairs if (p[0] in honest and p[1] in honest) or rng.random() < 0.5))


def run_suite(scale: float = 1.0, seed: int = 0) -> List[PropertyResult]:
    rng = np.random.default_rng([seed, 3])

    matching = PropertyResult("max_matching is a maximum matching (n <= 10)")
    stars = PropertyResult("every star returned satisfies the (n, t)-star definition")
    for _ in range(scaled(2000, scale)):
        n = int(rng.integers(2, 11))
        g = random_graph(rng, n, float(rng.uniform(0.1, 0.95)))
        found = max_matching(g)
        optimum = brute_force_max_matching_size(g)
        matching.record(is_matching(g, found) and len(found) == optimum, f"{g.to_rows()}: {len(found)} != {optimum}")

        t = int(rng.integers(0, (n - 1) // 2 + 1))
        result = star(g, n, t)
        if result is not None:
            ok = is_star(g, result.C, result.D, n, t) and brute_force_star_exists(g, n, t)
            stars.record(ok, f"{g.to_rows()} t={t}: invalid star {sorted(result.C)} / {sorted(result.D)}")

    cliques = PropertyResult("honest cliques of n - t parties always yield a star and an E-set of all honest")
    for t in (1, 2, 3):
        n = 3 * t + 1
        for _ in range(scaled(200, scale)):
            honest = set(rng.choice(np.arange(1, n + 1), size=n - t, replace=False).tolist())
            g = honest_clique_graph(rng, n, honest)
            eset = find_eset(g, n, t) if star(g, n, t) is not None else None
            cliques.record(eset is not None and honest <= eset, f"{g.to_rows()} honest={sorted(honest)}: {eset}")
    return [matching, stars, cliques]
