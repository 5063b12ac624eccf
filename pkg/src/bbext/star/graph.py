from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Set, Tuple

Edge = Tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class PartyGraph:
    """Undirected simple graph on party ids 1..n"""

    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self):
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"invalid edge ({u}, {v}) for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "PartyGraph":
        return cls(n, frozenset(_edge(u, v) for u, v in edges if u != v))

    @classmethod
    def complete(cls, n: int) -> "PartyGraph":
        return cls.from_edges(n, ((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))

    @classmethod
    def from_rows(cls, rows: Iterable[str]) -> "PartyGraph":
        """Parse the debug format: one row of 0/1 characters per vertex"""
        rows = [row.strip() for row in rows if row.strip()]
        n = len(rows)
        edges = set()
        for i, row in enumerate(rows, start=1):
            if len(row) != n or set(row) - {"0", "1"}:
                raise ValueError(f"row {i} is not a 0/1 string of length {n}")
            if row[i - 1] == "1":
                raise ValueError(f"self-loop at vertex {i}")
            for j, cell in enumerate(row, start=1):
                if cell == "1":
                    if rows[j - 1][i - 1] != "1":
                        raise ValueError(f"adjacency is not symmetric at ({i}, {j})")
                    edges.add(_edge(i, j))
        return cls(n, frozenset(edges))

    def to_rows(self) -> List[str]:
        return [
            "".join("1" if self.has_edge(i, j) else "0" for j in range(1, self.n + 1)) for i in range(1, self.n + 1)
        ]

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and _edge(u, v) in self.edges

    def neighbors(self, v: int) -> Set[int]:
        return {u for u in self.vertices if self.has_edge(u, v)}

    def complement(self) -> "PartyGraph":
        return PartyGraph.from_edges(
            self.n, ((u, v) for u in self.vertices for v in range(u + 1, self.n + 1) if not self.has_edge(u, v))
        )

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)
