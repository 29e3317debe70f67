"""Simple undirected graphs on vertices 1..n, BFS queries and twin classes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

Edge = Tuple[int, int]


class GraphFormatError(ValueError):
    """Raised for malformed graph text or invalid edge sets."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphFormatError(f"graph needs at least one vertex, got n={self.n}")
        for i, j in self.edges:
            if i == j:
                raise GraphFormatError(f"loop at vertex {i}")
            if not (1 <= i < j <= self.n):
                raise GraphFormatError(f"edge ({i}, {j}) is not of the form 1 <= i < j <= {self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build from unordered pairs; rejects loops and repeated edges."""
        seen = set()
        for i, j in edges:
            if i == j:
                raise GraphFormatError(f"loop at vertex {i}")
            e = (min(i, j), max(i, j))
            if e in seen:
                raise GraphFormatError(f"duplicate edge {e[0]}-{e[1]}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def _adj(self) -> Tuple[FrozenSet[int], ...]:
        nb: List[set] = [set() for _ in range(self.n + 1)]
        for i, j in self.edges:
            nb[i].add(j)
            nb[j].add(i)
        return tuple(frozenset(s) for s in nb)

    def adjacency(self) -> List[List[int]]:
        """0/1 adjacency matrix as nested lists (0-based rows and columns)."""
        adj = self._adj
        return [[1 if j in adj[i] else 0 for j in self.vertices] for i in self.vertices]

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)


def _check_vertex(g: Graph, i: int) -> None:
    if not (1 <= i <= g.n):
        raise ValueError(f"vertex {i} out of range 1..{g.n}")


def neighbors(g: Graph, i: int) -> FrozenSet[int]:
    _check_vertex(g, i)
    return g._adj[i]


def degree(g: Graph, i: int) -> int:
    return len(neighbors(g, i))


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header plus ``i j`` edge-line format.

    Blank lines and ``#`` comments (whole-line or trailing) are ignored.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            lines.append((lineno, s))
    if not lines:
        raise GraphFormatError("empty graph file")

    def ints(lineno: int, s: str) -> Tuple[int, int]:
        parts = s.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {s!r}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {s!r}") from None

    n, m = ints(*lines[0])
    if n < 1 or m < 0:
        raise GraphFormatError(f"line {lines[0][0]}: bad header {n} {m}")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges but {len(body)} edge lines follow")
    seen = set()
    for lineno, s in body:
        i, j = ints(lineno, s)
        if i == j:
            raise GraphFormatError(f"line {lineno}: loop at vertex {i}")
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphFormatError(f"line {lineno}: vertex out of range 1..{n}")
        if i > j:
            raise GraphFormatError(f"line {lineno}: edge must be written as 'i j' with i < j")
        if (i, j) in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {i}-{j}")
        seen.add((i, j))
    return Graph(n, frozenset(seen))


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{i} {j}" for i, j in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def bfs_distances(g: Graph, source: int = 1) -> Dict[int, int]:
    _check_vertex(g, source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g._adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def is_connected(g: Graph) -> bool:
    return len(bfs_distances(g, 1)) == g.n


def distance(g: Graph, i: int, j: int) -> int:
    _check_vertex(g, j)
    d = bfs_distances(g, i)
    if j not in d:
        raise ValueError(f"vertices {i} and {j} are not connected")
    return d[j]


def two_coloring(g: Graph) -> Optional[Dict[int, int]]:
    """Proper 2-coloring (BFS parity per component), or None if an odd cycle exists."""
    color: Dict[int, int] = {}
    for s in g.vertices:
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g._adj[u]:
                if v not in color:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    return color


def has_odd_cycle(g: Graph) -> bool:
    return two_coloring(g) is None


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``i`` renamed ``perm[i - 1]`` (perm is a permutation of 1..n)."""
    if sorted(perm) != list(g.vertices):
        raise ValueError("perm must be a permutation of 1..n")
    edges = frozenset(
        (min(perm[i - 1], perm[j - 1]), max(perm[i - 1], perm[j - 1])) for i, j in g.edges
    )
    return Graph(g.n, edges)


@dataclass(frozen=True)
class TwinPartition:
    """Twin classes in a fixed order, plus the relabeling that makes them contiguous.

    ``sigma[i - 1]`` is the new label of vertex ``i``; class ``k`` (0-based)
    occupies new labels ``prefix[k] + 1 .. prefix[k + 1]``.
    """

    classes: Tuple[Tuple[int, ...], ...]
    sigma: Tuple[int, ...]

    @property
    def representatives(self) -> Tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def prefix(self) -> Tuple[int, ...]:
        out = [0]
        for s in self.sizes:
            out.append(out[-1] + s)
        return tuple(out)

    @cached_property
    def class_index(self) -> Dict[int, int]:
        return {v: k for k, cls in enumerate(self.classes) for v in cls}

    def twin_class(self, v: int) -> Tuple[int, ...]:
        return self.classes[self.class_index[v]]

    def are_twins(self, i: int, j: int) -> bool:
        return self.class_index[i] == self.class_index[j]

    def is_twin_free(self) -> bool:
        return all(len(c) == 1 for c in self.classes)


def twin_partition(g: Graph) -> TwinPartition:
    groups: Dict[FrozenSet[int], List[int]] = {}
    for v in g.vertices:
        groups.setdefault(g._adj[v], []).append(v)
    classes = sorted((tuple(sorted(c)) for c in groups.values()), key=lambda c: c[0])
    sigma = [0] * g.n
    label = 0
    for cls in classes:
        for v in cls:
            label += 1
            sigma[v - 1] = label
    return TwinPartition(tuple(classes), tuple(sigma))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts 1..a and a+1..a+b."""
    return Graph.from_edges(a + b, [(i, j) for i in range(1, a + 1) for j in range(a + 1, a + b + 1)])
