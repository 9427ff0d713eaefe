"""Simple undirected graphs with a canonical edge order, and edge sign assignments.

The canonical order is lexicographic on (u, v) with u < v; every edge sign
refers to the direction from the smaller endpoint to the larger one. A full
assignment of m signs is an Orientation; a prefix of k <= m signs (edges
k..m-1 undecided) is passed around as a plain tuple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import EdgeListError


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1 with sorted, deduplicated edges."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) invalid for n={self.n}")
            if prev is not None and (u, v) <= prev:
                raise ValueError("edges must be sorted lexicographically and unique")
            prev = (u, v)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}


@dataclass(frozen=True)
class Orientation:
    """Signs over the canonical edges: signs[i] is the sign of edge i, in {-1, +1}."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("orientation signs must be -1 or +1")


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph, canonicalizing edge endpoint order and sorting the list."""
    canon = []
    seen = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise ValueError(f"duplicate edge {e}")
        seen.add(e)
        canon.append(e)
    return Graph(n, tuple(sorted(canon)))


def check_orientation(g: Graph, o: Orientation) -> None:
    if len(o.signs) != g.m:
        raise ValueError(f"orientation has {len(o.signs)} signs, graph has {g.m} edges")


def check_prefix(g: Graph, prefix: Sequence[int]) -> tuple[int, ...]:
    """Validate a partial assignment (signs of the first k canonical edges)."""
    pa = tuple(prefix)
    if len(pa) > g.m:
        raise ValueError(f"prefix length {len(pa)} exceeds edge count {g.m}")
    if any(s not in (-1, 1) for s in pa):
        raise ValueError("prefix signs must be -1 or +1")
    return pa


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated "u v" lines into a canonical Graph.

    '#' starts a comment line. An optional header line "n <count>" declares
    the vertex count; without it, n is one more than the largest vertex
    index. Self-loops, duplicate edges (in either endpoint order), negative
    or non-integer tokens, and vertices at or above a declared n are
    rejected with the line number.
    """
    declared_n: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    max_vertex = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if declared_n is not None:
                raise EdgeListError("duplicate 'n' header", lineno)
            if len(parts) != 2:
                raise EdgeListError("header must be 'n <count>'", lineno)
            try:
                declared_n = int(parts[1])
            except ValueError:
                raise EdgeListError(f"non-integer vertex count {parts[1]!r}", lineno)
            if declared_n < 0:
                raise EdgeListError("vertex count must be non-negative", lineno)
            continue
        if len(parts) != 2:
            raise EdgeListError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"non-integer token in {line!r}", lineno)
        if u < 0 or v < 0:
            raise EdgeListError("vertex indices must be non-negative", lineno)
        if u == v:
            raise EdgeListError(f"self-loop at vertex {u}", lineno)
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise EdgeListError(f"duplicate edge {e}", lineno)
        seen.add(e)
        edges.append(e)
        max_vertex = max(max_vertex, v, u)
    n = max_vertex + 1 if declared_n is None else declared_n
    if max_vertex >= n:
        raise EdgeListError(
            f"vertex {max_vertex} exceeds declared vertex count {n}"
        )
    return Graph(n, tuple(sorted(edges)))


def serialize_edge_list(g: Graph) -> str:
    """Inverse of parse_edge_list: header plus one edge per line."""
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    out: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph induced by `vertices`, relabeled 0..len(vertices)-1 in order."""
    index = {v: i for i, v in enumerate(vertices)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return graph_from_edges(len(vertices), edges)


def switch(g: Graph, o: Orientation, s: Iterable[int]) -> Orientation:
    """Flip the sign of every edge with exactly one endpoint in the vertex set s.

    Conjugation of the Hermitian adjacency matrix by a diagonal matrix of
    signs, so the result is always cospectral with the input.
    """
    check_orientation(g, o)
    sset = set(s)
    for w in sset:
        if not (0 <= w < g.n):
            raise ValueError(f"vertex {w} out of range for n={g.n}")
    new = list(o.signs)
    for i, (u, v) in enumerate(g.edges):
        if (u in sset) != (v in sset):
            new[i] = -new[i]
    return Orientation(tuple(new))


# -- named constructors ------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def star_graph(n: int) -> Graph:
    """Star on n vertices: center 0 joined to 1..n-1."""
    return Graph(n, tuple((0, i) for i in range(1, n)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((u, v) for u in range(a) for v in range(a, a + b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return graph_from_edges(10, outer + inner + spokes)


# -- JSON --------------------------------------------------------------------

def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]})


def graph_from_json(text: str) -> Graph:
    obj = json.loads(text)
    return graph_from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]])


def orientation_to_json(o: Orientation) -> str:
    return json.dumps({"signs": list(o.signs)})


def orientation_from_json(text: str) -> Orientation:
    return Orientation(tuple(int(s) for s in json.loads(text)["signs"]))
