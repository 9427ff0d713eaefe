"""Desk-scale test corpus built from published enumerations.

All connected graphs on up to 7 vertices come from the graph atlas shipped
with networkx; trees up to 9 vertices from its non-isomorphic tree
generator. Named extras match the graphs used throughout the checks.
"""

from functools import cache

import networkx as nx

from hermspec.graphs import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    graph_from_edges,
    path_graph,
    petersen_graph,
)


def _convert(nxg) -> Graph:
    nodes = sorted(nxg.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return graph_from_edges(len(nodes), [(idx[u], idx[v]) for u, v in nxg.edges()])


@cache
def atlas_connected(max_n: int = 7) -> tuple[Graph, ...]:
    out = []
    for nxg in nx.graph_atlas_g():
        n = nxg.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(nxg):
            out.append(_convert(nxg))
    return tuple(out)


@cache
def trees_up_to(max_n: int = 9) -> tuple[Graph, ...]:
    out = [Graph(1, ()), path_graph(2)]
    for n in range(3, max_n + 1):
        out.extend(_convert(t) for t in nx.nonisomorphic_trees(n))
    return tuple(out)


def named_extras() -> tuple[Graph, ...]:
    return (
        complete_graph(3),
        cycle_graph(4),
        cycle_graph(5),
        cycle_graph(6),
        complete_graph(4),
        complete_bipartite_graph(3, 3),
        petersen_graph(),
    )


@cache
def full_corpus() -> tuple[Graph, ...]:
    seen = set()
    out = []
    for g in atlas_connected() + named_extras() + trees_up_to():
        key = (g.n, g.edges)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return tuple(out)
