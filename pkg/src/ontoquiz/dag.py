"""Small directed-graph helpers used by the didactic layer.

All functions take plain node ids and (from, to) edge pairs so they stay
independent of the ontology types. Edges may mention only known nodes;
callers are expected to have filtered dangling endpoints already.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable


def find_cycle(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> list[str] | None:
    """Return one cycle as a node path (first == last), or None if acyclic."""
    adjacency: dict[str, list[str]] = {node: [] for node in nodes}
    for src, dst in edges:
        adjacency[src].append(dst)
    for neighbours in adjacency.values():
        neighbours.sort()

    WHITE, GREY, BLACK = 0, 1, 2
    colour = {node: WHITE for node in adjacency}
    path: list[str] = []

    def visit(start: str) -> list[str] | None:
        # Iterative DFS; a grey node reached again closes a cycle.
        stack: list[tuple[str, int]] = [(start, 0)]
        colour[start] = GREY
        path.append(start)
        while stack:
            node, edge_index = stack[-1]
            if edge_index < len(adjacency[node]):
                stack[-1] = (node, edge_index + 1)
                nxt = adjacency[node][edge_index]
                if colour[nxt] == GREY:
                    return path[path.index(nxt):] + [nxt]
                if colour[nxt] == WHITE:
                    colour[nxt] = GREY
                    path.append(nxt)
                    stack.append((nxt, 0))
            else:
                colour[node] = BLACK
                path.pop()
                stack.pop()
        return None

    for node in sorted(adjacency):
        if colour[node] == WHITE:
            cycle = visit(node)
            if cycle is not None:
                return cycle
    return None


def topological_order(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> list[str]:
    """Kahn's algorithm with deterministic ties: ready nodes leave in ascending id order.

    Raises ValueError if the graph has a cycle.
    """
    node_list = list(nodes)
    adjacency: dict[str, list[str]] = {node: [] for node in node_list}
    in_degree: dict[str, int] = {node: 0 for node in node_list}
    for src, dst in edges:
        adjacency[src].append(dst)
        in_degree[dst] += 1

    ready = [node for node, degree in in_degree.items() if degree == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        node = heapq.heappop(ready)
        order.append(node)
        for nxt in adjacency[node]:
            in_degree[nxt] -= 1
            if in_degree[nxt] == 0:
                heapq.heappush(ready, nxt)
    if len(order) != len(node_list):
        raise ValueError("graph is not acyclic")
    return order


def ancestors(edges: Iterable[tuple[str, str]], target: str) -> set[str]:
    """Every node with a directed path to target, excluding target itself."""
    reverse: dict[str, set[str]] = {}
    for src, dst in edges:
        reverse.setdefault(dst, set()).add(src)
    seen: set[str] = set()
    frontier = [target]
    while frontier:
        node = frontier.pop()
        for parent in reverse.get(node, ()):
            if parent not in seen:
                seen.add(parent)
                frontier.append(parent)
    return seen
