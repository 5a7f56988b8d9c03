"""Topological subgraph detection for the small obstruction patterns.

A pattern is placed by injecting its branch vertices onto distinct graph
vertices of sufficient degree and routing each pattern edge as a path; the
paths are internally disjoint from each other and from every branch image,
and no two share an edge.  Patterns may have parallel edges (the doubled
cycles need them) and per-edge minimum path lengths (a K_{2,m} subdivision
needs every hub-to-hub path to pass through a middle vertex).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from .multigraph import EdgeId, Multigraph, VertexId

__all__ = [
    "has_k4_subdivision",
    "has_k23_subdivision",
    "has_doubled_cycle_subdivision",
    "is_k2m_subdivision",
    "has_induced_k23_subdivision",
]

DEFAULT_MAX_EDGES = 14


def _simple_paths(
    G: Multigraph,
    s: VertexId,
    t: VertexId,
    banned_vertices: frozenset[VertexId],
    banned_edges: frozenset[EdgeId],
    min_len: int,
) -> Iterator[tuple[list[EdgeId], list[VertexId]]]:
    """Simple s-t paths avoiding the banned items internally."""
    adj = G.adjacency()

    def walk(
        v: VertexId, path_e: list[EdgeId], path_v: list[VertexId]
    ) -> Iterator[tuple[list[EdgeId], list[VertexId]]]:
        for eid, w in adj[v]:
            if eid in banned_edges or eid in path_e:
                continue
            if w == t:
                if len(path_e) + 1 >= min_len:
                    yield path_e + [eid], path_v + [w]
                continue
            if w in banned_vertices or w in path_v:
                continue
            yield from walk(w, path_e + [eid], path_v + [w])

    yield from walk(s, [], [s])


def _embed(
    G: Multigraph,
    slot_degrees: tuple[int, ...],
    pattern_edges: tuple[tuple[int, int, int], ...],
) -> bool:
    """Whether the pattern embeds into G as a topological subgraph."""
    degs = G.degrees()
    candidates = [
        [v for v in sorted(G.vertices) if degs[v] >= d] for d in slot_degrees
    ]
    if any(not c for c in candidates):
        return False

    def route(
        k: int,
        phi: list[VertexId],
        used_v: frozenset[VertexId],
        used_e: frozenset[EdgeId],
    ) -> bool:
        if k == len(pattern_edges):
            return True
        i, j, min_len = pattern_edges[k]
        s, t = phi[i], phi[j]
        blocked = used_v | frozenset(phi)
        for path_e, path_v in _simple_paths(G, s, t, blocked, used_e, min_len):
            internal = frozenset(path_v[1:-1])
            if route(k + 1, phi, used_v | internal, used_e | frozenset(path_e)):
                return True
        return False

    def assign(slot: int, phi: list[VertexId]) -> bool:
        if slot == len(slot_degrees):
            return route(0, phi, frozenset(), frozenset())
        for v in candidates[slot]:
            if v in phi:
                continue
            if assign(slot + 1, phi + [v]):
                return True
        return False

    return assign(0, [])


def _check_cap(G: Multigraph, max_edges: int) -> None:
    if G.edge_count > max_edges:
        raise ValueError(
            f"graph has {G.edge_count} edges; raise max_edges above {max_edges} "
            "to search it"
        )


def has_k4_subdivision(G: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> bool:
    """Four branch vertices joined by six internally disjoint paths.

    Parallel edges and loops never help, so the search runs on the
    simplification.
    """
    H, _ = G.simplify()
    _check_cap(H, max_edges)
    edges = tuple(
        (i, j, 1) for i, j in combinations(range(4), 2)
    )
    return _embed(H, (3, 3, 3, 3), edges)


def has_k23_subdivision(G: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> bool:
    """Two hubs joined by three internally disjoint paths of length >= 2."""
    H, _ = G.simplify()
    _check_cap(H, max_edges)
    return _embed(H, (3, 3), ((0, 1, 2), (0, 1, 2), (0, 1, 2)))


def has_doubled_cycle_subdivision(
    G: Multigraph, max_edges: int = DEFAULT_MAX_EDGES
) -> bool:
    """A cycle of length >= 3 with every edge doubled, subdivided.

    Runs on the graph itself: the doubled pattern edges need parallel
    routes, which simplification would destroy.
    """
    _check_cap(G, max_edges)
    degs = G.degrees()
    branch_limit = sum(1 for v in G.vertices if degs[v] >= 4)
    for m in range(3, branch_limit + 1):
        edges = []
        for i in range(m):
            edges.append((i, (i + 1) % m, 1))
            edges.append((i, (i + 1) % m, 1))
        if _embed(G, tuple([4] * m), tuple(edges)):
            return True
    return False


def is_k2m_subdivision(H: Multigraph) -> int | None:
    """The m for which H is a subdivision of K_{2,m}, if any.

    Such a graph has exactly two vertices of degree m >= 3 joined by m
    internally disjoint paths, each passing through at least one degree-2
    vertex, and nothing else.
    """
    if H.edge_count == 0 or H.has_loop() or not H.is_connected():
        return None
    degs = H.degrees()
    branch = sorted(v for v in H.vertices if degs[v] >= 3)
    if len(branch) != 2:
        return None
    a, b = branch
    if degs[a] != degs[b]:
        return None
    m = degs[a]
    if any(degs[v] != 2 for v in H.vertices if v not in (a, b)):
        return None
    covered: set[EdgeId] = set()
    adj = H.adjacency()
    for eid, w in adj[a]:
        if eid in covered:
            return None
        covered.add(eid)
        length = 1
        prev, cur = a, w
        while cur != b:
            if cur == a:
                return None
            nxt = [(e2, w2) for e2, w2 in adj[cur] if e2 not in covered]
            if len(nxt) != 1:
                return None
            e2, w2 = nxt[0]
            covered.add(e2)
            prev, cur = cur, w2
            length += 1
        if length < 2:
            return None
    if len(covered) != H.edge_count:
        return None
    return m


def has_induced_k23_subdivision(G: Multigraph) -> bool:
    """Whether some vertex subset of the simplification induces a K_{2,3}
    subdivision."""
    H, _ = G.simplify()
    verts = sorted(H.vertices)
    by_endpoints = [(e, u, v) for e, u, v in H.edges]
    for size in range(5, len(verts) + 1):
        for subset in combinations(verts, size):
            S = set(subset)
            inside = [e for e, u, v in by_endpoints if u in S and v in S]
            if len(inside) < size + 1:
                # a K_{2,3} subdivision on k vertices has k + 1 edges
                continue
            if len(inside) != size + 1:
                continue
            sub = H.restrict(inside)
            if sub.vertex_count == size and is_k2m_subdivision(sub) == 3:
                return True
    return False
