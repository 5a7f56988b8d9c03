"""Undirected multigraphs with stable edge identities.

Everything downstream (h-polynomials, ear decompositions, series-parallel
structure) is phrased in terms of edge ids, so the graph type is deliberately
dumb: a frozen set of vertices plus a tuple of (id, u, v) triples.  All
operations return new graphs; nothing is mutated in place.

Conventions that the rest of the package relies on:

* contracting an edge merges its endpoints into the smaller vertex id;
* contracting a loop is deletion;
* simplification keeps the minimum-id representative of each parallel class
  and drops loops;
* deleting edges keeps all vertices (use :meth:`Multigraph.restrict` for the
  edge-induced subgraph).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "VertexId",
    "EdgeId",
    "Multigraph",
    "cycle_cap",
    "all_cycles",
    "matroid_components",
    "matroid_connected",
    "parse_edge_list",
    "format_edge_list",
    "graph_to_json",
    "graph_from_json",
]

VertexId = int
EdgeId = int

# Brute-force enumeration guards.  BCX_MAX_EDGES overrides every one of them.
DEFAULT_CYCLE_CAP = 20


def cycle_cap(default: int = DEFAULT_CYCLE_CAP) -> int:
    """Size cap for exhaustive enumerations, overridable via BCX_MAX_EDGES."""
    raw = os.environ.get("BCX_MAX_EDGES")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"BCX_MAX_EDGES is not an integer: {raw!r}") from exc


@dataclass(frozen=True)
class Multigraph:
    """An undirected multigraph.  Loops and parallel edges are allowed.

    ``edges`` is sorted by edge id and endpoints are normalized to u <= v, so
    equality and hashing behave like value semantics on the underlying graph.
    """

    vertices: frozenset[VertexId]
    edges: tuple[tuple[EdgeId, VertexId, VertexId], ...]

    def __post_init__(self) -> None:
        seen: set[EdgeId] = set()
        for eid, u, v in self.edges:
            if eid in seen:
                raise ValueError(f"duplicate edge id {eid}")
            seen.add(eid)
            if u > v:
                raise ValueError(f"edge {eid}: endpoints not normalized")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {eid}: endpoint not a declared vertex")
        if list(self.edges) != sorted(self.edges):
            raise ValueError("edges not sorted by id")

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def of(
        cls,
        edges: Iterable[tuple[EdgeId, VertexId, VertexId]],
        extra_vertices: Iterable[VertexId] = (),
    ) -> "Multigraph":
        """Build a graph from (id, u, v) triples, normalizing as needed."""
        norm = []
        verts = set(extra_vertices)
        for eid, u, v in edges:
            if u > v:
                u, v = v, u
            norm.append((eid, u, v))
            verts.add(u)
            verts.add(v)
        norm.sort()
        return cls(frozenset(verts), tuple(norm))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[VertexId, VertexId]]) -> "Multigraph":
        """Build a graph from (u, v) pairs with edge ids assigned 1..m."""
        return cls.of((i, u, v) for i, (u, v) in enumerate(pairs, start=1))

    # ------------------------------------------------------------------
    # basic queries

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(eid for eid, _, _ in self.edges)

    def endpoints(self, eid: EdgeId) -> tuple[VertexId, VertexId]:
        for e, u, v in self.edges:
            if e == eid:
                return (u, v)
        raise KeyError(f"no edge with id {eid}")

    def is_loop(self, eid: EdgeId) -> bool:
        u, v = self.endpoints(eid)
        return u == v

    def has_loop(self) -> bool:
        return any(u == v for _, u, v in self.edges)

    def adjacency(self) -> dict[VertexId, list[tuple[EdgeId, VertexId]]]:
        """Adjacency lists over non-loop edges; loops are omitted."""
        adj: dict[VertexId, list[tuple[EdgeId, VertexId]]] = {
            v: [] for v in self.vertices
        }
        for eid, u, v in self.edges:
            if u == v:
                continue
            adj[u].append((eid, v))
            adj[v].append((eid, u))
        return adj

    def degrees(self) -> dict[VertexId, int]:
        """Vertex degrees; a loop contributes 2 to its vertex."""
        deg = {v: 0 for v in self.vertices}
        for _, u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree(self, v: VertexId) -> int:
        return self.degrees()[v]

    # ------------------------------------------------------------------
    # elementary operations

    def delete_edge(self, eid: EdgeId) -> "Multigraph":
        return self.delete_edges([eid])

    def delete_edges(self, ids: Iterable[EdgeId]) -> "Multigraph":
        """Remove edges, keeping every vertex (isolated ones included)."""
        drop = set(ids)
        missing = drop - set(self.edge_ids())
        if missing:
            raise KeyError(f"no edge with id {sorted(missing)[0]}")
        return Multigraph(
            self.vertices,
            tuple(e for e in self.edges if e[0] not in drop),
        )

    def restrict(self, ids: Iterable[EdgeId]) -> "Multigraph":
        """Edge-induced subgraph: keep the given edges and their endpoints."""
        keep = set(ids)
        missing = keep - set(self.edge_ids())
        if missing:
            raise KeyError(f"no edge with id {sorted(missing)[0]}")
        kept = tuple(e for e in self.edges if e[0] in keep)
        verts = frozenset(v for _, u, v in kept) | frozenset(u for _, u, v in kept)
        return Multigraph(verts, kept)

    def contract_edge(self, eid: EdgeId) -> "Multigraph":
        """Contract an edge; the surviving vertex is the smaller endpoint id.

        Contracting a loop deletes it.  Edges parallel to the contracted edge
        become loops at the merged vertex.
        """
        u, v = self.endpoints(eid)
        if u == v:
            return self.delete_edge(eid)
        new_edges = []
        for e, a, b in self.edges:
            if e == eid:
                continue
            if a == v:
                a = u
            if b == v:
                b = u
            new_edges.append((e, a, b))
        verts = self.vertices - {v}
        return Multigraph.of(new_edges, extra_vertices=verts)

    def simplify(self) -> tuple["Multigraph", dict[EdgeId, EdgeId]]:
        """Drop loops and collapse parallel classes to their min-id edge.

        Returns the simple graph and a map sending every non-loop edge id to
        the id of its class representative.
        """
        classes: dict[tuple[VertexId, VertexId], list[EdgeId]] = {}
        for eid, u, v in self.edges:
            if u == v:
                continue
            classes.setdefault((u, v), []).append(eid)
        rep_of: dict[EdgeId, EdgeId] = {}
        kept = []
        for (u, v), ids in classes.items():
            rep = min(ids)
            kept.append((rep, u, v))
            for eid in ids:
                rep_of[eid] = rep
        return Multigraph.of(kept, extra_vertices=self.vertices), rep_of

    # ------------------------------------------------------------------
    # connectivity and rank

    def connected_components(self) -> list[frozenset[VertexId]]:
        """Vertex sets of graph components; isolated vertices count."""
        seen: set[VertexId] = set()
        adj = self.adjacency()
        comps = []
        for start in sorted(self.vertices):
            if start in seen:
                continue
            comp = {start}
            frontier = [start]
            seen.add(start)
            while frontier:
                x = frontier.pop()
                for _, w in adj[x]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        frontier.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def rank(self) -> int:
        """Rank of the cycle matroid: |V| - (number of graph components)."""
        return self.vertex_count - len(self.connected_components())

    def nullity(self) -> int:
        """Corank |E| - |V| + (number of graph components)."""
        return self.edge_count - self.rank()

    def nu(self) -> int:
        """Number of vertices of degree at least 3."""
        return sum(1 for d in self.degrees().values() if d >= 3)

    # ------------------------------------------------------------------
    # serialization

    def to_json_obj(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": [{"id": e, "u": u, "v": v} for e, u, v in self.edges],
        }

    def edge_list_lines(self) -> list[str]:
        return [f"{u} {v} {e}" for e, u, v in self.edges]


def matroid_components(G: Multigraph) -> list[frozenset[EdgeId]]:
    """Partition of the edge set into connected components of the cycle matroid.

    These are the edge sets of the blocks of G: each loop and each bridge is
    its own component, and the remaining components are the maximal
    2-connected pieces.  Computed by a depth-first lowpoint search with an
    explicit edge stack, so parallel edges are handled exactly.
    """
    comps: list[frozenset[EdgeId]] = []
    adj: dict[VertexId, list[tuple[EdgeId, VertexId]]] = {
        v: [] for v in G.vertices
    }
    for eid, u, v in G.edges:
        if u == v:
            comps.append(frozenset([eid]))
            continue
        adj[u].append((eid, v))
        adj[v].append((eid, u))

    disc: dict[VertexId, int] = {}
    low: dict[VertexId, int] = {}
    used: set[EdgeId] = set()
    counter = 0
    for root in sorted(G.vertices):
        if root in disc or not adj[root]:
            continue
        disc[root] = low[root] = counter
        counter += 1
        estack: list[EdgeId] = []
        # stack entries: (vertex, adjacency iterator, tree edge to parent)
        stack: list[tuple[VertexId, Iterator[tuple[EdgeId, VertexId]], EdgeId | None]] = [
            (root, iter(adj[root]), None)
        ]
        while stack:
            u, it, parent_edge = stack[-1]
            descended = False
            for eid, w in it:
                if eid in used:
                    continue
                used.add(eid)
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    estack.append(eid)
                    stack.append((w, iter(adj[w]), eid))
                    descended = True
                    break
                estack.append(eid)
                if disc[w] < low[u]:
                    low[u] = disc[w]
            if descended:
                continue
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            if low[u] < low[p]:
                low[p] = low[u]
            if low[u] >= disc[p]:
                comp = []
                while True:
                    x = estack.pop()
                    comp.append(x)
                    if x == parent_edge:
                        break
                comps.append(frozenset(comp))
    comps.sort(key=lambda c: min(c))
    return comps


def matroid_connected(G: Multigraph) -> bool:
    """Whether the cycle matroid is connected.  Requires at least one edge."""
    if G.edge_count == 0:
        raise ValueError("matroid_connected requires a graph with at least one edge")
    return len(matroid_components(G)) == 1


def all_cycles(G: Multigraph) -> list[frozenset[EdgeId]]:
    """All circuits of the cycle matroid as edge-id sets.

    Loops appear as singletons; every other circuit is the edge set of a
    simple cycle.  Guarded by :func:`cycle_cap` since the count is
    exponential in general.
    """
    cap = cycle_cap()
    if G.edge_count > cap:
        raise ValueError(
            f"graph has {G.edge_count} edges; cycle enumeration capped at {cap} "
            "(set BCX_MAX_EDGES to override)"
        )
    cycles: list[frozenset[EdgeId]] = [
        frozenset([eid]) for eid, u, v in G.edges if u == v
    ]
    adj = G.adjacency()
    found: set[frozenset[EdgeId]] = set()

    def walk(
        start: VertexId,
        v: VertexId,
        path: list[EdgeId],
        on_path: set[EdgeId],
        visited: set[VertexId],
    ) -> None:
        for eid, w in adj[v]:
            if eid in on_path:
                continue
            if w == start:
                if path and eid > path[0]:
                    cyc = frozenset(path + [eid])
                    if cyc not in found:
                        found.add(cyc)
            elif w > start and w not in visited:
                path.append(eid)
                on_path.add(eid)
                visited.add(w)
                walk(start, w, path, on_path, visited)
                visited.discard(w)
                on_path.discard(eid)
                path.pop()

    for s in sorted(G.vertices):
        walk(s, s, [], set(), {s})
    cycles.extend(found)
    cycles.sort(key=lambda c: (len(c), sorted(c)))
    return cycles


# ----------------------------------------------------------------------
# text and JSON formats


def parse_edge_list(text: str) -> Multigraph:
    """Parse the edge-list format: one `u v [id]` per line, `#` comments.

    If no line carries an explicit id, ids are assigned 1..m in file order.
    Mixing explicit and implicit ids is rejected.
    """
    rows: list[tuple[int, VertexId, VertexId, EdgeId | None]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ValueError(
                f"line {lineno}: expected 'u v' or 'u v id', got {raw.strip()!r}"
            )
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer field in {raw.strip()!r}")
        u, v = nums[0], nums[1]
        eid = nums[2] if len(nums) == 3 else None
        rows.append((lineno, u, v, eid))
    if not rows:
        return Multigraph(frozenset(), ())
    explicit = [r for r in rows if r[3] is not None]
    if explicit and len(explicit) != len(rows):
        missing = next(r for r in rows if r[3] is None)
        raise ValueError(f"line {missing[0]}: id missing but other lines have ids")
    edges = []
    seen: dict[EdgeId, int] = {}
    for i, (lineno, u, v, eid) in enumerate(rows, start=1):
        if eid is None:
            eid = i
        if eid in seen:
            raise ValueError(
                f"line {lineno}: duplicate edge id {eid} (first used on line {seen[eid]})"
            )
        seen[eid] = lineno
        edges.append((eid, u, v))
    return Multigraph.of(edges)


def format_edge_list(G: Multigraph) -> str:
    return "\n".join(G.edge_list_lines()) + ("\n" if G.edges else "")


def graph_to_json(G: Multigraph) -> str:
    return json.dumps(G.to_json_obj())


def graph_from_json(text: str) -> Multigraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict) or "edges" not in obj:
        raise ValueError("line 1: JSON graph must be an object with an 'edges' list")
    edges = []
    for i, rec in enumerate(obj["edges"]):
        try:
            edges.append((int(rec["id"]), int(rec["u"]), int(rec["v"])))
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"edge record {i}: expected {{id, u, v}} integers")
    extra = [int(v) for v in obj.get("vertices", [])]
    return Multigraph.of(edges, extra_vertices=extra)
