"""Brute-force broken circuit complexes from explicit edge orderings.

This module never touches the deletion-contraction recursion: it enumerates
circuits, forms broken circuits for a given linear order on the edges, and
counts the faces of the resulting complex directly.  Its output is the
independent cross-check for everything hpoly computes.
"""

from __future__ import annotations

from typing import Sequence

from .multigraph import EdgeId, Multigraph, all_cycles, cycle_cap

__all__ = ["broken_circuits", "bc_fvector"]


def _ordering_positions(
    G: Multigraph, ordering: Sequence[EdgeId] | None
) -> dict[EdgeId, int]:
    ids = G.edge_ids()
    if ordering is None:
        ordering = sorted(ids)
    if sorted(ordering) != sorted(ids):
        raise ValueError("ordering must be a permutation of the graph's edge ids")
    return {e: i for i, e in enumerate(ordering)}


def broken_circuits(
    G: Multigraph, ordering: Sequence[EdgeId] | None = None
) -> list[frozenset[EdgeId]]:
    """Each circuit minus its least edge under the ordering, deduplicated.

    Defaults to ascending edge id.  Loops are rejected: a loop's broken
    circuit would be the empty set, which kills the whole complex.
    """
    if G.has_loop():
        raise ValueError("broken circuits undefined: graph has a loop")
    cap = cycle_cap()
    if G.edge_count > cap:
        raise ValueError(
            f"graph has {G.edge_count} edges; broken-circuit enumeration capped "
            f"at {cap} (set BCX_MAX_EDGES to override)"
        )
    pos = _ordering_positions(G, ordering)
    out = {frozenset(c - {min(c, key=pos.__getitem__)}) for c in all_cycles(G)}
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def bc_fvector(
    G: Multigraph, ordering: Sequence[EdgeId] | None = None
) -> tuple[int, ...]:
    """Face numbers (f_0 .. f_r) of the broken circuit complex.

    Depth-first over edges, keeping only acyclic subsets (faces are always
    forests) and rejecting any subset that completes a broken circuit.
    """
    pos = _ordering_positions(G, ordering)
    order = sorted(G.edge_ids(), key=pos.__getitem__)
    bit = {e: 1 << i for i, e in enumerate(order)}
    bcs = broken_circuits(G, ordering)

    # A subset completes broken circuit B exactly when the last-added edge is
    # B's highest-position member and the rest of B is already present.
    blockers: list[list[int]] = [[] for _ in order]
    for b in bcs:
        last = max(b, key=pos.__getitem__)
        rest = 0
        for e in b:
            if e != last:
                rest |= bit[e]
        blockers[order.index(last)].append(rest)

    verts = sorted(G.vertices)
    vindex = {v: i for i, v in enumerate(verts)}
    ends = []
    for e in order:
        u, v = G.endpoints(e)
        ends.append((vindex[u], vindex[v]))

    parent = list(range(len(verts)))
    size = [1] * len(verts)
    trail: list[tuple[int, int]] = []

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def union(a: int, b: int) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        if size[ra] < size[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        size[ra] += size[rb]
        trail.append((rb, ra))
        return True

    def undo() -> None:
        rb, ra = trail.pop()
        parent[rb] = rb
        size[ra] -= size[rb]

    counts = [0] * (G.rank() + 1)
    counts[0] = 1

    def extend(start: int, mask: int, sz: int) -> None:
        for i in range(start, len(order)):
            a, b = ends[i]
            if find(a) == find(b):
                continue
            if any(rest & mask == rest for rest in blockers[i]):
                continue
            union(a, b)
            counts[sz + 1] += 1
            extend(i + 1, mask | bit[order[i]], sz + 1)
            undo()

    extend(0, 0, 0)
    return tuple(counts)
