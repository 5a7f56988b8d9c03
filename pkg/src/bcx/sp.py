"""Series-parallel structure: recognition, series classes, lines,
removability, and the parallel-irreducible decomposition of a block.

Two edges belong to one series class when together they form a 2-edge cut.
A line is a maximal path through degree-2 vertices.  An edge set is
removable when deleting it leaves a block on the remaining edges.  The
splitter set F(G) collects the edges whose contraction separates the cycle
matroid; splitting at those edges recursively yields the parallel
decomposition, whose leaves admit no further split.
"""

from __future__ import annotations

from dataclasses import dataclass

from .multigraph import EdgeId, Multigraph, matroid_components

__all__ = [
    "LineSet",
    "DecompositionLeaf",
    "DecompositionSplit",
    "ParallelDecomposition",
    "is_series_parallel",
    "series_classes",
    "lines",
    "is_removable",
    "mu",
    "F_edges",
    "F_bar",
    "is_parallel_irreducible",
    "parallel_decomposition",
    "contract_series_subset",
    "blocks",
]


def _require_block(G: Multigraph, min_edges: int = 1) -> None:
    if G.edge_count < min_edges:
        raise ValueError(f"operation requires a block with >= {min_edges} edges")
    if not G.is_connected() or len(matroid_components(G)) != 1:
        raise ValueError("operation requires a block")


def blocks(G: Multigraph) -> tuple[Multigraph, ...]:
    """The blocks of G as edge-induced subgraphs, ordered by smallest edge."""
    if G.edge_count == 0:
        return ()
    return tuple(G.restrict(sorted(c)) for c in matroid_components(G))


def is_series_parallel(G: Multigraph) -> bool:
    """Whether the cycle matroid of the block G is series-parallel.

    Reduction order does not matter: parallel pairs collapse first, then
    degree-2 vertices are suppressed; G is series-parallel exactly when this
    reaches a single edge.
    """
    _require_block(G)
    if G.has_loop():
        return False
    pairs = [G.endpoints(e) for e in G.edge_ids()]
    while len(pairs) > 1:
        seen: set[tuple[int, int]] = set()
        dup = None
        for idx, uv in enumerate(pairs):
            if uv in seen:
                dup = idx
                break
            seen.add(uv)
        if dup is not None:
            pairs.pop(dup)
            continue
        deg: dict[int, int] = {}
        for u, v in pairs:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        target = next((w for w in sorted(deg) if deg[w] == 2), None)
        if target is None:
            return False
        inc = [i for i, (u, v) in enumerate(pairs) if target in (u, v)]
        i1, i2 = inc
        ends = []
        for i in (i1, i2):
            u, v = pairs[i]
            ends.append(u if v == target else v)
        # distinct by the parallel check above
        n1, n2 = ends
        pairs = [uv for i, uv in enumerate(pairs) if i not in (i1, i2)]
        pairs.append((min(n1, n2), max(n1, n2)))
    return True


def series_classes(G: Multigraph) -> tuple[frozenset[EdgeId], ...]:
    """Partition of the edges by the 2-edge-cut relation, sorted by min id."""
    _require_block(G)
    ids = G.edge_ids()
    if len(ids) == 1:
        return (frozenset(ids),)
    base = len(G.connected_components())
    parent = {e: e for e in ids}

    def find(e: EdgeId) -> EdgeId:
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for i, e in enumerate(ids):
        for f in ids[i + 1 :]:
            if find(e) == find(f):
                continue
            if len(G.delete_edges([e, f]).connected_components()) > base:
                parent[find(f)] = find(e)
    groups: dict[EdgeId, set[EdgeId]] = {}
    for e in ids:
        groups.setdefault(find(e), set()).add(e)
    return tuple(
        frozenset(c) for c in sorted(groups.values(), key=min)
    )


def is_removable(G: Multigraph, X: frozenset[EdgeId] | set[EdgeId]) -> bool:
    """Whether deleting X leaves a block on the remaining edges."""
    rest = [e for e in G.edge_ids() if e not in X]
    if not rest:
        return False
    H = G.restrict(rest)
    return H.is_connected() and len(matroid_components(H)) == 1


@dataclass(frozen=True)
class LineSet:
    graph: Multigraph
    lines: tuple[frozenset[EdgeId], ...]
    removable_lines: tuple[bool, ...]
    series_classes: tuple[frozenset[EdgeId], ...]
    removable_classes: tuple[bool, ...]

    def removable_line_sets(self) -> frozenset[frozenset[EdgeId]]:
        return frozenset(
            ln for ln, ok in zip(self.lines, self.removable_lines) if ok
        )

    def removable_class_sets(self) -> frozenset[frozenset[EdgeId]]:
        return frozenset(
            c for c, ok in zip(self.series_classes, self.removable_classes) if ok
        )


def lines(G: Multigraph) -> LineSet:
    """Maximal degree-2 paths of a block, with removability flags.

    When every vertex has degree 2 the whole edge set is one closed line.
    """
    _require_block(G)
    deg = G.degrees()
    found: list[frozenset[EdgeId]] = []
    if all(deg[v] == 2 for v in G.vertices):
        found.append(frozenset(G.edge_ids()))
    else:
        adj = G.adjacency()
        seen: set[frozenset[EdgeId]] = set()
        anchors = [v for v in sorted(G.vertices) if deg[v] != 2]
        for a in anchors:
            for eid, w in adj[a]:
                walk = [eid]
                cur = w
                while deg[cur] == 2:
                    e2, w2 = next(
                        (p, q) for p, q in adj[cur] if p != walk[-1]
                    )
                    walk.append(e2)
                    cur = w2
                key = frozenset(walk)
                if key not in seen:
                    seen.add(key)
                    found.append(key)
    found.sort(key=min)
    classes = series_classes(G)
    return LineSet(
        graph=G,
        lines=tuple(found),
        removable_lines=tuple(is_removable(G, ln) for ln in found),
        series_classes=classes,
        removable_classes=tuple(is_removable(G, c) for c in classes),
    )


def _is_circuit(G: Multigraph, X: frozenset[EdgeId]) -> bool:
    """Whether X is the edge set of a single cycle of G."""
    if not X:
        return False
    H = G.restrict(sorted(X))
    if H.edge_count != len(X) or not H.is_connected() or H.nullity() != 1:
        return False
    degs = H.degrees()
    return all(degs[v] == 2 for v in H.vertices)


def mu(G: Multigraph) -> int:
    """Number of vertex pairs joined by a removable line.

    Equivalently: removable series classes, counted up to the relation that
    identifies two classes whose union is a circuit.
    """
    _require_block(G)
    rem = [c for c in series_classes(G) if is_removable(G, c)]
    parent = list(range(len(rem)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(rem)):
        for j in range(i + 1, len(rem)):
            if find(i) != find(j) and _is_circuit(G, rem[i] | rem[j]):
                parent[find(j)] = find(i)
    return len({find(i) for i in range(len(rem))})


# ----------------------------------------------------------------------
# splitting and the parallel decomposition


def F_edges(G: Multigraph) -> frozenset[EdgeId]:
    """Edges whose contraction separates the cycle matroid."""
    _require_block(G, min_edges=2)
    out = set()
    for e in G.edge_ids():
        contracted = G.contract_edge(e)
        if contracted.edge_count == 0:
            continue
        if len(matroid_components(contracted)) >= 2:
            out.add(e)
    return frozenset(out)


def F_bar(G: Multigraph) -> frozenset[EdgeId]:
    """F restricted to the simplification's representative edges."""
    _, rep_of = G.simplify()
    reps = set(rep_of.values())
    return frozenset(e for e in F_edges(G) if e in reps)


def is_parallel_irreducible(G: Multigraph) -> bool:
    _require_block(G)
    if G.edge_count == 1:
        return True
    return not F_edges(G)


@dataclass(frozen=True)
class DecompositionLeaf:
    graph: Multigraph

    def to_json_obj(self) -> dict:
        return {"edges": sorted(self.graph.edge_ids())}


@dataclass(frozen=True)
class DecompositionSplit:
    baseedge: EdgeId
    children: tuple[DecompositionLeaf | DecompositionSplit, ...]

    def to_json_obj(self) -> dict:
        return {
            "baseedge": self.baseedge,
            "children": [c.to_json_obj() for c in self.children],
        }


@dataclass(frozen=True)
class ParallelDecomposition:
    graph: Multigraph
    root: DecompositionLeaf | DecompositionSplit

    def leaves(self) -> tuple[DecompositionLeaf, ...]:
        out: list[DecompositionLeaf] = []

        def visit(node: DecompositionLeaf | DecompositionSplit) -> None:
            if isinstance(node, DecompositionLeaf):
                out.append(node)
            else:
                for c in node.children:
                    visit(c)

        visit(self.root)
        return tuple(out)

    def baseedges(self) -> tuple[EdgeId, ...]:
        """Baseedge multiset: a split into k parts uses its edge k-1 times."""
        out: list[EdgeId] = []

        def visit(node: DecompositionLeaf | DecompositionSplit) -> None:
            if isinstance(node, DecompositionSplit):
                out.extend([node.baseedge] * (len(node.children) - 1))
                for c in node.children:
                    visit(c)

        visit(self.root)
        return tuple(sorted(out))

    def distinct_baseedges(self) -> frozenset[EdgeId]:
        return frozenset(self.baseedges())

    def to_json_obj(self) -> dict:
        return {
            "leaves": [leaf.to_json_obj() for leaf in self.leaves()],
            "baseedges": list(self.baseedges()),
            "tree": self.root.to_json_obj(),
        }

    def to_dot(self) -> str:
        base = set(self.baseedges())
        out = ["graph decomposition {"]
        for i, leaf in enumerate(self.leaves()):
            out.append(f"  subgraph cluster_{i} {{")
            out.append(f'    label="component {i}";')
            for e, u, v in leaf.graph.edges:
                attrs = f'label="{e}"'
                if e in base:
                    attrs += ", color=red, penwidth=2"
                out.append(f'    "{i}_{u}" -- "{i}_{v}" [{attrs}];')
            out.append("  }")
        out.append("}")
        return "\n".join(out) + "\n"


def parallel_decomposition(G: Multigraph) -> ParallelDecomposition:
    """Recursive split of a block at its smallest splitter edges."""
    _require_block(G)

    def build(H: Multigraph) -> DecompositionLeaf | DecompositionSplit:
        if H.edge_count == 1 or not (F := F_bar(H)):
            return DecompositionLeaf(H)
        e = min(F)
        parts = matroid_components(H.contract_edge(e))
        children = tuple(
            build(H.restrict(sorted(set(part) | {e}))) for part in parts
        )
        return DecompositionSplit(e, children)

    return ParallelDecomposition(G, build(G))


def contract_series_subset(G: Multigraph, X: frozenset[EdgeId] | set[EdgeId]) -> Multigraph:
    """Contract all but the smallest edge of X, a piece of one series class.

    X must have at least two edges, lie inside a single series class, and
    not complete to a circuit by one further edge.
    """
    X = frozenset(X)
    if len(X) < 2:
        raise ValueError("X must contain at least two edges")
    if not any(X <= c for c in series_classes(G)):
        raise ValueError("X is not contained in one series class")
    for f in G.edge_ids():
        if f not in X and _is_circuit(G, X | {f}):
            raise ValueError(f"X plus edge {f} forms a circuit")
    keep = min(X)
    H = G
    for e in sorted(X - {keep}):
        H = H.contract_edge(e)
    return H
