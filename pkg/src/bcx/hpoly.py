"""h-polynomials of broken circuit complexes via deletion-contraction.

The h-polynomial of (the broken circuit complex of) a graph's cycle matroid
satisfies: zero if a loop is present, 1 for the empty edge set, x times the
rest for a coloop, and h(G-e) + h(G/e) otherwise.  The recursion here
additionally factors over matroid components at every level and simplifies
parallel classes away, which keeps series-parallel inputs fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .multigraph import Multigraph, cycle_cap, matroid_components

__all__ = [
    "IntPolynomial",
    "HVector",
    "h_poly",
    "h_vector",
    "delta_vector",
    "delta1",
    "f_vector",
    "beta",
    "beta_oracle",
    "h2_simple",
    "parallel_connection_h",
    "tutte",
    "format_poly",
]


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; coeffs[i] is the coefficient of x^i.

    The zero polynomial is the empty tuple, and no trailing zeros are stored,
    so equality is value equality.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing zero coefficient")

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> "IntPolynomial":
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial.of(self.coeff(i) + other.coeff(i) for i in range(n))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial.of(out)

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def divide_by_x(self) -> "IntPolynomial":
        if self.is_zero:
            return self
        if self.coeffs[0] != 0:
            raise ValueError("polynomial has nonzero constant term; not divisible by x")
        return IntPolynomial(self.coeffs[1:])

    def to_json_list(self) -> list[int]:
        """Coefficients lowest-degree-first."""
        return list(self.coeffs)


def format_poly(p: IntPolynomial) -> str:
    """Human form, highest degree first: x^7+4x^6+...+x."""
    if p.is_zero:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeff(i)
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            xpow = "x" if i == 1 else f"x^{i}"
            body = xpow if mag == 1 else f"{mag}{xpow}"
        parts.append(sign + body)
    return "".join(parts)


@dataclass(frozen=True)
class HVector:
    """h-vector (h_0 .. h_r) of the broken circuit complex, r = matroid rank."""

    r: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.r + 1:
            raise ValueError("h-vector must have r+1 entries")
        if any(c < 0 for c in self.coeffs):
            raise ValueError("h-vector entries must be nonnegative")

    @property
    def s(self) -> int:
        """Largest index with h_s != 0."""
        for i in range(self.r, -1, -1):
            if self.coeffs[i] != 0:
                return i
        raise ValueError("h-vector is identically zero")

    def delta(self) -> tuple[int, ...]:
        """(delta_0 .. delta_{floor(s/2)}) with delta_i = h_{s-i} - h_i."""
        s = self.s
        return tuple(self.coeffs[s - i] - self.coeffs[i] for i in range(s // 2 + 1))


# ----------------------------------------------------------------------
# the recursion

_X = IntPolynomial.x()
_ONE = IntPolynomial.one()


def h_poly(G: Multigraph) -> IntPolynomial:
    """h-polynomial of BC(M(G)); h_i is the coefficient of x^(r-i)."""
    if G.has_loop():
        return IntPolynomial.zero()
    simp, _ = G.simplify()
    return _h_simple(simp)


def _h_simple(G: Multigraph) -> IntPolynomial:
    """h-polynomial of a simple loopless graph, as a product over blocks."""
    result = _ONE
    for comp in matroid_components(G):
        if len(comp) == 1:
            result = result * _X
        else:
            result = result * _h_block(G.restrict(comp))
    return result


def _h_block(G: Multigraph) -> IntPolynomial:
    """Deletion-contraction step on a simple block with >= 2 edges."""
    pivot = G.edges[0][0]
    deleted = _h_simple(G.delete_edge(pivot))
    contracted = _h_simple(G.contract_edge(pivot).simplify()[0])
    return deleted + contracted


def h_vector(G: Multigraph) -> HVector:
    if G.has_loop():
        raise ValueError("h-vector undefined: graph has a loop")
    r = G.rank()
    p = h_poly(G)
    return HVector(r=r, coeffs=tuple(p.coeff(r - i) for i in range(r + 1)))


def delta_vector(G: Multigraph) -> tuple[int, ...]:
    """(delta_0 .. delta_{floor(s/2)}); empty for an edgeless graph."""
    if G.edge_count == 0:
        return ()
    return h_vector(G).delta()


def delta1(G: Multigraph) -> int:
    """delta_1, which is 0 whenever the delta-vector is too short to have it."""
    d = delta_vector(G)
    return d[1] if len(d) > 1 else 0


def f_vector(G: Multigraph) -> tuple[int, ...]:
    """Face counts (f_0 .. f_r) of BC(M(G)), from the h-vector transform."""
    hv = h_vector(G)
    r = hv.r
    return tuple(
        sum(math.comb(r - j, i - j) * hv.coeffs[j] for j in range(i + 1))
        for i in range(r + 1)
    )


def beta(G: Multigraph) -> int:
    """Crapo's beta invariant, read off as h_{r-1} (the x-coefficient)."""
    return h_poly(G).coeff(1)


def beta_oracle(G: Multigraph) -> int:
    """Beta by its defining alternating sum over all edge subsets."""
    cap = cycle_cap()
    if G.edge_count > cap:
        raise ValueError(
            f"graph has {G.edge_count} edges; beta_oracle capped at {cap} "
            "(set BCX_MAX_EDGES to override)"
        )
    verts = sorted(G.vertices)
    index = {v: i for i, v in enumerate(verts)}
    pairs = [(index[u], index[v]) for _, u, v in G.edges]
    n = len(verts)
    total = 0
    for mask in range(1 << len(pairs)):
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        rank_x = 0
        bits = mask
        i = 0
        while bits:
            if bits & 1:
                a, b = pairs[i]
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
                    rank_x += 1
            bits >>= 1
            i += 1
        total += (-1) ** bin(mask).count("1") * rank_x
    return (-1) ** G.rank() * total


def h2_simple(G: Multigraph) -> int:
    """h_2 of a simple connected graph: C(n-r+1, 2) minus the triangle count."""
    if G.has_loop():
        raise ValueError("h2_simple requires a simple graph (loop found)")
    seen_pairs: set[tuple[int, int]] = set()
    for _, u, v in G.edges:
        if (u, v) in seen_pairs:
            raise ValueError("h2_simple requires a simple graph (parallel edges found)")
        seen_pairs.add((u, v))
    if not G.is_connected():
        raise ValueError("h2_simple requires a connected graph")
    adjacent = seen_pairs
    triangles = sum(
        1
        for a, b, c in combinations(sorted(G.vertices), 3)
        if (a, b) in adjacent and (b, c) in adjacent and (a, c) in adjacent
    )
    n, r = G.edge_count, G.rank()
    return math.comb(n - r + 1, 2) - triangles


def parallel_connection_h(h1: IntPolynomial, h2: IntPolynomial) -> IntPolynomial:
    """h-polynomial of a parallel connection: the product divided by x."""
    return (h1 * h2).divide_by_x()


# ----------------------------------------------------------------------
# optional bivariate Tutte polynomial (used only for equality checks)


def tutte(G: Multigraph) -> dict[tuple[int, int], int]:
    """Tutte polynomial as {(i, j): coefficient of x^i y^j}."""
    if G.edge_count == 0:
        return {(0, 0): 1}
    eid = G.edges[0][0]
    if G.is_loop(eid):
        return _shift(tutte(G.delete_edge(eid)), 0, 1)
    without = G.delete_edge(eid)
    if len(without.connected_components()) > len(G.connected_components()):
        return _shift(tutte(G.contract_edge(eid)), 1, 0)
    out = dict(tutte(without))
    for key, c in tutte(G.contract_edge(eid)).items():
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v != 0}


def _shift(poly: dict[tuple[int, int], int], dx: int, dy: int) -> dict[tuple[int, int], int]:
    return {(i + dx, j + dy): c for (i, j), c in poly.items()}
