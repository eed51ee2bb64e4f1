"""The exceptional family and the two sharpness joins.

The exceptional graphs are a clique on ``n-2`` vertices and a disjoint edge
``v y``, with ``v`` joined to ``t`` clique vertices (``1 <= t <= n-2``). In
the standard naming ``t = 1`` is G3, ``t = 2`` is G1 and ``t = n-2`` is G2;
every ``t`` from 2 to ``n-2`` is a graph squeezed between G1 and G2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidArgument, InvalidSize
from .graph import (
    MAX_VERTICES,
    Graph,
    complete_graph,
    empty_graph,
    join,
    k_copies,
    lowest,
)

G_FAMILY = "G-family"
SHARPNESS = "sharpness"
ALPHA_SHARPNESS = "alpha-sharpness"


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: str
    n: int
    t: int | None = None
    k: int | None = None

    @property
    def name(self) -> str:
        if self.kind != G_FAMILY:
            return f"{self.kind}({self.k})"
        if self.t == 1:
            return f"G3({self.n})"
        if self.t == 2:
            return f"G1({self.n})"
        if self.t == self.n - 2:
            return f"G2({self.n})"
        return f"G(n={self.n}, t={self.t})"

    def build(self) -> Graph:
        if self.kind == G_FAMILY:
            return build_g_family(self.n, self.t)
        if self.kind == SHARPNESS:
            return sharpness_graph(self.k)
        if self.kind == ALPHA_SHARPNESS:
            return alpha_sharpness_graph(self.k)
        raise InvalidArgument(f"unknown family kind {self.kind!r}")

    def as_dict(self) -> dict:
        out: dict = {"kind": self.kind, "name": self.name, "n": self.n}
        if self.t is not None:
            out["t"] = self.t
        if self.k is not None:
            out["k"] = self.k
        return out


def build_g_family(n: int, t: int) -> Graph:
    """Clique on 0..n-3, edge (n-2, n-1), and vertex n-2 joined to clique vertices 0..t-1."""
    if n < 5 or n > MAX_VERTICES:
        raise InvalidArgument(f"exceptional graphs need 5 <= n <= {MAX_VERTICES}, got n={n}")
    if not 1 <= t <= n - 2:
        raise InvalidArgument(f"attachment count must satisfy 1 <= t <= n-2, got t={t} for n={n}")
    clique = (1 << (n - 2)) - 1
    v, y = n - 2, n - 1
    attach = (1 << t) - 1
    adj = []
    for u in range(n - 2):
        row = clique & ~(1 << u)
        if u < t:
            row |= 1 << v
        adj.append(row)
    adj.append(attach | (1 << y))
    adj.append(1 << v)
    return Graph._trusted(n, tuple(adj))


def is_in_family_g(g: Graph) -> FamilyDescriptor | None:
    """Descriptor when ``g`` is isomorphic to some ``build_g_family(n, t)``, else None."""
    n = g.n
    if n < 5:
        return None
    degs = g.degrees()
    ones = [u for u in range(n) if degs[u] == 1]
    if len(ones) != 1:
        return None
    y = ones[0]
    v = lowest(g.adj[y])
    rest = g.vertex_mask & ~((1 << y) | (1 << v))
    if not g.is_clique(rest):
        return None
    t = (g.adj[v] & rest).bit_count()
    if t < 1 or g.adj[v] & ~rest != 1 << y:
        return None
    from .enumeration import is_isomorphic

    if not is_isomorphic(g, build_g_family(n, t)):  # pragma: no cover - structural test is exact
        return None
    return FamilyDescriptor(G_FAMILY, n, t=t)


def _check_k(k: int, order: int) -> None:
    if k < 1:
        raise InvalidArgument(f"k must be >= 1, got {k}")
    if order > MAX_VERTICES:
        raise InvalidSize(f"order {order} exceeds {MAX_VERTICES} vertices")


def sharpness_graph(k: int) -> Graph:
    """``(k+1)K2`` joined with ``kK1``; order ``3k+2``. The K2 copies come first."""
    _check_k(k, 3 * k + 2)
    return join(k_copies(k + 1, complete_graph(2)), empty_graph(k))


def alpha_sharpness_graph(k: int) -> Graph:
    """``(k+2)K2`` joined with ``kK1``; order ``3k+4``."""
    _check_k(k, 3 * k + 4)
    return join(k_copies(k + 2, complete_graph(2)), empty_graph(k))


def sandwich_graphs(n: int):
    """Every labeled graph between G1(n) and G2(n) on the shared vertex labels.

    G1(n) and G2(n) as built here differ exactly in the edges from vertex
    n-2 to clique vertices 2..n-3, so the sandwich is all subsets of those.
    """
    g1 = build_g_family(n, 2)
    extra = list(range(2, n - 2))
    for mask in range(1 << len(extra)):
        adj = list(g1.adj)
        for i, u in enumerate(extra):
            if mask >> i & 1:
                adj[u] |= 1 << (n - 2)
                adj[n - 2] |= 1 << u
        yield Graph._trusted(n, tuple(adj))
