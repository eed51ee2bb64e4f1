"""Immutable small graphs on bitset adjacency rows, plus the graph6 codec.

Vertices are ``0..n-1``. A vertex set is a plain ``int`` whose bit ``v`` is
set when ``v`` is a member; every adjacency row is such a set. Python ints
are arbitrary precision, but graphs are capped at 64 vertices so a row always
fits one machine word in spirit and in the graph6 size header.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import DecodeError, InvalidArgument, InvalidSize, SizeLimit

MAX_VERTICES = 64

VertexSet = int


def bits(vertices: Iterable[int]) -> VertexSet:
    """Bitset holding ``vertices``."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> list[int]:
    """Vertices in ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def lowest(mask: VertexSet) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """Simple undirected graph with ``n`` vertices; immutable and hashable."""

    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, adj: Sequence[int]):
        if not 1 <= n <= MAX_VERTICES:
            raise InvalidSize(f"graphs need 1..{MAX_VERTICES} vertices, got {n}")
        adj = tuple(adj)
        if len(adj) != n:
            raise InvalidArgument(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        for u, row in enumerate(adj):
            if row & ~full:
                raise InvalidArgument(f"row {u} has bits at positions >= {n}")
            if row >> u & 1:
                raise InvalidArgument(f"loop at vertex {u}")
            for v in members(row):
                if not adj[v] >> u & 1:
                    raise InvalidArgument(f"edge {u}-{v} is not symmetric")
        self.n = n
        self.adj = adj
        self._m = -1

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> "Graph":
        # Skips validation; callers guarantee the invariants.
        g = object.__new__(cls)
        g.n = n
        g.adj = adj
        g._m = -1
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 1 <= n <= MAX_VERTICES:
            raise InvalidSize(f"graphs need 1..{MAX_VERTICES} vertices, got {n}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise InvalidArgument(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgument(f"edge {u}-{v} out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(n, tuple(adj))

    # -- basic queries -------------------------------------------------

    @property
    def vertex_mask(self) -> VertexSet:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        if self._m < 0:
            self._m = sum(row.bit_count() for row in self.adj) // 2
        return self._m

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidArgument(f"vertex {v} out of range for n={self.n}")

    def degree(self, v: int) -> int:
        self._check(v)
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> VertexSet:
        self._check(v)
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self.adj[u] >> v & 1)

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def min_degree(self) -> int:
        return min(row.bit_count() for row in self.adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            for v in members(row >> (u + 1)):
                yield u, u + 1 + v

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def is_clique(self, s: VertexSet) -> bool:
        """True when every two vertices of ``s`` are adjacent."""
        for v in members(s):
            if (s & ~(1 << v)) & ~self.adj[v]:
                return False
        return True

    # -- value semantics -----------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, g6={to_graph6(self)!r})"

    def __reduce__(self):
        return (Graph._trusted, (self.n, self.adj))


# -- connectivity ------------------------------------------------------


def reach(g: Graph, start: int, within: VertexSet) -> VertexSet:
    """Vertices of ``within`` reachable from ``start`` inside ``g[within]``."""
    adj = g.adj
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def components(g: Graph, within: VertexSet | None = None) -> list[VertexSet]:
    """Connected components, ordered by their smallest vertex."""
    rest = g.vertex_mask if within is None else within
    out = []
    while rest:
        comp = reach(g, lowest(rest), rest)
        out.append(comp)
        rest &= ~comp
    return out


def is_connected(g: Graph, within: VertexSet | None = None) -> bool:
    rest = g.vertex_mask if within is None else within
    if not rest:
        return True
    return reach(g, lowest(rest), rest) == rest


# -- constructors ------------------------------------------------------


def _size_ok(n: int) -> None:
    if not 1 <= n <= MAX_VERTICES:
        raise InvalidSize(f"graphs need 1..{MAX_VERTICES} vertices, got {n}")


def complete_graph(a: int) -> Graph:
    _size_ok(a)
    full = (1 << a) - 1
    return Graph._trusted(a, tuple(full & ~(1 << v) for v in range(a)))


def empty_graph(a: int) -> Graph:
    """``a`` isolated vertices, i.e. ``aK1``."""
    _size_ok(a)
    return Graph._trusted(a, (0,) * a)


def cycle_graph(a: int) -> Graph:
    if a < 3:
        raise InvalidSize(f"a cycle needs at least 3 vertices, got {a}")
    _size_ok(a)
    return Graph.from_edges(a, ((i, (i + 1) % a) for i in range(a)))


def path_graph(a: int) -> Graph:
    _size_ok(a)
    return Graph.from_edges(a, ((i, i + 1) for i in range(a - 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    if n > MAX_VERTICES:
        raise InvalidSize(f"union would have {n} > {MAX_VERTICES} vertices")
    shift = g.n
    return Graph._trusted(n, g.adj + tuple(row << shift for row in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    if n > MAX_VERTICES:
        raise InvalidSize(f"join would have {n} > {MAX_VERTICES} vertices")
    shift = g.n
    left = g.vertex_mask
    right = h.vertex_mask << shift
    return Graph._trusted(
        n,
        tuple(row | right for row in g.adj) + tuple((row << shift) | left for row in h.adj),
    )


def k_copies(k: int, g: Graph) -> Graph:
    if k < 1:
        raise InvalidArgument(f"need at least one copy, got {k}")
    if k * g.n > MAX_VERTICES:
        raise InvalidSize(f"{k} copies of a {g.n}-vertex graph exceed {MAX_VERTICES} vertices")
    out = g
    for _ in range(k - 1):
        out = disjoint_union(out, g)
    return out


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of ``g`` under ``v -> perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise InvalidArgument("perm must be a permutation of the vertices")
    adj = [0] * g.n
    for u, row in enumerate(g.adj):
        img = 0
        for v in members(row):
            img |= 1 << perm[v]
        adj[perm[u]] = img
    return Graph._trusted(g.n, tuple(adj))


def induced_subgraph(g: Graph, s: VertexSet) -> Graph:
    """``g[s]`` with the members of ``s`` renumbered 0.. in increasing order."""
    if s == 0:
        raise InvalidArgument("induced subgraph of the empty set")
    if s & ~g.vertex_mask:
        raise InvalidArgument("vertex set contains vertices outside the graph")
    keep = members(s)
    index = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        row = 0
        for w in members(g.adj[v] & s):
            row |= 1 << index[w]
        adj.append(row)
    return Graph._trusted(len(keep), tuple(adj))


def delete_vertices(g: Graph, s: VertexSet) -> Graph:
    """``g - s``; raises if nothing would remain."""
    return induced_subgraph(g, g.vertex_mask & ~s)


def add_vertex(g: Graph, neighborhood: VertexSet) -> Graph:
    """``g`` plus a new vertex ``g.n`` adjacent to ``neighborhood``."""
    n = g.n + 1
    if n > MAX_VERTICES:
        raise InvalidSize(f"graph would exceed {MAX_VERTICES} vertices")
    new = 1 << g.n
    adj = tuple(row | new if neighborhood >> u & 1 else row for u, row in enumerate(g.adj))
    return Graph._trusted(n, adj + (neighborhood,))


def validate(g: Graph) -> None:
    """Re-check the structural invariants of ``g``; raises InvalidArgument."""
    Graph(g.n, g.adj)


# -- graph6 ------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def to_graph6(g: Graph) -> str:
    """graph6 string (no header, no newline)."""
    out = [_encode_n(g.n)]
    acc = 0
    nbits = 0
    adj = g.adj
    for j in range(1, g.n):
        row = adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str, line: int | None = None) -> Graph:
    """Decode one graph6 string; the optional ``>>graph6<<`` header is accepted."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise DecodeError("empty graph6 string", line)
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise DecodeError(f"character outside graph6 range in {s!r}", line)
    if codes[0] == 63:
        if len(codes) < 4:
            raise DecodeError("truncated size header", line)
        if codes[1] == 63:
            raise DecodeError("graph too large for graph6 size header support", line)
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        body = codes[4:]
    else:
        n = codes[0]
        body = codes[1:]
    if n < 1:
        raise DecodeError("graph6 string encodes zero vertices", line)
    if n > MAX_VERTICES:
        where = f"line {line}: " if line is not None else ""
        raise SizeLimit(f"{where}graph has {n} > {MAX_VERTICES} vertices")
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise DecodeError(f"expected {(need + 5) // 6} data bytes for n={n}, got {len(body)}", line)
    adj = [0] * n
    k = 0
    i, j = 0, 1
    for c in body:
        for shift in range(5, -1, -1):
            if k == need:
                if c & ((1 << (shift + 1)) - 1):
                    raise DecodeError("nonzero padding bits", line)
                break
            if c >> shift & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph._trusted(n, tuple(adj))
