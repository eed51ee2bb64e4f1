"""Canonical forms and isomorph-free streams of small graphs.

Canonical labeling is individualization-refinement: the vertex partition is
refined to an equitable one, a vertex of the first smallest non-singleton
cell is individualized, and the search recurses. The canonical labeling is
the leaf whose relabeled adjacency rows are lexicographically least. Leaves
with equal certificates expose automorphisms, which prune children lying in
an already explored orbit.

Generation extends every connected class on ``n-1`` vertices by one vertex
with every neighborhood, keeps a candidate only when the new vertex is among
the least-keyed non-cut vertices (a cheap canonical-deletion filter), and
deduplicates the survivors by canonical key.
"""

from __future__ import annotations

import os
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import SizeLimit
from .graph import Graph, bits, from_graph6, members, reach, to_graph6

MAX_ENUMERATION_ORDER = 10

CanonicalKey = bytes


def _refine(adj: Sequence[int], cells: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    queue = [bits(c) for c in cells]
    qi = 0
    while qi < len(queue) and len(cells) < n:
        w = queue[qi]
        qi += 1
        out = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            counts = [(adj[v] & w).bit_count() for v in c]
            first = counts[0]
            for x in counts:
                if x != first:
                    break
            else:
                out.append(c)
                continue
            groups: dict[int, list[int]] = {}
            for v, x in zip(c, counts):
                groups.setdefault(x, []).append(v)
            for x in sorted(groups):
                frag = tuple(groups[x])
                out.append(frag)
                queue.append(bits(frag))
            split = True
        if split:
            cells = out
    return cells


class _Search:
    __slots__ = ("adj", "n", "best_cert", "best_order", "autos")

    def __init__(self, adj: Sequence[int], n: int):
        self.adj = adj
        self.n = n
        self.best_cert: tuple[int, ...] | None = None
        self.best_order: list[int] | None = None
        self.autos: list[list[int]] = []

    def leaf(self, cells: list[tuple[int, ...]]) -> None:
        order = [c[0] for c in cells]
        pos = [0] * self.n
        for p, v in enumerate(order):
            pos[v] = p
        adj = self.adj
        rows = []
        for v in order:
            row = 0
            r = adj[v]
            while r:
                low = r & -r
                row |= 1 << pos[low.bit_length() - 1]
                r ^= low
            rows.append(row)
        cert = tuple(rows)
        if self.best_cert is None or cert < self.best_cert:
            self.best_cert = cert
            self.best_order = order
        elif cert == self.best_cert:
            gamma = [0] * self.n
            for a, b in zip(self.best_order, order):
                gamma[a] = b
            self.autos.append(gamma)

    def node(self, cells: list[tuple[int, ...]], fixed: list[int]) -> None:
        if len(cells) == self.n:
            self.leaf(cells)
            return
        ti = -1
        size = self.n + 1
        for i, c in enumerate(cells):
            if 1 < len(c) < size:
                ti, size = i, len(c)
                if size == 2:
                    break
        target = cells[ti]
        done: list[int] = []
        for v in target:
            if done and self._equivalent(v, done, fixed, target):
                continue
            rest = tuple(w for w in target if w != v)
            child = cells[:ti] + [(v,), rest] + cells[ti + 1:]
            self.node(_refine(self.adj, child, self.n), fixed + [v])
            done.append(v)

    def _equivalent(self, v: int, done: list[int], fixed: list[int], target: tuple[int, ...]) -> bool:
        # orbit of v under found automorphisms that fix `fixed` pointwise
        gens = [g for g in self.autos if all(g[f] == f for f in fixed)]
        if not gens:
            return False
        orbit = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        return any(u in orbit for u in done)


def canonical_labeling(g: Graph, colors: Sequence[int] | None = None) -> list[int]:
    """Canonical vertex order: ``order[p]`` is the vertex placed at label ``p``.

    ``colors`` optionally restricts labelings to those preserving a vertex
    coloring (vertices of smaller color get smaller labels).
    """
    n = g.n
    adj = g.adj
    if colors is None:
        keys = [row.bit_count() for row in adj]
    else:
        keys = [(colors[v], adj[v].bit_count()) for v in range(n)]
    groups: dict = {}
    for v in range(n):
        groups.setdefault(keys[v], []).append(v)
    cells = [tuple(groups[k]) for k in sorted(groups)]
    search = _Search(adj, n)
    search.node(_refine(adj, cells, n), [])
    assert search.best_order is not None
    return search.best_order


def canonical_graph(g: Graph) -> Graph:
    """The canonically relabeled copy of ``g``."""
    order = canonical_labeling(g)
    pos = [0] * g.n
    for p, v in enumerate(order):
        pos[v] = p
    adj = [0] * g.n
    for v in range(g.n):
        row = 0
        for w in members(g.adj[v]):
            row |= 1 << pos[w]
        adj[pos[v]] = row
    return Graph._trusted(g.n, tuple(adj))


def canonical_form(g: Graph) -> CanonicalKey:
    """Relabeling-invariant key; equal keys exactly when graphs are isomorphic."""
    return to_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)


# -- generation --------------------------------------------------------


def _extensions(parent: Graph, connected: bool) -> Iterator[Graph]:
    """Children of ``parent`` that pass the canonical-deletion filter."""
    n0 = parent.n
    padj = parent.adj
    pdeg = [row.bit_count() for row in padj]
    full = (1 << n0) - 1
    # Components of parent - u, used to decide whether u is a cut vertex of the child.
    if connected:
        pieces = []
        for u in range(n0):
            rest = full & ~(1 << u)
            comps = []
            while rest:
                c = reach(parent, (rest & -rest).bit_length() - 1, rest)
                comps.append(c)
                rest &= ~c
            pieces.append(comps)
    new_bit = 1 << n0
    for nb in range(1 if connected else 0, 1 << n0):
        d = nb.bit_count()
        deg = [pdeg[u] + (nb >> u & 1) for u in range(n0)]
        if min(deg) < d:
            ok = True
            for u in range(n0):
                if deg[u] < d:
                    if not connected:
                        ok = False
                        break
                    others = nb & ~(1 << u)
                    if others and all(c & others for c in pieces[u]):
                        ok = False
                        break
            if not ok:
                continue
        if d and min(deg) <= d:
            # tie-break on the neighbor-degree sum among equal-degree candidates
            vsum = sum(deg[u] for u in members(nb))
            reject = False
            for u in range(n0):
                if deg[u] != d:
                    continue
                if connected:
                    others = nb & ~(1 << u)
                    if not (others and all(c & others for c in pieces[u])):
                        continue
                usum = sum(deg[w] for w in members(padj[u])) + (d if nb >> u & 1 else 0)
                if usum < vsum:
                    reject = True
                    break
            if reject:
                continue
        adj = tuple(row | new_bit if nb >> u & 1 else row for u, row in enumerate(padj)) + (nb,)
        yield Graph._trusted(n0 + 1, adj)


def _generate_level(parents: Iterable[Graph], connected: bool) -> list[Graph]:
    seen: set[tuple[int, ...]] = set()
    out = []
    for p in parents:
        for child in _extensions(p, connected):
            c = canonical_graph(child)
            if c.adj not in seen:
                seen.add(c.adj)
                out.append(c)
    return out


def _cache_dir() -> Path | None:
    root = os.environ.get("TFL_CACHE")
    if root == "":
        return None
    if root is None:
        root = os.path.join(os.path.expanduser("~"), ".cache", "tfl")
    return Path(root)


_LEVELS: dict[tuple[int, bool], list[Graph]] = {}

_CACHE_MIN_ORDER = 8


def _level(n: int, connected: bool) -> list[Graph]:
    key = (n, connected)
    if key in _LEVELS:
        return _LEVELS[key]
    cache = _cache_dir()
    path = None
    if cache is not None and n >= _CACHE_MIN_ORDER:
        path = cache / f"{'connected' if connected else 'all'}-{n}.g6"
        if path.exists():
            graphs = [from_graph6(line) for line in path.read_text().split()]
            _LEVELS[key] = graphs
            return graphs
    if n == 1:
        graphs = [Graph._trusted(1, (0,))]
    else:
        graphs = _generate_level(_level(n - 1, connected), connected)
    _LEVELS[key] = graphs
    if path is not None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text("".join(to_graph6(g) + "\n" for g in graphs))
            tmp.replace(path)
        except OSError:
            pass
    return graphs


def connected_graphs(n: int, start: int = 0) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected graphs.

    ``start`` resumes the stream at a class index (checkpoint cursors).
    """
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise SizeLimit(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}")
    graphs = _level(n, True)
    for i in range(start, len(graphs)):
        yield graphs[i]


def all_graphs(n: int, start: int = 0) -> Iterator[Graph]:
    """Like :func:`connected_graphs` but including disconnected classes."""
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise SizeLimit(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}")
    graphs = _level(n, False)
    for i in range(start, len(graphs)):
        yield graphs[i]


def count_connected(n: int) -> int:
    return len(_level(n, True))


# -- graph6 corpora ----------------------------------------------------


def read_graph6_stream(path: str | os.PathLike) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for each non-blank line of a graph6 file."""
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            yield lineno, from_graph6(text, line=lineno)


def labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices (2^(n choose 2) of them); for oracles."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        yield Graph._trusted(n, tuple(adj))
