"""Independence number and vertex connectivity, exactly, with witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, VertexSet, bits, is_connected, members


@dataclass(frozen=True)
class IndependenceWitness:
    size: int
    set: VertexSet

    @property
    def vertices(self) -> list[int]:
        return members(self.set)


@dataclass(frozen=True)
class ConnectivityWitness:
    kappa: int
    cut: VertexSet  # 0 for complete graphs

    @property
    def vertices(self) -> list[int]:
        return members(self.cut)


# -- independence ------------------------------------------------------


def is_independent_set(g: Graph, s: VertexSet) -> bool:
    adj = g.adj
    rest = s
    while rest:
        low = rest & -rest
        if adj[low.bit_length() - 1] & s:
            return False
        rest ^= low
    return True


def _clique_cover_bound(adj, p: int) -> int:
    # Greedy partition of p into cliques; the count bounds alpha(G[p]) from above.
    cliques: list[int] = []
    rest = p
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        for i, c in enumerate(cliques):
            if c & ~adj[v] == 0:
                cliques[i] = c | low
                break
        else:
            cliques.append(low)
    return len(cliques)


def _max_independent(adj, p: int, floor: int = 0) -> int:
    """alpha(G[p]) if it exceeds ``floor``, else some value <= ``floor``."""
    best = floor

    def rec(p: int, size: int) -> None:
        nonlocal best
        while p:
            # Vertices of degree <= 1 inside p belong to some maximum set.
            forced = 0
            q = p
            branch_v = -1
            branch_d = -1
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q ^= low
                d = (adj[v] & p).bit_count()
                if d <= 1:
                    forced = v
                    break
                if d > branch_d:
                    branch_v, branch_d = v, d
            else:
                break
            p &= ~((1 << forced) | adj[forced])
            size += 1
        if not p:
            if size > best:
                best = size
            return
        if size + _clique_cover_bound(adj, p) <= best:
            return
        v = branch_v
        rec(p & ~((1 << v) | adj[v]), size + 1)
        rec(p & ~(1 << v), size)

    rec(p, 0)
    return best


def alpha(g: Graph) -> int:
    """Independence number without a witness."""
    return _max_independent(g.adj, g.vertex_mask)


def has_independent_set(g: Graph, k: int, within: VertexSet | None = None) -> bool:
    """True when ``g[within]`` has an independent set of size >= k."""
    p = g.vertex_mask if within is None else within
    if k <= 0:
        return True
    return _max_independent(g.adj, p, k - 1) >= k


def independence_number(g: Graph) -> IndependenceWitness:
    """Maximum independent set; the witness is the lexicographically least one."""
    adj = g.adj
    size = _max_independent(adj, g.vertex_mask)
    chosen = 0
    avail = g.vertex_mask
    need = size
    for v in range(g.n):
        if not need:
            break
        if not avail >> v & 1:
            continue
        after = avail & ~((1 << v) | adj[v]) & ~((1 << (v + 1)) - 1)
        if need - 1 == 0 or _max_independent(adj, after, need - 2) >= need - 1:
            chosen |= 1 << v
            avail &= ~adj[v]
            need -= 1
        avail &= ~(1 << v)
    return IndependenceWitness(size, chosen)


def independence_number_bruteforce(g: Graph) -> int:
    """Subset-sweep oracle; exponential, for tests."""
    best = 0
    for s in range(1 << g.n):
        c = s.bit_count()
        if c > best and is_independent_set(g, s):
            best = c
    return best


# -- connectivity ------------------------------------------------------


def _disjoint_paths(adj, s: int, t: int, alive: VertexSet, cap: int) -> tuple[int, VertexSet]:
    """Internally vertex-disjoint s-t paths in ``G[alive]``, up to ``cap``.

    Augmenting paths on the vertex-split digraph: ``in(v) -> out(v)`` has
    capacity 1 for inner vertices and edge arcs are uncapacitated, so the
    residual cut always crosses split arcs only. States are
    encoded as ``2*v`` (in) and ``2*v + 1`` (out). Returns the flow value and,
    when the flow stayed below ``cap``, the inner vertices whose split arc
    crosses the final residual cut (a minimum s-t separator); otherwise 0.
    """
    if cap <= 0:
        return 0, 0
    used = 0  # inner vertices whose split arc carries flow
    fin: dict[int, int] = {}  # w -> bitset of u with flow on out(u)->in(w)
    flow = 0
    inner = alive & ~((1 << s) | (1 << t))
    targets = alive & ~(1 << s)
    while flow < cap:
        parent = {2 * s + 1: -1}
        frontier = [2 * s + 1]
        found = -1
        seen_in = 0
        seen_out = 1 << s
        while frontier and found < 0:
            nxt = []
            for state in frontier:
                v = state >> 1
                if state & 1:
                    cand = adj[v] & targets & ~seen_in
                    if cand >> t & 1:
                        parent[2 * t] = state
                        found = 2 * t
                        break
                    seen_in |= cand
                    while cand:
                        low = cand & -cand
                        cand ^= low
                        w = 2 * (low.bit_length() - 1)
                        parent[w] = state
                        nxt.append(w)
                    if used >> v & 1 and not seen_in >> v & 1:
                        seen_in |= 1 << v
                        parent[2 * v] = state
                        nxt.append(2 * v)
                else:
                    if not used >> v & 1:
                        if inner >> v & 1 and not seen_out >> v & 1:
                            seen_out |= 1 << v
                            parent[state + 1] = state
                            nxt.append(state + 1)
                    preds = fin.get(v, 0) & ~seen_out
                    seen_out |= preds
                    while preds:
                        low = preds & -preds
                        preds ^= low
                        p = 2 * (low.bit_length() - 1) + 1
                        parent[p] = state
                        nxt.append(p)
            frontier = nxt
        if found < 0:
            return flow, inner & seen_in & ~seen_out
        state = found
        while True:
            prev = parent[state]
            if prev < 0:
                break
            a, b = prev >> 1, state >> 1
            if prev & 1:
                # out(a) -> in(b): forward arc, or the reverse of a split arc
                if a == b:
                    used &= ~(1 << a)
                else:
                    fin[b] = fin.get(b, 0) | (1 << a)
            else:
                # in(a) -> out(b): split arc, or the reverse of out(b)->in(a)
                if a == b:
                    used |= 1 << a
                else:
                    fin[a] &= ~(1 << b)
            state = prev
        flow += 1
    return flow, 0


def local_connectivity(g: Graph, s: int, t: int, cap: int | None = None) -> int:
    """Maximum number of internally disjoint s-t paths for non-adjacent s, t."""
    adj = g.adj
    if adj[s] >> t & 1 or s == t:
        raise ValueError("local connectivity needs distinct non-adjacent vertices")
    common = adj[s] & adj[t]
    base = common.bit_count()
    limit = g.n if cap is None else cap
    if base >= limit:
        return limit
    return base + _disjoint_paths(adj, s, t, g.vertex_mask & ~common, limit - base)[0]


def _scan(g: Graph, cap: int | None) -> tuple[int, tuple[int, int] | None]:
    # Even's pair scan: some vertex among the first kappa+1 avoids a minimum cut.
    n = g.n
    if n == 1:
        return 0, None
    if not is_connected(g):
        return 0, None
    limit = n - 1 if cap is None else min(cap, n - 1)
    if g.is_complete():
        return limit, None
    adj = g.adj
    k = min(limit, min(row.bit_count() for row in adj))
    pair = None
    full = g.vertex_mask
    i = 0
    while i <= k and i < n:
        for j in members(full & ~adj[i] & ~((1 << (i + 1)) - 1)):
            c = adj[i] & adj[j]
            base = c.bit_count()
            if base >= k:
                continue
            val = base + _disjoint_paths(adj, i, j, full & ~c, k - base)[0]
            if val < k:
                k = val
                pair = (i, j)
        i += 1
    return k, pair


def connectivity_value(g: Graph, cap: int | None = None) -> int:
    """Vertex connectivity, or ``min(kappa, cap)`` when ``cap`` is given."""
    return _scan(g, cap)[0]


def _separates(g: Graph, s: VertexSet) -> bool:
    rest = g.vertex_mask & ~s
    return rest != 0 and not is_connected(g, rest)


def vertex_connectivity(g: Graph) -> ConnectivityWitness:
    """kappa(G) with a minimum vertex cut (empty for complete graphs).

    The cut is the separator closest to ``s`` for the first minimizing pair
    ``(s, t)`` of the scan, so it is reproducible run to run.
    """
    if not is_connected(g):
        return ConnectivityWitness(0, 0)
    kappa, pair = _scan(g, None)
    if pair is None:
        if g.is_complete():
            return ConnectivityWitness(kappa, 0)
        # kappa equals the minimum degree: the neighborhood of a min-degree vertex
        # that is not universal is a cut.
        for v in range(g.n):
            if g.adj[v].bit_count() == kappa and g.adj[v] | (1 << v) != g.vertex_mask:
                return ConnectivityWitness(kappa, g.adj[v])
        raise AssertionError("no minimum cut found")  # pragma: no cover
    s, t = pair
    c = g.adj[s] & g.adj[t]
    flow, cut = _disjoint_paths(g.adj, s, t, g.vertex_mask & ~c, g.n)
    assert c.bit_count() + flow == kappa
    return ConnectivityWitness(kappa, cut | c)


def connectivity_bruteforce(g: Graph) -> int:
    """Smallest vertex set whose removal disconnects g (n-1 for cliques); oracle."""
    if g.n == 1:
        return 0
    if g.is_complete():
        return g.n - 1
    for size in range(g.n - 1):
        for cut in combinations(range(g.n), size):
            if _separates(g, bits(cut)):
                return size
    return g.n - 1
