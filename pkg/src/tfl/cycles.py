"""Exact cycle and spanning-path searches.

Everything here is exhaustive backtracking over bitsets. A search either
returns an answer, returns ``None`` after exhausting its space, or raises
:class:`~tfl.errors.BudgetExceeded`; "none" is never a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .budget import Budget, ensure
from .errors import InvalidArgument, InvalidSize, SizeLimit
from .graph import Graph, VertexSet, bits, reach

MAX_COVER_ORDER = 12


def canonical_cycle(vertices: Sequence[int]) -> tuple[int, ...]:
    """Rotate so the least vertex leads, then take the direction with the smaller second vertex."""
    k = len(vertices)
    i = min(range(k), key=vertices.__getitem__)
    fwd = tuple(vertices[(i + j) % k] for j in range(k))
    back = (fwd[0],) + fwd[:0:-1]
    return min(fwd, back)


@dataclass(frozen=True)
class CycleSeq:
    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise InvalidArgument(f"a cycle needs at least 3 vertices, got {len(self.vertices)}")

    @classmethod
    def canonical(cls, vertices: Sequence[int]) -> "CycleSeq":
        return cls(canonical_cycle(vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def mask(self) -> VertexSet:
        return bits(self.vertices)

    def is_valid(self, g: Graph) -> bool:
        vs = self.vertices
        if len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
            return False
        return all(g.adj[vs[i - 1]] >> vs[i] & 1 for i in range(len(vs)))

    def successor(self, v: int, steps: int = 1) -> int:
        vs = self.vertices
        return vs[(vs.index(v) + steps) % len(vs)]

    def __str__(self) -> str:
        return " ".join(map(str, self.vertices))


@dataclass(frozen=True)
class PathSeq:
    vertices: tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidArgument("a path needs at least one vertex")

    def __len__(self) -> int:
        return len(self.vertices)

    def is_valid(self, g: Graph) -> bool:
        vs = self.vertices
        if len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
            return False
        return all(g.adj[vs[i - 1]] >> vs[i] & 1 for i in range(1, len(vs)))


# -- spanning paths ----------------------------------------------------


def _spanning_path(adj, start: int, within: VertexSet, ends: VertexSet, budget: Budget) -> list[int] | None:
    """Path from ``start`` through all of ``within`` ending in ``ends``, or None.

    Children are tried in increasing vertex order, so the first path found is
    the lexicographically least one.
    """
    path = [start]
    charge = budget.charge

    def rec(e: int, rest: int) -> bool:
        if not rest:
            return bool(ends >> e & 1)
        charge()
        live = rest | (1 << e)
        # each remaining vertex needs two path neighbors, except the final one
        deficient = 0
        r = rest
        while r:
            low = r & -r
            r ^= low
            d = (adj[low.bit_length() - 1] & live).bit_count()
            if d < 2:
                if d == 0 or not low & ends or deficient:
                    return False
                deficient = low
        if not rest & ends:
            return False
        if reach_mask(adj, e, live) != live:
            return False
        cand = adj[e] & rest
        if deficient and deficient & cand and rest != deficient:
            # the deficient vertex can only be the last one
            cand &= ~deficient
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            path.append(w)
            if rec(w, rest ^ low):
                return True
            path.pop()
        return False

    if not within >> start & 1:
        raise InvalidArgument("start vertex not in the search set")
    if rec(start, within & ~(1 << start)):
        return path
    return None


def reach_mask(adj, start: int, within: int) -> int:
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


def _hamiltonian_cycle_within(adj, within: VertexSet, budget: Budget) -> list[int] | None:
    if within.bit_count() < 3:
        return None
    s = (within & -within).bit_length() - 1
    return _spanning_path(adj, s, within, adj[s] & within, budget)


def hamiltonian_cycle(g: Graph, budget: Budget | None = None) -> CycleSeq | None:
    """A spanning cycle in canonical form, or None when none exists."""
    if g.n < 3:
        raise InvalidSize(f"Hamiltonicity needs n >= 3, got {g.n}")
    if g.min_degree() < 2:
        return None
    found = _hamiltonian_cycle_within(g.adj, g.vertex_mask, ensure(budget))
    return CycleSeq.canonical(found) if found else None


def hamiltonian_path(g: Graph, budget: Budget | None = None) -> PathSeq | None:
    """A spanning path, or None when the graph is not traceable."""
    if g.n == 1:
        return PathSeq((0,))
    if reach(g, 0, g.vertex_mask) != g.vertex_mask:
        return None
    budget = ensure(budget)
    full = g.vertex_mask
    degs = g.degrees()
    ones = [v for v in range(g.n) if degs[v] == 1]
    if len(ones) > 2:
        return None
    # a degree-1 vertex must be an end of the path
    starts = ones if ones else range(g.n)
    for s in starts:
        found = _spanning_path(g.adj, s, full, full, budget)
        if found:
            return PathSeq(tuple(found))
    return None


def spanning_path_between(g: Graph, u: int, v: int, budget: Budget | None = None) -> PathSeq | None:
    if u == v:
        raise InvalidArgument("endpoints must differ")
    found = _spanning_path(g.adj, u, g.vertex_mask, 1 << v, ensure(budget))
    return PathSeq(tuple(found)) if found else None


def is_hamilton_connected(g: Graph, budget: Budget | None = None) -> bool:
    """True when every pair of vertices is joined by a spanning path."""
    if g.n < 2:
        raise InvalidSize(f"Hamilton-connectedness needs n >= 2, got {g.n}")
    if g.n == 2:
        return bool(g.adj[0] & 2)
    if g.min_degree() < 3 and g.n > 3:
        # a degree-2 vertex w with neighbors a, b: the a-b spanning path would
        # need w inside, so it must run a-w-b, impossible once n > 3
        return False
    budget = ensure(budget)
    full = g.vertex_mask
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if _spanning_path(g.adj, u, full, 1 << v, budget) is None:
                return False
    return True


# -- longest cycles ----------------------------------------------------


def _cycles_from(adj, s: int, allowed: int, floor: int, budget: Budget, collect_equal: bool):
    """Cycles whose least vertex is ``s`` and that are longer than ``floor``.

    Sequences are explored in lexicographic order. With ``collect_equal``
    false, each hit raises the floor, so the last cycle returned is the
    lexicographically least of maximum length. With it true, every cycle of
    the maximum length reached is returned.
    """
    best = floor
    path = [s]
    out: list[tuple[int, ...]] = []
    charge = budget.charge
    s_nb = adj[s] & allowed

    def rec(e: int, rest: int) -> None:
        nonlocal best
        charge()
        length = len(path)
        if length >= 3 and adj[e] >> s & 1 and path[1] < e:
            if length > best:
                best = length
                if collect_equal:
                    out.clear()
                out.append(tuple(path))
            elif collect_equal and length == best:
                out.append(tuple(path))
        if not rest:
            return
        live = reach_mask(adj, e, rest | (1 << e))
        if not live & s_nb & ~(1 << e):
            return
        bound = length + live.bit_count() - 1
        if bound < best or (bound == best and not collect_equal):
            return
        cand = adj[e] & rest
        while cand:
            low = cand & -cand
            cand ^= low
            path.append(low.bit_length() - 1)
            rec(path[-1], rest ^ low)
            path.pop()

    rec(s, allowed & ~(1 << s))
    return best, out


def longest_cycle(g: Graph, budget: Budget | None = None) -> CycleSeq | None:
    """A maximum-length cycle; the lexicographically least canonical one. None if acyclic."""
    budget = ensure(budget)
    if not _has_cycle(g):
        return None
    if g.n >= 3 and g.min_degree() >= 2:
        ham = hamiltonian_cycle(g, budget)
        if ham is not None:
            return ham
    best = 2
    winner = None
    for s in range(g.n):
        allowed = g.vertex_mask & ~((1 << s) - 1)
        if allowed.bit_count() <= best:
            break
        length, found = _cycles_from(g.adj, s, allowed, best, budget, False)
        if found:
            best = length
            winner = found[-1]
    return CycleSeq(winner) if winner else None


def _has_cycle(g: Graph) -> bool:
    comps = 0
    rest = g.vertex_mask
    while rest:
        c = reach(g, (rest & -rest).bit_length() - 1, rest)
        rest &= ~c
        comps += 1
    return g.m > g.n - comps


def longest_cycles(g: Graph, budget: Budget | None = None) -> list[CycleSeq]:
    """Every maximum-length cycle, canonical, in lexicographic order."""
    budget = ensure(budget)
    if not _has_cycle(g):
        return []
    best = 2
    found_all: list[tuple[int, ...]] = []
    for s in range(g.n):
        allowed = g.vertex_mask & ~((1 << s) - 1)
        if allowed.bit_count() < best:
            break
        length, found = _cycles_from(g.adj, s, allowed, best - 1, budget, True)
        if not found:
            continue
        if length > best:
            best = length
            found_all = list(found)
        elif length == best:
            found_all.extend(found)
    return [CycleSeq(c) for c in found_all]


def longest_cycle_bruteforce(g: Graph) -> int:
    """Longest cycle length by trying every vertex sequence; 0 if acyclic. Oracle."""
    best = 0
    for s in range(g.n):
        others = range(s + 1, g.n)
        for k in range(2, len(others) + 1):
            for seq in permutations(others, k):
                cyc = (s,) + seq
                if all(g.adj[cyc[i - 1]] >> cyc[i] & 1 for i in range(k + 1)):
                    best = max(best, k + 1)
                    break
    return best


# -- cycle covers ------------------------------------------------------


def cycle_cover(g: Graph, t: int, budget: Budget | None = None) -> list[CycleSeq] | None:
    """At most ``t`` cycles (not necessarily disjoint) covering every vertex, or None."""
    if g.n > MAX_COVER_ORDER:
        raise SizeLimit(f"cycle covers are limited to n <= {MAX_COVER_ORDER}, got {g.n}")
    if t < 1:
        raise InvalidArgument(f"need t >= 1, got {t}")
    budget = ensure(budget)
    adj = g.adj
    full = g.vertex_mask
    # Inclusion-maximal vertex sets that carry a cycle, with one cycle each.
    cyclable: dict[int, list[int]] = {}
    for s in range(1, full + 1):
        if s.bit_count() < 3:
            continue
        budget.charge()
        cyc = _hamiltonian_cycle_within(adj, s, budget)
        if cyc:
            cyclable[s] = cyc
    maximal = [s for s in cyclable if not any(o != s and o & s == s for o in cyclable)]
    maximal.sort(key=lambda s: (-s.bit_count(), s))
    if not maximal:
        return None
    dead: set[tuple[int, int]] = set()

    def rec(uncovered: int, left: int) -> list[int] | None:
        if not uncovered:
            return []
        if not left or (uncovered, left) in dead:
            return None
        budget.charge()
        v = (uncovered & -uncovered).bit_length() - 1
        for s in maximal:
            if s >> v & 1:
                rest = rec(uncovered & ~s, left - 1)
                if rest is not None:
                    return [s] + rest
        dead.add((uncovered, left))
        return None

    for depth in range(1, t + 1):
        chosen = rec(full, depth)
        if chosen is not None:
            return [CycleSeq.canonical(cyclable[s]) for s in chosen]
    return None

