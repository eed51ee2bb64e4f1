"""2-factors with a bounded number of components, and their certificates."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .budget import Budget, ensure
from .cycles import CycleSeq, _hamiltonian_cycle_within, reach_mask
from .errors import InvalidArgument, InvalidSize
from .graph import Graph, VertexSet


@dataclass(frozen=True)
class TwoFactorCertificate:
    """Vertex-disjoint cycles covering every vertex, canonical and sorted by least vertex."""

    cycles: tuple[CycleSeq, ...]

    @classmethod
    def of(cls, cycles: Sequence[Sequence[int] | CycleSeq]) -> "TwoFactorCertificate":
        cs = [c if isinstance(c, CycleSeq) else CycleSeq.canonical(c) for c in cycles]
        cs = [CycleSeq.canonical(c.vertices) for c in cs]
        return cls(tuple(sorted(cs, key=lambda c: c.vertices[0])))

    @property
    def components(self) -> int:
        return len(self.cycles)

    def lines(self) -> list[str]:
        return [str(c) for c in self.cycles]

    @classmethod
    def from_lines(cls, lines: Sequence[str]) -> "TwoFactorCertificate":
        return cls.of([tuple(int(x) for x in line.split()) for line in lines if line.strip()])


def validate_certificate(g: Graph, cert: TwoFactorCertificate) -> bool:
    seen = 0
    for c in cert.cycles:
        if len(c) < 3 or not c.is_valid(g):
            return False
        m = c.mask
        if m & seen:
            return False
        seen |= m
    return seen == g.vertex_mask


def _search(g: Graph, max_components: int, exact: bool, budget: Budget) -> list[list[int]] | None:
    adj = g.adj
    charge = budget.charge

    def feasible_rest(rest: int, left: int) -> bool:
        # every leftover vertex needs two leftover neighbors; each piece needs a cycle
        if not rest:
            return True
        pieces = 0
        r = rest
        while r:
            low = r & -r
            r ^= low
            if (adj[low.bit_length() - 1] & rest).bit_count() < 2:
                return False
        r = rest
        while r:
            comp = reach_mask(adj, (r & -r).bit_length() - 1, r)
            if comp.bit_count() < 3:
                return False
            pieces += 1
            if pieces > left:
                return False
            r &= ~comp
        return True

    def cover(rest: int, left: int) -> list[list[int]] | None:
        # rest is nonempty; cover it with at most (exactly, if `exact`) `left` cycles
        if exact and 3 * left > rest.bit_count():
            return None
        if left == 1:
            cyc = _hamiltonian_cycle_within(adj, rest, budget)
            return [cyc] if cyc else None
        if not feasible_rest(rest, left):
            return None
        s = (rest & -rest).bit_length() - 1
        path = [s]
        s_nb = adj[s] & rest

        def grow(e: int, free: int) -> list[list[int]] | None:
            charge()
            length = len(path)
            if length >= 3 and adj[e] >> s & 1 and path[1] < e:
                if not free:
                    if not exact:
                        return [list(path)]
                elif feasible_rest(free, left - 1):
                    tail = cover(free, left - 1)
                    if tail is not None:
                        return [list(path)] + tail
            if not free:
                return None
            cand = adj[e] & free
            while cand:
                low = cand & -cand
                cand ^= low
                w = low.bit_length() - 1
                if not (s_nb & (free ^ low)) and not adj[w] >> s & 1:
                    continue
                path.append(w)
                got = grow(w, free ^ low)
                path.pop()
                if got is not None:
                    return got
            return None

        return grow(s, rest & ~(1 << s))

    return cover(g.vertex_mask, max_components)


def find_two_factor(g: Graph, max_components: int, budget: Budget | None = None) -> TwoFactorCertificate | None:
    """2-factor with at most ``max_components`` cycles, or None when none exists."""
    if g.n < 3:
        raise InvalidSize(f"2-factors need n >= 3, got {g.n}")
    if max_components < 1:
        raise InvalidArgument(f"max_components must be >= 1, got {max_components}")
    if g.min_degree() < 2:
        return None
    found = _search(g, max_components, False, ensure(budget))
    return TwoFactorCertificate.of(found) if found else None


def find_two_factor_exact_components(g: Graph, exactly: int, budget: Budget | None = None) -> TwoFactorCertificate | None:
    """2-factor with exactly ``exactly`` cycles, or None when none exists."""
    if g.n < 3:
        raise InvalidSize(f"2-factors need n >= 3, got {g.n}")
    if exactly < 1:
        raise InvalidArgument(f"exactly must be >= 1, got {exactly}")
    if g.min_degree() < 2 or 3 * exactly > g.n:
        return None
    found = _search(g, exactly, True, ensure(budget))
    return TwoFactorCertificate.of(found) if found else None


def min_two_factor_components(g: Graph, limit: int | None = None, budget: Budget | None = None) -> int:
    """Fewest cycles in any 2-factor (searching up to ``limit``), or -1 when none qualifies."""
    if g.n < 3 or g.min_degree() < 2:
        return -1
    budget = ensure(budget)
    top = g.n // 3 if limit is None else min(limit, g.n // 3)
    for c in range(1, top + 1):
        if _search(g, c, True, budget) is not None:
            return c
    return -1


def two_factor_component_counts_bruteforce(g: Graph) -> set[int]:
    """Component counts of all 2-factors, by filtering every n-edge subset. Oracle."""
    n = g.n
    edges = list(g.edges())
    counts: set[int] = set()
    if n < 3 or len(edges) < n:
        return counts
    for chosen in combinations(edges, n):
        deg = [0] * n
        for u, v in chosen:
            deg[u] += 1
            deg[v] += 1
        if any(d != 2 for d in deg):
            continue
        sub = [0] * n
        for u, v in chosen:
            sub[u] |= 1 << v
            sub[v] |= 1 << u
        rest = (1 << n) - 1
        k = 0
        while rest:
            comp = reach_mask(sub, (rest & -rest).bit_length() - 1, rest)
            rest &= ~comp
            k += 1
        counts.add(k)
    return counts


def certificate_mask(cert: TwoFactorCertificate) -> VertexSet:
    out = 0
    for c in cert.cycles:
        out |= c.mask
    return out
