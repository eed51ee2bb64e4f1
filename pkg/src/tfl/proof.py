"""Witness extraction: the exchange arguments around a longest cycle, executed.

Given a connected graph with ``alpha = kappa + 1`` and ``n >= 3*kappa + 3``,
the engine takes a longest cycle ``C``, looks at how the leftover clique
``H = G - C`` attaches to it, and walks the chord-exchange rules in order.
Each rule either builds a spanning cycle, builds a 2-factor with two cycles,
recognizes an exceptional graph, or checks a chord that the independence
bound forces. Every construction is a pure function of the oriented cycle
and a few named vertices, recorded in the trace, so :func:`replay` can
rebuild the witness without re-running any decision logic.

Notation in names: for an attachment ``u`` on the oriented cycle, ``u+`` is
its successor, ``u-`` its predecessor, ``u^(l+)`` its ``l``-th successor.
A gap is the run of cycle vertices strictly between consecutive attachments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .budget import Budget, ensure
from .cycles import CycleSeq, hamiltonian_cycle, longest_cycle
from .errors import InvalidArgument, InvalidSize, ProfileUnavailable
from .families import FamilyDescriptor, is_in_family_g
from .graph import Graph, VertexSet, bits, is_connected, lowest, members
from .invariants import alpha as alpha_value
from .invariants import connectivity_value, is_independent_set
from .twofactor import TwoFactorCertificate, validate_certificate

HAMILTONIAN = "hamiltonian"
TWO_FACTOR = "two_factor"
EXCEPTION = "exception"
HYPOTHESIS_VIOLATION = "hypothesis_violation"
ANOMALY = "anomaly"


# -- oriented cycles ---------------------------------------------------


class Oriented:
    """A cycle read in one fixed direction, with successor arithmetic."""

    __slots__ = ("seq", "pos")

    def __init__(self, seq):
        self.seq = tuple(seq)
        self.pos = {v: i for i, v in enumerate(self.seq)}

    def __len__(self) -> int:
        return len(self.seq)

    def reversed(self) -> "Oriented":
        return Oriented(self.seq[::-1])

    def succ(self, v: int, steps: int = 1) -> int:
        return self.seq[(self.pos[v] + steps) % len(self.seq)]

    def pred(self, v: int, steps: int = 1) -> int:
        return self.seq[(self.pos[v] - steps) % len(self.seq)]

    def fwd(self, a: int, b: int) -> list[int]:
        """Vertices from ``a`` to ``b`` inclusive, following the orientation."""
        n = len(self.seq)
        i, j = self.pos[a], self.pos[b]
        return [self.seq[(i + k) % n] for k in range(((j - i) % n) + 1)]

    def bwd(self, a: int, b: int) -> list[int]:
        """Vertices from ``a`` back to ``b`` inclusive, against the orientation."""
        n = len(self.seq)
        i, j = self.pos[a], self.pos[b]
        return [self.seq[(i - k) % n] for k in range(((i - j) % n) + 1)]


# -- constructions (pure; shared by the engine and replay) ---------------


def _make_extend(o: Oriented, u: int, w: int, path: list[int]) -> list[list[int]]:
    # u and w = u+ both attach to H: splice H between them
    return [[u] + path + o.fwd(w, o.pred(u))]


def _make_successor_chord(o: Oriented, u: int, v: int, path: list[int]) -> list[list[int]]:
    # chord u+ v+ between successors of two attachments
    return [[u] + path + o.bwd(v, o.succ(u)) + o.fwd(o.succ(v), o.pred(u))]


def _make_gap_split(o: Oriented, u: int, v: int, level: int, path: list[int]) -> list[list[int]]:
    # chord u^(level+) v-: a cycle on u^(level+)..v-, and one through H back round to u
    a = o.succ(u, level)
    first = o.fwd(a, o.pred(v))
    second = [u] + path + o.fwd(v, o.pred(u))
    if level >= 2:
        second += o.bwd(o.succ(u, level - 1), o.succ(u))
    return [first, second]


def _make_long_gap(o: Oriented, u: int, w: int, gap: int, path: list[int]) -> list[list[int]]:
    # gap of length >= 4 between u and w: chords w-- w+ and u- u^((gap-2)+) give a spanning cycle
    return [
        [u] + path + [w, o.pred(w), o.pred(w, 2)]
        + o.fwd(o.succ(w), o.pred(u))
        + o.bwd(o.succ(u, gap - 2), o.succ(u))
    ]


def _make_edge_gap(o: Oriented, u: int, w: int, path: list[int]) -> list[list[int]]:
    # gap of length 3 with a two-vertex H: trades the gap middle for both H vertices
    return [[u] + path + [w, o.pred(w)] + o.fwd(o.succ(w), o.pred(u)) + [o.succ(u)]]


def _make_adjacent_gaps_a(o: Oriented, u1: int, u2: int, x: int) -> list[list[int]]:
    # consecutive length-3 gaps, chord u1++ u2+
    return [[u1, x, u2, o.pred(u2), o.succ(u1, 2)] + o.fwd(o.succ(u2), o.pred(u1)) + [o.succ(u1)]]


def _make_adjacent_gaps_b(o: Oriented, u1: int, u2: int, ul: int, x: int) -> list[list[int]]:
    # consecutive length-3 gaps, chord u1++ ul- for an attachment ul other than u2
    seq = [u1, o.succ(u1), o.succ(u1, 2)] + o.bwd(o.pred(ul), o.succ(u2)) + [o.pred(u2), u2, x]
    if ul != u1:
        seq += o.fwd(ul, o.pred(u1))
    return [seq]


def _make_far_gaps_a(o: Oriented, u1: int, uj: int, uj_next: int, x: int) -> list[list[int]]:
    # chord u1+ uj++ for a far length-3 gap at uj
    first = o.fwd(o.succ(u1), o.succ(uj, 2))
    second = [u1, x, uj_next, o.pred(uj_next)] + o.fwd(o.succ(uj_next), o.pred(u1))
    return [first, second]


def _make_far_gaps_b(o: Oriented, u1: int, uj: int, x: int) -> list[list[int]]:
    # chord u1+ uj, with the cl5-type chord uj- uj+
    return [o.fwd(o.succ(u1), o.pred(uj)) + o.fwd(o.succ(uj), u1) + [x, uj]]


CONSTRUCTIONS: dict[str, Callable[..., list[list[int]]]] = {
    "R-cl1": _make_extend,
    "R-cl2": _make_successor_chord,
    "R-cl13": _make_gap_split,
    "R-cl6": _make_gap_split,
    "R-cl7": _make_gap_split,
    "R-cl8": _make_long_gap,
    "R-cl9": _make_edge_gap,
    "R-cl11a": _make_adjacent_gaps_a,
    "R-cl11b": _make_adjacent_gaps_b,
    "R-final-a": _make_far_gaps_a,
    "R-final-b": _make_far_gaps_b,
}


# -- results -------------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    rule: str
    vertices: tuple[int, ...] = ()
    note: str = ""
    orientation: tuple[int, ...] | None = None  # oriented cycle a construction ran on
    args: dict | None = None
    cycles: tuple[tuple[int, ...], ...] = ()

    def as_dict(self) -> dict:
        out: dict = {"rule": self.rule, "vertices": list(self.vertices)}
        if self.note:
            out["note"] = self.note
        if self.args is not None:
            out["args"] = self.args
        if self.cycles:
            out["cycles"] = [" ".join(map(str, c)) for c in self.cycles]
            out["length"] = sum(len(c) for c in self.cycles)
        return out


@dataclass
class ExtractionOutcome:
    kind: str
    trace: list[TraceStep] = field(default_factory=list)
    cycle: CycleSeq | None = None
    certificate: TwoFactorCertificate | None = None
    descriptor: FamilyDescriptor | None = None
    reason: str = ""
    evidence: VertexSet = 0

    def validates(self, g: Graph) -> bool:
        if self.kind == HAMILTONIAN:
            return self.cycle is not None and len(self.cycle) == g.n and self.cycle.is_valid(g)
        if self.kind == TWO_FACTOR:
            return self.certificate is not None and validate_certificate(g, self.certificate)
        if self.kind == EXCEPTION:
            from .enumeration import is_isomorphic

            return self.descriptor is not None and is_isomorphic(self.descriptor.build(), g)
        return True

    def as_dict(self) -> dict:
        out: dict = {"result": self.kind}
        if self.cycle is not None:
            out["cycle"] = str(self.cycle)
        if self.certificate is not None:
            out["certificate"] = self.certificate.lines()
        if self.descriptor is not None:
            out["descriptor"] = self.descriptor.as_dict()
        if self.reason:
            out["reason"] = self.reason
        if self.evidence:
            out["evidence"] = members(self.evidence)
        out["trace"] = [s.as_dict() for s in self.trace]
        return out


# -- attachment profile --------------------------------------------------


@dataclass(frozen=True)
class GapProfile:
    """Attachment structure of ``H = G - C`` on the oriented cycle ``c``."""

    c: CycleSeq
    h_vertices: VertexSet
    u_positions: tuple[int, ...]
    gaps: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.u_positions)

    @property
    def u(self) -> tuple[int, ...]:
        return tuple(self.c.vertices[p] for p in self.u_positions)

    @property
    def u_plus(self) -> tuple[int, ...]:
        vs = self.c.vertices
        return tuple(vs[(p + 1) % len(vs)] for p in self.u_positions)

    @property
    def u_minus(self) -> tuple[int, ...]:
        vs = self.c.vertices
        return tuple(vs[(p - 1) % len(vs)] for p in self.u_positions)

    def gap_classes(self) -> dict[str, list[int]]:
        """Gap indices (0-based) with length 1..2, exactly 3, and at least 3."""
        return {
            "T12": [i for i, t in enumerate(self.gaps) if 1 <= t <= 2],
            "T3": [i for i, t in enumerate(self.gaps) if t == 3],
            "T>=3": [i for i, t in enumerate(self.gaps) if t >= 3],
        }


def gap_profile(g: Graph, c: CycleSeq) -> GapProfile:
    """Profile of ``c``; raises ProfileUnavailable when ``G - C`` is not a 1- or 2-clique attached to ``c``."""
    if not c.is_valid(g):
        raise ProfileUnavailable("not a cycle of the graph")
    h = g.vertex_mask & ~c.mask
    size = h.bit_count()
    if size not in (1, 2):
        raise ProfileUnavailable(f"G - C has {size} vertices, expected 1 or 2")
    if not g.is_clique(h):
        raise ProfileUnavailable("G - C is not complete")
    attach = 0
    for x in members(h):
        attach |= g.adj[x]
    attach &= c.mask
    if not attach:
        raise ProfileUnavailable("G - C has no neighbor on C")
    positions = tuple(i for i, v in enumerate(c.vertices) if attach >> v & 1)
    k = len(positions)
    length = len(c)
    gaps = tuple((positions[(i + 1) % k] - positions[i] - 1) % length if k > 1 else length - 1 for i in range(k))
    return GapProfile(c, h, positions, gaps)


# -- the engine ----------------------------------------------------------


class _Done(Exception):
    def __init__(self, outcome: ExtractionOutcome):
        self.outcome = outcome


class _Restart(Exception):
    def __init__(self, cycle: list[int]):
        self.cycle = cycle


class _Engine:
    def __init__(self, g: Graph, kappa: int, alpha: int, budget: Budget):
        self.g = g
        self.adj = g.adj
        self.kappa = kappa
        self.alpha = alpha
        self.budget = budget
        self.trace: list[TraceStep] = []
        self.exact = True  # current cycle is a longest cycle

    # outcome helpers

    def note(self, rule: str, vertices=(), note: str = "") -> None:
        self.trace.append(TraceStep(rule, tuple(vertices), note))

    def finish(self, kind: str, **kw) -> None:
        raise _Done(ExtractionOutcome(kind, list(self.trace), **kw))

    def violation(self, reason: str, evidence: VertexSet = 0) -> None:
        self.note("hypothesis-violation", members(evidence), reason)
        self.finish(HYPOTHESIS_VIOLATION, reason=reason, evidence=evidence)

    def anomaly(self, reason: str, evidence: VertexSet = 0) -> None:
        self.note("anomaly", members(evidence), reason)
        self.finish(ANOMALY, reason=reason, evidence=evidence)

    def edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def apply(self, rule: str, o: Oriented, touched, **args) -> None:
        """Run a construction; finish (spanning cycle / 2-factor) or restart (longer cycle)."""
        cycles = CONSTRUCTIONS[rule](o, **args)
        step = TraceStep(rule, tuple(touched), "", o.seq, dict(args), tuple(tuple(c) for c in cycles))
        self.trace.append(step)
        g = self.g
        if len(cycles) == 2:
            cert = TwoFactorCertificate.of(cycles)
            if validate_certificate(g, cert):
                self.finish(TWO_FACTOR, certificate=cert)
            self.anomaly(f"{rule} built an invalid 2-factor")
        cyc = cycles[0]
        if len(set(cyc)) != len(cyc) or len(cyc) < 3 or not CycleSeq(tuple(cyc)).is_valid(g):
            self.anomaly(f"{rule} built an invalid cycle")
        if len(cyc) == g.n:
            self.finish(HAMILTONIAN, cycle=CycleSeq.canonical(cyc))
        if len(cyc) <= len(o):
            self.anomaly(f"{rule} did not lengthen the cycle")
        self.exact = False
        raise _Restart(cyc)

    # the decision procedure

    def run(self, start: CycleSeq | None) -> ExtractionOutcome:
        g, kappa = self.g, self.kappa
        try:
            if self.alpha <= kappa:
                cyc = hamiltonian_cycle(g, self.budget)
                self.note("chvatal-erdos", (), f"alpha={self.alpha} <= kappa={kappa}")
                if cyc is None:
                    self.anomaly("alpha <= kappa but no Hamiltonian cycle")
                self.finish(HAMILTONIAN, cycle=cyc)
            if self.alpha > kappa + 1:
                self.violation(f"alpha={self.alpha} > kappa+1={kappa + 1}")
            if g.n < 3 * kappa + 3:
                self.violation(f"n={g.n} < 3*kappa+3={3 * kappa + 3}")
            self.note("alpha=kappa+1", (), f"alpha = kappa + 1 = {self.alpha}")
            c = start
            self.exact = start is None
            if c is None:
                c = longest_cycle(g, self.budget)
                if c is None:
                    self.anomaly("graph is acyclic")
                self.trace.append(TraceStep("longest-cycle", c.vertices, "", None, None, (c.vertices,)))
            else:
                self.trace.append(TraceStep("start-cycle", c.vertices, "", None, None, (c.vertices,)))
            seq = list(c.vertices)
            for _ in range(g.n + 1):
                try:
                    self.iterate(seq)
                except _Restart as r:
                    seq = r.cycle
            self.anomaly("cycle replacement did not terminate")
        except _Done as d:
            return d.outcome
        raise AssertionError("unreachable")  # pragma: no cover

    def iterate(self, seq: list[int]) -> None:
        g = self.g
        self.budget.charge()
        if len(seq) == g.n:
            self.finish(HAMILTONIAN, cycle=CycleSeq.canonical(seq))
        cmask = bits(seq)
        h = g.vertex_mask & ~cmask
        if not g.is_clique(h):
            if not self.exact:
                # only a longest cycle is guaranteed a complete remainder; fall back to one
                self.exact = True
                c = longest_cycle(g, self.budget)
                if c is not None:
                    self.trace.append(TraceStep("longest-cycle", c.vertices, "remainder not complete", None, None, (c.vertices,)))
                    raise _Restart(list(c.vertices))
            self.anomaly("G - C is not complete", h)
        hsize = h.bit_count()
        attach = 0
        for x in members(h):
            attach |= g.adj[x]
        if not attach & cmask:
            self.anomaly("G - C has no neighbor on C", h)
        self.note("remainder-complete", members(h), f"G - C is complete of order {hsize}")
        if hsize >= 3:
            hc = members(h)
            cert = TwoFactorCertificate.of([seq, hc])
            self.trace.append(TraceStep("R-H3", tuple(hc), "", None, None, (tuple(seq), tuple(hc))))
            if not validate_certificate(g, cert):
                self.anomaly("C and a cycle of H do not form a 2-factor")
            self.finish(TWO_FACTOR, certificate=cert)
        if self.kappa == 1:
            self.case_one(seq, h)
        self.case_two(Oriented(seq), h)

    # kappa = 1

    def case_one(self, seq: list[int], h: VertexSet) -> None:
        g, adj = self.g, self.adj
        cmask = bits(seq)
        hv = members(h)
        attach = 0
        for x in hv:
            attach |= adj[x]
        attach &= cmask
        if attach.bit_count() != 1:
            # with two attachment points G would be 2-connected
            self.anomaly("kappa = 1 but H attaches to C at several vertices", attach)
        w = lowest(attach)
        x = next(v for v in hv if adj[v] >> w & 1)
        if len(hv) == 1:
            rest = cmask & ~(1 << w)
            self.note("case1-K1", (x, w), "x has a single neighbor on C")
            self._clique_or_violation(rest, x)
            self._exception()
        y = next(v for v in hv if v != x)
        if adj[y] >> w & 1:
            rest = cmask & ~(1 << w)
            self._clique_or_violation(rest, x)
            others = [v for v in seq if v != w]
            cycles = [others, [w, x, y]]
            self.trace.append(TraceStep("R-case1-K2", (w, x, y), "", None, None, tuple(tuple(c) for c in cycles)))
            cert = TwoFactorCertificate.of(cycles)
            if len(others) < 3 or not validate_certificate(g, cert):
                self.anomaly("case-1 2-factor is invalid")
            self.finish(TWO_FACTOR, certificate=cert)
        self.note("case1-K2", (x, y, w), "y has no neighbor on C")
        self._clique_or_violation(cmask, y)
        self._exception()

    def _clique_or_violation(self, s: VertexSet, outsider: int) -> None:
        g = self.g
        for a in members(s):
            missing = s & ~g.adj[a] & ~(1 << a)
            if missing:
                b = lowest(missing)
                ev = (1 << a) | (1 << b) | (1 << outsider)
                if is_independent_set(g, ev):
                    self.violation("independent set of size 3 = kappa + 2", ev)
                self.anomaly("expected clique is missing an edge", ev)

    def _exception(self) -> None:
        desc = is_in_family_g(self.g)
        if desc is None:
            self.anomaly("case-1 structure found but the graph is not an exceptional graph")
        self.note("exception", (), desc.name)
        self.finish(EXCEPTION, descriptor=desc)

    # kappa >= 2

    def h_path(self, h: list[int], a: int, b: int) -> list[int] | None:
        """Path through all of H from a neighbor of ``a`` to a neighbor of ``b``; lexicographically least."""
        adj = self.adj
        if len(h) == 1:
            x = h[0]
            return [x] if adj[a] >> x & 1 and adj[b] >> x & 1 else None
        x, y = h
        options = []
        if adj[a] >> x & 1 and adj[b] >> y & 1:
            options.append([x, y])
        if adj[a] >> y & 1 and adj[b] >> x & 1:
            options.append([y, x])
        return min(options) if options else None

    def any_h_path(self, h: list[int], a: int, b: int) -> list[int]:
        # some path through at least one H vertex, for cycle-lengthening moves
        p = self.h_path(h, a, b)
        if p is not None:
            return p
        for x in h:
            if self.edge(a, x) and self.edge(b, x):
                return [x]
        raise AssertionError("attachments without a common route through H")  # pragma: no cover

    def case_two(self, o: Oriented, h: VertexSet) -> None:
        g, kappa = self.g, self.kappa
        hv = members(h)
        x = hv[0]
        prof = gap_profile(g, CycleSeq(o.seq))
        U = list(prof.u)
        k = len(U)
        # cl1: no two attachments are consecutive on C
        for i in range(k):
            u, w = U[i], U[(i + 1) % k]
            if o.succ(u) == w:
                self.apply("R-cl1", o, (u, w), u=u, w=w, path=self.any_h_path(hv, u, w))
        self.note("cl1", U, "attachments pairwise non-consecutive")
        # cl2: successors (and predecessors) of attachments are independent with H
        for oo, label in ((o, "+"), (o.reversed(), "-")):
            nxt = [oo.succ(u) for u in U]
            for i in range(k):
                for j in range(i + 1, k):
                    if self.edge(nxt[i], nxt[j]):
                        a, b = U[i], U[j]
                        self.apply("R-cl2", oo, (a, b, nxt[i], nxt[j]), u=a, v=b, path=self.any_h_path(hv, a, b))
            ind = bits(nxt) | (1 << x)
            if not is_independent_set(g, ind):
                self.anomaly(f"{{x}} + U{label} not independent after cl1/cl2", ind)
        self.note("cl2", [o.succ(u) for u in U] + [x], "{x} + U+ and {x} + U- independent")
        if k > kappa:
            self.violation(f"{{x}} + U+ is independent of size {k + 1} > alpha", bits(o.succ(u) for u in U) | (1 << x))
        if k < kappa:
            self.anomaly(f"attachment set of size {k} < kappa separates H", bits(U))
        self.note("k=kappa", U, f"k = {k}")
        # cl3: with a two-vertex H, every attachment pair has a path through both
        paths: dict[tuple[int, int], list[int]] = {}
        for a in U:
            for b in U:
                if a == b:
                    continue
                p = self.h_path(hv, a, b)
                if p is None:
                    # some H vertex misses every attachment but one
                    for yv in hv:
                        if (self.adj[yv] & bits(U)).bit_count() <= kappa - 1 and g.adj[yv].bit_count() <= kappa - 1:
                            self.violation(f"vertex {yv} has degree {g.adj[yv].bit_count()} < kappa", 1 << yv)
                    self.anomaly("no path through H between two attachments", (1 << a) | (1 << b) | h)
                paths[(a, b)] = p
        if len(hv) == 2:
            self.note("cl3", hv, "paths through H exist for all attachment pairs")
        gaps = prof.gaps
        n = g.n
        # cl4
        if not any(t >= 3 for t in gaps):
            self.anomaly(f"all gaps <= 2 forces n <= 3*kappa+2 but n = {n}")
        self.note("cl4", (), f"gaps {list(gaps)}")
        long_gaps = [i for i, t in enumerate(gaps) if t >= 3]
        rev = o.reversed()

        def ends(i: int) -> tuple[int, int]:
            return U[i], U[(i + 1) % k]

        # cl13 (level 1 splits), both orientations
        for i in long_gaps:
            u, w = ends(i)
            self.split_rule(o, u, 1, U, paths)
            self.split_rule(rev, w, 1, U, paths)
        # cl5 chords
        for i in long_gaps:
            u, w = ends(i)
            self.chord_rule(o, u, 1, U, x, "cl5")
            self.chord_rule(rev, w, 1, U, x, "cl5")
        # cl9 (two-vertex H, gap of length 3): a longer cycle
        if len(hv) == 2:
            for i in long_gaps:
                if gaps[i] == 3:
                    u, w = ends(i)
                    self.apply("R-cl9", o, (u, w), u=u, w=w, path=paths[(u, w)])
        # cl6/cl7 induction on gaps of length >= 4, then cl8
        for i in long_gaps:
            t = gaps[i]
            if t < 4:
                continue
            u, w = ends(i)
            for oo, a in ((o, u), (rev, w)):
                for level in range(2, t - 1):
                    self.split_rule(oo, a, level, U, paths)
                    self.chord_rule(oo, a, level, U, x, "cl6" if level == 2 else "cl7")
            self.apply("R-cl8", o, (u, w), u=u, w=w, gap=t, path=paths[(u, w)])
        self.note("cl8", (), "every long gap has length 3")
        if len(hv) == 2:
            self.anomaly("two-vertex H survived the length-3 gap exchange")
        self.note("cl9", (x,), "H = K1")
        t3 = [i for i, t in enumerate(gaps) if t == 3]
        if len(t3) <= 1:
            self.anomaly(f"at most one length-3 gap forces n <= 3*kappa+2 but n = {n}")
        self.note("cl10", (), f"{len(t3)} gaps of length 3")
        # cl11: two adjacent length-3 gaps give a spanning cycle or a large independent set
        for i in t3:
            j = (i + 1) % k
            if j in t3 and j != i:
                self.adjacent_gaps(o, U, i, x)
        self.note("cl11", (), "no two length-3 gaps are adjacent")
        self.far_gaps(o, U, gaps, t3, x)

    def split_rule(self, o: Oriented, u: int, level: int, U: list[int], paths) -> None:
        """Chord u^(level+) v- for another attachment v yields a two-cycle 2-factor."""
        a = o.succ(u, level)
        order = sorted(U, key=lambda v: (o.pos[v] - o.pos[u]) % len(o))
        rule = {1: "R-cl13", 2: "R-cl6"}.get(level, "R-cl7")
        for v in order:
            if v == u:
                continue
            if self.edge(a, o.pred(v)):
                self.apply(rule, o, (u, v, a, o.pred(v)), u=u, v=v, level=level, path=paths[(u, v)])

    def chord_rule(self, o: Oriented, u: int, level: int, U: list[int], x: int, rule: str) -> None:
        """The chord u- u^(level+) must exist, otherwise {u^(level+), x} + U- is too large an independent set."""
        a = o.succ(u, level)
        b = o.pred(u)
        if self.edge(a, b):
            self.note(rule, (b, a), "chord present")
            return
        ev = (1 << a) | (1 << x) | bits(o.pred(v) for v in U)
        if is_independent_set(self.g, ev) and ev.bit_count() == self.kappa + 2:
            self.violation(f"{rule}: independent set of size kappa+2", ev)
        self.anomaly(f"{rule}: chord {b}-{a} missing without an independent set", ev)

    def adjacent_gaps(self, o: Oriented, U: list[int], i: int, x: int) -> None:
        k = len(U)
        u1, u2 = U[i], U[(i + 1) % k]
        a = o.succ(u2)  # u2+
        b = o.succ(u1, 2)  # u1++
        if self.edge(a, b):
            self.apply("R-cl11a", o, (u1, u2, a, b), u1=u1, u2=u2, x=x)
        for ul in U:
            if ul == u2:
                continue
            if self.edge(b, o.pred(ul)):
                self.apply("R-cl11b", o, (u1, u2, ul, b), u1=u1, u2=u2, ul=ul, x=x)
        ev = (1 << a) | (1 << b) | (1 << x) | bits(o.pred(v) for v in U if v != u2)
        if is_independent_set(self.g, ev) and ev.bit_count() == self.kappa + 2:
            self.violation("cl11: independent set of size kappa+2", ev)
        self.anomaly("cl11: no exchange applies and no independent set found", ev)

    def far_gaps(self, o: Oriented, U: list[int], gaps, t3: list[int], x: int) -> None:
        """Endgame with two non-adjacent length-3 gaps; every choice is tried before giving up."""
        k = len(U)
        for first in t3:
            # relabel so that `first` is gap 1
            rel = [U[(first + s) % k] for s in range(k)]
            relgap = [gaps[(first + s) % k] for s in range(k)]
            u1 = rel[0]
            a = o.succ(u1)
            far = [s for s in range(2, k - 1) if relgap[s] == 3]
            for s in far:
                uj, uj_next = rel[s], rel[(s + 1) % k]
                if self.edge(a, o.succ(uj, 2)):
                    self.apply("R-final-a", o, (u1, uj, a, o.succ(uj, 2)), u1=u1, uj=uj, uj_next=uj_next, x=x)
            for s in far:
                for j in (1, s, s + 1):
                    uj = rel[j % k]
                    if self.edge(a, uj):
                        self.apply("R-final-b", o, (u1, uj, a), u1=u1, uj=uj, x=x)
            others = far[:1]
            if others:
                s = others[0]
                blocked = {rel[1], rel[s], rel[(s + 1) % k]}
                dmax = (self.g.adj[a] & bits(U)).bit_count()
                self.note(
                    "final-degree",
                    (a,),
                    f"d(u1+)={self.g.adj[a].bit_count()}; attachments excluded {sorted(blocked)}; "
                    f"neighbors among attachments {dmax}",
                )
        self.anomaly("no rule applies in the final configuration")


def extract_witness(g: Graph, budget: Budget | None = None, start: CycleSeq | None = None) -> ExtractionOutcome:
    """Run the exchange procedure on ``g``.

    ``start`` optionally replaces the initial longest cycle; the engine falls
    back to an exact longest cycle when the remainder is not complete.
    """
    if g.n < 3:
        raise InvalidSize(f"extraction needs n >= 3, got {g.n}")
    if not is_connected(g):
        raise InvalidArgument("extraction needs a connected graph")
    budget = ensure(budget)
    kappa = connectivity_value(g)
    a = alpha_value(g)
    return _Engine(g, kappa, a, budget).run(start)


def replay(g: Graph, outcome: ExtractionOutcome) -> bool:
    """Re-run every recorded construction and check it reproduces the trace and the witness."""
    current: tuple[int, ...] | None = None
    final: list[tuple[int, ...]] | None = None
    for step in outcome.trace:
        if step.rule in ("longest-cycle", "start-cycle"):
            current = step.vertices
            continue
        if step.rule == "R-H3" or step.rule == "R-case1-K2":
            final = list(step.cycles)
            if step.rule == "R-H3" and (current is None or step.cycles[0] != current):
                return False
            continue
        if step.args is None:
            continue
        if current is None or step.orientation is None or set(step.orientation) != set(current):
            return False
        o = Oriented(step.orientation)
        if CycleSeq.canonical(step.orientation) != CycleSeq.canonical(current):
            return False
        got = CONSTRUCTIONS[step.rule](o, **step.args)
        if tuple(tuple(c) for c in got) != step.cycles:
            return False
        if len(got) == 1 and len(got[0]) < g.n:
            current = tuple(got[0])
        else:
            final = [tuple(c) for c in got]
    if outcome.kind == HAMILTONIAN:
        if outcome.cycle is None:
            return False
        if final is None:
            # alpha <= kappa route or a longest cycle that was already spanning
            if current is not None:
                return CycleSeq.canonical(current) == outcome.cycle and len(current) == g.n
            return outcome.cycle.is_valid(g) and len(outcome.cycle) == g.n
        return len(final) == 1 and CycleSeq.canonical(final[0]) == outcome.cycle
    if outcome.kind == TWO_FACTOR:
        return final is not None and TwoFactorCertificate.of(final) == outcome.certificate
    return True
