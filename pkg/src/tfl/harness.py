"""Verification campaigns: evaluate a theorem's hypotheses and conclusions on every graph.

A campaign is a pure per-graph function returning a :class:`VerificationRecord`.
:func:`run_campaign` maps it over a graph stream (optionally in worker
processes), keeps a resumable cursor, and merges emitted records in canonical
order so the JSONL output is byte-identical across runs.
"""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Iterator

from .budget import DEFAULT_BUDGET, Budget
from .cycles import (
    cycle_cover,
    hamiltonian_cycle,
    hamiltonian_path,
    is_hamilton_connected,
    longest_cycle,
    longest_cycles,
)
from .enumeration import canonical_form, connected_graphs, read_graph6_stream
from .errors import BudgetExceeded, InvalidArgument, SizeLimit
from .families import alpha_sharpness_graph, is_in_family_g, sharpness_graph
from .graph import Graph, is_connected, to_graph6
from .invariants import alpha, connectivity_value, has_independent_set
from .twofactor import find_two_factor, find_two_factor_exact_components, min_two_factor_components

log = logging.getLogger(__name__)

CONSISTENT = "consistent"
COUNTEREXAMPLE = "counterexample"
EXCEPTION_FAMILY = "exception-family"
SKIPPED = "skipped-budget"
STATUSES = (CONSISTENT, COUNTEREXAMPLE, EXCEPTION_FAMILY, SKIPPED)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3

MAX_ENUMERATED = 10
MAX_KOUIDER = 8
CHECKPOINT_EVERY = 5000


@dataclass
class VerificationRecord:
    graph: str
    n: int
    alpha: int | None
    kappa: int | None
    omega_min_two_factor: int
    hypotheses: dict
    conclusions: dict
    witness: object = None
    status: str = CONSISTENT

    def to_json(self) -> str:
        # field order is the serialization order
        return json.dumps(
            {
                "graph": self.graph,
                "n": self.n,
                "alpha": self.alpha,
                "kappa": self.kappa,
                "omega_min_two_factor": self.omega_min_two_factor,
                "hypotheses": self.hypotheses,
                "conclusions": self.conclusions,
                "witness": self.witness,
                "status": self.status,
            },
            separators=(", ", ": "),
        )

    @classmethod
    def from_json(cls, line: str) -> "VerificationRecord":
        return cls(**json.loads(line))


def _record(g: Graph, hyp: dict, concl: dict, status: str, witness=None, a=None, k=None) -> VerificationRecord:
    # exact alpha / kappa are filled in by _complete, only for records that get emitted
    return VerificationRecord(
        graph=to_graph6(g),
        n=g.n,
        alpha=a,
        kappa=k,
        omega_min_two_factor=-1,
        hypotheses=hyp,
        conclusions=concl,
        witness=witness,
        status=status,
    )


# -- campaigns -----------------------------------------------------------


def eval_theorem1(g: Graph, budget: Budget) -> VerificationRecord:
    n = g.n
    hyp = {"connected": is_connected(g), "order": False, "alpha": False}
    concl: dict = {"two_factor_le2": None}
    if not hyp["connected"]:
        return _record(g, hyp, concl, CONSISTENT)
    # n >= 3*kappa + 3 only needs kappa up to (n-3)//3 + 1
    top = (n - 3) // 3
    if top < 0:
        return _record(g, hyp, concl, CONSISTENT)
    k = connectivity_value(g, cap=top + 1)
    hyp["order"] = k <= top
    if not hyp["order"]:
        return _record(g, hyp, concl, CONSISTENT)
    hyp["alpha"] = not has_independent_set(g, k + 2)
    if not hyp["alpha"]:
        return _record(g, hyp, concl, CONSISTENT, k=k)
    cert = find_two_factor(g, 2, budget)
    concl["two_factor_le2"] = cert is not None
    if cert is not None:
        return _record(g, hyp, concl, CONSISTENT, cert.lines(), k=k)
    desc = is_in_family_g(g)
    concl["exception_family"] = desc is not None
    if desc is not None:
        return _record(g, hyp, concl, EXCEPTION_FAMILY, desc.as_dict(), k=k)
    return _record(g, hyp, concl, COUNTEREXAMPLE, k=k)


def eval_chvatal_erdos(g: Graph, budget: Budget) -> VerificationRecord:
    hyp = {"connected": is_connected(g), "order": g.n >= 3}
    concl: dict = {"hamiltonian": None, "traceable": None, "hamilton_connected": None}
    if not (hyp["connected"] and hyp["order"]):
        hyp.update({"a": False, "b": False, "c": False})
        return _record(g, hyp, concl, CONSISTENT)
    k = connectivity_value(g)
    a = alpha(g)
    hyp.update({"a": a <= k, "b": a <= k + 1, "c": a <= k - 1})
    bad = False
    if hyp["a"]:
        concl["hamiltonian"] = hamiltonian_cycle(g, budget) is not None
        bad |= not concl["hamiltonian"]
    if hyp["b"]:
        concl["traceable"] = hamiltonian_path(g, budget) is not None
        bad |= not concl["traceable"]
    if hyp["c"]:
        concl["hamilton_connected"] = is_hamilton_connected(g, budget)
        bad |= not concl["hamilton_connected"]
    return _record(g, hyp, concl, COUNTEREXAMPLE if bad else CONSISTENT, a=a, k=k)


def eval_amar(g: Graph, budget: Budget, all_longest: bool | None = None) -> VerificationRecord:
    hyp = {"connected": is_connected(g), "alpha": False, "non_hamiltonian": False}
    concl: dict = {"remainder_complete": None, "all_remainders_complete": None}
    if not hyp["connected"] or g.n < 3:
        return _record(g, hyp, concl, CONSISTENT)
    k = connectivity_value(g)
    a = alpha(g)
    hyp["alpha"] = k >= 1 and a == k + 1
    if not hyp["alpha"]:
        return _record(g, hyp, concl, CONSISTENT, a=a, k=k)
    c = longest_cycle(g, budget)
    hyp["non_hamiltonian"] = c is None or len(c) < g.n
    if not hyp["non_hamiltonian"]:
        return _record(g, hyp, concl, CONSISTENT, a=a, k=k)

    def complete_rest(cyc) -> bool:
        return g.is_clique(g.vertex_mask & ~cyc.mask)

    if c is None:  # acyclic: no longest cycle to test
        return _record(g, hyp, concl, CONSISTENT, a=a, k=k)
    concl["remainder_complete"] = complete_rest(c)
    if all_longest is None:
        all_longest = g.n <= 7
    witness = str(c)
    if all_longest:
        cycles = longest_cycles(g, budget)
        bad = [str(x) for x in cycles if not complete_rest(x)]
        concl["all_remainders_complete"] = not bad
        if bad:
            witness = bad[0]
    ok = concl["remainder_complete"] and concl["all_remainders_complete"] is not False
    return _record(g, hyp, concl, CONSISTENT if ok else COUNTEREXAMPLE, witness, a=a, k=k)


def eval_kaneko_yoshimoto(g: Graph, budget: Budget) -> VerificationRecord:
    hyp = {"connected": is_connected(g), "order": g.n >= 6, "kappa": False, "alpha": False}
    concl: dict = {"two_factor_exactly2": None}
    if not (hyp["connected"] and hyp["order"]):
        return _record(g, hyp, concl, CONSISTENT)
    hyp["kappa"] = connectivity_value(g, cap=4) >= 4
    if not hyp["kappa"]:
        return _record(g, hyp, concl, CONSISTENT)
    k = connectivity_value(g)
    hyp["alpha"] = not has_independent_set(g, k + 1)
    if not hyp["alpha"]:
        return _record(g, hyp, concl, CONSISTENT, k=k)
    cert = find_two_factor_exact_components(g, 2, budget)
    concl["two_factor_exactly2"] = cert is not None
    if cert is None:
        return _record(g, hyp, concl, COUNTEREXAMPLE, k=k)
    return _record(g, hyp, concl, CONSISTENT, cert.lines(), k=k)


def eval_kouider(g: Graph, budget: Budget) -> VerificationRecord:
    hyp = {"connected": is_connected(g), "two_connected": False}
    concl: dict = {"cycle_cover": None}
    if not hyp["connected"] or g.n < 3:
        return _record(g, hyp, concl, CONSISTENT)
    k = connectivity_value(g)
    hyp["two_connected"] = k >= 2
    if not hyp["two_connected"]:
        return _record(g, hyp, concl, CONSISTENT, k=k)
    a = alpha(g)
    need = math.ceil(a / k)
    cover = cycle_cover(g, need, budget)
    concl["cycle_cover"] = cover is not None
    concl["cycles_allowed"] = need
    if cover is None:
        return _record(g, hyp, concl, COUNTEREXAMPLE, a=a, k=k)
    return _record(g, hyp, concl, CONSISTENT, [str(c) for c in cover], a=a, k=k)


CAMPAIGNS: dict[str, Callable[[Graph, Budget], VerificationRecord]] = {
    "theorem1": eval_theorem1,
    "chvatal-erdos": eval_chvatal_erdos,
    "amar": eval_amar,
    "kaneko-yoshimoto": eval_kaneko_yoshimoto,
    "kouider": eval_kouider,
}

_N_LIMITS = {"kouider": MAX_KOUIDER}


def evaluate(campaign: str, g: Graph, budget_limit: int = DEFAULT_BUDGET) -> VerificationRecord:
    """One graph through one campaign; budget exhaustion becomes a skipped record."""
    try:
        return CAMPAIGNS[campaign](g, Budget(budget_limit))
    except BudgetExceeded:
        return _record(g, {}, {}, SKIPPED)


def _complete(rec: VerificationRecord, g: Graph, budget_limit: int) -> VerificationRecord:
    """Fill in exact alpha, kappa and the fewest 2-factor cycles for an emitted record."""
    if rec.alpha is None:
        rec.alpha = alpha(g)
    if rec.kappa is None:
        rec.kappa = connectivity_value(g)
    if rec.status == SKIPPED:
        return rec
    try:
        rec.omega_min_two_factor = min_two_factor_components(g, None, Budget(budget_limit))
    except BudgetExceeded:
        rec.omega_min_two_factor = -1
    return rec


def _work(item):
    campaign, g6, budget_limit, verbose = item
    from .graph import from_graph6

    g = from_graph6(g6)
    rec = evaluate(campaign, g, budget_limit)
    if verbose or rec.status != CONSISTENT:
        return _complete(rec, g, budget_limit).to_json(), rec.status, canonical_form(g)
    return None, rec.status, None


# -- driving a campaign --------------------------------------------------


@dataclass
class Summary:
    campaign: str
    counts: dict = field(default_factory=lambda: {s: 0 for s in STATUSES})
    per_n: dict = field(default_factory=dict)
    total: int = 0
    complete: bool = True

    @property
    def exit_code(self) -> int:
        if self.counts[COUNTEREXAMPLE]:
            return EXIT_COUNTEREXAMPLE
        if self.counts[SKIPPED] or not self.complete:
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    @property
    def verdict(self) -> str:
        return {EXIT_OK: "verified", EXIT_COUNTEREXAMPLE: "counterexample", EXIT_INCONCLUSIVE: "inconclusive"}[self.exit_code]

    def add(self, n: int, status: str) -> None:
        self.counts[status] += 1
        self.total += 1
        row = self.per_n.setdefault(str(n), {s: 0 for s in STATUSES})
        row[status] += 1

    def as_dict(self) -> dict:
        return {
            "campaign": self.campaign,
            "total": self.total,
            "counts": self.counts,
            "per_n": self.per_n,
            "verdict": self.verdict,
        }

    def lines(self) -> list[str]:
        out = [f"{self.campaign}: {self.total} graphs, verdict {self.verdict}"]
        for n, row in sorted(self.per_n.items(), key=lambda kv: int(kv[0])):
            out.append(f"  n={n}: " + ", ".join(f"{s}={row[s]}" for s in STATUSES))
        out.append("  total: " + ", ".join(f"{s}={self.counts[s]}" for s in STATUSES))
        return out


def _stream(n_max: int | None, source: str | None, campaign: str) -> Iterator[tuple[int, int, Graph]]:
    """Yield ``(block, index, graph)``; block is ``n`` for enumeration and 0 for files."""
    if source is not None:
        for idx, (_, g) in enumerate(read_graph6_stream(source)):
            if n_max is None or g.n <= n_max:
                yield 0, idx, g
        return
    if n_max is None:
        raise InvalidArgument("enumerated campaigns need n_max")
    limit = _N_LIMITS.get(campaign, MAX_ENUMERATED)
    if n_max > limit:
        raise SizeLimit(f"{campaign} over enumerated graphs supports n_max <= {limit}, got {n_max}")
    for n in range(1, n_max + 1):
        for idx, g in enumerate(connected_graphs(n)):
            yield n, idx, g


def _load_checkpoint(path: Path, key: dict):
    if not path.exists():
        return None
    data = json.loads(path.read_text())
    if data.get("key") != key:
        raise InvalidArgument(f"checkpoint {path} belongs to a different run")
    return data


def _save_checkpoint(path: Path, key: dict, cursor, summary: Summary, emitted) -> None:
    data = {
        "key": key,
        "cursor": list(cursor),
        "counts": summary.counts,
        "per_n": summary.per_n,
        "total": summary.total,
        "records": [[k.hex(), line] for k, line in emitted],
    }
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(data))
    os.replace(tmp, path)


def default_workers() -> int:
    raw = os.environ.get("TFL_WORKERS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise InvalidArgument(f"TFL_WORKERS must be an integer, got {raw!r}") from None
    return 1


def run_campaign(
    campaign: str,
    n_max: int | None = None,
    source: str | None = None,
    workers: int | None = None,
    budget: int = DEFAULT_BUDGET,
    checkpoint: str | os.PathLike | None = None,
    verbose: bool = False,
    stop_after: int | None = None,
) -> tuple[Summary, list[str]]:
    """Run a campaign; returns the summary and the JSONL lines sorted by canonical key.

    ``stop_after`` ends the run after that many new graphs, leaving the
    checkpoint in place (used to simulate an interruption).
    """
    if campaign not in CAMPAIGNS:
        raise InvalidArgument(f"unknown campaign {campaign!r}")
    workers = default_workers() if workers is None else workers
    if workers < 1:
        raise InvalidArgument(f"workers must be >= 1, got {workers}")
    key = {"campaign": campaign, "n_max": n_max, "source": source, "budget": budget, "verbose": verbose}
    cp_path = Path(checkpoint) if checkpoint is not None else None
    summary = Summary(campaign)
    emitted: list[tuple[bytes, str]] = []
    resume = (0, -1)
    if cp_path is not None:
        data = _load_checkpoint(cp_path, key)
        if data is not None:
            resume = tuple(data["cursor"])
            summary.counts = data["counts"]
            summary.per_n = data["per_n"]
            summary.total = data["total"]
            emitted = [(bytes.fromhex(k), line) for k, line in data["records"]]
            log.info("resuming %s after block %s index %s", campaign, *resume)

    def items():
        for block, idx, g in _stream(n_max, source, campaign):
            if (block, idx) <= resume:
                continue
            yield (block, idx, g.n), (campaign, to_graph6(g), budget, verbose)

    pending = items()
    meta: list[tuple[int, int, int]] = []

    def tagged():
        for m, item in pending:
            meta.append(m)
            yield item

    done = 0
    cursor = resume
    pool = Pool(workers) if workers > 1 else None
    try:
        results = pool.imap(_work, tagged(), chunksize=64) if pool else map(_work, tagged())
        for line, status, ckey in results:
            block, idx, n = meta[done]
            done += 1
            summary.add(n, status)
            if line is not None:
                emitted.append((ckey, line))
                if status == SKIPPED:
                    log.warning("budget exhausted on %s", json.loads(line)["graph"])
                elif status == COUNTEREXAMPLE:
                    log.error("COUNTEREXAMPLE: %s", line)
            cursor = (block, idx)
            if cp_path is not None and done % CHECKPOINT_EVERY == 0:
                _save_checkpoint(cp_path, key, cursor, summary, emitted)
            if stop_after is not None and done >= stop_after:
                summary.complete = False
                break
    except KeyboardInterrupt:
        if cp_path is not None:
            _save_checkpoint(cp_path, key, cursor, summary, emitted)
        raise
    finally:
        if pool is not None:
            pool.terminate()
    if cp_path is not None:
        _save_checkpoint(cp_path, key, cursor, summary, emitted)
    emitted.sort(key=lambda kv: (kv[0], kv[1]))
    return summary, [line for _, line in emitted]


# -- sharpness -----------------------------------------------------------


@dataclass
class SharpnessRow:
    graph: str
    kind: str
    k: int
    n: int
    alpha: int
    kappa: int
    checks: dict

    @property
    def ok(self) -> bool | None:
        vals = list(self.checks.values())
        if any(v is None for v in vals):
            return None
        return all(vals)

    def to_json(self) -> str:
        return json.dumps(
            {
                "graph": self.graph,
                "kind": self.kind,
                "k": self.k,
                "n": self.n,
                "alpha": self.alpha,
                "kappa": self.kappa,
                "checks": self.checks,
            },
            separators=(", ", ": "),
        )


def check_sharpness(k_max: int, budget: int = DEFAULT_BUDGET) -> list[SharpnessRow]:
    """Check both sharpness joins for k = 1..k_max; a None check means the budget ran out."""
    if k_max < 1:
        raise InvalidArgument(f"k_max must be >= 1, got {k_max}")
    rows = []
    for k in range(1, k_max + 1):
        g = sharpness_graph(k)
        a, kap = alpha(g), connectivity_value(g)
        checks: dict = {
            "kappa=k": kap == k,
            "alpha=kappa+1": a == kap + 1,
            "n=3kappa+2": g.n == 3 * kap + 2,
        }
        try:
            checks["non_hamiltonian"] = hamiltonian_cycle(g, Budget(budget)) is None
        except BudgetExceeded:
            checks["non_hamiltonian"] = None
        try:
            checks["no_two_factor_le2"] = find_two_factor(g, 2, Budget(budget)) is None
        except BudgetExceeded:
            checks["no_two_factor_le2"] = None
        checks["not_in_family"] = is_in_family_g(g) is None
        rows.append(SharpnessRow(to_graph6(g), "sharpness", k, g.n, a, kap, checks))

        h = alpha_sharpness_graph(k)
        a, kap = alpha(h), connectivity_value(h)
        checks = {"alpha=kappa+2": a == kap + 2, "n=3k+4": h.n == 3 * k + 4}
        try:
            checks["no_two_factor_le2"] = find_two_factor(h, 2, Budget(budget)) is None
        except BudgetExceeded:
            checks["no_two_factor_le2"] = None
        checks["not_in_family"] = is_in_family_g(h) is None
        rows.append(SharpnessRow(to_graph6(h), "alpha-sharpness", k, h.n, a, kap, checks))
    return rows


def sharpness_exit_code(rows: list[SharpnessRow]) -> int:
    oks = [r.ok for r in rows]
    if any(o is False for o in oks):
        return EXIT_COUNTEREXAMPLE
    if any(o is None for o in oks):
        return EXIT_INCONCLUSIVE
    return EXIT_OK
