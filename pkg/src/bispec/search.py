"""Graph streams and theorem-verification campaigns.

Three streams feed a campaign:

* ``exhaustive`` -- every biadjacency mask, optionally one per isomorphism class;
* ``dense``      -- every graph missing at most ``max_missing`` edges;
* ``random``     -- a fixed number of seeded samples.

A campaign counts, for each graph meeting a theorem's hypothesis, whether
the conclusion holds, fails inside the stated exception set, or fails
outside it (a counterexample).
"""

from __future__ import annotations

import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np

from .errors import ParameterError, SizeLimitError
from .families import FamilySpec, build
from .graph import BipartiteGraph, canonical_form, min_degree
from .theorems import GraphContext, Prepared, get_theorem

log = logging.getLogger(__name__)

RAW_BIT_CAP = 30
DENSE_CAP = 5_000_000
CSV_COLUMNS = ["theorem", "n", "k", "mode", "scanned", "hits", "confirmed", "exceptions", "counterexamples", "seconds"]


@dataclass(frozen=True)
class EnumFilter:
    min_degree: int = 0
    min_edges: int = 0
    max_edges: int | None = None
    dedup: bool = False

    def accepts(self, g: BipartiteGraph) -> bool:
        e = g.edge_count
        if e < self.min_edges or (self.max_edges is not None and e > self.max_edges):
            return False
        return self.min_degree <= 0 or min_degree(g) >= self.min_degree


def _rows_of(mask: int, m: int, n: int) -> tuple[int, ...]:
    full = (1 << n) - 1
    return tuple((mask >> (i * n)) & full for i in range(m))


def _filtered(graphs, flt):
    seen = set()
    for g in graphs:
        if not flt.accepts(g):
            continue
        if flt.dedup:
            form = canonical_form(g)
            if form in seen:
                continue
            seen.add(form)
        yield g


def enum_all(m: int, n: int, flt: EnumFilter | None = None) -> Iterator[BipartiteGraph]:
    """Every graph on parts ``(m, n)`` in mask order (row 0 in the low bits)."""
    flt = flt or EnumFilter()
    if flt.max_edges is not None and flt.min_edges > flt.max_edges:
        raise ParameterError("min_edges exceeds max_edges")
    if m * n > RAW_BIT_CAP:
        raise SizeLimitError(
            f"raw enumeration of {m}x{n} needs 2^{m * n} masks (cap 2^{RAW_BIT_CAP}); "
            "use enum_dense or random sampling"
        )
    stream = (BipartiteGraph(m, n, _rows_of(mask, m, n)) for mask in range(1 << (m * n)))
    return _filtered(stream, flt)


def dense_count(m: int, n: int, max_missing: int) -> int:
    return sum(comb(m * n, i) for i in range(max_missing + 1))


def enum_dense(m: int, n: int, max_missing: int, flt: EnumFilter | None = None) -> Iterator[BipartiteGraph]:
    """Graphs whose quasi-complement has at most ``max_missing`` edges,
    by number of missing edges and then lexicographically.
    """
    flt = flt or EnumFilter()
    if max_missing < 0:
        return iter(())
    total = dense_count(m, n, min(max_missing, m * n))
    if total > DENSE_CAP:
        raise SizeLimitError(f"{total} complement-bounded graphs exceeds the cap of {DENSE_CAP}")
    full = (1 << n) - 1
    cells = [(i, j) for i in range(m) for j in range(n)]

    def stream():
        for size in range(min(max_missing, m * n) + 1):
            for missing in combinations(cells, size):
                rows = [full] * m
                for i, j in missing:
                    rows[i] &= ~(1 << j)
                yield BipartiteGraph(m, n, tuple(rows))

    return _filtered(stream(), flt)


def random_graph(m: int, n: int, edge_probability: float, seed) -> BipartiteGraph:
    if not 0.0 <= edge_probability <= 1.0:
        raise ParameterError(f"probability must lie in [0, 1], got {edge_probability}")
    rng = np.random.default_rng(seed)
    hits = rng.random((m, n)) < edge_probability
    return BipartiteGraph(m, n, tuple(int(sum(1 << j for j in np.flatnonzero(row))) for row in hits))


def random_stream(m: int, n: int, budget: int, seed: int = 0) -> Iterator[BipartiteGraph]:
    """``budget`` samples; sample ``i`` draws its density and sub-seed from ``seed``."""
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        p = float(rng.uniform())
        yield random_graph(m, n, p, int(rng.integers(2**63)))


# reports


@dataclass
class VerificationReport:
    theorem: str
    n: int
    k: int
    mode: str
    branch: str = ""
    in_range: bool = True
    scanned: int = 0
    hits: int = 0
    confirmed: int = 0
    exceptions: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    borderline: int = 0
    errors: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def consistent(self) -> bool:
        return self.hits == self.confirmed + len(self.exceptions) + len(self.counterexamples)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.errors and not self.notes

    def exception_classes(self) -> dict[str, list[str]]:
        """Distinct exception graphs (canonical compact form) and the clauses they matched."""
        out: dict[str, list[str]] = {}
        for entry in self.exceptions:
            out.setdefault(entry["canonical"], entry["matched"])
        return out

    def to_dict(self) -> dict:
        d = asdict(self)
        d["exception_classes"] = self.exception_classes()
        return d

    def csv_row(self) -> list:
        return [self.theorem, self.n, self.k, self.mode, self.scanned, self.hits, self.confirmed,
                len(self.exceptions), len(self.counterexamples), f"{self.seconds:.3f}"]

    def __add__(self, other: VerificationReport) -> VerificationReport:
        return merge(self, other)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def _key(entry):
    return (entry.get("canonical", ""), str(entry))


def merge(a: VerificationReport, b: VerificationReport) -> VerificationReport:
    """Combine shard reports; associative and insensitive to order."""
    if (a.theorem, a.n, a.k, a.mode) != (b.theorem, b.n, b.k, b.mode):
        raise ParameterError("can only merge reports of the same campaign")
    return replace(
        a,
        scanned=a.scanned + b.scanned,
        hits=a.hits + b.hits,
        confirmed=a.confirmed + b.confirmed,
        exceptions=sorted(a.exceptions + b.exceptions, key=_key),
        counterexamples=sorted(a.counterexamples + b.counterexamples, key=_key),
        borderline=a.borderline + b.borderline,
        errors=sorted(a.errors + b.errors, key=str),
        notes=sorted(a.notes + b.notes),
        seconds=a.seconds + b.seconds,
    )


# campaigns


def _canonical_or_compact(ctx):
    try:
        return ctx.canonical.decode()
    except SizeLimitError:
        return ctx.g.to_compact()


def evaluate(prep: Prepared, g: BipartiteGraph, report: VerificationReport) -> str:
    """Classify one graph into the report; returns the bucket name."""
    ctx = GraphContext(g)
    report.scanned += 1
    try:
        if not prep.hypothesis(ctx):
            bucket = "skip"
        elif prep.conclusion(ctx):
            report.hits += 1
            report.confirmed += 1
            bucket = "confirmed"
        else:
            report.hits += 1
            matched = prep.exceptions(ctx)
            if matched:
                report.exceptions.append({"canonical": _canonical_or_compact(ctx), "matched": matched})
                bucket = "exception"
            else:
                report.counterexamples.append({
                    "canonical": _canonical_or_compact(ctx),
                    "graph": g.to_dict(),
                    **ctx.spectra(),
                    "certificate": "none: exact search exhausted",
                })
                bucket = "counterexample"
                log.warning("%s counterexample %s", prep.theorem, g.to_compact())
    except Exception as exc:  # recorded per graph, never aborts the campaign
        report.errors.append({"graph": g.to_compact(), "error": f"{type(exc).__name__}: {exc}"})
        bucket = "error"
    if ctx.borderline:
        report.borderline += 1
    return bucket


def _stream(prep: Prepared, mode: str, budget: int, seed: int, dedup: bool, max_missing: int | None):
    m, n = prep.shape
    if mode == "exhaustive":
        return enum_all(m, n, EnumFilter(dedup=dedup))
    if mode == "dense":
        if max_missing is None:
            if not prep.min_edges:
                raise ParameterError(f"{prep.theorem} has no edge bound; pass max_missing for dense mode")
            max_missing = m * n - prep.min_edges
        return enum_dense(m, n, max_missing, EnumFilter(dedup=dedup))
    if mode == "random":
        return random_stream(m, n, budget, seed)
    raise ParameterError(f"unknown mode {mode!r}; expected exhaustive, dense or random")


def _run_shard(theorem, n, k, mode, budget, seed, dedup, max_missing, shard, shards):
    prep = get_theorem(theorem).prepare(n, k)
    report = VerificationReport(prep.theorem, n, k, mode, prep.branch, prep.in_range)
    start = time.perf_counter()
    for index, g in enumerate(_stream(prep, mode, budget, seed, dedup, max_missing)):
        if index % shards == shard:
            evaluate(prep, g, report)
    report.exceptions.sort(key=_key)
    report.counterexamples.sort(key=_key)
    report.errors.sort(key=str)
    report.seconds = time.perf_counter() - start
    return report


def verify(theorem: str, n: int, k: int = 0, mode: str = "exhaustive", budget: int = 1000,
           seed: int = 0, dedup: bool = True, max_missing: int | None = None,
           workers: int = 1) -> VerificationReport:
    """Run one campaign.

    Runs outside the theorem's stated parameter range are allowed and marked
    with ``in_range = False``. ``workers > 1`` shards the stream by position
    across processes; the merged report equals the serial one.
    """
    spec = get_theorem(theorem)
    prep = spec.prepare(n, k)
    if not prep.in_range:
        log.info("%s at n=%d, k=%d is outside the stated range: exploration only", spec.id, n, k)
    args = (spec.id, n, k, mode, budget, seed, dedup, max_missing)
    if workers <= 1:
        return _run_shard(*args, 0, 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_shard, *zip(*[args + (s, workers) for s in range(workers)])))
    out = parts[0]
    for p in parts[1:]:
        out = merge(out, p)
    return out


# extremal audits

# family -> theorems whose exception clause names it: (theorem id, k used)
_AUDITS = {
    "Q": lambda n, k: ([("T2.1", k)] if k != 1 else []) + [("T2.2", k)]
    + ([("T2.3", 0)] if k == 0 else [("T6.1", k), ("T6.2", k)]),
    "R": lambda n, k: [("T2.3", k), ("T2.4", 0)] + ([("T2.1", 1), ("T6.1", 1), ("T6.2", 1)] if k == 1 else []),
    "S": lambda n, k: [("T2.5", k), ("T2.6", k), ("T2.7", k), ("T2.8", 0), ("T6.3", k), ("T6.4", k)]
    + ([("T2.6", 0), ("T2.7", 0)] if k == 1 else []),
    "T": lambda n, k: [("T2.8", 0)] + ([("T2.5", 0), ("T2.7", 0)] if k == 0 else []),
    "Gamma0": lambda n, k: [],
    "Lspider": lambda n, k: [("T2.8", 0)],
    "B": lambda n, k: [("T4.6(1)", k), ("T4.6(2)", k), ("T4.6(3)", k), ("T4.7", 0)],
    "L1": lambda n, k: [("T4.6(3)", 2), ("T4.7", 0)],
    "L2": lambda n, k: [("T4.6(3)", 2), ("T4.7", 0)],
}
_HAMILTON_EXCEPTIONS = {"B", "L1", "L2"}


def extremal_audit(name: str, n: int | None = None, k: int | None = None) -> VerificationReport:
    """Check that a named graph really is the exception it is stated to be.

    For every theorem naming it: the graph meets the hypothesis, fails the
    conclusion and is caught by the exception clause. Independently: the
    graph is non-traceable (or, for the Hamiltonicity exceptions, traceable
    but non-Hamiltonian) and its minimum degree equals ``k`` where a degree
    hypothesis applies. Any failed check is listed in ``notes``.
    """
    spec = FamilySpec(name, n, k)
    g = build(spec)
    n = spec.n
    report = VerificationReport(f"audit:{spec}", n, spec.k if spec.k is not None else 0, "audit")
    start = time.perf_counter()
    ctx = GraphContext(g)
    if spec.name in _HAMILTON_EXCEPTIONS:
        if not ctx.traceable:
            report.notes.append(f"{spec} should be traceable")
        if ctx.hamiltonian:
            report.notes.append(f"{spec} should not be Hamiltonian")
    elif ctx.traceable:
        report.notes.append(f"{spec} should not be traceable")
    if spec.k is not None and spec.name in "QRSTB" and ctx.delta != spec.k:
        report.notes.append(f"min degree of {spec} is {ctx.delta}, expected {spec.k}")
    for theorem, tk in _AUDITS[spec.name](n, spec.k):
        prep = get_theorem(theorem).prepare(n, tk)
        candidate = g if g.shape == prep.shape else g.transpose()
        sub = VerificationReport(theorem, n, tk, "audit")
        bucket = evaluate(prep, candidate, sub)
        report.scanned += sub.scanned
        report.hits += sub.hits
        report.confirmed += sub.confirmed
        report.exceptions += [dict(e, theorem=theorem) for e in sub.exceptions]
        report.counterexamples += sub.counterexamples
        report.errors += sub.errors
        if bucket != "exception":
            report.notes.append(f"{spec} under {theorem} (k={tk}) classified as {bucket}")
    report.seconds = time.perf_counter() - start
    return report
