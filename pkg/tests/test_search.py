import csv
import io
from math import comb

import pytest

from bispec.errors import ParameterError, SizeLimitError
from bispec.families import family
from bispec.graph import canonical_form, complete, empty
from bispec.search import (
    CSV_COLUMNS,
    EnumFilter,
    VerificationReport,
    dense_count,
    enum_all,
    enum_dense,
    evaluate,
    extremal_audit,
    merge,
    random_graph,
    random_stream,
    reports_to_csv,
    verify,
)
from bispec.theorems import THEOREMS, GraphContext, get_theorem

# generated once from random_graph(4, 4, 0.5, seed=42) and frozen
GOLDEN_SEED42 = "4:4:217c"


def inclusion_exclusion_min_degree_one(m, n):
    """Biadjacency matrices with no zero row and no zero column."""
    return sum(
        (-1) ** (i + j) * comb(m, i) * comb(n, j) * 2 ** ((m - i) * (n - j))
        for i in range(m + 1)
        for j in range(n + 1)
    )


# streams


def test_enum_counts():
    assert sum(1 for _ in enum_all(2, 2)) == 16
    assert sum(1 for _ in enum_all(1, 1)) == 2
    assert sum(1 for _ in enum_all(2, 2, EnumFilter(dedup=True))) == 6


def test_enum_min_degree_matches_inclusion_exclusion():
    for m, n in [(3, 3), (2, 4), (3, 4)]:
        got = sum(1 for _ in enum_all(m, n, EnumFilter(min_degree=1)))
        assert got == inclusion_exclusion_min_degree_one(m, n)
    assert inclusion_exclusion_min_degree_one(3, 3) == 265


def test_enum_edge_filters_and_order():
    gs = list(enum_all(2, 2, EnumFilter(min_edges=1, max_edges=2)))
    assert all(1 <= g.edge_count <= 2 for g in gs) and len(gs) == 4 + 6
    masks = [sum(r << (2 * i) for i, r in enumerate(g.rows)) for g in enum_all(2, 2)]
    assert masks == sorted(masks)
    with pytest.raises(ParameterError):
        list(enum_all(2, 2, EnumFilter(min_edges=3, max_edges=1)))


def test_enum_cap():
    with pytest.raises(SizeLimitError, match="enum_dense"):
        enum_all(6, 6)


def test_dedup_gives_one_graph_per_class():
    gs = list(enum_all(3, 3, EnumFilter(dedup=True)))
    forms = [canonical_form(g) for g in gs]
    assert len(set(forms)) == len(forms) == 26
    assert {canonical_form(g) for g in enum_all(3, 3)} == set(forms)


def test_dense_stream():
    assert dense_count(5, 5, 5) == 68406 == sum(comb(25, i) for i in range(6))
    assert list(enum_dense(3, 3, 0)) == [complete(3, 3)]
    gs = list(enum_dense(3, 3, 2))
    assert len(gs) == dense_count(3, 3, 2) == 1 + 9 + 36
    assert len({g.rows for g in gs}) == len(gs)
    assert all(g.edge_count >= 7 for g in gs)
    assert list(enum_dense(2, 2, -1)) == []
    with pytest.raises(SizeLimitError):
        enum_dense(8, 8, 12)


def test_random_graph():
    assert random_graph(4, 5, 1.0, 3) == complete(4, 5)
    assert random_graph(4, 5, 0.0, 3) == empty(4, 5)
    assert random_graph(4, 4, 0.5, 42).to_compact() == GOLDEN_SEED42
    assert random_graph(6, 3, 0.3, 9) == random_graph(6, 3, 0.3, 9)
    with pytest.raises(ParameterError):
        random_graph(2, 2, 1.5, 0)


def test_random_stream_is_reproducible():
    a = [g.rows for g in random_stream(4, 4, 50, seed=1)]
    b = [g.rows for g in random_stream(4, 4, 50, seed=1)]
    assert a == b and len(a) == 50
    assert a != [g.rows for g in random_stream(4, 4, 50, seed=2)]


# campaigns


def test_registry():
    for tid in ["MM", "T2.1", "T2.2", "T2.3", "T2.4", "T2.5", "T2.6", "T2.7", "T2.8",
                "T6.1", "T6.2", "T6.3", "T6.4", "L4.4", "L4.5"]:
        assert tid in THEOREMS
    assert get_theorem("t2.4").id == "T2.4"
    with pytest.raises(ParameterError):
        get_theorem("T9.9")
    assert get_theorem("T2.8").shape(4) == (4, 3)


def test_report_invariant_and_determinism():
    for tid, n, k in [("T2.4", 3, 0), ("T2.8", 3, 0), ("T2.1", 3, 0), ("T2.5", 3, 1), ("MM", 4, 1)]:
        r = verify(tid, n, k)
        assert r.consistent
        again = verify(tid, n, k)
        assert (again.scanned, again.hits, again.confirmed, again.exceptions, again.counterexamples) == \
            (r.scanned, r.hits, r.confirmed, r.exceptions, r.counterexamples)


def test_t2_4_at_three():
    r = verify("T2.4", 3)
    assert r.scanned == 26 and not r.counterexamples
    assert set(r.exception_classes()) == {canonical_form(family("R", 3, 1)).decode()}


def test_dedup_does_not_change_counterexample_existence():
    for tid, n, k in [("T2.4", 3, 0), ("T2.3", 3, 0), ("T2.1", 3, 1), ("T2.7", 3, 1)]:
        a = verify(tid, n, k, dedup=True)
        b = verify(tid, n, k, dedup=False)
        assert bool(a.counterexamples) == bool(b.counterexamples)
        assert {c["canonical"] for c in a.counterexamples} == {c["canonical"] for c in b.counterexamples}
        assert b.scanned == 2 ** (get_theorem(tid).shape(n)[0] * get_theorem(tid).shape(n)[1])


def test_counterexamples_are_reported_in_full():
    # the k = 0 branch of T2.3 fails already at n = 3
    r = verify("T2.3", 3, 0)
    assert r.counterexamples
    entry = r.counterexamples[0]
    assert {"canonical", "graph", "rho", "q", "rho_hat", "q_hat", "certificate"} <= set(entry)


def test_out_of_range_is_flagged():
    r = verify("T2.1", 3, 1)
    assert not r.in_range
    assert verify("T2.4", 3).in_range


def test_random_mode_budget():
    r = verify("T2.4", 4, mode="random", budget=40, seed=5)
    assert r.scanned == 40 and r.consistent


def test_dense_mode_needs_an_edge_bound():
    with pytest.raises(ParameterError):
        verify("T2.4", 4, mode="dense")
    r = verify("T2.4", 3, mode="dense", max_missing=2, dedup=False)
    assert r.scanned == 1 + 9 + 36


def test_unknown_mode():
    with pytest.raises(ParameterError):
        verify("T2.4", 3, mode="bogus")


def test_errors_are_recorded_not_raised():
    prep = get_theorem("T2.4").prepare(3, 0)

    def broken(ctx):
        raise RuntimeError("boom")

    prep.conclusion = broken
    report = VerificationReport("T2.4", 3, 0, "exhaustive")
    for g in enum_all(3, 3, EnumFilter(dedup=True)):
        evaluate(prep, g, report)
    assert report.scanned == 26 and report.errors
    assert "boom" in report.errors[0]["error"]


def test_borderline_values_settle_at_equality():
    # R_4^1 meets q(G^) <= n with equality
    ctx = GraphContext(family("R", 4, 1))
    assert ctx.at_most("q_hat", 4)
    assert ctx.borderline
    ctx2 = GraphContext(complete(4, 4))
    assert ctx2.at_most("q_hat", 4) and not ctx2.borderline


def test_merge_is_order_insensitive_and_workers_agree():
    serial = verify("T2.3", 3, 0, dedup=False)
    parallel = verify("T2.3", 3, 0, dedup=False, workers=2)
    for field in ("scanned", "hits", "confirmed", "exceptions", "counterexamples", "borderline"):
        assert getattr(serial, field) == getattr(parallel, field)
    a = VerificationReport("X", 1, 0, "m", scanned=2, hits=1, confirmed=1)
    b = VerificationReport("X", 1, 0, "m", scanned=3, hits=1, counterexamples=[{"canonical": "z"}])
    c = VerificationReport("X", 1, 0, "m", scanned=1, hits=1, exceptions=[{"canonical": "y", "matched": []}])
    left, right = merge(merge(a, b), c), merge(c, merge(b, a))
    assert left.to_dict() == right.to_dict()
    assert (a + b).scanned == 5
    with pytest.raises(ParameterError):
        merge(a, VerificationReport("Y", 1, 0, "m"))


def test_csv_export():
    text = reports_to_csv([verify("T2.4", 3)])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == CSV_COLUMNS
    assert rows[1][:4] == ["T2.4", "3", "0", "exhaustive"] and rows[1][8] == "0"


# audits


@pytest.mark.parametrize(
    "name,n,k",
    [("Q", 4, 1), ("Q", 5, 0), ("R", 6, 2), ("R", 4, 1), ("S", 5, 2), ("T", 5, 0), ("Gamma0", 5, None),
     ("Lspider", None, None), ("B", 4, 1), ("L1", None, None), ("L2", None, None)],
)
def test_audits_pass(name, n, k):
    r = extremal_audit(name, n, k)
    assert r.passed, r.notes


def test_audit_values():
    r = extremal_audit("R", 6, 2)
    ctx = GraphContext(family("R", 6, 2))
    assert abs(ctx.value("rho_hat") - 8 ** 0.5) < 1e-9
    assert r.exceptions and all(e["matched"] for e in r.exceptions)
