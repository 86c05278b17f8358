"""
Theorem campaigns on small graphs
=================================

Scan every graph on small parts, keep those meeting a theorem's hypothesis
and sort them into confirmed cases, stated exceptions and counterexamples.
"""

from bispec import extremal_audit, verify
from bispec.search import reports_to_csv

reports = [
    verify("T2.4", 3),
    verify("T2.4", 4),
    verify("T2.8", 4),
    verify("MM", 5, 2, mode="dense"),
    verify("L4.5", 5, 1, mode="dense"),
]
print(reports_to_csv(reports))
print("T2.8 exceptions at n=4:", reports[2].exception_classes())

# the named exception graphs are checked the same way
for name, n, k in [("R", 5, 2), ("Q", 6, 1), ("Lspider", None, None)]:
    audit = extremal_audit(name, n, k)
    print(audit.theorem, "passed" if audit.passed else audit.notes)

# small n lies below the range where T2.1 is stated; results are exploration only
explore = verify("T2.1", 3, 1)
print("T2.1 n=3 k=1 in range:", explore.in_range, "counterexamples:",
      [c["canonical"] for c in explore.counterexamples])
