"""
Spectral radii and the comparison chains
========================================

Compute rho and q by power iteration, compare with closed forms and with a
dense eigensolver, and print the chain of comparisons for Q_n^1 and R_n^1.
"""

import numpy as np

from bispec import family, lemma35_table, lemma36_chain, q_radius, rho, rho_q1_closed_form, spectral_report
from bispec.graph import complete

print(spectral_report(complete(4, 6)).to_dict())

# rho(Q_n^1) against the root of its quartic
for n in (3, 4, 10, 30):
    print(f"n={n:2d} rho(Q_n^1)={rho(family('Q', n, 1)):.12f} closed form={rho_q1_closed_form(n):.12f}")

# dense cross-check on one graph
g = family("B", 6, 2)
a = g.adjacency()
print("power iteration", rho(g), "eigvalsh", np.linalg.eigvalsh(a)[-1])
print("q", q_radius(g), "eigvalsh", np.linalg.eigvalsh(np.diag(a.sum(1)) + a)[-1])

for check in lemma36_chain(8):
    print(f"{check.bound:28s} {check.left:12.8f} {check.relation:2s} {check.right:12.8f} ok={check.satisfied}")

failed = [c for k in range(1, 4) for n in range(2 * k + 1, 12) for c in lemma35_table(n, k) if not c.satisfied]
print("comparison table failures:", failed)
