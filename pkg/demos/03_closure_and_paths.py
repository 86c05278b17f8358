"""
Closure and exact Hamilton search
=================================

The B-closure adds cross pairs with degree sum at least n+1. When it reaches
the complete graph the answer is immediate; otherwise an exact subset search
decides the question and produces a certificate.
"""

from bispec import b_closure, family, hamilton_cycle, hamilton_path, is_hamiltonian, is_traceable, max_biclique
from bispec.graph import new_graph

c6 = new_graph(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])
trace = b_closure(c6)
print("C6 closes to", trace.graph.to_compact(), "added", trace.added)

b = family("B", 5, 2)
print("B_5^2 traceable:", is_traceable(b), " Hamiltonian:", is_hamiltonian(b))
print("path certificate:", hamilton_path(b).to_list())
print("cycle certificate:", hamilton_cycle(b))

spider = family("Lspider")
print("spider traceable:", is_traceable(spider))

w = max_biclique(family("B", 5, 1))
print("largest biclique of B_5^1:", (w.s, w.t), w.x_set, w.y_set)
