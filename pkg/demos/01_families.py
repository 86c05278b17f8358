"""
Extremal families and their block structure
===========================================

Build the named graphs, look at their compact encodings and check that the
edge-maximal graph of each block class really is its largest member.
"""

from bispec import BipartiteGraph, canonical_form, class_members, expected_edge_count, family, FamilySpec, member_of_class

# Q_n^k = K_{k,n-k-1} join Phi_{n-k,k+1}; X1 comes first in the layout
q = family("Q", 6, 1)
print("Q_6^1", q.to_compact(), "edges", q.edge_count, "expected", expected_edge_count(FamilySpec("Q", 6, 1)))

for name in ("Lspider", "L1", "L2"):
    g = family(name)
    print(f"{name:8s} parts {g.shape} edges {g.edge_count}  {g.to_compact()}")

# every member of the S-class at n=5, k=1 differs only in the free block
members = list(class_members("S", 5, 1))
top = max(members, key=lambda g: g.edge_count)
print("S-class members:", len(members), "largest is S_5^1:",
      canonical_form(top) == canonical_form(family("S", 5, 1)))

# membership is label-free: a shuffled copy is still recognised
s = family("S", 5, 1)
shuffled = BipartiteGraph(s.m, s.n, s.rows[::-1])
print("witness:", member_of_class(shuffled, "S", 5, 1))
