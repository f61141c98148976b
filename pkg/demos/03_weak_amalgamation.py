"""
Weak amalgamation witnesses
===========================

Every member H extends to a member G such that any two extensions of G
amalgamate over H.  The construction goes through an intermediate
structure; the free amalgam over it stays in the class.
"""

from wapkit import GA, G_CLASS, K5, certify_wap_sample, wap_witness
from wapkit.classes import undetermined_vertices
from wapkit.structures import graph, vl5

# k5: connect the components, then give each undetermined vertex a neighbour
H = vl5([0, 3])
w = wap_witness(K5, H)
print("intermediate", w.intermediate.labels, sorted(w.intermediate.edges))
print("witness     ", w.structure.labels, sorted(w.structure.edges))
print("undetermined among intermediate vertices:",
      set(undetermined_vertices(K5, w.structure)) & set(w.middle))

# g: a tame extension, then two pendants on every leaf
w = wap_witness(G_CLASS, graph(2, [(0, 1)]))
print("g witness size", w.structure.n, "intermediate size", w.intermediate.n)

# ga: close every bridge into a shortest allowed cycle
w = wap_witness(GA(4, 5), graph(2, [(0, 1)]))
print("ga:4,5 intermediate edges", sorted(w.intermediate.edges))

# bounded check over all members up to size 2 and one-point extensions of the witness
for c, n in ((K5, 2), (G_CLASS, 2)):
    print(certify_wap_sample(c, n).summary())
