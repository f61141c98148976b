"""
Five hereditary classes
=======================

Build small structures, ask which classes they belong to, and count members
up to isomorphism.
"""

from wapkit import GA, G_CLASS, K5, P, PZK, enumerate_members, violations
from wapkit.structures import cycle_graph, graph, st, vl5

# a vertex labelled 0 whose neighbours carry labels 1 and 2 is excluded from k5
star = vl5([0, 1, 2], [(0, 1), (0, 2)])
print("k5 star:", violations(K5, star))
print("k5 star with labels 0,1,3:", violations(K5, vl5([0, 1, 3], [(0, 1), (0, 2)])))

# in p, no vertex may receive both an S arc and a T arc
print("p clash:", violations(P, st(3, s=[(0, 2)], t=[(1, 2)])))

# g: forests where no two vertices of degree > 2 are adjacent
double_star = graph(8, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (3, 6)])
print("g double star:", violations(G_CLASS, double_star))

# ga:A allows cycles with lengths in A, edge-disjoint, each with at most two branch points
print("triangle in ga:4,5:", violations(GA(4, 5), cycle_graph(3)))
print("square in ga:4,5:", violations(GA(4, 5), cycle_graph(4)))

# members by size, one per isomorphism type
for c in (K5, P, G_CLASS, GA(3, 4), PZK):
    print(f"{str(c):8}", [len(enumerate_members(c, n)) for n in range(5)])
