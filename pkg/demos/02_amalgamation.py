"""
Amalgams and where they fail
============================

The free amalgam glues two extensions along their common part and adds
nothing else.  The exhaustive oracle also tries every identification of new
vertices and every set of cross tuples.
"""

from wapkit import G_CLASS, K5, amalgam_exists, cap_counterexample, free_amalgam, span_of_extensions
from wapkit.classes import membership
from wapkit.structures import graph, vl5

# two connectors between the same pair: the free amalgam closes a 4-cycle
X = graph(3, [(0, 2), (1, 2)])
span = span_of_extensions(graph(2), X, X)
print("free amalgam edges:", sorted(free_amalgam(span).W.edges))
cert = amalgam_exists(span, membership(G_CLASS))
print(cert.summary())
print("glued amalgam edges:", sorted(cert.witness["W"].edges))

# an undetermined k5 vertex can be given a neighbour labelled i+1 or i+2, never both
span = cap_counterexample(K5, vl5([0]))
print("X labels", span.X.labels, "Y labels", span.Y.labels)
cert = amalgam_exists(span, membership(K5))
print(cert.summary())
print(cert.notes[0])

# agreeing on nothing, the same two extensions amalgamate as a disjoint union
print(amalgam_exists(span, membership(K5), base=[]).summary())
