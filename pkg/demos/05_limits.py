"""
Finite pieces of generic limits
===============================

The subdivided tree approximates the generic limit of g.  A chain grown by
realizing one-point extensions and witness obligations approximates the
limit of any of the classes.
"""

from wapkit import G_CLASS, K5, generic_chain, subdivided_tree
from wapkit.classes import is_member, undetermined_vertices
from wapkit.serialize import to_dot

T = subdivided_tree(2, 2)
print("tree:", T.n, "vertices, member of g:", is_member(G_CLASS, T))
print(to_dot(T, "tree").splitlines()[0], "...")

state = generic_chain(K5, 200, 40, seed=0)
G = state.current
print("chain size", G.n, "labels", G.labels)
outcomes = {}
for entry in state.log:
    outcomes[entry["outcome"]] = outcomes.get(entry["outcome"], 0) + 1
print("outcomes", outcomes)
early = [v for v in range(G.n) if state.born[v] <= 50]
print(len(early), "vertices born by step 50; undetermined among them:",
      sorted(set(undetermined_vertices(K5, G)) & set(early)))
