"""
The ternary reduct of a linear order
====================================

R(x, y, z) holds when x lies below both y and z.  R alone cannot tell the
two greatest points apart, but one extra point above a tuple pins down its
order.
"""

from wapkit import r_from_order, swap_embedding, weak_hom_witness
from wapkit.limits import derived_order, is_order_preserving, pzk_age_check, uniformity_check
from wapkit.structures import enumerate_embeddings, induced_substructure

R = r_from_order(4)
print("R on 4 points:", sorted(R.r)[:4], "...", len(R.r), "tuples")
print("derived 0<1:", derived_order(R, 0, 1), " derived 2<3:", derived_order(R, 2, 3))

# exchanging the two greatest points of B preserves R but not the order
e = swap_embedding(5, [0, 2, 4])
print("swap", e.map, "order preserving:", is_order_preserving(e.map))

# with one point above A every embedding preserves the order on A
n2, B = weak_hom_witness(5, [1, 3])
WB = induced_substructure(r_from_order(n2), B)
maps = [f.map for f in enumerate_embeddings(WB, r_from_order(6))]
print(f"{len(maps)} embeddings of B={B}; all preserve A:", all(is_order_preserving(m[:2]) for m in maps))

print(uniformity_check(5).summary())
print(pzk_age_check(5).summary())
