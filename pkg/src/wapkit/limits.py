"""Finite approximations of generic limits.

* The ternary reduct of a finite linear order, with the order-recovery
  formulas, the one-point witness for weak homogeneity and the swap map
  showing that the witness cannot be dropped.
* The subdivided tree approximating the generic limit of the class ``g``.
* A deterministic chain builder that grows a member by realizing one-point
  extension obligations in first-in-first-out order.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Deque, List, Optional, Sequence, Tuple

from . import classes as cl
from .amalgamation import wap_witness
from .certificate import Certificate
from .classes import ClassId, is_member
from .structures import (
    Builder,
    CapExceeded,
    Embedding,
    FinStructure,
    Sig,
    StructureError,
    canonicalize,
    empty,
    enumerate_embeddings,
    extensions_over,
    graph,
    induced_substructure,
    is_embedding,
    ternary,
)

UNIFORMITY_MAX = 6


# -- the ternary reduct of a linear order ---------------------------------


def r_from_order(n: int) -> FinStructure:
    """R(x,y,z) iff x<y, x<z and y != z, on the order 0 < 1 < ... < n-1."""
    if n < 0:
        raise StructureError("order size must be >= 0")
    return ternary(n, [(x, y, z) for x in range(n) for y in range(x + 1, n) for z in range(x + 1, n) if y != z])


def derived_order(G: FinStructure, x: int, y: int) -> bool:
    """x < y read off as "some z has R(x,y,z)"."""
    if not is_member(cl.PZK, G):
        raise StructureError("derived order needs a member of pzk")
    return any((x, y, z) in G.r for z in range(G.n))


def derived_order_complement(G: FinStructure, x: int, y: int) -> bool:
    """not x < y read off as "x = y or some z has R(y,x,z)"."""
    return x == y or any((y, x, z) in G.r for z in range(G.n))


def is_order_preserving(m: Sequence[int], order: Optional[Sequence[int]] = None) -> bool:
    """Does ``i -> m[i]`` preserve the order given by ranks ``order`` (default
    the natural order on indices) into the natural order of the target?"""
    idx = range(len(m))
    rank = list(idx) if order is None else list(order)
    return all((rank[i] < rank[j]) == (m[i] < m[j]) for i in idx for j in idx if i != j)


def weak_hom_witness(n: int, A: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """``B = A + {b}`` with ``b`` just above ``max(A)``; the order grows by one
    point when there is no room.  Returns ``(n', B)``."""
    A = sorted(set(A))
    if not A:
        raise StructureError("A must be nonempty")
    if A[0] < 0 or A[-1] >= n:
        raise StructureError("A must lie in the order")
    b = A[-1] + 1
    return max(n, b + 1), tuple(A) + (b,)


def swap_embedding(n: int, B: Sequence[int]) -> Embedding:
    """The map on the induced R-structure of ``B`` fixing all but the two
    greatest elements and exchanging those.  It is an R-embedding into the
    order's R-structure and never order-preserving."""
    B = sorted(set(B))
    if len(B) < 2:
        raise StructureError("need |B| >= 2")
    if B[0] < 0 or B[-1] >= n:
        raise StructureError("B must lie in the order")
    R = r_from_order(n)
    image = B[:-2] + [B[-1], B[-2]]
    return Embedding(induced_substructure(R, B), R, image)


def _order_of_member(A: FinStructure) -> List[int]:
    """Ranks of A's vertices in an order whose ternary reduct is A."""
    # the two greatest points are not separated by the derived order (no point
    # lies above both); exchanging them is an automorphism, so break by index
    below = [sum(derived_order(A, u, v) for u in range(A.n)) if A.n >= 3 else 0 for v in range(A.n)]
    ranked = sorted(range(A.n), key=lambda v: (below[v], v))
    return [ranked.index(v) for v in range(A.n)]


def weak_hom_check(n_max: int = UNIFORMITY_MAX) -> Certificate:
    """Both directions of order recovery, exhaustively up to ``n_max``.

    (a) For every order size n <= n_max, every nonempty A and every
    embedding of the witness (B, R) into a larger order's R-structure, the
    restriction to A is order-preserving.  (b) For every B with |B| >= 2 the
    swap map is an R-embedding and not order-preserving.  Also: order
    preserving injections induce R-embeddings."""
    if n_max > UNIFORMITY_MAX:
        raise CapExceeded(f"n_max={n_max} exceeds {UNIFORMITY_MAX}")
    t0 = time.perf_counter()
    checked = swaps = 0
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            for A in itertools.combinations(range(n), k):
                n2, B = weak_hom_witness(n, A)
                WB = induced_substructure(r_from_order(n2), B)
                for m in range(len(B), n_max + 2):
                    for e in enumerate_embeddings(WB, r_from_order(m)):
                        checked += 1
                        if not is_order_preserving(e.map[: len(A)]):
                            return Certificate(False, "pzk-weak-hom", counterexample={"n": n, "A": A, "B": B, "embedding": e},
                                               stats={"embeddings": checked, "millis": _ms(t0)})
        for k in range(2, n + 1):
            for B in itertools.combinations(range(n), k):
                sw = swap_embedding(n, B)
                swaps += 1
                if is_order_preserving(sw.map):
                    return Certificate(False, "pzk-weak-hom", counterexample={"swap": sw}, stats={"millis": _ms(t0)})
        Rn = r_from_order(n)
        for m in range(n, n_max + 1):
            for image in itertools.combinations(range(m), n):
                if not is_embedding(Rn, r_from_order(m), image):
                    return Certificate(False, "pzk-weak-hom", counterexample={"n": n, "image": image}, stats={"millis": _ms(t0)})
    return Certificate(True, "pzk-weak-hom", stats={"embeddings": checked, "swaps": swaps, "max_size": n_max, "millis": _ms(t0)},
                       notes=["witness B = A + one point above A"])


def not_cofinal_check(n_max: int = UNIFORMITY_MAX) -> Certificate:
    """Every tuple with at least two points has a partial R-isomorphism
    that breaks the order, so no finite extension pins the order down."""
    t0 = time.perf_counter()
    witness = None
    for n in range(2, n_max + 1):
        for k in range(2, n + 1):
            for B in itertools.combinations(range(n), k):
                sw = swap_embedding(n, B)
                if is_order_preserving(sw.map):
                    return Certificate(False, "pzk-not-cofinal", counterexample={"B": B}, stats={"millis": _ms(t0)})
                witness = witness or {"n": n, "B": list(B), "swap": sw}
    return Certificate(True, "pzk-not-cofinal", witness=witness, stats={"max_size": n_max, "millis": _ms(t0)},
                       notes=["swap of the two greatest elements is an R-embedding that reverses their order"])


def uniformity_check(n_max: int = UNIFORMITY_MAX) -> Certificate:
    """For every member A of size m <= n_max, the (m+1)-point witness forces
    every embedding to be order-preserving on A; for m >= 2 the witness of
    size m does not."""
    if n_max > UNIFORMITY_MAX:
        raise CapExceeded(f"n_max={n_max} exceeds {UNIFORMITY_MAX}")
    t0 = time.perf_counter()
    checked = 0
    for m in range(1, n_max + 1):
        for A in cl.enumerate_members(cl.PZK, m):
            rank = _order_of_member(A)
            if ternary(m, [tuple(rank[v] for v in t) for t in A.r]) != r_from_order(m):
                return Certificate(False, "pzk-uniform", counterexample={"A": A, "note": "not an order reduct"},
                                   stats={"millis": _ms(t0)})
            W = r_from_order(m + 1)
            for k in range(m + 1, n_max + 2):
                for e in enumerate_embeddings(W, r_from_order(k)):
                    checked += 1
                    if not is_order_preserving(e.map[:m]):
                        return Certificate(False, "pzk-uniform", counterexample={"A": A, "embedding": e},
                                           stats={"embeddings": checked, "millis": _ms(t0)})
            if m >= 2 and is_order_preserving(swap_embedding(m, range(m)).map):
                return Certificate(False, "pzk-uniform", counterexample={"m": m, "note": "m points suffice"},
                                   stats={"millis": _ms(t0)})
    return Certificate(True, "pzk-uniform", stats={"embeddings": checked, "max_size": n_max, "millis": _ms(t0)},
                       notes=["witness size m+1 suffices and m does not for m >= 2"])


def pzk_age_check(n: int = cl.PZK_BRUTE_MAX) -> Certificate:
    """Members of pzk of each size <= n are, up to isomorphism, exactly the
    order reducts: brute force over all candidates in one direction, an
    axiom audit in the other."""
    t0 = time.perf_counter()
    for m in range(n + 1):
        Rm = r_from_order(m)
        if not is_member(cl.PZK, Rm):
            return Certificate(False, "pzk-axioms", counterexample={"order_size": m, "violations": cl.violations(cl.PZK, Rm)},
                               stats={"millis": _ms(t0)})
        members = cl.enumerate_members(cl.PZK, m)
        if [canonicalize(G) for G in members] != [canonicalize(Rm)]:
            return Certificate(False, "pzk-axioms", counterexample={"size": m, "members": members},
                               stats={"millis": _ms(t0)})
    return Certificate(True, "pzk-axioms", stats={"max_size": n, "millis": _ms(t0)},
                       notes=["one isomorphism type per size, the order reduct; not claimed beyond the cap"])


# -- the subdivided tree ---------------------------------------------------


def subdivided_tree(depth: int, branching: int) -> FinStructure:
    """Rooted tree of original vertices, each internal one with ``branching``
    children; the edge to an even-indexed child is split in two, to an
    odd-indexed child in three.  Vertices are numbered breadth first."""
    if depth < 0:
        raise StructureError("depth must be >= 0")
    if branching < 2 or branching % 2:
        raise StructureError("branching must be even and >= 2")
    edges = []
    n = 1
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for j in range(branching):
                prev = v
                for _ in range(1 if j % 2 == 0 else 2):
                    edges.append((prev, n))
                    prev, n = n, n + 1
                edges.append((prev, n))
                nxt.append(n)
                n += 1
        frontier = nxt
    return graph(n, edges)


# -- generic chains ---------------------------------------------------------


@dataclass(frozen=True)
class Obligation:
    """Realize ``ext`` over the vertices ``base`` of the current structure.

    ``ext`` has ``base`` as its prefix and one more vertex; ``ext`` is None
    for a witness obligation, which asks for the part of the class's witness
    construction adjacent to ``base[0]``."""

    base: Tuple[int, ...]
    ext: Optional[FinStructure] = None
    born: int = 0

    @property
    def kind(self) -> str:
        return "extend" if self.ext is not None else "witness"


@dataclass
class ChainState:
    cls: ClassId
    size_cap: int
    current: FinStructure
    task_queue: Deque[Obligation] = field(default_factory=deque)
    witness_queue: Deque[Obligation] = field(default_factory=deque)
    log: List[dict] = field(default_factory=list)
    born: List[int] = field(default_factory=list)
    step: int = 0

    @property
    def pending_witness(self) -> int:
        return len(self.witness_queue)

    def snapshot(self, step: int) -> FinStructure:
        """The structure as it was after ``step`` steps (a prefix)."""
        return induced_substructure(self.current, [v for v in range(self.current.n) if self.born[v] <= step])


def chain_base_size(c: ClassId) -> int:
    # ternary relations need two given points before a third can relate to them
    return 2 if c.sig is Sig.TERNARY else 1


@lru_cache(maxsize=None)
def _types_over(c: ClassId, S: FinStructure) -> Tuple[FinStructure, ...]:
    """One-point member extensions of S, one per type over S, with the new
    point related to S whenever S is nonempty and that is possible."""
    one = [K for K in extensions_over(S, 1, cl.membership(c)) if K.n == S.n + 1]
    w = S.n
    related = [K for K in one if any(w in t and len(set(t)) > 1 for rel, _ in K.relations for t in K.tuples(rel))]
    # over a single point a ternary relation cannot relate; keep the lone type
    return tuple(related if (related and S.n) else one)


def _realized_by(G: FinStructure, base: Tuple[int, ...], ext: FinStructure) -> Optional[int]:
    for u in range(G.n):
        if u not in base and _induced_in_order(G, list(base) + [u]) == ext:
            return u
    return None


def _induced_in_order(G: FinStructure, vs: List[int]) -> FinStructure:
    """Induced substructure on ``vs`` numbered in the given order."""
    pos = {v: i for i, v in enumerate(vs)}
    b = Builder(G.sig, len(vs))
    if G.sig is Sig.VL5:
        b.labels = [G.labels[v] for v in vs]
    for rel, _ in G.relations:
        for t in G.tuples(rel):
            if all(x in pos for x in t):
                b.add(rel, tuple(pos[x] for x in t))
    return b.freeze()


def _add_free_point(G: FinStructure, base: Tuple[int, ...], ext: FinStructure) -> FinStructure:
    b = Builder.from_structure(G)
    w = b.add_vertex(ext.labels[-1] if ext.sig is Sig.VL5 else 0)
    k = len(base)
    to_g = list(base) + [w]
    for rel, _ in ext.relations:
        for t in ext.tuples(rel):
            if k in t:
                b.add(rel, tuple(to_g[x] for x in t))
    return b.freeze()


def _insert_in_order(G: FinStructure, base: Tuple[int, ...], ext: FinStructure) -> Optional[FinStructure]:
    """Members of pzk are order reducts, so a new point is determined by its
    position in the order; try each position, lowest first."""
    rank = _order_of_member(G)
    for p in range(G.n + 1):
        key = [r + (r >= p) for r in rank] + [p]
        H = ternary(G.n + 1, [t for t in itertools.permutations(range(G.n + 1), 3) if _r_holds(key, t)])
        if H.r >= G.r and _induced_in_order(H, list(base) + [G.n]) == ext:
            return H
    return None


def _r_holds(key: Sequence[int], t: Tuple[int, int, int]) -> bool:
    x, y, z = (key[v] for v in t)
    return x < y and x < z and y != z


class GenericChain:
    """Stateful stepping for :func:`generic_chain`.

    Every new vertex enqueues a witness obligation (when the class has a
    witness construction) and the extension obligations over each base of at
    most :func:`chain_base_size` vertices that it completes.  Witness and
    extension obligations sit in separate first-in-first-out queues that are
    popped alternately.  An extension that adds a vertex must leave room for
    every pending witness obligation, so the cap never starves the witness
    construction of a vertex admitted while there was room."""

    def __init__(self, c: ClassId, size_cap: int, seed: int = 0):
        self.rng = random.Random(seed)
        self.state = ChainState(c, size_cap, empty(c.sig))
        self.witnessing = c.kind != "pzk"
        self._enqueue_base(())

    def _enqueue_base(self, base: Tuple[int, ...]):
        st = self.state
        S = _induced_in_order(st.current, list(base))
        types = list(_types_over(st.cls, S))
        self.rng.shuffle(types)
        for K in types:
            st.task_queue.append(Obligation(base, K, st.step))

    def _admit(self, old_n: int):
        st = self.state
        k = chain_base_size(st.cls)
        for v in range(old_n, st.current.n):
            st.born.append(st.step)
            if self.witnessing:
                st.witness_queue.append(Obligation((v,), None, st.step))
            for r in range(1, k + 1):
                for rest in itertools.combinations(range(v), r - 1):
                    self._enqueue_base(rest + (v,))

    def step(self) -> dict:
        st = self.state
        st.step += 1
        entry = {"step": st.step}
        # the two queues take turns; either covers for the other when empty
        queues = [st.witness_queue, st.task_queue]
        if st.step % 2 == 0:
            queues.reverse()
        q = next((q for q in queues if q), None)
        if q is None:
            entry.update(kind="idle", outcome="empty-queue")
            st.log.append(entry)
            return entry
        ob = q.popleft()
        entry.update(kind=ob.kind, base=list(ob.base), enqueued=ob.born)
        G = st.current
        if ob.ext is None:
            new = self._witness_part(G, ob.base[0])
            if new is None:
                entry["outcome"] = "satisfied"
            elif new.n > st.size_cap:
                entry["outcome"] = "skipped-cap"
            else:
                self._grow(new, entry)
        else:
            entry["type"] = ob.ext
            if _realized_by(G, ob.base, ob.ext) is not None:
                entry["outcome"] = "satisfied"
            else:
                reserve = st.pending_witness + (1 if self.witnessing else 0)
                H = self._one_point(G, ob.base, ob.ext)
                if H is None:
                    entry["outcome"] = "skipped-class"
                elif H.n + reserve > st.size_cap:
                    entry["outcome"] = "skipped-cap"
                else:
                    self._grow(H, entry)
        if not is_member(st.cls, st.current):
            raise AssertionError("chain left the class")
        st.log.append(entry)
        return entry

    def _grow(self, H: FinStructure, entry: dict):
        st = self.state
        old = st.current.n
        st.current = H
        entry["outcome"] = "realized"
        entry["added"] = list(range(old, H.n))
        self._admit(old)

    def _one_point(self, G: FinStructure, base: Tuple[int, ...], ext: FinStructure) -> Optional[FinStructure]:
        """A member extending G by one point of type ``ext`` over ``base``."""
        if self.state.cls.kind == "pzk":
            return _insert_in_order(G, base, ext)
        H = _add_free_point(G, base, ext)
        return H if is_member(self.state.cls, H) else None

    def _witness_part(self, G: FinStructure, v: int) -> Optional[FinStructure]:
        """The new vertices of the class witness over G adjacent to v."""
        W = wap_witness(self.state.cls, G).structure
        new = [u for u in range(G.n, W.n) if v in W.adj[u]]
        if not new:
            return None
        return induced_substructure(W, list(range(G.n)) + new)


def generic_chain(c: ClassId, steps: int, size_cap: int, seed: int = 0) -> ChainState:
    """Grow a member of ``c`` from the empty structure for ``steps`` steps.

    Each step pops the oldest obligation of one queue, alternating between
    witness and extension obligations.  An extension obligation is
    satisfied if some existing vertex already realizes the type over its
    base, realized by adding a point with exactly the type's links (for pzk,
    by inserting the point into the recovered order) when that stays in the
    class and under the cap, and skipped otherwise.  A witness
    obligation adds the vertices of the class's witness construction that
    are adjacent to its vertex."""
    if steps < 0 or size_cap < 0:
        raise StructureError("steps and size_cap must be >= 0")
    ch = GenericChain(c, size_cap, seed)
    for _ in range(steps):
        ch.step()
    return ch.state


def _ms(t0: float) -> int:
    return int((time.perf_counter() - t0) * 1000)
