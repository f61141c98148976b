"""Membership predicates for the five hereditary classes, with the cycle,
block and determinacy helpers the amalgamation code relies on.

Class identifiers::

    k5      acyclic graphs with vertex labels in Z/5Z omitting i -- i+1, i -- i+2
    p       two-coloured directed forests with colour-homogeneous in-edges
    g       forests in which no two vertices of degree > 2 are adjacent
    ga:A    graphs whose cycles have lengths in A, are edge-disjoint, and carry
            at most two vertices of degree > 2  (A a set of ints >= 3, |A| >= 2)
    pzk     ternary structures satisfying the four order-reduct axioms

Predicates accept *any* structure of the right signature; malformed tables
(loops, S and T overlapping, ...) make the predicate false rather than raise.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .certificate import Certificate
from .structures import (
    DEFAULT_SIZE_CAP,
    CapExceeded,
    FinStructure,
    Sig,
    SignatureMismatch,
    StructureError,
    canonical_labeling,
    embeds,
    enumerate_structures,
    induced_substructure,
    ternary,
)

CYCLE_CAP = 12


def zmod5(i: int) -> int:
    """The single place where label arithmetic happens."""
    return i % 5


@dataclass(frozen=True)
class ClassId:
    kind: str
    A: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("k5", "p", "g", "ga", "pzk"):
            raise ValueError(f"unknown class {self.kind!r}")
        A = tuple(sorted(set(self.A)))
        if self.kind == "ga":
            if len(A) < 2 or min(A) < 3:
                raise ValueError("ga needs a set of at least two integers, all >= 3")
        elif A:
            raise ValueError(f"{self.kind} takes no parameter")
        object.__setattr__(self, "A", A)

    @classmethod
    def parse(cls, text: str) -> "ClassId":
        text = text.strip().lower()
        if text.startswith("ga:"):
            try:
                A = tuple(int(x) for x in text[3:].split(","))
            except ValueError:
                raise ValueError(f"bad parameter set in {text!r}") from None
            return cls("ga", A)
        return cls(text)

    @property
    def sig(self) -> Sig:
        return {"k5": Sig.VL5, "p": Sig.ST, "g": Sig.GRAPH, "ga": Sig.GRAPH, "pzk": Sig.TERNARY}[self.kind]

    def __str__(self):
        return f"ga:{','.join(map(str, self.A))}" if self.kind == "ga" else self.kind

    def __call__(self, G: FinStructure) -> bool:
        return is_member(self, G)


K5 = ClassId("k5")
P = ClassId("p")
G_CLASS = ClassId("g")
PZK = ClassId("pzk")


def GA(*A: int) -> ClassId:
    return ClassId("ga", tuple(A))


# -- graph helpers -----------------------------------------------------------


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def is_forest(n: int, edges: Iterable[Tuple[int, int]]) -> bool:
    """Acyclicity of a simple undirected graph given by unordered edges."""
    parent = list(range(n))
    for u, v in edges:
        a, b = _find(parent, u), _find(parent, v)
        if a == b:
            return False
        parent[a] = b
    return True


def components(G: FinStructure) -> List[List[int]]:
    """Connected components (of the underlying graph), each sorted, ordered by
    least vertex."""
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in G.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(G: FinStructure) -> bool:
    return len(components(G)) <= 1


def non_discrete(G: FinStructure) -> bool:
    """Contains at least one edge (any tuple, for non-graph signatures)."""
    return any(G.tuples(rel) for rel, _ in G.relations)


def _require(c: ClassId, G: FinStructure):
    if G.sig is not c.sig:
        raise SignatureMismatch(f"class {c} expects {c.sig.value}, got {G.sig.value}")


# -- per-class conditions -----------------------------------------------------
# each returns a list of violated condition names, stopping early when asked


def _k5_violations(G: FinStructure, first: bool) -> List[str]:
    out = []
    if not is_forest(G.n, G.edges):
        out.append("K5 acyclic")
        if first:
            return out
    for v in range(G.n):
        i = G.labels[v]
        nbl = {G.labels[w] for w in G.adj[v]}
        if zmod5(i + 1) in nbl and zmod5(i + 2) in nbl:
            out.append("K5 omitted configuration i-(i+1), i-(i+2)")
            break
    return out


def _directed_forest(G: FinStructure) -> bool:
    arcs = G.s | G.t
    if any(u == v for u, v in arcs):
        return False
    if any((v, u) in arcs for u, v in arcs):
        return False
    return is_forest(G.n, {(min(u, v), max(u, v)) for u, v in arcs})


def _p_violations(G: FinStructure, first: bool) -> List[str]:
    out = []
    if not _directed_forest(G):
        out.append("P condition (1)")
        if first:
            return out
    if G.s & G.t:
        out.append("P condition (2)")
        if first:
            return out
    s_in = {v for _, v in G.s}
    t_in = {v for _, v in G.t}
    if s_in & t_in:
        out.append("P condition (3)")
    return out


def _g_violations(G: FinStructure, first: bool) -> List[str]:
    out = []
    if not is_forest(G.n, G.edges):
        out.append("G acyclic")
        if first:
            return out
    deg = [len(a) for a in G.adj]
    if any(deg[u] > 2 and deg[v] > 2 for u, v in G.edges):
        out.append("G no adjacent vertices of degree > 2")
    return out


def blocks(G: FinStructure) -> List[Tuple[FrozenSet[int], FrozenSet[Tuple[int, int]]]]:
    """Biconnected components as (vertex set, edge set), by Tarjan's algorithm."""
    n = G.n
    disc = [-1] * n
    low = [0] * n
    out = []
    stack: List[Tuple[int, int]] = []
    timer = [0]

    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer[0]
        timer[0] += 1
        it = [(root, -1, iter(sorted(G.adj[root])))]
        while it:
            v, parent, nbrs = it[-1]
            advanced = False
            for w in nbrs:
                if disc[w] == -1:
                    stack.append((v, w))
                    disc[w] = low[w] = timer[0]
                    timer[0] += 1
                    it.append((w, v, iter(sorted(G.adj[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            it.pop()
            if it:
                u = it[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    es = set()
                    while True:
                        e = stack.pop()
                        es.add((min(e), max(e)))
                        if e == (u, v):
                            break
                    vs = frozenset(x for e in es for x in e)
                    out.append((vs, frozenset(es)))
    return out


def _ga_violations(G: FinStructure, A: Tuple[int, ...], first: bool) -> List[str]:
    cyc_blocks = []
    cactus = True
    for vs, es in blocks(G):
        if len(es) == 1:
            continue
        if len(es) == len(vs):
            cyc_blocks.append(vs)
        else:
            cactus = False
    if cactus:
        cycles = cyc_blocks
    else:
        # non-cactus: fall back to explicit cycles for the length condition
        if first:
            return ["GA condition (2)"]
        cycles = [frozenset(c) for c in cycle_catalog(G)]
    out = []
    if any(len(c) not in A for c in cycles):
        out.append("GA condition (1)")
        if first:
            return out
    if not cactus:
        out.append("GA condition (2)")
        if first:
            return out
    deg = [len(a) for a in G.adj]
    if any(sum(1 for v in c if deg[v] > 2) > 2 for c in cycles):
        out.append("GA condition (3)")
    return out


def _pzk_violations(G: FinStructure, first: bool) -> List[str]:
    R = G.r
    out = []
    if any(len(set(t)) != 3 for t in R):
        out.append("PZK axiom (1)")
        if first:
            return out
    if any((x, z, y) not in R for x, y, z in R):
        out.append("PZK axiom (2)")
        if first:
            return out
    by_first: Dict[int, list] = {}
    for y, z, w2 in R:
        by_first.setdefault(y, []).append((z, w2))
    bad3 = any((x, z, w2) not in R for x, y, _w in R for z, w2 in by_first.get(y, ()))
    if bad3:
        out.append("PZK axiom (3)")
        if first:
            return out
    for x, y, z in itertools.combinations(range(G.n), 3):
        for a, b, c in ((x, y, z), (x, z, y)):
            cnt = ((a, b, c) in R) + ((b, c, a) in R) + ((c, a, b) in R)
            if cnt != 1:
                out.append("PZK axiom (4)")
                return out
    return out


def violations(c: ClassId, G: FinStructure, first: bool = False) -> List[str]:
    """Names of the defining conditions of ``c`` that ``G`` violates."""
    _require(c, G)
    if c.kind == "k5":
        return _k5_violations(G, first)
    if c.kind == "p":
        return _p_violations(G, first)
    if c.kind == "g":
        return _g_violations(G, first)
    if c.kind == "ga":
        return _ga_violations(G, c.A, first)
    return _pzk_violations(G, first)


def is_member(c: ClassId, G: FinStructure) -> bool:
    return not violations(c, G, first=True)


def membership(c: ClassId) -> Callable[[FinStructure], bool]:
    return lambda G: is_member(c, G)


# -- determinacy, cycles and tameness -----------------------------------------


def determines(G: FinStructure, v: int, w: int) -> bool:
    """K5: ``v`` is determined by its neighbour ``w`` (label(w) - label(v) is 1 or 2)."""
    return w in G.adj[v] and zmod5(G.labels[w] - G.labels[v]) in (1, 2)


def undetermined_vertices(c: ClassId, G: FinStructure) -> List[int]:
    if c.kind not in ("k5", "p"):
        raise ValueError("determinacy is defined for k5 and p only")
    if not is_member(c, G):
        raise StructureError(f"not a member of {c}")
    if c.kind == "k5":
        return [v for v in range(G.n) if not any(determines(G, v, w) for w in G.adj[v])]
    targets = {v for _, v in G.s | G.t}
    return [v for v in range(G.n) if v not in targets]


def cycle_catalog(G: FinStructure, cap: int = CYCLE_CAP) -> List[Tuple[int, ...]]:
    """Every simple cycle once, as a vertex sequence starting at its least
    vertex and oriented so the second vertex is below the last."""
    if G.sig not in (Sig.GRAPH, Sig.VL5):
        raise SignatureMismatch("cycle catalog needs an undirected graph")
    if G.n > cap:
        raise CapExceeded(f"n={G.n} exceeds cycle cap {cap}")
    out = []
    adj = [sorted(a) for a in G.adj]
    for s in range(G.n):
        path = [s]
        on = {s}

        def dfs(v):
            for w in adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > s and w not in on:
                    path.append(w)
                    on.add(w)
                    dfs(w)
                    on.discard(w)
                    path.pop()

        dfs(s)
    return sorted(out, key=lambda c: (len(c), c))


def cycle_edges(cyc: Sequence[int]) -> Set[Tuple[int, int]]:
    return {(min(a, b), max(a, b)) for a, b in zip(cyc, cyc[1:] + tuple(cyc[:1]))}


def cactus_cycles(G: FinStructure) -> Optional[List[Tuple[int, ...]]]:
    """The cycles of G in catalog form when no two cycles share an edge
    (then each cyclic block is one cycle), else None."""
    out = []
    for vs, es in blocks(G):
        if len(es) == 1:
            continue
        if len(es) != len(vs):
            return None
        nb: Dict[int, List[int]] = {}
        for a, b in es:
            nb.setdefault(a, []).append(b)
            nb.setdefault(b, []).append(a)
        s = min(vs)
        path = [s, min(nb[s])]
        while len(path) < len(vs):
            a, b = nb[path[-1]]
            path.append(a if a != path[-2] else b)
        out.append(tuple(path))
    return sorted(out, key=lambda c: (len(c), c))


def free_cycles(G: FinStructure, c: Optional[ClassId] = None) -> List[Tuple[int, ...]]:
    """Cycles carrying at most one vertex of degree > 2."""
    if c is not None and not is_member(c, G):
        raise StructureError(f"not a member of {c}")
    cycles = cactus_cycles(G)
    if cycles is None:
        cycles = cycle_catalog(G)
    return [cyc for cyc in cycles if sum(1 for v in cyc if G.degree(v) > 2) <= 1]


def bridges(G: FinStructure) -> List[Tuple[int, int]]:
    """Edges lying on no cycle, sorted."""
    return sorted(next(iter(es)) for vs, es in blocks(G) if len(es) == 1)


def is_tame(H: FinStructure) -> bool:
    if not is_member(G_CLASS, H):
        raise StructureError("tameness is defined on members of g")
    if H.n <= 2 or not is_connected(H):
        return False
    deg = [len(a) for a in H.adj]
    for v in range(H.n):
        if deg[v] == 2 and not any(deg[w] > 2 for w in H.adj[v]):
            return False
        if deg[v] == 1 and deg[next(iter(H.adj[v]))] != 2:
            return False
    return True


def forbidden_patterns(patterns: Sequence[FinStructure]) -> Callable[[FinStructure], bool]:
    """Predicate: no pattern occurs as an induced substructure."""
    return lambda G: not any(embeds(p, G) for p in patterns)


def r_from_order_structure(n: int) -> FinStructure:
    """R(x,y,z) iff x < y, x < z and y != z, on 0 < 1 < ... < n-1."""
    return ternary(n, [(x, y, z) for x in range(n) for y in range(n) for z in range(n) if x < y and x < z and y != z])


# -- member enumeration ------------------------------------------------------


# 3^C(n,3) candidates: 59049 at n = 5, far too many at n = 6
PZK_BRUTE_MAX = 5


def pzk_candidates(n: int) -> List[FinStructure]:
    """Every ternary structure on ``range(n)`` satisfying axioms (1), (2) and
    (4): each 3-set gets exactly one apex ``a`` with R(a,b,c), R(a,c,b).
    Every class member is among these."""
    trios = list(itertools.combinations(range(n), 3))
    out = []
    for apexes in itertools.product(range(3), repeat=len(trios)):
        R = []
        for trio, k in zip(trios, apexes):
            a = trio[k]
            b, c = [x for x in trio if x != a]
            R += [(a, b, c), (a, c, b)]
        out.append(ternary(n, R))
    return out


@lru_cache(maxsize=None)
def _members_cached(c: ClassId, n: int) -> Tuple[FinStructure, ...]:
    if c.kind == "pzk" and n <= PZK_BRUTE_MAX:
        found: Dict[tuple, FinStructure] = {}
        for G in pzk_candidates(n):
            if is_member(c, G):
                code, pos = canonical_labeling(G)
                found.setdefault(code, G.relabel(pos))
        return tuple(found[k] for k in sorted(found))
    return tuple(enumerate_structures(c.sig, n, membership(c), hereditary=True, cap=max(n, DEFAULT_SIZE_CAP)))


def enumerate_members(c: ClassId, n: int, cap: int = DEFAULT_SIZE_CAP) -> List[FinStructure]:
    """One representative per isomorphism class of members of size exactly n."""
    if n > cap:
        raise CapExceeded(f"n={n} exceeds cap {cap}")
    return list(_members_cached(c, n))


def members_upto(c: ClassId, n: int, cap: int = DEFAULT_SIZE_CAP, start: int = 0) -> List[FinStructure]:
    return [G for k in range(start, n + 1) for G in enumerate_members(c, k, cap)]


# -- hereditariness ----------------------------------------------------------


def hereditary_check(
    c, n: int, cap: int = DEFAULT_SIZE_CAP, sig: Optional[Sig] = None, name: Optional[str] = None
) -> Certificate:
    """Every induced substructure of every member of size <= n is a member.

    ``c`` is a ClassId or any predicate (then ``sig`` is required).  Plain
    graphs are enumerated exhaustively and filtered; other signatures use the
    one-point extension tree of members, with PZK drawn from its
    axiom-(1),(2),(4) candidate space.
    """
    if n > cap:
        raise CapExceeded(f"n={n} exceeds cap {cap}")
    t0 = time.perf_counter()
    if isinstance(c, ClassId):
        pred, sig, label = membership(c), c.sig, str(c)
    else:
        pred, label = c, name or getattr(c, "__name__", "predicate")
        if sig is None:
            raise ValueError("sig required for a bare predicate")
    checked = subsets = 0
    for k in range(n + 1):
        if isinstance(c, ClassId) and c.kind == "pzk":
            pool = [G for G in pzk_candidates(k) if pred(G)]
        elif sig is Sig.GRAPH or not isinstance(c, ClassId):
            pool = enumerate_structures(sig, k, pred, cap=cap)
        else:
            pool = enumerate_members(c, k, cap)
        for G in pool:
            checked += 1
            for r in range(k):
                for vs in itertools.combinations(range(k), r):
                    subsets += 1
                    H = induced_substructure(G, vs)
                    if not pred(H):
                        return Certificate(
                            False,
                            f"hereditary {label} n<={n}",
                            counterexample={"member": G, "subset": list(vs), "substructure": H},
                            stats={"members": checked, "subsets": subsets, "max_size": n, "millis": _ms(t0)},
                        )
    return Certificate(
        True,
        f"hereditary {label} n<={n}",
        stats={"members": checked, "subsets": subsets, "max_size": n, "millis": _ms(t0)},
        notes=["exhausted every member up to isomorphism and every vertex subset"],
    )


def _ms(t0: float) -> int:
    return int((time.perf_counter() - t0) * 1000)


# -- cycle-family lemmas ------------------------------------------------------


def adjoin_path(G: FinStructure, u: int, v: int, length: int) -> FinStructure:
    """Add a new path with ``length`` edges from ``u`` to ``v`` (``length - 1``
    fresh vertices, appended)."""
    if length < 2:
        raise ValueError("path must have at least two edges")
    b = G.to_builder()
    prev = u
    for _ in range(length - 1):
        x = b.add_vertex()
        b.add_edge(prev, x)
        prev = x
    b.add_edge(prev, v)
    return b.freeze()


def lemma_free_cycle_or_leaf(c: ClassId, n: int, cap: int = DEFAULT_SIZE_CAP) -> Certificate:
    """Every non-discrete member of size <= n has a free cycle or a vertex of
    degree one."""
    if c.kind != "ga":
        raise ValueError("defined for ga classes")
    t0 = time.perf_counter()
    count = 0
    for G in members_upto(c, n, cap):
        if not non_discrete(G):
            continue
        count += 1
        if not any(G.degree(v) == 1 for v in range(G.n)) and not free_cycles(G):
            return Certificate(False, f"free cycle or leaf {c} n<={n}", counterexample={"member": G},
                               stats={"members": count, "max_size": n, "millis": _ms(t0)})
    return Certificate(True, f"free cycle or leaf {c} n<={n}", stats={"members": count, "max_size": n, "millis": _ms(t0)},
                       notes=["every non-discrete member up to isomorphism checked"])


def lemma_new_cycle(c: ClassId, n: int, cap: int = DEFAULT_SIZE_CAP) -> Certificate:
    """For every member of size <= n, every edge on no cycle and every length
    in A, closing that edge into a cycle of that length stays in the class."""
    if c.kind != "ga":
        raise ValueError("defined for ga classes")
    t0 = time.perf_counter()
    cases = 0
    for G in members_upto(c, n, cap):
        for u, v in bridges(G):
            for m in c.A:
                cases += 1
                H = adjoin_path(G, u, v, m - 1)
                if not is_member(c, H):
                    return Certificate(False, f"new-cycle closure {c} n<={n}",
                                       counterexample={"member": G, "edge": [u, v], "length": m, "result": H},
                                       stats={"cases": cases, "max_size": n, "millis": _ms(t0)})
    return Certificate(True, f"new-cycle closure {c} n<={n}", stats={"cases": cases, "max_size": n, "millis": _ms(t0)})


def distinguishing_cycle(A: Iterable[int], B: Iterable[int]) -> int:
    """Least m in the symmetric difference; the m-cycle lies in exactly one of
    ga:A, ga:B."""
    diff = set(A) ^ set(B)
    if not diff:
        raise ValueError("sets are equal")
    return min(diff)


def certify_undetermined(c: ClassId, n: int, cap: int = DEFAULT_SIZE_CAP) -> Certificate:
    """Every nonempty member of size <= n has a vertex that is not determined."""
    t0 = time.perf_counter()
    count = 0
    for G in members_upto(c, n, cap, start=1):
        count += 1
        if not undetermined_vertices(c, G):
            return Certificate(False, f"undetermined vertex {c} n<={n}", counterexample={"member": G},
                               stats={"members": count, "max_size": n, "millis": _ms(t0)})
    return Certificate(True, f"undetermined vertex {c} n<={n}", stats={"members": count, "max_size": n, "millis": _ms(t0)},
                       notes=["every nonempty member up to isomorphism checked"])
