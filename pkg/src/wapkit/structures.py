"""Finite relational structures over four fixed signatures.

Everything here uses *induced* substructure semantics: an embedding must
preserve and reflect every relation, and "substructure" always means the
induced one.  Graph libraries frequently default to non-induced subgraph
matching; nothing in this package does.

Vertex universes are always ``range(n)``.  Operations that produce new
structures re-index deterministically: surviving vertices keep their relative
order and fresh vertices are appended in creation order.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

DEFAULT_SIZE_CAP = 7


class Sig(str, enum.Enum):
    VL5 = "vl5"
    ST = "st"
    GRAPH = "graph"
    TERNARY = "ternary"


# relation name -> arity, per signature
RELATIONS: Dict[Sig, Tuple[Tuple[str, int], ...]] = {
    Sig.VL5: (("edges", 2),),
    Sig.GRAPH: (("edges", 2),),
    Sig.ST: (("s", 2), ("t", 2)),
    Sig.TERNARY: (("r", 3),),
}

SYMMETRIC = frozenset({"edges"})


class StructureError(ValueError):
    pass


class SignatureMismatch(StructureError):
    pass


class CapExceeded(StructureError):
    pass


def _norm_edge(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


_EMPTY_TABLES = {"edges": frozenset(), "labels": (), "s": frozenset(), "t": frozenset(), "r": frozenset()}


@dataclass(frozen=True)
class FinStructure:
    """A finite structure on ``{0, ..., n-1}``.

    Only the tables belonging to ``sig`` may be populated.  Graph edges are
    stored once per unordered pair as ``(u, v)`` with ``u < v``.
    """

    sig: Sig
    n: int
    edges: FrozenSet[Tuple[int, int]] = frozenset()
    labels: Tuple[int, ...] = ()
    s: FrozenSet[Tuple[int, int]] = frozenset()
    t: FrozenSet[Tuple[int, int]] = frozenset()
    r: FrozenSet[Tuple[int, int, int]] = frozenset()

    def __post_init__(self):
        sig = Sig(self.sig)
        object.__setattr__(self, "sig", sig)
        n = self.n
        if n < 0:
            raise StructureError("negative size")
        if sig in (Sig.VL5, Sig.GRAPH):
            edges = frozenset(_norm_edge(u, v) for u, v in self.edges)
            for u, v in edges:
                if u == v:
                    raise StructureError(f"loop at {u}")
                if not (0 <= u < n and 0 <= v < n):
                    raise StructureError(f"edge {(u, v)} out of range")
            object.__setattr__(self, "edges", edges)
        elif self.edges:
            raise StructureError(f"{sig.value} structures have no edge table")
        if sig is Sig.VL5:
            labels = tuple(self.labels)
            if len(labels) != n:
                raise StructureError("labels must be total")
            if any(not isinstance(x, int) or not 0 <= x < 5 for x in labels):
                raise StructureError("labels must lie in Z/5Z")
            object.__setattr__(self, "labels", labels)
        elif self.labels:
            raise StructureError(f"{sig.value} structures carry no labels")
        for name, arity in (("s", 2), ("t", 2), ("r", 3)):
            rel = frozenset(tuple(x) for x in getattr(self, name))
            if rel and name not in dict(RELATIONS[sig]):
                raise StructureError(f"{sig.value} structures have no {name} table")
            for tup in rel:
                if len(tup) != arity or any(not 0 <= x < n for x in tup):
                    raise StructureError(f"bad {name} tuple {tup}")
            object.__setattr__(self, name, rel)

    @classmethod
    def _trusted(cls, sig: Sig, n: int, **kw) -> "FinStructure":
        """Skip validation; for tables derived from an already valid structure."""
        G = object.__new__(cls)
        G.__dict__.update(_EMPTY_TABLES, sig=sig, n=n, **kw)
        return G

    # -- generic relational access -------------------------------------

    @property
    def relations(self) -> Tuple[Tuple[str, int], ...]:
        return RELATIONS[self.sig]

    def holds(self, rel: str, tup: Sequence[int]) -> bool:
        if rel == "edges":
            u, v = tup
            return u != v and _norm_edge(u, v) in self.edges
        return tuple(tup) in getattr(self, rel)

    def tuples(self, rel: str) -> FrozenSet[tuple]:
        return getattr(self, rel)

    def label(self, v: int) -> Optional[int]:
        return self.labels[v] if self.sig is Sig.VL5 else None

    @cached_property
    def adj(self) -> Tuple[FrozenSet[int], ...]:
        """Neighbourhoods in the underlying undirected (Gaifman-style) graph of
        the binary relations; for ternary structures, co-occurrence in a tuple."""
        nb: List[set] = [set() for _ in range(self.n)]
        for rel, _ in self.relations:
            for tup in self.tuples(rel):
                for a in tup:
                    for b in tup:
                        if a != b:
                            nb[a].add(b)
        return tuple(frozenset(x) for x in nb)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def incidence(self) -> Tuple[Tuple[Tuple[str, tuple], ...], ...]:
        inc: List[list] = [[] for _ in range(self.n)]
        for rel, _ in self.relations:
            for tup in self.tuples(rel):
                for a in set(tup):
                    inc[a].append((rel, tup))
        return tuple(tuple(x) for x in inc)

    def is_empty(self) -> bool:
        return self.n == 0

    def relabel(self, perm: Sequence[int], n: Optional[int] = None) -> "FinStructure":
        """Image of self under the injective vertex map ``perm`` into ``range(n)``.

        Vertices of the target outside the image are isolated (and labeled 0 for
        VL5, which callers are expected to overwrite)."""
        n = self.n if n is None else n
        kw = {}
        for rel, _ in self.relations:
            kw[rel] = frozenset(tuple(perm[x] for x in tup) for tup in self.tuples(rel))
        if self.sig is Sig.VL5:
            labels = [0] * n
            for v in range(self.n):
                labels[perm[v]] = self.labels[v]
            kw["labels"] = tuple(labels)
        return FinStructure(self.sig, n, **kw)

    def to_builder(self) -> "Builder":
        return Builder.from_structure(self)

    def __repr__(self):
        parts = [f"{self.sig.value}", f"n={self.n}"]
        if self.sig in (Sig.VL5, Sig.GRAPH):
            parts.append(f"edges={sorted(self.edges)}")
        if self.sig is Sig.VL5:
            parts.append(f"labels={list(self.labels)}")
        if self.sig is Sig.ST:
            parts.append(f"s={sorted(self.s)} t={sorted(self.t)}")
        if self.sig is Sig.TERNARY:
            parts.append(f"r={sorted(self.r)}")
        return "FinStructure(" + ", ".join(parts) + ")"


class Builder:
    """Mutable scratch structure used by generators and searches."""

    def __init__(self, sig: Sig, n: int = 0):
        self.sig = Sig(sig)
        self.n = n
        self.rels: Dict[str, set] = {rel: set() for rel, _ in RELATIONS[self.sig]}
        self.labels: List[int] = [0] * n if self.sig is Sig.VL5 else []

    @classmethod
    def from_structure(cls, G: FinStructure) -> "Builder":
        b = cls(G.sig, G.n)
        for rel, _ in G.relations:
            b.rels[rel] = set(G.tuples(rel))
        if G.sig is Sig.VL5:
            b.labels = list(G.labels)
        return b

    def add_vertex(self, label: int = 0) -> int:
        v = self.n
        self.n += 1
        if self.sig is Sig.VL5:
            self.labels.append(label)
        return v

    def add(self, rel: str, tup: Sequence[int]):
        if rel == "edges":
            tup = _norm_edge(*tup)
        self.rels[rel].add(tuple(tup))

    def add_edge(self, u: int, v: int):
        self.add("edges", (u, v))

    def freeze(self, check: bool = True) -> FinStructure:
        """Snapshot; ``check=False`` skips validation in hot loops that only
        add in-range, normalized tuples."""
        kw = {rel: frozenset(ts) for rel, ts in self.rels.items()}
        if self.sig is Sig.VL5:
            kw["labels"] = tuple(self.labels)
        if not check:
            return FinStructure._trusted(self.sig, self.n, **kw)
        return FinStructure(self.sig, self.n, **kw)


# -- constructors used throughout --------------------------------------


def graph(n: int, edges: Iterable[Tuple[int, int]] = ()) -> FinStructure:
    return FinStructure(Sig.GRAPH, n, edges=frozenset(edges))


def vl5(labels: Sequence[int], edges: Iterable[Tuple[int, int]] = ()) -> FinStructure:
    return FinStructure(Sig.VL5, len(labels), edges=frozenset(edges), labels=tuple(labels))


def st(n: int, s: Iterable[Tuple[int, int]] = (), t: Iterable[Tuple[int, int]] = ()) -> FinStructure:
    return FinStructure(Sig.ST, n, s=frozenset(s), t=frozenset(t))


def ternary(n: int, r: Iterable[Tuple[int, int, int]] = ()) -> FinStructure:
    return FinStructure(Sig.TERNARY, n, r=frozenset(r))


def empty(sig: Sig) -> FinStructure:
    return FinStructure(Sig(sig), 0)


def path_graph(n: int) -> FinStructure:
    return graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> FinStructure:
    return graph(n, [(i, (i + 1) % n) for i in range(n)])


# -- substructures and embeddings ----------------------------------------


def induced_substructure(G: FinStructure, vs: Iterable[int]) -> FinStructure:
    """Induced substructure on ``vs``, re-indexed in increasing vertex order."""
    keep = sorted(set(vs))
    for v in keep:
        if not 0 <= v < G.n:
            raise StructureError(f"vertex {v} out of range for n={G.n}")
    index = {v: i for i, v in enumerate(keep)}
    kw = {}
    for rel, _ in G.relations:
        kw[rel] = frozenset(
            tuple(index[x] for x in tup) for tup in G.tuples(rel) if all(x in index for x in tup)
        )
    if G.sig is Sig.VL5:
        kw["labels"] = tuple(G.labels[v] for v in keep)
    return FinStructure._trusted(G.sig, len(keep), **kw)


@lru_cache(maxsize=None)
def new_tuples(arity: int, i: int) -> Tuple[tuple, ...]:
    """All ``arity``-tuples over ``range(i + 1)`` that mention ``i``."""
    return tuple(tup for tup in itertools.product(range(i + 1), repeat=arity) if i in tup)


def _compatible(A: FinStructure, B: FinStructure, m: Sequence[int], i: int) -> bool:
    """Does extending the partial map ``m[0..i-1]`` by ``m[i]`` keep it an
    induced embedding on ``{0..i}``?"""
    if A.sig is Sig.VL5 and A.labels[i] != B.labels[m[i]]:
        return False
    for rel, arity in A.relations:
        for tup in new_tuples(arity, i):
            if A.holds(rel, tup) != B.holds(rel, tuple(m[x] for x in tup)):
                return False
    return True


def is_embedding(A: FinStructure, B: FinStructure, m: Sequence[int]) -> bool:
    if A.sig != B.sig or len(m) != A.n or len(set(m)) != len(m):
        return False
    if any(not 0 <= x < B.n for x in m):
        return False
    return all(_compatible(A, B, m, i) for i in range(A.n))


@dataclass(frozen=True)
class Embedding:
    dom: FinStructure
    cod: FinStructure
    map: Tuple[int, ...]
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if self.check and not is_embedding(self.dom, self.cod, self.map):
            raise StructureError(f"not an embedding: {self.map}")

    def __call__(self, v: int) -> int:
        return self.map[v]

    def __getitem__(self, v: int) -> int:
        return self.map[v]

    @property
    def image(self) -> Tuple[int, ...]:
        return self.map

    def compose(self, other: "Embedding") -> "Embedding":
        """``other`` after ``self``."""
        if self.cod != other.dom:
            raise StructureError("embeddings do not compose")
        return Embedding(self.dom, other.cod, tuple(other.map[x] for x in self.map))

    def restrict(self, vs: Sequence[int]) -> "Embedding":
        """Restriction to the induced substructure of ``dom`` on ``vs``."""
        keep = sorted(set(vs))
        return Embedding(induced_substructure(self.dom, keep), self.cod, tuple(self.map[v] for v in keep))


def identity(G: FinStructure) -> Embedding:
    return Embedding(G, G, tuple(range(G.n)), check=False)


def inclusion(G: FinStructure, H: FinStructure) -> Embedding:
    """The prefix inclusion ``v -> v`` of a structure into an extension that
    appended vertices after it."""
    return Embedding(G, H, tuple(range(G.n)))


def enumerate_embeddings(A: FinStructure, B: FinStructure) -> Iterator[Embedding]:
    """Every embedding ``A -> B``, in lexicographic order of image tuples."""
    if A.sig != B.sig:
        raise SignatureMismatch(f"{A.sig.value} vs {B.sig.value}")
    if A.n > B.n:
        return
    m: List[int] = []
    used = [False] * B.n

    def rec(i):
        if i == A.n:
            yield Embedding(A, B, tuple(m), check=False)
            return
        for b in range(B.n):
            if used[b]:
                continue
            m.append(b)
            if _compatible(A, B, m, i):
                used[b] = True
                yield from rec(i + 1)
                used[b] = False
            m.pop()

    yield from rec(0)


def embeds(A: FinStructure, B: FinStructure) -> bool:
    return next(enumerate_embeddings(A, B), None) is not None


# -- canonical forms -------------------------------------------------------


CanonicalForm = tuple


def _encode(G: FinStructure, pos: Sequence[int]) -> tuple:
    """Serialization of G after sending vertex v to position ``pos[v]``."""
    parts: list = [G.sig.value, G.n]
    if G.sig is Sig.VL5:
        lab = [0] * G.n
        for v in range(G.n):
            lab[pos[v]] = G.labels[v]
        parts.append(tuple(lab))
    for rel, _ in G.relations:
        if rel == "edges":
            parts.append(tuple(sorted(_norm_edge(pos[u], pos[v]) for u, v in G.edges)))
        else:
            parts.append(tuple(sorted(tuple(pos[x] for x in tup) for tup in G.tuples(rel))))
    return tuple(parts)


def _rank(keys: Sequence) -> List[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(G: FinStructure, colors: List[int]) -> List[int]:
    inc = G.incidence
    ncol = len(set(colors))
    while True:
        keys = []
        for v in range(G.n):
            sig = []
            for rel, tup in inc[v]:
                pat = tuple(-1 if x == v else colors[x] for x in tup)
                sig.append((rel, tuple(sorted(pat)) if rel in SYMMETRIC else pat))
            sig.sort()
            keys.append((colors[v], tuple(sig)))
        new = _rank(keys)
        k = len(set(new))
        if k == ncol:
            return new
        colors, ncol = new, k


def _swap_is_automorphism(G: FinStructure, u: int, v: int) -> bool:
    if G.sig is Sig.VL5 and G.labels[u] != G.labels[v]:
        return False
    sw = lambda x: v if x == u else (u if x == v else x)  # noqa: E731
    for rel, _ in G.relations:
        for tup in G.tuples(rel):
            if (u in tup or v in tup) and not G.holds(rel, tuple(sw(x) for x in tup)):
                return False
    return True


def canonical_labeling(G: FinStructure, pinned: int = 0) -> Tuple[CanonicalForm, Tuple[int, ...]]:
    """Canonical form and a vertex map ``v -> position`` realizing it.

    Individualization-refinement: colour refinement, then branch on the
    first non-singleton cell; sibling branches related by a transposition
    automorphism are skipped.  ``pinned`` vertices ``0..pinned-1`` are held
    fixed individually, giving canonical forms of extensions *over* that
    prefix.
    """
    init = []
    for v in range(G.n):
        lab = G.labels[v] if G.sig is Sig.VL5 else 0
        init.append((0, v, lab) if v < pinned else (1, 0, lab))
    best: list = [None, None]

    def search(colors):
        colors = _refine(G, colors)
        if len(set(colors)) == G.n:
            code = _encode(G, colors)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, tuple(colors)
            return
        cells: Dict[int, list] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        c = min(k for k, vs in cells.items() if len(vs) > 1)
        tried: list = []
        for v in cells[c]:
            if any(_swap_is_automorphism(G, u, v) for u in tried):
                continue
            tried.append(v)
            search(_rank([(colors[x], 0 if x == v else 1) for x in range(G.n)]))

    search(_rank(init))
    if G.n == 0:
        return _encode(G, []), ()
    return best[0], best[1]


def canonicalize(G: FinStructure, pinned: int = 0) -> CanonicalForm:
    """Isomorphism-invariant serialization: equal iff isomorphic (same sig)."""
    return canonical_labeling(G, pinned)[0]


def canonical_structure(G: FinStructure) -> FinStructure:
    _, pos = canonical_labeling(G)
    return G.relabel(pos)


def is_isomorphic(G: FinStructure, H: FinStructure) -> bool:
    return G.sig == H.sig and G.n == H.n and canonicalize(G) == canonicalize(H)


def permute(G: FinStructure, perm: Sequence[int]) -> FinStructure:
    return G.relabel(perm)


# -- one-vertex extensions -------------------------------------------------


def _own_options(sig: Sig, ternary_space: str) -> List[Tuple[int, list]]:
    """(label, tuples on the new vertex alone) choices for a fresh vertex ``w``.
    ``w`` is written as -1 and substituted by the caller."""
    if sig is Sig.VL5:
        return [(lab, []) for lab in range(5)]
    if sig is Sig.ST:
        loops = [("s", (-1, -1)), ("t", (-1, -1))]
        return [(0, list(c)) for k in range(3) for c in itertools.combinations(loops, k)]
    if sig is Sig.TERNARY and ternary_space == "full":
        return [(0, []), (0, [("r", (-1, -1, -1))])]
    return [(0, [])]


def pair_options(sig: Sig, w: int, x: int, decided: Sequence[int], ternary_space: str = "apex") -> List[list]:
    """Choices for the tuples linking a new vertex ``w`` to ``x``, given
    vertices ``decided`` whose links to ``w`` are already fixed.

    Each choice is a list of ``(rel, tuple)``.  For ternary structures the
    default ``"apex"`` space only produces tuples with three distinct entries
    closed under swapping the last two, which loses nothing for any class whose
    members satisfy those two conditions (the ordered-triple class does);
    ``"full"`` enumerates every ordered triple.
    """
    if sig in (Sig.VL5, Sig.GRAPH):
        return [[], [("edges", (w, x))]]
    if sig is Sig.ST:
        atoms = [("s", (w, x)), ("s", (x, w)), ("t", (w, x)), ("t", (x, w))]
        return [list(c) for k in range(5) for c in itertools.combinations(atoms, k)]
    if ternary_space == "full":
        pool = [w, x, *decided]
        atoms = [("r", tup) for tup in itertools.product(pool, repeat=3) if w in tup and x in tup]
        return [list(c) for k in range(len(atoms) + 1) for c in itertools.combinations(atoms, k)]
    # apex space: per 3-set {w, x, c}, any subset of apexes
    per_set = []
    for c in decided:
        trio = (w, x, c)
        choices = []
        for k in range(4):
            for apexes in itertools.combinations(trio, k):
                tups = []
                for a in apexes:
                    b, d = [y for y in trio if y != a]
                    tups += [("r", (a, b, d)), ("r", (a, d, b))]
                choices.append(tups)
        per_set.append(choices)
    return [sum(combo, []) for combo in itertools.product(*per_set)]


def one_point_extensions(
    G: FinStructure,
    check: Optional[Callable[[FinStructure], bool]] = None,
    ternary_space: str = "apex",
) -> Iterator[FinStructure]:
    """All structures on ``G.n + 1`` vertices whose restriction to
    ``range(G.n)`` is ``G`` (new vertex last).

    With ``check`` given, it must be a hereditary predicate: partial choices are
    pruned as soon as an induced substructure of the final result fails it.
    """
    w = G.n
    for label, own in _own_options(G.sig, ternary_space):
        b = Builder.from_structure(G)
        b.add_vertex(label)
        for rel, tup in own:
            b.add(rel, tuple(w if x == -1 else x for x in tup))
        if check is not None and not check(induced_substructure(b.freeze(False), [w])):
            continue
        yield from assign_links(b, w, list(range(G.n)), [], check, ternary_space)


def assign_links(
    b: Builder,
    w: int,
    free: List[int],
    settled: List[int],
    check: Optional[Callable[[FinStructure], bool]],
    ternary_space: str = "apex",
) -> Iterator[FinStructure]:
    """Backtrack over the links from vertex ``w`` of ``b`` to each vertex of
    ``free``, in order.

    ``settled`` lists vertices whose links to ``w`` are already final.  After
    each decision the induced substructure on ``settled + decided + [w]`` is
    a substructure of every completion, so a hereditary ``check`` may prune it.
    """
    if not free:
        yield b.freeze(False)
        return
    x = free[0]
    for choice in pair_options(b.sig, w, x, settled, ternary_space):
        added = []
        for rel, tup in choice:
            key = _norm_edge(*tup) if rel == "edges" else tuple(tup)
            if key not in b.rels[rel]:
                b.rels[rel].add(key)
                added.append((rel, key))
        if check is None or check(induced_substructure(b.freeze(False), settled + [x, w])):
            yield from assign_links(b, w, free[1:], settled + [x], check, ternary_space)
        for rel, key in added:
            b.rels[rel].discard(key)


# -- enumeration up to isomorphism -----------------------------------------


def enumerate_structures(
    sig: Sig,
    n: int,
    pred: Callable[[FinStructure], bool] = lambda G: True,
    *,
    hereditary: bool = False,
    cap: int = DEFAULT_SIZE_CAP,
    ternary_space: str = "apex",
) -> List[FinStructure]:
    """One representative per isomorphism class of size-``n`` structures
    satisfying ``pred``, sorted by canonical form.

    Representatives are returned in canonical labeling.  Generation extends
    each representative of size ``k-1`` by one vertex; with
    ``hereditary=True`` the predicate also prunes the intermediate levels
    (complete only when ``pred`` really is hereditary).
    """
    sig = Sig(sig)
    if n > cap:
        raise CapExceeded(f"n={n} exceeds cap {cap}")
    return list(_levels(sig, n, pred if hereditary else None, ternary_space)[-1].values()) if hereditary else [
        G for G in _levels(sig, n, None, ternary_space)[-1].values() if pred(G)
    ]


def _levels(sig: Sig, n: int, check, ternary_space: str) -> List[Dict[CanonicalForm, FinStructure]]:
    level = {canonicalize(empty(sig)): empty(sig)} if check is None or check(empty(sig)) else {}
    levels = [level]
    for _ in range(n):
        nxt: Dict[CanonicalForm, FinStructure] = {}
        for G in level.values():
            for H in one_point_extensions(G, check, ternary_space):
                code, pos = canonical_labeling(H)
                if code not in nxt:
                    nxt[code] = H.relabel(pos)
        level = dict(sorted(nxt.items()))
        levels.append(level)
    return levels


def extensions_over(
    G: FinStructure,
    extra: int,
    check: Optional[Callable[[FinStructure], bool]] = None,
    ternary_space: str = "apex",
) -> List[FinStructure]:
    """Extensions of ``G`` by ``0..extra`` appended vertices, one per
    isomorphism class over ``G`` (isomorphisms fixing ``G`` pointwise)."""
    out = {canonicalize(G, pinned=G.n): G}
    frontier = [G]
    for _ in range(extra):
        nxt = {}
        for H in frontier:
            for K in one_point_extensions(H, check, ternary_space):
                code = canonicalize(K, pinned=G.n)
                if code not in out and code not in nxt:
                    nxt[code] = K
        out.update(nxt)
        frontier = list(nxt.values())
    return [out[k] for k in sorted(out, key=lambda c: (c[1], c))]
