"""Amalgams: free amalgamation, an exhaustive existence oracle, the witness
constructions for the weak amalgamation property, and bounded certifiers.

Search-space normal form
------------------------
Given a span ``Z -f-> X``, ``Z -g-> Y`` and a base ``B <= Z`` on which the
two legs must agree, any amalgam ``(W, f', g')`` can be cut down to the
substructure induced on ``f'(X) u g'(Y)`` without losing membership (the
classes are hereditary) or the agreement.  That substructure is described
completely by

* which vertices of ``Y`` are glued to which vertices of ``X`` -- forced on
  ``g(B)``, a free partial injection elsewhere, and
* which tuples join an ``X``-only vertex to a ``Y``-only vertex; every other
  tuple is dictated by ``X`` or by ``Y``.

:func:`amalgam_exists` enumerates exactly this space, so a failed search is
a proof that no amalgam exists.  It adds the ``Y``-only vertices one at a
time and, for hereditary predicates, rejects a branch as soon as an induced
piece of the structure under construction leaves the class.
"""

from __future__ import annotations

import enum
import random
import time
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import classes as cl
from .certificate import Certificate
from .classes import ClassId, components, is_member, membership, non_discrete, zmod5
from .structures import (
    Builder,
    CapExceeded,
    Embedding,
    FinStructure,
    Sig,
    SignatureMismatch,
    StructureError,
    assign_links,
    empty,
    enumerate_embeddings,
    extensions_over,
    induced_substructure,
    is_embedding,
    new_tuples,
)

DEFAULT_CAP_SUM = 12
TERNARY_CAP_SUM = 8

Membership = Callable[[FinStructure], bool]


class Over(str, enum.Enum):
    ALL = "all"
    BASE = "base"


@dataclass(frozen=True)
class AmalgamSpan:
    Z: FinStructure
    f: Embedding
    g: Embedding

    def __post_init__(self):
        if self.f.dom != self.Z or self.g.dom != self.Z:
            raise StructureError("both legs must start at Z")
        if not (self.Z.sig == self.X.sig == self.Y.sig):
            raise SignatureMismatch("span mixes signatures")

    @property
    def X(self) -> FinStructure:
        return self.f.cod

    @property
    def Y(self) -> FinStructure:
        return self.g.cod

    def swapped(self) -> "AmalgamSpan":
        return AmalgamSpan(self.Z, self.g, self.f)

    def restrict(self, vs: Sequence[int]) -> "AmalgamSpan":
        """The span over the induced substructure of Z on ``vs``."""
        f, g = self.f.restrict(vs), self.g.restrict(vs)
        return AmalgamSpan(f.dom, f, g)


def span_of_extensions(Z: FinStructure, X: FinStructure, Y: FinStructure) -> AmalgamSpan:
    """Span of prefix inclusions ``Z <= X``, ``Z <= Y``."""
    return AmalgamSpan(Z, Embedding(Z, X, range(Z.n)), Embedding(Z, Y, range(Z.n)))


@dataclass(frozen=True)
class AmalgamSolution:
    W: FinStructure
    f1: Embedding
    g1: Embedding
    over: Over = Over.ALL
    base: Tuple[int, ...] = ()

    def agrees_on(self, span: AmalgamSpan, vs: Iterable[int]) -> bool:
        return all(self.f1[span.f[z]] == self.g1[span.g[z]] for z in vs)

    def verify(self, span: AmalgamSpan, member: Optional[Membership] = None) -> bool:
        """Replay: both legs are embeddings, they agree where required, and
        ``W`` is a member."""
        if self.f1.dom != span.X or self.g1.dom != span.Y:
            return False
        if not (is_embedding(span.X, self.W, self.f1.map) and is_embedding(span.Y, self.W, self.g1.map)):
            return False
        vs = range(span.Z.n) if self.over is Over.ALL else self.base
        if not self.agrees_on(span, vs):
            return False
        return member is None or member(self.W)


def free_amalgam(span: AmalgamSpan) -> AmalgamSolution:
    """Glue ``Y`` to ``X`` along ``g(z) ~ f(z)`` and nothing else.

    ``W`` has universe ``X`` followed by ``Y \\ g(Z)`` in ``Y`` order and no
    tuples across the two sides.  Membership of ``W`` is the caller's
    business."""
    X, Y, f, g = span.X, span.Y, span.f, span.g
    b = Builder.from_structure(X)
    ymap: Dict[int, int] = {g[z]: f[z] for z in range(span.Z.n)}
    for y in range(Y.n):
        if y not in ymap:
            ymap[y] = b.add_vertex(Y.labels[y] if Y.sig is Sig.VL5 else 0)
    for rel, _ in Y.relations:
        for tup in Y.tuples(rel):
            b.add(rel, tuple(ymap[x] for x in tup))
    W = b.freeze()
    return AmalgamSolution(
        W,
        Embedding(X, W, range(X.n)),
        Embedding(Y, W, tuple(ymap[y] for y in range(Y.n))),
        Over.ALL,
        tuple(range(span.Z.n)),
    )


# -- the oracle ------------------------------------------------------------


def _glue_ok(X: FinStructure, Y: FinStructure, theta: Dict[int, int], y: int, x: int) -> bool:
    """Can ``y`` be identified with ``x`` given the identifications ``theta``?"""
    if X.sig is Sig.VL5 and X.labels[x] != Y.labels[y]:
        return False
    ys = list(theta) + [y]
    xs = [theta[v] for v in theta] + [x]
    i = len(ys) - 1
    for rel, arity in Y.relations:
        for idx in new_tuples(arity, i):
            if Y.holds(rel, tuple(ys[k] for k in idx)) != X.holds(rel, tuple(xs[k] for k in idx)):
                return False
    return True


def _pop_vertex(b: Builder):
    w = b.n - 1
    for rel in b.rels:
        b.rels[rel] = {tup for tup in b.rels[rel] if w not in tup}
    b.n -= 1
    if b.sig is Sig.VL5:
        b.labels.pop()


def _search(
    span: AmalgamSpan,
    member: Membership,
    base: Sequence[int],
    hereditary: bool,
    ternary_space: str,
    stats: Dict[str, int],
) -> Iterable[AmalgamSolution]:
    X, Y, f, g = span.X, span.Y, span.f, span.g
    forced = {g[z]: f[z] for z in base}
    natural = {g[z]: f[z] for z in range(span.Z.n)}
    free_y = [y for y in range(Y.n) if y not in forced]
    check = member if hereditary else None
    over = Over.ALL if len(base) == span.Z.n else Over.BASE

    def thetas(k: int, theta: Dict[int, int], used: set):
        if k == len(free_y):
            yield dict(theta)
            return
        y = free_y[k]
        order: List[Optional[int]] = []
        if y in natural and natural[y] not in used:
            order.append(natural[y])
        order.append(None)
        order += [x for x in range(X.n) if x not in used and x not in order]
        for x in order:
            if x is None:
                yield from thetas(k + 1, theta, used)
            elif _glue_ok(X, Y, theta, y, x):
                theta[y] = x
                used.add(x)
                yield from thetas(k + 1, theta, used)
                del theta[y]
                used.discard(x)

    for theta in thetas(0, dict(forced), set(forced.values())):
        stats["identifications"] += 1
        glued = sorted(set(theta.values()))
        x_only = [x for x in range(X.n) if x not in set(glued)]
        y_only = [y for y in range(Y.n) if y not in theta]
        b = Builder.from_structure(X)
        ymap = dict(theta)

        def place(k: int, settled: List[int]):
            if k == len(y_only):
                stats["candidates"] += 1
                W = b.freeze(False)
                if member(W):
                    yield W, dict(ymap)
                return
            y = y_only[k]
            w = b.add_vertex(Y.labels[y] if Y.sig is Sig.VL5 else 0)
            ymap[y] = w
            for rel, _ in Y.relations:
                for tup in Y.tuples(rel):
                    if y in tup and all(v in ymap for v in tup):
                        b.add(rel, tuple(ymap[v] for v in tup))
            if check is None or check(induced_substructure(b.freeze(False), settled + [w])):
                for _ in assign_links(b, w, x_only, list(settled), check, ternary_space):
                    yield from place(k + 1, settled + [w])
            del ymap[y]
            _pop_vertex(b)

        if check is not None and not check(X):
            return
        for W, ym in place(0, list(glued)):
            f1 = Embedding(X, W, range(X.n))
            g1 = Embedding(Y, W, tuple(ym[y] for y in range(Y.n)))
            yield AmalgamSolution(W, f1, g1, over, tuple(base))


def amalgam_exists(
    span: AmalgamSpan,
    member: Membership,
    *,
    base: Optional[Sequence[int]] = None,
    hereditary: bool = True,
    cap_sum: Optional[int] = None,
    ternary_space: str = "apex",
    hint: Optional[AmalgamSolution] = None,
    claim: str = "amalgam",
) -> Certificate:
    """Decide whether the span has an amalgam in the class.

    ``base`` (default: all of Z) is where the two legs must agree.  With
    ``hereditary=False`` no partial pruning happens and only complete
    candidates are tested.  A ``hint`` that replays successfully settles a
    positive answer without searching.
    """
    t0 = time.perf_counter()
    if cap_sum is None:
        cap_sum = TERNARY_CAP_SUM if span.Z.sig is Sig.TERNARY else DEFAULT_CAP_SUM
    if span.X.n + span.Y.n > cap_sum:
        raise CapExceeded(f"|X|+|Y|={span.X.n + span.Y.n} exceeds {cap_sum}")
    base = tuple(range(span.Z.n)) if base is None else tuple(sorted(set(base)))
    if any(not 0 <= z < span.Z.n for z in base):
        raise StructureError("base must lie inside Z")
    max_size = span.X.n + span.Y.n - len(base)
    if hint is not None and hint.base == base and hint.verify(span, member):
        return Certificate(
            True,
            claim,
            witness={"W": hint.W, "f1": hint.f1, "g1": hint.g1, "base": list(base)},
            stats={"candidates": 1, "identifications": 0, "max_size": max_size, "millis": _ms(t0)},
            notes=["supplied witness replayed: embeddings, agreement and membership verified"],
        )
    stats = {"identifications": 0, "candidates": 0}
    for sol in _search(span, member, base, hereditary, ternary_space, stats):
        if not sol.verify(span, member):
            raise AssertionError("oracle produced an invalid amalgam")
        stats.update(max_size=max_size, millis=_ms(t0))
        return Certificate(True, claim, witness={"W": sol.W, "f1": sol.f1, "g1": sol.g1, "base": list(base)}, stats=stats)
    stats.update(max_size=max_size, millis=_ms(t0))
    return Certificate(
        False,
        claim,
        counterexample={"Z": span.Z, "X": span.X, "Y": span.Y, "f": span.f, "g": span.g, "base": list(base)},
        stats=stats,
        notes=["exhausted all identifications and cross-tuple assignments"],
    )


def wap_amalgam_exists(
    base: Sequence[int],
    span: AmalgamSpan,
    member: Membership,
    **kw,
) -> Certificate:
    """Amalgam whose legs need only agree on ``base``."""
    return amalgam_exists(span, member, base=base, **kw)


def amalgam_exists_slow(
    span: AmalgamSpan,
    candidates: Callable[[int], Iterable[FinStructure]],
    base: Optional[Sequence[int]] = None,
) -> bool:
    """Independent replay: try every candidate ``W`` of every admissible size
    with every pair of embeddings.  ``candidates(k)`` must list the class's
    members of size ``k`` up to isomorphism."""
    base = tuple(range(span.Z.n)) if base is None else tuple(base)
    X, Y = span.X, span.Y
    lo, hi = max(X.n, Y.n), X.n + Y.n - len(base)
    for k in range(lo, hi + 1):
        for W in candidates(k):
            fs = list(enumerate_embeddings(X, W))
            if not fs:
                continue
            for g1 in enumerate_embeddings(Y, W):
                for f1 in fs:
                    if all(f1.map[span.f[z]] == g1.map[span.g[z]] for z in base):
                        return True
    return False


def class_candidates(c: ClassId) -> Callable[[int], List[FinStructure]]:
    return lambda k: cl.enumerate_members(c, k, cap=max(k, cl.DEFAULT_SIZE_CAP))


# -- witness constructions -------------------------------------------------


@dataclass(frozen=True)
class WapWitness:
    """``H <= intermediate <= structure``, all as vertex prefixes."""

    cls: ClassId
    H: FinStructure
    intermediate: FinStructure
    structure: FinStructure

    @property
    def base(self) -> Tuple[int, ...]:
        return tuple(range(self.H.n))

    @property
    def middle(self) -> Tuple[int, ...]:
        return tuple(range(self.intermediate.n))

    def inclusion(self) -> Embedding:
        return Embedding(self.H, self.structure, self.base)


def _require_member(c: ClassId, H: FinStructure):
    if H.sig is not c.sig:
        raise SignatureMismatch(f"{c} expects {c.sig.value}")
    if not is_member(c, H):
        raise StructureError(f"input is not a member of {c}")


def _k5_connector_label(lp: int, lq: int) -> int:
    for lab in range(5):
        if lab in (zmod5(lp + 1), zmod5(lp + 2), zmod5(lq + 1), zmod5(lq + 2)):
            continue
        if {zmod5(lab + 1), zmod5(lab + 2)} <= {lp, lq}:
            continue
        return lab
    raise RuntimeError(f"no safe connector label for {lp}, {lq}")


def _connect_k5(H: FinStructure) -> FinStructure:
    G = H
    while True:
        comps = components(G)
        if len(comps) <= 1:
            return G
        p, q = comps[0][0], comps[1][0]
        b = G.to_builder()
        u = b.add_vertex(_k5_connector_label(G.labels[p], G.labels[q]))
        b.add_edge(u, p)
        b.add_edge(u, q)
        G = b.freeze()
        if not is_member(cl.K5, G):
            raise RuntimeError("connector broke membership")


def _determine_k5(H: FinStructure) -> FinStructure:
    b = H.to_builder()
    for v in cl.undetermined_vertices(cl.K5, H):
        lab = min(zmod5(H.labels[v] + 1), zmod5(H.labels[v] + 2))
        b.add_edge(v, b.add_vertex(lab))
    return b.freeze()


def _in_color(G: FinStructure, v: int) -> str:
    if any(x == v for _, x in G.t):
        return "t"
    return "s"


def _connect_p(H: FinStructure) -> FinStructure:
    G = H
    while True:
        comps = components(G)
        if len(comps) <= 1:
            return G
        p, q = comps[0][0], comps[1][0]
        b = G.to_builder()
        u = b.add_vertex()
        b.add(_in_color(G, p), (u, p))
        b.add(_in_color(G, q), (u, q))
        G = b.freeze()
        if not is_member(cl.P, G):
            raise RuntimeError("connector broke membership")


def _determine_p(H: FinStructure) -> FinStructure:
    b = H.to_builder()
    for v in cl.undetermined_vertices(cl.P, H):
        b.add("s", (b.add_vertex(), v))
    return b.freeze()


def _pendant(b: Builder, v: int) -> int:
    x = b.add_vertex()
    b.add_edge(v, x)
    return x


def tame_extension(H: FinStructure) -> FinStructure:
    """Extend a member of g to a tame one: connect, then repair degree-2
    vertices lacking a high-degree neighbour, then degree-1 vertices whose
    neighbour is not of degree 2.  Lowest index first throughout."""
    _require_member(cl.G_CLASS, H)
    b = H.to_builder()
    G = b.freeze()
    if G.n == 0:
        b.add_vertex()
        G = b.freeze()
    comps = components(G)
    if len(comps) > 1:
        chosen = [next(v for v in comp if G.degree(v) <= 1) for comp in comps]
        u = b.add_vertex()
        for v in chosen:
            b.add_edge(u, v)
        G = b.freeze()
    while G.n <= 2:
        _pendant(b, next(v for v in range(G.n) if G.degree(v) <= 1))
        G = b.freeze()
    while True:
        bad = [v for v in range(G.n) if G.degree(v) == 2 and all(G.degree(w) <= 2 for w in G.adj[v])]
        if not bad:
            break
        _pendant(b, bad[0])
        G = b.freeze()
    while True:
        bad = [v for v in range(G.n) if G.degree(v) == 1 and G.degree(next(iter(G.adj[v]))) != 2]
        if not bad:
            break
        _pendant(b, bad[0])
        G = b.freeze()
    if not (is_member(cl.G_CLASS, G) and cl.is_tame(G)):
        raise RuntimeError("tame extension failed")
    return G


def _ga_connect(c: ClassId, G: FinStructure) -> FinStructure:
    b = G.to_builder()
    if G.n == 0:
        b.add_vertex()
        G = b.freeze()
    comps = components(G)
    if len(comps) == 1 and non_discrete(G):
        return G
    free_deg2 = {v for cyc in cl.free_cycles(G) for v in cyc if G.degree(v) == 2}
    chosen = []
    for comp in comps:
        low = [v for v in comp if G.degree(v) <= 1]
        chosen.append(low[0] if low else min(v for v in comp if v in free_deg2))
    u = b.add_vertex()
    for v in chosen:
        b.add_edge(u, v)
    return b.freeze()


def ga_saturate(c: ClassId, G: FinStructure) -> FinStructure:
    """Close every edge that lies on no cycle into a cycle of length min(A)."""
    m = min(c.A)
    while True:
        br = cl.bridges(G)
        if not br:
            return G
        u, v = br[0]
        G = cl.adjoin_path(G, u, v, m - 1)


def _ga_kill_free_cycles(H: FinStructure) -> FinStructure:
    b = H.to_builder()
    for cyc in cl.free_cycles(H):
        high = [v for v in cyc if H.degree(v) > 2]
        if high:
            _pendant(b, min(v for v in cyc if H.degree(v) == 2))
        else:
            for v in sorted(cyc)[:2]:
                _pendant(b, v)
    return b.freeze()


def wap_witness(c: ClassId, H: FinStructure) -> WapWitness:
    """The class-specific extension ``H <= intermediate <= witness`` over
    which extensions of the witness amalgamate."""
    if c.kind == "pzk":
        raise ValueError("the ordered-triple class is handled in wapkit.limits")
    _require_member(c, H)
    if c.kind == "k5":
        mid = _connect_k5(H)
        out = _determine_k5(mid)
    elif c.kind == "p":
        mid = _connect_p(H)
        out = _determine_p(mid)
    elif c.kind == "g":
        mid = tame_extension(H)
        b = mid.to_builder()
        for u in range(mid.n):
            if mid.degree(u) == 1:
                _pendant(b, u)
                _pendant(b, u)
        out = b.freeze()
    else:
        mid = ga_saturate(c, _ga_connect(c, H))
        out = _ga_kill_free_cycles(mid)
    for S in (mid, out):
        if not is_member(c, S):
            raise RuntimeError(f"witness construction left {c}")
    if induced_substructure(out, range(H.n)) != H or induced_substructure(out, range(mid.n)) != mid:
        raise RuntimeError("witness does not contain its input as a prefix")
    return WapWitness(c, H, mid, out)


# -- counterexamples to cofinal amalgamation -------------------------------


def _extend(H: FinStructure, build) -> FinStructure:
    b = H.to_builder()
    build(b)
    return b.freeze()


def cap_counterexample(c: ClassId, H: FinStructure) -> AmalgamSpan:
    """Two member extensions of ``H`` with no amalgam over ``H``."""
    _require_member(c, H)
    if H.n == 0:
        raise StructureError("input must be nonempty")
    if c.kind in ("g", "ga") and not non_discrete(H):
        raise StructureError("input must contain an edge")
    if c.kind == "k5":
        v = cl.undetermined_vertices(c, H)[0]
        i = H.labels[v]
        X = _extend(H, lambda b: b.add_edge(v, b.add_vertex(zmod5(i + 1))))
        Y = _extend(H, lambda b: b.add_edge(v, b.add_vertex(zmod5(i + 2))))
    elif c.kind == "p":
        v = cl.undetermined_vertices(c, H)[0]
        X = _extend(H, lambda b: b.add("s", (b.add_vertex(), v)))
        Y = _extend(H, lambda b: b.add("t", (b.add_vertex(), v)))
    elif c.kind == "g":
        v = next(u for u in range(H.n) if H.degree(u) == 1)

        def fork(b):
            cc = _pendant(b, v)
            _pendant(b, cc)
            _pendant(b, cc)

        def long_fork(b):
            a = _pendant(b, v)
            bb = _pendant(b, a)
            _pendant(b, bb)
            _pendant(b, bb)

        X, Y = _extend(H, fork), _extend(H, long_fork)
    elif c.kind == "ga":
        n1, m1 = c.A[0], c.A[1]
        leaves = [u for u in range(H.n) if H.degree(u) == 1]
        if leaves:
            v = leaves[0]
            w = next(iter(H.adj[v]))
            X = cl.adjoin_path(H, v, w, n1 - 1)
            Y = cl.adjoin_path(H, v, w, m1 - 1)
        else:
            cyc = cl.free_cycles(H)[0]
            high = [u for u in cyc if H.degree(u) > 2]
            a = high[0] if high else min(cyc)
            bq, cq = sorted(u for u in cyc if u != a)[:2]
            X = _extend(H, lambda b: (_pendant(b, a), _pendant(b, bq)))
            Y = _extend(H, lambda b: _pendant(b, cq))
    else:
        raise ValueError("the ordered-triple class is handled in wapkit.limits")
    if not (is_member(c, X) and is_member(c, Y)):
        raise RuntimeError("gadget extension left the class")
    return span_of_extensions(H, X, Y)


# -- bounded certifiers ----------------------------------------------------


def _ms(t0: float) -> int:
    return int((time.perf_counter() - t0) * 1000)


def certify_jep(c: ClassId, n: int, cap: int = cl.DEFAULT_SIZE_CAP) -> Certificate:
    """Every pair of members of size <= n embeds jointly into a member.

    The disjoint union is tried first; when it leaves the class (as for
    the ordered triples) the exhaustive oracle decides the empty span."""
    t0 = time.perf_counter()
    pool = cl.members_upto(c, n, cap)
    pairs = searched = 0
    for i, A in enumerate(pool):
        for B in pool[i:]:
            pairs += 1
            span = span_of_extensions(empty(c.sig), A, B)
            if free_amalgam(span).verify(span, membership(c)):
                continue
            searched += 1
            if not amalgam_exists(span, membership(c), cap_sum=A.n + B.n).verdict:
                return Certificate(False, f"JEP {c} n<={n}", counterexample={"A": A, "B": B},
                                   stats={"spans": pairs, "max_size": 2 * n, "millis": _ms(t0)})
    return Certificate(True, f"JEP {c} n<={n}",
                       stats={"spans": pairs, "searched": searched, "max_size": 2 * n, "millis": _ms(t0)},
                       notes=["joint embedding for every pair up to isomorphism"])


def certify_not_cap(
    c: ClassId,
    n: int,
    *,
    cap: int = cl.DEFAULT_SIZE_CAP,
    cap_sum: Optional[int] = None,
    replay_fraction: float = 0.1,
    replay_max_size: int = 8,
    seed: int = 0,
) -> Certificate:
    """For every eligible member H of size <= n, the gadget span over H has no
    amalgam.  Because the gadgets attach to any member containing H, this
    rules out every extension of H as a cofinal-amalgamation witness.

    ``cap_sum`` bounds |X|+|Y|; by default it is whatever the gadgets
    need, since the gadget sizes are fixed by the construction.

    A random ``replay_fraction`` of the failed searches whose amalgams would
    have at most ``replay_max_size`` vertices is re-derived by the slow
    all-candidates enumerator.
    """
    if c.kind == "pzk":
        raise ValueError("the ordered-triple class is handled in wapkit.limits")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    spans = replayed = 0
    slowest = 0
    for H in cl.members_upto(c, n, cap, start=1):
        if c.kind in ("g", "ga") and not non_discrete(H):
            continue
        span = cap_counterexample(c, H)
        spans += 1
        need = span.X.n + span.Y.n
        cert = amalgam_exists(span, membership(c), cap_sum=need if cap_sum is None else cap_sum)
        slowest = max(slowest, cert.stats["millis"])
        if cert.verdict:
            return Certificate(False, f"not CAP {c} n<={n}", counterexample={"H": H, "amalgam": cert.witness},
                               stats={"spans": spans, "max_size": n, "millis": _ms(t0)})
        bound = span.X.n + span.Y.n - span.Z.n
        if bound <= replay_max_size and rng.random() < replay_fraction:
            replayed += 1
            if amalgam_exists_slow(span, class_candidates(c)):
                raise AssertionError(f"oracle disagreement on gadget over {H}")
    return Certificate(
        True,
        f"not CAP {c} n<={n}",
        stats={"spans": spans, "replayed": replayed, "slowest_search_ms": slowest, "max_size": n, "millis": _ms(t0)},
        notes=["every gadget span exhaustively shown to have no amalgam"],
    )


def certify_wap_sample(
    c: ClassId,
    n: int,
    ext: int = 1,
    *,
    cap: int = cl.DEFAULT_SIZE_CAP,
    cap_sum: Optional[int] = None,
) -> Certificate:
    """Bounded weak-amalgamation check.

    For each member H of size <= n, build the witness G >= H; for every pair
    of member extensions X, Y of G with at most ``ext`` extra vertices (one
    per isomorphism class over G), the free amalgam over the intermediate
    structure must be a member and must glue X and Y compatibly on H.  When
    it is not, the exhaustive oracle decides the span.

    This covers only a bounded fragment of the universally quantified
    property.
    """
    t0 = time.perf_counter()
    member = membership(c)
    spans = free_ok = searched = 0
    for H in cl.members_upto(c, n, cap):
        wit = wap_witness(c, H)
        G = wit.structure
        exts = extensions_over(G, ext, member)
        for i, X in enumerate(exts):
            for Y in exts[i:]:
                spans += 1
                span = span_of_extensions(G, X, Y)
                free = free_amalgam(span.restrict(wit.middle))
                hint = AmalgamSolution(free.W, free.f1, free.g1, Over.BASE, wit.base)
                if hint.verify(span, member):
                    free_ok += 1
                    continue
                searched += 1
                bound = span.X.n + span.Y.n if cap_sum is None else cap_sum
                cert = wap_amalgam_exists(wit.base, span, member, cap_sum=bound)
                if not cert.verdict:
                    return Certificate(False, f"WAP sample {c} n<={n} ext={ext}",
                                       counterexample={"H": H, "witness": G, "X": X, "Y": Y},
                                       stats={"spans": spans, "max_size": n, "millis": _ms(t0)})
    return Certificate(
        free_ok == spans,
        f"WAP sample {c} n<={n} ext={ext}",
        stats={"spans": spans, "free_amalgam_members": free_ok, "searched": searched, "max_size": n, "millis": _ms(t0)},
        notes=["bounded fragment: extensions of the witness by at most ext vertices, up to isomorphism over it"],
    )


def key_path_property(c: ClassId, H: FinStructure, extra: int = 3) -> Certificate:
    """In every member extension X of H with at most ``extra`` new vertices,
    every path between distinct vertices of H stays inside H."""
    t0 = time.perf_counter()
    count = 0
    for X in extensions_over(H, extra, membership(c)):
        count += 1
        for s in range(H.n):
            # walk out of H through new vertices only; returning to H elsewhere is a violation
            stack = [(w, {s, w}) for w in X.adj[s] if w >= H.n]
            while stack:
                v, seen = stack.pop()
                for w in X.adj[v]:
                    if w < H.n and w != s:
                        return Certificate(False, f"key path {c}", counterexample={"H": H, "X": X, "from": s, "to": w},
                                           stats={"extensions": count, "millis": _ms(t0)})
                    if w >= H.n and w not in seen:
                        stack.append((w, seen | {w}))
    return Certificate(True, f"key path {c}", stats={"extensions": count, "max_size": H.n + extra, "millis": _ms(t0)})


def random_span(c: ClassId, rng: random.Random, max_base: int = 2, ext: int = 1) -> AmalgamSpan:
    """A span of prefix inclusions: Z a random member with at most
    ``max_base`` vertices, X and Y random member extensions of Z by at most
    ``ext`` vertices (one per isomorphism type over Z)."""
    Z = rng.choice(cl.members_upto(c, max_base))
    exts = extensions_over(Z, ext, membership(c))
    return span_of_extensions(Z, rng.choice(exts), rng.choice(exts))


def certify_tame(n: int, cap: int = cl.DEFAULT_SIZE_CAP) -> Certificate:
    """Every member of g of size <= n extends (as a prefix) to a tame member."""
    t0 = time.perf_counter()
    count = 0
    for H in cl.members_upto(cl.G_CLASS, n, cap):
        count += 1
        T = tame_extension(H)
        if induced_substructure(T, range(H.n)) != H:
            return Certificate(False, f"tame extension n<={n}", counterexample={"H": H, "extension": T},
                               stats={"members": count, "max_size": n, "millis": _ms(t0)})
    return Certificate(True, f"tame extension n<={n}", stats={"members": count, "max_size": n, "millis": _ms(t0)})
