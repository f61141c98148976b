"""JSON and DOT formats.

Structure JSON::

    {"sig": "vl5"|"st"|"graph"|"ternary", "n": int,
     "edges": [[u, v], ...], "labels": [int, ...],
     "s": [[u, v], ...], "t": [[u, v], ...], "r": [[u, v, w], ...]}

Absent keys default to empty; symmetric pairs are written with u < v.
"""

from __future__ import annotations

import dataclasses
import enum
import json
from typing import Any, Dict

from .structures import Embedding, FinStructure, Sig, StructureError


def structure_to_dict(G: FinStructure) -> Dict[str, Any]:
    d: Dict[str, Any] = {"sig": G.sig.value, "n": G.n}
    if G.sig in (Sig.VL5, Sig.GRAPH):
        d["edges"] = [list(e) for e in sorted(G.edges)]
    if G.sig is Sig.VL5:
        d["labels"] = list(G.labels)
    if G.sig is Sig.ST:
        d["s"] = [list(e) for e in sorted(G.s)]
        d["t"] = [list(e) for e in sorted(G.t)]
    if G.sig is Sig.TERNARY:
        d["r"] = [list(e) for e in sorted(G.r)]
    return d


def structure_from_dict(d: Dict[str, Any]) -> FinStructure:
    if not isinstance(d, dict):
        raise StructureError("structure JSON must be an object")
    try:
        sig = Sig(d["sig"])
        n = int(d["n"])
    except (KeyError, ValueError, TypeError) as e:
        raise StructureError(f"bad structure header: {e}") from None
    try:
        return FinStructure(
            sig,
            n,
            edges=frozenset(tuple(e) for e in d.get("edges", [])),
            labels=tuple(d.get("labels", [])),
            s=frozenset(tuple(e) for e in d.get("s", [])),
            t=frozenset(tuple(e) for e in d.get("t", [])),
            r=frozenset(tuple(e) for e in d.get("r", [])),
        )
    except (TypeError, ValueError) as e:
        raise StructureError(str(e)) from None


def dumps(G: FinStructure, indent=None) -> str:
    return json.dumps(structure_to_dict(G), indent=indent)


def loads(text: str) -> FinStructure:
    try:
        return structure_from_dict(json.loads(text))
    except json.JSONDecodeError as e:
        raise StructureError(f"invalid JSON: {e}") from None


def load(path) -> FinStructure:
    with open(path) as fh:
        return loads(fh.read())


def to_dot(G: FinStructure, name: str = "G") -> str:
    """DOT text for the two graph signatures and for S/T digraphs."""
    if G.sig is Sig.TERNARY:
        raise StructureError("no DOT rendering for ternary structures")
    lines = []
    if G.sig is Sig.ST:
        lines.append(f"digraph {name} {{")
        for v in range(G.n):
            lines.append(f'  {v} [label="{v}"];')
        for u, v in sorted(G.s):
            lines.append(f'  {u} -> {v} [color=blue, label="S"];')
        for u, v in sorted(G.t):
            lines.append(f'  {u} -> {v} [color=red, label="T"];')
    else:
        lines.append(f"graph {name} {{")
        for v in range(G.n):
            lab = f"{v}:{G.labels[v]}" if G.sig is Sig.VL5 else f"{v}"
            lines.append(f'  {v} [label="{lab}"];')
        for u, v in sorted(G.edges):
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_jsonable(x: Any) -> Any:
    """Recursively convert structures, embeddings and dataclass records."""
    if isinstance(x, FinStructure):
        return structure_to_dict(x)
    if isinstance(x, Embedding):
        return {"map": list(x.map), "dom_n": x.dom.n, "cod_n": x.cod.n}
    if isinstance(x, enum.Enum):
        return x.value
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: to_jsonable(getattr(x, f.name)) for f in dataclasses.fields(x) if f.repr}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [to_jsonable(v) for v in items]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


