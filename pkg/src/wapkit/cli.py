"""Command-line front end.

    wapkit check CLASS FILE          membership with the violated conditions
    wapkit enumerate CLASS N         one member per isomorphism type
    wapkit demo {k5,p,g,ga}          a cofinal-amalgamation gadget and its failed search
    wapkit verify CLAIM              run one claim of the catalog
    wapkit limit {tree,chain}        write limit approximations

Default caps come from WAPKIT_CAP_N and WAPKIT_CAP_SUM when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from . import amalgamation as am
from . import classes as cl
from . import limits as lim
from .certificate import Certificate
from .classes import ClassId
from .serialize import dumps, load, loads, structure_to_dict, to_dot, to_jsonable
from .structures import DEFAULT_SIZE_CAP, CapExceeded, StructureError, cycle_graph, path_graph, st, vl5

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ[name])
    except (KeyError, ValueError):
        return default


def _parse_set(text: str) -> tuple:
    try:
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated set of integers: {text!r}") from None


# -- claim catalog ---------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    id: str
    summary: str
    run: Callable[[argparse.Namespace], List[Certificate]]


def _n(args, default: int) -> int:
    if args.cap_n is not None:
        return args.cap_n
    return _env_int("WAPKIT_CAP_N", default)


def _sum(args) -> int:
    return args.cap_sum


def _ga_sets(args, default: Sequence[tuple]) -> List[tuple]:
    return [args.set] if args.set else list(default)


def _distinct(args) -> List[Certificate]:
    A, B = args.set_a, args.set_b
    m = cl.distinguishing_cycle(A, B)
    C = cycle_graph(m)
    inA, inB = cl.is_member(cl.GA(*A), C), cl.is_member(cl.GA(*B), C)
    ok = inA != inB
    return [Certificate(ok, f"ga:{','.join(map(str, A))} differs from ga:{','.join(map(str, B))}",
                        witness={"cycle_length": m, "cycle": C, "member_of_A": inA, "member_of_B": inB} if ok else None,
                        counterexample=None if ok else {"cycle_length": m},
                        stats={"max_size": m})]


CLAIMS: Dict[str, Claim] = {c.id: c for c in [
    Claim("k5-hp", "k5 is hereditary", lambda a: [cl.hereditary_check(cl.K5, _n(a, 5))]),
    Claim("k5-jep", "k5 has joint embedding", lambda a: [am.certify_jep(cl.K5, _n(a, 3))]),
    Claim("k5-undetermined", "every nonempty k5 member has an undetermined vertex",
          lambda a: [cl.certify_undetermined(cl.K5, _n(a, 5))]),
    Claim("k5-not-cap", "k5 lacks cofinal amalgamation",
          lambda a: [am.certify_not_cap(cl.K5, _n(a, 3), cap_sum=_sum(a), seed=a.seed)]),
    Claim("k5-wap", "k5 weak amalgamation witnesses", lambda a: [am.certify_wap_sample(cl.K5, _n(a, 2), 1)]),
    Claim("p-hp", "p is hereditary", lambda a: [cl.hereditary_check(cl.P, _n(a, 5))]),
    Claim("p-not-cap", "p lacks cofinal amalgamation",
          lambda a: [am.certify_not_cap(cl.P, _n(a, 3), cap_sum=_sum(a), seed=a.seed)]),
    Claim("p-wap", "p weak amalgamation witnesses", lambda a: [am.certify_wap_sample(cl.P, _n(a, 2), 1)]),
    Claim("g-not-cap", "g lacks cofinal amalgamation",
          lambda a: [am.certify_not_cap(cl.G_CLASS, _n(a, 4), cap_sum=_sum(a), seed=a.seed)]),
    Claim("g-tame", "every g member extends to a tame one", lambda a: [am.certify_tame(_n(a, 6))]),
    Claim("g-wap", "g weak amalgamation witnesses", lambda a: [am.certify_wap_sample(cl.G_CLASS, _n(a, 3), 1)]),
    Claim("ga-lemma-free-cycle", "non-discrete ga members have a free cycle or a leaf",
          lambda a: [cl.lemma_free_cycle_or_leaf(cl.GA(*A), _n(a, 7)) for A in _ga_sets(a, [(3, 4), (4, 5)])]),
    Claim("ga-newcycle", "closing a non-cycle edge into an allowed cycle stays in ga",
          lambda a: [cl.lemma_new_cycle(cl.GA(*A), _n(a, 6)) for A in _ga_sets(a, [(3, 4), (4, 5)])]),
    Claim("ga-not-cap", "ga lacks cofinal amalgamation",
          lambda a: [am.certify_not_cap(cl.GA(*A), _n(a, 5), cap_sum=_sum(a), seed=a.seed)
                     for A in _ga_sets(a, [(3, 4), (4, 6)])]),
    Claim("ga-wap", "ga weak amalgamation witnesses",
          lambda a: [am.certify_wap_sample(cl.GA(*A), _n(a, 3), 1) for A in _ga_sets(a, [(3, 4)])]),
    Claim("ga-distinct", "distinct sets give distinct ga classes", _distinct),
    Claim("pzk-axioms", "pzk members are exactly the order reducts", lambda a: [lim.pzk_age_check(_n(a, 5))]),
    Claim("pzk-weak-hom", "one point above A forces embeddings to preserve order on A",
          lambda a: [lim.weak_hom_check(_n(a, 6))]),
    Claim("pzk-not-cofinal", "the swap map breaks the order on every tuple", lambda a: [lim.not_cofinal_check(_n(a, 6))]),
    Claim("pzk-uniform", "witness size m+1 suffices and is tight", lambda a: [lim.uniformity_check(_n(a, 6))]),
]}


def _combine(claim: str, certs: List[Certificate]) -> Certificate:
    if len(certs) == 1:
        cert = certs[0]
        return Certificate(cert.verdict, claim, cert.witness, cert.counterexample,
                           dict(cert.stats), [cert.claim] + list(cert.notes))
    bad = next((c for c in certs if not c.verdict), None)
    stats = {"parts": len(certs), "millis": sum(c.stats.get("millis", 0) for c in certs),
             "max_size": max(c.stats.get("max_size", 0) for c in certs)}
    return Certificate(
        bad is None,
        claim,
        witness={"parts": [c.to_dict() for c in certs]} if bad is None else None,
        counterexample=bad.to_dict() if bad is not None else None,
        stats=stats,
        notes=[c.summary() for c in certs],
    )


# -- subcommands -----------------------------------------------------------


def _class_arg(text: str) -> ClassId:
    try:
        return ClassId.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def cmd_check(args) -> int:
    try:
        G = load(args.file) if args.file != "-" else loads(sys.stdin.read())
        bad = cl.violations(args.cls, G)
    except (OSError, StructureError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps({"member": not bad, "violations": bad}))
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_enumerate(args) -> int:
    cap = args.cap_n if args.cap_n is not None else _env_int("WAPKIT_CAP_N", DEFAULT_SIZE_CAP)
    try:
        reps = cl.enumerate_members(args.cls, args.n, cap=cap)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    payload = [structure_to_dict(G) for G in reps]
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=1)
    if args.json:
        print(json.dumps({"class": str(args.cls), "n": args.n, "count": len(reps), "structures": payload}))
    else:
        print(len(reps))
    return EXIT_OK


DEMO_SEEDS = {
    "k5": lambda: vl5([0]),
    "p": lambda: st(1),
    "g": lambda: path_graph(2),
    "ga": lambda: path_graph(2),
}


def cmd_demo(args) -> int:
    if args.gadget == "ga":
        c = cl.GA(*(args.set or (4, 5)))
    else:
        if args.set:
            print("error: --set applies to the ga gadget only", file=sys.stderr)
            return EXIT_USAGE
        c = {"k5": cl.K5, "p": cl.P, "g": cl.G_CLASS}[args.gadget]
    H = DEMO_SEEDS[args.gadget]()
    span = am.cap_counterexample(c, H)
    need = span.X.n + span.Y.n
    try:
        cert = am.amalgam_exists(span, cl.membership(c), cap_sum=args.cap_sum or need, claim=f"amalgam over H in {c}")
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if not args.json:
        print(f"class {c}")
        for name, S in (("Z = H", span.Z), ("X", span.X), ("Y", span.Y)):
            print(f"{name}: {dumps(S)}")
        print(cert.summary())
        for note in cert.notes:
            print(f"  {note}")
    print(cert.to_json(indent=None if not args.json else 2))
    return EXIT_OK if not cert.verdict else EXIT_FAIL


def cmd_verify(args) -> int:
    claim = CLAIMS.get(args.claim)
    if claim is None:
        print(f"error: unknown claim {args.claim!r}; known: {', '.join(CLAIMS)}", file=sys.stderr)
        return EXIT_USAGE
    if args.claim == "ga-distinct" and (args.set_a is None or args.set_b is None or args.set_a == args.set_b):
        print("error: ga-distinct needs --set-a and --set-b, different", file=sys.stderr)
        return EXIT_USAGE
    try:
        cert = _combine(claim.id, claim.run(args))
    except (CapExceeded, StructureError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if not args.json:
        print(cert.summary(), file=sys.stderr)
    print(cert.to_json())
    return EXIT_OK if cert.verdict else EXIT_FAIL


def cmd_limit(args) -> int:
    try:
        if args.kind == "tree":
            T = lim.subdivided_tree(args.depth, args.branching)
            text = to_dot(T, "tree") if not args.json else dumps(T, indent=1)
            _write(args.out, text)
            return EXIT_OK
        c = args.cls or cl.K5
        state = lim.generic_chain(c, args.steps, args.size_cap, args.seed)
    except (StructureError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "class": str(c),
        "steps": args.steps,
        "size_cap": args.size_cap,
        "seed": args.seed,
        "structure": structure_to_dict(state.current),
        "born": state.born,
        "log": [to_jsonable(e) for e in state.log],
    }
    _write(args.out, json.dumps(payload, indent=1))
    return EXIT_OK


def _write(path: Optional[str], text: str):
    if not path or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    with open(path, "w") as fh:
        fh.write(text)


# -- parser ----------------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool):
    # accepted before or after the subcommand; only the top level sets defaults
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="machine-readable output only")
    parser.add_argument("--cap-n", type=int, default=d(None), help="structure size bound (claim defaults otherwise)")
    parser.add_argument("--cap-sum", type=int, default=d(_env_int("WAPKIT_CAP_SUM", 0) or None),
                        help="bound on |X|+|Y| for amalgam searches (default: 12, 8 for ternary; "
                             "gadget checks size it to their gadgets)")
    parser.add_argument("--seed", type=int, default=d(0))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    p = argparse.ArgumentParser(prog="wapkit", description="finite structure classes and amalgamation checks",
                                allow_abbrev=False)
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="membership of a JSON structure")
    s.add_argument("cls", type=_class_arg, metavar="CLASS")
    s.add_argument("file", help="structure JSON, or - for stdin")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("enumerate", parents=[common], help="members of size n up to isomorphism")
    s.add_argument("cls", type=_class_arg, metavar="CLASS")
    s.add_argument("n", type=int)
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("demo", parents=[common], help="a gadget span with no amalgam")
    s.add_argument("gadget", choices=["k5", "p", "g", "ga"])
    s.add_argument("--set", type=_parse_set, help="the set A for ga, e.g. 4,5")
    s.set_defaults(func=cmd_demo)

    s = sub.add_parser("verify", parents=[common], help="run one claim of the catalog")
    s.add_argument("claim", help=", ".join(CLAIMS))
    s.add_argument("--set", type=_parse_set, help="run ga claims for this set only")
    s.add_argument("--set-a", type=_parse_set)
    s.add_argument("--set-b", type=_parse_set)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("limit", parents=[common], help="finite approximations of generic limits")
    s.add_argument("kind", choices=["tree", "chain"])
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--branching", type=int, default=2)
    s.add_argument("--class", dest="cls", type=_class_arg)
    s.add_argument("--steps", type=int, default=50)
    s.add_argument("--size-cap", type=int, default=30)
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_limit)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
