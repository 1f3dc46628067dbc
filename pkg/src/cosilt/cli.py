"""Command-line front door.

File-based subcommands read and write the JSON wire formats; ``serve`` runs
the HTTP session service; ``oracle`` replays the acceptance-style checks.
All numeric output is exact and deterministic.  Exit codes: 0 ok, 1 property
or validation failure, 2 schema error, 3 winding bound too tight.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .algebra import (
    band_module,
    band_word,
    path_basis,
    quiver_from_triangulation,
    quiver_to_dot,
    quiver_to_json,
    representation_to_json,
    string_module,
    string_word,
)
from .annulus import (
    Asymptotic,
    Bridging,
    MarkedAnnulus,
    annulus_from_json,
    arc_from_json,
    arc_to_json,
    canonicalize,
    crossing_number,
    enumerate_arcs,
)
from .cosilting import (
    AdicPoint,
    GenericPoint,
    PruferPoint,
    ShiftedInjective,
    StringPoint,
    exchange_graph,
    graph_to_dot,
    graph_to_json,
    mutate,
    point_from_key,
    tuple_from_json,
    tuple_to_json,
    validate_tuple,
)
from .errors import BoundTooTightError, CosiltError, SchemaError
from .homext import point_ext_dim, rigidity_report
from .fixtures import fixture_tuple
from .triangulation import (
    ArcCollection,
    SearchBound,
    Triangulation,
    collection_from_json,
    completions,
    enumerate_maximal,
    flip,
    triangulation_from_json,
    triangulation_to_json,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_SCHEMA = 2
EXIT_BOUND = 3


def _emit(doc) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False))


def _load(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read JSON from {path}: {exc}") from exc


def _bound(args) -> SearchBound:
    return SearchBound(args.winding_bound, args.slack)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="seed for randomised checks")
    parser.add_argument("-W", "--winding-bound", type=int, default=3,
                        help="winding window for searches")
    parser.add_argument("--slack", type=int, default=2,
                        help="extra winding used to certify maximality")


def _parse_point(text: str, ann: MarkedAnnulus):
    if text == "G":
        return GenericPoint()
    if text.startswith("I") and text[1:].isdigit():
        return ShiftedInjective(int(text[1:]))
    for prefix, cls in (("P:", PruferPoint), ("prufer:", PruferPoint),
                        ("A:", AdicPoint), ("adic:", AdicPoint)):
        if text.startswith(prefix):
            return cls(text[len(prefix):])
    if text.startswith(("s:", "i:", "p:", "a:", "rest:")):
        return point_from_key(text, ann)
    try:
        return StringPoint(canonicalize(arc_from_json(json.loads(text)), ann))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"cannot parse point {text!r}") from exc


def cmd_validate(args) -> int:
    t = tuple_from_json(_load(args.tuple), _bound(args))
    report = validate_tuple(t, _bound(args))
    _emit(report.to_json())
    return EXIT_OK if report.valid else EXIT_FAIL


def cmd_crossings(args) -> int:
    doc = _load(args.arcs)
    try:
        ann = annulus_from_json(doc["annulus"])
        arcs = [canonicalize(arc_from_json(a), ann) for a in doc["arcs"]]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad arcs document: {exc}") from exc
    matrix = [[crossing_number(a, b, ann) for b in arcs] for a in arcs]
    _emit({"arcs": [arc_to_json(a) for a in arcs], "crossings": matrix})
    return EXIT_OK


def cmd_flip(args) -> int:
    bound = _bound(args)
    tri = triangulation_from_json(_load(args.triangulation), bound)
    arc = canonicalize(arc_from_json(json.loads(args.arc)), tri.annulus)
    beta, new_tri = flip(tri, arc, bound)
    _emit({
        "removed": arc_to_json(arc),
        "added": arc_to_json(beta),
        "triangulation": triangulation_to_json(new_tri),
    })
    return EXIT_OK


def cmd_mutate(args) -> int:
    bound = _bound(args)
    t = tuple_from_json(_load(args.tuple), bound)
    point = _parse_point(args.point, t.annulus)
    new, edge = mutate(t, point, bound)
    _emit({"edge": edge.to_json(), "tuple": tuple_to_json(new)})
    return EXIT_OK


def cmd_graph(args) -> int:
    bound = _bound(args)
    t = tuple_from_json(_load(args.tuple), bound)
    graph = exchange_graph(t, args.depth, bound)
    if args.format == "dot":
        print(graph_to_dot(graph))
    else:
        _emit(graph_to_json(graph))
    return EXIT_OK


def cmd_quiver(args) -> int:
    bound = _bound(args)
    tri = triangulation_from_json(_load(args.triangulation), bound)
    quiver = quiver_from_triangulation(tri)
    if args.format == "dot":
        print(quiver_to_dot(quiver))
    else:
        _emit(quiver_to_json(quiver))
    return EXIT_OK


def cmd_module(args) -> int:
    bound = _bound(args)
    tri = triangulation_from_json(_load(args.triangulation), bound)
    algebra = path_basis(quiver_from_triangulation(tri))
    if args.arc:
        arc = canonicalize(arc_from_json(json.loads(args.arc)), tri.annulus)
        word = string_word(arc, tri)
        if not word.finite:
            _emit({
                "word": {
                    "vertices": list(word.vertices),
                    "letters": [[a, d] for a, d in word.letters],
                    "period_start": word.period_start,
                },
                "note": "eventually periodic word; no finite-dimensional module",
            })
            return EXIT_OK
        rep = string_module(word, algebra)
    else:
        lam, n = args.band
        rep = band_module(band_word(tri), Fraction(lam), int(n), algebra)
    _emit(representation_to_json(rep))
    return EXIT_OK


def cmd_rigidity(args) -> int:
    bound = _bound(args)
    t = tuple_from_json(_load(args.tuple), bound)
    if not t.finite_case():
        raise CosiltError("rigidity reports need a finite-case tuple")
    algebra = path_basis(quiver_from_triangulation(t.base))
    modules = [string_module(string_word(a, t.base), algebra) for a in t.string_arcs()]
    report = rigidity_report(modules, list(t.injective_vertices()))
    _emit(report.to_json())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(bound=_bound(args), fixture=args.fixture)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def _oracle_two_completions(ann: MarkedAnnulus, bound: SearchBound, rng) -> tuple[bool, str]:
    tris = enumerate_maximal(ann, bound)
    for tri in tris:
        for arc in tri.arcs:
            found = completions(tri.collection.without(arc), bound)
            if len(found) != 2:
                return False, f"{len(found)} completions after removing {arc_to_json(arc)}"
            beta, other = flip(tri, arc, bound)
            back, restored = flip(other, beta, bound)
            if restored.key() != tri.key() or back != arc:
                return False, "flip is not an involution"
    return True, f"{len(tris)} maximal collections, every removal has exactly 2 completions"


def _oracle_cardinality(ann: MarkedAnnulus, bound: SearchBound, rng) -> tuple[bool, str]:
    tris = enumerate_maximal(ann, bound)
    expected = ann.outer_count + ann.inner_count
    bad = [t for t in tris if len(t.collection) != expected]
    if bad:
        return False, f"{len(bad)} collections with wrong size"
    return True, f"{len(tris)} collections, all of size {expected}"


def _oracle_dichotomy(ann: MarkedAnnulus, bound: SearchBound, rng) -> tuple[bool, str]:
    tris = enumerate_maximal(ann, bound)
    for tri in tris:
        bridging = sum(1 for a in tri.arcs if isinstance(a, Bridging))
        asymptotic = sum(1 for a in tri.arcs if isinstance(a, Asymptotic))
        if (bridging > 0) == (asymptotic > 0):
            return False, "collection with both or neither arc kinds"
        if bridging and bridging < 2:
            return False, "finite collection with a single core-crossing arc"
        if asymptotic and asymptotic < 2:
            return False, "asymptotic collection with a single spiral"
    return True, f"{len(tris)} collections satisfy the exclusive dichotomy"


def _oracle_ext_crossing(ann: MarkedAnnulus, bound: SearchBound, rng,
                         pairs: int = 60) -> tuple[bool, str]:
    tris = [t for t in enumerate_maximal(ann, SearchBound(1, bound.slack)) if t.finite_only]
    if not tris:
        return False, "no finite triangulation found"
    tri = tris[0]
    algebra = path_basis(quiver_from_triangulation(tri))
    arcs = [a for a in enumerate_arcs(ann, 2)
            if not isinstance(a, Asymptotic) and a not in tri.arcs]
    modules = {}
    checked = 0
    while checked < pairs:
        a, b = rng.sample(arcs, 2)
        for arc in (a, b):
            if arc not in modules:
                modules[arc] = string_module(string_word(arc, tri), algebra)
                dims = tuple(crossing_number(arc, g, ann) for g in tri.arcs)
                if dims != modules[arc].dims:
                    return False, f"dimension vector of {arc_to_json(arc)} mismatches crossings"
        crossing = crossing_number(a, b, ann)
        pairing = point_ext_dim(modules[a], modules[b]) + point_ext_dim(modules[b], modules[a])
        if (crossing == 0) != (pairing == 0):
            return False, (f"crossing {crossing} vs extension pairing {pairing} for "
                           f"{arc_to_json(a)} / {arc_to_json(b)}")
        checked += 1
    return True, f"{checked} random pairs agree (crossing = 0 iff no extensions)"


ORACLES = {
    "two-completions": _oracle_two_completions,
    "cardinality": _oracle_cardinality,
    "dichotomy": _oracle_dichotomy,
    "ext-crossing": _oracle_ext_crossing,
}


def cmd_oracle(args) -> int:
    ann = MarkedAnnulus(args.p, args.q)
    bound = _bound(args)
    rng = random.Random(args.seed)
    names = list(ORACLES) if args.suite == "all" else [args.suite]
    status = EXIT_OK
    for name in names:
        ok, detail = ORACLES[name](ann, bound, rng)
        print(f"{'PASS' if ok else 'FAIL'} {name} ({ann.outer_count},{ann.inner_count}) "
              f"W={bound.winding}: {detail}")
        if not ok:
            status = EXIT_FAIL
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosilt",
        description="arc combinatorics, cosilting mutation and Hom/Ext oracles on the annulus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a tuple document against rules C1-C3")
    p.add_argument("tuple")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("crossings", help="pairwise crossing matrix of an arc list")
    p.add_argument("arcs")
    _add_common(p)
    p.set_defaults(func=cmd_crossings)

    p = sub.add_parser("flip", help="flip one arc of a triangulation")
    p.add_argument("triangulation")
    p.add_argument("arc", help="arc as JSON")
    _add_common(p)
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("mutate", help="mutate a tuple at one rigid point")
    p.add_argument("tuple")
    p.add_argument("point", help="I<k>, P:<label>, A:<label>, G, or arc JSON")
    _add_common(p)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("graph", help="breadth-first exchange graph around a tuple")
    p.add_argument("tuple")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    _add_common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("quiver", help="bound quiver of a finite triangulation")
    p.add_argument("triangulation")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    _add_common(p)
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("module", help="string or band module over a triangulation")
    p.add_argument("--tri", dest="triangulation", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--arc", help="arc as JSON")
    group.add_argument("--band", nargs=2, metavar=("LAMBDA", "N"),
                       help="band parameter and Jordan size")
    _add_common(p)
    p.set_defaults(func=cmd_module)

    p = sub.add_parser("rigidity", help="Ext and support report for a finite-case tuple")
    p.add_argument("tuple")
    _add_common(p)
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("oracle", help="run acceptance-style checks")
    p.add_argument("suite", choices=sorted(ORACLES) + ["all"])
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--q", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("serve", help="run the HTTP explorer service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8023)
    p.add_argument("--fixture", default="finite", choices=("finite", "asymptotic"))
    _add_common(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except BoundTooTightError as exc:
        print(f"bound too tight: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except CosiltError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
