"""Command-line front door: classify torsor classes, evaluate Hilbert symbols,
compute descent groups, halve points, and sweep for period < index examples.

Text goes to stdout (canonical JSON with --json), diagnostics to stderr.
Exit codes: 0 success, 1 domain error, 2 budget exhaustion.  Output is
bit-identical across identical invocations.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .classify import (
    DEFAULT_WITNESS_BUDGET,
    TorsorClass,
    classify,
    known_complete_group,
    search_examples,
)
from .curves import Curve, bounded_point_search, descent_group, kummer_image
from .errors import BudgetError, DomainError
from .hilbert import Place, QuaternionClass, candidate_places, hilbert_symbol
from .multiquad import halve_point

DEFAULT_HEIGHT = 100

_JSON_SAFE = 2**53


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that treats tokens like "-1,7" or "-49/8" as values.

    The stock matcher only recognizes plain negative numbers, so rational and
    comma-separated values starting with a minus would be mistaken for flags.
    The attribute is set per instance because argparse assigns it in __init__.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d")


def _parse_rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed rational for {what}: {text!r}") from exc


def _parse_curve(text: str) -> Curve:
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError(f"curve must be given by its three roots 0,a,b; got {text!r}")
    first = _parse_rational(parts[0], "curve root")
    if first != 0:
        raise DomainError("first curve root must be 0; translate x so one root sits at the origin")
    return Curve(_parse_rational(parts[1], "curve root a"), _parse_rational(parts[2], "curve root b"))


def _parse_class(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"class must be given as M,N; got {text!r}")
    m = _parse_rational(parts[0], "M")
    n = _parse_rational(parts[1], "N")
    if m == 0 or n == 0:
        raise DomainError("class components must be nonzero")
    return m, n


def _parse_place(text: str) -> Place:
    if text == "real":
        return Place.real()
    try:
        p = int(text)
    except ValueError as exc:
        raise DomainError(f"malformed place {text!r}: expected a prime or 'real'") from exc
    try:
        return Place.finite(p)
    except DomainError:
        raise DomainError(f"{p} is not a prime, so not a finite place")


def _witness_budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("TORSOR_INDEX_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise DomainError(f"TORSOR_INDEX_BUDGET must be an integer, got {env!r}") from exc
    return DEFAULT_WITNESS_BUDGET


def _jint(v: int):
    return v if abs(v) <= _JSON_SAFE else str(v)


def _jfrac(q: Fraction) -> str:
    return str(q)


def _jpair(pair) -> list:
    return [_jint(pair.first.value), _jint(pair.second.value)]


def _dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _envelope(command: str, inputs: dict, result: dict, confidence=None, budgets=None) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "confidence": confidence,
        "budgets": budgets or {},
    }


def _compute_group(curve: Curve, height: int):
    points = bounded_point_search(curve, height)
    complete = known_complete_group(curve) is not None
    return points, descent_group(curve, points, complete=complete)


def _witness_json(w):
    if w is None:
        return None
    out = {"kind": w.kind, "description": w.description}
    if w.halving_x is not None:
        out["halving_x"] = _jfrac(w.halving_x)
    return out


def cmd_classify(args):
    curve = _parse_curve(args.curve)
    m, n = _parse_class(args.cls)
    budget = _witness_budget(args)
    _, group = _compute_group(curve, args.height)
    t = TorsorClass.of(curve, m, n)
    c = classify(t, group, find_witness=True, witness_budget=budget)
    result = {
        "period": c.period,
        "index": c.index,
        "generic_index": c.generic_index,
        "ed_conjectural": c.ed_conjectural,
        "class": _jpair(t.pair),
        "descent_group": [_jpair(e) for e in group],
        "descent_group_provenance": group.provenance,
        "witness": _witness_json(c.witness),
    }
    envelope = _envelope(
        "classify",
        {"curve": args.curve, "class": args.cls},
        result,
        confidence=c.index_confidence,
        budgets={"height": args.height, "witness": budget},
    )
    lines = [
        f"curve: {curve}",
        f"class: (M,N) = {t.pair}",
        f"period: {c.period}",
        f"index: {c.index}",
        f"generic index: {c.generic_index}",
        f"conjectural essential dimension: {c.ed_conjectural}",
        f"confidence: {c.index_confidence}",
        f"witness: {c.witness.description if c.witness else 'none'}",
    ]
    return envelope, lines


def cmd_hilbert(args):
    a = _parse_rational(args.a, "a")
    b = _parse_rational(args.b, "b")
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol arguments must be nonzero")
    if args.all:
        places = candidate_places(QuaternionClass.of(a, b))
    elif args.place is not None:
        places = [_parse_place(args.place)]
    else:
        raise DomainError("give a place ('real' or a prime) or pass --all")
    symbols = {str(v): hilbert_symbol(a, b, v) for v in places}
    result: dict = {"symbols": symbols}
    lines = [f"({v}): {s:+d}" for v, s in symbols.items()]
    if args.all:
        product = 1
        for s in symbols.values():
            product *= s
        result["product"] = product
        result["ramified"] = [v for v, s in symbols.items() if s == -1]
        lines.append(f"product: {product:+d}")
    envelope = _envelope("hilbert", {"a": args.a, "b": args.b}, result)
    return envelope, lines


def cmd_kummer(args):
    curve = _parse_curve(args.curve)
    points, group = _compute_group(curve, args.height)
    entries = []
    lines = [f"curve: {curve}"]
    for p in points:
        image = kummer_image(curve, p)
        entries.append({"x": _jfrac(p.x), "y": _jfrac(p.y), "image": _jpair(image)})
        lines.append(f"point {p}: image {image}")
    group_elems = [_jpair(e) for e in group]
    lines.append(
        f"P ({group.provenance}, order {group.order}): "
        + " ".join(str(e) for e in group)
    )
    result = {
        "points": entries,
        "group": {"elements": group_elems, "provenance": group.provenance, "order": group.order},
    }
    envelope = _envelope(
        "kummer", {"curve": args.curve}, result, budgets={"height": args.height}
    )
    return envelope, lines


def cmd_halve(args):
    curve = _parse_curve(args.curve)
    x = _parse_rational(args.x, "x")
    halves = halve_point(curve, x)
    field = halves[0].field
    result = {
        "field_discriminants": [_jint(d) for d in field.gens],
        "field_degree": field.degree,
        "candidates": [
            {
                "signs": list(h.signs),
                "x": str(h.x),
                "y": str(h.y),
                "verified": True,
            }
            for h in halves
        ],
    }
    lines = [
        f"curve: {curve}",
        f"field: Q adjoined sqrt of {list(field.gens) or 'nothing (rational)'} (degree {field.degree})",
    ]
    for h in halves:
        signs = ",".join(f"{s:+d}" for s in h.signs)
        lines.append(f"signs ({signs}): x_m = {h.x}; y_m = {h.y} [verified: doubles back]")
    envelope = _envelope("halve", {"curve": args.curve, "x": args.x}, result)
    return envelope, lines


def cmd_search(args):
    curve = _parse_curve(args.curve)
    _, group = _compute_group(curve, args.height)
    found = search_examples(curve, args.bound, group)
    entries = [
        {
            "class": _jpair(pair),
            "period": c.period,
            "index": c.index,
            "ed_conjectural": c.ed_conjectural,
            "confidence": c.index_confidence,
        }
        for pair, c in found
    ]
    lines = [f"curve: {curve}", f"period 2, index 4 classes with square-free |M|,|N| <= {args.bound}:"]
    lines += [f"  (M,N) = {pair}" for pair, _ in found] or ["  (none)"]
    envelope = _envelope(
        "search",
        {"curve": args.curve, "bound": args.bound},
        {"examples": entries, "count": len(entries)},
        budgets={"height": args.height},
    )
    return envelope, lines


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="torsorindex",
        description="Period and index of torsors of elliptic curves y^2 = x(x-a)(x-b) over Q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, height=True):
        p.add_argument("--json", action="store_true", help="canonical JSON output")
        if height:
            p.add_argument(
                "--height",
                type=int,
                default=DEFAULT_HEIGHT,
                help=f"height bound for the rational point search (default {DEFAULT_HEIGHT})",
            )

    p = sub.add_parser("classify", help="classify a torsor class (M,N) on a curve")
    p.add_argument("--curve", required=True, help="curve roots as 0,a,b")
    p.add_argument("--class", dest="cls", required=True, help="class as M,N")
    p.add_argument("--budget", type=int, default=None, help="witness search budget")
    common(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("hilbert", help="Hilbert symbols of <a,b>")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("place", nargs="?", default=None, help="'real' or a prime")
    p.add_argument("--all", action="store_true", help="all candidate ramified places plus product check")
    common(p, height=False)
    p.set_defaults(handler=cmd_hilbert)

    p = sub.add_parser("kummer", help="rational points, descent pairs and the group P")
    p.add_argument("--curve", required=True, help="curve roots as 0,a,b")
    common(p)
    p.set_defaults(handler=cmd_kummer)

    p = sub.add_parser("halve", help="the four half-points above a rational x-coordinate")
    p.add_argument("--curve", required=True, help="curve roots as 0,a,b")
    p.add_argument("--x", required=True, help="rational x-coordinate A")
    common(p, height=False)
    p.set_defaults(handler=cmd_halve)

    p = sub.add_parser("search", help="sweep square-free (M,N) for period 2, index 4 classes")
    p.add_argument("--curve", required=True, help="curve roots as 0,a,b")
    p.add_argument("--bound", type=int, required=True, help="square-free magnitude bound")
    common(p)
    p.set_defaults(handler=cmd_search)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        envelope, lines = args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(_dumps(envelope))
    else:
        print("\n".join(lines))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
