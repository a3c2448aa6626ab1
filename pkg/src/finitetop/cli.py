"""Batch command line: spaces in, JSON (or DOT) out.

Exit codes: 0 on success, 1 when a mathematical check fails (the reason
goes to standard error as JSON), 2 for malformed input or usage.  File
arguments accept "-" for standard input.  All JSON output has sorted
keys, so identical inputs give identical bytes.
"""

import argparse
import json
import sys

from . import jsonio
from .action import (filtration_of_action, fiber_support, is_tight,
                     minimal_ideals, pushforward, reconstruct, restrict)
from .completion import build_yprime, neighborhood_filter_embedding
from .enumeration import (census, enumerate_labeled_t0,
                          enumerate_labeled_topologies, space_from_canonical)
from .errors import FinitetopError, InputFormatError
from .intmat import smith_normal_form
from .jsonio import indices
from .ktheory import (is_exact_at, two_point_sequence, vanishing_propagation,
                      verify_datum, verify_six_term)
from .spaces import bits, family_key, hasse_dot


def _read_json(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON in {path}: {exc}")


def _emit(obj, stream=None):
    print(json.dumps(obj, sort_keys=True, indent=2), file=stream or sys.stdout)


def _names(space, mask):
    if space.labels is not None:
        return [space.labels[i] for i in bits(mask)]
    return indices(mask)


# -- space commands ------------------------------------------------------------


def _cmd_validate(args):
    space = jsonio.space_from_json(_read_json(args.space))
    _emit({"ok": True, "size": space.size, "opens": len(space.opens)})
    return 0


def _cmd_info(args):
    space = jsonio.space_from_json(_read_json(args.space))
    t0 = space.is_t0()
    out = {
        "size": space.size,
        "opens": len(space.opens),
        "t0": t0,
        "sober": space.is_sober(),
        "connected": space.is_connected(),
        "components": [_names(space, c) for c in space.connected_components()],
        "length": space.length() if t0 else None,
        "strata": ([_names(space, s) for s in space.canonical_filtration().strata]
                   if t0 else None),
    }
    _emit(out)
    return 0


def _cmd_soberify(args):
    space = jsonio.space_from_json(_read_json(args.space))
    hat, iota = space.sobrification()
    _emit({"space": jsonio.space_to_json(hat),
           "map": list(iota.assignment),
           "closed_sets": [_names(space, c)
                           for c in space.irreducible_closed_sets()]})
    return 0


def _cmd_alexandrov(args):
    obj = _read_json(args.file)
    if args.from_preorder:
        if isinstance(obj, dict) and "preorder" not in obj:
            obj = {"preorder": obj}
        space = jsonio.space_from_json(obj)
        _emit(jsonio.space_to_json(space))
    else:
        space = jsonio.space_from_json(obj)
        _emit(jsonio.preorder_to_json(space.specialization()))
    return 0


def _cmd_enumerate(args):
    if args.up_to_homeo:
        row = census(args.points, connected=args.connected, t0=args.t0,
                     workers=args.workers)
        spaces = [space_from_canonical(f) for f in row.classes]
        count, labeled = row.class_count(), row.labeled_count
    else:
        if args.t0:
            spaces = list(enumerate_labeled_t0(args.points))
        else:
            spaces = list(enumerate_labeled_topologies(args.points))
        if args.connected:
            spaces = [s for s in spaces if s.is_connected()]
        count = labeled = len(spaces)
    if args.table:
        print(f"{'idx':>5}  {'points':>6}  {'opens':>5}  {'t0':>5}  connected")
        for i, s in enumerate(spaces):
            print(f"{i:>5}  {s.size:>6}  {len(s.opens):>5}  "
                  f"{str(s.is_t0()).lower():>5}  {str(s.is_connected()).lower()}")
        print(f"count: {count}  labeled: {labeled}")
    else:
        _emit({"count": count, "labeled": labeled,
               "spaces": [jsonio.space_to_json(s) for s in spaces]})
    return 0


def _cmd_hasse(args):
    space = jsonio.space_from_json(_read_json(args.space))
    if args.dot:
        sys.stdout.write(hasse_dot(space))
    else:
        _emit({"edges": [list(e) for e in space.hasse_edges()]})
    return 0


def _cmd_complete(args):
    space = jsonio.space_from_json(_read_json(args.space))
    completion = build_yprime(space)
    emb = neighborhood_filter_embedding(space, completion)
    filters = [[indices(u) for u in sorted(p.contents, key=family_key)]
               for p in completion.points]
    _emit({"space": jsonio.space_to_json(completion.space),
           "embedding": list(emb.assignment),
           "filters": filters})
    return 0


# -- action commands -----------------------------------------------------------


def _cmd_action(args):
    action = None
    if args.mode in ("check", "restrict", "pushforward", "filtrate"):
        action = jsonio.action_from_json(_read_json(args.file))
    if args.mode == "check":
        assign = minimal_ideals(action)
        _emit({"ok": True, "tight": is_tight(action),
               "ideals": {str(x): indices(m)
                          for x, m in sorted(assign.values.items())}})
        return 0
    if args.mode == "restrict":
        carrier = jsonio.carrier_from_key(args.set, action.base.size)
        small = restrict(action, carrier)
        base_pts = action.base.subspace(carrier)[1]
        prim_pts = action.prim.subspace(action.psi.preimage(carrier))[1]
        _emit({"action": jsonio.action_to_json(small),
               "base_points": list(base_pts), "prim_points": list(prim_pts)})
        return 0
    if args.mode == "pushforward":
        f = jsonio.map_from_json(_read_json(args.extra))
        _emit(jsonio.action_to_json(pushforward(f, action)))
        return 0
    if args.mode == "filtrate":
        filt = action.base.canonical_filtration()
        supports = filtration_of_action(action)
        rows = []
        for stratum, sup in zip(filt.strata, supports):
            rows.append({"stratum": indices(stratum),
                         "support": indices(sup.carrier.carrier),
                         "fibers": [indices(fiber_support(action, x))
                                    for x in bits(stratum)]})
        _emit({"layers": [indices(m) for m in filt.layers],
               "strata": rows})
        return 0
    assign, prim = jsonio.assignment_from_json(_read_json(args.file))
    _emit(jsonio.action_to_json(reconstruct(assign, prim)))
    return 0


# -- group commands ------------------------------------------------------------


def _cmd_ktheory(args):
    obj = _read_json(args.file)
    if args.mode == "snf":
        if isinstance(obj, dict):
            obj = obj.get("matrix")
        matrix = jsonio.matrix_from_json(obj)
        u, d, v = smith_normal_form(matrix)
        _emit({"U": jsonio.matrix_to_json(u), "D": jsonio.matrix_to_json(d),
               "V": jsonio.matrix_to_json(v)})
        return 0
    if args.mode == "exact":
        if not isinstance(obj, dict):
            raise InputFormatError("expected an object with f and g")
        f = jsonio.hom_from_json(obj.get("f"))
        g = jsonio.hom_from_json(obj.get("g"))
        report = is_exact_at(f, g)
        _emit(jsonio.exactness_to_json(report),
              stream=None if report.ok else sys.stderr)
        return 0 if report.ok else 1
    if args.mode == "six-term":
        report = verify_six_term(jsonio.cycle_from_json(obj))
        _emit(jsonio.cycle_report_to_json(report),
              stream=None if report.ok else sys.stderr)
        return 0 if report.ok else 1
    if args.mode == "datum-verify":
        datum = jsonio.datum_from_json(obj)
        cycles = verify_datum(datum)
        ok = cycles.ok
        out = {"cycles": jsonio.datum_report_to_json(cycles),
               "propagation": None}
        # the vanishing bootstrap only applies when every point group is zero
        if all(datum.group(1 << x).is_zero()
               for x in range(datum.space.size)):
            prop = vanishing_propagation(datum)
            out["propagation"] = jsonio.propagation_to_json(prop)
            ok = ok and prop.ok
        out["ok"] = ok
        _emit(out, stream=None if ok else sys.stderr)
        return 0 if ok else 1
    top, right, left, bottom = jsonio.square_from_json(obj)
    _emit(jsonio.two_point_to_json(
        two_point_sequence(top, right, left, bottom)))
    return 0


# -- wiring --------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="finitetop",
        description="Finite topological spaces, lattice actions, and "
                    "exact-sequence bookkeeping.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check that a file describes a topology")
    p.add_argument("space")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("info", help="basic invariants of a space")
    p.add_argument("space")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("soberify", help="space of irreducible closed sets")
    p.add_argument("space")
    p.set_defaults(func=_cmd_soberify)

    p = sub.add_parser("alexandrov",
                       help="convert between preorders and their open-set spaces")
    direction = p.add_mutually_exclusive_group(required=True)
    direction.add_argument("--from-preorder", action="store_true")
    direction.add_argument("--to-preorder", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=_cmd_alexandrov)

    p = sub.add_parser("enumerate", help="list spaces on a fixed point count")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--t0", action="store_true")
    p.add_argument("--up-to-homeo", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    form = p.add_mutually_exclusive_group()
    form.add_argument("--json", dest="table", action="store_false")
    form.add_argument("--table", dest="table", action="store_true")
    p.set_defaults(func=_cmd_enumerate, table=False)

    p = sub.add_parser("hasse", help="cover edges of a T0 space")
    p.add_argument("space")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_hasse)

    p = sub.add_parser("complete",
                       help="filter completion and the embedding into it")
    p.add_argument("space")
    p.set_defaults(func=_cmd_complete)

    p = sub.add_parser("action", help="operations on actions over a base space")
    p.add_argument("mode", choices=("check", "restrict", "pushforward",
                                    "filtrate", "reconstruct"))
    p.add_argument("file")
    p.add_argument("extra", nargs="?",
                   help="map file for pushforward")
    p.add_argument("--set", default=None,
                   help="carrier for restrict, comma-joined indices")
    p.set_defaults(func=_cmd_action)

    p = sub.add_parser("ktheory", help="integer matrix and exactness checks")
    p.add_argument("mode", choices=("snf", "exact", "six-term",
                                    "datum-verify", "two-point"))
    p.add_argument("file")
    p.set_defaults(func=_cmd_ktheory)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "mode", None) == "restrict" and args.set is None:
        parser.error("restrict needs --set")
    if getattr(args, "mode", None) == "pushforward" and args.extra is None:
        parser.error("pushforward needs a map file")
    try:
        return args.func(args)
    except InputFormatError as exc:
        _emit({"error": "input", "message": str(exc)}, stream=sys.stderr)
        return 2
    except OSError as exc:
        _emit({"error": "io", "message": str(exc)}, stream=sys.stderr)
        return 2
    except FinitetopError as exc:
        _emit(jsonio.error_to_json(exc), stream=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
