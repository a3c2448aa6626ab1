"""JSON wire formats for spaces, maps, actions, groups, and diagram data.

Point sets travel as sorted lists of 0-based indices, matrices as
row-major integer lists, group relations as a list of relator vectors
(one per relation, each of length ``generators``).  Structural problems
raise InputFormatError; inputs that parse but fail a mathematical check
(a family that is not a topology, a map that is not continuous) raise
the usual FinitetopError subclasses so callers can tell the two apart.
"""

from .action import ActionOverX, IdealAssignment
from .errors import InputFormatError
from .intmat import IntMatrix
from .ktheory import FGAbelianGroup, GradedGroup, GroupHom, SixTermCycle
from .spaces import (ContinuousMap, Preorder, alexandrov_topology, bits,
                     family_key, validate_topology)


def _obj(value, what):
    if not isinstance(value, dict):
        raise InputFormatError(f"{what} must be a JSON object")
    return value


def _int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputFormatError(f"{what} must be an integer")
    return value


def _size(obj, what):
    n = _int(obj.get("size"), f"{what} size")
    if n < 0:
        raise InputFormatError(f"{what} size must be nonnegative")
    return n


def _mask(value, size, what):
    if not isinstance(value, list):
        raise InputFormatError(f"{what} must be a list of point indices")
    m = 0
    for v in value:
        i = _int(v, f"{what} entry")
        if not 0 <= i < size:
            raise InputFormatError(f"{what} index {i} out of range for size {size}")
        if m >> i & 1:
            raise InputFormatError(f"{what} repeats index {i}")
        m |= 1 << i
    return m


def indices(mask):
    return sorted(bits(mask))


# -- spaces and maps -----------------------------------------------------------


def space_from_json(obj):
    """A space, either as an open-set family or as a preorder.

    {"size": n, "opens": [[0], [0, 1], ...]}  or
    {"preorder": {"size": n, "leq": [[x, y], ...]}}   (diagonal implied)

    Either form may carry "points", a list of display labels.
    """
    obj = _obj(obj, "space")
    labels = obj.get("points")
    if labels is not None:
        if not isinstance(labels, list):
            raise InputFormatError("points must be a list of labels")
        labels = tuple(labels)
    if "preorder" in obj:
        pre = _obj(obj["preorder"], "preorder")
        n = _size(pre, "preorder")
        rows = [1 << x for x in range(n)]
        for pair in pre.get("leq", []):
            if not isinstance(pair, list) or len(pair) != 2:
                raise InputFormatError("leq entries must be [x, y] pairs")
            x = _int(pair[0], "leq point")
            y = _int(pair[1], "leq point")
            if not (0 <= x < n and 0 <= y < n):
                raise InputFormatError(f"leq pair [{x}, {y}] out of range")
            rows[x] |= 1 << y
        space = alexandrov_topology(Preorder(n, rows))
        if labels is not None:
            space = validate_topology(space.size, space.opens, labels)
        return space
    n = _size(obj, "space")
    opens = obj.get("opens")
    if not isinstance(opens, list):
        raise InputFormatError("space needs an opens list")
    return validate_topology(n, (_mask(u, n, "open set") for u in opens), labels)


def space_to_json(space):
    out = {"size": space.size, "opens": [indices(u) for u in space.opens]}
    if space.labels is not None:
        out["points"] = list(space.labels)
    return out


def preorder_to_json(pre):
    return {"size": pre.size,
            "leq": [[x, y] for x, y in pre.pairs() if x != y]}


def map_from_json(obj):
    """{"domain": space, "codomain": space, "values": [f(0), f(1), ...]}"""
    obj = _obj(obj, "map")
    domain = space_from_json(_obj(obj.get("domain"), "map domain"))
    codomain = space_from_json(_obj(obj.get("codomain"), "map codomain"))
    values = obj.get("values")
    if not isinstance(values, list) or len(values) != domain.size:
        raise InputFormatError("map values must list one point per domain point")
    values = [_int(v, "map value") for v in values]
    for v in values:
        if not 0 <= v < codomain.size:
            raise InputFormatError(f"map value {v} out of range")
    return ContinuousMap(domain, codomain, values)


def map_to_json(f):
    return {"domain": space_to_json(f.domain),
            "codomain": space_to_json(f.codomain),
            "values": list(f.assignment)}


def action_from_json(obj):
    """{"base": space, "prim": space, "psi": [values of the structure map]}"""
    obj = _obj(obj, "action")
    base = space_from_json(_obj(obj.get("base"), "action base"))
    prim = space_from_json(_obj(obj.get("prim"), "action prim"))
    values = obj.get("psi")
    if not isinstance(values, list) or len(values) != prim.size:
        raise InputFormatError("psi must list one base point per prim point")
    values = [_int(v, "psi value") for v in values]
    for v in values:
        if not 0 <= v < base.size:
            raise InputFormatError(f"psi value {v} out of range")
    return ActionOverX(base, prim, ContinuousMap(prim, base, values))


def action_to_json(action):
    return {"base": space_to_json(action.base),
            "prim": space_to_json(action.prim),
            "psi": list(action.psi.assignment)}


def assignment_from_json(obj):
    """{"base": space, "prim": space, "values": {"x": [prim indices], ...}}

    Returns (IdealAssignment, prim).  Keys are base point indices as
    strings; every base point must appear.
    """
    obj = _obj(obj, "assignment")
    base = space_from_json(_obj(obj.get("base"), "assignment base"))
    prim = space_from_json(_obj(obj.get("prim"), "assignment prim"))
    raw = _obj(obj.get("values"), "assignment values")
    values = {}
    for key, val in raw.items():
        try:
            x = int(key)
        except ValueError:
            raise InputFormatError(f"assignment key {key!r} is not a point index")
        if not 0 <= x < base.size:
            raise InputFormatError(f"assignment key {x} out of range")
        values[x] = _mask(val, prim.size, f"ideal at {x}")
    missing = [x for x in range(base.size) if x not in values]
    if missing:
        raise InputFormatError(f"assignment misses base points {missing}")
    return IdealAssignment(base, values), prim


def assignment_to_json(assign, prim):
    return {"base": space_to_json(assign.base),
            "prim": space_to_json(prim),
            "values": {str(x): indices(m) for x, m in assign.values.items()}}


# -- matrices and groups -------------------------------------------------------


def matrix_from_json(value, what="matrix"):
    if not isinstance(value, list):
        raise InputFormatError(f"{what} must be a list of rows")
    rows = []
    for row in value:
        if not isinstance(row, list):
            raise InputFormatError(f"{what} rows must be lists")
        rows.append(tuple(_int(v, f"{what} entry") for v in row))
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise InputFormatError(f"{what} rows have differing lengths")
    cols = widths.pop() if widths else 0
    return IntMatrix(rows, rows=len(rows), cols=cols)


def matrix_to_json(m):
    return [list(row) for row in m.entries]


def group_from_json(obj):
    """{"generators": n, "relations": [[c1, ..., cn], ...]}  (relations optional)"""
    obj = _obj(obj, "group")
    n = _int(obj.get("generators"), "generators")
    if n < 0:
        raise InputFormatError("generators must be nonnegative")
    relators = matrix_from_json(obj.get("relations", []), "relations")
    if relators.rows and relators.cols != n:
        raise InputFormatError("each relation needs one coordinate per generator")
    return FGAbelianGroup(n, IntMatrix.from_columns(relators.entries, rows=n))


def group_to_json(group):
    return {"generators": group.generators,
            "relations": matrix_to_json(group.relations.transpose())}


def invariants_to_json(group):
    rank, torsion = group.invariants()
    return {"rank": rank, "torsion": list(torsion)}


def _hom(domain, codomain, value, what="matrix"):
    m = matrix_from_json(value, what)
    # a row-free JSON matrix cannot carry its column count
    if codomain.generators == 0 and m.rows == 0:
        m = IntMatrix.zeros(0, domain.generators)
    return GroupHom(domain, codomain, m)


def hom_from_json(obj):
    """{"domain": group, "codomain": group, "matrix": [[...], ...]}"""
    obj = _obj(obj, "hom")
    domain = group_from_json(_obj(obj.get("domain"), "hom domain"))
    codomain = group_from_json(_obj(obj.get("codomain"), "hom codomain"))
    return _hom(domain, codomain, obj.get("matrix"))


def hom_to_json(f):
    return {"domain": group_to_json(f.domain),
            "codomain": group_to_json(f.codomain),
            "matrix": matrix_to_json(f.matrix)}


def graded_from_json(obj):
    obj = _obj(obj, "graded group")
    return GradedGroup(group_from_json(_obj(obj.get("even"), "even part")),
                       group_from_json(_obj(obj.get("odd"), "odd part")))


def graded_to_json(g):
    return {"even": group_to_json(g.even), "odd": group_to_json(g.odd)}


def cycle_from_json(obj):
    """{"groups": [six groups], "maps": [six matrices]}"""
    obj = _obj(obj, "cycle")
    groups = obj.get("groups")
    maps = obj.get("maps")
    if not isinstance(groups, list) or len(groups) != 6:
        raise InputFormatError("a cycle needs exactly six groups")
    if not isinstance(maps, list) or len(maps) != 6:
        raise InputFormatError("a cycle needs exactly six maps")
    groups = [group_from_json(_obj(g, "cycle group")) for g in groups]
    homs = [_hom(groups[i], groups[(i + 1) % 6], maps[i], f"cycle map {i}")
            for i in range(6)]
    return SixTermCycle(groups, homs)


def square_from_json(obj):
    """{"top": hom, "right": hom, "left": hom, "bottom": hom}"""
    obj = _obj(obj, "square")
    out = []
    for side in ("top", "right", "left", "bottom"):
        out.append(hom_from_json(_obj(obj.get(side), f"{side} map")))
    return tuple(out)


# -- filtrated data ------------------------------------------------------------


def carrier_key(mask):
    return ",".join(str(i) for i in indices(mask))


def carrier_from_key(key, size):
    if not isinstance(key, str):
        raise InputFormatError("carrier keys must be strings")
    if key == "":
        return 0
    parts = []
    for piece in key.split(","):
        try:
            parts.append(int(piece))
        except ValueError:
            raise InputFormatError(f"bad carrier key {key!r}")
    return _mask(parts, size, f"carrier {key!r}")


def datum_from_json(obj):
    """A filtrated family of graded groups with its six-term cycles.

    {"space": space,
     "groups": {"0,1": {"even": group, "odd": group}, ...},
     "cycles": [{"open": "0", "set": "0,1", "maps": [six matrices]}, ...]}

    Carrier keys are comma-joined sorted point indices, "" for the empty
    set.  Cycle groups are wired from the assignment in the order
    (even u, even y, even rest, odd u, odd y, odd rest).
    """
    from .ktheory import FiltratedKDatum
    obj = _obj(obj, "datum")
    space = space_from_json(_obj(obj.get("space"), "datum space"))
    raw_groups = _obj(obj.get("groups"), "datum groups")
    assignment = {}
    for key, val in raw_groups.items():
        assignment[carrier_from_key(key, space.size)] = graded_from_json(val)
    raw_cycles = obj.get("cycles")
    if not isinstance(raw_cycles, list):
        raise InputFormatError("datum needs a cycles list")
    cycles = {}
    for entry in raw_cycles:
        entry = _obj(entry, "cycle entry")
        u = carrier_from_key(entry.get("open"), space.size)
        y = carrier_from_key(entry.get("set"), space.size)
        rest = y & ~u
        for m in (u, y, rest):
            if m not in assignment:
                raise InputFormatError(
                    f"cycle ({entry.get('open')!r}, {entry.get('set')!r}) "
                    "references a carrier with no assigned group")
        maps = entry.get("maps")
        if not isinstance(maps, list) or len(maps) != 6:
            raise InputFormatError("each cycle entry needs six maps")
        eu, ey, er = (assignment[m].even for m in (u, y, rest))
        ou, oy, orr = (assignment[m].odd for m in (u, y, rest))
        groups = (eu, ey, er, ou, oy, orr)
        homs = [_hom(groups[i], groups[(i + 1) % 6], maps[i],
                     f"cycle map {i}")
                for i in range(6)]
        cycles[(u, y)] = SixTermCycle(groups, homs)
    return FiltratedKDatum(space, assignment, cycles)


def datum_to_json(datum):
    groups = {carrier_key(m): graded_to_json(g)
              for m, g in sorted(datum.assignment.items(),
                                 key=lambda kv: family_key(kv[0]))}
    cycles = []
    for (u, y), cycle in sorted(datum.cycles.items(),
                                key=lambda p: (family_key(p[0][1]),
                                               family_key(p[0][0]))):
        cycles.append({"open": carrier_key(u), "set": carrier_key(y),
                       "maps": [matrix_to_json(h.matrix) for h in cycle.maps]})
    return {"space": space_to_json(datum.space),
            "groups": groups, "cycles": cycles}


# -- reports -------------------------------------------------------------------


def _plain(value):
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, IntMatrix):
        return matrix_to_json(value)
    if isinstance(value, FGAbelianGroup):
        return invariants_to_json(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


def exactness_to_json(report):
    return {"ok": report.ok, "reason": report.reason,
            "witness": _plain(report.witness)}


def cycle_report_to_json(report):
    first = report.first_failure()
    return {"ok": report.ok,
            "nodes": [exactness_to_json(n) for n in report.nodes],
            "first_failure": None if first is None else first[0]}


def datum_report_to_json(report):
    return {"ok": report.ok,
            "results": [{"open": carrier_key(u), "set": carrier_key(y),
                         "report": cycle_report_to_json(rep)}
                        for (u, y), rep in report.results]}


def propagation_to_json(report):
    if report.ok:
        return {"ok": True, "deviation": None}
    carrier, (u, y) = report.deviation
    return {"ok": False,
            "deviation": {"carrier": indices(carrier),
                          "step": [indices(u), indices(y)]}}


def two_point_to_json(report):
    return {"delta": matrix_to_json(report.delta.matrix),
            "kernel": invariants_to_json(report.kernel),
            "cokernel": invariants_to_json(report.cokernel),
            "middle": (None if report.middle is None
                       else invariants_to_json(report.middle)),
            "note": report.note}


def error_to_json(exc):
    return {"error": exc.name, "message": str(exc.args[0]) if exc.args else "",
            "details": _plain(exc.details)}
