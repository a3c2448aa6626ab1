"""Open-set lattices and the correspondence between lattice maps and points.

Every lattice here is concretely the open-set family of some finite space,
ordered by inclusion, so joins are unions and meets are intersections and
distributivity comes for free.  The main content is the reconstruction of a
continuous map from an inclusion-of-ideals style table: a map of lattices
that respects joins and finite meets comes from a unique continuous map
when the target space of points is sober.
"""

from __future__ import annotations

from .errors import (
    DomainMismatch,
    NotSober,
    PreservationFailure,
    ReducibleClosedSet,
)
from .spaces import ContinuousMap, family_key


class FiniteDistributiveLattice:
    """A family of set masks closed under union and intersection.

    Contains bottom (empty mask) and a top; order is inclusion.  Elements
    are kept sorted by (size, value) like a space's open family.
    """

    __slots__ = ("elements", "top", "_element_set")

    def __init__(self, elements, validate=True):
        self.elements = tuple(sorted(set(elements), key=family_key))
        self._element_set = frozenset(self.elements)
        top = 0
        for m in self.elements:
            top |= m
        self.top = top
        if validate:
            if 0 not in self._element_set:
                raise ValueError("lattice needs a bottom element")
            if top not in self._element_set:
                raise ValueError("lattice needs a top element")
            for i, a in enumerate(self.elements):
                for b in self.elements[i + 1:]:
                    if a | b not in self._element_set:
                        raise ValueError(f"join of {a:#x} and {b:#x} missing")
                    if a & b not in self._element_set:
                        raise ValueError(f"meet of {a:#x} and {b:#x} missing")

    def __eq__(self, other):
        return (isinstance(other, FiniteDistributiveLattice)
                and self.elements == other.elements)

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"FiniteDistributiveLattice({len(self.elements)} elements)"

    def __contains__(self, m):
        return m in self._element_set

    def __len__(self):
        return len(self.elements)


def open_set_lattice(space):
    return FiniteDistributiveLattice(space.opens, validate=False)


class LatticeMap:
    """A total table from source lattice elements to target elements."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source, target, table):
        self.source = source
        self.target = target
        self.table = dict(table)
        missing = [a for a in source.elements if a not in self.table]
        if missing:
            raise ValueError(f"table not total, missing {missing[:3]}")
        for a, v in self.table.items():
            if a not in source:
                raise ValueError(f"table key {a:#x} not a source element")
            if v not in target:
                raise ValueError(f"table value {v:#x} not a target element")

    def __eq__(self, other):
        return (isinstance(other, LatticeMap) and self.source == other.source
                and self.target == other.target and self.table == other.table)

    def __repr__(self):
        return f"LatticeMap({len(self.source)} -> {len(self.target)})"

    def __call__(self, a):
        return self.table[a]


def preserves_joins(m):
    """True when the table respects unions of every subset of the source.

    All 2^k subsets are tried while the source has at most 20 elements;
    beyond that, pairs plus the empty join, which is equivalent on a finite
    lattice (any union is a fold of pairwise unions).
    """
    elems = m.source.elements
    k = len(elems)
    if m.table[0] != 0:
        return False
    if k <= 20:
        def rec(i, join_src, join_tgt):
            if i == k:
                return m.table[join_src] == join_tgt
            return (rec(i + 1, join_src, join_tgt)
                    and rec(i + 1, join_src | elems[i], join_tgt | m.table[elems[i]]))

        return rec(0, 0, 0)
    return all(m.table[a | b] == (m.table[a] | m.table[b])
               for i, a in enumerate(elems) for b in elems[i:])


def preserves_finite_meets(m):
    """Pairwise meets plus the empty meet (top goes to top)."""
    elems = m.source.elements
    if m.table[m.source.top] != m.target.top:
        return False
    return all(m.table[a & b] == (m.table[a] & m.table[b])
               for i, a in enumerate(elems) for b in elems[i:])


def is_monotone(m):
    elems = m.source.elements
    return all(m.table[a] & ~m.table[b] == 0
               for a in elems for b in elems if a & ~b == 0)


def _preservation_witness(m):
    """Pairwise certificate: None when joins, meets and endpoints all hold.

    Equivalent to the exhaustive subset check on a finite lattice, but cheap
    enough to sit on the reconstruction hot path.
    """
    if m.table[0] != 0:
        return ("empty join", 0, 0)
    if m.table[m.source.top] != m.target.top:
        return ("empty meet", m.source.top, m.source.top)
    elems = m.source.elements
    for i, a in enumerate(elems):
        for b in elems[i:]:
            if m.table[a | b] != (m.table[a] | m.table[b]):
                return ("join", a, b)
            if m.table[a & b] != (m.table[a] & m.table[b]):
                return ("meet", a, b)
    return None


def continuous_to_lattice_map(psi):
    """The preimage table of a continuous map, from codomain opens to domain opens."""
    source = open_set_lattice(psi.codomain)
    target = open_set_lattice(psi.domain)
    return LatticeMap(source, target, {u: psi.preimage(u) for u in source.elements})


def lattice_map_to_continuous(m, space_x, space_p):
    """Rebuild the point map from its preimage table; space_x must be sober.

    For each point p the union of all opens whose image misses p has an
    irreducible closed complement, and p goes to its unique generic point.
    """
    if m.source.elements != space_x.opens or m.target.elements != space_p.opens:
        raise DomainMismatch("table does not match the given open families")
    if not space_x.is_sober():
        raise NotSober("reconstruction needs a sober space of points")
    witness = _preservation_witness(m)
    if witness is not None:
        raise PreservationFailure(
            f"table fails {witness[0]} preservation", witness=witness)
    irreducible = set(space_x.irreducible_closed_sets())
    generic = {space_x.closure(1 << x): x for x in range(space_x.size)}
    assignment = []
    for p in range(space_p.size):
        u_p = 0
        for u in space_x.opens:
            if not m.table[u] >> p & 1:
                u_p |= u
        a_p = space_x.full ^ u_p
        if a_p == 0 or a_p not in irreducible:
            raise ReducibleClosedSet(
                f"complement for point {p} is not irreducible", point=p, carrier=a_p)
        assignment.append(generic[a_p])
    psi = ContinuousMap(space_p, space_x, assignment, validate=False)
    for u in space_x.opens:
        if psi.preimage(u) != m.table[u]:
            raise PreservationFailure(
                "reconstructed map does not reproduce the table", witness=("table", u, u))
    return psi
