"""Exhaustive generation and classification of small finite spaces.

Two independent generation routes are kept side by side on purpose: direct
filtering of subset families (tiny n only) and row-by-row extension of
relation matrices.  They serve as each other's oracle where their ranges
overlap.  Classification up to homeomorphism goes through a canonical byte
encoding minimised over relabelings, refined by cheap point invariants so
the permutation set stays small.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import CapExceeded
from .spaces import (
    FiniteSpace,
    Preorder,
    alexandrov_topology,
    bits,
    space_from_edges,
)

TOPOLOGY_CAP = 5
T0_CAP = 7
CENSUS_CAP = 6
CANONICAL_CAP = 8


# -- generation by relation-matrix extension --------------------------------

def _extend_relations(n, t0, rows, downs):
    """Yield completed up-set row tuples for all (pre)orders extending a prefix.

    rows[j] is the up-set of j inside the prefix, downs[j] the down-set.  A
    new point i picks an up-closed set u (everything above i) and a
    down-closed set d (everything below); transitivity through i forces
    u within rows[j] for every j in d, and partial orders forbid u meeting d.
    """
    i = len(rows)
    if i == n:
        yield tuple(rows)
        return
    subsets = range(1 << i)
    upsets = [u for u in subsets if all(rows[j] & ~u == 0 for j in bits(u))]
    downsets = [d for d in subsets if all(downs[j] & ~d == 0 for j in bits(d))]
    bit = 1 << i
    for u in upsets:
        allowed = 0
        for j in range(i):
            if u & ~rows[j] == 0:
                allowed |= 1 << j
        if t0:
            allowed &= ~u
        # j below the new point gains it in its up-set; j above in its down-set
        downs_u = [downs[j] | bit if u >> j & 1 else downs[j] for j in range(i)]
        for d in downsets:
            if d & ~allowed:
                continue
            rows2 = [rows[j] | bit if d >> j & 1 else rows[j] for j in range(i)]
            rows2.append(u | bit)
            downs2 = downs_u + [d | bit]
            yield from _extend_relations(n, t0, rows2, downs2)


def _relation_prefixes(n, t0, depth):
    """Collect (rows, downs) prefix states at the given depth, in a fixed order."""
    states = [([], [])]
    for i in range(min(depth, n)):
        grown = []
        for rows, downs in states:
            for full_rows in _extend_relations(i + 1, t0, rows, downs):
                # rebuild downs for the completed prefix
                new_downs = [0] * (i + 1)
                for x in range(i + 1):
                    for y in bits(full_rows[x]):
                        new_downs[y] |= 1 << x
                grown.append((list(full_rows), new_downs))
        states = grown
    return states


def enumerate_labeled_preorders(n, t0=False):
    """All preorders (or partial orders) on points 0..n-1, one per labeling."""
    cap = T0_CAP if t0 else CENSUS_CAP
    if n > cap:
        raise CapExceeded(f"relation enumeration capped at {cap} points", n=n)
    return (Preorder(n, rows, validate=False)
            for rows in _extend_relations(n, t0, [], []))


def topologies_by_family_filter(n):
    """Brute force: keep every subset family closed under union and meet.

    Candidate families range over all subsets of the proper nonempty masks,
    so this is only usable for very small n; it exists as an oracle for the
    relation-extension route.
    """
    full = (1 << n) - 1
    proper = [m for m in range(1, full)]
    out = []
    for choice in range(1 << len(proper)):
        fam = [0, full] if n else [0]
        fam += [proper[k] for k in range(len(proper)) if choice >> k & 1]
        ok = True
        for a, b in itertools.combinations(fam, 2):
            if a | b not in fam or a & b not in fam:
                ok = False
                break
        if ok:
            out.append(FiniteSpace(n, fam, validate=False))
    return out


def topologies_from_preorders(n, t0=False):
    return (alexandrov_topology(pre)
            for pre in enumerate_labeled_preorders(n, t0=t0))


def enumerate_labeled_topologies(n):
    """Every topology on n labeled points exactly once; n is capped at 5."""
    if n > TOPOLOGY_CAP:
        raise CapExceeded(f"topology enumeration capped at {TOPOLOGY_CAP} points", n=n)
    if n <= 4:
        return tuple(topologies_by_family_filter(n))
    return tuple(topologies_from_preorders(n))


def enumerate_labeled_t0(n):
    """Every T0 topology on n labeled points, one per labeled partial order."""
    if n > T0_CAP:
        raise CapExceeded(f"T0 enumeration capped at {T0_CAP} points", n=n)
    return tuple(topologies_from_preorders(n, t0=True))


# -- classification up to homeomorphism --------------------------------------

def _point_keys(space):
    """Iso-invariant key per point; equal keys bound the relabeling search."""
    n = space.size
    up = [space.minimal_open(x) for x in range(n)]
    down = [space.closure(1 << x) for x in range(n)]
    if space.is_t0():
        adj = [0] * n
        indeg = [0] * n
        for a, b in space.hasse_edges():
            adj[a] |= 1 << b
            indeg[b] += 1
        keys = [(up[x].bit_count(), down[x].bit_count(),
                 adj[x].bit_count(), indeg[x]) for x in range(n)]
        return True, adj, keys
    adj = up
    keys = [(up[x].bit_count(), down[x].bit_count(),
             (up[x] & down[x]).bit_count()) for x in range(n)]
    return False, adj, keys


def canonical_form(space):
    """Byte encoding equal for two spaces iff they are homeomorphic.

    T0 spaces encode the lexicographically smallest relabeled cover-edge
    adjacency matrix, others the smallest specialisation matrix; the point
    invariant signature is prepended so only like-structured spaces can
    ever compare equal.
    """
    n = space.size
    if n > CANONICAL_CAP:
        raise CapExceeded(f"canonical form capped at {CANONICAL_CAP} points", n=n)
    t0, adj, keys = _point_keys(space)
    order = sorted(range(n), key=lambda x: keys[x])
    groups = [list(g) for _, g in itertools.groupby(order, key=lambda x: keys[x])]
    sig = b"".join(bytes(keys[x]) for x in order)
    best = None
    for combo in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = [0] * n
        pos = 0
        for group in combo:
            for x in group:
                perm[x] = pos
                pos += 1
        new_rows = [0] * n
        for x in range(n):
            r = 0
            for y in bits(adj[x]):
                r |= 1 << perm[y]
            new_rows[perm[x]] = r
        enc = bytes(new_rows)
        if best is None or enc < best:
            best = enc
    return (b"T" if t0 else b"P") + bytes([n]) + sig + (best or b"")


def space_from_canonical(form):
    """Rebuild a representative space from a canonical encoding."""
    marker, n = form[0:1], form[1]
    keylen = 4 if marker == b"T" else 3
    rows = form[2 + keylen * n:]
    if marker == b"T":
        edges = [(a, b) for a in range(n) for b in bits(rows[a])]
        return space_from_edges(n, edges)
    return alexandrov_topology(Preorder(n, rows, validate=False))


def are_homeomorphic(x1, x2):
    if x1.size != x2.size or len(x1.opens) != len(x2.opens):
        return False
    if sorted(m.bit_count() for m in x1.opens) != sorted(m.bit_count() for m in x2.opens):
        return False
    return canonical_form(x1) == canonical_form(x2)


def homeomorphism_oracle(x1, x2):
    """Search all bijections for one matching the open families (tiny n only)."""
    if x1.size != x2.size:
        return False
    fam2 = set(x2.opens)
    if len(x1.opens) != len(fam2):
        return False
    for perm in itertools.permutations(range(x1.size)):
        image = {sum(1 << perm[p] for p in bits(u)) for u in x1.opens}
        if image == fam2:
            return True
    return False


# -- census ------------------------------------------------------------------

@dataclass(frozen=True)
class CensusRow:
    """Counts for one enumeration slice: labeled spaces and their classes."""

    n: int
    connected: bool
    t0: bool
    labeled_count: int
    classes: tuple

    def class_count(self):
        return len(self.classes)


def _census_chunk(n, connected, t0, states):
    count = 0
    forms = set()
    for rows, downs in states:
        for full_rows in _extend_relations(n, t0, list(rows), list(downs)):
            space = alexandrov_topology(Preorder(n, full_rows, validate=False))
            if connected and not space.is_connected():
                continue
            count += 1
            forms.add(canonical_form(space))
    return count, forms


def census(n, connected=False, t0=False, workers=1):
    """Count labeled spaces passing the filters and list their classes.

    Workers split the relation-extension tree at a fixed shallow depth into
    disjoint prefixes; counts add up and class sets merge, so the result
    does not depend on the schedule.
    """
    if n > CENSUS_CAP:
        raise CapExceeded(f"census capped at {CENSUS_CAP} points", n=n)
    states = _relation_prefixes(n, t0, depth=2)
    if workers <= 1:
        chunks = [_census_chunk(n, connected, t0, states)]
    else:
        buckets = [states[k::workers] for k in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(
                lambda b: _census_chunk(n, connected, t0, b), buckets))
    count = sum(c for c, _ in chunks)
    forms = set()
    for _, f in chunks:
        forms |= f
    return CensusRow(n, connected, t0, count, tuple(sorted(forms)))


# -- the printed catalog of small connected T0 spaces -------------------------

_CATALOG_EDGES = (
    (3, ((0, 1), (1, 2))),
    (3, ((0, 1), (0, 2))),
    (3, ((0, 1), (2, 1))),
    (4, ((0, 1), (1, 2), (2, 3))),
    (4, ((0, 1), (1, 2), (1, 3))),
    (4, ((0, 1), (0, 3), (1, 2))),
    (4, ((0, 1), (0, 2), (1, 3), (2, 3))),
    (4, ((0, 1), (0, 3), (2, 1), (2, 3))),
    (4, ((0, 2), (1, 2), (1, 3))),
    (4, ((0, 1), (1, 2), (3, 1))),
    (4, ((1, 0), (1, 2), (1, 3))),
    (4, ((0, 2), (1, 2), (3, 2))),
)


def connected_catalog():
    """The published list of connected T0 spaces on 3 and 4 points.

    Twelve spaces, each given by drawn cover edges.  Deliberately kept as
    transcribed: the census may know classes this list lacks, and the
    comparison is reported rather than patched over.
    """
    return tuple(space_from_edges(n, edges) for n, edges in _CATALOG_EDGES)
