"""Finitely generated abelian groups by presentation, and exactness checking.

Groups are presentations (generators plus relator columns), never canonical
forms: equality is structural, isomorphism goes through Smith invariants.
On top sit graded groups, homomorphisms with well-definedness checks,
kernel/cokernel/image presentations, six-term cycles, filtrated data over a
finite space with the vanishing induction along the canonical filtration,
and the degenerate two-point long exact sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    NotComposable,
    NotWellDefined,
    ShapeMismatch,
    SquareNotCommuting,
)
from .intmat import IntMatrix, kernel_basis, smith_normal_form, solve
from .spaces import bits, family_key, mask_of


class FGAbelianGroup:
    """Presentation of a finitely generated abelian group.

    relations is a (generators x relators) matrix whose columns are the
    relators.  Free rank and torsion coefficients come from the Smith
    normal form and are cached.
    """

    __slots__ = ("generators", "relations", "rank", "torsion")

    def __init__(self, generators, relations=None):
        if relations is None:
            relations = IntMatrix.zeros(generators, 0)
        if relations.rows != generators:
            raise ValueError("relations must have one row per generator")
        self.generators = generators
        self.relations = relations
        diag = smith_normal_form(relations)[1].diagonal()
        nonzero = [d for d in diag if d]
        self.rank = generators - len(nonzero)
        self.torsion = tuple(d for d in nonzero if d > 1)

    @classmethod
    def free(cls, n):
        return cls(n)

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def cyclic(cls, d):
        return cls(1, IntMatrix([[d]]))

    @classmethod
    def direct_sum(cls, a, b):
        rel = IntMatrix(
            [list(row) + [0] * b.relations.cols for row in a.relations.entries]
            + [[0] * a.relations.cols + list(row) for row in b.relations.entries],
            a.generators + b.generators, a.relations.cols + b.relations.cols)
        return cls(a.generators + b.generators, rel)

    def invariants(self):
        return (self.rank, list(self.torsion))

    def is_zero(self):
        return self.rank == 0 and not self.torsion

    def is_isomorphic(self, other):
        return self.rank == other.rank and self.torsion == other.torsion

    def order(self):
        """Number of elements, or None when infinite."""
        if self.rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __eq__(self, other):
        return (isinstance(other, FGAbelianGroup)
                and self.generators == other.generators
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.generators, self.relations))

    def __repr__(self):
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return "FGAbelianGroup(" + (" + ".join(parts) if parts else "0") + ")"


@dataclass(frozen=True)
class GradedGroup:
    """A group in even degree and one in odd degree."""

    even: FGAbelianGroup
    odd: FGAbelianGroup

    def is_zero(self):
        return self.even.is_zero() and self.odd.is_zero()


def _induced_zero(matrix, codomain):
    """Does the matrix send everything into the codomain's relation span?"""
    return solve(codomain.relations, matrix) is not None


class GroupHom:
    """Homomorphism given by a matrix on presentation generators.

    matrix is (codomain generators x domain generators); well-definedness
    means every domain relator maps into the span of codomain relators.
    """

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain, codomain, matrix):
        if matrix.rows != codomain.generators or matrix.cols != domain.generators:
            raise ShapeMismatch(
                f"matrix is {matrix.rows}x{matrix.cols}, expected "
                f"{codomain.generators}x{domain.generators}")
        if not _induced_zero(matrix @ domain.relations, codomain):
            raise NotWellDefined("matrix does not respect the domain relations")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    @classmethod
    def zero(cls, domain, codomain):
        return cls(domain, codomain, IntMatrix.zeros(codomain.generators,
                                                     domain.generators))

    @classmethod
    def identity(cls, group):
        return cls(group, group, IntMatrix.identity(group.generators))

    def __eq__(self, other):
        """Same presentations and same induced map (matrices may differ)."""
        return (isinstance(other, GroupHom)
                and self.domain == other.domain and self.codomain == other.codomain
                and _induced_zero(self.matrix - other.matrix, self.codomain))

    def __repr__(self):
        return f"GroupHom({self.domain!r} -> {self.codomain!r})"

    def __call__(self, coords):
        return self.matrix.apply(coords)

    def is_zero_hom(self):
        return _induced_zero(self.matrix, self.codomain)


def compose(outer, inner):
    if inner.codomain != outer.domain:
        raise NotComposable("codomain of the inner map must equal the outer domain")
    return GroupHom(inner.domain, outer.codomain, outer.matrix @ inner.matrix)


def _subgroup_presentation(generating, ambient):
    """Present the subgroup of `ambient` generated by the columns of `generating`.

    Relations are all integer combinations of the columns that land in the
    relation span of the ambient presentation.
    """
    rel = kernel_basis(generating.hstack(ambient.relations))
    top = IntMatrix(rel.entries[:generating.cols] if generating.cols else (),
                    generating.cols, rel.cols)
    return FGAbelianGroup(generating.cols, top)


def kernel(f):
    """The kernel subgroup with its inclusion into the domain.

    Generators: projections of the kernel of [matrix | codomain relations],
    together with the domain relators (which always map to zero).
    """
    n = f.domain.generators
    sols = kernel_basis(f.matrix.hstack(f.codomain.relations))
    gens = IntMatrix(sols.entries[:n] if n else (), n, sols.cols)
    gens = gens.hstack(f.domain.relations)
    group = _subgroup_presentation(gens, f.domain)
    return group, GroupHom(group, f.domain, gens)


def cokernel(f):
    """Codomain with the image columns thrown in as extra relators."""
    group = FGAbelianGroup(f.codomain.generators,
                           f.codomain.relations.hstack(f.matrix))
    proj = GroupHom(f.codomain, group, IntMatrix.identity(f.codomain.generators))
    return group, proj


def image(f):
    """The image subgroup of the codomain with its inclusion."""
    group = _subgroup_presentation(f.matrix, f.codomain)
    return group, GroupHom(group, f.codomain, f.matrix)


@dataclass(frozen=True)
class ExactnessReport:
    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def is_exact_at(f, g):
    """Exactness of A --f--> B --g--> C at B, with a witness when it fails.

    Checks that g after f induces zero and that every kernel generator of g
    is hit by f modulo the relations of B.
    """
    if f.codomain != g.domain:
        raise NotComposable("maps do not meet at a common middle group")
    comp = g.matrix @ f.matrix
    for j in range(comp.cols):
        if solve(g.codomain.relations, comp.column(j)) is None:
            return ExactnessReport(False, "composite is not zero",
                                   ("generator", j))
    _, incl = kernel(g)
    reach = f.matrix.hstack(f.codomain.relations)
    for j in range(incl.matrix.cols):
        k = incl.matrix.column(j)
        if solve(reach, k) is None:
            return ExactnessReport(False, "kernel element not in the image",
                                   ("kernel generator", k))
    return ExactnessReport(True)


class SixTermCycle:
    """Six groups in cyclic order and the maps between consecutive ones."""

    __slots__ = ("groups", "maps")

    def __init__(self, groups, maps):
        groups = tuple(groups)
        maps = tuple(maps)
        if len(groups) != 6 or len(maps) != 6:
            raise ShapeMismatch("a cycle needs six groups and six maps")
        for i in range(6):
            if maps[i].domain != groups[i] or maps[i].codomain != groups[(i + 1) % 6]:
                raise ShapeMismatch(f"map {i} does not go from group {i} to group "
                                    f"{(i + 1) % 6}")
        self.groups = groups
        self.maps = maps

    def __eq__(self, other):
        return (isinstance(other, SixTermCycle)
                and self.groups == other.groups and self.maps == other.maps)


@dataclass(frozen=True)
class CycleReport:
    nodes: tuple

    @property
    def ok(self):
        return all(n.ok for n in self.nodes)

    def first_failure(self):
        for i, n in enumerate(self.nodes):
            if not n.ok:
                return i, n
        return None


def verify_six_term(cycle):
    """Exactness verdict at each node of the cycle."""
    nodes = tuple(is_exact_at(cycle.maps[(i - 1) % 6], cycle.maps[i])
                  for i in range(6))
    return CycleReport(nodes)


class FiltratedKDatum:
    """Graded groups over every locally closed subset plus their cycles.

    assignment maps carrier masks to GradedGroups; cycles maps pairs
    (u, y) with u relatively open in y to the six-term cycle on
    (even(u), even(y), even(y minus u), odd(u), odd(y), odd(y minus u)).
    """

    __slots__ = ("space", "assignment", "cycles")

    def __init__(self, space, assignment, cycles):
        self.space = space
        self.assignment = dict(assignment)
        self.cycles = dict(cycles)
        for lc in space.locally_closed_sets():
            if lc.carrier not in self.assignment:
                raise ShapeMismatch(
                    f"no group assigned to {sorted(bits(lc.carrier))}")

    def group(self, carrier):
        return self.assignment[carrier]

    def pairs(self):
        """All (u, y): y locally closed, u = y & w for an open w, deterministic."""
        out = set()
        for lc in self.space.locally_closed_sets():
            for w in self.space.opens:
                out.add((lc.carrier & w, lc.carrier))
        return sorted(out, key=lambda p: (family_key(p[1]), family_key(p[0])))


@dataclass(frozen=True)
class DatumReport:
    results: tuple  # ((u, y), CycleReport) pairs

    @property
    def ok(self):
        return all(r.ok for _, r in self.results)

    def failures(self):
        return [(pair, rep) for pair, rep in self.results if not rep.ok]


def verify_datum(datum):
    """Check every relative-open pair: groups match the assignment, cycle exact."""
    results = []
    for u, y in datum.pairs():
        cycle = datum.cycles.get((u, y))
        if cycle is None:
            raise ShapeMismatch(
                f"missing cycle for ({sorted(bits(u))}, {sorted(bits(y))})")
        rest = y & ~u
        expected = (datum.group(u).even, datum.group(y).even, datum.group(rest).even,
                    datum.group(u).odd, datum.group(y).odd, datum.group(rest).odd)
        if tuple(cycle.groups) != expected:
            raise ShapeMismatch(
                f"cycle groups for ({sorted(bits(u))}, {sorted(bits(y))}) "
                "do not match the assignment")
        results.append(((u, y), verify_six_term(cycle)))
    return DatumReport(tuple(results))


@dataclass(frozen=True)
class PropagationReport:
    ok: bool
    deviation: tuple = ()  # (carrier, (u, y) step) when not ok

    def __bool__(self):
        return self.ok


def vanishing_propagation(datum):
    """Re-run the induction: zero on points forces zero on every carrier.

    Locally closed sets are walked by (filtration level, size); each one is
    split along the previous filtration layer, or, for antichains, at its
    smallest point.  The first carrier whose assigned group is not zero is
    reported together with the split pair that forces it.
    """
    space = datum.space
    filt = space.canonical_filtration()
    order = sorted((lc.carrier for lc in space.locally_closed_sets()),
                   key=lambda s: (filt.level_of_set(s), s.bit_count(), s))
    for y in order:
        if y == 0:
            if not datum.group(y).is_zero():
                return PropagationReport(False, (y, (0, y)))
            continue
        j = filt.level_of_set(y)
        below = y & filt.layers[j - 1]
        if below:
            step = (below, y)
        elif y.bit_count() == 1:
            if not datum.group(y).is_zero():
                return PropagationReport(False, (y, (0, y)))
            continue
        else:
            low = y & -y
            step = (y & ~low, y)
        if not datum.group(y).is_zero():
            return PropagationReport(False, (y, step))
    return PropagationReport(True)


@dataclass(frozen=True)
class TwoPointReport:
    delta: GroupHom
    kernel: FGAbelianGroup
    cokernel: FGAbelianGroup
    middle: FGAbelianGroup | None
    note: str = ""


def two_point_sequence(top, right, left, bottom):
    """Collapse the commuting square into its diagonal boundary map.

    delta = right after top (= bottom after left); returns its kernel and
    cokernel, and when the kernel is free the middle group of the extension
    cokernel >-> middle ->> kernel, which then splits.  A torsion kernel
    leaves the middle group undetermined and says so.
    """
    if right.domain != top.codomain:
        raise ShapeMismatch("right map must start where the top map ends")
    if bottom.domain != left.codomain:
        raise ShapeMismatch("bottom map must start where the left map ends")
    if left.domain != top.domain:
        raise ShapeMismatch("top and left maps must share their domain")
    if bottom.codomain != right.codomain:
        raise ShapeMismatch("right and bottom maps must share their codomain")
    diff = right.matrix @ top.matrix - bottom.matrix @ left.matrix
    for j in range(diff.cols):
        if solve(right.codomain.relations, diff.column(j)) is None:
            raise SquareNotCommuting("the two composites differ",
                                     witness=("generator", j, diff.column(j)))
    delta = compose(right, top)
    ker, _ = kernel(delta)
    coker, _ = cokernel(delta)
    if ker.torsion:
        return TwoPointReport(delta, ker, coker, None,
                              "kernel has torsion; the extension is ambiguous")
    return TwoPointReport(delta, ker, coker, FGAbelianGroup.direct_sum(coker, ker))
