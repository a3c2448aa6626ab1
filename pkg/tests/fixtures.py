"""Shared builders for group-theoretic test data.

Unlike oracles.py these construct library objects, so they are fixtures,
not reference routes.  The verdicts about them still come from oracles.
"""

from finitetop.intmat import IntMatrix
from finitetop.ktheory import (FGAbelianGroup, FiltratedKDatum, GradedGroup,
                               GroupHom, SixTermCycle)
from finitetop.spaces import bits
from oracles import diagonal_group, element_kernel, random_torsion_hom

# small torsion factors; products are kept at or below 36
DIVISOR_POOL = (2, 2, 3, 4, 5, 6, 8, 9, 12)


def random_divisors(rng, max_order=36):
    while True:
        divs = tuple(rng.choice(DIVISOR_POOL) for _ in range(rng.randint(1, 3)))
        order = 1
        for d in divs:
            order *= d
        if order <= max_order:
            return divs


def random_torsion_cycle(rng):
    """Six diagonal torsion groups with random well-defined maps around."""
    divs = [random_divisors(rng) for _ in range(6)]
    groups = [diagonal_group(d) for d in divs]
    maps = [GroupHom(groups[i], groups[(i + 1) % 6],
                     random_torsion_hom(rng, divs[i], divs[(i + 1) % 6]))
            for i in range(6)]
    return divs, SixTermCycle(groups, maps)


def random_zero_composite(rng, a_divs, b_divs, g_rows, c_divs):
    """Matrix A -> B whose columns lie in the element kernel of g.

    Column j is further restricted so that a_divs[j] times it dies in B,
    which is exactly well-definedness on the j-th relator.
    """
    ker = sorted(element_kernel(g_rows, b_divs, c_divs))
    cols = []
    for dj in a_divs:
        fits = [x for x in ker
                if all(dj * xi % di == 0 for xi, di in zip(x, b_divs))]
        cols.append(rng.choice(fits))
    return IntMatrix.from_columns(cols, rows=len(b_divs))


def point_count_datum(space):
    """Evenly graded datum: functions from the carrier to the integers.

    even(A) is free on the points of A, restriction and extension by zero
    give short exact sequences, the odd part vanishes.  Passes verification
    over any space.
    """
    zero = FGAbelianGroup.zero()
    assignment = {}
    for lc in space.locally_closed_sets():
        assignment[lc.carrier] = GradedGroup(
            FGAbelianGroup.free(lc.carrier.bit_count()), zero)
    cycles = {}
    for lc in space.locally_closed_sets():
        y = lc.carrier
        yb = sorted(bits(y))
        for w in space.opens:
            u = y & w
            if (u, y) in cycles:
                continue
            rest = y & ~u
            ub, rb = sorted(bits(u)), sorted(bits(rest))
            incl = IntMatrix([[int(p == q) for q in ub] for p in yb],
                             len(yb), len(ub))
            proj = IntMatrix([[int(p == q) for q in yb] for p in rb],
                             len(rb), len(yb))
            eu, ey, er = (assignment[m].even for m in (u, y, rest))
            cycles[(u, y)] = SixTermCycle(
                (eu, ey, er, zero, zero, zero),
                (GroupHom(eu, ey, incl), GroupHom(ey, er, proj),
                 GroupHom.zero(er, zero), GroupHom.zero(zero, zero),
                 GroupHom.zero(zero, zero), GroupHom.zero(zero, eu)))
    return FiltratedKDatum(space, assignment, cycles)


def constant_zero_datum(space, special=None, group=None):
    """Zero groups and zero maps everywhere.

    When `special` is a carrier mask its even part becomes `group` instead,
    with all maps still zero; that seeds exactly one inconsistency.
    """
    zero = FGAbelianGroup.zero()
    plain = GradedGroup(zero, zero)
    assignment = {}
    for lc in space.locally_closed_sets():
        if lc.carrier == special:
            assignment[lc.carrier] = GradedGroup(group, zero)
        else:
            assignment[lc.carrier] = plain
    cycles = {}
    for lc in space.locally_closed_sets():
        y = lc.carrier
        for w in space.opens:
            u = y & w
            if (u, y) in cycles:
                continue
            rest = y & ~u
            groups = (assignment[u].even, assignment[y].even,
                      assignment[rest].even, assignment[u].odd,
                      assignment[y].odd, assignment[rest].odd)
            maps = tuple(GroupHom.zero(groups[i], groups[(i + 1) % 6])
                         for i in range(6))
            cycles[(u, y)] = SixTermCycle(groups, maps)
    return FiltratedKDatum(space, assignment, cycles)
