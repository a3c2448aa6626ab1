"""Independent reference routes shared by the test modules.

Everything here is deliberately primitive: element-by-element arithmetic,
rejection sampling, brute-force scans.  Matching the library against these
is the point, so none of it may call back into the code path under test.
"""

import itertools
from math import gcd

from finitetop.errors import NotContinuous
from finitetop.intmat import IntMatrix
from finitetop.ktheory import FGAbelianGroup
from finitetop.spaces import (ContinuousMap, Preorder, alexandrov_topology,
                              bits, mask_of)


def random_poset_space(rng, n):
    """Random T0 space: transitive closure of a shuffled acyclic relation."""
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j])
             for i in range(n) for j in range(i + 1, n)
             if rng.random() < 0.4]
    return alexandrov_topology(Preorder.generated_by(n, pairs))


def random_space(rng, n):
    """Random finite space, T0 not guaranteed."""
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(2 * n)]
    return alexandrov_topology(Preorder.generated_by(n, pairs))


def random_continuous(rng, dom, cod, tries=60):
    """Random continuous map dom -> cod, or a constant map if sampling fails."""
    for _ in range(tries):
        assignment = [rng.randrange(cod.size) for _ in range(dom.size)]
        try:
            return ContinuousMap(dom, cod, assignment)
        except NotContinuous:
            continue
    return ContinuousMap(dom, cod, [rng.randrange(cod.size)] * dom.size)


def permuted_space(space, perm):
    """Relabel points by perm; the result is homeomorphic by construction."""
    from finitetop.spaces import FiniteSpace
    opens = [mask_of(perm[i] for i in bits(u)) for u in space.opens]
    return FiniteSpace(space.size, opens, validate=False)


def brute_locally_closed(space):
    """All differences of two opens, by direct scan."""
    out = set()
    for u in space.opens:
        for v in space.opens:
            out.add(u & ~v)
    return out


def brute_closure(space, s):
    """Smallest closed superset by scanning the whole family."""
    return min((c for c in space.closed_sets() if s & ~c == 0),
               key=lambda c: c.bit_count())


def random_monotone_table(rng, base, prim):
    """Monotone endpoint-fixing table O(base) -> O(prim).

    Opens are visited smallest first, so every proper open subset already
    has a value; the new value is any open above their union.
    """
    table = {}
    for u in base.opens:
        if u == 0:
            table[u] = 0
            continue
        if u == base.full:
            table[u] = prim.full
            continue
        lower = 0
        for v in base.opens:
            if v != u and v & ~u == 0:
                lower |= table[v]
        table[u] = rng.choice([w for w in prim.opens if lower & ~w == 0])
    return table


# -- element-level arithmetic in products of cyclic groups ---------------------


def diagonal_group(divs):
    """Z/d1 + ... + Z/dk presented with the diagonal relation matrix."""
    n = len(divs)
    relators = [[divs[i] if j == i else 0 for j in range(n)] for i in range(n)]
    return FGAbelianGroup(n, IntMatrix.from_columns(relators, rows=n))


def elements(divs):
    return itertools.product(*(range(d) for d in divs))


def reduce_mod(vec, divs):
    return tuple(v % d for v, d in zip(vec, divs))


def apply_matrix(rows, vec):
    return tuple(sum(r[j] * vec[j] for j in range(len(vec))) for r in rows)


def element_image(rows, dom_divs, cod_divs):
    return {reduce_mod(apply_matrix(rows, x), cod_divs)
            for x in elements(dom_divs)}


def element_kernel(rows, dom_divs, cod_divs):
    zero = tuple(0 for _ in cod_divs)
    return {x for x in elements(dom_divs)
            if reduce_mod(apply_matrix(rows, x), cod_divs) == zero}


def element_exact(f_rows, g_rows, a_divs, b_divs, c_divs):
    """Exactness at the middle of A -f-> B -g-> C, elementwise."""
    return (element_image(f_rows, a_divs, b_divs)
            == element_kernel(g_rows, b_divs, c_divs))


def random_torsion_hom(rng, dom_divs, cod_divs):
    """A well-defined hom between diagonal torsion groups.

    The (i, j) entry must be a multiple of cod_i / gcd(dom_j, cod_i) for
    the generator relation dom_j * e_j = 0 to map to zero.
    """
    rows = []
    for ci in cod_divs:
        row = []
        for dj in dom_divs:
            step = ci // gcd(dj, ci)
            row.append(step * rng.randrange(gcd(dj, ci)))
        rows.append(row)
    return IntMatrix(tuple(tuple(r) for r in rows))


# -- integer matrix references -------------------------------------------------


def determinant(matrix):
    """Bareiss fraction-free determinant of a square IntMatrix."""
    n = matrix.rows
    if n != matrix.cols:
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in matrix.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_rank(matrix):
    """Row-echelon rank over the rationals via fractions-free elimination."""
    from fractions import Fraction
    a = [[Fraction(v) for v in row] for row in matrix.entries]
    rank = 0
    cols = matrix.cols
    for col in range(cols):
        pivot = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = a[rank][col]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                factor = a[i][col] / inv
                a[i] = [x - factor * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == len(a):
            break
    return rank


def random_matrix(rng, rows, cols, bound=9):
    return IntMatrix(tuple(tuple(rng.randint(-bound, bound)
                                 for _ in range(cols))
                           for _ in range(rows)))
