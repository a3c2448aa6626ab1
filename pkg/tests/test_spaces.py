import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finitetop.errors import (MissingEmpty, MissingFull, NotClosedUnderIntersection,
                              NotClosedUnderUnion, NotContinuous, NotLocallyClosed,
                              NotReflexive, NotT0, NotTransitive)
from finitetop.spaces import (ContinuousMap, FiniteSpace, Preorder,
                              alexandrov_topology, bits, hasse_dot, mask_of,
                              space_from_edges, validate_topology)
from oracles import brute_closure, brute_locally_closed, random_poset_space

from finitetop.enumeration import enumerate_labeled_topologies


def spaces_up_to(n):
    for k in range(n + 1):
        yield from enumerate_labeled_topologies(k)


# -- family axioms -------------------------------------------------------------


def test_family_axioms_rejected_with_witnesses():
    with pytest.raises(MissingEmpty):
        validate_topology(1, [1])
    with pytest.raises(MissingFull):
        validate_topology(2, [0, 1])
    with pytest.raises(NotClosedUnderUnion) as err:
        validate_topology(3, [0, 1, 2, 7])
    assert err.value.details["witness"] == (1, 2)
    with pytest.raises(NotClosedUnderIntersection) as err:
        validate_topology(3, [0, 3, 5, 7])
    assert err.value.details["witness"] == (3, 5)


def test_family_deduplicated_and_sorted():
    space = validate_topology(2, [3, 0, 1, 1, 3])
    assert space.opens == (0, 1, 3)


def test_labels_checked():
    with pytest.raises(ValueError):
        validate_topology(2, [0, 1, 3], labels=("a",))
    with pytest.raises(ValueError):
        validate_topology(2, [0, 1, 3], labels=("a", "a"))


# -- closure and interior --------------------------------------------------------


def test_closure_interior_against_scan():
    for space in spaces_up_to(3):
        for s in range(1 << space.size):
            assert space.closure(s) == brute_closure(space, s)
            assert space.interior(s) == space.full ^ space.closure(space.full ^ s)


def test_minimal_open_is_smallest():
    for space in spaces_up_to(3):
        for x in range(space.size):
            smallest = min((u for u in space.opens if u >> x & 1),
                           key=lambda u: u.bit_count())
            assert space.minimal_open(x) == smallest


# -- preorders -------------------------------------------------------------------


def test_preorder_validation():
    with pytest.raises(NotReflexive):
        Preorder(2, [1, 1])
    with pytest.raises(NotTransitive) as err:
        Preorder(3, [0b011, 0b110, 0b100])
    assert err.value.details["witness"] == (0, 1, 2)


def test_generated_by_closes():
    pre = Preorder.generated_by(3, [(0, 1), (1, 2)])
    assert pre.up_set(0) == 0b111


def test_preorder_space_roundtrip_exhaustive():
    # every topology on <= 3 points comes from exactly one preorder
    for space in spaces_up_to(3):
        pre = space.specialization()
        assert alexandrov_topology(pre) == space


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_preorder_roundtrip_random(data):
    n = data.draw(st.integers(1, 6))
    pairs = data.draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))
    pre = Preorder.generated_by(n, pairs)
    assert alexandrov_topology(pre).specialization() == pre


def test_opens_are_up_sets():
    rng = random.Random(5)
    for _ in range(30):
        space = random_poset_space(rng, 5)
        rows = [space.minimal_open(x) for x in range(space.size)]
        for u in space.opens:
            assert all(rows[x] & ~u == 0 for x in bits(u))


# -- stock spaces ----------------------------------------------------------------


def test_stock_spaces():
    assert FiniteSpace.empty().opens == (0,)
    assert FiniteSpace.point().opens == (0, 1)
    assert len(FiniteSpace.discrete(3).opens) == 8
    assert FiniteSpace.chaotic(3).opens == (0, 7)
    chain = FiniteSpace.chain(4)
    assert chain.length() == 4
    assert chain.hasse_edges() == ((0, 1), (1, 2), (2, 3))
    assert FiniteSpace.sierpinski().opens == (0, 1, 3)


def test_t0_and_sober_examples():
    assert FiniteSpace.sierpinski().is_t0()
    assert FiniteSpace.sierpinski().is_sober()
    assert not FiniteSpace.chaotic(2).is_t0()
    assert not FiniteSpace.chaotic(2).is_sober()


# -- sobrification ---------------------------------------------------------------


def test_sobrification_of_sober_space_is_identity_like():
    space = FiniteSpace.sierpinski()
    hat, iota = space.sobrification()
    assert hat.size == space.size
    assert iota.is_homeomorphism()


def test_sobrification_collapses_chaotic():
    hat, iota = FiniteSpace.chaotic(3).sobrification()
    assert hat.size == 1
    assert iota.assignment == (0, 0, 0)


def test_sobrification_open_lattice_preserved():
    for space in spaces_up_to(3):
        hat, iota = space.sobrification()
        assert hat.is_sober()
        pulled = {iota.preimage(u) for u in hat.opens}
        assert pulled == set(space.opens)
        assert len(hat.opens) == len(space.opens)


# -- subspaces and locally closed sets -------------------------------------------


def test_subspace_topology():
    rng = random.Random(11)
    for _ in range(25):
        space = random_poset_space(rng, 5)
        s = rng.randrange(1 << space.size)
        sub, pts = space.subspace(s)
        expected = {mask_of(i for i, p in enumerate(pts) if u >> p & 1)
                    for u in space.opens}
        assert set(sub.opens) == expected


def test_locally_closed_matches_brute_force():
    for space in spaces_up_to(3):
        carriers = {lc.carrier for lc in space.locally_closed_sets()}
        assert carriers == brute_locally_closed(space)
        for s in range(1 << space.size):
            assert space.is_locally_closed(s) == (s in carriers)


def test_locally_closed_witness_laws():
    space = FiniteSpace.chain(3)
    lc = space.locally_closed(0b010)
    u, v = lc.witness
    assert space.is_open(u) and space.is_open(v)
    assert v & ~u == 0 and u & ~v == lc.carrier
    with pytest.raises(NotLocallyClosed):
        space.locally_closed(0b101)


def test_all_witnesses_give_same_difference():
    rng = random.Random(23)
    for _ in range(20):
        space = random_poset_space(rng, 5)
        for lc in space.locally_closed_sets():
            for u, v in space.locally_closed_witnesses(lc.carrier):
                assert u & ~v == lc.carrier


# -- order diagrams --------------------------------------------------------------


def test_hasse_requires_t0():
    with pytest.raises(NotT0):
        FiniteSpace.chaotic(2).hasse_edges()
    with pytest.raises(NotT0):
        FiniteSpace.chaotic(2).length()
    with pytest.raises(NotT0):
        FiniteSpace.chaotic(2).canonical_filtration()


def test_space_from_edges_roundtrip():
    edge_sets = [((0, 1), (1, 2)), ((0, 1), (0, 2)), ((0, 1), (2, 1)),
                 ((0, 1), (0, 2), (1, 3), (2, 3))]
    for edges in edge_sets:
        n = 1 + max(max(e) for e in edges)
        space = space_from_edges(n, edges)
        assert space.hasse_edges() == tuple(sorted(edges))


def test_hasse_dot_output():
    dot = hasse_dot(FiniteSpace.chain(2))
    assert dot.startswith("digraph")
    assert '"0" -> "1";' in dot


def test_hasse_edges_match_cover_relation():
    rng = random.Random(37)
    for _ in range(25):
        space = random_poset_space(rng, 6)
        ups = [space.minimal_open(x) for x in range(space.size)]
        edges = set(space.hasse_edges())
        for a in range(space.size):
            for b in range(space.size):
                if a == b:
                    continue
                strictly = ups[a] & ~ups[b] == 0 and ups[a] != ups[b]
                cover = strictly and not any(
                    ups[a] & ~ups[z] == 0 and ups[z] & ~ups[b] == 0
                    for z in range(space.size)
                    if z != a and z != b and ups[z] != ups[a] != ups[b])
                assert ((a, b) in edges) == cover


# -- filtration ------------------------------------------------------------------


def test_sierpinski_strata():
    filt = FiniteSpace.sierpinski().canonical_filtration()
    assert filt.strata == (0b01, 0b10)
    assert filt.layers == (0, 0b01, 0b11)
    assert filt.length == 2


def test_strata_partition_and_levels():
    rng = random.Random(41)
    for _ in range(30):
        space = random_poset_space(rng, 6)
        filt = space.canonical_filtration()
        union = 0
        for stratum in filt.strata:
            assert union & stratum == 0
            union |= stratum
        assert union == space.full
        assert filt.length == space.length()
        for j, stratum in enumerate(filt.strata):
            for x in bits(stratum):
                assert filt.level_of(x) == j + 1


def test_level_of_set():
    filt = FiniteSpace.chain(3).canonical_filtration()
    assert filt.level_of_set(0) == 0
    assert filt.level_of_set(0b001) == 1
    assert filt.level_of_set(0b011) == 2
    assert filt.level_of_set(0b110) == 3


# -- continuous maps -------------------------------------------------------------


def test_continuity_validation():
    chain = FiniteSpace.chain(2)
    with pytest.raises(NotContinuous) as err:
        ContinuousMap(chain, chain, [1, 0])
    assert err.value.details["witness"] == 1


def test_map_algebra():
    chain = FiniteSpace.chain(3)
    ident = ContinuousMap.identity(chain)
    assert ident.is_homeomorphism()
    collapse = ContinuousMap(chain, FiniteSpace.point(), [0, 0, 0])
    assert (ident.then(collapse)).assignment == (0, 0, 0)
    assert collapse.preimage(1) == 0b111
    assert collapse.image_mask(0b010) == 1


def test_monotone_iff_continuous():
    rng = random.Random(57)
    for _ in range(20):
        dom = random_poset_space(rng, 4)
        cod = random_poset_space(rng, 4)
        for _ in range(10):
            values = [rng.randrange(4) for _ in range(4)]
            try:
                f = ContinuousMap(dom, cod, values)
                continuous = True
            except NotContinuous:
                continuous = False
            ups_d = [dom.minimal_open(x) for x in range(4)]
            ups_c = [cod.minimal_open(x) for x in range(4)]
            monotone = all(ups_c[values[y]] & ~ups_c[values[x]] == 0
                           for x in range(4) for y in bits(ups_d[x]))
            assert continuous == monotone


def test_connected_components():
    assert len(FiniteSpace.discrete(3).connected_components()) == 3
    assert FiniteSpace.chain(4).is_connected()
    two_chains = space_from_edges(4, [(0, 1), (2, 3)])
    assert two_chains.connected_components() == (0b0011, 0b1100)
