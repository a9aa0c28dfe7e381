from __future__ import annotations

from functools import reduce
from itertools import combinations
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammabar.filtered import trivially_filtered
from gammabar.gamma import SpInf, filtered_wedge_inclusion
from gammabar.invariants import (
    FPCommMonoid,
    completion_map_is_iso,
    cone_homology,
    connectivity_compare,
    group_completion,
)
from gammabar.operad import c_eta
from gammabar.simplicial import homology, identity_map, product, sphere1, sphere2, wedge, wedge_collapses, wedge_inclusions
from gammabar.snf import AbGroup
from gammabar.spaces import Base, CSpace, Filt, SpSpace, materialize_space_ids, point_map_to_sset_map

Z = AbGroup(1)


def det(rows):
    if not rows:
        return 1
    return sum((-1) ** c * rows[0][c] * det([r[:c] + r[c + 1 :] for r in rows[1:]]) for c in range(len(rows)))


def completion_oracle(g, relations):
    """(free rank, torsion order) of Z^g / <a - b> from ranks and maximal minors."""
    diffs = [[a[i] - b[i] for i in range(g)] for a, b in relations if a != b]
    if not diffs:
        return g, 1
    r = int(np.linalg.matrix_rank(np.array(diffs, dtype=float)))
    minors = [
        abs(det([[diffs[c][i] for c in cols] for i in rows]))
        for rows in combinations(range(g), r)
        for cols in combinations(range(len(diffs)), r)
    ]
    return g - r, reduce(gcd, minors)


def torsion_order(group):
    return reduce(lambda a, b: a * b, group.torsion, 1)


vec = lambda g: st.lists(st.integers(0, 3), min_size=g, max_size=g).map(tuple)  # noqa: E731


@st.composite
def monoids(draw):
    g = draw(st.integers(1, 3))
    rels = draw(st.lists(st.tuples(vec(g), vec(g)), max_size=3))
    return FPCommMonoid(tuple(f"x{i}" for i in range(g)), tuple(rels))


# -- presentations ------------------------------------------------------------


def test_single_relation_doubling():
    m = FPCommMonoid(("a", "b"), (((0, 1), (2, 0)),))
    assert group_completion(m) == Z


def test_free_monoid_completes_to_a_lattice():
    for g in range(4):
        assert group_completion(FPCommMonoid.free([str(i) for i in range(g)])) == AbGroup(g)


def test_torsion_from_relations():
    m = FPCommMonoid(("a",), (((3,), (0,)),))
    assert group_completion(m) == AbGroup(0, (3,))


def test_bad_relations_are_rejected():
    with pytest.raises(ValueError):
        FPCommMonoid(("a",), (((1, 0), (0,)),))
    with pytest.raises(ValueError):
        FPCommMonoid(("a",), (((-1,), (0,)),))


@settings(max_examples=150, deadline=None)
@given(monoids())
def test_completion_matches_minor_oracle(m):
    got = group_completion(m)
    rank, tors = completion_oracle(m.n_generators, m.relations)
    assert got.rank == rank
    assert torsion_order(got) == tors


@settings(max_examples=150, deadline=None)
@given(monoids(), st.data())
def test_completion_is_invariant_under_tietze_moves(m, data):
    g = m.n_generators
    base = group_completion(m)
    # add a generator together with a relation expressing it in the old ones
    word = data.draw(vec(g))
    extended = FPCommMonoid(
        m.generators + ("new",),
        tuple((a + (0,), b + (0,)) for a, b in m.relations) + ((tuple([0] * g) + (1,), word + (0,)),),
    )
    assert group_completion(extended) == base
    # add a consequence of existing relations
    if m.relations:
        (a1, b1), (a2, b2) = m.relations[0], m.relations[-1]
        summed = (tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2)))
        assert group_completion(FPCommMonoid(m.generators, m.relations + (summed,))) == base
    # permute the generators
    perm = data.draw(st.permutations(range(g)))
    shuffle = lambda v: tuple(v[p] for p in perm)  # noqa: E731
    moved = FPCommMonoid(tuple(m.generators[p] for p in perm), tuple((shuffle(a), shuffle(b)) for a, b in m.relations))
    assert group_completion(moved) == base


def test_completion_map_verdicts():
    free2, free1 = FPCommMonoid.free("ab"), FPCommMonoid.free("a")
    assert completion_map_is_iso(free2, free2, [(0, 1), (1, 0)])["iso"]
    fold = completion_map_is_iso(free2, free1, [(1,), (1,)])
    assert fold["surjective"] and not fold["iso"]
    doubling = completion_map_is_iso(free1, free1, [(2,)])
    assert not doubling["surjective"] and doubling["same_invariants"]
    # a relation in the target can make a map onto
    quotient = FPCommMonoid(("a", "b"), (((0, 1), (1, 0)),))
    assert completion_map_is_iso(free1, quotient, [(1, 0)])["iso"]


# -- homology of maps -------------------------------------------------------


def test_identity_is_an_iso_in_every_degree():
    s = sphere2(4)
    rep = connectivity_compare(identity_map(s), 3, input_connectivity=1)
    assert [v.verdict for v in rep.degrees] == ["iso"] * 4
    assert rep.connectivity == 3 and rep.exhausted
    assert all(g.is_zero for g in cone_homology(identity_map(s), 3))


def test_wedge_inclusion_and_collapse():
    a, b = sphere1(3), sphere2(3)
    w = wedge(a, b)
    inc, _ = wedge_inclusions(a, b, w)
    col, _ = wedge_collapses(a, b, w)
    rep = connectivity_compare(inc, 2)
    assert [v.verdict for v in rep.degrees] == ["iso", "iso", "fails"]
    assert rep.connectivity == 1
    # the collapse kills the sphere in degree 2 but is still onto
    rep = connectivity_compare(col, 2)
    assert [(v.surjective, v.injective) for v in rep.degrees] == [(True, True), (True, True), (True, False)]
    assert cone_homology(col, 2) == [AbGroup(), AbGroup(), AbGroup()]
    assert cone_homology(inc, 2)[2] == Z


def test_witnessed_constant():
    rep = connectivity_compare(identity_map(sphere1(3)), 2, input_connectivity=0)
    assert rep.witnessed_c == 2 * 1 - 2


def test_truncation_is_checked():
    from gammabar.simplicial import SimplicialError

    with pytest.raises(SimplicialError):
        connectivity_compare(identity_map(sphere1(2)), 2)


def test_unit_into_c_is_an_iso_on_components():
    x = trivially_filtered(sphere1(3))
    source = Filt(SpSpace(Base(x)), 2)
    target = Filt(CSpace(SpSpace(Base(x))), 2)
    src, src_ids = materialize_space_ids(source, 1, 2)
    tgt, tgt_ids = materialize_space_ids(target, 1, 2)
    eta = point_map_to_sset_map(src, src_ids, target, tgt, tgt_ids, c_eta)
    assert eta.check() == []
    rep = connectivity_compare(eta, 0)
    assert rep.degrees[0].verdict == "iso"


def test_filtered_wedge_into_product_of_symmetric_powers():
    x = trivially_filtered(sphere1(4))
    inc = filtered_wedge_inclusion(SpInf(), x, 2, 4)
    assert inc.check() == []
    # Sp2 S1 is a circle, so the target deforms onto the torus on the two axes
    assert homology(inc.target, 3) == homology(product(sphere1(4), sphere1(4)), 3)
    assert homology(inc.source, 3) == homology(wedge(sphere1(4), sphere1(4)), 3)
    rep = connectivity_compare(inc, 3, input_connectivity=0)
    assert [v.verdict for v in rep.degrees] == ["iso", "iso", "fails", "iso"]
    assert rep.connectivity == 1 and rep.witnessed_c == 1
