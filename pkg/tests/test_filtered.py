from __future__ import annotations

import pytest

from gammabar.filtered import (
    FilteredSSet,
    is_filtered_map,
    product_filtered,
    trivially_filtered,
    truncate,
    wedge_filtered,
    wedge_many_filtered,
)
from gammabar.monads import eval_C, eval_Sp
from gammabar.simplicial import (
    BASEPOINT,
    SimplexRef,
    SimplicialError,
    SSetMap,
    build_sset,
    identity_map,
    pi0,
    sphere0,
    sphere1,
)

S0 = trivially_filtered(sphere0(2))
S1 = trivially_filtered(sphere1(2))


def graded_circle():
    # vertex v in filtration 1, loop edge at v in filtration 2, edge * -> v in filtration 1
    s = build_sset(
        [[BASEPOINT, "v"], ["a", "loop"]],
        {"a": [((), "v"), ((), BASEPOINT)], "loop": [((), "v"), ((), "v")]},
        2,
        "G",
    )
    return FilteredSSet(s, {BASEPOINT: 0, "v": 1, "a": 1, "loop": 2}, "G")


def test_invariants_are_enforced():
    s = sphere1(1)
    with pytest.raises(SimplicialError):
        FilteredSSet(s, {BASEPOINT: 0, "e": 0})
    with pytest.raises(SimplicialError):
        FilteredSSet(s, {BASEPOINT: 0})
    g = graded_circle().space
    with pytest.raises(SimplicialError):
        FilteredSSet(g, {BASEPOINT: 0, "v": 3, "a": 1, "loop": 3})


def test_truncation():
    g = graded_circle()
    assert truncate(g, 0).space.counts() == (1, 0, 0)
    assert truncate(g, 1).space.counts() == (2, 1, 0)
    assert truncate(g, 5).space.counts() == g.space.counts()
    for m in range(4):
        for n in range(4):
            assert truncate(truncate(g, m), n).space.generators == truncate(g, min(m, n)).space.generators
    with pytest.raises(ValueError):
        truncate(g, -1)


def test_truncation_is_closed_under_faces():
    g = graded_circle()
    for m in range(3):
        t = truncate(g, m)
        kept = set(t.space.all_generators())
        for gen in kept:
            for f in t.space.faces.get(gen, ()):
                assert f.generator in kept


def test_product_filtration_is_additive():
    g = graded_circle()
    p = product_filtered(g, g)
    assert sorted(set(p.phi.values())) == [0, 1, 2, 3, 4]
    # a pair built from filtrations (1, 2) sits in filtration 3
    assert any(v == 3 for v in p.phi.values())
    assert p.phi[BASEPOINT] == 0


def test_filtration_one_of_product_is_the_wedge():
    # filt_1 (X x X) and filt_1 X v filt_1 X have the same simplices
    for x in (S0, S1, graded_circle()):
        p = truncate(product_filtered(x, x), 1)
        w = wedge_filtered(truncate(x, 1), truncate(x, 1))
        assert p.space.counts() == w.space.counts()


def test_wedge_filtration_is_inherited():
    w = wedge_filtered(graded_circle(), S0)
    assert w.phi["L:loop"] == 2 and w.phi["R:1"] == 1
    w3 = wedge_many_filtered([S0, S0, S0])
    assert w3.space.counts()[0] == 4 and set(w3.phi.values()) == {0, 1}


def test_filtered_maps():
    g = graded_circle()
    assert is_filtered_map(identity_map(g.space), g, g).ok
    t = truncate(g, 1)
    incl = SSetMap(t.space, g.space, {x: SimplexRef(t.space.dim_of(x), (), x) for x in t.space.all_generators()})
    assert is_filtered_map(incl, t, g).ok
    # raising the filtration is reported
    flat = trivially_filtered(g.space)
    rep = is_filtered_map(identity_map(g.space), flat, g)
    assert not rep.ok and any("loop" in v for v in rep.violations)


def test_unit_is_filtered():
    from gammabar.operad import c_eta
    from gammabar.spaces import Base, CSpace, materialize_space_ids, point_map_to_sset_map

    for x in (S1, graded_circle()):
        src, src_ids = materialize_space_ids(Base(x), 1)
        target = CSpace(Base(x))
        tgt, tgt_ids = materialize_space_ids(target, 1, 2)
        eta = point_map_to_sset_map(src, src_ids, target, tgt, tgt_ids, c_eta)
        assert is_filtered_map(eta, src, tgt).ok
        assert all(tgt.phi[eta.assignment[g].generator] == src.phi[g] for g in src.space.all_generators())


def test_free_constructions_on_small_spaces():
    from gammabar.simplicial import point

    pt = trivially_filtered(point(1))
    assert eval_C(pt, 3, 1).space.counts() == (1, 0)
    assert eval_Sp(pt, 3, 1).space.counts() == (1, 0)
    # C(S0) below filtration 2: configurations of one or two copies of the point
    assert len(pi0(eval_C(S0, 2, 1).space)) == 3
    assert eval_Sp(S0, 2, 0).space.counts() == (3,)


def test_sp_of_finite_set_is_n_to_the_m():
    from math import comb

    from gammabar.gamma import finite_set

    for m in range(1, 4):
        for M in range(4):
            # multisets of total size <= M on m letters, basepoint included
            assert eval_Sp(finite_set(m, 0), M, 0).space.counts() == (comb(M + m, m),)


def test_truncated_sp_of_s0_is_classical():
    for m in range(4):
        assert truncate(eval_Sp(S0, 5, 0), m).space.counts() == (m + 1,)
