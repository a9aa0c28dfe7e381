from __future__ import annotations

import pytest

from gammabar.bar import (
    BarError,
    BarObject,
    check_bar_identities,
    check_extra_degeneracy,
    check_stable_closure,
    compare_unstable_stable,
    default_bar,
    realize_pi0,
    unstable_pi0,
)
from gammabar.filtered import trivially_filtered, wedge_filtered
from gammabar.gamma import CFun, SpInf
from gammabar.operad import BP
from gammabar.simplicial import sphere0, sphere1
from gammabar.snf import AbGroup, same_lattice
from gammabar.spaces import Filt, components

S0 = trivially_filtered(sphere0(2))
S0vS0 = wedge_filtered(S0, S0)
S1 = trivially_filtered(sphere1(2))


def brute_pi0_pairs(b):
    """Level-0 vertices glued along level-0 edges and along d0 z ~ d1 z for level-1 vertices."""
    verts = b.points(0, 0)
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    def glue(u, v):
        u, v = find(u), find(v)
        if u != v:
            parent[max(u, v)] = min(u, v)

    for e in b.points(0, 1):
        glue(b.internal_face(0, e, 0, 1), b.internal_face(0, e, 1, 1))
    for z in b.points(1, 0):
        u, v = b.face(1, 0, z, 0), b.face(1, 1, z, 0)
        if u in parent and v in parent:
            glue(u, v)
    return verts, find


def label_vector(b, p):
    g_of, classes, base = components(Filt(b.fx, b.m), b.m)
    out = [0] * (len(classes) - 1)
    for x in () if p == BP else p[0]:
        c = g_of[x]
        if c != base:
            out[c - (c > base)] += 1
    return out


@pytest.mark.parametrize("variant", ["stable", "unstable", "unfiltered"])
@pytest.mark.parametrize("m", [0, 1, 2])
def test_bar_identities_for_every_variant(variant, m):
    b = default_bar(S0, m, variant, K=2, cap=2, max_filt=m)
    rep = check_bar_identities(b, 1)
    assert rep.ok, rep.failures[:3]
    assert rep.checked > 0


def test_bar_identities_with_c_acting_on_itself():
    b = BarObject(CFun(), S0, 1, "stable", K=2, cap=2)
    assert check_bar_identities(b, 1).ok


def test_stable_closure():
    for x in (S0, S0vS0, S1):
        rep = check_stable_closure(default_bar(x, 2, K=2, cap=2))
        assert rep.ok and rep.checked > 0


def test_extra_degeneracy_exists_only_without_the_stable_filter():
    for variant in ("unstable", "unfiltered"):
        rep = check_extra_degeneracy(default_bar(S0, 2, variant, K=2, max_filt=2), 1)
        assert rep.ok, rep.failures[:3]
    with pytest.raises(BarError):
        default_bar(S0, 2).extra_degeneracy(0, BP, 0)


def test_construction_errors():
    with pytest.raises(BarError):
        BarObject(SpInf(), S0, 1, "other")
    with pytest.raises(BarError):
        BarObject(SpInf(), S0, None, "stable")
    with pytest.raises(BarError):
        BarObject(SpInf(), S0, None, "unfiltered")
    b = default_bar(S0, 1)
    with pytest.raises(BarError):
        b.face(0, 0, BP, 0)
    with pytest.raises(BarError):
        b.degeneracy(1, 2, BP, 0)
    with pytest.raises(BarError):
        check_stable_closure(default_bar(S0, 1, "unstable"))


def test_default_outer_cap():
    b = default_bar(S0, 2, K=3)
    assert [b.outer_cap(k) for k in range(4)] == [3, 4, 5, 6]
    assert default_bar(S0, 2, "unstable").outer_cap(0) is None


@pytest.mark.parametrize(
    "x, m, expected",
    [(S0, 1, AbGroup(1)), (S0, 2, AbGroup(1)), (S0vS0, 1, AbGroup(2)), (S0vS0, 2, AbGroup(2)), (S1, 2, AbGroup())],
    ids=["S0-1", "S0-2", "S0vS0-1", "S0vS0-2", "S1-2"],
)
def test_realization_pi0(x, m, expected):
    b = default_bar(x, m, K=1, cap=2)
    pi = realize_pi0(b)
    assert pi.group_completion() == expected
    rels = [[a - c for a, c in zip(lv, rv)] for lv, rv in pi.monoid.relations]
    n = pi.monoid.n_generators
    verts, find = brute_pi0_pairs(b)
    for u in verts:
        for v in verts:
            if find(u) == find(v):
                diff = [a - c for a, c in zip(label_vector(b, u), label_vector(b, v))]
                assert same_lattice(rels, rels + [diff], n)


def test_realization_generators_are_components_below_the_filter():
    pi = realize_pi0(default_bar(S0vS0, 2, K=1))
    assert sorted(pi.generator_points) == sorted(["{L:1}", "{R:1}", "{L:1,L:1}", "{L:1,R:1}", "{R:1,R:1}"])


def test_realization_needs_the_stable_variant():
    with pytest.raises(BarError):
        realize_pi0(default_bar(S0, 1, "unstable"))
    with pytest.raises(BarError):
        realize_pi0(default_bar(S0, 1, K=0))
    with pytest.raises(BarError):
        unstable_pi0(default_bar(S0, 1))


def test_unstable_realization_recovers_the_filtered_components():
    for m in (1, 2):
        pi = unstable_pi0(default_bar(S0, m, "unstable", K=1))
        assert pi["classes"] == pi["base_classes"] == m + 1
        assert pi["augmentation_bijective"]


def test_unstable_maps_into_stable():
    out = compare_unstable_stable(SpInf(), S0, 2, K=2, cap=2)
    assert out["levelwise_map"]["ok"]
    assert out["unstable_pi0"]["classes"] == 3
    assert out["stable_group_completion"] == "Z"
