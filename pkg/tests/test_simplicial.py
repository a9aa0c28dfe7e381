from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammabar.simplicial import (
    BASEPOINT,
    SimplexRef,
    SimplicialError,
    build_sset,
    compose_words,
    degenerate,
    homology,
    identity_map,
    named,
    pi0,
    product,
    push_face,
    quotient,
    sphere0,
    sphere1,
    sphere2,
    swap_map,
    wedge,
    wedge_collapses,
    wedge_inclusions,
    wedge_many,
)
from gammabar.snf import AbGroup

Z = AbGroup(1)
ZERO = AbGroup()


def rp2(dim=3):
    # one vertex, one edge, one triangle with boundary e - * + e
    return build_sset(
        [[BASEPOINT], ["e"], ["t"]],
        {"e": [((), BASEPOINT)] * 2, "t": [((), "e"), ((0,), BASEPOINT), ((), "e")]},
        dim,
        "RP2",
    )


def all_simplices(s, d):
    return list(s.simplices(d))


def brute_product_counts(a, b):
    """Nondegenerate pairs: not simultaneously in the image of one s_i."""
    counts = []
    for d in range(a.truncation_dim + 1):
        n = 0
        for x in all_simplices(a, d):
            for y in all_simplices(b, d):
                if x.generator == BASEPOINT and y.generator == BASEPOINT and d:
                    continue
                degen = any(
                    a.degeneracy(a.face(x, i), i) == x and b.degeneracy(b.face(y, i), i) == y for i in range(d)
                )
                n += not degen
        counts.append(n)
    return tuple(counts)


# -- identities ----------------------------------------------------------------


def check_identities(space, x, d):
    D = space.truncation_dim
    f, s = space.face, space.degeneracy
    if d >= 2:
        for j in range(d + 1):
            for i in range(j):
                assert f(f(x, j), i) == f(f(x, i), j - 1)
    if d + 1 <= D:
        for j in range(d + 1):
            sx = s(x, j)
            assert f(sx, j) == x and f(sx, j + 1) == x
            for i in range(d + 2):
                if i < j:
                    assert f(sx, i) == s(f(x, i), j - 1)
                elif i > j + 1:
                    assert f(sx, i) == s(f(x, i - 1), j)
    if d + 2 <= D:
        for j in range(d + 1):
            for i in range(j + 1):
                assert s(s(x, j), i) == s(s(x, i), j + 1)


MODELS = [sphere0(3), sphere1(3), sphere2(3), rp2(3), product(sphere1(3), sphere1(3)), wedge(sphere1(3), sphere2(3))]


@pytest.mark.parametrize("space", MODELS, ids=lambda s: s.name)
def test_simplicial_identities_on_every_simplex(space):
    for d in range(space.truncation_dim + 1):
        for x in space.simplices(d):
            check_identities(space, x, d)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(MODELS), st.data())
def test_faces_of_degeneracies_in_normal_form(space, data):
    d = data.draw(st.integers(1, space.truncation_dim - 1))
    x = data.draw(st.sampled_from(list(space.simplices(d))))
    j = data.draw(st.integers(0, d))
    y = space.degeneracy(x, j)
    # results stay in normal form: strictly decreasing words
    for i in range(d + 2):
        w = space.face(y, i).word
        assert all(a > b for a, b in zip(w, w[1:]))


def test_word_rewriting():
    # s_0 s_0 = s_1 s_0
    assert degenerate(0, (0,)) == (1, 0)
    # d_0 s_0 and d_1 s_0 cancel
    assert push_face(0, (0,)) == ((), None)
    assert push_face(1, (0,)) == ((), None)
    # d_0 s_1 = s_0 d_0
    assert push_face(0, (1,)) == ((0,), 0)
    # d_3 s_1 = s_1 d_2
    assert push_face(3, (1,)) == ((1,), 2)
    assert compose_words((1,), (0,)) == (1, 0)


def test_sphere_counts():
    assert sphere0(2).counts() == (2, 0, 0)
    assert sphere1(2).counts() == (1, 1, 0)
    assert sphere2(2).counts() == (1, 0, 1)


def test_bad_models_are_rejected():
    with pytest.raises(SimplicialError):
        build_sset([["a"]], {}, 1)
    with pytest.raises(SimplicialError):
        build_sset([[BASEPOINT], ["e"]], {"e": [((), BASEPOINT)]}, 1)
    with pytest.raises(SimplicialError):
        sphere1(1).face(sphere1(1).ref("e"), 2)
    with pytest.raises(SimplicialError):
        named("S7")


def test_product_counts_match_pair_enumeration():
    for a, b in [(sphere1(3), sphere1(3)), (sphere0(2), sphere1(2)), (sphere2(3), sphere1(3))]:
        assert product(a, b).counts() == brute_product_counts(a, b)


def test_s2_times_s2_counts_frozen():
    s = sphere2(4)
    counts = product(s, s).counts()
    assert counts == brute_product_counts(s, s)
    assert counts == (1, 0, 3, 6, 6)


def test_sp2_of_s2_counts_and_homology():
    prod, swap = swap_map(sphere2(5))
    sp2 = quotient(prod, [swap])
    assert sp2.counts()[:5] == (1, 0, 2, 3, 3)
    assert homology(sp2, 4) == [ZERO, ZERO, Z, ZERO, Z]


def test_sphere_homology():
    assert homology(sphere0(2), 1) == [Z, ZERO]
    assert homology(sphere1(3), 2) == [ZERO, Z, ZERO]
    assert homology(sphere2(3), 2) == [ZERO, ZERO, Z]
    assert homology(sphere2(3), 2, reduced=False) == [Z, ZERO, Z]


def test_torsion_is_detected():
    assert homology(rp2(3), 2) == [ZERO, AbGroup(0, (2,)), ZERO]


def test_product_homology_is_kunneth():
    assert homology(product(sphere1(3), sphere1(3)), 2) == [ZERO, AbGroup(2), Z]
    s = sphere2(5)
    assert homology(product(s, s), 4) == [ZERO, ZERO, AbGroup(2), ZERO, Z]


def test_symmetric_square_of_circle_is_a_circle():
    prod, swap = swap_map(sphere1(3))
    assert homology(quotient(prod, [swap]), 2) == [ZERO, Z, ZERO]


def test_wedge_and_its_maps():
    a, b = sphere1(2), sphere2(2)
    w = wedge(a, b)
    assert w.counts() == (1, 1, 1)
    assert homology(w, 1) == [ZERO, Z]
    ia, ib = wedge_inclusions(a, b, w)
    ca, cb = wedge_collapses(a, b, w)
    for f in (ia, ib, ca, cb):
        assert f.check() == []
    assert ia.then(ca) == identity_map(a)
    assert ib.then(cb) == identity_map(b)
    assert ia.then(cb)(a.ref("e")).generator == BASEPOINT


def test_many_fold_wedge():
    w = wedge_many([sphere0(1)] * 3)
    assert w.counts() == (4, 0)
    assert len(pi0(w)) == 4
    assert set(w.gens(0)) == {BASEPOINT, "1:1", "2:1", "3:1"}


def test_pi0():
    assert len(pi0(sphere1(2))) == 1
    ps = pi0(wedge(sphere0(1), sphere0(1)))
    assert len(ps) == 3
    assert BASEPOINT in ps.classes[ps.base]


def test_simplex_refs_are_checked():
    s = sphere1(3)
    with pytest.raises(SimplicialError):
        s.ref("e", (2,))
    x = s.ref("e", (1,))
    assert isinstance(x, SimplexRef) and x.dim == 2 and x.is_degenerate
