from __future__ import annotations

from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammabar.filtered import trivially_filtered, wedge_filtered
from gammabar.operad import (
    BP,
    EWord,
    all_perms,
    c_eps,
    c_eta,
    c_face,
    c_is_canonical,
    c_map,
    c_mu,
    canon,
    coend_point,
    eword,
    operad_compose,
    perm_compose,
    perm_inverse,
    point_eword,
    rank,
    restrict_along_injection,
    sp_eta,
    sp_fold_c,
    sp_map,
    sp_mu,
)
from gammabar.simplicial import sphere0, sphere1
from gammabar.spaces import Base, CSpace, SpSpace

S0 = trivially_filtered(sphere0(2))
S1 = trivially_filtered(sphere1(2))


def words(n, d):
    return [EWord(n, ps) for ps in product(all_perms(n), repeat=d + 1)]


def injections(m, n):
    return list(permutations(range(n), m))


def seq(sigma):
    """Elements listed in the order that the rank tuple encodes."""
    return sorted(range(len(sigma)), key=lambda j: sigma[j])


def from_seq(order):
    out = [0] * len(order)
    for pos, j in enumerate(order):
        out[j] = pos
    return tuple(out)


def block_compose_oracle(outer, inners):
    # walk the outer order block by block; inside a block follow its own order
    offsets, acc = [], 0
    for w in inners:
        offsets.append(acc)
        acc += w.n
    perms = []
    for t, sigma in enumerate(outer.perms):
        order = [offsets[a] + x for a in seq(sigma) for x in seq(inners[a].perms[t])]
        perms.append(from_seq(order))
    return EWord(acc, tuple(perms))


# -- permutations and words ----------------------------------------------------


def test_permutation_helpers():
    for a in all_perms(3):
        assert perm_compose(a, perm_inverse(a)) == (0, 1, 2)
        assert from_seq(seq(a)) == a
    assert rank(["b", "a", "c"]) == (1, 0, 2)


def test_eword_faces_and_degeneracies():
    e = eword([(0, 1), (1, 0)])
    assert e.dim == 1
    assert e.face(0) == eword([(1, 0)])
    assert e.degeneracy(1) == eword([(0, 1), (1, 0), (1, 0)])
    with pytest.raises(ValueError):
        eword([(0, 0)])
    with pytest.raises(IndexError):
        eword([(0,)]).face(0)


def test_restriction_identity_and_arity_one():
    for e in words(3, 1):
        assert restrict_along_injection((0, 1, 2), e) == e
        for u in injections(1, 3):
            assert restrict_along_injection(u, e) == EWord(1, ((0,), (0,)))


def test_restriction_is_contravariantly_functorial():
    # (u o v)^* = v^* o u^* over all injections 1 -> 2 -> 3 and all of E(3) in dims 0, 1
    for d in (0, 1):
        for e in words(3, d):
            for u in injections(2, 3):
                for v in injections(1, 2):
                    uv = tuple(u[j] for j in v)
                    assert restrict_along_injection(uv, e) == restrict_along_injection(v, restrict_along_injection(u, e))


def test_restriction_rejects_non_injections():
    with pytest.raises(ValueError):
        restrict_along_injection((0, 0), words(2, 0)[0])


def test_operad_composition_matches_block_oracle():
    for d in (0, 1):
        for outer in words(2, d):
            for a in words(2, d):
                for b in words(1, d) + words(2, d):
                    assert operad_compose(outer, [a, b]) == block_compose_oracle(outer, [a, b])


def test_operad_units():
    unit = EWord(1, ((0,), (0,)))
    for e in words(3, 1):
        assert operad_compose(unit, [e]) == e
        assert operad_compose(e, [unit] * 3) == e


def test_operad_composition_is_associative():
    unit = lambda d: EWord(1, ((0,),) * (d + 1))  # noqa: E731
    for d in (0, 1):
        for x in words(2, d):
            for y in words(2, d):
                for z in words(2, d):
                    left = operad_compose(operad_compose(x, [y, unit(d)]), [z, unit(d), unit(d)])
                    right = operad_compose(x, [operad_compose(y, [z, unit(d)]), unit(d)])
                    assert left == right


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        operad_compose(words(1, 0)[0], [words(1, 1)[0]])


# -- canonical coend points ----------------------------------------------------

labels_st = st.lists(st.sampled_from(["a", "b", "c"]), min_size=1, max_size=4)


@settings(max_examples=200, deadline=None)
@given(labels_st, st.integers(0, 2), st.data())
def test_canonical_form_is_orbit_invariant_and_idempotent(labels, d, data):
    n = len(labels)
    e = EWord(n, tuple(data.draw(st.permutations(range(n))) for _ in range(d + 1)))
    e = EWord(n, tuple(tuple(p) for p in e.perms))
    p = coend_point(e, labels)
    assert c_is_canonical(p)
    assert canon(p[0], p[1]) == p
    g = tuple(data.draw(st.permutations(range(n))))
    moved_labels = [labels[g[j]] for j in range(n)]
    moved = EWord(n, tuple(tuple(s[g[j]] for j in range(n)) for s in e.perms))
    assert coend_point(moved, moved_labels) == p


@settings(max_examples=200, deadline=None)
@given(labels_st, st.integers(0, 1), st.data())
def test_basepoint_coordinates_are_absorbed(labels, d, data):
    n = len(labels)
    e = EWord(n + 1, tuple(tuple(data.draw(st.permutations(range(n + 1)))) for _ in range(d + 1)))
    slot = data.draw(st.integers(0, n))
    coords = labels[:slot] + [BP] + labels[slot:]
    keep = tuple(j for j in range(n + 1) if j != slot)
    assert coend_point(e, coords) == coend_point(restrict_along_injection(keep, e), labels)


def test_all_basepoint_is_basepoint():
    assert coend_point(EWord(2, ((0, 1),)), [BP, BP]) == BP


# -- monad structure -------------------------------------------------------------


def mu_oracle(p):
    """Flatten through the operad composition and re-canonicalize."""
    if p == BP:
        return BP
    d = len(p[1]) - 1
    inner = [point_eword(q, d) for q in p[0]]
    coords = [x for q in p[0] for x in q[0]]
    return coend_point(operad_compose(EWord(len(p[0]), p[1]), inner), coords)


def cc_points(x, budget, dims=(0, 1)):
    space = CSpace(CSpace(Base(x)))
    return space, [(d, p) for d in dims for p in space.points(d, budget)]


def test_multiplication_matches_operad_composition():
    _, pts = cc_points(wedge_filtered(S0, S0), 3)
    for _, p in pts:
        assert c_mu(p) == mu_oracle(p)


def test_unit_laws():
    space = CSpace(Base(S0))
    for d in (0, 1):
        for p in space.points(d, 2):
            assert c_mu(c_eta(p, d)) == p
            assert c_mu(c_map(p, lambda x, d=d: c_eta(x, d))) == p


def test_associativity_on_triple_composite():
    space = CSpace(CSpace(CSpace(Base(S0))))
    for d in (0, 1):
        for p in space.points(d, 2):
            assert c_mu(c_mu(p)) == c_mu(c_map(p, c_mu))


def test_multiplication_is_simplicial_and_keeps_filtration():
    space, pts = cc_points(S1, 2)
    flat = CSpace(Base(S1))
    for d, p in pts:
        assert flat.phi(c_mu(p)) == space.phi(p)
        if d:
            for i in range(d + 1):
                assert c_mu(space.face(p, i, d)) == flat.face(c_mu(p), i, d)
        for i in range(d + 1):
            assert c_mu(space.degen(p, i, d)) == flat.degen(c_mu(p), i, d)


def test_augmentation_is_a_map_of_monads():
    _, pts = cc_points(wedge_filtered(S0, S0), 2)
    for _, p in pts:
        assert c_eps(c_mu(p)) == sp_mu(sp_map(c_eps(p), c_eps))
    assert c_eps(c_eta((("w",), "g"), 0)) == sp_eta((("w",), "g"))


def test_augmentation_detects_basepoint_and_filtration():
    base = Base(wedge_filtered(S0, S0))
    c, sp = CSpace(base), SpSpace(base)
    for d in (0, 1):
        for p in c.points(d, 3):
            q = c_eps(p)
            assert (q == BP) == (p == BP)
            assert c.phi(p) == sp.phi(q)
            for m in range(4):
                assert (c.phi(p) <= m) == (sp.phi(q) <= m)


def test_sp_monad_laws():
    space = SpSpace(SpSpace(SpSpace(Base(S0))))
    for p in space.points(0, 3):
        assert sp_mu(sp_mu(p)) == sp_mu(sp_map(p, sp_mu))
    for p in SpSpace(Base(S0)).points(0, 3):
        assert sp_mu(sp_eta(p)) == p
        assert sp_mu(sp_map(p, sp_eta)) == p


def test_sp_action_of_c_forgets_orders():
    space = CSpace(SpSpace(Base(S0)))
    for p in space.points(1, 3):
        assert sp_fold_c(p) == sp_mu(c_eps(p))


def test_faces_recanonicalize():
    # d_0 of a 1-simplex reads the second order; the result must be canonical again
    p = (("a", "b"), ((0, 1), (1, 0)))
    q = c_face(p, 0, 1, lambda x, i, d: x)
    assert q == (("b", "a"), ((0, 1),))
    assert c_is_canonical(q)
