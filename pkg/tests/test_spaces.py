from __future__ import annotations

import pytest

from gammabar.filtered import trivially_filtered
from gammabar.operad import BP
from gammabar.simplicial import pi0, product, sphere0, sphere1, sphere2, wedge
from gammabar.spaces import (
    Base,
    CSpace,
    Filt,
    Prod,
    ResourceBoundError,
    SpSpace,
    Wedge,
    components,
    get_point_limit,
    iterate_c,
    materialize_space,
    set_point_limit,
)

S0 = trivially_filtered(sphere0(2))
S1 = trivially_filtered(sphere1(3))
S2 = trivially_filtered(sphere2(3))


def lazy_spaces():
    b0, b1 = Base(S0), Base(S1)
    return [
        (b1, None),
        (CSpace(b1), 2),
        (SpSpace(b1), 2),
        (SpSpace(Base(S0), 2), None),
        (Filt(CSpace(SpSpace(b0)), 2), None),
        (Prod(b1, b1), None),
        (Wedge(b1, b0), None),
        (iterate_c(b0, 2), 2),
    ]


@pytest.mark.parametrize("space, budget", lazy_spaces(), ids=lambda v: getattr(v, "name", str(v)))
def test_lazy_spaces_satisfy_the_simplicial_identities(space, budget):
    f, s = space.face, space.degen
    for d in range(3):
        pts = space.points(d, budget)
        assert BP in pts
        for x in pts:
            assert space.contains(x, d)
            if d >= 1:
                for i in range(d + 1):
                    assert f(x, i, d) in space.points(d - 1, budget)
            if d >= 2:
                for j in range(d + 1):
                    for i in range(j):
                        assert f(f(x, j, d), i, d - 1) == f(f(x, i, d), j - 1, d - 1)
            for j in range(d + 1):
                sx = s(x, j, d)
                assert f(sx, j, d + 1) == x and f(sx, j + 1, d + 1) == x
                for i in range(j):
                    assert f(sx, i, d + 1) == s(f(x, i, d), j - 1, d - 1)
                for i in range(j + 2, d + 2):
                    assert f(sx, i, d + 1) == s(f(x, i - 1, d), j, d - 1)
                for i in range(j + 1):
                    assert s(sx, i, d + 1) == s(s(x, i, d), j + 1, d + 1)


@pytest.mark.parametrize("a, b", [(S1, S1), (trivially_filtered(sphere0(3)), S1), (S1, S2)], ids=["S1xS1", "S0xS1", "S1xS2"])
def test_materialized_products_and_wedges_agree_with_direct_constructions(a, b):
    p = materialize_space(Prod(Base(a), Base(b)), 3)
    assert p.space.counts() == product(a.space, b.space).counts()
    w = materialize_space(Wedge(Base(a), Base(b)), 3)
    assert w.space.counts() == wedge(a.space, b.space).counts()


def test_product_filtration_is_additive():
    prod = Prod(SpSpace(Base(S0)), SpSpace(Base(S0)))
    for p in prod.nonbase(0, 4):
        assert prod.phi(p) == prod.a.phi(p[0]) + prod.b.phi(p[1])
    # budgets bound the total, not each side
    assert len(prod.points(0, 2)) == 6


def test_unbounded_sp_needs_a_budget():
    with pytest.raises(ResourceBoundError):
        SpSpace(Base(S0)).points(0)
    assert len(SpSpace(Base(S0), 3).points(0)) == 4
    assert SpSpace(Base(S0), 3).bounded() and not SpSpace(Base(S0)).bounded()


def test_point_limit():
    assert get_point_limit() is None
    set_point_limit(3)
    try:
        with pytest.raises(ResourceBoundError, match="exceed the limit 3") as info:
            SpSpace(Base(S0)).points(0, 5)
        assert info.value.where == "Sp(S0)"
        assert len(SpSpace(Base(S0)).points(0, 2)) == 3
    finally:
        set_point_limit(None)


def test_components_match_materialized_pi0():
    for space, budget in [(SpSpace(Wedge(Base(S0), Base(S0))), 2), (CSpace(Base(S0)), 2), (SpSpace(Base(S1)), 3)]:
        _, classes, base = components(space, budget)
        assert BP in classes[base]
        assert len(classes) == len(pi0(materialize_space(space, 1, budget).space))


def test_descriptions():
    sp = SpSpace(Base(S0))
    assert sp.describe(BP) == "*"
    assert sp.describe((((), "1"), ((), "1"))) == "{1,1}"
    assert Base(S1).describe(((0,), "e")) == "s0e"
    w = Wedge(Base(S0), sp)
    assert w.describe((2, (((), "1"),))) == "2:{1}"
