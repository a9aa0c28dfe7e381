"""The two-sided bar construction B(C, C, F) and its rank filtrations.

A point of bar level ``k`` is a point of ``C^(k+1) F(X)``, written as nested
C-points with depth 0 the outermost C.  Three variants share the same face
and degeneracy formulas and differ only in which points belong to a level:

* ``unfiltered``: all of ``C^(k+1) F(X)``, enumerated below a total
  filtration budget;
* ``unstable``: ``filt_m C^(k+1) F(X)``;
* ``stable``: ``C(filt_m C^k F(X))``; only the coordinates of the outermost
  C are filtered, so the outermost arity is unbounded and enumeration uses
  an arity cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .checks import CheckReport, SimplicialObjectView, check_simplicial_object
from .filtered import FilteredSSet
from .gamma import GammaExpr, SpInf, module_action
from .invariants import FPCommMonoid, group_completion
from .operad import BP, c_eta, c_map, c_mu
from .spaces import Base, CSpace, Filt, Space, components, iterate_c

VARIANTS = ("unstable", "stable", "unfiltered")


class BarError(ValueError):
    pass


def at_depth(p, depth: int, f: Callable):
    """Apply ``f`` to every sub-point sitting under ``depth`` layers of C."""
    if depth == 0:
        return f(p)
    return c_map(p, lambda x: at_depth(x, depth - 1, f))


class BarObject:
    """Levels, faces and degeneracies of a (filtered) bar construction.

    ``max_filt`` bounds enumeration of the unfiltered variant; ``cap`` bounds
    the outermost arity of the stable variant (default ``m + k + 1``).
    """

    def __init__(
        self,
        F: GammaExpr,
        x: FilteredSSet,
        m: int | None,
        variant: str = "stable",
        K: int = 2,
        max_filt: int | None = None,
        cap: int | None = None,
    ):
        if variant not in VARIANTS:
            raise BarError(f"unknown variant {variant!r}; use one of {VARIANTS}")
        if variant != "unfiltered" and m is None:
            raise BarError(f"the {variant} variant needs a filtration level")
        if variant == "unfiltered" and max_filt is None:
            raise BarError("the unfiltered variant needs an enumeration budget")
        self.F, self.x, self.m, self.variant, self.K = F, x, m, variant, K
        self.max_filt = max_filt
        self.cap = cap
        self.act = module_action(F)
        self.fx = F.build(Base(x))
        self._levels: dict = {}

    def outer_cap(self, k: int) -> int | None:
        if self.variant != "stable":
            return None
        return self.cap if self.cap is not None else self.m + k + 1

    def _inner(self, k: int) -> Space:
        return iterate_c(self.fx, k)

    def level(self, k: int) -> Space:
        """The space of level ``k`` used for enumeration."""
        if k not in self._levels:
            if self.variant == "stable":
                sp = CSpace(Filt(self._inner(k), self.m), self.outer_cap(k))
            elif self.variant == "unstable":
                sp = Filt(self._inner(k + 1), self.m)
            else:
                sp = self._inner(k + 1)
            self._levels[k] = sp
        return self._levels[k]

    def member(self, k: int) -> Space:
        """Level ``k`` without the enumeration cap, for membership tests."""
        if self.variant == "stable":
            return CSpace(Filt(self._inner(k), self.m))
        return self.level(k)

    def budget(self) -> int | None:
        if self.variant == "unfiltered":
            return self.max_filt
        if self.variant == "unstable":
            return self.m
        return None

    def points(self, k: int, d: int) -> list:
        return self.level(k).points(d, self.budget())

    def face(self, k: int, i: int, p, d: int):
        if not 0 <= i <= k or k == 0:
            raise BarError(f"face {i} at bar level {k}")
        if i < k:
            return at_depth(p, i, c_mu)
        return at_depth(p, k, self.act)

    def degeneracy(self, k: int, i: int, p, d: int):
        if not 0 <= i <= k:
            raise BarError(f"degeneracy {i} at bar level {k}")
        return at_depth(p, i + 1, lambda z: c_eta(z, d))

    def extra_degeneracy(self, k: int, p, d: int):
        """The outermost unit; absent for the stable variant."""
        if self.variant == "stable":
            raise BarError("the stable filtration has no extra degeneracy")
        return c_eta(p, d)

    def augmentation(self, p, d: int):
        """Level 0 to ``F(X)`` by the action."""
        return self.act(p)

    def internal_face(self, k: int, p, i: int, d: int):
        return self.level(k).face(p, i, d)

    def internal_degen(self, k: int, p, i: int, d: int):
        return self.level(k).degen(p, i, d)

    def describe(self, k: int, p) -> str:
        return self.level(k).describe(p)

    def bounds(self) -> dict:
        return {
            "F": str(self.F),
            "X": self.x.name,
            "m": self.m,
            "variant": self.variant,
            "K": self.K,
            "max_filt": self.max_filt,
            "outer_cap": {k: self.outer_cap(k) for k in range(self.K + 1)} if self.variant == "stable" else None,
        }


# -- identity suites -----------------------------------------------------------


def bar_view(b: BarObject) -> SimplicialObjectView:
    return SimplicialObjectView(
        name=f"bar ({b.variant}, m={b.m})",
        points=b.points,
        face=b.face,
        degen=b.degeneracy,
        contains=lambda k, p, d: b.member(k).contains(p, d),
        phi=lambda k, p: b.member(k).phi(p),
        internal_face=b.internal_face,
        internal_degen=b.internal_degen,
        describe=b.describe,
    )


def check_bar_identities(b: BarObject, max_dim: int = 1) -> CheckReport:
    """The five simplicial identity families, membership, filtration and internal simpliciality."""
    return check_simplicial_object(bar_view(b), b.K, max_dim)


def check_stable_closure(b: BarObject, max_dim: int = 1) -> CheckReport:
    """Every face and degeneracy of the stable levels stays in the stable subobject."""
    if b.variant != "stable":
        raise BarError("closure is a statement about the stable variant")
    rep = CheckReport(f"stable closure (m={b.m})")
    for k in range(b.K + 1):
        for d in range(max_dim + 1):
            for p in b.points(k, d):
                if k >= 1:
                    down = b.member(k - 1)
                    for i in range(k + 1):
                        q = b.face(k, i, p, d)
                        rep.check(down.contains(q, d), lambda: f"d{i} at level {k}: {b.describe(k, p)}")
                if k + 1 <= b.K:
                    up = b.member(k + 1)
                    for j in range(k + 1):
                        q = b.degeneracy(k, j, p, d)
                        rep.check(up.contains(q, d), lambda: f"s{j} at level {k}: {b.describe(k, p)}")
    return rep


def check_extra_degeneracy(b: BarObject, max_dim: int = 1) -> CheckReport:
    """Identities of the augmented object with the outermost unit as extra degeneracy.

    With ``e`` the augmentation and ``s`` the extra degeneracy:
    ``e d0 = e d1``, ``e s = id``, ``d0 s = id``, ``d_(i+1) s = s d_i``,
    ``d1 s = s e`` on level 0, and ``s_(j+1) s = s s_j``.
    """
    rep = CheckReport(f"extra degeneracy ({b.variant}, m={b.m})")
    for d in range(max_dim + 1):
        for z in b.fx.points(d, b.budget()):
            s = b.extra_degeneracy(-1, z, d)
            rep.check(b.augmentation(s, d) == z, lambda: f"e s != id at {z!r}")
        for k in range(b.K + 1):
            for p in b.points(k, d):
                s = b.extra_degeneracy(k, p, d)
                rep.check(b.member(k + 1).contains(s, d), lambda: f"extra degeneracy leaves level {k + 1}")
                if k + 1 <= b.K:
                    rep.check(b.face(k + 1, 0, s, d) == p, lambda: f"d0 s != id at level {k}")
                    if k == 0:
                        lhs = b.face(1, 1, s, d)
                        rhs = b.extra_degeneracy(-1, b.augmentation(p, d), d)
                        rep.check(lhs == rhs, lambda: "d1 s != s e at level 0")
                    else:
                        for i in range(k + 1):
                            lhs = b.face(k + 1, i + 1, s, d)
                            rhs = b.extra_degeneracy(k - 1, b.face(k, i, p, d), d)
                            rep.check(lhs == rhs, lambda: f"d{i + 1} s != s d{i} at level {k}")
                    if k + 2 <= b.K:
                        for j in range(k + 1):
                            lhs = b.degeneracy(k + 1, j + 1, s, d)
                            rhs = b.extra_degeneracy(k + 1, b.degeneracy(k, j, p, d), d)
                            rep.check(lhs == rhs, lambda: f"s{j + 1} s != s s{j} at level {k}")
                if k == 1:
                    rep.check(
                        b.augmentation(b.face(1, 0, p, d), d) == b.augmentation(b.face(1, 1, p, d), d),
                        lambda: "e d0 != e d1",
                    )
    return rep


# -- pi0 of realizations -------------------------------------------------------


@dataclass
class RealizationPi0:
    monoid: FPCommMonoid
    generator_points: list
    relation_sources: list = field(default_factory=list)

    def group_completion(self):
        return group_completion(self.monoid)


def _vector(class_of, base, n, labels) -> tuple[int, ...]:
    out = [0] * n
    for x in labels:
        c = class_of[x]
        if c != base:
            out[c - (c > base)] += 1
    return tuple(out)


def realize_pi0(b: BarObject) -> RealizationPi0:
    """pi0 of the realization of the stable bar object as a presented monoid.

    Level 0 is ``C(filt_m F X)``, whose components form the free monoid on
    the non-base components of ``filt_m F X``.  Level 1 is free on the
    components of ``filt_m C F X`` and both faces are monoid maps, so one
    relation per such component suffices.
    """
    if b.variant != "stable":
        raise BarError("realize_pi0 presents the stable variant; use unstable_pi0 for the other")
    if b.K < 1:
        raise BarError("pi0 of the realization needs bar levels 0 and 1")
    m = b.m
    gen_space = Filt(b.fx, m)
    g_of, g_classes, g_base = components(gen_space, m)
    n = len(g_classes) - 1
    names = [gen_space.describe(c[0]) for j, c in enumerate(g_classes) if j != g_base]
    rel_space = Filt(CSpace(b.fx), m)
    r_of, r_classes, r_base = components(rel_space, m)
    rels, sources = [], []
    for j, cls in enumerate(r_classes):
        if j == r_base:
            continue
        z = cls[0]
        lift = c_eta(z, 0)
        left = b.face(1, 0, lift, 0)
        right = b.face(1, 1, lift, 0)
        lv = _vector(g_of, g_base, n, left[0])
        rv = _vector(g_of, g_base, n, right[0])
        rels.append((lv, rv))
        sources.append(rel_space.describe(z))
    return RealizationPi0(FPCommMonoid(tuple(names), tuple(rels)), names, sources)


def unstable_pi0(b: BarObject) -> dict:
    """pi0 of the realization of the unstable bar object, as a pointed set.

    Components of level 0 glued along ``d0 z ~ d1 z`` for every vertex ``z`` of
    level 1; also returns where each class goes under the augmentation.
    """
    if b.variant == "stable":
        raise BarError("use realize_pi0 for the stable variant")
    lv0 = b.level(0)
    c0, classes0, base0 = components(lv0, b.budget())
    parent = list(range(len(classes0)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for z in b.points(1, 0):
        u, v = find(c0[b.face(1, 0, z, 0)]), find(c0[b.face(1, 1, z, 0)])
        if u != v:
            parent[max(u, v)] = min(u, v)
    roots = sorted({find(a) for a in range(len(classes0))})
    fx = Filt(b.fx, b.m) if b.variant == "unstable" else b.fx
    cf, classes_f, _ = components(fx, b.budget())
    image = {}
    for a in range(len(classes0)):
        image.setdefault(find(a), set()).add(cf[b.augmentation(classes0[a][0], 0)])
    return {
        "classes": len(roots),
        "base_classes": len(classes_f),
        "augmentation_bijective": len(roots) == len(classes_f)
        and all(len(v) == 1 for v in image.values())
        and len({next(iter(v)) for v in image.values()}) == len(roots),
        "representatives": [lv0.describe(classes0[r][0]) for r in roots],
    }


def compare_unstable_stable(F: GammaExpr, x: FilteredSSet, m: int, K: int = 2, max_dim: int = 1, cap: int | None = None) -> dict:
    """The levelwise inclusion ``filt_m C C^k F -> C filt_m C^k F`` and the pi0 shadows."""
    un = BarObject(F, x, m, "unstable", K)
    st = BarObject(F, x, m, "stable", K, cap=cap)
    rep = CheckReport("unstable into stable")
    for k in range(K + 1):
        target = st.member(k)
        for d in range(max_dim + 1):
            for p in un.points(k, d):
                rep.check(target.contains(p, d), lambda: f"level {k}: {un.describe(k, p)} is not stable")
                if k >= 1:
                    for i in range(k + 1):
                        rep.check(
                            un.face(k, i, p, d) == st.face(k, i, p, d),
                            lambda: f"d{i} square fails at level {k}",
                        )
                if k + 1 <= K:
                    for j in range(k + 1):
                        rep.check(
                            un.degeneracy(k, j, p, d) == st.degeneracy(k, j, p, d),
                            lambda: f"s{j} square fails at level {k}",
                        )
    pi_un = unstable_pi0(un)
    pi_st = realize_pi0(st)
    return {
        "bounds": st.bounds(),
        "levelwise_map": rep.as_dict(),
        "unstable_pi0": pi_un,
        "stable_pi0": pi_st.monoid.as_dict(),
        "stable_group_completion": str(pi_st.group_completion()),
    }


def default_bar(x: FilteredSSet, m: int, variant: str = "stable", K: int = 2, **kw) -> BarObject:
    return BarObject(SpInf(), x, m, variant, K, **kw)


__all__ = [
    "BarError",
    "BarObject",
    "RealizationPi0",
    "VARIANTS",
    "at_depth",
    "bar_view",
    "check_bar_identities",
    "check_extra_degeneracy",
    "check_stable_closure",
    "compare_unstable_stable",
    "default_bar",
    "realize_pi0",
    "unstable_pi0",
]
