"""Auxiliary simplicial objects comparing the stable bar construction on a
wedge with the product of the stable bar constructions on the summands.

Points of the product-side object at level ``k`` are pairs ``(n, x)`` with
``0 <= n <= k + 1`` the summand index.  For ``n <= k`` the point ``x`` lives in

    C filt_m C^(k-n) (C^n F X  x  C^n F Y)

so the pair of factors sits under ``k - n + 1`` layers of C; ``n = k + 1``
is the product of the two stable bar levels.  Points of the wedge-side
object are ``(n, x)`` with ``x`` in

    C filt_m C^(k-n+1) (C^(n-1) F X  v  C^(n-1) F Y)      (n >= 1)

and the stable bar level of ``F(X v Y)`` for ``n = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .bar import BarObject, at_depth, realize_pi0
from .checks import CheckReport, SimplicialObjectView, check_simplicial_object
from .filtered import FilteredSSet, wedge_filtered
from .gamma import GammaExpr, SpInf, base_point_map, module_action
from .invariants import FPCommMonoid, completion_map_is_iso
from .operad import BP, c_eta, c_map, c_mu
from .simplicial import wedge_collapses, wedge_inclusions
from .spaces import Base, CSpace, Filt, Prod, Space, Wedge, components, iterate_c

pair = Prod.pair


def _fst(z):
    return BP if z == BP else z[0]


def _snd(z):
    return BP if z == BP else z[1]


class LinearityError(ValueError):
    pass


class WedgeContext:
    """Bounds and building blocks for comparing ``X v Y`` with ``X x Y``.

    ``K`` is the largest level, ``max_dim`` the largest internal dimension
    and ``cap`` the arity cap on the outermost (unfiltered) C.
    """

    def __init__(
        self,
        x: FilteredSSet,
        y: FilteredSSet,
        m: int,
        K: int = 2,
        max_dim: int = 1,
        cap: int | None = 2,
        F: GammaExpr | None = None,
    ):
        self.F = F or SpInf()
        self.act = module_action(self.F)
        self.x, self.y, self.m, self.K, self.max_dim, self.cap = x, y, m, K, max_dim, cap
        self.w = wedge_filtered(x, y)
        inc_x, inc_y = wedge_inclusions(x.space, y.space, self.w.space)
        col_x, col_y = wedge_collapses(x.space, y.space, self.w.space)
        self.include = {1: base_point_map(inc_x), 2: base_point_map(inc_y)}
        self.collapse = {1: base_point_map(col_x), 2: base_point_map(col_y)}
        self.fx = self.F.build(Base(x))
        self.fy = self.F.build(Base(y))
        self.fw = self.F.build(Base(self.w))
        self._spaces: dict = {}

    def bounds(self) -> dict:
        return {
            "F": str(self.F),
            "X": self.x.name,
            "Y": self.y.name,
            "m": self.m,
            "K": self.K,
            "max_dim": self.max_dim,
            "outer_cap": self.cap,
        }

    # -- building blocks ------------------------------------------------------

    def _cached(self, key, make):
        if key not in self._spaces:
            self._spaces[key] = make()
        return self._spaces[key]

    def cf(self, side: int, n: int) -> Space:
        """``C^n F`` of the summand ``side`` (1 for X, 2 for Y, 0 for the wedge)."""
        base = {0: self.fw, 1: self.fx, 2: self.fy}[side]
        return self._cached(("cf", side, n), lambda: iterate_c(base, n))

    def stable_level(self, side: int, k: int, capped: bool = True) -> Space:
        return self._cached(
            ("st", side, k, capped),
            lambda: CSpace(Filt(self.cf(side, k), self.m), self.cap if capped else None),
        )

    def d_space(self, k: int, n: int, capped: bool = True) -> Space:
        if not 0 <= n <= k + 1:
            raise LinearityError(f"no summand {n} at level {k}")
        if n == k + 1:
            return self._cached(
                ("B", k, capped), lambda: Prod(self.stable_level(1, k, capped), self.stable_level(2, k, capped))
            )
        h = k - n

        def make():
            core = Prod(self.cf(1, n), self.cf(2, n))
            return CSpace(Filt(iterate_c(core, h), self.m), self.cap if capped else None)

        return self._cached(("D", k, n, capped), make)

    def e_space(self, k: int, n: int, capped: bool = True) -> Space:
        if not 0 <= n <= k + 1:
            raise LinearityError(f"no summand {n} at level {k}")
        if n == 0:
            return self.stable_level(0, k, capped)
        h = k - n + 1

        def make():
            core = Wedge(self.cf(1, n - 1), self.cf(2, n - 1))
            return CSpace(Filt(iterate_c(core, h), self.m), self.cap if capped else None)

        return self._cached(("E", k, n, capped), make)

    def a_space(self, k: int, capped: bool = True) -> Space:
        return self.stable_level(0, k, capped)

    def b_space(self, k: int, capped: bool = True) -> Space:
        return self.d_space(k, k + 1, capped)

    # -- structure on C^n F ----------------------------------------------------

    def mu_g(self, n: int) -> Callable:
        """The action ``C G -> G`` for ``G = C^n F``."""
        return c_mu if n >= 1 else self.act

    def bar_face(self, n: int, t: int, a):
        """Face ``t`` of ``C^n F`` seen as bar level ``n - 1``: merge depth ``t`` with the next."""
        if t < n - 1:
            return at_depth(a, t, c_mu)
        return at_depth(a, n - 1, self.act)

    def g_fmap(self, n: int, f: Callable) -> Callable:
        """``C^n F(f)`` for a map ``f`` of base points."""
        ff = self.F.fmap(f)
        return lambda a: at_depth(a, n, ff)

    # -- beta and gamma --------------------------------------------------------

    def beta(self, n: int, z):
        """``C(G X x G Y) -> G X x G Y`` for ``G = C^n F``."""
        if z == BP:
            return BP
        mu = self.mu_g(n)
        return pair(mu(c_map(z, _fst)), mu(c_map(z, _snd)))

    def b_action(self, w):
        """The C-module structure of the product of two stable bar levels."""
        if w == BP:
            return BP
        return pair(c_mu(c_map(w, _fst)), c_mu(c_map(w, _snd)))

    def gamma(self, n: int, z):
        """``C(G X v G Y) -> G(X v Y)`` for ``G = C^(n-1) F``; lands in a wedge of ``C^(n-2) F`` for ``n >= 2``."""
        if z == BP:
            return BP
        if n >= 2:
            return c_mu(c_map(z, lambda w: c_map(w[1], lambda u, s=w[0]: (s, u))))
        return self.act(c_map(z, lambda w: self.F.fmap(self.include[w[0]])(w[1])))

    # -- the product-side object -------------------------------------------------

    def d_face(self, k: int, j: int, xx, d: int):
        n, p = xx
        if not 0 <= j <= k or k == 0:
            raise LinearityError(f"face {j} at level {k}")
        if n == k + 1:
            a, b = _fst(p), _snd(p)
            return (k, pair(self.bar_face(k + 1, j, a), self.bar_face(k + 1, j, b)))
        h = k - n
        if j < h:
            return (n, at_depth(p, j, c_mu))
        if j == h:
            return (n, at_depth(p, h, lambda z: self.beta(n, z)))
        t = j - h - 1
        return (n - 1, at_depth(p, h + 1, lambda z: pair(self.bar_face(n, t, _fst(z)), self.bar_face(n, t, _snd(z)))))

    def d_degen(self, k: int, j: int, xx, d: int):
        n, p = xx
        if not 0 <= j <= k:
            raise LinearityError(f"degeneracy {j} at level {k}")
        eta = lambda z: c_eta(z, d)  # noqa: E731
        if n == k + 1:
            a, b = _fst(p), _snd(p)
            return (k + 2, pair(at_depth(a, j + 1, eta), at_depth(b, j + 1, eta)))
        h = k - n
        if j <= h:
            return (n, at_depth(p, j + 1, eta))
        r = j - h
        return (n + 1, at_depth(p, h + 1, lambda z: pair(at_depth(_fst(z), r, eta), at_depth(_snd(z), r, eta))))

    def d_borderline(self, k: int, xx, j: int) -> bool:
        n = xx[0]
        return n <= k and j == k - n

    # -- the wedge-side object ---------------------------------------------------

    def e_face(self, k: int, j: int, xx, d: int):
        n, p = xx
        if not 0 <= j <= k or k == 0:
            raise LinearityError(f"face {j} at level {k}")
        if n == 0:
            return (0, self.bar_face(k + 1, j, p))
        h = k - n + 1
        if j < h:
            return (n, at_depth(p, j, c_mu))
        if j == h:
            return (n - 1, at_depth(p, h, lambda z: self.gamma(n, z)))
        t = j - h - 1
        return (n - 1, at_depth(p, h + 1, lambda w: (w[0], self.bar_face(n - 1, t, w[1]))))

    def e_degen(self, k: int, j: int, xx, d: int):
        n, p = xx
        if not 0 <= j <= k:
            raise LinearityError(f"degeneracy {j} at level {k}")
        eta = lambda z: c_eta(z, d)  # noqa: E731
        if n == 0:
            return (0, at_depth(p, j + 1, eta))
        h = k - n + 1
        if j <= h - 1:
            return (n, at_depth(p, j + 1, eta))
        r = j - h
        return (n + 1, at_depth(p, h + 1, lambda w: (w[0], at_depth(w[1], r, eta))))

    def e_borderline(self, k: int, xx, j: int) -> bool:
        n = xx[0]
        return n >= 1 and j == k - n + 1

    # -- the maps ---------------------------------------------------------------

    def map_f(self, k: int, p):
        """Stable bar on ``X v Y`` to the product of stable bars, by the collapses."""
        fx, fy = self.F.fmap(self.collapse[1]), self.F.fmap(self.collapse[2])
        return pair(at_depth(p, k + 1, fx), at_depth(p, k + 1, fy))

    def map_i(self, k: int, p):
        return (0, p)

    def map_j(self, k: int, p):
        return (k + 1, p)

    def map_r(self, k: int, xx):
        n, p = xx
        if n == 0:
            return p
        h = k - n + 1
        return at_depth(p, h + 1, lambda w: self.g_fmap(n - 1, self.include[w[0]])(w[1]))

    def map_q(self, k: int, xx):
        n, p = xx
        if n == k + 1:
            return p
        h = k - n
        return pair(at_depth(p, h + 1, _fst), at_depth(p, h + 1, _snd))

    def map_p(self, k: int, xx):
        n, p = xx
        if n == 0:
            fx, fy = self.F.fmap(self.collapse[1]), self.F.fmap(self.collapse[2])
            return (0, at_depth(p, k + 1, lambda z: pair(fx(z), fy(z))))
        h = k - n + 1

        def split(z):
            return pair(
                c_map(z, lambda w: w[1] if w[0] == 1 else BP),
                c_map(z, lambda w: w[1] if w[0] == 2 else BP),
            )

        return (n, at_depth(p, h, split))

    def homotopy(self, k: int, i: int, xx):
        """``h_k^i``: the identity on summands ``n >= i``; otherwise move ``i - n``
        layers of C across the product."""
        if not 0 <= i <= k + 1:
            raise LinearityError(f"homotopy index {i} at level {k}")
        n, p = xx
        if i <= n:
            return xx
        s = i - n
        g = k - i + 1
        return (i, at_depth(p, g, lambda z: pair(at_depth(z, s, _fst), at_depth(z, s, _snd))))

    # -- enumeration ------------------------------------------------------------

    def d_points(self, k: int, d: int) -> list:
        return [(n, p) for n in range(k + 2) for p in self.d_space(k, n).points(d)]

    def e_points(self, k: int, d: int) -> list:
        return [(n, p) for n in range(k + 2) for p in self.e_space(k, n).points(d)]

    def d_view(self) -> SimplicialObjectView:
        return SimplicialObjectView(
            name="product side",
            points=self.d_points,
            face=self.d_face,
            degen=self.d_degen,
            contains=lambda k, xx, d: 0 <= xx[0] <= k + 1 and self.d_space(k, xx[0], False).contains(xx[1], d),
            phi=lambda k, xx: self.d_space(k, xx[0], False).phi(xx[1]),
            internal_face=lambda k, xx, t, d: (xx[0], self.d_space(k, xx[0]).face(xx[1], t, d)),
            internal_degen=lambda k, xx, t, d: (xx[0], self.d_space(k, xx[0]).degen(xx[1], t, d)),
            describe=lambda k, xx: f"[{xx[0]}] {self.d_space(k, xx[0]).describe(xx[1])}",
            borderline=self.d_borderline,
        )

    def e_view(self) -> SimplicialObjectView:
        return SimplicialObjectView(
            name="wedge side",
            points=self.e_points,
            face=self.e_face,
            degen=self.e_degen,
            contains=lambda k, xx, d: 0 <= xx[0] <= k + 1 and self.e_space(k, xx[0], False).contains(xx[1], d),
            phi=lambda k, xx: self.e_space(k, xx[0], False).phi(xx[1]),
            internal_face=lambda k, xx, t, d: (xx[0], self.e_space(k, xx[0]).face(xx[1], t, d)),
            internal_degen=lambda k, xx, t, d: (xx[0], self.e_space(k, xx[0]).degen(xx[1], t, d)),
            describe=lambda k, xx: f"[{xx[0]}] {self.e_space(k, xx[0]).describe(xx[1])}",
            borderline=self.e_borderline,
        )

    def a_face(self, k, j, p, d):
        return self.bar_face(k + 1, j, p)

    def a_degen(self, k, j, p, d):
        return at_depth(p, j + 1, lambda z: c_eta(z, d))

    def b_face(self, k, j, p, d):
        return self.d_face(k, j, (k + 1, p), d)[1]

    def b_degen(self, k, j, p, d):
        return self.d_degen(k, j, (k + 1, p), d)[1]


# -- verification suites -----------------------------------------------------------


def check_identities(ctx: WedgeContext) -> dict[str, CheckReport]:
    db = CheckReport("product side borderline identities")
    eb = CheckReport("wedge side borderline identities")
    dr = check_simplicial_object(ctx.d_view(), ctx.K, ctx.max_dim, db)
    er = check_simplicial_object(ctx.e_view(), ctx.K, ctx.max_dim, eb)
    return {"D": dr, "D-borderline": db, "E": er, "E-borderline": eb}


def _commutes(rep, ctx, k, x, d, g, src_face, src_degen, tgt_face, tgt_degen, K, name, desc):
    gx = g(k, x)
    if k >= 1:
        for j in range(k + 1):
            rep.check(
                g(k - 1, src_face(k, j, x, d)) == tgt_face(k, j, gx, d),
                lambda: f"{name} does not commute with d{j} at level {k}: {desc}",
            )
    if k + 1 <= K:
        for j in range(k + 1):
            rep.check(
                g(k + 1, src_degen(k, j, x, d)) == tgt_degen(k, j, gx, d),
                lambda: f"{name} does not commute with s{j} at level {k}: {desc}",
            )


def check_maps(ctx: WedgeContext) -> dict[str, CheckReport]:
    """Simpliciality of f, i, r, j, q, p; retractions; the strict square and triangle."""
    K, D = ctx.K, ctx.max_dim
    reps = {name: CheckReport(f"map {name} is simplicial") for name in "fijqrp"}
    retract = CheckReport("retractions r i = id, q j = id")
    square = CheckReport("f r = q p and f = q p i")
    for k in range(K + 1):
        for d in range(D + 1):
            for p in ctx.a_space(k).points(d):
                desc = ctx.a_space(k).describe(p)
                _commutes(reps["f"], ctx, k, p, d, ctx.map_f, ctx.a_face, ctx.a_degen, ctx.b_face, ctx.b_degen, K, "f", desc)
                _commutes(reps["i"], ctx, k, p, d, ctx.map_i, ctx.a_face, ctx.a_degen, ctx.e_face, ctx.e_degen, K, "i", desc)
                retract.check(ctx.map_r(k, ctx.map_i(k, p)) == p, lambda: f"r i != id at {desc}")
                square.check(
                    ctx.map_f(k, p) == ctx.map_q(k, ctx.map_p(k, ctx.map_i(k, p))),
                    lambda: f"f != q p i at level {k}: {desc}",
                )
            for p in ctx.b_space(k).points(d):
                desc = ctx.b_space(k).describe(p)
                _commutes(reps["j"], ctx, k, p, d, ctx.map_j, ctx.b_face, ctx.b_degen, ctx.d_face, ctx.d_degen, K, "j", desc)
                retract.check(ctx.map_q(k, ctx.map_j(k, p)) == p, lambda: f"q j != id at {desc}")
            for xx in ctx.d_points(k, d):
                desc = f"[{xx[0]}] {ctx.d_space(k, xx[0]).describe(xx[1])}"
                _commutes(reps["q"], ctx, k, xx, d, ctx.map_q, ctx.d_face, ctx.d_degen, ctx.b_face, ctx.b_degen, K, "q", desc)
            for xx in ctx.e_points(k, d):
                desc = f"[{xx[0]}] {ctx.e_space(k, xx[0]).describe(xx[1])}"
                _commutes(reps["r"], ctx, k, xx, d, ctx.map_r, ctx.e_face, ctx.e_degen, ctx.a_face, ctx.a_degen, K, "r", desc)
                _commutes(reps["p"], ctx, k, xx, d, ctx.map_p, ctx.e_face, ctx.e_degen, ctx.d_face, ctx.d_degen, K, "p", desc)
                px = ctx.map_p(k, xx)
                reps["p"].check(px[0] == xx[0], lambda: f"p changes the summand at {desc}")
                reps["p"].check(
                    ctx.d_space(k, px[0], False).contains(px[1], d), lambda: f"p leaves the product side at {desc}"
                )
                square.check(
                    ctx.map_f(k, ctx.map_r(k, xx)) == ctx.map_q(k, px),
                    lambda: f"f r != q p at level {k}: {desc}",
                )
    out = {f"map-{name}": r for name, r in reps.items()}
    out["retractions"] = retract
    out["square"] = square
    return out


def check_homotopy(ctx: WedgeContext) -> dict[str, CheckReport]:
    """Endpoints and both compatibility families of the homotopy on the product side."""
    K, D = ctx.K, ctx.max_dim
    ends = CheckReport("homotopy endpoints h^0 = id, h^(k+1) = j q")
    faces = CheckReport("homotopy compatible with faces")
    degs = CheckReport("homotopy compatible with degeneracies")
    h = ctx.homotopy
    for k in range(K + 1):
        for d in range(D + 1):
            for xx in ctx.d_points(k, d):
                desc = lambda: f"level {k}: [{xx[0]}] {ctx.d_space(k, xx[0]).describe(xx[1])}"  # noqa: E731
                ends.check(h(k, 0, xx) == xx, lambda: f"h^0 != id at {desc()}")
                ends.check(
                    h(k, k + 1, xx) == ctx.map_j(k, ctx.map_q(k, xx)), lambda: f"h^(k+1) != j q at {desc()}"
                )
                for i in range(k + 2):
                    hx = h(k, i, xx)
                    if not ctx.d_space(k, hx[0], False).contains(hx[1], d):
                        faces.fail(f"h^{i} leaves the product side at {desc()}")
                        continue
                    if k >= 1:
                        for j in range(k + 1):
                            lhs = ctx.d_face(k, j, hx, d)
                            if j <= k - i:
                                rhs = h(k - 1, i, ctx.d_face(k, j, xx, d))
                            else:
                                rhs = h(k - 1, i - 1, ctx.d_face(k, j, xx, d))
                            faces.check(lhs == rhs, lambda: f"d{j} h^{i} fails at {desc()}")
                    if k + 1 <= K:
                        for j in range(k + 1):
                            lhs = ctx.d_degen(k, j, hx, d)
                            if j <= k - i:
                                rhs = h(k + 1, i, ctx.d_degen(k, j, xx, d))
                            else:
                                rhs = h(k + 1, i + 1, ctx.d_degen(k, j, xx, d))
                            degs.check(lhs == rhs, lambda: f"s{j} h^{i} fails at {desc()}")
    return {"homotopy-endpoints": ends, "homotopy-faces": faces, "homotopy-degeneracies": degs}


def check_modules(ctx: WedgeContext) -> dict[str, CheckReport]:
    """Unit and associativity squares for beta and gamma, filtration, and the
    free-module principle ``g = mu C(g eta)`` for every map out of a free module."""
    m, D = ctx.m, ctx.max_dim
    mods = CheckReport("beta and gamma are module maps")
    free = CheckReport("maps out of free modules are determined on generators")
    for n in range(ctx.K + 2):
        prod = Prod(ctx.cf(1, n), ctx.cf(2, n))
        one = Filt(CSpace(prod), m)
        two = Filt(CSpace(CSpace(prod)), m)
        for d in range(D + 1):
            for z in one.points(d, m):
                b = ctx.beta(n, z)
                mods.check(prod.phi(b) <= one.phi(z), lambda: f"beta raises filtration at {one.describe(z)}")
                mods.check(prod.contains(b, d), lambda: f"beta leaves the product at {one.describe(z)}")
                free.check(
                    b == ctx.beta(n, c_map(z, lambda y: ctx.beta(n, c_eta(y, d)))),
                    lambda: f"beta is not determined on generators at {one.describe(z)}",
                )
            for y in prod.points(d, m):
                mods.check(ctx.beta(n, c_eta(y, d)) == y, lambda: f"beta eta != id at {prod.describe(y)}")
            for z in two.points(d, m):
                mods.check(
                    ctx.beta(n, c_map(z, lambda u: ctx.beta(n, u))) == ctx.beta(n, c_mu(z)),
                    lambda: f"beta C(beta) != beta mu at {two.describe(z)}",
                )
        if n == 0:
            continue
        wed = Wedge(ctx.cf(1, n - 1), ctx.cf(2, n - 1))
        target = ctx.cf(0, 0) if n == 1 else CSpace(Wedge(ctx.cf(1, n - 2), ctx.cf(2, n - 2)))
        one = Filt(CSpace(wed), m)
        two = Filt(CSpace(CSpace(wed)), m)
        mu_t = ctx.act if n == 1 else c_mu
        for d in range(D + 1):
            for z in one.points(d, m):
                g = ctx.gamma(n, z)
                mods.check(target.phi(g) <= one.phi(z), lambda: f"gamma raises filtration at {one.describe(z)}")
                mods.check(target.contains(g, d), lambda: f"gamma leaves its target at {one.describe(z)}")
                free.check(
                    g == mu_t(c_map(z, lambda y: ctx.gamma(n, c_eta(y, d)))),
                    lambda: f"gamma is not determined on generators at {one.describe(z)}",
                )
            for y in wed.nonbase(d, m):
                if n == 1:
                    want = ctx.F.fmap(ctx.include[y[0]])(y[1])
                else:
                    want = c_map(y[1], lambda u, s=y[0]: (s, u))
                mods.check(ctx.gamma(n, c_eta(y, d)) == want, lambda: f"gamma eta != inclusion at {wed.describe(y)}")
            for z in two.points(d, m):
                lhs = mu_t(c_map(z, lambda u: ctx.gamma(n, u)))
                mods.check(lhs == ctx.gamma(n, c_mu(z)), lambda: f"gamma C(gamma) != gamma mu at {two.describe(z)}")
    # the maps between the simplicial objects are module maps out of free modules
    for k in range(ctx.K + 1):
        for d in range(D + 1):
            for n in range(k + 2):
                src = ctx.e_space(k, n)
                for p in src.points(d):
                    got = ctx.map_p(k, (n, p))[1]
                    lifted = c_map(p, lambda y: ctx.map_p(k, (n, c_eta(y, d)))[1])
                    want = ctx.b_action(lifted) if n == k + 1 else c_mu(lifted)
                    free.check(got == want, lambda: f"p is not determined on generators at level {k}, summand {n}")
                    if n >= 1:
                        got = ctx.map_r(k, (n, p))
                        want = c_mu(c_map(p, lambda y: ctx.map_r(k, (n, c_eta(y, d)))))
                        free.check(got == want, lambda: f"r is not determined on generators at level {k}, summand {n}")
            for n in range(k + 1):
                src = ctx.d_space(k, n)
                for p in src.points(d):
                    got = ctx.map_q(k, (n, p))
                    want = ctx.b_action(c_map(p, lambda y: ctx.map_q(k, (n, c_eta(y, d)))))
                    free.check(got == want, lambda: f"q is not determined on generators at level {k}, summand {n}")
            for p in ctx.a_space(k).points(d):
                got = ctx.map_f(k, p)
                want = ctx.b_action(c_map(p, lambda y: ctx.map_f(k, c_eta(y, d))))
                free.check(got == want, lambda: f"f is not determined on generators at level {k}")
    return {"modules": mods, "free-module principle": free}


def _generator_vectors(space: Space, budget: int):
    class_of, classes, base = components(space, budget)
    n = len(classes) - 1

    def vec(labels):
        out = [0] * n
        for x in labels:
            c = class_of[x]
            if c != base:
                out[c - (c > base)] += 1
        return tuple(out)

    reps = [cls[0] for j, cls in enumerate(classes) if j != base]
    return reps, vec, n


def _labels_space(outer: Space) -> Space:
    """The filtered space of generators of ``C(filt_m Z)``."""
    return outer.inner


def pi0_comparison(ctx: WedgeContext) -> dict:
    """For each summand, pi0 of the wedge side against pi0 of the product side under ``p``.

    Both are free commutative monoids on the components of the filtered
    generator spaces, so ``p`` is an isomorphism on pi0 exactly when it sends
    generators bijectively to generators.
    """
    m = ctx.m
    out = {}
    for k in range(ctx.K + 1):
        for n in range(k + 2):
            src = ctx.e_space(k, n, False)
            gens, _, ns = _generator_vectors(_labels_space(src), m)
            if n == k + 1:
                bx = ctx.stable_level(1, k, False)
                by = ctx.stable_level(2, k, False)
                _, vx, nx = _generator_vectors(_labels_space(bx), m)
                _, vy, ny = _generator_vectors(_labels_space(by), m)

                def tvec(q, vx=vx, vy=vy, nx=nx, ny=ny):
                    a, b = _fst(q), _snd(q)
                    return (vx(a[0]) if a != BP else (0,) * nx) + (vy(b[0]) if b != BP else (0,) * ny)

                nt = nx + ny
            else:
                tgt = ctx.d_space(k, n, False)
                _, vt, nt = _generator_vectors(_labels_space(tgt), m)

                def tvec(q, vt=vt, nt=nt):
                    return vt(q[0]) if q != BP else (0,) * nt

            images = [tvec(ctx.map_p(k, (n, c_eta(g, 0)))[1]) for g in gens]
            perm = sorted(images) == sorted(tuple(int(r == c) for c in range(nt)) for r in range(nt)) and ns == nt
            gc = completion_map_is_iso(FPCommMonoid.free([str(i) for i in range(ns)]),
                                       FPCommMonoid.free([str(i) for i in range(nt)]), images)
            out[f"{k},{n}"] = {
                "source_generators": ns,
                "target_generators": nt,
                "monoid_iso": perm,
                "group_completion_iso": gc["iso"],
            }
    return out


@dataclass
class LinearityReport:
    bounds: dict
    suites: dict[str, CheckReport] = field(default_factory=dict)
    pi0: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.suites.values()) and all(v["monoid_iso"] for v in self.pi0.values())

    def as_dict(self) -> dict:
        return {
            "bounds": self.bounds,
            "note": "the commuting-square claims checked are f r = q p and f = q p i, pointwise",
            "ok": self.ok,
            "suites": {name: r.as_dict() for name, r in self.suites.items()},
            "pi0_levelwise": self.pi0,
        }


def verify_all(ctx: WedgeContext) -> LinearityReport:
    rep = LinearityReport(ctx.bounds())
    rep.suites.update(check_identities(ctx))
    rep.suites.update(check_maps(ctx))
    rep.suites.update(check_homotopy(ctx))
    rep.suites.update(check_modules(ctx))
    rep.pi0 = pi0_comparison(ctx)
    return rep


def map_f(ctx: WedgeContext) -> Callable:
    return ctx.map_f


def map_i(ctx: WedgeContext) -> Callable:
    return ctx.map_i


def map_r(ctx: WedgeContext) -> Callable:
    return ctx.map_r


def map_j(ctx: WedgeContext) -> Callable:
    return ctx.map_j


def map_q(ctx: WedgeContext) -> Callable:
    return ctx.map_q


def map_p(ctx: WedgeContext) -> Callable:
    return ctx.map_p


def realization_pi0_map(x: FilteredSSet, y: FilteredSSet, m: int, F: GammaExpr | None = None) -> dict:
    """The map on group-completed pi0 of stable bar realizations induced by
    the collapses ``X v Y -> X`` and ``X v Y -> Y``.

    Generators of each presented monoid are the non-base components of
    ``filt_m F``; a generator of the wedge side goes to the pair of its images.
    """
    F = F or SpInf()
    ctx = WedgeContext(x, y, m, K=1, F=F)
    sides = {0: ctx.w, 1: x, 2: y}
    mons, vecs = {}, {}
    for side, space in sides.items():
        b = BarObject(F, space, m, "stable", 1)
        mons[side] = realize_pi0(b).monoid
        reps, vec, n = _generator_vectors(Filt(ctx.cf(side, 0), m), m)
        if n != mons[side].n_generators:
            raise LinearityError(f"generator count mismatch on side {side}")
        vecs[side] = (reps, vec)
    fx, fy = F.fmap(ctx.collapse[1]), F.fmap(ctx.collapse[2])
    _, vx = vecs[1]
    _, vy = vecs[2]
    images = [vx([fx(g)]) + vy([fy(g)]) for g in vecs[0][0]]
    nx, ny = mons[1].n_generators, mons[2].n_generators
    product = FPCommMonoid(
        tuple(f"X:{g}" for g in mons[1].generators) + tuple(f"Y:{g}" for g in mons[2].generators),
        tuple((a + (0,) * ny, b + (0,) * ny) for a, b in mons[1].relations)
        + tuple(((0,) * nx + a, (0,) * nx + b) for a, b in mons[2].relations),
    )
    verdict = completion_map_is_iso(mons[0], product, images)
    return {
        "bounds": {"F": str(F), "X": x.name, "Y": y.name, "m": m},
        "wedge": mons[0].as_dict(),
        "product": product.as_dict(),
        "images": [list(v) for v in images],
        **verdict,
    }


def homotopy_h(ctx: WedgeContext, k: int, i: int) -> Callable:
    return lambda xx: ctx.homotopy(k, i, xx)


__all__ = [
    "LinearityError",
    "LinearityReport",
    "WedgeContext",
    "check_homotopy",
    "check_identities",
    "check_maps",
    "check_modules",
    "homotopy_h",
    "map_f",
    "map_i",
    "map_j",
    "map_p",
    "map_q",
    "map_r",
    "pi0_comparison",
    "realization_pi0_map",
    "verify_all",
]
