"""Finite pointed sets, functor expressions, and wedge-versus-product comparisons.

A functor expression is a composite of the atoms ``Id``, ``Sp`` (infinite
symmetric product), ``Sp(m)`` (at most ``m`` points), ``C`` (the free
algebra monad) and ``filt(m)`` (rank filtration cut).  Expressions are
written outermost first and composed with ``.``, so ``C . filt(2) . Sp``
means ``C(filt_2(Sp(X)))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable, Sequence

from .checks import CheckReport
from .filtered import FilteredSSet, trivially_filtered, wedge_filtered, wedge_many_filtered
from .invariants import FPCommMonoid, completion_map_is_iso, connectivity_compare
from .operad import (
    BP,
    EWord,
    c_eps,
    c_eta,
    c_map,
    c_mu,
    coend_point,
    sp_eta,
    sp_fold_c,
    sp_make,
    sp_map,
)
from .simplicial import (
    BASEPOINT,
    SSetMap,
    compose_words,
    pointed_set,
    wedge_collapses,
    wedge_many_maps,
)
from .spaces import (
    Base,
    CSpace,
    Filt,
    Prod,
    ResourceBoundError,
    Space,
    SpSpace,
    Wedge,
    components,
    materialize_space_ids,
    point_map_to_sset_map,
)


class ExpressionError(ValueError):
    """A functor expression or space description failed to parse."""


# -- Gamma ---------------------------------------------------------------------


@dataclass(frozen=True)
class PointedMap:
    """A pointed map ``<source> -> <target>``; ``values[j]`` is the image of ``j``."""

    source: int
    target: int
    values: tuple[int, ...]

    def __post_init__(self):
        v = tuple(self.values)
        if len(v) != self.source + 1 or v[0] != 0:
            raise ValueError("a pointed map lists images of 0..source and fixes 0")
        if any(not 0 <= x <= self.target for x in v):
            raise ValueError(f"value out of range for <{self.target}>")
        object.__setattr__(self, "values", v)

    def __call__(self, j: int) -> int:
        return self.values[j]

    def then(self, other: "PointedMap") -> "PointedMap":
        if other.source != self.target:
            raise ValueError("maps do not compose")
        return PointedMap(self.source, other.target, tuple(other(x) for x in self.values))

    def as_sset_map(self, truncation_dim: int = 1) -> SSetMap:
        a, b = pointed_set(self.source, truncation_dim), pointed_set(self.target, truncation_dim)
        assign = {}
        for g in a.all_generators():
            j = 0 if g == BASEPOINT else int(g)
            img = self(j)
            assign[g] = b.basepoint(0) if img == 0 else b.ref(str(img))
        return SSetMap(a, b, assign)


def all_pointed_maps(source: int, target: int) -> list[PointedMap]:
    return [PointedMap(source, target, (0,) + t) for t in iproduct(range(target + 1), repeat=source)]


def finite_set(n: int, truncation_dim: int = 1) -> FilteredSSet:
    """``<n>`` as a trivially filtered discrete space."""
    return trivially_filtered(pointed_set(n, truncation_dim))


def base_point_map(f: SSetMap) -> Callable:
    """The point function ``(word, gen) -> (word', gen')`` induced by ``f``."""

    def g(p):
        if p == BP:
            return BP
        w, gen = p
        r = f.assignment[gen]
        if r.generator == BASEPOINT:
            return BP
        return (compose_words(w, r.word), r.generator)

    return g


# -- expressions ---------------------------------------------------------------


class GammaExpr:
    def atoms(self) -> tuple["GammaExpr", ...]:
        return (self,)

    def build(self, inner: Space) -> Space:
        raise NotImplementedError

    def fmap(self, f: Callable) -> Callable:
        raise NotImplementedError

    def __str__(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"GammaExpr({self})"

    def then(self, outer: "GammaExpr") -> "GammaExpr":
        """``outer . self``."""
        return compose(outer, self)


@dataclass(frozen=True, repr=False)
class Id(GammaExpr):
    def build(self, inner):
        return inner

    def fmap(self, f):
        return f

    def __str__(self):
        return "Id"


@dataclass(frozen=True, repr=False)
class SpInf(GammaExpr):
    def build(self, inner):
        return SpSpace(inner)

    def fmap(self, f):
        return lambda p: sp_map(p, f)

    def __str__(self):
        return "Sp"


@dataclass(frozen=True, repr=False)
class SpM(GammaExpr):
    m: int

    def build(self, inner):
        return SpSpace(inner, self.m)

    def fmap(self, f):
        return lambda p: sp_map(p, f)

    def __str__(self):
        return f"Sp({self.m})"


@dataclass(frozen=True, repr=False)
class CFun(GammaExpr):
    cap: int | None = None

    def build(self, inner):
        return CSpace(inner, self.cap)

    def fmap(self, f):
        return lambda p: c_map(p, f)

    def __str__(self):
        return "C"


@dataclass(frozen=True, repr=False)
class FilterM(GammaExpr):
    m: int

    def build(self, inner):
        return Filt(inner, self.m)

    def fmap(self, f):
        return f

    def __str__(self):
        return f"filt({self.m})"


@dataclass(frozen=True, repr=False)
class Compose(GammaExpr):
    parts: tuple[GammaExpr, ...]

    def atoms(self):
        return tuple(a for p in self.parts for a in p.atoms())

    def build(self, inner):
        for a in reversed(self.atoms()):
            inner = a.build(inner)
        return inner

    def fmap(self, f):
        for a in reversed(self.atoms()):
            f = a.fmap(f)
        return f

    def __str__(self):
        return " . ".join(str(a) for a in self.atoms())


def compose(*exprs: GammaExpr) -> GammaExpr:
    atoms = tuple(a for e in exprs for a in e.atoms() if not isinstance(a, Id))
    if not atoms:
        return Id()
    return atoms[0] if len(atoms) == 1 else Compose(atoms)


_ATOM = re.compile(r"\s*(Sp\s*\(\s*(\d+)\s*\)|filt\s*\(\s*(\d+)\s*\)|Sp|C|Id)\s*")


def parse_expr(text: str) -> GammaExpr:
    """Parse ``Sp | Sp(m) | C | filt(m) | Id`` joined by ``.``."""
    if not text.strip():
        raise ExpressionError("empty expression")
    atoms: list[GammaExpr] = []
    for piece in text.split("."):
        mt = _ATOM.fullmatch(piece)
        if not mt:
            raise ExpressionError(f"cannot parse {piece.strip()!r} in {text!r}")
        tok = mt.group(1)
        if mt.group(2) is not None:
            atoms.append(SpM(int(mt.group(2))))
        elif mt.group(3) is not None:
            atoms.append(FilterM(int(mt.group(3))))
        elif tok == "Sp":
            atoms.append(SpInf())
        elif tok == "C":
            atoms.append(CFun())
        else:
            atoms.append(Id())
    return compose(*atoms)


def augmentation(expr: GammaExpr) -> Callable:
    """``F -> Sp``: forget everything but the multiset of base simplices."""
    atoms = expr.atoms()

    def aug(p, depth=0):
        if depth == len(atoms):
            return sp_eta(p)
        a = atoms[depth]
        if p == BP:
            return BP
        if isinstance(a, (SpInf, SpM)):
            labels = p
        elif isinstance(a, CFun):
            labels = p[0]
        else:
            return aug(p, depth + 1)
        out = []
        for x in labels:
            y = aug(x, depth + 1)
            if y != BP:
                out.extend(y)
        return sp_make(out)

    return aug


def evaluate(expr: GammaExpr, x: FilteredSSet, max_filt: int, max_dim: int) -> FilteredSSet:
    """``expr(x)`` cut to filtration ``max_filt`` and levels ``<= max_dim``."""
    try:
        return materialize_space_ids(expr.build(Base(x)), max_dim, max_filt, f"{expr}({x.name})")[0]
    except ResourceBoundError as exc:
        raise ResourceBoundError(f"while evaluating {expr}: {exc}", exc.where) from None


# -- pi0 as a monoid -----------------------------------------------------------


def _monoidal_split(expr: GammaExpr) -> tuple[GammaExpr, GammaExpr] | None:
    """``(outer, rest)`` when the outermost non-filter atom is ``C`` or ``Sp``."""
    atoms = expr.atoms()
    if not atoms or not isinstance(atoms[0], (CFun, SpInf)):
        return None
    return atoms[0], compose(*atoms[1:])


@dataclass
class Pi0Monoid:
    """pi0 of ``outer(rest(x))`` as the free monoid on the components of ``rest(x)``."""

    monoid: FPCommMonoid
    classes: list
    class_of: dict
    base: int
    inner: Space

    def vector(self, q) -> tuple[int, ...]:
        """Coordinates of the component of a vertex of ``rest(x)``."""
        out = [0] * self.monoid.n_generators
        c = self.class_of[q]
        if c != self.base:
            out[c - (c > self.base)] += 1
        return tuple(out)


def pi0_monoid(expr: GammaExpr, x: FilteredSSet, max_filt: int) -> Pi0Monoid:
    """pi0 of ``expr(x)`` below ``max_filt`` for expressions led by ``C`` or ``Sp``.

    A point of ``C(Z)`` or ``Sp(Z)`` is a configuration of points of ``Z``,
    and the spaces of orders are connected, so the components are the
    multisets of non-base components of ``Z``.
    """
    split = _monoidal_split(expr)
    if split is None:
        raise ExpressionError(f"{expr} is not led by C or Sp")
    _, rest = split
    inner = rest.build(Base(x))
    class_of, classes, base = components(inner, max_filt)
    names = [inner.describe(c[0]) for j, c in enumerate(classes) if j != base]
    return Pi0Monoid(FPCommMonoid.free(names), classes, class_of, base, inner)


def pi0_set(space: Space, budget: int | None) -> tuple[dict, list, int]:
    return components(space, budget)


# -- linearization -------------------------------------------------------------


@dataclass
class Linearization:
    """``F(X v Y) -> F(X) x F(Y)`` induced by the two collapse maps."""

    expr: GammaExpr
    wedge: FilteredSSet
    source: Space
    target_x: Space
    target_y: Space
    to_x: Callable
    to_y: Callable
    collapse_x: Callable
    collapse_y: Callable
    max_filt: int
    max_dim: int

    def __call__(self, p):
        return Prod.pair(self.to_x(p), self.to_y(p))

    def product_space(self) -> Space:
        return Filt(Prod(self.target_x, self.target_y), self.max_filt)

    def maps(self) -> tuple[SSetMap, SSetMap]:
        """The two components as maps of materialized simplicial sets."""
        src, src_ids = materialize_space_ids(self.source, self.max_dim, self.max_filt)
        out = []
        for sp, fn in ((self.target_x, self.to_x), (self.target_y, self.to_y)):
            tgt, tgt_ids = materialize_space_ids(sp, self.max_dim, self.max_filt)
            out.append(point_map_to_sset_map(src, src_ids, sp, tgt, tgt_ids, lambda p, d, fn=fn: fn(p)))
        return out[0], out[1]

    def product_map(self) -> SSetMap:
        src, src_ids = materialize_space_ids(self.source, self.max_dim, self.max_filt)
        ps = self.product_space()
        tgt, tgt_ids = materialize_space_ids(ps, self.max_dim, self.max_filt)
        return point_map_to_sset_map(src, src_ids, ps, tgt, tgt_ids, lambda p, d: self(p))


def linearization_lambda(
    expr: GammaExpr, x: FilteredSSet, y: FilteredSSet, max_filt: int, max_dim: int
) -> Linearization:
    w = wedge_filtered(x, y)
    cx, cy = (base_point_map(c) for c in wedge_collapses(x.space, y.space, w.space))
    return Linearization(
        expr,
        w,
        expr.build(Base(w)),
        expr.build(Base(x)),
        expr.build(Base(y)),
        expr.fmap(cx),
        expr.fmap(cy),
        cx,
        cy,
        max_filt,
        max_dim,
    )


def filtered_wedge_inclusion(expr: GammaExpr, x: FilteredSSet, m: int, max_dim: int) -> SSetMap:
    """``filt_m F(X) v filt_m F(X) -> filt_m(F(X) x F(X))``, each summand into its factor."""
    fx = expr.build(Base(x))
    part = Filt(fx, m)
    source = Wedge(part, part)
    target = Filt(Prod(fx, fx), m)
    src, src_ids = materialize_space_ids(source, max_dim, m)
    tgt, tgt_ids = materialize_space_ids(target, max_dim, m)

    def include(p, d):
        if p == BP:
            return BP
        side, z = p
        return (z, BP) if side == 1 else (BP, z)

    return point_map_to_sset_map(src, src_ids, target, tgt, tgt_ids, include)


def specialness_report(
    expr: GammaExpr,
    x: FilteredSSet,
    y: FilteredSSet,
    max_filt: int,
    max_dim: int = 1,
    homology: bool = True,
) -> dict:
    """Compare ``F(X v Y)`` with ``F(X) x F(Y)`` on pi0 and homology."""
    lam = linearization_lambda(expr, x, y, max_filt, max_dim)
    report: dict = {
        "expr": str(expr),
        "bounds": {"max_filt": max_filt, "max_dim": max_dim},
    }

    # pi0 as pointed sets, against the product cut at the same total filtration
    cs, classes_s, _ = components(lam.source, max_filt)
    ct, classes_t, _ = components(lam.product_space(), max_filt)
    images = {ct[lam(v)] for v in lam.source.points(0, max_filt)}
    hit = {}
    for v in lam.source.points(0, max_filt):
        hit.setdefault(cs[v], ct[lam(v)])
    injective = len(set(hit.values())) == len(classes_s)
    report["pi0_sets"] = {
        "source": len(classes_s),
        "target": len(classes_t),
        "bijective": injective and len(images) == len(classes_t),
    }

    split = _monoidal_split(expr)
    if split is not None:
        _, rest = split
        mw = pi0_monoid(expr, lam.wedge, max_filt)
        mx = pi0_monoid(expr, x, max_filt)
        my = pi0_monoid(expr, y, max_filt)
        rx, ry = rest.fmap(lam.collapse_x), rest.fmap(lam.collapse_y)
        imgs = []
        for cls_idx, cls in enumerate(mw.classes):
            if cls_idx == mw.base:
                continue
            z = cls[0]
            imgs.append(mx.vector(rx(z)) + my.vector(ry(z)))
        target = FPCommMonoid.free(
            [f"X:{g}" for g in mx.monoid.generators] + [f"Y:{g}" for g in my.monoid.generators]
        )
        verdict = completion_map_is_iso(mw.monoid, target, imgs)
        report["pi0_monoid"] = {
            "source_generators": mw.monoid.n_generators,
            "target_generators": target.n_generators,
            "images": [list(v) for v in imgs],
            **verdict,
        }

    special = report["pi0_sets"]["bijective"] and report.get("pi0_monoid", {}).get("iso", True)
    if homology and max_dim >= 1:
        try:
            f = lam.product_map()
            conn = connectivity_compare(f, max_dim - 1)
            report["homology"] = [v.as_dict() for v in conn.degrees]
            special = special and all(v.verdict == "iso" for v in conn.degrees)
        except ResourceBoundError as exc:
            report["homology"] = f"skipped: {exc}"
    report["special"] = special
    return report


# -- assembly ------------------------------------------------------------------


@dataclass
class Assembly:
    """``E(k) x F(X_1) x ... x F(X_k) -> F(X_1 v ... v X_k)`` for ``F`` in ``{Sp, C}``."""

    expr: GammaExpr
    wedge: FilteredSSet
    inclusions: list[Callable]
    collapses: list[Callable]

    def __call__(self, e: EWord, points: Sequence):
        if e.n != len(self.inclusions) or len(points) != e.n:
            raise ValueError(f"arity mismatch: word of arity {e.n}, {len(points)} points")
        moved = [self.expr.fmap(inc)(p) for inc, p in zip(self.inclusions, points)]
        if isinstance(self.expr, SpInf):
            return sp_make(x for p in moved if p != BP for x in p)
        return c_mu(coend_point(e, moved))

    def project(self, p) -> tuple:
        """The tuple of collapses of ``p`` onto each summand."""
        return tuple(self.expr.fmap(c)(p) for c in self.collapses)


def assembly(expr: GammaExpr, xs: Sequence[FilteredSSet]) -> Assembly:
    if not isinstance(expr, (SpInf, CFun)):
        raise ExpressionError("assembly is implemented for Sp and C")
    w = wedge_many_filtered(list(xs))
    incs, cols = wedge_many_maps([x.space for x in xs], w.space)
    return Assembly(expr, w, [base_point_map(f) for f in incs], [base_point_map(f) for f in cols])


def assembly_alpha(expr: GammaExpr, xs: Sequence[FilteredSSet], e: EWord, points: Sequence):
    return assembly(expr, xs)(e, points)


# -- module actions ------------------------------------------------------------


def module_action(expr: GammaExpr) -> Callable:
    """The action ``C F -> F`` for ``F = Sp`` (fold) or ``F = C`` (multiplication)."""
    if isinstance(expr, SpInf):
        return sp_fold_c
    if isinstance(expr, CFun):
        return c_mu
    raise ExpressionError(f"no built-in action of C on {expr}")


def check_module_action(expr: GammaExpr, x: FilteredSSet, max_filt: int, max_dim: int) -> CheckReport:
    """Unit, associativity, augmentation square, simpliciality and filtration of the action."""
    act = module_action(expr)
    eps_f = augmentation(expr)
    fx = expr.build(Base(x))
    cfx = CSpace(fx)
    ccfx = CSpace(cfx)
    rep = CheckReport(f"C-action on {expr}({x.name})")
    for d in range(max_dim + 1):
        for p in fx.points(d, max_filt):
            rep.check(act(c_eta(p, d)) == p, lambda: f"unit fails at {fx.describe(p)}")
        for p in cfx.points(d, max_filt):
            a = act(p)
            rep.check(fx.contains(a, d), lambda: f"action leaves F at {cfx.describe(p)}")
            rep.check(fx.phi(a) == cfx.phi(p), lambda: f"filtration changes at {cfx.describe(p)}")
            lhs = eps_f(a)
            rhs = sp_make(t for y in c_eps(p) if y != BP for t in (eps_f(y) if eps_f(y) != BP else ()))
            rep.check(lhs == rhs, lambda: f"augmentation square fails at {cfx.describe(p)}")
            for i in range(d + 1):
                if d:
                    rep.check(
                        act(cfx.face(p, i, d)) == fx.face(a, i, d),
                        lambda: f"d{i} does not commute at {cfx.describe(p)}",
                    )
                rep.check(
                    act(cfx.degen(p, i, d)) == fx.degen(a, i, d),
                    lambda: f"s{i} does not commute at {cfx.describe(p)}",
                )
        for q in ccfx.points(d, max_filt):
            rep.check(
                act(c_mu(q)) == act(c_map(q, act)),
                lambda: f"associativity fails at {ccfx.describe(q)}",
            )
    return rep


def check_functoriality(expr: GammaExpr, max_n: int, max_filt: int, max_dim: int = 0) -> CheckReport:
    """``F(g f) = F(g) F(f)`` and ``F(id) = id`` over pointed maps among ``<1>..<max_n>``."""
    rep = CheckReport(f"functoriality of {expr}")
    sets = {n: finite_set(n, max(max_dim, 1)) for n in range(1, max_n + 1)}
    spaces = {n: expr.build(Base(x)) for n, x in sets.items()}
    fm = {}
    for a in sets:
        for b in sets:
            for f in all_pointed_maps(a, b):
                fm[f] = expr.fmap(base_point_map(f.as_sset_map(max(max_dim, 1))))
    for a in sets:
        ident = PointedMap(a, a, tuple(range(a + 1)))
        for d in range(max_dim + 1):
            for p in spaces[a].points(d, max_filt):
                rep.check(fm[ident](p) == p, lambda: f"F(id) moves {p!r}")
    for a in sets:
        for b in sets:
            for c in sets:
                for f in all_pointed_maps(a, b):
                    for g in all_pointed_maps(b, c):
                        gf = fm[f.then(g)]
                        for d in range(max_dim + 1):
                            for p in spaces[a].points(d, max_filt):
                                q = fm[f](p)
                                rep.check(spaces[b].contains(q, d), lambda: f"F(f) leaves F(<{b}>)")
                                rep.check(
                                    gf(p) == fm[g](q),
                                    lambda: f"F(g f) != F(g) F(f) at {p!r} for {f.values}, {g.values}",
                                )
    return rep


__all__ = [
    "Assembly",
    "CFun",
    "Compose",
    "ExpressionError",
    "FilterM",
    "GammaExpr",
    "Id",
    "Linearization",
    "Pi0Monoid",
    "PointedMap",
    "SpInf",
    "SpM",
    "all_pointed_maps",
    "assembly",
    "assembly_alpha",
    "augmentation",
    "base_point_map",
    "check_functoriality",
    "check_module_action",
    "compose",
    "evaluate",
    "finite_set",
    "filtered_wedge_inclusion",
    "linearization_lambda",
    "module_action",
    "parse_expr",
    "pi0_monoid",
    "specialness_report",
]
