"""Lazily enumerated point models of composite functors.

Each space knows how to apply faces and degeneracies to its points, how to
compute the filtration of a point, and how to list every point of a given
simplicial level below a filtration budget.  The basepoint of every space
is ``()``.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product as iproduct

from .filtered import FilteredSSet
from .operad import (
    BP,
    all_perms,
    c_degen,
    c_face,
    c_is_canonical,
    identity_perm,
    sp_degen,
    sp_face,
)
from .simplicial import BASEPOINT, SimplexRef, degenerate, words_of


class ResourceBoundError(RuntimeError):
    """Raised when an enumeration would exceed the configured bounds."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(message if not where else f"{where}: {message}")
        self.where = where


_LIMIT = {"points": None}


def set_point_limit(n: int | None) -> None:
    """Refuse to enumerate more than ``n`` points at one level of one space."""
    _LIMIT["points"] = n


def get_point_limit() -> int | None:
    return _LIMIT["points"]


class Space:
    name = "?"

    def face(self, p, i: int, d: int):
        raise NotImplementedError

    def degen(self, p, i: int, d: int):
        raise NotImplementedError

    def phi(self, p) -> int:
        raise NotImplementedError

    def _enumerate(self, d: int, budget: int | None) -> list:
        raise NotImplementedError

    def contains(self, p, d: int) -> bool:
        raise NotImplementedError

    def points(self, d: int, budget: int | None = None) -> list:
        """Every point of level ``d`` with filtration at most ``budget``, sorted."""
        cache = self.__dict__.setdefault("_pts", {})
        key = (d, budget)
        if key not in cache:
            pts = sorted(set(self._enumerate(d, budget)))
            limit = _LIMIT["points"]
            if limit is not None and len(pts) > limit:
                raise ResourceBoundError(f"{len(pts)} points at level {d} exceed the limit {limit}", self.name)
            cache[key] = pts
        return cache[key]

    def nonbase(self, d: int, budget: int | None = None) -> list:
        return [p for p in self.points(d, budget) if p != BP]

    def bounded(self) -> bool:
        """True when every level is finite without a budget."""
        return False

    def describe(self, p) -> str:
        return "*" if p == BP else repr(p)

    def __repr__(self) -> str:
        return self.name


class Base(Space):
    """Points of a filtered simplicial set: ``(word, generator)`` or ``()``."""

    def __init__(self, x: FilteredSSet, name: str | None = None):
        self.x = x
        self.s = x.space
        self.name = name or x.name or x.space.name

    def face(self, p, i, d):
        if p == BP:
            return BP
        r = self.s.face(SimplexRef(d, p[0], p[1]), i)
        return BP if r.generator == BASEPOINT else (r.word, r.generator)

    def degen(self, p, i, d):
        if p == BP:
            return BP
        return (degenerate(i, p[0]), p[1])

    def phi(self, p):
        return 0 if p == BP else self.x.phi[p[1]]

    def describe(self, p):
        if p == BP:
            return "*"
        w, g = p
        return g if not w else "s" + "".join(map(str, w)) + g

    def _enumerate(self, d, budget):
        if d > self.s.truncation_dim:
            raise ResourceBoundError(f"level {d} exceeds truncation {self.s.truncation_dim}", self.name)
        out = [BP]
        for q in range(d + 1):
            for g in self.s.gens(q):
                if g == BASEPOINT or (budget is not None and self.x.phi[g] > budget):
                    continue
                for w in words_of(d, d - q):
                    out.append((w, g))
        return out

    def contains(self, p, d):
        if p == BP:
            return True
        try:
            w, g = p
            return self.s.dim_of(g) + len(w) == d and g != BASEPOINT
        except Exception:
            return False

    def bounded(self):
        return True


class CSpace(Space):
    """Points of ``C(inner)``; ``cap`` bounds the number of coordinates."""

    def __init__(self, inner: Space, cap: int | None = None):
        self.inner = inner
        self.cap = cap
        self.name = f"C({inner.name})"

    def face(self, p, i, d):
        return c_face(p, i, d, self.inner.face)

    def degen(self, p, i, d):
        return c_degen(p, i, d, self.inner.degen)

    def phi(self, p):
        if p == BP:
            return 0
        f = self.inner.phi
        return sum(f(x) for x in p[0])

    def describe(self, p):
        if p == BP:
            return "*"
        labels, orders = p
        body = ",".join(self.inner.describe(x) for x in labels)
        if len(orders) == 1 or len(labels) == 1:
            return f"[{body}]"
        return f"[{body}|" + ";".join("".join(map(str, o)) for o in orders[1:]) + "]"

    def bounded(self):
        return False

    def _enumerate(self, d, budget):
        if budget is None and self.cap is None:
            raise ResourceBoundError("C needs a filtration budget or an arity cap", self.name)
        labels = [(x, self.inner.phi(x)) for x in self.inner.nonbase(d, budget)]
        out = [BP]
        max_n = self.cap if self.cap is not None else budget
        if budget is not None:
            max_n = min(max_n, budget)
        order_sets = {}

        def orders(n):
            if n not in order_sets:
                ident = identity_perm(n)
                order_sets[n] = [(ident,) + rest for rest in iproduct(all_perms(n), repeat=d)]
            return order_sets[n]

        def rec(prefix, spent):
            if prefix:
                for o in orders(len(prefix)):
                    out.append((tuple(prefix), o))
            if len(prefix) == max_n:
                return
            for x, v in labels:
                if budget is None or spent + v <= budget:
                    prefix.append(x)
                    rec(prefix, spent + v)
                    prefix.pop()

        rec([], 0)
        return out

    def contains(self, p, d):
        if p == BP:
            return True
        if not (isinstance(p, tuple) and len(p) == 2):
            return False
        if not c_is_canonical(p) or len(p[1]) != d + 1:
            return False
        if self.cap is not None and len(p[0]) > self.cap:
            return False
        return all(self.inner.contains(x, d) for x in p[0])


class SpSpace(Space):
    """Points of ``Sp(inner)``; ``max_count`` gives the classical ``Sp^m``."""

    def __init__(self, inner: Space, max_count: int | None = None):
        self.inner = inner
        self.max_count = max_count
        self.name = f"Sp({inner.name})" if max_count is None else f"Sp{max_count}({inner.name})"

    def face(self, p, i, d):
        return sp_face(p, i, d, self.inner.face)

    def degen(self, p, i, d):
        return sp_degen(p, i, d, self.inner.degen)

    def phi(self, p):
        if p == BP:
            return 0
        f = self.inner.phi
        return sum(f(x) for x in p)

    def describe(self, p):
        if p == BP:
            return "*"
        return "{" + ",".join(self.inner.describe(x) for x in p) + "}"

    def bounded(self):
        return self.max_count is not None and self.inner.bounded()

    def _enumerate(self, d, budget):
        if budget is None and self.max_count is None:
            raise ResourceBoundError("Sp needs a filtration budget or a count bound", self.name)
        labels = [(x, self.inner.phi(x)) for x in self.inner.nonbase(d, budget)]
        max_n = self.max_count if self.max_count is not None else budget
        if budget is not None:
            max_n = min(max_n, budget)
        out = [BP]
        for n in range(1, max_n + 1):
            for combo in combinations_with_replacement(range(len(labels)), n):
                if budget is None or sum(labels[j][1] for j in combo) <= budget:
                    out.append(tuple(labels[j][0] for j in combo))
        return out

    def contains(self, p, d):
        if p == BP:
            return True
        if not isinstance(p, tuple) or BP in p or list(p) != sorted(p):
            return False
        if self.max_count is not None and len(p) > self.max_count:
            return False
        return all(self.inner.contains(x, d) for x in p)


class Filt(Space):
    """The subspace of points with filtration at most ``m``."""

    def __init__(self, inner: Space, m: int):
        self.inner = inner
        self.m = m
        self.name = f"filt{m}({inner.name})"

    def face(self, p, i, d):
        return self.inner.face(p, i, d)

    def degen(self, p, i, d):
        return self.inner.degen(p, i, d)

    def phi(self, p):
        return self.inner.phi(p)

    def describe(self, p):
        return self.inner.describe(p)

    def bounded(self):
        return True

    def _enumerate(self, d, budget):
        b = self.m if budget is None else min(budget, self.m)
        return self.inner.points(d, b)

    def contains(self, p, d):
        return self.inner.contains(p, d) and self.inner.phi(p) <= self.m


class Prod(Space):
    """Product with additive filtration; ``(a, b)`` or ``()`` for the basepoint."""

    def __init__(self, a: Space, b: Space):
        self.a, self.b = a, b
        self.name = f"({a.name} x {b.name})"

    @staticmethod
    def pair(x, y):
        return BP if x == BP and y == BP else (x, y)

    def face(self, p, i, d):
        if p == BP:
            return BP
        return self.pair(self.a.face(p[0], i, d), self.b.face(p[1], i, d))

    def degen(self, p, i, d):
        if p == BP:
            return BP
        return (self.a.degen(p[0], i, d), self.b.degen(p[1], i, d))

    def phi(self, p):
        return 0 if p == BP else self.a.phi(p[0]) + self.b.phi(p[1])

    def describe(self, p):
        if p == BP:
            return "*"
        return f"({self.a.describe(p[0])},{self.b.describe(p[1])})"

    def bounded(self):
        return self.a.bounded() and self.b.bounded()

    def _enumerate(self, d, budget):
        A = [(x, self.a.phi(x)) for x in self.a.points(d, budget)]
        B = [(y, self.b.phi(y)) for y in self.b.points(d, budget)]
        return [
            self.pair(x, y)
            for x, u in A
            for y, v in B
            if budget is None or u + v <= budget
        ]

    def contains(self, p, d):
        if p == BP:
            return True
        return (
            isinstance(p, tuple)
            and len(p) == 2
            and p != (BP, BP)
            and self.a.contains(p[0], d)
            and self.b.contains(p[1], d)
        )


class Wedge(Space):
    """Wedge with inherited filtration; ``(1, a)``, ``(2, b)`` or ``()``."""

    def __init__(self, a: Space, b: Space):
        self.a, self.b = a, b
        self.name = f"({a.name} v {b.name})"

    def side(self, k: int) -> Space:
        return self.a if k == 1 else self.b

    @staticmethod
    def tag(k, x):
        return BP if x == BP else (k, x)

    def face(self, p, i, d):
        if p == BP:
            return BP
        return self.tag(p[0], self.side(p[0]).face(p[1], i, d))

    def degen(self, p, i, d):
        if p == BP:
            return BP
        return (p[0], self.side(p[0]).degen(p[1], i, d))

    def phi(self, p):
        return 0 if p == BP else self.side(p[0]).phi(p[1])

    def describe(self, p):
        if p == BP:
            return "*"
        return f"{p[0]}:{self.side(p[0]).describe(p[1])}"

    def bounded(self):
        return self.a.bounded() and self.b.bounded()

    def _enumerate(self, d, budget):
        out = [BP]
        out += [(1, x) for x in self.a.nonbase(d, budget)]
        out += [(2, y) for y in self.b.nonbase(d, budget)]
        return out

    def contains(self, p, d):
        if p == BP:
            return True
        return (
            isinstance(p, tuple)
            and len(p) == 2
            and p[0] in (1, 2)
            and p[1] != BP
            and self.side(p[0]).contains(p[1], d)
        )


def iterate_c(inner: Space, k: int) -> Space:
    for _ in range(k):
        inner = CSpace(inner)
    return inner


def materialize_space_ids(space: Space, max_dim: int, budget: int | None = None, name: str | None = None):
    """Materialize ``space`` up to ``max_dim``; also return point -> generator id."""
    from .simplicial import materialize

    s, ids, phis = materialize(
        lambda d: space.points(d, budget),
        space.face,
        space.degen,
        lambda d: BP,
        max_dim,
        name or space.name,
        label=_short_label,
        phi=space.phi,
    )
    return FilteredSSet(s, phis, s.name), ids


def materialize_space(space: Space, max_dim: int, budget: int | None = None, name: str | None = None) -> FilteredSSet:
    """Materialize a space as a :class:`FilteredSSet` up to ``max_dim``."""
    return materialize_space_ids(space, max_dim, budget, name)[0]


def point_map_to_sset_map(src, src_ids, tgt_space: Space, tgt, tgt_ids, f) -> "SSetMap":
    """Turn a point function between materialized spaces into an :class:`SSetMap`."""
    from .simplicial import SSetMap, decompose

    assign = {}
    for p, gid in src_ids.items():
        d = src.space.dim_of(gid)
        q = f(p, d)
        w, y = decompose(q, d, tgt_space.face, tgt_space.degen)
        if y not in tgt_ids:
            raise ResourceBoundError(f"image {y!r} lies outside the materialized target", tgt_space.name)
        assign[gid] = SimplexRef(d, w, tgt_ids[y])
    return SSetMap(src.space, tgt.space, assign)


def components(space: Space, budget: int | None = None):
    """Connected components of the points of levels 0 and 1.

    Returns ``(class_of, classes, base_class)`` where ``classes`` lists the
    sorted vertices of each component, sorted by least vertex.
    """
    verts = space.points(0, budget)
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in space.points(1, budget):
        a, b = find(space.face(e, 0, 1)), find(space.face(e, 1, 1))
        if a != b:
            if b < a:
                a, b = b, a
            parent[b] = a
    groups: dict = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    classes = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    class_of = {v: i for i, g in enumerate(classes) for v in g}
    base = class_of[BP]
    return class_of, classes, base


def _short_label(p) -> str:
    return repr(p).replace(" ", "")
