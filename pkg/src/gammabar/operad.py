"""Barratt-Eccles words and the point-level primitives of the monads C and Sp.

Permutations are stored as rank tuples: ``sigma[j]`` is the position of
element ``j`` in the linear order that ``sigma`` encodes (0-indexed).  A
``d``-simplex of the nerve of the translation groupoid of the symmetric
group is a tuple of ``d+1`` such orders.

Points of every space share one basepoint value, the empty tuple ``()``.
A non-basepoint point of ``C(X)`` at simplicial level ``d`` is
``(labels, orders)``: the coordinates listed in the order given by
``orders[0]`` (so ``orders[0]`` is always the identity) and ``d+1`` rank
tuples.  Fixing ``orders[0]`` to the identity picks the unique member of
the symmetric-group orbit whose first entry is the identity, which is also
the lexicographically least one.  A non-basepoint point of ``Sp(X)`` is the
sorted tuple of its coordinates.
"""

from __future__ import annotations

from itertools import permutations
from typing import Callable, NamedTuple, Sequence

BP = ()

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def rank(values: Sequence) -> Perm:
    order = sorted(range(len(values)), key=values.__getitem__)
    out = [0] * len(values)
    for pos, j in enumerate(order):
        out[j] = pos
    return tuple(out)


def all_perms(n: int) -> list[Perm]:
    return [tuple(p) for p in permutations(range(n))]


def perm_compose(a: Perm, b: Perm) -> Perm:
    """``a o b`` as maps on positions."""
    return tuple(a[j] for j in b)


def perm_inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for j, v in enumerate(a):
        out[v] = j
    return tuple(out)


class EWord(NamedTuple):
    """A ``d``-simplex of the Barratt-Eccles space in arity ``n``."""

    n: int
    perms: tuple[Perm, ...]

    @property
    def dim(self) -> int:
        return len(self.perms) - 1

    def face(self, i: int) -> "EWord":
        if not 0 <= i <= self.dim or self.dim == 0:
            raise IndexError(f"face {i} of a {self.dim}-simplex")
        return EWord(self.n, self.perms[:i] + self.perms[i + 1 :])

    def degeneracy(self, i: int) -> "EWord":
        if not 0 <= i <= self.dim:
            raise IndexError(f"degeneracy {i} of a {self.dim}-simplex")
        return EWord(self.n, self.perms[: i + 1] + self.perms[i:])

    def act(self, g: Perm) -> "EWord":
        """Right action ``sigma -> sigma o g`` entrywise."""
        return EWord(self.n, tuple(perm_compose(s, g) for s in self.perms))


def eword(perms: Sequence[Sequence[int]]) -> EWord:
    ps = tuple(tuple(p) for p in perms)
    if not ps:
        raise ValueError("an EWord needs at least one entry")
    n = len(ps[0])
    for p in ps:
        if sorted(p) != list(range(n)):
            raise ValueError(f"{p} is not a permutation of {n} letters")
    return EWord(n, ps)


def restrict_along_injection(u: Sequence[int], e: EWord) -> EWord:
    """Pull ``e`` back along ``u : m -> n`` (``u[j]`` is the image of ``j``).

    Each order is restricted to the image of ``u`` and transported to
    ``{0..m-1}``; in symbols ``w^{-1} o sigma o u`` with ``w`` the monotone
    injection onto ``sigma(u(m))``.
    """
    u = tuple(u)
    if len(set(u)) != len(u) or any(not 0 <= x < e.n for x in u):
        raise ValueError(f"{u} is not an injection into {e.n} letters")
    return EWord(len(u), tuple(rank([s[x] for x in u]) for s in e.perms))


def operad_compose(outer: EWord, inners: Sequence[EWord]) -> EWord:
    """Block composition: the order on block ``a`` is inserted at ``a``'s slot."""
    if len(inners) != outer.n:
        raise ValueError("need one inner word per input of the outer word")
    if any(w.dim != outer.dim for w in inners):
        raise ValueError("dimension mismatch in operad composition")
    sizes = [w.n for w in inners]
    out = []
    for t, sigma in enumerate(outer.perms):
        before = [0] * outer.n
        for a in range(outer.n):
            before[a] = sum(sizes[b] for b in range(outer.n) if sigma[b] < sigma[a])
        ranks = []
        for a, w in enumerate(inners):
            ranks.extend(before[a] + r for r in w.perms[t])
        out.append(tuple(ranks))
    return EWord(sum(sizes), tuple(out))


# -- C points ----------------------------------------------------------------


def canon(labels: Sequence, orders: Sequence[Sequence]) -> tuple:
    """Canonical C-point from raw tokens; basepoint labels are dropped.

    ``orders`` are per-entry sort keys (anything comparable), one per token.
    """
    keep = [j for j, x in enumerate(labels) if x != BP]
    if not keep:
        return BP
    first = orders[0]
    keep.sort(key=first.__getitem__)
    return (
        tuple(labels[j] for j in keep),
        tuple(rank([o[j] for j in keep]) for o in orders),
    )


def coend_point(e: EWord, coords: Sequence) -> tuple:
    """Canonical representative of ``[e; coords]``."""
    if len(coords) != e.n:
        raise ValueError("arity mismatch")
    return canon(list(coords), e.perms)


def point_eword(p, d: int) -> EWord:
    if p == BP:
        return EWord(0, ((),) * (d + 1))
    return EWord(len(p[0]), p[1])


def c_eta(x, d: int):
    if x == BP:
        return BP
    return ((x,), ((0,),) * (d + 1))


def c_map(p, f: Callable):
    """Apply ``C(f)``; ``f`` acts on coordinates."""
    if p == BP:
        return BP
    labels, orders = p
    new = [f(x) for x in labels]
    if BP in new:
        return canon(new, orders)
    return (tuple(new), orders)


def c_face(p, i: int, d: int, label_face: Callable):
    if p == BP:
        return BP
    labels, orders = p
    new = [label_face(x, i, d) for x in labels]
    orders = orders[:i] + orders[i + 1 :]
    if i == 0 or BP in new:
        return canon(new, orders)
    return (tuple(new), orders)


def c_degen(p, i: int, d: int, label_degen: Callable):
    if p == BP:
        return BP
    labels, orders = p
    return (
        tuple(label_degen(x, i, d) for x in labels),
        orders[: i + 1] + orders[i:],
    )


def c_mu(p):
    """Flatten a point of ``C(C(X))``: lexicographic block composition."""
    if p == BP:
        return BP
    outer_labels, outer_orders = p
    if len(outer_labels) == 1:
        return outer_labels[0]
    labels = []
    keys: list[list] = [[] for _ in outer_orders]
    for a, inner in enumerate(outer_labels):
        in_labels, in_orders = inner
        labels.extend(in_labels)
        for t, o in enumerate(outer_orders):
            oa = o[a]
            it = in_orders[t]
            keys[t].extend((oa, r) for r in it)
    return canon(labels, keys)


def c_eps(p):
    if p == BP:
        return BP
    return tuple(sorted(p[0]))


def c_arity(p) -> int:
    return 0 if p == BP else len(p[0])


def c_is_canonical(p) -> bool:
    if p == BP:
        return True
    labels, orders = p
    if not labels or BP in labels:
        return False
    n = len(labels)
    if orders[0] != identity_perm(n):
        return False
    return all(sorted(o) == list(range(n)) for o in orders)


# -- Sp points ---------------------------------------------------------------


def sp_eta(x):
    return BP if x == BP else (x,)


def sp_make(items) -> tuple:
    items = [x for x in items if x != BP]
    return tuple(sorted(items)) if items else BP


def sp_map(p, f: Callable):
    if p == BP:
        return BP
    return sp_make(f(x) for x in p)


def sp_face(p, i: int, d: int, label_face: Callable):
    if p == BP:
        return BP
    return sp_make(label_face(x, i, d) for x in p)


def sp_degen(p, i: int, d: int, label_degen: Callable):
    if p == BP:
        return BP
    return tuple(sorted(label_degen(x, i, d) for x in p))


def sp_mu(p):
    """Union of a multiset of multisets."""
    if p == BP:
        return BP
    return tuple(sorted(x for inner in p for x in inner))


def sp_fold_c(p):
    """The action ``C Sp -> Sp``: forget the orders, then take the union."""
    if p == BP:
        return BP
    return tuple(sorted(x for inner in p[0] for x in inner))
