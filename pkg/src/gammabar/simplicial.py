"""Finite pointed simplicial sets stored in Eilenberg-Zilber normal form.

A simplex is a pair ``(word, generator)`` where ``word`` is a strictly
decreasing tuple ``(i1, ..., ip)`` standing for ``s_i1 ... s_ip`` and the
generator is nondegenerate.  Faces are computed by pushing ``d_i`` through
the word with the simplicial identities and then reading the stored face of
the generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .snf import AbGroup, smith_normal_form

BASEPOINT = "*"

Word = tuple[int, ...]


class SimplexRef(NamedTuple):
    dim: int
    word: Word
    generator: str

    @property
    def is_degenerate(self) -> bool:
        return bool(self.word)


# -- degeneracy words ------------------------------------------------------


def check_word(word: Sequence[int]) -> Word:
    w = tuple(int(i) for i in word)
    if any(i < 0 for i in w) or any(a <= b for a, b in zip(w, w[1:])):
        raise ValueError(f"degeneracy word {w} is not strictly decreasing")
    return w


def degenerate(i: int, word: Word) -> Word:
    """Normal form of ``s_i`` composed on the left of ``word``."""
    out = []
    for pos, j in enumerate(word):
        if i > j:
            return tuple(out) + (i,) + word[pos:]
        # s_i s_j = s_{j+1} s_i for i <= j
        out.append(j + 1)
    out.append(i)
    return tuple(out)


def compose_words(outer: Word, inner: Word) -> Word:
    """Normal form of ``s_outer`` applied after ``s_inner``."""
    w = inner
    for i in reversed(outer):
        w = degenerate(i, w)
    return w


def push_face(i: int, word: Word) -> tuple[Word, int | None]:
    """Rewrite ``d_i s_word`` as ``s_word' d_k`` (``k`` is None when the face cancels)."""
    out: list[int] = []
    cur: int | None = i
    for j in word:
        if cur is None:
            out.append(j)
        elif cur < j:
            out.append(j - 1)
        elif cur == j or cur == j + 1:
            cur = None
        else:
            out.append(j)
            cur -= 1
    # out is already decreasing except where the cancelled letter leaves a gap;
    # re-normalize to be safe.
    w: Word = ()
    for j in reversed(out):
        w = degenerate(j, w)
    return w, cur


def words_of(dim: int, length: int) -> Iterator[Word]:
    """All normal-form words of ``length`` letters landing in dimension ``dim``."""
    for subset in combinations(range(dim), length):
        yield tuple(sorted(subset, reverse=True))


# -- simplicial sets -------------------------------------------------------


class SimplicialError(ValueError):
    pass


@dataclass(frozen=True)
class SSet:
    """Pointed simplicial set truncated at ``truncation_dim``.

    ``generators[d]`` lists nondegenerate ids of dimension ``d``; ``faces``
    maps each id of positive dimension to its ``d+1`` faces.  The basepoint
    generator is always ``"*"``.
    """

    generators: tuple[tuple[str, ...], ...]
    faces: Mapping[str, tuple[SimplexRef, ...]]
    truncation_dim: int
    name: str = ""
    _dims: Mapping[str, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        dims = {}
        for d, gens in enumerate(self.generators):
            for g in gens:
                if g in dims:
                    raise SimplicialError(f"duplicate generator {g!r}")
                dims[g] = d
        if BASEPOINT not in dims or dims[BASEPOINT] != 0:
            raise SimplicialError("basepoint '*' must be a vertex")
        for g, fs in self.faces.items():
            if g not in dims:
                raise SimplicialError(f"faces given for unknown generator {g!r}")
            if len(fs) != dims[g] + 1:
                raise SimplicialError(f"generator {g!r} needs {dims[g] + 1} faces")
            for f in fs:
                if f.generator not in dims:
                    raise SimplicialError(f"dangling face {f.generator!r} of {g!r}")
                if f.dim != dims[g] - 1 or dims[f.generator] + len(f.word) != f.dim:
                    raise SimplicialError(f"face {f} of {g!r} has the wrong dimension")
        object.__setattr__(self, "_dims", dims)

    # basic access

    def dim_of(self, gen: str) -> int:
        try:
            return self._dims[gen]
        except KeyError:
            raise SimplicialError(f"unknown generator {gen!r}") from None

    def gens(self, d: int) -> tuple[str, ...]:
        return self.generators[d] if d < len(self.generators) else ()

    def all_generators(self) -> Iterator[str]:
        for gens in self.generators:
            yield from gens

    def ref(self, gen: str, word: Sequence[int] = ()) -> SimplexRef:
        w = check_word(word)
        d = self.dim_of(gen) + len(w)
        if w and w[0] >= d:
            raise SimplicialError(f"word {w} invalid on {gen!r}")
        return SimplexRef(d, w, gen)

    def basepoint(self, d: int = 0) -> SimplexRef:
        return SimplexRef(d, tuple(range(d - 1, -1, -1)), BASEPOINT)

    def is_basepoint(self, x: SimplexRef) -> bool:
        return x.generator == BASEPOINT

    # operators

    def face(self, x: SimplexRef, i: int) -> SimplexRef:
        if not 0 <= i <= x.dim or x.dim == 0:
            raise SimplicialError(f"face index {i} out of range for dimension {x.dim}")
        word, k = push_face(i, x.word)
        if k is None:
            return SimplexRef(x.dim - 1, word, x.generator)
        inner = self.faces[x.generator][k]
        return SimplexRef(x.dim - 1, compose_words(word, inner.word), inner.generator)

    def degeneracy(self, x: SimplexRef, i: int) -> SimplexRef:
        if not 0 <= i <= x.dim:
            raise SimplicialError(f"degeneracy index {i} out of range for dimension {x.dim}")
        return SimplexRef(x.dim + 1, degenerate(i, x.word), x.generator)

    def simplices(self, d: int) -> Iterator[SimplexRef]:
        """Every simplex of dimension ``d``, degenerate ones included."""
        self._check_dim(d)
        for p in range(d + 1):
            for g in self.gens(p):
                for w in words_of(d, d - p):
                    yield SimplexRef(d, w, g)

    def _check_dim(self, d: int) -> None:
        if d > self.truncation_dim:
            raise SimplicialError(f"dimension {d} exceeds truncation {self.truncation_dim}")

    def counts(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.generators)

    def __repr__(self) -> str:
        label = self.name or "SSet"
        return f"<{label} nondegenerate counts {self.counts()}>"


def build_sset(
    gens_by_dim: Sequence[Iterable[str]],
    faces: Mapping[str, Sequence[tuple[Sequence[int], str]]],
    truncation_dim: int | None = None,
    name: str = "",
) -> SSet:
    """Convenience constructor from ``gen -> [(word, gen), ...]``."""
    generators = tuple(tuple(g) for g in gens_by_dim)
    dims = {g: d for d, gs in enumerate(generators) for g in gs}
    table = {}
    for g, fs in faces.items():
        table[g] = tuple(
            SimplexRef(dims[g] - 1, check_word(w), h) for (w, h) in fs
        )
    top = len(generators) - 1 if truncation_dim is None else truncation_dim
    generators = generators + ((),) * (top + 1 - len(generators))
    return SSet(generators, table, top, name)


def extend_truncation(s: SSet, truncation_dim: int) -> SSet:
    """Raise the truncation of a space whose generators all sit below it."""
    gens = s.generators[: truncation_dim + 1]
    if len(s.generators) > truncation_dim + 1 and any(s.generators[truncation_dim + 1 :]):
        raise SimplicialError("cannot lower truncation below existing generators")
    gens = gens + ((),) * (truncation_dim + 1 - len(gens))
    return SSet(gens, s.faces, truncation_dim, s.name)


# -- named models ----------------------------------------------------------


def point(truncation_dim: int = 4) -> SSet:
    return build_sset([[BASEPOINT]], {}, truncation_dim, "point")


def sphere0(truncation_dim: int = 4) -> SSet:
    return build_sset([[BASEPOINT, "1"]], {}, truncation_dim, "S0")


def pointed_set(n: int, truncation_dim: int = 4) -> SSet:
    """The discrete pointed set with ``n`` non-basepoint elements."""
    return build_sset([[BASEPOINT] + [str(i) for i in range(1, n + 1)]], {}, truncation_dim, f"<{n}>")


def sphere1(truncation_dim: int = 4) -> SSet:
    return build_sset(
        [[BASEPOINT], ["e"]],
        {"e": [((), BASEPOINT), ((), BASEPOINT)]},
        truncation_dim,
        "S1",
    )


def sphere2(truncation_dim: int = 4) -> SSet:
    return build_sset(
        [[BASEPOINT], [], ["sigma"]],
        {"sigma": [((0,), BASEPOINT)] * 3},
        truncation_dim,
        "S2",
    )


def simplex_boundary_free(n: int, truncation_dim: int) -> SSet:
    """``Delta[n]`` with every proper face collapsed to the basepoint."""
    if n == 0:
        return sphere0(truncation_dim)
    gens = [[BASEPOINT]] + [[] for _ in range(n - 1)] + [["cell"]]
    word = tuple(range(n - 2, -1, -1))
    return build_sset(gens, {"cell": [(word, BASEPOINT)] * (n + 1)}, truncation_dim, f"S{n}")


NAMED_MODELS: dict[str, Callable[[int], SSet]] = {
    "point": point,
    "S0": sphere0,
    "S1": sphere1,
    "S2": sphere2,
}


def named(name: str, truncation_dim: int = 4) -> SSet:
    try:
        return NAMED_MODELS[name](truncation_dim)
    except KeyError:
        raise SimplicialError(f"unknown model {name!r}") from None


# -- maps ------------------------------------------------------------------


@dataclass(frozen=True)
class SSetMap:
    source: SSet
    target: SSet
    assignment: Mapping[str, SimplexRef]

    def __call__(self, x: SimplexRef) -> SimplexRef:
        img = self.assignment[x.generator]
        return SimplexRef(x.dim, compose_words(x.word, img.word), img.generator)

    def check(self) -> list[str]:
        """Violations of basepoint preservation and face compatibility."""
        bad = []
        if not self.target.is_basepoint(self.assignment[BASEPOINT]):
            bad.append("basepoint not preserved")
        for g in self.source.all_generators():
            img = self.assignment.get(g)
            if img is None:
                bad.append(f"{g!r} unassigned")
                continue
            d = self.source.dim_of(g)
            if img.dim != d:
                bad.append(f"{g!r} sent to dimension {img.dim}")
                continue
            x = SimplexRef(d, (), g)
            for i in range(d + 1 if d else 0):
                if self(self.source.face(x, i)) != self.target.face(img, i):
                    bad.append(f"d_{i} fails on {g!r}")
        return bad

    def then(self, other: "SSetMap") -> "SSetMap":
        return SSetMap(self.source, other.target, {g: other(r) for g, r in self.assignment.items()})


def identity_map(s: SSet) -> SSetMap:
    return SSetMap(s, s, {g: SimplexRef(s.dim_of(g), (), g) for g in s.all_generators()})


# -- generic point spaces and materialization --------------------------------


def decompose(p, d: int, face, degen) -> tuple[Word, object]:
    """Split a simplex ``p`` of a point model as ``s_word(y)`` with ``y`` nondegenerate."""
    for i in range(d):
        y = face(p, i, d)
        if degen(y, i, d - 1) == p:
            w, z = decompose(y, d - 1, face, degen)
            return degenerate(i, w), z
    return (), p


def materialize(
    points_by_dim: Callable[[int], Iterable],
    face: Callable,
    degen: Callable,
    base: Callable[[int], object],
    max_dim: int,
    name: str = "",
    label: Callable[[object], str] = repr,
    phi: Callable[[object], int] | None = None,
):
    """Turn a point-level simplicial model into an :class:`SSet`.

    ``points_by_dim(d)`` must list every simplex of dimension ``d`` (closed
    under faces within the enumerated range).  Returns ``(sset, ids, phi_map)``
    where ``ids`` maps nondegenerate points to generator ids.
    """
    ids: dict = {}
    gens: list[list[str]] = []
    faces: dict[str, tuple[SimplexRef, ...]] = {}
    phis: dict[str, int] = {}
    used: set[str] = set()
    pending = []
    for d in range(max_dim + 1):
        layer = []
        pts = sorted(set(points_by_dim(d)))
        for p in pts:
            w, y = decompose(p, d, face, degen)
            if w:
                continue
            if p == base(d):
                gid = BASEPOINT
            else:
                gid = label(p)
                if gid in used or gid == BASEPOINT:
                    gid = f"{gid}#{len(used)}"
            used.add(gid)
            ids[p] = gid
            layer.append(gid)
            if phi is not None:
                phis[gid] = phi(p)
            if d:
                pending.append((p, d, gid))
        gens.append(layer)
    for p, d, gid in pending:
        fs = []
        for i in range(d + 1):
            q = face(p, i, d)
            w, y = decompose(q, d - 1, face, degen)
            if y not in ids:
                raise SimplicialError(f"face {y!r} of {p!r} was not enumerated")
            fs.append(SimplexRef(d - 1, w, ids[y]))
        faces[gid] = tuple(fs)
    return SSet(tuple(tuple(g) for g in gens), faces, max_dim, name), ids, phis


def _ref_point(x: SimplexRef):
    return () if x.generator == BASEPOINT else (x.word, x.generator)


def _point_ref(p, d: int) -> SimplexRef:
    if p == ():
        return SimplexRef(d, tuple(range(d - 1, -1, -1)), BASEPOINT)
    return SimplexRef(d, p[0], p[1])


class _RefModel:
    """Point model over an :class:`SSet`: points are ``(word, gen)`` or ``()``."""

    def __init__(self, s: SSet):
        self.s = s

    def face(self, p, i, d):
        if p == ():
            return ()
        return _ref_point(self.s.face(_point_ref(p, d), i))

    def degen(self, p, i, d):
        if p == ():
            return ()
        return (degenerate(i, p[0]), p[1])

    def points(self, d):
        for x in self.s.simplices(d):
            yield _ref_point(x)


def product_with_pairs(a: SSet, b: SSet) -> tuple[SSet, dict[str, tuple[SimplexRef, SimplexRef]]]:
    """Product together with the component pair behind every generator id."""
    if a.truncation_dim != b.truncation_dim:
        raise SimplicialError("truncation mismatch in product")
    D = a.truncation_dim
    ma, mb = _RefModel(a), _RefModel(b)

    def pts(d):
        A = list(ma.points(d))
        B = list(mb.points(d))
        for x in A:
            for y in B:
                yield (x, y) if (x, y) != ((), ()) else ()

    def face(p, i, d):
        if p == ():
            return ()
        q = (ma.face(p[0], i, d), mb.face(p[1], i, d))
        return () if q == ((), ()) else q

    def degen(p, i, d):
        if p == ():
            return ()
        return (ma.degen(p[0], i, d), mb.degen(p[1], i, d))

    s, ids, _ = materialize(pts, face, degen, lambda d: (), D, f"({a.name}x{b.name})", label=_pair_label)
    pairs = {}
    for p, gid in ids.items():
        d = s.dim_of(gid)
        if p == ():
            pairs[gid] = (a.basepoint(d), b.basepoint(d))
        else:
            pairs[gid] = (_point_ref(p[0], d), _point_ref(p[1], d))
    return s, pairs


def product(a: SSet, b: SSet) -> SSet:
    """Levelwise product; generators are the Eilenberg-Zilber nondegenerate pairs."""
    return product_with_pairs(a, b)[0]


def _ref_label(p) -> str:
    if p == ():
        return "*"
    w, g = p
    return g if not w else "s" + "".join(map(str, w)) + g


def _pair_label(p) -> str:
    return f"({_ref_label(p[0])},{_ref_label(p[1])})"


def wedge_many(spaces: Sequence[SSet], tags: Sequence[str] | None = None) -> SSet:
    """Wedge of several spaces; the generator ``g`` of summand ``t`` becomes ``"t:g"``."""
    if not spaces:
        raise SimplicialError("wedge of no spaces")
    tags = [str(t) for t in (tags or range(1, len(spaces) + 1))]
    top = spaces[0].truncation_dim
    if any(s.truncation_dim != top for s in spaces):
        raise SimplicialError("truncation mismatch in wedge")

    def tag(side, r: SimplexRef) -> SimplexRef:
        if r.generator == BASEPOINT:
            return r
        return SimplexRef(r.dim, r.word, f"{side}:{r.generator}")

    gens = []
    faces = {}
    for d in range(top + 1):
        layer = [BASEPOINT] if d == 0 else []
        for side, s in zip(tags, spaces):
            for g in s.gens(d):
                if g == BASEPOINT:
                    continue
                layer.append(f"{side}:{g}")
                if d:
                    faces[f"{side}:{g}"] = tuple(tag(side, f) for f in s.faces[g])
        gens.append(tuple(layer))
    return SSet(tuple(gens), faces, top, "(" + "v".join(s.name for s in spaces) + ")")


def wedge(a: SSet, b: SSet) -> SSet:
    return wedge_many([a, b], ("L", "R"))


def wedge_many_maps(spaces: Sequence[SSet], w: SSet, tags: Sequence[str] | None = None):
    """Inclusions of and collapses onto each summand of ``w = wedge_many(spaces, tags)``."""
    tags = [str(t) for t in (tags or range(1, len(spaces) + 1))]
    incs, cols = [], []
    for side, s in zip(tags, spaces):
        assign = {
            g: SimplexRef(s.dim_of(g), (), g if g == BASEPOINT else f"{side}:{g}")
            for g in s.all_generators()
        }
        incs.append(SSetMap(s, w, assign))
        assign = {}
        for g in w.all_generators():
            d = w.dim_of(g)
            if g != BASEPOINT and g.startswith(side + ":"):
                assign[g] = SimplexRef(d, (), g[len(side) + 1 :])
            else:
                assign[g] = s.basepoint(d)
        cols.append(SSetMap(w, s, assign))
    return incs, cols


def wedge_inclusions(a: SSet, b: SSet, w: SSet) -> tuple[SSetMap, SSetMap]:
    incs, _ = wedge_many_maps([a, b], w, ("L", "R"))
    return incs[0], incs[1]


def wedge_collapses(a: SSet, b: SSet, w: SSet) -> tuple[SSetMap, SSetMap]:
    """The two collapse maps ``a v b -> a`` and ``a v b -> b``."""
    _, cols = wedge_many_maps([a, b], w, ("L", "R"))
    return cols[0], cols[1]


def quotient(s: SSet, group: Sequence[SSetMap]) -> SSet:
    """Levelwise orbit space of ``s`` under the group generated by ``group``.

    Orbit representatives are the lexicographically least simplices
    ``(generator id, word)`` in the orbit.
    """
    model = _RefModel(s)
    for g in group:
        if g.source is not s or g.target is not s:
            raise SimplicialError("group elements must be endomorphisms")
        if g.check():
            raise SimplicialError("group element is not a simplicial map")

    def orbit(p, d):
        seen = {p}
        todo = [p]
        while todo:
            q = todo.pop()
            for g in group:
                r = _ref_point(g(_point_ref(q, d)))
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return seen

    cache: dict = {}

    def rep(p, d):
        key = (p, d)
        if key not in cache:
            o = orbit(p, d)
            best = min(o, key=lambda q: (0, "", ()) if q == () else (1, q[1], q[0]))
            for q in o:
                cache[(q, d)] = best
        return cache[key]

    def pts(d):
        return {rep(p, d) for p in model.points(d)}

    def face(p, i, d):
        return rep(model.face(p, i, d), d - 1)

    def degen(p, i, d):
        return rep(model.degen(p, i, d), d + 1)

    out, _, _ = materialize(pts, face, degen, lambda d: (), s.truncation_dim, f"{s.name}/G", label=_ref_label)
    return out


def swap_map(a: SSet) -> tuple[SSet, SSetMap]:
    """``a x a`` together with its coordinate swap."""
    prod, pairs = product_with_pairs(a, a)
    back = {v: k for k, v in pairs.items()}
    assign = {g: SimplexRef(prod.dim_of(g), (), back[(y, x)]) for g, (x, y) in pairs.items()}
    return prod, SSetMap(prod, prod, assign)


# -- pi_0 and homology -------------------------------------------------------


@dataclass(frozen=True)
class PointedSet:
    """Components as sorted tuples of vertex ids; ``base`` indexes the basepoint class."""

    classes: tuple[tuple[str, ...], ...]
    base: int

    def __len__(self) -> int:
        return len(self.classes)


def pi0(s: SSet) -> PointedSet:
    parent = {v: v for v in s.gens(0)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    if s.truncation_dim >= 1:
        for e in s.gens(1):
            a, b = (find(f.generator) for f in s.faces[e])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[str, list[str]] = {}
    for v in s.gens(0):
        groups.setdefault(find(v), []).append(v)
    classes = sorted(tuple(sorted(g)) for g in groups.values())
    base = next(i for i, c in enumerate(classes) if BASEPOINT in c)
    return PointedSet(tuple(classes), base)


def chain_basis(s: SSet, d: int, reduced: bool = True) -> list[str]:
    gens = list(s.gens(d))
    if reduced and d == 0:
        gens = [g for g in gens if g != BASEPOINT]
    return gens


def boundary_matrix(s: SSet, d: int, reduced: bool = True, order: Sequence[Sequence[str]] | None = None) -> np.ndarray:
    """Matrix of ``sum (-1)^i d_i`` from dimension ``d`` to ``d-1`` on nondegenerate chains."""
    cols = list(order[d]) if order else chain_basis(s, d, reduced)
    rows = list(order[d - 1]) if order else chain_basis(s, d - 1, reduced)
    index = {g: r for r, g in enumerate(rows)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for c, g in enumerate(cols):
        for i, f in enumerate(s.faces[g]):
            if f.word or f.generator not in index:
                continue
            mat[index[f.generator], c] += -1 if i % 2 else 1
    return mat


def homology(s: SSet, max_degree: int, reduced: bool = True, order=None) -> list[AbGroup]:
    """Integer homology of the normalized chain complex in degrees ``0..max_degree``."""
    if s.truncation_dim < max_degree + 1:
        raise SimplicialError(
            f"homology in degree {max_degree} needs truncation >= {max_degree + 1}, have {s.truncation_dim}"
        )
    ranks = {}
    divisors = {}
    for d in range(1, max_degree + 2):
        divs, r = smith_normal_form(boundary_matrix(s, d, reduced, order))
        ranks[d] = r
        divisors[d] = divs
    out = []
    for d in range(max_degree + 1):
        n = len(order[d]) if order else len(chain_basis(s, d, reduced))
        free = n - ranks.get(d, 0) - ranks[d + 1]
        out.append(AbGroup(free, tuple(x for x in divisors[d + 1] if x > 1)))
    return out
