"""Filtered pointed simplicial sets: a filtration value on every generator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .simplicial import (
    BASEPOINT,
    SimplexRef,
    SimplicialError,
    SSet,
    SSetMap,
    product_with_pairs,
    wedge,
    wedge_many,
)


@dataclass(frozen=True)
class FilteredSSet:
    space: SSet
    phi: Mapping[str, int]
    name: str = ""

    def __post_init__(self):
        s = self.space
        for g in s.all_generators():
            if g not in self.phi:
                raise SimplicialError(f"no filtration value for {g!r}")
            v = self.phi[g]
            if v < 0:
                raise SimplicialError("filtration values are nonnegative")
            if (v == 0) != (g == BASEPOINT):
                raise SimplicialError(f"phi({g!r}) = {v}: only the basepoint sits in filtration 0")
            if s.dim_of(g):
                for f in s.faces[g]:
                    if self.phi[f.generator] > v:
                        raise SimplicialError(f"face of {g!r} has larger filtration")

    def value(self, x: SimplexRef) -> int:
        return self.phi[x.generator]

    @property
    def truncation_dim(self) -> int:
        return self.space.truncation_dim

    def __repr__(self) -> str:
        return f"<Filtered {self.name or self.space.name} counts {self.space.counts()}>"


def trivially_filtered(s: SSet) -> FilteredSSet:
    """Filtration 1 on every non-basepoint simplex."""
    return FilteredSSet(s, {g: 0 if g == BASEPOINT else 1 for g in s.all_generators()}, s.name)


def truncate(x: FilteredSSet, m: int) -> FilteredSSet:
    if m < 0:
        raise ValueError("filtration level must be >= 0")
    s = x.space
    keep = [tuple(g for g in gens if x.phi[g] <= m) for gens in s.generators]
    kept = {g for gens in keep for g in gens}
    faces = {g: s.faces[g] for g in kept if g in s.faces}
    sub = SSet(tuple(keep), faces, s.truncation_dim, f"filt{m}({s.name})")
    return FilteredSSet(sub, {g: x.phi[g] for g in kept}, sub.name)


def wedge_filtered(x: FilteredSSet, y: FilteredSSet) -> FilteredSSet:
    w = wedge(x.space, y.space)
    phi = {BASEPOINT: 0}
    for g in w.all_generators():
        if g == BASEPOINT:
            continue
        side, inner = g.split(":", 1)
        phi[g] = (x if side == "L" else y).phi[inner]
    return FilteredSSet(w, phi, w.name)


def wedge_many_filtered(xs, tags=None) -> FilteredSSet:
    """Wedge of several filtered spaces, summands tagged ``1, 2, ...`` by default."""
    tags = [str(t) for t in (tags or range(1, len(xs) + 1))]
    w = wedge_many([x.space for x in xs], tags)
    by_tag = dict(zip(tags, xs))
    phi = {BASEPOINT: 0}
    for g in w.all_generators():
        if g != BASEPOINT:
            side, inner = g.split(":", 1)
            phi[g] = by_tag[side].phi[inner]
    return FilteredSSet(w, phi, w.name)


def product_filtered(x: FilteredSSet, y: FilteredSSet) -> FilteredSSet:
    """Product with ``phi(a, b) = phi(a) + phi(b)``."""
    p, pairs = product_with_pairs(x.space, y.space)
    phi = {g: x.value(a) + y.value(b) for g, (a, b) in pairs.items()}
    return FilteredSSet(p, phi, p.name)


@dataclass
class FilteredMapReport:
    ok: bool
    violations: list[str] = field(default_factory=list)


def is_filtered_map(f: SSetMap, x: FilteredSSet, y: FilteredSSet) -> FilteredMapReport:
    bad = list(f.check())
    for g in x.space.all_generators():
        img = f.assignment[g]
        if y.phi[img.generator] > x.phi[g]:
            bad.append(f"phi increases on {g!r}: {x.phi[g]} -> {y.phi[img.generator]}")
    return FilteredMapReport(not bad, bad)
