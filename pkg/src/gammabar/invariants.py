"""Monoid presentations, group completion, and homological connectivity of maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .simplicial import BASEPOINT, SimplicialError, SSetMap, boundary_matrix, chain_basis
from .snf import AbGroup, cokernel, integer_kernel, same_lattice, smith_normal_form


@dataclass(frozen=True)
class FPCommMonoid:
    """Commutative monoid on ``generators`` modulo ``lhs = rhs`` relations."""

    generators: tuple[str, ...]
    relations: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()

    def __post_init__(self):
        g = len(self.generators)
        rels = tuple((tuple(a), tuple(b)) for a, b in self.relations)
        for a, b in rels:
            if len(a) != g or len(b) != g:
                raise ValueError("relation vectors must have one entry per generator")
            if min(a + b, default=0) < 0:
                raise ValueError("relation vectors are natural-number vectors")
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", rels)

    @classmethod
    def free(cls, generators: Sequence[str]) -> "FPCommMonoid":
        return cls(tuple(generators))

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def relation_matrix(self) -> np.ndarray:
        g = len(self.generators)
        nontrivial = [(a, b) for a, b in self.relations if a != b]
        mat = np.zeros((g, len(nontrivial)), dtype=object)
        for c, (a, b) in enumerate(nontrivial):
            for r in range(g):
                mat[r, c] = a[r] - b[r]
        return mat

    def as_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [[list(a), list(b)] for a, b in self.relations],
        }


def group_completion(m: FPCommMonoid) -> AbGroup:
    """``Z^g`` modulo the differences of the relations."""
    mat = m.relation_matrix()
    if mat.shape[1] == 0:
        return AbGroup(m.n_generators)
    return cokernel(mat, m.n_generators)


def completion_map_is_iso(
    source: FPCommMonoid, target: FPCommMonoid, images: Sequence[Sequence[int]]
) -> dict:
    """Decide whether a monoid map (generator images) is an iso after completion.

    A surjection between isomorphic finitely generated abelian groups is an
    isomorphism, so surjectivity plus equal invariants settles it.
    """
    g2 = target.n_generators
    cols = [list(v) for v in images]
    rel = target.relation_matrix()
    for c in range(rel.shape[1]):
        cols.append([int(rel[r, c]) for r in range(g2)])
    if g2 == 0:
        surjective = True
    elif not cols:
        surjective = False
    else:
        mat = np.array(cols, dtype=object).T
        surjective = cokernel(mat, g2).is_zero
    gs, gt = group_completion(source), group_completion(target)
    return {
        "source": str(gs),
        "target": str(gt),
        "surjective": surjective,
        "same_invariants": gs == gt,
        "iso": surjective and gs == gt,
    }


# -- homology of maps ----------------------------------------------------------


def chain_map_matrix(f: SSetMap, d: int) -> np.ndarray:
    cols = chain_basis(f.source, d)
    rows = chain_basis(f.target, d)
    index = {g: r for r, g in enumerate(rows)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for c, g in enumerate(cols):
        img = f.assignment[g]
        if not img.word and img.generator != BASEPOINT:
            mat[index[img.generator], c] = 1
    return mat


def _columns(mat: np.ndarray) -> list[list[int]]:
    return [[int(v) for v in mat[:, c]] for c in range(mat.shape[1])]


@dataclass
class DegreeVerdict:
    degree: int
    source: str
    target: str
    cone: str
    surjective: bool
    injective: bool

    @property
    def verdict(self) -> str:
        if self.surjective and self.injective:
            return "iso"
        if self.surjective:
            return "surjective"
        return "fails"

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "source": self.source,
            "target": self.target,
            "cone": self.cone,
            "surjective": self.surjective,
            "injective": self.injective,
            "verdict": self.verdict,
        }


@dataclass
class ConnectivityReport:
    degrees: list[DegreeVerdict] = field(default_factory=list)
    connectivity: int = -1
    exhausted: bool = False
    input_connectivity: int | None = None

    @property
    def witnessed_c(self) -> int | None:
        """``2n - k`` for the checked range (``n`` = input connectivity + 1)."""
        if self.input_connectivity is None:
            return None
        return 2 * (self.input_connectivity + 1) - self.connectivity

    def as_dict(self) -> dict:
        return {
            "degrees": [v.as_dict() for v in self.degrees],
            "connectivity": self.connectivity,
            "connectivity_is_lower_bound": self.exhausted,
            "witnessed_c": self.witnessed_c,
        }


def _reduced_counts(s, d):
    return len(chain_basis(s, d)) if d >= 0 else 0


def cone_homology(f: SSetMap, max_degree: int) -> list[AbGroup]:
    """Reduced homology of the mapping cone of ``f``."""
    X, Y = f.source, f.target

    def cone_boundary(n):
        # Cone_n = C_{n-1}(X) + C_n(Y)
        xs, ys = _reduced_counts(X, n - 1), _reduced_counts(Y, n)
        xt, yt = _reduced_counts(X, n - 2), _reduced_counts(Y, n - 1)
        mat = np.zeros((xt + yt, xs + ys), dtype=np.int64)
        if n - 1 >= 1 and xs and xt:
            mat[:xt, :xs] = -boundary_matrix(X, n - 1)
        if n - 1 >= 0 and xs and yt:
            mat[xt:, :xs] = chain_map_matrix(f, n - 1)
        if n >= 1 and ys and yt:
            mat[xt:, xs:] = boundary_matrix(Y, n)
        return mat

    out = []
    ranks = {}
    divs = {}
    for n in range(0, max_degree + 2):
        if n == 0:
            ranks[0] = 0
            divs[0] = []
            continue
        dv, r = smith_normal_form(cone_boundary(n))
        ranks[n], divs[n] = r, dv
    for n in range(max_degree + 1):
        size = _reduced_counts(X, n - 1) + _reduced_counts(Y, n)
        out.append(AbGroup(size - ranks[n] - ranks[n + 1], tuple(x for x in divs[n + 1] if x > 1)))
    return out


def connectivity_compare(f: SSetMap, max_degree: int, input_connectivity: int | None = None) -> ConnectivityReport:
    """Per-degree comparison of ``H_*(f)`` in reduced homology."""
    from .simplicial import homology

    X, Y = f.source, f.target
    need = max_degree + 1
    if X.truncation_dim < need or Y.truncation_dim < need:
        raise SimplicialError(f"connectivity up to degree {max_degree} needs truncation >= {need}")
    hx = homology(X, max_degree)
    hy = homology(Y, max_degree)
    hc = cone_homology(f, max_degree)
    report = ConnectivityReport(input_connectivity=input_connectivity)
    for n in range(max_degree + 1):
        nx, ny = _reduced_counts(X, n), _reduced_counts(Y, n)
        dx = boundary_matrix(X, n) if n >= 1 else np.zeros((0, nx), dtype=np.int64)
        dy = boundary_matrix(Y, n) if n >= 1 else np.zeros((0, ny), dtype=np.int64)
        zx = integer_kernel(dx.tolist(), nx) if dx.shape[0] else [[int(i == j) for i in range(nx)] for j in range(nx)]
        zy = integer_kernel(dy.tolist(), ny) if dy.shape[0] else [[int(i == j) for i in range(ny)] for j in range(ny)]
        bx = _columns(boundary_matrix(X, n + 1))
        by = _columns(boundary_matrix(Y, n + 1))
        F = chain_map_matrix(f, n)
        fz = [[int(v) for v in F @ np.array(z, dtype=np.int64)] for z in zx] if nx else []
        surjective = same_lattice(fz + by, zy, ny) if ny else True
        # kernel of H_n(f): cycles c with f(c) a boundary
        if zx:
            block = [list(col) for col in fz] + [[-v for v in col] for col in by]
            rows = [[block[c][r] for c in range(len(block))] for r in range(ny)]
            ker = integer_kernel(rows, len(block)) if ny else [[int(i == j) for i in range(len(block))] for j in range(len(block))]
            kx = []
            for vec in ker:
                coeff = vec[: len(zx)]
                kx.append([sum(coeff[j] * zx[j][r] for j in range(len(zx))) for r in range(nx)])
            injective = same_lattice(bx, kx, nx) if nx else True
        else:
            injective = True
        report.degrees.append(DegreeVerdict(n, str(hx[n]), str(hy[n]), str(hc[n]), surjective, injective))
    k = -1
    for v in report.degrees:
        if not v.surjective:
            break
        k = v.degree
        if not v.injective:
            break
    report.connectivity = k
    report.exhausted = k == max_degree and report.degrees[-1].injective
    return report
