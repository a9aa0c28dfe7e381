"""Smith normal form over the integers and the lattice helpers built on it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _accel

Matrix = Sequence[Sequence[int]]


def _smith_diagonal_exact(rows: list[list[int]]) -> list[int]:
    # Same elimination as the int64 kernel, on Python integers.
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    out: list[int] = []
    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(a[i][j])
                if v and (piv is None or v < piv[0]):
                    piv = (v, i, j)
        if piv is None:
            break
        _, bi, bj = piv
        a[t], a[bi] = a[bi], a[t]
        for r in a:
            r[t], r[bj] = r[bj], r[t]
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    ri, rt = a[i], a[t]
                    for j in range(t, n):
                        ri[j] -= q * rt[j]
                    if ri[t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for r in a:
                            r[t], r[j] = r[j], r[t]
                        dirty = True
            if dirty:
                continue
            p = a[t][t]
            bad = next(
                (i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            for j in range(t, n):
                a[t][j] += a[bad][j]
        out.append(abs(a[t][t]))
        t += 1
    return out


def smith_normal_form(mat) -> tuple[list[int], int]:
    """Invariant factors ``d1 | d2 | ...`` (nonzero only) and the rank."""
    arr = np.asarray(mat, dtype=object)
    if arr.ndim != 2 or arr.size == 0:
        return [], 0
    if all(abs(int(v)) < _accel.OVERFLOW_LIMIT for v in arr.flat):
        diag, ok = _accel.smith_diagonal(arr.astype(np.int64))
        if ok:
            divs = [int(d) for d in diag]
            return divs, len(divs)
    divs = _smith_diagonal_exact([[int(v) for v in row] for row in arr.tolist()])
    return divs, len(divs)


@dataclass(frozen=True)
class AbGroup:
    """Finitely generated abelian group ``Z^rank + sum Z/d_i``."""

    rank: int = 0
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        tors = tuple(int(t) for t in self.torsion)
        if any(t < 2 for t in tors):
            raise ValueError("torsion coefficients must be >= 2")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError(f"torsion {tors} is not a divisibility chain")
        object.__setattr__(self, "torsion", tors)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def cokernel(mat, n_rows: int | None = None) -> AbGroup:
    """``Z^rows / column span``."""
    arr = np.asarray(mat, dtype=object)
    rows = n_rows if n_rows is not None else (arr.shape[0] if arr.ndim == 2 else 0)
    if arr.ndim != 2 or arr.size == 0:
        return AbGroup(rows)
    divs, r = smith_normal_form(arr)
    return AbGroup(rows - r, tuple(d for d in divs if d > 1))


def integer_kernel(mat: Matrix, n_cols: int) -> list[list[int]]:
    """A Z-basis of ``{x in Z^n : A x = 0}`` via column Hermite reduction."""
    a = [list(map(int, r)) for r in mat]
    n = n_cols
    # v tracks the accumulated unimodular column operations.
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop_swap(c1, c2):
        for r in a:
            r[c1], r[c2] = r[c2], r[c1]
        for r in v:
            r[c1], r[c2] = r[c2], r[c1]

    def colop_sub(dst, src, q):
        for r in a:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]

    piv_col = 0
    for row in range(len(a)):
        if piv_col >= n:
            break
        while True:
            nz = [c for c in range(piv_col, n) if a[row][c]]
            if not nz:
                break
            c0 = min(nz, key=lambda c: abs(a[row][c]))
            if c0 != piv_col:
                colop_swap(c0, piv_col)
            done = True
            for c in range(piv_col + 1, n):
                if a[row][c]:
                    colop_sub(c, piv_col, a[row][c] // a[row][piv_col])
                    if a[row][c]:
                        done = False
            if done:
                piv_col += 1
                break
    return [[v[i][c] for i in range(n)] for c in range(piv_col, n)]


def lattice_invariants(gens: Iterable[Sequence[int]], dim: int) -> tuple[int, int]:
    """(rank, product of invariant factors) of the lattice spanned by ``gens``."""
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        return 0, 1
    divs, r = smith_normal_form(np.array(gens, dtype=object).reshape(len(gens), dim))
    prod = 1
    for d in divs:
        prod *= d
    return r, prod


def same_lattice(small: Sequence[Sequence[int]], big: Sequence[Sequence[int]], dim: int) -> bool:
    """Decide ``span(small) == span(big)`` given ``span(small) <= span(big)``."""
    return lattice_invariants(small, dim) == lattice_invariants(big, dim)
