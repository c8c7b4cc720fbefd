"""Reduced simplicial homology over Q or GF(p), by exact rank computations.

Faces are handled internally as bitmasks over the sorted vertex list.  Ranks use
sparse row echelon form: fraction-free integer elimination (rows rescaled by their
content) over Q, reduction mod p over prime fields.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class FieldSpec:
    """``characteristic == 0`` means Q, otherwise GF(characteristic)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"{p} is not prime")

    def __str__(self):
        if self.characteristic == 0:
            return "Q"
        if self.characteristic == 2:
            return "F2"
        return f"Fp:{self.characteristic}"


def prime_field(p: int) -> FieldSpec:
    return FieldSpec(p)


def parse_field(text: str) -> FieldSpec:
    """``Q``, ``F2`` or ``Fp:<prime>``."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    if t == "F2":
        return GF2
    if t.startswith("Fp:"):
        return FieldSpec(int(t[3:]))
    raise ValueError(f"unknown field {text!r}; use Q, F2 or Fp:P")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


QQ = FieldSpec(0)
GF2 = FieldSpec(2)


# -- rank ---------------------------------------------------------------------

def _reduce_q(row: dict, pivots: dict) -> dict:
    while row:
        c = min(row)
        prow = pivots.get(c)
        if prow is None:
            return row
        a, b = prow[c], row[c]
        new = {k: a * v for k, v in row.items()}
        for k, v in prow.items():
            x = new.get(k, 0) - b * v
            if x:
                new[k] = x
            else:
                new.pop(k, None)
        if new:
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {k: v // g for k, v in new.items()}
        row = new
    return row


def _reduce_p(row: dict, pivots: dict, p: int) -> dict:
    row = {k: v % p for k, v in row.items() if v % p}
    while row:
        c = min(row)
        prow = pivots.get(c)
        if prow is None:
            inv = pow(row[c], -1, p)
            return {k: (v * inv) % p for k, v in row.items()}
        b = row[c]
        for k, v in prow.items():
            x = (row.get(k, 0) - b * v) % p
            if x:
                row[k] = x
            else:
                row.pop(k, None)
    return row


def sparse_rank(rows: Iterable[dict], field: FieldSpec = QQ) -> int:
    """Rank of a matrix given as sparse integer rows ``{column: value}``."""
    pivots: dict = {}
    p = field.characteristic
    for row in rows:
        if p == 0:
            r = _reduce_q({k: int(v) for k, v in row.items() if v}, pivots)
        else:
            r = _reduce_p(dict(row), pivots, p)
        if r:
            pivots[min(r)] = r
    return len(pivots)


def rank(matrix, field: FieldSpec = QQ) -> int:
    """Exact rank of an integer matrix (nested lists or ndarray) over ``field``."""
    m = np.asarray(matrix, dtype=object)
    if m.size == 0:
        return 0
    if m.ndim != 2:
        raise ValueError("rank needs a 2-d matrix")
    rows = [{j: int(v) for j, v in enumerate(r) if v != 0} for r in m]
    return sparse_rank(rows, field)


# -- complexes -------------------------------------------------------------------

@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of vertex subsets, stored by its facets.

    ``facets == frozenset()`` is the void complex (no faces at all), while
    ``facets == {frozenset()}`` is the irrelevant complex whose only face is the
    empty set.
    """

    vertices: tuple
    facets: frozenset

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable], vertices: Iterable | None = None):
        fs = {frozenset(f) for f in facets}
        maximal = frozenset(f for f in fs if not any(f < g for g in fs))
        verts = set().union(*maximal) if maximal else set()
        if vertices is not None:
            vs = set(vertices)
            if not verts <= vs:
                raise ValueError("facet uses a vertex outside the vertex list")
            verts = vs
        return cls(tuple(sorted(verts)), maximal)

    @classmethod
    def void(cls, vertices: Iterable = ()):
        return cls(tuple(sorted(vertices)), frozenset())

    @classmethod
    def irrelevant(cls, vertices: Iterable = ()):
        return cls(tuple(sorted(vertices)), frozenset([frozenset()]))

    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int | None:
        if self.is_void():
            return None
        return max(len(f) for f in self.facets) - 1

    def masks(self) -> list[int]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return [sum(1 << pos[v] for v in f) for f in self.facets]

    def faces(self, k: int | None = None) -> list[frozenset]:
        """All faces, or those of dimension ``k``, in a deterministic order."""
        by_dim = faces_by_dim(self.masks())
        keys = sorted(by_dim) if k is None else [k]
        out = []
        for kk in keys:
            for m in by_dim.get(kk, []):
                out.append(frozenset(v for i, v in enumerate(self.vertices) if m >> i & 1))
        return out

    def f_vector(self) -> dict[int, int]:
        """Number of faces per dimension, the empty face counted at ``-1``."""
        return {k: len(v) for k, v in sorted(faces_by_dim(self.masks()).items())}

    def cone(self, apex) -> "SimplicialComplex":
        if apex in self.vertices:
            raise ValueError("apex must be a new vertex")
        return SimplicialComplex.from_facets((f | {apex} for f in self.facets),
                                             self.vertices + (apex,))


def faces_by_dim(facet_masks: Iterable[int]) -> dict[int, list[int]]:
    faces = set()
    for m in facet_masks:
        sub = m
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & m
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(f.bit_count() - 1, []).append(f)
    for v in by_dim.values():
        v.sort()
    return by_dim


def _boundary_rows(faces_k: list[int], index_km1: dict) -> list[dict]:
    rows = []
    for f in faces_k:
        row = {}
        sign = 1
        m = f
        while m:
            low = m & -m
            row[index_km1[f ^ low]] = sign
            sign = -sign
            m ^= low
        rows.append(row)
    return rows


def reduced_homology_masks(facet_masks: Iterable[int], field: FieldSpec = QQ,
                           check: bool = True) -> dict[int, int]:
    """Reduced Betti numbers of the complex generated by bitmask facets.

    Returns ``{degree: dim}`` for degrees ``-1 .. dim``; empty for the void complex.
    """
    facet_masks = list(facet_masks)
    if not facet_masks:
        return {}
    by_dim = faces_by_dim(facet_masks)
    top = max(by_dim)
    ranks = {}
    for k in range(0, top + 1):
        index = {f: i for i, f in enumerate(by_dim[k - 1])}
        ranks[k] = sparse_rank(_boundary_rows(by_dim[k], index), field)
    betti = {}
    for k in range(-1, top + 1):
        betti[k] = len(by_dim[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0)
    if check:
        chi_faces = sum((-1) ** (k % 2) * len(v) for k, v in by_dim.items())
        chi_betti = sum((-1) ** (k % 2) * b for k, b in betti.items())
        assert chi_faces == chi_betti, "Euler-Poincare check failed"
    return betti


def reduced_betti_numbers(c: SimplicialComplex, field: FieldSpec = QQ) -> dict[int, int]:
    """``dim H~_k(c; field)`` for ``k = -1 .. dim c``."""
    return reduced_homology_masks(c.masks(), field)
