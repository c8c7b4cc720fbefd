"""Multigraded Betti numbers of monomial quotients and the depth they determine.

The main route computes ``beta_{i,b}(I)`` as the reduced homology of the upper
Koszul simplicial complex at every multidegree ``b`` of the lcm lattice.  An
independent route through the Taylor complex exists for cross-checking on ideals
with few generators.  Depth follows from the projective dimension by
Auslander-Buchsbaum.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from .graph import Graph
from .homology import QQ, FieldSpec, SimplicialComplex, reduced_homology_masks, sparse_rank
from .monomials import MonomialIdeal, edge_ideal, format_monomial, power

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000
TAYLOR_MAX_GENS = 14
BITMAP_LIMIT = 400_000_000


class BudgetExceeded(RuntimeError):
    """The lcm lattice grew past the configured candidate cap."""

    def __init__(self, count: int, budget: int):
        super().__init__(f"more than {budget} candidate multidegrees (reached {count})")
        self.count = count
        self.budget = budget


@dataclass
class BettiTable:
    """Betti numbers of ``R/I``: ``entries[(i, b)] = dim`` for nonzero values."""

    entries: dict
    num_vars: int
    field: FieldSpec = QQ

    def total(self) -> list[int]:
        """Total Betti numbers ``beta_0, beta_1, ...`` of ``R/I``."""
        if not self.entries:
            return []
        out = [0] * (self.projective_dimension() + 1)
        for (i, _), v in self.entries.items():
            out[i] += v
        return out

    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    def degrees(self, i: int | None = None) -> list[tuple]:
        return sorted(b for (j, b) in self.entries if i is None or j == i)

    def to_tsv(self) -> str:
        lines = ["i\tmultidegree\tdim"]
        for (i, b), v in sorted(self.entries.items()):
            lines.append(f"{i}\t{','.join(map(str, b))}\t{v}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries and self.num_vars == other.num_vars


@dataclass(frozen=True)
class DepthResult:
    depth: int
    projective_dimension: int
    field: FieldSpec
    witness_degree: tuple
    num_vars: int
    betti: BettiTable | None = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        assert self.depth + self.projective_dimension == self.num_vars
        assert 0 <= self.depth <= self.num_vars


def _check_proper(i: MonomialIdeal):
    if i.is_unit():
        raise ValueError("the unit ideal has no quotient to resolve")


# -- lcm lattice -----------------------------------------------------------------

def _encoder(upper: np.ndarray):
    radix = upper.astype(np.int64) + 1
    if np.prod(radix.astype(float)) >= 2.0 ** 62:
        raise OverflowError("multidegree box too large to encode")
    weights = np.concatenate(([1], np.cumprod(radix[:-1]))).astype(np.int64)
    return lambda rows: rows @ weights


def candidate_degrees(i: MonomialIdeal, budget: int = DEFAULT_BUDGET) -> list[tuple]:
    """All lcms of nonempty subsets of the generators (the lcm lattice minus 1).

    Built by repeatedly joining the newest elements with every generator.  Seen
    degrees are tracked in a bitmap over the exponent box when it fits in memory.
    """
    _check_proper(i)
    if i.is_zero():
        raise ValueError("the zero ideal has no generator lcms")
    gens = i.array()
    n = i.num_vars
    radix = gens.max(axis=0).astype(np.int64) + 1
    encode = _encoder(radix - 1)
    box = int(np.prod(radix.astype(float)))
    bitmap = np.zeros(box, dtype=bool) if box <= BITMAP_LIMIT else None
    frontier = np.unique(gens, axis=0)
    keys = encode(frontier)
    found = [keys]
    total = len(keys)
    if bitmap is not None:
        bitmap[keys] = True
    else:
        seen = np.sort(keys)
    if total > budget:
        raise BudgetExceeded(total, budget)
    step = max(1, 2_000_000 // max(1, len(gens) * n))
    while len(frontier):
        fresh_keys, fresh_rows = [], []
        for s in range(0, len(frontier), step):
            block = np.maximum(frontier[s:s + step, None, :], gens[None, :, :]).reshape(-1, n)
            bk = encode(block)
            if bitmap is not None:
                new = ~bitmap[bk]
                bk, idx = np.unique(bk[new], return_index=True)
                rows = block[new][idx]
                bitmap[bk] = True
            else:
                bk, idx = np.unique(bk, return_index=True)
                new = ~np.isin(bk, seen, assume_unique=True)
                bk, rows = bk[new], block[idx[new]]
            if len(bk):
                fresh_keys.append(bk)
                fresh_rows.append(rows)
        if not fresh_keys:
            break
        keys = np.concatenate(fresh_keys)
        rows = np.concatenate(fresh_rows)
        keys, idx = np.unique(keys, return_index=True)
        frontier = rows[idx]
        found.append(keys)
        total += len(keys)
        if bitmap is None:
            seen = np.union1d(seen, keys)
        if total > budget:
            raise BudgetExceeded(total, budget)
    allkeys = np.unique(np.concatenate(found))
    cols = []
    for r in radix:
        cols.append(allkeys % r)
        allkeys = allkeys // r
    decoded = np.stack(cols, axis=1)
    return sorted(tuple(int(x) for x in row) for row in decoded)


def upper_koszul_complex(i: MonomialIdeal, b: tuple) -> SimplicialComplex:
    """Complex on ``supp(b)`` with faces ``tau`` such that ``x^(b - tau)`` lies in ``i``.

    Vertices are 1-based variable indices.  Void when ``x^b`` is not in ``i``.
    """
    b = tuple(b)
    if any(e < 0 for e in b):
        raise ValueError("multidegree must be non-negative")
    supp = [k + 1 for k, e in enumerate(b) if e > 0]
    facets = []
    for g in i.gens:
        if all(x <= y for x, y in zip(g, b)):
            facets.append([k + 1 for k in range(len(b)) if g[k] < b[k]])
    if not facets:
        return SimplicialComplex.void(supp)
    return SimplicialComplex.from_facets(facets, supp)


# -- upper Koszul route ------------------------------------------------------------

def _maximal_masks(masks) -> tuple:
    ms = sorted(set(masks), key=lambda m: -m.bit_count())
    keep = []
    for m in ms:
        if not any(m & k == m for k in keep):
            keep.append(m)
    return tuple(sorted(keep))


def _compress(masks: tuple) -> tuple:
    """Renumber the used bit positions to ``0..k-1`` (keeps the complex's shape)."""
    used = 0
    for m in masks:
        used |= m
    positions = [p for p in range(used.bit_length()) if used >> p & 1]
    remap = {p: j for j, p in enumerate(positions)}
    out = []
    for m in masks:
        nm = 0
        for p, j in remap.items():
            if m >> p & 1:
                nm |= 1 << j
        out.append(nm)
    return tuple(sorted(out))


def _koszul_homology(i: MonomialIdeal, degrees: list[tuple], field: FieldSpec,
                     use_cone_filter: bool = True) -> dict:
    """``{(i_for_I, b): dim}`` over the given multidegrees."""
    gens = i.array()
    n = i.num_vars
    out: dict = {}
    cache: dict = {}
    bitval = (1 << np.arange(n, dtype=np.int64))
    all_ones = np.int64((1 << n) - 1)
    B = np.asarray(degrees, dtype=np.int64).reshape(-1, n)
    step = max(1, 4_000_000 // max(1, len(gens) * n))
    for s in range(0, len(B), step):
        blk = B[s:s + step]
        div = (gens[None, :, :] <= blk[:, None, :]).all(axis=2)
        masks = ((gens[None, :, :] < blk[:, None, :]) * bitval).sum(axis=2)
        if use_cone_filter:
            # a vertex common to every facet makes the complex a cone
            common = np.bitwise_and.reduce(np.where(div, masks, all_ones), axis=1)
            todo = np.flatnonzero(common == 0)
        else:
            todo = np.arange(len(blk))
        for r in todo:
            fm = _maximal_masks(masks[r][div[r]].tolist())
            if len(fm) == 1 and fm[0] != 0 and use_cone_filter:
                continue
            key = _compress(fm)
            h = cache.get(key)
            if h is None:
                h = reduced_homology_masks(key, field)
                cache[key] = h
            b = tuple(int(x) for x in blk[r])
            for k, v in h.items():
                if v:
                    out[(k + 1, b)] = v
    return out


def multigraded_betti(i: MonomialIdeal, field: FieldSpec = QQ,
                      budget: int = DEFAULT_BUDGET) -> BettiTable:
    """Betti table of ``R/I`` from upper Koszul homology on the lcm lattice."""
    _check_proper(i)
    n = i.num_vars
    entries = {(0, (0,) * n): 1}
    if i.is_zero():
        return BettiTable(entries, n, field)
    degs = candidate_degrees(i, budget)
    for (j, b), v in _koszul_homology(i, degs, field).items():
        entries[(j + 1, b)] = v
    return BettiTable(entries, n, field)


# -- Taylor route ---------------------------------------------------------------------

def taylor_betti(i: MonomialIdeal, field: FieldSpec = QQ,
                 max_gens: int = TAYLOR_MAX_GENS) -> BettiTable:
    """Betti table of ``R/I`` from the Taylor complex tensored with the residue field.

    In multidegree ``b`` the chains are generator subsets with lcm exactly ``b``;
    dropping an element keeps a boundary term only when the lcm is unchanged.
    """
    _check_proper(i)
    n = i.num_vars
    entries = {(0, (0,) * n): 1}
    if i.is_zero():
        return BettiTable(entries, n, field)
    gens = i.array()
    m = len(gens)
    if m > max_gens:
        raise BudgetExceeded(m, max_gens)
    lcm = np.zeros((1 << m, n), dtype=np.int64)
    for k in range(m):
        lo, hi = 1 << k, 1 << (k + 1)
        lcm[lo:hi] = np.maximum(lcm[:lo], gens[k])
    groups: dict = {}
    for s in range(1, 1 << m):
        groups.setdefault(lcm[s].tobytes(), []).append(s)
    for key, subsets in groups.items():
        b = tuple(int(x) for x in np.frombuffer(key, dtype=np.int64))
        by_size: dict = {}
        for s in subsets:
            by_size.setdefault(s.bit_count(), []).append(s)
        index = {sz: {s: j for j, s in enumerate(v)} for sz, v in by_size.items()}
        ranks = {}
        for sz, chains in by_size.items():
            below = index.get(sz - 1)
            if not below:
                ranks[sz] = 0
                continue
            rows = []
            for s in chains:
                row = {}
                sign = 1
                rest = s
                while rest:
                    low = rest & -rest
                    face = s ^ low
                    if face in below:
                        row[below[face]] = sign
                    sign = -sign
                    rest ^= low
                rows.append(row)
            ranks[sz] = sparse_rank(rows, field)
        for sz, chains in by_size.items():
            dim = len(chains) - ranks.get(sz, 0) - ranks.get(sz + 1, 0)
            if dim:
                # subsets of size sz sit in homological degree sz - 1 for I, sz for R/I
                entries[(sz, b)] = dim
    return BettiTable(entries, n, field)


# -- depth -------------------------------------------------------------------------

def depth_from_betti(table: BettiTable) -> DepthResult:
    pd = table.projective_dimension()
    witness = min(b for (j, b) in table.entries if j == pd)
    return DepthResult(table.num_vars - pd, pd, table.field, witness, table.num_vars, table)


def depth_of_quotient(i: MonomialIdeal, field: FieldSpec = QQ,
                      budget: int = DEFAULT_BUDGET) -> DepthResult:
    """``depth(R/I) = n - pd(R/I)``."""
    return depth_from_betti(multigraded_betti(i, field, budget))


def depth_of_power(g: Graph, t: int, field: FieldSpec = QQ,
                   budget: int = DEFAULT_BUDGET) -> DepthResult:
    if t < 1:
        raise ValueError("t must be >= 1")
    return depth_of_quotient(power(edge_ideal(g), t), field, budget)


def format_degree(b: tuple) -> str:
    return format_monomial(b)
