"""Monomial ideals stored by their minimal generating sets.

A monomial is a plain tuple of non-negative exponents; the all-zero tuple is 1.
Variables are addressed 1-based (``x_1 .. x_n``) in the public functions, matching
graph vertices.  Heavy set operations run on numpy arrays.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import Graph, GraphError

Monomial = tuple

# rows * generators * vars per vectorized divisibility chunk
_CHUNK = 4_000_000


class ContextError(ValueError):
    """Ideals from different polynomial rings were combined."""


@dataclass(frozen=True)
class PolyContext:
    num_vars: int
    var_names: tuple | None = None

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        if self.var_names is not None and len(self.var_names) != self.num_vars:
            raise ValueError("var_names length must equal num_vars")

    def name(self, i: int) -> str:
        """Name of the 1-based variable ``i``."""
        if self.var_names is not None:
            return str(self.var_names[i - 1])
        return f"x{i}"

    def one(self) -> Monomial:
        return (0,) * self.num_vars

    def variable(self, i: int) -> Monomial:
        self._check_index(i)
        return tuple(1 if j == i - 1 else 0 for j in range(self.num_vars))

    def monomial(self, exps: dict) -> Monomial:
        """Monomial from a ``{1-based variable: exponent}`` mapping."""
        out = [0] * self.num_vars
        for i, e in exps.items():
            self._check_index(i)
            if e < 0:
                raise ValueError("negative exponent")
            out[i - 1] = int(e)
        return tuple(out)

    def extended(self, extra: int) -> "PolyContext":
        names = None
        if self.var_names is not None:
            names = self.var_names + tuple(f"x{self.num_vars + k + 1}" for k in range(extra))
        return PolyContext(self.num_vars + extra, names)

    def _check_index(self, i: int):
        if not 1 <= i <= self.num_vars:
            raise ValueError(f"variable index {i} out of range 1..{self.num_vars}")


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def support(m: Monomial) -> tuple:
    """1-based indices of variables dividing ``m``."""
    return tuple(i + 1 for i, e in enumerate(m) if e)


def degree(m: Monomial) -> int:
    return sum(m)


def _as_array(gens, n: int) -> np.ndarray:
    if isinstance(gens, np.ndarray):
        return gens.reshape(-1, n).astype(np.int64, copy=False)
    gens = list(gens)
    if not gens:
        return np.zeros((0, n), dtype=np.int64)
    return np.asarray(gens, dtype=np.int64).reshape(-1, n)


def divisible_by_any(cands: np.ndarray, divisors: np.ndarray) -> np.ndarray:
    """Boolean mask: row ``i`` of ``cands`` is divisible by some row of ``divisors``."""
    out = np.zeros(len(cands), dtype=bool)
    if len(cands) == 0 or len(divisors) == 0:
        return out
    n = cands.shape[1]
    step = max(1, _CHUNK // max(1, len(divisors) * n))
    for s in range(0, len(cands), step):
        block = cands[s:s + step]
        out[s:s + step] = (block[:, None, :] >= divisors[None, :, :]).all(axis=2).any(axis=1)
    return out


def minimal_rows(arr: np.ndarray) -> np.ndarray:
    """Divisibility-minimal rows of an exponent array, deduplicated."""
    if len(arr) == 0:
        return arr
    arr = np.unique(arr, axis=0)
    deg = arr.sum(axis=1)
    order = np.argsort(deg, kind="stable")
    arr, deg = arr[order], deg[order]
    kept = []
    kept_arr = arr[:0]
    # equal-degree distinct monomials never divide each other
    bounds = np.flatnonzero(np.diff(deg)) + 1
    for group in np.split(arr, bounds):
        if len(kept_arr):
            group = group[~divisible_by_any(group, kept_arr)]
        if len(group):
            kept.append(group)
            kept_arr = np.concatenate(kept)
    return kept_arr


def _sort_key(m: Monomial):
    return (sum(m), tuple(-e for e in m))


@dataclass(frozen=True, eq=True)
class MonomialIdeal:
    """Monomial ideal in ``context``; ``gens`` is always the minimal generating set.

    Build through :func:`ideal` (which minimalizes) unless the generators are
    already known to be minimal.
    """

    context: PolyContext
    gens: frozenset

    @property
    def num_vars(self) -> int:
        return self.context.num_vars

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.context.one() in self.gens

    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def sorted_gens(self) -> list:
        return sorted(self.gens, key=_sort_key)

    def array(self) -> np.ndarray:
        return _as_array(self.sorted_gens(), self.num_vars)

    def __len__(self):
        return len(self.gens)

    def __contains__(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    def __str__(self):
        return format_ideal(self)

    def __repr__(self):
        return f"MonomialIdeal({format_ideal(self)} in {self.num_vars} vars)"


def _from_array(ctx: PolyContext, arr: np.ndarray) -> MonomialIdeal:
    return MonomialIdeal(ctx, frozenset(tuple(int(x) for x in row) for row in arr))


def minimalize(ctx: PolyContext, gens: Iterable) -> MonomialIdeal:
    """The ideal generated by ``gens``, with a minimal generating set."""
    arr = _as_array(gens, ctx.num_vars)
    if (arr < 0).any():
        raise ValueError("negative exponent")
    return _from_array(ctx, minimal_rows(arr))


ideal = minimalize


def zero_ideal(ctx: PolyContext) -> MonomialIdeal:
    return MonomialIdeal(ctx, frozenset())


def unit_ideal(ctx: PolyContext) -> MonomialIdeal:
    return MonomialIdeal(ctx, frozenset([ctx.one()]))


def _same_context(*ideals: MonomialIdeal) -> PolyContext:
    ctx = ideals[0].context
    for other in ideals[1:]:
        if other.context != ctx:
            raise ContextError(f"context mismatch: {ctx} vs {other.context}")
    return ctx


def edge_ideal(g: Graph, ctx: PolyContext | None = None) -> MonomialIdeal:
    """Ideal generated by ``x_u x_v`` for the edges of ``g``."""
    ctx = ctx or PolyContext(g.num_vertices)
    if ctx.num_vars < g.num_vertices:
        raise GraphError("context has fewer variables than the graph has vertices")
    gens = set()
    for u, v in g.edges:
        m = [0] * ctx.num_vars
        m[u - 1] = m[v - 1] = 1
        gens.add(tuple(m))
    return MonomialIdeal(ctx, frozenset(gens))


def product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    ctx = _same_context(a, b)
    if a.is_zero() or b.is_zero():
        return zero_ideal(ctx)
    A, B = a.array(), b.array()
    prods = (A[:, None, :] + B[None, :, :]).reshape(-1, ctx.num_vars)
    return _from_array(ctx, minimal_rows(prods))


def power(i: MonomialIdeal, t: int) -> MonomialIdeal:
    """Minimal generators of ``i**t``, multiplying in one factor at a time."""
    if t < 1:
        raise ValueError("power needs t >= 1")
    out = i
    for _ in range(t - 1):
        out = product(out, i)
    return out


def power_sequence(i: MonomialIdeal, t_max: int) -> list[MonomialIdeal]:
    """``[i, i**2, ..., i**t_max]`` sharing the incremental products."""
    seq = [i]
    for _ in range(t_max - 1):
        seq.append(product(seq[-1], i))
    return seq


def colon(i: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """``(i : m)`` generated by ``g / gcd(g, m)``."""
    m = tuple(m)
    if len(m) != i.num_vars:
        raise ContextError("monomial length differs from the number of variables")
    if i.is_zero():
        return i
    arr = np.maximum(i.array() - np.asarray(m, dtype=np.int64), 0)
    return _from_array(i.context, minimal_rows(arr))


def add_variable(i: MonomialIdeal, v: int) -> MonomialIdeal:
    """``(i, x_v)``."""
    return minimalize(i.context, list(i.gens) + [i.context.variable(v)])


def add_variables(i: MonomialIdeal, vs: Iterable[int]) -> MonomialIdeal:
    return minimalize(i.context, list(i.gens) + [i.context.variable(v) for v in vs])


def delete_variable(i: MonomialIdeal, v: int) -> MonomialIdeal:
    """Set ``x_v = 0``: drop every generator divisible by ``x_v``."""
    i.context._check_index(v)
    return MonomialIdeal(i.context, frozenset(g for g in i.gens if g[v - 1] == 0))


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    ctx = _same_context(a, b)
    return minimalize(ctx, list(a.gens) + list(b.gens))


def intersection(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Intersection via pairwise lcms of generators."""
    ctx = _same_context(a, b)
    if a.is_zero() or b.is_zero():
        return zero_ideal(ctx)
    A, B = a.array(), b.array()
    lcms = np.maximum(A[:, None, :], B[None, :, :]).reshape(-1, ctx.num_vars)
    return _from_array(ctx, minimal_rows(lcms))


def intersect_all(ideals: list[MonomialIdeal]) -> MonomialIdeal:
    if not ideals:
        raise ValueError("empty intersection")
    out = ideals[0]
    for other in ideals[1:]:
        out = intersection(out, other)
    return out


def is_subideal(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    """``a`` contained in ``b``."""
    _same_context(a, b)
    if a.is_zero():
        return True
    if b.is_zero():
        return False
    return bool(divisible_by_any(a.array(), b.array()).all())


def equal_ideals(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    _same_context(a, b)
    return a.gens == b.gens


def extend_context(i: MonomialIdeal, extra: int = 1) -> MonomialIdeal:
    """The same generators viewed in a ring with ``extra`` more (unused) variables."""
    ctx = i.context.extended(extra)
    pad = (0,) * extra
    return MonomialIdeal(ctx, frozenset(g + pad for g in i.gens))


def restrict_context(i: MonomialIdeal, keep: Iterable[int]) -> MonomialIdeal:
    """Drop variables outside ``keep`` (1-based); they must not occur in any generator."""
    keep = sorted(set(keep))
    drop = set(range(1, i.num_vars + 1)) - set(keep)
    for g in i.gens:
        if any(g[v - 1] for v in drop):
            raise ValueError("cannot drop a variable that occurs in a generator")
    ctx = PolyContext(len(keep))
    return MonomialIdeal(ctx, frozenset(tuple(g[v - 1] for v in keep) for g in i.gens))


# -- identity checks ---------------------------------------------------------

def check_leaf_colon_identity(g: Graph, leaf: int, t: int) -> bool:
    """``(I^t : x y) == I^(t-1)`` for a leaf ``x`` with neighbor ``y``."""
    if t < 2:
        raise ValueError("the leaf identity needs t >= 2")
    if not g.is_leaf(leaf):
        raise GraphError(f"vertex {leaf} is not a leaf")
    (y,) = g.neighbors(leaf)
    i = edge_ideal(g)
    lower = power(i, t - 1)
    upper = product(lower, i)
    xy = i.context.monomial({leaf: 1, y: 1})
    return equal_ideals(colon(upper, xy), lower)


def check_rhs_identity(i: MonomialIdeal, m: Monomial, y: int, t: int) -> bool:
    """``((I^t : M), y) == ((K^t : M), y)`` where ``K`` is ``I`` with ``y = 0``."""
    if not i.is_squarefree():
        raise ValueError("identity needs a squarefree ideal")
    if m[y - 1] > 0:
        raise ValueError(f"x{y} divides M")
    k = delete_variable(i, y)
    lhs = add_variable(colon(power(i, t), m), y)
    rhs = add_variable(colon(power(k, t), m), y)
    return equal_ideals(lhs, rhs)


# -- text ---------------------------------------------------------------------

def format_monomial(m: Monomial, ctx: PolyContext | None = None) -> str:
    """Canonical ``x1^2*x3`` rendering; ``1`` for the unit monomial."""
    parts = []
    for idx, e in enumerate(m, 1):
        if e == 0:
            continue
        name = ctx.name(idx) if ctx else f"x{idx}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_ideal(i: MonomialIdeal) -> str:
    return "(" + ", ".join(format_monomial(g, i.context) for g in i.sorted_gens()) + ")"


_TERM = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, ctx: PolyContext) -> Monomial:
    """Inverse of :func:`format_monomial` for default ``x<i>`` names."""
    text = text.strip()
    if text == "1":
        return ctx.one()
    exps: dict[int, int] = {}
    for term in text.split("*"):
        match = _TERM.match(term.strip())
        if not match:
            raise ValueError(f"bad monomial term {term!r}")
        i, e = int(match.group(1)), int(match.group(2) or 1)
        exps[i] = exps.get(i, 0) + e
    return ctx.monomial(exps)
