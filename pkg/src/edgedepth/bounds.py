"""Closed-form depth values and lower bounds for powers of forest edge ideals.

Every bound is evaluated exactly as a formula; nothing here calls the oracle.
``ceil3(a)`` is ``(a + 2) // 3``, which with Python floor division is the true
ceiling for negative numerators as well.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .graph import Graph, all_components, is_acyclic, stats


class BoundsError(ValueError):
    pass


def ceil3(a: int) -> int:
    return (a + 2) // 3


def path_depth_exact(n: int) -> int:
    """depth of R/I(P_n)."""
    if n < 1:
        raise BoundsError("path needs n >= 1")
    return ceil3(n)


def path_power_lb(n: int, t: int) -> int:
    if n < 2 or t < 1:
        raise BoundsError("needs n >= 2 and t >= 1")
    return max(ceil3(n - t + 1), 1)


def tree_diameter_lb(d: int) -> int:
    if d < 0:
        raise BoundsError("diameter must be >= 0")
    return max(ceil3(d + 1), 1)


def tree_near_leaf_lb(d: int, q: int) -> int:
    """Near-leaf bound at t = 1, floored at 1 (every tree quotient has depth >= 1)."""
    if d < 1 or q < 0:
        raise BoundsError("needs d >= 1 and q >= 0")
    return max(ceil3(d + q - 1), 1)


def tree_powers_lb(d: int, t: int) -> int:
    if t < 1:
        raise BoundsError("t must be >= 1")
    return max(ceil3(d - t + 2), 1)


def forest_lb(d: int, p: int, t: int) -> int:
    """``max(ceil((d - t + 2) / 3) + p - 1, p)``."""
    if p < 1:
        raise BoundsError("forest bound needs p >= 1 component")
    if t < 1:
        raise BoundsError("t must be >= 1")
    return max(ceil3(d - t + 2) + p - 1, p)


def forest_bonus_lb(d: int, p: int, q: int, t: int) -> int:
    """``max(ceil((d - t + q) / 3) + p - 1, p)``."""
    if p < 1:
        raise BoundsError("forest bound needs p >= 1 component")
    if t < 1:
        raise BoundsError("t must be >= 1")
    return max(ceil3(d - t + q) + p - 1, p)


def stabilized_depth(p: int, isolated: int = 0) -> int:
    """Eventual depth of R/I^t for a forest: ``n - l(I)`` with ``l(I) = #edges``."""
    return p + isolated


def analytic_spread_forest(n: int, p: int) -> int:
    """Analytic spread of a forest on ``n`` non-isolated vertices with ``p`` trees."""
    if p < 0 or n < 2 * p:
        raise BoundsError("inconsistent vertex/component counts")
    return n - p


def stabilization_onset_lb(d: int, q: int) -> int:
    """Smallest power at which the bounds allow a tree's depth to reach 1."""
    return max(d - 1, d + q - 3)


def dim_upper_bound(n: int, height: int) -> int:
    return n - height


@dataclass(frozen=True)
class BoundInput:
    n: int
    d: int | None
    p: int
    q: int | None
    t: int
    isolated: int = 0

    def __post_init__(self):
        if self.p < 0 or self.t < 1:
            raise BoundsError("needs p >= 0 and t >= 1")
        if self.p == 0 and self.q is not None:
            raise BoundsError("q is only defined when p >= 1")

    @classmethod
    def from_graph(cls, g: Graph, t: int) -> "BoundInput":
        s = stats(g)
        return cls(g.num_vertices, s.d, s.p, s.q, t, len(s.isolated_vertices))


@dataclass(frozen=True)
class BoundReport:
    t: int
    n: int
    d: int | None
    p: int
    q: int | None
    path_exact: int | None
    tree_lb: int | None
    forest_lb: int
    bonus_lb: int
    bipartite_lb: int
    dim_ub: int | None
    burch_ub: int
    stabilized_depth: int
    stabilization_onset_lb: int | None
    oracle_depth: int | None = None
    small_diameter: bool = False

    def lower_bounds(self) -> list[int]:
        vals = [self.forest_lb, self.bonus_lb, self.bipartite_lb]
        if self.tree_lb is not None and self.t == 1:
            vals.append(self.tree_lb)
        if self.path_exact is not None:
            vals.append(self.path_exact)
        return vals

    def best_lb(self) -> int:
        return max(self.lower_bounds())

    def consistent(self) -> bool:
        """Every lower bound sits below every upper bound and the oracle value."""
        lb = self.best_lb()
        if self.dim_ub is not None and lb > self.dim_ub:
            return False
        if self.oracle_depth is None:
            return True
        if self.oracle_depth < lb:
            return False
        return self.dim_ub is None or self.oracle_depth <= self.dim_ub

    def as_dict(self) -> dict:
        return asdict(self)


def _is_path(g: Graph) -> bool:
    comps = all_components(g)
    return (len(comps) == 1 and is_acyclic(g)
            and all(g.degree(v) <= 2 for v in g.vertices))


def bound_report(g: Graph, t: int, oracle_depth: int | None = None,
                 height: int | None = None) -> BoundReport:
    """Every bound for ``depth(R/I(g)^t)``; ``g`` must be a forest."""
    b = BoundInput.from_graph(g, t)
    n_core = b.n - b.isolated
    ell = analytic_spread_forest(n_core, b.p)
    dim_ub = dim_upper_bound(b.n, height) if height is not None else None
    if b.p == 0:
        # polynomial ring: every value collapses to the number of variables
        iso = b.isolated
        return BoundReport(t, b.n, None, 0, None, None, None, iso, iso, iso, dim_ub, iso,
                           iso, None, oracle_depth, False)
    path_exact = None
    if _is_path(g) and (t == 1 or b.n <= 3):
        path_exact = path_depth_exact(b.n) if t == 1 else 1
    tree = b.p == 1 and b.isolated == 0
    return BoundReport(
        t=t, n=b.n, d=b.d, p=b.p, q=b.q,
        path_exact=path_exact,
        tree_lb=tree_diameter_lb(b.d) if tree else None,
        forest_lb=forest_lb(b.d, b.p, t),
        bonus_lb=forest_bonus_lb(b.d, b.p, b.q, t),
        bipartite_lb=b.p,
        dim_ub=dim_ub,
        burch_ub=b.n - ell,
        stabilized_depth=stabilized_depth(b.p, b.isolated),
        stabilization_onset_lb=stabilization_onset_lb(b.d, b.q) if tree else None,
        oracle_depth=oracle_depth,
        small_diameter=b.d <= 3,
    )
