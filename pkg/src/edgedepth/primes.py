"""Irreducible decompositions, associated and minimal primes, vertex covers."""
from __future__ import annotations

from dataclasses import dataclass

from .betti import BudgetExceeded
from .graph import Graph
from .monomials import (MonomialIdeal, PolyContext, edge_ideal, equal_ideals, intersect_all,
                        minimalize, power_sequence)

DECOMPOSITION_BUDGET = 500_000
MAX_COVER_VERTICES = 24


@dataclass(frozen=True, order=True)
class MonomialPrime:
    """Prime generated by the variables listed (1-based)."""

    variables: tuple

    @classmethod
    def of(cls, variables) -> "MonomialPrime":
        return cls(tuple(sorted(set(variables))))

    def is_maximal(self, num_vars: int) -> bool:
        return self.variables == tuple(range(1, num_vars + 1))

    def __str__(self):
        return "(" + ", ".join(f"x{v}" for v in self.variables) + ")"


@dataclass(frozen=True, order=True)
class IrreducibleComponent:
    """``(x_i^{a_i} : i in support)`` as sorted ``(variable, exponent)`` pairs."""

    powers: tuple

    @property
    def support(self) -> tuple:
        return tuple(v for v, _ in self.powers)

    def radical(self) -> MonomialPrime:
        return MonomialPrime(self.support)

    def to_ideal(self, ctx: PolyContext) -> MonomialIdeal:
        return minimalize(ctx, [ctx.monomial({v: a}) for v, a in self.powers])

    def contains(self, other: "IrreducibleComponent") -> bool:
        """``other`` is a subideal of this component."""
        mine = dict(self.powers)
        return all(v in mine and mine[v] <= a for v, a in other.powers)

    def __str__(self):
        return "(" + ", ".join(f"x{v}" if a == 1 else f"x{v}^{a}" for v, a in self.powers) + ")"


def _add_generator(gens: frozenset, drop: tuple, new: tuple) -> frozenset:
    rest = gens - {drop}
    if any(all(x <= y for x, y in zip(g, new)) for g in rest):
        return rest
    return frozenset(g for g in rest if not all(x <= y for x, y in zip(new, g))) | {new}


def _split(gens: frozenset, memo: dict, budget: int) -> frozenset:
    hit = memo.get(gens)
    if hit is not None:
        return hit
    if len(memo) > budget:
        raise BudgetExceeded(len(memo), budget)
    mixed = sorted(g for g in gens if sum(1 for e in g if e) > 1)
    if not mixed:
        comp = IrreducibleComponent(tuple(sorted((k + 1, e) for g in gens
                                                 for k, e in enumerate(g) if e)))
        result = frozenset([comp])
    else:
        m = mixed[0]
        k = next(j for j, e in enumerate(m) if e)
        pure = tuple(m[k] if j == k else 0 for j in range(len(m)))
        rest = tuple(0 if j == k else e for j, e in enumerate(m))
        # (J, m) = (J, x_k^a) intersected with (J, m / x_k^a)
        result = (_split(_add_generator(gens, m, pure), memo, budget)
                  | _split(_add_generator(gens, m, rest), memo, budget))
    memo[gens] = result
    return result


def _witness(comp: IrreducibleComponent, n: int, top: int) -> tuple:
    """Largest monomial of the box ``[0, top]^n`` outside ``comp``."""
    w = [top] * n
    for v, a in comp.powers:
        w[v - 1] = a - 1
    return tuple(w)


def _in_component(m: tuple, comp: IrreducibleComponent) -> bool:
    return any(m[v - 1] >= a for v, a in comp.powers)


def is_irredundant(comps: list[IrreducibleComponent], n: int) -> bool:
    """No component can be dropped without changing the intersection.

    Component ``Q`` is needed exactly when its witness (exponent ``a_i - 1`` on its
    support and the top exponent elsewhere) lies in every other component: any
    monomial in the other components but not in ``Q`` can be raised to it.
    """
    top = max((a for c in comps for _, a in c.powers), default=1)
    for j, c in enumerate(comps):
        w = _witness(c, n, top)
        if not all(_in_component(w, o) for k, o in enumerate(comps) if k != j):
            return False
    return True


def irreducible_decomposition(i: MonomialIdeal, verify: bool = True,
                              budget: int = DECOMPOSITION_BUDGET) -> list[IrreducibleComponent]:
    """Irredundant decomposition of ``i`` into irreducible monomial ideals.

    Recursive splitting on a generator with two or more variables, then removal of
    components that contain another one.  With ``verify`` the result is re-checked:
    the intersection reproduces ``i`` and no component is redundant.
    """
    if i.is_zero() or i.is_unit():
        raise ValueError("decomposition needs a proper nonzero ideal")
    raw = _split(i.gens, {}, budget)
    comps = sorted(c for c in raw if not any(o != c and c.contains(o) for o in raw))
    if verify:
        ideals = [c.to_ideal(i.context) for c in comps]
        if not equal_ideals(intersect_all(ideals), i):
            raise AssertionError("decomposition does not intersect back to the ideal")
        if not is_irredundant(comps, i.num_vars):
            raise AssertionError("decomposition has a redundant component")
    return comps


def associated_primes(i: MonomialIdeal, verify: bool = True,
                      budget: int = DECOMPOSITION_BUDGET) -> list[MonomialPrime]:
    """Ass(R/I): radicals of the irredundant irreducible components."""
    return sorted({c.radical() for c in irreducible_decomposition(i, verify, budget)})


def minimal_transversals(edges: list[tuple], limit: int = MAX_COVER_VERTICES) -> list[tuple]:
    """Inclusion-minimal vertex sets meeting every edge (edges are vertex tuples)."""
    verts = sorted({v for e in edges for v in e})
    if len(verts) > limit:
        raise BudgetExceeded(len(verts), limit)
    edges = sorted(set(tuple(sorted(e)) for e in edges))
    found = set()

    def grow(chosen: frozenset, banned: frozenset):
        for e in edges:
            if not chosen.intersection(e):
                break
        else:
            found.add(chosen)
            return
        open_choices = [v for v in e if v not in banned]
        for j, v in enumerate(open_choices):
            grow(chosen | {v}, banned | frozenset(open_choices[:j]))

    grow(frozenset(), frozenset())
    minimal = [c for c in found if not any(o < c for o in found)]
    return sorted((tuple(sorted(c)) for c in minimal), key=lambda c: (len(c), c))


def minimal_vertex_covers(g: Graph) -> list[tuple]:
    return minimal_transversals(g.sorted_edges())


def minimal_primes(i: MonomialIdeal) -> list[MonomialPrime]:
    """Min(R/I) of a squarefree ideal, as minimal transversals of generator supports."""
    if not i.is_squarefree():
        raise ValueError("minimal_primes needs a squarefree ideal")
    if i.is_zero() or i.is_unit():
        raise ValueError("minimal_primes needs a proper nonzero ideal")
    supports = [tuple(k + 1 for k, e in enumerate(g) if e) for g in i.gens]
    return sorted(MonomialPrime(c) for c in minimal_transversals(supports))


def height_and_unmixed(g: Graph) -> tuple[int, bool]:
    """Height of ``I(g)`` (smallest vertex cover) and whether all minimal covers tie."""
    if not g.edges:
        return 0, True
    sizes = {len(c) for c in minimal_vertex_covers(g)}
    return min(sizes), len(sizes) == 1


def ass_of_powers(g: Graph, t_max: int, verify: bool = True,
                  budget: int = DECOMPOSITION_BUDGET) -> dict[int, list[MonomialPrime]]:
    """``{t: Ass(R/I^t)}`` for ``t = 1..t_max``."""
    if not g.edges:
        raise ValueError("edgeless graph has the zero edge ideal")
    powers = power_sequence(edge_ideal(g), t_max)
    return {t: associated_primes(p, verify, budget) for t, p in enumerate(powers, 1)}


def is_normally_torsion_free_up_to(g: Graph, t_max: int, verify: bool = True) -> bool:
    """Whether Ass(R/I^t) == Min(R/I) for every ``1 <= t <= t_max``."""
    mins = minimal_primes(edge_ideal(g))
    return all(ass == mins for ass in ass_of_powers(g, t_max, verify).values())
