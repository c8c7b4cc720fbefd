"""Simple graphs on vertices ``1..n`` and the forest statistics used by the bounds.

Vertices are 1-based so that vertex ``i`` lines up with variable ``x_i`` of the
polynomial ring.  Isolated vertices are part of the graph (they are ambient
variables) but never count as connected components.
"""
from __future__ import annotations

import hashlib
import heapq
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable


class GraphError(ValueError):
    """Raised for malformed graph input or a violated structural precondition."""


@dataclass(frozen=True)
class Graph:
    """A simple graph with vertex set ``{1, ..., num_vertices}``.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``.  Acyclicity is not
    enforced here; functions that need a forest call :func:`require_forest`.
    """

    num_vertices: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.num_vertices < 0:
            raise GraphError("number of vertices must be non-negative")
        for u, v in self.edges:
            if not (1 <= u < v <= self.num_vertices):
                raise GraphError(f"bad edge {(u, v)} for {self.num_vertices} vertices")

    @cached_property
    def adjacency(self) -> dict[int, frozenset]:
        adj: dict[int, set] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    @property
    def vertices(self) -> range:
        return range(1, self.num_vertices + 1)

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_leaf(self, v: int) -> bool:
        return self.degree(v) == 1

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def isolated_vertices(self) -> list[int]:
        return [v for v in self.vertices if not self.adjacency[v]]

    def __repr__(self):
        return f"Graph(n={self.num_vertices}, edges={self.sorted_edges()})"


# A forest is a graph that passed ``require_forest``; the type is shared.
Forest = Graph


@dataclass(frozen=True)
class ForestStats:
    components: list
    p: int
    diameters: list
    d: int | None
    q: int | None
    isolated_vertices: list
    chosen_component: tuple | None = None


@dataclass(frozen=True)
class DiameterPath:
    path: tuple
    leaf_end: int
    y: int
    y_neighbors: frozenset


def from_edge_list(pairs: Iterable, num_vertices: int) -> Graph:
    """Build a graph, rejecting self-loops, duplicates and out-of-range indices."""
    if num_vertices < 1:
        raise GraphError("a graph needs at least one vertex")
    seen = set()
    for pair in pairs:
        u, v = (int(x) for x in pair)
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        for w in (u, v):
            if not 1 <= w <= num_vertices:
                raise GraphError(f"vertex {w} out of range 1..{num_vertices}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphError(f"duplicate edge {e}")
        seen.add(e)
    return Graph(num_vertices, frozenset(seen))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph(n, frozenset((i, i + 1) for i in range(1, n)))


def star_graph(leaves: int) -> Graph:
    """Center 1 joined to vertices 2..leaves+1."""
    return Graph(leaves + 1, frozenset((1, i) for i in range(2, leaves + 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    edges = {(i, i + 1) for i in range(1, n)} | {(1, n)}
    return Graph(n, frozenset(edges))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))


def disjoint_union(a: Graph, b: Graph) -> Graph:
    """``b``'s vertices are shifted past ``a``'s."""
    shift = a.num_vertices
    edges = set(a.edges) | {(u + shift, v + shift) for u, v in b.edges}
    return Graph(a.num_vertices + b.num_vertices, frozenset(edges))


def relabel(g: Graph, perm: dict) -> Graph:
    edges = {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges}
    return Graph(g.num_vertices, frozenset(edges))


def induced_subgraph(g: Graph, keep: Iterable) -> tuple[Graph, dict]:
    """Induced subgraph on ``keep`` relabeled to ``1..len(keep)``; returns the old->new map."""
    order = sorted(set(keep))
    new = {v: i + 1 for i, v in enumerate(order)}
    edges = {(new[u], new[v]) for u, v in g.edges if u in new and v in new}
    return Graph(len(order), frozenset(edges)), new


def all_components(g: Graph) -> list[tuple]:
    """All connected components, isolated vertices included, ordered by smallest vertex."""
    seen: set = set()
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = []
        queue = deque([s])
        seen.add(s)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def components(g: Graph) -> list[tuple]:
    """Connected components with at least two vertices."""
    return [c for c in all_components(g) if len(c) >= 2]


def is_acyclic(g: Graph) -> bool:
    return len(g.edges) == g.num_vertices - len(all_components(g))


def is_tree(g: Graph) -> bool:
    return is_acyclic(g) and len(all_components(g)) == 1


def require_forest(g: Graph) -> Graph:
    if not is_acyclic(g):
        raise GraphError("graph has a cycle; a forest is required")
    return g


def require_tree(g: Graph) -> Graph:
    if not is_tree(g):
        raise GraphError("a tree (connected and acyclic) is required")
    return g


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _check_component(g: Graph, component: Iterable) -> set:
    comp = set(component)
    if not comp:
        raise GraphError("empty component")
    start = min(comp)
    reach = bfs_distances(g, start)
    if set(reach) != comp:
        raise GraphError("vertex set is not a connected component")
    return comp


def _component_is_tree(g: Graph, comp: set) -> bool:
    n_edges = sum(1 for u, v in g.edges if u in comp)
    return n_edges == len(comp) - 1


def diameter(g: Graph, component: Iterable) -> int:
    """Largest BFS distance inside a connected component.

    Double BFS on tree components, all-pairs BFS otherwise.
    """
    comp = _check_component(g, component)
    if _component_is_tree(g, comp):
        dist = bfs_distances(g, min(comp))
        far = max(sorted(dist), key=dist.__getitem__)
        return max(bfs_distances(g, far).values())
    return max(max(bfs_distances(g, v).values()) for v in comp)


def near_leaves(g: Graph, component: Iterable) -> list[int]:
    """Non-leaf vertices having at most one non-leaf neighbor."""
    comp = _check_component(g, component)
    out = []
    for v in sorted(comp):
        if g.degree(v) == 1:
            continue
        non_leaf = sum(1 for w in g.adjacency[v] if g.degree(w) != 1)
        if non_leaf <= 1:
            out.append(v)
    return out


def stats(g: Graph) -> ForestStats:
    require_forest(g)
    comps = components(g)
    diams = [diameter(g, c) for c in comps]
    if not comps:
        return ForestStats([], 0, [], None, None, g.isolated_vertices())
    d = max(diams)
    # components are ordered by smallest vertex, so the first hit is the tie-break
    chosen = next(c for c, di in zip(comps, diams) if di == d)
    q = len(near_leaves(g, chosen))
    return ForestStats(comps, len(comps), diams, d, q, g.isolated_vertices(), chosen)


def is_bipartite(g: Graph) -> tuple[bool, dict | list]:
    """Return ``(True, coloring)`` or ``(False, odd_cycle)``."""
    color: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for s in g.vertices:
        if s in color:
            continue
        color[s] = 0
        parent[s] = None
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in sorted(g.adjacency[v]):
                if w not in color:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    return False, _odd_cycle(parent, v, w)
    return True, color


def _odd_cycle(parent: dict, u: int, v: int) -> list[int]:
    def chain(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    cu, cv = chain(u), chain(v)
    common = set(cu) & set(cv)
    head_u = []
    for x in cu:
        head_u.append(x)
        if x in common:
            break
    meet = head_u[-1]
    head_v = cv[: cv.index(meet)]
    return head_u + head_v[::-1]


def prufer_decode(seq: list[int], n: int) -> Graph:
    if n < 1:
        raise GraphError("tree needs n >= 1")
    if n <= 2:
        return path_graph(n)
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = set()
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.add((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.add((min(u, w), max(u, w)))
    return Graph(n, frozenset(edges))


def random_tree(n: int, seed: int | random.Random) -> Graph:
    """Uniform labeled tree on ``n`` vertices via a random Prufer sequence."""
    if n < 1:
        raise GraphError("tree needs n >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    seq = [rng.randint(1, n) for _ in range(max(n - 2, 0))]
    return prufer_decode(seq, n)


def random_forest(max_vertices: int, max_components: int, seed: int | random.Random,
                  max_isolated: int = 2) -> Graph:
    """Random forest with 1..max_components trees on at most ``max_vertices``
    non-isolated vertices, plus up to ``max_isolated`` isolated vertices, randomly labeled."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    p = rng.randint(1, max(1, min(max_components, max_vertices // 2)))
    total = rng.randint(2 * p, max_vertices)
    sizes = [2] * p
    for _ in range(total - 2 * p):
        sizes[rng.randrange(p)] += 1
    g = Graph(0, frozenset())
    for size in sizes:
        g = disjoint_union(g, random_tree(size, rng))
    iso = rng.randint(0, max_isolated)
    g = Graph(g.num_vertices + iso, g.edges)
    labels = list(g.vertices)
    rng.shuffle(labels)
    return relabel(g, dict(zip(g.vertices, labels)))


def diameter_path(g: Graph) -> DiameterPath:
    """A path realizing the diameter of a tree, its leaf end ``x_1`` and ``y = x_2``.

    Also checks that the neighbors of ``x_2`` and of ``x_d`` contain at most one
    non-leaf each (which must hold for any diameter-realizing path in a tree).
    """
    require_tree(g)
    if not g.edges:
        raise GraphError("diameter path needs at least one edge")
    dist = bfs_distances(g, 1)
    a = max(sorted(dist), key=dist.__getitem__)
    dist_a = bfs_distances(g, a)
    b = max(sorted(dist_a), key=dist_a.__getitem__)
    path = [b]
    while path[-1] != a:
        v = path[-1]
        path.append(min(w for w in g.adjacency[v] if dist_a.get(w) == dist_a[v] - 1))
    path = tuple(reversed(path))
    x1, y = path[0], path[1]
    for inner in {path[1], path[-2]}:
        non_leaf = [w for w in g.adjacency[inner] if not g.is_leaf(w)]
        if len(non_leaf) > 1:
            raise AssertionError(f"vertex {inner} next to a diameter endpoint has "
                                 f"non-leaf neighbors {sorted(non_leaf)}")
    return DiameterPath(path, x1, y, g.adjacency[y])


# -- text format ------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by ``u v`` lines; ``#`` starts a comment."""
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if n is None:
            if len(tok) != 2 or tok[0] != "n":
                raise GraphError(f"line {lineno}: expected 'n <numVertices>'")
            try:
                n = int(tok[1])
            except ValueError:
                raise GraphError(f"line {lineno}: bad vertex count {tok[1]!r}") from None
            continue
        if len(tok) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            pairs.append((int(tok[0]), int(tok[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex") from None
    if n is None:
        raise GraphError("empty graph file")
    return from_edge_list(pairs, n)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.num_vertices}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(format_edge_list(g).encode()).hexdigest()[:12]
