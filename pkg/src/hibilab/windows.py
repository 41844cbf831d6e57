"""Rank windows on a planar lattice: generators, bipartite graph, polyomino.

A window (p, q) with 0 <= p < q <= rank L selects the lattice points whose
rank lies in [p, q].  Those points are the algebra generators; they are also
the edges s_i t_j of a bipartite graph and, through the unit cells fully
contained in the band, a row- and column-convex polyomino.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidWindow
from .lattice import PlanarLattice


@dataclass(frozen=True, order=True)
class RankWindow:
    p: int
    q: int

    def is_proper(self, lattice_rank: int) -> bool:
        return (self.p, self.q) != (0, lattice_rank)

    def validate(self, lattice_rank: int) -> "RankWindow":
        if not 0 <= self.p < self.q <= lattice_rank:
            raise InvalidWindow(
                f"window ({self.p}, {self.q}) invalid for rank {lattice_rank}"
            )
        return self


def as_window(w) -> RankWindow:
    return w if isinstance(w, RankWindow) else RankWindow(*w)


def all_windows(lattice: PlanarLattice, proper_only: bool = False):
    r = lattice.rank
    out = [
        RankWindow(p, q)
        for p in range(r + 1)
        for q in range(p + 1, r + 1)
    ]
    if proper_only:
        out = [w for w in out if w.is_proper(r)]
    return out


@dataclass(frozen=True)
class GeneratorSet:
    window: RankWindow
    points: tuple

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def generators(lattice: PlanarLattice, window) -> GeneratorSet:
    """Lattice points in the rank band, sorted by (rank, i)."""
    w = as_window(window).validate(lattice.rank)
    pts = tuple(
        p for p in lattice.sorted_points if w.p <= p[0] + p[1] <= w.q
    )
    return GeneratorSet(window=w, points=pts)


@dataclass(frozen=True)
class BipartiteGraph:
    """Left vertices s_0..s_m, right vertices t_0..t_n, one edge per generator."""

    m: int
    n: int
    edges: tuple

    @cached_property
    def left_adj(self):
        adj = {i: set() for i in range(self.m + 1)}
        for i, j in self.edges:
            adj[i].add(j)
        return adj

    @cached_property
    def right_adj(self):
        adj = {j: set() for j in range(self.n + 1)}
        for i, j in self.edges:
            adj[j].add(i)
        return adj


def bipartite_graph(lattice: PlanarLattice, window) -> BipartiteGraph:
    gens = generators(lattice, window)
    return BipartiteGraph(m=lattice.m, n=lattice.n, edges=tuple(gens.points))


@dataclass(frozen=True)
class ChordalityCertificate:
    chordal: bool
    elimination_order: tuple = ()
    chordless_cycle: tuple = ()

    def __bool__(self):
        return self.chordal


def _bisimplicial(edges, left_adj, right_adj, edge):
    i, j = edge
    for u in right_adj[j]:
        if u == i:
            continue
        for v in left_adj[i]:
            if v == j:
                continue
            if (u, v) not in edges:
                return False
    return True


def _chordless_cycle_bruteforce(edges):
    """Search the original graph for an induced cycle of length >= 6.

    Vertices are ('s', i) / ('t', j); the graph is bipartite so induced
    cycles alternate sides.  Only called on small stuck instances.
    """
    adj = {}
    for i, j in edges:
        adj.setdefault(("s", i), set()).add(("t", j))
        adj.setdefault(("t", j), set()).add(("s", i))
    verts = sorted(adj)

    def extend(path, members):
        start = path[0]
        last = path[-1]
        for nxt in sorted(adj[last]):
            if nxt in members:
                continue
            # induced: the new vertex may only touch the path at its end,
            # plus the start when it closes a long enough cycle.
            touches = adj[nxt] & members
            closes = start in touches and len(path) >= 2
            allowed = {last, start} if closes else {last}
            if touches - allowed:
                continue
            if closes:
                if len(path) >= 5:
                    return list(path) + [nxt]
                continue
            path.append(nxt)
            members.add(nxt)
            found = extend(path, members)
            if found:
                return found
            path.pop()
            members.discard(nxt)
        return None

    for v in verts:
        found = extend([v], {v})
        if found:
            return tuple(found)
    return None


def is_chordal_bipartite(graph: BipartiteGraph) -> ChordalityCertificate:
    """Bisimplicial edge elimination with a certificate either way.

    True comes with the edge elimination order; False comes with a chordless
    cycle of length >= 6 found in the input graph.
    """
    edges = set(graph.edges)
    left_adj = {i: set(v) for i, v in graph.left_adj.items()}
    right_adj = {j: set(v) for j, v in graph.right_adj.items()}
    order = []
    while edges:
        pick = None
        for e in sorted(edges):
            if _bisimplicial(edges, left_adj, right_adj, e):
                pick = e
                break
        if pick is None:
            cycle = _chordless_cycle_bruteforce(graph.edges)
            if cycle is None:
                raise AssertionError(
                    "elimination stuck but no chordless cycle found"
                )
            return ChordalityCertificate(False, chordless_cycle=cycle)
        edges.discard(pick)
        left_adj[pick[0]].discard(pick[1])
        right_adj[pick[1]].discard(pick[0])
        order.append(pick)
    return ChordalityCertificate(True, elimination_order=tuple(order))


@dataclass(frozen=True)
class Polyomino:
    """Unit cells named by lower-left corner; vertices are all cell corners."""

    cells: frozenset

    @classmethod
    def from_cells(cls, cells) -> "Polyomino":
        return cls(cells=frozenset(tuple(c) for c in cells))

    def __len__(self):
        return len(self.cells)

    @cached_property
    def sorted_cells(self):
        return tuple(sorted(self.cells, key=lambda c: (c[0] + c[1], c[0])))

    @cached_property
    def vertices(self):
        vs = set()
        for i, j in self.cells:
            vs.update(((i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)))
        return frozenset(vs)

    @cached_property
    def rows(self):
        out = {}
        for i, j in self.cells:
            out.setdefault(j, []).append(i)
        return {j: tuple(sorted(v)) for j, v in out.items()}

    @cached_property
    def columns(self):
        out = {}
        for i, j in self.cells:
            out.setdefault(i, []).append(j)
        return {i: tuple(sorted(v)) for i, v in out.items()}

    @cached_property
    def connected(self) -> bool:
        """Edge adjacency of cells; corner contact does not connect."""
        if not self.cells:
            return True
        todo = [next(iter(self.sorted_cells))]
        seen = {todo[0]}
        while todo:
            i, j = todo.pop()
            for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if nb in self.cells and nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        return len(seen) == len(self.cells)


def polyomino(lattice: PlanarLattice, window) -> Polyomino:
    """Cells [a, a+(1,1)] whose four corners lie in L with ranks inside the band."""
    w = as_window(window).validate(lattice.rank)
    cells = set()
    for i, j in lattice.sorted_points:
        if not (w.p <= i + j and i + j + 2 <= w.q):
            continue
        if (
            (i + 1, j) in lattice.points
            and (i, j + 1) in lattice.points
            and (i + 1, j + 1) in lattice.points
        ):
            cells.add((i, j))
    return Polyomino(cells=frozenset(cells))


def check_convexity(poly: Polyomino) -> bool:
    """Row and column runs of cells must be contiguous."""
    for run in list(poly.rows.values()) + list(poly.columns.values()):
        if run[-1] - run[0] + 1 != len(run):
            return False
    return True


def dimension(lattice: PlanarLattice, window) -> int:
    """Number of band points minus the number of band cells."""
    return len(generators(lattice, window)) - len(polyomino(lattice, window))
