"""Finite posets and planar distributive lattices.

A planar distributive lattice is a finite sublattice of N^2 containing the
origin whose comparabilities are realized by saturated chains of unit rank
steps, where rank(i, j) = i + j.  By the Birkhoff correspondence such a
lattice is the ideal lattice of its poset of join-irreducible elements, and
for planar lattices that poset has width at most two.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    ChainConditionFails,
    LatticeInvalid,
    LatticeNormalization,
    MissingOrigin,
    NotJoinClosed,
    NotMeetClosed,
    WidthExceedsTwo,
)

Point = tuple


def _label_key(x):
    return (str(type(x).__name__), str(x))


class Poset:
    """Finite poset over hashable labels.

    The relation may be given as covers or as any subrelation of the intended
    order; it is normalized internally to the full reflexive-transitive order.
    Antisymmetry is checked after closure.
    """

    def __init__(self, elements, relations=()):
        elements = list(elements)
        if len(set(elements)) != len(elements):
            raise ValueError("poset labels must be distinct")
        self.elements = tuple(elements)
        self._index = {e: k for k, e in enumerate(self.elements)}
        n = len(self.elements)
        leq = [[False] * n for _ in range(n)]
        for k in range(n):
            leq[k][k] = True
        for a, b in relations:
            if a not in self._index or b not in self._index:
                raise ValueError(f"relation mentions unknown element: {(a, b)!r}")
            leq[self._index[a]][self._index[b]] = True
        for k in range(n):
            lk = leq[k]
            for i in range(n):
                if leq[i][k]:
                    li = leq[i]
                    for j in range(n):
                        if lk[j]:
                            li[j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if leq[i][j] and leq[j][i]:
                    raise ValueError(
                        f"relation is not antisymmetric: {self.elements[i]!r} and {self.elements[j]!r}"
                    )
        self._leq = leq

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Poset({len(self)} elements, {len(self.strict_pairs())} strict relations)"

    def leq(self, a, b):
        return self._leq[self._index[a]][self._index[b]]

    def less(self, a, b):
        return a != b and self.leq(a, b)

    def incomparable(self, a, b):
        return not self.leq(a, b) and not self.leq(b, a)

    def strict_pairs(self):
        return [
            (a, b)
            for a in self.elements
            for b in self.elements
            if self.less(a, b)
        ]

    def down_set(self, a):
        return [b for b in self.elements if self.leq(b, a)]

    def covers(self):
        """Pairs (a, b) where b covers a."""
        out = []
        for a in self.elements:
            for b in self.elements:
                if self.less(a, b) and not any(
                    self.less(a, c) and self.less(c, b) for c in self.elements
                ):
                    out.append((a, b))
        return out

    def is_chain(self, labels=None):
        labels = self.elements if labels is None else list(labels)
        return all(
            not self.incomparable(a, b)
            for k, a in enumerate(labels)
            for b in labels[k + 1 :]
        )

    def sorted_chain(self, labels):
        """Sort a set of pairwise comparable labels in increasing order."""
        return sorted(labels, key=lambda a: (sum(1 for b in labels if self.less(b, a)),))


def posets_isomorphic(p: Poset, q: Poset) -> bool:
    """Backtracking isomorphism test, adequate for a few dozen elements."""
    if len(p) != len(q):
        return False

    def profile(poset):
        prof = {}
        for a in poset.elements:
            down = sum(1 for b in poset.elements if poset.less(b, a))
            up = sum(1 for b in poset.elements if poset.less(a, b))
            prof[a] = (down, up)
        # refine once by multiset of neighbour profiles
        refined = {}
        for a in poset.elements:
            below = sorted(prof[b] for b in poset.elements if poset.less(b, a))
            above = sorted(prof[b] for b in poset.elements if poset.less(a, b))
            refined[a] = (prof[a], tuple(below), tuple(above))
        return refined

    pp, qp = profile(p), profile(q)
    if sorted(pp.values()) != sorted(qp.values()):
        return False

    p_elems = sorted(p.elements, key=lambda a: (pp[a], _label_key(a)))
    by_class = {}
    for b in q.elements:
        by_class.setdefault(qp[b], []).append(b)

    assignment = {}
    used = set()

    def extend(k):
        if k == len(p_elems):
            return True
        a = p_elems[k]
        for b in by_class.get(pp[a], ()):
            if b in used:
                continue
            ok = True
            for a2, b2 in assignment.items():
                if p.leq(a, a2) != q.leq(b, b2) or p.leq(a2, a) != q.leq(b2, b):
                    ok = False
                    break
            if ok:
                assignment[a] = b
                used.add(b)
                if extend(k + 1):
                    return True
                del assignment[a]
                used.discard(b)
        return False

    return extend(0)


@dataclass(frozen=True)
class PlanarLattice:
    """Validated finite sublattice of N^2, anchored at the origin with a tight box."""

    points: frozenset
    m: int
    n: int

    @property
    def rank(self) -> int:
        return self.m + self.n

    def __contains__(self, point) -> bool:
        return tuple(point) in self.points

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"PlanarLattice({len(self.points)} points, box {self.m}x{self.n})"

    @staticmethod
    def rank_of(point) -> int:
        return point[0] + point[1]

    @cached_property
    def sorted_points(self):
        return tuple(sorted(self.points, key=lambda p: (p[0] + p[1], p[0])))

    @cached_property
    def points_by_rank(self):
        by_rank = {}
        for p in self.sorted_points:
            by_rank.setdefault(p[0] + p[1], []).append(p)
        return {r: tuple(v) for r, v in by_rank.items()}

    def lower_covers(self, point):
        i, j = point
        return [c for c in ((i - 1, j), (i, j - 1)) if c in self.points]

    def upper_covers(self, point):
        i, j = point
        return [c for c in ((i + 1, j), (i, j + 1)) if c in self.points]

    def transpose(self) -> "PlanarLattice":
        return PlanarLattice(frozenset((j, i) for i, j in self.points), self.n, self.m)


def validate_planar_lattice(points) -> PlanarLattice:
    """Check the defining axioms and return a normalized lattice.

    Inputs whose bounding box is not anchored at the origin are translated
    (with a warning); genuine axiom failures raise, with a witness pair where
    one exists.  The pair scans keep validation at O(|points|^2).
    """
    pts = {tuple(p) for p in points}
    if not pts:
        raise MissingOrigin("empty point set")
    if any(i < 0 or j < 0 for i, j in pts):
        raise LatticeInvalid("coordinates must be nonnegative", points=sorted(pts)[:3])
    di = min(i for i, _ in pts)
    dj = min(j for _, j in pts)
    if di or dj:
        warnings.warn(
            f"lattice translated by ({-di}, {-dj}) to anchor at the origin",
            LatticeNormalization,
            stacklevel=2,
        )
        pts = {(i - di, j - dj) for i, j in pts}
    if (0, 0) not in pts:
        raise MissingOrigin("lattice must contain the origin")
    ordered = sorted(pts)
    for k, a in enumerate(ordered):
        for b in ordered[k + 1 :]:
            meet = (min(a[0], b[0]), min(a[1], b[1]))
            join = (max(a[0], b[0]), max(a[1], b[1]))
            if meet != a and meet != b and meet not in pts:
                raise NotMeetClosed(
                    f"meet of {a} and {b} is missing", witness=(a, b)
                )
            if join != a and join != b and join not in pts:
                raise NotJoinClosed(
                    f"join of {a} and {b} is missing", witness=(a, b)
                )
    # Chain condition as reachability in the unit-step digraph.
    reach = {}
    for a in sorted(pts, key=lambda p: (-(p[0] + p[1]), p)):
        r = {a}
        for step in ((a[0] + 1, a[1]), (a[0], a[1] + 1)):
            if step in pts:
                r |= reach[step]
        reach[a] = r
    for k, a in enumerate(ordered):
        for b in ordered[k + 1 :]:
            if a[0] <= b[0] and a[1] <= b[1] and b not in reach[a]:
                raise ChainConditionFails(
                    f"no saturated chain from {a} to {b}", witness=(a, b)
                )
    m = max(i for i, _ in pts)
    n = max(j for _, j in pts)
    return PlanarLattice(frozenset(pts), m, n)


@dataclass(frozen=True)
class SimplicityReport:
    simple: bool
    violating_ranks: tuple


def is_simple(lattice: PlanarLattice) -> SimplicityReport:
    """A lattice is simple when every rank strictly between 0 and rank L has >= 2 points."""
    bad = tuple(
        r
        for r in range(1, lattice.rank)
        if len(lattice.points_by_rank.get(r, ())) < 2
    )
    return SimplicityReport(simple=not bad, violating_ranks=bad)


def join_irreducibles(lattice: PlanarLattice) -> Poset:
    """Induced subposet of the non-minimal elements with exactly one lower cover."""
    elems = [
        p
        for p in lattice.sorted_points
        if p != (0, 0) and len(lattice.lower_covers(p)) == 1
    ]
    rels = [
        (a, b)
        for a in elems
        for b in elems
        if a != b and a[0] <= b[0] and a[1] <= b[1]
    ]
    return Poset(elems, rels)


def _max_bipartite_matching(elems, less):
    """Kuhn's algorithm on the strict comparability relation, deterministic."""
    succ = {a: [b for b in elems if less(a, b)] for a in elems}
    match_right = {}

    def try_augment(a, seen):
        for b in succ[a]:
            if b in seen:
                continue
            seen.add(b)
            if b not in match_right or try_augment(match_right[b], seen):
                match_right[b] = a
                return True
        return False

    for a in elems:
        try_augment(a, set())
    return {a: b for b, a in match_right.items()}


def chain_partition(poset: Poset):
    """Partition a width-<=2 poset into two chains (second possibly empty).

    Uses a deterministic minimum chain cover (Dilworth via matching); any
    width-2 partition yields the same planar image up to isomorphism.  The
    longer chain comes first; ties break on the smallest first label.
    """
    elems = sorted(poset.elements, key=_label_key)
    if not elems:
        return (), ()
    nxt = _max_bipartite_matching(elems, poset.less)
    starts = [a for a in elems if a not in set(nxt.values())]
    chains = []
    for s in starts:
        chain = [s]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.append(chain)
    if len(chains) > 2:
        witness = None
        for k, a in enumerate(elems):
            for l in range(k + 1, len(elems)):
                b = elems[l]
                if not poset.incomparable(a, b):
                    continue
                for c in elems[l + 1 :]:
                    if poset.incomparable(a, c) and poset.incomparable(b, c):
                        witness = (a, b, c)
                        break
                if witness:
                    break
            if witness:
                break
        raise WidthExceedsTwo(
            f"poset does not partition into two chains ({len(chains)} needed)",
            antichain=witness,
        )
    while len(chains) < 2:
        chains.append([])
    chains.sort(key=lambda c: (-len(c), [_label_key(x) for x in c[:1]]))
    c1, c2 = chains
    return tuple(poset.sorted_chain(c1)), tuple(poset.sorted_chain(c2))


def poset_ideals_to_planar(poset: Poset) -> PlanarLattice:
    """Map each poset ideal a to (|a & C1|, |a & C2|) for a fixed chain partition.

    This is the Birkhoff image of the ideal lattice; it raises WidthExceedsTwo
    when the poset has a 3-element antichain (the image is not planar).
    """
    c1, c2 = chain_partition(poset)
    pts = set()
    for a in range(len(c1) + 1):
        for b in range(len(c2) + 1):
            ideal = set(c1[:a]) | set(c2[:b])
            closed = all(
                not poset.leq(y, x) or y in ideal
                for x in ideal
                for y in poset.elements
            )
            if closed:
                pts.add((a, b))
    return validate_planar_lattice(pts)
