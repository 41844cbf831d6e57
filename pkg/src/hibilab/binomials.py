"""Exact binomial-ideal machinery for window subrings.

Monomials are dense exponent tuples over the window's variables (one variable
per band point, canonically sorted by (rank, i)).  Every polynomial handled
here is a pure difference of two monomials, so S-polynomials and reductions
stay binomial and all coefficients stay +1/-1; Buchberger below is specialized
accordingly.  The toric side is the monomial map sending the variable at
(i, j) to s_i t_j; fibers of that map give an independent membership,
generation and Groebner certificate.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .errors import DegreeInfeasible
from .lattice import PlanarLattice
from .windows import GeneratorSet, RankWindow, generators

Monomial = tuple

ORDER_KINDS = ("rank-lex", "rank-revlex", "lex", "revlex")
_ORDER_ALIASES = {"plain-lex": "lex", "plain-revlex": "revlex"}

DEFAULT_FIELD = 32003
SECOND_FIELD = 65537


def default_budget() -> int:
    """Per-degree monomial enumeration budget; HIBI_LAB_BUDGET overrides."""
    try:
        return max(1000, int(os.environ.get("HIBI_LAB_BUDGET", "")))
    except ValueError:
        return 200_000


@dataclass(frozen=True)
class WindowRing:
    """Polynomial ring with one variable per band point of a window."""

    m: int
    n: int
    window: RankWindow
    points: tuple

    @classmethod
    def for_window(cls, lattice: PlanarLattice, window) -> "WindowRing":
        gens = generators(lattice, window)
        return cls(m=lattice.m, n=lattice.n, window=gens.window, points=gens.points)

    @classmethod
    def for_generators(cls, lattice: PlanarLattice, gens: GeneratorSet) -> "WindowRing":
        return cls(m=lattice.m, n=lattice.n, window=gens.window, points=gens.points)

    @property
    def nvars(self) -> int:
        return len(self.points)

    @cached_property
    def index(self):
        return {p: k for k, p in enumerate(self.points)}

    def monomial(self, *points) -> Monomial:
        exps = [0] * self.nvars
        for p in points:
            exps[self.index[tuple(p)]] += 1
        return tuple(exps)

    def exponents_dict(self, mono: Monomial):
        return {self.points[k]: e for k, e in enumerate(mono) if e}

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for k, e in enumerate(mono):
            if e:
                i, j = self.points[k]
                parts.append(f"y_{{{i}{j}}}" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) if parts else "1"

    @cached_property
    def monomial_map(self) -> "MonomialMap":
        images = []
        for i, j in self.points:
            vec = [0] * (self.m + 1 + self.n + 1)
            vec[i] += 1
            vec[self.m + 1 + j] += 1
            images.append(tuple(vec))
        return MonomialMap(m=self.m, n=self.n, images=tuple(images))


@dataclass(frozen=True)
class MonomialMap:
    """Images e(s_i) + e(t_j) of the window variables in Z^(m+1)+(n+1)."""

    m: int
    n: int
    images: tuple

    def image_of_monomial(self, mono: Monomial):
        total = [0] * (self.m + 1 + self.n + 1)
        for k, e in enumerate(mono):
            if e:
                img = self.images[k]
                for c in range(len(total)):
                    total[c] += e * img[c]
        return tuple(total)

    def balanced(self, binom: "Binomial") -> bool:
        return self.image_of_monomial(binom.lead) == self.image_of_monomial(binom.trail)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial):
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: Monomial) -> int:
    return sum(a)


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def mono_squarefree(a: Monomial) -> bool:
    return all(e <= 1 for e in a)


@dataclass(frozen=True)
class MonomialOrder:
    """Graded order: degree first, then (rev)lex over a variable significance list.

    sig lists variable indices from most to least significant.  Both styles
    are total, multiplicative and well-founded.
    """

    name: str
    style: str
    sig: tuple

    def key(self, mono: Monomial):
        if self.style == "lex":
            return (sum(mono), tuple(mono[i] for i in self.sig))
        return (sum(mono), tuple(-mono[i] for i in reversed(self.sig)))

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)


def monomial_order(kind: str, ring: WindowRing) -> MonomialOrder:
    kind = _ORDER_ALIASES.get(kind, kind)
    if kind not in ORDER_KINDS:
        raise ValueError(f"unknown order kind {kind!r}")
    if kind.startswith("rank-"):
        ranked = sorted(
            range(ring.nvars),
            key=lambda k: (
                -(ring.points[k][0] + ring.points[k][1]),
                -ring.points[k][0],
            ),
        )
    else:
        ranked = sorted(range(ring.nvars), key=lambda k: (-ring.points[k][0], -ring.points[k][1]))
    style = "revlex" if kind.endswith("revlex") else "lex"
    return MonomialOrder(name=kind, style=style, sig=tuple(ranked))


@dataclass(frozen=True)
class Binomial:
    """lead - trail with lead > trail in the ambient order."""

    lead: Monomial
    trail: Monomial

    def degree(self) -> int:
        return mono_deg(self.lead)

    def is_squarefree(self) -> bool:
        return mono_squarefree(self.lead) and mono_squarefree(self.trail)


def make_binomial(a: Monomial, b: Monomial, order: MonomialOrder):
    """Normalized binomial a - b, or None when the terms cancel."""
    if a == b:
        return None
    return Binomial(a, b) if order.greater(a, b) else Binomial(b, a)


def defining_ideal_generators(ring, window_or_order=None, order="rank-lex"):
    """One binomial per incomparable band pair whose meet and join ranks stay in band.

    For points (i, j) and (k, l) with i < k, j > l the binomial is
    y_ij y_kl - y_il y_kj; both inner points lie in the lattice by closure.
    Accepts either (ring, order) or (lattice, window, order=kind).
    """
    if isinstance(ring, PlanarLattice):
        ring = WindowRing.for_window(ring, window_or_order)
        order = monomial_order(order, ring) if isinstance(order, str) else order
    else:
        order = window_or_order
    p, q = ring.window.p, ring.window.q
    out = set()
    pts = ring.points
    for a_idx in range(len(pts)):
        i, j = pts[a_idx]
        for b_idx in range(a_idx + 1, len(pts)):
            k, l = pts[b_idx]
            if (i - k) * (j - l) >= 0:
                continue
            if i > k:
                (i2, j2), (k2, l2) = (k, l), (i, j)
            else:
                (i2, j2), (k2, l2) = (i, j), (k, l)
            # now i2 < k2 and j2 > l2; meet (i2, l2), join (k2, j2)
            if not (p <= i2 + l2 and k2 + j2 <= q):
                continue
            pair = ring.monomial((i2, j2), (k2, l2))
            meet_join = ring.monomial((i2, l2), (k2, j2))
            binom = make_binomial(pair, meet_join, order)
            if binom is not None:
                out.add(binom)
    return sorted(out, key=lambda g: (order.key(g.lead), order.key(g.trail)))


def _support_mask(mono: Monomial) -> int:
    mask = 0
    for k, e in enumerate(mono):
        if e:
            mask |= 1 << k
    return mask


class Reducer:
    """Division against a fixed binomial list, with support-mask prefiltering."""

    def __init__(self, basis=()):
        self.items = [(_support_mask(g.lead), g.lead, g.trail) for g in basis]

    def append(self, g: Binomial):
        self.items.append((_support_mask(g.lead), g.lead, g.trail))

    def reduce(self, mono: Monomial) -> Monomial:
        changed = True
        while changed:
            changed = False
            mm = _support_mask(mono)
            for lead_mask, lead, trail in self.items:
                if lead_mask & ~mm:
                    continue
                u = mono_div(mono, lead)
                if u is not None:
                    mono = mono_mul(u, trail)
                    changed = True
                    break
        return mono


def reduce_monomial(mono: Monomial, basis, order: MonomialOrder = None) -> Monomial:
    """Replace u*lead -> u*trail until no basis lead divides; stays a monomial."""
    reducer = basis if isinstance(basis, Reducer) else Reducer(basis)
    return reducer.reduce(mono)


def normal_form(x, basis, order: MonomialOrder):
    """Normal form of a monomial (-> monomial) or binomial (-> binomial or None)."""
    reducer = basis if isinstance(basis, Reducer) else Reducer(basis)
    if isinstance(x, Binomial):
        a = reducer.reduce(x.lead)
        b = reducer.reduce(x.trail)
        return make_binomial(a, b, order)
    return reducer.reduce(tuple(x))


def s_binomial(f: Binomial, g: Binomial, order: MonomialOrder):
    lcm = mono_lcm(f.lead, g.lead)
    a = mono_mul(mono_div(lcm, f.lead), f.trail)
    b = mono_mul(mono_div(lcm, g.lead), g.trail)
    return make_binomial(a, b, order)


@dataclass(frozen=True)
class GroebnerReport:
    basis: tuple
    quadratic: bool
    squarefree: bool
    spairs_processed: int
    order: MonomialOrder

    @property
    def leads(self):
        return tuple(g.lead for g in self.basis)


def _interreduce(basis, order: MonomialOrder):
    basis = sorted(set(basis), key=lambda g: (order.key(g.lead), order.key(g.trail)))
    # minimalize: ascending graded order guarantees divisor leads come first
    kept = []
    for g in basis:
        if not any(mono_div(g.lead, h.lead) is not None for h in kept):
            kept.append(g)
    # leads of a minimal set are irreducible against each other, so sweeps
    # only rewrite trails; iterate to a fixpoint
    changed = True
    while changed:
        changed = False
        out = []
        for g in kept:
            others = Reducer(h for h in kept if h.lead != g.lead)
            trail = others.reduce(g.trail)
            if trail == g.lead:
                changed = True
                continue
            if trail != g.trail:
                changed = True
                g = make_binomial(g.lead, trail, order)
            out.append(g)
        kept = sorted(set(out), key=lambda x: (order.key(x.lead), order.key(x.trail)))
    return tuple(kept)


def buchberger(gens, order: MonomialOrder, spair_budget: int | None = None) -> GroebnerReport:
    """Binomial Buchberger: normal pair selection, coprime-lead criterion.

    Pairs are popped smallest-lcm-first from a heap (key computed once per
    pair).  Returns the interreduced basis, which is unique for the given
    order; the quadratic and squarefree flags describe that reduced basis.
    """
    basis = []
    for g in gens:
        h = make_binomial(g.lead, g.trail, order)
        if h is not None and h not in basis:
            basis.append(h)
    reducer = Reducer(basis)
    heap = []

    def push_pairs(j):
        for i in range(j):
            # Buchberger's first criterion: coprime leads reduce to zero
            if mono_coprime(basis[i].lead, basis[j].lead):
                continue
            lcm = mono_lcm(basis[i].lead, basis[j].lead)
            heapq.heappush(heap, (mono_deg(lcm), order.key(lcm), i, j))

    for j in range(len(basis)):
        push_pairs(j)
    processed = 0
    budget = spair_budget or 500_000
    while heap:
        _, _, i, j = heapq.heappop(heap)
        processed += 1
        if processed > budget:
            raise DegreeInfeasible("S-pair budget exhausted", budget=budget)
        s = s_binomial(basis[i], basis[j], order)
        if s is None:
            continue
        r = normal_form(s, reducer, order)
        if r is None:
            continue
        basis.append(r)
        reducer.append(r)
        push_pairs(len(basis) - 1)
    reduced = _interreduce(basis, order)
    return GroebnerReport(
        basis=reduced,
        quadratic=all(g.degree() == 2 for g in reduced),
        squarefree=all(g.is_squarefree() for g in reduced),
        spairs_processed=processed,
        order=order,
    )


@dataclass(frozen=True)
class WindowIdeal:
    """Generators plus the first candidate order giving a quadratic squarefree basis."""

    ring: WindowRing
    order: MonomialOrder
    generators: tuple
    gb: GroebnerReport
    orders_tried: tuple

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_principal(self) -> bool:
        return len(self.generators) == 1


def window_ideal(lattice: PlanarLattice, window, kinds="auto") -> WindowIdeal:
    """Build the defining ideal and search candidate orders for a quadratic basis.

    kinds may be "auto" (try rank-lex, rank-revlex, lex, revlex in that
    order), a single kind, or an iterable of kinds.  The first order whose
    reduced basis is quadratic and squarefree wins; if none qualifies the
    last report is returned with its flags down, for the caller to treat as
    a finding.
    """
    if kinds == "auto":
        kinds = ORDER_KINDS
    elif isinstance(kinds, str):
        kinds = (kinds,)
    ring = WindowRing.for_window(lattice, window)
    tried = []
    last = None
    for kind in kinds:
        order = monomial_order(kind, ring)
        gens = defining_ideal_generators(ring, order)
        report = buchberger(gens, order)
        tried.append(kind)
        last = (ring, order, gens, report)
        if report.quadratic and report.squarefree:
            break
    ring, order, gens, report = last
    return WindowIdeal(
        ring=ring,
        order=order,
        generators=tuple(gens),
        gb=report,
        orders_tried=tuple(tried),
    )


def _degree_monomials(nvars: int, degree: int, budget: int):
    if comb(nvars + degree - 1, degree) > budget:
        raise DegreeInfeasible(
            f"degree {degree} needs {comb(nvars + degree - 1, degree)} monomials",
            budget=budget,
        )
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for k in combo:
            exps[k] += 1
        yield tuple(exps)


def _rank_sparse(rows, p: int) -> int:
    """Sparse Gaussian elimination; fast for the many tiny boundary blocks."""
    pivots = {}
    rank = 0
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], p - 2, p)
                pivots[c] = {cc: vv * inv % p for cc, vv in row.items()}
                rank += 1
                break
            factor = row[c]
            for cc, vv in piv.items():
                nv = (row.get(cc, 0) - factor * vv) % p
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
    return rank


def _rank_mod_p(rows, ncols: int, p: int) -> int:
    """Exact rank over GF(p); rows are {column: coefficient} dicts."""
    if not rows or not ncols:
        return 0
    if len(rows) * ncols <= 4096 or len(rows) <= 24:
        return _rank_sparse(rows, p)
    mat = np.zeros((len(rows), ncols), dtype=np.int64)
    for r, row in enumerate(rows):
        for c, v in row.items():
            mat[r, c] = v % p
    rank = 0
    nrows = mat.shape[0]
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if mat[r, col] % p:
                piv = r
                break
        if piv is None:
            continue
        mat[[rank, piv]] = mat[[piv, rank]]
        inv = pow(int(mat[rank, col]) % p, p - 2, p)
        mat[rank] = (mat[rank] * inv) % p
        below = mat[rank + 1 :, col] % p != 0
        if below.any():
            idx = np.nonzero(below)[0] + rank + 1
            mat[idx] = (mat[idx] - np.outer(mat[idx, col], mat[rank])) % p
        rank += 1
        if rank == nrows:
            break
    return rank


@dataclass(frozen=True)
class FiberDegreeRecord:
    degree: int
    monomials: int
    fibers: int
    target_dim: int
    span_rank: int
    generated: bool
    gb_consistent: bool


@dataclass(frozen=True)
class FiberCertificate:
    degree_bound: int
    membership_ok: bool
    per_degree: tuple
    fields_used: tuple

    @property
    def generated(self) -> bool:
        return self.membership_ok and all(d.generated for d in self.per_degree)

    @property
    def gb_certified(self) -> bool:
        return all(d.gb_consistent for d in self.per_degree)

    def hilbert_by_fibers(self):
        return tuple(d.fibers for d in self.per_degree)


def toric_fiber_oracle(
    ring,
    gens,
    gb: GroebnerReport | None = None,
    degree: int = 4,
    budget: int | None = None,
    field: int = DEFAULT_FIELD,
) -> FiberCertificate:
    """Certify membership, generation and the Groebner property degree by degree.

    For each degree e <= degree, all degree-e monomials are grouped by image
    under the monomial map.  Fiber differences span the degree-e piece of the
    toric ideal; generation holds when monomial multiples of the generators
    reach that dimension (a full rank over GF(p) certifies rank over Q).  A
    candidate basis is consistent when every fiber has a single normal form.
    The first argument may be a WindowRing or its MonomialMap.
    """
    if degree < 2:
        raise DegreeInfeasible("degree bound must be at least 2", degree=degree)
    budget = budget or default_budget()
    mm = ring if isinstance(ring, MonomialMap) else ring.monomial_map
    nvars = len(mm.images)
    membership_ok = all(mm.balanced(g) for g in gens)
    records = []
    fields = [field]
    gens = list(gens)
    for e in range(2, degree + 1):
        monos = list(_degree_monomials(nvars, e, budget))
        index = {m: k for k, m in enumerate(monos)}
        fibers = {}
        for m in monos:
            fibers.setdefault(mm.image_of_monomial(m), []).append(m)
        target = len(monos) - len(fibers)
        rows = []
        for g in gens:
            for u in _degree_monomials(nvars, e - 2, budget):
                row = {}
                row[index[mono_mul(u, g.lead)]] = 1
                col = index[mono_mul(u, g.trail)]
                row[col] = row.get(col, 0) - 1
                if any(row.values()):
                    rows.append(row)
        span = _rank_mod_p(rows, len(monos), field)
        if span < target:
            # guard against a characteristic artifact before reporting
            span2 = _rank_mod_p(rows, len(monos), SECOND_FIELD)
            if SECOND_FIELD not in fields:
                fields.append(SECOND_FIELD)
            span = max(span, span2)
        consistent = True
        if gb is not None:
            nf_cache = {}
            seen = {}
            for img, members in fibers.items():
                forms = set()
                for m in members:
                    if m not in nf_cache:
                        nf_cache[m] = reduce_monomial(m, gb.basis, gb.order)
                    forms.add(nf_cache[m])
                if len(forms) != 1:
                    consistent = False
                    break
                form = next(iter(forms))
                if form in seen and seen[form] != img:
                    consistent = False
                    break
                seen[form] = img
        records.append(
            FiberDegreeRecord(
                degree=e,
                monomials=len(monos),
                fibers=len(fibers),
                target_dim=target,
                span_rank=span,
                generated=span == target,
                gb_consistent=consistent,
            )
        )
    return FiberCertificate(
        degree_bound=degree,
        membership_ok=membership_ok,
        per_degree=tuple(records),
        fields_used=tuple(fields),
    )
