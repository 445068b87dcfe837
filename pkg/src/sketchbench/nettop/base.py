"""Finite topological spaces, directed index sets, and nets.

Everything is finite and explicit.  A space stores its carrier as a tuple
and its open sets as a frozenset of frozensets.  A finite topology is
closed under arbitrary intersections, so it is determined by its
specialization preorder; several helpers move between the two pictures.

Specialization convention: x <= y iff every open set containing x also
contains y.  Open sets are exactly the up-closed subsets for this order,
and a map between finite spaces is continuous iff it is monotone for the
specialization preorders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from ..canon import csorted, ctuple, fmt, sort_key
from ..fincat import ValidationReport


@dataclass(frozen=True)
class FinTopSpace:
    """A finite topological space: carrier tuple plus open-set family."""

    points: Tuple
    opens: frozenset

    def __repr__(self) -> str:
        return "FinTopSpace(points=%r, opens=%s)" % (
            self.points,
            [csorted(u) for u in csorted(self.opens)],
        )


def space_from_opens(points: Iterable, opens: Iterable) -> FinTopSpace:
    """Build a space, normalizing the open family to frozensets."""
    pts = tuple(points)
    fam = frozenset(frozenset(u) for u in opens)
    return FinTopSpace(pts, fam)


def validate_space(s: FinTopSpace) -> ValidationReport:
    violations: List[str] = []
    pts = set(s.points)
    if len(pts) != len(s.points):
        violations.append("carrier has repeated points")
    for u in csorted(s.opens):
        if not frozenset(u) <= pts:
            violations.append("open set %s leaves the carrier" % fmt(u))
    if frozenset() not in s.opens:
        violations.append("empty set is not open")
    if frozenset(pts) not in s.opens:
        violations.append("carrier is not open")
    fam = list(csorted(s.opens))
    for i, u in enumerate(fam):
        for v in fam[i + 1:]:
            if u | v not in s.opens:
                violations.append(
                    "union %s of opens is not open" % fmt(u | v))
            if u & v not in s.opens:
                violations.append(
                    "intersection %s of opens is not open" % fmt(u & v))
            if len(violations) >= 20:
                return ValidationReport(False, tuple(violations))
    return ValidationReport(not violations, tuple(violations))


def minopen_table(s: FinTopSpace) -> Dict:
    """The smallest open neighbourhood of each point."""
    table = {}
    for x in s.points:
        cur = frozenset(s.points)
        for u in s.opens:
            if x in u:
                cur = cur & u
        table[x] = cur
    return table


def specialization_leq(s: FinTopSpace) -> frozenset:
    """All pairs (x, y) with x <= y in the specialization preorder."""
    mo = minopen_table(s)
    return frozenset(
        (x, y) for x in s.points for y in s.points if y in mo[x])


def space_from_preorder(points: Iterable, le: Iterable) -> FinTopSpace:
    """The space whose opens are the up-closed sets of a preorder.

    ``le`` lists pairs (x, y) meaning x <= y; reflexivity is implied.
    """
    pts = tuple(points)
    rel = set(le) | {(x, x) for x in pts}
    ups = []
    for sub in _subsets(pts):
        if all(y in sub for x in sub for (a, y) in rel if a == x):
            ups.append(frozenset(sub))
    return FinTopSpace(pts, frozenset(ups))


def _subsets(items: Tuple) -> Iterable[Tuple]:
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield combo


def discrete_space(points: Iterable) -> FinTopSpace:
    pts = tuple(points)
    return FinTopSpace(pts, frozenset(frozenset(c) for c in _subsets(pts)))


def indiscrete_space(points: Iterable) -> FinTopSpace:
    pts = tuple(points)
    return FinTopSpace(pts, frozenset({frozenset(), frozenset(pts)}))


def sierpinski() -> FinTopSpace:
    """Two points 0, 1 with 1 open and 0 not."""
    return FinTopSpace((0, 1), frozenset(
        {frozenset(), frozenset({1}), frozenset({0, 1})}))


@lru_cache(maxsize=None)
def topologies_on(points: Tuple) -> Tuple[FinTopSpace, ...]:
    """All topologies on a fixed finite carrier, by direct filtering.

    Enumerates every family of subsets that contains the empty set and
    the carrier and checks closure under binary union and intersection.
    Intended for carriers of size at most 4.
    """
    pts = tuple(points)
    if len(pts) > 4:
        raise ValueError("carrier too large for exhaustive enumeration")
    full = frozenset(pts)
    middle = [frozenset(c) for c in _subsets(pts)]
    middle = [u for u in middle if u and u != full]
    middle = csorted(middle)
    out = []
    for mask in range(1 << len(middle)):
        fam = [middle[i] for i in range(len(middle)) if mask >> i & 1]
        famset = set(fam)
        famset.add(frozenset())
        famset.add(full)
        ok = True
        for i, u in enumerate(fam):
            for v in fam[i + 1:]:
                if u | v not in famset or u & v not in famset:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(FinTopSpace(pts, frozenset(famset)))
    out.sort(key=lambda sp: sort_key(csorted(sp.opens)))
    return tuple(out)


@lru_cache(maxsize=None)
def preorders_on(points: Tuple) -> Tuple[frozenset, ...]:
    """All reflexive transitive relations on a fixed finite carrier."""
    pts = tuple(points)
    diag = [(x, x) for x in pts]
    off = [(x, y) for x in pts for y in pts if x != y]
    out = []
    for mask in range(1 << len(off)):
        rel = set(diag)
        rel.update(off[i] for i in range(len(off)) if mask >> i & 1)
        if all((x, w) in rel
               for (x, y) in rel for (z, w) in rel if y == z):
            out.append(frozenset(rel))
    out.sort(key=sort_key)
    return tuple(out)


@dataclass(frozen=True)
class DirectedSet:
    """A finite nonempty preorder in which every pair has an upper bound."""

    elements: Tuple
    le: frozenset

    def __repr__(self) -> str:
        return "DirectedSet(elements=%r, le=%s)" % (
            self.elements, csorted(self.le))


def validate_directed(d: DirectedSet) -> ValidationReport:
    violations: List[str] = []
    els = set(d.elements)
    if not els:
        violations.append("index set is empty")
    if len(els) != len(d.elements):
        violations.append("repeated elements")
    for (x, y) in csorted(d.le):
        if x not in els or y not in els:
            violations.append("relation pair %s leaves the carrier"
                              % fmt((x, y)))
    for x in d.elements:
        if (x, x) not in d.le:
            violations.append("not reflexive at %s" % fmt(x))
    for (x, y) in d.le:
        for (z, w) in d.le:
            if y == z and (x, w) not in d.le:
                violations.append(
                    "not transitive: %s, %s" % (fmt((x, y)), fmt((z, w))))
    for x in d.elements:
        for y in d.elements:
            if not any((x, z) in d.le and (y, z) in d.le
                       for z in d.elements):
                violations.append(
                    "pair %s has no upper bound" % fmt((x, y)))
    violations = violations[:20]
    return ValidationReport(not violations, tuple(violations))


def tail(d: DirectedSet, p) -> frozenset:
    """All elements above p."""
    return frozenset(q for q in d.elements if (p, q) in d.le)


def greatest_elements(d: DirectedSet) -> Tuple:
    """Elements above everything.

    A finite nonempty directed set always has at least one: fold the
    carrier through pairwise upper bounds.
    """
    return ctuple(x for x in d.elements
                  if all((y, x) in d.le for y in d.elements))


def directed_product(factors: Iterable[DirectedSet]) -> DirectedSet:
    """Componentwise order on the product of the carriers."""
    fs = list(factors)
    elements = ctuple(itertools.product(*[f.elements for f in fs]))
    le = frozenset(
        (a, b) for a in elements for b in elements
        if all((a[i], b[i]) in fs[i].le for i in range(len(fs))))
    return DirectedSet(elements, le)


@dataclass(frozen=True)
class Net:
    """A net: values indexed by a directed set, aligned with its carrier."""

    index: DirectedSet
    values: Tuple

    def __post_init__(self) -> None:
        if len(self.values) != len(self.index.elements):
            raise ValueError("net values do not match the index carrier")

    def value_at(self, p):
        return self.values[self.index.elements.index(p)]


def converges(s: FinTopSpace, n: Net, x) -> bool:
    """Whether the net is eventually inside every open neighbourhood of x.

    It suffices to be eventually inside the smallest one.
    """
    mo = minopen_table(s)[x]
    els = n.index.elements
    for p in els:
        t = tail(n.index, p)
        if all(n.values[els.index(q)] in mo for q in t):
            return True
    return False


def limits(s: FinTopSpace, n: Net) -> Tuple:
    return ctuple(x for x in s.points if converges(s, n, x))


def is_cofinal(h: Dict, q: DirectedSet, p: DirectedSet) -> bool:
    """Whether h: q -> p eventually dominates every stage of p.

    The defining condition: for every p0 there is some q0 with
    h(tail(q0)) contained in tail(p0).  No monotonicity is assumed.
    """
    if set(h.keys()) != set(q.elements):
        return False
    if not all(h[a] in set(p.elements) for a in q.elements):
        return False
    for p0 in p.elements:
        up = tail(p, p0)
        if not any(all(h[b] in up for b in tail(q, q0))
                   for q0 in q.elements):
            return False
    return True


def subnet(n: Net, q: DirectedSet, h: Dict) -> Net:
    """Precompose a net with a cofinal map h: q -> index."""
    if not is_cofinal(h, q, n.index):
        raise ValueError("map is not cofinal")
    els = n.index.elements
    return Net(q, tuple(n.values[els.index(h[a])] for a in q.elements))


@lru_cache(maxsize=None)
def canonical_directed_sets(max_size: int) -> Tuple[DirectedSet, ...]:
    """One directed set per isomorphism class, sizes 1..max_size.

    Carriers are 0..k-1 and each representative is the relabeling of its
    class with the lexicographically greatest adjacency matrix, which
    places bottoms first and top elements last.
    """
    out = []
    for k in range(1, max_size + 1):
        pts = tuple(range(k))
        seen = set()
        reps = []
        for rel in preorders_on(pts):
            if not all(any((x, z) in rel and (y, z) in rel for z in pts)
                       for x in pts for y in pts):
                continue
            best = None
            for perm in itertools.permutations(pts):
                relabeled = frozenset((perm[x], perm[y]) for (x, y) in rel)
                code = tuple((x, y) in relabeled
                             for x in pts for y in pts)
                if best is None or code > best[0]:
                    best = (code, relabeled)
            if best[0] not in seen:
                seen.add(best[0])
                reps.append((best[0], DirectedSet(pts, best[1])))
        reps.sort(key=lambda t: t[0])
        out.extend(d for (_, d) in reps)
    return tuple(out)


def iso_to_canonical(d: DirectedSet,
                     bound: int) -> Tuple[int, Dict]:
    """Locate a directed set among the canonical ones up to iso.

    Returns (index, mapping) where mapping sends elements of d to the
    elements of canonical_directed_sets(bound)[index].  Deterministic:
    first canonical index, then the least bijection.
    """
    reps = canonical_directed_sets(bound)
    k = len(d.elements)
    for i, rep in enumerate(reps):
        if len(rep.elements) != k:
            continue
        for perm in itertools.permutations(rep.elements):
            phi = dict(zip(d.elements, perm))
            if all(((phi[x], phi[y]) in rep.le) == ((x, y) in d.le)
                   for x in d.elements for y in d.elements):
                return i, phi
    raise ValueError("no isomorphic canonical directed set within bound")


def p_infinity(d: DirectedSet) -> FinTopSpace:
    """The directed set with a limit point attached.

    Points are the carrier plus "oo".  A set containing "oo" is open iff
    it contains a whole tail; every set avoiding "oo" is open.
    """
    if "oo" in d.elements:
        raise ValueError('carrier already contains "oo"')
    pts = d.elements + ("oo",)
    opens = []
    for sub in _subsets(pts):
        ssub = frozenset(sub)
        if "oo" in ssub:
            if not any(tail(d, p) <= ssub for p in d.elements):
                continue
        opens.append(ssub)
    return FinTopSpace(pts, frozenset(opens))


def is_continuous(f: Dict, s: FinTopSpace, t: FinTopSpace) -> bool:
    """Open-preimage continuity."""
    if set(f.keys()) != set(s.points):
        return False
    if not all(f[x] in set(t.points) for x in s.points):
        return False
    for u in t.opens:
        pre = frozenset(x for x in s.points if f[x] in u)
        if pre not in s.opens:
            return False
    return True


def continuous_maps(s: FinTopSpace, t: FinTopSpace) -> Tuple[Dict, ...]:
    """All continuous maps s -> t, in a fixed order.

    Uses the finite-space characterization: continuous iff monotone for
    the specialization preorders.  Backtracks point by point, checking
    each new value against the already assigned comparable points.
    """
    sle = specialization_leq(s)
    tle = specialization_leq(t)
    pts = s.points
    out: List[Dict] = []
    assign: List = []

    def rec(k: int) -> None:
        if k == len(pts):
            out.append(dict(zip(pts, assign)))
            return
        for y in t.points:
            ok = True
            for i in range(k):
                if (pts[i], pts[k]) in sle and (assign[i], y) not in tle:
                    ok = False
                    break
                if (pts[k], pts[i]) in sle and (y, assign[i]) not in tle:
                    ok = False
                    break
            if ok:
                assign.append(y)
                rec(k + 1)
                assign.pop()

    rec(0)
    return tuple(out)


def product_space(s: FinTopSpace, t: FinTopSpace) -> FinTopSpace:
    """Product topology; opens are up-sets of the product preorder."""
    pts = ctuple((x, y) for x in s.points for y in t.points)
    mos = minopen_table(s)
    mot = minopen_table(t)
    opens = []
    for sub in _subsets(pts):
        ssub = frozenset(sub)
        if all(frozenset((a, b)
                         for a in mos[x] for b in mot[y]) <= ssub
               for (x, y) in ssub):
            opens.append(ssub)
    return FinTopSpace(pts, frozenset(opens))


def coproduct_space(spaces: Iterable[FinTopSpace]) -> FinTopSpace:
    """Disjoint union with points tagged by summand position."""
    sps = list(spaces)
    pts = tuple((i, x) for i, sp in enumerate(sps) for x in sp.points)
    opens = []
    pieces = [csorted(sp.opens) for sp in sps]
    for combo in itertools.product(*pieces):
        opens.append(frozenset(
            (i, x) for i, u in enumerate(combo) for x in u))
    return FinTopSpace(pts, frozenset(opens))
