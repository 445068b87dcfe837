"""Convergence oracles and the axioms characterizing topological ones.

A ConvergenceOracle is an explicit table of convergence statements
(index set, net values, limit point) over the canonical directed sets up
to a size bound.  Queries on arbitrary directed sets are answered by
relabeling to a canonical representative, which makes the recorded
relation isomorphism-invariant by construction.

The four axioms checked here: constant nets converge to their value;
convergence is stable under cofinal precomposition; a net converges to x
as soon as every cofinal subset of its index admits no subnet escaping x
fails, in the strengthened form quantified over cofinal subsets; and
iterated limits converge along the product index.  Together they are
exactly the conditions under which the table is the convergence relation
of a (finite) topology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from ..canon import csorted, ctuple, sort_key
from .base import (
    DirectedSet,
    FinTopSpace,
    Net,
    canonical_directed_sets,
    converges,
    directed_product,
    is_cofinal,
    iso_to_canonical,
    limits,
    tail,
    validate_space,
)


@dataclass(frozen=True)
class ConvergenceOracle:
    """Convergence statements over canonical directed sets up to a bound.

    ``table`` holds triples (i, values, x): the net with the given values
    over canonical_directed_sets(bound)[i] converges to x.
    """

    points: Tuple
    bound: int
    table: frozenset

    def entries(self) -> Tuple:
        return csorted(self.table)


def oracle_from_space(s: FinTopSpace, bound: int) -> ConvergenceOracle:
    reps = canonical_directed_sets(bound)
    rows = []
    for i, d in enumerate(reps):
        for values in itertools.product(s.points, repeat=len(d.elements)):
            n = Net(d, values)
            for x in s.points:
                if converges(s, n, x):
                    rows.append((i, values, x))
    return ConvergenceOracle(tuple(s.points), bound, frozenset(rows))


def oracle_decide(o: ConvergenceOracle, d: DirectedSet,
                  values: Tuple, x) -> bool:
    """Answer a convergence query over an arbitrary directed set."""
    i, phi = iso_to_canonical(d, o.bound)
    rep = canonical_directed_sets(o.bound)[i]
    transported = [None] * len(rep.elements)
    for pos, e in enumerate(d.elements):
        transported[rep.elements.index(phi[e])] = values[pos]
    return (i, tuple(transported), x) in o.table


def with_entries(o: ConvergenceOracle,
                 add: Iterable = (),
                 remove: Iterable = ()) -> ConvergenceOracle:
    """A copy of the oracle with some table rows flipped."""
    table = set(o.table)
    for row in add:
        table.add(row)
    for row in remove:
        table.discard(row)
    return ConvergenceOracle(o.points, o.bound, frozenset(table))


def topology_from_convergence(o: ConvergenceOracle) -> FinTopSpace:
    """Opens are complements of the net-stable subsets.

    A subset is net-stable when every recorded convergent net with
    values inside it has its limit inside it.  Raises if the resulting
    family is not a topology (possible for tables that are not
    convergence relations of any topology).
    """
    pts = o.points
    closed = []
    for r in range(len(pts) + 1):
        for combo in itertools.combinations(pts, r):
            a = frozenset(combo)
            ok = True
            for (i, values, x) in o.table:
                if x not in a and all(v in a for v in values):
                    ok = False
                    break
            if ok:
                closed.append(a)
    full = frozenset(pts)
    opens = frozenset(full - a for a in closed)
    s = FinTopSpace(pts, opens)
    rep = validate_space(s)
    if not rep.ok:
        raise ValueError(
            "net-stable sets do not form a topology: %s"
            % "; ".join(rep.violations))
    return s


@lru_cache(maxsize=None)
def _cofinal_maps(bound: int, j: int, i: int) -> Tuple[Dict, ...]:
    """All cofinal maps from canonical set j into canonical set i."""
    reps = canonical_directed_sets(bound)
    q, p = reps[j], reps[i]
    out = []
    for values in itertools.product(p.elements, repeat=len(q.elements)):
        h = dict(zip(q.elements, values))
        if is_cofinal(h, q, p):
            out.append(h)
    return tuple(out)


def _cofinal_subsets(d: DirectedSet) -> Tuple[Tuple[frozenset,
                                                    DirectedSet], ...]:
    """Cofinal subsets with their induced order.

    In a finite directed set every cofinal subset contains an element of
    the top equivalence class, so the induced order is directed again.
    """
    out = []
    for r in range(1, len(d.elements) + 1):
        for combo in itertools.combinations(d.elements, r):
            sub = frozenset(combo)
            if all(any((p, q) in d.le for q in sub)
                   for p in d.elements):
                induced = DirectedSet(
                    ctuple(combo),
                    frozenset((a, b) for (a, b) in d.le
                              if a in sub and b in sub))
                out.append((sub, induced))
    return tuple(out)


@dataclass(frozen=True)
class AxiomRecord:
    name: str
    ok: bool
    witnesses: Tuple
    notes: Tuple


@dataclass(frozen=True)
class KelleyReport:
    ok: bool
    axioms: Tuple[AxiomRecord, ...]

    def axiom(self, name: str) -> AxiomRecord:
        for a in self.axioms:
            if a.name == name:
                return a
        raise KeyError(name)


def check_kelley_axioms(o: ConvergenceOracle,
                        witness_cap: int = 10) -> KelleyReport:
    reps = canonical_directed_sets(o.bound)
    table = o.table

    con_wit: List = []
    for i, d in enumerate(reps):
        for x in o.points:
            if (i, (x,) * len(d.elements), x) not in table:
                con_wit.append((i, x))
    con = AxiomRecord("constants", not con_wit,
                      ctuple(con_wit[:witness_cap]), ())

    sub_wit: List = []
    for (i, values, x) in csorted(table):
        for j in range(len(reps)):
            for h in _cofinal_maps(o.bound, j, i):
                composed = tuple(values[reps[i].elements.index(h[b])]
                                 for b in reps[j].elements)
                if (j, composed, x) not in table:
                    sub_wit.append((i, values, x, j,
                                    ctuple(h.items())))
        if len(sub_wit) >= witness_cap:
            break
    sub = AxiomRecord("subnets", not sub_wit,
                      ctuple(sub_wit[:witness_cap]), ())

    loc_wit: List = []
    subsets_by_i = {i: _cofinal_subsets(d) for i, d in enumerate(reps)}
    for i, d in enumerate(reps):
        for values in itertools.product(o.points,
                                        repeat=len(d.elements)):
            for x in o.points:
                if (i, values, x) in table:
                    continue
                found_quiet_subset = False
                per_subset = []
                for (subel, induced) in subsets_by_i[i]:
                    conv = _converging_subnet(
                        o, d, values, induced, x)
                    per_subset.append((csorted(subel), conv))
                    if conv is None:
                        found_quiet_subset = True
                        break
                if not found_quiet_subset:
                    loc_wit.append((i, values, x, ctuple(per_subset)))
                    if len(loc_wit) >= witness_cap:
                        break
            if len(loc_wit) >= witness_cap:
                break
        if len(loc_wit) >= witness_cap:
            break
    loc = AxiomRecord("locality", not loc_wit,
                      ctuple(loc_wit[:witness_cap]), ())

    it_wit: List = []
    it_notes: List = []
    skipped = set()
    for i, d in enumerate(reps):
        k = len(d.elements)
        true_here = [(values, x) for (ii, values, x) in csorted(table)
                     if ii == i]
        shapes = []
        for combo in itertools.product(range(len(reps)), repeat=k):
            size = k
            for jp in combo:
                size *= len(reps[jp].elements)
            if size > o.bound:
                if (i, combo) not in skipped:
                    skipped.add((i, combo))
                continue
            shapes.append(combo)
        for (s_values, x) in true_here:
            for combo in shapes:
                cand = []
                for pos in range(k):
                    jp = combo[pos]
                    cand.append([values for (jj, values, y)
                                 in csorted(table)
                                 if jj == jp and y == s_values[pos]])
                for choice in itertools.product(*cand):
                    pf = directed_product(
                        [d] + [reps[jp] for jp in combo])
                    diag = []
                    for el in pf.elements:
                        p = el[0]
                        pos = d.elements.index(p)
                        diag.append(choice[pos][
                            reps[combo[pos]].elements.index(
                                el[1 + pos])])
                    if not oracle_decide(o, pf, tuple(diag), x):
                        it_wit.append((i, s_values, x, combo,
                                       ctuple(choice)))
                        if len(it_wit) >= witness_cap:
                            break
                if len(it_wit) >= witness_cap:
                    break
            if len(it_wit) >= witness_cap:
                break
        if len(it_wit) >= witness_cap:
            break
    if skipped:
        it_notes.append(
            "skipped %d index shapes whose product exceeds bound %d"
            % (len(skipped), o.bound))
    it = AxiomRecord("iterations", not it_wit,
                     ctuple(it_wit[:witness_cap]), tuple(it_notes))

    axioms = (con, sub, loc, it)
    return KelleyReport(all(a.ok for a in axioms), axioms)


def _converging_subnet(o: ConvergenceOracle, d: DirectedSet,
                       values: Tuple, induced: DirectedSet,
                       x) -> Optional[Tuple]:
    """A subnet of the restriction to a cofinal subset converging to x.

    Returns (canonical index, composed values) or None.  Quantifies over
    cofinal maps from every canonical directed set into the subset.
    """
    reps = canonical_directed_sets(o.bound)
    for j, r in enumerate(reps):
        for h_values in itertools.product(induced.elements,
                                          repeat=len(r.elements)):
            h = dict(zip(r.elements, h_values))
            if not is_cofinal(h, r, induced):
                continue
            composed = tuple(values[d.elements.index(h[b])]
                             for b in r.elements)
            if (j, composed, x) in o.table:
                return (j, composed)
    return None


def continuity_via_nets(f: Dict, s: FinTopSpace, t: FinTopSpace,
                        bound: int = 2) -> bool:
    """Whether f preserves all recorded convergences within the bound."""
    reps = canonical_directed_sets(bound)
    for d in reps:
        for values in itertools.product(s.points,
                                        repeat=len(d.elements)):
            n = Net(d, values)
            for x in s.points:
                if converges(s, n, x):
                    fn = Net(d, tuple(f[v] for v in values))
                    if not converges(t, fn, f[x]):
                        return False
    return True


def initial_topology(carrier: Tuple,
                     maps: Iterable[Tuple[Dict, FinTopSpace]],
                     bound: int = 2) -> FinTopSpace:
    """Coarsest topology making the given maps continuous.

    Built by declaring a net convergent iff each composite net converges
    in its target, then reconstructing opens from net-stable sets.
    """
    ms = list(maps)
    reps = canonical_directed_sets(bound)
    rows = []
    for i, d in enumerate(reps):
        for values in itertools.product(carrier,
                                        repeat=len(d.elements)):
            for x in carrier:
                ok = True
                for (f, target) in ms:
                    fn = Net(d, tuple(f[v] for v in values))
                    if not converges(target, fn, f[x]):
                        ok = False
                        break
                if ok:
                    rows.append((i, values, x))
    o = ConvergenceOracle(tuple(carrier), bound, frozenset(rows))
    return topology_from_convergence(o)


def subbase_topology(carrier: Tuple, subbase: Iterable) -> FinTopSpace:
    """Topology generated by a family: close under finite meets, then joins."""
    pts = tuple(carrier)
    sets = {frozenset(u) for u in subbase}
    sets.add(frozenset(pts))
    while True:
        new = {u & v for u in sets for v in sets} - sets
        if not new:
            break
        sets |= new
    sets.add(frozenset())
    while True:
        new = {u | v for u in sets for v in sets} - sets
        if not new:
            break
        sets |= new
    return FinTopSpace(pts, frozenset(sets))


def discrete_via_nets(carrier: Tuple, bound: int = 2) -> ConvergenceOracle:
    """The oracle whose convergent nets are the eventually constant ones."""
    reps = canonical_directed_sets(bound)
    rows = []
    for i, d in enumerate(reps):
        for values in itertools.product(carrier,
                                        repeat=len(d.elements)):
            for x in carrier:
                if any(all(values[d.elements.index(q)] == x
                           for q in tail(d, p))
                       for p in d.elements):
                    rows.append((i, values, x))
    return ConvergenceOracle(tuple(carrier), bound, frozenset(rows))


def coproduct_convergence(spaces: Iterable[FinTopSpace],
                          bound: int = 2) -> ConvergenceOracle:
    """Convergence on a disjoint union: eventually in one summand, and
    the tail converges there."""
    sps = list(spaces)
    pts = tuple((i, x) for i, sp in enumerate(sps) for x in sp.points)
    reps = canonical_directed_sets(bound)
    rows = []
    for di, d in enumerate(reps):
        for values in itertools.product(pts, repeat=len(d.elements)):
            for (ti, x) in pts:
                if _coproduct_converges(sps, d, values, ti, x):
                    rows.append((di, values, (ti, x)))
    return ConvergenceOracle(pts, bound, frozenset(rows))


def _coproduct_converges(sps, d: DirectedSet, values: Tuple,
                         ti: int, x) -> bool:
    for p in d.elements:
        t = csorted(tail(d, p))
        if all(values[d.elements.index(q)][0] == ti for q in t):
            induced = DirectedSet(
                ctuple(t),
                frozenset((a, b) for (a, b) in d.le
                          if a in set(t) and b in set(t)))
            sub = Net(induced, tuple(values[d.elements.index(q)][1]
                                     for q in induced.elements))
            if converges(sps[ti], sub, x):
                return True
    return False


def product_convergence(spaces: Iterable[FinTopSpace],
                        bound: int = 2) -> ConvergenceOracle:
    """Componentwise convergence on a product of finitely many spaces."""
    sps = list(spaces)
    pts = ctuple(itertools.product(*[sp.points for sp in sps]))
    reps = canonical_directed_sets(bound)
    rows = []
    for di, d in enumerate(reps):
        for values in itertools.product(pts, repeat=len(d.elements)):
            for x in pts:
                ok = True
                for c, sp in enumerate(sps):
                    comp = Net(d, tuple(v[c] for v in values))
                    if not converges(sp, comp, x[c]):
                        ok = False
                        break
                if ok:
                    rows.append((di, values, x))
    return ConvergenceOracle(pts, bound, frozenset(rows))


def is_hausdorff(s: FinTopSpace, bound: int = 2) -> bool:
    """No net within the bound has two distinct limits."""
    reps = canonical_directed_sets(bound)
    for d in reps:
        for values in itertools.product(s.points,
                                        repeat=len(d.elements)):
            n = Net(d, values)
            if len(limits(s, n)) > 1:
                return False
    return True


def hausdorff_by_separation(s: FinTopSpace) -> bool:
    """Direct route: distinct points have disjoint open neighbourhoods."""
    for x in s.points:
        for y in s.points:
            if sort_key(x) < sort_key(y):
                if not any(x in u and y in v and not (u & v)
                           for u in s.opens for v in s.opens):
                    return False
    return True
