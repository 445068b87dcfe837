"""Topologies on open-set lattices and their dual quotient presentation.

A TopologicalTopology pairs a finite space X with a topology tau on the
set O(X) of open sets.  Compatibility asks all finite-arity unions and
intersections O(X)^k -> O(X) to be continuous for tau.  On finite
carriers continuity is monotonicity for specialization, and joint
monotonicity follows from monotonicity in one argument at a time, so the
whole finite-arity family is covered by a single quadratic condition.
Arbitrary-arity continuity is a different statement and is not decided
here; reports carry the finitary label.

The dual presentation indexes, for each directed set P, a carrier
(P u {oo}) x X whose distinguished subsets are the families of opens of
X converging in tau.  The dual axioms are continuity statements about
four kinds of canonical maps between these carriers; the gluing carriers
appearing in the locality and iteration axioms are computed as honest
set colimits before the openness conditions are checked.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..canon import csorted, ctuple, sort_key
from ..fincat import span_shape_category
from ..finsetlim import FinSetDiagram, colimit
from .base import (
    DirectedSet,
    FinTopSpace,
    Net,
    canonical_directed_sets,
    converges,
    directed_product,
    is_continuous,
    iso_to_canonical,
    product_space,
    specialization_leq,
    validate_space,
)
from .convergence import (
    AxiomRecord,
    ConvergenceOracle,
    _cofinal_maps,
    _cofinal_subsets,
    topology_from_convergence,
)


@dataclass(frozen=True)
class TopologicalTopology:
    """A finite space together with a topology on its open-set lattice."""

    space: FinTopSpace
    tau: FinTopSpace


def make_topological_topology(space: FinTopSpace,
                              tau_opens) -> TopologicalTopology:
    """Build and validate the pair; tau lives on the opens of the space."""
    pts = tuple(csorted(space.opens))
    tau = FinTopSpace(pts, frozenset(frozenset(u) for u in tau_opens))
    rep = validate_space(tau)
    if not rep.ok:
        raise ValueError("tau is not a topology on the open-set lattice: %s"
                         % "; ".join(rep.violations))
    for fam in tau.opens:
        for u in fam:
            if u not in space.opens:
                raise ValueError("tau mentions a set that is not open")
    return TopologicalTopology(space, tau)


@dataclass(frozen=True)
class TTReport:
    ok: bool
    union_ok: bool
    inter_ok: bool
    witnesses: Tuple
    note: str


def check_topological_topology(tt: TopologicalTopology) -> TTReport:
    """Continuity of all finite-arity unions and intersections.

    Checked via specialization: U <= V must give U op S <= V op S for
    every S.  Chaining one argument at a time recovers every finite
    arity, nullary operations being constant and always continuous.
    """
    leq = specialization_leq(tt.tau)
    wit: List = []
    union_ok = True
    inter_ok = True
    for (u, v) in csorted(leq):
        for s in tt.tau.points:
            if ((u | s), (v | s)) not in leq:
                union_ok = False
                wit.append(("union", u, v, s))
            if ((u & s), (v & s)) not in leq:
                inter_ok = False
                wit.append(("inter", u, v, s))
    wit = wit[:10]
    return TTReport(union_ok and inter_ok, union_ok, inter_ok,
                    ctuple(wit),
                    "finite arities only; arbitrary arity is out of scope")


def tt_continuity_direct(tt: TopologicalTopology, op: str = "union") -> bool:
    """Binary union or intersection checked on the genuine product space.

    Cross-validates the specialization route of
    check_topological_topology at arity 2.
    """
    prod = product_space(tt.tau, tt.tau)
    if op == "union":
        f = {(u, v): u | v for u in tt.tau.points for v in tt.tau.points}
    elif op == "inter":
        f = {(u, v): u & v for u in tt.tau.points for v in tt.tau.points}
    else:
        raise ValueError("op must be 'union' or 'inter'")
    return is_continuous(f, prod, tt.tau)


def finite_arity_counterexample(tt: TopologicalTopology,
                                max_arity: int = 2) -> Optional[Tuple]:
    """Search for an explicit failing instance up to the given arity."""
    leq = specialization_leq(tt.tau)
    pts = tt.tau.points
    for k in range(1, max_arity + 1):
        for a in itertools.product(pts, repeat=k):
            for b in itertools.product(pts, repeat=k):
                if not all((a[i], b[i]) in leq for i in range(k)):
                    continue
                ua = frozenset().union(*a)
                ub = frozenset().union(*b)
                if (ua, ub) not in leq:
                    return ("union", k, a, b)
                full = frozenset(tt.space.points)
                ia = full
                ib = full
                for i in range(k):
                    ia = ia & a[i]
                    ib = ib & b[i]
                if (ia, ib) not in leq:
                    return ("inter", k, a, b)
    return None


@dataclass(frozen=True)
class CotopologyRep:
    """Distinguished subset families on (P u {oo}) x X per directed set.

    ``entries[i]`` belongs to canonical_directed_sets(bound)[i].  The
    families need not form topologies; validate_cotopology reports a
    per-entry diagnostic flag.
    """

    space: FinTopSpace
    bound: int
    entries: Tuple[frozenset, ...]


def carrier_points(d: DirectedSet, space: FinTopSpace) -> Tuple:
    return tuple((p, x) for p in d.elements + ("oo",)
                 for x in space.points)


def _family_to_set(d: DirectedSet, space: FinTopSpace,
                   ws: Tuple, woo: frozenset) -> frozenset:
    out = set()
    for pos, p in enumerate(d.elements):
        for x in ws[pos]:
            out.add((p, x))
    for x in woo:
        out.add(("oo", x))
    return frozenset(out)


def _set_to_family(d: DirectedSet, space: FinTopSpace,
                   s: frozenset) -> Tuple[Tuple, frozenset]:
    ws = tuple(frozenset(x for x in space.points if (p, x) in s)
               for p in d.elements)
    woo = frozenset(x for x in space.points if ("oo", x) in s)
    return ws, woo


def cotopology_from_tt(tt: TopologicalTopology,
                       d: DirectedSet) -> frozenset:
    """Distinguished subsets: slicewise-open families converging in tau."""
    fams = []
    pts = tt.tau.points
    for ws in itertools.product(pts, repeat=len(d.elements)):
        n = Net(d, ws)
        for woo in pts:
            if converges(tt.tau, n, woo):
                fams.append(_family_to_set(d, tt.space, ws, woo))
    return frozenset(fams)


def build_cotopology(tt: TopologicalTopology, bound: int) -> CotopologyRep:
    reps = canonical_directed_sets(bound)
    return CotopologyRep(
        tt.space, bound,
        tuple(cotopology_from_tt(tt, d) for d in reps))


@dataclass(frozen=True)
class CotopValidation:
    ok: bool
    violations: Tuple[str, ...]
    topology_flags: Tuple[bool, ...]


def validate_cotopology(rep: CotopologyRep) -> CotopValidation:
    """Slicewise openness plus the canonical-quotient conditions.

    The quotient map from the discrete-product-plus-limit carrier is a
    continuous surjection exactly when every distinguished subset has
    all slices open, which is checked directly.  Whether each entry is
    itself a topology is reported as a diagnostic flag, not a failure.
    """
    reps = canonical_directed_sets(rep.bound)
    violations: List[str] = []
    flags: List[bool] = []
    if len(rep.entries) != len(reps):
        violations.append("entry count does not match the directed sets")
        return CotopValidation(False, tuple(violations), ())
    for i, d in enumerate(reps):
        pts = carrier_points(d, rep.space)
        ptset = set(pts)
        for s in csorted(rep.entries[i]):
            if not frozenset(s) <= ptset:
                violations.append(
                    "entry %d contains a subset outside the carrier" % i)
                continue
            ws, woo = _set_to_family(d, rep.space, s)
            for w in ws + (woo,):
                if w not in rep.space.opens:
                    violations.append(
                        "entry %d has a non-open slice %s"
                        % (i, sorted(w, key=sort_key)))
                    break
        flags.append(validate_space(
            FinTopSpace(pts, frozenset(rep.entries[i]))).ok)
    violations = violations[:20]
    return CotopValidation(not violations, tuple(violations), tuple(flags))


def tt_from_cotopology(rep: CotopologyRep) -> TopologicalTopology:
    """Recover tau: a family of opens converges iff its set is distinguished."""
    reps = canonical_directed_sets(rep.bound)
    pts = tuple(csorted(rep.space.opens))
    rows = []
    for i, d in enumerate(reps):
        for ws in itertools.product(pts, repeat=len(d.elements)):
            for woo in pts:
                if _family_to_set(d, rep.space, ws, woo) in rep.entries[i]:
                    rows.append((i, ws, woo))
    oracle = ConvergenceOracle(pts, rep.bound, frozenset(rows))
    tau = topology_from_convergence(oracle)
    return TopologicalTopology(rep.space, tau)


@dataclass(frozen=True)
class CotopReport:
    ok: bool
    axioms: Tuple[AxiomRecord, ...]

    def axiom(self, name: str) -> AxiomRecord:
        for a in self.axioms:
            if a.name == name:
                return a
        raise KeyError(name)


_AXIOM_CACHE: Dict[Tuple, CotopReport] = {}


def _signature(rep: CotopologyRep) -> Tuple:
    """Relabeling-invariant fingerprint of the distinguished families."""
    opens_list = tuple(csorted(rep.space.opens))
    index = {u: i for i, u in enumerate(opens_list)}
    reps = canonical_directed_sets(rep.bound)
    raw = []
    for i, d in enumerate(reps):
        rows = []
        for s in rep.entries[i]:
            ws, woo = _set_to_family(d, rep.space, s)
            rows.append(tuple(index[w] for w in ws) + (index[woo],))
        raw.append(rows)
    m = len(opens_list)
    best = None
    for perm in itertools.permutations(range(m)):
        cand = tuple(
            tuple(sorted(tuple(perm[ix] for ix in row) for row in rows))
            for rows in raw)
        if best is None or cand < best:
            best = cand
    return (rep.bound, len(rep.space.points), m, best)


def check_cotopology_axioms(rep: CotopologyRep) -> CotopReport:
    """The four dual axioms, as continuity of canonical carrier maps.

    Gluing carriers for the locality and iteration axioms are built as
    set colimits and their comparison with the expected carrier is
    attested before the openness conditions run.  Results for valid
    reps are cached under a relabeling-invariant signature.
    """
    sig = _signature(rep)
    if sig in _AXIOM_CACHE:
        return _AXIOM_CACHE[sig]
    reps = canonical_directed_sets(rep.bound)
    space = rep.space
    opens_list = tuple(csorted(space.opens))

    cod_wit: List = []
    for i, d in enumerate(reps):
        for v in opens_list:
            fam = _family_to_set(d, space, (v,) * len(d.elements), v)
            if fam not in rep.entries[i]:
                cod_wit.append((i, v))
    ax1 = AxiomRecord("codiagonal", not cod_wit, ctuple(cod_wit[:10]), ())

    sub_wit: List = []
    for j, q in enumerate(reps):
        decoded = [
            _set_to_family(q, space, s) for s in csorted(rep.entries[j])]
        for i, p in enumerate(reps):
            for h in _cofinal_maps(rep.bound, i, j):
                for (ws, woo) in decoded:
                    pre = set()
                    for pos, pe in enumerate(p.elements):
                        for x in ws[q.elements.index(h[pe])]:
                            pre.add((pe, x))
                    for x in woo:
                        pre.add(("oo", x))
                    if frozenset(pre) not in rep.entries[i]:
                        sub_wit.append((i, j, ctuple(h.items()), ws, woo))
        if len(sub_wit) >= 10:
            break
    ax2 = AxiomRecord("subnets", not sub_wit, ctuple(sub_wit[:10]), ())

    loc_wit: List = []
    loc_notes: List[str] = []
    for i, d in enumerate(reps):
        subsets = _cofinal_subsets(d)
        glue_ok = _attest_locality_gluing(d, subsets, space)
        if not glue_ok:
            loc_notes.append(
                "gluing carrier mismatch at directed set %d" % i)
        restr = []
        for (subel, induced) in subsets:
            jq, phi = iso_to_canonical(induced, rep.bound)
            restr.append((subel, induced, jq, phi))
        k = len(d.elements)
        for ws in itertools.product(opens_list, repeat=k):
            for woo in opens_list:
                if _family_to_set(d, space, ws, woo) in rep.entries[i]:
                    continue
                witnessed = False
                for (subel, induced, jq, phi) in restr:
                    qrep = reps[jq]
                    trans = [None] * len(qrep.elements)
                    for q in induced.elements:
                        trans[qrep.elements.index(phi[q])] = \
                            ws[d.elements.index(q)]
                    pulled = _family_to_set(qrep, space,
                                            tuple(trans), woo)
                    if pulled not in rep.entries[jq]:
                        witnessed = True
                        break
                if not witnessed:
                    loc_wit.append((i, ws, woo))
        if len(loc_wit) >= 10:
            break
    ax3 = AxiomRecord("locality", not loc_wit, ctuple(loc_wit[:10]),
                      tuple(loc_notes))

    it_wit: List = []
    it_notes: List[str] = []
    skipped = 0
    for i, d in enumerate(reps):
        k = len(d.elements)
        for combo in itertools.product(range(len(reps)), repeat=k):
            qs = [reps[jp] for jp in combo]
            size = k
            for qrep in qs:
                size *= len(qrep.elements)
            if size > rep.bound:
                skipped += 1
                continue
            pf = directed_product([d] + qs)
            ipf, phi = iso_to_canonical(pf, rep.bound)
            pfrep = reps[ipf]
            if not _attest_iteration_gluing(d, qs, space):
                it_notes.append(
                    "gluing carrier mismatch at directed set %d" % i)
            for gfam in itertools.product(opens_list,
                                          repeat=len(pf.elements)):
                for goo in opens_list:
                    trans = [None] * len(pfrep.elements)
                    for pos, el in enumerate(pf.elements):
                        trans[pfrep.elements.index(phi[el])] = gfam[pos]
                    if _family_to_set(pfrep, space, tuple(trans),
                                      goo) in rep.entries[ipf]:
                        continue
                    us: Dict = {}
                    consistent = True
                    for pos, el in enumerate(pf.elements):
                        posp = d.elements.index(el[0])
                        key = (posp, el[1 + posp])
                        if key in us and us[key] != gfam[pos]:
                            consistent = False
                            break
                        us[key] = gfam[pos]
                    if not consistent:
                        continue
                    cands = []
                    for posp in range(k):
                        qrep = qs[posp]
                        uws = tuple(us[(posp, qq)]
                                    for qq in qrep.elements)
                        cands.append([
                            v for v in opens_list
                            if _family_to_set(qrep, space, uws, v)
                            in rep.entries[combo[posp]]])
                    for vchoice in itertools.product(*cands):
                        if _family_to_set(d, space, vchoice,
                                          goo) in rep.entries[i]:
                            it_wit.append((i, combo, gfam, goo,
                                           vchoice))
                            break
                if len(it_wit) >= 10:
                    break
            if len(it_wit) >= 10:
                break
        if len(it_wit) >= 10:
            break
    if skipped:
        it_notes.append(
            "skipped %d index shapes whose product exceeds bound %d"
            % (skipped, rep.bound))
    ax4 = AxiomRecord("iterations", not it_wit, ctuple(it_wit[:10]),
                      tuple(it_notes))

    axioms = (ax1, ax2, ax3, ax4)
    report = CotopReport(all(a.ok for a in axioms), axioms)
    if report.ok:
        _AXIOM_CACHE[sig] = report
    return report


def _attest_locality_gluing(d: DirectedSet, subsets,
                            space: FinTopSpace) -> bool:
    """The pushout of the restriction spans collapses onto the carrier.

    One leg per cofinal subset, glued along shared carrier points; the
    comparison with (P u {oo}) x X must be bijective.
    """
    objects = ["g"]
    arrows = []
    sets = {"g": carrier_points(d, space)}
    maps: Dict[str, Dict] = {}
    for n, (subel, induced) in enumerate(subsets):
        a, b = "a%d" % n, "b%d" % n
        objects += [a, b]
        pts = carrier_points(induced, space)
        sets[a] = pts
        sets[b] = pts
        arrows.append(("in%d" % n, a, b))
        arrows.append(("glue%d" % n, a, "g"))
        maps["in%d" % n] = {p: p for p in pts}
        maps["glue%d" % n] = {p: p for p in pts}
    shape = span_shape_category("locality_glue", objects, arrows)
    for obj in shape.objects:
        maps[shape.identity[obj]] = {p: p for p in sets[obj]}
    diag = FinSetDiagram(shape, sets, maps)
    coc = colimit(diag)
    if len(coc.apex) != len(sets["g"]):
        return False
    leg = coc.legs["g"]
    return len(set(leg.values())) == len(sets["g"])


def _attest_iteration_gluing(d: DirectedSet, qs,
                             space: FinTopSpace) -> bool:
    """The tail carriers glue onto the base along their limit rows."""
    objects = ["g"]
    arrows = []
    sets = {"g": carrier_points(d, space)}
    maps: Dict[str, Dict] = {}
    expected = len(sets["g"])
    for posp, qrep in enumerate(qs):
        e, m = "e%d" % posp, "m%d" % posp
        objects += [e, m]
        sets[e] = carrier_points(qrep, space)
        sets[m] = tuple(space.points)
        expected += len(sets[e]) - len(space.points)
        arrows.append(("tail%d" % posp, m, e))
        arrows.append(("base%d" % posp, m, "g"))
        maps["tail%d" % posp] = {x: ("oo", x) for x in space.points}
        maps["base%d" % posp] = {
            x: (d.elements[posp], x) for x in space.points}
    shape = span_shape_category("iteration_glue", objects, arrows)
    for obj in shape.objects:
        maps[shape.identity[obj]] = {p: p for p in sets[obj]}
    diag = FinSetDiagram(shape, sets, maps)
    coc = colimit(diag)
    return len(coc.apex) == expected
