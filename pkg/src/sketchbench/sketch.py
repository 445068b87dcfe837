"""Limit sketches and their finite-set models.

A sketch is a finite table category together with distinguished cones.
A model is a set-valued functor sending every distinguished cone to a
limit cone; `is_realized` asks the same of the ambient category itself,
one hom-functor at a time (the Yoneda reduction).

`enumerate_models` is a constraint search over canonical carriers:
objects that are no cone's apex get carriers {0..n-1}; an apex whose
cone mentions the apex itself (the jointly-monic shape built by
`monomorphism_cone`) ranges over subsets of the product of its leg
targets, with the legs as projections; every other apex is computed as
the canonical limit of its diagram.  Morphism tables are filled in by
propagation along the composition table, with backtracking over the
remaining free values.  The enumeration is exhaustive for models in
this canonical form and therefore hits every model exactly once up to
renaming of carriers that fixes the canonical form; counts agree with
labeled brute-force oracles (see the tests).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .canon import csorted, ctuple, sort_key
from .fincat import (FinCategory, FunctorRep, Mor, ValidationReport, opposite,
                     validate_category, validate_functor)
from .finsetlim import (FinSetDiagram, SetCocone, SetCone, is_colimit_cocone,
                        is_limit_cone, limit, validate_diagram)

_SELFREF_PRODUCT_CAP = 16


class SketchEnumerationError(Exception):
    """Raised when a sketch falls outside the supported enumeration plans."""


@dataclass(frozen=True)
class Cone:
    """Distinguished cone: apex object, shape, diagram and legs.

    diagram_objects / diagram_morphisms present the diagram functor
    shape -> ambient; legs maps each shape object to an ambient
    morphism apex -> diagram(object).
    """
    name: str
    apex: str
    shape: FinCategory
    diagram_objects: Dict[str, str]
    diagram_morphisms: Dict[str, str]
    legs: Dict[str, str]


@dataclass(frozen=True)
class Cocone:
    """Distinguished cocone of a sketch-in-opposite (colimit sketch)."""
    name: str
    apex: str
    shape: FinCategory
    diagram_objects: Dict[str, str]
    diagram_morphisms: Dict[str, str]
    legs: Dict[str, str]


@dataclass(frozen=True)
class Sketch:
    name: str
    ambient: FinCategory
    cones: Tuple[Cone, ...]


@dataclass(frozen=True)
class CoSketch:
    name: str
    ambient: FinCategory  # already the opposite category
    cocones: Tuple[Cocone, ...]


@dataclass(frozen=True)
class SetModel:
    sketch: Sketch
    functor: FinSetDiagram

    def at(self, obj: str) -> tuple:
        return self.functor.sets[obj]


def validate_cone(ambient: FinCategory, cone: Cone) -> ValidationReport:
    bad: List[str] = []
    rep = validate_category(cone.shape)
    if not rep.ok:
        return ValidationReport(False, ("shape invalid:",) + rep.violations[:5])
    F = FunctorRep(cone.shape, ambient, cone.diagram_objects, cone.diagram_morphisms)
    rep = validate_functor(F)
    if not rep.ok:
        return ValidationReport(False, ("diagram not a functor:",) + rep.violations[:5])
    if cone.apex not in ambient._obj_index:
        return ValidationReport(False, (f"unknown apex {cone.apex}",))
    for v in cone.shape.objects:
        leg = cone.legs.get(v)
        if leg is None:
            bad.append(f"missing leg at {v}")
            continue
        if ambient.src(leg) != cone.apex or ambient.tgt(leg) != cone.diagram_objects[v]:
            bad.append(f"leg at {v} has wrong type")
    if bad:
        return ValidationReport(False, tuple(bad))
    for m in cone.shape.morphisms:
        if ambient.comp(cone.diagram_morphisms[m.name], cone.legs[m.src]) != \
                cone.legs[m.tgt]:
            bad.append(f"legs do not commute with shape morphism {m.name}")
    return ValidationReport(not bad, tuple(bad))


def validate_sketch(s: Sketch) -> ValidationReport:
    rep = validate_category(s.ambient)
    if not rep.ok:
        return ValidationReport(False, ("ambient invalid:",) + rep.violations[:5])
    bad: List[str] = []
    for cone in s.cones:
        r = validate_cone(s.ambient, cone)
        if not r.ok:
            bad.append(f"cone {cone.name}: {r.violations[0]}")
    return ValidationReport(not bad, tuple(bad))


def monomorphism_cone(ambient: FinCategory, family: Sequence[str],
                      name: Optional[str] = None) -> Cone:
    """Cone expressing joint injectivity of a family of morphisms.

    The family must share a source X.  The shape has two copies of X
    with identity legs and one object per family member; a model sends
    the cone to a limit exactly when the family acts jointly
    injectively.
    """
    if not family:
        raise ValueError("empty family")
    x = ambient.src(family[0])
    for f in family:
        if ambient.src(f) != x:
            raise ValueError("family members have different sources")
    objs = ["a", "b"] + [f"t{i}" for i in range(len(family))]
    mors = []
    identity = {o: f"id_{o}" for o in objs}
    for o in objs:
        mors.append(Mor(f"id_{o}", o, o))
    for i in range(len(family)):
        mors.append(Mor(f"a>t{i}", "a", f"t{i}"))
        mors.append(Mor(f"b>t{i}", "b", f"t{i}"))
    comp = {}
    for m in mors:
        comp[(m.name, identity[m.src])] = m.name
        comp[(identity[m.tgt], m.name)] = m.name
    shape = FinCategory("monoshape", objs, mors, identity, comp)
    dobj = {"a": x, "b": x}
    dmor = {identity[o]: ambient.identity[dobj.get(o, "")]
            for o in ("a", "b")}
    legs = {"a": ambient.identity[x], "b": ambient.identity[x]}
    for i, f in enumerate(family):
        dobj[f"t{i}"] = ambient.tgt(f)
        dmor[f"id_t{i}"] = ambient.identity[ambient.tgt(f)]
        dmor[f"a>t{i}"] = f
        dmor[f"b>t{i}"] = f
        legs[f"t{i}"] = f
    cone_name = name or ("mono(" + ",".join(family) + ")")
    return Cone(cone_name, x, shape, dobj, dmor, legs)


# -- models ---------------------------------------------------------------

def induced_set_cone(F: FinSetDiagram, cone: Cone) -> SetCone:
    """Apply a set-valued functor on the ambient category to a cone."""
    d = FinSetDiagram(cone.shape,
                      {v: F.sets[cone.diagram_objects[v]] for v in cone.shape.objects},
                      {m.name: F.maps[cone.diagram_morphisms[m.name]]
                       for m in cone.shape.morphisms})
    legs = {v: F.maps[cone.legs[v]] for v in cone.shape.objects}
    return SetCone(d, F.sets[cone.apex], legs)


def induced_set_cocone(N: FinSetDiagram, cocone: Cocone) -> SetCocone:
    d = FinSetDiagram(cocone.shape,
                      {v: N.sets[cocone.diagram_objects[v]] for v in cocone.shape.objects},
                      {m.name: N.maps[cocone.diagram_morphisms[m.name]]
                       for m in cocone.shape.morphisms})
    legs = {v: N.maps[cocone.legs[v]] for v in cocone.shape.objects}
    return SetCocone(d, N.sets[cocone.apex], legs)


def is_model(s: Sketch, F: Union[FinSetDiagram, SetModel]) -> Tuple[bool, Tuple[str, ...]]:
    """Functoriality plus the limit condition at every distinguished cone."""
    if isinstance(F, SetModel):
        F = F.functor
    if F.shape is not s.ambient and F.shape.name != s.ambient.name:
        raise ValueError("functor is not over the sketch's ambient category")
    ok, bad = validate_diagram(F)
    if not ok:
        return False, bad
    fails: List[str] = []
    for cone in s.cones:
        good, why = is_limit_cone(induced_set_cone(F, cone))
        if not good:
            fails.append(f"cone {cone.name}: {why}")
    return not fails, tuple(fails)


def is_comodel(cs: CoSketch, N: Union[FinSetDiagram, SetModel]) -> Tuple[bool, Tuple[str, ...]]:
    if isinstance(N, SetModel):
        N = N.functor
    ok, bad = validate_diagram(N)
    if not ok:
        return False, bad
    fails: List[str] = []
    for cocone in cs.cocones:
        good, why = is_colimit_cocone(induced_set_cocone(N, cocone))
        if not good:
            fails.append(f"cocone {cocone.name}: {why}")
    return not fails, tuple(fails)


def hom_functor(c: FinCategory, w: str) -> FinSetDiagram:
    """The covariant hom-functor hom(w, -) as a finite-set diagram."""
    sets = {a: c.hom(w, a) for a in c.objects}
    maps = {m.name: {h: c.comp(m.name, h) for h in c.hom(w, m.src)}
            for m in c.morphisms}
    return FinSetDiagram(c, sets, maps)


def is_realized(s: Sketch) -> Tuple[bool, Tuple[str, ...]]:
    """True iff every distinguished cone is a limit cone in the ambient.

    Decided by the Yoneda reduction: for every object W the induced
    cone of hom-sets must be a limit cone of finite sets.
    """
    fails: List[str] = []
    for w in s.ambient.objects:
        hw = hom_functor(s.ambient, w)
        for cone in s.cones:
            good, why = is_limit_cone(induced_set_cone(hw, cone))
            if not good:
                fails.append(f"at W={w}, cone {cone.name}: {why}")
    return not fails, tuple(fails)


def yoneda_model(s: Sketch, a: str) -> SetModel:
    """hom(a, -) as a model; raises with the failing cone if it is none."""
    F = hom_functor(s.ambient, a)
    ok, why = is_model(s, F)
    if not ok:
        raise ValueError(f"hom({a}, -) is not a model: {why[0]}")
    return SetModel(s, F)


def dual_sketch(s: Sketch) -> CoSketch:
    """Reinterpret the cones as cocones over the opposite category."""
    amb_op = opposite(s.ambient)
    cocones = tuple(Cocone(c.name, c.apex, opposite(c.shape),
                           dict(c.diagram_objects), dict(c.diagram_morphisms),
                           dict(c.legs))
                    for c in s.cones)
    return CoSketch(s.name + "_dual", amb_op, cocones)


def tensor_sketch(s: Sketch, t: Sketch) -> Sketch:
    """Product ambient with cones (A, tau) and (sigma, B).

    For every object A of s and cone tau of t the cone (A, tau) has
    apex (A, apex tau), diagram (const A, diagram tau) and legs
    (id_A, legs tau); symmetrically for (sigma, B).
    """
    from .fincat import product_category
    prod = product_category(s.ambient, t.ambient)

    def oname(a: str, b: str) -> str:
        return f"({a}|{b})"

    cones: List[Cone] = []
    for a in s.ambient.objects:
        ida = s.ambient.identity[a]
        for tau in t.cones:
            dobj = {v: oname(a, tau.diagram_objects[v]) for v in tau.shape.objects}
            dmor = {m.name: oname(ida, tau.diagram_morphisms[m.name])
                    for m in tau.shape.morphisms}
            legs = {v: oname(ida, tau.legs[v]) for v in tau.shape.objects}
            cones.append(Cone(f"({a}|{tau.name})", oname(a, tau.apex),
                              tau.shape, dobj, dmor, legs))
    for sigma in s.cones:
        for b in t.ambient.objects:
            idb = t.ambient.identity[b]
            dobj = {v: oname(sigma.diagram_objects[v], b) for v in sigma.shape.objects}
            dmor = {m.name: oname(sigma.diagram_morphisms[m.name], idb)
                    for m in sigma.shape.morphisms}
            legs = {v: oname(sigma.legs[v], idb) for v in sigma.shape.objects}
            cones.append(Cone(f"({sigma.name}|{b})", oname(sigma.apex, b),
                              sigma.shape, dobj, dmor, legs))
    return Sketch(f"({s.name}(x){t.name})", prod, tuple(cones))


# -- natural transformations between set-valued functors ------------------

def enumerate_set_nat_trans(F: FinSetDiagram, G: FinSetDiagram) -> List[Dict[str, dict]]:
    """All natural transformations F => G between set-valued functors.

    Backtracking over component values with forward propagation along
    every morphism; order of enumeration is canonical (objects by index,
    elements and candidate values in carrier order).
    """
    cat = F.shape
    unknowns = [(a, x) for a in cat.objects for x in F.sets[a]]
    index = {u: i for i, u in enumerate(unknowns)}
    out_arrows: Dict[str, List[Mor]] = {a: [] for a in cat.objects}
    for m in cat.morphisms:
        out_arrows[m.src].append(m)
    beta: Dict[Tuple[str, object], object] = {}
    results: List[Dict[str, dict]] = []

    def propagate(stack) -> bool:
        while stack:
            a, x = stack.pop()
            v = beta[(a, x)]
            for m in out_arrows[a]:
                y = F.maps[m.name][x]
                w = G.maps[m.name][v]
                key = (m.tgt, y)
                if key in beta:
                    if beta[key] != w:
                        return False
                else:
                    beta[key] = w
                    trail.append(key)
                    stack.append(key)
        return True

    trail: List[Tuple[str, object]] = []

    def search(i: int) -> None:
        while i < len(unknowns) and unknowns[i] in beta:
            i += 1
        if i == len(unknowns):
            results.append({a: {x: beta[(a, x)] for x in F.sets[a]}
                            for a in cat.objects})
            return
        a, x = unknowns[i]
        for v in G.sets[a]:
            mark = len(trail)
            beta[(a, x)] = v
            trail.append((a, x))
            if propagate([(a, x)]):
                search(i + 1)
            while len(trail) > mark:
                del beta[trail.pop()]

    search(0)
    return results


def check_set_nat_trans(F: FinSetDiagram, G: FinSetDiagram,
                        components: Dict[str, dict]) -> Tuple[bool, Tuple[str, ...]]:
    """Well-typedness and naturality of given components F => G."""
    cat = F.shape
    bad: List[str] = []
    for a in cat.objects:
        comp = components.get(a)
        if comp is None:
            bad.append(f"missing component at {a}")
            continue
        if set(comp.keys()) != set(F.sets[a]):
            bad.append(f"component at {a} has wrong domain")
        elif any(v not in set(G.sets[a]) for v in comp.values()):
            bad.append(f"component at {a} has values outside the target")
    if bad:
        return False, tuple(bad)
    for m in cat.morphisms:
        for x in F.sets[m.src]:
            lhs = components[m.tgt][F.maps[m.name][x]]
            rhs = G.maps[m.name][components[m.src][x]]
            if lhs != rhs:
                bad.append(f"naturality fails at {m.name} on {x!r}")
                break
    return not bad, tuple(bad)


def model_morphisms(M: Union[SetModel, FinSetDiagram],
                    N: Union[SetModel, FinSetDiagram]) -> List[Dict[str, dict]]:
    """Natural transformations between models (components per object)."""
    FM = M.functor if isinstance(M, SetModel) else M
    FN = N.functor if isinstance(N, SetModel) else N
    return enumerate_set_nat_trans(FM, FN)


def models_isomorphic(M: Union[SetModel, FinSetDiagram],
                      N: Union[SetModel, FinSetDiagram]) -> bool:
    """Invertible model morphism test (by exhaustive morphism search)."""
    FM = M.functor if isinstance(M, SetModel) else M
    FN = N.functor if isinstance(N, SetModel) else N
    for a in FM.shape.objects:
        if len(FM.sets[a]) != len(FN.sets[a]):
            return False
    for phi in enumerate_set_nat_trans(FM, FN):
        if all(len(set(phi[a].values())) == len(FN.sets[a])
               for a in FM.shape.objects):
            return True
    return False


# -- category of elements and tensor products -----------------------------

def category_of_elements(M: Union[SetModel, FinSetDiagram],
                         objects: Optional[Sequence[str]] = None
                         ) -> Tuple[FinCategory, Dict[str, Tuple[str, object]]]:
    """Category of elements of a set-valued functor.

    Vertices are pairs (A, m) with m in M(A), named "A#i" by carrier
    position; an ambient morphism f: A -> B gives one arrow per element,
    named "f#i".  Returns the category and the vertex decoding map.
    """
    F = M.functor if isinstance(M, SetModel) else M
    amb = F.shape
    objs = list(objects) if objects is not None else list(amb.objects)
    for a in objs:
        if a not in amb._obj_index:
            raise ValueError(f"unknown object {a}")
    vname = {}
    decode: Dict[str, Tuple[str, object]] = {}
    names: List[str] = []
    for a in objs:
        for i, m in enumerate(F.sets[a]):
            n = f"{a}#{i}"
            vname[(a, m)] = n
            decode[n] = (a, m)
            names.append(n)
    mors: List[Mor] = []
    identity: Dict[str, str] = {}
    for f in amb.morphisms:
        if f.src not in objs or f.tgt not in objs:
            continue
        for i, m in enumerate(F.sets[f.src]):
            name = f"{f.name}#{i}"
            src = vname[(f.src, m)]
            tgt = vname[(f.tgt, F.maps[f.name][m])]
            mors.append(Mor(name, src, tgt))
            if amb.is_identity(f.name):
                identity[src] = name
    comp = {}
    pos = {a: {m: i for i, m in enumerate(F.sets[a])} for a in objs}
    for f in amb.morphisms:
        if f.src not in objs or f.tgt not in objs:
            continue
        for g in amb.morphisms:
            if g.src != f.tgt or g.tgt not in objs:
                continue
            h = amb.comp(g.name, f.name)
            for i, m in enumerate(F.sets[f.src]):
                j = pos[f.tgt][F.maps[f.name][m]]
                comp[(f"{g.name}#{j}", f"{f.name}#{i}")] = f"{h}#{i}"
    cat = FinCategory(f"el({amb.name})", names, mors, identity, comp)
    return cat, decode


def tensor_product(N: Union[SetModel, FinSetDiagram],
                   M: Union[SetModel, FinSetDiagram],
                   objects: Optional[Sequence[str]] = None) -> SetCocone:
    """Tensor of a contravariant and a covariant set-valued functor.

    N must be a functor on the opposite of M's category (same morphism
    names, reversed direction).  Computed as the colimit, over the
    opposite of the category of elements of M, of the diagram sending
    (A, m) to N(A); the returned cocone's legs give the coprojections.
    """
    FN = N.functor if isinstance(N, SetModel) else N
    FM = M.functor if isinstance(M, SetModel) else M
    el, decode = category_of_elements(FM, objects)
    el_op = opposite(el)
    sets = {v: FN.sets[decode[v][0]] for v in el_op.objects}
    maps = {}
    for m in el_op.morphisms:
        base = m.name.rsplit("#", 1)[0]
        maps[m.name] = {x: FN.maps[base][x] for x in sets[m.src]}
    diagram = FinSetDiagram(el_op, sets, maps)
    from .finsetlim import colimit
    return colimit(diagram)


def tensor_with_yoneda(s: Sketch, N: Union[SetModel, FinSetDiagram],
                       a: str) -> Tuple[bool, int, int]:
    """Check the unit law: N tensored with hom(a, -) is N(a).

    Returns (bijective, |N(a)|, |tensor|); the canonical comparison
    sends x in N(a) to the class of x at the vertex (a, id_a).
    """
    FN = N.functor if isinstance(N, SetModel) else N
    y = hom_functor(s.ambient, a)
    coc = tensor_product(FN, y)
    el, decode = category_of_elements(y)
    vtx = None
    for v, (b, m) in decode.items():
        if b == a and m == s.ambient.identity[a]:
            vtx = v
            break
    assert vtx is not None
    images = [coc.legs[vtx][x] for x in FN.sets[a]]
    bij = len(set(images)) == len(FN.sets[a]) and set(images) == set(coc.apex)
    return bij, len(FN.sets[a]), len(coc.apex)


def tensor_adjunction_check(N: Union[SetModel, FinSetDiagram],
                            M: Union[SetModel, FinSetDiagram],
                            test_set: tuple) -> Tuple[bool, int, int]:
    """Verify Hom(N (x) M, T) = Hom(M, Hom(N(-), T)) by explicit bijection.

    The left side is all functions from the tensor apex to T; the right
    side is natural transformations from M into the functor
    A |-> functions N(A) -> T.  Returns (bijection holds, |lhs|, |rhs|).
    """
    FN = N.functor if isinstance(N, SetModel) else N
    FM = M.functor if isinstance(M, SetModel) else M
    coc = tensor_product(FN, FM)
    amb = FM.shape
    # right-hand functor: G(A) = all functions N(A) -> T, as value tuples
    gsets = {}
    for a in amb.objects:
        na = FN.sets[a]
        gsets[a] = tuple(itertools.product(test_set, repeat=len(na)))
    pos = {a: {x: i for i, x in enumerate(FN.sets[a])} for a in amb.objects}
    gmaps = {}
    for m in amb.morphisms:
        # G(m): G(src) -> G(tgt), phi |-> phi o N(m)
        gmaps[m.name] = {
            phi: tuple(phi[pos[m.src][FN.maps[m.name][y]]] for y in FN.sets[m.tgt])
            for phi in gsets[m.src]}
    G = FinSetDiagram(amb, gsets, gmaps)
    rhs = enumerate_set_nat_trans(FM, G)
    lhs_count = len(test_set) ** len(coc.apex)
    if lhs_count != len(rhs):
        return False, lhs_count, len(rhs)
    # explicit comparison: a function on the tensor apex restricts, at each
    # vertex (A, m), to a function N(A) -> T; collect and compare.
    el, decode = category_of_elements(FM)
    seen = set()
    for phi in itertools.product(test_set, repeat=len(coc.apex)):
        phimap = dict(zip(coc.apex, phi))
        eta = []
        for a in amb.objects:
            comp = {}
            for m in FM.sets[a]:
                vtx = None
                for v, (b, mm) in decode.items():
                    if b == a and mm == m:
                        vtx = v
                        break
                comp[m] = tuple(phimap[coc.legs[vtx][x]] for x in FN.sets[a])
            eta.append((a, tuple(sorted(((sort_key(k), v) for k, v in comp.items())))))
        seen.add(tuple(eta))
    if len(seen) != lhs_count:
        return False, lhs_count, len(rhs)
    return True, lhs_count, len(rhs)


# -- model enumeration -----------------------------------------------------

class _Conflict(Exception):
    pass


def _generators(cat: FinCategory) -> List[str]:
    """A generating set of morphisms, greedily chosen in index order."""
    reached = {cat.identity[a] for a in cat.objects}
    comp_items = list(cat.compose.items())
    gens: List[str] = []

    def close() -> None:
        changed = True
        while changed:
            changed = False
            for (g, f), h in comp_items:
                if h not in reached and g in reached and f in reached:
                    reached.add(h)
                    changed = True

    close()
    for m in cat.morphisms:
        if m.name not in reached:
            gens.append(m.name)
            reached.add(m.name)
            close()
    return gens


def _build_plan(s: Sketch) -> List[tuple]:
    """Stage order: seed objects first, limit-defined apexes afterwards."""
    amb = s.ambient
    by_apex: Dict[str, List[Cone]] = {}
    for cone in s.cones:
        by_apex.setdefault(cone.apex, []).append(cone)
    planned: List[str] = []
    stages: List[tuple] = []
    pending = list(amb.objects)
    while pending:
        progressed = False
        for a in list(pending):
            cones = by_apex.get(a, [])
            if not cones:
                stages.append(("free", a))
                planned.append(a)
                pending.remove(a)
                progressed = True
                continue
            chosen = None
            for cone in cones:
                image = set(cone.diagram_objects.values())
                if a not in image and image <= set(planned):
                    chosen = ("defined", a, cone)
                    break
            if chosen is None:
                for cone in cones:
                    image = set(cone.diagram_objects.values())
                    if a in image and (image - {a}) <= set(planned):
                        chosen = ("selfref", a, cone)
                        break
            if chosen is not None:
                stages.append(chosen)
                planned.append(a)
                pending.remove(a)
                progressed = True
        if not progressed:
            raise SketchEnumerationError(
                f"no enumeration plan for objects {pending!r} (cyclic cone dependencies)")
    return stages


def _selfref_slots(cone: Cone, amb: FinCategory) -> List[Tuple[str, str]]:
    """Slots (shape object, leg) of a jointly-monic style cone.

    The shape may only have identity legs at copies of the apex and
    arrows from those copies into the remaining slots; slot legs must be
    pairwise distinct.
    """
    a = cone.apex
    copies = [v for v in cone.shape.objects if cone.diagram_objects[v] == a]
    slots = [v for v in cone.shape.objects if cone.diagram_objects[v] != a]
    for v in copies:
        if cone.legs[v] != amb.identity[a]:
            raise SketchEnumerationError(
                f"cone {cone.name}: leg at apex copy {v} is not the identity")
    for m in cone.shape.morphisms:
        if cone.shape.is_identity(m.name):
            continue
        if m.src not in copies or m.tgt not in slots:
            raise SketchEnumerationError(
                f"cone {cone.name}: unsupported self-referential shape")
    legs = [cone.legs[v] for v in slots]
    if len(set(legs)) != len(legs):
        raise SketchEnumerationError(
            f"cone {cone.name}: repeated slot legs are not supported")
    return [(v, cone.legs[v]) for v in slots]


def enumerate_models(s: Sketch, bounds: Union[int, Dict[str, int]]
                     ) -> List[SetModel]:
    """Exhaustive model enumeration over canonical carriers.

    `bounds` is an integer cap for every seed object (objects that are
    not apex of any cone), or a mapping object -> cap.  Mapped caps also
    prune cone apexes; unmapped apex objects are unbounded (their size
    is forced by the cones).  Models are returned in a deterministic
    order, pairwise distinct as functor tables.
    """
    rep = validate_sketch(s)
    if not rep.ok:
        raise ValueError(f"invalid sketch: {rep.violations[0]}")
    amb = s.ambient
    stages = _build_plan(s)
    gens = _generators(amb)
    gen_order = sorted(gens, key=amb.mor_index)
    equations = [(g, f, h) for (g, f), h in amb.compose.items()
                 if not amb.is_identity(g) and not amb.is_identity(f)]
    eq_by_mor: Dict[str, List[int]] = {}
    for i, (g, f, h) in enumerate(equations):
        for m in (g, f, h):
            eq_by_mor.setdefault(m, []).append(i)

    if isinstance(bounds, int):
        free_bound = {st[1]: bounds for st in stages if st[0] == "free"}
        apex_bound: Dict[str, int] = {}
    else:
        free_bound = {}
        apex_bound = {}
        for st in stages:
            kind, a = st[0], st[1]
            if kind == "free":
                if a not in bounds:
                    raise ValueError(f"seed object {a} needs a bound")
                free_bound[a] = bounds[a]
            elif a in bounds:
                apex_bound[a] = bounds[a]

    carriers: Dict[str, Optional[tuple]] = {a: None for a in amb.objects}
    carrier_sets: Dict[str, set] = {}
    val: Dict[str, dict] = {m.name: {} for m in amb.morphisms}
    trail: List[tuple] = []

    def set_point(m: str, x, v) -> None:
        cur = val[m].get(x)
        if cur is not None:
            if cur != v:
                raise _Conflict
            return
        tgt = amb.tgt(m)
        if carriers[tgt] is None or v not in carrier_sets[tgt]:
            raise _Conflict
        val[m][x] = v
        trail.append(("pt", m, x))
        queue_eqs(m)

    eq_queue: List[int] = []
    queued: set = set()

    def queue_eqs(m: str) -> None:
        for i in eq_by_mor.get(m, ()):
            if i not in queued:
                queued.add(i)
                eq_queue.append(i)

    def propagate() -> None:
        while eq_queue:
            i = eq_queue.pop()
            queued.discard(i)
            g, f, h = equations[i]
            src = amb.src(f)
            if carriers[src] is None:
                continue
            vf, vg, vh = val[f], val[g], val[h]
            for x in carriers[src]:
                fx = vf.get(x)
                if fx is None:
                    continue
                gv = vg.get(fx)
                hv = vh.get(x)
                if gv is not None:
                    if hv is None:
                        set_point(h, x, gv)
                    elif hv != gv:
                        raise _Conflict
                elif hv is not None:
                    set_point(g, fx, hv)

    def set_carrier(a: str, elems: tuple) -> None:
        carriers[a] = elems
        carrier_sets[a] = set(elems)
        trail.append(("car", a))
        ida = amb.identity[a]
        for x in elems:
            set_point(ida, x, x)
        # identities participate in no stored equation; composites with an
        # identity factor are the other factor, which propagation covers.
        for m in amb.morphisms:
            if carriers[m.src] is not None and carriers[m.tgt] is not None:
                queue_eqs(m.name)

    def undo(mark: int) -> None:
        while len(trail) > mark:
            op = trail.pop()
            if op[0] == "pt":
                del val[op[1]][op[2]]
            else:
                carriers[op[1]] = None
                del carrier_sets[op[1]]
        eq_queue.clear()
        queued.clear()

    def next_choice() -> Optional[Tuple[str, object]]:
        for m in gen_order:
            sa, ta = amb.src(m), amb.tgt(m)
            if carriers[sa] is None or carriers[ta] is None:
                continue
            table = val[m]
            if len(table) < len(carriers[sa]):
                for x in carriers[sa]:
                    if x not in table:
                        return m, x
        return None

    out: List[SetModel] = []

    def assemble() -> None:
        for m in amb.morphisms:
            if len(val[m.name]) != len(carriers[m.src]):
                raise SketchEnumerationError(
                    f"morphism {m.name} not determined by generators")
        F = FinSetDiagram(amb, {a: carriers[a] for a in amb.objects},
                          {m.name: dict(val[m.name]) for m in amb.morphisms})
        ok, _ = is_model(s, F)
        if ok:
            out.append(SetModel(s, F))

    def over_bound(a: str, n: int) -> bool:
        cap = apex_bound.get(a)
        return cap is not None and n > cap

    def search(si: int) -> None:
        choice = next_choice()
        if choice is not None:
            m, x = choice
            for v in carriers[amb.tgt(m)]:
                mark = len(trail)
                try:
                    set_point(m, x, v)
                    propagate()
                    search(si)
                except _Conflict:
                    pass
                undo(mark)
            return
        if si == len(stages):
            assemble()
            return
        st = stages[si]
        if st[0] == "free":
            a = st[1]
            for n in range(free_bound[a] + 1):
                mark = len(trail)
                try:
                    set_carrier(a, tuple(range(n)))
                    propagate()
                    search(si + 1)
                except _Conflict:
                    pass
                undo(mark)
        elif st[0] == "selfref":
            a, cone = st[1], st[2]
            slots = _selfref_slots(cone, amb)
            factor_sets = [carriers[cone.diagram_objects[v]] for v, _ in slots]
            if any(fs is None for fs in factor_sets):
                raise SketchEnumerationError(
                    f"cone {cone.name}: slot carrier not yet determined")
            prod = list(itertools.product(*factor_sets))
            if len(prod) > _SELFREF_PRODUCT_CAP:
                raise SketchEnumerationError(
                    f"cone {cone.name}: slot product of size {len(prod)} "
                    f"exceeds the enumeration cap {_SELFREF_PRODUCT_CAP}")
            top = apex_bound.get(a, len(prod))
            for r in range(min(len(prod), top) + 1):
                for combo in itertools.combinations(prod, r):
                    mark = len(trail)
                    try:
                        set_carrier(a, combo)
                        for j, (vslot, leg) in enumerate(slots):
                            for t in combo:
                                set_point(leg, t, t[j])
                        propagate()
                        search(si + 1)
                    except _Conflict:
                        pass
                    undo(mark)
        else:  # defined
            a, cone = st[1], st[2]
            incomplete = None
            for m in cone.shape.morphisms:
                dm = cone.diagram_morphisms[m.name]
                src = amb.src(dm)
                if carriers[src] is None:
                    raise SketchEnumerationError(
                        f"cone {cone.name}: diagram carrier not determined")
                if len(val[dm]) < len(carriers[src]):
                    for x in carriers[src]:
                        if x not in val[dm]:
                            incomplete = (dm, x)
                            break
                    break
            if incomplete is not None:
                dm, x = incomplete
                for v in carriers[amb.tgt(dm)]:
                    mark = len(trail)
                    try:
                        set_point(dm, x, v)
                        propagate()
                        search(si)
                    except _Conflict:
                        pass
                    undo(mark)
                return
            shape_objs = list(cone.shape.objects)
            d = FinSetDiagram(
                cone.shape,
                {v: carriers[cone.diagram_objects[v]] for v in shape_objs},
                {m.name: val[cone.diagram_morphisms[m.name]]
                 for m in cone.shape.morphisms})
            can = limit(d)
            if over_bound(a, len(can.apex)):
                return
            mark = len(trail)
            try:
                set_carrier(a, can.apex)
                for j, v in enumerate(shape_objs):
                    leg = cone.legs[v]
                    for t in can.apex:
                        set_point(leg, t, t[j])
                propagate()
                search(si + 1)
            except _Conflict:
                pass
            undo(mark)

    search(0)
    return out
