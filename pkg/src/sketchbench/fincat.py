"""Finite categories presented by explicit composition tables.

A category here is a plain table: object names, morphism records
(name, src, tgt), an identity assignment, and a total composition table
on composable pairs.  Objects and morphisms carry stable integer
indices (their position in the defining tuples); every enumeration in
the package sorts by those indices, which is what makes reports
reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple


@dataclass(frozen=True)
class Mor:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: Tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


class FinCategory:
    """Finite category with an explicit composition table.

    `compose` maps (g_name, f_name) -> h_name whenever tgt(f) == src(g),
    meaning h = g after f.  The table must be total on composable pairs
    (identity pairs included); `validate_category` checks this together
    with the identity and associativity laws.
    """

    def __init__(self, name: str, objects: Iterable[str], morphisms: Iterable[Mor],
                 identity: Dict[str, str], compose: Dict[Tuple[str, str], str]):
        self.name = name
        self.objects: Tuple[str, ...] = tuple(objects)
        self.morphisms: Tuple[Mor, ...] = tuple(morphisms)
        self.identity = dict(identity)
        self.compose = dict(compose)
        self._mor_by_name = {m.name: m for m in self.morphisms}
        self._obj_index = {a: i for i, a in enumerate(self.objects)}
        self._mor_index = {m.name: i for i, m in enumerate(self.morphisms)}
        self._hom: Dict[Tuple[str, str], Tuple[str, ...]] = {}
        for a in self.objects:
            for b in self.objects:
                self._hom[(a, b)] = tuple(m.name for m in self.morphisms
                                          if m.src == a and m.tgt == b)
        self._validated: Optional[ValidationReport] = None

    # -- basic accessors -------------------------------------------------

    def mor(self, name: str) -> Mor:
        return self._mor_by_name[name]

    def src(self, name: str) -> str:
        return self._mor_by_name[name].src

    def tgt(self, name: str) -> str:
        return self._mor_by_name[name].tgt

    def is_identity(self, name: str) -> bool:
        m = self._mor_by_name[name]
        return self.identity.get(m.src) == name

    def obj_index(self, a: str) -> int:
        return self._obj_index[a]

    def mor_index(self, name: str) -> int:
        return self._mor_index[name]

    def hom(self, a: str, b: str) -> Tuple[str, ...]:
        return self._hom[(a, b)]

    def comp(self, g: str, f: str) -> str:
        """g after f."""
        return self.compose[(g, f)]

    def __repr__(self) -> str:
        return (f"FinCategory({self.name!r}, {len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms)")


def validate_category(c: FinCategory) -> ValidationReport:
    """Check identities, totality of composition, and associativity.

    The verdict is cached on the instance; tables are immutable by
    convention, so one check per category suffices.
    """
    if c._validated is not None:
        return c._validated
    rep = _validate_category(c)
    c._validated = rep
    return rep


def _validate_category(c: FinCategory) -> ValidationReport:
    bad: List[str] = []
    names = set()
    for m in c.morphisms:
        if m.name in names:
            bad.append(f"duplicate morphism name {m.name}")
        names.add(m.name)
        if m.src not in c._obj_index or m.tgt not in c._obj_index:
            bad.append(f"morphism {m.name} has unknown endpoint")
    for a in c.objects:
        i = c.identity.get(a)
        if i is None or i not in c._mor_by_name:
            bad.append(f"object {a} has no identity morphism")
            continue
        m = c.mor(i)
        if m.src != a or m.tgt != a:
            bad.append(f"identity of {a} is not an endomorphism")
    if bad:
        return ValidationReport(False, tuple(bad))

    for f in c.morphisms:
        for g in c.morphisms:
            composable = f.tgt == g.src
            present = (g.name, f.name) in c.compose
            if composable and not present:
                bad.append(f"missing composite {g.name} after {f.name}")
            elif present and not composable:
                bad.append(f"spurious table entry ({g.name}, {f.name})")
            elif composable:
                h = c.mor(c.compose[(g.name, f.name)])
                if h.src != f.src or h.tgt != g.tgt:
                    bad.append(f"composite of ({g.name}, {f.name}) has wrong type")
    if bad:
        return ValidationReport(False, tuple(bad[:20]))

    for f in c.morphisms:
        if c.comp(f.name, c.identity[f.src]) != f.name:
            bad.append(f"right identity law fails at {f.name}")
        if c.comp(c.identity[f.tgt], f.name) != f.name:
            bad.append(f"left identity law fails at {f.name}")
    by_src: Dict[str, List[Mor]] = {a: [] for a in c.objects}
    for m in c.morphisms:
        by_src[m.src].append(m)
    comp = c.compose
    for f in c.morphisms:
        fname = f.name
        for g in by_src[f.tgt]:
            gname = g.name
            gf = comp[(gname, fname)]
            for h in by_src[g.tgt]:
                hname = h.name
                if comp[(hname, gf)] != comp[(comp[(hname, gname)], fname)]:
                    bad.append(
                        f"associativity fails at ({hname}, {gname}, {fname})")
                    if len(bad) >= 20:
                        return ValidationReport(False, tuple(bad))
    return ValidationReport(not bad, tuple(bad))


def opposite(c: FinCategory) -> FinCategory:
    """Same names, reversed arrows; compose(f, g) here = compose(g, f) there."""
    mors = tuple(Mor(m.name, m.tgt, m.src) for m in c.morphisms)
    comp = {(f, g): h for (g, f), h in c.compose.items()}
    return FinCategory(c.name + "_op", c.objects, mors, dict(c.identity), comp)


def hom_set(c: FinCategory, a: str, b: str) -> Tuple[str, ...]:
    if a not in c._obj_index or b not in c._obj_index:
        raise ValueError(f"unknown object in hom_set: {a}, {b}")
    return c.hom(a, b)


def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    """Componentwise product; pairs are named '(x|y)'."""
    def oname(a: str, b: str) -> str:
        return f"({a}|{b})"

    objects = [oname(a, b) for a in c.objects for b in d.objects]
    mors = [Mor(oname(m.name, n.name), oname(m.src, n.src), oname(m.tgt, n.tgt))
            for m in c.morphisms for n in d.morphisms]
    identity = {oname(a, b): oname(c.identity[a], d.identity[b])
                for a in c.objects for b in d.objects}
    comp = {}
    for m2 in c.morphisms:
        for m1 in c.morphisms:
            if m1.tgt != m2.src:
                continue
            mc = c.compose[(m2.name, m1.name)]
            for n2 in d.morphisms:
                for n1 in d.morphisms:
                    if n1.tgt != n2.src:
                        continue
                    comp[(oname(m2.name, n2.name), oname(m1.name, n1.name))] = \
                        oname(mc, d.compose[(n2.name, n1.name)])
    return FinCategory(f"({c.name}x{d.name})", objects, mors, identity, comp)


def span_shape_category(name: str, objects: Iterable[str],
                        arrows: Iterable[Tuple[str, str, str]]) -> FinCategory:
    """A category generated by arrows none of which compose.

    ``arrows`` lists (name, src, tgt).  Raises if two of them are
    composable, since then the composition table would need genuine
    entries; the helper is meant for span- and fan-shaped diagrams.
    """
    objs = tuple(objects)
    arrs = tuple(arrows)
    identity = {a: f"id_{a}" for a in objs}
    mors = [Mor(identity[a], a, a) for a in objs]
    for (aname, src, tgt) in arrs:
        mors.append(Mor(aname, src, tgt))
    comp: Dict[Tuple[str, str], str] = {}
    for (aname, src, tgt) in arrs:
        for (bname, bsrc, btgt) in arrs:
            if btgt == src:
                raise ValueError(
                    f"arrows {bname} and {aname} compose; "
                    "shape is not span-like")
    for m in mors:
        comp[(m.name, identity[m.src])] = m.name
        comp[(identity[m.tgt], m.name)] = m.name
    return FinCategory(name, objs, tuple(mors), identity, comp)


@dataclass(frozen=True)
class FunctorRep:
    """Functor between table categories, given by its object/morphism maps."""
    source: FinCategory
    target: FinCategory
    obj_map: Dict[str, str]
    mor_map: Dict[str, str]

    def on_obj(self, a: str) -> str:
        return self.obj_map[a]

    def on_mor(self, f: str) -> str:
        return self.mor_map[f]


def validate_functor(F: FunctorRep) -> ValidationReport:
    bad: List[str] = []
    s, t = F.source, F.target
    for a in s.objects:
        if a not in F.obj_map or F.obj_map[a] not in t._obj_index:
            bad.append(f"object {a} not mapped")
    for m in s.morphisms:
        fm = F.mor_map.get(m.name)
        if fm is None or fm not in t._mor_by_name:
            bad.append(f"morphism {m.name} not mapped")
            continue
        if t.src(fm) != F.obj_map[m.src] or t.tgt(fm) != F.obj_map[m.tgt]:
            bad.append(f"morphism {m.name} mapped with wrong type")
    if bad:
        return ValidationReport(False, tuple(bad[:20]))
    for a in s.objects:
        if F.mor_map[s.identity[a]] != t.identity[F.obj_map[a]]:
            bad.append(f"identity of {a} not preserved")
    for f in s.morphisms:
        for g in s.morphisms:
            if f.tgt != g.src:
                continue
            if F.mor_map[s.comp(g.name, f.name)] != \
                    t.comp(F.mor_map[g.name], F.mor_map[f.name]):
                bad.append(f"composition ({g.name}, {f.name}) not preserved")
                if len(bad) >= 20:
                    return ValidationReport(False, tuple(bad))
    return ValidationReport(not bad, tuple(bad))


@dataclass(frozen=True)
class NatTransRep:
    F: FunctorRep
    G: FunctorRep
    components: Dict[str, str]  # source object -> morphism of the target


def validate_nat_trans(n: NatTransRep) -> ValidationReport:
    bad: List[str] = []
    F, G = n.F, n.G
    if F.source is not G.source and F.source.name != G.source.name:
        bad.append("functors have different sources")
    t = F.target
    for a in F.source.objects:
        comp = n.components.get(a)
        if comp is None:
            bad.append(f"missing component at {a}")
            continue
        if t.src(comp) != F.obj_map[a] or t.tgt(comp) != G.obj_map[a]:
            bad.append(f"component at {a} has wrong type")
    if bad:
        return ValidationReport(False, tuple(bad[:20]))
    for m in F.source.morphisms:
        lhs = t.comp(G.mor_map[m.name], n.components[m.src])
        rhs = t.comp(n.components[m.tgt], F.mor_map[m.name])
        if lhs != rhs:
            bad.append(f"naturality fails at {m.name}")
    return ValidationReport(not bad, tuple(bad[:20]))


def enumerate_nat_trans(F: FunctorRep, G: FunctorRep) -> List[NatTransRep]:
    """All natural transformations F => G, in lexicographic component order."""
    t = F.target
    objs = F.source.objects
    choices = [t.hom(F.obj_map[a], G.obj_map[a]) for a in objs]
    out: List[NatTransRep] = []
    for combo in itertools.product(*choices):
        comp = dict(zip(objs, combo))
        ok = True
        for m in F.source.morphisms:
            if t.comp(G.mor_map[m.name], comp[m.src]) != \
                    t.comp(comp[m.tgt], F.mor_map[m.name]):
                ok = False
                break
        if ok:
            out.append(NatTransRep(F, G, comp))
    return out
