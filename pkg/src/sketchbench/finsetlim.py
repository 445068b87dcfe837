"""Limits and colimits of finite-set diagrams, with universality verdicts.

A diagram assigns a finite set to each object of a shape category and a
function to each shape morphism.  `limit` produces the canonical apex
of compatible tuples (ordered by the shape's object indices), `colimit`
the canonical quotient of the tagged disjoint union with classes
represented by their least member.  `is_limit_cone` and
`is_colimit_cocone` decide universality of a supplied (co)cone by
constructing the comparison map against the canonical one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .canon import csorted, ctuple, sort_key
from .fincat import FinCategory


@dataclass(frozen=True)
class FinSetDiagram:
    """Functor from a table category to finite sets.

    sets: object -> tuple of elements (canonically ordered, distinct);
    maps: morphism name -> dict element -> element.
    """
    shape: FinCategory
    sets: Dict[str, tuple]
    maps: Dict[str, dict]

    def set_of(self, a: str) -> tuple:
        return self.sets[a]

    def map_of(self, f: str) -> dict:
        return self.maps[f]


def validate_diagram(d: FinSetDiagram) -> Tuple[bool, Tuple[str, ...]]:
    bad: List[str] = []
    for a in d.shape.objects:
        if a not in d.sets:
            bad.append(f"object {a} has no set")
        elif len(set(d.sets[a])) != len(d.sets[a]):
            bad.append(f"set at {a} has duplicates")
    if bad:
        return False, tuple(bad)
    for m in d.shape.morphisms:
        fn = d.maps.get(m.name)
        if fn is None:
            bad.append(f"morphism {m.name} has no function")
            continue
        src, tgt = set(d.sets[m.src]), set(d.sets[m.tgt])
        if set(fn.keys()) != src or not set(fn.values()) <= tgt:
            bad.append(f"function at {m.name} has wrong domain or codomain")
    if bad:
        return False, tuple(bad)
    for a in d.shape.objects:
        ida = d.shape.identity[a]
        if any(d.maps[ida][x] != x for x in d.sets[a]):
            bad.append(f"identity at {a} not the identity function")
    for f in d.shape.morphisms:
        for g in d.shape.morphisms:
            if f.tgt != g.src:
                continue
            h = d.shape.comp(g.name, f.name)
            for x in d.sets[f.src]:
                if d.maps[g.name][d.maps[f.name][x]] != d.maps[h][x]:
                    bad.append(f"functoriality fails at ({g.name}, {f.name})")
                    return False, tuple(bad)
    return not bad, tuple(bad)


@dataclass(frozen=True)
class SetCone:
    diagram: FinSetDiagram
    apex: tuple
    legs: Dict[str, dict]  # shape object -> function apex -> d(object)


@dataclass(frozen=True)
class SetCocone:
    diagram: FinSetDiagram
    apex: tuple
    legs: Dict[str, dict]  # shape object -> function d(object) -> apex


def _check_cone_commutes(c: SetCone) -> Optional[str]:
    d = c.diagram
    for a in d.shape.objects:
        if a not in c.legs:
            return f"missing leg at {a}"
    for m in d.shape.morphisms:
        for x in c.apex:
            if d.maps[m.name][c.legs[m.src][x]] != c.legs[m.tgt][x]:
                return f"legs do not commute with {m.name}"
    return None


def _check_cocone_commutes(c: SetCocone) -> Optional[str]:
    d = c.diagram
    for a in d.shape.objects:
        if a not in c.legs:
            return f"missing leg at {a}"
    for m in d.shape.morphisms:
        for x in d.sets[m.src]:
            if c.legs[m.tgt][d.maps[m.name][x]] != c.legs[m.src][x]:
                return f"legs do not commute with {m.name}"
    return None


def _assignment_order(d: FinSetDiagram) -> List[str]:
    """Object order for the backtracking search: forced objects early.

    An object is forced once some shape morphism reaches it from an
    already ordered object; ordering those first keeps the search linear
    for the span/cospan/zigzag shapes this package actually builds.
    """
    shape = d.shape
    remaining = list(shape.objects)
    order: List[str] = []
    placed = set()
    while remaining:
        pick = None
        for a in remaining:
            if any(m.tgt == a and m.src in placed for m in shape.morphisms):
                pick = a
                break
        if pick is None:
            pick = min(remaining, key=lambda a: (len(d.sets[a]), shape.obj_index(a)))
        order.append(pick)
        placed.add(pick)
        remaining.remove(pick)
    return order


def limit(d: FinSetDiagram) -> SetCone:
    """Canonical limit: compatible tuples ordered by shape object index."""
    shape = d.shape
    objs = list(shape.objects)
    if not objs:
        apex = ((),)
        return SetCone(d, apex, {})
    order = _assignment_order(d)
    arrows = [(m.name, m.src, m.tgt) for m in shape.morphisms]
    results: List[dict] = []
    assignment: Dict[str, object] = {}

    def consistent(a: str, x) -> bool:
        for name, s, t in arrows:
            if s == a and t in assignment and d.maps[name][x] != assignment[t]:
                return False
            if t == a and s in assignment and d.maps[name][assignment[s]] != x:
                return False
            if s == a and t == a and d.maps[name][x] != x:
                return False
        return True

    def backtrack(i: int) -> None:
        if i == len(order):
            results.append(dict(assignment))
            return
        a = order[i]
        candidates = None
        for name, s, t in arrows:
            if t == a and s in assignment:
                forced = d.maps[name][assignment[s]]
                if candidates is None:
                    candidates = [forced]
                elif forced not in candidates:
                    return
        if candidates is None:
            candidates = list(d.sets[a])
        for x in candidates:
            if consistent(a, x):
                assignment[a] = x
                backtrack(i + 1)
                del assignment[a]

    backtrack(0)
    tuples = [tuple(r[a] for a in objs) for r in results]
    apex = ctuple(set(tuples))
    legs = {a: {t: t[i] for t in apex} for i, a in enumerate(objs)}
    return SetCone(d, apex, legs)


def colimit(d: FinSetDiagram) -> SetCocone:
    """Canonical colimit: classes of the tagged union, least member as rep."""
    shape = d.shape
    elems = [(a, x) for a in shape.objects for x in d.sets[a]]
    parent = {e: e for e in elems}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(e1, e2):
        r1, r2 = find(e1), find(e2)
        if r1 != r2:
            if sort_key(r2) < sort_key(r1):
                r1, r2 = r2, r1
            parent[r2] = r1

    for m in shape.morphisms:
        for x in d.sets[m.src]:
            union((m.src, x), (m.tgt, d.maps[m.name][x]))
    classes: Dict[tuple, List[tuple]] = {}
    for e in elems:
        classes.setdefault(find(e), []).append(e)
    reps: Dict[tuple, tuple] = {}
    for cls in classes.values():
        rep = min(cls, key=sort_key)
        for e in cls:
            reps[e] = rep
    apex = ctuple(set(reps.values()))
    legs = {a: {x: reps[(a, x)] for x in d.sets[a]} for a in shape.objects}
    return SetCocone(d, apex, legs)


def is_limit_cone(c: SetCone) -> Tuple[bool, Optional[str]]:
    """Universality verdict via the comparison map into the canonical limit."""
    err = _check_cone_commutes(c)
    if err:
        raise ValueError(f"not a cone: {err}")
    can = limit(c.diagram)
    objs = list(c.diagram.shape.objects)
    image = []
    for x in c.apex:
        t = tuple(c.legs[a][x] for a in objs)
        if t not in set(can.apex):
            return False, f"comparison image {t!r} not a compatible tuple"
        image.append(t)
    if len(set(image)) != len(c.apex):
        return False, "comparison map not injective"
    if len(set(image)) != len(can.apex):
        missing = csorted(set(can.apex) - set(image))[0]
        return False, f"comparison map misses {missing!r}"
    return True, None


def is_colimit_cocone(c: SetCocone) -> Tuple[bool, Optional[str]]:
    """Universality verdict via the comparison map from the canonical colimit."""
    err = _check_cocone_commutes(c)
    if err:
        raise ValueError(f"not a cocone: {err}")
    can = colimit(c.diagram)
    # the comparison sends a class to the common value of the legs on it
    comparison: Dict[tuple, object] = {}
    for a in c.diagram.shape.objects:
        for x in c.diagram.sets[a]:
            rep = can.legs[a][x]
            val = c.legs[a][x]
            if rep in comparison and comparison[rep] != val:
                return False, f"legs not constant on the class of {rep!r}"
            comparison[rep] = val
    vals = [comparison[r] for r in can.apex]
    if len(set(vals)) != len(vals):
        return False, "comparison map not injective"
    if set(vals) != set(c.apex):
        extra = csorted(set(c.apex) - set(vals))
        return False, f"comparison map misses apex element {extra[0]!r}"
    return True, None


def product_of_sets(sets: List[tuple]) -> tuple:
    return tuple(itertools.product(*sets))
