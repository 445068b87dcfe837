"""Concrete sketches over categories of finite chains.

The ambient categories here are built from finite chains 0 < 1 < ... < k-1:
the objects name chains, and a morphism A -> B is recorded as the monotone
map between the chains in the reverse direction (from B's chain to A's
chain).  Composition is composition of those maps, again reversed.  With
three chains of sizes 1, 2, 3 this gives the sketch whose models are
preorders; adding a fourth chain of size 4 gives the sketch whose models
are small categories.  Both sketches are realized: their distinguished
cones are limit cones in the ambient category itself.

Comodels of the preorder sketch (models of its dual over the opposite
category) are classified by a carrier with a marked subset; the marked
elements are those whose two "levels" collapse.
"""

from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .canon import ctuple, set_partitions, sort_key
from .fincat import FinCategory, Mor
from .finsetlim import FinSetDiagram
from .sketch import (Cone, CoSketch, SetModel, Sketch, dual_sketch,
                     is_comodel, monomorphism_cone)

MorKey = Tuple[str, str, tuple]


def chains_category(name: str, sizes: Dict[str, int],
                    aliases: Optional[Dict[str, MorKey]] = None
                    ) -> Tuple[FinCategory, Dict[MorKey, str]]:
    """Category with one object per chain and all monotone maps reversed.

    A morphism A -> B is a nondecreasing tuple u of length sizes[B] with
    entries below sizes[A]; composition of f: A -> B and g: B -> C is the
    tuple (u_f[j] for j in u_g).  `aliases` assigns friendly names to
    chosen (src, tgt, tuple) triples; everything else gets a canonical
    name.  Returns the category and the full name table.
    """
    aliases = aliases or {}
    rev = {key: nm for nm, key in aliases.items()}
    mname: Dict[MorKey, str] = {}
    mors: List[Mor] = []
    for a, sa in sizes.items():
        for b, sb in sizes.items():
            for u in itertools.combinations_with_replacement(range(sa), sb):
                key = (a, b, u)
                nm = rev.get(key, f"{a}>{b}:" + "".join(map(str, u)))
                mname[key] = nm
                mors.append(Mor(nm, a, b))
    identity = {a: mname[(a, a, tuple(range(sa)))] for a, sa in sizes.items()}
    comp: Dict[Tuple[str, str], str] = {}
    for (a, b, uf), f in mname.items():
        for (b2, c, ug), g in mname.items():
            if b2 != b:
                continue
            comp[(g, f)] = mname[(a, c, tuple(uf[j] for j in ug))]
    cat = FinCategory(name, list(sizes), mors, identity, comp)
    return cat, mname


def cospan_cone(amb: FinCategory, name: str, apex: str,
                left: Tuple[str, str, str], middle: Tuple[str, str],
                right: Tuple[str, str, str]) -> Cone:
    """Cone over a cospan l -> m <- r.

    left/right are (object, leg, arrow-into-middle); middle is
    (object, leg).
    """
    objs = ["l", "m", "r"]
    mors = [Mor("id_l", "l", "l"), Mor("id_m", "m", "m"), Mor("id_r", "r", "r"),
            Mor("l>m", "l", "m"), Mor("r>m", "r", "m")]
    identity = {"l": "id_l", "m": "id_m", "r": "id_r"}
    comp = {}
    for m in mors:
        comp[(m.name, identity[m.src])] = m.name
        comp[(identity[m.tgt], m.name)] = m.name
    shape = FinCategory("cospan", objs, mors, identity, comp)
    lobj, lleg, larr = left
    mobj, mleg = middle
    robj, rleg, rarr = right
    dobj = {"l": lobj, "m": mobj, "r": robj}
    dmor = {"id_l": amb.identity[lobj], "id_m": amb.identity[mobj],
            "id_r": amb.identity[robj], "l>m": larr, "r>m": rarr}
    legs = {"l": lleg, "m": mleg, "r": rleg}
    return Cone(name, apex, shape, dobj, dmor, legs)


_PREORDER_ALIASES: Dict[str, MorKey] = {
    "r1": ("R", "X", (0,)),
    "r2": ("R", "X", (1,)),
    "i": ("X", "R", (0, 0)),
    "pr1": ("T", "R", (0, 1)),
    "pr2": ("T", "R", (1, 2)),
    "c": ("T", "R", (0, 2)),
    "mid": ("T", "X", (1,)),
    "u1": ("R", "T", (0, 0, 1)),
    "u2": ("R", "T", (0, 1, 1)),
}

_CATEGORY_ALIASES: Dict[str, MorKey] = dict(_PREORDER_ALIASES, **{
    "q1": ("T2", "R", (0, 1)),
    "q2": ("T2", "R", (1, 2)),
    "q3": ("T2", "R", (2, 3)),
    "m1": ("T2", "X", (1,)),
    "m2": ("T2", "X", (2,)),
})

_chain_tables: Dict[str, Tuple[Dict[str, int], Dict[str, MorKey]]] = {}
_sketch_cache: Dict[str, Sketch] = {}


def _register(name: str, sizes: Dict[str, int], mname: Dict[MorKey, str]) -> None:
    _chain_tables[name] = (sizes, {nm: key for key, nm in mname.items()})


def chain_tables(sketch_name: str) -> Tuple[Dict[str, int], Dict[str, MorKey]]:
    """Chain sizes and name -> (src, tgt, tuple) table of a built sketch."""
    return _chain_tables[sketch_name]


def preorder_sketch() -> Sketch:
    """Sketch whose finite-set models are preorders.

    X carries the elements, R the related pairs with endpoint legs r1, r2
    (jointly monic), and T the composable pairs as the limit of the
    cospan R -> X <- R; the morphism c: T -> R composes a pair.
    """
    if "preorder" in _sketch_cache:
        return _sketch_cache["preorder"]
    sizes = {"X": 1, "R": 2, "T": 3}
    amb, mname = chains_category("E_pre", sizes, _PREORDER_ALIASES)
    mono = monomorphism_cone(amb, ["r1", "r2"], name="relpair")
    comp = cospan_cone(amb, "composable", "T",
                       ("R", "pr1", "r2"), ("X", "mid"), ("R", "pr2", "r1"))
    s = Sketch("preorder", amb, (mono, comp))
    _register("preorder", sizes, mname)
    _sketch_cache["preorder"] = s
    return s


def category_sketch() -> Sketch:
    """Sketch whose finite-set models are small categories.

    On top of the preorder data, R is left unconstrained (parallel
    arrows are allowed), T is still the composable-pairs limit, and T2
    is the limit of the zigzag presenting composable triples.  Unit and
    associativity laws hold because the corresponding morphism
    equations already hold in the ambient category.
    """
    if "category" in _sketch_cache:
        return _sketch_cache["category"]
    sizes = {"X": 1, "R": 2, "T": 3, "T2": 4}
    amb, mname = chains_category("E_cat", sizes, _CATEGORY_ALIASES)
    comp = cospan_cone(amb, "composable", "T",
                       ("R", "pr1", "r2"), ("X", "mid"), ("R", "pr2", "r1"))
    objs = ["d1", "e1", "d2", "e2", "d3"]
    mors = [Mor(f"id_{o}", o, o) for o in objs]
    arrows = [("d1", "e1"), ("d2", "e1"), ("d2", "e2"), ("d3", "e2")]
    mors += [Mor(f"{a}>{b}", a, b) for a, b in arrows]
    identity = {o: f"id_{o}" for o in objs}
    ctab = {}
    for m in mors:
        ctab[(m.name, identity[m.src])] = m.name
        ctab[(identity[m.tgt], m.name)] = m.name
    zig = FinCategory("zigzag", objs, mors, identity, ctab)
    dobj = {"d1": "R", "d2": "R", "d3": "R", "e1": "X", "e2": "X"}
    dmor = {"id_d1": amb.identity["R"], "id_d2": amb.identity["R"],
            "id_d3": amb.identity["R"], "id_e1": amb.identity["X"],
            "id_e2": amb.identity["X"],
            "d1>e1": "r2", "d2>e1": "r1", "d2>e2": "r2", "d3>e2": "r1"}
    legs = {"d1": "q1", "d2": "q2", "d3": "q3", "e1": "m1", "e2": "m2"}
    triple = Cone("triples", "T2", zig, dobj, dmor, legs)
    s = Sketch("category", amb, (comp, triple))
    _register("category", sizes, mname)
    _sketch_cache["category"] = s
    return s


# -- models from and to relational data ------------------------------------

def model_from_preorder(carrier: Sequence, rel: Iterable = None) -> SetModel:
    """Model of the preorder sketch built from a reflexive transitive relation.

    The value at a chain of size k is the set of length-k tuples whose
    consecutive entries are related; morphisms reindex tuples.
    """
    s = preorder_sketch()
    sizes, keys = chain_tables("preorder")
    relset = {(x, x) for x in carrier} if rel is None else set(rel)
    sets = {}
    for a, k in sizes.items():
        elems = [t for t in itertools.product(carrier, repeat=k)
                 if all((t[i], t[i + 1]) in relset for i in range(k - 1))]
        sets[a] = ctuple(elems)
    maps = {}
    for m in s.ambient.morphisms:
        a, b, u = keys[m.name]
        maps[m.name] = {t: tuple(t[j] for j in u) for t in sets[a]}
    return SetModel(s, FinSetDiagram(s.ambient, sets, maps))


def preorder_from_model(m: SetModel) -> Tuple[tuple, FrozenSet[tuple]]:
    """Carrier and relation presented by a model of the preorder sketch."""
    F = m.functor if isinstance(m, SetModel) else m
    carrier = F.sets["X"]
    rel = frozenset((F.maps["r1"][p], F.maps["r2"][p]) for p in F.sets["R"])
    return carrier, rel


# -- comodels: carriers with a marked subset --------------------------------

def copreorder_sketch() -> CoSketch:
    return dual_sketch(preorder_sketch())


def copreorder_model(carrier: Sequence, marked: Iterable) -> FinSetDiagram:
    """Comodel of the preorder sketch from a carrier and a marked subset.

    At the chain of size k the value is k levelled copies of the carrier
    with the copies of every marked element collapsed; elements are
    (level, x) pairs, with level -1 for collapsed ones.  Morphisms act
    on levels by the recorded monotone maps.
    """
    cs = copreorder_sketch()
    sizes, keys = chain_tables("preorder")
    mk = frozenset(marked)
    for x in mk:
        if x not in set(carrier):
            raise ValueError(f"marked element {x!r} not in carrier")
    sets = {}
    for a, k in sizes.items():
        elems = [(-1, x) if x in mk else (i, x)
                 for x in carrier for i in range(k)]
        sets[a] = ctuple(set(elems))
    maps = {}
    for m in cs.ambient.morphisms:
        a, b, u = keys[m.name]  # original direction a -> b; here src is b
        maps[m.name] = {(i, x): ((-1, x) if i < 0 else (u[i], x))
                        for (i, x) in sets[b]}
    return FinSetDiagram(cs.ambient, sets, maps)


def marked_subset_from_comodel(n: FinSetDiagram) -> Tuple[tuple, FrozenSet]:
    """Carrier and marked subset read off from a comodel in canonical form."""
    carrier = tuple(x for (_, x) in n.sets["X"])
    marked = frozenset(x for (lvl, x) in n.sets["R"] if lvl == -1)
    return carrier, marked


def classify_copreorders(carrier: Sequence) -> List[Tuple[FrozenSet, FinSetDiagram]]:
    """All comodels of the preorder sketch on a fixed carrier.

    Every comodel's pair of injections is jointly surjective, so its R
    value is a quotient of two carrier copies; the splitting along i
    forces the kernel classes to stay inside single-element fibers.  The
    search therefore runs over all partitions of the two copies, keeps
    the fiberwise ones, rebuilds the comodel and verifies the colimit
    conditions.
    """
    cs = copreorder_sketch()
    points = [(lvl, x) for x in carrier for lvl in (0, 1)]
    out: List[Tuple[FrozenSet, FinSetDiagram]] = []
    seen = set()
    for part in set_partitions(points):
        ok = True
        mk = set()
        for cls in part:
            xs = {x for (_, x) in cls}
            if len(xs) != 1:
                ok = False
                break
            if len(cls) == 2:
                mk.add(next(iter(xs)))
        if not ok:
            continue
        key = frozenset(mk)
        if key in seen:
            continue
        seen.add(key)
        n = copreorder_model(carrier, key)
        good, _ = is_comodel(cs, n)
        if good:
            out.append((key, n))
    out.sort(key=lambda kv: sort_key(kv[0]))
    return out


def copreorder_map_components(src: FinSetDiagram, tgt: FinSetDiagram,
                              f: Dict) -> Dict[str, dict]:
    """Components of the comodel morphism induced by a carrier map.

    The map must send marked elements to marked elements; levels are
    preserved and collapse where the image is marked.
    """
    _, mk_t = marked_subset_from_comodel(tgt)
    comps = {}
    for a in src.shape.objects:
        comp = {}
        for (lvl, x) in src.sets[a]:
            y = f[x]
            comp[(lvl, x)] = (-1, y) if y in mk_t else (lvl, y)
            if lvl < 0 and y not in mk_t:
                raise ValueError(f"map sends marked {x!r} to unmarked {y!r}")
        comps[a] = comp
    return comps
