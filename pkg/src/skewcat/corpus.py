"""Seeded generators for the test corpus: small categories, lattices, skew structures and reflections."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .bigcat import IndexMap
from .fincat import Adjunction, FinCategory, Functor, find_reflection, monoid_category, poset_category, product_category
from .report import StructuralError
from .skewmon import SkewMonoidalStructure
from .warping import SkewWarping, tensor_action


# -- categories --------------------------------------------------------------------


def random_category(rng: random.Random, max_objects: int = 4, max_morphisms: int = 12, name: str = "C") -> FinCategory:
    """A concrete category: small sets and the closure of a few random functions.

    Morphisms are ``(src, tgt, table)``; generators that would push the closure
    past ``max_morphisms`` are dropped.
    """
    k = rng.randint(1, max_objects)
    sizes = [rng.randint(1, 3) for _ in range(k)]
    mors = {(a, a, tuple(range(sizes[a]))) for a in range(k)}
    for _ in range(3 * k):
        a, b = rng.randrange(k), rng.randrange(k)
        gen = (a, b, tuple(rng.randrange(sizes[b]) for _ in range(sizes[a])))
        closed = _close(mors | {gen})
        if len(closed) <= max_morphisms:
            mors = closed
    ordered = sorted(mors, key=lambda m: (m[0] != m[1] or m[2] != tuple(range(sizes[m[0]])), m))
    pos = {m: i for i, m in enumerate(ordered)}
    ids = [pos[(a, a, tuple(range(sizes[a])))] for a in range(k)]
    table = {}
    for f in ordered:
        for g in ordered:
            if f[1] == g[0]:
                table[(pos[g], pos[f])] = pos[(f[0], g[1], tuple(g[2][x] for x in f[2]))]
    names = [f"id{m[0]}" if pos[m] in ids else f"m{pos[m]}" for m in ordered]
    return FinCategory(
        [str(a) for a in range(k)], names, [m[0] for m in ordered], [m[1] for m in ordered], ids, table, name
    )


def _close(mors: set) -> set:
    mors = set(mors)
    while True:
        new = {
            (f[0], g[1], tuple(g[2][x] for x in f[2])) for f in mors for g in mors if f[1] == g[0]
        } - mors
        if not new:
            return mors
        mors |= new


def random_categories(seed: int, count: int, max_objects: int = 4, max_morphisms: int = 12) -> list[FinCategory]:
    rng = random.Random(f"categories:{seed}")
    return [random_category(rng, max_objects, max_morphisms, name=f"C{n}") for n in range(count)]


def random_index_map(rng: random.Random, C: FinCategory, injective: bool, max_size: int = 3, name: str = "xi") -> IndexMap:
    objs = C.objects()
    if injective:
        size = rng.randint(1, len(objs))
        image = rng.sample(objs, size)
    else:
        size = rng.randint(1, max_size)
        image = [rng.choice(objs) for _ in range(size)]
    dom = [f"u{n}" for n in range(size)]
    return IndexMap(dom, list(objs), dict(zip(dom, image)), name=name)


def slice_instances(seed: int, count: int, injective: bool) -> list[tuple[FinCategory, IndexMap]]:
    """Pairs (C, index map); the non-injective family always includes a non-injective map."""
    rng = random.Random(f"slice-instances:{seed}:{injective}")
    out = []
    while len(out) < count:
        C = random_category(rng, name=f"C{len(out)}")
        xi = random_index_map(rng, C, injective, name="mu" if injective else "xi")
        if not injective and len(out) == 0 and xi.injective:
            continue
        out.append((C, xi))
    return out


# -- lattices and posetal structures ------------------------------------------------


def moore_lattice(rng: random.Random, points: int = 3, generators: int = 3, name: str = "M") -> tuple[FinCategory, list]:
    """The intersection closure of random subsets of ``range(points)`` together with the full set."""
    full = frozenset(range(points))
    family = {full}
    for _ in range(generators):
        family.add(frozenset(x for x in range(points) if rng.random() < 0.5))
    while True:
        new = {a & b for a in family for b in family} - family
        if not new:
            break
        family |= new
    elements = sorted(family, key=lambda s: (len(s), sorted(s)))
    return poset_category([_set_name(e) for e in elements], _subset_of(elements), name=name), elements


def _set_name(s: frozenset) -> str:
    return "{" + "".join(str(x) for x in sorted(s)) + "}"


def _subset_of(elements: list) -> Callable[[str, str], bool]:
    by_name = {_set_name(e): e for e in elements}
    return lambda a, b: by_name[a] <= by_name[b]


def posetal_structure(
    P: FinCategory,
    elements: Sequence[Hashable],
    tensor: Callable[[Hashable, Hashable], Hashable],
    unit: Hashable,
    name: str,
) -> SkewMonoidalStructure:
    """A skew structure on a poset: every constraint is the unique arrow, when it exists."""
    index = {e: i for i, e in enumerate(elements)}

    def arrow(a: int, b: int) -> int:
        hom = P.hom(a, b)
        if not hom:
            raise StructuralError(f"{name}: no arrow {P.obj_names[a]} -> {P.obj_names[b]}", (a, b))
        return hom[0]

    t = lambda a, b: index[tensor(elements[a], elements[b])]
    return SkewMonoidalStructure(
        P,
        t,
        lambda f, g: arrow(t(P.src(f), P.src(g)), t(P.tgt(f), P.tgt(g))),
        index[unit],
        lambda a, b, c: arrow(t(t(a, b), c), t(a, t(b, c))),
        lambda a: arrow(t(index[unit], a), a),
        lambda a: arrow(a, t(a, index[unit])),
        name=name,
    )


def posetal_meet(P: FinCategory) -> SkewMonoidalStructure:
    """Greatest lower bounds in a finite preorder category, with the top as unit."""
    objs = P.objects()
    below = {(a, b): [x for x in objs if P.hom(x, a) and P.hom(x, b)] for a in objs for b in objs}

    def glb(a, b):
        for x in below[(a, b)]:
            if all(P.hom(y, x) for y in below[(a, b)]):
                return x
        raise StructuralError(f"{P.name}: no meet of {P.obj_names[a]} and {P.obj_names[b]}", (a, b))

    tops = [t for t in objs if all(P.hom(a, t) for a in objs)]
    if not P.is_posetal() or not tops:
        raise StructuralError(f"{P.name} is not a preorder with a top element")
    return posetal_structure(P, objs, glb, tops[0], f"meet on {P.name}")


def meet_structure(P: FinCategory, elements: list) -> SkewMonoidalStructure:
    return posetal_structure(P, elements, lambda a, b: a & b, max(elements, key=len), f"meet on {P.name}")


def closure_from_family(elements: list, family: list) -> Callable:
    """The closure operator sending a to the least member of ``family`` above it."""
    return lambda a: min((s for s in family if a <= s), key=len)


def closure_skew(P: FinCategory, elements: list, closure: Callable, label: str = "T") -> SkewMonoidalStructure:
    """a (x) b = T(a) meet b with unit the top; skew whenever T is a closure operator."""
    return posetal_structure(P, elements, lambda a, b: closure(a) & b, max(elements, key=len), f"{label}-meet on {P.name}")


def random_closure_family(rng: random.Random, elements: list) -> list:
    """A sub-Moore family: meet-closed and containing the top."""
    top = max(elements, key=len)
    fam = {top} | {e for e in elements if rng.random() < 0.5}
    while True:
        new = {a & b for a in fam for b in fam} - fam
        if not new:
            return sorted(fam, key=lambda s: (len(s), sorted(s)))
        fam |= new


def square_lattice() -> tuple[FinCategory, list]:
    """{0, a, b, 1} with a, b incomparable, as subsets of {0, 1}."""
    elements = [frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})]
    return poset_category([_set_name(e) for e in elements], _subset_of(elements), name="Sq"), elements


# -- non-posetal structures ----------------------------------------------------------


def terminal_object(C: FinCategory):
    for t in C.objects():
        if all(len(C.hom(a, t)) == 1 for a in C.objects()):
            return t
    return None


def right_projection(C: FinCategory) -> SkewMonoidalStructure | None:
    """A (x) B = B with the terminal object as unit; rho is the map to the terminal object."""
    t = terminal_object(C)
    if t is None:
        return None
    return SkewMonoidalStructure(
        C,
        lambda a, b: b,
        lambda f, g: g,
        t,
        lambda a, b, c: C.identity(c),
        C.identity,
        lambda a: C.hom(a, t)[0],
        name=f"right projection on {C.name}",
    )


def commutative_monoid_structure(elements: list[str], mult: Callable[[str, str], str], unit: str, name: str) -> SkewMonoidalStructure:
    """A one-object category of a commutative monoid, tensored by multiplication."""
    M = monoid_category(elements, mult, unit, name=name)
    return SkewMonoidalStructure(
        M,
        lambda a, b: 0,
        lambda f, g: M.compose(f, g),
        0,
        lambda a, b, c: M.identity(0),
        M.identity,
        M.identity,
        name=f"multiplication on {name}",
    )


def product_structure(s1: SkewMonoidalStructure, s2: SkewMonoidalStructure) -> SkewMonoidalStructure:
    c, d = s1.category, s2.category
    P = product_category(c, d)
    no, nm = len(d.objects()), len(d.morphisms())
    ob = lambda a, b: a * no + b
    mo = lambda f, g: f * nm + g
    split_o = lambda x: divmod(x, no)
    split_m = lambda m: divmod(m, nm)

    def lift2(op):
        def run(x, y):
            (a1, a2), (b1, b2) = split_o(x), split_o(y)
            return ob(op[0](a1, b1), op[1](a2, b2))
        return run

    def tm(f, g):
        (f1, f2), (g1, g2) = split_m(f), split_m(g)
        return mo(s1.tensor_mor(f1, g1), s2.tensor_mor(f2, g2))

    def alpha(x, y, z):
        (a1, a2), (b1, b2), (c1, c2) = split_o(x), split_o(y), split_o(z)
        return mo(s1.alpha(a1, b1, c1), s2.alpha(a2, b2, c2))

    def unary(f1, f2):
        return lambda x: mo(f1(split_o(x)[0]), f2(split_o(x)[1]))

    return SkewMonoidalStructure(
        P,
        lift2((s1.tensor, s2.tensor)),
        tm,
        ob(s1.unit, s2.unit),
        alpha,
        unary(s1.lam, s2.lam),
        unary(s1.rho, s2.rho),
        name=f"{s1.name} x {s2.name}",
    )


# -- structures and reflections -------------------------------------------------------


def finite_structures(seed: int) -> list[SkewMonoidalStructure]:
    """Posetal and non-posetal skew structures on small finite categories."""
    rng = random.Random(f"structures:{seed}")
    out = []
    for n in range(6):
        P, el = moore_lattice(rng, points=3, generators=rng.randint(2, 4), name=f"M{n}")
        out.append(meet_structure(P, el))
        fam = random_closure_family(rng, el)
        out.append(closure_skew(P, el, closure_from_family(el, fam), label=f"T{n}"))
    Sq, el = square_lattice()
    out.append(meet_structure(Sq, el))
    for n in range(8):
        C = random_category(rng, name=f"R{n}")
        s = right_projection(C)
        if s is not None:
            out.append(s)
    out.append(commutative_monoid_structure(["e", "z"], lambda g, f: "z" if "z" in (g, f) else "e", "e", "Z2"))
    out.append(product_structure(out[0], out[-1]))
    return out


@dataclass
class ReflectionInstance:
    structure: SkewMonoidalStructure
    adjunction: Adjunction
    subset: tuple


def reflections_of(s: SkewMonoidalStructure, limit: int | None = None) -> list[ReflectionInstance]:
    """Every proper nonempty reflective full subcategory, found by search."""
    C = s.category
    objs = C.objects()
    found = []
    for r in range(1, len(objs)):
        for sub in itertools.combinations(objs, r):
            adj = find_reflection(C, sub)
            if adj is not None:
                found.append(ReflectionInstance(s, adj, sub))
                if limit is not None and len(found) >= limit:
                    return found
    return found


def reflection_corpus(seed: int, per_structure: int = 4) -> list[ReflectionInstance]:
    out = []
    for s in finite_structures(seed):
        out.extend(reflections_of(s, per_structure))
    return out


def failing_reflection() -> ReflectionInstance:
    """Meet on the square lattice reflected onto {0, a, 1}: L(b meet a) != L(L(b) meet a)."""
    Sq, el = square_lattice()
    s = meet_structure(Sq, el)
    sub = (0, 1, 3)
    return ReflectionInstance(s, find_reflection(Sq, sub), sub)


# -- warpings -----------------------------------------------------------------------


def closure_warping(P: FinCategory, elements: list, closure: Callable, label: str = "T") -> SkewWarping:
    """A closure operator riding the meet acting on itself; it warps meet into ``closure_skew``."""
    s = meet_structure(P, elements)
    index = {e: i for i, e in enumerate(elements)}

    def arrow(a: int, b: int) -> int:
        hom = P.hom(a, b)
        if not hom:
            raise StructuralError(f"{label}: no arrow {P.obj_names[a]} -> {P.obj_names[b]}", (a, b))
        return hom[0]

    omap = [index[closure(e)] for e in elements]
    T = Functor(P, P, omap, [arrow(omap[P.src(m)], omap[P.tgt(m)]) for m in P.morphisms()], name=label)
    t = s.tensor
    return SkewWarping(
        tensor_action(s),
        T,
        s.unit,
        lambda a, b: arrow(omap[t(omap[a], b)], t(omap[a], omap[b])),
        arrow(omap[s.unit], s.unit),
        lambda a: arrow(a, t(omap[a], s.unit)),
        name=f"{label} on {P.name}",
    )


def warping_corpus(seed: int) -> list[tuple[SkewWarping, SkewMonoidalStructure]]:
    """Closure warpings paired with the structure they should induce."""
    rng = random.Random(f"warpings:{seed}")
    out = []
    for n in range(6):
        P, el = moore_lattice(rng, points=3, generators=rng.randint(2, 4), name=f"W{n}")
        closure = closure_from_family(el, random_closure_family(rng, el))
        out.append((closure_warping(P, el, closure, f"T{n}"), closure_skew(P, el, closure, f"T{n}")))
    return out
