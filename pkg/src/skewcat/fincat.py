"""Explicit finite categories, functors, natural transformations and adjunctions.

Objects and morphisms of a :class:`FinCategory` are dense integer indices and
composition is a full table, so every diagram check is a lookup.  The
:class:`Category` base class is the interface the rest of the package codes
against; large categories (``bigcat``) and coalgebra categories implement it
too.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .report import CheckReport, ObjectSource, StructuralError, sample_morphisms


class Category(ABC):
    is_finite: bool = False
    name: str = "?"

    @abstractmethod
    def src(self, m): ...

    @abstractmethod
    def tgt(self, m): ...

    @abstractmethod
    def compose(self, g, f):
        """g after f."""

    @abstractmethod
    def identity(self, a): ...

    @abstractmethod
    def inverse(self, m):
        """The unique two-sided inverse of m, or None."""

    def comp(self, *ms):
        """Right-to-left composite: comp(h, g, f) = h . g . f."""
        return reduce(lambda acc, f: self.compose(acc, f), ms[1:], ms[0])

    def hom(self, a, b) -> list:
        raise NotImplementedError(f"{type(self).__name__} cannot enumerate hom sets")

    def objects(self) -> list:
        raise NotImplementedError(f"{type(self).__name__} is not finite")

    def morphisms(self) -> list:
        raise NotImplementedError(f"{type(self).__name__} is not finite")

    def sample_object(self, rng, bound: int):
        return rng.choice(self.objects())

    def sample_morphism(self, rng, a, b):
        h = self.hom(a, b)
        return rng.choice(h) if h else None

    def is_iso(self, m) -> bool:
        return self.inverse(m) is not None

    def describe_obj(self, a) -> Any:
        return a

    def describe_mor(self, m) -> Any:
        return m

    def check_typed(self, m, a, b, what: str = "morphism") -> None:
        if self.src(m) != a or self.tgt(m) != b:
            raise StructuralError(
                f"{what} {self.describe_mor(m)!r} has type "
                f"{self.describe_obj(self.src(m))!r} -> {self.describe_obj(self.tgt(m))!r}, "
                f"expected {self.describe_obj(a)!r} -> {self.describe_obj(b)!r}",
                (m,),
            )


class FinCategory(Category):
    """A finite category given by explicit tables.

    ``comp`` maps ``(g, f)`` to ``g . f`` and is expected to be defined exactly
    when ``tgt(f) == src(g)``; nothing is validated at construction, use
    :func:`check_category` for that.
    """

    is_finite = True

    def __init__(
        self,
        obj_names: Sequence[str],
        mor_names: Sequence[str],
        srcs: Sequence[int],
        tgts: Sequence[int],
        ids: Sequence[int],
        comp: Mapping[tuple[int, int], int],
        name: str = "C",
    ):
        self.obj_names = tuple(obj_names)
        self.mor_names = tuple(mor_names)
        self.srcs = tuple(srcs)
        self.tgts = tuple(tgts)
        self.ids = tuple(ids)
        self.table = dict(comp)
        self.name = name
        self._homs: dict[tuple[int, int], list[int]] = {}
        for m in range(len(self.mor_names)):
            self._homs.setdefault((self.srcs[m], self.tgts[m]), []).append(m)
        self._inverses: dict[int, int | None] = {}

    @classmethod
    def from_names(
        cls,
        objects: Sequence[str],
        arrows: Mapping[str, tuple[str, str]],
        comp: Mapping[tuple[str, str], str] = {},
        name: str = "C",
        fill_identities: bool = True,
    ) -> "FinCategory":
        """Build from names; identities are ``id<obj>`` and, unless overridden, compose trivially."""
        objects = list(objects)
        oi = {o: i for i, o in enumerate(objects)}
        mor_names = [f"id{o}" for o in objects]
        srcs = list(range(len(objects)))
        tgts = list(range(len(objects)))
        for m, (s, t) in arrows.items():
            if m in mor_names:
                continue
            if s not in oi or t not in oi:
                raise StructuralError(f"arrow {m} refers to an unknown object", (m,))
            mor_names.append(m)
            srcs.append(oi[s])
            tgts.append(oi[t])
        mi = {m: i for i, m in enumerate(mor_names)}
        table: dict[tuple[int, int], int] = {}
        if fill_identities:
            for m in range(len(mor_names)):
                table[(tgts[m], m)] = m
                table[(m, srcs[m])] = m
        for (g, f), h in comp.items():
            for x in (g, f, h):
                if x not in mi:
                    raise StructuralError(f"composition entry mentions unknown morphism {x}", (g, f))
            table[(mi[g], mi[f])] = mi[h]
        return cls(objects, mor_names, srcs, tgts, list(range(len(objects))), table, name)

    # -- Category interface -------------------------------------------------

    def src(self, m: int) -> int:
        return self.srcs[m]

    def tgt(self, m: int) -> int:
        return self.tgts[m]

    def compose(self, g: int, f: int) -> int:
        try:
            return self.table[(g, f)]
        except KeyError:
            raise StructuralError(
                f"{self.name}: no composite {self.mor_names[g]} . {self.mor_names[f]}", (g, f)
            ) from None

    def identity(self, a: int) -> int:
        return self.ids[a]

    def hom(self, a: int, b: int) -> list[int]:
        return self._homs.get((a, b), [])

    def objects(self) -> list[int]:
        return list(range(len(self.obj_names)))

    def morphisms(self) -> list[int]:
        return list(range(len(self.mor_names)))

    def inverse(self, m: int) -> int | None:
        if m not in self._inverses:
            self._inverses[m] = is_invertible(m, self)
        return self._inverses[m]

    def describe_obj(self, a: int) -> str:
        return self.obj_names[a]

    def describe_mor(self, m: int) -> str:
        return self.mor_names[m]

    # -- lookups -------------------------------------------------------------

    def obj(self, name: str) -> int:
        return self.obj_names.index(name)

    def mor(self, name: str) -> int:
        return self.mor_names.index(name)

    def __len__(self) -> int:
        return len(self.obj_names)

    def __repr__(self) -> str:
        return f"FinCategory({self.name!r}, {len(self.obj_names)} objects, {len(self.mor_names)} morphisms)"

    def is_posetal(self) -> bool:
        return all(len(h) <= 1 for h in self._homs.values())


def is_invertible(m: int, c: FinCategory) -> int | None:
    """Exhaustive search of hom(tgt m, src m) for the two-sided inverse of m."""
    a, b = c.src(m), c.tgt(m)
    for g in c.hom(b, a):
        if c.table.get((g, m)) == c.ids[a] and c.table.get((m, g)) == c.ids[b]:
            return g
    return None


def check_category(c: FinCategory) -> CheckReport:
    """All identity and associativity law instances; raises StructuralError on malformed tables."""
    n_obj, n_mor = len(c.obj_names), len(c.mor_names)
    for m in range(n_mor):
        if not (0 <= c.srcs[m] < n_obj and 0 <= c.tgts[m] < n_obj):
            raise StructuralError(f"morphism {c.mor_names[m]} has src/tgt out of range", (m,))
    for o in range(n_obj):
        i = c.ids[o]
        if not 0 <= i < n_mor or c.srcs[i] != o or c.tgts[i] != o:
            raise StructuralError(f"identity of {c.obj_names[o]} is not an endomorphism of it", (o,))
    mistyped, missing = [], []
    for (g, f), h in c.table.items():
        if not (0 <= g < n_mor and 0 <= f < n_mor and 0 <= h < n_mor):
            raise StructuralError("composition table entry out of range", (g, f))
        if c.tgts[f] != c.srcs[g]:
            mistyped.append((g, f))
        elif c.srcs[h] != c.srcs[f] or c.tgts[h] != c.tgts[g]:
            mistyped.append((g, f))
    for f in range(n_mor):
        for g in _out_of(c, c.tgts[f]):
            if (g, f) not in c.table:
                missing.append((g, f))
    if mistyped:
        names = ", ".join(f"({c.mor_names[g]}, {c.mor_names[f]})" for g, f in mistyped)
        raise StructuralError(f"{c.name}: ill-typed composition entries at {names}", tuple(mistyped))
    if missing:
        names = ", ".join(f"({c.mor_names[g]}, {c.mor_names[f]})" for g, f in missing)
        raise StructuralError(f"{c.name}: composition table not total, missing {names}", tuple(missing))

    report = CheckReport(f"category {c.name}")
    for f in range(n_mor):
        report.expect("left-identity", c.table[(c.ids[c.tgts[f]], f)], f, (c.ids[c.tgts[f]], f))
        report.expect("right-identity", c.table[(f, c.ids[c.srcs[f]])], f, (f, c.ids[c.srcs[f]]))
    for f in range(n_mor):
        for g in _out_of(c, c.tgts[f]):
            gf = c.table[(g, f)]
            for h in _out_of(c, c.tgts[g]):
                report.expect(
                    "associativity", c.table[(h, gf)], c.table[(c.table[(h, g)], f)], (h, g, f)
                )
    return report


def _out_of(c: FinCategory, a: int) -> list[int]:
    return [m for b in range(len(c.obj_names)) for m in c.hom(a, b)]


# -- functors ----------------------------------------------------------------


class Functor:
    """A functor given by object and morphism tables (finite domain)."""

    def __init__(self, dom: FinCategory, cod: Category, omap: Sequence, mmap: Sequence, name: str = "F"):
        self.dom, self.cod = dom, cod
        self.omap, self.mmap = tuple(omap), tuple(mmap)
        self.name = name

    def obj(self, a):
        return self.omap[a]

    def mor(self, f):
        return self.mmap[f]

    def __repr__(self) -> str:
        return f"Functor({self.name}: {self.dom.name} -> {self.cod.name})"


class ProcFunctor:
    """A functor given by procedures, for domains too large to tabulate."""

    def __init__(self, dom: Category, cod: Category, obj: Callable, mor: Callable, name: str = "F"):
        self.dom, self.cod = dom, cod
        self._obj, self._mor = obj, mor
        self.name = name

    def obj(self, a):
        return self._obj(a)

    def mor(self, f):
        return self._mor(f)

    def __repr__(self) -> str:
        return f"ProcFunctor({self.name}: {self.dom.name} -> {self.cod.name})"


def identity_functor(c: Category):
    if isinstance(c, FinCategory):
        return Functor(c, c, c.objects(), c.morphisms(), name=f"1_{c.name}")
    return ProcFunctor(c, c, lambda a: a, lambda f: f, name=f"1_{c.name}")


def compose_functors(g, f):
    """g after f."""
    if isinstance(f, Functor) and isinstance(g, Functor):
        return Functor(f.dom, g.cod, [g.obj(a) for a in f.omap], [g.mor(m) for m in f.mmap], f"{g.name}{f.name}")
    return ProcFunctor(f.dom, g.cod, lambda a: g.obj(f.obj(a)), lambda m: g.mor(f.mor(m)), f"{g.name}{f.name}")


def constant_functor(dom: FinCategory, cod: FinCategory, o: int) -> Functor:
    return Functor(dom, cod, [o] * len(dom.obj_names), [cod.ids[o]] * len(dom.mor_names), name=f"const_{o}")


def check_functor(F: Functor) -> CheckReport:
    dom, cod = F.dom, F.cod
    if len(F.omap) != len(dom.obj_names) or len(F.mmap) != len(dom.mor_names):
        raise StructuralError(f"{F.name}: tables do not cover the domain")
    if isinstance(cod, FinCategory):
        for a, o in enumerate(F.omap):
            if not (isinstance(o, int) and 0 <= o < len(cod.obj_names)):
                raise StructuralError(f"{F.name}: object image of {dom.obj_names[a]} out of range", (a,))
        for m, fm in enumerate(F.mmap):
            if not (isinstance(fm, int) and 0 <= fm < len(cod.mor_names)):
                raise StructuralError(f"{F.name}: morphism image of {dom.mor_names[m]} out of range", (m,))
    report = CheckReport(f"functor {F.name}")
    for m in dom.morphisms():
        fm = F.mor(m)
        report.expect("preserves-src", cod.src(fm), F.obj(dom.src(m)), (m,))
        report.expect("preserves-tgt", cod.tgt(fm), F.obj(dom.tgt(m)), (m,))
    for a in dom.objects():
        report.expect("preserves-identities", F.mor(dom.identity(a)), cod.identity(F.obj(a)), (dom.identity(a),))
    for (g, f), gf in sorted(dom.table.items()):
        fg, ff = F.mor(g), F.mor(f)
        if cod.tgt(ff) != cod.src(fg):
            report.fail("preserves-composition", (g, f), "images not composable")
            continue
        report.expect("preserves-composition", F.mor(gf), cod.compose(fg, ff), (g, f))
    return report


def is_fully_faithful(F: Functor) -> bool:
    dom, cod = F.dom, F.cod
    for a in dom.objects():
        for b in dom.objects():
            images = [F.mor(m) for m in dom.hom(a, b)]
            if sorted(images) != sorted(cod.hom(F.obj(a), F.obj(b))):
                return False
    return True


# -- natural transformations ---------------------------------------------------


class NatTransformation:
    """A family of components ``dom.obj(a) -> cod.obj(a)``."""

    def __init__(self, dom, cod, components: Callable | Sequence, name: str = "t"):
        self.dom, self.cod = dom, cod
        self._components = components
        self.name = name

    def at(self, a):
        c = self._components
        return c(a) if callable(c) else c[a]


def identity_transformation(F) -> NatTransformation:
    return NatTransformation(F, F, lambda a: F.cod.identity(F.obj(a)), name=f"1_{F.name}")


def vertical(s: NatTransformation, t: NatTransformation) -> NatTransformation:
    """s after t, for t: F => G and s: G => H."""
    c = t.dom.cod
    return NatTransformation(t.dom, s.cod, lambda a: c.compose(s.at(a), t.at(a)), f"{s.name}.{t.name}")


def whisker_left(H, t: NatTransformation) -> NatTransformation:
    """H t : HF => HG."""
    return NatTransformation(compose_functors(H, t.dom), compose_functors(H, t.cod), lambda a: H.mor(t.at(a)), f"{H.name}{t.name}")


def whisker_right(t: NatTransformation, K) -> NatTransformation:
    """t K : FK => GK."""
    return NatTransformation(compose_functors(t.dom, K), compose_functors(t.cod, K), lambda a: t.at(K.obj(a)), f"{t.name}{K.name}")


def check_natural(t: NatTransformation, source: ObjectSource | None = None) -> CheckReport:
    F, G = t.dom, t.cod
    dom, cod = F.dom, F.cod
    src = source or ObjectSource.for_category(dom)
    for a in src.pool:
        cod.check_typed(t.at(a), F.obj(a), G.obj(a), f"component {t.name}_{dom.describe_obj(a)}")
    report = CheckReport(f"naturality of {t.name}")
    for (f,) in sample_morphisms(dom, src, 1, key=f"nat:{t.name}"):
        a, b = dom.src(f), dom.tgt(f)
        report.expect(
            "naturality",
            cod.compose(G.mor(f), t.at(a)),
            cod.compose(t.at(b), F.mor(f)),
            (f,),
        )
    return report


# -- adjunctions ---------------------------------------------------------------


class Adjunction:
    """``left -| right`` with unit ``1 => right.left`` and counit ``left.right => 1``.

    A reflection is an adjunction ``L -| N`` with invertible counit; a
    coreflection is ``N -| R`` with invertible unit.  Both use this class.
    """

    def __init__(self, left, right, unit: Callable, counit: Callable, name: str = "adj"):
        self.left, self.right = left, right
        self.unit, self.counit = unit, counit
        self.name = name

    @property
    def lower(self) -> Category:
        """Domain of the left adjoint."""
        return self.left.dom

    @property
    def upper(self) -> Category:
        """Domain of the right adjoint."""
        return self.right.dom


def check_adjunction(adj: Adjunction, lower: ObjectSource | None = None, upper: ObjectSource | None = None) -> CheckReport:
    L, N = adj.left, adj.right
    X, A = adj.lower, adj.upper
    lower = lower or ObjectSource.for_category(X)
    upper = upper or ObjectSource.for_category(A)
    report = CheckReport(f"adjunction {adj.name}")
    for x in lower.pool:
        X.check_typed(adj.unit(x), x, N.obj(L.obj(x)), "unit component")
        lx = L.obj(x)
        report.expect("triangle-left", A.compose(adj.counit(lx), L.mor(adj.unit(x))), A.identity(lx), (x,))
    for a in upper.pool:
        A.check_typed(adj.counit(a), L.obj(N.obj(a)), a, "counit component")
        na = N.obj(a)
        report.expect("triangle-right", X.compose(N.mor(adj.counit(a)), adj.unit(na)), X.identity(na), (a,))
    report.info["counit-invertible"] = all(A.is_iso(adj.counit(a)) for a in upper.pool)
    report.info["unit-invertible"] = all(X.is_iso(adj.unit(x)) for x in lower.pool)
    return report


def identity_adjunction(c: Category) -> Adjunction:
    one = identity_functor(c)
    return Adjunction(one, one, c.identity, c.identity, name=f"1_{c.name}")


def full_subcategory(c: FinCategory, objs: Iterable[int], name: str | None = None) -> tuple[FinCategory, Functor]:
    """The full subcategory on ``objs`` together with its inclusion functor."""
    objs = sorted(set(objs))
    pos = {o: i for i, o in enumerate(objs)}
    mors = [m for m in c.morphisms() if c.src(m) in pos and c.tgt(m) in pos]
    mpos = {m: i for i, m in enumerate(mors)}
    table = {
        (mpos[g], mpos[f]): mpos[h]
        for (g, f), h in c.table.items()
        if g in mpos and f in mpos
    }
    sub = FinCategory(
        [c.obj_names[o] for o in objs],
        [c.mor_names[m] for m in mors],
        [pos[c.src(m)] for m in mors],
        [pos[c.tgt(m)] for m in mors],
        [mpos[c.ids[o]] for o in objs],
        table,
        name=name or f"{c.name}|{{{','.join(c.obj_names[o] for o in objs)}}}",
    )
    return sub, Functor(sub, c, objs, mors, name="N")


def find_reflection(c: FinCategory, objs: Iterable[int]) -> Adjunction | None:
    """Reflection of ``c`` onto the full subcategory on ``objs``, by exhaustive search.

    Returns ``L -| N`` with N the inclusion and identity counit, or None when the
    subcategory is not reflective.
    """
    sub, N = full_subcategory(c, objs)
    targets = sub.objects()
    reflector: list[tuple[int, int]] = []
    for x in c.objects():
        found = None
        candidates = [(N.obj(s), s) for s in targets]
        for nx, s in sorted(candidates, key=lambda p: p[0] != x):
            for m in c.hom(x, nx):
                if all(_precomposition_bijective(c, N, sub, m, s, t) for t in targets):
                    found = (s, m)
                    break
            if found:
                break
        if found is None:
            return None
        reflector.append(found)
    omap = [s for s, _ in reflector]
    unit = [m for _, m in reflector]
    mmap = []
    for f in c.morphisms():
        x, y = c.src(f), c.tgt(f)
        target = c.compose(unit[y], f)
        hits = [g for g in sub.hom(omap[x], omap[y]) if c.compose(N.mor(g), unit[x]) == target]
        if len(hits) != 1:
            return None
        mmap.append(hits[0])
    L = Functor(c, sub, omap, mmap, name="L")
    return Adjunction(L, N, lambda x: unit[x], sub.identity, name=f"reflect {sub.name}")


def _precomposition_bijective(c, N, sub, m, s, t) -> bool:
    images = sorted(c.compose(N.mor(g), m) for g in sub.hom(s, t))
    return images == sorted(c.hom(c.src(m), N.obj(t))) and len(set(images)) == len(images)


# -- small builders ------------------------------------------------------------


def terminal_category() -> FinCategory:
    return FinCategory.from_names(["*"], {}, name="1")


def discrete(n: int) -> FinCategory:
    return FinCategory.from_names([str(i) for i in range(n)], {}, name=f"disc{n}")


def walking_arrow() -> FinCategory:
    return FinCategory.from_names(["0", "1"], {"f": ("0", "1")}, name="2")


def walking_iso() -> FinCategory:
    return FinCategory.from_names(
        ["0", "1"],
        {"f": ("0", "1"), "g": ("1", "0")},
        {("g", "f"): "id0", ("f", "g"): "id1"},
        name="Iso",
    )


def parallel_pair() -> FinCategory:
    return FinCategory.from_names(["0", "1"], {"f": ("0", "1"), "g": ("0", "1")}, name="Par")


def ordinal(n: int) -> FinCategory:
    """The chain 0 < 1 < ... < n-1 as a category."""
    return poset_category([str(i) for i in range(n)], lambda a, b: int(a) <= int(b), name=f"[{n}]")


def poset_category(elements: Sequence[Hashable], leq: Callable[[Any, Any], bool], name: str = "P") -> FinCategory:
    """A preorder as a category; the morphism a -> b is named ``a<=b``."""
    elements = list(elements)
    n = len(elements)
    mor_names, srcs, tgts = [], [], []
    index: dict[tuple[int, int], int] = {}
    ids = [0] * n
    for i in range(n):
        for j in range(n):
            if leq(elements[i], elements[j]):
                index[(i, j)] = len(mor_names)
                mor_names.append(f"id{elements[i]}" if i == j else f"{elements[i]}<={elements[j]}")
                srcs.append(i)
                tgts.append(j)
        ids[i] = index[(i, i)]
    table = {}
    for (i, j), f in index.items():
        for (j2, k), g in index.items():
            if j2 == j:
                if (i, k) not in index:
                    raise StructuralError(f"{name}: order relation is not transitive at {elements[i]}, {elements[k]}")
                table[(g, f)] = index[(i, k)]
    return FinCategory([str(e) for e in elements], mor_names, srcs, tgts, ids, table, name)


def monoid_category(elements: Sequence[str], mult: Callable[[str, str], str], unit: str, name: str = "M") -> FinCategory:
    """One-object category of a finite monoid; ``mult(g, f)`` is g after f."""
    elements = [unit] + [e for e in elements if e != unit]
    idx = {e: i for i, e in enumerate(elements)}
    table = {(idx[g], idx[f]): idx[mult(g, f)] for g in elements for f in elements}
    names = ["id*" if e == unit else e for e in elements]
    return FinCategory(["*"], names, [0] * len(elements), [0] * len(elements), [0], table, name)


def product_category(c: FinCategory, d: FinCategory, name: str | None = None) -> FinCategory:
    objs = list(itertools.product(c.objects(), d.objects()))
    opos = {o: i for i, o in enumerate(objs)}
    mors = list(itertools.product(c.morphisms(), d.morphisms()))
    mpos = {m: i for i, m in enumerate(mors)}
    table = {}
    for (g1, g2) in mors:
        for (f1, f2) in mors:
            if (g1, f1) in c.table and (g2, f2) in d.table:
                table[(mpos[(g1, g2)], mpos[(f1, f2)])] = mpos[(c.table[(g1, f1)], d.table[(g2, f2)])]
    return FinCategory(
        [f"({c.obj_names[a]},{d.obj_names[b]})" for a, b in objs],
        [f"({c.mor_names[f]},{d.mor_names[g]})" for f, g in mors],
        [opos[(c.src(f), d.src(g))] for f, g in mors],
        [opos[(c.tgt(f), d.tgt(g))] for f, g in mors],
        [mpos[(c.ids[a], d.ids[b])] for a, b in objs],
        table,
        name or f"{c.name}x{d.name}",
    )
