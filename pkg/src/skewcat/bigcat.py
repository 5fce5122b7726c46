"""The slice category Set/O over a finite index set, presented computably.

Objects are :class:`FibredSet` values (finite carriers with a fibre index),
morphisms are fibre-preserving functions.  Set/O has infinitely many objects,
so checks draw seeded samples of objects with bounded fibre sizes.

Element labels are plain hashable values; constructions tag them with tuples
that record provenance (``(x, c, y)`` in a tensor, ``(x, u)`` in a pullback) so
every canonical isomorphism can be written down elementwise.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .fincat import Adjunction, Category, ProcFunctor
from .report import StructuralError


class FibredSet:
    """A finite set over ``base``: ``fibres[k]`` is the fibre over ``base[k]``.

    Every element lies in exactly one fibre.
    """

    __slots__ = ("base", "fibres", "_pos", "_hash", "_bpos")

    def __init__(self, base: Sequence[Hashable], fibres: Sequence[Iterable[Hashable]]):
        self.base = tuple(base)
        self.fibres = tuple(tuple(f) for f in fibres)
        if len(self.fibres) != len(self.base):
            raise StructuralError("one fibre per base index is required")
        self._pos = None
        self._hash = None
        self._bpos = None

    @classmethod
    def over(cls, base: Sequence[Hashable], fibres: Mapping[Hashable, Iterable[Hashable]]) -> "FibredSet":
        return cls(base, [fibres.get(i, ()) for i in base])

    def _positions(self) -> dict:
        if self._pos is None:
            pos = {}
            k = 0
            for b, fib in enumerate(self.fibres):
                for x in fib:
                    if x in pos:
                        raise StructuralError(f"element {x!r} occurs twice in a fibred set", (x,))
                    pos[x] = (b, k)
                    k += 1
            self._pos = pos
        return self._pos

    def base_index(self, i: Hashable) -> int:
        if self._bpos is None:
            self._bpos = {b: k for k, b in enumerate(self.base)}
        return self._bpos[i]

    def fibre(self, i: Hashable) -> tuple:
        return self.fibres[self.base_index(i)]

    def elements(self) -> list:
        return [x for fib in self.fibres for x in fib]

    def position(self, x: Hashable) -> int:
        return self._positions()[x][1]

    def fibre_of(self, x: Hashable) -> Hashable:
        return self.base[self._positions()[x][0]]

    def __contains__(self, x: Hashable) -> bool:
        return x in self._positions()

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.fibres)

    def __len__(self) -> int:
        return sum(self.sizes())

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FibredSet):
            return NotImplemented
        return self.base == other.base and self.fibres == other.fibres

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.base, self.fibres))
        return self._hash

    def __repr__(self) -> str:
        inner = "; ".join(f"{i}: {list(f)}" for i, f in zip(self.base, self.fibres))
        return f"FibredSet({inner})"

    def to_json(self) -> dict:
        return {str(i): [tag_json(x) for x in f] for i, f in zip(self.base, self.fibres)}


class FibreMap:
    """A fibre-preserving function; ``images`` is aligned with ``dom.elements()``."""

    __slots__ = ("dom", "cod", "images", "_hash")

    def __init__(self, dom: FibredSet, cod: FibredSet, images: Sequence[Hashable]):
        self.dom, self.cod = dom, cod
        self.images = tuple(images)
        self._hash = None

    @classmethod
    def from_function(cls, dom: FibredSet, cod: FibredSet, fn: Callable[[Hashable], Hashable]) -> "FibreMap":
        return cls(dom, cod, [fn(x) for x in dom.elements()])

    def __call__(self, x: Hashable) -> Hashable:
        pos = self.dom._pos or self.dom._positions()
        return self.images[pos[x][1]]

    def pairs(self) -> list[tuple]:
        return list(zip(self.dom.elements(), self.images))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FibreMap):
            return NotImplemented
        return self.images == other.images and self.dom == other.dom and self.cod == other.cod

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, self.images))
        return self._hash

    def __repr__(self) -> str:
        return f"FibreMap({dict(self.pairs())})"

    def to_json(self) -> dict:
        return {"dom": self.dom.to_json(), "cod": self.cod.to_json(), "map": [[tag_json(x), tag_json(y)] for x, y in self.pairs()]}


def tag_json(x: Any) -> Any:
    if isinstance(x, tuple):
        return [tag_json(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def check_fibre_map(m: FibreMap) -> None:
    if m.dom.base != m.cod.base:
        raise StructuralError("fibre map between sets over different bases", (m,))
    if len(m.images) != len(m.dom):
        raise StructuralError("fibre map does not cover its domain", (m,))
    for x, y in m.pairs():
        if y not in m.cod or m.cod.fibre_of(y) != m.dom.fibre_of(x):
            raise StructuralError(f"fibre map sends {x!r} outside its fibre", (m, x))


class IndexMap:
    """A total function between finite index sets (the μ / ξ of the slice examples)."""

    def __init__(self, dom: Sequence[Hashable], cod: Sequence[Hashable], mapping: Mapping[Hashable, Hashable], name: str = "xi"):
        self.dom, self.cod = tuple(dom), tuple(cod)
        self.mapping = dict(mapping)
        self.name = name
        missing = [u for u in self.dom if u not in self.mapping]
        if missing:
            raise StructuralError(f"{name} is not total: no image for {missing}")
        bad = [u for u in self.dom if self.mapping[u] not in self.cod]
        if bad:
            raise StructuralError(f"{name} sends {bad} outside its codomain")

    def __call__(self, u: Hashable) -> Hashable:
        return self.mapping[u]

    @property
    def injective(self) -> bool:
        return len(set(self.mapping[u] for u in self.dom)) == len(self.dom)

    def preimage(self, j: Hashable) -> list:
        return [u for u in self.dom if self.mapping[u] == j]

    def image(self) -> list:
        return [j for j in self.cod if self.preimage(j)]

    def __repr__(self) -> str:
        return f"IndexMap({self.name}: {self.mapping})"


class SliceCategory(Category):
    """Set/O for a finite index set O (a BigCategory: objects on demand, sampled checks)."""

    is_finite = False

    def __init__(self, base: Sequence[Hashable], name: str | None = None):
        self.base = tuple(base)
        self.name = name or f"Set/{{{','.join(map(str, self.base))}}}"

    def obj(self, fibres: Mapping[Hashable, Iterable[Hashable]]) -> FibredSet:
        return FibredSet.over(self.base, fibres)

    def src(self, m: FibreMap) -> FibredSet:
        return m.dom

    def tgt(self, m: FibreMap) -> FibredSet:
        return m.cod

    def compose(self, g: FibreMap, f: FibreMap) -> FibreMap:
        if f.cod != g.dom:
            raise StructuralError("fibre maps are not composable", (g, f))
        pos = g.dom._pos or g.dom._positions()
        images = g.images
        return FibreMap(f.dom, g.cod, [images[pos[y][1]] for y in f.images])

    def identity(self, a: FibredSet) -> FibreMap:
        return FibreMap(a, a, a.elements())

    def inverse(self, m: FibreMap) -> FibreMap | None:
        if m.dom.sizes() != m.cod.sizes() or len(set(m.images)) != len(m.images):
            return None
        back = dict(zip(m.images, m.dom.elements()))
        return FibreMap(m.cod, m.dom, [back[y] for y in m.cod.elements()])

    def hom(self, a: FibredSet, b: FibredSet) -> list[FibreMap]:
        """All fibre-preserving functions, |hom| = prod_j |b_j|^|a_j|."""
        choices = [itertools.product(b.fibre(i), repeat=len(a.fibre(i))) for i in self.base]
        return [FibreMap(a, b, [y for part in combo for y in part]) for combo in itertools.product(*choices)]

    def hom_size(self, a: FibredSet, b: FibredSet) -> int:
        n = 1
        for i in self.base:
            n *= len(b.fibre(i)) ** len(a.fibre(i))
        return n

    def sample_object(self, rng, bound: int) -> FibredSet:
        fibres, k = [], 0
        for _ in self.base:
            size = rng.randint(0, bound)
            fibres.append([f"e{k + n}" for n in range(size)])
            k += size
        return FibredSet(self.base, fibres)

    def sample_morphism(self, rng, a: FibredSet, b: FibredSet) -> FibreMap | None:
        images = []
        for i in self.base:
            src, tgt = a.fibre(i), b.fibre(i)
            if src and not tgt:
                return None
            images.extend(rng.choice(tgt) for _ in src)
        return FibreMap(a, b, images)

    def check_typed(self, m, a, b, what: str = "morphism") -> None:
        if not isinstance(m, FibreMap):
            raise StructuralError(f"{what} is not a fibre map", (m,))
        super().check_typed(m, a, b, what)
        check_fibre_map(m)

    def terminal(self) -> FibredSet:
        return FibredSet(self.base, [[("*", i)] for i in self.base])

    def describe_obj(self, a: FibredSet) -> Any:
        return a.to_json()

    def describe_mor(self, m: FibreMap) -> Any:
        return m.to_json()


def slice_category(o: Sequence[Hashable], name: str | None = None) -> SliceCategory:
    return SliceCategory(o, name)


def coproduct(x: FibredSet, y: FibredSet) -> tuple[FibredSet, FibreMap, FibreMap]:
    """Binary coproduct with its two injections; elements tagged ``("l", x)`` / ``("r", y)``."""
    s = FibredSet(x.base, [[("l", a) for a in fx] + [("r", b) for b in fy] for fx, fy in zip(x.fibres, y.fibres)])
    return s, FibreMap(x, s, [("l", a) for a in x.elements()]), FibreMap(y, s, [("r", b) for b in y.elements()])


def direct_image(xi: IndexMap, src: SliceCategory | None = None, tgt: SliceCategory | None = None) -> ProcFunctor:
    """ξ_! : Set/U -> Set/O, (NA)_i = sum of A_u over ξ(u) = i.

    The sum keeps element labels unchanged (they are already unique in A).
    """
    src = src or SliceCategory(xi.dom)
    tgt = tgt or SliceCategory(xi.cod)

    def on_obj(a: FibredSet) -> FibredSet:
        return FibredSet(tgt.base, [[x for u in xi.preimage(i) for x in a.fibre(u)] for i in tgt.base])

    def on_mor(f: FibreMap) -> FibreMap:
        d, c = on_obj(f.dom), on_obj(f.cod)
        return FibreMap(d, c, [f(x) for x in d.elements()])

    return ProcFunctor(src, tgt, on_obj, on_mor, name=f"{xi.name}_!")


def inverse_image(xi: IndexMap, src: SliceCategory | None = None, tgt: SliceCategory | None = None) -> ProcFunctor:
    """ξ* : Set/O -> Set/U by pullback, (RX)_u = {(x, u) : x in X_ξ(u)}."""
    src = src or SliceCategory(xi.cod)
    tgt = tgt or SliceCategory(xi.dom)

    def on_obj(x: FibredSet) -> FibredSet:
        return FibredSet(tgt.base, [[(e, u) for e in x.fibre(xi(u))] for u in tgt.base])

    def on_mor(f: FibreMap) -> FibreMap:
        d, c = on_obj(f.dom), on_obj(f.cod)
        return FibreMap(d, c, [(f(e), u) for (e, u) in d.elements()])

    return ProcFunctor(src, tgt, on_obj, on_mor, name=f"{xi.name}*")


def slice_adjunction(xi: IndexMap) -> Adjunction:
    """ξ_! -| ξ* with unit a |-> (a, u) and counit (x, u) |-> x."""
    set_u, set_o = SliceCategory(xi.dom), SliceCategory(xi.cod)
    N = direct_image(xi, set_u, set_o)
    R = inverse_image(xi, set_o, set_u)

    def unit(a: FibredSet) -> FibreMap:
        return FibreMap(a, R.obj(N.obj(a)), [(x, a.fibre_of(x)) for x in a.elements()])

    def counit(x: FibredSet) -> FibreMap:
        d = N.obj(R.obj(x))
        return FibreMap(d, x, [e for (e, _u) in d.elements()])

    return Adjunction(N, R, unit, counit, name=f"{xi.name}_! -| {xi.name}*")
