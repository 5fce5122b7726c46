"""The skew structure on Set/O induced by a finite category C, and its two descents to Set/U.

For C with objects O::

    (X (x) Y)_j = sum_i X_i x C(i, j) x Y_j        elements (x, c, y)
    I_j         = {("*", j)}
    alpha:  ((x, a, y), b, z) |-> (x, b.a, (y, b, z))
    lambda: (p, a, y)         |-> y
    rho:    x                 |-> (x, 1_j, ("*", j))

An injective index map mu: U -> O gives a coreflection Set/U -> Set/O; an
arbitrary xi gives the comonad G = xi_! xi* whose coalgebras are Set/U.  In
both cases the induced structure on Set/U is compared elementwise with the
structure of the full image of the index map.
"""

from __future__ import annotations

from typing import Any, Callable, Hashable, Sequence

from .bigcat import FibredSet, FibreMap, IndexMap, SliceCategory, check_fibre_map, coproduct, slice_adjunction
from .comonad_lift import ActegoryComonad, Coalgebra, CoalgebraMorphism, idempotent_comparison, lift_comonad_structure
from .fincat import Adjunction, FinCategory, Functor, ProcFunctor, check_adjunction, is_fully_faithful
from .reflection import build_coreflected_structure, check_coreflection_condition
from .report import CheckReport, ObjectSource, PreconditionError, SamplingConfig, StructuralError, draw
from .skewmon import SkewMonoidalStructure, check_monoidal, check_skew_axioms, check_structure_iso
from .warping import tensor_action


def build_slice_skew(
    C: FinCategory,
    category: SliceCategory | None = None,
    name: str | None = None,
) -> SkewMonoidalStructure:
    """The skew structure on Set/ob(C); the k-th base label of ``category`` names object k."""
    n = len(C.objects())
    S = category or SliceCategory(tuple(range(n)))
    if len(S.base) != n:
        raise StructuralError("slice base must have one label per object of C")
    label = S.base
    index = {b: k for k, b in enumerate(label)}
    objs = C.objects()

    def tensor(x: FibredSet, y: FibredSet) -> FibredSet:
        return FibredSet(
            label,
            [
                [(e, c, d) for i in objs for e in x.fibres[i] for c in C.hom(i, j) for d in y.fibres[j]]
                for j in objs
            ],
        )

    def tensor_mor(f: FibreMap, g: FibreMap) -> FibreMap:
        dom = tensor(f.dom, g.dom)
        return FibreMap(dom, tensor(f.cod, g.cod), [(f(e), c, g(d)) for (e, c, d) in dom.elements()])

    def alpha(x, y, z) -> FibreMap:
        dom = tensor(tensor(x, y), z)
        return FibreMap(
            dom, tensor(x, tensor(y, z)), [(e, C.compose(b, a), (d, b, w)) for ((e, a, d), b, w) in dom.elements()]
        )

    def lam(y) -> FibreMap:
        dom = tensor(S.terminal(), y)
        return FibreMap(dom, y, [d for (_p, _c, d) in dom.elements()])

    def rho(x) -> FibreMap:
        images = []
        for e in x.elements():
            j = x.fibre_of(e)
            images.append((e, C.identity(index[j]), ("*", j)))
        return FibreMap(x, tensor(x, S.terminal()), images)

    return SkewMonoidalStructure(S, tensor, tensor_mor, S.terminal(), alpha, lam, rho, name=name or f"slice({C.name})")


def slice_cardinality(C: FinCategory, x: FibredSet, y: FibredSet, j: int) -> int:
    """|(X (x) Y)_j| = sum_i |X_i| |C(i, j)| |Y_j| for the j-th base index."""
    return sum(len(x.fibres[i]) * len(C.hom(i, j)) * len(y.fibres[j]) for i in C.objects())


# -- full image ----------------------------------------------------------------------


def _object_index(C: FinCategory, xi: IndexMap) -> Callable[[Hashable], int]:
    if len(xi.cod) != len(C.objects()):
        raise StructuralError("index map codomain must be the object set of C")
    pos = {b: k for k, b in enumerate(xi.cod)}
    return lambda u: pos[xi(u)]


def full_image(xi: IndexMap, C: FinCategory, name: str | None = None) -> FinCategory:
    """Objects dom(xi), homs C(xi u, xi v), composition from C.

    ``source_arrows[m]`` records morphism m as ``(p, q, c)`` with c a morphism of C.
    """
    at = _object_index(C, xi)
    us = list(xi.dom)
    arrows = [(p, q, c) for p, u in enumerate(us) for q, v in enumerate(us) for c in C.hom(at(u), at(v))]
    apos = {a: n for n, a in enumerate(arrows)}
    table = {}
    for n1, (p, q, c) in enumerate(arrows):
        for n2, (q2, r, d) in enumerate(arrows):
            if q2 == q:
                table[(n2, n1)] = apos[(p, r, C.compose(d, c))]
    fi = FinCategory(
        [str(u) for u in us],
        [f"{C.mor_names[c]}@{us[p]},{us[q]}" for p, q, c in arrows],
        [p for p, _, _ in arrows],
        [q for _, q, _ in arrows],
        [apos[(p, p, C.identity(at(u)))] for p, u in enumerate(us)],
        table,
        name=name or f"im({xi.name})",
    )
    fi.source_arrows = arrows
    fi.arrow_index = apos
    return fi


def full_image_functor(xi: IndexMap, C: FinCategory, fi: FinCategory) -> Functor:
    at = _object_index(C, xi)
    return Functor(fi, C, [at(u) for u in xi.dom], [c for _, _, c in fi.source_arrows], name=f"{xi.name}~")


def _full_image_witness(fi: FinCategory, base: Sequence[Hashable], bar: SkewMonoidalStructure, target: SkewMonoidalStructure, strip: Callable):
    """Tensor comparison ``(a, c, b) |-> (a, c as a full-image arrow, b)``.

    ``strip`` turns a domain element into ``(a, c, b, v)`` with v its fibre.
    """
    pos = {u: p for p, u in enumerate(base)}

    def w(a: FibredSet, b: FibredSet) -> FibreMap:
        dom = bar.tensor(a, b)
        images = []
        for z in dom.elements():
            x, c, y, v = strip(z, dom)
            images.append((x, fi.arrow_index[(pos[a.fibre_of(x)], pos[v], c)], y))
        return FibreMap(dom, target.tensor(a, b), images)

    return w


# -- the injective case ---------------------------------------------------------------


def injective_coreflection_demo(C: FinCategory, mu: IndexMap, config: SamplingConfig = SamplingConfig()) -> CheckReport:
    """The coreflection of Set/U into Set/O along an injective mu and the induced structure on Set/U."""
    if not mu.injective:
        raise PreconditionError(
            "mu is not injective; use noninjective_comonad_demo (the comonad route) instead", (mu.name,)
        )
    adj = slice_adjunction(mu)
    set_u, set_o = adj.lower, adj.upper
    N, R = adj.left, adj.right
    s = build_slice_skew(C, category=set_o)
    u_src = ObjectSource.sampled(set_u, config, "U")
    o_src = ObjectSource.sampled(set_o, config, "O")
    report = CheckReport(f"coreflection along {mu.name} for {C.name}")
    report.merge(check_adjunction(adj, u_src, o_src), "adjunction:")
    report.expect("unit-invertible", report.info["adjunction:unit-invertible"], True, ())
    report.merge(check_skew_axioms(s, o_src), "slice:")

    def G(f):
        return N.mor(R.mor(f))

    # G(X (x) eps_Y) against the elementwise chain that drops the repeated U_j coordinate
    for x, y in draw([o_src, o_src], key="chain"):
        m = G(s.tensor_mor(set_o.identity(x), adj.counit(y)))
        images = []
        for ((e, c, (d, u)), u2) in m.dom.elements():
            report.expect("chain-U-singleton", u, u2, (x, y))
            images.append(((e, c, d), u2))
        chain = FibreMap(m.dom, m.cod, images)
        report.expect("chain", chain, m, (x, y))
        report.expect("G(X(x)eps)-invertible", set_o.is_iso(m), True, (x, y))

    report.merge(check_coreflection_condition(adj, s, u_src, o_src), "condition:")
    bar, phi = build_coreflected_structure(adj, s, u_src, o_src, check=False)
    report.merge(check_skew_axioms(bar, u_src), "coreflected:")
    report.merge(check_monoidal(phi, o_src), "R-monoidal:")
    for a, y in draw([u_src, o_src], key="phi-NA"):
        report.expect("phi(NA,Y)-invertible", set_u.is_iso(phi.phi(N.obj(a), y)), True, (a, y))
    report.info["phi-non-invertible"] = _phi_witness(phi, set_o, set_u, o_src)

    # (A (x)' B)_v ~ sum_u A_u x C(mu u, mu v) x B_v
    at = _object_index(C, mu)
    for a, b in draw([u_src, u_src], key="formula"):
        dom = bar.tensor(a, b)
        formula = FibredSet(
            set_u.base,
            [
                [(e, c, d) for u in set_u.base for e in a.fibre(u) for c in C.hom(at(u), at(v)) for d in b.fibre(v)]
                for v in set_u.base
            ],
        )
        bij = FibreMap(dom, formula, [(e, c, d) for ((e, c, d), _v) in dom.elements()])
        report.expect("formula-bijection", _is_fibred_bijection(set_u, bij), True, (a, b))
        sizes = tuple(
            sum(len(a.fibre(u)) * len(C.hom(at(u), at(v))) * len(b.fibre(v)) for u in set_u.base) for v in set_u.base
        )
        report.expect("formula-cardinality", dom.sizes(), sizes, (a, b))

    fi = full_image(mu, C)
    s_fi = build_slice_skew(fi, category=set_u)
    w = _full_image_witness(fi, set_u.base, bar, s_fi, lambda z, dom: (z[0][0], z[0][1], z[0][2], z[1]))
    w0 = FibreMap(bar.unit, s_fi.unit, [("*", v) for (_star, v) in bar.unit.elements()])
    report.merge(check_structure_iso(bar, s_fi, w, w0, u_src), "full-image:")
    report.info["structure"] = bar
    report.info["full-image-structure"] = s_fi
    report.info["sources"] = (u_src, o_src)
    return report


def _is_fibred_bijection(S: SliceCategory, m: FibreMap) -> bool:
    try:
        check_fibre_map(m)
    except StructuralError:
        return False
    return S.is_iso(m)


def _phi_witness(phi, set_o: SliceCategory, set_u: SliceCategory, o_src: ObjectSource):
    """A pair (X, Y) with phi_{X,Y} not invertible, from the samples or the all-singletons object."""
    full = FibredSet(set_o.base, [[("pt", j)] for j in set_o.base])
    candidates = [(x, y) for x, y in draw([o_src, o_src], key="phi-scan")] + [(full, full)]
    for x, y in candidates:
        if not set_u.is_iso(phi.phi(x, y)):
            return (x, y)
    return None


# -- the comonad route ----------------------------------------------------------------


def slice_comonad(adj: Adjunction, s: SkewMonoidalStructure) -> ActegoryComonad:
    """G = xi_! xi* on Set/O with gamma (x, c, (y, u)) |-> ((x, c, y), u)."""
    N, R = adj.left, adj.right
    set_o = adj.upper
    G = ProcFunctor(set_o, set_o, lambda x: N.obj(R.obj(x)), lambda f: N.mor(R.mor(f)), name="G")

    def gamma(x, y):
        dom = s.tensor(x, G.obj(y))
        return FibreMap(dom, G.obj(s.tensor(x, y)), [((e, c, d), u) for (e, c, (d, u)) in dom.elements()])

    def delta(y):
        return N.mor(adj.unit(R.obj(y)))

    return ActegoryComonad(tensor_action(s), G, gamma, delta, adj.counit, name="G")


class CoalgebraEquivalence:
    """Coalgebras of G = xi_! xi* against Set/U.

    to_slice keeps x over u when its coaction is (x, u); from_slice pushes forward
    along xi with coaction a |-> (a, u).  to_slice . from_slice is the identity.
    """

    def __init__(self, adj: Adjunction):
        self.adj = adj
        self.set_u = adj.lower

    def to_slice(self, c: Coalgebra) -> FibredSet:
        return FibredSet(
            self.set_u.base, [[x for x in c.carrier.elements() if c.coaction(x) == (x, u)] for u in self.set_u.base]
        )

    def to_slice_mor(self, h: CoalgebraMorphism) -> FibreMap:
        d, c = self.to_slice(h.dom), self.to_slice(h.cod)
        return FibreMap(d, c, [h.map(x) for x in d.elements()])

    def from_slice(self, a: FibredSet) -> Coalgebra:
        N = self.adj.left
        return Coalgebra(N.obj(a), N.mor(self.adj.unit(a)))

    def from_slice_mor(self, f: FibreMap) -> CoalgebraMorphism:
        return CoalgebraMorphism(self.from_slice(f.dom), self.from_slice(f.cod), self.adj.left.mor(f))

    def theta(self, c: Coalgebra) -> CoalgebraMorphism:
        """from_slice(to_slice(c)) -> c, the identity on elements."""
        d = self.from_slice(self.to_slice(c))
        return CoalgebraMorphism(d, c, FibreMap(d.carrier, c.carrier, d.carrier.elements()))

    def theta_inverse(self, c: Coalgebra) -> CoalgebraMorphism:
        d = self.from_slice(self.to_slice(c))
        return CoalgebraMorphism(c, d, FibreMap(c.carrier, d.carrier, c.carrier.elements()))

    def zeta(self, a: FibredSet) -> FibreMap:
        d = self.to_slice(self.from_slice(a))
        return FibreMap(d, a, d.elements())

    def zeta_inverse(self, a: FibredSet) -> FibreMap:
        d = self.to_slice(self.from_slice(a))
        return FibreMap(a, d, a.elements())

    def sampler(self, rng, bound: int) -> Coalgebra:
        return self.from_slice(self.set_u.sample_object(rng, bound))

    def morphism_sampler(self, rng, a: Coalgebra, b: Coalgebra):
        f = self.set_u.sample_morphism(rng, self.to_slice(a), self.to_slice(b))
        if f is None:
            return None
        back = dict(zip(f.dom.elements(), f.images))
        return CoalgebraMorphism(a, b, FibreMap(a.carrier, b.carrier, [back[x] for x in a.carrier.elements()]))


def transport_structure(
    s: SkewMonoidalStructure,
    target,
    to: Callable,
    to_mor: Callable,
    back: Callable,
    back_mor: Callable,
    theta: Callable,
    theta_inverse: Callable,
    zeta: Callable,
    zeta_inverse: Callable,
    name: str | None = None,
) -> SkewMonoidalStructure:
    """Move a skew structure across an equivalence ``to``/``back``.

    ``theta: back(to(e)) -> e`` and ``zeta: to(back(a)) -> a`` are the comparison isomorphisms;
    ``a (x) b = to(back a (x) back b)``.
    """
    E = s.category
    t, tm = s.tensor, s.tensor_mor

    def tensor(a, b):
        return to(t(back(a), back(b)))

    def alpha(a, b, c):
        pa, pb, pc = back(a), back(b), back(c)
        first = to_mor(tm(theta(t(pa, pb)), E.identity(pc)))
        last = to_mor(tm(E.identity(pa), theta_inverse(t(pb, pc))))
        return target.comp(last, to_mor(s.alpha(pa, pb, pc)), first)

    def lam(a):
        pa = back(a)
        return target.comp(zeta(a), to_mor(s.lam(pa)), to_mor(tm(theta(s.unit), E.identity(pa))))

    def rho(a):
        pa = back(a)
        return target.comp(to_mor(tm(E.identity(pa), theta_inverse(s.unit))), to_mor(s.rho(pa)), zeta_inverse(a))

    return SkewMonoidalStructure(
        target,
        tensor,
        lambda f, g: to_mor(tm(back_mor(f), back_mor(g))),
        to(s.unit),
        alpha,
        lam,
        rho,
        name=name or f"transported({s.name})",
    )


def noninjective_comonad_demo(C: FinCategory, xi: IndexMap, config: SamplingConfig = SamplingConfig()) -> CheckReport:
    """The comonad G = xi_! xi* on Set/O, its lifted skew structure, and the comparison on Set/U."""
    adj = slice_adjunction(xi)
    set_u, set_o = adj.lower, adj.upper
    s = build_slice_skew(C, category=set_o)
    o_src = ObjectSource.sampled(set_o, config, "O")
    u_src = ObjectSource.sampled(set_u, config, "U")
    m = slice_comonad(adj, s)
    report = CheckReport(f"comonad route along {xi.name} for {C.name}")

    eq = CoalgebraEquivalence(adj)
    e_pool = [eq.from_slice(a) for a in u_src.pool]
    e_src = ObjectSource(e_pool, exhaustive=False, count=config.samples, seed=config.seed)
    lr = lift_comonad_structure(s, m, o_src, eq.sampler, eq.morphism_sampler, e_src)
    report.merge(lr.report)
    for a in u_src.pool:
        report.expect("roundtrip-slice", eq.to_slice(eq.from_slice(a)), a, (a,))
    for c in e_src.pool:
        lr.em.check_typed(eq.theta(c), eq.from_slice(eq.to_slice(c)), c, "theta")
        report.expect("roundtrip-coalgebra-iso", lr.em.is_iso(eq.theta(c)), True, (c,))
    # coalgebras outside the pool: lifted tensors of pool objects
    for c, d in draw([e_src, e_src], key="lifted-tensor-coalg"):
        z = lr.structure.tensor(c, d)
        report.expect("roundtrip-coalgebra-iso", lr.em.is_iso(eq.theta(z)), True, (c, d))

    tr = transport_structure(
        lr.structure,
        set_u,
        eq.to_slice,
        eq.to_slice_mor,
        eq.from_slice,
        eq.from_slice_mor,
        eq.theta,
        eq.theta_inverse,
        eq.zeta,
        eq.zeta_inverse,
        name=f"coalgebras({xi.name})",
    )
    report.merge(check_skew_axioms(tr, u_src, naturality=True), "transported:")
    report.expect("unit-terminal", tr.unit.sizes(), tuple(1 for _ in set_u.base), (tr.unit,))
    for a in u_src.pool:
        report.expect("unit-terminal", set_u.hom_size(a, tr.unit), 1, (a,))

    at = _object_index(C, xi)
    for a, b in draw([u_src, u_src], key="formula"):
        sizes = tuple(
            sum(len(a.fibre(u)) * len(C.hom(at(u), at(v))) * len(b.fibre(v)) for u in set_u.base) for v in set_u.base
        )
        report.expect("formula-cardinality", tr.tensor(a, b).sizes(), sizes, (a, b))

    fi = full_image(xi, C)
    s_fi = build_slice_skew(fi, category=set_u)
    report.expect("full-image-fully-faithful", is_fully_faithful(full_image_functor(xi, C, fi)), True, ())

    def strip(z, dom):
        e, c, d = z
        return e, c, d, dom.fibre_of(z)

    w = _full_image_witness(fi, set_u.base, tr, s_fi, strip)
    w0 = FibreMap(tr.unit, s_fi.unit, [("*", u) for (_star, u) in tr.unit.elements()])
    report.merge(check_structure_iso(tr, s_fi, w, w0, u_src), "full-image:")
    report.merge(_coproduct_check(tr, set_u, u_src), "colimits:")
    report.info["structure"] = tr
    report.info["full-image-structure"] = s_fi
    report.info["sources"] = (u_src, o_src)
    return report


def _coproduct_check(s: SkewMonoidalStructure, S: SliceCategory, src: ObjectSource) -> CheckReport:
    """The canonical maps (A (x) B) + (A' (x) B) -> (A + A') (x) B and likewise in B are invertible."""
    report = CheckReport("tensor preserves binary coproducts")
    for a, a2, b in draw([src, src, src], key="coproduct"):
        plus, i1, i2 = coproduct(a, a2)
        left, _, _ = coproduct(s.tensor(a, b), s.tensor(a2, b))
        f1, f2 = s.tensor_mor(i1, S.identity(b)), s.tensor_mor(i2, S.identity(b))
        m = FibreMap(left, s.tensor(plus, b), [f1(z) if tag == "l" else f2(z) for tag, z in left.elements()])
        report.expect("first-variable", S.is_iso(m), True, (a, a2, b))
        plus, j1, j2 = coproduct(a2, b)
        right, _, _ = coproduct(s.tensor(a, a2), s.tensor(a, b))
        g1, g2 = s.tensor_mor(S.identity(a), j1), s.tensor_mor(S.identity(a), j2)
        m = FibreMap(right, s.tensor(a, plus), [g1(z) if tag == "l" else g2(z) for tag, z in right.elements()])
        report.expect("second-variable", S.is_iso(m), True, (a, a2, b))
    return report


def idempotent_slice_comparison(C: FinCategory, mu: IndexMap, config: SamplingConfig = SamplingConfig()) -> CheckReport:
    """For injective mu, compare the coreflection and lifted-warping structures on coalgebras of G."""
    if not mu.injective:
        raise PreconditionError("the comonad is idempotent only for injective mu", (mu.name,))
    adj = slice_adjunction(mu)
    set_u, set_o = adj.lower, adj.upper
    s = build_slice_skew(C, category=set_o)
    o_src = ObjectSource.sampled(set_o, config, "O")
    u_src = ObjectSource.sampled(set_u, config, "U")
    m = slice_comonad(adj, s)
    eq = CoalgebraEquivalence(adj)
    e_src = ObjectSource([eq.from_slice(a) for a in u_src.pool], exhaustive=False, count=config.samples, seed=config.seed)
    return idempotent_comparison(m, s, o_src, eq.sampler, eq.morphism_sampler, e_src)
