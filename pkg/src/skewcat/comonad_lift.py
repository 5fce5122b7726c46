"""Comonads on skew actegories, their coalgebra categories, and lifted warpings.

A comonad ``(G, gamma, delta, eps)`` on a skew C-actegory A carries
``gamma_{X,A}: X * GA -> G(X * A)``.  Coalgebras ``(A, a: A -> GA)`` then form
a skew C-actegory with ``X * (A, a) = (X * A, gamma . (X * a))`` and a warping
on A lifts to the coalgebras when the components ``gamma_{TA,K}`` and
``gamma_{TA,TB*K}`` are invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .fincat import Adjunction, Category, ProcFunctor, identity_functor
from .report import CheckReport, ObjectSource, PreconditionError, StructuralError, draw, sample_morphisms
from .reflection import build_coreflected_structure
from .skewmon import (
    OpmonoidalStructure,
    SkewMonoidalStructure,
    _memo,
    check_opmonoidal,
    check_skew_axioms,
    check_structure_iso,
)
from .warping import SkewAction, SkewWarping, check_action, check_warping, identity_warping, warping_to_skew

COMONAD_AXIOMS = ("counit-left", "counit-right", "coassociativity", "am1", "am2", "am3-delta", "am3-eps")


class ActegoryComonad:
    """A comonad in the 2-category of skew actegories over ``action.acting``."""

    def __init__(self, action: SkewAction, G, gamma: Callable, delta: Callable, eps: Callable, name: str = "G"):
        self.action = action
        self.G = G
        self.gamma = _memo(gamma)
        self.delta = _memo(delta)
        self.eps = _memo(eps)
        self.name = name
        self._inverse = {}

    @property
    def carrier(self) -> Category:
        return self.action.carrier

    def gamma_inverse(self, x, a):
        key = (x, a)
        if key not in self._inverse:
            self._inverse[key] = self.carrier.inverse(self.gamma(x, a))
        return self._inverse[key]


def identity_comonad(action: SkewAction) -> ActegoryComonad:
    A = action.carrier
    return ActegoryComonad(
        action,
        identity_functor(A),
        lambda x, a: A.identity(action.star(x, a)),
        A.identity,
        A.identity,
        name="1",
    )


def check_actegory_comonad(
    m: ActegoryComonad,
    c_source: ObjectSource | None = None,
    a_source: ObjectSource | None = None,
    naturality: bool = True,
) -> CheckReport:
    act = m.action
    s, A = act.acting, act.carrier
    C = s.category
    c_source = c_source or ObjectSource.for_category(C)
    a_source = a_source or ObjectSource.for_category(A)
    G, gm, dl, ep = m.G, m.gamma, m.delta, m.eps
    st, stm, one = act.star, act.star_mor, A.identity
    for a in a_source.pool:
        ga = G.obj(a)
        A.check_typed(dl(a), ga, G.obj(ga), "delta component")
        A.check_typed(ep(a), ga, a, "epsilon component")
    for x, a in draw([c_source, a_source], key="gamma-typing"):
        A.check_typed(gm(x, a), st(x, G.obj(a)), G.obj(st(x, a)), "gamma component")
    report = CheckReport(f"actegory comonad {m.name}")
    for a in a_source.pool:
        ga = G.obj(a)
        report.expect("counit-left", A.compose(ep(ga), dl(a)), one(ga), (a,))
        report.expect("counit-right", A.compose(G.mor(ep(a)), dl(a)), one(ga), (a,))
        report.expect("coassociativity", A.compose(dl(ga), dl(a)), A.compose(G.mor(dl(a)), dl(a)), (a,))
    for x, y, a in draw([c_source, c_source, a_source], key="am1"):
        lhs = A.compose(G.mor(act.act_alpha(x, y, a)), gm(s.tensor(x, y), a))
        rhs = A.comp(gm(x, st(y, a)), stm(s.one(x), gm(y, a)), act.act_alpha(x, y, G.obj(a)))
        report.expect("am1", lhs, rhs, (x, y, a))
    for (a,) in draw([a_source], key="am2"):
        report.expect("am2", A.compose(G.mor(act.act_lambda(a)), gm(s.unit, a)), act.act_lambda(G.obj(a)), (a,))
    strong, idempotent = True, True
    for x, a in draw([c_source, a_source], key="am3"):
        g = gm(x, a)
        rhs = A.comp(G.mor(g), gm(x, G.obj(a)), stm(s.one(x), dl(a)))
        report.expect("am3-delta", A.compose(dl(st(x, a)), g), rhs, (x, a))
        report.expect("am3-eps", A.compose(ep(st(x, a)), g), stm(s.one(x), ep(a)), (x, a))
        strong = strong and A.is_iso(g)
    for a in a_source.pool:
        idempotent = idempotent and A.is_iso(dl(a))
    if naturality:
        for n, (f,) in enumerate(sample_morphisms(A, a_source, 1, key="nat-comonad")):
            a, b = A.src(f), A.tgt(f)
            report.expect("naturality-delta", A.compose(dl(b), G.mor(f)), A.compose(G.mor(G.mor(f)), dl(a)), (f,))
            report.expect("naturality-eps", A.compose(ep(b), G.mor(f)), A.compose(f, ep(a)), (f,))
        c_mors = sample_morphisms(C, c_source, 1, key="nat-gamma-c")
        a_mors = sample_morphisms(A, a_source, 1, key="nat-gamma-a")
        for (u,), (f,) in zip(c_mors, a_mors):
            x, x2, a, a2 = C.src(u), C.tgt(u), A.src(f), A.tgt(f)
            report.expect(
                "naturality-gamma",
                A.compose(G.mor(stm(u, f)), gm(x, a)),
                A.compose(gm(x2, a2), stm(u, G.mor(f))),
                (u, f),
            )
    report.info["strong"] = strong
    report.info["idempotent"] = idempotent
    return report


# -- coalgebras -------------------------------------------------------------------


@dataclass(frozen=True)
class Coalgebra:
    carrier: Any
    coaction: Any


@dataclass(frozen=True)
class CoalgebraMorphism:
    dom: Coalgebra
    cod: Coalgebra
    map: Any


class EMCategory(Category):
    """Eilenberg-Moore coalgebras of a comonad.

    Finite when the carrier is finite (all coalgebras are enumerated); otherwise
    objects are drawn from ``object_sampler`` (default: cofree coalgebras).
    """

    def __init__(
        self,
        m: ActegoryComonad,
        object_sampler: Callable | None = None,
        morphism_sampler: Callable | None = None,
        name: str | None = None,
    ):
        self.comonad = m
        self.base = m.carrier
        self.is_finite = self.base.is_finite
        self.name = name or f"{self.base.name}^{m.name}"
        self._object_sampler = object_sampler
        self._morphism_sampler = morphism_sampler
        self._objects = None

    def coalgebra(self, a, coaction) -> Coalgebra:
        """A validated coalgebra."""
        A, G, m = self.base, self.comonad.G, self.comonad
        A.check_typed(coaction, a, G.obj(a), "coaction")
        if A.compose(m.eps(a), coaction) != A.identity(a):
            raise StructuralError("coaction fails the counit law", (a, coaction))
        if A.compose(G.mor(coaction), coaction) != A.compose(m.delta(a), coaction):
            raise StructuralError("coaction fails coassociativity", (a, coaction))
        return Coalgebra(a, coaction)

    def cofree(self, a) -> Coalgebra:
        G = self.comonad.G
        return Coalgebra(G.obj(a), self.comonad.delta(a))

    def is_morphism(self, x: Coalgebra, y: Coalgebra, f) -> bool:
        A, G = self.base, self.comonad.G
        return A.compose(G.mor(f), x.coaction) == A.compose(y.coaction, f)

    def morphism(self, x: Coalgebra, y: Coalgebra, f) -> CoalgebraMorphism:
        if not self.is_morphism(x, y, f):
            raise StructuralError("map does not preserve coactions", (x, y, f))
        return CoalgebraMorphism(x, y, f)

    def src(self, m: CoalgebraMorphism) -> Coalgebra:
        return m.dom

    def tgt(self, m: CoalgebraMorphism) -> Coalgebra:
        return m.cod

    def compose(self, g: CoalgebraMorphism, f: CoalgebraMorphism) -> CoalgebraMorphism:
        if f.cod != g.dom:
            raise StructuralError("coalgebra morphisms are not composable", (g, f))
        return CoalgebraMorphism(f.dom, g.cod, self.base.compose(g.map, f.map))

    def identity(self, a: Coalgebra) -> CoalgebraMorphism:
        return CoalgebraMorphism(a, a, self.base.identity(a.carrier))

    def inverse(self, m: CoalgebraMorphism) -> CoalgebraMorphism | None:
        i = self.base.inverse(m.map)
        return None if i is None else CoalgebraMorphism(m.cod, m.dom, i)

    def hom(self, a: Coalgebra, b: Coalgebra) -> list:
        return [CoalgebraMorphism(a, b, f) for f in self.base.hom(a.carrier, b.carrier) if self.is_morphism(a, b, f)]

    def objects(self) -> list:
        if not self.is_finite:
            raise PreconditionError("coalgebras over a big carrier cannot be enumerated")
        if self._objects is None:
            A, G = self.base, self.comonad.G
            out = []
            for a in A.objects():
                for c in A.hom(a, G.obj(a)):
                    try:
                        out.append(self.coalgebra(a, c))
                    except StructuralError:
                        pass
            self._objects = out
        return self._objects

    def morphisms(self) -> list:
        return [m for a in self.objects() for b in self.objects() for m in self.hom(a, b)]

    def sample_object(self, rng, bound: int) -> Coalgebra:
        if self._object_sampler is not None:
            return self._object_sampler(rng, bound)
        if self.is_finite:
            return rng.choice(self.objects())
        return self.cofree(self.base.sample_object(rng, bound))

    def sample_morphism(self, rng, a: Coalgebra, b: Coalgebra):
        if self._morphism_sampler is not None:
            return self._morphism_sampler(rng, a, b)
        if self.is_finite:
            hs = self.hom(a, b)
            return rng.choice(hs) if hs else None
        for _ in range(16):
            f = self.base.sample_morphism(rng, a.carrier, b.carrier)
            if f is not None and self.is_morphism(a, b, f):
                return CoalgebraMorphism(a, b, f)
        return None

    def check_typed(self, m, a, b, what: str = "morphism") -> None:
        if not isinstance(m, CoalgebraMorphism):
            raise StructuralError(f"{what} is not a coalgebra morphism", (m,))
        super().check_typed(m, a, b, what)
        if not self.is_morphism(m.dom, m.cod, m.map):
            raise StructuralError(f"{what} does not preserve coactions", (m,))

    def describe_obj(self, a: Coalgebra) -> Any:
        return {"carrier": self.base.describe_obj(a.carrier), "coaction": self.base.describe_mor(a.coaction)}

    def describe_mor(self, m: CoalgebraMorphism) -> Any:
        return {"map": self.base.describe_mor(m.map)}


def em_category(
    m: ActegoryComonad, object_sampler: Callable | None = None, morphism_sampler: Callable | None = None
) -> tuple[EMCategory, SkewAction, ProcFunctor]:
    """Coalgebras with the lifted action and the forgetful functor U."""
    em = EMCategory(m, object_sampler, morphism_sampler)
    act = m.action
    A = act.carrier

    def star(x, c: Coalgebra) -> Coalgebra:
        return Coalgebra(act.star(x, c.carrier), A.compose(m.gamma(x, c.carrier), act.star_mor(act.acting.one(x), c.coaction)))

    def star_mor(f, h: CoalgebraMorphism) -> CoalgebraMorphism:
        C = act.acting.category
        return CoalgebraMorphism(star(C.src(f), h.dom), star(C.tgt(f), h.cod), act.star_mor(f, h.map))

    def alpha(x, y, c: Coalgebra) -> CoalgebraMorphism:
        t = act.acting.tensor
        return CoalgebraMorphism(star(t(x, y), c), star(x, star(y, c)), act.act_alpha(x, y, c.carrier))

    def lam(c: Coalgebra) -> CoalgebraMorphism:
        return CoalgebraMorphism(star(act.acting.unit, c), c, act.act_lambda(c.carrier))

    lifted = SkewAction(act.acting, em, star, star_mor, alpha, lam, name=f"lifted {act.name}")
    U = ProcFunctor(em, A, lambda c: c.carrier, lambda h: h.map, name="U")
    return em, lifted, U


def check_lifted_coalgebras(em: EMCategory, lifted: SkewAction, c_source: ObjectSource, e_source: ObjectSource) -> CheckReport:
    """Every sampled X * (A, a) satisfies the coalgebra laws."""
    report = CheckReport("lifted coalgebras")
    for x, c in draw([c_source, e_source], key="lift-coalg"):
        d = lifted.star(x, c)
        try:
            em.coalgebra(d.carrier, d.coaction)
            ok = True
        except StructuralError:
            ok = False
        report.expect("lifted-coalgebra", ok, True, (x, c))
    return report


# -- lifted warpings ---------------------------------------------------------------


def lift_warping(
    w: SkewWarping,
    m: ActegoryComonad,
    em: EMCategory,
    lifted: SkewAction,
    e_source: ObjectSource | None = None,
) -> SkewWarping:
    """``(T U, (GK, delta_K), v, v0 . T eps_K, k')`` with ``k'_(A,a) = gamma^-1 . G k_A . a``."""
    act = w.action
    A = act.carrier
    T, K = w.T, w.K
    e_source = e_source or ObjectSource.for_category(em)
    for a, b in draw([e_source, e_source], key="gamma-precondition"):
        ta, tb = T.obj(a.carrier), T.obj(b.carrier)
        for x, y in ((ta, K), (ta, act.star(tb, K))):
            if m.gamma_inverse(x, y) is None:
                raise PreconditionError(
                    f"gamma component at ({act.acting.category.describe_obj(x)}, {A.describe_obj(y)}) is not invertible",
                    (x, y),
                )
    TU = ProcFunctor(em, T.cod, lambda c: T.obj(c.carrier), lambda h: T.mor(h.map), name=f"{T.name}U")
    K2 = em.cofree(K)
    v0 = act.acting.category.compose(w.v0, T.mor(m.eps(K)))

    def v(a: Coalgebra, b: Coalgebra):
        return w.v(a.carrier, b.carrier)

    def k(c: Coalgebra) -> CoalgebraMorphism:
        a = c.carrier
        ta = T.obj(a)
        inv = m.gamma_inverse(ta, K)
        if inv is None:
            raise PreconditionError("gamma_{TA,K} is not invertible", (ta, K))
        return CoalgebraMorphism(c, lifted.star(ta, K2), A.comp(inv, m.G.mor(w.k(a)), c.coaction))

    return SkewWarping(lifted, TU, K2, v, v0, k, name=f"lifted {w.name}")


def check_forgetful_strict(
    lifted_structure: SkewMonoidalStructure,
    base_structure: SkewMonoidalStructure,
    U,
    e_source: ObjectSource,
) -> CheckReport:
    """U applied to the lifted tensor equals the base tensor applied to U x U, on objects and morphisms."""
    report = CheckReport("forgetful functor preserves tensors")
    em = lifted_structure.category
    for a, b in draw([e_source, e_source], key="u-strict"):
        report.expect(
            "U-tensor-objects", U.obj(lifted_structure.tensor(a, b)), base_structure.tensor(U.obj(a), U.obj(b)), (a, b)
        )
    for f, g in sample_morphisms(em, e_source, 2, key="u-strict-mor"):
        report.expect(
            "U-tensor-morphisms",
            U.mor(lifted_structure.tensor_mor(f, g)),
            base_structure.tensor_mor(U.mor(f), U.mor(g)),
            (f, g),
        )
    return report


def forgetful_opmonoidal(
    lifted_structure: SkewMonoidalStructure, base_structure: SkewMonoidalStructure, U, m: ActegoryComonad
) -> OpmonoidalStructure:
    """U with identity tensor comparisons and unit comparison eps_I."""
    A = base_structure.category
    return OpmonoidalStructure(
        U,
        lifted_structure,
        base_structure,
        lambda a, b: A.identity(U.obj(lifted_structure.tensor(a, b))),
        m.eps(base_structure.unit),
        name="U",
    )


@dataclass
class LiftResult:
    em: EMCategory
    lifted_action: SkewAction
    U: ProcFunctor
    warping: SkewWarping
    structure: SkewMonoidalStructure
    report: CheckReport


def lift_comonad_structure(
    s: SkewMonoidalStructure,
    m: ActegoryComonad,
    c_source: ObjectSource,
    e_sampler: Callable | None = None,
    e_mor_sampler: Callable | None = None,
    e_source: ObjectSource | None = None,
    config=None,
) -> LiftResult:
    """The skew structure on coalgebras of a comonad on C acting on itself, with every check on the way."""
    report = CheckReport(f"lift along {m.name}")
    report.merge(check_actegory_comonad(m, c_source, c_source), "comonad:")
    em, lifted, U = em_category(m, e_sampler, e_mor_sampler)
    if e_source is None:
        e_source = ObjectSource.for_category(em, config) if config is not None else ObjectSource.for_category(em)
    report.merge(check_action(lifted, c_source, e_source), "lifted-action:")
    report.merge(check_lifted_coalgebras(em, lifted, c_source, e_source), "lifted-action:")
    w = lift_warping(identity_warping(s), m, em, lifted, e_source)
    report.tally("gamma-precondition")
    wrep = check_warping(w, e_source, naturality=True)
    report.merge(wrep, "lifted-warping:")
    structure, _ = warping_to_skew(w, check=False)
    report.merge(check_skew_axioms(structure, e_source), "lifted-structure:")
    report.merge(check_forgetful_strict(structure, s, U, e_source), "U:")
    report.merge(check_opmonoidal(forgetful_opmonoidal(structure, s, U, m), e_source), "U-opmonoidal:")
    return LiftResult(em, lifted, U, w, structure, report)


# -- idempotent comonads -------------------------------------------------------------


def cofree_coreflection(em: EMCategory, U) -> Adjunction:
    """U -| cofree, with unit the coaction and counit eps."""
    m = em.comonad
    A = em.base
    G = m.G
    cofree = ProcFunctor(A, em, em.cofree, lambda f: CoalgebraMorphism(em.cofree(A.src(f)), em.cofree(A.tgt(f)), G.mor(f)), name="cofree")
    return Adjunction(U, cofree, lambda c: CoalgebraMorphism(c, em.cofree(c.carrier), c.coaction), m.eps, name="U -| cofree")


def idempotent_comparison(
    m: ActegoryComonad,
    s: SkewMonoidalStructure,
    c_source: ObjectSource | None = None,
    e_sampler: Callable | None = None,
    e_mor_sampler: Callable | None = None,
    e_source: ObjectSource | None = None,
) -> CheckReport:
    """Compare the coreflection route and the lifted-warping route for an idempotent strong comonad.

    The link diagram is checked as ``G(1 (x) eps_Y) = G eps . G gamma`` and ``delta . G eps = 1``,
    so that ``delta . G(1 (x) eps_Y) = G gamma_{X,Y}``.
    """
    C = s.category
    G = m.G
    c_source = c_source or ObjectSource.for_category(C)
    report = CheckReport(f"idempotent comparison for {m.name}")
    for (a,) in draw([c_source], key="idem"):
        if not C.is_iso(m.delta(a)):
            raise PreconditionError("comonad is not idempotent", (a,))
    for x, y in draw([c_source, c_source], key="strong"):
        if not C.is_iso(m.gamma(x, y)):
            raise PreconditionError("comonad is not strong", (x, y))
    for x, y in draw([c_source, c_source], key="link"):
        xy = s.tensor(x, y)
        g1 = G.mor(s.tensor_mor(s.one(x), m.eps(y)))
        report.expect("link-G-eps", g1, C.compose(G.mor(m.eps(xy)), G.mor(m.gamma(x, y))), (x, y))
        report.expect("link-delta", C.compose(m.delta(xy), G.mor(m.eps(xy))), C.identity(G.obj(G.obj(xy))), (x, y))
        report.expect("link", C.compose(m.delta(xy), g1), G.mor(m.gamma(x, y)), (x, y))

    em, lifted, U = em_category(m, e_sampler, e_mor_sampler)
    e_source = e_source or ObjectSource.for_category(em)
    w = lift_warping(identity_warping(s), m, em, lifted, e_source)
    lift, _ = warping_to_skew(w, check=False)
    adj = cofree_coreflection(em, U)
    coref, _ = build_coreflected_structure(adj, s, e_source, c_source)

    def witness(a: Coalgebra, b: Coalgebra):
        f = C.compose(m.gamma(a.carrier, b.carrier), s.tensor_mor(s.one(a.carrier), b.coaction))
        return CoalgebraMorphism(lift.tensor(a, b), coref.tensor(a, b), f)

    w0 = em.identity(lift.unit)
    report.expect("units-equal", lift.unit, coref.unit, ())
    report.merge(check_structure_iso(lift, coref, witness, w0, e_source), "lift~coreflection:")
    report.info["lift"] = lift
    report.info["coreflection"] = coref
    return report
