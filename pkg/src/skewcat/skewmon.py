"""Left skew monoidal structures, (op)monoidal functors, internal homs and the reflective lemma.

Constraint directions are the left-skew ones::

    alpha_{A,B,C} : (A (x) B) (x) C -> A (x) (B (x) C)
    lambda_A      : I (x) A -> A
    rho_A         : A -> A (x) I

and the five coherence axioms checked are

* pentagon:          alpha_{A,B,C(x)D} . alpha_{A(x)B,C,D}
                     = (1 (x) alpha_{B,C,D}) . alpha_{A,B(x)C,D} . (alpha_{A,B,C} (x) 1)
* left-unit-assoc:   lambda_{B(x)C} . alpha_{I,B,C} = lambda_B (x) 1_C
* unit-middle:       (1_A (x) lambda_C) . alpha_{A,I,C} . (rho_A (x) 1_C) = 1
* right-unit-assoc:  alpha_{A,B,I} . rho_{A(x)B} = 1_A (x) rho_B
* unit-unit:         lambda_I . rho_I = 1_I
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable

from .fincat import Adjunction, Category, FinCategory, Functor, identity_functor, is_fully_faithful
from .report import CheckReport, ObjectSource, PreconditionError, sample_morphisms

SKEW_AXIOMS = ("pentagon", "left-unit-assoc", "unit-middle", "right-unit-assoc", "unit-unit")
OPMONOIDAL_AXIOMS = ("opmonoidal-assoc", "opmonoidal-left-unit", "opmonoidal-right-unit")
MONOIDAL_AXIOMS = ("monoidal-assoc", "monoidal-left-unit", "monoidal-right-unit")


def _memo(fn: Callable) -> Callable:
    cache: dict = {}

    def wrapped(*args):
        try:
            return cache[args]
        except KeyError:
            value = cache[args] = fn(*args)
            return value
        except TypeError:
            return fn(*args)

    wrapped.cache = cache
    return wrapped


class SkewMonoidalStructure:
    """Tensor, unit and constraint families on a category, all given as procedures.

    Components are memoized; morphism values must be comparable with ``==``.
    """

    def __init__(
        self,
        category: Category,
        tensor: Callable[[Any, Any], Any],
        tensor_mor: Callable[[Any, Any], Any],
        unit: Any,
        alpha: Callable[[Any, Any, Any], Any],
        lam: Callable[[Any], Any],
        rho: Callable[[Any], Any],
        name: str = "skew",
    ):
        self.category = category
        self.tensor = _memo(tensor)
        self.tensor_mor = _memo(tensor_mor)
        self.unit = unit
        self.alpha = _memo(alpha)
        self.lam = _memo(lam)
        self.rho = _memo(rho)
        self.name = name

    def __repr__(self) -> str:
        return f"SkewMonoidalStructure({self.name} on {self.category.name})"

    def one(self, a):
        return self.category.identity(a)


def _typed_components(s: SkewMonoidalStructure, source: ObjectSource) -> None:
    c, t, i = s.category, s.tensor, s.unit
    for a in source.pool:
        c.check_typed(s.lam(a), t(i, a), a, f"lambda_{c.describe_obj(a)}")
        c.check_typed(s.rho(a), a, t(a, i), f"rho_{c.describe_obj(a)}")
    for a, b, d in source.tuples(3, "typing"):
        c.check_typed(s.alpha(a, b, d), t(t(a, b), d), t(a, t(b, d)), "alpha component")


def check_skew_axioms(
    s: SkewMonoidalStructure, source: ObjectSource | None = None, naturality: bool = False
) -> CheckReport:
    """The five coherence axioms on every tuple (finite carriers) or on the sampled tuples."""
    c = s.category
    source = source or ObjectSource.for_category(c)
    _typed_components(s, source)
    t, tm, one, I = s.tensor, s.tensor_mor, s.one, s.unit
    a_, l_, r_ = s.alpha, s.lam, s.rho
    report = CheckReport(f"skew axioms of {s.name}")
    for A, B, C, D in source.tuples(4, "pentagon"):
        lhs = c.compose(a_(A, B, t(C, D)), a_(t(A, B), C, D))
        rhs = c.comp(tm(one(A), a_(B, C, D)), a_(A, t(B, C), D), tm(a_(A, B, C), one(D)))
        report.expect("pentagon", lhs, rhs, (A, B, C, D))
    for B, C in source.tuples(2, "lua"):
        report.expect("left-unit-assoc", c.compose(l_(t(B, C)), a_(I, B, C)), tm(l_(B), one(C)), (B, C))
    for A, C in source.tuples(2, "um"):
        lhs = c.comp(tm(one(A), l_(C)), a_(A, I, C), tm(r_(A), one(C)))
        report.expect("unit-middle", lhs, one(t(A, C)), (A, C))
    for A, B in source.tuples(2, "rua"):
        report.expect("right-unit-assoc", c.compose(a_(A, B, I), r_(t(A, B))), tm(one(A), r_(B)), (A, B))
    report.expect("unit-unit", c.compose(l_(I), r_(I)), one(I), (I,))
    if naturality:
        report.merge(check_structure_naturality(s, source))
    return report


def check_structure_naturality(s: SkewMonoidalStructure, source: ObjectSource | None = None) -> CheckReport:
    """Functoriality of the tensor and naturality of alpha, lambda, rho on (sampled) morphisms."""
    c = s.category
    source = source or ObjectSource.for_category(c)
    t, tm, one, I = s.tensor, s.tensor_mor, s.one, s.unit
    report = CheckReport(f"naturality of {s.name}")
    for a in source.pool:
        for b in source.pool[:8]:
            report.expect("tensor-identity", tm(one(a), one(b)), one(t(a, b)), (a, b))
    pairs = sample_morphisms(c, source, 2, key="interchange")
    for n, (f, g) in enumerate(pairs):
        report.tally("tensor-interchange")
        f2s = _random_after(c, source, f, f"ia{n}")
        g2s = _random_after(c, source, g, f"ib{n}")
        if f2s is None or g2s is None:
            continue
        lhs = c.compose(tm(f2s, g2s), tm(f, g))
        rhs = tm(c.compose(f2s, f), c.compose(g2s, g))
        if lhs != rhs:
            report.fail("tensor-interchange", (f, g, f2s, g2s))
    for f, g, h in sample_morphisms(c, source, 3, key="nat-alpha"):
        A, B, C = c.src(f), c.src(g), c.src(h)
        A2, B2, C2 = c.tgt(f), c.tgt(g), c.tgt(h)
        report.expect(
            "naturality-alpha",
            c.compose(s.alpha(A2, B2, C2), tm(tm(f, g), h)),
            c.compose(tm(f, tm(g, h)), s.alpha(A, B, C)),
            (f, g, h),
        )
    for (f,) in sample_morphisms(c, source, 1, key="nat-unit"):
        A, A2 = c.src(f), c.tgt(f)
        report.expect("naturality-lambda", c.compose(f, s.lam(A)), c.compose(s.lam(A2), tm(one(I), f)), (f,))
        report.expect("naturality-rho", c.compose(tm(f, one(I)), s.rho(A)), c.compose(s.rho(A2), f), (f,))
    return report


def _random_after(c: Category, source: ObjectSource, f, key: str):
    """A morphism composable after f (enumerated for finite carriers, sampled otherwise)."""
    b = c.tgt(f)
    rng = source.rng(f"after:{key}")
    if c.is_finite:
        outs = [m for x in c.objects() for m in c.hom(b, x)]
        return rng.choice(outs) if outs else None
    for _ in range(4):
        m = c.sample_morphism(rng, b, rng.choice(source.pool))
        if m is not None:
            return m
    return c.identity(b)


# -- (op)monoidal functors -----------------------------------------------------


@dataclass
class OpmonoidalStructure:
    """psi_{X,Y}: F(X (x) Y) -> FX (x)' FY and psi0: FI -> I' for F from ``source`` to ``target``."""

    functor: Any
    source: SkewMonoidalStructure
    target: SkewMonoidalStructure
    psi: Callable[[Any, Any], Any]
    psi0: Any
    name: str = "psi"


@dataclass
class MonoidalStructure:
    """phi_{X,Y}: RX (x)' RY -> R(X (x) Y) and phi0: I' -> RI for R from ``source`` to ``target``."""

    functor: Any
    source: SkewMonoidalStructure
    target: SkewMonoidalStructure
    phi: Callable[[Any, Any], Any]
    phi0: Any
    name: str = "phi"


def check_opmonoidal(o: OpmonoidalStructure, source: ObjectSource | None = None) -> CheckReport:
    F, s, t = o.functor, o.source, o.target
    X, A = s.category, t.category
    source = source or ObjectSource.for_category(X)
    T, Tb = s.tensor, t.tensor
    tmb, oneb = t.tensor_mor, t.one
    psi = o.psi
    A.check_typed(o.psi0, F.obj(s.unit), t.unit, "psi0")
    for x, y in source.tuples(2, "psi-typing"):
        A.check_typed(psi(x, y), F.obj(T(x, y)), Tb(F.obj(x), F.obj(y)), "psi component")
    report = CheckReport(f"opmonoidal {o.name}")
    for x, y, z in source.tuples(3, "o1"):
        fx, fy, fz = F.obj(x), F.obj(y), F.obj(z)
        lhs = A.comp(t.alpha(fx, fy, fz), tmb(psi(x, y), oneb(fz)), psi(T(x, y), z))
        rhs = A.comp(tmb(oneb(fx), psi(y, z)), psi(x, T(y, z)), F.mor(s.alpha(x, y, z)))
        report.expect("opmonoidal-assoc", lhs, rhs, (x, y, z))
    for (x,) in source.tuples(1, "o23"):
        fx = F.obj(x)
        lhs = A.comp(t.lam(fx), tmb(o.psi0, oneb(fx)), psi(s.unit, x))
        report.expect("opmonoidal-left-unit", lhs, F.mor(s.lam(x)), (x,))
        lhs = A.comp(tmb(oneb(fx), o.psi0), psi(x, s.unit), F.mor(s.rho(x)))
        report.expect("opmonoidal-right-unit", lhs, t.rho(fx), (x,))
    inv = [(x, y, A.is_iso(psi(x, y))) for x, y in source.tuples(2, "psi-inv")]
    report.info["normal"] = A.is_iso(o.psi0)
    report.info["strong"] = report.info["normal"] and all(ok for _, _, ok in inv)
    report.info["psi-invertible"] = inv
    return report


def check_monoidal(m: MonoidalStructure, source: ObjectSource | None = None) -> CheckReport:
    R, s, t = m.functor, m.source, m.target
    X, A = s.category, t.category
    source = source or ObjectSource.for_category(X)
    T = s.tensor
    tmb, oneb = t.tensor_mor, t.one
    phi = m.phi
    A.check_typed(m.phi0, t.unit, R.obj(s.unit), "phi0")
    for x, y in source.tuples(2, "phi-typing"):
        A.check_typed(phi(x, y), t.tensor(R.obj(x), R.obj(y)), R.obj(T(x, y)), "phi component")
    report = CheckReport(f"monoidal {m.name}")
    for x, y, z in source.tuples(3, "m1"):
        rx, ry, rz = R.obj(x), R.obj(y), R.obj(z)
        lhs = A.comp(R.mor(s.alpha(x, y, z)), phi(T(x, y), z), tmb(phi(x, y), oneb(rz)))
        rhs = A.comp(phi(x, T(y, z)), tmb(oneb(rx), phi(y, z)), t.alpha(rx, ry, rz))
        report.expect("monoidal-assoc", lhs, rhs, (x, y, z))
    for (x,) in source.tuples(1, "m23"):
        rx = R.obj(x)
        lhs = A.comp(R.mor(s.lam(x)), phi(s.unit, x), tmb(m.phi0, oneb(rx)))
        report.expect("monoidal-left-unit", lhs, t.lam(rx), (x,))
        lhs = A.comp(phi(x, s.unit), tmb(oneb(rx), m.phi0), t.rho(rx))
        report.expect("monoidal-right-unit", lhs, R.mor(s.rho(x)), (x,))
    report.info["normal"] = A.is_iso(m.phi0)
    return report


def check_structure_iso(
    s1: SkewMonoidalStructure,
    s2: SkewMonoidalStructure,
    w: Callable[[Any, Any], Any],
    w0: Any,
    source: ObjectSource | None = None,
) -> CheckReport:
    """Is the identity functor, with tensor comparison ``w`` and unit comparison ``w0``, a
    strong opmonoidal isomorphism from ``s1`` to ``s2`` on the same category?"""
    o = OpmonoidalStructure(identity_functor(s1.category), s1, s2, w, w0, name=f"{s1.name} ~ {s2.name}")
    report = check_opmonoidal(o, source)
    report.title = f"isomorphism {s1.name} ~ {s2.name}"
    for x, y, ok in report.info["psi-invertible"]:
        report.expect("comparison-invertible", ok, True, (x, y))
    report.expect("unit-comparison-invertible", report.info["normal"], True, (s1.unit,))
    return report


# -- internal homs ---------------------------------------------------------------


@dataclass
class InternalHomWitness:
    kind: str  # "left": [Y, Z] with H (x) Y -> Z, "right": <X, Z> with X (x) H -> Z
    args: tuple
    obj: Hashable
    evaluation: Any


def _bijective(images: list, target: list) -> bool:
    return len(images) == len(target) and sorted(images) == sorted(target) and len(set(images)) == len(images)


def left_hom(s: SkewMonoidalStructure, y, z, order: list | None = None) -> InternalHomWitness | None:
    """A representing object for X |-> hom(X (x) Y, Z), with evaluation u: H (x) Y -> Z."""
    c = _finite(s)
    objs = order if order is not None else c.objects()
    for h in objs:
        for u in c.hom(s.tensor(h, y), z):
            if all(
                _bijective([c.compose(u, s.tensor_mor(f, s.one(y))) for f in c.hom(x, h)], c.hom(s.tensor(x, y), z))
                for x in objs
            ):
                return InternalHomWitness("left", (y, z), h, u)
    return None


def right_hom(s: SkewMonoidalStructure, x, z, order: list | None = None) -> InternalHomWitness | None:
    """A representing object for Y |-> hom(X (x) Y, Z), with evaluation u: X (x) H -> Z."""
    c = _finite(s)
    objs = order if order is not None else c.objects()
    for h in objs:
        for u in c.hom(s.tensor(x, h), z):
            if all(
                _bijective([c.compose(u, s.tensor_mor(s.one(x), g)) for g in c.hom(y, h)], c.hom(s.tensor(x, y), z))
                for y in objs
            ):
                return InternalHomWitness("right", (x, z), h, u)
    return None


def _finite(s: SkewMonoidalStructure) -> FinCategory:
    if not s.category.is_finite:
        raise PreconditionError("internal hom search needs a finite carrier")
    return s.category


def isomorphic(c: Category, a, b):
    """An isomorphism a -> b found by search, or None."""
    for m in c.hom(a, b):
        if c.is_iso(m):
            return m
    return None


# -- reflective lemma ---------------------------------------------------------------


def reflective_lemma(adj: Adjunction, z) -> dict[str, bool]:
    """Evaluate conditions (i)-(v) of the reflective lemma at the object ``z``.

    (i)   z is isomorphic to N A for some A
    (ii)  for all X, precomposition with eta_X, hom(NLX, z) -> hom(X, z), is surjective
    (iii) eta_z is a split monomorphism
    (iv)  eta_z is invertible
    (v)   for all X, precomposition with eta_X is bijective
    """
    L, N = adj.left, adj.right
    X, A = adj.lower, adj.upper
    if not (X.is_finite and A.is_finite):
        raise PreconditionError("the reflective lemma is evaluated by enumeration; carriers must be finite")
    for a in A.objects():
        if not A.is_iso(adj.counit(a)):
            raise PreconditionError(f"counit not invertible at {A.describe_obj(a)}", (a,))
    if isinstance(N, Functor) and not is_fully_faithful(N):
        raise PreconditionError("right adjoint is not fully faithful")

    def precompose(x) -> tuple[bool, bool]:
        eta = adj.unit(x)
        images = [X.compose(g, eta) for g in X.hom(N.obj(L.obj(x)), z)]
        target = X.hom(x, z)
        surj = set(target) <= set(images)
        return surj, surj and len(set(images)) == len(images) == len(target)

    eta_z = adj.unit(z)
    nlz = N.obj(L.obj(z))
    per_x = [precompose(x) for x in X.objects()]
    return {
        "i": any(isomorphic(X, z, N.obj(a)) is not None for a in A.objects()),
        "ii": all(s for s, _ in per_x),
        "iii": any(X.compose(nu, eta_z) == X.identity(z) for nu in X.hom(nlz, z)),
        "iv": X.is_iso(eta_z),
        "v": all(b for _, b in per_x),
    }
