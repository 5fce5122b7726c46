"""Skew actions, skew left warpings and the skew monoidal structure a warping induces.

A skew action of (C, (x), I) on A has ``X * A``, ``alpha: (X (x) Y) * A -> X * (Y * A)`` and
``lambda: I * A -> A``.  A warping riding it is ``(T, K, v, v0, k)`` with::

    v_{A,B}: T(TA * B) -> TA (x) TB      v0: TK -> I      k_A: A -> TA * K

and induces ``A (x)' B = TA * B`` with unit K.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable

from .fincat import Category, FinCategory, ProcFunctor, identity_functor
from .report import CheckReport, ObjectSource, PreconditionError, StructuralError, draw, sample_morphisms
from .skewmon import OpmonoidalStructure, SkewMonoidalStructure, _memo, check_opmonoidal, check_skew_axioms

WARPING_AXIOMS = ("warpassoc", "warpunit1", "warpunit2", "warpunit3", "warpunit4")
ACTION_AXIOMS = ("lsa1", "lsa2", "lsa3")


class SkewAction:
    """A left skew action of ``acting`` on ``carrier``."""

    def __init__(
        self,
        acting: SkewMonoidalStructure,
        carrier: Category,
        star: Callable[[Any, Any], Any],
        star_mor: Callable[[Any, Any], Any],
        act_alpha: Callable[[Any, Any, Any], Any],
        act_lambda: Callable[[Any], Any],
        name: str = "action",
    ):
        self.acting = acting
        self.carrier = carrier
        self.star = _memo(star)
        self.star_mor = _memo(star_mor)
        self.act_alpha = _memo(act_alpha)
        self.act_lambda = _memo(act_lambda)
        self.name = name

    def __repr__(self) -> str:
        return f"SkewAction({self.name})"


def tensor_action(s: SkewMonoidalStructure) -> SkewAction:
    """The skew monoidal category acting on itself by its tensor."""
    return SkewAction(s, s.category, s.tensor, s.tensor_mor, s.alpha, s.lam, name=f"{s.name} on itself")


def check_action(
    action: SkewAction, c_source: ObjectSource | None = None, a_source: ObjectSource | None = None
) -> CheckReport:
    s, A = action.acting, action.carrier
    C = s.category
    c_source = c_source or ObjectSource.for_category(C)
    a_source = a_source or ObjectSource.for_category(A)
    st, stm, aa, al = action.star, action.star_mor, action.act_alpha, action.act_lambda
    t, one_c, one_a, I = s.tensor, s.one, A.identity, s.unit
    for (x, y, a) in draw([c_source, c_source, a_source], key="action-typing"):
        A.check_typed(aa(x, y, a), st(t(x, y), a), st(x, st(y, a)), "action alpha component")
    for a in a_source.pool:
        A.check_typed(al(a), st(I, a), a, "action lambda component")
    report = CheckReport(f"skew action {action.name}")
    for x, y, z, a in draw([c_source] * 3 + [a_source], key="lsa1"):
        lhs = A.compose(aa(x, y, st(z, a)), aa(t(x, y), z, a))
        rhs = A.comp(stm(one_c(x), aa(y, z, a)), aa(x, t(y, z), a), stm(s.alpha(x, y, z), one_a(a)))
        report.expect("lsa1", lhs, rhs, (x, y, z, a))
    for y, a in draw([c_source, a_source], key="lsa2"):
        report.expect("lsa2", A.compose(al(st(y, a)), aa(I, y, a)), stm(s.lam(y), one_a(a)), (y, a))
    for x, a in draw([c_source, a_source], key="lsa3"):
        lhs = A.comp(stm(one_c(x), al(a)), aa(x, I, a), stm(s.rho(x), one_a(a)))
        report.expect("lsa3", lhs, one_a(st(x, a)), (x, a))
    return report


@dataclass
class SkewWarping:
    """``(T, K, v, v0, k)`` riding ``action``; T goes from the carrier to the acting category."""

    action: SkewAction
    T: Any
    K: Any
    v: Callable[[Any, Any], Any]
    v0: Any
    k: Callable[[Any], Any]
    name: str = "warping"

    def __post_init__(self):
        self.v = _memo(self.v)
        self.k = _memo(self.k)


def check_warping(
    w: SkewWarping,
    a_source: ObjectSource | None = None,
    naturality: bool = False,
) -> CheckReport:
    act = w.action
    s, A = act.acting, act.carrier
    C = s.category
    a_source = a_source or ObjectSource.for_category(A)
    T, K, v, v0, k = w.T, w.K, w.v, w.v0, w.k
    st, stm = act.star, act.star_mor
    t, tm, one_c, one_a, I = s.tensor, s.tensor_mor, s.one, A.identity, s.unit
    TO = T.obj
    C.check_typed(v0, TO(K), I, "v0")
    for a, b in a_source.tuples(2, "v-typing"):
        C.check_typed(v(a, b), TO(st(TO(a), b)), t(TO(a), TO(b)), "v component")
    for a in a_source.pool:
        A.check_typed(k(a), a, st(TO(a), K), "k component")
    report = CheckReport(f"skew warping {w.name}")
    for a, b, c in a_source.tuples(3, "warpassoc"):
        ta, tb, tc = TO(a), TO(b), TO(c)
        lhs = C.comp(s.alpha(ta, tb, tc), tm(v(a, b), one_c(tc)), v(st(ta, b), c))
        rhs = C.comp(
            tm(one_c(ta), v(b, c)),
            v(a, st(tb, c)),
            T.mor(act.act_alpha(ta, tb, c)),
            T.mor(stm(v(a, b), one_a(c))),
        )
        report.expect("warpassoc", lhs, rhs, (a, b, c))
    for (b,) in a_source.tuples(1, "warpunit1"):
        tb = TO(b)
        lhs = C.comp(s.lam(tb), tm(v0, one_c(tb)), v(K, b))
        rhs = C.compose(T.mor(act.act_lambda(b)), T.mor(stm(v0, one_a(b))))
        report.expect("warpunit1", lhs, rhs, (b,))
    for (a,) in a_source.tuples(1, "warpunit2"):
        ta = TO(a)
        lhs = C.comp(tm(one_c(ta), v0), v(a, K), T.mor(k(a)))
        report.expect("warpunit2", lhs, s.rho(ta), (a,))
    for a, b in a_source.tuples(2, "warpunit3"):
        ta = TO(a)
        lhs = A.comp(act.act_alpha(ta, TO(b), K), stm(v(a, b), one_a(K)), k(st(ta, b)))
        report.expect("warpunit3", lhs, stm(one_c(ta), k(b)), (a, b))
    lhs = A.comp(act.act_lambda(K), stm(v0, one_a(K)), k(K))
    report.expect("warpunit4", lhs, one_a(K), (K,))
    if naturality:
        for f, g in sample_morphisms(A, a_source, 2, key="nat-v"):
            a, b, a2, b2 = A.src(f), A.src(g), A.tgt(f), A.tgt(g)
            report.expect(
                "naturality-v",
                C.compose(v(a2, b2), T.mor(stm(T.mor(f), g))),
                C.compose(tm(T.mor(f), T.mor(g)), v(a, b)),
                (f, g),
            )
        for (f,) in sample_morphisms(A, a_source, 1, key="nat-k"):
            a, a2 = A.src(f), A.tgt(f)
            report.expect(
                "naturality-k", A.compose(k(a2), f), A.compose(stm(T.mor(f), one_a(K)), k(a)), (f,)
            )
    return report


def warping_to_skew(
    w: SkewWarping, a_source: ObjectSource | None = None, check: bool = True
) -> tuple[SkewMonoidalStructure, OpmonoidalStructure]:
    """The induced skew structure on the carrier, with (T, v, v0) opmonoidal into the acting structure."""
    if check:
        rep = check_warping(w, a_source)
        if not rep.ok:
            v = rep.violations[0]
            raise PreconditionError(f"not a skew warping: {v.law} fails", v.witness)
    act = w.action
    s, A = act.acting, act.carrier
    T = w.T
    st, stm = act.star, act.star_mor

    def alpha(a, b, c):
        ta, tb = T.obj(a), T.obj(b)
        return A.compose(act.act_alpha(ta, tb, c), stm(w.v(a, b), A.identity(c)))

    def lam(b):
        return A.compose(act.act_lambda(b), stm(w.v0, A.identity(b)))

    bar = SkewMonoidalStructure(
        A,
        lambda a, b: st(T.obj(a), b),
        lambda f, g: stm(T.mor(f), g),
        w.K,
        alpha,
        lam,
        w.k,
        name=f"warped({w.name})",
    )
    return bar, OpmonoidalStructure(T, bar, s, w.v, w.v0, name=f"T of {w.name}")


def identity_warping(s: SkewMonoidalStructure) -> SkewWarping:
    """T = 1, K = I, v = 1, v0 = 1, k = rho on the tensor-as-action."""
    C = s.category
    return SkewWarping(
        tensor_action(s),
        identity_functor(C),
        s.unit,
        lambda a, b: C.identity(s.tensor(a, b)),
        C.identity(s.unit),
        s.rho,
        name=f"1_{s.name}",
    )


# -- endofunctor categories --------------------------------------------------------


@dataclass(frozen=True)
class Endo:
    """An endofunctor of a finite category as object and morphism tables."""

    omap: tuple
    mmap: tuple


def _endofunctors(a: FinCategory) -> list[Endo]:
    objs, mors = a.objects(), a.morphisms()
    found = []
    for omap in itertools.product(objs, repeat=len(objs)):
        choices = [a.hom(omap[a.src(m)], omap[a.tgt(m)]) for m in mors]
        for mmap in itertools.product(*choices):
            if any(mmap[a.identity(o)] != a.identity(omap[o]) for o in objs):
                continue
            if all(mmap[h] == a.compose(mmap[g], mmap[f]) for (g, f), h in a.table.items()):
                found.append(Endo(tuple(omap), tuple(mmap)))
    return found


def _transformations(a: FinCategory, f: Endo, g: Endo) -> list[tuple]:
    objs = a.objects()
    out = []
    for comps in itertools.product(*(a.hom(f.omap[o], g.omap[o]) for o in objs)):
        if all(
            a.compose(g.mmap[m], comps[a.src(m)]) == a.compose(comps[a.tgt(m)], f.mmap[m]) for m in a.morphisms()
        ):
            out.append(comps)
    return out


class EndofunctorCategory:
    """[A, A] for a small finite A, with composition as (strict) monoidal structure.

    ``functors[k]`` is object k; morphism m is ``(src, tgt, components)``.
    """

    def __init__(self, a: FinCategory, max_objects: int = 3, max_morphisms: int = 8):
        if len(a.objects()) > max_objects or len(a.morphisms()) > max_morphisms:
            raise PreconditionError(
                f"[A,A] is only built for A with at most {max_objects} objects and {max_morphisms} morphisms"
            )
        self.base = a
        self.functors = _endofunctors(a)
        fpos = {f: i for i, f in enumerate(self.functors)}
        self.index = fpos
        arrows = []
        for i, f in enumerate(self.functors):
            for j, g in enumerate(self.functors):
                for comps in _transformations(a, f, g):
                    arrows.append((i, j, comps))
        apos = {m: n for n, m in enumerate(arrows)}
        self.arrows = arrows
        ids = [apos[(i, i, tuple(a.identity(f.omap[o]) for o in a.objects()))] for i, f in enumerate(self.functors)]
        table = {}
        for n1, (i, j, s1) in enumerate(arrows):
            for n2, (j2, k2, s2) in enumerate(arrows):
                if j2 == j:
                    comp = tuple(a.compose(s2[o], s1[o]) for o in a.objects())
                    table[(n2, n1)] = apos[(i, k2, comp)]
        self.category = FinCategory(
            [self._fname(f) for f in self.functors],
            [f"{self._fname(self.functors[i])}=>{self._fname(self.functors[j])}#{n}" for n, (i, j, _) in enumerate(arrows)],
            [i for i, _, _ in arrows],
            [j for _, j, _ in arrows],
            ids,
            table,
            name=f"[{a.name},{a.name}]",
        )
        self._apos = apos
        self._structure = None

    def _fname(self, f: Endo) -> str:
        return "F[" + ",".join(self.base.obj_names[o] for o in f.omap) + "|" + ",".join(str(m) for m in f.mmap) + "]"

    def arrow(self, i: int, j: int, comps: tuple) -> int:
        return self._apos[(i, j, tuple(comps))]

    def functor_index(self, omap: tuple, mmap: tuple) -> int:
        return self.index[Endo(tuple(omap), tuple(mmap))]

    def compose_index(self, i: int, j: int) -> int:
        """The object F . G for objects F = i, G = j."""
        a, fs = self.base, self.functors
        f, g = fs[i], fs[j]
        return self.functor_index(
            tuple(f.omap[g.omap[o]] for o in a.objects()), tuple(f.mmap[g.mmap[m]] for m in a.morphisms())
        )

    def unit_index(self) -> int:
        return self.functor_index(tuple(self.base.objects()), tuple(self.base.morphisms()))

    @property
    def structure(self) -> SkewMonoidalStructure:
        """F (x) G = F . G, unit the identity functor, identity constraints."""
        if self._structure is None:
            a, c, fs = self.base, self.category, self.functors
            tensor = self.compose_index

            def tensor_mor(s, t):
                # horizontal composite (s * t)_o = s_{G'o} . F(t_o)
                i, i2, sc = self.arrows[s]
                j, j2, tc = self.arrows[t]
                f, g2 = fs[i], fs[j2]
                comps = tuple(a.compose(sc[g2.omap[o]], f.mmap[tc[o]]) for o in a.objects())
                return self.arrow(tensor(i, j), tensor(i2, j2), comps)

            self._structure = SkewMonoidalStructure(
                c,
                tensor,
                tensor_mor,
                self.unit_index(),
                lambda x, y, z: c.identity(tensor(x, tensor(y, z))),
                c.identity,
                c.identity,
                name=f"composition on {c.name}",
            )
        return self._structure

    def evaluation_action(self) -> SkewAction:
        """F * a = F(a); (s * f) = s_b . F(f) for s: F => F', f: a -> b."""
        a, fs = self.base, self.functors

        def star_mor(s, f):
            i, _, comps = self.arrows[s]
            return a.compose(comps[a.tgt(f)], fs[i].mmap[f])

        return SkewAction(
            self.structure,
            a,
            lambda i, o: fs[i].omap[o],
            star_mor,
            lambda i, j, o: a.identity(fs[i].omap[fs[j].omap[o]]),
            lambda o: a.identity(o),
            name=f"evaluation on {a.name}",
        )


def endofunctor_category(a: FinCategory, max_objects: int = 3, max_morphisms: int = 8) -> EndofunctorCategory:
    return EndofunctorCategory(a, max_objects, max_morphisms)


def evaluation_warping(e: EndofunctorCategory, s: SkewMonoidalStructure) -> SkewWarping:
    """The warping riding evaluation that encodes a skew structure on the base of ``e``.

    T(a) = a (x) -, K = I, v_{a,b} = alpha_{a,b,-}, v0 = lambda, k = rho.
    """
    a = e.base
    if s.category is not a:
        raise StructuralError("skew structure must live on the base of the endofunctor category")
    objs, mors = a.objects(), a.morphisms()

    def left_tensor(x) -> int:
        return e.functor_index(
            tuple(s.tensor(x, o) for o in objs), tuple(s.tensor_mor(a.identity(x), m) for m in mors)
        )

    def t_mor(f) -> int:
        return e.arrow(left_tensor(a.src(f)), left_tensor(a.tgt(f)), tuple(s.tensor_mor(f, a.identity(o)) for o in objs))

    T = ProcFunctor(a, e.category, left_tensor, t_mor, name="(x)-")
    v = lambda x, y: e.arrow(
        left_tensor(s.tensor(x, y)),
        e.compose_index(left_tensor(x), left_tensor(y)),
        tuple(s.alpha(x, y, o) for o in objs),
    )
    v0 = e.arrow(left_tensor(s.unit), e.unit_index(), tuple(s.lam(o) for o in objs))
    return SkewWarping(e.evaluation_action(), T, s.unit, v, v0, s.rho, name=f"evaluation warping of {s.name}")


def compare_structures(report: CheckReport, law: str, bar: SkewMonoidalStructure, s: SkewMonoidalStructure, source: ObjectSource) -> None:
    """Componentwise equality of two structures on one carrier."""
    report.expect(law, bar.unit, s.unit, ("unit",))
    for a, b in source.tuples(2, law):
        report.expect(law, bar.tensor(a, b), s.tensor(a, b), ("tensor", a, b))
    for a, b, c in source.tuples(3, law):
        report.expect(law, bar.alpha(a, b, c), s.alpha(a, b, c), ("alpha", a, b, c))
    for a in source.pool:
        report.expect(law, bar.lam(a), s.lam(a), ("lambda", a))
        report.expect(law, bar.rho(a), s.rho(a), ("rho", a))


def warping_report(s: SkewMonoidalStructure, source: ObjectSource | None = None, evaluation: bool = True) -> CheckReport:
    """Identity and evaluation warpings of ``s``: both must give back ``s`` exactly.

    Law prefixes: ``identity:``, ``identity-skew:``, ``identity-opmonoidal:``,
    ``identity-roundtrip`` and the same with ``evaluation``; the evaluation
    warping is skipped (info ``evaluation``) when [A, A] is too large to build.
    """
    source = source or ObjectSource.for_category(s.category)
    report = CheckReport(f"warpings of {s.name}")
    w = identity_warping(s)
    runs = [("identity", w, None)]
    if evaluation and isinstance(s.category, FinCategory):
        try:
            e = endofunctor_category(s.category)
        except PreconditionError as exc:
            report.info["evaluation"] = f"skipped: {exc}"
        else:
            report.merge(check_skew_axioms(e.structure), "endofunctors:")
            report.merge(check_action(e.evaluation_action(), None, source), "evaluation-action:")
            runs.append(("evaluation", evaluation_warping(e, s), e))
            report.info["evaluation"] = f"[A,A] has {len(e.functors)} objects"
    for label, warp, _ in runs:
        report.merge(check_warping(warp, source, naturality=True), f"{label}:")
        bar, op = warping_to_skew(warp, source, check=False)
        report.merge(check_skew_axioms(bar, source), f"{label}-skew:")
        report.merge(check_opmonoidal(op, source), f"{label}-opmonoidal:")
        compare_structures(report, f"{label}-roundtrip", bar, s, source)
    return report
