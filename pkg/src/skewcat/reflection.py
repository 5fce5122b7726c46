"""Skew monoidal structure induced along a reflection or a coreflection.

For a reflection ``L -| N`` (counit invertible) of a skew monoidal category X the
structure on A is ``A (x)' B = L(NA (x) NB)``, ``I' = LI``, with constraints
obtained by solving the defining squares for the barred arrows::

    alpha' = L(1 (x) eta) . L alpha . L(eta (x) 1)^-1
    lambda' = eps . L lambda . L(eta_I (x) 1)^-1
    rho'    = L(1 (x) eta_I) . L rho . eps^-1

This needs every ``L(eta_X (x) 1_NB)`` invertible.  The coreflection case
``N -| R`` (unit invertible) is the dual: ``A (x)' B = R(NA (x) NB)`` and the
condition is invertibility of ``R(NA (x) eps_Y)``.  The counit/unit is kept
explicit throughout; nothing assumes N is a literal inclusion.
"""

from __future__ import annotations

from .fincat import Adjunction, Category
from .report import CheckReport, ObjectSource, PreconditionError, StructuralError, draw
from .skewmon import (
    MonoidalStructure,
    OpmonoidalStructure,
    SkewMonoidalStructure,
    check_opmonoidal,
    check_skew_axioms,
    isomorphic,
    left_hom,
    right_hom,
)

__all__ = [
    "Adjunction",
    "check_reflection_condition",
    "build_reflected_structure",
    "reflection_theorem_report",
    "check_coreflection_condition",
    "build_coreflected_structure",
    "check_closed_equivalences",
]


def _sources(adj: Adjunction, lower: ObjectSource | None, upper: ObjectSource | None):
    return (lower or ObjectSource.for_category(adj.lower), upper or ObjectSource.for_category(adj.upper))


def _inverter(c: Category, what: str):
    def inv(m, witness: tuple = ()):
        i = c.inverse(m)
        if i is None:
            raise PreconditionError(f"{what} is not invertible", witness + (m,))
        return i

    return inv


def check_reflection_condition(
    adj: Adjunction,
    s: SkewMonoidalStructure,
    lower: ObjectSource | None = None,
    upper: ObjectSource | None = None,
) -> CheckReport:
    """Invertibility of L(eta_X (x) 1_NB) for every tested pair (X, B)."""
    if s.category is not adj.lower:
        raise StructuralError("skew structure does not live on the domain of the reflector")
    L, N = adj.left, adj.right
    A = adj.upper
    lower, upper = _sources(adj, lower, upper)
    report = CheckReport(f"reflection condition for {adj.name}")
    pairs = []
    for x, b in draw([lower, upper], key="moninv"):
        m = L.mor(s.tensor_mor(adj.unit(x), s.one(N.obj(b))))
        ok = A.is_iso(m)
        pairs.append((x, b, ok))
        report.expect("moninv", ok, True, (x, b, m), "L(eta_X (x) 1_NB) not invertible")
    report.info["pairs"] = pairs
    return report


def build_reflected_structure(
    adj: Adjunction,
    s: SkewMonoidalStructure,
    lower: ObjectSource | None = None,
    upper: ObjectSource | None = None,
    check: bool = True,
) -> tuple[SkewMonoidalStructure, OpmonoidalStructure]:
    """The skew structure on the reflective subcategory and the normal opmonoidal reflector."""
    L, N = adj.left, adj.right
    A = adj.upper
    eta, eps = adj.unit, adj.counit
    if check:
        cond = check_reflection_condition(adj, s, lower, upper)
        if not cond.ok:
            x, b, _ = cond.violations[0].witness
            raise PreconditionError(
                f"L(eta_X (x) 1_NB) not invertible at X={adj.lower.describe_obj(x)}, B={A.describe_obj(b)}",
                (x, b),
            )
    inv = _inverter(A, "L(eta (x) 1)")
    T, tm, one, I = s.tensor, s.tensor_mor, s.one, s.unit
    X = s.category

    def tensor(a, b):
        return L.obj(T(N.obj(a), N.obj(b)))

    def tensor_mor(f, g):
        return L.mor(tm(N.mor(f), N.mor(g)))

    def alpha(a, b, c):
        na, nb, nc = N.obj(a), N.obj(b), N.obj(c)
        top = L.mor(tm(eta(T(na, nb)), one(nc)))
        return A.comp(L.mor(tm(one(na), eta(T(nb, nc)))), L.mor(s.alpha(na, nb, nc)), inv(top, (a, b, c)))

    def lam(a):
        na = N.obj(a)
        top = L.mor(tm(eta(I), one(na)))
        return A.comp(eps(a), L.mor(s.lam(na)), inv(top, (a,)))

    def rho(a):
        na = N.obj(a)
        return A.comp(L.mor(tm(one(na), eta(I))), L.mor(s.rho(na)), inv(eps(a), (a,)))

    bar = SkewMonoidalStructure(A, tensor, tensor_mor, L.obj(I), alpha, lam, rho, name=f"L({s.name})")
    psi = OpmonoidalStructure(
        L, s, bar, lambda x, y: L.mor(tm(eta(x), eta(y))), A.identity(L.obj(I)), name=f"{L.name} opmonoidal"
    )
    return bar, psi


def reflection_theorem_report(
    adj: Adjunction,
    s: SkewMonoidalStructure,
    lower: ObjectSource | None = None,
    upper: ObjectSource | None = None,
) -> CheckReport:
    """Check the condition; when it holds, build the reflected structure and verify it.

    Law prefixes: ``condition:``, ``reflected:`` (axioms and naturality),
    ``opmonoidal:`` and ``psi(X,NB)-invertible``.
    """
    lower, upper = _sources(adj, lower, upper)
    report = CheckReport(f"reflection of {s.name} along {adj.name}")
    cond = check_reflection_condition(adj, s, lower, upper)
    report.merge(cond, "condition:")
    if not cond.ok:
        return report
    bar, op = build_reflected_structure(adj, s, lower, upper, check=False)
    report.merge(check_skew_axioms(bar, upper, naturality=True), "reflected:")
    report.merge(check_opmonoidal(op, lower), "opmonoidal:")
    A, N = adj.upper, adj.right
    for x, b in draw([lower, upper], key="psi"):
        report.expect("psi(X,NB)-invertible", A.is_iso(op.psi(x, N.obj(b))), True, (x, b))
    report.info["structure"] = bar
    return report


def check_coreflection_condition(
    adj: Adjunction,
    s: SkewMonoidalStructure,
    lower: ObjectSource | None = None,
    upper: ObjectSource | None = None,
) -> CheckReport:
    """Invertibility of R(NA (x) eps_Y) for every tested pair (A, Y); ``adj`` is N -| R."""
    if s.category is not adj.upper:
        raise StructuralError("skew structure does not live on the domain of the coreflector")
    N, R = adj.left, adj.right
    A = adj.lower
    lower, upper = _sources(adj, lower, upper)
    report = CheckReport(f"coreflection condition for {adj.name}")
    pairs = []
    for a, y in draw([lower, upper], key="comoninv"):
        m = R.mor(s.tensor_mor(s.one(N.obj(a)), adj.counit(y)))
        ok = A.is_iso(m)
        pairs.append((a, y, ok))
        report.expect("comoninv", ok, True, (a, y, m), "R(NA (x) eps_Y) not invertible")
    report.info["pairs"] = pairs
    return report


def build_coreflected_structure(
    adj: Adjunction,
    s: SkewMonoidalStructure,
    lower: ObjectSource | None = None,
    upper: ObjectSource | None = None,
    check: bool = True,
) -> tuple[SkewMonoidalStructure, MonoidalStructure]:
    """The skew structure on the coreflective subcategory and the normal monoidal coreflector R."""
    N, R = adj.left, adj.right
    A = adj.lower
    eta, eps = adj.unit, adj.counit
    if check:
        cond = check_coreflection_condition(adj, s, lower, upper)
        if not cond.ok:
            a, y, _ = cond.violations[0].witness
            raise PreconditionError(
                f"R(NA (x) eps_Y) not invertible at A={A.describe_obj(a)}, Y={adj.upper.describe_obj(y)}",
                (a, y),
            )
    inv = _inverter(A, "R(1 (x) eps)")
    T, tm, one, I = s.tensor, s.tensor_mor, s.one, s.unit

    def tensor(a, b):
        return R.obj(T(N.obj(a), N.obj(b)))

    def tensor_mor(f, g):
        return R.mor(tm(N.mor(f), N.mor(g)))

    def alpha(a, b, c):
        na, nb, nc = N.obj(a), N.obj(b), N.obj(c)
        bottom = R.mor(tm(one(na), eps(T(nb, nc))))
        return A.comp(inv(bottom, (a, b, c)), R.mor(s.alpha(na, nb, nc)), R.mor(tm(eps(T(na, nb)), one(nc))))

    def lam(a):
        na = N.obj(a)
        return A.comp(inv(eta(a), (a,)), R.mor(s.lam(na)), R.mor(tm(eps(I), one(na))))

    def rho(a):
        na = N.obj(a)
        bottom = R.mor(tm(one(na), eps(I)))
        return A.comp(inv(bottom, (a,)), R.mor(s.rho(na)), eta(a))

    bar = SkewMonoidalStructure(A, tensor, tensor_mor, R.obj(I), alpha, lam, rho, name=f"R({s.name})")
    phi = MonoidalStructure(
        R, s, bar, lambda x, y: R.mor(tm(eps(x), eps(y))), A.identity(R.obj(I)), name=f"{R.name} monoidal"
    )
    return bar, phi


# -- closed structure --------------------------------------------------------------


def _represents_left(s: SkewMonoidalStructure, h, u, y, z) -> bool:
    c = s.category
    for x in c.objects():
        images = [c.compose(u, s.tensor_mor(f, s.one(y))) for f in c.hom(x, h)]
        target = c.hom(s.tensor(x, y), z)
        if len(images) != len(target) or len(set(images)) != len(images) or set(images) != set(target):
            return False
    return True


def check_closed_equivalences(adj: Adjunction, s: SkewMonoidalStructure) -> CheckReport:
    """Agreement of the three invertibility families for a reflection with internal homs.

    * moninvY   L(eta_X (x) 1_Y)
    * lclosed   eta_[Y,NC]
    * rclosed   <eta_X, NC> : <NLX, NC> -> <X, NC>

    Families are compared where every hom they mention exists.  When all
    ``[NB, NC]`` exist, the left-closed equivalence is checked and the left hom
    ``L[NB, NC]`` of the reflected structure is verified with its evaluation.
    """
    L, N = adj.left, adj.right
    X, A = adj.lower, adj.upper
    if not (X.is_finite and A.is_finite):
        raise StructuralError("closed equivalences need finite carriers")
    T, tm, one = s.tensor, s.tensor_mor, s.one
    eta = adj.unit
    xs, cs = X.objects(), A.objects()
    report = CheckReport(f"closed equivalences for {adj.name}")

    lhom = {(y, c): left_hom(s, y, N.obj(c)) for y in xs for c in cs}
    rhom = {(x, c): right_hom(s, x, N.obj(c)) for x in xs for c in cs}
    a = {(x, y): A.is_iso(L.mor(tm(eta(x), one(y)))) for x in xs for y in xs}
    b = {(y, c): X.is_iso(eta(w.obj)) for (y, c), w in lhom.items() if w is not None}
    cc = {}
    for x in xs:
        for c in cs:
            w1, w2 = rhom[(N.obj(L.obj(x)), c)], rhom[(x, c)]
            if w1 is None or w2 is None:
                continue
            m = _right_hom_map(s, x, eta(x), w1, w2)
            cc[(x, c)] = m is not None and X.is_iso(m)
    report.info["moninvY"] = a
    report.info["lclosedinvY"] = b
    report.info["rclosedinvY"] = cc

    all_left = all(w is not None for w in lhom.values())
    all_right = all(w is not None for w in rhom.values())
    report.info["left-homs-exist"] = all_left
    report.info["right-homs-exist"] = all_right
    fam_a = all(a.values())
    if all_left:
        report.expect("moninvY<->lclosed", fam_a, all(b.values()), ("family",))
        for y in xs:
            report.expect(
                "moninvY<->lclosed per Y", all(a[(x, y)] for x in xs), all(b[(y, c)] for c in cs), (y,)
            )
    if all_right:
        report.expect("moninvY<->rclosed", fam_a, all(cc.values()), ("family",))
        for x in xs:
            report.expect(
                "moninvY<->rclosed per X", all(a[(x, y)] for y in xs), all(cc[(x, c)] for c in cs), (x,)
            )
    if all_left and all_right:
        report.expect("lclosed<->rclosed", all(b.values()), all(cc.values()), ("family",))

    # left-closed reflection: homs [NB, NC] for all B, C
    nn = {(bb, c): lhom[(N.obj(bb), c)] for bb in cs for c in cs}
    report.info["skclosed-applies"] = all(w is not None for w in nn.values())
    if report.info["skclosed-applies"]:
        moninv = all(a[(x, N.obj(bb))] for x in xs for bb in cs)
        lclosed = all(X.is_iso(eta(w.obj)) for w in nn.values())
        report.expect("moninv<->lclosed[NB,NC]", moninv, lclosed, ("family",))
        report.info["moninv"] = moninv
        if moninv:
            _check_reflected_homs(adj, s, nn, report)
    return report


def _right_hom_map(s: SkewMonoidalStructure, x, eta_x, w1, w2):
    """<eta_X, Z>: the m with u2 . (1_X (x) m) = u1 . (eta_X (x) 1)."""
    c = s.category
    target = c.compose(w1.evaluation, s.tensor_mor(eta_x, s.one(w1.obj)))
    hits = [m for m in c.hom(w1.obj, w2.obj) if c.compose(w2.evaluation, s.tensor_mor(s.one(x), m)) == target]
    return hits[0] if len(hits) == 1 else None


def _check_reflected_homs(adj: Adjunction, s: SkewMonoidalStructure, nn: dict, report: CheckReport) -> None:
    L, N = adj.left, adj.right
    X, A = adj.lower, adj.upper
    bar, _ = build_reflected_structure(adj, s)
    witnesses = {}
    for (bb, c), w in nn.items():
        h = w.obj
        inv_top = A.inverse(L.mor(s.tensor_mor(adj.unit(h), s.one(N.obj(bb)))))
        # evaluation L[NB,NC] (x)' B = L(NL[NB,NC] (x) NB) -> C
        u_bar = A.comp(adj.counit(c), L.mor(w.evaluation), inv_top)
        ok = _represents_left(bar, L.obj(h), u_bar, bb, c)
        report.expect("left-closed-hom", ok, True, (bb, c))
        found = left_hom(bar, bb, c)
        same = found is not None and isomorphic(A, found.obj, L.obj(h)) is not None
        report.expect("left-hom-unique-up-to-iso", same, True, (bb, c))
        back = X.inverse(adj.unit(h))
        report.expect("strong-left-closed", back is not None, True, (bb, c))
        witnesses[(bb, c)] = back
    report.info["N[B,C]~[NB,NC]"] = witnesses
