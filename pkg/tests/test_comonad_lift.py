from __future__ import annotations

import pytest

from skewcat.bigcat import FibreMap, IndexMap, slice_adjunction
from skewcat.comonad_lift import (
    ActegoryComonad,
    check_actegory_comonad,
    em_category,
    identity_comonad,
    idempotent_comparison,
    lift_comonad_structure,
)
from skewcat.corpus import posetal_meet, right_projection
from skewcat.fincat import ordinal, terminal_category, walking_arrow
from skewcat.report import ObjectSource, SamplingConfig, StructuralError
from skewcat.slice_example import build_slice_skew, slice_comonad
from skewcat.warping import tensor_action

SMALL = SamplingConfig(samples=12, fibre_bound=2)


def test_identity_comonad_is_strong_and_idempotent():
    s = posetal_meet(ordinal(3))
    report = check_actegory_comonad(identity_comonad(tensor_action(s)))
    assert report.ok
    assert report.info["strong"] and report.info["idempotent"]


def test_identity_comonad_lift_reproduces_the_structure():
    s = right_projection(walking_arrow())
    m = identity_comonad(tensor_action(s))
    lr = lift_comonad_structure(s, m, ObjectSource.for_category(s.category))
    assert lr.report.ok, lr.report
    # coalgebras of the identity comonad are objects with identity coaction
    assert [c.carrier for c in lr.em.objects()] == s.category.objects()
    for a in lr.em.objects():
        for b in lr.em.objects():
            assert lr.structure.tensor(a, b).carrier == s.tensor(a.carrier, b.carrier)


def test_lifted_unit_is_cofree_on_the_unit():
    s = posetal_meet(ordinal(3))
    m = identity_comonad(tensor_action(s))
    lr = lift_comonad_structure(s, m, ObjectSource.for_category(s.category))
    assert lr.structure.unit == lr.em.cofree(s.unit)
    assert lr.structure.unit.coaction == m.delta(s.unit)


def _slice_setup():
    C = walking_arrow()
    xi = IndexMap(["u", "v", "w"], ["0", "1"], {"u": "0", "v": "0", "w": "1"})
    adj = slice_adjunction(xi)
    s = build_slice_skew(C, category=adj.upper)
    return adj, s, ObjectSource.sampled(adj.upper, SMALL, "O")


def test_slice_comonad_is_a_strong_actegory_comonad():
    adj, s, src = _slice_setup()
    report = check_actegory_comonad(slice_comonad(adj, s), src, src)
    assert report.ok, report
    assert report.info["strong"]
    # two points over 0 make G non-idempotent
    assert not report.info["idempotent"]


def test_swapped_gamma_breaks_the_action_compatibility():
    C = terminal_category()
    xi = IndexMap(["a", "b"], ["0"], {"a": "0", "b": "0"})
    adj = slice_adjunction(xi)
    s = build_slice_skew(C, category=adj.upper)
    good = slice_comonad(adj, s)
    swap = {"a": "b", "b": "a"}

    def gamma(x, y):
        g = good.gamma(x, y)
        return FibreMap(g.dom, g.cod, [(z, swap[u]) for (z, u) in g.images])

    bent = ActegoryComonad(good.action, good.G, gamma, good.delta, good.eps, name="bent")
    src = ObjectSource.sampled(adj.upper, SMALL, "O")
    report = check_actegory_comonad(bent, src, src)
    assert not report.passed("am1")
    assert check_actegory_comonad(good, src, src).ok


def test_cofree_coalgebras_are_valid_and_bad_coactions_rejected():
    adj, s, src = _slice_setup()
    m = slice_comonad(adj, s)
    em, _, _ = em_category(m)
    for x in src.pool:
        c = em.cofree(x)
        assert em.coalgebra(c.carrier, c.coaction) == c
    x = next(x for x in src.pool if x.sizes()[0] > 0)
    gx = m.G.obj(x)
    # G(G x) -> G x via G eps is not a coaction on G x
    with pytest.raises(StructuralError):
        em.coalgebra(m.G.obj(gx), m.G.mor(m.eps(x)))


def test_idempotent_comparison_for_identity_comonad():
    s = posetal_meet(ordinal(3))
    m = identity_comonad(tensor_action(s))
    report = idempotent_comparison(m, s)
    assert report.ok, report
    assert report.info["lift"].unit == report.info["coreflection"].unit
