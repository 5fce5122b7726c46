from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewcat.corpus import posetal_meet, right_projection, warping_corpus
from skewcat.fincat import monoid_category, ordinal, walking_arrow
from skewcat.report import CheckReport, ObjectSource, PreconditionError
from skewcat.skewmon import SkewMonoidalStructure, check_skew_axioms
from skewcat.warping import (
    SkewAction,
    SkewWarping,
    check_action,
    check_warping,
    compare_structures,
    endofunctor_category,
    evaluation_warping,
    identity_warping,
    tensor_action,
    warping_report,
    warping_to_skew,
)


def commutative_monoid_structure():
    """One object, tensor of arrows is the product in {1, e} with e idempotent, identity constraints."""
    M = monoid_category(["1", "e"], lambda g, f: "e" if "e" in (g, f) else "1", "1", name="E")
    return SkewMonoidalStructure(M, lambda x, y: 0, M.compose, 0, lambda x, y, z: M.identity(0), M.identity, M.identity, name="E")


def test_commutative_monoid_structure_is_skew_monoidal():
    assert check_skew_axioms(commutative_monoid_structure(), naturality=True).ok


def test_tensor_action_is_an_action():
    for s in (posetal_meet(ordinal(3)), right_projection(walking_arrow()), commutative_monoid_structure()):
        assert check_action(tensor_action(s)).ok


def test_bent_action_lambda_breaks_second_action_law():
    s = commutative_monoid_structure()
    M = s.category
    act = tensor_action(s)
    bent = SkewAction(s, M, act.star, act.star_mor, act.act_alpha, lambda a: M.mor("e"), name="bent")
    report = check_action(bent)
    assert not report.passed("lsa2")
    assert report.failures("lsa2")[0].witness == (0, 0)


def test_bent_counit_breaks_fourth_unit_law():
    s = commutative_monoid_structure()
    M = s.category
    w = identity_warping(s)
    bent = SkewWarping(w.action, w.T, w.K, w.v, M.mor("e"), w.k, name="bent")
    report = check_warping(bent)
    assert not report.passed("warpunit4")
    assert report.failures("warpunit4")[0].witness == (0,)
    with pytest.raises(PreconditionError):
        warping_to_skew(bent)


def test_identity_warping_gives_back_the_structure():
    s = posetal_meet(ordinal(3))
    w = identity_warping(s)
    assert check_warping(w, naturality=True).ok
    bar, _ = warping_to_skew(w)
    report = CheckReport("roundtrip")
    compare_structures(report, "same", bar, s, ObjectSource.for_category(s.category))
    assert report.ok


def test_evaluation_action_and_warping():
    s = right_projection(walking_arrow())
    e = endofunctor_category(s.category)
    # endofunctors of the walking arrow: the identity and the two constants
    assert len(e.functors) == 3
    assert check_skew_axioms(e.structure).ok
    assert check_action(e.evaluation_action()).ok
    w = evaluation_warping(e, s)
    assert check_warping(w, naturality=True).ok
    bar, _ = warping_to_skew(w)
    report = CheckReport("roundtrip")
    compare_structures(report, "same", bar, s, ObjectSource.for_category(s.category))
    assert report.ok


def test_warping_report_on_chain_meet():
    report = warping_report(posetal_meet(ordinal(3)))
    assert report.ok, report
    assert report.checked["evaluation-roundtrip"] > 0


def test_endofunctor_category_refuses_large_base():
    with pytest.raises(PreconditionError):
        endofunctor_category(ordinal(4))


@settings(max_examples=3, deadline=None)
@given(st.integers(min_value=0, max_value=1000))
def test_closure_warpings_induce_closure_structures(seed):
    for w, expected in warping_corpus(seed):
        assert check_warping(w, naturality=True).ok
        bar, op = warping_to_skew(w)
        source = ObjectSource.for_category(bar.category)
        assert check_skew_axioms(bar, source).ok
        report = CheckReport("closure")
        compare_structures(report, "same", bar, expected, source)
        assert report.ok
