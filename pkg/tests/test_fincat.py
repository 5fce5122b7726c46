from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewcat.corpus import random_category
from skewcat.fincat import (
    FinCategory,
    Functor,
    NatTransformation,
    check_adjunction,
    check_category,
    check_functor,
    check_natural,
    constant_functor,
    find_reflection,
    identity_adjunction,
    identity_functor,
    identity_transformation,
    is_fully_faithful,
    is_invertible,
    ordinal,
    parallel_pair,
    product_category,
    terminal_category,
    walking_arrow,
    walking_iso,
)
from skewcat.report import StructuralError

seeds = st.integers(min_value=0, max_value=10_000)


def test_terminal_category_passes():
    c = terminal_category()
    assert len(c.objects()) == 1 and len(c.morphisms()) == 1
    assert check_category(c).ok


def test_walking_arrow_passes():
    report = check_category(walking_arrow())
    assert report.ok
    assert report.checked["associativity"] > 0


def test_redirected_identity_composite_is_a_structural_error_at_the_pair():
    c = walking_arrow()
    f, id0 = c.mor("f"), c.mor("id0")
    c.table[(f, id0)] = id0
    with pytest.raises(StructuralError) as err:
        check_category(c)
    assert (f, id0) in err.value.witness


def test_well_typed_wrong_composite_is_a_law_violation():
    c = parallel_pair()
    f, g, id0 = c.mor("f"), c.mor("g"), c.mor("id0")
    c.table[(f, id0)] = g
    report = check_category(c)
    assert not report.passed("right-identity")
    assert (f, id0) in [v.witness for v in report.violations]


def test_missing_composite_is_reported():
    c = walking_arrow()
    del c.table[(c.mor("f"), c.mor("id0"))]
    with pytest.raises(StructuralError, match="not total"):
        check_category(c)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_random_categories_are_categories(seed):
    assert check_category(random_category(random.Random(seed))).ok


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_identity_and_constant_functors_pass(seed):
    c = random_category(random.Random(seed))
    assert check_functor(identity_functor(c)).ok
    for o in c.objects():
        assert check_functor(constant_functor(c, c, o)).ok


def test_functor_sending_arrow_to_wrong_identity_breaks_target():
    c = walking_arrow()
    F = Functor(c, c, [0, 0], [c.mor("id0"), c.mor("id1"), c.mor("id1")], name="bad")
    report = check_functor(F)
    assert not report.passed("preserves-tgt") or not report.passed("preserves-src")
    assert (c.mor("f"),) in [v.witness for v in report.violations]


def test_identity_transformation_passes():
    c = walking_iso()
    assert check_natural(identity_transformation(identity_functor(c))).ok


def test_walking_iso_swap_family_is_natural():
    c = walking_iso()
    f, g = c.mor("f"), c.mor("g")
    swap = Functor(c, c, [1, 0], [c.mor("id1"), c.mor("id0"), g, f], name="swap")
    assert check_functor(swap).ok
    t = NatTransformation(identity_functor(c), swap, [f, g], name="t")
    assert check_natural(t).ok


def test_non_commuting_parallel_component_is_a_violation():
    c = parallel_pair()
    f, g = c.mor("f"), c.mor("g")
    # a functor Par -> Par collapsing both arrows onto f, and one collapsing both onto g
    F = Functor(c, c, [0, 1], [c.mor("id0"), c.mor("id1"), f, f], name="F")
    G = Functor(c, c, [0, 1], [c.mor("id0"), c.mor("id1"), g, g], name="G")
    # components at 0 and 1: identities do not commute with f vs g
    t = NatTransformation(F, G, [c.mor("id0"), c.mor("id1")], name="t")
    report = check_natural(t)
    assert not report.ok


def test_is_invertible_examples():
    a = walking_arrow()
    assert is_invertible(a.mor("id0"), a) == a.mor("id0")
    assert is_invertible(a.mor("f"), a) is None
    i = walking_iso()
    assert is_invertible(i.mor("f"), i) == i.mor("g")
    assert is_invertible(i.mor("g"), i) == i.mor("f")


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_identities_are_their_own_inverses(seed):
    c = random_category(random.Random(seed))
    for o in c.objects():
        assert is_invertible(c.identity(o), c) == c.identity(o)


def test_reflection_of_chain_onto_top():
    c = ordinal(3)
    adj = find_reflection(c, [2])
    assert adj is not None
    report = check_adjunction(adj)
    assert report.ok and report.info["counit-invertible"]


def test_walking_arrow_onto_zero_is_not_reflective():
    assert find_reflection(walking_arrow(), [0]) is None


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_found_reflections_satisfy_triangles(seed):
    c = random_category(random.Random(seed), max_objects=3, max_morphisms=8)
    for o in c.objects():
        adj = find_reflection(c, [o])
        if adj is not None:
            assert check_adjunction(adj).ok
            assert is_fully_faithful(adj.right)


def test_identity_adjunction():
    report = check_adjunction(identity_adjunction(walking_iso()))
    assert report.ok and report.info["unit-invertible"] and report.info["counit-invertible"]


def test_product_category_is_a_category():
    p = product_category(walking_arrow(), walking_iso())
    assert isinstance(p, FinCategory)
    assert len(p.objects()) == 4 and len(p.morphisms()) == 3 * 4
    assert check_category(p).ok
