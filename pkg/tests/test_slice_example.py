from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewcat.bigcat import FibredSet, IndexMap, slice_adjunction
from skewcat.fincat import discrete, is_fully_faithful, ordinal, terminal_category, walking_arrow
from skewcat.report import PreconditionError, SamplingConfig
from skewcat.slice_example import (
    build_slice_skew,
    full_image,
    full_image_functor,
    idempotent_slice_comparison,
    injective_coreflection_demo,
    noninjective_comonad_demo,
    slice_cardinality,
)

SMALL = SamplingConfig(samples=12, fibre_bound=2)


def test_walking_arrow_tensor_of_point_over_zero_and_point_over_one():
    C = walking_arrow()
    s = build_slice_skew(C)
    x = FibredSet((0, 1), [["x"], []])
    y = FibredSet((0, 1), [[], ["y"]])
    t = s.tensor(x, y)
    assert t.fibre(0) == ()
    assert t.fibre(1) == (("x", C.mor("f"), "y"),)


def _fibred(sizes):
    k, fibres = 0, []
    for n in sizes:
        fibres.append([f"e{k + i}" for i in range(n)])
        k += n
    return FibredSet(tuple(range(len(sizes))), fibres)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_tensor_cardinality_matches_hom_count_formula(xs, ys):
    C = ordinal(3)
    s = build_slice_skew(C)
    x, y = _fibred(xs), _fibred(ys)
    t = s.tensor(x, y)
    for j in C.objects():
        assert len(t.fibres[j]) == slice_cardinality(C, x, y, j)
    # independent count on the chain: C(i, j) has one arrow iff i <= j
    assert t.sizes() == tuple(sum(xs[: j + 1]) * ys[j] for j in range(3))


def test_unit_is_terminal_and_lambda_sends_to_unique_arrow():
    C = walking_arrow()
    s = build_slice_skew(C)
    assert s.unit.sizes() == (1, 1)
    y = FibredSet((0, 1), [["a"], ["b"]])
    lam = s.lam(y)
    # (I (x) Y)_j counts arrows into j times |Y_j|
    assert lam.dom.sizes() == (1, 2)
    assert [lam(z) for z in lam.dom.elements()] == ["a", "b", "b"]


def test_injective_inclusion_of_top_object():
    C = walking_arrow()
    mu = IndexMap(["u"], ["0", "1"], {"u": "1"})
    report = injective_coreflection_demo(C, mu, SMALL)
    assert report.ok, report
    x, y = report.info["phi-non-invertible"]
    assert x.sizes() and y.sizes()


def test_injective_chain_demo_and_full_image():
    C = ordinal(3)
    mu = IndexMap(["u", "v"], ["0", "1", "2"], {"u": "1", "v": "2"})
    report = injective_coreflection_demo(C, mu, SMALL)
    assert report.ok, report
    fi = full_image(mu, C)
    assert len(fi.objects()) == 2 and len(fi.morphisms()) == 3
    assert is_fully_faithful(full_image_functor(mu, C, fi))


def test_injective_demo_rejects_non_injective_map():
    C = walking_arrow()
    xi = IndexMap(["u", "v"], ["0", "1"], {"u": "0", "v": "0"})
    with pytest.raises(PreconditionError):
        injective_coreflection_demo(C, xi, SMALL)
    with pytest.raises(PreconditionError):
        idempotent_slice_comparison(C, xi, SMALL)


def test_full_image_of_constant_map_is_codiscrete_on_terminal():
    C = terminal_category()
    xi = IndexMap(["a", "b"], ["0"], {"a": "0", "b": "0"})
    fi = full_image(xi, C)
    assert len(fi.objects()) == 2
    for p, q in itertools.product(fi.objects(), repeat=2):
        assert len(fi.hom(p, q)) == 1


def test_constant_map_comonad_route_gives_codiscrete_structure():
    C = terminal_category()
    xi = IndexMap(["a", "b"], ["0"], {"a": "0", "b": "0"})
    report = noninjective_comonad_demo(C, xi, SMALL)
    assert report.ok, report
    tr = report.info["structure"]
    a = FibredSet(("a", "b"), [["p"], []])
    b = FibredSet(("a", "b"), [["q"], ["r"]])
    # every u maps to every v exactly once
    assert tr.tensor(a, b).sizes() == (1, 1)


def test_comonad_route_agrees_with_injective_route_on_injective_map():
    C = walking_arrow()
    mu = IndexMap(["u"], ["0", "1"], {"u": "1"})
    via_comonad = noninjective_comonad_demo(C, mu, SMALL)
    via_coreflection = injective_coreflection_demo(C, mu, SMALL)
    assert via_comonad.ok and via_coreflection.ok
    a = FibredSet(("u",), [["p", "q"]])
    b = FibredSet(("u",), [["r"]])
    assert via_comonad.info["structure"].tensor(a, b).sizes() == via_coreflection.info["structure"].tensor(a, b).sizes()


def test_idempotent_comparison_for_injective_map():
    C = walking_arrow()
    mu = IndexMap(["u"], ["0", "1"], {"u": "0"})
    assert idempotent_slice_comparison(C, mu, SMALL).ok


def test_discrete_bijection_is_fibrewise_product():
    C = discrete(2)
    mu = IndexMap(["u", "v"], ["0", "1"], {"u": "1", "v": "0"})
    report = injective_coreflection_demo(C, mu, SMALL)
    assert report.ok
    bar = report.info["structure"]
    a = FibredSet(("u", "v"), [["p", "q"], ["r"]])
    assert bar.tensor(a, a).sizes() == (4, 1)
    assert slice_adjunction(mu).lower.base == ("u", "v")
