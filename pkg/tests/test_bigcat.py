from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from skewcat.bigcat import (
    FibredSet,
    FibreMap,
    IndexMap,
    SliceCategory,
    check_fibre_map,
    coproduct,
    direct_image,
    inverse_image,
    slice_adjunction,
)
from skewcat.fincat import check_adjunction
from skewcat.report import ObjectSource, SamplingConfig

small_sizes = st.lists(st.integers(min_value=0, max_value=2), min_size=1, max_size=3)


def fibred(sizes, prefix="e"):
    base = tuple(range(len(sizes)))
    k, fibres = 0, []
    for n in sizes:
        fibres.append([f"{prefix}{k + i}" for i in range(n)])
        k += n
    return FibredSet(base, fibres)


def test_one_point_base_counts_functions():
    S = SliceCategory(("*",))
    x, y = FibredSet(("*",), [["a", "b"]]), FibredSet(("*",), [["p", "q", "r"]])
    assert len(S.hom(x, y)) == 3**2 == S.hom_size(x, y)


def test_empty_fibre_hom_nonempty_iff_nonempty_fibres_land_in_nonempty_fibres():
    S = SliceCategory((0, 1))
    x = FibredSet((0, 1), [[], ["a"]])
    assert len(S.hom(x, FibredSet((0, 1), [["p"], []]))) == 0
    assert len(S.hom(x, FibredSet((0, 1), [[], ["q"]]))) == 1


@settings(max_examples=40, deadline=None)
@given(small_sizes, st.data())
def test_hom_size_matches_enumeration_and_contains_identity(sizes, data):
    other = data.draw(st.lists(st.integers(min_value=0, max_value=2), min_size=len(sizes), max_size=len(sizes)))
    S = SliceCategory(tuple(range(len(sizes))))
    x, y = fibred(sizes, "a"), fibred(other, "b")
    homs = S.hom(x, y)
    assert len(homs) == S.hom_size(x, y)
    for m in homs:
        check_fibre_map(m)
    assert S.identity(x) in S.hom(x, x)


def test_direct_image_identity_keeps_fibres():
    xi = IndexMap(["u", "v"], ["u", "v"], {"u": "u", "v": "v"})
    a = FibredSet(("u", "v"), [["a"], ["b", "c"]])
    assert direct_image(xi).obj(a) == a


def test_direct_image_sums_fibres():
    xi = IndexMap(["u"], [0, 1], {"u": 0})
    na = direct_image(xi).obj(FibredSet(("u",), [["a"]]))
    assert na.fibre(0) == ("a",) and na.fibre(1) == ()
    xi2 = IndexMap(["u", "v"], [0], {"u": 0, "v": 0})
    assert len(direct_image(xi2).obj(FibredSet(("u", "v"), [["a"], ["b"]])).fibre(0)) == 2


def test_inverse_image_pulls_back():
    xi = IndexMap(["u", "v"], [0, 1], {"u": 0, "v": 0})
    x = FibredSet((0, 1), [["p", "q"], ["r"]])
    rx = inverse_image(xi).obj(x)
    assert [e for e, _ in rx.fibre("u")] == ["p", "q"]
    assert [e for e, _ in rx.fibre("v")] == ["p", "q"]
    assert inverse_image(xi).obj(FibredSet((0, 1), [[], []])).sizes() == (0, 0)


def test_inverse_image_along_identity_is_identity_like():
    xi = IndexMap([0, 1], [0, 1], {0: 0, 1: 1})
    x = FibredSet((0, 1), [["p"], ["q", "r"]])
    assert inverse_image(xi).obj(x).sizes() == x.sizes()


def test_bijective_index_map_gives_invertible_unit_and_counit():
    xi = IndexMap(["u", "v"], [0, 1], {"u": 1, "v": 0})
    adj = slice_adjunction(xi)
    config = SamplingConfig(samples=20)
    report = check_adjunction(
        adj, ObjectSource.sampled(adj.lower, config, "U"), ObjectSource.sampled(adj.upper, config, "O")
    )
    assert report.ok and report.info["unit-invertible"] and report.info["counit-invertible"]


def test_injective_counit_is_identity_on_image_and_empty_elsewhere():
    mu = IndexMap(["u"], [0, 1], {"u": 1})
    adj = slice_adjunction(mu)
    x = FibredSet((0, 1), [["p", "q"], ["r"]])
    eps = adj.counit(x)
    assert eps.dom.fibre(0) == ()
    assert [eps(e) for e in eps.dom.fibre(1)] == ["r"]


def test_constant_map_counit_not_invertible():
    xi = IndexMap(["u", "v"], [0], {"u": 0, "v": 0})
    adj = slice_adjunction(xi)
    x = FibredSet((0,), [["p"]])
    eps = adj.counit(x)
    assert len(eps.dom.fibre(0)) == 2
    assert not adj.upper.is_iso(eps)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_slice_adjunction_triangles_hold(seed):
    rng = random.Random(seed)
    dom = [f"u{i}" for i in range(rng.randint(1, 3))]
    cod = list(range(rng.randint(1, 3)))
    xi = IndexMap(dom, cod, {u: rng.choice(cod) for u in dom})
    adj = slice_adjunction(xi)
    config = SamplingConfig(samples=10, seed=seed)
    report = check_adjunction(
        adj, ObjectSource.sampled(adj.lower, config, "U"), ObjectSource.sampled(adj.upper, config, "O")
    )
    assert report.ok
    if xi.injective:
        assert report.info["unit-invertible"]


def test_coproduct_injections_are_fibre_maps():
    x, y = FibredSet((0, 1), [["a"], []]), FibredSet((0, 1), [["b"], ["c"]])
    s, i, j = coproduct(x, y)
    check_fibre_map(i)
    check_fibre_map(j)
    assert s.sizes() == (2, 1)
    assert isinstance(i, FibreMap) and i("a") == ("l", "a") and j("c") == ("r", "c")
