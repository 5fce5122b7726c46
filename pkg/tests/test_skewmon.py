from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewcat.bigcat import FibredSet, FibreMap, SliceCategory
from skewcat.corpus import finite_structures, posetal_meet, right_projection, square_lattice, meet_structure
from skewcat.fincat import (
    discrete,
    find_reflection,
    identity_adjunction,
    identity_functor,
    monoid_category,
    poset_category,
    terminal_category,
    walking_arrow,
)
from skewcat.report import ObjectSource, SamplingConfig, StructuralError
from skewcat.skewmon import (
    SKEW_AXIOMS,
    OpmonoidalStructure,
    SkewMonoidalStructure,
    check_opmonoidal,
    check_skew_axioms,
    isomorphic,
    left_hom,
    reflective_lemma,
    right_hom,
)
from skewcat.slice_example import build_slice_skew


def all_fibred_sets(base, bound):
    out = []
    for sizes in itertools.product(range(bound + 1), repeat=len(base)):
        k, fibres = 0, []
        for n in sizes:
            fibres.append([f"e{k + i}" for i in range(n)])
            k += n
        out.append(FibredSet(base, fibres))
    return out


def test_discrete_slice_is_fibrewise_product_and_passes_by_enumeration():
    C = discrete(2)
    s = build_slice_skew(C)
    pool = all_fibred_sets(s.category.base, 2)
    report = check_skew_axioms(s, ObjectSource(pool, exhaustive=True))
    assert report.ok
    assert report.checked["pentagon"] == len(pool) ** 4
    for x, y in itertools.product(pool, repeat=2):
        t = s.tensor(x, y)
        assert t.sizes() == tuple(a * b for a, b in zip(x.sizes(), y.sizes()))
    for x in pool:
        assert s.category.is_iso(s.lam(x))


def test_walking_arrow_slice_passes_on_samples():
    s = build_slice_skew(walking_arrow())
    source = ObjectSource.sampled(s.category, SamplingConfig(fibre_bound=2), "wa")
    report = check_skew_axioms(s, source, naturality=True)
    assert report.ok
    assert set(SKEW_AXIOMS) <= set(report.checked)


def _with_rho(s: SkewMonoidalStructure, rho) -> SkewMonoidalStructure:
    return SkewMonoidalStructure(s.category, s.tensor, s.tensor_mor, s.unit, s.alpha, s.lam, rho, name="bent")


def test_rho_through_idempotent_breaks_right_unit_assoc():
    M = monoid_category(["1", "e"], lambda g, f: "e" if "e" in (g, f) else "1", "1", name="E")
    s = build_slice_skew(M)
    S = s.category
    e = M.mor("e")

    def rho(x):
        return FibreMap(x, s.tensor(x, S.terminal()), [(a, e, ("*", 0)) for a in x.elements()])

    x = FibredSet((0,), [["a"]])
    report = check_skew_axioms(_with_rho(s, rho), ObjectSource([x], exhaustive=True))
    assert not report.passed("right-unit-assoc")
    assert report.failures("right-unit-assoc")[0].witness == (x, x)


def test_rho_through_non_identity_arrow_is_ill_typed_in_walking_arrow():
    C = walking_arrow()
    s = build_slice_skew(C)
    S = s.category
    f = C.mor("f")

    def rho(x):
        return FibreMap(x, s.tensor(x, S.terminal()), [(a, f, ("*", 1)) for a in x.elements()])

    x = FibredSet((0, 1), [["a"], []])
    with pytest.raises(StructuralError):
        check_skew_axioms(_with_rho(s, rho), ObjectSource([x], exhaustive=True))


@settings(max_examples=4, deadline=None)
@given(st.integers(min_value=0, max_value=1000))
def test_corpus_structures_pass(seed):
    for s in finite_structures(seed):
        assert check_skew_axioms(s, naturality=True).ok, s.name


def test_identity_functor_is_strong_opmonoidal():
    s = finite_structures(0)[0]
    C = s.category
    o = OpmonoidalStructure(identity_functor(C), s, s, lambda x, y: C.identity(s.tensor(x, y)), C.identity(s.unit))
    report = check_opmonoidal(o)
    assert report.ok and report.info["strong"]


def test_trivial_carrier_has_homs():
    s = right_projection(terminal_category())
    assert left_hom(s, 0, 0).obj == 0
    assert right_hom(s, 0, 0).obj == 0


def _heyting(elements, y, z):
    """Largest h with h meet y below z, or None."""
    below = [h for h in elements if h & y <= z]
    tops = [h for h in below if all(g <= h for g in below)]
    return tops[0] if tops else None


def test_left_hom_of_meet_is_relative_pseudocomplement():
    P, elements = square_lattice()
    s = meet_structure(P, elements)
    for y, z in itertools.product(range(len(elements)), repeat=2):
        w = left_hom(s, y, z)
        expected = _heyting(elements, elements[y], elements[z])
        assert w is not None and elements[w.obj] == expected


def test_left_hom_absent_in_diamond_lattice():
    names = ["0", "a", "b", "c", "1"]
    leq = lambda p, q: p == q or p == "0" or q == "1"
    s = posetal_meet(poset_category(names, leq, name="M3"))
    a, bottom = names.index("a"), names.index("0")
    assert left_hom(s, a, bottom) is None
    assert left_hom(s, a, a) is not None


def test_reflective_lemma_examples():
    C = walking_arrow()
    adj = find_reflection(C, [1])
    assert reflective_lemma(adj, 1) == dict.fromkeys("i ii iii iv v".split(), True)
    assert reflective_lemma(adj, 0) == dict.fromkeys("i ii iii iv v".split(), False)
    ident = identity_adjunction(C)
    for z in C.objects():
        assert all(reflective_lemma(ident, z).values())


def test_isomorphic_search():
    C = walking_arrow()
    assert isomorphic(C, 0, 0) == C.identity(0)
    assert isomorphic(C, 0, 1) is None
    assert isinstance(SliceCategory((0,)).inverse(FibreMap(FibredSet((0,), [["a"]]), FibredSet((0,), [["b"]]), ["b"])), FibreMap)
