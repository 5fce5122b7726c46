"""Acceptance criteria 1-10; each test prints one PASS/FAIL line."""

from __future__ import annotations

import shutil
import subprocess
import sys
import time

import pytest

from skewcat.corpus import (
    failing_reflection,
    finite_structures,
    random_categories,
    reflection_corpus,
    slice_instances,
    warping_corpus,
)
from skewcat.reflection import check_closed_equivalences, check_reflection_condition, reflection_theorem_report
from skewcat.report import ObjectSource, SamplingConfig
from skewcat.skewmon import SKEW_AXIOMS, check_opmonoidal, check_skew_axioms, reflective_lemma
from skewcat.slice_example import (
    build_slice_skew,
    idempotent_slice_comparison,
    injective_coreflection_demo,
    noninjective_comonad_demo,
)
from skewcat.warping import WARPING_AXIOMS, warping_report, warping_to_skew


@pytest.fixture
def verdict(capsys):
    def emit(number: int, title: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\ncriterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, f"criterion {number}: {title} {detail}"

    return emit


def _slice_runs():
    config = SamplingConfig(samples=50, fibre_bound=3)
    for C in random_categories(0, 20, max_objects=4, max_morphisms=12):
        s = build_slice_skew(C)
        yield C, s, ObjectSource.sampled(s.category, config, C.name)


def test_criterion_01_slice_coherence(verdict):
    start = time.perf_counter()
    count, bad, per_law = 0, 0, []
    for C, s, source in _slice_runs():
        report = check_skew_axioms(s, source)
        count += 1
        # unit-unit has no object variables and is a single equation
        per_law += [report.checked[law] for law in SKEW_AXIOMS if law != "unit-unit"]
        bad += report.checked["unit-unit"] != 1
        bad += len(report.violations)
    checked = min(per_law)
    elapsed = time.perf_counter() - start
    ok = count >= 20 and checked >= 50 and bad == 0 and elapsed < 30
    verdict(1, "slice structures pass the five axioms", ok, f"{count} categories, >= {checked} tuples per law, {bad} violations, {elapsed:.1f}s")


def test_criterion_02_cardinality(verdict):
    pairs, bad = 0, 0
    for C, s, source in _slice_runs():
        for x, y in source.tuples(2, "cardinality"):
            t = s.tensor(x, y)
            for j in C.objects():
                expected = sum(len(x.fibres[i]) * len(C.hom(i, j)) * len(y.fibres[j]) for i in C.objects())
                bad += len(t.fibres[j]) != expected
            pairs += 1
    verdict(2, "tensor fibre sizes match the hom-count sum", pairs > 0 and bad == 0, f"{pairs} pairs, {bad} mismatches")


def test_criterion_03_reflective_lemma(verdict):
    corpus = reflection_corpus(0)
    rows, disagreements = 0, 0
    for inst in corpus:
        for z in inst.adjunction.lower.objects():
            rows += 1
            disagreements += len(set(reflective_lemma(inst.adjunction, z).values())) != 1
    ok = len(corpus) >= 20 and disagreements == 0
    verdict(3, "five lemma conditions agree", ok, f"{len(corpus)} reflections, {rows} objects, {disagreements} disagreements")


def test_criterion_04_reflection_theorem(verdict):
    held, bad = 0, 0
    for inst in reflection_corpus(0):
        report = reflection_theorem_report(inst.adjunction, inst.structure)
        if report.passed("condition:moninv"):
            held += 1
            ok = report.ok and report.checked.get("psi(X,NB)-invertible", 0) > 0
            ok = ok and all(report.passed(f"reflected:{law}") for law in SKEW_AXIOMS)
            bad += not ok
    failing = failing_reflection()
    cond = check_reflection_condition(failing.adjunction, failing.structure)
    witness = cond.violations[0].witness if cond.violations else None
    ok = held > 0 and bad == 0 and witness is not None
    verdict(4, "reflected structures where the condition holds; failing pair reported", ok, f"{held} reflections, {bad} bad, witness {witness}")


def test_criterion_05_closed_equivalences(verdict):
    instances, compared, applied, bad = 0, 0, 0, 0
    for inst in reflection_corpus(0) + [failing_reflection()]:
        report = check_closed_equivalences(inst.adjunction, inst.structure)
        instances += 1
        compared += any(law.startswith(("moninvY<->", "lclosed<->")) for law in report.checked)
        bad += not report.ok
        if report.info["skclosed-applies"] and report.info["moninv"]:
            applied += 1
            bad += not report.passed("left-closed-hom")
            bad += any(w is None for w in report.info["N[B,C]~[NB,NC]"].values())
    ok = compared > 0 and applied > 0 and bad == 0
    verdict(5, "invertibility families agree; reflected internal homs", ok, f"{instances} instances, {compared} compared, {applied} with homs, {bad} bad")


def test_criterion_06_injective_slice(verdict):
    config = SamplingConfig(samples=20, fibre_bound=2)
    pairs, bad, witnessed = 0, 0, 0
    for C, mu in slice_instances(0, 10, injective=True):
        report = injective_coreflection_demo(C, mu, config)
        pairs += 1
        bad += not report.ok or not all(report.checked.get(law, 0) > 0 for law in ("formula-bijection", "phi(NA,Y)-invertible"))
        bad += not any(law.startswith("full-image:") for law in report.checked)
        witnessed += report.info["phi-non-invertible"] is not None
    ok = pairs >= 10 and bad == 0 and witnessed > 0
    verdict(6, "coreflected tensor formula and full-image isomorphism", ok, f"{pairs} pairs, {bad} bad, {witnessed} non-invertible phi witnesses")


def test_criterion_07_warping(verdict):
    runs, bad = 0, 0
    for s in finite_structures(0):
        report = warping_report(s)
        runs += 1
        bad += not report.ok or report.checked.get("identity-roundtrip", 0) == 0
    for w, _expected in warping_corpus(0):
        bar, op = warping_to_skew(w)
        runs += 1
        bad += not check_skew_axioms(bar).ok or not check_opmonoidal(op).ok
    verdict(7, "warping roundtrip, induced axioms and opmonoidal T", bad == 0, f"{runs} warpings, {bad} bad")


def test_criterion_08_comonad_lift(verdict):
    config = SamplingConfig(samples=20, fibre_bound=2)
    start = time.perf_counter()
    pairs, noninjective, bad = 0, 0, 0
    needed = ("comonad:am1", "comonad:am2", "comonad:am3-delta", "comonad:am3-eps", "gamma-precondition", "U:U-tensor-objects")
    needed += tuple(f"lifted-warping:{law}" for law in WARPING_AXIOMS)
    for C, xi in slice_instances(0, 10, injective=False):
        report = noninjective_comonad_demo(C, xi, config)
        pairs += 1
        noninjective += not xi.injective
        bad += not report.ok or not all(law in report.checked for law in needed)
        bad += not any(law.startswith("full-image:") for law in report.checked)
    elapsed = time.perf_counter() - start
    ok = pairs >= 10 and noninjective > 0 and bad == 0 and elapsed < 60
    verdict(8, "comonad route on coalgebras", ok, f"{pairs} pairs, {noninjective} non-injective, {bad} bad, {elapsed:.1f}s")


def test_criterion_09_idempotent_comparison(verdict):
    config = SamplingConfig(samples=20, fibre_bound=2)
    pairs, bad = 0, 0
    for C, mu in slice_instances(0, 10, injective=True):
        report = idempotent_slice_comparison(C, mu, config)
        pairs += 1
        bad += not report.ok or report.checked.get("link", 0) == 0
    verdict(9, "link diagram and lift-route versus coreflection-route", bad == 0, f"{pairs} pairs, {bad} bad")


def test_criterion_10_determinism(verdict):
    exe = shutil.which("skewcat")
    cmd = [exe] if exe else [sys.executable, "-c", "import sys; from skewcat.cli.main import main; sys.exit(main())"]
    cmd += ["demo", "section8", "--seed", "7", "--json", "-"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    ok = first.returncode == 0 and first.stdout == second.stdout and len(first.stdout) > 0
    verdict(10, "demo section8 --seed 7 JSON is byte-identical", ok, f"{len(first.stdout)} bytes, exit {first.returncode}")
