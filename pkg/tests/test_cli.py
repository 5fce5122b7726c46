from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewcat.cli.dsl import (
    KEYWORDS,
    CategoryDecl,
    Directive,
    MapDecl,
    ParseError,
    ResolutionError,
    SetDecl,
    SpecDocument,
    StructureDecl,
    SubcategoryDecl,
    TotalityError,
    parse,
    print_document,
)
from skewcat.cli.main import main
from skewcat.cli.runner import build_environment, report_json, run
from skewcat.report import SamplingConfig

SMALL = SamplingConfig(samples=10, fibre_bound=2)

ARROW = """\
category C {
  objects 0 1;
  mor f: 0 -> 1;
}
"""

SQUARE = """\
category Sq {
  objects 0 a b 1;
  mor i: 0 -> a; mor j: 0 -> b; mor p: a -> 1; mor q: b -> 1; mor d: 0 -> 1;
  comp p i = d; comp q j = d;
}
structure S on Sq = meet;
subcategory top of Sq { 0 a 1 }
run reflection S top;
"""


def test_parse_spec_style_map_without_trailing_semicolon():
    doc = parse("set U { u v }\ncategory O { objects 0; }\nmap xi: U -> O { u |-> 0; v |-> 0 }\n")
    assert doc.declarations[2] == MapDecl("xi", "U", "O", (("u", "0"), ("v", "0")))


def test_parse_category_and_directives():
    doc = parse(ARROW + "run check-category C;\nrun slice-skew C;\n")
    (c,) = doc.declarations
    assert c == CategoryDecl("C", ("0", "1"), (("f", "0", "1"),), ())
    assert doc.directives == (Directive("check-category", ("C",)), Directive("slice-skew", ("C",)))
    assert doc.directives[1].line == 6


def test_empty_document():
    assert parse("# nothing\n") == SpecDocument()


@pytest.mark.parametrize(
    "text, where",
    [
        ("category C { objects 0; mor f 0 -> 0; }", "1:31"),
        ("run frobnicate C;", "1:5"),
        ("run slice-skew;", "1:"),
        ("category C { objects 0;", "1:"),
        ("structure S on C = tensor;", "1:"),
        ("banana", "1:1"),
    ],
)
def test_parse_errors_carry_positions(text, where):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert str(err.value).startswith(where)


def test_unknown_names_are_resolution_errors_with_line():
    with pytest.raises(ResolutionError) as err:
        build_environment(parse(ARROW + "run slice-skew D;\n"))
    assert err.value.line == 5
    with pytest.raises(ResolutionError):
        build_environment(parse("category C {\n  objects 0;\n  mor f: 0 -> 7;\n}\n"))
    with pytest.raises(ResolutionError):
        build_environment(parse("set U { u }\nset U { v }\n"))


def test_missing_composite_is_a_totality_error():
    text = "category C {\n  objects 0 1 2;\n  mor f: 0 -> 1;\n  mor g: 1 -> 2;\n}\n"
    with pytest.raises(TotalityError) as err:
        build_environment(parse(text))
    assert err.value.line == 1


def test_map_must_be_total():
    with pytest.raises(TotalityError):
        build_environment(parse(ARROW + "set U { u v }\nmap m: U -> C { u |-> 1; }\n"))


reserved = set(KEYWORDS) | {"objects", "mor", "comp", "obj", "over", "of", "on", "meet", "right-projection"}
names = st.from_regex(r"[a-z][a-z0-9_]{0,3}", fullmatch=True).filter(lambda w: w not in reserved)


@st.composite
def documents(draw):
    decls = []
    objs = tuple(draw(st.lists(names, max_size=3, unique=True)))
    mors = tuple(draw(st.lists(st.tuples(names, names, names), max_size=2)))
    comps = tuple(draw(st.lists(st.tuples(names, names, names), max_size=2)))
    decls.append(CategoryDecl(draw(names), objs, mors, comps))
    decls.append(SetDecl(draw(names), tuple(draw(st.lists(names, max_size=3)))))
    decls.append(MapDecl(draw(names), draw(names), draw(names), tuple(draw(st.lists(st.tuples(names, names), max_size=3)))))
    decls.append(SubcategoryDecl(draw(names), draw(names), tuple(draw(st.lists(names, max_size=2)))))
    decls.append(StructureDecl(draw(names), draw(names), draw(st.sampled_from(["meet", "right-projection"]))))
    verbs = st.sampled_from([("slice-skew", 1), ("reflection", 2), ("lift-comonad", 2), ("warping", 1)])
    directives = []
    for verb, n in draw(st.lists(verbs, max_size=3)):
        directives.append(Directive(verb, tuple(draw(st.lists(names, min_size=n, max_size=n)))))
    return SpecDocument(tuple(draw(st.permutations(decls))), tuple(directives))


@settings(max_examples=60, deadline=None)
@given(documents())
def test_print_then_parse_round_trips(doc):
    assert parse(print_document(doc)) == doc


def test_runner_check_category_and_slice_skew_pass():
    report = run(parse(ARROW + "run check-category C;\nrun slice-skew C;\n"), SMALL)
    assert report["status"] == "pass"
    entries = report["directives"]
    assert [e["status"] for e in entries] == ["pass", "pass"]
    assert entries[1]["laws"]["pentagon"]["checked"] > 0
    assert entries[1]["laws"]["cardinality"]["violations"] == 0


def test_runner_reflective_lemma_rows_agree():
    text = ARROW + "subcategory top of C { 1 }\nrun reflective-lemma top;\n"
    (entry,) = run(parse(text), SMALL)["directives"]
    assert entry["status"] == "pass"
    for row in entry["info"]["table"].values():
        assert len(set(row.values())) == 1


def test_runner_reports_failing_reflection_with_witness():
    report = run(parse(SQUARE), SMALL)
    (entry,) = report["directives"]
    assert report["status"] == "fail" and entry["status"] == "fail"
    assert entry["witnesses"][0]["law"] == "condition:moninv"


def test_runner_precondition_is_an_error_entry():
    text = ARROW + "set U { u v }\nmap m: U -> C { u |-> 0; v |-> 0; }\nrun coreflection C m;\n"
    (entry,) = run(parse(text), SMALL)["directives"]
    assert entry["status"] == "error"
    assert "injective" in entry["error"]


def test_main_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.skew"
    good.write_text(ARROW + "run check-category C;\n")
    bad = tmp_path / "bad.skew"
    bad.write_text(SQUARE)
    broken = tmp_path / "broken.skew"
    broken.write_text("category C {")
    assert main(["check", str(good)]) == 0
    assert "overall: PASS" in capsys.readouterr().out
    assert main(["check", str(bad), "--samples", "10"]) == 1
    assert main(["check", str(broken)]) == 2
    assert "error: 1:" in capsys.readouterr().err
    assert main(["check", str(tmp_path / "missing.skew")]) == 2
    assert main(["check", str(good), "--samples", "0"]) == 2


def test_main_json_output(tmp_path, capsys):
    src = tmp_path / "doc.skew"
    src.write_text(ARROW + "run check-category C;\n")
    out = tmp_path / "report.json"
    assert main(["check", str(src), "--json", str(out), "--seed", "3"]) == 0
    report = json.loads(out.read_text())
    assert report["version"] == 1 and report["seed"] == 3
    assert report["config"] == {"samples": 50, "fibre_bound": 3}
    assert "seconds" not in report["directives"][0]
    capsys.readouterr()
    assert main(["check", str(src), "--json", "-", "--timing"]) == 0
    streamed = json.loads(capsys.readouterr().out)
    assert "seconds" in streamed["directives"][0]


def test_report_json_is_deterministic():
    doc = parse(ARROW + "run slice-skew C;\n")
    assert report_json(run(doc, SMALL)) == report_json(run(doc, SMALL))


def test_demo_document_prints_and_parses(capsys):
    assert main(["demo", "section5", "--print-document"]) == 0
    assert parse(capsys.readouterr().out).directives
