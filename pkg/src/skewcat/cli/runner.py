"""Resolve a parsed document into categories and maps, run its directives, and build the report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from ..bigcat import FibredSet, FibreMap, IndexMap, SliceCategory
from ..comonad_lift import Coalgebra, CoalgebraMorphism
from ..corpus import posetal_meet, right_projection
from ..fincat import FinCategory, Functor, NatTransformation, check_category, check_functor, check_natural, find_reflection
from ..reflection import check_closed_equivalences, reflection_theorem_report
from ..report import CheckReport, ObjectSource, PreconditionError, SamplingConfig, StructuralError
from ..skewmon import check_skew_axioms, reflective_lemma
from ..slice_example import (
    build_slice_skew,
    idempotent_slice_comparison,
    injective_coreflection_demo,
    noninjective_comonad_demo,
    slice_cardinality,
)
from ..warping import warping_report
from .dsl import (
    DIRECTIVES,
    CategoryDecl,
    Directive,
    FibredDecl,
    FunctorDecl,
    MapDecl,
    NatDecl,
    ResolutionError,
    SetDecl,
    SpecDocument,
    StructureDecl,
    SubcategoryDecl,
    TotalityError,
)

REPORT_VERSION = 1
WITNESS_LIMIT = 20


# -- environment ---------------------------------------------------------------------


@dataclass
class Environment:
    """Declared names, each resolved to ``(kind, value)``."""

    entries: dict[str, tuple[str, Any]] = field(default_factory=dict)

    def add(self, name: str, kind: str, value: Any, line: int) -> None:
        if name in self.entries:
            raise ResolutionError(f"{name!r} is declared twice", line)
        self.entries[name] = (kind, value)

    def get(self, name: str, kinds: tuple[str, ...], line: int, what: str = "") -> tuple[str, Any]:
        if name not in self.entries:
            raise ResolutionError(f"unknown name {name!r}" + (f" ({what})" if what else ""), line)
        kind, value = self.entries[name]
        if kind not in kinds:
            raise ResolutionError(f"{name!r} is a {kind}, expected {' or '.join(kinds)}", line)
        return kind, value


def _unique(names, what: str, line: int) -> None:
    seen = set()
    for n in names:
        if n in seen:
            raise ResolutionError(f"{what} {n!r} is listed twice", line)
        seen.add(n)


def build_category(d: CategoryDecl) -> FinCategory:
    """Names must resolve, and every composable pair of non-identities needs a ``comp`` entry."""
    _unique(d.objects, "object", d.line)
    objects = set(d.objects)
    ids = {f"id{o}": o for o in d.objects}
    arrows: dict[str, tuple[str, str]] = {}
    for m, s, t in d.morphisms:
        for o in (s, t):
            if o not in objects:
                raise ResolutionError(f"morphism {m!r} refers to unknown object {o!r}", d.line)
        if m in arrows:
            raise ResolutionError(f"morphism {m!r} is declared twice", d.line)
        if m in ids and (s, t) != (ids[m], ids[m]):
            raise ResolutionError(f"{m!r} names an identity but is declared {s} -> {t}", d.line)
        if m in objects:
            raise ResolutionError(f"{m!r} names both an object and a morphism", d.line)
        arrows[m] = (s, t)
    typing = {**{i: (o, o) for i, o in ids.items()}, **arrows}
    comp: dict[tuple[str, str], str] = {}
    for g, f, h in d.comps:
        for x in (g, f, h):
            if x not in typing:
                raise ResolutionError(f"composition entry mentions unknown morphism {x!r}", d.line)
        if typing[f][1] != typing[g][0]:
            raise TotalityError(f"comp {g} {f}: {f} does not end where {g} starts", d.line)
        if typing[h] != (typing[f][0], typing[g][1]):
            raise TotalityError(f"comp {g} {f} = {h}: {h} has the wrong source or target", d.line)
        if (g, f) in comp and comp[(g, f)] != h:
            raise TotalityError(f"comp {g} {f} is given two different values", d.line)
        comp[(g, f)] = h
    plain = [m for m in arrows if m not in ids]
    missing = [(g, f) for f in plain for g in plain if arrows[f][1] == arrows[g][0] and (g, f) not in comp]
    if missing:
        g, f = missing[0]
        raise TotalityError(f"no comp entry for {g} after {f} ({len(missing)} composable pair(s) missing)", d.line)
    return FinCategory.from_names(d.objects, arrows, comp, name=d.name)


def _elements(env: Environment, name: str, line: int) -> tuple:
    kind, value = env.get(name, ("set", "category"), line)
    return value if kind == "set" else value.obj_names


def build_map(env: Environment, d: MapDecl) -> IndexMap:
    dom = _elements_of_set(env, d.dom, d.line)
    cod = _elements(env, d.cod, d.line)
    mapping = {}
    for a, b in d.pairs:
        if a not in dom:
            raise ResolutionError(f"{a!r} is not an element of {d.dom}", d.line)
        if b not in cod:
            raise ResolutionError(f"{b!r} is not an element of {d.cod}", d.line)
        if a in mapping:
            raise ResolutionError(f"{a!r} is mapped twice", d.line)
        mapping[a] = b
    missing = [a for a in dom if a not in mapping]
    if missing:
        raise TotalityError(f"map {d.name} has no image for {missing[0]!r}", d.line)
    return IndexMap(dom, cod, mapping, name=d.name)


def _elements_of_set(env: Environment, name: str, line: int) -> tuple:
    return env.get(name, ("set",), line)[1]


def build_fibred(env: Environment, d: FibredDecl) -> FibredSet:
    base = _elements(env, d.base, d.line)
    fibres: dict[str, tuple] = {}
    for i, es in d.fibres:
        if i not in base:
            raise ResolutionError(f"{i!r} is not an index of {d.base}", d.line)
        if i in fibres:
            raise ResolutionError(f"fibre over {i!r} is given twice", d.line)
        fibres[i] = es
    seen = [e for es in fibres.values() for e in es]
    _unique(seen, "element", d.line)
    return FibredSet.over(base, fibres)


def build_functor(env: Environment, d: FunctorDecl) -> Functor:
    C = env.get(d.dom, ("category",), d.line)[1]
    D = env.get(d.cod, ("category",), d.line)[1]
    omap: dict[str, str] = {}
    for a, b in d.objects:
        if a not in C.obj_names or b not in D.obj_names:
            raise ResolutionError(f"obj {a} |-> {b} does not name objects of {d.dom} and {d.cod}", d.line)
        if a in omap:
            raise ResolutionError(f"object {a!r} is mapped twice", d.line)
        omap[a] = b
    mmap: dict[str, str] = {}
    for a, b in d.morphisms:
        if a not in C.mor_names or b not in D.mor_names:
            raise ResolutionError(f"mor {a} |-> {b} does not name morphisms of {d.dom} and {d.cod}", d.line)
        if a in mmap:
            raise ResolutionError(f"morphism {a!r} is mapped twice", d.line)
        mmap[a] = b
    for o in C.obj_names:
        if o not in omap:
            raise TotalityError(f"functor {d.name} has no image for object {o!r}", d.line)
    for m in C.morphisms():
        name = C.mor_names[m]
        if name not in mmap:
            if m not in C.ids:
                raise TotalityError(f"functor {d.name} has no image for morphism {name!r}", d.line)
            mmap[name] = D.mor_names[D.identity(D.obj(omap[C.obj_names[C.src(m)]]))]
    return Functor(
        C,
        D,
        [D.obj(omap[o]) for o in C.obj_names],
        [D.mor(mmap[C.mor_names[m]]) for m in C.morphisms()],
        name=d.name,
    )


def build_nat(env: Environment, d: NatDecl) -> NatTransformation:
    F = env.get(d.dom, ("functor",), d.line)[1]
    G = env.get(d.cod, ("functor",), d.line)[1]
    if F.dom is not G.dom or F.cod is not G.cod:
        raise ResolutionError(f"{d.dom} and {d.cod} are not parallel functors", d.line)
    C, D = F.dom, F.cod
    comps: dict[str, str] = {}
    for a, m in d.components:
        if a not in C.obj_names or m not in D.mor_names:
            raise ResolutionError(f"{a} |-> {m} does not name an object of {C.name} and a morphism of {D.name}", d.line)
        if a in comps:
            raise ResolutionError(f"component at {a!r} is given twice", d.line)
        comps[a] = m
    missing = [o for o in C.obj_names if o not in comps]
    if missing:
        raise TotalityError(f"nat {d.name} has no component at {missing[0]!r}", d.line)
    return NatTransformation(F, G, [D.mor(comps[o]) for o in C.obj_names], name=d.name)


def build_subcategory(env: Environment, d: SubcategoryDecl) -> tuple[FinCategory, tuple[int, ...]]:
    C = env.get(d.parent, ("category",), d.line)[1]
    _unique(d.objects, "object", d.line)
    for o in d.objects:
        if o not in C.obj_names:
            raise ResolutionError(f"{o!r} is not an object of {d.parent}", d.line)
    return C, tuple(C.obj(o) for o in d.objects)


def build_structure(env: Environment, d: StructureDecl):
    C = env.get(d.category, ("category",), d.line)[1]
    return C, d.kind


def build_environment(doc: SpecDocument) -> Environment:
    env = Environment()
    for d in doc.declarations:
        if isinstance(d, CategoryDecl):
            env.add(d.name, "category", build_category(d), d.line)
        elif isinstance(d, SetDecl):
            _unique(d.elements, "element", d.line)
            env.add(d.name, "set", d.elements, d.line)
        elif isinstance(d, MapDecl):
            env.add(d.name, "map", build_map(env, d), d.line)
        elif isinstance(d, FibredDecl):
            env.add(d.name, "fibred", (d.base, build_fibred(env, d)), d.line)
        elif isinstance(d, FunctorDecl):
            env.add(d.name, "functor", build_functor(env, d), d.line)
        elif isinstance(d, NatDecl):
            env.add(d.name, "nat", build_nat(env, d), d.line)
        elif isinstance(d, SubcategoryDecl):
            env.add(d.name, "subcategory", build_subcategory(env, d), d.line)
        elif isinstance(d, StructureDecl):
            env.add(d.name, "structure", build_structure(env, d), d.line)
    for r in doc.directives:
        resolve_args(env, r)
    return env


def resolve_args(env: Environment, r: Directive) -> list:
    values = [env.get(a, (k,), r.line)[1] for a, k in zip(r.args, DIRECTIVES[r.verb])]
    if r.verb in ("coreflection", "lift-comonad", "idempotent"):
        C, xi = values
        if tuple(xi.cod) != C.obj_names:
            raise ResolutionError(f"map {xi.name} must land in the objects of {C.name}", r.line)
    if r.verb in ("reflection", "closed"):
        (C, _), (parent, _) = values
        if C is not parent:
            raise ResolutionError(f"{r.args[0]} and {r.args[1]} live on different categories", r.line)
    return values


# -- json ------------------------------------------------------------------------------


def to_json(x: Any) -> Any:
    """Element-level JSON; raises TypeError for values with no stable encoding."""
    if isinstance(x, (FibredSet, FibreMap)):
        return x.to_json()
    if isinstance(x, Coalgebra):
        return {"carrier": to_json(x.carrier), "coaction": to_json(x.coaction)}
    if isinstance(x, CoalgebraMorphism):
        return {"coalgebra-map": to_json(x.map)}
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, (tuple, list)):
        return [to_json(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted((to_json(v) for v in x), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    raise TypeError(f"no JSON encoding for {type(x).__name__}")


def _describe(x: Any) -> Any:
    try:
        return to_json(x)
    except TypeError:
        return f"<{type(x).__name__}>"


def _info_json(info: dict) -> dict:
    out = {}
    for k, v in info.items():
        try:
            out[k] = to_json(v)
        except TypeError:
            continue
    return out


# -- directives ------------------------------------------------------------------------


def _names(C: FinCategory, kind: str) -> Callable[[Any], Any]:
    names = C.obj_names if kind == "obj" else C.mor_names
    return lambda w: names[w] if isinstance(w, int) and not isinstance(w, bool) and 0 <= w < len(names) else _describe(w)


def run_check_category(C: FinCategory, config: SamplingConfig):
    return check_category(C), _names(C, "mor")


def run_check_functor(F: Functor, config: SamplingConfig):
    return check_functor(F), _describe


def run_check_natural(t: NatTransformation, config: SamplingConfig):
    return check_natural(t), _describe


def run_slice_skew(C: FinCategory, config: SamplingConfig, extra: list | None = None):
    S = SliceCategory(C.obj_names)
    s = build_slice_skew(C, category=S)
    source = ObjectSource.sampled(S, config, "slice")
    source.pool.extend(extra or [])
    report = check_skew_axioms(s, source, naturality=True)
    for x, y in source.tuples(2, "cardinality"):
        t = s.tensor(x, y)
        for j in C.objects():
            report.expect("cardinality", len(t.fibre(C.obj_names[j])), slice_cardinality(C, x, y, j), (x, y, C.obj_names[j]))
    report.info["sampled-objects"] = len(source.pool)
    return report, _describe


def run_reflective_lemma(sub: tuple, config: SamplingConfig):
    C, objs = sub
    adj = find_reflection(C, objs)
    if adj is None:
        raise PreconditionError("the subcategory is not reflective", tuple(C.obj_names[o] for o in objs))
    report = CheckReport(f"reflective lemma for {adj.name}")
    table = {}
    for z in C.objects():
        row = reflective_lemma(adj, z)
        table[C.obj_names[z]] = row
        report.expect("conditions-agree", len(set(row.values())), 1, (z,))
    report.info["table"] = table
    return report, _names(C, "obj")


def _structure(value) -> Any:
    C, kind = value
    if kind == "meet":
        return posetal_meet(C)
    s = right_projection(C)
    if s is None:
        raise PreconditionError(f"{C.name} has no terminal object, so right projection is undefined")
    return s


def _reflection(sub: tuple):
    C, objs = sub
    adj = find_reflection(C, objs)
    if adj is None:
        raise PreconditionError("the subcategory is not reflective", tuple(C.obj_names[o] for o in objs))
    return adj


def run_reflection(structure, sub, config: SamplingConfig):
    s, adj = _structure(structure), _reflection(sub)
    report = reflection_theorem_report(adj, s)
    return report, _names(s.category, "obj")


def run_closed(structure, sub, config: SamplingConfig):
    s, adj = _structure(structure), _reflection(sub)
    return check_closed_equivalences(adj, s), _names(s.category, "obj")


def run_warping(structure, config: SamplingConfig):
    s = _structure(structure)
    return warping_report(s), _describe


def _slice_demo(fn):
    def run(C: FinCategory, xi: IndexMap, config: SamplingConfig):
        return fn(C, xi, config), _describe

    return run


RUNNERS = {
    "check-category": run_check_category,
    "check-functor": run_check_functor,
    "check-natural": run_check_natural,
    "slice-skew": run_slice_skew,
    "coreflection": _slice_demo(injective_coreflection_demo),
    "lift-comonad": _slice_demo(noninjective_comonad_demo),
    "idempotent": _slice_demo(idempotent_slice_comparison),
    "reflective-lemma": run_reflective_lemma,
    "reflection": run_reflection,
    "closed": run_closed,
    "warping": run_warping,
}


def run_directive(env: Environment, r: Directive, config: SamplingConfig, timing: bool = False) -> dict:
    values = resolve_args(env, r)
    start = time.perf_counter()
    entry: dict[str, Any] = {"directive": r.verb, "args": list(r.args), "line": r.line}
    try:
        if r.verb == "slice-skew":
            C = values[0]
            extra = [v[1] for kind, v in env.entries.values() if kind == "fibred" and v[0] == r.args[0]]
            report, describe = run_slice_skew(C, config, extra)
        else:
            report, describe = RUNNERS[r.verb](*values, config)
    except (PreconditionError, StructuralError) as exc:
        entry.update(
            status="error",
            laws={},
            violations=1,
            witnesses=[{"law": "precondition", "witness": [_describe(w) for w in exc.witness], "detail": str(exc)}],
            info={},
            error=str(exc),
        )
    else:
        entry.update(
            status="pass" if report.ok else "fail",
            laws=report.summary(),
            violations=len(report.violations),
            witnesses=[
                {"law": v.law, "witness": [describe(w) for w in v.witness], "detail": v.detail}
                for v in report.violations[:WITNESS_LIMIT]
            ],
            info=_info_json(report.info),
            error=None,
        )
    if timing:
        entry["seconds"] = round(time.perf_counter() - start, 3)
    return entry


def run(doc: SpecDocument, config: SamplingConfig = SamplingConfig(), timing: bool = False) -> dict:
    """Execute every directive in order; a failing directive never stops the run."""
    env = build_environment(doc)
    entries = [run_directive(env, r, config, timing) for r in doc.directives]
    return {
        "version": REPORT_VERSION,
        "seed": config.seed,
        "config": {"samples": config.samples, "fibre_bound": config.fibre_bound},
        "directives": entries,
        "status": "pass" if all(e["status"] == "pass" for e in entries) else "fail",
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def report_text(report: dict) -> str:
    lines = []
    for e in report["directives"]:
        head = f"run {e['directive']} {' '.join(e['args'])}: {e['status'].upper()}"
        if "seconds" in e:
            head += f" ({e['seconds']}s)"
        lines.append(head)
        if e["status"] == "error":
            lines.append(f"  error: {e['error']}")
        for law, c in e["laws"].items():
            mark = "ok" if c["violations"] == 0 else "FAIL"
            lines.append(f"  {law}: {c['checked']} checked, {c['violations']} violations [{mark}]")
        for w in e["witnesses"][:3]:
            lines.append(f"  witness {w['law']}: {json.dumps(w['witness'])}")
    lines.append(f"overall: {report['status'].upper()} (seed {report['seed']})")
    return "\n".join(lines) + "\n"
