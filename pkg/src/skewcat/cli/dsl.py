"""A line-oriented declaration language for categories, index maps and checks.

Example::

    # the walking arrow and a two-point set over it
    category C { objects 0 1; mor f: 0 -> 1; }
    set U { u v }
    map xi: U -> C { u |-> 0; v |-> 0; }
    run slice-skew C;
    run lift-comonad C xi;

Declarations::

    category NAME { objects O...; mor M: O -> O; comp G F = H; }
    set NAME { ELEMENT... }
    map NAME: SET -> (SET | CATEGORY) { X |-> Y; ... }
    fibred NAME over (SET | CATEGORY) { INDEX: ELEMENT...; ... }
    functor NAME: CATEGORY -> CATEGORY { obj X |-> Y; mor F |-> G; }
    nat NAME: FUNCTOR => FUNCTOR { OBJECT |-> MORPHISM; ... }
    subcategory NAME of CATEGORY { OBJECT... }
    structure NAME on CATEGORY = KIND;        KIND: meet | right-projection
    run DIRECTIVE ARG...;

Identities ``id<obj>`` are implicit and compose trivially; every other
composable pair needs a ``comp`` entry.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

KEYWORDS = ("category", "set", "map", "fibred", "functor", "nat", "subcategory", "structure", "run")
STRUCTURE_KINDS = ("meet", "right-projection")
DIRECTIVES = {
    "check-category": ("category",),
    "check-functor": ("functor",),
    "check-natural": ("nat",),
    "slice-skew": ("category",),
    "coreflection": ("category", "map"),
    "lift-comonad": ("category", "map"),
    "idempotent": ("category", "map"),
    "reflective-lemma": ("subcategory",),
    "reflection": ("structure", "subcategory"),
    "closed": ("structure", "subcategory"),
    "warping": ("structure",),
}


class DSLError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}" if line else message)
        self.line, self.column = line, column


class ParseError(DSLError):
    """Malformed text."""


class ResolutionError(DSLError):
    """A name that is not declared (or declared twice)."""


class TotalityError(DSLError):
    """A category with a composable pair that has no composite."""


# -- document model ------------------------------------------------------------------


@dataclass(frozen=True)
class CategoryDecl:
    name: str
    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, str, str], ...]
    comps: tuple[tuple[str, str, str], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SetDecl:
    name: str
    elements: tuple[str, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MapDecl:
    name: str
    dom: str
    cod: str
    pairs: tuple[tuple[str, str], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class FibredDecl:
    name: str
    base: str
    fibres: tuple[tuple[str, tuple[str, ...]], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class FunctorDecl:
    name: str
    dom: str
    cod: str
    objects: tuple[tuple[str, str], ...]
    morphisms: tuple[tuple[str, str], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class NatDecl:
    name: str
    dom: str
    cod: str
    components: tuple[tuple[str, str], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SubcategoryDecl:
    name: str
    parent: str
    objects: tuple[str, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class StructureDecl:
    name: str
    category: str
    kind: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Directive:
    verb: str
    args: tuple[str, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SpecDocument:
    declarations: tuple = ()
    directives: tuple[Directive, ...] = ()

    def names(self) -> dict:
        return {d.name: d for d in self.declarations}


# -- tokenizer -----------------------------------------------------------------------


_TOKEN = re.compile(
    r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<symbol>\|->|->|=>|[{};:=])
  | (?P<word>[A-Za-z0-9_*'.+-]+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "newline":
            line, start = line + 1, m.end()
        elif kind in ("symbol", "word"):
            tokens.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - start + 1))
    return tokens


# -- parser -------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, msg: str, t: Token | None = None) -> ParseError:
        t = t or self.peek()
        found = t.text or "end of input"
        return ParseError(f"{msg}, found {found!r}", t.line, t.column)

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind == "word" and text in "{};:=":
            raise self.error(f"expected {text!r}")
        return self.next()

    def word(self, what: str = "a name") -> str:
        t = self.peek()
        if t.kind != "word":
            raise self.error(f"expected {what}")
        return self.next().text

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "eof"

    def end_item(self) -> None:
        """Items end with ';', which may be dropped before a closing brace."""
        if not self.at("}"):
            self.expect(";")

    def words_until(self, stops: tuple[str, ...]) -> tuple[str, ...]:
        out = []
        while self.peek().kind == "word" and self.peek().text not in stops:
            out.append(self.next().text)
        return tuple(out)

    def document(self) -> SpecDocument:
        decls, directives = [], []
        while self.peek().kind != "eof":
            t = self.peek()
            if t.text == "run":
                directives.append(self.directive())
            elif t.text in KEYWORDS:
                decls.append(getattr(self, t.text)())
            else:
                raise self.error("expected a declaration or 'run'")
        return SpecDocument(tuple(decls), tuple(directives))

    def directive(self) -> Directive:
        line = self.next().line
        verb_tok = self.peek()
        verb = self.word("a directive")
        if verb not in DIRECTIVES:
            raise ParseError(f"unknown directive {verb!r}", verb_tok.line, verb_tok.column)
        args = self.words_until(())
        if len(args) != len(DIRECTIVES[verb]):
            raise ParseError(
                f"{verb} takes {len(DIRECTIVES[verb])} argument(s): {' '.join(DIRECTIVES[verb])}", verb_tok.line, verb_tok.column
            )
        self.expect(";")
        return Directive(verb, args, line)

    def _block(self, item) -> tuple:
        self.expect("{")
        out = []
        while not self.at("}"):
            if self.peek().kind == "eof":
                raise self.error("expected '}'")
            out.append(item())
        self.expect("}")
        return tuple(out)

    def category(self) -> CategoryDecl:
        line = self.next().line
        name = self.word()
        objects, mors, comps = [], [], []

        def item():
            t = self.peek()
            key = self.word("'objects', 'mor' or 'comp'")
            if key == "objects":
                objects.extend(self.words_until(()))
            elif key == "mor":
                m = self.word("a morphism name")
                self.expect(":")
                s = self.word("an object")
                self.expect("->")
                mors.append((m, s, self.word("an object")))
            elif key == "comp":
                g, f = self.word("a morphism"), self.word("a morphism")
                self.expect("=")
                comps.append((g, f, self.word("a morphism")))
            else:
                raise ParseError(f"expected 'objects', 'mor' or 'comp', found {key!r}", t.line, t.column)
            self.end_item()

        self._block(item)
        return CategoryDecl(name, tuple(objects), tuple(mors), tuple(comps), line)

    def set(self) -> SetDecl:
        line = self.next().line
        name = self.word()
        self.expect("{")
        elements = self.words_until(())
        self.expect("}")
        return SetDecl(name, elements, line)

    def _pairs(self, prefix: str | None = None):
        def item():
            if prefix is not None:
                key = self.peek()
                if self.word() != prefix:
                    raise ParseError(f"expected {prefix!r}", key.line, key.column)
            a = self.word()
            self.expect("|->")
            b = self.word()
            self.end_item()
            return (a, b)

        return item

    def map(self) -> MapDecl:
        line = self.next().line
        name = self.word()
        self.expect(":")
        dom = self.word("a set")
        self.expect("->")
        cod = self.word("a set or category")
        return MapDecl(name, dom, cod, self._block(self._pairs()), line)

    def fibred(self) -> FibredDecl:
        line = self.next().line
        name = self.word()
        self.expect("over")
        base = self.word("a set or category")

        def item():
            i = self.word("an index")
            self.expect(":")
            elements = self.words_until(())
            self.end_item()
            return (i, elements)

        return FibredDecl(name, base, self._block(item), line)

    def functor(self) -> FunctorDecl:
        line = self.next().line
        name = self.word()
        self.expect(":")
        dom = self.word("a category")
        self.expect("->")
        cod = self.word("a category")
        objs, mors = [], []

        def item():
            t = self.peek()
            key = self.word("'obj' or 'mor'")
            if key not in ("obj", "mor"):
                raise ParseError(f"expected 'obj' or 'mor', found {key!r}", t.line, t.column)
            a = self.word()
            self.expect("|->")
            (objs if key == "obj" else mors).append((a, self.word()))
            self.end_item()

        self._block(item)
        return FunctorDecl(name, dom, cod, tuple(objs), tuple(mors), line)

    def nat(self) -> NatDecl:
        line = self.next().line
        name = self.word()
        self.expect(":")
        dom = self.word("a functor")
        self.expect("=>")
        cod = self.word("a functor")
        return NatDecl(name, dom, cod, self._block(self._pairs()), line)

    def subcategory(self) -> SubcategoryDecl:
        line = self.next().line
        name = self.word()
        self.expect("of")
        parent = self.word("a category")
        self.expect("{")
        objs = self.words_until(())
        self.expect("}")
        return SubcategoryDecl(name, parent, objs, line)

    def structure(self) -> StructureDecl:
        line = self.next().line
        name = self.word()
        self.expect("on")
        cat = self.word("a category")
        self.expect("=")
        t = self.peek()
        kind = self.word("a structure kind")
        if kind not in STRUCTURE_KINDS:
            raise ParseError(f"unknown structure kind {kind!r} (expected {' or '.join(STRUCTURE_KINDS)})", t.line, t.column)
        self.expect(";")
        return StructureDecl(name, cat, kind, line)


def parse(text: str) -> SpecDocument:
    """Parse a document; raises ParseError with line and column."""
    return _Parser(text).document()


# -- printer ------------------------------------------------------------------------


def _print_decl(d) -> str:
    if isinstance(d, CategoryDecl):
        body = [f"  objects {' '.join(d.objects)};"] if d.objects else []
        body += [f"  mor {m}: {s} -> {t};" for m, s, t in d.morphisms]
        body += [f"  comp {g} {f} = {h};" for g, f, h in d.comps]
        return "category " + d.name + " {\n" + "\n".join(body) + ("\n" if body else "") + "}"
    if isinstance(d, SetDecl):
        return f"set {d.name} {{ {' '.join(d.elements)} }}" if d.elements else f"set {d.name} {{ }}"
    if isinstance(d, MapDecl):
        return f"map {d.name}: {d.dom} -> {d.cod} {{" + "".join(f" {a} |-> {b};" for a, b in d.pairs) + " }"
    if isinstance(d, FibredDecl):
        inner = "".join(f" {i}:{''.join(' ' + e for e in es)};" for i, es in d.fibres)
        return f"fibred {d.name} over {d.base} {{{inner} }}"
    if isinstance(d, FunctorDecl):
        body = [f"  obj {a} |-> {b};" for a, b in d.objects] + [f"  mor {a} |-> {b};" for a, b in d.morphisms]
        return f"functor {d.name}: {d.dom} -> {d.cod} {{\n" + "\n".join(body) + ("\n" if body else "") + "}"
    if isinstance(d, NatDecl):
        return f"nat {d.name}: {d.dom} => {d.cod} {{" + "".join(f" {a} |-> {b};" for a, b in d.components) + " }"
    if isinstance(d, SubcategoryDecl):
        return f"subcategory {d.name} of {d.parent} {{ {' '.join(d.objects)} }}" if d.objects else f"subcategory {d.name} of {d.parent} {{ }}"
    if isinstance(d, StructureDecl):
        return f"structure {d.name} on {d.category} = {d.kind};"
    raise TypeError(f"cannot print {d!r}")


def print_document(doc: SpecDocument) -> str:
    parts = [_print_decl(d) for d in doc.declarations]
    parts += [f"run {r.verb} {' '.join(r.args)};" for r in doc.directives]
    return "\n".join(parts) + ("\n" if parts else "")
