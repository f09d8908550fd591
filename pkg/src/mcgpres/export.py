"""Serialization of presentations: canonical JSON, plain text, GAP and Magma.

The GAP and Magma forms are checked by small recursive-descent parsers in
this module rather than by running either system.
"""

from __future__ import annotations

import re

from .presentations import Presentation
from .words import Generator, Kind, Word

FORMATS = ("json", "text", "gap", "magma")


class ExportSyntaxError(ValueError):
    pass


def cas_name(g: Generator) -> str:
    text = str(g)
    if g.kind is Kind.STABLE:
        text = "st_" + text[1:]
    return text.replace(".", "_")


def _cas_word(w: Word, names: dict) -> str:
    parts = []
    for g, e in w.runs():
        parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
    return "*".join(parts)


def _relators(p: Presentation, names: dict) -> list:
    return [_cas_word(w, names) for w in p.relators(reduced=True) if w]


def _names(p: Presentation) -> dict:
    names = {g: cas_name(g) for g in p.generators}
    if len(set(names.values())) != len(names):
        raise ExportSyntaxError("generator names collide after sanitizing")
    return names


def to_gap(p: Presentation) -> str:
    names = _names(p)
    order = [names[g] for g in p.generators]
    lines = ["F := FreeGroup(" + ", ".join(f'"{n}"' for n in order) + ");;"]
    for k, n in enumerate(order, 1):
        lines.append(f"{n} := F.{k};;")
    rels = _relators(p, names)
    body = ",\n  ".join(rels)
    lines.append("G := F / [" + ("\n  " + body + "\n" if rels else " ") + "];;")
    return "\n".join(lines) + "\n"


def to_magma(p: Presentation) -> str:
    names = _names(p)
    order = ", ".join(names[g] for g in p.generators)
    rels = _relators(p, names)
    body = ",\n  ".join(rels)
    return f"G<{order}> := Group<{order} |" + ("\n  " + body + "\n" if rels else " ") + ">;\n"


def to_text(p: Presentation) -> str:
    lines = []
    for key in sorted(p.meta):
        if isinstance(p.meta[key], (str, int, bool)):
            lines.append(f"# {key}: {p.meta[key]}")
    lines.append("generators: " + " ".join(str(g) for g in p.generators))
    for rel in p.relations:
        lines.append(f"{rel.tag}: {rel.lhs} = {rel.rhs}")
    return "\n".join(lines) + "\n"


def render(p: Presentation, fmt: str) -> str:
    if fmt == "json":
        return p.dumps()
    if fmt == "text":
        return to_text(p)
    if fmt == "gap":
        return to_gap(p)
    if fmt == "magma":
        return to_magma(p)
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# Grammar checks

_TOKEN = re.compile(r"\s*(?:(:=)|([A-Za-z_][A-Za-z0-9_]*)|(-?\d+)|(\"[^\"]*\")|(;;|[;,()\[\]<>|*^/.]))")


def _lex(text: str) -> list:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExportSyntaxError(f"bad character at offset {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastindex
        out.append((("assign", "ident", "int", "string", "punct")[kind - 1], m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ExportSyntaxError(f"expected {value or kind}, got {tok[1]!r} at token {self.i}")
        self.i += 1
        return tok[1]

    def at(self, value) -> bool:
        return self.peek()[1] == value

    def end(self):
        if self.i != len(self.toks):
            raise ExportSyntaxError(f"trailing input at token {self.i}")

    def word(self, names: set) -> None:
        # word := factor ('*' factor)* ; factor := ident ('^' int)?
        self.factor(names)
        while self.at("*"):
            self.take()
            self.factor(names)

    def factor(self, names: set) -> None:
        name = self.take("ident")
        if name not in names:
            raise ExportSyntaxError(f"undeclared generator {name!r}")
        if self.at("^"):
            self.take()
            self.take("int")

    def ident_list(self, close: str) -> list:
        names = [self.take("ident")]
        while self.at(","):
            self.take()
            names.append(self.take("ident"))
        self.take(value=close)
        return names


def check_gap(text: str) -> int:
    """Validate the GAP form; returns the number of relators."""
    ps = _Parser(text)
    ps.take("ident", "F")
    ps.take("assign")
    ps.take("ident", "FreeGroup")
    ps.take(value="(")
    names = [ps.take("string").strip('"')]
    while ps.at(","):
        ps.take()
        names.append(ps.take("string").strip('"'))
    ps.take(value=")")
    ps.take(value=";;")
    if len(set(names)) != len(names):
        raise ExportSyntaxError("duplicate generator names")
    for k, n in enumerate(names, 1):
        ps.take("ident", n)
        ps.take("assign")
        ps.take("ident", "F")
        ps.take(value=".")
        if ps.take("int") != str(k):
            raise ExportSyntaxError(f"generator {n} bound to the wrong index")
        ps.take(value=";;")
    ps.take("ident", "G")
    ps.take("assign")
    ps.take("ident", "F")
    ps.take(value="/")
    ps.take(value="[")
    count = 0
    declared = set(names)
    if not ps.at("]"):
        ps.word(declared)
        count = 1
        while ps.at(","):
            ps.take()
            ps.word(declared)
            count += 1
    ps.take(value="]")
    ps.take(value=";;")
    ps.end()
    return count


def check_magma(text: str) -> int:
    """Validate the Magma form; returns the number of relators."""
    ps = _Parser(text)
    ps.take("ident", "G")
    ps.take(value="<")
    names = ps.ident_list(">")
    ps.take("assign")
    ps.take("ident", "Group")
    ps.take(value="<")
    inner = [ps.take("ident")]
    while ps.at(","):
        ps.take()
        inner.append(ps.take("ident"))
    if inner != names:
        raise ExportSyntaxError("generator lists differ")
    if len(set(names)) != len(names):
        raise ExportSyntaxError("duplicate generator names")
    ps.take(value="|")
    count = 0
    declared = set(names)
    if not ps.at(">"):
        ps.word(declared)
        count = 1
        while ps.at(","):
            ps.take()
            ps.word(declared)
            count += 1
    ps.take(value=">")
    ps.take(value=";")
    ps.end()
    return count
