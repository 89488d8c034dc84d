"""Lexer and parser for .wcat files.

Parsing produces raw declarations; `elaborate` turns them into trees,
computads, cells and homs, checking each one.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import WcatSyntaxError
from ..tree import Tree, parse_pos

IDENT = re.compile(r"[A-Za-z_][\w'.+]*(?:-(?!>)[\w'.+]*)*")
KEYWORDS = {"tree", "globset", "computad", "cell", "hom", "check", "in", "free", "disk", "sphere"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<pos>in[lr]\()
  | (?P<op>:=|->|=>|[\[\]\(\)\{\},:;*])
  | (?P<int>-?\d+(?![\w']))
  | (?P<quoted>`[^`\n]+`)
  | (?P<ident>[A-Za-z_][\w'.+]*(?:-(?!>)[\w'.+]*)*)
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int
    quoted: bool = False


def tokenize(text: str) -> list:
    out = []
    i, line, start = 0, 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise WcatSyntaxError(f"unexpected character {text[i]!r}", line, i - start + 1)
        kind = m.lastgroup
        col = i - start + 1
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind == "pos":
            j, depth = m.end(), 1
            while j < len(text) and depth:
                if text[j] == "(":
                    depth += 1
                elif text[j] == ")":
                    depth -= 1
                elif text[j] == "\n":
                    break
                j += 1
            if depth:
                raise WcatSyntaxError("unterminated position word", line, col, "')'")
            out.append(Token("pos", text[i:j], line, col))
            i = j
            continue
        elif kind == "quoted":
            out.append(Token("ident", m.group()[1:-1], line, col, quoted=True))
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, col))
        i = m.end()
    out.append(Token("eof", "", line, i - start + 1))
    return out


# raw syntax

@dataclass
class Atom:
    text: str
    kind: str
    line: int
    col: int


@dataclass
class Node:
    items: list
    line: int
    col: int


@dataclass
class TreeLit:
    tree: Tree
    line: int
    col: int


@dataclass
class Brace:
    """Association list `{key => term, ...}`."""
    entries: list
    line: int
    col: int


@dataclass
class GenDecl:
    names: list
    src: object = None
    tgt: object = None
    line: int = 0
    col: int = 0


@dataclass
class Declaration:
    kind: str
    name: str
    body: object
    line: int
    col: int
    extra: tuple = field(default_factory=tuple)


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, expected=""):
        t = self.tok
        got = t.text or "end of input"
        raise WcatSyntaxError(f"{msg}, found {got!r}", t.line, t.col, expected)

    def take(self, text=None, kind=None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            self.error("unexpected token", repr(text) if text else kind)
        self.i += 1
        return t

    def accept(self, text) -> bool:
        if self.tok.text == text and self.tok.kind in ("op", "ident"):
            self.i += 1
            return True
        return False

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.error("expected a name", "identifier")
        return self.take()

    def program(self) -> list:
        decls = []
        while self.tok.kind != "eof":
            if self.accept(";"):
                continue
            decls.append(self.statement())
        return decls

    def statement(self) -> Declaration:
        t = self.tok
        kw = t.text if t.kind == "ident" else ""
        if kw == "tree":
            self.i += 1
            name = self.ident().text
            self.take(":=")
            return Declaration("tree", name, self.tree_or_ref(), t.line, t.col)
        if kw in ("computad", "globset"):
            self.i += 1
            name = self.ident().text
            self.take(":=")
            if kw == "computad" and self.tok.text in ("free", "disk", "sphere"):
                how = self.take().text
                arg = self.tree_or_ref() if how == "free" else int(self.take(kind="int").text)
                return Declaration(kw, name, (how, arg), t.line, t.col)
            return Declaration(kw, name, self.gen_block(), t.line, t.col)
        if kw == "cell":
            self.i += 1
            name = self.ident().text
            self.take("in")
            ctx = self.ident().text
            self.take(":=")
            return Declaration("cell", name, self.term(), t.line, t.col, (ctx,))
        if kw == "hom":
            self.i += 1
            name = self.ident().text
            self.take(":")
            src = self.ident().text
            self.take("->")
            tgt = self.ident().text
            self.take(":=")
            return Declaration("hom", name, self.brace(), t.line, t.col, (src, tgt))
        if kw == "check":
            self.i += 1
            name = self.ident().text
            return Declaration("check", name, None, t.line, t.col)
        self.error("expected a declaration", "tree, globset, computad, cell, hom or check")

    def tree_or_ref(self):
        if self.tok.text == "[":
            return self.tree_lit()
        t = self.ident()
        return Atom(t.text, "ident", t.line, t.col)

    def tree_lit(self) -> TreeLit:
        start = self.take("[")
        kids = []
        while self.tok.text == "[":
            kids.append(self.tree_lit().tree)
        self.take("]")
        return TreeLit(Tree(tuple(kids)), start.line, start.col)

    def gen_block(self) -> list:
        self.take("{")
        gens = []
        while self.tok.text != "}":
            t = self.tok
            names = [self.gen_name()]
            while self.tok.text != ":":
                names.append(self.gen_name())
            self.take(":")
            if self.accept("*"):
                gens.append(GenDecl(names, None, None, t.line, t.col))
            else:
                if len(names) != 1:
                    self.error("only 0-generators may be declared together", "'*'")
                src = self.term()
                self.take("->")
                tgt = self.term()
                gens.append(GenDecl(names, src, tgt, t.line, t.col))
            if not self.accept(","):
                self.accept(";")
        self.take("}")
        return gens

    def gen_name(self):
        # unquoted position words name positions; backquotes keep the plain string
        t = self.name_token()
        if t.kind == "pos" or (t.text == "here" and not t.quoted):
            return parse_pos(t.text)
        return t.text

    def name_token(self) -> Token:
        if self.tok.kind in ("ident", "pos"):
            return self.take()
        self.error("expected a generator name", "identifier")

    def brace(self) -> Brace:
        start = self.take("{")
        entries = []
        while self.tok.text != "}":
            key = self.name_token()
            self.take("=>")
            entries.append((Atom(key.text, key.kind, key.line, key.col), self.term()))
            if not self.accept(","):
                break
        self.take("}")
        return Brace(entries, start.line, start.col)

    def term(self):
        t = self.tok
        if t.kind in ("ident", "pos"):
            self.i += 1
            return Atom(t.text, t.kind, t.line, t.col)
        if t.kind == "int":
            self.i += 1
            return Atom(t.text, "int", t.line, t.col)
        if t.text == "[":
            return self.tree_lit()
        if t.text == "{":
            return self.brace()
        if t.text == "(":
            self.i += 1
            items = []
            while self.tok.text != ")":
                if self.tok.kind == "eof":
                    self.error("unterminated term", "')'")
                items.append(self.term())
            self.take(")")
            return Node(items, t.line, t.col)
        self.error("expected a term", "name, '(' or '['")


def parse(text: str) -> list:
    return Parser(text).program()


def parse_term(text: str):
    p = Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        p.error("trailing input after term", "end of input")
    return t


def pos_of(atom: Atom):
    return parse_pos(atom.text)
