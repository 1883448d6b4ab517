"""Lexer and recursive-descent parser for the object language.

Grammar (sugar included)::

    program  ::= item*
    item     ::= "external" ident "/" int
               | "#pragma sct" ("depth=" int)? ("bound=" int)?
               | "val" "rec"? def ("and" def)*
    def      ::= ident ident* "=" expr
    expr     ::= "match" expr ("," expr)* "with" "|"? case ("|" case)*
               | atom atom*                       (call when the head is a function)
    case     ::= pattern ("," pattern)* "->" expr
    atom     ::= ident | Ctor "[" exprs? "]" | "(" exprs? ")" | ".i" atom | "πi" atom
    pattern  ::= "_" | ident | Ctor "[" patterns? "]" | "(" patterns? ")"

``C[]`` is ``C`` applied to the empty tuple and ``C[a, b]`` is ``C`` applied
to the pair ``(a, b)``.  A ``match`` extends as far to the right as possible.
Comments are ``(* ... *)`` (nested) and lines starting with ``#`` other than
pragmas.
"""

from __future__ import annotations

import re

from ..errors import ArityError, ParseError
from .ast import (BUILTINS, Call, Case, CtorE, Definition, Group, Match, PCtor,
                  Proj, Program, PTuple, PVar, PWild, TupleE, Var, pattern_vars)

KEYWORDS = {"val", "rec", "and", "match", "with", "external"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f]+|\n)
  | (?P<proj>(?:\.|π)\d+)
  | (?P<arrow>->)
  | (?P<ctor>[A-Z][A-Za-z0-9_']*)
  | (?P<ident>[a-z_][A-Za-z0-9_']*)
  | (?P<int>\d+)
  | (?P<sym>[\[\](),|=/])
""", re.VERBOSE)

_PRAGMA = re.compile(r"#\s*pragma\s+sct\b(?P<body>.*)")


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    @property
    def pos(self):
        return (self.line, self.col)

    def __repr__(self):
        return "Token(%s, %r, %d:%d)" % (self.kind, self.text, self.line, self.col)


def _parse_pragma(body, line):
    opts = {}
    for item in body.split():
        key, eq, value = item.partition("=")
        if not eq or key not in ("depth", "bound") or not value.isdigit():
            raise ParseError("bad pragma option %r" % item, line, 1)
        opts[key] = int(value)
    return opts


def tokenize(source: str) -> list:
    toks = []
    i, line, col = 0, 1, 1
    n = len(source)
    at_line_start = True
    while i < n:
        if source.startswith("(*", i):
            depth, start = 0, (line, col)
            while i < n:
                if source.startswith("(*", i):
                    depth += 1
                    i += 2
                    col += 2
                elif source.startswith("*)", i):
                    depth -= 1
                    i += 2
                    col += 2
                    if depth == 0:
                        break
                else:
                    if source[i] == "\n":
                        line, col = line + 1, 1
                    else:
                        col += 1
                    i += 1
            if depth:
                raise ParseError("unterminated comment", *start)
            continue
        if source[i] == "#" and at_line_start:
            end = source.find("\n", i)
            end = n if end < 0 else end
            text = source[i:end]
            m = _PRAGMA.match(text)
            if m:
                toks.append(Token("pragma", _parse_pragma(m.group("body"), line), line, col))
            col += end - i
            i = end
            continue
        m = _TOKEN.match(source, i)
        if not m:
            raise ParseError("unexpected character %r" % source[i], line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            if text == "\n":
                line, col = line + 1, 1
                at_line_start = True
            else:
                col += len(text)
            i = m.end()
            continue
        at_line_start = False
        if kind == "ident" and text in KEYWORDS:
            kind = "kw"
        toks.append(Token(kind, text, line, col))
        col += len(text)
        i = m.end()
    toks.append(Token("eof", "", line, col))
    return toks


_ATOM_START = {"ident", "ctor", "proj"}


class Parser:
    def __init__(self, source):
        self.toks = tokenize(source)
        self.i = 0

    # token helpers

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_sym(self, text):
        return self.at("sym", text)

    def eat(self, kind, text=None):
        if not self.at(kind, text):
            want = text or kind
            got = self.tok.text or self.tok.kind
            raise self.error("expected %r, found %r" % (want, got))
        t = self.tok
        self.i += 1
        return t

    def at_atom(self):
        return self.tok.kind in _ATOM_START or self.at_sym("(")

    # program structure

    def program(self):
        groups, externals = [], []
        pragma = {}
        while not self.at("eof"):
            if self.at("pragma"):
                pragma = self.eat("pragma").text
            elif self.at("kw", "external"):
                self.eat("kw")
                name = self.eat("ident")
                self.eat("sym", "/")
                arity = int(self.eat("int").text)
                externals.append((name.text, arity, name))
            elif self.at("kw", "val"):
                groups.append(self.group(pragma))
                pragma = {}
            else:
                raise self.error("expected a definition, found %r" % self.tok.text)
        return groups, externals

    def group(self, pragma):
        start = self.eat("kw", "val")
        recursive = False
        if self.at("kw", "rec"):
            self.eat("kw")
            recursive = True
        defs = [self.definition()]
        while self.at("kw", "and"):
            if not recursive:
                raise self.error("'and' requires 'val rec'")
            self.eat("kw")
            defs.append(self.definition())
        return Group(tuple(defs), recursive, pragma.get("depth"), pragma.get("bound"),
                     pos=start.pos)

    def definition(self):
        name = self.eat("ident")
        params = []
        while self.at("ident"):
            params.append(self.eat("ident").text)
        if len(set(params)) != len(params):
            raise self.error("repeated parameter in definition of %s" % name.text, name)
        if "_" in params:
            raise self.error("parameters must be named", name)
        self.eat("sym", "=")
        body = self.expr()
        return Definition(name.text, tuple(params), body, pos=name.pos)

    # expressions

    def expr(self):
        if self.at("kw", "match"):
            start = self.eat("kw")
            items = [self.expr()]
            while self.at_sym(","):
                self.eat("sym")
                items.append(self.expr())
            self.eat("kw", "with")
            scrut = items[0] if len(items) == 1 else TupleE(tuple(items), pos=start.pos)
            if self.at_sym("|"):
                self.eat("sym")
            cases = [self.case()]
            while self.at_sym("|"):
                self.eat("sym")
                cases.append(self.case())
            return Match(scrut, tuple(cases), pos=start.pos)
        head_tok = self.tok
        head = self.atom()
        args = []
        while self.at_atom():
            args.append(self.atom())
        if not args:
            return head
        if not isinstance(head, Var):
            raise self.error("only functions can be applied", head_tok)
        return Call(head.name, tuple(args), pos=head.pos)

    def exprs(self, close):
        if self.at_sym(close):
            return []
        items = [self.expr()]
        while self.at_sym(","):
            self.eat("sym")
            items.append(self.expr())
        return items

    def atom(self):
        t = self.tok
        if t.kind == "ident":
            self.i += 1
            if t.text == "_":
                raise self.error("'_' is not an expression", t)
            return Var(t.text, pos=t.pos)
        if t.kind == "proj":
            self.i += 1
            index = int(t.text.lstrip(".π"))
            if index < 1:
                raise self.error("projection index must be at least 1", t)
            return Proj(index, self.atom(), pos=t.pos)
        if t.kind == "ctor":
            self.i += 1
            self.eat("sym", "[")
            items = self.exprs("]")
            self.eat("sym", "]")
            arg = items[0] if len(items) == 1 else TupleE(tuple(items), pos=t.pos)
            return CtorE(t.text, arg, pos=t.pos)
        if self.at_sym("("):
            self.eat("sym")
            items = self.exprs(")")
            self.eat("sym", ")")
            if len(items) == 1:
                return items[0]
            return TupleE(tuple(items), pos=t.pos)
        raise self.error("expected an expression, found %r" % (t.text or t.kind))

    # patterns

    def case(self):
        start = self.tok
        pats = [self.pattern()]
        while self.at_sym(","):
            self.eat("sym")
            pats.append(self.pattern())
        pat = pats[0] if len(pats) == 1 else PTuple(tuple(pats))
        names = pattern_vars(pat)
        if len(set(names)) != len(names):
            raise self.error("variable bound twice in pattern", start)
        self.eat("arrow")
        return Case(pat, self.expr())

    def patterns(self, close):
        if self.at_sym(close):
            return []
        items = [self.pattern()]
        while self.at_sym(","):
            self.eat("sym")
            items.append(self.pattern())
        return items

    def pattern(self):
        t = self.tok
        if t.kind == "ident":
            self.i += 1
            return PWild() if t.text == "_" else PVar(t.text)
        if t.kind == "ctor":
            self.i += 1
            self.eat("sym", "[")
            items = self.patterns("]")
            self.eat("sym", "]")
            return PCtor(t.text, items[0] if len(items) == 1 else PTuple(tuple(items)))
        if self.at_sym("("):
            self.eat("sym")
            items = self.patterns(")")
            self.eat("sym", ")")
            return items[0] if len(items) == 1 else PTuple(tuple(items))
        raise self.error("expected a pattern, found %r" % (t.text or t.kind))


# name resolution


class _Resolver:
    """Turn identifiers into variables or calls and check call arities."""

    def __init__(self, arities):
        self.arities = arities

    def expr(self, e, scope):
        if isinstance(e, Var):
            if e.name in scope:
                return e
            if e.name in self.arities:
                return Call(e.name, (), pos=e.pos)
            raise ParseError("unknown identifier %s" % e.name, *(e.pos or (None, None)))
        if isinstance(e, Call):
            if e.fn in scope:
                raise ParseError("variable %s is not a function" % e.fn, *e.pos)
            if e.fn not in self.arities:
                raise ParseError("unknown function %s" % e.fn, *e.pos)
            arity = self.arities[e.fn]
            if len(e.args) != arity:
                raise ArityError("%s expects %d argument(s), got %d"
                                 % (e.fn, arity, len(e.args)), *e.pos)
            return Call(e.fn, tuple(self.expr(a, scope) for a in e.args), pos=e.pos)
        if isinstance(e, CtorE):
            return CtorE(e.name, self.expr(e.arg, scope), pos=e.pos)
        if isinstance(e, TupleE):
            return TupleE(tuple(self.expr(a, scope) for a in e.items), pos=e.pos)
        if isinstance(e, Proj):
            return Proj(e.index, self.expr(e.expr, scope), pos=e.pos)
        scrut = self.expr(e.scrutinee, scope)
        cases = tuple(Case(c.pattern, self.expr(c.body, scope | set(pattern_vars(c.pattern))))
                      for c in e.cases)
        return Match(scrut, cases, pos=e.pos)


def parse(source: str) -> Program:
    """Parse a source text into a resolved :class:`Program`."""
    groups, externals = Parser(source).program()
    arities = dict(BUILTINS)
    for name, arity, tok in externals:
        if name in arities and arities[name] != arity:
            raise ParseError("conflicting declarations of %s" % name, tok.line, tok.col)
        arities[name] = arity
    resolved = []
    for g in groups:
        names = [d.name for d in g.defs]
        for d in g.defs:
            if names.count(d.name) > 1:
                raise ParseError("%s defined twice in one group" % d.name, *d.pos)
        local = dict(arities)
        for d in g.defs:
            local[d.name] = len(d.params)
        # a non-recursive definition does not see itself
        resolver = _Resolver(local if g.recursive else arities)
        defs = tuple(Definition(d.name, d.params, resolver.expr(d.body, set(d.params)), pos=d.pos)
                     for d in g.defs)
        resolved.append(Group(defs, g.recursive, g.depth, g.bound, pos=g.pos))
        for d in g.defs:
            arities[d.name] = len(d.params)
    return Program(tuple(resolved), tuple((n, a) for n, a, _ in externals))


def parse_file(path) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
