"""Recursive-descent parser for `.uv` modules.

Precedence, loosest first: binders (λ Π Σ), ``→``, ``a = b in A``, ``+``,
``×``, application.  ``→``, ``+`` and ``×`` associate to the right,
application to the left.  Keyword heads such as ``J`` or ``refl`` take a
fixed number of atomic arguments.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .. import errors as E
from ..errors import SourceSpan, UVError
from ..levels import LevelExpr, LMax, LSuc, LVar, level_const
from .lexer import Token, tokenize
from .surface import (
    KEYWORD_ARITY,
    SApp,
    SBind,
    SBinder,
    SConst,
    SEq,
    SInfix,
    SKeyword,
    SName,
    SNumber,
    SPair,
    SSort,
    STerm,
    SurfaceDecl,
    SurfaceModule,
)

_ATOM_START = frozenset({"IDENT", "NUMBER", "Nat", "zero", "star", "("})
_SORTS = frozenset({"U", "Empty", "Unit"})


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # token plumbing

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, *kinds: str) -> bool:
        return self.tok.kind in kinds

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.pos += 1
        return t

    def fail(self, expected: Iterable[str]) -> UVError:
        exp = sorted(set(expected))
        found = self.tok.text or "end of input"
        return UVError(
            E.PARSE,
            f"expected {' or '.join(repr(e) for e in exp)}, found {found!r}",
            self.tok.span,
            expected=", ".join(exp),
            actual=found,
        )

    def expect(self, kind: str) -> Token:
        if not self.at(kind):
            raise self.fail([kind])
        return self.advance()

    def span_from(self, start: SourceSpan) -> SourceSpan:
        prev = self.tokens[max(self.pos - 1, 0)]
        return start.to(prev.span)

    # declarations

    def module(self, file: str) -> SurfaceModule:
        decls = []
        while not self.at("EOF"):
            decls.append(self.decl())
        return SurfaceModule(tuple(decls), file)

    def decl(self) -> SurfaceDecl:
        start = self.tok.span
        if not self.at("def", "postulate"):
            raise self.fail(["def", "postulate"])
        kind = self.advance().kind
        name = self.expect("IDENT").text
        level_params: list[str] = []
        if self.at("["):
            self.advance()
            while self.at("IDENT"):
                level_params.append(self.advance().text)
            if not level_params:
                raise self.fail(["IDENT"])
            self.expect("]")
        binders = []
        while self.at("("):
            binders.append(self.typed_binder())
        self.expect(":")
        ty = self.term()
        body = None
        if kind == "def":
            self.expect(":=")
            body = self.term()
        elif self.at(":="):
            raise UVError(E.PARSE, "a postulate has no body", self.tok.span)
        return SurfaceDecl(kind, name, tuple(level_params), tuple(binders), ty, body, self.span_from(start))

    def typed_binder(self) -> SBinder:
        start = self.expect("(").span
        names = []
        while self.at("IDENT"):
            names.append(self.advance().text)
        if not names:
            raise self.fail(["IDENT"])
        self.expect(":")
        ty = self.term()
        self.expect(")")
        return SBinder(tuple(names), ty, self.span_from(start))

    # terms

    def term(self) -> STerm:
        start = self.tok.span
        if self.at("λ", "Π", "Σ"):
            binder = self.advance().kind
            groups = []
            while True:
                if self.at("("):
                    groups.append(self.typed_binder())
                elif binder == "λ" and self.at("IDENT"):
                    t = self.advance()
                    groups.append(SBinder((t.text,), None, t.span))
                else:
                    break
            if not groups:
                raise self.fail(["(", "IDENT"] if binder == "λ" else ["("])
            self.expect(",")
            body = self.term()
            return SBind(binder, tuple(groups), body, self.span_from(start))
        left = self.eq()
        if self.at("→"):
            self.advance()
            right = self.term()
            return SInfix("→", left, right, self.span_from(start))
        return left

    def eq(self) -> STerm:
        start = self.tok.span
        lhs = self.sum()
        if self.at("="):
            self.advance()
            rhs = self.sum()
            self.expect("in")
            ty = self.sum()
            return SEq(lhs, rhs, ty, self.span_from(start))
        return lhs

    def sum(self) -> STerm:
        start = self.tok.span
        left = self.prod()
        if self.at("+"):
            self.advance()
            return SInfix("+", left, self.sum(), self.span_from(start))
        return left

    def prod(self) -> STerm:
        start = self.tok.span
        left = self.app()
        if self.at("×"):
            self.advance()
            return SInfix("×", left, self.prod(), self.span_from(start))
        return left

    def app(self) -> STerm:
        start = self.tok.span
        if self.at(*KEYWORD_ARITY):
            kw = self.advance().kind
            args = tuple(self.atom() for _ in range(KEYWORD_ARITY[kw]))
            head: STerm = SKeyword(kw, args, self.span_from(start))
        elif self.at(*_SORTS):
            sort = self.advance().kind
            head = SSort(sort, self.level_post(), self.span_from(start))
        else:
            head = self.atom()
        while self.at(*_ATOM_START):
            head = SApp(head, self.atom(), self.span_from(start))
        return head

    def atom(self) -> STerm:
        start = self.tok.span
        t = self.tok
        match t.kind:
            case "IDENT":
                self.advance()
                levels = None
                if self.at("[") and self.tok.span.start == t.span.end:
                    self.advance()
                    ls = []
                    while not self.at("]"):
                        ls.append(self.level())
                    self.advance()
                    levels = tuple(ls)
                return SName(t.text, levels, self.span_from(start))
            case "NUMBER":
                self.advance()
                return SNumber(int(t.text), t.span)
            case "Nat" | "zero" | "star":
                self.advance()
                return SConst(t.kind, t.span)
            case "(":
                self.advance()
                items = [self.term()]
                while self.at(","):
                    self.advance()
                    items.append(self.term())
                self.expect(")")
                if len(items) == 1:
                    return items[0]
                out = items[-1]
                for item in reversed(items[:-1]):
                    out = SPair(item, out, self.span_from(start))
                return out
        raise self.fail(sorted(_ATOM_START))

    # levels

    def level(self) -> LevelExpr:
        out = self.level_post()
        while self.at("⊔"):
            self.advance()
            out = LMax(out, self.level_post())
        return out

    def level_post(self) -> LevelExpr:
        t = self.tok
        if t.kind == "IDENT":
            self.advance()
            out: LevelExpr = LVar(t.text)
        elif t.kind == "NUMBER":
            self.advance()
            out = level_const(int(t.text))
        elif t.kind == "(":
            self.advance()
            out = self.level()
            self.expect(")")
        else:
            raise self.fail(["IDENT", "NUMBER", "("])
        while self.at("⁺"):
            self.advance()
            out = LSuc(out)
        return out


def parse_module(source: str, file: str = "<input>") -> SurfaceModule:
    return Parser(tokenize(source, file)).module(file)


def parse_term(source: str, file: str = "<input>") -> STerm:
    p = Parser(tokenize(source, file))
    t = p.term()
    if not p.at("EOF"):
        raise p.fail(["EOF"])
    return t


def parse_level(source: str, file: str = "<input>") -> LevelExpr:
    p = Parser(tokenize(source, file))
    lv = p.level()
    if not p.at("EOF"):
        raise p.fail(["EOF"])
    return lv


__all__ = ["Parser", "parse_level", "parse_module", "parse_term"]
