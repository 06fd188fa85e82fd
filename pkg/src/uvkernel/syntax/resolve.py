"""Name resolution: surface declarations to core declarations.

Local names become de Bruijn indices, everything else must be a prior
global declaration applied to exactly as many level arguments as it has
level parameters.  A declaration's telescope ``(x : A) ...`` becomes a Π in
its type and a λ in its body.
"""

from __future__ import annotations

from typing import Mapping, Optional

from .. import errors as E
from ..checker import Declaration
from ..core import terms as T
from ..errors import UVError
from ..levels import LevelExpr, free_level_vars
from .surface import (
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

_KEYWORD_NODES = {
    "Id": T.IdT, "refl": T.Refl, "J": T.J, "suc": T.NatSuc, "natInd": T.NatInd,
    "inl": T.Inl, "inr": T.Inr, "sumInd": T.SumInd, "absurd": T.Absurd,
    "unitInd": T.UnitInd, "pr1": T.Pr1, "pr2": T.Pr2,
}


class Resolver:
    def __init__(self, globals_: Mapping[str, int], level_params: tuple[str, ...], decl_name: str):
        self.globals = globals_
        self.level_params = frozenset(level_params)
        self.decl_name = decl_name

    def _err(self, category: str, message: str, span) -> UVError:
        return UVError(category, message, span, declaration=self.decl_name)

    def level(self, e: LevelExpr, span) -> LevelExpr:
        missing = free_level_vars(e) - self.level_params
        if missing:
            name = sorted(missing)[0]
            raise self._err(E.UNBOUND, f"unbound level variable '{name}'", span)
        return e

    def term(self, t: STerm, scope: tuple[str, ...]) -> T.Term:
        span = t.span
        match t:
            case SName(name, levels):
                if levels is None and name in scope:
                    return T.Var(len(scope) - 1 - _rindex(scope, name), span)
                if name in scope:
                    raise self._err(E.ARITY, f"local variable '{name}' takes no level arguments", span)
                if name not in self.globals:
                    raise self._err(E.UNBOUND, f"unbound identifier '{name}'", span)
                levels = levels or ()
                arity = self.globals[name]
                if len(levels) != arity:
                    raise self._err(
                        E.ARITY, f"'{name}' takes {arity} level argument(s), got {len(levels)}", span
                    )
                return T.Global(name, tuple(self.level(l, span) for l in levels), span)
            case SSort(sort, level):
                node = {"U": T.Universe, "Empty": T.EmptyT, "Unit": T.UnitT}[sort]
                return node(self.level(level, span), span)
            case SBind(binder, binders, body):
                return self.bind(binder, binders, body, scope)
            case SInfix(op, left, right):
                a = self.term(left, scope)
                if op == "+":
                    return T.SumT(a, self.term(right, scope), span)
                b = self.term(right, scope + ("_",))
                return (T.Pi if op == "→" else T.Sigma)(a, b, "_", span)
            case SEq(lhs, rhs, ty):
                return T.IdT(self.term(ty, scope), self.term(lhs, scope), self.term(rhs, scope), span)
            case SApp(fn, arg):
                return T.App(self.term(fn, scope), self.term(arg, scope), span)
            case SKeyword(kw, args):
                return _KEYWORD_NODES[kw](*(self.term(a, scope) for a in args), span=span)
            case SConst(kw):
                return {"Nat": T.NatT, "zero": T.NatZero, "star": T.Star}[kw](span)
            case SNumber(value):
                out: T.Term = T.NatZero(span)
                for _ in range(value):
                    out = T.NatSuc(out, span)
                return out
            case SPair(a, b):
                return T.Pair(self.term(a, scope), self.term(b, scope), span)
        raise TypeError(f"unknown surface node {t!r}")

    def bind(self, binder: str, binders: tuple[SBinder, ...], body: STerm, scope: tuple[str, ...]) -> T.Term:
        flat: list[tuple[str, Optional[T.Term], object]] = []
        inner = scope
        for group in binders:
            for name in group.names:
                dom = None if group.type is None else self.term(group.type, inner)
                flat.append((name, dom, group.span))
                inner = inner + (name,)
        out = self.term(body, inner)
        for name, dom, span in reversed(flat):
            match binder:
                case "λ":
                    out = T.Lam(out, name, dom, span)
                case "Π":
                    out = T.Pi(dom, out, name, span)
                case "Σ":
                    out = T.Sigma(dom, out, name, span)
        return out


def _rindex(scope: tuple[str, ...], name: str) -> int:
    for i in range(len(scope) - 1, -1, -1):
        if scope[i] == name:
            return i
    raise ValueError(name)


def resolve_declaration(decl: SurfaceDecl, globals_: Mapping[str, int], file: Optional[str] = None) -> Declaration:
    """Resolve ``decl`` against ``globals_`` (name to level arity of prior declarations)."""
    if len(set(decl.level_params)) != len(decl.level_params):
        raise UVError(E.DUPLICATE, "repeated level parameter", decl.span, declaration=decl.name)
    if decl.name in globals_:
        raise UVError(E.DUPLICATE, f"'{decl.name}' is already defined", decl.span, declaration=decl.name)
    r = Resolver(globals_, decl.level_params, decl.name)
    ty_term = SBind("Π", decl.binders, decl.type, decl.span) if decl.binders else decl.type
    ty = r.term(ty_term, ())
    body = None
    if decl.body is not None:
        if decl.binders:
            lam_binders = tuple(SBinder(b.names, None, b.span) for b in decl.binders)
            body = r.term(SBind("λ", lam_binders, decl.body, decl.span), ())
        else:
            body = r.term(decl.body, ())
    params = tuple(n for b in decl.binders for n in b.names)
    return Declaration(decl.name, decl.level_params, ty, body, decl.span, file or _file(decl), params)


def _file(decl: SurfaceDecl) -> Optional[str]:
    return decl.span.file if decl.span else None


def resolve_module(
    module: SurfaceModule, globals_: Optional[Mapping[str, int]] = None
) -> list[Declaration]:
    """Resolve every declaration in order; later ones see earlier ones."""
    known = dict(globals_ or {})
    out = []
    for decl in module.declarations:
        core = resolve_declaration(decl, known, module.file)
        known[core.name] = len(core.level_params)
        out.append(core)
    return out
