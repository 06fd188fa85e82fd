"""Render core terms in `.uv` surface notation."""

from __future__ import annotations

from typing import Sequence

from ..levels import LMax, LevelExpr, LSuc, LVar, LZero
from . import terms as T

# precedence levels shared with the surface printer
BINDER, ARROW, EQ, SUM, PROD, APP, ATOM = range(7)


def show_level(e: LevelExpr, atom: bool = False) -> str:
    match e:
        case LZero():
            return "0"
        case LVar(name):
            return name
        case LSuc(arg):
            n, base = 1, arg
            while isinstance(base, LSuc):
                n, base = n + 1, base.arg
            if isinstance(base, LZero):
                return str(n)
            return show_level(base, atom=True) + "⁺" * n
        case LMax(a, b):
            s = f"{show_level(a)} ⊔ {show_level(b)}"
            return f"({s})" if atom else s
    raise TypeError(e)


def _fresh(name: str, names: Sequence[str]) -> str:
    if name == "_":
        name = "x"
    while name in names:
        name += "'"
    return name


def _uses(t: T.Term, index: int) -> bool:
    """Does ``t`` mention de Bruijn variable ``index``?"""
    match t:
        case T.Var(i):
            return i == index
        case T.Pi(dom, cod) | T.Sigma(dom, cod):
            return _uses(dom, index) or _uses(cod, index + 1)
        case T.Lam(body):
            return (t.dom is not None and _uses(t.dom, index)) or _uses(body, index + 1)
    for f in t.__dataclass_fields__:
        if f in ("span", "name", "level", "levels"):
            continue
        child = getattr(t, f)
        if hasattr(child, "__dataclass_fields__") and _uses(child, index):
            return True
    return False


def show(t: T.Term, names: Sequence[str] = (), prec: int = BINDER) -> str:
    names = list(names)
    s, p = _show(t, names)
    return f"({s})" if p < prec else s


def _paren(t: T.Term, names: list[str], prec: int) -> str:
    s, p = _show(t, names)
    return f"({s})" if p < prec else s


def _show(t: T.Term, names: list[str]) -> tuple[str, int]:
    match t:
        case T.Var(i):
            if i < len(names):
                return names[-1 - i], ATOM
            return f"#{i}", ATOM
        case T.Global(name, levels):
            if levels:
                return name + "[" + " ".join(show_level(l, atom=True) for l in levels) + "]", ATOM
            return name, ATOM
        case T.Universe(level):
            return "U " + show_level(level, atom=True), APP
        case T.Pi(dom, cod) | T.Sigma(dom, cod):
            binder = "Π" if isinstance(t, T.Pi) else "Σ"
            if not _uses(cod, 0):
                if binder == "Π":
                    return f"{_paren(dom, names, EQ)} → {_paren(cod, names + ['_'], BINDER)}", ARROW
                return f"{_paren(dom, names, APP)} × {_paren(cod, names + ['_'], PROD)}", PROD
            x = _fresh(t.name, names)
            return f"{binder} ({x} : {_paren(dom, names, BINDER)}), {_paren(cod, names + [x], BINDER)}", BINDER
        case T.Lam(body):
            x = _fresh(t.name, names)
            binder = x if t.dom is None else f"({x} : {_paren(t.dom, names, BINDER)})"
            return f"λ {binder}, {_paren(body, names + [x], BINDER)}", BINDER
        case T.App(fn, arg):
            return f"{_paren(fn, names, APP)} {_paren(arg, names, ATOM)}", APP
        case T.Pair(a, b):
            return f"({_paren(a, names, BINDER)} , {_paren(b, names, BINDER)})", ATOM
        case T.IdT(ty, a, b):
            return f"{_paren(a, names, SUM)} = {_paren(b, names, SUM)} in {_paren(ty, names, SUM)}", EQ
        case T.SumT(a, b):
            return f"{_paren(a, names, PROD)} + {_paren(b, names, SUM)}", SUM
        case T.EmptyT(level):
            return "Empty " + show_level(level, atom=True), APP
        case T.UnitT(level):
            return "Unit " + show_level(level, atom=True), APP
        case T.Star():
            return "star", ATOM
        case T.NatT():
            return "Nat", ATOM
        case T.NatZero() | T.NatSuc():
            n = T.as_numeral(t)
            if n is not None:
                return str(n), ATOM
            return f"suc {_paren(t.arg, names, ATOM)}", APP
    keyword = {
        T.Pr1: "pr1", T.Pr2: "pr2", T.Refl: "refl", T.J: "J", T.Inl: "inl", T.Inr: "inr",
        T.SumInd: "sumInd", T.Absurd: "absurd", T.UnitInd: "unitInd", T.NatInd: "natInd",
    }[type(t)]
    args = [getattr(t, f) for f in t.__dataclass_fields__ if f != "span"]
    return keyword + " " + " ".join(_paren(a, names, ATOM) for a in args), APP
