"""Surface pretty-printer.

Output is canonical rather than layout preserving: one declaration per
paragraph, Unicode symbols, and only the parentheses the grammar needs, so
that printing, re-parsing and printing again is a fixed point.
"""

from __future__ import annotations

from ..core.printer import APP, ARROW, ATOM, BINDER, EQ, PROD, SUM, show_level
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

_INFIX = {"→": (ARROW, EQ, BINDER), "+": (SUM, PROD, SUM), "×": (PROD, APP, PROD)}


def _binder(b: SBinder) -> str:
    names = " ".join(b.names)
    if b.type is None:
        return names
    return f"({names} : {pretty(b.type)})"


def _show(t: STerm) -> tuple[str, int]:
    match t:
        case SName(name, levels):
            if levels is None:
                return name, ATOM
            return name + "[" + " ".join(show_level(l, atom=True) for l in levels) + "]", ATOM
        case SSort(sort, level):
            return f"{sort} {show_level(level, atom=True)}", APP
        case SBind(binder, binders, body):
            groups = " ".join(_binder(b) for b in binders)
            return f"{binder} {groups}, {pretty(body)}", BINDER
        case SInfix(op, left, right):
            prec, lp, rp = _INFIX[op]
            return f"{pretty(left, lp)} {op} {pretty(right, rp)}", prec
        case SEq(lhs, rhs, ty):
            return f"{pretty(lhs, SUM)} = {pretty(rhs, SUM)} in {pretty(ty, SUM)}", EQ
        case SApp(fn, arg):
            return f"{pretty(fn, APP)} {pretty(arg, ATOM)}", APP
        case SKeyword(kw, args):
            return kw + " " + " ".join(pretty(a, ATOM) for a in args), APP
        case SConst(kw):
            return kw, ATOM
        case SNumber(value):
            return str(value), ATOM
        case SPair(a, b):
            items = [pretty(a)]
            while isinstance(b, SPair):
                items.append(pretty(b.fst))
                b = b.snd
            items.append(pretty(b))
            return "(" + ", ".join(items) + ")", ATOM
    raise TypeError(t)


def pretty(t: STerm, prec: int = BINDER) -> str:
    s, p = _show(t)
    # a keyword head or a sort cannot sit in function position without parens
    if prec == APP and isinstance(t, (SKeyword, SSort)):
        return f"({s})"
    return f"({s})" if p < prec else s


def pretty_decl(d: SurfaceDecl) -> str:
    head = f"{d.kind} {d.name}"
    if d.level_params:
        head += " [" + " ".join(d.level_params) + "]"
    for b in d.binders:
        head += " " + _binder(b)
    out = f"{head}\n  : {pretty(d.type)}"
    if d.body is not None:
        out += f"\n  := {pretty(d.body)}"
    return out


def pretty_module(m: SurfaceModule) -> str:
    return "\n\n".join(pretty_decl(d) for d in m.declarations) + "\n"
