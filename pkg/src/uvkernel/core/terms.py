"""Core syntax with de Bruijn indices.

Binder names and source spans ride along for printing and diagnostics only;
they are excluded from equality, so alpha-equivalent terms compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import SourceSpan
from ..levels import LevelExpr, LMax, LSuc, LVar, LZero


def _span():
    return field(default=None, compare=False, repr=False)


def _name(default="_"):
    return field(default=default, compare=False)


@dataclass(frozen=True)
class Var:
    index: int
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Global:
    name: str
    levels: tuple[LevelExpr, ...] = ()
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Universe:
    level: LevelExpr
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Pi:
    dom: "Term"
    cod: "Term"
    name: str = _name()
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Lam:
    body: "Term"
    name: str = _name("x")
    dom: Optional["Term"] = None
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Sigma:
    dom: "Term"
    cod: "Term"
    name: str = _name()
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Pair:
    fst: "Term"
    snd: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Pr1:
    arg: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Pr2:
    arg: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class IdT:
    type: "Term"
    lhs: "Term"
    rhs: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Refl:
    type: "Term"
    point: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class J:
    """Based path induction: ``J A a C d y p : C y p``."""

    type: "Term"
    point: "Term"
    motive: "Term"
    base: "Term"
    end: "Term"
    path: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SumT:
    left: "Term"
    right: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Inl:
    arg: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Inr:
    arg: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SumInd:
    motive: "Term"
    on_left: "Term"
    on_right: "Term"
    scrutinee: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class EmptyT:
    level: LevelExpr
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Absurd:
    motive: "Term"
    scrutinee: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class UnitT:
    level: LevelExpr
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Star:
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class UnitInd:
    motive: "Term"
    base: "Term"
    scrutinee: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class NatT:
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class NatZero:
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class NatSuc:
    arg: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class NatInd:
    motive: "Term"
    zero: "Term"
    step: "Term"
    scrutinee: "Term"
    span: Optional[SourceSpan] = _span()


Term = Union[
    Var, Global, Universe, Pi, Lam, App, Sigma, Pair, Pr1, Pr2, IdT, Refl, J,
    SumT, Inl, Inr, SumInd, EmptyT, Absurd, UnitT, Star, UnitInd,
    NatT, NatZero, NatSuc, NatInd,
]


def numeral(n: int) -> Term:
    t: Term = NatZero()
    for _ in range(n):
        t = NatSuc(t)
    return t


def as_numeral(t: Term) -> Optional[int]:
    n = 0
    while isinstance(t, NatSuc):
        t, n = t.arg, n + 1
    return n if isinstance(t, NatZero) else None


def apps(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


def globals_in(t: Term) -> set[str]:
    """Names of the global references occurring in ``t``."""
    out: set[str] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Global):
            out.add(node.name)
            continue
        for f in node.__dataclass_fields__:
            if f in ("span", "name"):
                continue
            child = getattr(node, f)
            if child is not None and hasattr(child, "__dataclass_fields__") and not _is_level(child):
                stack.append(child)
    return out


def _is_level(x) -> bool:
    return isinstance(x, (LZero, LVar, LSuc, LMax))
