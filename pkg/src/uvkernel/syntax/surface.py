"""Surface syntax tree produced by the parser.

Names are still strings here; :mod:`uvkernel.syntax.resolve` turns them into
de Bruijn indices and global references.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import SourceSpan
from ..levels import LevelExpr


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SName:
    name: str
    levels: Optional[tuple[LevelExpr, ...]] = None
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SSort:
    """``U l``, ``Empty l`` or ``Unit l``."""

    sort: str
    level: LevelExpr
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SBinder:
    names: tuple[str, ...]
    type: Optional["STerm"]
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SBind:
    """``λ``, ``Π`` or ``Σ`` over a list of binder groups."""

    binder: str
    binders: tuple[SBinder, ...]
    body: "STerm"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SInfix:
    """Non-dependent sugar: ``→``, ``×``, ``+``."""

    op: str
    left: "STerm"
    right: "STerm"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SEq:
    lhs: "STerm"
    rhs: "STerm"
    type: "STerm"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SApp:
    fn: "STerm"
    arg: "STerm"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SKeyword:
    """A builtin applied to exactly its arity of arguments (``J``, ``refl``, ``suc``...)."""

    keyword: str
    args: tuple["STerm", ...]
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SConst:
    """``Nat``, ``zero`` or ``star``."""

    keyword: str
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SNumber:
    value: int
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SPair:
    fst: "STerm"
    snd: "STerm"
    span: Optional[SourceSpan] = _span()


STerm = Union[SName, SSort, SBind, SInfix, SEq, SApp, SKeyword, SConst, SNumber, SPair]


@dataclass(frozen=True)
class SurfaceDecl:
    kind: str  # "def" or "postulate"
    name: str
    level_params: tuple[str, ...]
    binders: tuple[SBinder, ...]
    type: STerm
    body: Optional[STerm]
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class SurfaceModule:
    declarations: tuple[SurfaceDecl, ...]
    file: str = "<input>"

    @property
    def names(self) -> list[str]:
        return [d.name for d in self.declarations]


# arities of keyword heads, in argument order
KEYWORD_ARITY = {
    "Id": 3, "refl": 2, "J": 6, "suc": 1, "natInd": 4, "inl": 1, "inr": 1,
    "sumInd": 4, "absurd": 2, "unitInd": 3, "pr1": 1, "pr2": 1,
}
