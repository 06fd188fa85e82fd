"""Semantic domain for normalization by evaluation.

Values are in weak head normal form by construction.  Binders are closures:
a core term paired with the environment it was built in, so substitution on
raw terms never happens.  Neutral values carry their own type, which is what
lets readback reconstruct eliminator frames with type-directed arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Union

from ..levels import LevelNF


@dataclass(frozen=True, eq=False)
class Closure:
    glob: Any
    levels: dict
    env: tuple
    body: Any

    def __call__(self, arg: "Value") -> "Value":
        from .nbe import evaluate

        return evaluate(self.glob, self.levels, self.env + (arg,), self.body)


@dataclass(frozen=True, eq=False)
class NativeClosure:
    """A binder whose body is computed by a Python function."""

    fn: Callable[["Value"], "Value"]

    def __call__(self, arg: "Value") -> "Value":
        return self.fn(arg)


AnyClosure = Union[Closure, NativeClosure]


@dataclass(frozen=True, eq=False)
class VUniverse:
    level: LevelNF


@dataclass(frozen=True, eq=False)
class VPi:
    dom: "Value"
    cod: AnyClosure
    name: str = "_"


@dataclass(frozen=True, eq=False)
class VLam:
    body: AnyClosure
    name: str = "x"


@dataclass(frozen=True, eq=False)
class VSigma:
    dom: "Value"
    cod: AnyClosure
    name: str = "_"


@dataclass(frozen=True, eq=False)
class VPair:
    fst: "Value"
    snd: "Value"


@dataclass(frozen=True, eq=False)
class VId:
    type: "Value"
    lhs: "Value"
    rhs: "Value"


@dataclass(frozen=True, eq=False)
class VRefl:
    type: "Value"
    point: "Value"


@dataclass(frozen=True, eq=False)
class VSum:
    left: "Value"
    right: "Value"


@dataclass(frozen=True, eq=False)
class VInl:
    arg: "Value"


@dataclass(frozen=True, eq=False)
class VInr:
    arg: "Value"


@dataclass(frozen=True, eq=False)
class VEmpty:
    level: LevelNF


@dataclass(frozen=True, eq=False)
class VUnit:
    level: LevelNF


@dataclass(frozen=True, eq=False)
class VStar:
    pass


@dataclass(frozen=True, eq=False)
class VNat:
    pass


@dataclass(frozen=True, eq=False)
class VZero:
    pass


@dataclass(frozen=True, eq=False)
class VSuc:
    arg: "Value"


# neutral heads


@dataclass(frozen=True)
class HVar:
    """A free variable, identified by its de Bruijn level."""

    level: int
    name: str = field(default="x", compare=False)


@dataclass(frozen=True)
class HGlobal:
    """An applied postulate; postulates never unfold."""

    name: str
    levels: tuple[LevelNF, ...] = ()


# elimination frames, innermost first


@dataclass(frozen=True, eq=False)
class FApp:
    arg: "Value"
    arg_type: "Value"


@dataclass(frozen=True, eq=False)
class FPr1:
    pass


@dataclass(frozen=True, eq=False)
class FPr2:
    pass


@dataclass(frozen=True, eq=False)
class FJ:
    type: "Value"
    point: "Value"
    motive: "Value"
    base: "Value"
    end: "Value"


@dataclass(frozen=True, eq=False)
class FNatInd:
    motive: "Value"
    zero: "Value"
    step: "Value"


@dataclass(frozen=True, eq=False)
class FSumInd:
    left: "Value"
    right: "Value"
    motive: "Value"
    on_left: "Value"
    on_right: "Value"


@dataclass(frozen=True, eq=False)
class FAbsurd:
    empty: "Value"
    motive: "Value"


@dataclass(frozen=True, eq=False)
class FUnitInd:
    unit: "Value"
    motive: "Value"
    base: "Value"


Frame = Union[FApp, FPr1, FPr2, FJ, FNatInd, FSumInd, FAbsurd, FUnitInd]


@dataclass(frozen=True, eq=False)
class VNeutral:
    type: "Value"
    head: Union[HVar, HGlobal]
    spine: tuple = ()

    def push(self, frame: Frame, type: "Value") -> "VNeutral":
        return VNeutral(type, self.head, self.spine + (frame,))


Value = Union[
    VUniverse, VPi, VLam, VSigma, VPair, VId, VRefl, VSum, VInl, VInr,
    VEmpty, VUnit, VStar, VNat, VZero, VSuc, VNeutral,
]


def fresh(depth: int, type: Value, name: str = "x") -> VNeutral:
    return VNeutral(type, HVar(depth, name))


def arrow(dom: Value, cod: Value) -> VPi:
    return VPi(dom, NativeClosure(lambda _: cod))


def pi(dom: Value, fn: Callable[[Value], Value], name: str = "x") -> VPi:
    return VPi(dom, NativeClosure(fn), name)
