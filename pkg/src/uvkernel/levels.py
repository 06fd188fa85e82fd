"""Universe levels: expressions, max-plus normal forms, and the decision
procedure for their definitional equality.

A level is ``0``, a variable, a successor ``l⁺`` or a join ``a ⊔ b``.  Every
level denotes a function ``ρ ↦ max(c, max(ρ(v) + n_v))`` of the variable
assignment, and :class:`LevelNF` stores exactly that data.  The constant is
kept at least as large as every shift, which makes the representation
canonical: two levels are equal for all assignments iff their normal forms
are structurally equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union


class UnboundLevelVariable(KeyError):
    """Raised when a substitution or assignment misses a level variable."""

    def __init__(self, name: str):
        super().__init__(name)
        self.name = name


@dataclass(frozen=True)
class LZero:
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class LVar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class LSuc:
    arg: "LevelExpr"

    def __str__(self) -> str:
        inner = str(self.arg)
        if isinstance(self.arg, LMax):
            inner = f"({inner})"
        return inner + "⁺"


@dataclass(frozen=True)
class LMax:
    left: "LevelExpr"
    right: "LevelExpr"

    def __str__(self) -> str:
        return f"{self.left} ⊔ {self.right}"


LevelExpr = Union[LZero, LVar, LSuc, LMax]


@dataclass(frozen=True)
class LevelNF:
    constant: int = 0
    atoms: tuple[tuple[str, int], ...] = field(default=())

    @classmethod
    def make(cls, constant: int, atoms: Mapping[str, int]) -> "LevelNF":
        # a variable can exceed any constant, so atoms are never dropped;
        # the constant absorbs every shift to keep the form canonical
        top = max([constant, *atoms.values()])
        return cls(top, tuple(sorted(atoms.items())))

    @property
    def atom_map(self) -> dict[str, int]:
        return dict(self.atoms)

    def suc(self) -> "LevelNF":
        return LevelNF(self.constant + 1, tuple((v, n + 1) for v, n in self.atoms))

    def join(self, other: "LevelNF") -> "LevelNF":
        atoms = dict(self.atoms)
        for v, n in other.atoms:
            atoms[v] = max(atoms.get(v, n), n)
        return LevelNF.make(max(self.constant, other.constant), atoms)

    def __str__(self) -> str:
        return str(embed(self))


def level_const(n: int) -> LevelExpr:
    e: LevelExpr = LZero()
    for _ in range(n):
        e = LSuc(e)
    return e


def level_max(*levels: LevelExpr) -> LevelExpr:
    if not levels:
        return LZero()
    out = levels[0]
    for lv in levels[1:]:
        out = LMax(out, lv)
    return out


def normalize_level(e: LevelExpr) -> LevelNF:
    match e:
        case LZero():
            return LevelNF(0, ())
        case LVar(name):
            return LevelNF(0, ((name, 0),))
        case LSuc(arg):
            return normalize_level(arg).suc()
        case LMax(a, b):
            return normalize_level(a).join(normalize_level(b))
    raise TypeError(f"not a level expression: {e!r}")


def embed(nf: LevelNF) -> LevelExpr:
    """Re-embed a normal form as an expression (joins of shifted atoms)."""
    parts: list[LevelExpr] = []
    for name, shift in nf.atoms:
        term: LevelExpr = LVar(name)
        for _ in range(shift):
            term = LSuc(term)
        parts.append(term)
    if not parts or nf.constant > max(n for _, n in nf.atoms):
        parts.insert(0, level_const(nf.constant))
    return level_max(*parts)


def canonical(e: LevelExpr) -> LevelExpr:
    return embed(normalize_level(e))


def level_equal(a: LevelExpr, b: LevelExpr) -> bool:
    return normalize_level(a) == normalize_level(b)


def substitute_levels(e: LevelExpr, sigma: Mapping[str, LevelExpr]) -> LevelExpr:
    match e:
        case LZero():
            return e
        case LVar(name):
            try:
                return sigma[name]
            except KeyError:
                raise UnboundLevelVariable(name) from None
        case LSuc(arg):
            return LSuc(substitute_levels(arg, sigma))
        case LMax(a, b):
            return LMax(substitute_levels(a, sigma), substitute_levels(b, sigma))
    raise TypeError(f"not a level expression: {e!r}")


def eval_level(e: LevelExpr, rho: Mapping[str, int]) -> int:
    match e:
        case LZero():
            return 0
        case LVar(name):
            try:
                return rho[name]
            except KeyError:
                raise UnboundLevelVariable(name) from None
        case LSuc(arg):
            return eval_level(arg, rho) + 1
        case LMax(a, b):
            return max(eval_level(a, rho), eval_level(b, rho))
    raise TypeError(f"not a level expression: {e!r}")


def free_level_vars(e: LevelExpr) -> frozenset[str]:
    match e:
        case LZero():
            return frozenset()
        case LVar(name):
            return frozenset((name,))
        case LSuc(arg):
            return free_level_vars(arg)
        case LMax(a, b):
            return free_level_vars(a) | free_level_vars(b)
    raise TypeError(f"not a level expression: {e!r}")
