"""Bidirectional type checking of core declarations.

``infer`` synthesizes types for variables, globals, formers, applications,
projections and eliminators; ``check`` handles the introduction forms that
carry no type information (lambdas, pairs, injections, ``star``) and falls
back to inference plus definitional equality for everything else.
Universes are never cumulative: ``U l`` only checks against ``U l⁺``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from . import errors as E
from .core import terms as T
from .core.nbe import (
    apply,
    convertible,
    convertible_types,
    eval_level,
    evaluate,
    global_type,
    pr1,
    readback,
    readback_type,
)
from .core.printer import show
from .core.values import (
    Closure,
    Value,
    VEmpty,
    VId,
    VInl,
    VInr,
    VNat,
    VPi,
    VRefl,
    VSigma,
    VStar,
    VSuc,
    VSum,
    VUnit,
    VUniverse,
    VZero,
    arrow,
    fresh,
    pi,
)
from .errors import SourceSpan, UVError
from .levels import LevelNF, LVar

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_SHOW_LIMIT = 600


@dataclass(frozen=True)
class Declaration:
    name: str
    level_params: tuple[str, ...]
    type: T.Term
    body: Optional[T.Term]
    span: Optional[SourceSpan] = field(default=None, compare=False)
    file: Optional[str] = field(default=None, compare=False)
    param_names: tuple[str, ...] = field(default=(), compare=False)

    @property
    def is_postulate(self) -> bool:
        return self.body is None


class GlobalEnv:
    """Insertion-ordered, append-only map from names to checked declarations."""

    def __init__(self, entries: Optional[dict] = None, value_cache=None, type_cache=None):
        self._entries: dict[str, Declaration] = dict(entries or {})
        self.value_cache: dict = dict(value_cache or {})
        self.type_cache: dict = dict(type_cache or {})

    def lookup(self, name: str) -> Declaration:
        return self._entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries.values())

    @property
    def names(self) -> list[str]:
        return list(self._entries)

    def postulates(self) -> list[Declaration]:
        return [d for d in self._entries.values() if d.is_postulate]

    def extend(self, decl: Declaration) -> "GlobalEnv":
        if decl.name in self._entries:
            raise UVError(E.DUPLICATE, f"'{decl.name}' is already defined", decl.span, declaration=decl.name)
        entries = dict(self._entries)
        entries[decl.name] = decl
        return GlobalEnv(entries, self.value_cache, self.type_cache)

    def type_of(self, name: str, levels: Sequence[LevelNF] = ()) -> Value:
        return global_type(self, name, tuple(levels))


@dataclass(frozen=True)
class Context:
    names: tuple[str, ...] = ()
    types: tuple = ()
    env: tuple = ()

    @property
    def depth(self) -> int:
        return len(self.types)

    def bind(self, name: str, type: Value) -> tuple["Context", Value]:
        x = fresh(self.depth, type, name)
        return Context(self.names + (name,), self.types + (type,), self.env + (x,)), x


class Checker:
    def __init__(self, glob: GlobalEnv, level_params: Iterable[str] = ()):
        self.glob = glob
        self.level_params = tuple(level_params)
        self.lenv = {u: LVar(u) for u in self.level_params}

    # helpers

    def eval(self, ctx: Context, t: T.Term) -> Value:
        return evaluate(self.glob, self.lenv, ctx.env, t)

    def show_type(self, ctx: Context, v: Value) -> str:
        return _clip(show(readback_type(ctx.depth, v), ctx.names))

    def show_term(self, ctx: Context, ty: Value, v: Value) -> str:
        return _clip(show(readback(ctx.depth, ty, v), ctx.names))

    def _err(self, category: str, message: str, t: T.Term, **kw) -> UVError:
        return UVError(category, message, getattr(t, "span", None), **kw)

    def conv_types(self, ctx: Context, a: Value, b: Value) -> bool:
        return convertible_types(ctx.depth, a, b)

    # synthesis

    def infer_universe(self, ctx: Context, t: T.Term) -> LevelNF:
        ty = self.infer(ctx, t)
        if not isinstance(ty, VUniverse):
            raise self._err(
                E.TYPE_MISMATCH, "expected a type", t, expected="U _", actual=self.show_type(ctx, ty)
            )
        return ty.level

    def infer(self, ctx: Context, t: T.Term) -> Value:
        match t:
            case T.Var(i):
                return ctx.types[-1 - i]
            case T.Global(name, levels):
                if name not in self.glob:
                    raise self._err(E.UNBOUND, f"unknown global '{name}'", t)
                decl = self.glob.lookup(name)
                if len(levels) != len(decl.level_params):
                    raise self._err(
                        E.ARITY,
                        f"'{name}' takes {len(decl.level_params)} level argument(s), got {len(levels)}",
                        t,
                    )
                nfs = tuple(eval_level(self.lenv, l) for l in levels)
                return global_type(self.glob, name, nfs)
            case T.Universe(level):
                return VUniverse(eval_level(self.lenv, level).suc())
            case T.Pi(dom, cod) | T.Sigma(dom, cod):
                u = self.infer_universe(ctx, dom)
                inner, _ = ctx.bind(t.name, self.eval(ctx, dom))
                v = self.infer_universe(inner, cod)
                return VUniverse(u.join(v))
            case T.Lam(body, dom=dom) if dom is not None:
                self.infer_universe(ctx, dom)
                dv = self.eval(ctx, dom)
                inner, _ = ctx.bind(t.name, dv)
                body_ty = self.infer(inner, body)
                cod = readback_type(inner.depth, body_ty)
                return VPi(dv, Closure(self.glob, self.lenv, ctx.env, cod), t.name)
            case T.App(fn, arg):
                fty = self.infer(ctx, fn)
                if not isinstance(fty, VPi):
                    raise self._err(
                        E.TYPE_MISMATCH,
                        "applying a non-function",
                        fn,
                        expected="a Π type",
                        actual=self.show_type(ctx, fty),
                    )
                self.check(ctx, arg, fty.dom)
                return fty.cod(self.eval(ctx, arg))
            case T.Pr1(arg) | T.Pr2(arg):
                pty = self.infer(ctx, arg)
                if not isinstance(pty, VSigma):
                    raise self._err(
                        E.TYPE_MISMATCH,
                        "projecting from a non-pair",
                        arg,
                        expected="a Σ type",
                        actual=self.show_type(ctx, pty),
                    )
                if isinstance(t, T.Pr1):
                    return pty.dom
                return pty.cod(pr1(self.eval(ctx, arg)))
            case T.IdT(ty, a, b):
                u = self.infer_universe(ctx, ty)
                tv = self.eval(ctx, ty)
                self.check(ctx, a, tv)
                self.check(ctx, b, tv)
                return VUniverse(u)
            case T.Refl(ty, a):
                self.infer_universe(ctx, ty)
                tv = self.eval(ctx, ty)
                self.check(ctx, a, tv)
                av = self.eval(ctx, a)
                return VId(tv, av, av)
            case T.J(ty, a, motive, base, end, path):
                self.infer_universe(ctx, ty)
                tv = self.eval(ctx, ty)
                self.check(ctx, a, tv)
                av = self.eval(ctx, a)
                self.check_family(ctx, motive, [lambda _: tv, lambda xs: VId(tv, av, xs[0])])
                mv = self.eval(ctx, motive)
                self.check(ctx, base, apply(apply(mv, av), VRefl(tv, av)))
                self.check(ctx, end, tv)
                ev = self.eval(ctx, end)
                self.check(ctx, path, VId(tv, av, ev))
                return apply(apply(mv, ev), self.eval(ctx, path))
            case T.SumT(a, b):
                return VUniverse(self.infer_universe(ctx, a).join(self.infer_universe(ctx, b)))
            case T.SumInd(motive, on_left, on_right, scrutinee):
                sty = self.infer(ctx, scrutinee)
                if not isinstance(sty, VSum):
                    raise self._err(
                        E.TYPE_MISMATCH, "sumInd on a non-sum", scrutinee,
                        expected="_ + _", actual=self.show_type(ctx, sty),
                    )
                self.check_family(ctx, motive, [lambda _: sty])
                mv = self.eval(ctx, motive)
                self.check(ctx, on_left, pi(sty.left, lambda x: apply(mv, VInl(x))))
                self.check(ctx, on_right, pi(sty.right, lambda y: apply(mv, VInr(y))))
                return apply(mv, self.eval(ctx, scrutinee))
            case T.EmptyT(level) | T.UnitT(level):
                return VUniverse(eval_level(self.lenv, level))
            case T.Absurd(motive, scrutinee):
                sty = self.infer(ctx, scrutinee)
                if not isinstance(sty, VEmpty):
                    raise self._err(
                        E.TYPE_MISMATCH, "absurd on a non-empty type", scrutinee,
                        expected="Empty _", actual=self.show_type(ctx, sty),
                    )
                self.check_family(ctx, motive, [lambda _: sty])
                return apply(self.eval(ctx, motive), self.eval(ctx, scrutinee))
            case T.UnitInd(motive, base, scrutinee):
                sty = self.infer(ctx, scrutinee)
                if not isinstance(sty, VUnit):
                    raise self._err(
                        E.TYPE_MISMATCH, "unitInd on a non-unit type", scrutinee,
                        expected="Unit _", actual=self.show_type(ctx, sty),
                    )
                self.check_family(ctx, motive, [lambda _: sty])
                mv = self.eval(ctx, motive)
                self.check(ctx, base, apply(mv, VStar()))
                return apply(mv, self.eval(ctx, scrutinee))
            case T.NatT():
                return VUniverse(LevelNF(0, ()))
            case T.NatZero():
                return VNat()
            case T.NatSuc(arg):
                self.check(ctx, arg, VNat())
                return VNat()
            case T.NatInd(motive, zero, step, scrutinee):
                self.check_family(ctx, motive, [lambda _: VNat()])
                mv = self.eval(ctx, motive)
                self.check(ctx, zero, apply(mv, VZero()))
                step_ty = pi(VNat(), lambda k: arrow(apply(mv, k), apply(mv, VSuc(k))), "n")
                self.check(ctx, step, step_ty)
                self.check(ctx, scrutinee, VNat())
                return apply(mv, self.eval(ctx, scrutinee))
        what = type(t).__name__
        raise self._err(E.NOT_INFERABLE, f"cannot infer the type of this {what}; add a type", t)

    def check_family(self, ctx: Context, motive: T.Term, doms: list[Callable]) -> None:
        """Check that ``motive`` is a type family over the telescope ``doms``.

        Each entry of ``doms`` maps the variables bound so far to the next
        domain.  The target universe is whatever the family's body lives in.
        """
        bound: list[Value] = []
        term = motive
        inner = ctx
        k = 0
        while k < len(doms) and isinstance(term, T.Lam):
            dv = doms[k](bound)
            if term.dom is not None:
                self.infer_universe(inner, term.dom)
                if not self.conv_types(inner, self.eval(inner, term.dom), dv):
                    raise self._err(
                        E.TYPE_MISMATCH, "motive binder has the wrong type", term.dom,
                        expected=self.show_type(inner, dv),
                        actual=self.show_type(inner, self.eval(inner, term.dom)),
                    )
            inner, x = inner.bind(term.name, dv)
            bound.append(x)
            term = term.body
            k += 1
        ty = self.infer(inner, term)
        head_ctx = inner
        while k < len(doms):
            dv = doms[k](bound)
            if not isinstance(ty, VPi) or not self.conv_types(head_ctx, ty.dom, dv):
                raise self._err(
                    E.TYPE_MISMATCH, "motive is not a family over the expected domain", term,
                    expected=self.show_type(head_ctx, dv),
                    actual=self.show_type(head_ctx, ty),
                )
            head_ctx, x = head_ctx.bind("_", dv)
            bound.append(x)
            ty = ty.cod(x)
            k += 1
        if not isinstance(ty, VUniverse):
            raise self._err(
                E.TYPE_MISMATCH, "motive must land in a universe", term,
                expected="U _", actual=self.show_type(head_ctx, ty),
            )

    # checking

    def check(self, ctx: Context, t: T.Term, expected: Value) -> None:
        match t:
            case T.Lam(body, dom=dom):
                if not isinstance(expected, VPi):
                    raise self._err(
                        E.TYPE_MISMATCH, "a λ needs a Π type", t,
                        expected=self.show_type(ctx, expected), actual="a Π type",
                    )
                if dom is not None:
                    self.infer_universe(ctx, dom)
                    if not self.conv_types(ctx, self.eval(ctx, dom), expected.dom):
                        raise self._err(
                            E.TYPE_MISMATCH, "binder annotation disagrees with the expected domain", dom,
                            expected=self.show_type(ctx, expected.dom),
                            actual=self.show_type(ctx, self.eval(ctx, dom)),
                        )
                inner, x = ctx.bind(t.name, expected.dom)
                self.check(inner, body, expected.cod(x))
                return
            case T.Pair(a, b):
                if not isinstance(expected, VSigma):
                    raise self._err(
                        E.TYPE_MISMATCH, "a pair needs a Σ type", t,
                        expected=self.show_type(ctx, expected), actual="a Σ type",
                    )
                self.check(ctx, a, expected.dom)
                self.check(ctx, b, expected.cod(self.eval(ctx, a)))
                return
            case T.Inl(arg) | T.Inr(arg):
                if not isinstance(expected, VSum):
                    raise self._err(
                        E.TYPE_MISMATCH, "an injection needs a sum type", t,
                        expected=self.show_type(ctx, expected), actual="_ + _",
                    )
                self.check(ctx, arg, expected.left if isinstance(t, T.Inl) else expected.right)
                return
            case T.Star():
                if not isinstance(expected, VUnit):
                    raise self._err(
                        E.TYPE_MISMATCH, "star needs a unit type", t,
                        expected=self.show_type(ctx, expected), actual="Unit _",
                    )
                return
            case T.Refl(ty, a) if isinstance(expected, VId):
                self.infer_universe(ctx, ty)
                tv = self.eval(ctx, ty)
                if not self.conv_types(ctx, tv, expected.type):
                    raise self._err(
                        E.TYPE_MISMATCH, "refl at the wrong type", ty,
                        expected=self.show_type(ctx, expected.type), actual=self.show_type(ctx, tv),
                    )
                self.check(ctx, a, tv)
                av = self.eval(ctx, a)
                for end in (expected.lhs, expected.rhs):
                    if not convertible(ctx.depth, tv, av, end):
                        raise self._err(
                            E.ENDPOINT_MISMATCH,
                            "refl proves only definitionally equal endpoints",
                            t,
                            expected=self.show_term(ctx, tv, end),
                            actual=self.show_term(ctx, tv, av),
                        )
                return
        actual = self.infer(ctx, t)
        if not self.conv_types(ctx, actual, expected):
            category = E.TYPE_MISMATCH
            if isinstance(actual, VUniverse) and isinstance(expected, VUniverse):
                category = E.UNIVERSE_MISMATCH
            raise self._err(
                category,
                "type mismatch" if category == E.TYPE_MISMATCH else "universe levels differ",
                t,
                expected=self.show_type(ctx, expected),
                actual=self.show_type(ctx, actual),
            )


def _clip(s: str) -> str:
    return s if len(s) <= _SHOW_LIMIT else s[: _SHOW_LIMIT - 3] + "..."


def check_declaration(glob: GlobalEnv, decl: Declaration) -> GlobalEnv:
    """Check ``decl`` against ``glob`` and return the extended environment."""
    try:
        if decl.name in glob:
            raise UVError(E.DUPLICATE, f"'{decl.name}' is already defined", decl.span)
        if len(set(decl.level_params)) != len(decl.level_params):
            raise UVError(E.DUPLICATE, "repeated level parameter", decl.span)
        checker = Checker(glob, decl.level_params)
        ctx = Context()
        checker.infer_universe(ctx, decl.type)
        if decl.body is not None:
            checker.check(ctx, decl.body, checker.eval(ctx, decl.type))
        return glob.extend(decl)
    except UVError as err:
        raise err.with_context(declaration=decl.name, span=decl.span, file=decl.file)
    except RecursionError:
        raise UVError(
            E.TYPE_MISMATCH, "term too deeply nested for the checker", decl.span,
            declaration=decl.name, file=decl.file,
        ) from None


@dataclass
class ModuleResult:
    env: GlobalEnv
    errors: list[UVError] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def check_module(glob: GlobalEnv, decls: Iterable[Declaration], keep_going: bool = False) -> ModuleResult:
    result = ModuleResult(glob)
    for decl in decls:
        try:
            result.env = check_declaration(result.env, decl)
            result.checked.append(decl.name)
        except UVError as err:
            result.errors.append(err)
            if not keep_going:
                break
    return result
