"""Evaluation, type-directed readback, and definitional equality.

The equational theory is beta for functions, projections on pairs, iota for
J, natInd, sumInd and unitInd on their canonical forms, transparent
unfolding of definitions, and eta for Pi and Sigma.  Eta is realized by
readback: at a Pi type every value is read back as a lambda, at a Sigma type
as a pair, so ``f`` and ``λ x, f x`` produce identical normal forms.
"""

from __future__ import annotations

from typing import Mapping

from ..levels import LevelExpr, LevelNF, embed, normalize_level, substitute_levels
from . import terms as T
from .values import (
    Closure,
    FAbsurd,
    FApp,
    FJ,
    FNatInd,
    FPr1,
    FPr2,
    FSumInd,
    FUnitInd,
    HGlobal,
    HVar,
    Value,
    VEmpty,
    VId,
    VInl,
    VInr,
    VLam,
    VNat,
    VNeutral,
    VPair,
    VPi,
    VRefl,
    VSigma,
    VStar,
    VSuc,
    VSum,
    VUnit,
    VUniverse,
    VZero,
    fresh,
    pi,
)


class KernelBug(RuntimeError):
    """An evaluator invariant was violated (ill-typed input reached NbE)."""


LevelEnv = Mapping[str, LevelExpr]


def eval_level(lenv: LevelEnv, e: LevelExpr) -> LevelNF:
    return normalize_level(substitute_levels(e, lenv))


def instantiate_levels(params, levels) -> dict[str, LevelExpr]:
    return {p: embed(nf) for p, nf in zip(params, levels)}


def global_value(glob, name: str, levels: tuple[LevelNF, ...]) -> Value:
    key = (name, levels)
    cached = glob.value_cache.get(key)
    if cached is not None:
        return cached
    entry = glob.lookup(name)
    lenv = instantiate_levels(entry.level_params, levels)
    if entry.body is None:
        ty = global_type(glob, name, levels)
        value: Value = VNeutral(ty, HGlobal(name, levels))
    else:
        value = evaluate(glob, lenv, (), entry.body)
    glob.value_cache[key] = value
    return value


def global_type(glob, name: str, levels: tuple[LevelNF, ...]) -> Value:
    key = (name, levels)
    cached = glob.type_cache.get(key)
    if cached is not None:
        return cached
    entry = glob.lookup(name)
    lenv = instantiate_levels(entry.level_params, levels)
    value = evaluate(glob, lenv, (), entry.type)
    glob.type_cache[key] = value
    return value


def evaluate(glob, lenv: LevelEnv, env: tuple, t: T.Term) -> Value:
    match t:
        case T.Var(i):
            return env[-1 - i]
        case T.Global(name, levels):
            return global_value(glob, name, tuple(eval_level(lenv, l) for l in levels))
        case T.Universe(level):
            return VUniverse(eval_level(lenv, level))
        case T.Pi(dom, cod):
            return VPi(evaluate(glob, lenv, env, dom), Closure(glob, lenv, env, cod), t.name)
        case T.Lam(body):
            return VLam(Closure(glob, lenv, env, body), t.name)
        case T.App(fn, arg):
            return apply(evaluate(glob, lenv, env, fn), evaluate(glob, lenv, env, arg))
        case T.Sigma(dom, cod):
            return VSigma(evaluate(glob, lenv, env, dom), Closure(glob, lenv, env, cod), t.name)
        case T.Pair(a, b):
            return VPair(evaluate(glob, lenv, env, a), evaluate(glob, lenv, env, b))
        case T.Pr1(arg):
            return pr1(evaluate(glob, lenv, env, arg))
        case T.Pr2(arg):
            return pr2(evaluate(glob, lenv, env, arg))
        case T.IdT(ty, a, b):
            ev = lambda x: evaluate(glob, lenv, env, x)  # noqa: E731
            return VId(ev(ty), ev(a), ev(b))
        case T.Refl(ty, a):
            return VRefl(evaluate(glob, lenv, env, ty), evaluate(glob, lenv, env, a))
        case T.J(ty, a, motive, base, end, path):
            ev = lambda x: evaluate(glob, lenv, env, x)  # noqa: E731
            return do_j(ev(ty), ev(a), ev(motive), ev(base), ev(end), ev(path))
        case T.SumT(a, b):
            return VSum(evaluate(glob, lenv, env, a), evaluate(glob, lenv, env, b))
        case T.Inl(arg):
            return VInl(evaluate(glob, lenv, env, arg))
        case T.Inr(arg):
            return VInr(evaluate(glob, lenv, env, arg))
        case T.SumInd(motive, on_left, on_right, scrutinee):
            ev = lambda x: evaluate(glob, lenv, env, x)  # noqa: E731
            return do_sum_ind(ev(motive), ev(on_left), ev(on_right), ev(scrutinee))
        case T.EmptyT(level):
            return VEmpty(eval_level(lenv, level))
        case T.Absurd(motive, scrutinee):
            return do_absurd(evaluate(glob, lenv, env, motive), evaluate(glob, lenv, env, scrutinee))
        case T.UnitT(level):
            return VUnit(eval_level(lenv, level))
        case T.Star():
            return VStar()
        case T.UnitInd(motive, base, scrutinee):
            ev = lambda x: evaluate(glob, lenv, env, x)  # noqa: E731
            return do_unit_ind(ev(motive), ev(base), ev(scrutinee))
        case T.NatT():
            return VNat()
        case T.NatZero():
            return VZero()
        case T.NatSuc(arg):
            return VSuc(evaluate(glob, lenv, env, arg))
        case T.NatInd(motive, zero, step, scrutinee):
            ev = lambda x: evaluate(glob, lenv, env, x)  # noqa: E731
            return do_nat_ind(ev(motive), ev(zero), ev(step), ev(scrutinee))
    raise KernelBug(f"cannot evaluate {t!r}")


# eliminators


def apply(f: Value, a: Value) -> Value:
    if isinstance(f, VLam):
        return f.body(a)
    if isinstance(f, VNeutral) and isinstance(f.type, VPi):
        return f.push(FApp(a, f.type.dom), f.type.cod(a))
    raise KernelBug(f"apply on non-function {type(f).__name__}")


def pr1(v: Value) -> Value:
    if isinstance(v, VPair):
        return v.fst
    if isinstance(v, VNeutral) and isinstance(v.type, VSigma):
        return v.push(FPr1(), v.type.dom)
    raise KernelBug(f"pr1 on non-pair {type(v).__name__}")


def pr2(v: Value) -> Value:
    if isinstance(v, VPair):
        return v.snd
    if isinstance(v, VNeutral) and isinstance(v.type, VSigma):
        return v.push(FPr2(), v.type.cod(pr1(v)))
    raise KernelBug(f"pr2 on non-pair {type(v).__name__}")


def do_j(ty: Value, a: Value, motive: Value, base: Value, end: Value, path: Value) -> Value:
    if isinstance(path, VRefl):
        return base
    if isinstance(path, VNeutral):
        return path.push(FJ(ty, a, motive, base, end), apply(apply(motive, end), path))
    raise KernelBug(f"J on {type(path).__name__}")


def do_nat_ind(motive: Value, zero: Value, step: Value, n: Value) -> Value:
    # iterate over the numeral spine to keep recursion depth flat
    spine = []
    while isinstance(n, VSuc):
        spine.append(n.arg)
        n = n.arg
    if isinstance(n, VZero):
        acc = zero
    elif isinstance(n, VNeutral):
        acc = n.push(FNatInd(motive, zero, step), apply(motive, n))
    else:
        raise KernelBug(f"natInd on {type(n).__name__}")
    for pred in reversed(spine):
        acc = apply(apply(step, pred), acc)
    return acc


def do_sum_ind(motive: Value, on_left: Value, on_right: Value, s: Value) -> Value:
    if isinstance(s, VInl):
        return apply(on_left, s.arg)
    if isinstance(s, VInr):
        return apply(on_right, s.arg)
    if isinstance(s, VNeutral) and isinstance(s.type, VSum):
        frame = FSumInd(s.type.left, s.type.right, motive, on_left, on_right)
        return s.push(frame, apply(motive, s))
    raise KernelBug(f"sumInd on {type(s).__name__}")


def do_absurd(motive: Value, s: Value) -> Value:
    if isinstance(s, VNeutral):
        return s.push(FAbsurd(s.type, motive), apply(motive, s))
    raise KernelBug(f"absurd on {type(s).__name__}")


def do_unit_ind(motive: Value, base: Value, s: Value) -> Value:
    if isinstance(s, VStar):
        return base
    if isinstance(s, VNeutral):
        return s.push(FUnitInd(s.type, motive, base), apply(motive, s))
    raise KernelBug(f"unitInd on {type(s).__name__}")


# readback

_ANY_UNIVERSE = VUniverse(LevelNF(0, ()))


def readback(depth: int, ty: Value, v: Value) -> T.Term:
    """Read ``v : ty`` back as a beta-normal, eta-long term."""
    match ty:
        case VPi(dom, cod):
            x = fresh(depth, dom, ty.name)
            return T.Lam(readback(depth + 1, cod(x), apply(v, x)), _hint(ty.name, v))
        case VSigma(dom, cod):
            a = pr1(v)
            return T.Pair(readback(depth, dom, a), readback(depth, cod(a), pr2(v)))
        case VUniverse():
            return readback_type(depth, v)
    match v:
        case VNeutral():
            return readback_neutral(depth, v)
        case VRefl(_, point):
            assert isinstance(ty, VId)
            return T.Refl(readback_type(depth, ty.type), readback(depth, ty.type, point))
        case VInl(arg):
            assert isinstance(ty, VSum)
            return T.Inl(readback(depth, ty.left, arg))
        case VInr(arg):
            assert isinstance(ty, VSum)
            return T.Inr(readback(depth, ty.right, arg))
        case VStar():
            return T.Star()
        case VZero() | VSuc():
            n = 0
            while isinstance(v, VSuc):
                v, n = v.arg, n + 1
            base = T.NatZero() if isinstance(v, VZero) else readback(depth, ty, v)
            for _ in range(n):
                base = T.NatSuc(base)
            return base
    raise KernelBug(f"cannot read back {type(v).__name__} at {type(ty).__name__}")


def _hint(name: str, v: Value) -> str:
    if isinstance(v, VLam) and v.name != "_":
        return v.name
    return name if name != "_" else "x"


def readback_type(depth: int, v: Value) -> T.Term:
    match v:
        case VUniverse(level):
            return T.Universe(embed(level))
        case VPi(dom, cod, name):
            x = fresh(depth, dom, name)
            return T.Pi(readback_type(depth, dom), readback_type(depth + 1, cod(x)), name)
        case VSigma(dom, cod, name):
            x = fresh(depth, dom, name)
            return T.Sigma(readback_type(depth, dom), readback_type(depth + 1, cod(x)), name)
        case VId(ty, a, b):
            return T.IdT(readback_type(depth, ty), readback(depth, ty, a), readback(depth, ty, b))
        case VSum(a, b):
            return T.SumT(readback_type(depth, a), readback_type(depth, b))
        case VEmpty(level):
            return T.EmptyT(embed(level))
        case VUnit(level):
            return T.UnitT(embed(level))
        case VNat():
            return T.NatT()
        case VNeutral():
            return readback_neutral(depth, v)
    raise KernelBug(f"not a type: {type(v).__name__}")


def _family(doms) -> Value:
    """The type of a motive over the telescope ``doms`` (universe left generic)."""
    if not doms:
        return _ANY_UNIVERSE
    first, rest = doms[0], doms[1:]
    return pi(first, lambda x: _family([d(x) for d in rest]) if rest else _ANY_UNIVERSE)


def readback_neutral(depth: int, n: VNeutral) -> T.Term:
    head = n.head
    if isinstance(head, HVar):
        out: T.Term = T.Var(depth - 1 - head.level)
    else:
        out = T.Global(head.name, tuple(embed(l) for l in head.levels))
    for frame in n.spine:
        match frame:
            case FApp(arg, arg_type):
                out = T.App(out, readback(depth, arg_type, arg))
            case FPr1():
                out = T.Pr1(out)
            case FPr2():
                out = T.Pr2(out)
            case FJ(ty, a, motive, base, end):
                fam = pi(ty, lambda y: pi(VId(ty, a, y), lambda _: _ANY_UNIVERSE))
                base_ty = apply(apply(motive, a), VRefl(ty, a))
                out = T.J(
                    readback_type(depth, ty),
                    readback(depth, ty, a),
                    readback(depth, fam, motive),
                    readback(depth, base_ty, base),
                    readback(depth, ty, end),
                    out,
                )
            case FNatInd(motive, zero, step):
                step_ty = pi(VNat(), lambda k: pi(apply(motive, k), lambda _: apply(motive, VSuc(k))))
                out = T.NatInd(
                    readback(depth, _family([VNat()]), motive),
                    readback(depth, apply(motive, VZero()), zero),
                    readback(depth, step_ty, step),
                    out,
                )
            case FSumInd(left, right, motive, on_left, on_right):
                out = T.SumInd(
                    readback(depth, _family([VSum(left, right)]), motive),
                    readback(depth, pi(left, lambda x: apply(motive, VInl(x))), on_left),
                    readback(depth, pi(right, lambda y: apply(motive, VInr(y))), on_right),
                    out,
                )
            case FAbsurd(empty, motive):
                out = T.Absurd(readback(depth, _family([empty]), motive), out)
            case FUnitInd(unit, motive, base):
                out = T.UnitInd(
                    readback(depth, _family([unit]), motive),
                    readback(depth, apply(motive, VStar()), base),
                    out,
                )
            case _:
                raise KernelBug(f"unknown frame {frame!r}")
    return out


def convertible(depth: int, ty: Value, v1: Value, v2: Value) -> bool:
    if v1 is v2:
        return True
    return readback(depth, ty, v1) == readback(depth, ty, v2)


def convertible_types(depth: int, a: Value, b: Value) -> bool:
    if a is b:
        return True
    return readback_type(depth, a) == readback_type(depth, b)


def normalize(glob, ty: T.Term, t: T.Term, lenv: LevelEnv | None = None) -> T.Term:
    """Normal form of a closed term ``t`` at closed type ``ty``."""
    lenv = lenv or {}
    return readback(0, evaluate(glob, lenv, (), ty), evaluate(glob, lenv, (), t))


__all__ = [
    "KernelBug",
    "apply",
    "convertible",
    "convertible_types",
    "evaluate",
    "global_type",
    "global_value",
    "normalize",
    "pr1",
    "pr2",
    "readback",
    "readback_neutral",
    "readback_type",
]
