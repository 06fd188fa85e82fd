"""Worked examples for the level, evaluation and checking operations."""

import pytest

import kit
from uvkernel import errors as E
from uvkernel.checker import Checker, Context, check_module
from uvkernel.core import terms as T
from uvkernel.core.nbe import convertible, convertible_types, evaluate, normalize, readback
from uvkernel.core.printer import show
from uvkernel.core.values import VUniverse
from uvkernel.levels import (
    LMax, LSuc, LVar, LZero, LevelNF, eval_level, level_equal, normalize_level, substitute_levels,
)
from uvkernel.loader import prelude_env

u, v, w = LVar("u"), LVar("v"), LVar("w")


@pytest.mark.parametrize("e, nf", [
    (LMax(LZero(), u), LevelNF(0, (("u", 0),))),
    (LMax(u, LSuc(u)), LevelNF(1, (("u", 1),))),
    (LSuc(LMax(u, v)), LevelNF(1, (("u", 1), ("v", 1)))),
    (LMax(u, u), LevelNF(0, (("u", 0),))),
])
def test_normal_forms(e, nf):
    assert normalize_level(e) == nf


def test_level_equality_examples():
    assert level_equal(LMax(u, v), LMax(v, u))
    assert level_equal(LMax(u, LMax(v, w)), LMax(LMax(u, v), w))
    assert not level_equal(u, LSuc(u))


def test_substitution_examples():
    assert substitute_levels(LMax(u, v), {"u": LZero(), "v": LZero()}) == LMax(LZero(), LZero())
    assert normalize_level(LMax(LZero(), LZero())).constant == 0
    assert substitute_levels(LSuc(u), {"u": LMax(v, w)}) == LSuc(LMax(v, w))
    e = LMax(u, LSuc(u))
    inst = substitute_levels(e, {"u": LSuc(LZero())})
    assert normalize_level(inst) == LevelNF(2, ())
    assert eval_level(e, {"u": 1}) == eval_level(inst, {}) == 2


def test_eval_level_examples():
    assert eval_level(LMax(u, LSuc(v)), {"u": 3, "v": 3}) == 4
    assert eval_level(LZero(), {}) == 0


def nat_oracle_step(z: int, n: int) -> int:
    return z if n == 0 else nat_oracle_step(z, n - 1) + 1


def test_evaluation_examples():
    env = prelude_env()
    nat = kit.term("Nat", env)
    assert show(normalize(env, kit.term("Unit 0", env), kit.term("(λ (x : Unit 0), x) star", env))) == "star"
    assert T.as_numeral(normalize(env, nat, kit.term("J Nat 5 (λ z q, Nat) 9 5 (refl Nat 5)", env))) == 9
    out = normalize(env, nat, kit.term("natInd (λ k, Nat) (suc (suc zero)) (λ n ih, suc ih) (suc (suc zero))", env))
    assert T.as_numeral(out) == nat_oracle_step(2, 2) == 4


def test_readback_examples():
    env = prelude_env()
    checker = Checker(env)
    for ty, expected in [("Nat → Nat", "λ x, f x"), ("Σ (_ : Nat), Nat", "(pr1 f , pr2 f)")]:
        tv = checker.eval(Context(), kit.term(ty, env))
        ctx, f = Context().bind("f", tv)
        assert show(readback(ctx.depth, tv, f), ctx.names) == expected
    unit = checker.eval(Context(), kit.term("Unit 0", env))
    assert readback(0, unit, checker.eval(Context(), kit.term("star", env))) == T.Star()


def test_conversion_examples():
    env = prelude_env()
    checker = Checker(env, ("u", "v"))
    assert convertible_types(0, checker.eval(Context(), kit.term("U (u ⊔ v)", env, levels=("u", "v"))),
                             checker.eval(Context(), kit.term("U (v ⊔ u)", env, levels=("u", "v"))))
    nat = checker.eval(Context(), kit.term("Nat", env))
    assert not convertible(0, nat, checker.eval(Context(), kit.term("zero", env)),
                           checker.eval(Context(), kit.term("suc zero", env)))


def test_inference_examples():
    env = prelude_env()
    checker = Checker(env, ("u", "v"))
    ctx = Context()
    assert checker.infer_universe(ctx, kit.term("U u", env, levels=("u",))) == normalize_level(LSuc(u))
    ctx, _ = ctx.bind("X", VUniverse(normalize_level(u)))
    fam = checker.eval(ctx, kit.term("X → U v", env, ("X",), ("u", "v")))
    ctx, _ = ctx.bind("A", fam)
    pi = kit.term("Π (x : X), A x", env, ("X", "A"), ("u", "v"))
    assert checker.infer_universe(ctx, pi) == normalize_level(LMax(u, v))
    sum_ty = kit.term("Unit u + Empty v", env, levels=("u", "v"))
    assert checker.infer_universe(Context(), sum_ty) == normalize_level(LMax(u, v))


def test_checking_examples():
    kit.ok("def pid [u] : Π (X : U u), X → X := λ X x, x")
    assert kit.fails("def bad [u] : U u := U u").category == E.UNIVERSE_MISMATCH
    kit.ok("def r : zero = natInd (λ k, Nat) zero (λ k ih, ih) zero in Nat := refl Nat zero")
    kit.ok("def fib [u v] (X : U u) (Y : U v) (f : X → Y) (y : Y) : U (u ⊔ v) := Σ (x : X), f x = y in Y")
    env = kit.ok("postulate ax [u v] (X : U u) : U v → X")
    assert env.lookup("ax").is_postulate


def test_module_examples():
    empty = prelude_env()
    result = check_module(empty, [])
    assert result.ok and len(result.env) == len(empty)
    err = kit.fails("def a : Nat := 1\ndef b : Nat := star\ndef c : Nat := 2")
    assert err.declaration == "b"


def test_evaluation_is_stable(corpus_env):
    # normal forms of closed corpus definitions evaluate back to themselves
    checked = 0
    for decl in corpus_env:
        if decl.is_postulate or decl.file is None or not decl.file.endswith("basics.uv"):
            continue
        lenv = {p: LVar(p) for p in decl.level_params}
        ty = evaluate(corpus_env, lenv, (), decl.type)
        nf = readback(0, ty, evaluate(corpus_env, lenv, (), decl.body))
        assert readback(0, ty, evaluate(corpus_env, lenv, (), nf)) == nf
        checked += 1
    assert checked >= 30


def test_unfolding_preserves_conversion(corpus_env):
    # a global and its definition body have the same value
    for decl in corpus_env:
        if decl.is_postulate or decl.file is None or not decl.file.endswith("basics.uv"):
            continue
        lenv = {p: LVar(p) for p in decl.level_params}
        ty = evaluate(corpus_env, lenv, (), decl.type)
        ref = T.Global(decl.name, tuple(LVar(p) for p in decl.level_params))
        assert convertible(0, ty, evaluate(corpus_env, lenv, (), ref), evaluate(corpus_env, lenv, (), decl.body))


def test_postulates_never_reduce():
    env = prelude_env()
    checker = Checker(env, ("u",))
    ctx, X = Context().bind("X", VUniverse(normalize_level(u)))
    ctx, x = ctx.bind("x", X)
    t = kit.term("truncRec[u u] X X (λ a b, refl X a) (λ a, a) (truncIn[u] X x)", env, ("X", "x"), ("u",))
    # only evaluated, so the subsingleton witness need not be well typed
    value = checker.eval(ctx, t)
    assert not convertible(ctx.depth, X, value, x)
