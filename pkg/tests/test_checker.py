import pytest

import kit
from uvkernel import errors as E


@pytest.mark.parametrize("src", [
    "def lift [u] : U u⁺ := U u",
    "def join [u v] : U (u ⊔ v)⁺ := U (u ⊔ v)",
    "def fn [u] (X : U u) : U u := X → X",
    "def pairTy [u v] (X : U u) (Y : U v) : U (u ⊔ v) := Σ (_ : X), Y",
    "def idTy [u] (X : U u) (x : X) : U u := x = x in X",
    "def sumTy [u] (X Y : U u) : U u := X + Y",
    "def nat : U 0 := Nat",
    "def pt : Unit 0 := star",
    "def two : Nat := 2",
    "def const [u v] (X : U u) (Y : U v) (x : X) (y : Y) : X := x",
    "def swap (p : Σ (_ : Nat), Nat) : Σ (_ : Nat), Nat := (pr2 p, pr1 p)",
    "def sym [u] (X : U u) (x y : X) (p : x = y in X) : y = x in X := J X x (λ z q, z = x in X) (refl X x) y p",
    "def ex (e : Empty 0) : Nat := absurd (λ z, Nat) e",
])
def test_accepts(src):
    kit.ok(src)


@pytest.mark.parametrize("src, category", [
    ("def tt [u] : U u := U u", E.UNIVERSE_MISMATCH),
    ("def up [u] : U u⁺⁺ := U u", E.UNIVERSE_MISMATCH),
    ("def fn [u] (X : U u) : U u⁺ := X → X", E.UNIVERSE_MISMATCH),
    ("def two : Nat := star", E.TYPE_MISMATCH),
    ("def p : 1 = 2 in Nat := refl Nat 1", E.ENDPOINT_MISMATCH),
    ("def ni : Nat := (λ x, x) 3", E.NOT_INFERABLE),
    ("def ap : Nat := zero zero", E.TYPE_MISMATCH),
    ("def pr : Nat := pr1 zero", E.TYPE_MISMATCH),
    ("def bad (n : Nat) : Nat := natInd (λ k, Nat) zero (λ k ih, star) n", E.TYPE_MISMATCH),
])
def test_rejects(src, category):
    err = kit.fails(src)
    assert err.category == category
    assert err.exit_code == 1
    assert err.span is not None


def test_definitional_unfolding_in_types():
    kit.ok("""
def N : U 0 := Nat
def n : N := 3
def p : n = 3 in Nat := refl Nat 3
""")


def test_postulate_types_are_checked():
    assert kit.fails("postulate p : 3").category == E.TYPE_MISMATCH
    env = kit.ok("postulate p : Nat")
    assert env.lookup("p").is_postulate


def test_mismatch_reports_expected_and_actual():
    err = kit.fails("def two : Nat := star")
    assert err.expected and err.actual
    assert err.declaration == "two"


def test_keep_going_skips_only_failing_declarations():
    result = kit.load("def a : Nat := star\ndef b : Nat := 1\ndef c : Nat := b", keep_going=True)
    assert [e.declaration for e in result.errors] == ["a"]
    assert result.checked == ["b", "c"]


def test_without_prelude_axioms_are_unbound():
    err = kit.fails("def f [u] (X : U u) : U u := Trunc[u] X", prelude=False)
    assert err.category == E.UNBOUND
