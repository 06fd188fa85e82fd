import shutil

import pytest

import kit
from uvkernel import errors as E
from uvkernel.corpus import (
    CORPUS_ENV, TIER1, TIER2, CorpusManifest, axiom_ledger, declared_axioms, default_manifest,
    verify_corpus,
)
from uvkernel.errors import UVError
from uvkernel.loader import prelude_env


@pytest.fixture
def corpus_copy(tmp_path):
    target = tmp_path / "corpus"
    shutil.copytree(kit.CORPUS, target)
    return target


def verify(root, keep_going=False):
    return verify_corpus(prelude_env(), CorpusManifest.load(root / "MANIFEST.tsv"), keep_going)


def edit(path, old, new):
    text = path.read_text(encoding="utf-8")
    assert old in text
    path.write_text(text.replace(old, new, 1), encoding="utf-8")


def test_shipped_corpus_passes(corpus_report, manifest):
    assert corpus_report.ok
    assert len(manifest.files()) == 11
    counts = corpus_report.counts()
    assert counts[TIER1]["FAIL"] == counts[TIER2]["FAIL"] == 0
    assert counts[TIER1]["SKIP"] == counts[TIER2]["SKIP"] == 0
    assert counts[TIER1]["PASS"] >= 45


def test_manifest_is_well_formed(manifest):
    assert all(e.anchor for e in manifest.entries)
    names = {e.name for e in manifest.entries}
    for e in manifest.entries:
        if e.tier == TIER2 and not e.name.endswith(".stub") and e.name + ".stub" in names:
            assert manifest.tier_of(e.name + ".stub") == TIER2


def test_ledger_lists_exactly_the_declared_postulates(corpus_env, manifest):
    ledger = axiom_ledger(corpus_env)
    assert set(ledger) == declared_axioms(manifest)
    assert {"univalence", "funext", "propext", "propResize", "omegaResize"} <= set(ledger)


def test_report_as_dict(corpus_report):
    doc = corpus_report.as_dict()
    assert doc["ok"] and doc["exit_code"] == 0
    assert {d["status"] for d in doc["declarations"]} == {"PASS"}


def test_unlisted_declaration_is_drift(corpus_copy):
    with open(corpus_copy / "em.uv", "a", encoding="utf-8") as f:
        f.write("\ndef extra : Nat := 0\n")
    report = verify(corpus_copy)
    assert report.errors[0].category == E.MANIFEST_DRIFT
    assert report.exit_code == 3


def test_missing_declaration_is_drift(corpus_copy):
    with open(corpus_copy / "MANIFEST.tsv", "a", encoding="utf-8") as f:
        f.write("em.uv\tghost\tTIER1\tnowhere\n")
    report = verify(corpus_copy)
    assert [e.category for e in report.errors] == [E.MANIFEST_DRIFT]
    assert "ghost" in report.errors[0].message


def test_missing_file_is_io(corpus_copy):
    (corpus_copy / "em.uv").unlink()
    report = verify(corpus_copy)
    assert report.errors[0].category == E.IO
    assert report.exit_code == 3
    assert {d.status for d in report.declarations if d.file == "em.uv"} == {"SKIP"}


def test_tier1_postulate_is_a_violation(corpus_copy):
    edit(corpus_copy / "em.uv", "def decidable [u] (P : U u) : U u\n  := P + (P → Empty 0)",
         "postulate decidable [u] (P : U u) : U u")
    report = verify(corpus_copy)
    assert E.TIER_VIOLATION in {e.category for e in report.errors}
    assert report.exit_code == 3


def test_tier2_with_real_body_is_a_violation(corpus_copy):
    edit(corpus_copy / "em.uv", ":= inhabitedInjectiveIffEM.stub[u]",
         ":= λ r, inhabitedInjectiveIffEM.stub[u] r")
    report = verify(corpus_copy)
    assert [e.category for e in report.errors] == [E.TIER_VIOLATION]
    assert report.errors[0].declaration == "inhabitedInjectiveIffEM"


def test_tier1_may_not_use_tier2(corpus_copy):
    statement = "iff[u⁺ u⁺] (Π (D : U u), Trunc[u] D → injective[u u u] D) (EM[u])"
    with open(corpus_copy / "MANIFEST.tsv", "a", encoding="utf-8") as f:
        f.write("em.uv\tleaky\tTIER1\tauxiliary\n")
    with open(corpus_copy / "em.uv", "a", encoding="utf-8") as f:
        f.write(f"\ndef leaky [u] : OmegaResizing[u] → U u⁺\n"
                f"  := λ r, (λ (h : {statement}), U u) (inhabitedInjectiveIffEM[u] r)\n")
    report = verify(corpus_copy)
    assert [e.category for e in report.errors] == [E.TIER_VIOLATION]
    assert "inhabitedInjectiveIffEM" in report.errors[0].message


def test_keep_going_reports_later_files(corpus_copy):
    (corpus_copy / "kan.uv").unlink()
    edit(corpus_copy / "em.uv", "def decidable [u] (P : U u) : U u\n  := P + (P → Empty 0)",
         "postulate decidable [u] (P : U u) : U u")
    assert len(verify(corpus_copy).errors) == 1
    categories = {e.category for e in verify(corpus_copy, keep_going=True).errors}
    assert {E.IO, E.TIER_VIOLATION} <= categories


@pytest.mark.parametrize("text, fragment", [
    ("a.uv\tx\tTIER1\n", "4 tab-separated"),
    ("a.uv\tx\tTIER3\tanchor\n", "unknown tier"),
    ("a.uv\tx\tTIER1\tone\nb.uv\tx\tTIER1\ttwo\n", "already listed"),
])
def test_malformed_manifest(tmp_path, text, fragment):
    with pytest.raises(UVError) as info:
        CorpusManifest.parse(text, tmp_path)
    assert info.value.category == E.MANIFEST_DRIFT
    assert fragment in info.value.message


def test_manifest_comments_and_order(tmp_path):
    m = CorpusManifest.parse("# header\n\nb.uv\tx\tTIER1\ta\na.uv\ty\tTIER2\tb\nb.uv\tz\tTIER1\tc\n", tmp_path)
    assert m.files() == ["b.uv", "a.uv"]
    assert [e.name for e in m.for_file("b.uv")] == ["x", "z"]
    assert m.tier_of("y") == TIER2 and m.tier_of("w") is None


def test_corpus_directory_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(CORPUS_ENV, str(tmp_path))
    assert default_manifest() == tmp_path / "MANIFEST.tsv"
    monkeypatch.delenv(CORPUS_ENV)
    monkeypatch.chdir(tmp_path)
    assert default_manifest() == tmp_path / "corpus" / "MANIFEST.tsv"
