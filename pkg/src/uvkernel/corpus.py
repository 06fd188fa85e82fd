"""The shipped corpus: its manifest, verification and axiom ledger.

The manifest is a tab-separated file with one record per declaration,
``file<TAB>name<TAB>tier<TAB>anchor``, in checking order.  TIER1 entries are
fully proved.  TIER2 entries are statements whose body is a single reference
to a postulate (a ``.stub`` or a declared resizing axiom).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import errors as E
from .checker import Declaration, GlobalEnv
from .core import terms as T
from .errors import UVError
from .loader import PRELUDE_POSTULATES, load_source, read_source
from .syntax.parser import parse_module

TIER1 = "TIER1"
TIER2 = "TIER2"
TIERS = (TIER1, TIER2)
STUB_SUFFIX = ".stub"

# axioms a corpus file may assert outright (each local to its file)
RESIZING_AXIOMS = ("propResize", "omegaResize")

MANIFEST_NAME = "MANIFEST.tsv"
CORPUS_ENV = "UVK_CORPUS_DIR"


@dataclass(frozen=True)
class ManifestEntry:
    file: str
    name: str
    tier: str
    anchor: str
    line: int = 0


@dataclass
class CorpusManifest:
    entries: list[ManifestEntry]
    root: Path
    source: str = MANIFEST_NAME

    @classmethod
    def parse(cls, text: str, root: Path, source: str = MANIFEST_NAME) -> "CorpusManifest":
        entries = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            if not raw.strip() or raw.lstrip().startswith("#"):
                continue
            parts = raw.split("\t")
            if len(parts) != 4:
                raise UVError(E.MANIFEST_DRIFT, f"{source}:{lineno}: expected 4 tab-separated fields", file=source)
            file, name, tier, anchor = (p.strip() for p in parts)
            if tier not in TIERS:
                raise UVError(E.MANIFEST_DRIFT, f"{source}:{lineno}: unknown tier '{tier}'", file=source)
            entries.append(ManifestEntry(file, name, tier, anchor, lineno))
        seen: dict[str, ManifestEntry] = {}
        for e in entries:
            if e.name in seen:
                raise UVError(
                    E.MANIFEST_DRIFT,
                    f"{source}:{e.line}: '{e.name}' already listed on line {seen[e.name].line}",
                    file=source,
                )
            seen[e.name] = e
        return cls(entries, root, source)

    @classmethod
    def load(cls, path: str | Path) -> "CorpusManifest":
        path = Path(path)
        return cls.parse(read_source(path), path.parent, str(path))

    def files(self) -> list[str]:
        return list(dict.fromkeys(e.file for e in self.entries))

    def for_file(self, file: str) -> list[ManifestEntry]:
        return [e for e in self.entries if e.file == file]

    def tier_of(self, name: str) -> Optional[str]:
        for e in self.entries:
            if e.name == name:
                return e.tier
        return None


def default_corpus_dir() -> Path:
    """The corpus directory: ``$UVK_CORPUS_DIR``, else ``./corpus``."""
    env = os.environ.get(CORPUS_ENV)
    return Path(env) if env else Path.cwd() / "corpus"


def default_manifest() -> Path:
    return default_corpus_dir() / MANIFEST_NAME


@dataclass
class DeclStatus:
    file: str
    name: str
    tier: str
    anchor: str
    status: str  # PASS, FAIL or SKIP
    error: Optional[UVError] = None

    def as_dict(self) -> dict:
        out = {"file": self.file, "name": self.name, "tier": self.tier, "anchor": self.anchor, "status": self.status}
        if self.error is not None:
            out["error"] = self.error.record()
        return out


@dataclass
class FileStatus:
    file: str
    status: str
    declarations: int
    seconds: float

    def as_dict(self) -> dict:
        return {"file": self.file, "status": self.status, "declarations": self.declarations,
                "seconds": round(self.seconds, 4)}


@dataclass
class CorpusReport:
    files: list[FileStatus] = field(default_factory=list)
    declarations: list[DeclStatus] = field(default_factory=list)
    errors: list[UVError] = field(default_factory=list)
    duration: float = 0.0
    env: Optional[GlobalEnv] = None

    @property
    def ok(self) -> bool:
        return not self.errors

    @property
    def exit_code(self) -> int:
        return max((e.exit_code for e in self.errors), default=0)

    def counts(self) -> dict[str, dict[str, int]]:
        out = {t: {"PASS": 0, "FAIL": 0, "SKIP": 0} for t in TIERS}
        for d in self.declarations:
            out[d.tier][d.status] += 1
        return out

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "exit_code": self.exit_code,
            "duration_seconds": round(self.duration, 4),
            "counts": self.counts(),
            "files": [f.as_dict() for f in self.files],
            "declarations": [d.as_dict() for d in self.declarations],
            "errors": [e.record() for e in self.errors],
        }


def _stub_target(decl: Declaration) -> Optional[str]:
    """The postulate a TIER2 body refers to, if the body is a bare reference."""
    if isinstance(decl.body, T.Global):
        return decl.body.name
    return None


def _tier_errors(entry: ManifestEntry, decl: Declaration, env: GlobalEnv, manifest: CorpusManifest) -> list[UVError]:
    def err(msg: str) -> UVError:
        return UVError(E.TIER_VIOLATION, msg, decl.span, declaration=decl.name, file=decl.file)

    out = []
    if entry.tier == TIER1:
        if decl.is_postulate:
            out.append(err(f"TIER1 entry '{decl.name}' is a postulate"))
        for ref in sorted(T.globals_in(decl.type) | (T.globals_in(decl.body) if decl.body else set())):
            if manifest.tier_of(ref) == TIER2:
                out.append(err(f"TIER1 entry '{decl.name}' refers to TIER2 entry '{ref}'"))
    elif decl.is_postulate:
        if not (decl.name.endswith(STUB_SUFFIX) or decl.name in RESIZING_AXIOMS):
            out.append(err(f"TIER2 postulate '{decl.name}' is neither a proof stub nor a declared axiom"))
    else:
        target = _stub_target(decl)
        if target is None or target not in env or not env.lookup(target).is_postulate:
            out.append(err(f"TIER2 entry '{decl.name}' must have a single postulate reference as its body"))
    return out


def verify_corpus(env0: GlobalEnv, manifest: CorpusManifest, keep_going: bool = False) -> CorpusReport:
    """Check every manifest file in order against ``env0``."""
    report = CorpusReport()
    start = time.perf_counter()
    env = env0
    by_name = {e.name: e for e in manifest.entries}
    for file in manifest.files():
        t0 = time.perf_counter()
        entries = manifest.for_file(file)
        path = manifest.root / file
        try:
            source = read_source(path)
            module = parse_module(source, str(path))
        except UVError as err:
            report.errors.append(err.with_context(file=str(path)))
            report.files.append(FileStatus(file, "FAIL", 0, time.perf_counter() - t0))
            report.declarations += [DeclStatus(file, e.name, e.tier, e.anchor, "SKIP") for e in entries]
            if not keep_going:
                break
            continue

        file_errors: list[UVError] = []
        present = {d.name for d in module.declarations}
        for d in module.declarations:
            e = by_name.get(d.name)
            if e is None or e.file != file:
                where = "not listed in the manifest" if e is None else f"listed under {e.file}"
                file_errors.append(UVError(E.MANIFEST_DRIFT, f"'{d.name}' is {where}", d.span,
                                           declaration=d.name, file=str(path)))
        for e in entries:
            if e.name not in present:
                file_errors.append(UVError(E.MANIFEST_DRIFT, f"manifest entry '{e.name}' not found in {file}",
                                           declaration=e.name, file=str(path)))

        statuses: dict[str, DeclStatus] = {e.name: DeclStatus(file, e.name, e.tier, e.anchor, "SKIP") for e in entries}
        if not file_errors:
            result = load_source(env, source, str(path), keep_going)
            env = result.env
            for err in result.errors:
                file_errors.append(err)
                if err.declaration in statuses:
                    statuses[err.declaration].status = "FAIL"
                    statuses[err.declaration].error = err
            for name in result.checked:
                st = statuses[name]
                violations = _tier_errors(by_name[name], env.lookup(name), env, manifest)
                st.status = "FAIL" if violations else "PASS"
                st.error = violations[0] if violations else None
                file_errors += violations

        report.declarations += [statuses[e.name] for e in entries]
        report.errors += file_errors
        report.files.append(FileStatus(file, "FAIL" if file_errors else "PASS", len(entries), time.perf_counter() - t0))
        if file_errors and not keep_going:
            break
    report.env = env
    report.duration = time.perf_counter() - start
    return report


def declared_axioms(manifest: CorpusManifest) -> set[str]:
    """The postulates the prelude and corpus are allowed to introduce."""
    allowed = set(PRELUDE_POSTULATES)
    for e in manifest.entries:
        if e.tier == TIER2 and (e.name.endswith(STUB_SUFFIX) or e.name in RESIZING_AXIOMS):
            allowed.add(e.name)
    return allowed


def axiom_ledger(env: GlobalEnv) -> list[str]:
    """Every postulate in ``env``, in declaration order."""
    return [d.name for d in env.postulates()]
