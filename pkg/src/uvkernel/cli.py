"""Command-line interface: ``uvk check | normalize | corpus``.

Requested output (summaries, normal forms, JSON) goes to stdout; human
readable diagnostics go to stderr.  Exit codes: 0 success, 1 type error,
2 syntax or resolution error, 3 IO, manifest or tier error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import errors as E
from .checker import GlobalEnv
from .core.nbe import normalize
from .core.printer import show
from .corpus import MANIFEST_NAME, CorpusManifest, CorpusReport, default_manifest, verify_corpus
from .errors import UVError
from .levels import LVar
from .loader import load_file, prelude_env


@dataclass
class CliConfig:
    command: str
    paths: list[str]
    json: bool = False
    keep_going: bool = False
    quiet: bool = False
    no_prelude: bool = False
    name: Optional[str] = None


class _Out:
    def __init__(self, stdout: TextIO, stderr: TextIO):
        self.stdout = stdout
        self.stderr = stderr

    def out(self, text: str) -> None:
        print(text, file=self.stdout)

    def err(self, text: str) -> None:
        print(text, file=self.stderr)


def _report(io: _Out, cfg: CliConfig, errors: Sequence[UVError]) -> int:
    for err in errors:
        if cfg.json:
            io.out(json.dumps(err.record(), ensure_ascii=False, sort_keys=True))
        else:
            io.err(err.render())
    return max((e.exit_code for e in errors), default=0)


def _predecessors(path: str) -> list[Path]:
    """Corpus files listed before ``path`` in a manifest next to it."""
    p = Path(path)
    manifest_path = p.parent / MANIFEST_NAME
    if not manifest_path.is_file():
        return []
    try:
        files = CorpusManifest.load(manifest_path).files()
    except UVError:
        return []
    if p.name not in files:
        return []
    return [p.parent / f for f in files[: files.index(p.name)]]


def _with_dependencies(paths: Sequence[str]) -> list[tuple[str, bool]]:
    """``paths`` in order, each preceded by its not yet loaded corpus predecessors."""
    out: list[tuple[str, bool]] = []
    seen: set[Path] = set()
    for path in paths:
        for dep in _predecessors(path):
            if dep.resolve() not in seen:
                seen.add(dep.resolve())
                out.append((str(dep), False))
        resolved = Path(path).resolve()
        if resolved not in seen:
            seen.add(resolved)
            out.append((path, True))
    return out


def _load_all(cfg: CliConfig, paths: Sequence[str]) -> tuple[GlobalEnv, list[UVError], list[tuple[str, int]]]:
    env = prelude_env(not cfg.no_prelude)
    errors: list[UVError] = []
    checked: list[tuple[str, int]] = []
    for path, requested in _with_dependencies(paths):
        result = load_file(env, path, cfg.keep_going)
        env = result.env
        errors += result.errors
        if requested:
            checked.append((path, len(result.checked)))
        if result.errors and not cfg.keep_going:
            break
    return env, errors, checked


def run_check(cfg: CliConfig, io: _Out) -> int:
    _, errors, checked = _load_all(cfg, cfg.paths)
    code = _report(io, cfg, errors)
    if code == 0 and not cfg.quiet and not cfg.json:
        for path, n in checked:
            io.out(f"{path}: {n} declaration(s) checked")
    return code


def run_normalize(cfg: CliConfig, io: _Out) -> int:
    env, errors, _ = _load_all(cfg, cfg.paths)
    if errors:
        return _report(io, cfg, errors)
    name = cfg.name
    decl = env.lookup(name) if name in env else None
    if decl is None or decl.is_postulate:
        what = "no declaration" if decl is None else "a postulate, not a definition,"
        err = UVError(E.UNKNOWN_DEFINITION, f"'{name}' is {what} in {cfg.paths[0]}",
                      declaration=name, file=cfg.paths[0])
        return _report(io, cfg, [err])
    lenv = {u: LVar(u) for u in decl.level_params}
    try:
        nf = normalize(env, decl.type, decl.body, lenv)
    except RecursionError:
        err = UVError(E.TYPE_MISMATCH, "normal form too deep to compute", decl.span,
                      declaration=name, file=decl.file)
        return _report(io, cfg, [err])
    text = show(nf)
    if cfg.json:
        io.out(json.dumps({"name": name, "type": show(decl.type), "normal_form": text}, ensure_ascii=False))
    else:
        io.out(text)
    return 0


def _table(report: CorpusReport) -> list[str]:
    width = max((len(d.name) for d in report.declarations), default=4)
    lines = []
    for d in report.declarations:
        lines.append(f"{d.status:<4}  {d.tier}  {d.file:<28} {d.name:<{width}}")
    counts = report.counts()
    summary = ", ".join(
        f"{tier}: {c['PASS']} pass, {c['FAIL']} fail, {c['SKIP']} skipped" for tier, c in counts.items()
    )
    lines.append(f"{len(report.declarations)} entries in {len(report.files)} file(s); {summary}; "
                 f"{report.duration:.2f}s")
    return lines


def run_corpus(cfg: CliConfig, io: _Out) -> int:
    target = Path(cfg.paths[0]) if cfg.paths else default_manifest()
    if target.is_dir():
        target = target / MANIFEST_NAME
    try:
        manifest = CorpusManifest.load(target)
    except UVError as err:
        return _report(io, cfg, [err])
    report = verify_corpus(prelude_env(not cfg.no_prelude), manifest, cfg.keep_going)
    if cfg.json:
        io.out(json.dumps(report.as_dict(), ensure_ascii=False, indent=2))
    else:
        for err in report.errors:
            io.err(err.render())
        if not cfg.quiet:
            for line in _table(report):
                io.out(line)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("--keep-going", action="store_true", help="continue after the first error")
    common.add_argument("--quiet", action="store_true", help="print diagnostics only")
    common.add_argument("--no-prelude", action="store_true", help="do not load the built-in prelude")

    parser = argparse.ArgumentParser(prog="uvk", description="Check .uv files against the univalent kernel.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="check files in order")
    p.add_argument("paths", nargs="+")
    p = sub.add_parser("normalize", parents=[common], help="print the normal form of a definition")
    p.add_argument("path")
    p.add_argument("name")
    p = sub.add_parser("corpus", parents=[common], help="verify the corpus manifest")
    p.add_argument("manifest", nargs="?", help="manifest file or corpus directory")
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    match ns.command:
        case "check":
            paths, name = list(ns.paths), None
        case "normalize":
            paths, name = [ns.path], ns.name
        case _:
            paths, name = [ns.manifest] if ns.manifest else [], None
    return CliConfig(ns.command, paths, ns.json, ns.keep_going, ns.quiet, ns.no_prelude, name)


def main(argv: Optional[Sequence[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    cfg = parse_config(argv)
    io = _Out(stdout or sys.stdout, stderr or sys.stderr)
    runner = {"check": run_check, "normalize": run_normalize, "corpus": run_corpus}[cfg.command]
    return runner(cfg, io)


def entry() -> None:
    sys.exit(main())
