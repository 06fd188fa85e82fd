"""Loading `.uv` sources into a global environment.

Resolution and checking are interleaved declaration by declaration, so with
``keep_going`` a declaration that fails (to resolve or to check) is skipped
and later, independent declarations are still checked.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from . import errors as E
from .checker import GlobalEnv, ModuleResult, check_declaration
from .errors import UVError
from .syntax.parser import parse_module
from .syntax.resolve import resolve_declaration
from .syntax.surface import SurfaceModule

PRELUDE_FILE = "prelude.uv"

# postulates the prelude is expected to introduce, and nothing else
PRELUDE_POSTULATES = (
    "univalence",
    "funext",
    "propext",
    "Trunc",
    "truncIsProp",
    "truncIn",
    "truncRec",
)


def arities(env: GlobalEnv) -> dict[str, int]:
    return {d.name: len(d.level_params) for d in env}


def load_module(env: GlobalEnv, module: SurfaceModule, keep_going: bool = False) -> ModuleResult:
    result = ModuleResult(env)
    known = arities(env)
    for sdecl in module.declarations:
        try:
            decl = resolve_declaration(sdecl, known, module.file)
            known[decl.name] = len(decl.level_params)
            result.env = check_declaration(result.env, decl)
            result.checked.append(decl.name)
        except UVError as err:
            result.errors.append(err.with_context(declaration=sdecl.name, file=module.file))
            if not keep_going:
                break
    return result


def load_source(env: GlobalEnv, source: str, file: str = "<input>", keep_going: bool = False) -> ModuleResult:
    """Parse and check ``source``; lexical and parse errors end the file."""
    try:
        module = parse_module(source, file)
    except UVError as err:
        return ModuleResult(env, [err.with_context(file=file)])
    return load_module(env, module, keep_going)


def read_source(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UVError(E.IO, f"no such file: {path}", file=str(path)) from None
    except (OSError, UnicodeDecodeError) as exc:
        raise UVError(E.IO, f"cannot read {path}: {exc}", file=str(path)) from None


def load_file(env: GlobalEnv, path: str | Path, keep_going: bool = False) -> ModuleResult:
    try:
        source = read_source(path)
    except UVError as err:
        return ModuleResult(env, [err])
    return load_source(env, source, str(path), keep_going)


def prelude_source() -> str:
    return resources.files("uvkernel").joinpath(PRELUDE_FILE).read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def _prelude() -> GlobalEnv:
    result = load_source(GlobalEnv(), prelude_source(), PRELUDE_FILE)
    if result.errors:
        raise RuntimeError(f"prelude does not check:\n{result.errors[0].render()}")
    return result.env


def prelude_env(enabled: bool = True) -> GlobalEnv:
    """A fresh environment holding the prelude (or nothing if disabled)."""
    if not enabled:
        return GlobalEnv()
    env = _prelude()
    return GlobalEnv({d.name: d for d in env}, env.value_cache, env.type_cache)


def base_env(no_prelude: bool = False, env: Optional[GlobalEnv] = None) -> GlobalEnv:
    return env if env is not None else prelude_env(not no_prelude)
