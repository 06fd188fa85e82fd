"""uvkernel: a small proof checker for a univalent type theory."""

from .checker import Checker, Context, Declaration, GlobalEnv, check_declaration, check_module
from .errors import SourceSpan, UVError
from .levels import LevelNF, level_equal, normalize_level

__version__ = "0.1.0"

__all__ = [
    "Checker",
    "Context",
    "Declaration",
    "GlobalEnv",
    "LevelNF",
    "SourceSpan",
    "UVError",
    "check_declaration",
    "check_module",
    "level_equal",
    "normalize_level",
]
