"""Allow ``python -m uvkernel``."""

from .cli import entry

entry()
