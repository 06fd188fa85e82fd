"""Source spans and the kernel's error taxonomy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

# kernel categories
LEX = "lex"
PARSE = "parse"
UNBOUND = "unbound"
ARITY = "arity-mismatch"
DUPLICATE = "duplicate-name"
NOT_INFERABLE = "not-inferable"
TYPE_MISMATCH = "type-mismatch"
UNIVERSE_MISMATCH = "universe-mismatch"
ENDPOINT_MISMATCH = "endpoint-mismatch"

# front-end categories
UNKNOWN_DEFINITION = "unknown-definition"
IO = "io"
MANIFEST_DRIFT = "manifest-drift"
TIER_VIOLATION = "tier-violation"

SYNTAX_CATEGORIES = frozenset({LEX, PARSE, UNBOUND, ARITY, DUPLICATE})
TYPE_CATEGORIES = frozenset(
    {NOT_INFERABLE, TYPE_MISMATCH, UNIVERSE_MISMATCH, ENDPOINT_MISMATCH, UNKNOWN_DEFINITION}
)
IO_CATEGORIES = frozenset({IO, MANIFEST_DRIFT, TIER_VIOLATION})


def exit_code_for(category: str) -> int:
    """Exit code of the CLI for a diagnostic category."""
    if category in IO_CATEGORIES:
        return 3
    if category in SYNTAX_CATEGORIES:
        return 2
    return 1


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start: int
    end: int
    line: int
    column: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start after end")

    def to(self, other: "SourceSpan") -> "SourceSpan":
        return SourceSpan(self.file, self.start, max(self.end, other.end), self.line, self.column)

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"

    def as_dict(self) -> dict:
        return {
            "start": self.start,
            "end": self.end,
            "line": self.line,
            "column": self.column,
        }


class UVError(Exception):
    """A diagnostic with a fixed category, optionally located in a file."""

    def __init__(
        self,
        category: str,
        message: str,
        span: Optional[SourceSpan] = None,
        *,
        expected: Optional[str] = None,
        actual: Optional[str] = None,
        declaration: Optional[str] = None,
        file: Optional[str] = None,
    ):
        super().__init__(message)
        self.category = category
        self.message = message
        self.span = span
        self.expected = expected
        self.actual = actual
        self.declaration = declaration
        self.file = file or (span.file if span else None)

    @property
    def exit_code(self) -> int:
        return exit_code_for(self.category)

    def with_context(self, *, declaration=None, span=None, file=None) -> "UVError":
        if declaration is not None and self.declaration is None:
            self.declaration = declaration
        if span is not None and self.span is None:
            self.span = span
        if file is not None and self.file is None:
            self.file = file
        return self

    def record(self) -> dict:
        rec = {
            "file": self.file,
            "span": self.span.as_dict() if self.span else None,
            "category": self.category,
            "message": self.message,
            "declaration": self.declaration,
        }
        if self.expected is not None:
            rec["expected"] = self.expected
        if self.actual is not None:
            rec["actual"] = self.actual
        return rec

    def render(self) -> str:
        where = str(self.span) if self.span else (self.file or "<input>")
        head = f"{where}: error[{self.category}]"
        if self.declaration:
            head += f" in '{self.declaration}'"
        lines = [f"{head}: {self.message}"]
        if self.expected is not None:
            lines.append(f"  expected: {self.expected}")
        if self.actual is not None:
            lines.append(f"  actual:   {self.actual}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render()
