"""Tokenizer for `.uv` source files.

Every Unicode symbol has an ASCII spelling, and both lex to the same token
kind, so the parser never sees the difference.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .. import errors as E
from ..errors import SourceSpan, UVError

KEYWORDS = frozenset(
    {
        "def", "postulate", "level", "U", "Pi", "Sigma", "Id", "refl", "J", "Nat",
        "zero", "suc", "natInd", "inl", "inr", "sumInd", "absurd", "star",
        "unitInd", "pr1", "pr2", "Empty", "Unit", "in", "fun",
    }
)

# spelling -> canonical token kind
ALIASES = {
    "Pi": "Π", "Sigma": "Σ", "fun": "λ", "\\": "λ",
    "->": "→", "\\/": "⊔", "^+": "⁺", "*": "×",
    "ℕ": "Nat", "𝟘": "Empty", "𝟙": "Unit", "⋆": "star",
}

_SYMBOLS = [":=", "->", "\\/", "^+", ":", ",", "(", ")", "[", "]", "=", "+", "*", "\\",
            "→", "×", "⊔", "⁺", "λ", "Π", "Σ", "ℕ", "𝟘", "𝟙", "⋆"]

_IDENT = re.compile(r"[A-Za-z_Ͱ-Ͽ₀-₉][A-Za-z0-9_'.Ͱ-Ͽ₀-₉]*")
_NUMBER = re.compile(r"[0-9]+")
_BINDER_LETTERS = frozenset("λΠΣ")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan

    @property
    def value(self) -> str:
        return self.text

    def __repr__(self) -> str:
        if self.kind in ("IDENT", "NUMBER"):
            return f"{self.kind}({self.text})"
        return self.kind


def _ident_at(source: str, pos: int) -> int:
    """End of an identifier starting at ``pos``, or ``pos`` if none.

    The binder letters λ, Π, Σ never start or continue an identifier.
    """
    m = _IDENT.match(source, pos)
    if not m:
        return pos
    end = pos
    for i, ch in enumerate(m.group(0)):
        if ch in _BINDER_LETTERS:
            break
        end = pos + i + 1
    return end


def tokenize(source: str, file: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(source)

    def span(start: int, end: int) -> SourceSpan:
        return SourceSpan(file, start, end, line, start - line_start + 1)

    while pos < n:
        ch = source[pos]
        if ch == "\n":
            pos += 1
            line, line_start = line + 1, pos
            continue
        if ch.isspace():
            pos += 1
            continue
        if source.startswith("--", pos):
            nl = source.find("\n", pos)
            pos = n if nl < 0 else nl
            continue
        end = _ident_at(source, pos)
        if end > pos:
            text = source[pos:end]
            kind = ALIASES.get(text, text) if text in KEYWORDS else "IDENT"
            tokens.append(Token(kind, text, span(pos, end)))
            pos = end
            continue
        m = _NUMBER.match(source, pos)
        if m:
            tokens.append(Token("NUMBER", m.group(0), span(pos, m.end())))
            pos = m.end()
            continue
        for sym in _SYMBOLS:
            if source.startswith(sym, pos):
                tokens.append(Token(ALIASES.get(sym, sym), sym, span(pos, pos + len(sym))))
                pos += len(sym)
                break
        else:
            raise UVError(E.LEX, f"illegal character {ch!r}", span(pos, pos + 1))
    tokens.append(Token("EOF", "", span(n, n)))
    return tokens
