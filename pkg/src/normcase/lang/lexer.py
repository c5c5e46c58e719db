"""Lexer for `.norm` model files."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .diagnostics import Diagnostic, Span, error

KEYWORDS = frozenset(
    {
        "Fact", "Var", "Bool", "Act", "Physical", "Duty", "Event",
        "Open", "Closed", "Identified", "by", "Int", "String",
        "Actor", "Recipient", "Holder", "Claimant", "Syncs", "with",
        "Extends", "Holds", "when", "Conditioned", "Violated", "Terminated",
        "Creates", "Terminates", "Not", "True", "False",
    }
)

# Word pairs fused into a single keyword token, per the grammar's clause heads.
KEYWORD_PAIRS = {
    "Identified": "by",
    "Syncs": "with",
    "Holds": "when",
    "Conditioned": "by",
    "Violated": "when",
    "Terminated": "by",
}

PUNCT = (
    "&&", "||", "<=", ">=", "==", "!=",
    ".", "(", ")", ",", "+", "-", "=", "<", ">", "*",
)

# Hyphens continue an identifier when followed by an alphanumeric, so
# `income-threshold` is one name; subtraction needs spaces around `-`.
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*(?:-[A-Za-z0-9]+)*")
_INT_RE = re.compile(r"[0-9]+")

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


class TokenKind(Enum):
    KEYWORD = "keyword"
    IDENT = "identifier"
    INT = "integer"
    STRING = "string"
    PUNCT = "punctuation"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: Span
    value: Union[int, str, None] = None  # decoded value for INT/STRING

    def is_kw(self, *words: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.text in words

    def is_punct(self, *symbols: str) -> bool:
        return self.kind is TokenKind.PUNCT and self.text in symbols


def tokenize(source: str) -> tuple[list[Token], list[Diagnostic]]:
    """Split source into tokens; lexical errors become diagnostics and the
    offending character is skipped so later forms still tokenize."""
    tokens: list[Token] = []
    diagnostics: list[Diagnostic] = []
    line = 1
    col = 1
    pos = 0
    n = len(source)

    def span_to(start_line: int, start_col: int) -> Span:
        return Span(start_line, start_col, line, col)

    while pos < n:
        ch = source[pos]

        if ch == "\n":
            pos += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            pos += 1
            col += 1
            continue
        if source.startswith("//", pos):
            while pos < n and source[pos] != "\n":
                pos += 1
                col += 1
            continue

        start_line, start_col = line, col

        if ch == '"':
            start_pos = pos
            pos += 1
            col += 1
            chars: list[str] = []
            closed = False
            while pos < n:
                c = source[pos]
                if c == "\n":
                    break
                pos += 1
                col += 1
                if c == '"':
                    closed = True
                    break
                if c == "\\" and pos < n:
                    esc = source[pos]
                    pos += 1
                    col += 1
                    chars.append(_ESCAPES.get(esc, esc))
                else:
                    chars.append(c)
            if not closed:
                diagnostics.append(
                    error("unterminated string literal", span_to(start_line, start_col))
                )
                continue
            tokens.append(
                Token(TokenKind.STRING, source[start_pos:pos],
                      span_to(start_line, start_col), value="".join(chars))
            )
            continue

        m = _INT_RE.match(source, pos)
        if m:
            text = m.group()
            pos = m.end()
            col += len(text)
            tokens.append(
                Token(TokenKind.INT, text, span_to(start_line, start_col), value=int(text))
            )
            continue

        m = _IDENT_RE.match(source, pos)
        if m:
            text = m.group()
            pos = m.end()
            col += len(text)
            if text in KEYWORDS:
                second = KEYWORD_PAIRS.get(text)
                if second is not None:
                    merged = _try_merge(source, pos, second)
                    if merged is not None:
                        skipped = merged - pos
                        pos = merged
                        col += skipped
                        tokens.append(
                            Token(TokenKind.KEYWORD, f"{text} {second}",
                                  span_to(start_line, start_col))
                        )
                        continue
                tokens.append(Token(TokenKind.KEYWORD, text, span_to(start_line, start_col)))
            else:
                tokens.append(Token(TokenKind.IDENT, text, span_to(start_line, start_col)))
            continue

        matched_punct = None
        for p in PUNCT:
            if source.startswith(p, pos):
                matched_punct = p
                break
        if matched_punct is not None:
            pos += len(matched_punct)
            col += len(matched_punct)
            tokens.append(
                Token(TokenKind.PUNCT, matched_punct, span_to(start_line, start_col))
            )
            continue

        pos += 1
        col += 1
        diagnostics.append(
            error(f"illegal character {ch!r}", span_to(start_line, start_col))
        )

    return tokens, diagnostics


def _try_merge(source: str, pos: int, second: str) -> Optional[int]:
    """Return the end position after whitespace + `second` word, else None."""
    i = pos
    n = len(source)
    saw_space = False
    while i < n and source[i] in " \t":
        i += 1
        saw_space = True
    if not saw_space:
        return None
    if not source.startswith(second, i):
        return None
    end = i + len(second)
    if end < n and (source[end].isalnum() or source[end] == "-"):
        return None
    return end


