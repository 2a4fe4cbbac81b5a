"""Scanner for the `.dd` language and the token-dump renderer."""

import enum
from dataclasses import dataclass
from typing import List, Optional

from .diagnostics import INVALID_CHARACTER, CompileError, Diagnostic


class TokenKind(enum.Enum):
    FUN = 258
    VAR = 259
    IDENTIFIER = 260
    RETURN = 261
    NUMBER = 262
    LPAREN = 263
    RPAREN = 264
    LBRACE = 265
    RBRACE = 266
    SEMICOLON = 272
    ASSIGN = 274
    # IDs 267-271 and 273 are left unassigned.
    MINUS = 275
    TILDE = 276
    BANG = 277
    PLUS = 278
    STAR = 279
    AND_AND = 280
    OR_OR = 281
    EQ_EQ = 282
    GT = 283
    LT = 284
    GE = 285
    LE = 286
    IF = 287
    ELSE = 288

    @property
    def id(self) -> int:
        return self.value


KEYWORDS = {
    "fun": TokenKind.FUN,
    "var": TokenKind.VAR,
    "return": TokenKind.RETURN,
    "if": TokenKind.IF,
    "else": TokenKind.ELSE,
}

# Two-character operators are tried first (maximal munch).
OPERATORS = {
    "&&": TokenKind.AND_AND,
    "||": TokenKind.OR_OR,
    "==": TokenKind.EQ_EQ,
    ">=": TokenKind.GE,
    "<=": TokenKind.LE,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    "{": TokenKind.LBRACE,
    "}": TokenKind.RBRACE,
    ";": TokenKind.SEMICOLON,
    "=": TokenKind.ASSIGN,
    "-": TokenKind.MINUS,
    "~": TokenKind.TILDE,
    "!": TokenKind.BANG,
    "+": TokenKind.PLUS,
    "*": TokenKind.STAR,
    ">": TokenKind.GT,
    "<": TokenKind.LT,
}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int
    column: int

    @property
    def id(self) -> int:
        return self.kind.id

    @property
    def value(self) -> Optional[int]:
        """Integer value of a NUMBER token (leading zeros normalized)."""
        if self.kind is TokenKind.NUMBER:
            return int(self.lexeme, 10)
        return None

    def __str__(self):
        return f"{self.lexeme!r}@{self.line}:{self.column}"


def _is_ident_start(ch: str) -> bool:
    return ch == "_" or ("a" <= ch <= "z") or ("A" <= ch <= "Z")


def _is_ident_char(ch: str) -> bool:
    return _is_ident_start(ch) or ch.isdigit()


def tokenize(source: str, features=None) -> List[Token]:
    """Split `source` into tokens.

    `features` is accepted for interface symmetry only: every token kind is
    recognized regardless of which language subsets are enabled, and the
    parser decides whether a construct is allowed.

    Raises CompileError(INVALID_CHARACTER) on a character outside the
    language alphabet.
    """
    tokens = []
    i = 0
    line, col = 1, 1
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r\f\v":
            i += 1
            col += 1
            continue

        start = i
        if _is_ident_start(ch):
            while i < n and _is_ident_char(source[i]):
                i += 1
            text = source[start:i]
            kind = KEYWORDS.get(text, TokenKind.IDENTIFIER)
        elif ch.isdigit() and ch.isascii():
            while i < n and source[i].isdigit() and source[i].isascii():
                i += 1
            text = source[start:i]
            kind = TokenKind.NUMBER
        elif source[i:i + 2] in OPERATORS:
            text = source[i:i + 2]
            kind = OPERATORS[text]
            i += 2
        elif ch in OPERATORS:
            text = ch
            kind = OPERATORS[ch]
            i += 1
        else:
            raise CompileError([Diagnostic(
                INVALID_CHARACTER, f"invalid character {ch!r}", line, col)])
        tokens.append(Token(kind, text, line, col))
        col += i - start
    return tokens


def render_token_dump(tokens) -> str:
    lines = [f"{t.lexeme}\tToken: {t.id}" for t in tokens]
    lines.append("")
    lines.append(f"Total tokens: {len(tokens)}")
    return "\n".join(lines)
