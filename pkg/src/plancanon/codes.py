"""Canonical code values: token sequences with a total lexicographic order.

A code is a balanced-parenthesis token string over ``(``, ``)``, ``,`` and
non-negative integers. Codes compare lexicographically with the fixed token
order ``( < ) < , < 0 < 1 < ...``; equality of codes is exact token equality.
Internally each token is a single int (parens and comma map to negative
sentinels below every integer literal), so tuple comparison realizes the
token order directly.
"""

from __future__ import annotations

from typing import Iterable, Iterator

LPAREN = -3
RPAREN = -2
COMMA = -1


class Code:
    """An immutable canonical token sequence."""

    __slots__ = ("tokens", "_hash")

    def __init__(self, tokens: Iterable[int]):
        toks = tuple(tokens)
        for t in toks:
            if t < LPAREN:
                raise ValueError(f"invalid code token {t}")
        self.tokens: tuple[int, ...] = toks
        self._hash = hash(toks)

    # -- ordering / equality -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Code) and self.tokens == other.tokens

    def __lt__(self, other: "Code") -> bool:
        return self.tokens < other.tokens

    def __le__(self, other: "Code") -> bool:
        return self.tokens <= other.tokens

    def __gt__(self, other: "Code") -> bool:
        return self.tokens > other.tokens

    def __ge__(self, other: "Code") -> bool:
        return self.tokens >= other.tokens

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[int]:
        return iter(self.tokens)

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        parts: list[str] = []
        for t in self.tokens:
            if t == LPAREN:
                parts.append("(")
            elif t == RPAREN:
                parts.append(")")
            elif t == COMMA:
                parts.append(",")
            else:
                parts.append(str(t))
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Code({self})"


def wrap(*parts: Code | int) -> Code:
    """Build ``( p1 , p2 , ... )`` from codes and raw integer tokens."""
    toks: list[int] = [LPAREN]
    first = True
    for p in parts:
        if not first:
            toks.append(COMMA)
        first = False
        if isinstance(p, Code):
            toks.extend(p.tokens)
        else:
            if p < 0:
                raise ValueError("integer tokens must be non-negative")
            toks.append(p)
    toks.append(RPAREN)
    return Code(toks)


def wrap_tokens(items: Iterable[tuple[int, ...]]) -> Code:
    """Like :func:`wrap` but over pre-flattened token tuples."""
    toks: list[int] = [LPAREN]
    first = True
    for item in items:
        if not first:
            toks.append(COMMA)
        first = False
        toks.extend(item)
    toks.append(RPAREN)
    return Code(toks)


def parse_code(text: str) -> Code:
    """Inverse of ``str(code)``; used by tests and record readers."""
    toks: list[int] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "(":
            toks.append(LPAREN)
            i += 1
        elif ch == ")":
            toks.append(RPAREN)
            i += 1
        elif ch == ",":
            toks.append(COMMA)
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(int(text[i:j]))
            i = j
        else:
            raise ValueError(f"invalid code character {ch!r} at offset {i}")
    return Code(toks)
