"""Tokenizer for ``.nctt`` source."""

from __future__ import annotations

import dataclasses
import re


@dataclasses.dataclass(frozen=True)
class Span:
    start: int
    end: int
    line: int
    col: int

    def to(self, other: "Span") -> "Span":
        return Span(self.start, max(self.end, other.end), self.line, self.col)


class SyntaxError_(Exception):
    def __init__(self, code: str, message: str, span: Span):
        super().__init__(message)
        self.code = code
        self.message = message
        self.span = span


KEYWORDS = frozenset(
    {
        "def", "import", "U0", "U1", "Unit", "star", "Bool", "true", "false", "boolelim",
        "fst", "snd", "fill", "comp", "transp", "Glue", "glue", "unglue", "J", "pathres",
        "ua", "hisoext", "Path", "PathP", "refl", "TT", "FF", "HIso", "idHIso",
    }
)  # fmt: skip

# longest first
SYMBOLS = [
    ("/\\", "AND"),
    ("\\/", "OR"),
    ("->", "ARROW"),
    ("\\", "LAMBDA"),
    ("λ", "LAMBDA"),
    (".", "DOT"),
    ("<", "LANGLE"),
    (">", "RANGLE"),
    ("@", "AT"),
    ("*", "TIMES"),
    (",", "COMMA"),
    (":", "COLON"),
    ("=", "EQUALS"),
    ("~", "TILDE"),
    ("(", "LPAREN"),
    (")", "RPAREN"),
    ("[", "LBRACK"),
    ("]", "RBRACK"),
]

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*(?:-[A-Za-z0-9_']+)*")
PROJ_RE = re.compile(r"\.([12])(?![A-Za-z0-9_'])")
STRING_RE = re.compile(r'"([^"\\\n]|\\.)*"')


@dataclasses.dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span


class _Pos:
    """Offset to line/column conversion."""

    def __init__(self, src: str):
        self.starts = [0]
        for k, ch in enumerate(src):
            if ch == "\n":
                self.starts.append(k + 1)

    def span(self, start: int, end: int) -> Span:
        lo, hi = 0, len(self.starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.starts[mid] <= start:
                lo = mid
            else:
                hi = mid - 1
        return Span(start, end, lo + 1, start - self.starts[lo] + 1)


def lex(src: str) -> list[Token]:
    pos = _Pos(src)
    out: list[Token] = []
    k, n = 0, len(src)
    while k < n:
        ch = src[k]
        if ch.isspace():
            k += 1
            continue
        if src.startswith("--", k):
            nl = src.find("\n", k)
            k = n if nl < 0 else nl
            continue
        if src.startswith("{-", k):
            depth, j = 1, k + 2
            while j < n and depth:
                if src.startswith("{-", j):
                    depth, j = depth + 1, j + 2
                elif src.startswith("-}", j):
                    depth, j = depth - 1, j + 2
                else:
                    j += 1
            if depth:
                raise SyntaxError_("UnterminatedComment", "unterminated block comment", pos.span(k, k + 2))
            k = j
            continue
        if ch == "." and k > 0 and not src[k - 1].isspace():
            m = PROJ_RE.match(src, k)
            if m:
                out.append(Token("PROJ", m.group(1), pos.span(k, m.end())))
                k = m.end()
                continue
        m = IDENT_RE.match(src, k)
        if m:
            text = m.group(0)
            out.append(Token("KW" if text in KEYWORDS else "IDENT", text, pos.span(k, m.end())))
            k = m.end()
            continue
        if ch in "01" and not (k + 1 < n and src[k + 1].isdigit()):
            out.append(Token("INT0" if ch == "0" else "INT1", ch, pos.span(k, k + 1)))
            k += 1
            continue
        if ch == '"':
            m = STRING_RE.match(src, k)
            if not m:
                raise SyntaxError_("IllegalCharacter", "unterminated string literal", pos.span(k, k + 1))
            out.append(Token("STRING", m.group(0)[1:-1], pos.span(k, m.end())))
            k = m.end()
            continue
        for sym, kind in SYMBOLS:
            if src.startswith(sym, k):
                out.append(Token(kind, sym, pos.span(k, k + len(sym))))
                k += len(sym)
                break
        else:
            raise SyntaxError_("IllegalCharacter", f"illegal character {ch!r}", pos.span(k, k + 1))
    out.append(Token("EOF", "", pos.span(n, n)))
    return out
