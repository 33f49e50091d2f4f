"""Recursive-descent parser producing surface trees."""

from __future__ import annotations

import typing

from nctt.surface import syntax as s
from nctt.surface.lexer import SYMBOLS, Span, SyntaxError_, Token, lex

ATOM_START = {"IDENT", "INT0", "INT1", "LPAREN"}
CONST_KW = s.CONSTS


KIND_NAMES = {
    "IDENT": "identifier",
    "STRING": "string",
    "EOF": "end of input",
    "PROJ": "projection",
    **{kind: f"'{sym}'" for sym, kind in SYMBOLS if kind != "LAMBDA"},
    "LAMBDA": "'\\'",
}


class ParseError(SyntaxError_):
    def __init__(self, expected: typing.Iterable[str], tok: Token):
        exp = sorted(set(expected))
        got = "end of input" if tok.kind == "EOF" else repr(tok.text)
        super().__init__("ParseError", f"expected {' or '.join(exp)}, got {got}", tok.span)
        self.expected = exp


class _Backtrack(Exception):
    pass


class Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.k = 0

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def peek(self, n: int = 1) -> Token:
        return self.toks[min(self.k + n, len(self.toks) - 1)]

    def at(self, kind: str, text: typing.Optional[str] = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_kw(self, *words: str) -> bool:
        return self.tok.kind == "KW" and self.tok.text in words

    def eat(self, kind: str, text: typing.Optional[str] = None) -> Token:
        if not self.at(kind, text):
            raise ParseError([text or KIND_NAMES.get(kind, kind)], self.tok)
        t = self.tok
        self.k += 1
        return t

    def span_from(self, start: Token) -> Span:
        return start.span.to(self.toks[self.k - 1].span)

    def attempt(self, fn):
        save = self.k
        try:
            return fn()
        except (ParseError, _Backtrack):
            self.k = save
            return None

    # -- declarations --------------------------------------------------------

    def parse_file(self) -> list:
        decls = []
        while not self.at("EOF"):
            start = self.tok
            if self.at_kw("import"):
                self.k += 1
                path = self.eat("STRING").text
                decls.append(s.SImport(path, span=self.span_from(start)))
            elif self.at_kw("def"):
                self.k += 1
                name = self.eat("IDENT").text
                params = []
                while self.at("LPAREN"):
                    pstart = self.tok
                    self.k += 1
                    names = [self.eat("IDENT").text]
                    while self.at("IDENT"):
                        names.append(self.eat("IDENT").text)
                    self.eat("COLON")
                    ty = self.expr()
                    self.eat("RPAREN")
                    params.append(s.SParam(tuple(names), ty, span=self.span_from(pstart)))
                self.eat("COLON")
                ty = self.expr()
                self.eat("EQUALS")
                body = self.expr()
                decls.append(s.SDef(name, tuple(params), ty, body, span=self.span_from(start)))
            else:
                raise ParseError(["def", "import"], self.tok)
        return decls

    # -- terms ---------------------------------------------------------------

    def expr(self) -> s.STerm:
        start = self.tok
        if self.at("LAMBDA"):
            self.k += 1
            names = [self.eat("IDENT").text]
            while self.at("IDENT"):
                names.append(self.eat("IDENT").text)
            self.eat("DOT")
            body = self.expr()
            for n in reversed(names):
                body = s.SLam(n, body, span=self.span_from(start))
            return body
        if self.at("LANGLE"):
            self.k += 1
            names = [self.eat("IDENT").text]
            while self.at("IDENT"):
                names.append(self.eat("IDENT").text)
            self.eat("RANGLE")
            body = self.expr()
            for n in reversed(names):
                body = s.SPLam(n, body, span=self.span_from(start))
            return body
        if self.at("LPAREN"):
            tele = self.attempt(self.telescope)
            if tele is not None:
                binders, op = tele
                cod = self.expr()
                node = s.SPi if op == "ARROW" else s.SSigma
                for names, dom in reversed(binders):
                    for n in reversed(names):
                        cod = node(n, dom, cod, span=self.span_from(start))
                return cod
        lhs = self.app()
        if self.at("ARROW") or self.at("TIMES"):
            op = self.tok.kind
            self.k += 1
            rhs = self.expr()
            node = s.SPi if op == "ARROW" else s.SSigma
            return node("_", lhs, rhs, span=self.span_from(start))
        return lhs

    def telescope(self):
        binders = []
        while self.at("LPAREN") and self.peek().kind == "IDENT":
            self.k += 1
            names = [self.eat("IDENT").text]
            while self.at("IDENT"):
                names.append(self.eat("IDENT").text)
            self.eat("COLON")
            ty = self.expr()
            self.eat("RPAREN")
            binders.append((tuple(names), ty))
        if not binders or not (self.at("ARROW") or self.at("TIMES")):
            raise _Backtrack()
        op = self.tok.kind
        self.k += 1
        return binders, op

    def app(self) -> s.STerm:
        start = self.tok
        head = self.head()
        while True:
            if self.at("AT"):
                self.k += 1
                r = self.ival_atom()
                head = s.SPApp(head, r, span=self.span_from(start))
            elif self.starts_atom():
                head = s.SApp(head, self.atom(), span=self.span_from(start))
            else:
                return head

    def starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ATOM_START or (t.kind == "KW" and t.text in CONST_KW)

    def head(self) -> s.STerm:
        start = self.tok
        if self.tok.kind != "KW" or self.tok.text in CONST_KW:
            return self.atom()
        kw = self.tok.text
        self.k += 1
        if kw in s.KW_ARITY:
            args = []
            while len(args) < s.KW_ARITY[kw] and self.starts_atom():
                args.append(self.atom())
            return s.SKw(kw, tuple(args), span=self.span_from(start))
        match kw:
            case "fill":
                line = self.line()
                sys = self.system()
                base = self.atom()
                self.eat("AT")
                at = self.ival_atom()
                return s.SFill(kw, line, sys, base, at, span=self.span_from(start))
            case "comp":
                line = self.line()
                sys = self.system()
                base = self.atom()
                return s.SFill(kw, line, sys, base, None, span=self.span_from(start))
            case "transp":
                line = self.line()
                base = self.atom()
                return s.SFill(kw, line, (), base, None, span=self.span_from(start))
            case "PathP":
                line = self.line()
                a = self.atom()
                b = self.atom()
                return s.SPathP(line, a, b, span=self.span_from(start))
            case "boolelim":
                line = self.line()
                t = self.atom()
                f = self.atom()
                sc = self.atom()
                return s.SBoolElim(line, t, f, sc, span=self.span_from(start))
            case "Glue":
                base = self.atom()
                sys = self.system()
                return s.SGlue(base, sys, span=self.span_from(start))
            case "glue":
                sys = self.system()
                base = self.atom()
                return s.SGlueIntro(sys, base, span=self.span_from(start))
            case "hisoext":
                sys = self.system()
                base = self.atom()
                return s.SHisoExt(sys, base, span=self.span_from(start))
        self.k -= 1
        raise ParseError(["a term"], self.tok)

    def atom(self) -> s.STerm:
        start = self.tok
        t = self.tok
        if t.kind == "IDENT":
            self.k += 1
            node: s.STerm = s.SVar(t.text, span=t.span)
        elif t.kind == "KW" and t.text in CONST_KW:
            self.k += 1
            node = s.SConst(t.text, span=t.span)
        elif t.kind in ("INT0", "INT1"):
            self.k += 1
            node = s.SConst(t.text, span=t.span)
        elif t.kind == "LPAREN":
            self.k += 1
            inner = self.expr()
            if self.at("COMMA"):
                self.k += 1
                other = self.expr()
                self.eat("RPAREN")
                node = s.SPair(inner, other, span=self.span_from(start))
            elif self.at("COLON"):
                self.k += 1
                ty = self.expr()
                self.eat("RPAREN")
                node = s.SAnn(inner, ty, span=self.span_from(start))
            else:
                self.eat("RPAREN")
                node = inner
        else:
            raise ParseError(["identifier", "(", "0", "1"], t)
        while self.at("PROJ"):
            p = self.eat("PROJ")
            node = s.SProj(node, int(p.text), span=self.span_from(start))
        return node

    def line(self) -> s.SLine:
        start = self.eat("LPAREN")
        name = self.eat("IDENT").text
        self.eat("DOT")
        body = self.expr()
        self.eat("RPAREN")
        return s.SLine(name, body, span=self.span_from(start))

    # -- systems, cofibrations, intervals --------------------------------------

    def system(self) -> tuple:
        self.eat("LBRACK")
        out = []
        if self.at("RBRACK"):
            self.k += 1
            return ()
        while True:
            start = self.tok
            c = self.cof()
            self.eat("ARROW")
            body = self.expr()
            out.append(s.SBranch(c, body, span=self.span_from(start)))
            if self.at("COMMA"):
                self.k += 1
                continue
            self.eat("RBRACK")
            return tuple(out)

    def cof(self) -> s.STerm:
        start = self.tok
        c = self.cof_and()
        while self.at("OR"):
            self.k += 1
            c = s.SCOr(c, self.cof_and(), span=self.span_from(start))
        return c

    def cof_and(self) -> s.STerm:
        start = self.tok
        c = self.cof_atom()
        while self.at("AND"):
            self.k += 1
            c = s.SCAnd(c, self.cof_atom(), span=self.span_from(start))
        return c

    def cof_atom(self) -> s.STerm:
        start = self.tok
        if self.at_kw("TT"):
            self.k += 1
            return s.SCTop(span=start.span)
        if self.at_kw("FF"):
            self.k += 1
            return s.SCBot(span=start.span)

        def eq():
            r = self.ival_atom()
            self.eat("EQUALS")
            if self.at("INT0") or self.at("INT1"):
                v = int(self.tok.text)
                self.k += 1
                return s.SEq(r, v, span=self.span_from(start))
            raise ParseError(["0", "1"], self.tok)

        def paren():
            self.eat("LPAREN")
            c = self.cof()
            self.eat("RPAREN")
            return c

        def term_eq():
            a = self.app()
            self.eat("TILDE")
            b = self.app()
            self.eat("COLON")
            ty = self.app()
            return s.STermEq(a, b, ty, span=self.span_from(start))

        for alt in (eq, paren):
            got = self.attempt(alt)
            if got is not None:
                return got
        save = self.k
        try:
            return term_eq()
        except ParseError as err:
            if self.k == save:
                raise ParseError(["a cofibration"], self.tok) from err
            raise

    def ival(self) -> s.STerm:
        start = self.tok
        r = self.ival_and()
        while self.at("OR"):
            self.k += 1
            r = s.SIMax(r, self.ival_and(), span=self.span_from(start))
        return r

    def ival_and(self) -> s.STerm:
        start = self.tok
        r = self.ival_atom()
        while self.at("AND"):
            self.k += 1
            r = s.SIMin(r, self.ival_atom(), span=self.span_from(start))
        return r

    def ival_atom(self) -> s.STerm:
        t = self.tok
        if t.kind in ("INT0", "INT1"):
            self.k += 1
            return s.SIConst(int(t.text), span=t.span)
        if t.kind == "IDENT":
            self.k += 1
            return s.SIVar(t.text, span=t.span)
        if t.kind == "LPAREN":
            self.k += 1
            r = self.ival()
            self.eat("RPAREN")
            return r
        raise ParseError(["0", "1", "interval variable", "("], t)


def parse(tokens_or_src) -> list:
    tokens = lex(tokens_or_src) if isinstance(tokens_or_src, str) else tokens_or_src
    return Parser(tokens).parse_file()


def parse_term(src: str) -> s.STerm:
    p = Parser(lex(src))
    t = p.expr()
    p.eat("EOF")
    return t
