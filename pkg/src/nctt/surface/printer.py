"""Printing surface trees, and reading core terms back into surface syntax."""

from __future__ import annotations

import typing

from nctt import core_syntax as cs
from nctt import interval_cof as ic
from nctt.surface import syntax as s

EXPR, APP, ATOM = 0, 1, 2


def _paren(text: str, need: bool) -> str:
    return f"({text})" if need else text


# -- surface printing -------------------------------------------------------------


def show(t: s.STerm, prec: int = EXPR) -> str:
    match t:
        case s.SVar(name) | s.SConst(name):
            return name
        case s.SLam(n, b):
            return _paren(f"\\{n}. {show(b)}", prec > EXPR)
        case s.SPLam(n, b):
            return _paren(f"<{n}> {show(b)}", prec > EXPR)
        case s.SPi(n, a, b) | s.SSigma(n, a, b):
            op = "->" if isinstance(t, s.SPi) else "*"
            dom = show(a, APP) if n == "_" else f"({n} : {show(a)})"
            return _paren(f"{dom} {op} {show(b)}", prec > EXPR)
        case s.SApp(f, a):
            need = isinstance(f, s.SKw) and len(f.args) < s.KW_ARITY[f.kw]
            return _paren(f"{_paren(show(f, APP), need)} {show(a, ATOM)}", prec > APP)
        case s.SPApp(p, r):
            need = isinstance(p, s.SKw) and len(p.args) < s.KW_ARITY[p.kw]
            return _paren(f"{_paren(show(p, APP), need)} @ {show_ival(r, ATOM)}", prec > APP)
        case s.SProj(p, k):
            return f"{show(p, ATOM)}.{k}"
        case s.SPair(a, b):
            return f"({show(a)}, {show(b)})"
        case s.SAnn(a, ty):
            return f"({show(a)} : {show(ty)})"
        case s.SKw(kw, args):
            if kw == "pathres" and len(args) == 2:
                return _paren(f"pathres {show(args[0], ATOM)} {show_ival(args[1], ATOM)}", prec > APP)
            return _paren(" ".join([kw] + [show(a, ATOM) for a in args]), prec > APP)
        case s.SFill(kw, line, sys, base, at):
            parts = [kw, show_line(line)]
            if kw != "transp":
                parts.append(show_system(sys))
            parts.append(show(base, ATOM))
            if at is not None:
                parts += ["@", show_ival(at, ATOM)]
            return _paren(" ".join(parts), prec > APP)
        case s.SPathP(line, a, b):
            return _paren(f"PathP {show_line(line)} {show(a, ATOM)} {show(b, ATOM)}", prec > APP)
        case s.SBoolElim(line, tc, fc, sc):
            return _paren(f"boolelim {show_line(line)} {show(tc, ATOM)} {show(fc, ATOM)} {show(sc, ATOM)}", prec > APP)
        case s.SGlue(base, sys):
            return _paren(f"Glue {show(base, ATOM)} {show_system(sys)}", prec > APP)
        case s.SGlueIntro(sys, base):
            return _paren(f"glue {show_system(sys)} {show(base, ATOM)}", prec > APP)
        case s.SHisoExt(sys, base):
            return _paren(f"hisoext {show_system(sys)} {show(base, ATOM)}", prec > APP)
    raise TypeError(f"cannot print {t!r}")


def show_line(line: s.SLine) -> str:
    return f"({line.name}. {show(line.body)})"


def show_system(sys: tuple) -> str:
    if not sys:
        return "[]"
    return "[" + ", ".join(f"{show_cof(b.cof)} -> {show(b.body)}" for b in sys) + "]"


def show_ival(r: s.STerm, prec: int = EXPR) -> str:
    match r:
        case s.SIConst(v):
            return str(v)
        case s.SIVar(name) | s.SVar(name) | s.SConst(name):
            return name
        case s.SIMax(a, b):
            return _paren(f"{show_ival(a, APP)} \\/ {show_ival(b, ATOM)}", prec > EXPR)
        case s.SIMin(a, b):
            text = f"{show_ival(a, APP)} /\\ {show_ival(b, ATOM)}"
            return _paren(text, prec > APP)
    raise TypeError(f"cannot print interval {r!r}")


def show_cof(c: s.STerm, prec: int = EXPR) -> str:
    match c:
        case s.SCTop():
            return "TT"
        case s.SCBot():
            return "FF"
        case s.SEq(r, v):
            return f"{show_ival(r, ATOM)} = {v}"
        case s.SCOr(a, b):
            return _paren(f"{show_cof(a, EXPR)} \\/ {show_cof(b, APP)}", prec > EXPR)
        case s.SCAnd(a, b):
            return _paren(f"{show_cof(a, APP)} /\\ {show_cof(b, ATOM)}", prec > APP)
        case s.STermEq(a, b, ty):
            return _paren(f"{show(a, APP)} ~ {show(b, APP)} : {show(ty, APP)}", prec > APP)
    raise TypeError(f"cannot print cofibration {c!r}")


def show_decl(d) -> str:
    match d:
        case s.SImport(path):
            return f'import "{path}"'
        case s.SDef(name, params, ty, body):
            ps = "".join(f" ({' '.join(p.names)} : {show(p.ty)})" for p in params)
            return f"def {name}{ps} : {show(ty)} =\n  {show(body)}"
    raise TypeError(f"cannot print {d!r}")


def show_file(decls: list) -> str:
    return "\n\n".join(show_decl(d) for d in decls) + "\n"


# -- core to surface ----------------------------------------------------------------


def _fresh(name: str, taken: typing.Collection[str]) -> str:
    base = "x" if name in ("_", "") else name
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


class _Back:
    def __init__(self, names: list[str]):
        self.names = names

    def bind(self, name: str, body: cs.Term, used: bool = True) -> tuple[str, "_Back"]:
        if not used:
            n = "_"
        else:
            n = _fresh(name, self.names)
        return n, _Back(self.names + [n])

    def var(self, k: int) -> str:
        if k < len(self.names):
            return self.names[len(self.names) - 1 - k]
        return f"#{k}"

    def ival(self, r: ic.IntervalExpr) -> s.STerm:
        match r:
            case ic.IZero():
                return s.SIConst(0)
            case ic.IOne():
                return s.SIConst(1)
            case ic.IVar(k):
                return s.SIVar(self.var(k))
            case ic.IMin(a, b):
                return s.SIMin(self.ival(a), self.ival(b))
            case ic.IMax(a, b):
                return s.SIMax(self.ival(a), self.ival(b))
        raise TypeError(r)

    def cof(self, c: ic.CofExpr) -> s.STerm:
        match c:
            case ic.CTop():
                return s.SCTop()
            case ic.CBot():
                return s.SCBot()
            case ic.EqZero(r):
                return s.SEq(self.ival(r), 0)
            case ic.EqOne(r):
                return s.SEq(self.ival(r), 1)
            case ic.CAnd(a, b):
                return s.SCAnd(self.cof(a), self.cof(b))
            case ic.COr(a, b):
                return s.SCOr(self.cof(a), self.cof(b))
            case ic.CAtom(cs.TermEq(a, b, ty)):
                return s.STermEq(self.term(a), self.term(b), self.term(ty))
        raise TypeError(c)

    def binder(self, name: str, body: cs.Term) -> tuple[str, "_Back"]:
        return self.bind(name, body, 0 in cs.free_indices(body))

    def term(self, t: cs.Term) -> s.STerm:
        match t:
            case cs.Var(k):
                return s.SVar(self.var(k))
            case cs.Ref(name):
                return s.SVar(name)
            case cs.U(level):
                return s.SConst(f"U{level}")
            case cs.UnitT():
                return s.SConst("Unit")
            case cs.Star():
                return s.SConst("star")
            case cs.BoolT():
                return s.SConst("Bool")
            case cs.TrueT():
                return s.SConst("true")
            case cs.FalseT():
                return s.SConst("false")
            case cs.Pi(n, a, b) | cs.Sigma(n, a, b):
                n2, inner = self.binder(n, b)
                node = s.SPi if isinstance(t, cs.Pi) else s.SSigma
                return node(n2, self.term(a), inner.term(b))
            case cs.Lam(n, b):
                n2, inner = self.bind(n, b)
                return s.SLam(n2, inner.term(b))
            case cs.App(f, a):
                return s.SApp(self.term(f), self.term(a))
            case cs.Pair(a, b):
                return s.SPair(self.term(a), self.term(b))
            case cs.Fst(p):
                return s.SProj(self.term(p), 1)
            case cs.Snd(p):
                return s.SProj(self.term(p), 2)
            case cs.PathP(n, line, a, b):
                if 0 not in cs.free_indices(line):
                    return s.SKw("Path", (self.term(cs.shift(line, -1)), self.term(a), self.term(b)))
                n2, inner = self.bind(n, line)
                return s.SPathP(s.SLine(n2, inner.term(line)), self.term(a), self.term(b))
            case cs.PLam(n, b):
                n2, inner = self.bind(n if n != "_" else "i", b)
                return s.SPLam(n2, inner.term(b))
            case cs.PApp(p, r):
                return s.SPApp(self.term(p), self.ival(r))
            case cs.BoolElim(n, m, a, b, sc):
                n2, inner = self.bind(n, m)
                return s.SBoolElim(s.SLine(n2, inner.term(m)), self.term(a), self.term(b), self.term(sc))
            case cs.Fill(d, n, line, sys, base, at):
                n2, inner = self.bind(n, line)
                branches = tuple(s.SBranch(self.cof(b.cof), inner.term(b.body)) for b in sys)
                kw = "comp" if isinstance(at, ic.IOne) and d == 0 else ("fill" if d == 0 else "fill-reversed")
                out_at = None if kw == "comp" else self.ival(at)
                return s.SFill(kw, s.SLine(n2, inner.term(line)), branches, self.term(base), out_at)
            case cs.Glue(base, sys):
                branches = tuple(
                    s.SBranch(self.cof(b.cof), s.SPair(self.term(b.ty), self.term(b.hiso))) for b in sys
                )
                return s.SGlue(self.term(base), branches)
            case cs.GlueIntro(sys, base):
                branches = tuple(s.SBranch(self.cof(b.cof), self.term(b.body)) for b in sys)
                return s.SGlueIntro(branches, self.term(base))
            case cs.Unglue(g):
                return s.SKw("unglue", (self.term(g),))
            case cs.J(A, a, C, d, b, p):
                return s.SKw("J", tuple(self.term(x) for x in (A, a, C, d, b, p)))
            case cs.HisoExt(c, ty, e, base):
                return s.SHisoExt((s.SBranch(self.cof(c), s.SPair(self.term(ty), self.term(e))),), self.term(base))
            case cs.Ann(a, ty):
                return s.SAnn(self.term(a), self.term(ty))
        raise TypeError(f"cannot read back {t!r}")


def to_surface(t: cs.Term, names: typing.Optional[list[str]] = None) -> s.STerm:
    return _Back(list(names or [])).term(t)


def print_term(t: cs.Term, names: typing.Optional[list[str]] = None) -> str:
    return show(to_surface(t, names))
