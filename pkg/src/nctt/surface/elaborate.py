"""Surface trees to core terms: name resolution and macro expansion."""

from __future__ import annotations

import dataclasses
import typing

from nctt import core_syntax as cs
from nctt import glue_univ
from nctt import interval_cof as ic
from nctt.surface import syntax as s
from nctt.surface.lexer import SyntaxError_


class ElabError(SyntaxError_):
    pass


class Scope:
    """Local binders (innermost last) over a table of global definitions."""

    def __init__(self, globals_: typing.Mapping[str, typing.Any], locals_: tuple = ()):
        self.globals = globals_
        self.locals = locals_  # of (name, kind)

    def push(self, name: str, kind: str) -> "Scope":
        return Scope(self.globals, self.locals + ((name, kind),))

    def lookup(self, name: str) -> typing.Optional[tuple[int, str]]:
        if name == "_":
            return None
        for k, (n, kind) in enumerate(reversed(self.locals)):
            if n == name:
                return k, kind
        return None


def elaborate(t: s.STerm, scope: Scope) -> cs.Term:
    return _Elab(scope).term(t, scope)


def elaborate_def(d: s.SDef, globals_) -> tuple[cs.Term, cs.Term]:
    """Core (type, body) of a definition, with parameters as Pi and lambdas."""
    ty: s.STerm = d.ty
    body: s.STerm = d.body
    for p in reversed(d.params):
        for n in reversed(p.names):
            ty = s.SPi(n, p.ty, ty, span=p.span)
            body = s.SLam(n, body, span=p.span)
    scope = Scope(globals_)
    return elaborate(ty, scope), elaborate(body, scope)


class _Elab:
    def __init__(self, scope: Scope):
        self.root = scope

    # -- intervals and cofibrations ------------------------------------------

    def ival(self, r: s.STerm, sc: Scope) -> ic.IntervalExpr:
        match r:
            case s.SIConst(0) | s.SConst("0"):
                return ic.IZero()
            case s.SIConst(1) | s.SConst("1"):
                return ic.IOne()
            case s.SIVar(name) | s.SVar(name):
                hit = sc.lookup(name)
                if hit is None:
                    raise ElabError("UnboundName", f"unbound interval variable '{name}'", r.span)
                k, kind = hit
                if kind != "ival":
                    raise ElabError("NotAnInterval", f"'{name}' is a term variable, not an interval variable", r.span)
                return ic.IVar(k)
            case s.SIMin(a, b):
                return ic.IMin(self.ival(a, sc), self.ival(b, sc))
            case s.SIMax(a, b):
                return ic.IMax(self.ival(a, sc), self.ival(b, sc))
        raise ElabError("NotAnInterval", "expected an interval expression", r.span)

    def cof(self, c: s.STerm, sc: Scope) -> ic.CofExpr:
        match c:
            case s.SEq(r, 0):
                return ic.EqZero(self.ival(r, sc))
            case s.SEq(r, _):
                return ic.EqOne(self.ival(r, sc))
            case s.SCTop():
                return ic.CTop()
            case s.SCBot():
                return ic.CBot()
            case s.SCAnd(a, b):
                return ic.CAnd(self.cof(a, sc), self.cof(b, sc))
            case s.SCOr(a, b):
                return ic.COr(self.cof(a, sc), self.cof(b, sc))
            case s.STermEq(a, b, ty):
                return ic.CAtom(cs.TermEq(self.term(a, sc), self.term(b, sc), self.term(ty, sc)))
        raise ElabError("ParseError", "expected a cofibration", c.span)

    # -- terms ---------------------------------------------------------------

    def term(self, t: s.STerm, sc: Scope) -> cs.Term:
        out = self._term(t, sc)
        if out.span is None:
            out = dataclasses.replace(out, span=t.span)
        return out

    def _term(self, t: s.STerm, sc: Scope) -> cs.Term:
        sp = t.span
        match t:
            case s.SVar(name):
                hit = sc.lookup(name)
                if hit is not None:
                    k, kind = hit
                    if kind != "term":
                        raise ElabError("NotATerm", f"'{name}' is an interval variable, not a term", sp)
                    return cs.Var(k, span=sp)
                if name in sc.globals:
                    return cs.Ref(name, sc.globals[name], span=sp)
                raise ElabError("UnboundName", f"unbound name '{name}'", sp)
            case s.SConst(name):
                match name:
                    case "U0":
                        return cs.U(0, span=sp)
                    case "U1":
                        return cs.U(1, span=sp)
                    case "Unit":
                        return cs.UnitT(span=sp)
                    case "star":
                        return cs.Star(span=sp)
                    case "Bool":
                        return cs.BoolT(span=sp)
                    case "true":
                        return cs.TrueT(span=sp)
                    case "false":
                        return cs.FalseT(span=sp)
                raise ElabError("NotATerm", f"interval literal {name} used as a term", sp)
            case s.SPi(n, a, b):
                return cs.Pi(n, self.term(a, sc), self.term(b, sc.push(n, "term")), span=sp)
            case s.SSigma(n, a, b):
                return cs.Sigma(n, self.term(a, sc), self.term(b, sc.push(n, "term")), span=sp)
            case s.SLam(n, b):
                return cs.Lam(n, self.term(b, sc.push(n, "term")), span=sp)
            case s.SPLam(n, b):
                return cs.PLam(n, self.term(b, sc.push(n, "ival")), span=sp)
            case s.SApp(f, a):
                return cs.App(self.term(f, sc), self.term(a, sc), span=sp)
            case s.SPApp(p, r):
                return cs.PApp(self.term(p, sc), self.ival(r, sc), span=sp)
            case s.SProj(p, 1):
                return cs.Fst(self.term(p, sc), span=sp)
            case s.SProj(p, _):
                return cs.Snd(self.term(p, sc), span=sp)
            case s.SPair(a, b):
                return cs.Pair(self.term(a, sc), self.term(b, sc), span=sp)
            case s.SAnn(a, ty):
                return cs.Ann(self.term(a, sc), self.term(ty, sc), span=sp)
            case s.SKw(kw, args):
                return self.keyword(kw, args, sc, sp)
            case s.SFill(kw, line, sys, base, at):
                inner = sc.push(line.name, "ival")
                branches = tuple(
                    cs.Branch(self.cof(b.cof, sc), self.term(b.body, inner), span=b.span) for b in sys
                )
                r = ic.IOne() if at is None else self.ival(at, sc)
                return cs.Fill(0, line.name, self.term(line.body, inner), branches, self.term(base, sc), r, span=sp)
            case s.SPathP(line, a, b):
                body = self.term(line.body, sc.push(line.name, "ival"))
                return cs.PathP(line.name, body, self.term(a, sc), self.term(b, sc), span=sp)
            case s.SBoolElim(line, tc, fc, scrut):
                motive = self.term(line.body, sc.push(line.name, "term"))
                return cs.BoolElim(
                    line.name, motive, self.term(tc, sc), self.term(fc, sc), self.term(scrut, sc), span=sp
                )
            case s.SGlue(base, sys):
                branches = []
                for b in sys:
                    ty, e = self.pair_body(b, "Glue")
                    branches.append(cs.GlueBranch(self.cof(b.cof, sc), self.term(ty, sc), self.term(e, sc), span=b.span))
                return cs.Glue(self.term(base, sc), tuple(branches), span=sp)
            case s.SGlueIntro(sys, base):
                branches = tuple(cs.Branch(self.cof(b.cof, sc), self.term(b.body, sc), span=b.span) for b in sys)
                return cs.GlueIntro(branches, self.term(base, sc), span=sp)
            case s.SHisoExt(sys, base):
                if len(sys) != 1:
                    raise ElabError("ArityError", "hisoext takes a system with exactly one branch", sp)
                (b,) = sys
                ty, e = self.pair_body(b, "hisoext")
                return cs.HisoExt(self.cof(b.cof, sc), self.term(ty, sc), self.term(e, sc), self.term(base, sc), span=sp)
        raise ElabError("ParseError", f"unexpected {type(t).__name__} in term position", sp)

    def pair_body(self, b: s.SBranch, what: str):
        if not isinstance(b.body, s.SPair):
            raise ElabError("GlueBranchForm", f"{what} branches must have the form cof -> (T, e)", b.span)
        return b.body.a, b.body.b

    def keyword(self, kw: str, args: tuple, sc: Scope, sp) -> cs.Term:
        want = s.KW_ARITY[kw]
        if len(args) != want:
            raise ElabError("ArityError", f"'{kw}' expects {want} arguments, got {len(args)}", sp)
        if kw == "pathres":
            return _spanned(glue_univ.pathres_term(self.term(args[0], sc), self.ival(args[1], sc)), sp)
        xs = [self.term(a, sc) for a in args]
        match kw:
            case "Path":
                a, x, y = xs
                return cs.PathP("_", cs.shift(a, 1), x, y, span=sp)
            case "refl":
                return cs.PLam("_", cs.shift(xs[0], 1), span=sp)
            case "J":
                return cs.J(*xs, span=sp)
            case "ua":
                return _spanned(glue_univ.ua_term(*xs), sp)
            case "unglue":
                return cs.Unglue(xs[0], span=sp)
            case "HIso":
                return _spanned(glue_univ.hiso_type_term(*xs), sp)
            case "idHIso":
                a = xs[0]
                return cs.Ann(glue_univ.id_hiso_term(), glue_univ.hiso_type_term(a, a), span=sp)
            case "fst":
                return cs.Fst(xs[0], span=sp)
            case "snd":
                return cs.Snd(xs[0], span=sp)
        raise ElabError("ParseError", f"unknown keyword {kw}", sp)


def _spanned(t: cs.Term, sp) -> cs.Term:
    return dataclasses.replace(t, span=sp)
