"""Bidirectional type checking over restricted contexts.

The checker elaborates as it goes: the returned core term is the input with
``unglue`` annotated by its Glue type.  A context carries the ambient
cofibration; branch bodies are checked once per face of (ambient /\\ branch),
and conversion is decided face by face after restricting both sides.
"""

from __future__ import annotations

import dataclasses
import typing

from nctt import core_syntax as cs
from nctt import glue_univ
from nctt import interval_cof as ic
from nctt import nbe
from nctt.interval_cof import ONE, ZERO, Cof, Interval
from nctt.nbe import (
    BOOL,
    FALSE,
    STAR,
    TRUE,
    U0,
    U1,
    UNIT,
    TermClo,
    Value,
    VGlue,
    VPathP,
    VPi,
    VSigma,
    VU,
)


class CheckError(Exception):
    def __init__(self, code: str, message: str, span=None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.span = span

    def __str__(self) -> str:
        return f"error[{self.code}]: {self.message}"


@dataclasses.dataclass
class Definition:
    name: str
    ty: Value
    body: cs.Term
    ty_term: cs.Term
    span: typing.Any = None
    _value: typing.Optional[Value] = None

    @property
    def value(self) -> Value:
        if self._value is None:
            self._value = nbe.eval_term((), self.body)
        return self._value


@dataclasses.dataclass(frozen=True)
class Ctx:
    names: tuple = ()
    kinds: tuple = ()  # "term" or "ival"
    types: tuple = ()
    env: tuple = ()
    cof: Cof = ic.TOP

    @property
    def depth(self) -> int:
        return len(self.env)

    def bind(self, name: str, ty: Value) -> "Ctx":
        x = nbe.var(self.depth, ty)
        return Ctx(self.names + (name,), self.kinds + ("term",), self.types + (ty,), self.env + (x,), self.cof)

    def bind_ival(self, name: str) -> "Ctx":
        i = Interval.var(self.depth)
        return Ctx(self.names + (name,), self.kinds + ("ival",), self.types + (None,), self.env + (i,), self.cof)

    def with_cof(self, cof: Cof) -> "Ctx":
        return dataclasses.replace(self, cof=cof)

    def assume(self, cof: Cof) -> "Ctx":
        return self.with_cof(self.cof.meet(cof))

    def eval(self, t: cs.Term) -> Value:
        return nbe.eval_term(self.env, t)

    def eval_at(self, t: cs.Term, x) -> Value:
        return nbe.eval_term(self.env + (x,), t)

    def quote(self, v: Value, ty: Value) -> cs.Term:
        return nbe.quote(self.depth, v, ty)

    def quote_ty(self, v: Value) -> cs.Term:
        return nbe.quote_ty(self.depth, v)


def whnf(ctx: Ctx, v: Value) -> Value:
    """Restrict a value to the ambient face when there is exactly one."""
    if len(ctx.cof.faces) == 1:
        (face,) = ctx.cof.faces
        if face.lits:
            return nbe.act(v, nbe.face_subst(face))
    return v


def _pattern(depth: int, u: Value, v: Value) -> typing.Optional[dict]:
    """Variables of u solved by v, when u is built from distinct variables."""
    match u:
        case nbe.VNeu(nbe.NVar(level)) if level < depth:
            return {level: v}
        case nbe.VPair(x, y):
            s1, s2 = _pattern(depth, x, nbe.vfst(v)), _pattern(depth, y, nbe.vsnd(v))
            if s1 is None or s2 is None or s1.keys() & s2.keys():
                return None
            return s1 | s2
        case nbe.VPLam():
            i = Interval.var(nbe.fresh())
            match nbe.papply(u, i):
                case nbe.VNeu(nbe.NPApp(nbe.VNeu(nbe.NVar(level)), r)) if r == i and level < depth:
                    return {level: v}
    return None


def _solved_env(ctx: Ctx, face: ic.Face) -> typing.Optional[tuple]:
    """The environment with the variables a term-equation atom solves replaced.

    The kernel produces atoms like ``(b, p) ~ (a, refl a)`` (J on a neutral
    path); on such a face the equation is usable by substitution."""
    env, changed = list(ctx.env), False
    for a in face.atoms:
        if isinstance(a, nbe.VTermEq):
            sub = _pattern(ctx.depth, a.a, a.b) or _pattern(ctx.depth, a.b, a.a)
            for level, v in (sub or {}).items():
                env[level], changed = v, True
    return tuple(env) if changed else None


def _views(ctx: Ctx):
    """Per face: how to restrict a type and a value to it."""
    for f in ctx.cof.faces:
        s = nbe.face_subst(f)
        env = _solved_env(ctx, f) if f.atoms else None

        def ty_at(a: Value, s=s, env=env) -> Value:
            a = nbe.act(a, s)
            return a if env is None else nbe.eval_term(env, nbe.quote_ty(ctx.depth, a))

        def val_at(v: Value, ty: Value, s=s, env=env) -> Value:
            v = nbe.act(v, s)
            return v if env is None else nbe.eval_term(env, nbe.quote(ctx.depth, v, nbe.act(ty, s)))

        yield ty_at, val_at


def conv(ctx: Ctx, ty: Value, a: Value, b: Value) -> bool:
    for ty_at, val_at in _views(ctx):
        if not nbe.conv(ctx.depth, ty_at(ty), val_at(a, ty), val_at(b, ty)):
            return False
    return True


def conv_ty(ctx: Ctx, a: Value, b: Value) -> bool:
    for ty_at, _ in _views(ctx):
        if not nbe.conv_ty(ctx.depth, ty_at(a), ty_at(b)):
            return False
    return True


def subtype(ctx: Ctx, got: Value, want: Value) -> bool:
    """Conversion plus the cumulativity U0 <= U1."""
    for ty_at, _ in _views(ctx):
        g, w = ty_at(got), ty_at(want)
        if isinstance(g, VU) and isinstance(w, VU):
            if g.level > w.level:
                return False
        elif not nbe.conv_ty(ctx.depth, g, w):
            return False
    return True


class Checker:
    def __init__(self) -> None:
        self.defs: dict[str, Definition] = {}

    # -- display -----------------------------------------------------------

    def show(self, ctx: Ctx, v: Value, ty: typing.Optional[Value] = None) -> str:
        from nctt.surface import printer

        try:
            t = ctx.quote_ty(v) if ty is None else ctx.quote(v, ty)
            return printer.print_term(t, list(ctx.names))
        except Exception:  # display only
            return "<value>"

    # -- declarations ------------------------------------------------------

    def check_decl(self, name: str, ty: cs.Term, body: cs.Term, span=None) -> Definition:
        if name in self.defs:
            raise CheckError("DuplicateName", f"'{name}' is already defined", span)
        ctx = Ctx()
        try:
            ty_t, _ = self.check_type(ctx, ty)
            ty_v = ctx.eval(ty_t)
            body_t = self.check(ctx, body, ty_v)
        except nbe.KernelError as err:
            raise CheckError("Internal", str(err), span) from err
        d = Definition(name, ty_v, body_t, ty_t, span)
        self.defs[name] = d
        return d

    # -- helpers -----------------------------------------------------------

    def check_type(self, ctx: Ctx, t: cs.Term) -> tuple[cs.Term, int]:
        t2, ty = self.infer(ctx, t)
        ty = whnf(ctx, ty)
        if not isinstance(ty, VU):
            raise CheckError("NotAType", f"expected a type, got a term of type {self.show(ctx, ty)}", t.span)
        return t2, ty.level

    def check_interval(self, ctx: Ctx, r: ic.IntervalExpr, span) -> None:
        match r:
            case ic.IVar(k):
                if k >= ctx.depth:
                    raise CheckError("UnboundVariable", "interval variable out of scope", span)
                if ctx.kinds[ctx.depth - 1 - k] != "ival":
                    raise CheckError("NotAnInterval", f"'{ctx.names[ctx.depth - 1 - k]}' is not an interval variable", span)
            case ic.IMin(a, b) | ic.IMax(a, b):
                self.check_interval(ctx, a, span)
                self.check_interval(ctx, b, span)

    def check_cof(self, ctx: Ctx, c: ic.CofExpr, span) -> ic.CofExpr:
        match c:
            case ic.EqZero(r) | ic.EqOne(r):
                self.check_interval(ctx, r, span)
                return c
            case ic.CAnd(a, b):
                return ic.CAnd(self.check_cof(ctx, a, span), self.check_cof(ctx, b, span))
            case ic.COr(a, b):
                return ic.COr(self.check_cof(ctx, a, span), self.check_cof(ctx, b, span))
            case ic.CAtom(cs.TermEq(a, b, ty)):
                ty_t, _ = self.check_type(ctx, ty)
                ty_v = ctx.eval(ty_t)
                return ic.CAtom(cs.TermEq(self.check(ctx, a, ty_v), self.check(ctx, b, ty_v), ty_t))
        return c

    def eval_cof(self, ctx: Ctx, c: ic.CofExpr) -> Cof:
        return nbe.eval_cof(ctx.env, c)

    def under(self, ctx: Ctx, cof: Cof, fn: typing.Callable[[Ctx], typing.Any], fallback):
        """Run ``fn`` once per face of ambient /\\ cof; return the first result."""
        total = ctx.cof.meet(cof)
        if total.is_bot():
            try:
                return fn(ctx.with_cof(ic.BOT))
            except (CheckError, nbe.KernelError):
                return fallback
        out = None
        for k, face in enumerate(sorted(total.faces, key=repr)):
            r = fn(ctx.with_cof(ic.Cof(frozenset({face}))))
            if k == 0:
                out = r
        return out

    # -- checking ----------------------------------------------------------

    def check(self, ctx: Ctx, t: cs.Term, ty: Value) -> cs.Term:
        try:
            return self._check(ctx, t, ty)
        except CheckError as err:
            if err.span is None:
                err.span = t.span
            raise

    def _check(self, ctx: Ctx, t: cs.Term, ty: Value) -> cs.Term:
        wty = whnf(ctx, ty)
        match t:
            case cs.Lam(n, body):
                if not isinstance(wty, VPi):
                    raise CheckError("TypeMismatch", f"a function was given where {self.show(ctx, ty)} was expected", t.span)
                inner = ctx.bind(n, wty.dom)
                return cs.Lam(n, self.check(inner, body, wty.cod.inst(inner.env[-1])), span=t.span)
            case cs.Pair(a, b) if isinstance(wty, VSigma):
                a2 = self.check(ctx, a, wty.dom)
                b2 = self.check(ctx, b, wty.cod.inst(ctx.eval(a2)))
                return cs.Pair(a2, b2, span=t.span)
            case cs.PLam(n, body) if isinstance(wty, VPathP):
                inner = ctx.bind_ival(n)
                body2 = self.check(inner, body, wty.line.inst(inner.env[-1]))
                for end, want, label in ((ZERO, wty.left, "0"), (ONE, wty.right, "1")):
                    got = ctx.eval_at(body2, end)
                    lty = wty.line.inst(end)
                    if not conv(ctx, lty, got, want):
                        raise CheckError(
                            "EndpointMismatch",
                            f"path endpoint at {label}: expected {self.show(ctx, want, lty)}, got {self.show(ctx, got, lty)}",
                            t.span,
                        )
                return cs.PLam(n, body2, span=t.span)
            case cs.GlueIntro(sys, base) if isinstance(ty, VGlue) or isinstance(wty, VGlue):
                g = ty if isinstance(ty, VGlue) else wty
                return self._check_glue_intro(ctx, t, g)
        t2, got = self.infer(ctx, t)
        if not subtype(ctx, got, ty):
            raise CheckError("TypeMismatch", f"expected {self.show(ctx, ty)}, got {self.show(ctx, got)}", t.span)
        return t2

    def _check_glue_intro(self, ctx: Ctx, t: cs.GlueIntro, g: VGlue) -> cs.Term:
        base2 = self.check(ctx, t.base, g.base)
        base_v = ctx.eval(base2)
        whole_ty = ic.BOT
        for c, _, _ in g.system:
            whole_ty = whole_ty.join(c)
        whole = ic.BOT
        branches = []
        for b in t.system:
            c_t = self.check_cof(ctx, b.cof, b.span or t.span)
            c_v = self.eval_cof(ctx, c_t)
            whole = whole.join(c_v)

            def one(fctx: Ctx, b=b) -> cs.Term:
                fty = whnf(fctx, g)
                body = self.check(fctx, b.body, fty)
                s = nbe.face_subst(next(iter(fctx.cof.faces))) if fctx.cof.faces else {}
                restricted = [(nbe.act_cof(c, s), nbe.act(e, s)) for c, _, e in g.system]
                for c2, e2 in restricted:
                    if c2.is_top():
                        got = nbe.apply(nbe.hiso_fwd(e2), fctx.eval(body))
                        if not conv(fctx, nbe.act(g.base, s), got, nbe.act(base_v, s)):
                            raise CheckError(
                                "BoundaryMismatch",
                                "glue: the base does not agree with the hiso image of the partial element",
                                b.span or t.span,
                            )
                        break
                return body

            body_t = self.under(ctx, c_v, one, b.body)
            branches.append(cs.Branch(c_t, body_t, span=b.span))
        if not (ic.entails(ctx.cof.meet(whole), whole_ty) and ic.entails(ctx.cof.meet(whole_ty), whole)):
            raise CheckError("TypeMismatch", "glue: the system does not cover the Glue type's cofibration", t.span)
        self._check_compat(ctx, [(self.eval_cof(ctx, b.cof), b.body) for b in branches], lambda fctx: g, None, t.span)
        return cs.GlueIntro(tuple(branches), base2, span=t.span)

    def _check_compat(self, ctx: Ctx, branches, ty_of, bind_name, span) -> None:
        """Pairwise agreement of branch bodies (bodies may bind an interval)."""
        for x in range(len(branches)):
            for y in range(x + 1, len(branches)):
                (c1, b1), (c2, b2) = branches[x], branches[y]
                inner = ctx.bind_ival(bind_name) if bind_name else ctx
                meet = inner.cof.meet(c1).meet(c2)
                if meet.is_bot():
                    continue
                fctx = inner.with_cof(meet)
                ty = ty_of(fctx)
                if not conv(fctx, ty, fctx.eval(b1), fctx.eval(b2)):
                    raise CheckError("IncompatibleBranches", f"branches {x + 1} and {y + 1} disagree on their overlap", span)

    # -- inference ---------------------------------------------------------

    def infer(self, ctx: Ctx, t: cs.Term) -> tuple[cs.Term, Value]:
        try:
            return self._infer(ctx, t)
        except CheckError as err:
            if err.span is None:
                err.span = t.span
            raise

    def _infer(self, ctx: Ctx, t: cs.Term) -> tuple[cs.Term, Value]:
        match t:
            case cs.Var(k):
                if k >= ctx.depth:
                    raise CheckError("UnboundVariable", "variable out of scope", t.span)
                lvl = ctx.depth - 1 - k
                if ctx.kinds[lvl] != "term":
                    raise CheckError("NotATerm", f"'{ctx.names[lvl]}' is an interval variable", t.span)
                return t, ctx.types[lvl]
            case cs.Ref(name, defn):
                if defn is None:
                    raise CheckError("UnboundVariable", f"unknown name '{name}'", t.span)
                return t, defn.ty
            case cs.U(0):
                return t, U1
            case cs.U(_):
                raise CheckError("CannotInfer", "U1 is the top universe and has no type", t.span)
            case cs.UnitT() | cs.BoolT():
                return t, U0
            case cs.Star():
                return t, UNIT
            case cs.TrueT() | cs.FalseT():
                return t, BOOL
            case cs.Pi(n, a, b) | cs.Sigma(n, a, b):
                a2, la = self.check_type(ctx, a)
                b2, lb = self.check_type(ctx.bind(n, ctx.eval(a2)), b)
                out = cs.Pi(n, a2, b2, span=t.span) if isinstance(t, cs.Pi) else cs.Sigma(n, a2, b2, span=t.span)
                return out, VU(max(la, lb))
            case cs.PathP(n, line, a, b):
                line2, lvl = self.check_type(ctx.bind_ival(n), line)
                a2 = self.check(ctx, a, ctx.eval_at(line2, ZERO))
                b2 = self.check(ctx, b, ctx.eval_at(line2, ONE))
                return cs.PathP(n, line2, a2, b2, span=t.span), VU(lvl)
            case cs.App(f, a):
                f2, fty = self.infer(ctx, f)
                fty = whnf(ctx, fty)
                if not isinstance(fty, VPi):
                    raise CheckError("AppNonFunction", f"applying a term of type {self.show(ctx, fty)}", t.span)
                a2 = self.check(ctx, a, fty.dom)
                return cs.App(f2, a2, span=t.span), fty.cod.inst(ctx.eval(a2))
            case cs.Fst(p) | cs.Snd(p):
                p2, pty = self.infer(ctx, p)
                pty = whnf(ctx, pty)
                if not isinstance(pty, VSigma):
                    raise CheckError("ProjNonPair", f"projection from a term of type {self.show(ctx, pty)}", t.span)
                if isinstance(t, cs.Fst):
                    return cs.Fst(p2, span=t.span), pty.dom
                return cs.Snd(p2, span=t.span), pty.cod.inst(nbe.vfst(ctx.eval(p2)))
            case cs.PApp(p, r):
                self.check_interval(ctx, r, t.span)
                p2, pty = self.infer(ctx, p)
                pty = whnf(ctx, pty)
                if not isinstance(pty, VPathP):
                    raise CheckError("PAppNonPath", f"path application to a term of type {self.show(ctx, pty)}", t.span)
                return cs.PApp(p2, r, span=t.span), pty.line.inst(nbe.eval_interval(ctx.env, r))
            case cs.BoolElim(n, m, a, b, s):
                m2, _ = self.check_type(ctx.bind(n, BOOL), m)
                a2 = self.check(ctx, a, ctx.eval_at(m2, TRUE))
                b2 = self.check(ctx, b, ctx.eval_at(m2, FALSE))
                s2 = self.check(ctx, s, BOOL)
                return cs.BoolElim(n, m2, a2, b2, s2, span=t.span), ctx.eval_at(m2, ctx.eval(s2))
            case cs.Lam():
                raise CheckError("CannotInfer", "cannot infer the type of a lambda; add an annotation", t.span)
            case cs.Pair(a, b):
                a2, ta = self.infer(ctx, a)
                b2, tb = self.infer(ctx, b)
                return cs.Pair(a2, b2, span=t.span), VSigma("_", ta, nbe.const_clo(tb))
            case cs.PLam(n, body):
                inner = ctx.bind_ival(n)
                body2, bty = self.infer(inner, body)
                line = TermClo(ctx.env, inner.quote_ty(bty))
                return cs.PLam(n, body2, span=t.span), VPathP(n, line, ctx.eval_at(body2, ZERO), ctx.eval_at(body2, ONE))
            case cs.Fill():
                return self._infer_fill(ctx, t)
            case cs.Glue(base, sys):
                return self._infer_glue(ctx, t)
            case cs.GlueIntro():
                raise CheckError("CannotInfer", "cannot infer the type of glue; add an annotation", t.span)
            case cs.Unglue(g, base, system) if base is not None and system is not None:
                # read-back keeps the Glue type, which may have reduced on this face
                glue_t, _ = self.check_type(ctx, cs.Glue(base, system, span=t.span))
                assert isinstance(glue_t, cs.Glue)
                g2 = self.check(ctx, g, ctx.eval(glue_t))
                return cs.Unglue(g2, glue_t.base, glue_t.system, span=t.span), ctx.eval(glue_t.base)
            case cs.Unglue(g, _, _):
                g2, gty = self.infer(ctx, g)
                if not isinstance(gty, VGlue):
                    raise CheckError("UnglueNonGlue", f"unglue of a term of type {self.show(ctx, gty)}", t.span)
                base_t = ctx.quote_ty(gty.base)
                sys_t = nbe.quote_ty(ctx.depth, gty)
                assert isinstance(sys_t, cs.Glue)
                return cs.Unglue(g2, base_t, sys_t.system, span=t.span), gty.base
            case cs.J(A, a, C, d, b, p):
                return self._infer_j(ctx, t)
            case cs.HisoExt(c, ty, e, base):
                base2, lvl = self.check_type(ctx, base)
                base_v = ctx.eval(base2)
                c2 = self.check_cof(ctx, c, t.span)
                c_v = self.eval_cof(ctx, c2)

                def one(fctx: Ctx):
                    ty2, l2 = self.check_type(fctx, ty)
                    if l2 > lvl:
                        raise CheckError("TypeMismatch", "hisoext: the partial type lives in a larger universe", t.span)
                    e2 = self.check(fctx, e, glue_univ.hiso_type(fctx.eval(ty2), base_v))
                    return ty2, e2

                ty2, e2 = self.under(ctx, c_v, one, (ty, e))
                out_ty = VSigma("X", VU(lvl), nbe.FunClo(lambda x: glue_univ.hiso_type(x, base_v)))
                return cs.HisoExt(c2, ty2, e2, base2, span=t.span), out_ty
            case cs.Ann(a, ty):
                ty2, _ = self.check_type(ctx, ty)
                ty_v = ctx.eval(ty2)
                return cs.Ann(self.check(ctx, a, ty_v), ty2, span=t.span), ty_v
        raise CheckError("CannotInfer", f"cannot infer a type for {type(t).__name__}", t.span)

    def _infer_fill(self, ctx: Ctx, t: cs.Fill) -> tuple[cs.Term, Value]:
        d = t.direction
        src = ZERO if d == 0 else ONE
        inner = ctx.bind_ival(t.name)
        line2, _ = self.check_type(inner, t.line)
        self.check_interval(ctx, t.at, t.span)
        base2 = self.check(ctx, t.base, ctx.eval_at(line2, src))
        base_v = ctx.eval(base2)
        branches = []
        for b in t.system:
            c_t = self.check_cof(ctx, b.cof, b.span or t.span)
            c_v = self.eval_cof(ctx, c_t)

            def one(fctx: Ctx, b=b) -> cs.Term:
                finner = fctx.bind_ival(t.name)
                body = self.check(finner, b.body, finner.eval(line2))
                if not conv(fctx, fctx.eval_at(line2, src), fctx.eval_at(body, src), base_v):
                    raise CheckError(
                        "BoundaryMismatch",
                        "the tube does not agree with the base at the start of the filling",
                        b.span or t.span,
                    )
                return body

            body_t = self.under(ctx, c_v, one, b.body)
            branches.append(cs.Branch(c_t, body_t, span=b.span))
        self._check_compat(
            ctx,
            [(self.eval_cof(ctx, b.cof), b.body) for b in branches],
            lambda fctx: fctx.eval(line2),
            t.name,
            t.span,
        )
        out = cs.Fill(d, t.name, line2, tuple(branches), base2, t.at, span=t.span)
        return out, ctx.eval_at(line2, nbe.eval_interval(ctx.env, t.at))

    def _infer_glue(self, ctx: Ctx, t: cs.Glue) -> tuple[cs.Term, Value]:
        base2, lvl = self.check_type(ctx, t.base)
        base_v = ctx.eval(base2)
        branches = []
        for b in t.system:
            c_t = self.check_cof(ctx, b.cof, b.span or t.span)
            c_v = self.eval_cof(ctx, c_t)

            def one(fctx: Ctx, b=b):
                try:
                    ty2, l2 = self.check_type(fctx, b.ty)
                except CheckError as err:
                    raise CheckError("BranchTypeMismatch", f"Glue branch type: {err.message}", err.span) from err
                if l2 > lvl:
                    raise CheckError("BranchTypeMismatch", "Glue branch type lives in a larger universe than the base", b.span)
                try:
                    e2 = self.check(fctx, b.hiso, glue_univ.hiso_type(fctx.eval(ty2), base_v))
                except CheckError as err:
                    raise CheckError("HIsoIllTyped", f"Glue branch hiso: {err.message}", err.span or b.span) from err
                return ty2, e2

            ty2, e2 = self.under(ctx, c_v, one, (b.ty, b.hiso))
            branches.append(cs.GlueBranch(c_t, ty2, e2, span=b.span))
        cofs = [self.eval_cof(ctx, b.cof) for b in branches]
        for x in range(len(branches)):
            for y in range(x + 1, len(branches)):
                meet = ctx.cof.meet(cofs[x]).meet(cofs[y])
                if meet.is_bot():
                    continue
                fctx = ctx.with_cof(meet)
                tx, ty_ = fctx.eval(branches[x].ty), fctx.eval(branches[y].ty)
                if not conv_ty(fctx, tx, ty_):
                    raise CheckError("IncompatibleBranches", f"Glue branches {x + 1} and {y + 1} have different types on their overlap", t.span)
                hty = glue_univ.hiso_type(tx, base_v)
                if not conv(fctx, hty, fctx.eval(branches[x].hiso), fctx.eval(branches[y].hiso)):
                    raise CheckError("IncompatibleBranches", f"Glue branches {x + 1} and {y + 1} have different hisos on their overlap", t.span)
        return cs.Glue(base2, tuple(branches), span=t.span), VU(lvl)

    def _infer_j(self, ctx: Ctx, t: cs.J) -> tuple[cs.Term, Value]:
        A2, _ = self.check_type(ctx, t.ty)
        A = ctx.eval(A2)
        a2 = self.check(ctx, t.a, A)
        a = ctx.eval(a2)
        def motive_ty(u: Value) -> Value:
            return VPi("x", A, nbe.FunClo(lambda x: nbe.arrow(nbe.path_type(A, a, x), u)))

        if isinstance(t.motive, (cs.Lam, cs.PLam, cs.Pair, cs.GlueIntro)):
            C2 = self.check(ctx, t.motive, motive_ty(U1))
        else:
            C2, cty = self.infer(ctx, t.motive)
            if not (conv_ty(ctx, cty, motive_ty(U0)) or conv_ty(ctx, cty, motive_ty(U1))):
                raise CheckError(
                    "TypeMismatch",
                    f"J motive: expected (x : A) -> Path A a x -> U, got {self.show(ctx, cty)}",
                    t.motive.span,
                )
        C = ctx.eval(C2)
        refl_a = nbe.plam(lambda _: a)
        d2 = self.check(ctx, t.d, nbe.apply(nbe.apply(C, a), refl_a))
        b2 = self.check(ctx, t.b, A)
        b = ctx.eval(b2)
        p2 = self.check(ctx, t.p, nbe.path_type(A, a, b))
        out_ty = nbe.apply(nbe.apply(C, b), ctx.eval(p2))
        return cs.J(A2, a2, C2, d2, b2, p2, span=t.span), out_ty
