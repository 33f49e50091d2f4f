"""Semantic domain, evaluation, quotation and conversion.

Interval variables in values are integers: context levels, or fresh names
drawn from a global counter by the kan engine.  Restricting a value to a face
is a substitution of intervals for names (``act``); smart constructors re-run,
so Glue types and glue terms collapse under a true branch, stuck fills
re-dispatch, and neutral eliminators re-evaluate.

Neutrals carry their type, which lets ``papply`` return the endpoints of a
stuck path and lets conversion compare spines at the right type.
"""

from __future__ import annotations

import dataclasses
import itertools
import typing

from nctt import core_syntax as cs
from nctt import interval_cof as ic
from nctt.interval_cof import ONE, ZERO, Cof, Interval


class KernelError(Exception):
    """An invariant of the kernel was violated (ill-typed input reached eval)."""


_fresh = itertools.count(1 << 30)


def fresh() -> int:
    return next(_fresh)


# depth used for term-equation atoms decided during evaluation
ATOM_DEPTH = 1 << 29

Sigma_ = typing.Dict[int, Interval]


class Fuel:
    """Optional evaluation budget (``--max-steps``)."""

    limit: typing.Optional[int] = None
    used = 0

    @classmethod
    def tick(cls) -> None:
        if cls.limit is not None:
            cls.used += 1
            if cls.used > cls.limit:
                raise KernelError(f"evaluation exceeded {cls.limit} steps")


# ---------------------------------------------------------------------------
# values


class Value:
    __slots__ = ()


@dataclasses.dataclass(eq=False)
class VU(Value):
    level: int


@dataclasses.dataclass(eq=False)
class VUnitT(Value):
    pass


@dataclasses.dataclass(eq=False)
class VStar(Value):
    pass


@dataclasses.dataclass(eq=False)
class VBoolT(Value):
    pass


@dataclasses.dataclass(eq=False)
class VTrue(Value):
    pass


@dataclasses.dataclass(eq=False)
class VFalse(Value):
    pass


U0, U1 = VU(0), VU(1)
UNIT, STAR, BOOL, TRUE, FALSE = VUnitT(), VStar(), VBoolT(), VTrue(), VFalse()


class Clo:
    """Something that can be instantiated with a value or an interval."""

    def inst(self, x) -> Value:
        raise NotImplementedError

    def act(self, sigma: Sigma_) -> "Clo":
        raise NotImplementedError


def compose(first: typing.Optional[Sigma_], then: Sigma_) -> Sigma_:
    if not first:
        return dict(then)
    out = {k: v.subst(then) for k, v in first.items()}
    for k, v in then.items():
        out.setdefault(k, v)
    return out


class TermClo(Clo):
    __slots__ = ("env", "body", "sigma", "_acted")

    def __init__(self, env: tuple, body: cs.Term, sigma: typing.Optional[Sigma_] = None):
        self.env = env
        self.body = body
        self.sigma = sigma
        self._acted = None

    def _env(self) -> tuple:
        if not self.sigma:
            return self.env
        if self._acted is None:
            self._acted = tuple(act_any(e, self.sigma) for e in self.env)
        return self._acted

    def inst(self, x) -> Value:
        return eval_term(self._env() + (x,), self.body)

    def act(self, sigma: Sigma_) -> Clo:
        if not sigma:
            return self
        return TermClo(self.env, self.body, compose(self.sigma, sigma))


class FunClo(Clo):
    """A kernel-built closure.  Pending substitutions are applied to results.

    Arguments never mention the substituted names (they come from the world
    after the substitution), so acting on the output alone is enough.
    """

    __slots__ = ("fn", "sigma", "memo")

    def __init__(self, fn: typing.Callable[[typing.Any], Value], sigma: typing.Optional[Sigma_] = None):
        self.fn = fn
        self.sigma = sigma
        self.memo: typing.Optional[dict] = None

    def inst(self, x) -> Value:
        # lines are instantiated at the same points over and over
        if isinstance(x, Interval):
            if self.memo is None:
                self.memo = {}
            hit = self.memo.get(x)
            if hit is None:
                hit = self.memo[x] = self._run(x)
            return hit
        return self._run(x)

    def _run(self, x) -> Value:
        v = self.fn(x)
        return act(v, self.sigma) if self.sigma else v

    def act(self, sigma: Sigma_) -> Clo:
        if not sigma:
            return self
        return FunClo(self.fn, compose(self.sigma, sigma))


class ConstClo(FunClo):
    """A closure ignoring its argument; remembers the value it returns."""

    __slots__ = ("value",)

    def __init__(self, value: Value):
        super().__init__(lambda _: value)
        self.value = value

    def inst(self, x) -> Value:
        return self.value

    def act(self, sigma: Sigma_) -> Clo:
        return ConstClo(act(self.value, sigma)) if sigma else self


def const_clo(v: Value) -> Clo:
    return ConstClo(v)


@dataclasses.dataclass(eq=False)
class VPi(Value):
    name: str
    dom: Value
    cod: Clo


@dataclasses.dataclass(eq=False)
class VLam(Value):
    name: str
    body: Clo


@dataclasses.dataclass(eq=False)
class VSigma(Value):
    name: str
    dom: Value
    cod: Clo


@dataclasses.dataclass(eq=False)
class VPair(Value):
    fst: Value
    snd: Value


@dataclasses.dataclass(eq=False)
class VPathP(Value):
    name: str
    line: Clo
    left: Value
    right: Value


@dataclasses.dataclass(eq=False)
class VPLam(Value):
    name: str
    body: Clo


@dataclasses.dataclass(eq=False)
class VGlue(Value):
    base: Value
    system: tuple  # of (Cof, T, hiso), no branch is true


@dataclasses.dataclass(eq=False)
class VGlueIntro(Value):
    system: tuple  # of (Cof, t)
    base: Value


@dataclasses.dataclass(eq=False)
class VNeu(Value):
    ne: "Neutral"
    ty: Value


class Neutral:
    __slots__ = ()


@dataclasses.dataclass(eq=False)
class NVar(Neutral):
    level: int


@dataclasses.dataclass(eq=False)
class NApp(Neutral):
    fn: VNeu
    arg: Value


@dataclasses.dataclass(eq=False)
class NFst(Neutral):
    p: VNeu


@dataclasses.dataclass(eq=False)
class NSnd(Neutral):
    p: VNeu


@dataclasses.dataclass(eq=False)
class NPApp(Neutral):
    p: VNeu
    r: Interval


@dataclasses.dataclass(eq=False)
class NBoolElim(Neutral):
    name: str
    motive: Clo
    tcase: Value
    fcase: Value
    scrut: VNeu


@dataclasses.dataclass(eq=False)
class NUnglue(Neutral):
    g: VNeu
    base: Value
    system: tuple


@dataclasses.dataclass(eq=False)
class NComp(Neutral):
    """A stuck filling problem, read back as a Fill at the target end."""

    direction: int
    line: Clo
    system: tuple  # of (Cof, Clo)
    base: Value


@dataclasses.dataclass(eq=False)
class NDefer(Neutral):
    """An eliminator applied to a value of the wrong shape.

    This only happens while a partial element is computed away from its
    cofibration (for instance a Glue element used at the glued type). The
    elimination is re-run after every substitution, so it computes as soon
    as the cofibration holds.
    """

    op: typing.Callable[..., Value]
    args: tuple


@dataclasses.dataclass(eq=False)
class VPending(Value):
    """The type of a deferred elimination."""


PENDING = VPending()


def defer(op: typing.Callable[..., Value], *args, ty: typing.Optional[Value] = None) -> VNeu:
    return VNeu(NDefer(op, args), PENDING if ty is None else ty)


def _deferrable(v: Value) -> bool:
    return isinstance(v, (VGlueIntro, VNeu))


def var(level: int, ty: Value) -> VNeu:
    return VNeu(NVar(level), ty)


# ---------------------------------------------------------------------------
# term-equation atoms


class VTermEq:
    """A value-level atom ``a ~ b : ty`` left undecided by conversion."""

    __slots__ = ("a", "b", "ty", "_key")

    def __init__(self, a: Value, b: Value, ty: Value):
        self.a, self.b, self.ty = a, b, ty
        self._key = None

    def key(self):
        # atoms from separate evaluations of the same equation must coincide,
        # so identity is the read-back of both sides
        if self._key is None:
            try:
                d = ATOM_DEPTH
                self._key = (quote_ty(d, self.ty), quote(d, self.a, self.ty), quote(d, self.b, self.ty))
            except KernelError:
                self._key = id(self)
        return self._key

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, VTermEq) and self.key() == other.key())

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"<atom {hash(self) & 0xFFFFFF:x}>"


def decide_termeq(a: Value, b: Value, ty: Value) -> Cof:
    if conv(ATOM_DEPTH, ty, a, b):
        return ic.TOP
    return ic.atom(VTermEq(a, b, ty))


def act_cof(c: Cof, sigma: Sigma_) -> Cof:
    if not sigma:
        return c
    if not c.atoms():
        return c.subst(sigma)

    def amap(x):
        if isinstance(x, VTermEq):
            return decide_termeq(act(x.a, sigma), act(x.b, sigma), act(x.ty, sigma))
        return ic.atom(x)

    return c.subst(sigma, amap)


# ---------------------------------------------------------------------------
# face action


def act_any(x, sigma: Sigma_):
    if isinstance(x, Interval):
        return x.subst(sigma)
    return act(x, sigma)


def _act_arg(x, sigma: Sigma_):
    match x:
        case str():
            return x
        case Interval():
            return x.subst(sigma)
        case Cof():
            return act_cof(x, sigma)
        case Clo():
            return x.act(sigma)
        case tuple():
            return tuple(_act_arg(y, sigma) for y in x)
    return act(x, sigma)


def act(v: Value, sigma: typing.Optional[Sigma_]) -> Value:
    if not sigma:
        return v
    match v:
        case VU() | VUnitT() | VStar() | VBoolT() | VTrue() | VFalse():
            return v
        case VPi(n, a, b):
            return VPi(n, act(a, sigma), b.act(sigma))
        case VSigma(n, a, b):
            return VSigma(n, act(a, sigma), b.act(sigma))
        case VLam(n, b):
            return VLam(n, b.act(sigma))
        case VPair(a, b):
            return VPair(act(a, sigma), act(b, sigma))
        case VPathP(n, line, a, b):
            return VPathP(n, line.act(sigma), act(a, sigma), act(b, sigma))
        case VPLam(n, b):
            return VPLam(n, b.act(sigma))
        case VGlue(base, sys):
            return mk_glue(act(base, sigma), [(act_cof(c, sigma), act(t, sigma), act(e, sigma)) for c, t, e in sys])
        case VGlueIntro(sys, base):
            return mk_glue_intro([(act_cof(c, sigma), act(t, sigma)) for c, t in sys], act(base, sigma))
        case VNeu(ne, ty):
            # neutrals are shared widely and acting re-runs eliminators, so
            # remember the result per substitution
            key = frozenset(sigma.items())
            cache = v.__dict__.setdefault("_acts", {})
            out = cache.get(key)
            if out is None:
                out = cache[key] = _act_ne(ne, ty, sigma)
            return out
        case VPending():
            return v
    raise KernelError(f"act: unexpected {v!r}")


def _act_ne(ne: Neutral, ty: Value, sigma: Sigma_) -> Value:
    match ne:
        case NVar():
            return VNeu(ne, act(ty, sigma))
        case NApp(f, a):
            return apply(act(f, sigma), act(a, sigma))
        case NFst(p):
            return vfst(act(p, sigma))
        case NSnd(p):
            return vsnd(act(p, sigma))
        case NPApp(p, r):
            return papply(act(p, sigma), r.subst(sigma))
        case NBoolElim(n, m, t, f, s):
            return bool_elim(n, m.act(sigma), act(t, sigma), act(f, sigma), act(s, sigma))
        case NUnglue(g, base, sys):
            return unglue(act(g, sigma), act(base, sigma), [(act_cof(c, sigma), act(t, sigma), act(e, sigma)) for c, t, e in sys])
        case NComp(d, line, sys, a0):
            from nctt import kan

            return kan.comp(d, line.act(sigma), [(act_cof(c, sigma), u.act(sigma)) for c, u in sys], act(a0, sigma))
        case NDefer(op, args):
            return op(*(_act_arg(a, sigma) for a in args))
    raise KernelError(f"act: unexpected neutral {ne!r}")


# ---------------------------------------------------------------------------
# eliminators and smart constructors


def apply(f: Value, a: Value) -> Value:
    match f:
        case VLam(_, body):
            return body.inst(a)
        case VNeu(_, VPi(_, _, cod)):
            return VNeu(NApp(f, a), cod.inst(a))
    if _deferrable(f):
        return defer(apply, f, a)
    raise KernelError(f"apply: not a function: {f!r}")


def vfst(p: Value) -> Value:
    match p:
        case VPair(a, _):
            return a
        case VNeu(_, VSigma(_, dom, _)):
            return VNeu(NFst(p), dom)
    if _deferrable(p):
        return defer(vfst, p)
    raise KernelError(f"fst: not a pair: {p!r}")


def vsnd(p: Value) -> Value:
    match p:
        case VPair(_, b):
            return b
        case VNeu(_, VSigma(_, _, cod)):
            return VNeu(NSnd(p), cod.inst(vfst(p)))
    if _deferrable(p):
        return defer(vsnd, p)
    raise KernelError(f"snd: not a pair: {p!r}")


def papply(p: Value, r: Interval) -> Value:
    match p:
        case VPLam(_, body):
            return body.inst(r)
        case VNeu(_, VPathP(_, line, left, right)):
            if r.is_zero():
                return left
            if r.is_one():
                return right
            return VNeu(NPApp(p, r), line.inst(r))
    if _deferrable(p):
        return defer(papply, p, r)
    raise KernelError(f"papply: not a path: {p!r}")


def bool_elim(name: str, motive: Clo, t: Value, f: Value, s: Value) -> Value:
    match s:
        case VTrue():
            return t
        case VFalse():
            return f
        case VNeu():
            return VNeu(NBoolElim(name, motive, t, f, s), motive.inst(s))
        case VGlueIntro():
            return defer(bool_elim, name, motive, t, f, s, ty=motive.inst(s))
    raise KernelError(f"if: not a boolean: {s!r}")


def _live(sys):
    return [b for b in sys if not b[0].is_bot()]


def mk_glue(base: Value, sys) -> Value:
    sys = _live(sys)
    for c, t, _ in sys:
        if c.is_top():
            return t
    if not sys:
        return base
    return VGlue(base, tuple(sys))


def mk_glue_intro(sys, base: Value) -> Value:
    sys = _live(sys)
    for c, t in sys:
        if c.is_top():
            return t
    if not sys:
        return base
    return VGlueIntro(tuple(sys), base)


def hiso_fwd(e: Value) -> Value:
    return vfst(e)


def unglue(g: Value, base: Value, sys) -> Value:
    sys = _live(sys)
    for c, _, e in sys:
        if c.is_top():
            return apply(hiso_fwd(e), g)
    if not sys:
        return g
    match g:
        case VGlueIntro(_, b):
            return b
        case VNeu():
            return VNeu(NUnglue(g, base, tuple(sys)), base)
    if isinstance(g, (VLam, VPair, VPLam, VTrue, VFalse, VStar)):
        return defer(unglue, g, base, tuple(sys), ty=base)
    raise KernelError(f"unglue: not a glue element: {g!r}")


def path_type(a: Value, l: Value, r: Value) -> VPathP:
    return VPathP("_", const_clo(a), l, r)


def lam(fn: typing.Callable[[Value], Value], name: str = "x") -> VLam:
    return VLam(name, FunClo(fn))


def plam(fn: typing.Callable[[Interval], Value], name: str = "i") -> VPLam:
    return VPLam(name, FunClo(fn))


def arrow(a: Value, b: Value) -> VPi:
    return VPi("_", a, const_clo(b))


# ---------------------------------------------------------------------------
# evaluation


def eval_interval(env: tuple, r: ic.IntervalExpr) -> Interval:
    def lookup(k: int) -> Interval:
        x = env[len(env) - 1 - k]
        if not isinstance(x, Interval):
            raise KernelError("term variable used as an interval")
        return x

    return ic.normalize_interval(r, lookup)


def eval_cof(env: tuple, c: ic.CofExpr) -> Cof:
    def atom_fn(a):
        if isinstance(a, cs.TermEq):
            return decide_termeq(eval_term(env, a.a), eval_term(env, a.b), eval_term(env, a.ty))
        return ic.atom(a)

    return ic.normalize_cof(c, lambda k: eval_interval(env, ic.IVar(k)), atom_fn)


def eval_term(env: tuple, t: cs.Term) -> Value:
    Fuel.tick()
    match t:
        case cs.Var(k):
            x = env[len(env) - 1 - k]
            if isinstance(x, Interval):
                raise KernelError("interval variable used as a term")
            return x
        case cs.Ref(name, defn):
            if defn is None:
                raise KernelError(f"unresolved reference {name}")
            return defn.value
        case cs.U(level):
            return U0 if level == 0 else U1
        case cs.UnitT():
            return UNIT
        case cs.Star():
            return STAR
        case cs.BoolT():
            return BOOL
        case cs.TrueT():
            return TRUE
        case cs.FalseT():
            return FALSE
        case cs.BoolElim(n, m, a, b, s):
            return bool_elim(n, TermClo(env, m), eval_term(env, a), eval_term(env, b), eval_term(env, s))
        case cs.Pi(n, a, b):
            return VPi(n, eval_term(env, a), TermClo(env, b))
        case cs.Lam(n, b):
            return VLam(n, TermClo(env, b))
        case cs.App(f, a):
            return apply(eval_term(env, f), eval_term(env, a))
        case cs.Sigma(n, a, b):
            return VSigma(n, eval_term(env, a), TermClo(env, b))
        case cs.Pair(a, b):
            return VPair(eval_term(env, a), eval_term(env, b))
        case cs.Fst(a):
            return vfst(eval_term(env, a))
        case cs.Snd(a):
            return vsnd(eval_term(env, a))
        case cs.PathP(n, line, a, b):
            return VPathP(n, TermClo(env, line), eval_term(env, a), eval_term(env, b))
        case cs.PLam(n, b):
            return VPLam(n, TermClo(env, b))
        case cs.PApp(p, r):
            return papply(eval_term(env, p), eval_interval(env, r))
        case cs.Fill(d, _, line, sys, base, at):
            from nctt import kan

            return kan.fill(
                d,
                TermClo(env, line),
                [(eval_cof(env, b.cof), TermClo(env, b.body)) for b in sys],
                eval_term(env, base),
                eval_interval(env, at),
            )
        case cs.Glue(base, sys):
            return mk_glue(eval_term(env, base), eval_glue_system(env, sys))
        case cs.GlueIntro(sys, base):
            live = []
            for b in sys:
                c = eval_cof(env, b.cof)
                if not c.is_bot():
                    live.append((c, eval_term(env, b.body)))
            return mk_glue_intro(live, eval_term(env, base))
        case cs.Unglue(a, base, sys):
            if base is None or sys is None:
                raise KernelError("unglue without its type annotation")
            return unglue(eval_term(env, a), eval_term(env, base), eval_glue_system(env, sys))
        case cs.J(A, a, C, d, b, p):
            from nctt import glue_univ

            return glue_univ.eval_j(*(eval_term(env, x) for x in (A, a, C, d, b, p)))
        case cs.HisoExt(c, ty, e, base):
            from nctt import glue_univ

            phi = eval_cof(env, c)
            if phi.is_bot():
                return glue_univ.hiso_extend(phi, None, None, eval_term(env, base))
            return glue_univ.hiso_extend(phi, eval_term(env, ty), eval_term(env, e), eval_term(env, base))
        case cs.Ann(a, _):
            return eval_term(env, a)
    raise KernelError(f"eval: unexpected term {t!r}")


def eval_glue_system(env: tuple, sys) -> list:
    out = []
    for b in sys:
        c = eval_cof(env, b.cof)
        if not c.is_bot():
            out.append((c, eval_term(env, b.ty), eval_term(env, b.hiso)))
    return out


# ---------------------------------------------------------------------------
# quotation


def quote_interval(depth: int, r: Interval) -> ic.IntervalExpr:
    for v in r.vars():
        if v >= depth:
            raise KernelError(f"interval name {v} escaped its scope")
    return ic.interval_expr(Interval(frozenset(frozenset(depth - 1 - v for v in m) for m in r.meets)))


def quote_cof(depth: int, c: Cof) -> ic.CofExpr:
    out: typing.Optional[ic.CofExpr] = None
    for f in sorted(c.faces, key=lambda f: sorted(f.lits)):
        term: typing.Optional[ic.CofExpr] = None
        lits: list[ic.CofExpr] = []
        for v, b in sorted(f.lits):
            if v >= depth:
                raise KernelError(f"interval name {v} escaped its scope")
            x = ic.IVar(depth - 1 - v)
            lits.append(ic.EqOne(x) if b else ic.EqZero(x))
        for a in f.atoms:
            lits.append(ic.CAtom(cs.TermEq(quote(depth, a.a, a.ty), quote(depth, a.b, a.ty), quote_ty(depth, a.ty))))
        for lit in lits:
            term = lit if term is None else ic.CAnd(term, lit)
        term = ic.CTop() if term is None else term
        out = term if out is None else ic.COr(out, term)
    return ic.CBot() if out is None else out


def quote_ty(depth: int, a: Value) -> cs.Term:
    match a:
        case VU(level):
            return cs.U(level)
        case VUnitT():
            return cs.UnitT()
        case VBoolT():
            return cs.BoolT()
        case VPi(n, dom, cod):
            return cs.Pi(n, quote_ty(depth, dom), quote_ty(depth + 1, cod.inst(var(depth, dom))))
        case VSigma(n, dom, cod):
            return cs.Sigma(n, quote_ty(depth, dom), quote_ty(depth + 1, cod.inst(var(depth, dom))))
        case VPathP(n, line, l, r):
            return cs.PathP(
                n,
                quote_ty(depth + 1, line.inst(Interval.var(depth))),
                quote(depth, l, line.inst(ZERO)),
                quote(depth, r, line.inst(ONE)),
            )
        case VGlue(base, sys):
            from nctt import glue_univ

            return cs.Glue(
                quote_ty(depth, base),
                tuple(
                    cs.GlueBranch(quote_cof(depth, c), quote_ty(depth, t), quote(depth, e, glue_univ.hiso_type(t, base)))
                    for c, t, e in sys
                ),
            )
        case VNeu(ne, _):
            return quote_ne(depth, ne)
    raise KernelError(f"quote: not a type: {a!r}")


def quote(depth: int, v: Value, ty: Value) -> cs.Term:
    """Type-directed read-back (eta-long at function, pair and path types)."""
    match ty:
        case VPi(n, dom, cod):
            x = var(depth, dom)
            name = v.name if isinstance(v, VLam) else n
            return cs.Lam(name, quote(depth + 1, apply(v, x), cod.inst(x)))
        case VSigma(_, _, cod):
            a = vfst(v)
            return cs.Pair(quote(depth, a, ty.dom), quote(depth, vsnd(v), cod.inst(a)))
        case VPathP(n, line, _, _):
            i = Interval.var(depth)
            name = v.name if isinstance(v, VPLam) else n
            return cs.PLam(name, quote(depth + 1, papply(v, i), line.inst(i)))
        case VUnitT():
            return cs.Star()
        case VU():
            return quote_ty(depth, v)
        case VGlue(base, sys):
            if isinstance(v, VGlueIntro):
                return cs.GlueIntro(
                    tuple(cs.Branch(quote_cof(depth, c), quote(depth, t, _branch_ty(sys, c))) for c, t in v.system),
                    quote(depth, v.base, base),
                )
    match v:
        case VTrue():
            return cs.TrueT()
        case VFalse():
            return cs.FalseT()
        case VStar():
            return cs.Star()
        case VNeu(ne, _):
            return quote_ne(depth, ne)
        case VLam() | VPair() | VPLam() | VGlueIntro():
            # the type did not reveal the shape (e.g. a neutral type); fall back
            return quote_untyped(depth, v)
    return quote_ty(depth, v)


def _branch_ty(sys, c: Cof) -> Value:
    for c2, t, _ in sys:
        if ic.entails(c, c2):
            return t
    return sys[0][1]


def quote_untyped(depth: int, v: Value) -> cs.Term:
    match v:
        case VLam(n, b):
            return cs.Lam(n, quote_untyped(depth + 1, b.inst(var(depth, UNIT))))
        case VPair(a, b):
            return cs.Pair(quote_untyped(depth, a), quote_untyped(depth, b))
        case VPLam(n, b):
            return cs.PLam(n, quote_untyped(depth + 1, b.inst(Interval.var(depth))))
        case VGlueIntro(sys, base):
            return cs.GlueIntro(
                tuple(cs.Branch(quote_cof(depth, c), quote_untyped(depth, t)) for c, t in sys),
                quote_untyped(depth, base),
            )
        case VNeu(ne, _):
            return quote_ne(depth, ne)
        case VTrue():
            return cs.TrueT()
        case VFalse():
            return cs.FalseT()
        case VStar():
            return cs.Star()
    return quote_ty(depth, v)


def quote_ne(depth: int, ne: Neutral) -> cs.Term:
    match ne:
        case NVar(level):
            if level >= depth:
                raise KernelError(f"variable {level} escaped its scope")
            return cs.Var(depth - 1 - level)
        case NApp(f, a):
            dom = f.ty.dom if isinstance(f.ty, VPi) else UNIT
            return cs.App(quote_ne(depth, f.ne), quote(depth, a, dom))
        case NFst(p):
            return cs.Fst(quote_ne(depth, p.ne))
        case NSnd(p):
            return cs.Snd(quote_ne(depth, p.ne))
        case NPApp(p, r):
            return cs.PApp(quote_ne(depth, p.ne), quote_interval(depth, r))
        case NBoolElim(n, m, t, f, s):
            return cs.BoolElim(
                n,
                quote_ty(depth + 1, m.inst(var(depth, BOOL))),
                quote(depth, t, m.inst(TRUE)),
                quote(depth, f, m.inst(FALSE)),
                quote_ne(depth, s.ne),
            )
        case NUnglue(g, base, sys):
            from nctt import glue_univ

            return cs.Unglue(
                quote_ne(depth, g.ne),
                quote_ty(depth, base),
                tuple(
                    cs.GlueBranch(quote_cof(depth, c), quote_ty(depth, t), quote(depth, e, glue_univ.hiso_type(t, base)))
                    for c, t, e in sys
                ),
            )
        case NComp(d, line, sys, a0):
            i = Interval.var(depth)
            src, tgt = (ZERO, ONE) if d == 0 else (ONE, ZERO)
            li = line.inst(i)
            return cs.Fill(
                d,
                "i",
                quote_ty(depth + 1, li),
                tuple(b for c, u in sys for b in _quote_tube(depth, c, u, i, li)),
                quote(depth, a0, line.inst(src)),
                quote_interval(depth, tgt),
            )
    raise KernelError(f"quote: unexpected neutral {ne!r}")


def _quote_tube(depth: int, c: Cof, u: Clo, i: Interval, li: Value) -> list:
    try:
        return [cs.Branch(quote_cof(depth, c), quote(depth + 1, u.inst(i), li))]
    except KernelError:
        # the tube only makes sense under its cofibration: read it back per face
        out = []
        for face in c.faces:
            s = face_subst(face)
            fc = ic.Cof(frozenset([face]))
            out.append(cs.Branch(quote_cof(depth, fc), quote(depth + 1, act(u.inst(i), s), act(li, s))))
        return out


# ---------------------------------------------------------------------------
# conversion


def face_subst(face: ic.Face) -> Sigma_:
    return {v: (ONE if b else ZERO) for v, b in face.lits}


def conv(depth: int, ty: Value, v: Value, w: Value) -> bool:
    """Definitional equality at a type, with eta for Pi, Sigma, Path, Unit and Glue."""
    if v is w:
        return True
    match ty:
        case VPi(_, dom, cod):
            x = var(depth, dom)
            return conv(depth + 1, cod.inst(x), apply(v, x), apply(w, x))
        case VSigma(_, dom, cod):
            a = vfst(v)
            return conv(depth, dom, a, vfst(w)) and conv(depth, cod.inst(a), vsnd(v), vsnd(w))
        case VPathP(_, line, _, _):
            i = Interval.var(depth)
            return conv(depth + 1, line.inst(i), papply(v, i), papply(w, i))
        case VUnitT():
            return True
        case VBoolT():
            return conv_struct(depth, _bool_settle(depth, v), _bool_settle(depth, w))
        case VU():
            return conv_ty(depth, v, w)
        case VGlue(base, sys):
            if not conv(depth, base, unglue(v, base, sys), unglue(w, base, sys)):
                return False
            whole = ic.BOT
            for c, _, _ in sys:
                whole = whole.join(c)
            for face in whole.faces:
                if face.atoms:
                    if not conv_struct(depth, v, w):
                        return False
                    continue
                s = face_subst(face)
                if not conv(depth, act(ty, s), act(v, s), act(w, s)):
                    return False
            return True
    return conv_struct(depth, v, w)


def _bool_settle(depth: int, v: Value) -> Value:
    """A stuck composition in Bool whose tubes are all the base is the base."""
    while isinstance(v, VNeu) and isinstance(v.ne, NComp):
        d, line, sys, a0 = v.ne.direction, v.ne.line, v.ne.system, v.ne.base
        k = Interval.var(depth)
        if not isinstance(line.inst(k), VBoolT):
            break
        for c, u in sys:
            for face in c.faces:
                s = face_subst(face)
                if not conv(depth + 1, BOOL, act(u.inst(k), s), act(a0, s)):
                    return v
        v = a0
    return v


def conv_struct(depth: int, v: Value, w: Value) -> bool:
    if v is w:
        return True
    match v, w:
        case (VTrue(), VTrue()) | (VFalse(), VFalse()) | (VStar(), VStar()):
            return True
        case VNeu(n1, _), VNeu(n2, _):
            return conv_ne(depth, n1, n2)
        case VGlueIntro(s1, b1), VGlueIntro(s2, b2):
            if not conv_struct(depth, b1, b2):
                return False
            return _systems_agree(list(s1), list(s2), lambda s, x, y: conv_struct(depth, act(x, s), act(y, s)))
        case VLam(_, b1), VLam(_, b2):
            x = var(depth, UNIT)
            return conv_struct(depth + 1, b1.inst(x), b2.inst(x))
        case VPLam(_, b1), VPLam(_, b2):
            i = Interval.var(depth)
            return conv_struct(depth + 1, b1.inst(i), b2.inst(i))
        case VPair(a1, b1), VPair(a2, b2):
            return conv_struct(depth, a1, a2) and conv_struct(depth, b1, b2)
    return conv_ty(depth, v, w)


def _branchwise(s1: list, s2: list, same) -> bool:
    """Every branch of s1 has a branch of s2 on the same cofibration agreeing with it."""
    for c1, x in s1:
        if not any(c1 == c2 and all(same(face_subst(f), x, y) for f in c1.faces) for c2, y in s2):
            return False
    return True


def _systems_agree(s1: list, s2: list, same: typing.Callable[[Sigma_, typing.Any, typing.Any], bool]) -> bool:
    """Two systems are equal when they cover the same cofibration and agree
    wherever both are defined; branch order and splitting do not matter."""
    whole1, whole2 = ic.BOT, ic.BOT
    for c, _ in s1:
        whole1 = whole1.join(c)
    for c, _ in s2:
        whole2 = whole2.join(c)
    if not ic.equivalent(whole1, whole2):
        return False
    if _branchwise(s1, s2, same) and _branchwise(s2, s1, lambda s, y, x: same(s, x, y)):
        return True
    for c1, x in s1:
        for c2, y in s2:
            for f in c1.meet(c2).faces:
                if not same(face_subst(f), x, y):
                    return False
    return True


def conv_ty(depth: int, a: Value, b: Value) -> bool:
    if a is b:
        return True
    match a, b:
        case VU(l1), VU(l2):
            return l1 == l2
        case (VUnitT(), VUnitT()) | (VBoolT(), VBoolT()):
            return True
        case (VPi(_, d1, c1), VPi(_, d2, c2)) | (VSigma(_, d1, c1), VSigma(_, d2, c2)):
            if type(a) is not type(b) or not conv_ty(depth, d1, d2):
                return False
            x = var(depth, d1)
            return conv_ty(depth + 1, c1.inst(x), c2.inst(x))
        case VPathP(_, l1, a1, b1), VPathP(_, l2, a2, b2):
            i = Interval.var(depth)
            if not conv_ty(depth + 1, l1.inst(i), l2.inst(i)):
                return False
            return conv(depth, l1.inst(ZERO), a1, a2) and conv(depth, l1.inst(ONE), b1, b2)
        case VGlue(base1, s1), VGlue(base2, s2):
            if not conv_ty(depth, base1, base2):
                return False
            from nctt import glue_univ

            def same(s, x, y):
                ta, tb, ba = act(x[0], s), act(y[0], s), act(base1, s)
                return conv_ty(depth, ta, tb) and conv(depth, glue_univ.hiso_type(ta, ba), act(x[1], s), act(y[1], s))

            return _systems_agree([(c, (t, e)) for c, t, e in s1], [(c, (t, e)) for c, t, e in s2], same)
        case VNeu(n1, _), VNeu(n2, _):
            return conv_ne(depth, n1, n2)
    return False


def conv_ne(depth: int, n1: Neutral, n2: Neutral) -> bool:
    match n1, n2:
        case NVar(l1), NVar(l2):
            return l1 == l2
        case NApp(f1, a1), NApp(f2, a2):
            return conv_ne(depth, f1.ne, f2.ne) and conv(depth, f1.ty.dom, a1, a2)
        case (NFst(p1), NFst(p2)) | (NSnd(p1), NSnd(p2)):
            return conv_ne(depth, p1.ne, p2.ne)
        case NPApp(p1, r1), NPApp(p2, r2):
            return r1 == r2 and conv_ne(depth, p1.ne, p2.ne)
        case NBoolElim(_, m1, t1, f1, s1), NBoolElim(_, m2, t2, f2, s2):
            x = var(depth, BOOL)
            return (
                conv_ne(depth, s1.ne, s2.ne)
                and conv_ty(depth + 1, m1.inst(x), m2.inst(x))
                and conv(depth, m1.inst(TRUE), t1, t2)
                and conv(depth, m1.inst(FALSE), f1, f2)
            )
        case NUnglue(g1, _, _), NUnglue(g2, _, _):
            return conv_ne(depth, g1.ne, g2.ne)
        case NComp(d1, l1, s1, a1), NComp(d2, l2, s2, a2):
            if d1 != d2:
                return False
            i = Interval.var(depth)
            li = l1.inst(i)
            if not conv_ty(depth + 1, li, l2.inst(i)):
                return False
            src = ZERO if d1 == 0 else ONE
            if not conv(depth, l1.inst(src), a1, a2):
                return False

            def same_tube(s, u1, u2):
                return conv(depth + 1, act(li, s), act(u1.inst(i), s), act(u2.inst(i), s))

            return _systems_agree(list(s1), list(s2), same_tube)
    return False
