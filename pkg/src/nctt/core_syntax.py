"""Core terms.

Variables are de Bruijn indices.  Term variables and interval variables share
one index space: a PLam, PathP line or Fill line binds an interval variable,
every other binder binds a term variable.  Cofibrations are not binders; a
branch body is simply checked under an extra assumption.
"""

from __future__ import annotations

import dataclasses
import typing

from nctt import interval_cof as ic


def _span():
    return dataclasses.field(default=None, kw_only=True, compare=False, repr=False)


@dataclasses.dataclass(frozen=True)
class Term:
    pass


@dataclasses.dataclass(frozen=True)
class Var(Term):
    index: int
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Ref(Term):
    """A top-level definition, unfolded by evaluation."""

    name: str
    defn: typing.Any = dataclasses.field(default=None, compare=False, repr=False)
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class U(Term):
    level: int
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class UnitT(Term):
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Star(Term):
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class BoolT(Term):
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class TrueT(Term):
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class FalseT(Term):
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class BoolElim(Term):
    name: str
    motive: Term  # binds the scrutinee
    tcase: Term
    fcase: Term
    scrut: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Pi(Term):
    name: str
    dom: Term
    cod: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Lam(Term):
    name: str
    body: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Sigma(Term):
    name: str
    dom: Term
    cod: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Fst(Term):
    t: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Snd(Term):
    t: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class PathP(Term):
    name: str
    line: Term  # binds an interval variable
    left: Term
    right: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class PLam(Term):
    name: str
    body: Term  # binds an interval variable
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class PApp(Term):
    p: Term
    r: ic.IntervalExpr
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Branch:
    cof: ic.CofExpr
    body: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class GlueBranch:
    cof: ic.CofExpr
    ty: Term
    hiso: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Fill(Term):
    """Filling along ``line`` from ``base`` at the source end to ``at``.

    Direction 0 runs from 0 to 1 and is the only one the surface language
    produces.  Direction 1 runs from 1 to 0; the kernel uses it internally
    (backwards transport of arguments, inverse maps of the universe case) and
    quotation may expose it.  Tube bodies bind the filling variable.
    """

    direction: int
    name: str
    line: Term
    system: tuple  # of Branch
    base: Term
    at: ic.IntervalExpr
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Glue(Term):
    base: Term
    system: tuple  # of GlueBranch
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class GlueIntro(Term):
    system: tuple  # of Branch, bodies bind nothing
    base: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Unglue(Term):
    """``base`` and ``system`` describe the Glue type; the checker fills them in."""

    t: Term
    base: typing.Optional[Term] = None
    system: typing.Optional[tuple] = None
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class J(Term):
    ty: Term
    a: Term
    motive: Term
    d: Term
    b: Term
    p: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class HisoExt(Term):
    """Strong extension of a partial (type, hiso) along a cofibration."""

    cof: ic.CofExpr
    ty: Term
    hiso: Term
    base: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class Ann(Term):
    t: Term
    ty: Term
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class TermEq:
    """Atom payload of the cofibration ``a ~ b : ty``."""

    a: Term
    b: Term
    ty: Term


# ---------------------------------------------------------------------------
# generic traversal


IVarFn = typing.Callable[[int, int], ic.IntervalExpr]  # (index, depth) -> expr
VarFn = typing.Callable[[int, int], Term]


def _map_interval(r: ic.IntervalExpr, fi: IVarFn, depth: int) -> ic.IntervalExpr:
    match r:
        case ic.IVar(k):
            return fi(k, depth)
        case ic.IMin(a, b):
            return ic.IMin(_map_interval(a, fi, depth), _map_interval(b, fi, depth))
        case ic.IMax(a, b):
            return ic.IMax(_map_interval(a, fi, depth), _map_interval(b, fi, depth))
    return r


def _map_cof(c: ic.CofExpr, fv: VarFn, fi: IVarFn, depth: int) -> ic.CofExpr:
    match c:
        case ic.EqZero(r):
            return ic.EqZero(_map_interval(r, fi, depth))
        case ic.EqOne(r):
            return ic.EqOne(_map_interval(r, fi, depth))
        case ic.CAnd(a, b):
            return ic.CAnd(_map_cof(a, fv, fi, depth), _map_cof(b, fv, fi, depth))
        case ic.COr(a, b):
            return ic.COr(_map_cof(a, fv, fi, depth), _map_cof(b, fv, fi, depth))
        case ic.CAtom(TermEq(a, b, ty)):
            return ic.CAtom(TermEq(_map(a, fv, fi, depth), _map(b, fv, fi, depth), _map(ty, fv, fi, depth)))
    return c


def _map(t: Term, fv: VarFn, fi: IVarFn, d: int) -> Term:
    def go(u: Term, k: int = 0) -> Term:
        return _map(u, fv, fi, d + k)

    def cof(c):
        return _map_cof(c, fv, fi, d)

    match t:
        case Var(k):
            return fv(k, d)
        case BoolElim(n, m, a, b, s):
            return BoolElim(n, go(m, 1), go(a), go(b), go(s), span=t.span)
        case Pi(n, a, b):
            return Pi(n, go(a), go(b, 1), span=t.span)
        case Lam(n, b):
            return Lam(n, go(b, 1), span=t.span)
        case App(f, a):
            return App(go(f), go(a), span=t.span)
        case Sigma(n, a, b):
            return Sigma(n, go(a), go(b, 1), span=t.span)
        case Pair(a, b):
            return Pair(go(a), go(b), span=t.span)
        case Fst(a):
            return Fst(go(a), span=t.span)
        case Snd(a):
            return Snd(go(a), span=t.span)
        case PathP(n, line, a, b):
            return PathP(n, go(line, 1), go(a), go(b), span=t.span)
        case PLam(n, b):
            return PLam(n, go(b, 1), span=t.span)
        case PApp(p, r):
            return PApp(go(p), _map_interval(r, fi, d), span=t.span)
        case Fill(dr, n, line, sys, base, at):
            return Fill(
                dr,
                n,
                go(line, 1),
                tuple(Branch(cof(b.cof), go(b.body, 1), span=b.span) for b in sys),
                go(base),
                _map_interval(at, fi, d),
                span=t.span,
            )
        case Glue(base, sys):
            return Glue(go(base), tuple(GlueBranch(cof(b.cof), go(b.ty), go(b.hiso), span=b.span) for b in sys), span=t.span)
        case GlueIntro(sys, base):
            return GlueIntro(tuple(Branch(cof(b.cof), go(b.body), span=b.span) for b in sys), go(base), span=t.span)
        case Unglue(a, base, sys):
            return Unglue(
                go(a),
                None if base is None else go(base),
                None if sys is None else tuple(GlueBranch(cof(b.cof), go(b.ty), go(b.hiso)) for b in sys),
                span=t.span,
            )
        case J(A, a, C, dd, b, p):
            return J(go(A), go(a), go(C), go(dd), go(b), go(p), span=t.span)
        case HisoExt(c, ty, e, base):
            return HisoExt(cof(c), go(ty), go(e), go(base), span=t.span)
        case Ann(a, ty):
            return Ann(go(a), go(ty), span=t.span)
    return t


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    if by == 0:
        return t

    def fv(k, d):
        return Var(k + by) if k >= cutoff + d else Var(k)

    def fi(k, d):
        return ic.IVar(k + by) if k >= cutoff + d else ic.IVar(k)

    return _map(t, fv, fi, 0)


def subst_term(t: Term, target: int, u: Term) -> Term:
    """Replace the term variable with index ``target`` by ``u`` and remove it."""

    def fv(k, d):
        if k == target + d:
            return shift(u, d)
        return Var(k - 1) if k > target + d else Var(k)

    def fi(k, d):
        if k == target + d:
            raise ValueError("term variable used as an interval")
        return ic.IVar(k - 1) if k > target + d else ic.IVar(k)

    return _map(t, fv, fi, 0)


def subst_interval(t: Term, target: int, r: ic.IntervalExpr) -> Term:
    """Replace the interval variable ``target`` by ``r`` and remove it.

    Embedded interval expressions and cofibrations are rebuilt from their
    normal forms, so e.g. ``i = 1`` under ``i := 1`` becomes ``TT``.
    """

    def shift_r(e: ic.IntervalExpr, d: int) -> ic.IntervalExpr:
        return _map_interval(e, lambda k, _: ic.IVar(k + d), 0)

    def fv(k, d):
        if k == target + d:
            raise ValueError("interval variable used as a term")
        return Var(k - 1) if k > target + d else Var(k)

    def fi(k, d):
        if k == target + d:
            return shift_r(r, d)
        return ic.IVar(k - 1) if k > target + d else ic.IVar(k)

    return normalize_embedded(_map(t, fv, fi, 0))


def normalize_embedded(t: Term) -> Term:
    """Put every embedded interval and cofibration into canonical form."""

    def fix_r(r):
        return ic.interval_expr(ic.normalize_interval(r))

    def fix_c(c):
        return _norm_cof(c)

    match t:
        case PApp(p, r):
            return PApp(normalize_embedded(p), fix_r(r), span=t.span)
        case Fill(dr, n, line, sys, base, at):
            return Fill(
                dr,
                n,
                normalize_embedded(line),
                tuple(Branch(fix_c(b.cof), normalize_embedded(b.body)) for b in sys),
                normalize_embedded(base),
                fix_r(at),
                span=t.span,
            )
    return _rebuild(t)


def _norm_cof(c: ic.CofExpr) -> ic.CofExpr:
    def atom_fn(a):
        if isinstance(a, TermEq):
            a = TermEq(normalize_embedded(a.a), normalize_embedded(a.b), normalize_embedded(a.ty))
        return ic.atom(a)

    return ic.cof_expr(ic.normalize_cof(c, atom_fn=atom_fn))


def _rebuild(t: Term) -> Term:
    # one level of normalization per node, children via normalize_embedded
    def go(u):
        return normalize_embedded(u)

    fix_c = _norm_cof

    match t:
        case BoolElim(n, m, a, b, s):
            return BoolElim(n, go(m), go(a), go(b), go(s), span=t.span)
        case Pi(n, a, b):
            return Pi(n, go(a), go(b), span=t.span)
        case Lam(n, b):
            return Lam(n, go(b), span=t.span)
        case App(f, a):
            return App(go(f), go(a), span=t.span)
        case Sigma(n, a, b):
            return Sigma(n, go(a), go(b), span=t.span)
        case Pair(a, b):
            return Pair(go(a), go(b), span=t.span)
        case Fst(a):
            return Fst(go(a), span=t.span)
        case Snd(a):
            return Snd(go(a), span=t.span)
        case PathP(n, line, a, b):
            return PathP(n, go(line), go(a), go(b), span=t.span)
        case PLam(n, b):
            return PLam(n, go(b), span=t.span)
        case Glue(base, sys):
            return Glue(go(base), tuple(GlueBranch(fix_c(b.cof), go(b.ty), go(b.hiso)) for b in sys), span=t.span)
        case GlueIntro(sys, base):
            return GlueIntro(tuple(Branch(fix_c(b.cof), go(b.body)) for b in sys), go(base), span=t.span)
        case Unglue(a, base, sys):
            return Unglue(
                go(a),
                None if base is None else go(base),
                None if sys is None else tuple(GlueBranch(fix_c(b.cof), go(b.ty), go(b.hiso)) for b in sys),
                span=t.span,
            )
        case J(A, a, C, d, b, p):
            return J(go(A), go(a), go(C), go(d), go(b), go(p), span=t.span)
        case HisoExt(c, ty, e, base):
            return HisoExt(fix_c(c), go(ty), go(e), go(base), span=t.span)
        case Ann(a, ty):
            return Ann(go(a), go(ty), span=t.span)
    return t


def free_indices(t: Term) -> set[int]:
    """Indices of free variables (term or interval)."""
    out: set[int] = set()

    def fv(k, d):
        if k >= d:
            out.add(k - d)
        return Var(k)

    def fi(k, d):
        if k >= d:
            out.add(k - d)
        return ic.IVar(k)

    _map(t, fv, fi, 0)
    return out


def well_scoped(t: Term, depth: int) -> bool:
    return all(k < depth for k in free_indices(t))
