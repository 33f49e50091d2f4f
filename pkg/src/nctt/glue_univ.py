"""Homotopy isomorphisms, Glue, univalence and the derived J.

A homotopy isomorphism ``HIso T A`` is the nested pair

    (f : T -> A, s : A -> T, r : A -> T,
     hs : (b : A) -> Path A (f (s b)) b,
     hr : (a : T) -> Path T (r (f a)) a)

Two constructions below need more than the raw five components:

* the contraction of the fibers of ``f`` (used when filling Glue lines), and
* the strong extension of a partial HIso along a cofibration.

Both go through a corrected counit ``kappa b : Path A (f (r b)) b`` together
with a square relating ``kappa (f t)`` to ``ap f (hr t)``.  Everything is
built from homogeneous compositions and min/max connections; no path reversal
is used.
"""

from __future__ import annotations

import typing

from nctt import core_syntax as cs
from nctt import interval_cof as ic
from nctt import kan, nbe
from nctt.interval_cof import ONE, ZERO, Interval
from nctt.nbe import (
    FunClo,
    Value,
    VPair,
    VPathP,
    VPi,
    VSigma,
    apply,
    const_clo,
    lam,
    papply,
    plam,
    vfst,
    vsnd,
)

# ---------------------------------------------------------------------------
# HIso records


def mk_hiso(f: Value, s: Value, r: Value, hs: Value, hr: Value) -> Value:
    return VPair(f, VPair(s, VPair(r, VPair(hs, hr))))


def hiso_parts(e: Value) -> tuple[Value, Value, Value, Value, Value]:
    rest = vsnd(e)
    rest2 = vsnd(rest)
    rest3 = vsnd(rest2)
    return vfst(e), vfst(rest), vfst(rest2), vfst(rest3), vsnd(rest3)


def hiso_type(t: Value, a: Value) -> Value:
    def after_f(f):
        def after_s(s):
            def after_r(_r):
                def after_hs(_hs):
                    return VPi("a", t, FunClo(lambda x: nbe.path_type(t, apply(_r, apply(f, x)), x)))

                hs_ty = VPi("b", a, FunClo(lambda b: nbe.path_type(a, apply(f, apply(s, b)), b)))
                return VSigma("hs", hs_ty, FunClo(after_hs))

            return VSigma("r", nbe.arrow(a, t), FunClo(after_r))

        return VSigma("s", nbe.arrow(a, t), FunClo(after_s))

    return VSigma("f", nbe.arrow(t, a), FunClo(after_f))


def id_hiso() -> Value:
    ident = lam(lambda x: x)
    refl = lam(lambda x: plam(lambda _: x))
    return mk_hiso(ident, ident, ident, refl, refl)


def hiso_type_term(t: cs.Term, a: cs.Term) -> cs.Term:
    """Core term for ``HIso t a`` (both arguments at the current depth)."""
    sh = cs.shift

    def path(ty, x, y):
        return cs.PathP("_", sh(ty, 1), x, y)

    # depth 0: t, a ; f at 1 ; s at 2 ; r at 3 ; hs at 4
    f_ty = cs.Pi("_", t, sh(a, 1))
    s_ty = cs.Pi("_", sh(a, 1), sh(t, 2))
    r_ty = cs.Pi("_", sh(a, 2), sh(t, 3))
    # under f, s, r and b: f = 3, s = 2, b = 0
    hs_ty = cs.Pi("b", sh(a, 3), path(sh(a, 4), cs.App(cs.Var(3), cs.App(cs.Var(2), cs.Var(0))), cs.Var(0)))
    # under f, s, r, hs and x: f = 4, r = 2, x = 0
    hr_ty = cs.Pi("a", sh(t, 4), path(sh(t, 5), cs.App(cs.Var(2), cs.App(cs.Var(4), cs.Var(0))), cs.Var(0)))
    return cs.Sigma("f", f_ty, cs.Sigma("s", s_ty, cs.Sigma("r", r_ty, cs.Sigma("hs", hs_ty, hr_ty))))


def id_hiso_term() -> cs.Term:
    ident = cs.Lam("x", cs.Var(0))
    refl = cs.Lam("x", cs.PLam("_", cs.Var(1)))
    return cs.Pair(ident, cs.Pair(ident, cs.Pair(ident, cs.Pair(refl, refl))))


def ua_term(a: cs.Term, b: cs.Term, e: cs.Term) -> cs.Term:
    """``<i> Glue b [i=0 -> (a, e), i=1 -> (b, idHIso)]``."""
    i = ic.IVar(0)
    sh = cs.shift
    return cs.PLam(
        "i",
        cs.Glue(
            sh(b, 1),
            (
                cs.GlueBranch(ic.EqZero(i), sh(a, 1), sh(e, 1)),
                cs.GlueBranch(ic.EqOne(i), sh(b, 1), id_hiso_term()),
            ),
        ),
    )


def pathres_term(p: cs.Term, r: ic.IntervalExpr) -> cs.Term:
    def up(x: ic.IntervalExpr) -> ic.IntervalExpr:
        return cs._map_interval(x, lambda k, _: ic.IVar(k + 1), 0)

    return cs.PLam("i", cs.PApp(cs.shift(p, 1), ic.IMin(ic.IVar(0), up(r))))


# ---------------------------------------------------------------------------
# universe case of filling


def transport_hiso(d: int, line: nbe.Clo) -> Value:
    """HIso from ``line`` at the target end to ``line`` at the source end."""

    def forward(a: Value) -> Value:
        return kan.comp(d, line, [], a)

    def backward(x: Value) -> Value:
        return kan.comp(1 - d, line, [], x)

    def hs(a: Value) -> Value:
        def body(j: Interval) -> Value:
            tube = FunClo(lambda r: kan.fill(d, line, [], a, r))
            return kan.comp(1 - d, line, [(ic.eq1(j), tube)], forward(a))

        return plam(body, "j")

    def hr(x: Value) -> Value:
        def body(j: Interval) -> Value:
            tube = FunClo(lambda r: kan.fill(1 - d, line, [], x, r))
            return kan.comp(d, line, [(ic.eq1(j), tube)], backward(x))

        return plam(body, "j")

    return mk_hiso(lam(backward), lam(forward), lam(forward), lam(hs), lam(hr))


# ---------------------------------------------------------------------------
# coherence data of an HIso


def _hcomp(a: Value, tubes: list, base: Value, d: int = 0) -> Value:
    """Composition in a constant type."""
    return kan.comp(d, const_clo(a), [(c, FunClo(u)) for c, u in tubes], base)


def _hfill(a: Value, tubes: list, base: Value, m: Interval, d: int = 0) -> Value:
    return kan.fill(d, const_clo(a), [(c, FunClo(u)) for c, u in tubes], base, m)


class Coherence:
    """The counit and square derived from an HIso ``e : HIso T A``."""

    def __init__(self, t: Value, a: Value, e: Value):
        self.t, self.a = t, a
        self.f, self.s, self.r, self.hs, self.hr = hiso_parts(e)

    def ap_f(self, x: Value) -> Value:
        return apply(self.f, x)

    def ap_r(self, x: Value) -> Value:
        return apply(self.r, x)

    def eps0(self, b: Value) -> Value:
        """A path ``f (r b) = b`` built from both homotopies."""
        f, r, s = self.f, self.r, self.s
        hsb = apply(self.hs, b)
        sb = apply(s, b)

        def body(k: Interval) -> Value:
            return _hcomp(
                self.a,
                [
                    (ic.eq0(k), lambda m: apply(f, apply(r, papply(hsb, m)))),
                    (ic.eq1(k), lambda m: papply(hsb, m)),
                ],
                apply(f, papply(apply(self.hr, sb), k)),
            )

        return plam(body, "k")

    def _k_tubes(self, b: Value, k: Interval) -> tuple[list, Value]:
        frb = apply(self.f, apply(self.r, b))
        e_frb, e_b = self.eps0(frb), self.eps0(b)
        tubes = [
            (ic.eq0(k), lambda m: papply(e_frb, m)),
            (ic.eq1(k), lambda m: papply(e_b, m)),
        ]
        base = apply(self.f, papply(apply(self.hr, apply(self.r, b)), k))
        return tubes, base

    def kappa(self, b: Value) -> Value:
        """The corrected counit ``f (r b) = b``."""

        def body(k: Interval) -> Value:
            tubes, base = self._k_tubes(b, k)
            return _hcomp(self.a, tubes, base)

        return plam(body, "k")

    def kfill(self, b: Value, k: Interval, m: Interval) -> Value:
        tubes, base = self._k_tubes(b, k)
        return _hfill(self.a, tubes, base, m)

    def square(self, t: Value, j: Interval, k: Interval) -> Value:
        """Square with ``kappa (f t)`` at j=0, ``f (hr t @ j)`` at k=0, and
        the constant ``f t`` on the other two sides."""
        f, hr = self.f, self.hr
        ft = apply(f, t)
        hrt = apply(hr, t)
        e_ft = self.eps0(ft)

        def q(x: Interval) -> Value:
            return apply(f, papply(hrt, x))

        def corner(x: Interval, m: Interval) -> Value:
            return _hcomp(
                self.a,
                [
                    (ic.eq0(x), lambda n: papply(e_ft, m)),
                    (ic.eq0(m), lambda n: q(x.meet(n))),
                    (ic.eq1(m), lambda n: ft),
                ],
                papply(e_ft, m),
            )

        return _hcomp(
            self.a,
            [
                (ic.eq0(j), lambda m: self.kfill(ft, k, m)),
                (ic.eq0(k), lambda m: papply(self.eps0(q(j)), m)),
                (ic.eq1(k), lambda m: corner(j, m)),
                (ic.eq1(j), lambda m: corner(k, m)),
            ],
            apply(f, papply(apply(hr, papply(hrt, j)), k)),
        )

    def fiber_type(self, b: Value) -> Value:
        return VSigma("t", self.t, FunClo(lambda x: nbe.path_type(self.a, apply(self.f, x), b)))

    def center(self, b: Value) -> Value:
        return VPair(apply(self.r, b), self.kappa(b))

    def contr(self, b: Value, x: Value) -> Value:
        """Path in the fiber over b from the center to x."""
        t, p = vfst(x), vsnd(x)
        f, r, hr = self.f, self.r, self.hr
        hrt = apply(hr, t)

        def gamma_tubes(j: Interval) -> list:
            return [(ic.eq0(j), lambda m: apply(r, papply(p, m))), (ic.eq1(j), lambda m: t)]

        def gamma_fill(j: Interval, m: Interval) -> Value:
            return _hfill(self.t, gamma_tubes(j), papply(hrt, j), m)

        def body(j: Interval) -> Value:
            def side(k: Interval) -> Value:
                return _hcomp(
                    self.a,
                    [
                        (ic.eq0(j), lambda m: papply(self.kappa(papply(p, m)), k)),
                        (ic.eq1(j), lambda m: papply(p, k.meet(m))),
                        (ic.eq0(k), lambda m: apply(f, gamma_fill(j, m))),
                        (ic.eq1(k), lambda m: papply(p, m)),
                    ],
                    self.square(t, j, k),
                )

            return VPair(gamma_fill(j, ONE), plam(side, "k"))

        return plam(body, "j")


def extend_fiber(t: Value, a: Value, e: Value, b: Value, partial: list) -> Value:
    """Extend a partial element of the fiber of ``e`` over ``b`` to a total one.

    ``partial`` lists (cofibration, thunk) pairs.
    """
    co = Coherence(t, a, e)
    tubes = [(c, FunClo(lambda j, x=x: papply(co.contr(b, x()), j))) for c, x in partial]
    return kan.comp(0, const_clo(co.fiber_type(b)), tubes, co.center(b))


# ---------------------------------------------------------------------------
# strong extension


def hiso_extend(phi: ic.Cof, t: typing.Optional[Value], e: typing.Optional[Value], a: Value) -> Value:
    """Extend ``(t, e : HIso t a)`` given on ``phi`` to a total pair.

    The carrier is ``Glue a [phi -> (t, e)]``; every component of the new
    HIso restricts to the corresponding component of ``e`` on ``phi``.
    """
    if phi.is_bot():
        return VPair(a, id_hiso())
    assert t is not None and e is not None
    if phi.is_top():
        return VPair(t, e)
    co = Coherence(t, a, e)
    gsys = [(phi, t, e)]
    carrier = nbe.mk_glue(a, gsys)

    def fwd(g: Value) -> Value:
        return nbe.unglue(g, a, gsys)

    def hs_tube(b: Value):
        return [(phi, lambda j: papply(apply(co.hs, b), j))]

    def sec(b: Value) -> Value:
        return nbe.mk_glue_intro([(phi, apply(co.s, b))], _hcomp(a, hs_tube(b), b, d=1))

    def hs(b: Value) -> Value:
        return plam(lambda j: _hfill(a, hs_tube(b), b, j, d=1), "j")

    def kappa_tube(b: Value):
        return [(phi, lambda k: papply(co.kappa(b), k))]

    def ret(b: Value) -> Value:
        return nbe.mk_glue_intro([(phi, apply(co.r, b))], _hcomp(a, kappa_tube(b), b, d=1))

    def hr(g: Value) -> Value:
        b = fwd(g)

        def body(j: Interval) -> Value:
            beta = _hcomp(
                a,
                [
                    (phi, lambda k: co.square(g, j, k)),
                    (ic.eq0(j), lambda k: _hfill(a, kappa_tube(b), b, k, d=1)),
                    (ic.eq1(j), lambda k: b),
                ],
                b,
                d=1,
            )
            return nbe.mk_glue_intro([(phi, papply(apply(co.hr, g), j))], beta)

        return plam(body, "j")

    return VPair(carrier, mk_hiso(lam(fwd, "g"), lam(sec, "b"), lam(ret, "b"), lam(hs, "b"), lam(hr, "g")))


# ---------------------------------------------------------------------------
# identity types


def pathres(p: Value, r: Interval) -> Value:
    return plam(lambda i: papply(p, i.meet(r)))


def is_const(a_ty: Value, a: Value, p: Value) -> ic.Cof:
    # p is constant when (p @ 1, p) is (a, refl a) in the singleton type, where
    # both sides are well typed whatever the endpoint of p
    singl = VSigma("x", a_ty, FunClo(lambda x: nbe.path_type(a_ty, a, x)))
    return nbe.decide_termeq(VPair(papply(p, ONE), p), VPair(a, plam(lambda _: a)), singl)


def eval_j(a_ty: Value, a: Value, motive: Value, d: Value, b: Value, p: Value) -> Value:
    """J as a fill over the restricted path, with the constant-path tube."""
    line = FunClo(lambda j: apply(apply(motive, papply(p, j)), pathres(p, j)))
    return kan.comp(0, line, [(is_const(a_ty, a, p), const_clo(d))], d)
