"""The filling engine.

``comp(d, line, system, a0)`` solves an open box along ``line``: direction 0
runs from 0 to 1, direction 1 from 1 to 0.  ``fill`` is defined from it by
squeezing the line with a connection, so that filling at the source end is an
instance of the tube law and stays stable under face restriction.

Each type former has its own case; lines whose head is neutral leave a stuck
``NComp``.
"""

from __future__ import annotations

import typing

from nctt import interval_cof as ic
from nctt import nbe
from nctt.interval_cof import ONE, ZERO, Cof, Interval
from nctt.nbe import (
    BOOL,
    Clo,
    FunClo,
    NComp,
    Value,
    VBoolT,
    VGlue,
    VNeu,
    VPair,
    VPathP,
    VPi,
    VSigma,
    VU,
    VUnitT,
    act,
    act_cof,
    apply,
    papply,
    vfst,
    vsnd,
)

System = typing.List[typing.Tuple[Cof, Clo]]

# set by the CLI's --trace-fill; receives a short description of each case
trace: typing.Optional[typing.Callable[[str], None]] = None


def _trace(case: str, d: int) -> None:
    if trace is not None:
        trace(f"fill[{d}] {case}")


def ends(d: int) -> tuple[Interval, Interval]:
    return (ZERO, ONE) if d == 0 else (ONE, ZERO)


def at_source(d: int, r: Interval) -> Cof:
    return ic.eq0(r) if d == 0 else ic.eq1(r)


def fill(d: int, line: Clo, sys: System, a0: Value, r: Interval) -> Value:
    src, tgt = ends(d)
    if r == tgt:
        return comp(d, line, sys, a0)

    def squeeze(k: Interval) -> Interval:
        return r.meet(k) if d == 0 else r.join(k)

    line2 = FunClo(lambda k: line.inst(squeeze(k)))
    sys2: System = []
    for c, u in sys:
        sys2.append((c, FunClo(lambda k, u=u: u.inst(squeeze(k)))))
    sys2.append((at_source(d, r), nbe.const_clo(a0)))
    return comp(d, line2, sys2, a0)


def comp(d: int, line: Clo, sys: System, a0: Value) -> Value:
    nbe.Fuel.tick()
    src, tgt = ends(d)
    sys = [(c, u) for c, u in sys if not c.is_bot()]
    for c, u in sys:
        if c.is_top():
            _trace("tube", d)
            return u.inst(tgt)
    i = nbe.fresh()
    ai = line.inst(Interval.var(i))
    match ai:
        case VUnitT():
            _trace("Unit", d)
            return nbe.STAR
        case VBoolT():
            _trace("Bool", d)
            return _comp_bool(d, line, sys, a0)
        case VPi():
            _trace("Pi", d)
            return _comp_pi(d, line, sys, a0)
        case VSigma():
            _trace("Sigma", d)
            return _comp_sigma(d, line, sys, a0)
        case VPathP():
            _trace("PathP", d)
            return _comp_path(d, line, sys, a0)
        case VU(0):
            _trace("U0", d)
            return _comp_universe(d, sys, a0)
        case VGlue():
            _trace("Glue", d)
            return _comp_glue(d, line, sys, a0, i, ai)
    _trace("stuck", d)
    return VNeu(NComp(d, line, tuple(sys), a0), line.inst(tgt))


def transport(d: int, line: Clo, a0: Value) -> Value:
    return comp(d, line, [], a0)


# ---------------------------------------------------------------------------
# per-former cases


def _comp_bool(d: int, line: Clo, sys: System, a0: Value) -> Value:
    # Bool is discrete: with no live tube the base is the answer. A tube under
    # an undecided cofibration keeps the problem stuck until a substitution
    # makes it true or false; in the empty context that always happens.
    # Conversion identifies a stuck composition whose tubes are the base with
    # the base, so evaluation does not test for that.
    if sys:
        return VNeu(NComp(d, line, tuple(sys), a0), BOOL)
    return a0


def _comp_pi(d: int, line: Clo, sys: System, f0: Value) -> Value:
    src, tgt = ends(d)
    dom = FunClo(lambda r: line.inst(r).dom)
    name = line.inst(src).name

    def body(x: Value) -> Value:
        # carry the argument back from the target end
        def w(r: Interval) -> Value:
            return fill(1 - d, dom, [], x, r)

        cod = FunClo(lambda r: line.inst(r).cod.inst(w(r)))
        tubes: System = [(c, FunClo(lambda r, u=u: apply(u.inst(r), w(r)))) for c, u in sys]
        return comp(d, cod, tubes, apply(f0, w(src)))

    return nbe.lam(body, name)


def _comp_sigma(d: int, line: Clo, sys: System, p0: Value) -> Value:
    src, tgt = ends(d)
    dom = FunClo(lambda r: line.inst(r).dom)
    fst_sys: System = [(c, FunClo(lambda r, u=u: vfst(u.inst(r)))) for c, u in sys]
    a0 = vfst(p0)

    def a(r: Interval) -> Value:
        return fill(d, dom, fst_sys, a0, r)

    cod = FunClo(lambda r: line.inst(r).cod.inst(a(r)))
    snd_sys: System = [(c, FunClo(lambda r, u=u: vsnd(u.inst(r)))) for c, u in sys]
    return VPair(a(tgt), comp(d, cod, snd_sys, vsnd(p0)))


def _comp_path(d: int, line: Clo, sys: System, p0: Value) -> Value:
    name = line.inst(ZERO).name

    def body(j: Interval) -> Value:
        lj = FunClo(lambda r: line.inst(r).line.inst(j))
        tubes: System = [(c, FunClo(lambda r, u=u: papply(u.inst(r), j))) for c, u in sys]
        tubes.append((ic.eq0(j), FunClo(lambda r: line.inst(r).left)))
        tubes.append((ic.eq1(j), FunClo(lambda r: line.inst(r).right)))
        return comp(d, lj, tubes, papply(p0, j))

    return nbe.plam(body, name)


def _comp_universe(d: int, sys: System, a0: Value) -> Value:
    from nctt import glue_univ

    src, tgt = ends(d)
    branches = [(c, e.inst(tgt), glue_univ.transport_hiso(d, e)) for c, e in sys]
    return nbe.mk_glue(a0, branches)


def _comp_glue(d: int, line: Clo, sys: System, a0: Value, i: int, g: VGlue) -> Value:
    """Filling in a line of Glue types.

    Unglue everything, fill in the base, fill in the glued types where their
    cofibration holds for the whole line, then correct the base point by
    extending a partial element of each fiber over the new base point.
    """
    from nctt import glue_univ

    src, tgt = ends(d)

    def at(r: Interval, v: Value) -> Value:
        return act(v, {i: r})

    def gsys(r: Interval) -> list:
        return [(act_cof(c, {i: r}), at(r, t), at(r, e)) for c, t, e in g.system]

    def ung(r: Interval, x: Value) -> Value:
        return nbe.unglue(x, at(r, g.base), gsys(r))

    base_line = FunClo(lambda r: at(r, g.base))
    base_sys: System = [(c, FunClo(lambda r, u=u: ung(r, u.inst(r)))) for c, u in sys]
    b0 = ung(src, a0)
    b1p = comp(d, base_line, base_sys, b0)
    base1 = at(tgt, g.base)

    fibers = []
    for c, t, e in g.system:
        psi1 = act_cof(c, {i: tgt})
        if psi1.is_bot():
            continue
        delta = ic.forall_i(c, i)
        t_line = FunClo(lambda r, t=t: at(r, t))

        def t1p(t_line=t_line) -> Value:
            return comp(d, t_line, sys, a0)

        def omega(t_line=t_line, e=e) -> Value:
            def body(j: Interval) -> Value:
                def tube(r: Interval) -> Value:
                    return apply(nbe.hiso_fwd(at(r, e)), fill(d, t_line, sys, a0, r))

                return comp(d, base_line, base_sys + [(ic.eq0(j), FunClo(tube))], b0)

            return nbe.plam(body, "j")

        partial = [(delta, lambda t1p=t1p, omega=omega: VPair(t1p(), omega()))]
        for cu, u in sys:

            def on_phi(u=u) -> Value:
                ut = u.inst(tgt)
                b = ung(tgt, ut)
                return VPair(ut, nbe.plam(lambda _: b, "j"))

            partial.append((cu, on_phi))
        fib = glue_univ.extend_fiber(at(tgt, t), base1, at(tgt, e), b1p, partial)
        fibers.append((psi1, fib))

    b1_sys: System = [(c, FunClo(lambda j, fib=fib: papply(vsnd(fib), j))) for c, fib in fibers]
    b1_sys += [(cu, FunClo(lambda _: b1p)) for cu, _ in sys]
    b1 = comp(1, nbe.const_clo(base1), b1_sys, b1p)
    return nbe.mk_glue_intro([(c, vfst(fib)) for c, fib in fibers], b1)
