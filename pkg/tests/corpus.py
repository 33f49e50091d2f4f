"""Generated kernel instances for the filling, Glue and extension laws.

Every instance lives in a context of neutral variables; conversion is run at
the final depth of that context.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import typing

from nctt import glue_univ, kan, nbe
from nctt import interval_cof as ic
from nctt.interval_cof import ONE, ZERO, Interval
from nctt.nbe import BOOL, U0, UNIT, FunClo, Value, VPair

Line = typing.Callable[[Interval], Value]


class Ctx:
    def __init__(self) -> None:
        self.depth = 0

    def var(self, ty: Value) -> Value:
        v = nbe.var(self.depth, ty)
        self.depth += 1
        return v

    def ival(self) -> Interval:
        r = Interval.var(self.depth)
        self.depth += 1
        return r


def clo(fn: Line) -> nbe.Clo:
    return FunClo(fn)


# -- homotopy isomorphisms ------------------------------------------------------


def not_fn() -> Value:
    return nbe.lam(lambda b: nbe.bool_elim("_", nbe.const_clo(BOOL), nbe.FALSE, nbe.TRUE, b))


def not_iso() -> Value:
    def nn(b: Value) -> Value:
        motive = FunClo(lambda x: nbe.path_type(BOOL, nbe.apply(not_fn(), nbe.apply(not_fn(), x)), x))
        return nbe.bool_elim("x", motive, nbe.plam(lambda _: nbe.TRUE), nbe.plam(lambda _: nbe.FALSE), b)

    n = not_fn()
    return glue_univ.mk_hiso(n, n, n, nbe.lam(nn), nbe.lam(nn))


def swap_iso() -> Value:
    sw = nbe.lam(lambda p: VPair(nbe.vsnd(p), nbe.vfst(p)))
    refl = nbe.lam(lambda p: nbe.plam(lambda _: p))
    return glue_univ.mk_hiso(sw, sw, sw, refl, refl)


BOOL2 = nbe.VSigma("_", BOOL, nbe.const_clo(BOOL))


@dataclasses.dataclass
class IsoCase:
    label: str
    t: Value
    a: Value
    e: Value


def iso_cases(ctx: Ctx) -> list[IsoCase]:
    x = ctx.var(U0)
    y = ctx.var(U0)
    exy = ctx.var(glue_univ.hiso_type(x, y))
    ebb = ctx.var(glue_univ.hiso_type(BOOL, BOOL))
    xu = nbe.VSigma("_", x, nbe.const_clo(UNIT))
    e_xu = ctx.var(glue_univ.hiso_type(xu, BOOL2))
    return [
        IsoCase("not", BOOL, BOOL, not_iso()),
        IsoCase("id-Bool", BOOL, BOOL, glue_univ.id_hiso()),
        IsoCase("id-Unit", UNIT, UNIT, glue_univ.id_hiso()),
        IsoCase("swap", BOOL2, BOOL2, swap_iso()),
        IsoCase("id-X", x, x, glue_univ.id_hiso()),
        IsoCase("var-XY", x, y, exy),
        IsoCase("var-Bool", BOOL, BOOL, ebb),
        IsoCase("var-Sigma", xu, BOOL2, e_xu),
    ]


# -- lines of types ---------------------------------------------------------------


@dataclasses.dataclass
class LineCase:
    label: str
    line: Line
    constant: bool


def line_cases(ctx: Ctx) -> list[LineCase]:
    x = ctx.var(U0)
    ex = ctx.var(glue_univ.hiso_type(x, x))
    bool_pt = ctx.var(BOOL)

    def const(v: Value) -> Line:
        return lambda _: v

    def ua(a: Value, b: Value, e: Value) -> Line:
        return lambda r: nbe.mk_glue(b, [(ic.eq0(r), a, e), (ic.eq1(r), b, glue_univ.id_hiso())])

    atoms = [
        LineCase("Unit", const(UNIT), True),
        LineCase("Bool", const(BOOL), True),
        LineCase("X", const(x), True),
        LineCase("U0", const(U0), True),
        LineCase("ua-not", ua(BOOL, BOOL, not_iso()), False),
        LineCase("ua-X", ua(x, x, ex), False),
    ]
    out = list(atoms)
    small = [c for c in atoms if c.label != "U0"]
    glue = {"ua-not", "ua-X"}
    for a, b in itertools.product(small, repeat=2):
        if a.label in glue and b.label in glue:
            continue  # two Glue lines at once: slow, and adds nothing new
        out.append(
            LineCase(f"{a.label}->{b.label}", lambda r, a=a, b=b: nbe.arrow(a.line(r), b.line(r)), a.constant and b.constant)
        )
        out.append(
            LineCase(
                f"{a.label}*{b.label}",
                lambda r, a=a, b=b: nbe.VSigma("_", a.line(r), nbe.const_clo(b.line(r))),
                a.constant and b.constant,
            )
        )
    for a, b in itertools.product(small[:3] + small[4:5], repeat=2):

        def dep(r: Interval, a=a, b=b) -> Value:
            fam = FunClo(lambda v: nbe.bool_elim("_", nbe.const_clo(U0), a.line(r), b.line(r), v))
            return nbe.VPi("z", BOOL, fam)

        out.append(LineCase(f"(z:Bool)->[{a.label}|{b.label}]", dep, a.constant and b.constant))
    for a in small:
        if a.label in glue:
            continue
        p0 = ctx.var(a.line(ZERO))

        def path(r: Interval, a=a, p0=p0) -> Value:
            ends = p0 if a.constant else kan.fill(0, clo(a.line), [], p0, r)
            return nbe.path_type(a.line(r), ends, ends)

        out.append(LineCase(f"Path[{a.label}]", path, a.constant))
    out.append(
        LineCase(
            "Path[Bool]-open",
            lambda r: nbe.path_type(BOOL, bool_pt, nbe.bool_elim("_", nbe.const_clo(BOOL), bool_pt, nbe.TRUE, bool_pt)),
            True,
        )
    )
    return out


# -- filling instances -----------------------------------------------------------


@dataclasses.dataclass
class FillCase:
    label: str
    d: int
    line: Line
    tubes: list  # of (Cof, Line); wrapped afresh so results are not retained
    base: Value
    m: Interval  # generic point the fill is evaluated at
    depth: int

    @property
    def system(self) -> list:
        return [(c, clo(u)) for c, u in self.tubes]


def fill_cases() -> list[FillCase]:
    ctx = Ctx()
    lines = line_cases(ctx)
    j, k = ctx.ival(), ctx.ival()
    cofs = {
        "none": [],
        "j=0": [ic.eq0(j)],
        "j=0|k=1": [ic.eq0(j), ic.eq1(k)],
        "j=1&k=0": [ic.eq1(j).meet(ic.eq0(k))],
        "TT": [ic.TOP],
    }
    cases = []
    for lc in lines:
        for d in (0, 1):
            src = ZERO if d == 0 else ONE
            base = ctx.var(lc.line(src))
            walk = lambda r, lc=lc, d=d, base=base: kan.fill(d, clo(lc.line), [], base, r)  # noqa: E731
            for cname, cs_ in cofs.items():
                m = ctx.ival()
                cases.append(FillCase(f"{lc.label}/d{d}/{cname}", d, lc.line, [(c, walk) for c in cs_], base, m, 0))
            if lc.constant:
                # a tube given by an independent path ending at the base
                a = lc.line(ZERO)
                other = ctx.var(a)
                p = ctx.var(nbe.path_type(a, base, other) if d == 0 else nbe.path_type(a, other, base))
                m = ctx.ival()
                tube = lambda r, p=p: nbe.papply(p, r)  # noqa: E731
                cases.append(FillCase(f"{lc.label}/d{d}/path-tube", d, lc.line, [(ic.eq1(j), tube)], base, m, 0))
    for c in cases:
        c.depth = ctx.depth
    return cases


def conv(depth: int, ty: Value, a: Value, b: Value) -> bool:
    return nbe.conv(depth, ty, a, b)


# -- law checks (return a list of failure descriptions) ------------------------------


def fill_law_failures(c: FillCase) -> list[str]:
    out = []
    line = clo(c.line)
    src = ZERO if c.d == 0 else ONE
    mv = c.m.as_var()
    v = kan.fill(c.d, line, c.system, c.base, c.m)
    if not conv(c.depth, c.line(src), nbe.act(v, {mv: src}), c.base):
        out.append(f"{c.label}: fill at the source is not the base")
    for cof, u in c.system:
        for face in cof.faces:
            s = nbe.face_subst(face)
            ty = nbe.act(c.line(c.m), s)
            if not conv(c.depth, ty, nbe.act(v, s), nbe.act(u.inst(c.m), s)):
                out.append(f"{c.label}: fill does not restrict to the tube on {face}")
    if c.system:
        u = c.system[0][1]
        top = kan.fill(c.d, line, [(ic.TOP, u)], c.base, c.m)
        if not conv(c.depth, c.line(c.m), top, u.inst(c.m)):
            out.append(f"{c.label}: fill under a true cofibration is not the tube")
    return out


def componentwise_failures(c: FillCase) -> list[str]:
    """Projection, application and path application of fills compute componentwise."""
    out = []
    j = Interval.var(c.depth)  # the path dimension, bound just past the context
    n = c.depth + 1
    line = clo(c.line)
    ty = c.line(c.m)
    tgt = ONE if c.d == 0 else ZERO
    src = ZERO if c.d == 0 else ONE
    match ty:
        case nbe.VSigma():
            v = kan.fill(c.d, line, c.system, c.base, c.m)
            dom = clo(lambda r: c.line(r).dom)
            fst_sys = [(cf, clo(lambda r, u=u: nbe.vfst(u.inst(r)))) for cf, u in c.system]

            def a(r: Interval) -> Value:
                return kan.fill(c.d, dom, fst_sys, nbe.vfst(c.base), r)

            if not conv(n, ty.dom, nbe.vfst(v), a(c.m)):
                out.append(f"{c.label}: fst of fill")
            cod = clo(lambda r: c.line(r).cod.inst(a(r)))
            snd_sys = [(cf, clo(lambda r, u=u: nbe.vsnd(u.inst(r)))) for cf, u in c.system]
            want = kan.fill(c.d, cod, snd_sys, nbe.vsnd(c.base), c.m)
            if not conv(n, ty.cod.inst(a(c.m)), nbe.vsnd(v), want):
                out.append(f"{c.label}: snd of fill")
        case nbe.VPi():
            v = kan.fill(c.d, line, c.system, c.base, tgt)
            x = nbe.var(n, c.line(tgt).dom)
            dom = clo(lambda r: c.line(r).dom)

            def w(r: Interval) -> Value:
                return kan.fill(1 - c.d, dom, [], x, r)

            cod = clo(lambda r: c.line(r).cod.inst(w(r)))
            tubes = [(cf, clo(lambda r, u=u: nbe.apply(u.inst(r), w(r)))) for cf, u in c.system]
            want = kan.fill(c.d, cod, tubes, nbe.apply(c.base, w(src)), tgt)
            if not conv(n + 1, c.line(tgt).cod.inst(x), nbe.apply(v, x), want):
                out.append(f"{c.label}: application of comp")
        case nbe.VPathP():
            v = kan.fill(c.d, line, c.system, c.base, c.m)
            lj = clo(lambda r: c.line(r).line.inst(j))
            tubes = [(cf, clo(lambda r, u=u: nbe.papply(u.inst(r), j))) for cf, u in c.system]
            tubes.append((ic.eq0(j), clo(lambda r: c.line(r).left)))
            tubes.append((ic.eq1(j), clo(lambda r: c.line(r).right)))
            want = kan.fill(c.d, lj, tubes, nbe.papply(c.base, j), c.m)
            if not conv(n, ty.line.inst(j), nbe.papply(v, j), want):
                out.append(f"{c.label}: path application of fill")
    return out


# -- Glue and strong extension ---------------------------------------------------------


def glue_cofs(ctx: Ctx) -> dict:
    j, k = ctx.ival(), ctx.ival()
    return {
        "FF": ic.BOT,
        "j=0": ic.eq0(j),
        "j=0|k=1": ic.eq0(j).join(ic.eq1(k)),
        "j=1&k=0": ic.eq1(j).meet(ic.eq0(k)),
        "TT": ic.TOP,
    }


@dataclasses.dataclass
class GlueCase:
    label: str
    iso: IsoCase
    phi: ic.Cof
    depth: int


def glue_cases() -> list[GlueCase]:
    ctx = Ctx()
    isos = iso_cases(ctx)
    cofs = glue_cofs(ctx)
    out = [GlueCase(f"{i.label}/{name}", i, c, 0) for i in isos for name, c in cofs.items()]
    for c in out:
        c.depth = ctx.depth
    return out


def _under(phi: ic.Cof):
    return [nbe.face_subst(f) for f in phi.faces]


def glue_law_failures(c: GlueCase) -> list[str]:
    out = []
    t, a, e, phi, n = c.iso.t, c.iso.a, c.iso.e, c.phi, c.depth
    gsys = [(phi, t, e)]
    gty = nbe.mk_glue(a, gsys)
    fwd = nbe.hiso_fwd
    # a point of T, glued over its image, and an arbitrary point of the Glue type
    x = nbe.var(n, t)
    g = nbe.var(n + 1, gty)
    n += 2
    intro = nbe.mk_glue_intro([(phi, x)], nbe.apply(fwd(e), x))
    if not conv(n, a, nbe.unglue(intro, a, gsys), nbe.apply(fwd(e), x)):
        out.append(f"{c.label}: unglue of glue is not the base")
    if not conv(n, gty, nbe.mk_glue_intro([(phi, g)], nbe.unglue(g, a, gsys)), g):
        out.append(f"{c.label}: glue of unglue is not the element")
    if not nbe.conv_ty(n, nbe.mk_glue(a, [(ic.TOP, t, e)]), t):
        out.append(f"{c.label}: Glue under a true cofibration is not the glued type")
    if not nbe.conv_ty(n, nbe.mk_glue(a, [(ic.BOT, t, e)]), a):
        out.append(f"{c.label}: Glue under a false cofibration is not the base")
    for s in _under(phi):
        ts = nbe.act(t, s)
        if not nbe.conv_ty(n, nbe.act(gty, s), ts):
            out.append(f"{c.label}: Glue does not restrict to the glued type on {s}")
        if not conv(n, ts, nbe.act(intro, s), nbe.act(x, s)):
            out.append(f"{c.label}: glue does not restrict to its partial element on {s}")
        as_ = nbe.act(a, s)
        want = nbe.apply(fwd(nbe.act(e, s)), nbe.act(g, s))
        if not conv(n, as_, nbe.act(nbe.unglue(g, a, gsys), s), want):
            out.append(f"{c.label}: unglue is not the forward map on {s}")
    return out


COMPONENTS = ("fwd", "sec", "ret", "hs", "hr")


def _components(ty: Value, e: Value) -> list[tuple[Value, Value]]:
    """The five components of an HIso together with their types."""
    out = []
    for _ in range(4):
        out.append((ty.dom, nbe.vfst(e)))
        ty, e = ty.cod.inst(nbe.vfst(e)), nbe.vsnd(e)
    out.append((ty, e))
    return out


def extension_failures(c: GlueCase) -> list[str]:
    out = []
    t, a, e, phi, n = c.iso.t, c.iso.a, c.iso.e, c.phi, c.depth
    ext = glue_univ.hiso_extend(phi, t, e, a)
    t2, e2 = nbe.vfst(ext), nbe.vsnd(ext)
    for s in _under(phi):
        ts, as_ = nbe.act(t, s), nbe.act(a, s)
        if not nbe.conv_ty(n, nbe.act(t2, s), ts):
            out.append(f"{c.label}: carrier does not restrict on {s}")
            continue
        have = _components(glue_univ.hiso_type(ts, as_), nbe.act(e2, s))
        want = _components(glue_univ.hiso_type(ts, as_), nbe.act(e, s))
        for name, (ty, v), (_, w) in zip(COMPONENTS, have, want):
            if not conv(n, ty, v, w):
                out.append(f"{c.label}: {name} does not restrict on {s}")
    # the boundaries of the extended homotopies are the right ones everywhere
    f, sec, ret, hs, hr = (v for _, v in _components(glue_univ.hiso_type(t2, a), e2))
    b = nbe.var(n, a)
    g = nbe.var(n + 1, t2)
    n += 2
    if not conv(n, a, nbe.papply(nbe.apply(hs, b), ZERO), nbe.apply(f, nbe.apply(sec, b))):
        out.append(f"{c.label}: hs does not start at f (s b)")
    if not conv(n, a, nbe.papply(nbe.apply(hs, b), ONE), b):
        out.append(f"{c.label}: hs does not end at b")
    if not conv(n, t2, nbe.papply(nbe.apply(hr, g), ZERO), nbe.apply(ret, nbe.apply(f, g))):
        out.append(f"{c.label}: hr does not start at r (f g)")
    if not conv(n, t2, nbe.papply(nbe.apply(hr, g), ONE), g):
        out.append(f"{c.label}: hr does not end at g")
    return out


# -- whole-corpus runs, shared between test modules -----------------------------------------


@functools.cache
def fill_results() -> dict[str, list[str]]:
    return {c.label: fill_law_failures(c) for c in fill_cases()}


@functools.cache
def componentwise_results() -> dict[str, list[str]]:
    return {c.label: componentwise_failures(c) for c in fill_cases()}


@functools.cache
def glue_results() -> dict[str, list[str]]:
    return {c.label: glue_law_failures(c) for c in glue_cases()}


@functools.cache
def extension_results() -> dict[str, list[str]]:
    return {c.label: extension_failures(c) for c in glue_cases()}
