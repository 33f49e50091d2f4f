"""Filling: per-former examples, the corpus laws and stability under substitution."""

import collections
import functools

import hypothesis
import pytest
from hypothesis import strategies as st

import corpus
from nctt import glue_univ, kan, nbe
from nctt import interval_cof as ic
from nctt.interval_cof import ONE, ZERO, Interval
from nctt.nbe import BOOL, U0, UNIT, FunClo, VPair


def const(v):
    return FunClo(lambda _: v)


def families() -> list[str]:
    return sorted({c.label.split("/")[0] for c in corpus.fill_cases()})


def by_family(results: dict) -> dict:
    out = collections.defaultdict(list)
    for label, fails in results.items():
        out[label.split("/")[0]] += fails
    return out


# -- per-former examples -----------------------------------------------------------


def test_fill_at_source_is_base_exactly():
    x = nbe.var(0, BOOL)
    f = nbe.var(1, nbe.arrow(BOOL, BOOL))
    line = const(nbe.arrow(BOOL, BOOL))
    assert kan.fill(0, line, [], f, ZERO) is f
    assert kan.fill(0, const(BOOL), [(ic.eq0(Interval.var(2)), const(x))], x, ZERO) is x


def test_true_cofibration_returns_tube():
    i = Interval.var(1)
    p = nbe.var(0, nbe.path_type(BOOL, nbe.TRUE, nbe.FALSE))
    tube = FunClo(lambda r: nbe.papply(p, r))
    out = kan.fill(0, const(BOOL), [(ic.TOP, tube)], nbe.TRUE, i)
    assert nbe.conv(2, BOOL, out, nbe.papply(p, i))


def test_unit_line_gives_star():
    x = nbe.var(0, UNIT)
    assert isinstance(kan.transport(0, const(UNIT), x), nbe.VStar)


def test_bool_line_transport_is_base_exactly():
    x = nbe.var(0, BOOL)
    assert kan.transport(0, const(BOOL), x) is x
    assert kan.transport(1, const(BOOL), x) is x


def test_bool_closed_tube_agrees_with_base():
    for b in (nbe.TRUE, nbe.FALSE):
        assert kan.comp(0, const(BOOL), [(ic.TOP, const(b))], b) is b
        assert kan.comp(0, const(BOOL), [(ic.BOT, const(nbe.TRUE))], b) is b


def test_bool_undecided_tube_is_stuck_then_computes():
    i = Interval.var(1)
    p = nbe.var(0, nbe.path_type(BOOL, nbe.TRUE, nbe.TRUE))
    v = kan.comp(0, const(BOOL), [(ic.eq1(i), FunClo(lambda r: nbe.papply(p, r)))], nbe.TRUE)
    assert isinstance(v.ne, nbe.NComp)
    assert isinstance(nbe.act(v, {1: ONE}), nbe.VTrue)
    assert isinstance(nbe.act(v, {1: ZERO}), nbe.VTrue)


def test_constant_pi_line_bot_is_eta_of_base():
    f = nbe.var(0, nbe.arrow(BOOL, UNIT))
    r = Interval.var(1)
    out = kan.fill(0, const(nbe.arrow(BOOL, UNIT)), [], f, r)
    assert isinstance(out, nbe.VLam)
    assert nbe.conv(2, nbe.arrow(BOOL, UNIT), out, f)
    g = nbe.var(0, nbe.arrow(BOOL, BOOL))
    assert nbe.conv(1, nbe.arrow(BOOL, BOOL), kan.transport(0, const(nbe.arrow(BOOL, BOOL)), g), g)


def test_constant_sigma_bot_at_zero_is_base():
    ty = nbe.VSigma("_", BOOL, nbe.const_clo(UNIT))
    p = nbe.var(0, ty)
    assert kan.fill(0, const(ty), [], p, ZERO) is p
    out = kan.transport(0, const(ty), VPair(nbe.TRUE, nbe.STAR))
    assert isinstance(nbe.vfst(out), nbe.VTrue)


def test_path_line_over_unit_is_constant_path():
    ty = nbe.path_type(UNIT, nbe.STAR, nbe.STAR)
    out = kan.transport(0, const(ty), nbe.plam(lambda _: nbe.STAR))
    assert nbe.conv(0, ty, out, nbe.plam(lambda _: nbe.STAR))


def test_reflexive_path_line_bot_is_constant_path_on_transport():
    # a line of reflexive paths over a Glue line: result is refl on the transported point
    line = corpus.line_cases(corpus.Ctx())[4]  # ua-not
    assert line.label == "ua-not"
    x = nbe.var(0, BOOL)
    pt = FunClo(lambda r: kan.fill(0, FunClo(line.line), [], x, r))
    paths = FunClo(lambda r: nbe.path_type(line.line(r), pt.inst(r), pt.inst(r)))
    out = kan.transport(0, paths, nbe.plam(lambda _: x))
    want = nbe.plam(lambda _: kan.transport(0, FunClo(line.line), x))
    assert nbe.conv(1, paths.inst(ONE), out, want)


def test_path_endpoints_are_fills_of_endpoint_lines():
    ty = nbe.path_type(BOOL, nbe.TRUE, nbe.TRUE)
    out = kan.transport(0, const(ty), nbe.var(0, ty))
    assert isinstance(nbe.papply(out, ZERO), nbe.VTrue)
    assert isinstance(nbe.papply(out, ONE), nbe.VTrue)


def test_universe_line_bot_reduces_to_base_type():
    assert kan.transport(0, const(U0), BOOL) is BOOL


def test_universe_line_top_is_tube():
    i = Interval.var(0)
    out = kan.fill(0, const(U0), [(ic.TOP, const(UNIT))], UNIT, i)
    assert out is UNIT


def test_universe_mixed_faces_is_glue_over_base():
    i = Interval.var(0)
    out = kan.comp(0, const(U0), [(ic.eq0(i), const(BOOL))], BOOL)
    assert isinstance(out, nbe.VGlue)
    assert nbe.conv_ty(1, nbe.act(out, {0: ZERO}), BOOL)
    assert nbe.conv_ty(1, nbe.act(out, {0: ONE}), BOOL)


def test_glue_line_true_system_fills_glued_type():
    ctx = corpus.Ctx()
    isos = corpus.iso_cases(ctx)
    x = ctx.var(BOOL)
    line = const(nbe.mk_glue(BOOL, [(ic.TOP, BOOL, isos[0].e)]))
    assert kan.transport(0, line, x) is x


def test_glue_line_false_system_fills_base():
    ctx = corpus.Ctx()
    isos = corpus.iso_cases(ctx)
    x = ctx.var(BOOL)
    line = const(nbe.mk_glue(BOOL, [(ic.BOT, BOOL, isos[0].e)]))
    assert kan.transport(0, line, x) is x


def test_one_sided_glue_line_matches_hand_trace():
    # Glue Bool [i=0 -> (Bool, not)] transported from 0 to 1: the base is not x
    ctx = corpus.Ctx()
    e = corpus.not_iso()
    x = ctx.var(BOOL)
    line = FunClo(lambda r: nbe.mk_glue(BOOL, [(ic.eq0(r), BOOL, e)]))
    out = kan.transport(0, line, x)
    want = nbe.apply(corpus.not_fn(), x)
    assert nbe.conv(ctx.depth, BOOL, out, want)


def test_transport_along_ua_not_on_closed_booleans():
    sides = [(0, BOOL, corpus.not_iso()), (1, BOOL, glue_univ.id_hiso())]
    line = FunClo(lambda r: nbe.mk_glue(BOOL, [(ic.eq0(r) if s == 0 else ic.eq1(r), t, e) for s, t, e in sides]))
    assert isinstance(kan.transport(0, line, nbe.TRUE), nbe.VFalse)
    assert isinstance(kan.transport(0, line, nbe.FALSE), nbe.VTrue)


def test_trace_reports_cases():
    seen = []
    kan.trace = seen.append
    try:
        kan.transport(0, const(nbe.arrow(BOOL, UNIT)), nbe.var(0, nbe.arrow(BOOL, UNIT)))
    finally:
        kan.trace = None
    assert seen[0] == "fill[0] Pi"


# -- the generated corpus --------------------------------------------------------------


def test_corpus_size_and_spread():
    cases = corpus.fill_cases()
    assert len(cases) >= 500
    heads = {c.line(Interval.var(10**6)).__class__.__name__ for c in cases}
    assert {"VUnitT", "VBoolT", "VPi", "VSigma", "VPathP", "VGlue", "VU"} <= heads


@pytest.mark.parametrize("family", families())
def test_fill_laws(family):
    assert by_family(corpus.fill_results())[family] == []


@pytest.mark.parametrize("family", families())
def test_componentwise(family):
    assert by_family(corpus.componentwise_results())[family] == []


# -- stability under substitution -------------------------------------------------------


@functools.cache
def light():
    return [c for c in corpus.fill_cases() if "ua-" not in c.label]


@hypothesis.settings(max_examples=60, deadline=None)
@hypothesis.given(st.data())
def test_fill_commutes_with_substitution(data):
    c = data.draw(st.sampled_from(light()))
    targets = sorted({v for cof, _ in c.tubes for v in cof.vars()} | {c.m.as_var()})
    v = data.draw(st.sampled_from(targets))
    r = data.draw(st.sampled_from([ZERO, ONE, Interval.var(c.depth)]))
    sigma = {v: r}
    n = c.depth + 1
    line = FunClo(c.line)
    before = nbe.act(kan.fill(c.d, line, c.system, c.base, c.m), sigma)
    after = kan.fill(
        c.d,
        line.act(sigma),
        [(nbe.act_cof(cf, sigma), u.act(sigma)) for cf, u in c.system],
        nbe.act(c.base, sigma),
        c.m.subst(sigma),
    )
    assert nbe.conv(n, nbe.act(c.line(c.m), sigma), before, after)
