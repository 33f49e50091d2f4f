"""Surface syntax trees (named variables, spans ignored by equality)."""

from __future__ import annotations

import dataclasses
import typing


def _span():
    return dataclasses.field(default=None, kw_only=True, compare=False, repr=False)


class STerm:
    __slots__ = ()


# -- intervals and cofibrations ---------------------------------------------


@dataclasses.dataclass(frozen=True)
class SIConst(STerm):
    value: int
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SIVar(STerm):
    name: str
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SIMin(STerm):
    a: STerm
    b: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SIMax(STerm):
    a: STerm
    b: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SEq(STerm):
    r: STerm
    value: int
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SCTop(STerm):
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SCBot(STerm):
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SCAnd(STerm):
    a: STerm
    b: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SCOr(STerm):
    a: STerm
    b: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class STermEq(STerm):
    a: STerm
    b: STerm
    ty: STerm
    span: typing.Any = _span()


# -- terms --------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class SVar(STerm):
    name: str
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SConst(STerm):
    """U0, U1, Unit, star, Bool, true, false, and the interval literals 0, 1."""

    name: str
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SPi(STerm):
    name: str  # "_" for a plain arrow
    dom: STerm
    cod: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SSigma(STerm):
    name: str
    dom: STerm
    cod: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SLam(STerm):
    name: str
    body: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SPLam(STerm):
    name: str
    body: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SApp(STerm):
    fn: STerm
    arg: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SPApp(STerm):
    p: STerm
    r: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SProj(STerm):
    t: STerm
    which: int
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SPair(STerm):
    a: STerm
    b: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SAnn(STerm):
    t: STerm
    ty: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SKw(STerm):
    """A keyword applied to ordinary arguments (``Path``, ``J``, ``ua``, ...)."""

    kw: str
    args: tuple
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SLine(STerm):
    name: str
    body: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SBranch(STerm):
    cof: STerm
    body: STerm  # for Glue and hisoext, an SPair (T, e)
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SFill(STerm):
    kw: str  # fill, comp or transp
    line: SLine
    system: tuple
    base: STerm
    at: typing.Optional[STerm]
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SPathP(STerm):
    line: SLine
    a: STerm
    b: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SBoolElim(STerm):
    line: SLine
    tcase: STerm
    fcase: STerm
    scrut: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SGlue(STerm):
    base: STerm
    system: tuple
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SGlueIntro(STerm):
    system: tuple
    base: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SHisoExt(STerm):
    system: tuple  # exactly one branch
    base: STerm
    span: typing.Any = _span()


# -- declarations ---------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class SParam:
    names: tuple
    ty: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SDef:
    name: str
    params: tuple
    ty: STerm
    body: STerm
    span: typing.Any = _span()


@dataclasses.dataclass(frozen=True)
class SImport:
    path: str
    span: typing.Any = _span()


# keyword heads taking ordinary arguments, with their arity
KW_ARITY = {
    "Path": 3,
    "refl": 1,
    "J": 6,
    "ua": 3,
    "unglue": 1,
    "HIso": 2,
    "idHIso": 1,
    "fst": 1,
    "snd": 1,
    "pathres": 2,
}

CONSTS = frozenset({"U0", "U1", "Unit", "star", "Bool", "true", "false"})
