"""Interval algebra and the cofibration lattice.

Interval expressions live in the free bounded distributive lattice over the
interval variables; a normal form is a join of meets with absorption applied.
Cofibrations are positive formulas over the literals ``r = 0``, ``r = 1`` and
opaque term-equation atoms.  Their normal form is a set of faces, each face
being a consistent conjunction of endpoint literals on variables plus atoms.

Variables are plain integers (levels or fresh names), atoms are any hashable
objects.  Nothing in this module knows about terms.
"""

from __future__ import annotations

import dataclasses
import itertools
import typing

# ---------------------------------------------------------------------------
# syntax trees


@dataclasses.dataclass(frozen=True)
class IntervalExpr:
    pass


@dataclasses.dataclass(frozen=True)
class IZero(IntervalExpr):
    pass


@dataclasses.dataclass(frozen=True)
class IOne(IntervalExpr):
    pass


@dataclasses.dataclass(frozen=True)
class IVar(IntervalExpr):
    index: int


@dataclasses.dataclass(frozen=True)
class IMin(IntervalExpr):
    l: IntervalExpr
    r: IntervalExpr


@dataclasses.dataclass(frozen=True)
class IMax(IntervalExpr):
    l: IntervalExpr
    r: IntervalExpr


@dataclasses.dataclass(frozen=True)
class CofExpr:
    pass


@dataclasses.dataclass(frozen=True)
class CTop(CofExpr):
    pass


@dataclasses.dataclass(frozen=True)
class CBot(CofExpr):
    pass


@dataclasses.dataclass(frozen=True)
class EqZero(CofExpr):
    r: IntervalExpr


@dataclasses.dataclass(frozen=True)
class EqOne(CofExpr):
    r: IntervalExpr


@dataclasses.dataclass(frozen=True)
class CAnd(CofExpr):
    l: CofExpr
    r: CofExpr


@dataclasses.dataclass(frozen=True)
class COr(CofExpr):
    l: CofExpr
    r: CofExpr


@dataclasses.dataclass(frozen=True)
class CAtom(CofExpr):
    """An opaque atom; the kernel uses it for term equations."""

    atom: typing.Hashable


# ---------------------------------------------------------------------------
# interval normal form


def _absorb(meets: typing.Iterable[frozenset]) -> frozenset:
    ms = sorted(set(meets), key=len)
    kept: list[frozenset] = []
    for m in ms:
        if not any(k <= m for k in kept):
            kept.append(m)
    return frozenset(kept)


@dataclasses.dataclass(frozen=True)
class Interval:
    """Join of meets of variables."""

    meets: frozenset

    @staticmethod
    def var(v: int) -> "Interval":
        return Interval(frozenset({frozenset({v})}))

    def is_zero(self) -> bool:
        return not self.meets

    def is_one(self) -> bool:
        return frozenset() in self.meets

    def as_var(self) -> typing.Optional[int]:
        if len(self.meets) == 1:
            (m,) = self.meets
            if len(m) == 1:
                (v,) = m
                return v
        return None

    def vars(self) -> frozenset:
        return frozenset().union(*self.meets) if self.meets else frozenset()

    def meet(self, other: "Interval") -> "Interval":
        return Interval(_absorb(a | b for a in self.meets for b in other.meets))

    def join(self, other: "Interval") -> "Interval":
        return Interval(_absorb(self.meets | other.meets))

    def subst(self, sigma: typing.Mapping[int, "Interval"]) -> "Interval":
        if not sigma or not (self.vars() & sigma.keys()):
            return self
        out = ZERO
        for m in self.meets:
            acc = ONE
            for v in m:
                acc = acc.meet(sigma.get(v) or Interval.var(v))
            out = out.join(acc)
        return out

    def value(self, val: typing.Mapping[int, float]) -> float:
        """Evaluate in a chain; missing variables are an error."""
        return max((min((val[v] for v in m), default=1) for m in self.meets), default=0)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        if self.is_one():
            return "1"
        parts = [" /\\ ".join(f"i{v}" for v in sorted(m)) for m in sorted(self.meets, key=sorted)]
        return " \\/ ".join(parts)


ZERO = Interval(frozenset())
ONE = Interval(frozenset({frozenset()}))


def normalize_interval(r: IntervalExpr, env: typing.Callable[[int], Interval] = Interval.var) -> Interval:
    match r:
        case IZero():
            return ZERO
        case IOne():
            return ONE
        case IVar(i):
            return env(i)
        case IMin(a, b):
            return normalize_interval(a, env).meet(normalize_interval(b, env))
        case IMax(a, b):
            return normalize_interval(a, env).join(normalize_interval(b, env))
    raise TypeError(f"not an interval expression: {r!r}")


def interval_expr(r: Interval) -> IntervalExpr:
    """Rebuild a canonical syntax tree (variables become IVar of the key)."""
    if r.is_zero():
        return IZero()
    out: typing.Optional[IntervalExpr] = None
    for m in sorted(r.meets, key=sorted):
        term: typing.Optional[IntervalExpr] = None
        for v in sorted(m):
            term = IVar(v) if term is None else IMin(term, IVar(v))
        term = IOne() if term is None else term
        out = term if out is None else IMax(out, term)
    assert out is not None
    return out


def eval_interval(r: IntervalExpr, val: typing.Mapping[int, int]) -> int:
    """Boolean value of a syntax tree under a {0,1} assignment."""
    match r:
        case IZero():
            return 0
        case IOne():
            return 1
        case IVar(i):
            if i not in val:
                raise KeyError(f"unbound interval variable {i}")
            return val[i]
        case IMin(a, b):
            return min(eval_interval(a, val), eval_interval(b, val))
        case IMax(a, b):
            return max(eval_interval(a, val), eval_interval(b, val))
    raise TypeError(f"not an interval expression: {r!r}")


# ---------------------------------------------------------------------------
# cofibration normal form


@dataclasses.dataclass(frozen=True)
class Face:
    """Conjunction of endpoint literals and atoms."""

    lits: frozenset  # of (var, 0|1)
    atoms: frozenset = frozenset()

    def assignment(self) -> dict[int, int]:
        return dict(self.lits)

    def le(self, other: "Face") -> bool:
        """True when self is implied by other (fewer constraints)."""
        return self.lits <= other.lits and self.atoms <= other.atoms

    def __repr__(self) -> str:
        parts = [f"i{v}={b}" for v, b in sorted(self.lits)] + [repr(a) for a in self.atoms]
        return " /\\ ".join(parts) if parts else "TT"


def _consistent(lits: frozenset) -> bool:
    seen: dict = {}
    for v, b in lits:
        if seen.setdefault(v, b) != b:
            return False
    return True


def _absorb_faces(faces: typing.Iterable[Face]) -> frozenset:
    fs = sorted(set(faces), key=lambda f: len(f.lits) + len(f.atoms))
    kept: list[Face] = []
    for f in fs:
        if not any(k.le(f) for k in kept):
            kept.append(f)
    return frozenset(kept)


@dataclasses.dataclass(frozen=True)
class Cof:
    """Disjunction of faces."""

    faces: frozenset

    def is_top(self) -> bool:
        return TOP_FACE in self.faces

    def is_bot(self) -> bool:
        return not self.faces

    def vars(self) -> frozenset:
        return frozenset(v for f in self.faces for v, _ in f.lits)

    def atoms(self) -> frozenset:
        return frozenset(a for f in self.faces for a in f.atoms)

    def meet(self, other: "Cof") -> "Cof":
        out = []
        for f in self.faces:
            for g in other.faces:
                lits = f.lits | g.lits
                if _consistent(lits):
                    out.append(Face(lits, f.atoms | g.atoms))
        return Cof(_absorb_faces(out))

    def join(self, other: "Cof") -> "Cof":
        return Cof(_absorb_faces(self.faces | other.faces))

    def subst(
        self,
        sigma: typing.Mapping[int, Interval],
        atom_map: typing.Optional[typing.Callable[[typing.Any], "Cof"]] = None,
    ) -> "Cof":
        """Substitute intervals for variables and (optionally) cofibrations for atoms."""
        if not (self.vars() & sigma.keys()) and atom_map is None:
            return self
        out = BOT
        for f in self.faces:
            acc = TOP
            for v, b in f.lits:
                r = sigma.get(v)
                if r is None:
                    acc = acc.meet(Cof(frozenset({Face(frozenset({(v, b)}))})))
                else:
                    acc = acc.meet(eq1(r) if b else eq0(r))
                if acc.is_bot():
                    break
            for a in f.atoms:
                acc = acc.meet(atom_map(a) if atom_map else atom(a))
            out = out.join(acc)
        return out

    def restrict(self, face: Face) -> "Cof":
        """Assume the literals and atoms of a face."""
        sigma = {v: (ONE if b else ZERO) for v, b in face.lits}
        return self.subst(sigma, (lambda a: TOP if a in face.atoms else atom(a)) if face.atoms else None)

    def holds(self, val: typing.Mapping[int, float], truth: typing.Mapping[typing.Any, bool]) -> bool:
        for f in self.faces:
            if all(val[v] == b for v, b in f.lits) and all(truth[a] for a in f.atoms):
                return True
        return False

    def __repr__(self) -> str:
        if self.is_bot():
            return "FF"
        return " \\/ ".join(sorted(f"({f!r})" if len(self.faces) > 1 else repr(f) for f in self.faces))


TOP_FACE = Face(frozenset())
TOP = Cof(frozenset({TOP_FACE}))
BOT = Cof(frozenset())


def eq1(r: Interval) -> Cof:
    """r = 1 holds when some meet has all its variables at 1."""
    return Cof(_absorb_faces(Face(frozenset((v, 1) for v in m)) for m in r.meets))


def eq0(r: Interval) -> Cof:
    """r = 0 holds when every meet has a variable at 0."""
    out = TOP
    for m in r.meets:
        out = out.meet(Cof(frozenset(Face(frozenset({(v, 0)})) for v in m)))
    return out


def atom(a: typing.Hashable) -> Cof:
    return Cof(frozenset({Face(frozenset(), frozenset({a}))}))


def eq_var(v: int, b: int) -> Cof:
    return Cof(frozenset({Face(frozenset({(v, b)}))}))


def normalize_cof(
    c: CofExpr,
    ienv: typing.Callable[[int], Interval] = Interval.var,
    atom_fn: typing.Callable[[typing.Any], Cof] = atom,
) -> Cof:
    match c:
        case CTop():
            return TOP
        case CBot():
            return BOT
        case EqZero(r):
            return eq0(normalize_interval(r, ienv))
        case EqOne(r):
            return eq1(normalize_interval(r, ienv))
        case CAnd(a, b):
            return normalize_cof(a, ienv, atom_fn).meet(normalize_cof(b, ienv, atom_fn))
        case COr(a, b):
            return normalize_cof(a, ienv, atom_fn).join(normalize_cof(b, ienv, atom_fn))
        case CAtom(a):
            return atom_fn(a)
    raise TypeError(f"not a cofibration expression: {c!r}")


def cof_expr(c: Cof) -> CofExpr:
    """Canonical syntax tree of a normal form."""
    out: typing.Optional[CofExpr] = None
    for f in sorted(c.faces, key=repr):
        term: typing.Optional[CofExpr] = None
        for v, b in sorted(f.lits):
            lit: CofExpr = EqOne(IVar(v)) if b else EqZero(IVar(v))
            term = lit if term is None else CAnd(term, lit)
        for a in sorted(f.atoms, key=repr):
            term = CAtom(a) if term is None else CAnd(term, CAtom(a))
        term = CTop() if term is None else term
        out = term if out is None else COr(out, term)
    return CBot() if out is None else out


# ---------------------------------------------------------------------------
# decision procedures


AtomOracle = typing.Callable[[typing.Any], typing.Optional[bool]]


def _decide_atoms(c: Cof, oracle: typing.Optional[AtomOracle]) -> Cof:
    if oracle is None or not c.atoms():
        return c

    def amap(a):
        t = oracle(a)
        return TOP if t is True else BOT if t is False else atom(a)

    return c.subst({}, amap)


def entails(assumptions: Cof, goal: Cof, atom_oracle: typing.Optional[AtomOracle] = None) -> bool:
    """Every face of the assumptions forces the goal.

    After restricting the goal to a face, it is valid exactly when it contains
    the empty face: send every remaining variable to the midpoint and every
    remaining atom to false to refute all other faces.
    """
    assumptions = _decide_atoms(assumptions, atom_oracle)
    goal = _decide_atoms(goal, atom_oracle)
    return all(goal.restrict(f).is_top() for f in assumptions.faces)


def equivalent(a: Cof, b: Cof) -> bool:
    return entails(a, b) and entails(b, a)


def restrict_cof(phi: Cof, i: int, r: Interval) -> Cof:
    return phi.subst({i: r})


def forall_i(phi: Cof, i: int) -> Cof:
    """Drop every face that mentions i."""
    return Cof(frozenset(f for f in phi.faces if all(v != i for v, _ in f.lits)))


# ---------------------------------------------------------------------------
# brute-force semantics over syntax trees (used as a test oracle)

# An interval variable ranges over the chain 0 < 1/2 < 1.  The midpoint stands
# for every interior point: it satisfies neither endpoint equation, which is
# what keeps (i = 0) \/ (i = 1) from being valid.
CHAIN = (0.0, 0.5, 1.0)


def _ival(r: IntervalExpr, val: typing.Mapping[int, float]) -> float:
    match r:
        case IZero():
            return 0.0
        case IOne():
            return 1.0
        case IVar(i):
            return val[i]
        case IMin(a, b):
            return min(_ival(a, val), _ival(b, val))
        case IMax(a, b):
            return max(_ival(a, val), _ival(b, val))
    raise TypeError(r)


def satisfies(c: CofExpr, val: typing.Mapping[int, float], truth: typing.Mapping[typing.Any, bool]) -> bool:
    match c:
        case CTop():
            return True
        case CBot():
            return False
        case EqZero(r):
            return _ival(r, val) == 0.0
        case EqOne(r):
            return _ival(r, val) == 1.0
        case CAnd(a, b):
            return satisfies(a, val, truth) and satisfies(b, val, truth)
        case COr(a, b):
            return satisfies(a, val, truth) or satisfies(b, val, truth)
        case CAtom(a):
            return truth[a]
    raise TypeError(c)


def brute_entails(
    hyp: CofExpr,
    goal: CofExpr,
    variables: typing.Sequence[int],
    atoms: typing.Sequence[typing.Hashable],
) -> bool:
    for pts in itertools.product(CHAIN, repeat=len(variables)):
        val = dict(zip(variables, pts))
        for bits in itertools.product((False, True), repeat=len(atoms)):
            truth = dict(zip(atoms, bits))
            if satisfies(hyp, val, truth) and not satisfies(goal, val, truth):
                return False
    return True
