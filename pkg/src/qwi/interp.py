"""Interpretation of the monadic second-order theory of (ℚ,<) in the
first-order theory of its automorphism group.

Rationals are coded by cofinal bumps (the finite support endpoint is the
value; the two one-sided codings of the same value are identified by
codesame), finite sets by positive dense-support elements whose fixed-point
set is the value.  `translate` compiles a formula structurally; the order
atom needs an orientation parameter p — the group cannot distinguish (ℚ,<)
from (ℚ,>), so the compiled sentence is prefixed ∃p(cof(p) ∧ …) and x < y
becomes strict support containment between codesame-representatives lying
on p's side.  `pullback_eval` evaluates compiled formulas by letting the
coded quantifiers range over encodings of the same candidate families the
direct evaluator uses, with every atom decided by the semantic oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .numbers import NEG_INF, POS_INF, QInterval, is_finite
from .plmap import PLMap
from .formulas import (
    And, EqPt, Exists, ExistsPt, ExistsSet, Forall, ForallPt, ForallSet,
    Formula, GAtom, GVar, Iff, Implies, Inv, Less, Mem, Mul,
    Not, One, Or, Term, TermEq, fresh_var, free_vars, parse_group, substitute,
)
from .generators import make_bump
from . import predicates as P
from .wmso import Assignment, decide, point_candidates, set_candidates

_BINARY = (And, Or, Implies, Iff)


class InterpError(ValueError):
    pass


# ---------------------------------------------------------------------------
# encodings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Encoding:
    kind: str                # "point" | "finset"
    value: Union[Fraction, tuple[Fraction, ...]]
    element: PLMap
    side: Optional[str] = None  # "left" | "right" for points


def encode_rational(q: Fraction, side: str = "right") -> PLMap:
    q = Fraction(q)
    if side == "right":
        return PLMap((q,), ((Fraction(1), Fraction(0)), (Fraction(2), -q)))
    if side == "left":
        return PLMap((q,), ((Fraction(1, 2), q / 2), (Fraction(1), Fraction(0))))
    raise InterpError(f"side must be left or right, got {side!r}")


def _set_encoder(points, below: Fraction, rise: Fraction, above: Fraction,
                 empty_shift: Fraction) -> PLMap:
    """Positive element fixing exactly `points`: a slope-`below` ray, one
    bump per gap with first slope `rise`, and a slope-`above` ray."""
    pts = sorted(set(Fraction(a) for a in points))
    if not pts:
        return PLMap.translation(empty_shift)
    cuts = [pts[0]]
    slopes = [below]
    for a, b in zip(pts, pts[1:]):
        d = b - a
        mid = a + d / (rise + 1)          # rise * (mid - a) + fall * (b - mid) = d
        fall = (b - a - rise * (mid - a)) / (b - mid)
        cuts.extend([mid, b])
        slopes.extend([rise, fall])
    slopes.append(above)
    return PLMap.from_slopes(pts[0], pts[0], cuts, slopes)


def encode_finite_set(S) -> PLMap:
    """Fixed set exactly S: x/2-style ray below, three-piece bumps with
    slopes 2 then 1/2 on each gap, doubling ray above; ∅ ↦ x+1."""
    return _set_encoder(S, Fraction(1, 2), Fraction(2), Fraction(2), Fraction(1))


def encode_finite_set_alt(S) -> PLMap:
    """Second, independent encoder (different germ slopes) for
    representation-independence checks."""
    return _set_encoder(S, Fraction(1, 3), Fraction(3), Fraction(3), Fraction(2))


def decode(f: PLMap) -> Union[Fraction, tuple[Fraction, ...]]:
    if P.rational_sem(f):
        return P.cof_endpoint(f)
    if P.finrational_sem(f):
        return P.fixed_point_set(f)
    raise InterpError("element encodes neither a rational nor a finite set")


def point_encoding(q: Fraction, side: str = "right") -> Encoding:
    return Encoding("point", Fraction(q), encode_rational(q, side), side)


def finset_encoding(S, alt: bool = False) -> Encoding:
    enc = encode_finite_set_alt if alt else encode_finite_set
    return Encoding("finset", tuple(sorted(set(map(Fraction, S)))), enc(S))


# ---------------------------------------------------------------------------
# translation
# ---------------------------------------------------------------------------

ORIENTATION_VAR = "p"

_LESS_PARAMS = ["lhs", "rhs", "ori"]
_LESS_BODY = parse_group(
    "Elf Elg (codesame(lf,lhs) & codesame(lg,rhs)"
    " & (cont(lf,ori) | cont(ori,lf)) & (cont(lg,ori) | cont(ori,lg))"
    " & cont(lg,lf) & ~codesame(lf,lg))"
)


def less_formula() -> Formula:
    """The order schema: x < y iff some codesame-representatives on the
    orientation parameter's side are in strict support containment."""
    return _LESS_BODY


def _pt_var(x: str) -> str:
    return f"f_{x}"


def _set_var(X: str) -> str:
    return f"g_{X}"


def translate(phi: Formula) -> Formula:
    """Compile a closed order-formula to the group language."""
    if free_vars(phi):
        raise InterpError(f"translate expects a sentence, got free {sorted(free_vars(phi))}")
    body = _tr(phi)
    return Exists(
        ORIENTATION_VAR,
        And(GAtom("cof", (GVar(ORIENTATION_VAR),)), body),
    )


def _tr(phi: Formula) -> Formula:
    if isinstance(phi, Less):
        inst = substitute(
            _refresh(less_formula()),
            {
                "lhs": GVar(_pt_var(phi.x)),
                "rhs": GVar(_pt_var(phi.y)),
                "ori": GVar(ORIENTATION_VAR),
            },
        )
        return inst
    if isinstance(phi, EqPt):
        return GAtom("codesame", (GVar(_pt_var(phi.x)), GVar(_pt_var(phi.y))))
    if isinstance(phi, Mem):
        w = fresh_var("fm")
        fx = GVar(_pt_var(phi.x))
        return Exists(
            w,
            And(
                GAtom("oppsupport", (fx, GVar(w))),
                GAtom("cont", (GVar(_set_var(phi.X)), Mul(fx, GVar(w)))),
            ),
        )
    if isinstance(phi, Not):
        return Not(_tr(phi.sub))
    if isinstance(phi, _BINARY):
        return type(phi)(_tr(phi.a), _tr(phi.b))
    if isinstance(phi, ExistsPt):
        v = _pt_var(phi.var)
        return Exists(v, And(GAtom("rational", (GVar(v),)), _tr(phi.body)))
    if isinstance(phi, ForallPt):
        v = _pt_var(phi.var)
        return Forall(v, Implies(GAtom("rational", (GVar(v),)), _tr(phi.body)))
    if isinstance(phi, ExistsSet):
        v = _set_var(phi.var)
        return Exists(v, And(GAtom("finrational", (GVar(v),)), _tr(phi.body)))
    if isinstance(phi, ForallSet):
        v = _set_var(phi.var)
        return Forall(v, Implies(GAtom("finrational", (GVar(v),)), _tr(phi.body)))
    raise InterpError(f"not an order-structure formula: {phi!r}")


def _refresh(phi: Formula) -> Formula:
    from .formulas import _refresh_bound
    return _refresh_bound(phi)


# ---------------------------------------------------------------------------
# the order oracle
# ---------------------------------------------------------------------------

def less_p(f: PLMap, g: PLMap, p: PLMap) -> bool:
    """endpoint(f) < endpoint(g), with "less" read in the orientation for
    which p's unbounded side is rightward."""
    if not (P.rational_sem(f) and P.rational_sem(g)):
        raise InterpError("less_p needs two rational-coding elements")
    if not P.cof_sem(p):
        raise InterpError("orientation parameter must be cofinal")
    (ivp, _), = p.signed_support()
    rightward = is_finite(ivp.lo)
    a, b = P.cof_endpoint(f), P.cof_endpoint(g)
    return a < b if rightward else b < a


# ---------------------------------------------------------------------------
# pull-back evaluation
# ---------------------------------------------------------------------------

def _conjuncts(phi: Formula) -> list[Formula]:
    if isinstance(phi, And):
        return _conjuncts(phi.a) + _conjuncts(phi.b)
    return [phi]


def _coded_depth(phi: Formula) -> int:
    """Nesting depth of the rational/finrational-coded quantifiers."""
    if isinstance(phi, (Exists, Forall)):
        body = phi.body
        inner = body.b if isinstance(body, (And, Implies)) else body
        guard = body.a if isinstance(body, (And, Implies)) else None
        coded = (
            isinstance(guard, GAtom)
            and guard.name in ("rational", "finrational", "cof")
            and guard.args == (GVar(phi.var),)
        )
        return (1 if coded and guard.name != "cof" else 0) + _coded_depth(inner if coded else body)
    if isinstance(phi, Not):
        return _coded_depth(phi.sub)
    if isinstance(phi, _BINARY):
        return max(_coded_depth(phi.a), _coded_depth(phi.b))
    return 0


class _Pullback:
    def __init__(self, cap: int, orientation: Optional[str]):
        self.cap = cap
        self.orientation = orientation
        self.env: dict[str, PLMap] = {}
        self.points: dict[str, Fraction] = {}
        self.sets: dict[str, tuple[Fraction, ...]] = {}

    def assignment(self) -> Assignment:
        return Assignment(dict(self.points), dict(self.sets))

    def term(self, t: Term) -> PLMap:
        if isinstance(t, GVar):
            if t.name not in self.env:
                raise InterpError(f"unbound group variable {t.name}")
            return self.env[t.name]
        if isinstance(t, One):
            return PLMap.identity()
        if isinstance(t, Mul):
            return self.term(t.t).compose(self.term(t.u))
        if isinstance(t, Inv):
            return self.term(t.t).inverse()
        raise InterpError(f"bad term {t!r}")

    def atom(self, phi: Formula) -> bool:
        if isinstance(phi, TermEq):
            return self.term(phi.t) == self.term(phi.u)
        assert isinstance(phi, GAtom)
        args = [self.term(a) for a in phi.args]
        oracle = {
            "comp": P.comp_sem, "apart": P.apart_sem, "bump": P.bump_sem,
            "orbital": P.orbital_sem, "disj": P.disj_sem, "restr": P.restr_sem,
            "cont": P.cont_sem, "coterm": P.coterm_sem, "cof": P.cof_sem,
            "codesame": P.codesame_sem, "oppsupport": P.oppsupport_sem,
            "rational": P.rational_sem, "finrational": P.finrational_sem,
            "sameset": P.sameset_sem,
        }.get(phi.name)
        if oracle is None:
            raise InterpError(f"atom {phi.name} is outside the translated fragment")
        return oracle(*args)

    def run(self, phi: Formula) -> bool:
        if isinstance(phi, (TermEq, GAtom)):
            return self.atom(phi)
        if isinstance(phi, Not):
            return not self.run(phi.sub)
        if isinstance(phi, And):
            return self.run(phi.a) and self.run(phi.b)
        if isinstance(phi, Or):
            return self.run(phi.a) or self.run(phi.b)
        if isinstance(phi, Implies):
            return (not self.run(phi.a)) or self.run(phi.b)
        if isinstance(phi, Iff):
            return self.run(phi.a) == self.run(phi.b)
        if isinstance(phi, (Exists, Forall)):
            return self.quant(phi)
        raise InterpError(f"node outside the translated fragment: {phi!r}")

    def quant(self, phi: Union[Exists, Forall]) -> bool:
        want = isinstance(phi, Exists)
        v = phi.var
        body = phi.body
        guard_host = body.a if isinstance(body, (And, Implies)) else body
        ok_shape = (want and isinstance(body, And)) or (not want and isinstance(body, Implies))
        guards = _conjuncts(guard_host) if ok_shape else []

        # orientation prefix ∃p(cof(p) ∧ …)
        if want and any(
            g == GAtom("cof", (GVar(v),)) for g in guards
        ):
            sides = {"right": [QInterval(Fraction(0), POS_INF)],
                     "left": [QInterval(NEG_INF, Fraction(0))]}
            ivs = sides[self.orientation] if self.orientation else (
                sides["right"] + sides["left"]
            )
            return self._try(phi, v, [make_bump(iv) for iv in ivs], want,
                             track=None)
        for g in guards:
            if g == GAtom("rational", (GVar(v),)):
                cands = [
                    (q, encode_rational(q, "right"))
                    for q in point_candidates(self.assignment())
                ]
                return self._try(phi, v, cands, want, track="point")
            if g == GAtom("finrational", (GVar(v),)):
                cands = [
                    (s, encode_finite_set(s))
                    for s in set_candidates(self.assignment(), self.cap)
                ]
                return self._try(phi, v, cands, want, track="set")
        # derived existentials: membership witness and order representatives
        # (their guards may sit under further nested existentials)
        inner = body
        while isinstance(inner, Exists):
            inner = inner.body
        for g in _conjuncts(inner) if isinstance(inner, And) else []:
            if (
                isinstance(g, GAtom) and g.name == "oppsupport"
                and len(g.args) == 2 and g.args[1] == GVar(v)
            ):
                f = self.term(g.args[0])
                cands = [self._mirror(f)]
                return self._try(phi, v, cands, want, track=None)
            if (
                isinstance(g, GAtom) and g.name == "codesame"
                and g.args[0] == GVar(v)
            ):
                f = self.term(g.args[1])
                q = P.cof_endpoint(f)
                cands = [encode_rational(q, "right"), encode_rational(q, "left")]
                return self._try(phi, v, cands, want, track=None)
        raise InterpError(
            f"quantifier over {v} lacks a recognized coding guard "
            f"(outside the translated fragment)"
        )

    @staticmethod
    def _mirror(f: PLMap) -> PLMap:
        (iv, _), = f.signed_support()
        q = P.cof_endpoint(f)
        if is_finite(iv.lo):
            return make_bump(QInterval(NEG_INF, q))
        return make_bump(QInterval(q, POS_INF))

    def _try(self, phi, v, cands, want: bool, track: Optional[str]) -> bool:
        for cand in cands:
            if track is None:
                val, elem = None, cand
            else:
                val, elem = cand
            self.env[v] = elem
            if track == "point":
                self.points[v] = val
            elif track == "set":
                self.sets[v] = tuple(val)
            try:
                if self.run(phi.body) == want:
                    return want
            finally:
                self.env.pop(v, None)
                self.points.pop(v, None)
                self.sets.pop(v, None)
        return not want


def pullback_eval(psi: Formula, cap: Optional[int] = None,
                  orientation: Optional[str] = None) -> bool:
    """Evaluate a compiled sentence over coded candidates.

    With orientation=None the ∃p prefix ranges over both sides; fixing
    "left"/"right" pins the parameter for robustness experiments.
    """
    if free_vars(psi):
        raise InterpError(f"compiled sentence has free variables {sorted(free_vars(psi))}")
    if cap is None:
        cap = max(_coded_depth(psi), 1)
    return _Pullback(cap, orientation).run(psi)


def roundtrip_check(phi: Formula, cap: Optional[int] = None) -> bool:
    """decide(φ) versus pullback_eval(translate(φ)) — true iff they agree."""
    direct = decide(phi)
    compiled = translate(phi)
    return direct == pullback_eval(compiled, cap=cap)
