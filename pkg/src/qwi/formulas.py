"""Formula ASTs for the two logics, with parsing, printing, substitution,
and macro expansion.

Monadic second-order formulas over (ℚ,<) use lowercase point variables and
uppercase set variables; set quantification is over finite sets only.  The
group language is first-order with terms built from `*`, `^-1` and the
identity constant `1`, and a fixed signature of named atoms.  Connectives
are shared between the two ASTs; quantifier nodes are per-language.

Concrete syntax (tightest to loosest: ~, &, |, ->, <->; quantifiers are
prefixes extending to the end of the current subformula):
    Ax Ey (x < y)          EX Ax (x in X)
    Ez (disj(x,z) & y = x*z)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import count
from typing import Optional, Union


class FormulaError(ValueError):
    pass


# ---------------------------------------------------------------------------
# AST nodes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Less:
    x: str
    y: str


@dataclass(frozen=True)
class EqPt:
    x: str
    y: str


@dataclass(frozen=True)
class Mem:
    x: str
    X: str


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    a: "Formula"
    b: "Formula"


@dataclass(frozen=True)
class Or:
    a: "Formula"
    b: "Formula"


@dataclass(frozen=True)
class Implies:
    a: "Formula"
    b: "Formula"


@dataclass(frozen=True)
class Iff:
    a: "Formula"
    b: "Formula"


@dataclass(frozen=True)
class ExistsPt:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ForallPt:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ExistsSet:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ForallSet:
    var: str
    body: "Formula"


# group terms
@dataclass(frozen=True)
class GVar:
    name: str


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Mul:
    t: "Term"
    u: "Term"


@dataclass(frozen=True)
class Inv:
    t: "Term"


Term = Union[GVar, One, Mul, Inv]


@dataclass(frozen=True)
class TermEq:
    t: Term
    u: Term


@dataclass(frozen=True)
class GAtom:
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[
    Less, EqPt, Mem, Not, And, Or, Implies, Iff,
    ExistsPt, ForallPt, ExistsSet, ForallSet,
    TermEq, GAtom, Exists, Forall,
]

ATOM_ARITY = {
    "comp": 1, "bump": 1, "coterm": 1, "cof": 1, "inf": 1,
    "rational": 1, "finrational": 1,
    "apart": 2, "orbital": 2, "disj": 2, "restr": 2, "cont": 2,
    "codesame": 2, "oppsupport": 2, "gauge": 2, "sameset": 2,
}

_QUANTS = (ExistsPt, ForallPt, ExistsSet, ForallSet, Exists, Forall)
_BINARY = (And, Or, Implies, Iff)


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------

def qdepth(phi: Formula) -> int:
    if isinstance(phi, _QUANTS):
        return 1 + qdepth(phi.body)
    if isinstance(phi, Not):
        return qdepth(phi.sub)
    if isinstance(phi, _BINARY):
        return max(qdepth(phi.a), qdepth(phi.b))
    return 0


def term_vars(t: Term) -> set[str]:
    if isinstance(t, GVar):
        return {t.name}
    if isinstance(t, Mul):
        return term_vars(t.t) | term_vars(t.u)
    if isinstance(t, Inv):
        return term_vars(t.t)
    return set()


def free_vars(phi: Formula) -> set[str]:
    if isinstance(phi, Less) or isinstance(phi, EqPt):
        return {phi.x, phi.y}
    if isinstance(phi, Mem):
        return {phi.x, phi.X}
    if isinstance(phi, TermEq):
        return term_vars(phi.t) | term_vars(phi.u)
    if isinstance(phi, GAtom):
        out: set[str] = set()
        for a in phi.args:
            out |= term_vars(a)
        return out
    if isinstance(phi, Not):
        return free_vars(phi.sub)
    if isinstance(phi, _BINARY):
        return free_vars(phi.a) | free_vars(phi.b)
    if isinstance(phi, _QUANTS):
        return free_vars(phi.body) - {phi.var}
    raise FormulaError(f"unknown node {phi!r}")


_FRESH = count()


def fresh_var(base: str) -> str:
    return f"{base}_{next(_FRESH)}"


def _subst_term(t: Term, mapping: dict[str, Term]) -> Term:
    if isinstance(t, GVar):
        return mapping.get(t.name, t)
    if isinstance(t, Mul):
        return Mul(_subst_term(t.t, mapping), _subst_term(t.u, mapping))
    if isinstance(t, Inv):
        return Inv(_subst_term(t.t, mapping))
    return t


def substitute(phi: Formula, mapping: dict[str, Union[str, Term]]) -> Formula:
    """Capture-avoiding substitution.  Point/set variables map to variable
    names; group variables may map to arbitrary terms."""
    mapping = {k: v for k, v in mapping.items()}

    def var_image(v: str) -> str:
        img = mapping.get(v, v)
        if isinstance(img, GVar):
            return img.name
        if not isinstance(img, str):
            raise FormulaError(f"variable position needs a variable, got {img!r}")
        return img

    def term_mapping() -> dict[str, Term]:
        out: dict[str, Term] = {}
        for k, v in mapping.items():
            out[k] = GVar(v) if isinstance(v, str) else v
        return out

    def img_vars() -> set[str]:
        out: set[str] = set()
        for v in mapping.values():
            out |= {v} if isinstance(v, str) else term_vars(v)
        return out

    if isinstance(phi, Less):
        return Less(var_image(phi.x), var_image(phi.y))
    if isinstance(phi, EqPt):
        return EqPt(var_image(phi.x), var_image(phi.y))
    if isinstance(phi, Mem):
        return Mem(var_image(phi.x), var_image(phi.X))
    if isinstance(phi, TermEq):
        tm = term_mapping()
        return TermEq(_subst_term(phi.t, tm), _subst_term(phi.u, tm))
    if isinstance(phi, GAtom):
        tm = term_mapping()
        return GAtom(phi.name, tuple(_subst_term(a, tm) for a in phi.args))
    if isinstance(phi, Not):
        return Not(substitute(phi.sub, mapping))
    if isinstance(phi, _BINARY):
        return type(phi)(substitute(phi.a, mapping), substitute(phi.b, mapping))
    if isinstance(phi, _QUANTS):
        sub_map = {k: v for k, v in mapping.items() if k != phi.var}
        if not sub_map:
            return type(phi)(phi.var, phi.body)
        clash: set[str] = set()
        for v in sub_map.values():
            clash |= {v} if isinstance(v, str) else term_vars(v)
        var, body = phi.var, phi.body
        if var in clash:
            nv = fresh_var(var)
            body = substitute(body, {var: nv})
            var = nv
        return type(phi)(var, substitute(body, sub_map))
    raise FormulaError(f"unknown node {phi!r}")


def alpha_rename(phi: Formula, old: str, new: str) -> Formula:
    """Rename the outermost binder of `old` to `new` (capture-avoiding)."""
    if isinstance(phi, _QUANTS) and phi.var == old:
        return type(phi)(new, substitute(phi.body, {old: new}))
    if isinstance(phi, _QUANTS):
        return type(phi)(phi.var, alpha_rename(phi.body, old, new))
    if isinstance(phi, Not):
        return Not(alpha_rename(phi.sub, old, new))
    if isinstance(phi, _BINARY):
        return type(phi)(alpha_rename(phi.a, old, new), alpha_rename(phi.b, old, new))
    return phi


# ---------------------------------------------------------------------------
# tokenizer and parsers
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<sym><->|->|\^-1|[()<=*&|~,]|1)|(?P<id>[A-Za-z][A-Za-z0-9_']*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise FormulaError(f"bad character at position {pos}: {text[pos:pos+10]!r}")
        if m.group("sym"):
            out.append(("sym", m.group("sym"), m.start()))
        else:
            out.append(("id", m.group("id"), m.start()))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, lang: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.lang = lang  # "wmso" | "group"

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> tuple[str, str, int]:
        t = self.peek()
        if t is None:
            raise FormulaError(f"unexpected end of formula: {self.text!r}")
        self.i += 1
        return t

    def expect(self, val: str):
        t = self.next()
        if t[1] != val:
            raise FormulaError(
                f"expected {val!r} at position {t[2]} in {self.text!r}, got {t[1]!r}"
            )

    # formula := quantified | iff
    def formula(self) -> Formula:
        t = self.peek()
        if t and t[0] == "id" and len(t[1]) >= 2 and t[1][0] in "AE" and t[1] != "in":
            kind, name, _ = self.next()
            q, var = t[1][0], t[1][1:]
            body = self.formula()
            return self._make_quant(q, var, body)
        return self.iff()

    def _make_quant(self, q: str, var: str, body: Formula) -> Formula:
        if self.lang == "group":
            if not var[0].islower():
                raise FormulaError(f"group variables are lowercase: {var!r}")
            return (Exists if q == "E" else Forall)(var, body)
        if var[0].isupper():
            return (ExistsSet if q == "E" else ForallSet)(var, body)
        return (ExistsPt if q == "E" else ForallPt)(var, body)

    def iff(self) -> Formula:
        a = self.implies()
        if self.peek() and self.peek()[1] == "<->":
            self.next()
            return Iff(a, self.iff())
        return a

    def implies(self) -> Formula:
        a = self.disj()
        if self.peek() and self.peek()[1] == "->":
            self.next()
            return Implies(a, self.implies())
        return a

    def disj(self) -> Formula:
        a = self.conj()
        while self.peek() and self.peek()[1] == "|":
            self.next()
            a = Or(a, self.conj())
        return a

    def conj(self) -> Formula:
        a = self.unary()
        while self.peek() and self.peek()[1] == "&":
            self.next()
            a = And(a, self.unary())
        return a

    def unary(self) -> Formula:
        t = self.peek()
        if t and t[1] == "~":
            self.next()
            return Not(self.unary())
        if t and t[0] == "id" and len(t[1]) >= 2 and t[1][0] in "AE" and t[1] != "in":
            return self.formula()
        if t and t[1] == "(":
            save = self.i
            self.next()
            try:
                inner = self.formula()
                self.expect(")")
                return inner
            except FormulaError:
                if self.lang == "group":
                    self.i = save  # may be a parenthesized term, retry as atom
                else:
                    raise
        return self.atom()

    def atom(self) -> Formula:
        if self.lang == "wmso":
            return self._wmso_atom()
        return self._group_atom()

    def _wmso_atom(self) -> Formula:
        t = self.next()
        if t[0] != "id":
            raise FormulaError(f"expected a variable at position {t[2]} in {self.text!r}")
        x = t[1]
        op = self.next()
        if op[1] == "<":
            y = self._pt_var()
            self._require_pt(x, op[2])
            return Less(x, y)
        if op[1] == "=":
            y = self._pt_var()
            self._require_pt(x, op[2])
            return EqPt(x, y)
        if op[1] == "in":
            self._require_pt(x, op[2])
            Y = self.next()
            if Y[0] != "id" or not Y[1][0].isupper():
                raise FormulaError(
                    f"membership needs a set variable at position {Y[2]}, got {Y[1]!r}"
                )
            return Mem(x, Y[1])
        raise FormulaError(f"expected <, = or in at position {op[2]} in {self.text!r}")

    def _pt_var(self) -> str:
        t = self.next()
        if t[0] != "id" or t[1] == "in":
            raise FormulaError(f"expected a variable at position {t[2]}")
        self._require_pt(t[1], t[2])
        return t[1]

    def _require_pt(self, v: str, pos: int):
        if v[0].isupper():
            raise FormulaError(
                f"sort mismatch at position {pos}: {v!r} is a set variable"
            )

    def _group_atom(self) -> Formula:
        t = self.peek()
        if t and t[0] == "id" and t[1] in ATOM_ARITY:
            nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
            if nxt and nxt[1] == "(":
                self.next()
                self.next()
                args = [self.term()]
                while self.peek() and self.peek()[1] == ",":
                    self.next()
                    args.append(self.term())
                self.expect(")")
                if len(args) != ATOM_ARITY[t[1]]:
                    raise FormulaError(
                        f"{t[1]} takes {ATOM_ARITY[t[1]]} argument(s), got {len(args)}"
                    )
                return GAtom(t[1], tuple(args))
        lhs = self.term()
        self.expect("=")
        rhs = self.term()
        return TermEq(lhs, rhs)

    # term := factor {'*' factor}; factor := primary ['^-1']*
    def term(self) -> Term:
        t = self.factor()
        while self.peek() and self.peek()[1] == "*":
            self.next()
            t = Mul(t, self.factor())
        return t

    def factor(self) -> Term:
        t = self.primary()
        while self.peek() and self.peek()[1] == "^-1":
            self.next()
            t = Inv(t)
        return t

    def primary(self) -> Term:
        t = self.next()
        if t[1] == "1":
            return One()
        if t[1] == "(":
            inner = self.term()
            self.expect(")")
            return inner
        if t[0] == "id":
            if not t[1][0].islower():
                raise FormulaError(
                    f"sort mismatch at position {t[2]}: group terms use lowercase variables"
                )
            if t[1] == "in":
                raise FormulaError(f"unexpected 'in' at position {t[2]}")
            return GVar(t[1])
        raise FormulaError(f"unexpected {t[1]!r} at position {t[2]} in {self.text!r}")

    def done(self):
        t = self.peek()
        if t is not None:
            raise FormulaError(
                f"trailing input at position {t[2]} in {self.text!r}: {t[1]!r}"
            )


def parse_wmso(text: str) -> Formula:
    p = _Parser(text, "wmso")
    out = p.formula()
    p.done()
    return out


def parse_group(text: str) -> Formula:
    p = _Parser(text, "group")
    out = p.formula()
    p.done()
    return out


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def print_term(t: Term) -> str:
    if isinstance(t, GVar):
        return t.name
    if isinstance(t, One):
        return "1"
    if isinstance(t, Inv):
        inner = print_term(t.t)
        if isinstance(t.t, Mul):
            inner = f"({inner})"
        return f"{inner}^-1"
    if isinstance(t, Mul):
        left = print_term(t.t)
        if isinstance(t.t, Mul):
            left = f"({left})"
        right = print_term(t.u)
        if isinstance(t.u, Mul):
            right = f"({right})"
        return f"{left}*{right}"
    raise FormulaError(f"unknown term {t!r}")


def _print(phi: Formula) -> str:
    if isinstance(phi, Less):
        return f"{phi.x} < {phi.y}"
    if isinstance(phi, EqPt):
        return f"{phi.x} = {phi.y}"
    if isinstance(phi, Mem):
        return f"{phi.x} in {phi.X}"
    if isinstance(phi, TermEq):
        return f"{print_term(phi.t)} = {print_term(phi.u)}"
    if isinstance(phi, GAtom):
        return f"{phi.name}({','.join(print_term(a) for a in phi.args)})"
    if isinstance(phi, Not):
        return f"~{_wrap(phi.sub)}"
    if isinstance(phi, And):
        return f"({_side(phi.a)} & {_side(phi.b)})"
    if isinstance(phi, Or):
        return f"({_side(phi.a)} | {_side(phi.b)})"
    if isinstance(phi, Implies):
        return f"({_side(phi.a)} -> {_side(phi.b)})"
    if isinstance(phi, Iff):
        return f"({_side(phi.a)} <-> {_side(phi.b)})"
    if isinstance(phi, (ExistsPt, ExistsSet, Exists)):
        return f"E{phi.var} {_wrap(phi.body)}"
    if isinstance(phi, (ForallPt, ForallSet, Forall)):
        return f"A{phi.var} {_wrap(phi.body)}"
    raise FormulaError(f"unknown node {phi!r}")


def _wrap(phi: Formula) -> str:
    s = _print(phi)
    if isinstance(phi, _BINARY):
        return s  # already parenthesized
    if isinstance(phi, (Less, EqPt, Mem, TermEq, *_QUANTS)):
        return f"({s})"
    return s


def _side(phi: Formula) -> str:
    # a prefix quantifier (possibly under ~) would capture the connective
    # that follows; parenthesize it
    core = phi
    while isinstance(core, Not):
        core = core.sub
    s = _print(phi)
    return f"({s})" if isinstance(core, _QUANTS) else s


def print_wmso(phi: Formula) -> str:
    return _print(phi)


def print_group(phi: Formula) -> str:
    return _print(phi)


# ---------------------------------------------------------------------------
# macro table and expansion
# ---------------------------------------------------------------------------

def _schema(params: list[str], text: str) -> tuple[list[str], Formula]:
    return params, parse_group(text)


#: Defining schemas for the atoms that have them.  The remaining atoms
#: (comp, apart, bump, orbital, disj, gauge, codesame, rational) are
#: primitive from the expansion's point of view.
MACROS: dict[str, tuple[list[str], Formula]] = {
    "restr": _schema(["x", "y"], "Ez (disj(x,z) & y = x*z)"),
    "cont": _schema(["x", "y"], "Az (disj(y,z) -> disj(x,z))"),
    "coterm": _schema(["x"], "bump(x) & Az (~(z = 1) -> ~disj(x,z))"),
    "cof": _schema(["x"], "bump(x) & ~coterm(x) & Aw ~disj(x, w*x*w^-1)"),
    "oppsupport": _schema(
        ["x", "y"],
        "cof(x) & cof(y) & disj(x,y) & Az (~(z = 1) -> ~(disj(x,z) & disj(y,z)))",
    ),
    "inf": _schema(
        ["x"],
        "Ey Ey1 Ey2 Ew (restr(y,x) & orbital(y1,y) & y = y1*y2 & y2 = w*y*w^-1)",
    ),
    "finrational": _schema(
        ["x"],
        "comp(x) & ~inf(x) & Ay (disj(x,y) -> y = 1)"
        " & Ay Az ((oppsupport(y,z) & cont(x, y*z)) -> rational(y))",
    ),
    "sameset": _schema(
        ["x", "y"], "finrational(x) & finrational(y) & cont(x,y) & cont(y,x)"
    ),
}


def _instantiate(name: str, args: tuple[Term, ...]) -> Formula:
    params, body = MACROS[name]
    # refresh every bound variable of the schema, then plug in the arguments
    refreshed = _refresh_bound(body)
    return substitute(refreshed, dict(zip(params, args)))


def _refresh_bound(phi: Formula) -> Formula:
    if isinstance(phi, _QUANTS):
        nv = fresh_var(phi.var)
        return type(phi)(nv, _refresh_bound(substitute(phi.body, {phi.var: nv})))
    if isinstance(phi, Not):
        return Not(_refresh_bound(phi.sub))
    if isinstance(phi, _BINARY):
        return type(phi)(_refresh_bound(phi.a), _refresh_bound(phi.b))
    return phi


def expand(phi: Formula, depth: int) -> Formula:
    """Replace defined atoms by their schemas, `depth` times."""
    for _ in range(depth):
        phi, changed = _expand_once(phi)
        if not changed:
            break
    return phi


def _expand_once(phi: Formula) -> tuple[Formula, bool]:
    if isinstance(phi, GAtom) and phi.name in MACROS:
        return _instantiate(phi.name, phi.args), True
    if isinstance(phi, Not):
        s, ch = _expand_once(phi.sub)
        return Not(s), ch
    if isinstance(phi, _BINARY):
        a, ca = _expand_once(phi.a)
        b, cb = _expand_once(phi.b)
        return type(phi)(a, b), ca or cb
    if isinstance(phi, _QUANTS):
        b, ch = _expand_once(phi.body)
        return type(phi)(phi.var, b), ch
    return phi, False
