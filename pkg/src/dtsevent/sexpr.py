"""S-expression syntax for terms.

Grammar::

    term  ::= ident                 bound variable, else constant
            | type | kind | Unit | unit
            | (var ident)           free variable
            | (pi (x term)+ term)   (sigma (x term)+ term)
            | (-> term term+)       (times term term*)
            | (lambda ident term)   (lambda (ident+) term)
            | (pair term term)      (pi1 term)   (pi2 term)
            | (@ N term)            @_N with the ascription of (@_N c)
            | (opaque ident term)   (hyp (x term) term)
            | (term term+)          application

    ident ::= [A-Za-z_][A-Za-z0-9_']*   (keywords excluded)

Comments start with ``;``. ``print_term`` is canonical and ``parse`` inverts it.
"""

from __future__ import annotations

import re

from .terms import (
    KIND, TYPE, UNIT, UNIT_VAL, App, AtOp, Const, Hyp, Lam, Opaque, Pair, Pi,
    Proj1, Proj2, Sigma, Sort, Term, Unit, UnitVal, Var, free_vars, fresh_name,
    spine,
)

KEYWORDS = frozenset({
    "pi", "sigma", "->", "times", "lambda", "pair", "pi1", "pi2", "@", "var",
    "opaque", "hyp", "type", "kind", "Unit", "unit", "declare", "assume",
})
IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_TOKEN = re.compile(r"\s+|;[^\n]*|(\()|(\))|([^\s();]+)")


class SexprError(ValueError):
    pass


def tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    line = 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok:
            out.append((tok, line))
        line += m.group(0).count("\n")
        pos = m.end()
    return out


def read(text: str) -> list:
    """Read all s-expressions: nested lists of atom strings."""
    toks = tokenize(text)
    pos = 0

    def one():
        nonlocal pos
        if pos >= len(toks):
            raise SexprError("unexpected end of input")
        tok, line = toks[pos]
        pos += 1
        if tok == ")":
            raise SexprError(f"line {line}: unexpected ')'")
        if tok != "(":
            return tok
        items = []
        while True:
            if pos >= len(toks):
                raise SexprError(f"line {line}: unclosed '('")
            if toks[pos][0] == ")":
                pos += 1
                return items
            items.append(one())

    forms = []
    while pos < len(toks):
        forms.append(one())
    return forms


def _ident(s) -> str:
    if not isinstance(s, str) or not IDENT.match(s) or s in KEYWORDS:
        raise SexprError(f"bad identifier {s!r}")
    return s


def to_term(sx, bound: frozenset[str] = frozenset()) -> Term:
    if isinstance(sx, str):
        match sx:
            case "type":
                return TYPE
            case "kind":
                return KIND
            case "Unit":
                return UNIT
            case "unit":
                return UNIT_VAL
        name = _ident(sx)
        return Var(name) if name in bound else Const(name)
    if not sx:
        raise SexprError("empty form")
    head, *rest = sx
    if head in ("pi", "sigma") and len(rest) >= 2:
        ctor = Pi if head == "pi" else Sigma
        *binds, body = rest
        return _binders(ctor, binds, body, bound)
    if head == "->" and len(rest) >= 2:
        out = to_term(rest[-1], bound)
        for a in reversed(rest[:-1]):
            out = Pi("_", to_term(a, bound), out)
        return out
    if head == "times":
        if not rest:
            return UNIT
        out = to_term(rest[-1], bound)
        for a in reversed(rest[:-1]):
            out = Sigma("_", to_term(a, bound), out)
        return out
    if head == "lambda" and len(rest) == 2:
        names = rest[0] if isinstance(rest[0], list) else [rest[0]]
        names = [_ident(n) for n in names]
        body = to_term(rest[1], bound | set(names))
        for n in reversed(names):
            body = Lam(n, body)
        return body
    if head == "pair" and len(rest) == 2:
        return Pair(to_term(rest[0], bound), to_term(rest[1], bound))
    if head == "pi1" and len(rest) == 1:
        return Proj1(to_term(rest[0], bound))
    if head == "pi2" and len(rest) == 1:
        return Proj2(to_term(rest[0], bound))
    if head == "@" and len(rest) == 2 and isinstance(rest[0], str) and rest[0].isdigit():
        return AtOp(int(rest[0]), to_term(rest[1], bound))
    if head == "var" and len(rest) == 1:
        return Var(_ident(rest[0]))
    if head == "opaque" and len(rest) == 2:
        return Opaque(_ident(rest[0]), to_term(rest[1], bound))
    if head == "hyp" and len(rest) == 2:
        return _binders(Hyp, [rest[0]], rest[1], bound)
    if isinstance(head, str) and head in KEYWORDS:
        raise SexprError(f"malformed {head!r} form")
    if len(sx) < 2:
        raise SexprError(f"application needs an argument: {sx!r}")
    out = to_term(head, bound)
    for a in rest:
        out = App(out, to_term(a, bound))
    return out


def _binders(ctor, binds, body, bound):
    scope = set(bound)
    parsed = []
    for b in binds:
        if not (isinstance(b, list) and len(b) == 2):
            raise SexprError(f"bad binder {b!r}")
        x = _ident(b[0])
        parsed.append((x, to_term(b[1], frozenset(scope))))
        scope.add(x)
    out = to_term(body, frozenset(scope))
    for x, a in reversed(parsed):
        out = ctor(x, a, out)
    return out


def parse(text: str) -> Term:
    forms = read(text)
    if len(forms) != 1:
        raise SexprError(f"expected one term, found {len(forms)}")
    return to_term(forms[0])


# -- printing -----------------------------------------------------------------

def _const_names(t: Term, acc: set[str]) -> set[str]:
    match t:
        case Const(name) | Opaque(name, _):
            acc.add(name)
    for s in _children(t):
        _const_names(s, acc)
    return acc


def _children(t):
    match t:
        case Pi(_, a, b) | Sigma(_, a, b) | Hyp(_, a, b) | App(a, b) | Pair(a, b):
            return (a, b)
        case Lam(_, b) | Proj1(b) | Proj2(b):
            return (b,)
        case AtOp(_, ty) | Opaque(_, ty):
            return (ty,)
    return ()


def print_term(t: Term) -> str:
    reserved = _const_names(t, set()) | set(free_vars(t)) | KEYWORDS
    return _pr(t, {}, frozenset(reserved))


_SCOPE = object()


def _enter(env: dict, x: str, y: str) -> dict:
    return {**env, x: y, _SCOPE: env.get(_SCOPE, frozenset()) | {y}}


def _bind(x: str, body: Term, env: dict, reserved) -> str:
    # every printed binder in scope, including shadowed ones, keeps printing stable
    used = reserved | env.get(_SCOPE, frozenset())
    if x == "_" or x in used or not IDENT.match(x):
        return fresh_name(x if IDENT.match(x) else "x", used)
    return x


def _pr(t: Term, env: dict[str, str], reserved) -> str:
    match t:
        case Var(name):
            return env[name] if name in env else f"(var {name})"
        case Const(name):
            return name
        case Sort(tag):
            return tag
        case Unit():
            return "Unit"
        case UnitVal():
            return "unit"
        case Opaque(name, ty):
            return f"(opaque {name} {_pr(ty, env, reserved)})"
        case AtOp(i, ty):
            return f"(@ {i} {_pr(ty, env, reserved)})"
        case Pair(a, b):
            return f"(pair {_pr(a, env, reserved)} {_pr(b, env, reserved)})"
        case Proj1(a):
            return f"(pi1 {_pr(a, env, reserved)})"
        case Proj2(a):
            return f"(pi2 {_pr(a, env, reserved)})"
        case Lam(x, b):
            y = _bind(x, b, env, reserved)
            return f"(lambda {y} {_pr(b, _enter(env, x, y), reserved)})"
        case Pi(x, a, b) | Sigma(x, a, b) if x not in free_vars(b):
            kw = "->" if isinstance(t, Pi) else "times"
            parts = [a]
            while isinstance(b, type(t)) and b.binder not in free_vars(b.second if isinstance(b, Sigma) else b.codomain):
                parts.append(b.domain if isinstance(b, Pi) else b.first)
                b = b.codomain if isinstance(b, Pi) else b.second
            parts.append(b)
            return f"({kw} {' '.join(_pr(p, env, reserved) for p in parts)})"
        case Pi(x, a, b) | Sigma(x, a, b) | Hyp(x, a, b):
            kw = {Pi: "pi", Sigma: "sigma", Hyp: "hyp"}[type(t)]
            y = _bind(x, b, env, reserved)
            return f"({kw} ({y} {_pr(a, env, reserved)}) {_pr(b, _enter(env, x, y), reserved)})"
        case App():
            head, args = spine(t)
            return "(" + " ".join(_pr(s, env, reserved) for s in (head, *args)) + ")"
    raise TypeError(f"not a term: {t!r}")
