"""First-order event-semantics formulas and the translation from Σ/Π types.

Under the Curry-Howard reading a dependent pair over ``entity`` or ``event`` is
an existential and a non-dependent pair is a conjunction; Π-types become
universals or implications. Pairs of pairs are flattened first so that
projections inside predicates become plain variables.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass

from .reduce import normalize
from .signature import ENTITY, EVENT
from .terms import (
    UNIT_VAL, Const, Pair, Pi, Sigma, Term, Unit, Var, free_vars, fresh_name,
    spine, substitute,
)

SORTS = ("event", "entity")


class Untranslatable(ValueError):
    pass


class Fol:
    """Base class of formulas."""

    __slots__ = ()

    def __str__(self):
        return show_fol(self)


@dataclass(frozen=True)
class Pred(Fol):
    name: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Top(Fol):
    pass


@dataclass(frozen=True)
class And(Fol):
    left: Fol
    right: Fol


@dataclass(frozen=True)
class Not(Fol):
    body: Fol


@dataclass(frozen=True)
class Implies(Fol):
    left: Fol
    right: Fol


@dataclass(frozen=True)
class Exists(Fol):
    var: str
    sort: str
    body: Fol


@dataclass(frozen=True)
class Forall(Fol):
    var: str
    sort: str
    body: Fol


TOP = Top()


def conj(*fs: Fol) -> Fol:
    fs = [f for f in fs if f != TOP]
    if not fs:
        return TOP
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


# -- translation --------------------------------------------------------------

def _sort_of(t: Term) -> str | None:
    if t == ENTITY:
        return "entity"
    if t == EVENT:
        return "event"
    return None


def flatten(t: Term) -> Term:
    """Un-nest Σ domains and curry Π domains, dropping ``Σ_: ()``.

    ``Σu: (Σx: A. B). C`` becomes ``Σx: A. Σy: B. C[u := (x, y)]``.
    """
    t = normalize(None, t)
    match t:
        case Sigma(u, Sigma(x, a, b), c) | Pi(u, Sigma(x, a, b), c):
            avoid = free_vars(t) | {u}
            x2 = fresh_name(x if x != "_" else "x", avoid)
            y = fresh_name("y", avoid | {x2})
            b2 = substitute(b, x, Var(x2))
            body = normalize(None, substitute(c, u, Pair(Var(x2), Var(y))))
            ctor = type(t)
            return flatten(ctor(x2, a, ctor(y, b2, body)))
        case Sigma(u, Unit(), c):
            return flatten(substitute(c, u, UNIT_VAL))
        case Sigma(x, a, b):
            return Sigma(x, flatten(a), flatten(b))
        case Pi(x, a, b):
            return Pi(x, flatten(a), flatten(b))
    return t


def _arg(t: Term) -> str:
    match t:
        case Var(name) | Const(name):
            return name
    raise Untranslatable(f"predicate argument {t} is not a variable or constant")


def to_fol(ty: Term) -> Fol:
    """Translate a closed interpretation type into a formula.

    Bound variables are renamed so that every quantifier binds a distinct name.
    """
    return _tr(flatten(ty), set())


def _tr(t: Term, used: set[str]) -> Fol:
    match t:
        case Unit():
            return TOP
        case Sigma(x, a, b) | Pi(x, a, b) if _sort_of(a) is not None:
            v = fresh_name(x if x != "_" else "x", used)
            used.add(v)
            body = _tr(substitute(b, x, Var(v)), used)
            q = Exists if isinstance(t, Sigma) else Forall
            return q(v, _sort_of(a), body)
        case Sigma(x, a, b):
            if x in free_vars(b):
                raise Untranslatable(f"proof of {a} is used in {b}")
            return conj(_tr(a, used), _tr(b, used))
        case Pi(x, a, b):
            if x in free_vars(b):
                raise Untranslatable(f"proof of {a} is used in {b}")
            return Implies(_tr(a, used), _tr(b, used))
    head, args = spine(t)
    if isinstance(head, Const) and head.name not in SORTS:
        return Pred(head.name, tuple(_arg(a) for a in args))
    raise Untranslatable(f"cannot translate {t}")


def count_exists(f: Fol) -> int:
    match f:
        case Exists(_, _, b):
            return 1 + count_exists(b)
        case Forall(_, _, b) | Not(b):
            return count_exists(b)
        case And(a, b) | Implies(a, b):
            return count_exists(a) + count_exists(b)
    return 0


def count_binders(ty: Term) -> int:
    """Σ binders over ``entity`` or ``event`` in the flattened type."""
    def go(t):
        match t:
            case Sigma(_, a, b):
                return (_sort_of(a) is not None) + go(a) + go(b)
            case Pi(_, a, b):
                return go(a) + go(b)
        return 0
    return go(flatten(ty))


# -- canonical form and equivalence -------------------------------------------

def conjuncts(f: Fol) -> list[Fol]:
    match f:
        case And(a, b):
            return conjuncts(a) + conjuncts(b)
        case Top():
            return []
    return [f]


def prenex(f: Fol) -> tuple[list[tuple[str, str]], list[Fol]] | None:
    """Pull existentials out of a conjunction; None if other connectives occur.

    Sound because every bound name is distinct after translation.
    """
    qs: list[tuple[str, str]] = []
    atoms: list[Fol] = []

    def go(g):
        match g:
            case Exists(v, s, b):
                qs.append((v, s))
                return go(b)
            case And(a, b):
                return go(a) and go(b)
            case Top():
                return True
            case Pred():
                atoms.append(g)
                return True
        return False

    return (qs, atoms) if go(f) else None


def _sort_key(p: Pred):
    return (p.name, p.args)


def canonical(f: Fol) -> Fol:
    """Sort conjuncts by predicate name then arguments, recursively."""
    match f:
        case Exists(v, s, b):
            return Exists(v, s, canonical(b))
        case Forall(v, s, b):
            return Forall(v, s, canonical(b))
        case Not(b):
            return Not(canonical(b))
        case Implies(a, b):
            return Implies(canonical(a), canonical(b))
        case And():
            parts = [canonical(g) for g in conjuncts(f)]
            preds = sorted((p for p in parts if isinstance(p, Pred)), key=_sort_key)
            rest = [p for p in parts if not isinstance(p, Pred)]
            return conj(*preds, *rest)
    return f


def fol_equivalent(a: Fol, b: Fol) -> bool:
    """Equal up to bound-variable renaming and conjunct order.

    Existentials may also float within a conjunction.
    """
    pa, pb = prenex(a), prenex(b)
    if pa is None or pb is None:
        return canonical(a) == canonical(b)
    (qa, xa), (qb, xb) = pa, pb
    if sorted(s for _, s in qa) != sorted(s for _, s in qb) or len(xa) != len(xb):
        return False
    target = Counter(xb)
    by_sort = {s: [v for v, t in qb if t == s] for s in SORTS}
    names_a = {s: [v for v, t in qa if t == s] for s in SORTS}
    for perms in itertools.product(*(itertools.permutations(by_sort[s]) for s in SORTS)):
        m = {}
        for s, perm in zip(SORTS, perms):
            m.update(zip(names_a[s], perm))
        renamed = Counter(Pred(p.name, tuple(m.get(x, x) for x in p.args)) for p in xa)
        if renamed == target:
            return True
    return False


# -- display and parsing --------------------------------------------------------

def show_fol(f: Fol) -> str:
    match f:
        case Pred(n, args):
            return f"{n}({', '.join(args)})"
        case Top():
            return "⊤"
        case Not(b):
            return f"¬{_paren(b)}"
        case And(a, b):
            return f"{_paren(a, And)} ∧ {_paren(b, And)}"
        case Implies(a, b):
            return f"{_paren(a)} → {_paren(b, Implies)}"
        case Exists(v, _, Top()):
            return f"∃{v}"
        case Exists(v, _, b):
            return f"∃{v}. {show_fol(b)}"
        case Forall(v, _, b):
            return f"∀{v}. {show_fol(b)}"
    raise TypeError(f"not a formula: {f!r}")


def _paren(f: Fol, ok: type | None = None) -> str:
    s = show_fol(f)
    if isinstance(f, (Pred, Top, Not)) or (ok is not None and isinstance(f, ok)):
        return s
    if isinstance(f, Exists) and ok is And:
        return s
    return f"({s})"


_TOKEN = re.compile(r"\s*(∃|∀|¬|∧|→|exists|forall|not|and|->|[A-Za-z_][\w']*|[().,:])")


class FolSyntaxError(ValueError):
    pass


def parse_fol(text: str) -> Fol:
    """Read the notation printed by :func:`show_fol`.

    Quantified variables may carry a sort (``∃x:entity.``); otherwise names
    starting with ``e`` are events and the rest entities.
    """
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FolSyntaxError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        toks.append({"exists": "∃", "forall": "∀", "not": "¬", "and": "∧", "->": "→"}.get(m.group(1), m.group(1)))
        pos = m.end()
    toks.append(None)
    i = 0

    def peek():
        return toks[i]

    def take(expect=None):
        nonlocal i
        t = toks[i]
        if expect is not None and t != expect:
            raise FolSyntaxError(f"expected {expect!r}, got {t!r}")
        i += 1
        return t

    def formula():
        left = conjunction()
        if peek() == "→":
            take()
            return Implies(left, formula())
        return left

    def conjunction():
        parts = [unary()]
        while peek() == "∧":
            take()
            parts.append(unary())
        if len(parts) == 1:
            return parts[0]
        # conjunction is associative; parenthesised groups are spliced in
        return conj(*(c for p in parts for c in (conjuncts(p) if isinstance(p, And) else [p])))

    def unary():
        t = peek()
        if t in ("∃", "∀"):
            take()
            v = take()
            sort = "event" if v.startswith("e") else "entity"
            if peek() == ":":
                take()
                sort = take()
                if sort not in SORTS:
                    raise FolSyntaxError(f"unknown sort {sort!r}")
            body = TOP
            if peek() == ".":
                take()
                body = formula()
            return (Exists if t == "∃" else Forall)(v, sort, body)
        if t == "¬":
            take()
            return Not(unary())
        if t == "(":
            take()
            f = formula()
            take(")")
            return f
        if t == "⊤":
            take()
            return TOP
        if t is None or not re.match(r"[A-Za-z_]", t):
            raise FolSyntaxError(f"unexpected token {t!r}")
        name = take()
        take("(")
        args = []
        while peek() != ")":
            args.append(take())
            if peek() == ",":
                take()
        take(")")
        return Pred(name, tuple(args))

    f = formula()
    if peek() is not None:
        raise FolSyntaxError(f"trailing input {peek()!r}")
    return f


# -- structured form ----------------------------------------------------------

def fol_to_json(f: Fol) -> dict:
    match f:
        case Pred(n, args):
            return {"pred": n, "args": list(args)}
        case Top():
            return {"top": True}
        case Not(b):
            return {"not": fol_to_json(b)}
        case And(a, b):
            return {"and": [fol_to_json(a), fol_to_json(b)]}
        case Implies(a, b):
            return {"implies": [fol_to_json(a), fol_to_json(b)]}
        case Exists(v, s, b):
            return {"exists": v, "sort": s, "body": fol_to_json(b)}
        case Forall(v, s, b):
            return {"forall": v, "sort": s, "body": fol_to_json(b)}
    raise TypeError(f"not a formula: {f!r}")


def fol_from_json(d: dict) -> Fol:
    if "pred" in d:
        return Pred(d["pred"], tuple(d["args"]))
    if "top" in d:
        return TOP
    if "not" in d:
        return Not(fol_from_json(d["not"]))
    if "and" in d:
        return And(*map(fol_from_json, d["and"]))
    if "implies" in d:
        return Implies(*map(fol_from_json, d["implies"]))
    if "exists" in d:
        return Exists(d["exists"], d["sort"], fol_from_json(d["body"]))
    if "forall" in d:
        return Forall(d["forall"], d["sort"], fol_from_json(d["body"]))
    raise ValueError(f"not a formula: {d!r}")
