"""Terms of the dependent lambda calculus used for discourse interpretation.

Terms are immutable and use named binders. Equality (``==``) and hashing are
alpha-invariant: two terms compare equal iff they are identical up to the
renaming of bound variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

__all__ = [
    "Term", "Var", "Const", "Sort", "Pi", "Sigma", "Lam", "App", "Pair",
    "Proj1", "Proj2", "AtOp", "Unit", "UnitVal", "Opaque", "Hyp",
    "TYPE", "KIND", "UNIT", "UNIT_VAL", "BINDERS",
    "free_vars", "substitute", "alpha_eq", "fresh_name", "app", "arrow",
    "times", "spine", "size", "subterms", "contains_atop", "show",
]


class Term:
    """Base class of all terms."""

    __slots__ = ()

    @cached_property
    def key(self):
        """De Bruijn form; the basis of alpha-equivalence."""
        return _key(self, {}, 0)

    def __eq__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        return show(self)


@dataclass(frozen=True, eq=False)
class Var(Term):
    name: str


@dataclass(frozen=True, eq=False)
class Const(Term):
    name: str


@dataclass(frozen=True, eq=False)
class Sort(Term):
    tag: str  # "type" or "kind"

    def __post_init__(self):
        if self.tag not in ("type", "kind"):
            raise ValueError(f"unknown sort {self.tag!r}")


@dataclass(frozen=True, eq=False)
class Pi(Term):
    binder: str
    domain: Term
    codomain: Term


@dataclass(frozen=True, eq=False)
class Sigma(Term):
    binder: str
    first: Term
    second: Term


@dataclass(frozen=True, eq=False)
class Lam(Term):
    binder: str
    body: Term


@dataclass(frozen=True, eq=False)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True, eq=False)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True, eq=False)
class Proj1(Term):
    arg: Term


@dataclass(frozen=True, eq=False)
class Proj2(Term):
    arg: Term


@dataclass(frozen=True, eq=False)
class AtOp(Term):
    """An unresolved anaphor ``@_index``.

    ``annotated_type`` is the ascription of ``@_index c``, i.e. the type of the
    operator once applied to its left context ``c``.
    """

    index: int
    annotated_type: Term


@dataclass(frozen=True, eq=False)
class Unit(Term):
    """The trivial type ``()``."""


@dataclass(frozen=True, eq=False)
class UnitVal(Term):
    """The sole inhabitant of ``()``."""


@dataclass(frozen=True, eq=False)
class Opaque(Term):
    """A postulated constant that carries its own type."""

    name: str
    type: Term


@dataclass(frozen=True, eq=False)
class Hyp(Term):
    """Hypothetical pair: ``body`` under the assumption ``binder : domain``.

    Infers ``Sigma binder: domain. typeof(body)``. Used for readings that
    introduce a fresh participant (the sloppy reading's new hat).
    """

    binder: str
    domain: Term
    body: Term


TYPE = Sort("type")
KIND = Sort("kind")
UNIT = Unit()
UNIT_VAL = UnitVal()

BINDERS = (Pi, Sigma, Lam, Hyp)


def app(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


def arrow(*tys: Term) -> Term:
    """Right-nested non-dependent function type."""
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = Pi("_", t, out)
    return out


def times(*tys: Term) -> Term:
    """Right-nested non-dependent pair type; ``times()`` is ``()``."""
    if not tys:
        return UNIT
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = Sigma("_", t, out)
    return out


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split an application into head and arguments."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


# -- de Bruijn keys ---------------------------------------------------------

def _key(t: Term, env: dict[str, int], depth: int):
    match t:
        case Var(name):
            if name in env:
                return ("b", depth - env[name])
            return ("v", name)
        case Const(name):
            return ("c", name)
        case Sort(tag):
            return ("s", tag)
        case Pi(x, a, b):
            return ("pi", _key(a, env, depth), _key(b, {**env, x: depth + 1}, depth + 1))
        case Sigma(x, a, b):
            return ("sg", _key(a, env, depth), _key(b, {**env, x: depth + 1}, depth + 1))
        case Hyp(x, a, b):
            return ("hy", _key(a, env, depth), _key(b, {**env, x: depth + 1}, depth + 1))
        case Lam(x, b):
            return ("lam", _key(b, {**env, x: depth + 1}, depth + 1))
        case App(f, a):
            return ("ap", _key(f, env, depth), _key(a, env, depth))
        case Pair(a, b):
            return ("pr", _key(a, env, depth), _key(b, env, depth))
        case Proj1(a):
            return ("p1", _key(a, env, depth))
        case Proj2(a):
            return ("p2", _key(a, env, depth))
        case AtOp(i, ty):
            return ("at", i, _key(ty, env, depth))
        case Unit():
            return ("unit",)
        case UnitVal():
            return ("tt",)
        case Opaque(name, ty):
            return ("op", name, _key(ty, env, depth))
    raise TypeError(f"not a term: {t!r}")


def alpha_eq(a: Term, b: Term) -> bool:
    return a.key == b.key


# -- free variables and substitution ---------------------------------------

def free_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset((name,))
        case Pi(x, a, b) | Sigma(x, a, b) | Hyp(x, a, b):
            return free_vars(a) | (free_vars(b) - {x})
        case Lam(x, b):
            return free_vars(b) - {x}
        case App(f, a) | Pair(f, a):
            return free_vars(f) | free_vars(a)
        case Proj1(a) | Proj2(a):
            return free_vars(a)
        case AtOp(_, ty) | Opaque(_, ty):
            return free_vars(ty)
    return frozenset()


_SUFFIX = re.compile(r"\d+$")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    if base == "_":
        base = "x"
    if base not in avoid:
        return base
    stem = _SUFFIX.sub("", base) or "x"
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def substitute(body: Term, var: str, replacement: Term) -> Term:
    """Capture-avoiding ``body[replacement/var]``."""
    return _subst(body, var, replacement, free_vars(replacement))


def _subst_binder(x, a, b, var, rep, rep_fv):
    """Returns (binder, domain, body) after substitution under one binder."""
    if a is not None:
        a = _subst(a, var, rep, rep_fv)
    if x == var:
        return x, a, b
    if x in rep_fv and var in free_vars(b):
        y = fresh_name(x, rep_fv | free_vars(b) | {var})
        b = _subst(b, x, Var(y), frozenset((y,)))
        x = y
    return x, a, _subst(b, var, rep, rep_fv)


def _subst(t: Term, var: str, rep: Term, rep_fv: frozenset[str]) -> Term:
    match t:
        case Var(name):
            return rep if name == var else t
        case Const() | Sort() | Unit() | UnitVal():
            return t
        case Pi(x, a, b):
            return Pi(*_subst_binder(x, a, b, var, rep, rep_fv))
        case Sigma(x, a, b):
            return Sigma(*_subst_binder(x, a, b, var, rep, rep_fv))
        case Hyp(x, a, b):
            return Hyp(*_subst_binder(x, a, b, var, rep, rep_fv))
        case Lam(x, b):
            x2, _, b2 = _subst_binder(x, None, b, var, rep, rep_fv)
            return Lam(x2, b2)
        case App(f, a):
            return App(_subst(f, var, rep, rep_fv), _subst(a, var, rep, rep_fv))
        case Pair(a, b):
            return Pair(_subst(a, var, rep, rep_fv), _subst(b, var, rep, rep_fv))
        case Proj1(a):
            return Proj1(_subst(a, var, rep, rep_fv))
        case Proj2(a):
            return Proj2(_subst(a, var, rep, rep_fv))
        case AtOp(i, ty):
            return AtOp(i, _subst(ty, var, rep, rep_fv))
        case Opaque(name, ty):
            return Opaque(name, _subst(ty, var, rep, rep_fv))
    raise TypeError(f"not a term: {t!r}")


def subterms(t: Term):
    """Immediate subterms, left to right."""
    match t:
        case Pi(_, a, b) | Sigma(_, a, b) | Hyp(_, a, b) | App(a, b) | Pair(a, b):
            return (a, b)
        case Lam(_, b) | Proj1(b) | Proj2(b):
            return (b,)
        case AtOp(_, ty) | Opaque(_, ty):
            return (ty,)
    return ()


def size(t: Term) -> int:
    return 1 + sum(size(s) for s in subterms(t))


def contains_atop(t: Term) -> bool:
    return isinstance(t, AtOp) or any(contains_atop(s) for s in subterms(t))


# -- display ------------------------------------------------------------------

def show(t: Term) -> str:
    """Render a term in the bracket notation used for discourse types."""
    match t:
        case Var(name) | Const(name) | Opaque(name, _):
            return name
        case Sort(tag):
            return tag
        case Unit() | UnitVal():
            return "()"
        case Sigma(x, a, b):
            if x in free_vars(b):
                return f"⟨{x}: {show(a)}, {show(b)}⟩"
            return f"⟨{show(a)}, {show(b)}⟩"
        case Pi(x, a, b):
            dom = show(a)
            if isinstance(a, (Pi, Lam)):
                dom = f"({dom})"
            if x in free_vars(b):
                return f"({x}: {dom}) → {show(b)}"
            return f"{dom} → {show(b)}"
        case Hyp(x, a, b):
            return f"⟨{x}: {show(a)} | {show(b)}⟩"
        case Lam(x, b):
            return f"λ{x}. {show(b)}"
        case Pair(a, b):
            return f"({show(a)}, {show(b)})"
        case Proj1(a):
            return f"π1({show(a)})"
        case Proj2(a):
            return f"π2({show(a)})"
        case AtOp(i, _):
            return f"@{i}"
        case App(AtOp(i, ty), c):
            return f"(@{i} {_atom(c)} : {show(ty)})"
        case App():
            head, args = spine(t)
            if isinstance(head, AtOp):
                rest = ", ".join(show(a) for a in args[1:])
                return f"{show(App(head, args[0]))}({rest})"
            if isinstance(head, (Const, Var)):
                return f"{head.name}({', '.join(show(a) for a in args)})"
            return " ".join(_atom(s) for s in (head, *args))
    raise TypeError(f"not a term: {t!r}")


def _atom(t: Term) -> str:
    s = show(t)
    if isinstance(t, (Lam, Pi, App)) and not s.startswith("("):
        return f"({s})"
    return s
