"""Bidirectional type checking for dependent functions and pairs.

Introduction forms (lambdas and the two kinds of pair) are checked against an
expected type; everything else is inferred. Definitional equality is
alpha-equivalence of normal forms. ``check_type`` falls back to coercive
subtyping when enabled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .reduce import normalize
from .signature import Signature
from .terms import (
    KIND, TYPE, UNIT, App, AtOp, Const, Hyp, Lam, Opaque, Pair, Pi, Proj1,
    Proj2, Sigma, Sort, Term, Unit, UnitVal, Var, free_vars, fresh_name, show,
    app, spine, substitute,
)

Telescope = tuple  # tuple[tuple[str, Term], ...]

ERROR_KINDS = ("UnboundVariable", "SortMismatch", "NotAFunction", "NotAPair",
               "Mismatch", "IllegalSortPair")


class TypeCheckError(Exception):
    def __init__(self, kind: str, location: Sequence[str] = (), expected: Term | None = None,
                 found: Term | None = None, message: str = ""):
        assert kind in ERROR_KINDS
        self.kind = kind
        self.location = tuple(location)
        self.expected = expected
        self.found = found
        self.message = message
        super().__init__(self.describe())

    def describe(self) -> str:
        where = "/".join(self.location) or "<root>"
        parts = [f"{self.kind} at {where}"]
        if self.message:
            parts.append(self.message)
        if self.expected is not None:
            parts.append(f"expected {show(self.expected)}")
        if self.found is not None:
            parts.append(f"found {show(self.found)}")
        return ": ".join(parts[:1]) + ("; " + "; ".join(parts[1:]) if parts[1:] else "")


PI_SORTS = frozenset({("type", "type"), ("type", "kind"), ("kind", "type"), ("kind", "kind")})
SIGMA_SORTS = frozenset({("type", "type"), ("type", "kind"), ("kind", "kind")})


def sigma_sort_allowed(s1: str, s2: str) -> bool:
    """Sigma formation table; (kind, type) is deliberately absent."""
    return (s1, s2) in SIGMA_SORTS


def lookup(tel: Telescope, name: str) -> Term | None:
    for x, ty in reversed(tel):
        if x == name:
            return ty
    return None


def tel_names(tel: Telescope) -> set[str]:
    return {x for x, _ in tel}


@dataclass
class Checker:
    sig: Signature
    subtyping: bool = True
    coercions: list = field(default_factory=list)

    def norm(self, t: Term) -> Term:
        return normalize(self.sig, t)

    def _open(self, tel, x, body, avoid=()):
        """Pick a binder name not clashing with the telescope."""
        taken = tel_names(tel) | set(avoid)
        if x != "_" and x not in taken:
            return x, body
        y = fresh_name(x, taken | free_vars(body))
        return y, substitute(body, x, Var(y))

    # -- sorts ------------------------------------------------------------

    def infer_sort(self, tel: Telescope, ty: Term, loc=()) -> str:
        k = self.norm(self.infer(tel, ty, loc))
        if not isinstance(k, Sort):
            raise TypeCheckError("SortMismatch", loc, message=f"{show(ty)} is not a type", found=k)
        return k.tag

    # -- inference --------------------------------------------------------

    def infer(self, tel: Telescope, t: Term, loc=()) -> Term:
        match t:
            case Var(name):
                ty = lookup(tel, name)
                if ty is None:
                    raise TypeCheckError("UnboundVariable", loc, message=f"variable {name}")
                return ty
            case Const(name):
                ty = self.sig.type_of(name)
                if ty is None:
                    raise TypeCheckError("UnboundVariable", loc, message=f"constant {name}")
                return ty
            case Sort("type"):
                return KIND
            case Sort():
                raise TypeCheckError("SortMismatch", loc, message="kind has no classifier")
            case Unit():
                return TYPE
            case UnitVal():
                return UNIT
            case Opaque(_, ty):
                self.infer_sort(tel, ty, (*loc, "type"))
                return ty
            case Pi(x, a, b) | Sigma(x, a, b):
                s1 = self.infer_sort(tel, a, (*loc, "domain"))
                y, b = self._open(tel, x, b)
                s2 = self.infer_sort((*tel, (y, a)), b, (*loc, "codomain"))
                if isinstance(t, Sigma) and not sigma_sort_allowed(s1, s2):
                    raise TypeCheckError("IllegalSortPair", loc,
                                         message=f"Σ over ({s1}, {s2}) is not formable")
                return Sort(s2)
            case Hyp(x, a, m):
                if self.infer_sort(tel, a, (*loc, "domain")) != "type":
                    raise TypeCheckError("SortMismatch", (*loc, "domain"), message="hypothesis must be a type")
                y, m = self._open(tel, x, m)
                return Sigma(y, a, self.infer((*tel, (y, a)), m, (*loc, "body")))
            case App(AtOp(_, ascription), ctx):
                self.infer(tel, ctx, (*loc, "arg"))
                self.infer_sort(tel, ascription, (*loc, "fn", "type"))
                return ascription
            case AtOp():
                raise TypeCheckError("NotAFunction", loc, message="@-operator must be applied to its context")
            case App(App(), _) if isinstance(spine(t)[0], Lam):
                head, args = spine(t)
                self.infer(tel, args[0], (*loc, "arg"))
                return self.infer(tel, app(substitute(head.body, head.binder, args[0]), *args[1:]), loc)
            case App(Lam(x, body), arg):
                # let-style rule: a redex is inferable from its argument
                a = self.infer(tel, arg, (*loc, "arg"))
                y, body = self._open(tel, x, body)
                b = self.infer((*tel, (y, a)), body, (*loc, "fn", "body"))
                return substitute(b, y, arg)
            case App(f, arg):
                fty = self.norm(self.infer(tel, f, (*loc, "fn")))
                if not isinstance(fty, Pi):
                    raise TypeCheckError("NotAFunction", (*loc, "fn"), found=fty)
                self.check(tel, arg, fty.domain, (*loc, "arg"))
                return substitute(fty.codomain, fty.binder, arg)
            case Pair(a, b):
                return Sigma("_", self.infer(tel, a, (*loc, "fst")), self.infer(tel, b, (*loc, "snd")))
            case Proj1(m) | Proj2(m):
                mty = self.norm(self.infer(tel, m, (*loc, "arg")))
                if not isinstance(mty, Sigma):
                    raise TypeCheckError("NotAPair", (*loc, "arg"), found=mty)
                if isinstance(t, Proj1):
                    return mty.first
                return substitute(mty.second, mty.binder, Proj1(m))
            case Lam():
                raise TypeCheckError("Mismatch", loc, message="cannot infer the type of a lambda; supply an expected type")
        raise TypeError(f"not a term: {t!r}")

    # -- checking -----------------------------------------------------------

    def check(self, tel: Telescope, t: Term, expected: Term, loc=()) -> Term:
        match t:
            case Lam(x, body):
                exp = self.norm(expected)
                if not isinstance(exp, Pi):
                    raise TypeCheckError("Mismatch", loc, expected=exp, message="lambda against a non-function type")
                y, body = self._open(tel, x, body, free_vars(exp))
                cod = substitute(exp.codomain, exp.binder, Var(y))
                return Lam(y, self.check((*tel, (y, exp.domain)), body, cod, (*loc, "body")))
            case Pair(a, b):
                exp = self.norm(expected)
                if isinstance(exp, Sigma):
                    a2 = self.check(tel, a, exp.first, (*loc, "fst"))
                    b2 = self.check(tel, b, substitute(exp.second, exp.binder, a), (*loc, "snd"))
                    return Pair(a2, b2)
            case App(Lam(x, b), a):
                # let-style check: the argument is inferred, the body checked
                # with it substituted, so dependent expectations survive
                self.infer(tel, a, (*loc, "arg"))
                body = self.check(tel, substitute(b, x, a), expected, (*loc, "fn", "body"))
                return t if body == substitute(b, x, a) else body
            case Hyp(x, a, m):
                exp = self.norm(expected)
                if not isinstance(exp, Sort):
                    if self.infer_sort(tel, a, (*loc, "domain")) != "type":
                        raise TypeCheckError("SortMismatch", (*loc, "domain"), message="hypothesis must be a type")
                    y, m = self._open(tel, x, m, free_vars(exp))
                    return Hyp(y, a, self.check((*tel, (y, a)), m, exp, (*loc, "body")))
        found = self.norm(self.infer(tel, t, loc))
        exp = self.norm(expected)
        if found == exp:
            return t
        if self.subtyping:
            from .subtyping import is_subtype

            c = is_subtype(self.sig, tel, found, exp)
            if c is not None:
                self.coercions.append((loc, c))
                return App(c.witness, t)
        raise TypeCheckError("Mismatch", loc, expected=exp, found=found)


def infer_sort(sig: Signature, tel: Telescope, ty: Term) -> str:
    return Checker(sig).infer_sort(tuple(tel), ty)


def infer_type(sig: Signature, tel: Telescope, t: Term) -> Term:
    """Principal type of ``t``, normalized."""
    return normalize(sig, Checker(sig).infer(tuple(tel), t))


def check_type(sig: Signature, tel: Telescope, t: Term, expected: Term, subtyping: bool = True) -> Term:
    """Check ``t`` against ``expected``; returns ``t`` with coercions made explicit."""
    c = Checker(sig, subtyping)
    c.infer_sort(tuple(tel), expected, ("<expected>",))
    return c.check(tuple(tel), t, expected)
