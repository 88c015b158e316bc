"""Coercive width subtyping over event- and entity-headed property chains.

A chain ``Σe: event. P1 × ... × Pn`` is a subtype of any chain with the same
head whose properties form a sub-multiset of ``P1..Pn``. Coercions are explicit
lambda terms that keep the head and re-pair the retained proofs.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .reduce import normalize
from .signature import Signature
from .terms import (
    UNIT, UNIT_VAL, App, Const, Lam, Pair, Pi, Proj1, Proj2, Sigma, Term, Unit,
    Var, app, free_vars, fresh_name, substitute,
)


class NotAChain(ValueError):
    pass


@dataclass(frozen=True)
class PropertyChain:
    binder: str
    head_type: Term
    properties: tuple[Term, ...]

    def to_type(self) -> Term:
        body: Term = UNIT
        if self.properties:
            body = self.properties[-1]
            for p in reversed(self.properties[:-1]):
                body = Sigma("_", p, body)
        return Sigma(self.binder, self.head_type, body)

    def renamed(self, name: str) -> "PropertyChain":
        if name == self.binder:
            return self
        v = Var(name)
        return PropertyChain(name, self.head_type,
                             tuple(substitute(p, self.binder, v) for p in self.properties))

    def proof_path(self, i: int, m: Term) -> Term:
        """Projection from an inhabitant ``m`` to the proof of property ``i``."""
        t = Proj2(m)
        for _ in range(i):
            t = Proj2(t)
        return t if i == len(self.properties) - 1 else Proj1(t)


@dataclass(frozen=True)
class Coercion:
    source: Term
    target: Term
    witness: Term


def to_chain(ty: Term, sig: Signature | None = None) -> PropertyChain:
    """Decompose ``Σx: A. P1 × ... × Pn`` with atomic ``A``."""
    ty = normalize(sig, ty)
    if not isinstance(ty, Sigma) or not isinstance(ty.first, Const):
        raise NotAChain(f"not a property chain: {ty}")
    props = []
    body = ty.second
    if isinstance(body, Unit):
        return PropertyChain(ty.binder, ty.first, ())
    while isinstance(body, Sigma) and body.binder not in free_vars(body.second):
        props.append(body.first)
        body = body.second
    props.append(body)
    return PropertyChain(ty.binder, ty.first, tuple(props))


def _chain_or_none(ty: Term, sig):
    try:
        return to_chain(ty, sig)
    except NotAChain:
        return None


def _match(sub: Sequence[Term], sup: Sequence[Term]) -> list[int] | None:
    """Index into ``sub`` for each element of ``sup``, each used at most once."""
    used: set[int] = set()
    picks = []
    for p in sup:
        for i, q in enumerate(sub):
            if i not in used and q == p:
                used.add(i)
                picks.append(i)
                break
        else:
            return None
    return picks


def is_subtype(sig: Signature, tel, sub: Term, sup: Term) -> Coercion | None:
    """Return a coercion ``sub -> sup`` or None when ``sub`` is not a subtype."""
    sub = normalize(sig, sub)
    sup = normalize(sig, sup)
    avoid = free_vars(sub) | free_vars(sup) | {x for x, _ in tel}
    z = fresh_name("z", avoid)
    if sub == sup:
        return Coercion(sub, sup, Lam(z, Var(z)))
    if isinstance(sub, Pi) and isinstance(sup, Pi) and sub.domain == sup.domain:
        x = fresh_name("x", avoid | {z})
        inner = is_subtype(sig, (*tel, (x, sub.domain)),
                           substitute(sub.codomain, sub.binder, Var(x)),
                           substitute(sup.codomain, sup.binder, Var(x)))
        if inner is None:
            return None
        f = fresh_name("f", avoid | {x})
        body = normalize(sig, App(inner.witness, App(Var(f), Var(x))))
        return Coercion(sub, sup, Lam(f, Lam(x, body)))
    a = _chain_or_none(sub, sig)
    b = _chain_or_none(sup, sig)
    if a is None or b is None or a.head_type != b.head_type:
        return None
    b = b.renamed(a.binder)
    picks = _match(a.properties, b.properties)
    if picks is None:
        return None
    m = Var(z)
    proofs = [a.proof_path(i, m) for i in picks]
    if not proofs:
        body: Term = UNIT_VAL
    else:
        body = proofs[-1]
        for pr in reversed(proofs[:-1]):
            body = Pair(pr, body)
    return Coercion(sub, sup, Lam(z, Pair(Proj1(m), body)))


def apply_coercion(sig: Signature, c: Coercion, t: Term) -> Term:
    return normalize(sig, App(c.witness, t))


def compose(c1: Coercion, c2: Coercion) -> Coercion:
    """``c2 ∘ c1`` for ``c1: A <: B`` and ``c2: B <: C``."""
    z = fresh_name("z", free_vars(c1.witness) | free_vars(c2.witness))
    return Coercion(c1.source, c2.target, Lam(z, App(c2.witness, App(c1.witness, Var(z)))))


# -- Luo-style aliases ------------------------------------------------------------

EVENT = Const("event")


def _evt(*props) -> Term:
    return PropertyChain("e", EVENT, tuple(props)).to_type()


def luo_alias(name: str, *args: Term) -> Term:
    """Expand Event, Evt_A, Evt_P, Evt_AP, Event_DA and Event_NA to Σ-chains."""
    e = Var("e")
    match name, args:
        case "Event", ():
            return _evt()
        case "Evt_A", (a,):
            return _evt(app(Const("agent"), e, a))
        case "Evt_P", (p,):
            return _evt(app(Const("patient"), e, p))
        case "Evt_AP", (a, p):
            return _evt(app(Const("agent"), e, a), app(Const("patient"), e, p))
        case ("Event_DA" | "Event_NA"), (d, a):
            return _evt(App(d, e), app(Const("agent"), e, a))
    raise ValueError(f"unknown event type alias {name} with {len(args)} arguments")


ALIASES = ("Event", "Evt_A", "Evt_P", "Evt_AP", "Event_DA", "Event_NA")


def expand_aliases(t: Term, sig: Signature | None = None) -> Term:
    """Rewrite alias applications (``(Evt_A j)``) not declared in ``sig``."""
    from .terms import spine

    head, args = spine(t)
    if isinstance(head, Const) and head.name in ALIASES and (sig is None or head.name not in sig.constants):
        return luo_alias(head.name, *[expand_aliases(x, sig) for x in args])
    match t:
        case Pi(x, a, b):
            return Pi(x, expand_aliases(a, sig), expand_aliases(b, sig))
        case Sigma(x, a, b):
            return Sigma(x, expand_aliases(a, sig), expand_aliases(b, sig))
        case Lam(x, b):
            return Lam(x, expand_aliases(b, sig))
        case App(f, a):
            return App(expand_aliases(f, sig), expand_aliases(a, sig))
        case Pair(a, b):
            return Pair(expand_aliases(a, sig), expand_aliases(b, sig))
        case Proj1(a):
            return Proj1(expand_aliases(a, sig))
        case Proj2(a):
            return Proj2(expand_aliases(a, sig))
    return t
