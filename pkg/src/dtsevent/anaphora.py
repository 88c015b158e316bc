"""Anaphora resolution by template-directed proof search.

Each @-operator gives a felicity goal ``Π c: γ. T`` where ``γ`` is the type of
its left context. Witnesses are built from projection paths into the context:

* verb-phrase goals ``(x: entity) → Σe: event. role(e, x)`` get
  ``λc. λx. replaceA p o x path`` (``replaceP`` for passives), plus a
  ``replaceAP`` candidate when the antecedent's patient is owned by the
  replaced agent (the sloppy reading);
* pronominal goals ``Σx: entity. P`` get a context path or a named entity
  with proofs of ``P`` from the signature;
* propositional goals ``Σe: event. P`` get a context path whose chain is a
  subtype of the goal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .fragment import CONTEXT, DynamicProp, ResolutionHints
from .reduce import normalize
from .replace import REPLACE_ARITY, replace_result
from .signature import ENTITY, EVENT, Signature
from .subtyping import PropertyChain, is_subtype, to_chain, NotAChain
from .terms import (
    UNIT, UNIT_VAL, App, AtOp, Const, Hyp, Lam, Opaque, Pair, Pi, Proj1,
    Proj2, Sigma, Sort, Term, Unit, Var, app, contains_atop, free_vars,
    fresh_name, spine, substitute, times,
)
from .typecheck import Checker, TypeCheckError, check_type, lookup

MAX_DEPTH = 16
MAX_CANDIDATES = 64
ROLES = ("agent", "patient")
LABELS = ("strict", "sloppy", "agent-replaced", "patient-replaced", "pronominal", "propositional")


class NoResolution(Exception):
    def __init__(self, index: int, goal: "FelicityGoal | None" = None):
        self.index = index
        self.goal = goal
        super().__init__(f"NoResolution at @_{index}")


class OccurrenceNotFound(ValueError):
    pass


class IllTypedApplication(ValueError):
    pass


@dataclass(frozen=True)
class FelicityGoal:
    index: int
    context_type: Term
    ascription: Term

    @property
    def goal_type(self) -> Term:
        return Pi(CONTEXT, self.context_type, self.ascription)

    @property
    def kind(self) -> str:
        a = self.ascription
        if isinstance(a, Pi) and a.domain == ENTITY:
            return "vp"
        if a == ENTITY or (isinstance(a, Sigma) and a.first == ENTITY):
            return "pronominal"
        if isinstance(a, Sigma) and a.first == EVENT:
            return "propositional"
        raise ValueError(f"unsupported @-operator type {a}")

    @property
    def role(self) -> str | None:
        """Thematic role the supplied entity fills, for verb-phrase goals."""
        a = self.ascription
        if self.kind != "vp":
            return None
        body = substitute(a.codomain, a.binder, Var("__x"))
        for p in to_chain(body).properties:
            head, args = spine(p)
            if isinstance(head, Const) and head.name in ROLES and args[1:] == [Var("__x")]:
                return head.name
        return "agent"


@dataclass(frozen=True)
class Antecedent:
    access_path: Term
    type: Term
    chain: PropertyChain
    participants: dict[str, tuple[Term, Term]] = field(default_factory=dict)

    @property
    def head(self) -> str:
        return self.chain.head_type.name


@dataclass(frozen=True)
class Resolution:
    assignments: dict[int, Term]
    interpretation: Term
    reading_label: str
    labels: dict[int, str] = field(default_factory=dict)
    goals: tuple[FelicityGoal, ...] = ()


# -- antecedents --------------------------------------------------------------

def _atomic_chain(ty: Term, sig) -> PropertyChain | None:
    try:
        ch = to_chain(ty, sig)
    except NotAChain:
        return None
    return ch if ch.head_type in (ENTITY, EVENT) else None


def make_antecedent(sig: Signature, path: Term, ty: Term) -> Antecedent | None:
    ch = _atomic_chain(ty, sig)
    if ch is None:
        return None
    parts = {}
    for i, p in enumerate(ch.properties):
        head, args = spine(p)
        if (isinstance(head, Const) and head.name in ROLES and len(args) == 2
                and args[0] == Var(ch.binder) and head.name not in parts):
            parts[head.name] = (args[1], normalize(sig, ch.proof_path(i, path)))
    return Antecedent(path, normalize(sig, ty), ch, parts)


def harvest_antecedents(sig: Signature, context_type: Term, depth: int = MAX_DEPTH,
                        context: Term = Var(CONTEXT)) -> list[Antecedent]:
    """Chains reachable by projections from a context value, most recent first."""
    out: list[Antecedent] = []

    def walk(path: Term, ty: Term, d: int):
        ty = normalize(sig, ty)
        ant = make_antecedent(sig, path, ty)
        if ant is not None:
            out.append(ant)
            return
        if not isinstance(ty, Sigma) or d <= 0:
            return
        walk(Proj2(path), substitute(ty.second, ty.binder, Proj1(path)), d - 1)
        walk(Proj1(path), ty.first, d - 1)

    walk(context, context_type, depth)
    return out


# -- property abstraction -------------------------------------------------------

def abstract_property(chain: PropertyChain, over: list[tuple[str, Term]]) -> Term:
    """``λy. [λz.] λe. props`` with the designated role fillers abstracted."""
    avoid = set().union(*(free_vars(p) for p in chain.properties), *(free_vars(t) for _, t in over))
    names = []
    for base in ("y", "z")[:len(over)]:
        n = fresh_name(base, avoid)
        avoid.add(n)
        names.append(n)
    ev = fresh_name("e", avoid - {chain.binder})
    ch = chain.renamed(ev)
    props = list(ch.properties)
    for (role, ent), n in zip(over, names):
        for i, p in enumerate(props):
            head, args = spine(p)
            if head == Const(role) and args == [Var(ev), ent]:
                props[i] = app(Const(role), Var(ev), Var(n))
                break
        else:
            raise OccurrenceNotFound(f"{role}(·, {ent}) does not occur in the chain")
    body = Lam(ev, PropertyChain(ev, ch.head_type, tuple(props)).to_type().second)
    for n in reversed(names):
        body = Lam(n, body)
    return body


def replace_subterm(t: Term, old: Term, new: Term) -> Term:
    if t == old:
        return new
    match t:
        case App(f, a):
            return App(replace_subterm(f, old, new), replace_subterm(a, old, new))
        case Pair(a, b):
            return Pair(replace_subterm(a, old, new), replace_subterm(b, old, new))
        case Proj1(a):
            return Proj1(replace_subterm(a, old, new))
        case Proj2(a):
            return Proj2(replace_subterm(a, old, new))
        case Sigma(x, a, b) if x not in free_vars(old):
            return Sigma(x, replace_subterm(a, old, new), replace_subterm(b, old, new))
        case Pi(x, a, b) if x not in free_vars(old):
            return Pi(x, replace_subterm(a, old, new), replace_subterm(b, old, new))
    return t


def _mentions(t: Term, sub: Term) -> bool:
    return replace_subterm(t, sub, Var("__probe")) != t


# -- goals --------------------------------------------------------------------

def _vp_candidates(sig, goal: FelicityGoal, hints: ResolutionHints, ants: list[Antecedent]):
    role = goal.role
    combinator = "replaceP" if role == "patient" else "replaceA"
    entities = [a for a in ants if a.head == "entity"]
    taken = {CONTEXT} | free_vars(goal.goal_type)
    x = fresh_name("x", taken)
    c = Var(CONTEXT)
    for ant in ants:
        if ant.head != "event" or role not in ant.participants:
            continue
        old = ant.participants[role][0]
        path = ant.access_path
        p = abstract_property(ant.chain, [(role, old)])
        plain = Lam(CONTEXT, Lam(x, app(Const(combinator), p, old, Var(x), path)))
        sloppy = None
        if role == "agent" and "patient" in ant.participants:
            patient = ant.participants["patient"][0]
            for owned in entities:
                if Proj1(owned.access_path) != patient:
                    continue
                if not any(_mentions(q, old) for q in owned.chain.properties):
                    continue
                w = fresh_name("w", taken | {x} | free_vars(p))
                ch = owned.chain.renamed(fresh_name("y", taken | {x, w} | free_vars(old)))
                fresh_owned = PropertyChain(ch.binder, ENTITY, tuple(
                    replace_subterm(q, old, Var(x)) for q in ch.properties)).to_type()
                p2 = abstract_property(ant.chain, [("agent", old), ("patient", patient)])
                body = Hyp(w, fresh_owned,
                           app(Const("replaceAP"), p2, old, Var(x), patient, Proj1(Var(w)), path))
                sloppy = Lam(CONTEXT, Lam(x, body))
                break
        if sloppy is not None:
            yield plain, "strict"
            yield sloppy, "sloppy"
        else:
            yield plain, f"{role}-replaced"


def _pronominal_candidates(sig, goal, hints, ants):
    asc = goal.ascription
    c = Var(CONTEXT)
    want = hints.bind_to if hints is not None else None
    for ant in ants:
        if ant.head != "entity":
            continue
        ent = normalize(sig, Proj1(ant.access_path))
        if want is not None and ent != want:
            continue
        if asc == ENTITY:
            yield Lam(CONTEXT, Proj1(ant.access_path)), "pronominal"
        elif is_subtype(sig, ((CONTEXT, goal.context_type),), ant.type, asc) is not None:
            yield Lam(CONTEXT, ant.access_path), "pronominal"
    # named entities whose required properties are postulated in the signature
    props = () if asc == ENTITY else to_chain(asc, sig).properties
    binder = None if asc == ENTITY else asc.binder
    for name in sig.names_of_type(ENTITY):
        n = Const(name)
        if want is not None and n != want:
            continue
        proofs = []
        for prop in props:
            need = normalize(sig, substitute(prop, binder, n))
            found = [k for k, ty in sig.constants.items() if ty == need]
            if not found:
                break
            proofs.append(Const(found[0]))
        else:
            if asc == ENTITY:
                yield Lam(CONTEXT, n), "pronominal"
                continue
            body: Term = UNIT_VAL
            if proofs:
                body = proofs[-1]
                for pr in reversed(proofs[:-1]):
                    body = Pair(pr, body)
            yield Lam(CONTEXT, Pair(n, body)), "pronominal"


def _propositional_candidates(sig, goal, hints, ants):
    tel = ((CONTEXT, goal.context_type),)
    for ant in ants:
        if ant.head == "event" and is_subtype(sig, tel, ant.type, goal.ascription) is not None:
            yield Lam(CONTEXT, ant.access_path), "propositional"


def resolve_goal(sig: Signature, goal: FelicityGoal, hints: ResolutionHints | None = None,
                 max_candidates: int = MAX_CANDIDATES, depth: int = MAX_DEPTH,
                 trace: Callable[[str], None] | None = None) -> list[tuple[Term, str]]:
    """Witnesses for one felicity goal, each checked against the goal type."""
    if hints is None:
        hints = ResolutionHints(goal.kind)
    ants = harvest_antecedents(sig, goal.context_type, depth)
    if trace:
        from .sexpr import print_term
        trace(f"goal @_{goal.index} ({goal.kind}): {print_term(goal.goal_type)}")
        for a in ants:
            trace(f"  antecedent {print_term(a.access_path)} : {print_term(a.type)}")
    gen = {"vp": _vp_candidates, "pronominal": _pronominal_candidates,
           "propositional": _propositional_candidates}[goal.kind]
    out = []
    for w, label in itertools.islice(gen(sig, goal, hints, ants), max_candidates):
        try:
            check_type(sig, (), w, goal.goal_type)
        except TypeCheckError as err:
            if trace:
                trace(f"  rejected candidate: {err}")
            continue
        if trace:
            from .sexpr import print_term
            trace(f"  witness [{label}] {print_term(w)}")
        out.append((w, label))
    if not out:
        raise NoResolution(goal.index, goal)
    return out


def delta_replace(sig: Signature, application: Term, tel=()) -> Term:
    """Contract a fully applied replace combinator to its symbolic result."""
    try:
        Checker(sig).infer(tuple(tel), application)
    except TypeCheckError as err:
        raise IllTypedApplication(str(err)) from None
    head, args = spine(application)
    if not isinstance(head, Const) or REPLACE_ARITY.get(head.name) != len(args):
        return application
    return replace_result(head.name, args, lambda t: normalize(sig, t))


# -- discourses ----------------------------------------------------------------

def rename_apart(t: Term, taken: set[str]) -> Term:
    """Give every binder a name unused elsewhere (mutates ``taken``)."""
    def go(t):
        match t:
            case Pi(x, a, b) | Sigma(x, a, b) | Hyp(x, a, b):
                a = go(a)
                y = fresh_name(x, taken)
                taken.add(y)
                return type(t)(y, a, go(substitute(b, x, Var(y))))
            case Lam(x, b):
                y = fresh_name(x, taken)
                taken.add(y)
                return Lam(y, go(substitute(b, x, Var(y))))
            case App(f, a):
                return App(go(f), go(a))
            case Pair(a, b):
                return Pair(go(a), go(b))
            case Proj1(a):
                return Proj1(go(a))
            case Proj2(a):
                return Proj2(go(a))
            case AtOp(i, ty):
                return AtOp(i, go(ty))
            case Opaque(n, ty):
                return Opaque(n, go(ty))
        return t
    return go(t)


def find_atop(t: Term, tel: tuple, path: tuple = ()):
    """Leftmost-outermost ``@_i ctx`` with its path and binding telescope."""
    match t:
        case App(AtOp(), _):
            return path, t, tel
        case Pi(x, a, b) | Sigma(x, a, b) | Hyp(x, a, b):
            return find_atop(a, tel, (*path, 0)) or find_atop(b, (*tel, (x, a)), (*path, 1))
        case App(f, a) | Pair(f, a):
            return find_atop(f, tel, (*path, 0)) or find_atop(a, tel, (*path, 1))
        case Lam(_, b) | Proj1(b) | Proj2(b):
            return find_atop(b, tel, (*path, 0))
    return None


def replace_at(t: Term, path: tuple, new: Term) -> Term:
    if not path:
        return new
    i, rest = path[0], path[1:]
    match t:
        case Pi(x, a, b) | Sigma(x, a, b) | Hyp(x, a, b):
            return type(t)(x, replace_at(a, rest, new), b) if i == 0 else type(t)(x, a, replace_at(b, rest, new))
        case App(f, a) | Pair(f, a):
            return type(t)(replace_at(f, rest, new), a) if i == 0 else type(t)(f, replace_at(a, rest, new))
        case Lam(x, b):
            return Lam(x, replace_at(b, rest, new))
        case Proj1(b) | Proj2(b):
            return type(t)(replace_at(b, rest, new))
    raise ValueError("bad path")


def _vars_in_tuple(ctx: Term, base: Term, acc: dict):
    match ctx:
        case Var(name):
            acc[name] = base
        case Pair(a, b):
            _vars_in_tuple(a, Proj1(base), acc)
            _vars_in_tuple(b, Proj2(base), acc)
        case _:
            raise ValueError("context is not a tuple of variables")
    return acc


def context_type(sig: Signature, tel: tuple, ctx: Term) -> Term:
    """Type of the left context handed to an @-operator.

    Tuples of variables get a dependent Σ that abstracts the earlier
    components, so the result is closed whenever the telescope is.
    """
    match ctx:
        case Var(name):
            ty = lookup(tel, name)
            if ty is None:
                raise TypeCheckError("UnboundVariable", message=f"context variable {name}")
            return ty
        case Pair(a, b):
            ta = context_type(sig, tel, a)
            tb = context_type(sig, tel, b)
            w = fresh_name("w", {x for x, _ in tel} | free_vars(ta) | free_vars(tb))
            for name, proj in _vars_in_tuple(a, Var(w), {}).items():
                tb = substitute(tb, name, proj)
            return Sigma(w, ta, normalize(sig, tb))
    return normalize(sig, Checker(sig).infer(tel, ctx))


def lift(sig: Signature, tel: tuple, t: Term, strict: bool = True) -> Term:
    """Replace inhabitants standing in type position by their types.

    An anaphoric clause denotes the event its witness constructs; what the
    discourse asserts is the type of that event.
    """
    match t:
        case Pi(x, a, b) | Sigma(x, a, b):
            a2 = lift(sig, tel, a, strict)
            return type(t)(x, a2, lift(sig, (*tel, (x, a2)), b, strict))
    if contains_atop(t):
        return t
    try:
        ty = normalize(sig, Checker(sig).infer(tel, t))
    except TypeCheckError:
        if strict:
            raise
        return t
    if isinstance(ty, Sort):
        return t
    return lift(sig, tel, ty, strict)


def resolve_discourse(sig: Signature, dyn: DynamicProp, initial_context_type: Term = UNIT,
                      max_readings: int | None = None, max_candidates: int = MAX_CANDIDATES,
                      trace: Callable[[str], None] | None = None) -> list[Resolution]:
    """Enumerate every resolution of the discourse's @-operators, left to right.

    Interpretations are closed by supplying ``()`` for a unit initial context.
    Readings with alpha-equivalent interpretations are reported once.
    """
    if not isinstance(dyn.term, Lam):
        raise ValueError("a dynamic proposition is a lambda over its context")
    taken = {CONTEXT}
    body = rename_apart(substitute(dyn.term.body, dyn.term.binder, Var(CONTEXT)), taken)
    tel0 = ((CONTEXT, initial_context_type),)
    results: list[Resolution] = []
    seen: set[Term] = set()

    def close(t: Term) -> Term:
        t = lift(sig, tel0, normalize(sig, t, delta=False))
        if isinstance(initial_context_type, Unit):
            t = normalize(sig, substitute(t, CONTEXT, UNIT_VAL), delta=False)
        return t

    def step(body, assigns, labels, goals):
        if max_readings is not None and len(results) >= max_readings:
            return
        found = find_atop(body, tel0)
        if found is None:
            interp = close(body)
            if interp in seen:
                return
            seen.add(interp)
            label = next((lb for lb in labels.values() if lb in ("strict", "sloppy")),
                         list(labels.values())[-1] if labels else "none")
            results.append(Resolution(dict(assigns), interp, label, dict(labels), tuple(goals)))
            return
        path, node, tel = found
        at, ctx = node.fn, node.arg
        goal = FelicityGoal(at.index, context_type(sig, tel, ctx), at.annotated_type)
        cands = resolve_goal(sig, goal, dyn.hints.get(at.index), max_candidates, trace=trace)
        for w, label in cands:
            new = normalize(sig, replace_at(body, path, App(w, ctx)), delta=False)
            new = rename_apart(lift(sig, tel0, new, strict=False), set(taken))
            step(new, {**assigns, at.index: w}, {**labels, at.index: label}, [*goals, goal])

    step(body, {}, {}, [])
    return results

