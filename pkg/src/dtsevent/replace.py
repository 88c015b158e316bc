"""The replace combinators that build a new event from an antecedent event.

``replaceA p o n u`` turns ``u : Σe'. p o e'`` into an inhabitant of
``Σe''. p n e''``; ``replaceP`` has the same type and is used when the patient
is the replaced participant; ``replaceAP`` swaps agent and patient together.
"""

from __future__ import annotations

import hashlib

from .terms import TYPE, Const, Opaque, Pair, Pi, Sigma, Term, Var, app, arrow

ENTITY = Const("entity")
EVENT = Const("event")

REPLACE_ARITY = {"replaceA": 4, "replaceP": 4, "replaceAP": 6}


def _single_type() -> Term:
    p, o, n = Var("p"), Var("original"), Var("new")
    return Pi("p", arrow(ENTITY, EVENT, TYPE),
              Pi("original", ENTITY,
                 Pi("new", ENTITY,
                    Pi("u", Sigma("e'", EVENT, app(p, o, Var("e'"))),
                       Sigma("e''", EVENT, app(p, n, Var("e''")))))))


def _double_type() -> Term:
    p = Var("p")
    oa, na, op, np_ = Var("oagent"), Var("nagent"), Var("opatient"), Var("npatient")
    return Pi("p", arrow(ENTITY, ENTITY, EVENT, TYPE),
              Pi("oagent", ENTITY,
                 Pi("nagent", ENTITY,
                    Pi("opatient", ENTITY,
                       Pi("npatient", ENTITY,
                          Pi("u", Sigma("e'", EVENT, app(p, oa, op, Var("e'"))),
                             Sigma("e''", EVENT, app(p, na, np_, Var("e''")))))))))


def replace_result(name: str, args: list[Term], normalize) -> Term:
    """The symbolic inhabitant produced by a fully applied replace combinator.

    A fresh event constant paired with an opaque proof of the new property.
    Names are derived from the application itself so results are deterministic.
    """
    digest = hashlib.sha1(repr(app(Const(name), *args).key).encode()).hexdigest()[:8]
    p = args[0]
    new = args[2] if name != "replaceAP" else None
    ev = Opaque(f"ev_{digest}", EVENT)
    if name == "replaceAP":
        prop = app(p, args[2], args[4], ev)
    else:
        prop = app(p, new, ev)
    return Pair(ev, Opaque(f"prf_{digest}", normalize(prop)))


def _delta(name: str):
    def rule(sig, args, whnf):
        # only computes on a canonical antecedent event
        if not isinstance(whnf(args[-1]), Pair):
            return None
        from .reduce import normalize
        return replace_result(name, list(args), lambda t: normalize(sig, t))
    return rule


def replace_constants():
    from .signature import Delta

    single = _single_type()
    consts = {"replaceA": single, "replaceP": single, "replaceAP": _double_type()}
    deltas = {n: Delta(a, _delta(n)) for n, a in REPLACE_ARITY.items()}
    return consts, deltas
