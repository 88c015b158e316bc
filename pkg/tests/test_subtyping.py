from collections import Counter

import pytest
from hypothesis import given, settings

from dtsevent.reduce import normalize
from dtsevent.sexpr import parse
from dtsevent.signature import EVENT
from dtsevent.subtyping import (
    NotAChain, PropertyChain, apply_coercion, compose, expand_aliases, is_subtype,
    luo_alias, to_chain,
)
from dtsevent.terms import (
    UNIT_VAL, Const, Opaque, Pair, Proj1, Proj2, Sigma, Term, Var, app, arrow, size,
    substitute,
)
from dtsevent.typecheck import TypeCheckError, check_type, infer_type

from strategies import PROPERTY_POOL, SIG, chains

A, P, X = Const("j"), Const("m"), Var("x")


def evt(*props):
    return PropertyChain("e", EVENT, props).to_type()


def agent(y):
    return app(Const("agent"), Var("e"), y)


def patient(y):
    return app(Const("patient"), Var("e"), y)


LEFT = app(Const("left"), Var("e"))


def _holds(sig, sub, sup, tel=()):
    c = is_subtype(sig, tel, sub, sup)
    assert c is not None
    check_type(sig, tel, c.witness, arrow(sub, sup), subtyping=False)
    return c


def test_to_chain():
    ch = to_chain(evt(LEFT, agent(X)))
    assert ch.head_type == EVENT and ch.properties == (LEFT, agent(X))
    assert to_chain(evt()).properties == ()
    with pytest.raises(NotAChain):
        to_chain(Const("entity"))


def test_chain_renesting_is_identity():
    t = parse("(sigma (e event) (times (left e) (agent e j) (patient e m)))")
    assert to_chain(t).to_type() == t


@pytest.mark.parametrize("middle", [agent(A), patient(P)])
def test_agent_patient_chains(sig, middle):
    # Evt_AP(a, p) <: Evt_A(a) <: Event, and likewise through Evt_P(p)
    top, mid, bottom = evt(agent(A), patient(P)), evt(middle), evt()
    c1 = _holds(sig, top, mid)
    c2 = _holds(sig, mid, bottom)
    check_type(sig, (), compose(c1, c2).witness, arrow(top, bottom), subtyping=False)
    assert is_subtype(sig, (), mid, top) is None
    assert is_subtype(sig, (), bottom, mid) is None


def test_luo_aliases_agree(sig):
    assert luo_alias("Evt_AP", A, P) == evt(agent(A), patient(P))
    t = expand_aliases(parse("(Event_DA left x)"), sig)
    assert t == evt(LEFT, agent(Const("x")))


def test_description_agent_rule(sig):
    tel = (("x", Const("entity")),)
    _holds(sig, evt(LEFT, agent(X)), evt(agent(X)), tel)


def test_identity_coercion(sig):
    c = is_subtype(sig, (), Const("entity"), Const("entity"))
    assert apply_coercion(sig, c, A) == A


def test_coerce_event_pair(sig):
    tel = (("x", Const("entity")),)
    c = _holds(sig, evt(LEFT, agent(X)), evt(agent(X)), tel)
    e0, pl, pa = Var("e0"), Var("pl"), Var("pa")
    assert apply_coercion(sig, c, Pair(e0, Pair(pl, pa))) == Pair(e0, pa)
    top = is_subtype(sig, tel, evt(LEFT, agent(X)), evt())
    assert apply_coercion(sig, top, Pair(e0, Pair(pl, pa))) == Pair(e0, UNIT_VAL)


def test_function_codomain_is_covariant(sig):
    sub = parse("(pi (x entity) (sigma (e event) (times (left e) (agent e x))))")
    sup = parse("(pi (x entity) (sigma (e event) (agent e x)))")
    _holds(sig, sub, sup)
    assert is_subtype(sig, (), sup, sub) is None


# -- exhaustive search for coercions ----------------------------------------------

def _inhabitants(sig, tel, ty: Term, budget: int, paths):
    """All pair/projection/unit terms over ``z`` of type ``ty`` within ``budget``."""
    ty = normalize(sig, ty)
    out = [p for p, pty in paths if pty == ty and size(p) <= budget]
    if ty == parse("Unit"):
        out.append(UNIT_VAL)
    if isinstance(ty, Sigma) and budget >= 3:
        for a in _inhabitants(sig, tel, ty.first, budget - 2, paths):
            rest = budget - 1 - size(a)
            for b in _inhabitants(sig, tel, substitute(ty.second, ty.binder, a), rest, paths):
                out.append(Pair(a, b))
    return out


def _paths(sig, tel, budget):
    out, frontier = [], [Var("z")]
    while frontier:
        t = frontier.pop()
        if size(t) > budget:
            continue
        try:
            ty = normalize(sig, infer_type(sig, tel, t))
        except TypeCheckError:
            continue
        out.append((t, ty))
        frontier += [Proj1(t), Proj2(t)]
    return out


def brute_force_coercions(sig, sub, sup, max_size=12):
    tel = (("z", sub),)
    # the lambda binder accounts for one node
    return _inhabitants(sig, tel, sup, max_size - 1, _paths(sig, tel, max_size - 1))


def test_brute_force_finds_the_known_coercion(sig):
    assert brute_force_coercions(sig, evt(agent(A), patient(P)), evt(agent(A)))


def test_agent_only_is_not_a_subtype_of_agent_patient(sig):
    sub, sup = evt(agent(A)), evt(agent(A), patient(P))
    assert is_subtype(sig, (), sub, sup) is None
    assert brute_force_coercions(sig, sub, sup) == []


@settings(max_examples=1000, deadline=None)
@given(chains(), chains())
def test_decision_is_sub_multiset(a, b):
    found = is_subtype(SIG, (), a.to_type(), b.to_type()) is not None
    assert found == (not (Counter(b.properties) - Counter(a.properties)))


@settings(max_examples=100, deadline=None)
@given(chains(max_size=3), chains(max_size=2))
def test_decision_agrees_with_search(a, b):
    # within size 12 the search is complete for chains this short
    sub, sup = a.to_type(), b.to_type()
    found = is_subtype(SIG, (), sub, sup) is not None
    assert found == bool(brute_force_coercions(SIG, sub, sup))


def test_pool_is_well_sorted():
    for p in PROPERTY_POOL:
        check_type(SIG, (("e", EVENT),), Opaque("p", p), p, subtyping=False)
