import pytest

from dtsevent.sexpr import parse
from dtsevent.signature import ENTITY
from dtsevent.terms import KIND, TYPE, App, Const, Opaque, Pair, Sigma, Var, app
from dtsevent.typecheck import (
    TypeCheckError, check_type, infer_sort, infer_type, sigma_sort_allowed,
)


def test_sorts(sig):
    assert infer_sort(sig, (), ENTITY) == "type"
    assert infer_sort(sig, (), parse("(sigma (x entity) (man x))")) == "type"
    assert infer_sort(sig, (), parse("(-> entity type)")) == "kind"


def test_sigma_over_kind_and_type_is_illegal(sig):
    with pytest.raises(TypeCheckError) as err:
        infer_sort(sig, (), parse("(sigma (A type) entity)"))
    assert err.value.kind == "IllegalSortPair"


def test_pi_over_kind_and_type_is_legal(sig):
    assert infer_sort(sig, (), parse("(pi (A type) entity)")) == "type"


def test_sort_tables():
    assert sigma_sort_allowed("type", "kind")
    assert not sigma_sort_allowed("kind", "type")


def test_infer_constant(sig):
    assert infer_type(sig, (), Const("j")) == ENTITY


def test_infer_projection(sig):
    tel = (("u", parse("(sigma (x entity) (female x))")),)
    assert infer_type(sig, tel, parse("(pi1 (var u))")) == ENTITY
    assert infer_type(sig, tel, parse("(pi2 (var u))")) == parse("(female (pi1 (var u)))")


def test_unbound_variable(sig):
    with pytest.raises(TypeCheckError) as err:
        infer_type(sig, (), Var("w"))
    assert err.value.kind == "UnboundVariable"


def test_not_a_function_and_not_a_pair(sig):
    with pytest.raises(TypeCheckError) as err:
        infer_type(sig, (), App(Const("j"), Const("m")))
    assert err.value.kind == "NotAFunction"
    with pytest.raises(TypeCheckError) as err:
        infer_type(sig, (), parse("(pi1 j)"))
    assert err.value.kind == "NotAPair"


def test_check_dependent_pair(sig):
    prf = Opaque("prf", app(Const("man"), Const("j")))
    check_type(sig, (), Pair(Const("j"), prf), parse("(sigma (x entity) (man x))"))


def test_mismatch_reports_expected_and_found(sig):
    with pytest.raises(TypeCheckError) as err:
        check_type(sig, (), Const("j"), Const("event"))
    e = err.value
    assert e.kind == "Mismatch" and e.expected == Const("event") and e.found == ENTITY


def test_location_path(sig):
    with pytest.raises(TypeCheckError) as err:
        check_type(sig, (), parse("(pair j j)"), parse("(sigma (x entity) event)"))
    assert err.value.location == ("snd",)


def test_sort_mismatch(sig):
    with pytest.raises(TypeCheckError) as err:
        check_type(sig, (), parse("(lambda x x)"), parse("(pi (x j) entity)"))
    assert err.value.kind == "SortMismatch"


REPLACE_WITNESS = "(lambda c (lambda x (replaceA (lambda (y e) (times (left e) (agent e y))) j x (pi2 c))))"
CONTEXT = "(times Unit (sigma (e event) (times (left e) (agent e j))))"
AGENT_GOAL = f"(pi (c {CONTEXT}) (pi (x entity) (sigma (e event) (agent e x))))"


def test_replace_witness_needs_subtyping(sig):
    w, goal = parse(REPLACE_WITNESS), parse(AGENT_GOAL)
    elaborated = check_type(sig, (), w, goal, subtyping=True)
    assert elaborated != w  # a coercion was inserted
    with pytest.raises(TypeCheckError) as err:
        check_type(sig, (), w, goal, subtyping=False)
    assert err.value.kind == "Mismatch"


def test_elaborated_term_checks_without_subtyping(sig):
    goal = parse(AGENT_GOAL)
    elaborated = check_type(sig, (), parse(REPLACE_WITNESS), goal)
    check_type(sig, (), elaborated, goal, subtyping=False)


def test_at_operator_infers_ascription(sig):
    asc = parse("(pi (x entity) (sigma (e event) (agent e x)))")
    t = App(parse("(@ 1 (pi (x entity) (sigma (e event) (agent e x))))"), Var("c"))
    assert infer_type(sig, (("c", parse("Unit")),), t) == asc


def test_hypothetical_pair(sig):
    t = parse("(hyp (w (sigma (y entity) (hat y))) (pi1 w))")
    assert infer_type(sig, (), t) == Sigma("w", parse("(sigma (y entity) (hat y))"), ENTITY)


def test_sorts_classify_types_not_terms(sig):
    assert infer_type(sig, (), TYPE) == KIND
    with pytest.raises(TypeCheckError):
        infer_type(sig, (), KIND)
