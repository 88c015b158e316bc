import pytest

from dtsevent.reduce import DepthExceeded, normalize, whnf
from dtsevent.replace import REPLACE_ARITY
from dtsevent.sexpr import parse
from dtsevent.terms import App, Const, Opaque, Pair, Proj1, Proj2, Var, spine


def test_projection(sig):
    assert normalize(sig, Proj1(Pair(Const("j"), Const("m")))) == Const("j")
    assert normalize(sig, Proj2(Pair(Const("j"), Const("m")))) == Const("m")


def test_beta(sig):
    assert normalize(sig, parse("((lambda x x) j)")) == Const("j")


def test_witness_applied_to_context_is_stuck(sig):
    # the replaceA term gets stuck on a projection of an opaque context
    w = parse("(lambda c (lambda x (replaceA p j x (pi1 (pi2 c)))))")
    out = normalize(sig, App(App(w, Var("c0")), Const("m")))
    assert out == parse("(replaceA p j m (pi1 (pi2 (var c0))))")


def test_under_binders(sig):
    assert normalize(sig, parse("(lambda y ((lambda x (agent y x)) j))")) == parse("(lambda y (agent y j))")


def test_whnf_stops_at_head(sig):
    t = parse("(pair ((lambda x x) j) m)")
    assert whnf(sig, t) == t


def test_divergence_is_bounded(sig):
    omega = parse("((lambda x (x x)) (lambda x (x x)))")
    with pytest.raises(DepthExceeded):
        normalize(sig, omega, budget=500)


U0 = "(pair e0 (pair pl pa))"


def test_replace_fires_on_canonical_pair(sig):
    t = parse(f"(replaceA (lambda (y e) (times (left e) (agent e y))) j m {U0})")
    out = normalize(sig, t)
    assert isinstance(out, Pair) and isinstance(out.fst, Opaque) and isinstance(out.snd, Opaque)
    assert out.fst.type == Const("event")
    assert out.snd.type == parse(f"(times (left (opaque {out.fst.name} event)) (agent (opaque {out.fst.name} event) m))")


def test_replace_is_deterministic(sig):
    t = parse(f"(replaceA (lambda (y e) (times (left e) (agent e y))) j m {U0})")
    assert normalize(sig, t) == normalize(sig, t)


def test_replace_without_delta(sig):
    t = parse(f"(replaceA (lambda (y e) (left e)) j m {U0})")
    assert normalize(sig, t, delta=False) == t


def test_partial_replace_is_stuck(sig):
    t = parse("(replaceA (lambda (y e) (left e)) j m)")
    assert normalize(sig, t) == t
    assert REPLACE_ARITY["replaceAP"] == 6
    assert spine(t)[0] == Const("replaceA")
