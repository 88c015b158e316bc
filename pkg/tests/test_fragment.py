import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtsevent.fol import fol_equivalent, to_fol
from dtsevent.fragment import (
    UnknownWord, UnsupportedConstruction, interpret_discourse, interpret_sentence,
    merge, parse_sentence, sequence_discourse, split_discourse,
)
from dtsevent.lexicon import LexiconError, parse_lexicon
from dtsevent.reduce import normalize
from dtsevent.sexpr import parse
from dtsevent.terms import UNIT_VAL, App, AtOp, Const, spine

from strategies import sentences


def interp(lex, text):
    return interpret_sentence(lex, parse_sentence(lex, text))


def test_plain_sentence(lex):
    tree = parse_sentence(lex, "John left.")
    assert tree.subject.const == "j" and tree.predicate == "left"
    assert tree.voice == "active" and not tree.anaphoric
    assert interp(lex, "John left.").term == parse(
        "(lambda c (sigma (e event) (times (left e) (agent e j))))")


def test_did_too(lex):
    tree = parse_sentence(lex, "Mary did too.")
    assert tree.anaphoric and tree.subject.const == "m" and tree.voice == "active"
    d = interp(lex, "Mary did too.")
    assert d.term == parse("(lambda c ((@ 1 (pi (x entity) (sigma (e event) (agent e x)))) c m))")
    assert d.hints[1].kind == "vp"


def test_so_is_is_passive(lex):
    tree = parse_sentence(lex, "So is Ann.")
    assert tree.anaphoric and tree.subject.const == "a" and tree.voice == "passive"


def test_so_does_matches_does_too(lex):
    a = interp(lex, "So does Bob.")
    b = interp(lex, "Bob does too.")
    assert a.term == b.term


def test_adverb_and_time(lex):
    assert interp(lex, "John quietly ate the cake last night.").term == parse(
        "(lambda k (sigma (e event) (times (ate e) (agent e j) (patient e c) (quietly e) (at e ln))))")


def test_reflexive(lex):
    d = interp(lex, "Mary loves herself.")
    body = d.term.body
    patient = body.second.second.second
    head, args = spine(patient)
    assert head == Const("patient")
    at = args[1].arg.fn
    assert isinstance(at, AtOp) and at.annotated_type == parse("(sigma (x entity) (female x))")
    assert d.hints[1].kind == "pronominal" and d.hints[1].bind_to == Const("m")


def test_possessive_introduces_owned_entity(lex):
    assert interp(lex, "John likes his hat.").term == parse(
        "(lambda c (sigma (v (sigma (x entity) (times (hat x) (owner x j))))"
        " (sigma (e event) (times (like e) (agent e j) (patient e (pi1 v))))))")


def test_hat_discourse_shape(lex):
    d, trees = interpret_discourse(lex, "John likes his hat. Fred does too.")
    assert len(trees) == 2
    assert d.term == parse(
        "(lambda c (sigma (u (sigma (v (sigma (x entity) (times (hat x) (owner x j))))"
        " (sigma (e event) (times (like e) (agent e j) (patient e (pi1 v))))))"
        " ((@ 1 (pi (x entity) (sigma (e event) (agent e x)))) (pair c u) f)))")


def test_single_sentence_sequence_is_identity(lex):
    d = interp(lex, "John left.")
    assert sequence_discourse([d]) == d


def test_indices_are_numbered_across_sentences(lex):
    d, _ = interpret_discourse(lex, "John left. Mary did too. Bob did too.")
    assert sorted(d.hints) == [1, 2]


@pytest.mark.parametrize("text,error", [
    ("John sings.", UnknownWord),
    ("Every man left.", UnknownWord),
    ("John did not leave.", UnsupportedConstruction),
])
def test_errors(lex, text, error):
    with pytest.raises(error):
        parse_sentence(lex, text)


def test_error_carries_line(lex):
    with pytest.raises(UnknownWord) as err:
        interpret_discourse(lex, "John left.\nMary sings.")
    assert err.value.line == 2


def test_split_discourse_skips_comments():
    assert split_discourse("# note\nJohn left. Mary did too.\n") == [(2, "John left."), (2, "Mary did too.")]


def test_lexicon_rejects_bad_rows():
    with pytest.raises(LexiconError):
        parse_lexicon("John name")
    with pytest.raises(LexiconError):
        parse_lexicon("John person j")


def test_custom_lexicon(lex):
    extra = parse_lexicon("Sue name s female\nleft verb left\n")
    assert interp(extra, "Sue left.").term == parse(
        "(lambda c (sigma (e event) (times (left e) (agent e s))))")


def _closed_fol(d):
    return to_fol(normalize(None, App(d.term, UNIT_VAL)))


@settings(max_examples=1000, deadline=None)
@given(st.lists(sentences(), min_size=3, max_size=3))
def test_sequencing_is_associative(lex, texts):
    a, b, c = (interp(lex, t) for t in texts)
    left = merge(merge(a, b), c)
    right = merge(a, merge(b, c))
    assert fol_equivalent(_closed_fol(left), _closed_fol(right))
