"""A controlled English fragment and its dynamic interpretation.

Grammar (tokens are case-insensitive; commas are ignored)::

    S      ::= [but] NP VP . | so (does|did|is|was) NP .
             | what happened in NAME (is|was) ADJ .
    VP     ::= (did|does) too | did
             | (is|was) PART [by NP] MOD*
             | ADV* VERB [OBJ] MOD* [before NP did]
    OBJ    ::= NP | herself | himself | this
    NP     ::= NAME | the DEF | (a|an) NOUN | (his|her) NOUN
    MOD    ::= ADV | PREP NP | TMOD

Each sentence denotes a dynamic proposition ``λc. T`` over its left context.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .lexicon import Lexicon
from .reduce import normalize
from .signature import ENTITY, EVENT
from .terms import (
    UNIT, App, AtOp, Const, Lam, Pair, Pi, Proj1, Proj2, Sigma, Term, Var,
    app, free_vars, fresh_name, times,
)

CONTEXT = "c"
FUNCTION_WORDS = frozenset({
    "the", "a", "an", "his", "her", "herself", "himself", "this", "is", "was",
    "did", "does", "too", "so", "by", "before", "what", "happened", "but",
})


class FragmentError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message)


class UnknownWord(FragmentError):
    pass


class UnsupportedConstruction(FragmentError):
    pass


@dataclass(frozen=True)
class NP:
    kind: str  # name, definite, indefinite, possessive, reflexive, this
    const: str | None = None
    noun: str | None = None
    gender: str | None = None
    place: bool = False


@dataclass(frozen=True)
class Modifier:
    pred: str
    arg: NP | None = None


@dataclass(frozen=True)
class SentenceTree:
    subject: NP | None
    predicate: str | None = None
    object: NP | None = None
    modifiers: tuple[Modifier, ...] = ()
    voice: str = "active"
    anaphoric: bool = False
    trigger: str | None = None
    anaphor_filter: Term | None = None
    agent: NP | None = None  # by-phrase of a passive
    before: NP | None = None  # "... before NP did"
    adjective: str | None = None


@dataclass(frozen=True)
class ResolutionHints:
    kind: str  # vp, pronominal, propositional
    voice: str = "active"
    bind_to: Term | None = None


@dataclass(frozen=True)
class DynamicProp:
    term: Term
    hints: dict[int, ResolutionHints] = field(default_factory=dict)

    def __eq__(self, other):
        return isinstance(other, DynamicProp) and self.term == other.term and self.hints == other.hints


# -- parsing ----------------------------------------------------------------

_WORD = re.compile(r"[A-Za-z][A-Za-z']*|\.")


def tokenize(lex: Lexicon, text: str) -> list[str]:
    raw = [w.lower() for w in _WORD.findall(text) if w != "."]
    multi = lex.multiword
    out = []
    i = 0
    while i < len(raw):
        if i + 1 < len(raw) and f"{raw[i]}+{raw[i + 1]}" in multi:
            out.append(f"{raw[i]}+{raw[i + 1]}")
            i += 2
        else:
            out.append(raw[i])
            i += 1
    return out


class _Parser:
    def __init__(self, lex: Lexicon, toks: list[str], text: str):
        self.lex = lex
        self.toks = toks
        self.pos = 0
        self.text = text

    def peek(self, k=0):
        i = self.pos + k
        return self.toks[i] if i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def at_end(self):
        return self.pos >= len(self.toks)

    def unsupported(self, why: str):
        return UnsupportedConstruction(f"{why} in {self.text!r}")

    def expect_end(self):
        if not self.at_end():
            tok = self.peek()
            if tok not in FUNCTION_WORDS and not self.lex.known(tok):
                raise UnknownWord(f"unknown word {tok!r}")
            raise self.unsupported(f"unexpected {tok!r}")

    def word_error(self, tok, wanted):
        if tok is None:
            return self.unsupported(f"missing {wanted}")
        if tok not in FUNCTION_WORDS and not self.lex.known(tok):
            return UnknownWord(f"unknown word {tok!r}")
        return self.unsupported(f"expected {wanted}, found {tok!r}")

    def np(self, allow_object=False) -> NP:
        tok = self.take()
        if tok in ("the",):
            n = self.take()
            e = self.lex.get("definite", n or "")
            if e is None:
                raise self.word_error(n, "a definite noun")
            return NP("definite", const=e.constant)
        if tok in ("a", "an", "his", "her"):
            n = self.take()
            e = self.lex.get("noun", n or "")
            if e is None:
                raise self.word_error(n, "a noun")
            if tok in ("a", "an"):
                return NP("indefinite", noun=e.constant)
            return NP("possessive", noun=e.constant, gender="male" if tok == "his" else "female")
        if allow_object and tok in ("herself", "himself"):
            return NP("reflexive", gender="female" if tok == "herself" else "male")
        if allow_object and tok == "this":
            return NP("this")
        e = self.lex.entity(tok or "")
        if e is None:
            raise self.word_error(tok, "a noun phrase")
        return NP("name", const=e.constant, place=e.category == "place")

    def starts_np(self, allow_object=False) -> bool:
        tok = self.peek()
        if tok is None:
            return False
        if tok in ("the", "a", "an", "his", "her"):
            return True
        if allow_object and tok in ("herself", "himself", "this"):
            return True
        return self.lex.entity(tok) is not None

    def modifiers(self) -> tuple[list[Modifier], NP | None]:
        mods = []
        while not self.at_end():
            tok = self.peek()
            if tok == "before":
                self.take()
                who = self.np()
                if self.take() != "did":
                    raise self.unsupported("only 'before NP did' is supported")
                self.expect_end()
                return mods, who
            if (e := self.lex.get("adv", tok)) is not None:
                self.take()
                mods.append(Modifier(e.constant))
            elif (e := self.lex.get("tmod", tok)) is not None:
                self.take()
                mods.append(Modifier(e.extra, NP("name", const=e.constant)))
            elif (e := self.lex.get("prep", tok)) is not None:
                self.take()
                mods.append(Modifier(e.constant, self.np()))
            else:
                raise self.word_error(tok, "a modifier")
        return mods, None

    def sentence(self) -> SentenceTree:
        if self.peek() == "not" or "not" in self.toks:
            raise self.unsupported("negation")
        if self.peek() == "but":
            self.take()
        if self.peek() == "so" and self.peek(1) in ("does", "did", "is", "was"):
            self.take()
            aux = self.take()
            subj = self.np()
            self.expect_end()
            passive = aux in ("is", "was")
            return SentenceTree(subj, voice="passive" if passive else "active", anaphoric=True,
                                trigger="so is X" if passive else "so does X")
        if self.toks[:3] == ["what", "happened", "in"]:
            self.pos = 3
            place = self.np()
            if self.take() not in ("is", "was"):
                raise self.unsupported("expected 'is' after the event description")
            adj_tok = self.take()
            adj = self.lex.get("adj", adj_tok or "")
            if adj is None:
                raise self.word_error(adj_tok, "an adjective")
            self.expect_end()
            flt = app(Const("in"), Var("e"), Const(place.const))
            return SentenceTree(None, anaphoric=True, trigger="this", anaphor_filter=flt,
                                adjective=adj.constant)
        subj = self.np()
        if subj.kind in ("possessive",):
            raise self.unsupported("possessive subject")
        tok = self.peek()
        if tok in ("did", "does") and self.peek(1) == "too":
            self.pos += 2
            self.expect_end()
            return SentenceTree(subj, anaphoric=True, trigger=f"{tok} too")
        if tok == "did" and self.peek(1) is None:
            self.take()
            return SentenceTree(subj, anaphoric=True, trigger="did")
        if tok in ("is", "was") and self.lex.get("part", self.peek(1) or "") is not None:
            self.take()
            part = self.lex.get("part", self.take())
            agent = None
            if self.peek() == "by":
                self.take()
                agent = self.np()
            mods, before = self.modifiers()
            return SentenceTree(subj, part.constant, None, tuple(mods), voice="passive",
                                agent=agent, before=before)
        pre = []
        while (e := self.lex.get("adv", self.peek() or "")) is not None:
            self.take()
            pre.append(Modifier(e.constant))
        vtok = self.take()
        verb = self.lex.get("verb", vtok or "")
        if verb is None:
            raise self.word_error(vtok, "a verb")
        obj = self.np(allow_object=True) if self.starts_np(allow_object=True) else None
        mods, before = self.modifiers()
        anaphoric = obj is not None and obj.kind in ("reflexive", "this")
        trigger = None
        if anaphoric:
            trigger = "this" if obj.kind == "this" else ("herself" if obj.gender == "female" else "himself")
        return SentenceTree(subj, verb.constant, obj, tuple(pre + mods), before=before,
                            anaphoric=anaphoric, trigger=trigger)


def parse_sentence(lex: Lexicon, text: str) -> SentenceTree:
    """Parse one sentence of the fragment. Raises UnknownWord or UnsupportedConstruction."""
    toks = tokenize(lex, text)
    if not toks:
        raise UnsupportedConstruction("empty sentence")
    return _Parser(lex, toks, text.strip()).sentence()


# -- interpretation ---------------------------------------------------------------

class _Builder:
    def __init__(self, index: int):
        self.index = index
        self.hints: dict[int, ResolutionHints] = {}
        self.wrappers: list[tuple[str, Term]] = []
        self.taken = {CONTEXT, "e", "x"}

    def fresh(self, base):
        name = fresh_name(base, self.taken)
        self.taken.add(name)
        return name

    def at(self, ascription: Term, hints: ResolutionHints, ctx: Term = Var(CONTEXT)) -> Term:
        i = self.index
        self.index += 1
        self.hints[i] = hints
        return App(AtOp(i, ascription), ctx)

    def np_term(self, np: NP, subject: Term | None = None) -> Term:
        x = Var("x")
        match np.kind:
            case "name" | "definite":
                return Const(np.const)
            case "indefinite" | "possessive":
                props = [App(Const(np.noun), x)]
                if np.kind == "possessive":
                    if subject is None:
                        raise UnsupportedConstruction("possessive without an owner")
                    props.append(app(Const("owner"), x, subject))
                v = self.fresh("v")
                self.wrappers.append((v, Sigma("x", ENTITY, times(*props))))
                return Proj1(Var(v))
            case "reflexive":
                asc = Sigma("x", ENTITY, App(Const(np.gender), x))
                return Proj1(self.at(asc, ResolutionHints("pronominal", bind_to=subject)))
            case "this":
                return Proj1(self.at(Sigma("e", EVENT, UNIT), ResolutionHints("propositional")))
        raise UnsupportedConstruction(f"noun phrase {np.kind}")

    def wrap(self, body: Term, wrappers) -> Term:
        for v, w in reversed(wrappers):
            body = Sigma(v, w, body)
        return body


def _role_goal(role: str) -> Term:
    return Pi("x", ENTITY, Sigma("e", EVENT, app(Const(role), Var("e"), Var("x"))))


def _entity_subject(b: _Builder, np: NP) -> Term:
    if np.kind not in ("name", "definite"):
        raise UnsupportedConstruction("anaphoric clause needs a named subject")
    return b.np_term(np)


def interpret_sentence(lex: Lexicon, tree: SentenceTree, index: int = 1) -> DynamicProp:
    """The dynamic proposition ``λc. ...`` of one sentence; @-indices start at ``index``."""
    b = _Builder(index)
    c = Var(CONTEXT)
    e = Var("e")
    if tree.anaphoric and tree.trigger in ("did too", "does too", "did", "so does X", "so is X"):
        subj = _entity_subject(b, tree.subject)
        role = "patient" if tree.voice == "passive" else "agent"
        body = App(b.at(_role_goal(role), ResolutionHints("vp", voice=tree.voice)), subj)
        return DynamicProp(Lam(CONTEXT, body), b.hints)
    if tree.adjective is not None:
        ev = Proj1(b.at(Sigma("e", EVENT, tree.anaphor_filter), ResolutionHints("propositional")))
        return DynamicProp(Lam(CONTEXT, App(Const(tree.adjective), ev)), b.hints)

    places = []
    subj = b.np_term(tree.subject)
    if tree.subject.place:
        places.append(subj)
    props = [App(Const(tree.predicate), e)]
    if tree.voice == "passive":
        if tree.agent is not None:
            a = b.np_term(tree.agent, subj)
            props.append(app(Const("agent"), e, a))
            if tree.agent.place:
                places.append(a)
        props.append(app(Const("patient"), e, subj))
    else:
        props.append(app(Const("agent"), e, subj))
        if tree.object is not None:
            o = b.np_term(tree.object, subj)
            role = "content" if tree.object.kind == "this" else "patient"
            props.append(app(Const(role), e, o))
            if tree.object.place:
                places.append(o)
    for m in tree.modifiers:
        if m.arg is None:
            props.append(App(Const(m.pred), e))
        else:
            props.append(app(Const(m.pred), e, b.np_term(m.arg, subj)))
    for p in places:
        loc = app(Const("in"), e, p)
        if loc not in props:
            props.append(loc)
    body = b.wrap(Sigma("e", EVENT, times(*props)), b.wrappers)
    if tree.before is not None:
        u, v = b.fresh("u"), b.fresh("w")
        ev_u: Term = Var(u)
        for _ in b.wrappers:
            ev_u = Proj2(ev_u)
        other = _entity_subject(b, tree.before)
        ana = App(b.at(_role_goal("agent"), ResolutionHints("vp"), Pair(c, Var(u))), other)
        body = Sigma(u, body, Sigma(v, ana, app(Const("before"), Proj1(ev_u), Proj1(Var(v)))))
    return DynamicProp(Lam(CONTEXT, body), b.hints)


def merge(d1: DynamicProp, d2: DynamicProp) -> DynamicProp:
    """Dynamic conjunction ``λc. Σu: d1 c. d2 (c, u)``."""
    c = Var(CONTEXT)
    u = fresh_name("u", free_vars(d1.term) | free_vars(d2.term) | {CONTEXT})
    t = Lam(CONTEXT, Sigma(u, App(d1.term, c), App(d2.term, Pair(c, Var(u)))))
    return DynamicProp(normalize(None, t), {**d1.hints, **d2.hints})


def sequence_discourse(props: list[DynamicProp]) -> DynamicProp:
    if not props:
        raise ValueError("empty discourse")
    out = props[0]
    for p in props[1:]:
        out = merge(out, p)
    return out


_SENTENCE = re.compile(r"[^.]+\.?")


def split_discourse(text: str) -> list[tuple[int, str]]:
    """(line number, sentence) pairs; ``#`` starts a comment."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        for s in _SENTENCE.findall(line):
            if s.strip(" ."):
                out.append((lineno, s.strip()))
    return out


def interpret_discourse(lex: Lexicon, text: str) -> tuple[DynamicProp, list[SentenceTree]]:
    props, trees = [], []
    index = 1
    for lineno, sentence in split_discourse(text):
        try:
            tree = parse_sentence(lex, sentence)
            prop = interpret_sentence(lex, tree, index)
        except FragmentError as err:
            err.line = lineno
            raise
        index += len(prop.hints)
        trees.append(tree)
        props.append(prop)
    if not props:
        raise UnsupportedConstruction("discourse has no sentences")
    return sequence_discourse(props), trees
