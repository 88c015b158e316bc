"""Lexicon tables and the global signature they induce."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .signature import ENTITY, EVENT, Signature, core_signature, predicate
from .terms import Const, Term, app

CATEGORIES = ("name", "place", "definite", "noun", "verb", "part", "adv", "prep", "tmod", "adj")
GENDERS = ("female", "male")
ANAPHOR_TRIGGERS = frozenset({"did too", "does too", "so does X", "so is X", "did", "herself", "himself", "this"})


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class Entry:
    word: str
    category: str
    constant: str
    extra: str | None = None


@dataclass
class Lexicon:
    entries: dict[str, dict[str, Entry]] = field(default_factory=lambda: {c: {} for c in CATEGORIES})

    def add(self, e: Entry):
        if e.category not in CATEGORIES:
            raise LexiconError(f"unknown category {e.category!r}")
        self.entries[e.category][e.word.lower()] = e

    def get(self, category: str, word: str) -> Entry | None:
        return self.entries[category].get(word.lower())

    def entity(self, word: str) -> Entry | None:
        """Proper names (including places)."""
        return self.get("name", word) or self.get("place", word)

    def known(self, word: str) -> bool:
        w = word.lower()
        return any(w in table or any(k.split("+")[0] == w for k in table) for table in self.entries.values())

    @property
    def multiword(self) -> dict[str, Entry]:
        return {k: e for table in self.entries.values() for k, e in table.items() if "+" in k}

    def signature(self) -> Signature:
        """Every constant the lexicon mentions, at the arity its category implies."""
        consts: dict[str, Term] = {
            "owner": predicate(ENTITY, ENTITY),
            "before": predicate(EVENT, EVENT),
            "content": predicate(EVENT, EVENT),
            "in": predicate(EVENT, ENTITY),
        }
        for g in GENDERS:
            consts[g] = predicate(ENTITY)
        for cat, table in self.entries.items():
            for e in table.values():
                match cat:
                    case "name" | "place" | "definite":
                        consts[e.constant] = ENTITY
                        if e.extra in GENDERS:
                            consts[gender_proof(e.extra, e.constant)] = app(Const(e.extra), Const(e.constant))
                    case "noun":
                        consts[e.constant] = predicate(ENTITY)
                    case "verb" | "part" | "adv" | "adj":
                        consts[e.constant] = predicate(EVENT)
                    case "prep":
                        consts[e.constant] = predicate(EVENT, ENTITY)
                    case "tmod":
                        consts[e.constant] = ENTITY
                        consts[e.extra] = predicate(EVENT, ENTITY)
        return core_signature().extend(consts)


def gender_proof(gender: str, name: str) -> str:
    return f"{gender}_{name}"


def parse_lexicon(text: str, source: str = "<lexicon>") -> Lexicon:
    lex = Lexicon()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split()
        if len(cols) not in (3, 4):
            raise LexiconError(f"{source}:{lineno}: expected 'word category constant [extra]'")
        word, cat, const, *extra = cols
        if cat == "tmod" and not extra:
            raise LexiconError(f"{source}:{lineno}: tmod needs a predicate column")
        try:
            lex.add(Entry(word, cat, const, extra[0] if extra else None))
        except LexiconError as err:
            raise LexiconError(f"{source}:{lineno}: {err}") from None
    return lex


def load_lexicon(path: str | Path) -> Lexicon:
    p = Path(path)
    return parse_lexicon(p.read_text(encoding="utf-8"), str(p))


def default_lexicon() -> Lexicon:
    text = resources.files("dtsevent").joinpath("data/default.lex").read_text(encoding="utf-8")
    return parse_lexicon(text, "default.lex")
