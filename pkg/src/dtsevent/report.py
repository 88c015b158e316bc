"""End-to-end runs over discourse text and their reports.

The structured form is JSON with this shape::

    {
      "source": "hat.txt",
      "goals": [{"index": 1, "kind": "vp", "goal": "<s-expression>"}],
      "readings": [
        {"label": "strict",
         "witnesses": {"1": "<s-expression>"},
         "interpretation": "<s-expression>",
         "fol": {"exists": "x", "sort": "entity", "body": {...}},
         "fol_text": "∃x. hat(x) ∧ ..."}
      ]
    }

Terms are stored in the s-expression syntax of :mod:`dtsevent.sexpr`; formulas
as nested objects keyed by connective (``pred``/``args``, ``and``, ``not``,
``implies``, ``exists``/``forall`` with ``sort`` and ``body``, ``top``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .anaphora import FelicityGoal, Resolution, resolve_discourse
from .fol import Fol, fol_from_json, fol_to_json, show_fol, to_fol
from .fragment import interpret_discourse
from .lexicon import Lexicon
from .sexpr import parse, print_term
from .terms import Term, show


@dataclass(frozen=True)
class GoalSummary:
    index: int
    kind: str
    goal: Term


@dataclass(frozen=True)
class Reading:
    label: str
    witnesses: dict[int, Term]
    interpretation: Term
    fol: Fol


@dataclass(frozen=True)
class RunReport:
    source: str
    goals: tuple[GoalSummary, ...] = ()
    readings: tuple[Reading, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "goals": [{"index": g.index, "kind": g.kind, "goal": print_term(g.goal)} for g in self.goals],
            "readings": [
                {
                    "label": r.label,
                    "witnesses": {str(i): print_term(w) for i, w in sorted(r.witnesses.items())},
                    "interpretation": print_term(r.interpretation),
                    "fol": fol_to_json(r.fol),
                    "fol_text": show_fol(r.fol),
                }
                for r in self.readings
            ],
        }

    @classmethod
    def from_json(cls, d: dict) -> "RunReport":
        goals = tuple(GoalSummary(g["index"], g["kind"], parse(g["goal"])) for g in d["goals"])
        readings = tuple(
            Reading(r["label"], {int(i): parse(w) for i, w in r["witnesses"].items()},
                    parse(r["interpretation"]), fol_from_json(r["fol"]))
            for r in d["readings"]
        )
        return cls(d["source"], goals, readings)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=2)

    @classmethod
    def loads(cls, text: str) -> "RunReport":
        return cls.from_json(json.loads(text))

    def text(self, fol_only: bool = False) -> str:
        lines = [f"discourse: {self.source}"]
        if not fol_only:
            for g in self.goals:
                lines.append(f"goal @_{g.index} ({g.kind}): {show(g.goal)}")
        for n, r in enumerate(self.readings, 1):
            lines.append(f"reading {n} [{r.label}]")
            if not fol_only:
                for i, w in sorted(r.witnesses.items()):
                    lines.append(f"  @_{i} := {show(w)}")
                lines.append(f"  interpretation: {show(r.interpretation)}")
            lines.append(f"  fol: {show_fol(r.fol)}")
        return "\n".join(lines)


def _goal_summary(g: FelicityGoal) -> GoalSummary:
    return GoalSummary(g.index, g.kind, g.goal_type)


def make_report(source: str, resolutions: list[Resolution]) -> RunReport:
    goals = tuple(_goal_summary(g) for g in resolutions[0].goals) if resolutions else ()
    readings = tuple(
        Reading(r.reading_label, dict(r.assignments), r.interpretation, to_fol(r.interpretation))
        for r in resolutions
    )
    return RunReport(source, goals, readings)


def run_discourse(lex: Lexicon, text: str, source: str = "<discourse>",
                  max_readings: int | None = None,
                  trace: Callable[[str], None] | None = None) -> RunReport:
    """Run one discourse from text to first-order readings."""
    dyn, _ = interpret_discourse(lex, text)
    resolutions = resolve_discourse(lex.signature(), dyn, max_readings=max_readings, trace=trace)
    return make_report(source, resolutions)
