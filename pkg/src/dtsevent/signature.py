"""Global signatures: constant declarations plus delta-reduction rules."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

from .terms import TYPE, Const, Term, arrow

ENTITY = Const("entity")
EVENT = Const("event")


@dataclass(frozen=True)
class Delta:
    """A reduction rule for a constant applied to exactly ``arity`` arguments.

    ``rule(sig, args, whnf)`` returns the reduct, or None when stuck.
    """

    arity: int
    rule: Callable


@dataclass(frozen=True)
class Signature:
    constants: Mapping[str, Term] = field(default_factory=dict)
    deltas: Mapping[str, Delta] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constants", MappingProxyType(dict(self.constants)))
        object.__setattr__(self, "deltas", MappingProxyType(dict(self.deltas)))

    def type_of(self, name: str) -> Term | None:
        return self.constants.get(name)

    def extend(self, constants: Mapping[str, Term] = (), deltas: Mapping[str, Delta] = ()) -> "Signature":
        return Signature({**self.constants, **dict(constants)}, {**self.deltas, **dict(deltas)})

    def names_of_type(self, ty: Term) -> list[str]:
        return [n for n, t in self.constants.items() if t == ty]


def predicate(*arg_types: Term) -> Term:
    """Type of a curried predicate constant, e.g. ``event -> entity -> type``."""
    return arrow(*arg_types, TYPE)


def core_signature() -> Signature:
    """Base types and thematic roles, plus the replace combinators."""
    from .replace import replace_constants

    consts = {
        "entity": TYPE,
        "event": TYPE,
        "agent": predicate(EVENT, ENTITY),
        "patient": predicate(EVENT, ENTITY),
    }
    rc, rd = replace_constants()
    return Signature({**consts, **rc}, rd)
