"""Normal-order normalization with a step budget."""

from __future__ import annotations

from .signature import Signature
from .terms import (
    App, AtOp, Const, Hyp, Lam, Opaque, Pair, Pi, Proj1, Proj2, Sigma, Term,
    app, spine, substitute,
)

DEFAULT_BUDGET = 10_000


class DepthExceeded(RuntimeError):
    pass


class _Reducer:
    def __init__(self, sig: Signature | None, budget: int, delta: bool):
        self.sig = sig
        self.budget = budget
        self.delta = delta and sig is not None
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise DepthExceeded(f"normalization exceeded {self.budget} steps")

    def whnf(self, t: Term) -> Term:
        while True:
            match t:
                case App():
                    head, args = spine(t)
                    head = self.whnf(head)
                    if isinstance(head, Lam):
                        self.tick()
                        t = app(substitute(head.body, head.binder, args[0]), *args[1:])
                        continue
                    if self.delta and isinstance(head, Const) and head.name in self.sig.deltas:
                        d = self.sig.deltas[head.name]
                        if len(args) >= d.arity:
                            r = d.rule(self.sig, args[:d.arity], self.whnf)
                            if r is not None:
                                self.tick()
                                t = app(r, *args[d.arity:])
                                continue
                    return app(head, *args)
                case Proj1(a):
                    a = self.whnf(a)
                    if isinstance(a, Pair):
                        self.tick()
                        t = a.fst
                        continue
                    return Proj1(a)
                case Proj2(a):
                    a = self.whnf(a)
                    if isinstance(a, Pair):
                        self.tick()
                        t = a.snd
                        continue
                    return Proj2(a)
                case _:
                    return t

    def nf(self, t: Term) -> Term:
        t = self.whnf(t)
        match t:
            case App(f, a):
                return App(self.nf(f), self.nf(a))
            case Proj1(a):
                return Proj1(self.nf(a))
            case Proj2(a):
                return Proj2(self.nf(a))
            case Pi(x, a, b):
                return Pi(x, self.nf(a), self.nf(b))
            case Sigma(x, a, b):
                return Sigma(x, self.nf(a), self.nf(b))
            case Hyp(x, a, b):
                return Hyp(x, self.nf(a), self.nf(b))
            case Lam(x, b):
                return Lam(x, self.nf(b))
            case Pair(a, b):
                return Pair(self.nf(a), self.nf(b))
            case AtOp(i, ty):
                return AtOp(i, self.nf(ty))
            case Opaque(n, ty):
                return Opaque(n, self.nf(ty))
        return t


def normalize(sig: Signature | None, t: Term, budget: int = DEFAULT_BUDGET, delta: bool = True) -> Term:
    """Reduce beta, projection and (if ``delta``) signature delta redexes exhaustively.

    Raises DepthExceeded when more than ``budget`` contraction steps are needed.
    """
    return _Reducer(sig, budget, delta).nf(t)


def whnf(sig: Signature | None, t: Term, budget: int = DEFAULT_BUDGET) -> Term:
    return _Reducer(sig, budget, True).whnf(t)
