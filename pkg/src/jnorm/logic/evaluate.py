"""Bounded model checking of scalar sentences in J.

Quantifiers range over ``{0, 1, ..., bound}`` plus a few non-natural
samples.  ``mu`` and ``nu`` are decided by the multiplication graph.
Existentials first try witnesses suggested by the body: ``s*t`` for a
conjunct ``mu(s, t, v)`` and ``t`` for a conjunct ``v = t``, so products
beyond the bound are still found.  This is a falsification harness: a
``True`` answer only covers the sampled values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from ..geometry import JSpace
from ..predicates import mult_graph_holds
from .syntax import And, App, Atom, Const, Formula, Imp, Not, Or, Quant, Scale, Term, Var, free_vars

__all__ = ["EvaluationError", "DEFAULT_EXTRAS", "eval_bounded", "find_counterexample", "sample_domain"]

DEFAULT_EXTRAS = (Fraction(-1), Fraction(1, 2), Fraction(7, 3))


class EvaluationError(ValueError):
    pass


def sample_domain(bound: int, extras: Optional[Iterable] = None) -> List:
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    extras = DEFAULT_EXTRAS if extras is None else tuple(extras)
    out = [Fraction(n) for n in range(bound + 1)]
    seen = set(out)
    for x in extras:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


class _Evaluator:
    def __init__(self, domain: Sequence, space: Optional[JSpace]):
        self.domain = list(domain)
        self.space = space
        self._mu: Dict[tuple, bool] = {}

    def mu(self, x, y, z) -> bool:
        key = (x, y, z)
        hit = self._mu.get(key)
        if hit is None:
            hit = self._mu[key] = mult_graph_holds(x, y, z, self.space)
        return hit

    def term(self, t: Term, env: Dict[str, object]):
        if isinstance(t, Const):
            return Fraction(int(t.value))
        if isinstance(t, Var):
            if t.sort == "V":
                raise EvaluationError(
                    "vector variables are not evaluated; expanded normed-space "
                    "formulas are for inspection only"
                )
            try:
                return env[t.name]
            except KeyError:
                raise EvaluationError(f"free variable {t.name!r}") from None
        if isinstance(t, Scale):
            raise EvaluationError("vector terms are not evaluated")
        if isinstance(t, App):
            if t.op in ("norm", "vplus", "vminus"):
                raise EvaluationError("vector terms are not evaluated")
            if t.op == "times":
                raise EvaluationError("products must be translated to mu first")
            args = [self.term(a, env) for a in t.args]
            if t.op == "plus":
                return args[0] + args[1]
            if t.op == "minus":
                return args[0] - args[1]
            if t.op == "S":
                return args[0] + 1
        raise EvaluationError(f"unsupported term {t!r}")

    def formula(self, f: Formula, env: Dict[str, object]) -> bool:
        if isinstance(f, Atom):
            vals = [self.term(a, env) for a in f.args]
            if f.pred == "=":
                return vals[0] == vals[1]
            if f.pred == "<":
                return vals[0] < vals[1]
            if f.pred == "mu":
                return self.mu(*vals)
            if f.pred == "nu":
                return self.mu(vals[0], 0, 0)
            raise EvaluationError(f"unsupported predicate {f.pred!r}")
        if isinstance(f, Not):
            return not self.formula(f.arg, env)
        if isinstance(f, And):
            return all(self.formula(a, env) for a in f.args)
        if isinstance(f, Or):
            return any(self.formula(a, env) for a in f.args)
        if isinstance(f, Imp):
            return not self.formula(f.left, env) or self.formula(f.right, env)
        if isinstance(f, Quant):
            if f.sort == "V":
                raise EvaluationError(
                    "vector quantifiers are not evaluated; expanded normed-space "
                    "formulas are for inspection only"
                )
            if f.kind == "forall":
                if self.vacuous(f, env):
                    return True
                return all(self.formula(f.body, {**env, f.var: x}) for x in self.domain)
            return any(self.formula(f.body, {**env, f.var: x}) for x in self.candidates(f, env))
        raise EvaluationError(f"not a formula: {f!r}")

    def vacuous(self, q: Quant, env) -> bool:
        """``forall v (A => B)`` with a conjunct of ``A`` false and free of ``v``."""
        body = q.body
        if not isinstance(body, Imp):
            return False
        guards = body.left.args if isinstance(body.left, And) else (body.left,)
        return any(q.var not in free_vars(g) and not self.formula(g, env) for g in guards)

    def candidates(self, q: Quant, env):
        seen = set()
        for x in self.hints(q.var, q.body, env):
            if x not in seen:
                seen.add(x)
                yield x
        for x in self.domain:
            if x not in seen:
                seen.add(x)
                yield x

    def hints(self, name: str, f: Formula, env) -> Iterable:
        """Values forced for ``name`` by atoms in conjunctive position."""
        if isinstance(f, And):
            for a in f.args:
                yield from self.hints(name, a, env)
        elif isinstance(f, Quant) and f.var != name and f.kind == "exists":
            yield from self.hints(name, f.body, env)
        elif isinstance(f, Atom) and f.pred in ("mu", "="):
            *known, last = f.args
            pairs = [(known, last)]
            if f.pred == "=":
                pairs.append(([f.args[1]], f.args[0]))
            for src, target in pairs:
                if target != Var(name, target.sort if isinstance(target, Var) else None):
                    continue
                try:
                    vals = [self.term(t, env) for t in src]
                except EvaluationError:
                    continue
                yield vals[0] * vals[1] if f.pred == "mu" else vals[0]


def eval_bounded(
    f: Formula,
    bound: int = 25,
    extra_samples: Optional[Iterable] = None,
    space: Optional[JSpace] = None,
) -> bool:
    """Truth value of the scalar sentence ``f`` over the sample domain."""
    ev = _Evaluator(sample_domain(bound, extra_samples), space)
    return ev.formula(f, {})


def find_counterexample(
    f: Formula,
    bound: int = 25,
    extra_samples: Optional[Iterable] = None,
    space: Optional[JSpace] = None,
) -> Optional[Dict[str, object]]:
    """Values for the leading universal variables that falsify ``f``.

    Returns None when no sample falsifies ``f``; ``{}`` when ``f`` is false
    but starts with no universal quantifier.
    """
    ev = _Evaluator(sample_domain(bound, extra_samples), space)

    def walk(g: Formula, env):
        if isinstance(g, Quant) and g.kind == "forall" and g.sort != "V":
            for x in ev.domain:
                hit = walk(g.body, {**env, g.var: x})
                if hit is not None:
                    return hit
            return None
        return None if ev.formula(g, env) else dict(env)

    return walk(f, {})
