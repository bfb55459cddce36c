"""Translate arithmetic sentences into the scalar language with ``mu``.

The passes run in this order:

1. ``label_sorts``: every variable gets sort ``K``;
2. ``unnest_times``: products only occur in atoms ``z = x*y`` with product-free
   ``x, y, z``; other products are named by fresh existential variables
   placed directly around the atom;
3. ``relativize``: ``forall x f`` becomes ``forall x (nu(x) => f)`` and
   ``exists x f`` becomes ``exists x (nu(x) and f)``;
4. ``eliminate_successor``: ``S(t)`` becomes ``t + 1``;
5. ``introduce_mu``: ``z = x*y`` becomes ``mu(x, y, z)``.

Fresh names are ``_t1, _t2, ...`` (skipping names already in use), so the
output is a deterministic function of the input.
"""

from __future__ import annotations

from typing import Callable, Iterator, List, Optional, Tuple

from .syntax import (
    And,
    App,
    Atom,
    Const,
    Formula,
    Imp,
    Not,
    Or,
    Quant,
    Scale,
    Term,
    Var,
    all_names,
    conj,
    eq,
    free_vars,
)

__all__ = [
    "TranslationError",
    "label_sorts",
    "unnest_times",
    "relativize",
    "eliminate_successor",
    "introduce_mu",
    "translate",
    "FreshNames",
]


class TranslationError(ValueError):
    pass


class FreshNames:
    """Deterministic supply of names ``_{stem}{n}`` avoiding ``used``."""

    def __init__(self, used, stem: str = "t"):
        self.used = set(used)
        self.stem = stem
        self.n = 0

    def __call__(self, stem: Optional[str] = None) -> str:
        while True:
            self.n += 1
            name = f"_{stem or self.stem}{self.n}"
            if name not in self.used:
                self.used.add(name)
                return name


def map_terms(f: Formula, fn: Callable[[Term], Term]) -> Formula:
    """Apply ``fn`` to every atom argument, rebuilding the formula."""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(fn(a) for a in f.args))
    if isinstance(f, Not):
        return Not(map_terms(f.arg, fn))
    if isinstance(f, And):
        return And(tuple(map_terms(a, fn) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(map_terms(a, fn) for a in f.args))
    if isinstance(f, Imp):
        return Imp(map_terms(f.left, fn), map_terms(f.right, fn))
    if isinstance(f, Quant):
        return Quant(f.kind, f.var, f.sort, map_terms(f.body, fn))
    raise TypeError(f"not a formula: {f!r}")


def map_atoms(f: Formula, fn: Callable[[Atom], Formula]) -> Formula:
    if isinstance(f, Atom):
        return fn(f)
    if isinstance(f, Not):
        return Not(map_atoms(f.arg, fn))
    if isinstance(f, And):
        return And(tuple(map_atoms(a, fn) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(map_atoms(a, fn) for a in f.args))
    if isinstance(f, Imp):
        return Imp(map_atoms(f.left, fn), map_atoms(f.right, fn))
    if isinstance(f, Quant):
        return Quant(f.kind, f.var, f.sort, map_atoms(f.body, fn))
    raise TypeError(f"not a formula: {f!r}")


def map_term_bottom_up(t: Term, fn: Callable[[Term], Term]) -> Term:
    if isinstance(t, App):
        t = App(t.op, tuple(map_term_bottom_up(a, fn) for a in t.args))
    elif isinstance(t, Scale):
        t = Scale(t.factor, map_term_bottom_up(t.arg, fn))
    return fn(t)


# -- sorts --


def label_sorts(f: Formula, sort: str = "K") -> Formula:
    def relabel(t: Term) -> Term:
        return Var(t.name, sort) if isinstance(t, Var) else t

    f = map_terms(f, lambda t: map_term_bottom_up(t, relabel))
    return _relabel_binders(f, sort)


def _relabel_binders(f: Formula, sort: str) -> Formula:
    if isinstance(f, Quant):
        return Quant(f.kind, f.var, sort, _relabel_binders(f.body, sort))
    if isinstance(f, Not):
        return Not(_relabel_binders(f.arg, sort))
    if isinstance(f, And):
        return And(tuple(_relabel_binders(a, sort) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(_relabel_binders(a, sort) for a in f.args))
    if isinstance(f, Imp):
        return Imp(_relabel_binders(f.left, sort), _relabel_binders(f.right, sort))
    return f


# -- products --


def _has_times(t: Term) -> bool:
    if isinstance(t, App):
        return t.op == "times" or any(_has_times(a) for a in t.args)
    if isinstance(t, Scale):
        return _has_times(t.arg)
    return False


def _is_product_atom(a: Atom) -> bool:
    """``z = x*y`` or ``x*y = z`` with ``x, y, z`` free of products."""
    if a.pred != "=":
        return False
    for prod, other in ((a.args[1], a.args[0]), (a.args[0], a.args[1])):
        if (
            isinstance(prod, App)
            and prod.op == "times"
            and not any(_has_times(x) for x in prod.args)
            and not _has_times(other)
        ):
            return True
    return False


def _innermost_products(t: Term) -> Iterator[Tuple[Tuple[int, ...], App]]:
    """Products with product-free arguments, left to right, with their paths."""

    def walk(t, path):
        if isinstance(t, App):
            for i, a in enumerate(t.args):
                yield from walk(a, path + (i,))
            if t.op == "times" and not any(_has_times(a) for a in t.args):
                yield path, t
        elif isinstance(t, Scale):
            yield from walk(t.arg, path + (0,))

    return walk(t, ())


def _replace_at(t: Term, path: Tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(t, Scale):
        return Scale(t.factor, _replace_at(t.arg, rest, new))
    args = list(t.args)
    args[i] = _replace_at(args[i], rest, new)
    return App(t.op, tuple(args))


def unnest_times(f: Formula, fresh: Optional[FreshNames] = None) -> Formula:
    fresh = fresh or FreshNames(all_names(f))

    def unnest(a: Atom) -> Formula:
        if not any(_has_times(t) for t in a.args) or _is_product_atom(a):
            return a
        sort = _first_sort(a)
        names: List[Var] = []
        defs: List[Formula] = []
        args = list(a.args)
        while True:
            atom = Atom(a.pred, tuple(args))
            if not any(_has_times(t) for t in args) or _is_product_atom(atom):
                break
            # leftmost innermost product of the leftmost argument that has one
            for idx, t in enumerate(args):
                hit = next(_innermost_products(t), None)
                if hit is not None:
                    break
            path, prod = hit
            w = Var(fresh(), sort)
            names.append(w)
            defs.append(eq(w, prod))
            args[idx] = _replace_at(args[idx], path, w)
        out: Formula = conj(*defs, Atom(a.pred, tuple(args)))
        for w in reversed(names):
            out = Quant("exists", w.name, w.sort, out)
        return out

    return map_atoms(f, unnest)


def _first_sort(a: Atom) -> Optional[str]:
    for t in a.args:
        for v in _vars(t):
            return v.sort
    return "K"


def _vars(t: Term) -> Iterator[Var]:
    if isinstance(t, Var):
        yield t
    elif isinstance(t, App):
        for a in t.args:
            yield from _vars(a)
    elif isinstance(t, Scale):
        yield from _vars(t.arg)


# -- relativization --


def nu(t: Term) -> Atom:
    return Atom("nu", (t,))


def relativize(f: Formula) -> Formula:
    if isinstance(f, Quant):
        body = relativize(f.body)
        guard = nu(Var(f.var, f.sort))
        if f.kind == "forall":
            return Quant("forall", f.var, f.sort, Imp(guard, body))
        return Quant("exists", f.var, f.sort, And((guard, body)))
    if isinstance(f, Not):
        return Not(relativize(f.arg))
    if isinstance(f, And):
        return And(tuple(relativize(a) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(relativize(a) for a in f.args))
    if isinstance(f, Imp):
        return Imp(relativize(f.left), relativize(f.right))
    return f


# -- successor --


def eliminate_successor(f: Formula) -> Formula:
    def step(t: Term) -> Term:
        if isinstance(t, App) and t.op == "S":
            return App("plus", (t.args[0], Const("1")))
        return t

    return map_terms(f, lambda t: map_term_bottom_up(t, step))


# -- mu --


def introduce_mu(f: Formula) -> Formula:
    def step(a: Atom) -> Formula:
        if a.pred != "=":
            return a
        lhs, rhs = a.args
        if isinstance(rhs, App) and rhs.op == "times":
            return Atom("mu", (rhs.args[0], rhs.args[1], lhs))
        if isinstance(lhs, App) and lhs.op == "times":
            return Atom("mu", (lhs.args[0], lhs.args[1], rhs))
        return a

    return map_atoms(f, step)


def translate(f: Formula) -> Formula:
    """The interpretation ``f -> f*`` of an arithmetic sentence."""
    if free_vars(f):
        raise TranslationError(f"not a sentence: free variables {sorted(free_vars(f))}")
    f = label_sorts(f)
    f = unnest_times(f)
    f = relativize(f)
    f = eliminate_successor(f)
    return introduce_mu(f)
