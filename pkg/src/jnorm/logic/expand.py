"""Macro expansion of ``mu`` and ``nu`` into the purely additive normed-space language.

The chain of definitions, innermost first:

    EP(p)       extreme point of the sphere through p
    SEP(p)      EP(p) plus two extreme points at distinct nonzero distances
    ADS(p, q)   adjacent special extreme points on one sphere
    HPV(p1..pn) consecutive ADS, pairwise distinct
    HPL(x1..xn) some HPV(p1..p_{n+1}) has edge lengths x1..xn
    MGI(x,y,z)  exists u. HPL(1, x, z, y, u) and 1 < x < z > y > u < 1
    M(x,y,z)    MGI(x+2, y+2, 4+2x+2y+z)
    mu          M
    nu(x)       mu(x, 0, 0)

Every binder introduced here is fresh for the whole input formula, so no
variable of the input is ever captured.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .syntax import (
    App,
    Atom,
    Const,
    Formula,
    Imp,
    Not,
    Quant,
    Scale,
    Term,
    Var,
    all_names,
    conj,
    eq,
)
from .translate import FreshNames, label_sorts, map_atoms

__all__ = [
    "expand_mu",
    "phi_ep",
    "phi_sep",
    "phi_ads",
    "phi_hpv",
    "phi_hpl",
    "phi_mgi",
    "phi_m",
    "numeral",
    "MACRO_SYMBOLS",
]

MACRO_SYMBOLS = frozenset({"mu", "nu", "M", "MGI", "HPL", "HPV", "ADS", "SEP", "EP"})

ZERO = Const("0")
ONE = Const("1")
HALF = Fraction(1, 2)


def norm(v: Term) -> Term:
    return App("norm", (v,))


def vminus(a: Term, b: Term) -> Term:
    return App("vminus", (a, b))


def _exists_all(names: Sequence[Var], body: Formula) -> Formula:
    for v in reversed(names):
        body = Quant("exists", v.name, v.sort, body)
    return body


def _lt(a: Term, b: Term) -> Atom:
    return Atom("<", (a, b))


def _ne(a: Term, b: Term) -> Not:
    return Not(eq(a, b))


def numeral(n: int) -> Term:
    """``1 + 1 + ... + 1`` (``0`` for n = 0)."""
    if n < 0:
        raise ValueError("numerals are nonnegative")
    t: Term = ZERO if n == 0 else ONE
    for _ in range(n - 1):
        t = App("plus", (t, ONE))
    return t


def _sum(parts: Sequence[Term]) -> Term:
    """Left-folded sum skipping literal zeros."""
    parts = [t for t in parts if t != ZERO]
    if not parts:
        return ZERO
    t = parts[0]
    for s in parts[1:]:
        t = App("plus", (t, s))
    return t


def phi_ep(p: Term, fresh: FreshNames) -> Formula:
    u, w = Var(fresh("u"), "V"), Var(fresh("w"), "V")
    np = norm(p)
    hyp = conj(eq(norm(u), np), eq(np, norm(w)), eq(p, Scale(HALF, App("vplus", (u, w)))))
    body = Imp(hyp, conj(eq(u, p), eq(p, w)))
    return Quant("forall", u.name, "V", Quant("forall", w.name, "V", body))


def phi_sep(p: Term, fresh: FreshNames) -> Formula:
    u, w = Var(fresh("u"), "V"), Var(fresh("w"), "V")
    du, dw = norm(vminus(p, u)), norm(vminus(p, w))
    witness = conj(
        phi_ep(u, fresh),
        phi_ep(w, fresh),
        eq(norm(u), norm(w)),
        eq(norm(w), norm(p)),
        _ne(ZERO, du),
        _ne(du, dw),
        _ne(dw, ZERO),
    )
    return conj(phi_ep(p, fresh), _exists_all([u, w], witness))


def phi_ads(p: Term, q: Term, fresh: FreshNames) -> Formula:
    mid = Scale(HALF, App("vplus", (p, q)))
    return conj(
        phi_sep(p, fresh),
        phi_sep(q, fresh),
        _ne(p, q),
        eq(norm(p), norm(q)),
        eq(norm(q), norm(mid)),
    )


def phi_hpv(points: Sequence[Term], fresh: FreshNames) -> Formula:
    parts: List[Formula] = [phi_ads(a, b, fresh) for a, b in zip(points, points[1:])]
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            parts.append(_ne(points[i], points[j]))
    return conj(*parts)


def phi_hpl(lengths: Sequence[Term], fresh: FreshNames) -> Formula:
    pts = [Var(fresh("p"), "V") for _ in range(len(lengths) + 1)]
    edges = [eq(x, norm(vminus(b, a))) for x, a, b in zip(lengths, pts, pts[1:])]
    return _exists_all(pts, conj(phi_hpv(pts, fresh), *edges))


def phi_mgi(x: Term, y: Term, z: Term, fresh: FreshNames) -> Formula:
    u = Var(fresh("s"), "K")
    body = conj(
        phi_hpl([ONE, x, z, y, u], fresh),
        _lt(ONE, x),
        _lt(x, z),
        _lt(y, z),
        _lt(u, y),
        _lt(u, ONE),
    )
    return Quant("exists", u.name, "K", body)


def phi_m(x: Term, y: Term, z: Term, fresh: FreshNames) -> Formula:
    two = numeral(2)
    return phi_mgi(
        _sum([x, two]),
        _sum([y, two]),
        _sum([numeral(4), x, x, y, y, z]),
        fresh,
    )


def expand_mu(f: Formula) -> Formula:
    """Replace every ``mu`` and ``nu`` atom by its normed-space definition."""
    fresh = FreshNames(all_names(f))
    f = label_sorts(f)

    def step(a: Atom) -> Formula:
        if a.pred == "mu":
            return phi_m(*a.args, fresh)
        if a.pred == "nu":
            return phi_m(a.args[0], ZERO, ZERO, fresh)
        return a

    return map_atoms(f, step)
