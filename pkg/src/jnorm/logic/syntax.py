"""Formula ASTs and their s-expression syntax.

One AST family covers three languages:

``pa``  arithmetic: ``0``, ``S``, ``plus``, ``times``, ``=``
``k``   scalar sort only: ``0``, ``1``, ``plus``, ``minus``, ``=``, ``<``,
        ``mu``, ``nu``
``ns``  additive normed spaces: the ``k`` scalar symbols without ``mu``/``nu``,
        plus ``norm``, ``vplus``, ``vminus`` and ``(scale q v)`` for a
        rational literal ``q``

Binders are ``(forall x f)`` (unsorted, as in ``pa``) or
``(forall (x K) f)`` / ``(forall (v V) f)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple, Union

__all__ = [
    "Const",
    "Var",
    "App",
    "Scale",
    "Atom",
    "Not",
    "And",
    "Or",
    "Imp",
    "Quant",
    "Term",
    "Formula",
    "ParseError",
    "parse",
    "pretty_print",
    "conj",
    "disj",
    "forall",
    "exists",
    "eq",
    "free_vars",
    "all_names",
    "subformulas",
    "symbols",
    "alpha_equal",
]


class ParseError(ValueError):
    def __init__(self, message: str, pos: Optional[int] = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at offset {pos})")


# -- terms --


@dataclass(frozen=True)
class Const:
    value: str  # "0" or "1"


@dataclass(frozen=True)
class Var:
    name: str
    sort: Optional[str] = None  # None (unsorted), "K" or "V"


@dataclass(frozen=True)
class App:
    op: str
    args: Tuple["Term", ...]


@dataclass(frozen=True)
class Scale:
    factor: Fraction
    arg: "Term"


Term = Union[Const, Var, App, Scale]

# -- formulas --


@dataclass(frozen=True)
class Atom:
    pred: str  # "=", "<", "mu", "nu"
    args: Tuple[Term, ...]


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: Tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    args: Tuple["Formula", ...]


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Quant:
    kind: str  # "forall" or "exists"
    var: str
    sort: Optional[str]
    body: "Formula"


Formula = Union[Atom, Not, And, Or, Imp, Quant]


def conj(*fs: Formula) -> Formula:
    return fs[0] if len(fs) == 1 else And(tuple(fs))


def disj(*fs: Formula) -> Formula:
    return fs[0] if len(fs) == 1 else Or(tuple(fs))


def forall(v: Var, body: Formula) -> Quant:
    return Quant("forall", v.name, v.sort, body)


def exists(v: Var, body: Formula) -> Quant:
    return Quant("exists", v.name, v.sort, body)


def eq(a: Term, b: Term) -> Atom:
    return Atom("=", (a, b))


# -- languages --

_TERM_ARITY = {"S": 1, "plus": 2, "times": 2, "minus": 2, "norm": 1, "vplus": 2, "vminus": 2}
_PRED_ARITY = {"=": 2, "<": 2, "mu": 3, "nu": 1}

LANGUAGES = {
    "pa": {"consts": {"0"}, "terms": {"S", "plus", "times"}, "preds": {"="}, "sorts": {None, "K"}},
    "k": {
        "consts": {"0", "1"},
        "terms": {"plus", "minus"},
        "preds": {"=", "<", "mu", "nu"},
        "sorts": {None, "K"},
    },
    "ns": {
        "consts": {"0", "1"},
        "terms": {"plus", "minus", "norm", "vplus", "vminus", "scale"},
        "preds": {"=", "<"},
        "sorts": {"K", "V"},
    },
    # everything at once: intermediate stages of the translation
    "any": {
        "consts": {"0", "1"},
        "terms": set(_TERM_ARITY) | {"scale"},
        "preds": set(_PRED_ARITY),
        "sorts": {None, "K", "V"},
    },
}

# -- printing --


def _fmt_term(t: Term) -> str:
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Scale):
        return f"(scale {t.factor} {_fmt_term(t.arg)})"
    return "(" + " ".join([t.op] + [_fmt_term(a) for a in t.args]) + ")"


def _fmt(f: Formula, out: List[str]) -> None:
    if isinstance(f, Atom):
        out.append("(" + " ".join([f.pred] + [_fmt_term(a) for a in f.args]) + ")")
    elif isinstance(f, Not):
        out.append("(not ")
        _fmt(f.arg, out)
        out.append(")")
    elif isinstance(f, (And, Or)):
        out.append("(and" if isinstance(f, And) else "(or")
        for a in f.args:
            out.append(" ")
            _fmt(a, out)
        out.append(")")
    elif isinstance(f, Imp):
        out.append("(imp ")
        _fmt(f.left, out)
        out.append(" ")
        _fmt(f.right, out)
        out.append(")")
    elif isinstance(f, Quant):
        binder = f.var if f.sort is None else f"({f.var} {f.sort})"
        out.append(f"({f.kind} {binder} ")
        _fmt(f.body, out)
        out.append(")")
    else:
        raise TypeError(f"not a formula: {f!r}")


def pretty_print(f) -> str:
    """Canonical one-line s-expression; ``parse`` inverts it."""
    if isinstance(f, (Const, Var, App, Scale)):
        return _fmt_term(f)
    out: List[str] = []
    _fmt(f, out)
    return "".join(out)


# -- parsing --

_TOK = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")
_RATIONAL = re.compile(r"-?\d+(/\d+)?$")
_RESERVED = {"forall", "exists", "not", "and", "or", "imp", "scale"} | set(_TERM_ARITY) | {"mu", "nu"}


def _tokenize(text: str) -> List[Tuple[str, int]]:
    toks = []
    pos = 0
    while True:
        m = _TOK.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError("unreadable input", pos)
            return toks
        toks.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()


class _Parser:
    def __init__(self, text: str, language: str, free: Dict[str, Optional[str]]):
        if language not in LANGUAGES:
            raise ValueError(f"unknown language {language!r}")
        self.lang = LANGUAGES[language]
        self.toks = _tokenize(text)
        self.i = 0
        self.free = dict(free)
        self.end = len(text)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, self.end)

    def take(self):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input", self.end)
        self.i += 1
        return tok

    def expect(self, s: str):
        tok, pos = self.take()
        if tok != s:
            raise ParseError(f"expected {s!r}, found {tok!r}", pos)

    def formula(self, scope: Dict[str, Optional[str]]) -> Formula:
        tok, pos = self.take()
        if tok != "(":
            raise ParseError(f"expected a formula, found {tok!r}", pos)
        head, hpos = self.take()
        if head in ("forall", "exists"):
            name, sort = self.binder()
            inner = dict(scope)
            inner[name] = sort
            body = self.formula(inner)
            self.expect(")")
            return Quant(head, name, sort, body)
        if head == "not":
            f = self.formula(scope)
            self.expect(")")
            return Not(f)
        if head in ("and", "or"):
            args = []
            while self.peek()[0] == "(":
                args.append(self.formula(scope))
            if not args:
                raise ParseError(f"{head} needs at least one argument", hpos)
            self.expect(")")
            return And(tuple(args)) if head == "and" else Or(tuple(args))
        if head == "imp":
            a = self.formula(scope)
            b = self.formula(scope)
            self.expect(")")
            return Imp(a, b)
        if head in _PRED_ARITY:
            if head not in self.lang["preds"]:
                raise ParseError(f"predicate {head!r} is not in this language", hpos)
            args = self.args(scope, hpos, head)
            if len(args) != _PRED_ARITY[head]:
                raise ParseError(f"{head} takes {_PRED_ARITY[head]} arguments, got {len(args)}", hpos)
            self.check_atom(head, args, hpos)
            return Atom(head, tuple(args))
        raise ParseError(f"unknown formula head {head!r}", hpos)

    def binder(self) -> Tuple[str, Optional[str]]:
        tok, pos = self.take()
        if tok == "(":
            name, npos = self.take()
            sort, spos = self.take()
            if sort not in ("K", "V"):
                raise ParseError(f"unknown sort {sort!r}", spos)
            self.expect(")")
        else:
            name, npos, sort = tok, pos, None
        if not _IDENT.match(name or "") or name in _RESERVED:
            raise ParseError(f"bad variable name {name!r}", npos)
        if sort not in self.lang["sorts"]:
            raise ParseError(f"sort {sort} is not allowed in this language", npos)
        return name, sort

    def args(self, scope, hpos, head) -> List[Term]:
        out = []
        while self.peek()[0] not in (")", None):
            out.append(self.term(scope))
        self.expect(")")
        return out

    def term(self, scope) -> Term:
        tok, pos = self.take()
        if tok == ")":
            raise ParseError("unexpected ')'", pos)
        if tok != "(":
            if tok in ("0", "1"):
                if tok not in self.lang["consts"]:
                    raise ParseError(f"constant {tok} is not in this language", pos)
                return Const(tok)
            if not _IDENT.match(tok) or tok in _RESERVED:
                raise ParseError(f"bad term {tok!r}", pos)
            if tok in scope:
                return Var(tok, scope[tok])
            if tok in self.free:
                return Var(tok, self.free[tok])
            raise ParseError(f"unbound variable {tok!r}", pos)
        head, hpos = self.take()
        if head == "scale":
            if "scale" not in self.lang["terms"]:
                raise ParseError("scale is not in this language", hpos)
            q, qpos = self.take()
            if not _RATIONAL.match(q or ""):
                raise ParseError(f"scale needs a rational literal, got {q!r}", qpos)
            arg = self.term(scope)
            self.expect(")")
            if _sort_of(arg) != "V":
                raise ParseError("scale applies to vectors", hpos)
            return Scale(Fraction(q), arg)
        if head not in _TERM_ARITY:
            raise ParseError(f"unknown function symbol {head!r}", hpos)
        if head not in self.lang["terms"]:
            raise ParseError(f"function {head!r} is not in this language", hpos)
        args = self.args(scope, hpos, head)
        if len(args) != _TERM_ARITY[head]:
            raise ParseError(f"{head} takes {_TERM_ARITY[head]} arguments, got {len(args)}", hpos)
        t = App(head, tuple(args))
        want = "V" if head in ("norm", "vplus", "vminus") else "K"
        for a in args:
            if (_sort_of(a) == "V") != (want == "V"):
                raise ParseError(f"argument of {head} has the wrong sort", hpos)
        return t

    def check_atom(self, head, args, pos):
        sorts = [_sort_of(a) == "V" for a in args]
        if head == "=":
            if sorts[0] != sorts[1]:
                raise ParseError("= compares terms of different sorts", pos)
        elif any(sorts):
            raise ParseError(f"{head} takes scalar arguments", pos)


def _sort_of(t: Term) -> Optional[str]:
    if isinstance(t, Var):
        return t.sort
    if isinstance(t, Scale):
        return "V"
    if isinstance(t, App):
        if t.op in ("vplus", "vminus"):
            return "V"
        return "K"
    return "K"


def parse(text: str, language: str = "any", free: Optional[Dict[str, Optional[str]]] = None) -> Formula:
    """Parse one formula.  Variables must be bound unless listed in ``free``."""
    p = _Parser(text, language, free or {})
    f = p.formula({})
    tok, pos = p.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok!r}", pos)
    return f


# -- traversal helpers --


def _term_vars(t: Term) -> Iterator[Var]:
    if isinstance(t, Var):
        yield t
    elif isinstance(t, App):
        for a in t.args:
            yield from _term_vars(a)
    elif isinstance(t, Scale):
        yield from _term_vars(t.arg)


def free_vars(f) -> set:
    if isinstance(f, (Const, Var, App, Scale)):
        return {v.name for v in _term_vars(f)}
    if isinstance(f, Atom):
        return {v.name for a in f.args for v in _term_vars(a)}
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (And, Or)):
        return set().union(*(free_vars(a) for a in f.args))
    if isinstance(f, Imp):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Quant):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.arg)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            yield from subformulas(a)
    elif isinstance(f, Imp):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, Quant):
        yield from subformulas(f.body)


def _term_symbols(t: Term) -> Iterator[str]:
    if isinstance(t, Const):
        yield t.value
    elif isinstance(t, App):
        yield t.op
        for a in t.args:
            yield from _term_symbols(a)
    elif isinstance(t, Scale):
        yield "scale"
        yield from _term_symbols(t.arg)


def symbols(f: Formula) -> set:
    """Every predicate, function, connective and quantifier symbol used."""
    out = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            out.add(g.pred)
            for a in g.args:
                out.update(_term_symbols(a))
        elif isinstance(g, Quant):
            out.add(g.kind)
        else:
            out.add(type(g).__name__.lower())
    return out


def all_names(f: Formula) -> set:
    """Names of all variables, bound or free."""
    names = set(free_vars(f))
    for g in subformulas(f):
        if isinstance(g, Quant):
            names.add(g.var)
    return names


def _alpha_term(s: Term, t: Term, env_s, env_t) -> bool:
    if type(s) is not type(t):
        return False
    if isinstance(s, Var):
        bs, bt = env_s.get(s.name), env_t.get(t.name)
        if bs is None and bt is None:
            return s.name == t.name and s.sort == t.sort
        return bs == bt and s.sort == t.sort
    if isinstance(s, Const):
        return s == t
    if isinstance(s, Scale):
        return s.factor == t.factor and _alpha_term(s.arg, t.arg, env_s, env_t)
    return s.op == t.op and len(s.args) == len(t.args) and all(
        _alpha_term(a, b, env_s, env_t) for a, b in zip(s.args, t.args)
    )


def _alpha(f: Formula, g: Formula, env_f, env_g, depth: int) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, Atom):
        return f.pred == g.pred and len(f.args) == len(g.args) and all(
            _alpha_term(a, b, env_f, env_g) for a, b in zip(f.args, g.args)
        )
    if isinstance(f, Not):
        return _alpha(f.arg, g.arg, env_f, env_g, depth)
    if isinstance(f, (And, Or)):
        return len(f.args) == len(g.args) and all(
            _alpha(a, b, env_f, env_g, depth) for a, b in zip(f.args, g.args)
        )
    if isinstance(f, Imp):
        return _alpha(f.left, g.left, env_f, env_g, depth) and _alpha(f.right, g.right, env_f, env_g, depth)
    if isinstance(f, Quant):
        if f.kind != g.kind or f.sort != g.sort:
            return False
        return _alpha(
            f.body, g.body, {**env_f, f.var: depth}, {**env_g, g.var: depth}, depth + 1
        )
    raise TypeError(f"not a formula: {f!r}")


def alpha_equal(f: Formula, g: Formula) -> bool:
    """Equality up to renaming of bound variables."""
    return _alpha(f, g, {}, {}, 0)
