"""Robinson's axioms Q1..Q7, the sentence OK, and the definition of ``nu``."""

from __future__ import annotations

from typing import Dict

from .syntax import And, Formula, parse

__all__ = ["Q_AXIOMS", "OK_CONJUNCTS", "NU_DEF", "builtin_sentences", "ok_sentence"]

Q_AXIOMS: Dict[str, str] = {
    "Q1": "(forall x (forall y (imp (= (S x) (S y)) (= x y))))",
    "Q2": "(forall x (not (= 0 (S x))))",
    "Q3": "(forall x (imp (not (= x 0)) (exists y (= x (S y)))))",
    "Q4": "(forall x (= (plus x 0) x))",
    "Q5": "(forall x (forall y (= (plus x (S y)) (S (plus x y)))))",
    "Q6": "(forall x (= (times x 0) 0))",
    "Q7": "(forall x (forall y (= (times x (S y)) (plus (times x y) x))))",
}

# x >= 0 is written (not (< x 0)); unique existence is spelled out with z2
OK_CONJUNCTS: Dict[str, str] = {
    "OK1": "(nu 0)",
    "OK2": "(forall (x K) (imp (nu x) (and (not (< x 0)) (nu (plus x 1)))))",
    "OK3": "(forall (x K) (imp (and (nu x) (< 0 x)) (nu (minus x 1))))",
    "OK4": (
        "(forall (x K) (forall (y K) (imp (and (nu x) (nu y)) "
        "(exists (z K) (and (mu x y z) (forall (z2 K) (imp (mu x y z2) (= z2 z))))))))"
    ),
    "OK5": (
        "(forall (x K) (forall (y K) (forall (z K) "
        "(imp (mu x y z) (and (nu x) (nu y) (nu z))))))"
    ),
    "OK6": (
        "(forall (x K) (forall (y K) (forall (w K) (forall (z K) "
        "(imp (and (mu x (plus y 1) w) (mu x y z)) (= w (plus z x)))))))"
    ),
}

NU_DEF = "(forall (x K) (and (imp (nu x) (mu x 0 0)) (imp (mu x 0 0) (nu x))))"


def ok_sentence() -> Formula:
    return And(tuple(parse(OK_CONJUNCTS[k], "k") for k in sorted(OK_CONJUNCTS)))


def builtin_sentences() -> Dict[str, Formula]:
    """Parsed ASTs keyed ``Q1..Q7``, ``OK1..OK6``, ``OK`` and ``nu_def``."""
    out: Dict[str, Formula] = {k: parse(v, "pa") for k, v in Q_AXIOMS.items()}
    out.update({k: parse(v, "k") for k, v in OK_CONJUNCTS.items()})
    out["OK"] = ok_sentence()
    out["nu_def"] = parse(NU_DEF, "k")
    return out
