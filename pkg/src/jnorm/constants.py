"""The rational constants behind the construction.

For coprime ``p, q > 1`` the pairs ``(m, n)`` with ``m, n >= 2`` are listed in
increasing order of ``p**m * q**n``.  Pair ``i`` contributes the block

    a_{4i+1..4i+4} = (1, m, m*n, n) / (p**m * q**n)

whose total ``a`` has the closed form ``(f(p) + g(p)) * (f(q) + g(q))``.
The gradient coefficients ``b_k`` are built stage by stage so that they
strictly decrease while ``sum(b_k * a_k)`` keeps the value ``a(p**2, q**2)``.
"""

from __future__ import annotations

import heapq
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

__all__ = [
    "closed_forms",
    "a_closed",
    "Params",
    "ParamsError",
    "validate_params",
    "PairEnum",
    "pair_enum",
    "gradient_seq",
    "enumerate_pairs",
    "coefficient_a",
    "StageRecord",
    "GradientSeq",
    "gradient_b",
    "partial_sum_a",
    "tail_sum_a",
    "tail_bound_a",
    "DEFAULT_P",
    "DEFAULT_Q",
]

DEFAULT_P = 2
DEFAULT_Q = 5


class ParamsError(ValueError):
    pass


def closed_forms(r) -> Tuple[Fraction, Fraction]:
    """Return ``(f(r), g(r))`` with f = sum_{m>=2} r^-m, g = sum_{m>=2} m r^-m."""
    r = Fraction(r)
    if r <= 1:
        raise ValueError(f"closed forms need r > 1, got {r}")
    s = 1 / r
    f = 1 / (1 - s) - 1 - s
    g = s * ((1 - s) ** -2 - 1)
    return f, g


def a_closed(p, q) -> Fraction:
    """Exact value of ``sum_k a_k`` for the parameters ``(p, q)``."""
    fp, gp = closed_forms(p)
    fq, gq = closed_forms(q)
    return fp * fq + gp * fq + gp * gq + fp * gq


@dataclass(frozen=True)
class Params:
    p: int
    q: int
    a: Fraction
    b: Fraction


def validate_params(p: int, q: int) -> Params:
    """Check that ``(p, q)`` yields a convergent construction with ``a < 1``."""
    if not (isinstance(p, int) and isinstance(q, int)) or p < 2 or q < 2:
        raise ParamsError(f"p and q must be naturals > 1, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise ParamsError(f"p={p} and q={q} are not coprime")
    a = a_closed(p, q)
    if a >= 1:
        raise ParamsError(f"a({p},{q}) = {a} is not below 1")
    return Params(p, q, a, a_closed(p * p, q * q))


class PairEnum:
    """Lazily extended list of pairs ``(m, n)`` sorted by ``p**m * q**n``.

    Extension is guarded by a lock; already-computed prefixes are never
    modified, so readers of ``pairs[:i]`` need no coordination.
    """

    def __init__(self, p: int, q: int):
        self.p, self.q = p, q
        self.pairs: List[Tuple[int, int]] = []
        self.keys: List[int] = []
        self._index: Dict[Tuple[int, int], int] = {}
        self._heap = [(p**2 * q**2, 2, 2)]
        self._lock = threading.Lock()

    def extend(self, count: int) -> None:
        if len(self.pairs) >= count:
            return
        with self._lock:
            while len(self.pairs) < count:
                key, m, n = heapq.heappop(self._heap)
                self._index[(m, n)] = len(self.pairs)
                self.pairs.append((m, n))
                self.keys.append(key)
                # every pair is reached exactly once: (m+1, n) from (m, n),
                # and (2, n+1) only from (2, n)
                heapq.heappush(self._heap, (key * self.p, m + 1, n))
                if m == 2:
                    heapq.heappush(self._heap, (key * self.q, 2, n + 1))

    def __getitem__(self, i: int) -> Tuple[int, int]:
        self.extend(i + 1)
        return self.pairs[i]

    def key(self, i: int) -> int:
        self.extend(i + 1)
        return self.keys[i]

    def index_of(self, m: int, n: int) -> int:
        """Position of ``(m, n)`` in the enumeration."""
        if m < 2 or n < 2:
            raise ValueError(f"pair ({m}, {n}) is outside N>1 x N>1")
        target = self.p**m * self.q**n
        while not self.keys or self.keys[-1] < target:
            self.extend(max(2 * len(self.pairs), 16))
        return self._index[(m, n)]

    def __len__(self):
        return len(self.pairs)


_pair_cache: Dict[Tuple[int, int], PairEnum] = {}
_grad_cache: Dict[Tuple[int, int], "GradientSeq"] = {}
_cache_lock = threading.RLock()


def pair_enum(params: Params) -> PairEnum:
    with _cache_lock:
        pe = _pair_cache.get((params.p, params.q))
        if pe is None:
            pe = _pair_cache[(params.p, params.q)] = PairEnum(params.p, params.q)
    return pe


def enumerate_pairs(params: Params, count: int) -> List[Tuple[int, int, int]]:
    """First ``count`` triples ``(m_i, n_i, p**m_i * q**n_i)``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    pe = pair_enum(params)
    pe.extend(count)
    return [(m, n, key) for (m, n), key in zip(pe.pairs[:count], pe.keys[:count])]


def coefficient_a(params: Params, k: int) -> Fraction:
    """The coefficient ``a_k`` (``k >= 1``)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    i, j = divmod(k - 1, 4)
    pe = pair_enum(params)
    m, n = pe[i]
    base = Fraction(1, pe.key(i))
    return base * (1, m, m * n, n)[j]


@dataclass(frozen=True)
class StageRecord:
    """Bookkeeping for stage ``i`` of the gradient construction."""

    i: int
    upper: Fraction  # U_i, strict upper bound for b_{4i+1}
    lower: Fraction  # L_i, strict lower bound for b_{4i+4}
    delta: Fraction
    halvings: int
    block: Tuple[Fraction, Fraction, Fraction, Fraction]


class GradientSeq:
    """The strictly decreasing coefficients ``b_1 > b_2 > ... > 0``.

    Stage ``i`` starts from ``delta = (U_i - P)/8`` with ``P = p^-m_i q^-n_i``
    and halves it until ``U_i > c_1 > c_2 > c_3 > P > c_4 > L_i``, where
    ``c_j = P + (4-j)*delta`` and ``c_4`` restores the block sum.
    """

    def __init__(self, params: Params):
        self.params = params
        self.pairs = pair_enum(params)
        self.values: List[Fraction] = []
        self.stages: List[StageRecord] = []
        self._lock = threading.Lock()

    def extend_stages(self, count: int) -> None:
        if len(self.stages) >= count:
            return
        with self._lock:
            while len(self.stages) < count:
                self._stage()

    def _stage(self) -> None:
        i = len(self.stages)
        upper = self.values[-1] if self.values else Fraction(1)
        m, n = self.pairs[i]
        base = Fraction(1, self.pairs.key(i))
        lower = Fraction(1, self.pairs.key(i + 1))
        # (3 a_{4i+1} + 2 a_{4i+2} + a_{4i+3}) / a_{4i+4}
        slope = Fraction(3 + 2 * m + m * n, n)
        delta = (upper - base) / 8
        halvings = 0
        while True:
            c = (base + 3 * delta, base + 2 * delta, base + delta, base - delta * slope)
            if upper > c[0] and c[2] > base and c[3] > lower:
                break
            delta /= 2
            halvings += 1
        self.stages.append(StageRecord(i, upper, lower, delta, halvings, c))
        self.values.extend(c)

    def __getitem__(self, k: int) -> Fraction:
        """``b_k`` for ``k >= 1``."""
        if k < 1:
            raise IndexError("b_k is indexed from 1")
        self.extend_stages((k + 3) // 4)
        return self.values[k - 1]

    def stage(self, i: int) -> StageRecord:
        self.extend_stages(i + 1)
        return self.stages[i]


def gradient_seq(params: Params) -> GradientSeq:
    with _cache_lock:
        gs = _grad_cache.get((params.p, params.q))
        if gs is None:
            gs = _grad_cache[(params.p, params.q)] = GradientSeq(params)
    return gs


def gradient_b(params: Params, k: int) -> Fraction:
    return gradient_seq(params)[k]


def partial_sum_a(params: Params, terms: int) -> Fraction:
    return sum((coefficient_a(params, k) for k in range(1, terms + 1)), Fraction(0))


def _geom_tail(x: Fraction, start: int) -> Tuple[Fraction, Fraction]:
    """``(sum_{m>=start} x^m, sum_{m>=start} m x^m)`` for ``0 < x < 1``."""
    xs = x**start
    s0 = xs / (1 - x)
    s1 = xs * (start * (1 - x) + x) / (1 - x) ** 2
    return s0, s1


def tail_sum_a(params: Params, stages: int) -> Fraction:
    """Exact ``sum_{k > 4*stages} a_k``, summed row by row over ``n``.

    Pairs beyond the first ``stages`` are exactly those whose key is at
    least ``key(stages)``; each row ``n`` is a geometric tail in ``m``.
    This path never touches the closed-form product for ``a``.
    """
    p, q = params.p, params.q
    pe = pair_enum(params)
    cut = pe.key(stages)
    xp, xq = Fraction(1, p), Fraction(1, q)
    total = Fraction(0)
    n = 2
    while True:
        row = q**n
        # smallest m >= 2 with p**m * q**n >= cut
        m0 = 2
        while p**m0 * row < cut:
            m0 += 1
        if m0 == 2:
            # every remaining row starts at m = 2: close the double sum
            s0, s1 = _geom_tail(xp, 2)
            t0, t1 = _geom_tail(xq, n)
            return total + (s0 + s1) * (t0 + t1)
        s0, s1 = _geom_tail(xp, m0)
        # block weight 1 + m + m n + n = (m + 1)(n + 1)
        total += (s1 + s0) * (n + 1) * xq**n
        n += 1


def tail_bound_a(params: Params, stages: int) -> Fraction:
    """Upper bound ``sum_{i >= stages} 4 (m_i+1)(n_i+1) p^-m_i q^-n_i``."""
    return 4 * tail_sum_a(params, stages)
