"""The plane J = (K^2, ||.||_D) and the 1-sums J^d = J x W.

The upper half of the unit circle of J is, from west to east:

* the chain of segments ``[v_k, v_{k+1}]`` (``k = 0, 1, ...``) accumulating
  at ``v_inf = (a - b - 1, 1)``,
* the east face on ``y = 1`` from ``v_inf`` (or just west of it, over a
  non-archimedean field) to ``e2``,
* the north-east edge ``[e2, e1]``.

The lower half is its mirror image under ``v -> -v``.  Norms are computed
analytically: locate the face hit by the ray through ``v`` and evaluate that
face's supporting functional, a linear form ``(alpha, beta)`` equal to 1 on
the face.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .constants import (
    DEFAULT_P,
    DEFAULT_Q,
    Params,
    coefficient_a,
    gradient_seq,
    validate_params,
)
from .field import QQ, FieldDesc, standard_part

__all__ = [
    "Vec2",
    "VecD",
    "Facet",
    "Extremality",
    "VertexSeq",
    "vertex_seq",
    "vertex",
    "cross",
    "E1",
    "E2",
    "ZERO2",
    "JSpace",
    "get_space",
]


@dataclass(frozen=True)
class Vec2:
    x: object
    y: object

    def __post_init__(self):
        # plain ints would turn into floats under "/"
        if isinstance(self.x, int):
            object.__setattr__(self, "x", Fraction(self.x))
        if isinstance(self.y, int):
            object.__setattr__(self, "y", Fraction(self.y))

    def __add__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x - o.x, self.y - o.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def __mul__(self, c) -> "Vec2":
        return Vec2(self.x * c, self.y * c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Vec2":
        return Vec2(self.x / c, self.y / c)

    def is_zero(self) -> bool:
        return not self.x and not self.y

    def __iter__(self):
        yield self.x
        yield self.y


def cross(u: Vec2, v: Vec2):
    """Positive iff ``v`` is counter-clockwise from ``u`` (angle < pi)."""
    return u.x * v.y - u.y * v.x


E1 = Vec2(Fraction(1), Fraction(0))
E2 = Vec2(Fraction(0), Fraction(1))
ZERO2 = Vec2(Fraction(0), Fraction(0))


@dataclass(frozen=True)
class VecD:
    """A vector of J^d: a J-part plus finitely many W-coordinates.

    ``w`` is a sorted tuple of ``(index, coefficient)`` with nonzero
    coefficients; indices start at 1.
    """

    j: Vec2
    w: Tuple[Tuple[int, object], ...] = ()

    @classmethod
    def make(cls, j: Vec2 = ZERO2, w: Optional[Mapping[int, object]] = None) -> "VecD":
        items = tuple(sorted((i, c) for i, c in (w or {}).items() if c))
        for i, _ in items:
            if i < 1:
                raise ValueError(f"W index must be >= 1, got {i}")
        return cls(j, items)

    @classmethod
    def basis(cls, n: int, coeff=Fraction(1)) -> "VecD":
        return cls.make(ZERO2, {n: coeff})

    def _combine(self, o: "VecD", sign: int) -> "VecD":
        w: Dict[int, object] = dict(self.w)
        for i, c in o.w:
            w[i] = w.get(i, 0) + sign * c
        return VecD.make(self.j + o.j if sign > 0 else self.j - o.j, w)

    def __add__(self, o: "VecD") -> "VecD":
        return self._combine(o, 1)

    def __sub__(self, o: "VecD") -> "VecD":
        return self._combine(o, -1)

    def __neg__(self) -> "VecD":
        return VecD(-self.j, tuple((i, -c) for i, c in self.w))

    def __mul__(self, c) -> "VecD":
        return VecD.make(self.j * c, {i: x * c for i, x in self.w})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "VecD":
        return VecD.make(self.j / c, {i: x / c for i, x in self.w})

    def is_zero(self) -> bool:
        return self.j.is_zero() and not self.w


@dataclass(frozen=True)
class Facet:
    """A face of the unit circle.

    ``kind`` is one of ``chain`` (segment ``[v_k, v_{k+1}]``, ``index = k``),
    ``east`` (the face on ``y = 1``), ``northeast`` (``[e1, e2]``) or
    ``axis`` (the point ``v_0 = -e1``).  ``sign = -1`` marks the mirror image.
    """

    kind: str
    index: Optional[int] = None
    sign: int = 1

    def mirror(self) -> "Facet":
        return Facet(self.kind, self.index, -self.sign)

    def __str__(self):
        name = self.kind if self.index is None else f"{self.kind}[{self.index}]"
        return name if self.sign > 0 else f"-{name}"


@dataclass(frozen=True)
class Extremality:
    """Result of :meth:`JSpace.extreme_classify`.

    ``status`` is ``not_on_sphere``, ``on_sphere`` (but not extreme) or
    ``extreme``; for extreme points ``kind`` is ``chain`` (vertex ``v_index``),
    ``limit`` (``v_inf``), ``e2`` or ``w`` (W basis vector ``b_index``).
    """

    status: str
    kind: Optional[str] = None
    index: Optional[int] = None
    sign: int = 1

    @property
    def is_extreme(self) -> bool:
        return self.status == "extreme"


class VertexSeq:
    """Memoized vertices ``v_k`` with their facet functionals."""

    def __init__(self, params: Params):
        self.params = params
        self.grad = gradient_seq(params)
        self.limit = Vec2(params.a - params.b - 1, Fraction(1))
        self._v: List[Vec2] = [
            Vec2(Fraction(-1), Fraction(0)),
            Vec2(Fraction(-1), 1 - params.b),
        ]
        self._functionals: List[Tuple[Fraction, Fraction]] = []
        self._lock = threading.RLock()

    def extend(self, count: int) -> None:
        """Make ``v_0 .. v_{count-1}`` available."""
        if len(self._v) >= count:
            return
        with self._lock:
            while len(self._v) < count:
                k = len(self._v) - 1
                a_k = coefficient_a(self.params, k)
                b_k = self.grad[k]
                v = self._v[-1]
                self._v.append(Vec2(v.x + (1 - b_k) * a_k, v.y + b_k * a_k))

    def __getitem__(self, k: int) -> Vec2:
        if k < 0:
            raise IndexError("vertices are indexed from 0")
        self.extend(k + 1)
        return self._v[k]

    def functional(self, k: int) -> Tuple[Fraction, Fraction]:
        """``(alpha, beta)`` with ``alpha*x + beta*y = 1`` on ``[v_k, v_{k+1}]``."""
        if len(self._functionals) <= k:
            with self._lock:
                while len(self._functionals) <= k:
                    j = len(self._functionals)
                    u, w = self[j], self[j + 1]
                    det = u.x * w.y - w.x * u.y
                    self._functionals.append(((w.y - u.y) / det, (u.x - w.x) / det))
        return self._functionals[k]

    def chord_gradient(self, k: int):
        """Gradient of ``l_k``; ``None`` stands for the vertical ``l_0``."""
        if k == 0:
            return None
        b = self.grad[k]
        return b / (1 - b)

    def ray_gradient(self, k: int) -> Fraction:
        v = self[k]
        return v.y / v.x


def vertex(seq: VertexSeq, k: int) -> Vec2:
    return seq[k]


_vertex_cache: Dict[Tuple[int, int], VertexSeq] = {}
_vertex_lock = threading.Lock()


def vertex_seq(params: Params) -> VertexSeq:
    with _vertex_lock:
        vs = _vertex_cache.get((params.p, params.q))
        if vs is None:
            vs = _vertex_cache[(params.p, params.q)] = VertexSeq(params)
    return vs


_NE = (Fraction(1), Fraction(1))
_EAST = (Fraction(0), Fraction(1))


class JSpace:
    """The normed space J^d over a chosen field, for parameters ``(p, q)``.

    ``dimension`` is an int ``>= 2`` or ``None`` for the infinite-dimensional
    space with finitely supported W-coordinates.
    """

    def __init__(self, params: Optional[Params] = None, field: FieldDesc = QQ, dimension=2):
        self.params = params or validate_params(DEFAULT_P, DEFAULT_Q)
        self.field = field
        if dimension is not None and dimension < 2:
            raise ValueError("dimension must be >= 2")
        self.dimension = dimension
        self.vertices = vertex_seq(self.params)

    # -- locating rays --

    def _to_upper(self, v: Vec2) -> Tuple[Vec2, int]:
        if v.y < 0 or (not v.y and v.x > 0):
            return -v, -1
        return v, 1

    def _locate(self, v: Vec2):
        """Return ``(sign, facet, case, functional)`` for ``v != 0``."""
        if v.is_zero():
            raise ValueError("the zero vector lies on no ray")
        u, sign = self._to_upper(v)
        if not u.y:
            return sign, Facet("axis", 0, sign), "axis", (Fraction(-1), Fraction(0))
        if u.x >= 0:
            return sign, Facet("northeast", None, sign), "iii", _NE
        # north-west: decide between the chain and the east face on the
        # standard part of the direction, normalized to 1-norm 1
        scale = u.y - u.x
        s = Vec2(standard_part(u.x / scale), standard_part(u.y / scale))
        if cross(s, self.vertices.limit) >= 0:
            return sign, Facet("east", None, sign), "ii", _EAST
        k = self._chain_index(u)
        return sign, Facet("chain", k, sign), "i", self.vertices.functional(k)

    def _chain_index(self, u: Vec2) -> int:
        """The ``k`` with ``u`` strictly clockwise of ``v_k``, not of ``v_{k+1}``."""
        vs = self.vertices

        def reached(j):
            return cross(vs[j], u) >= 0

        hi = 1
        while not reached(hi):
            hi *= 2
        lo = hi // 2  # reached(lo) is false, or lo == 0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if reached(mid):
                hi = mid
            else:
                lo = mid
        return hi - 1

    def classify_ray(self, v: Vec2) -> Tuple[Facet, str]:
        """Face of the unit circle met by the ray through ``v``, and the case
        (``i`` chain, ``ii`` east, ``iii`` north-east, ``axis``)."""
        _, facet, case, _ = self._locate(v)
        return facet, case

    # -- norms --

    def norm_J(self, v: Vec2):
        if v.is_zero():
            return self.field.coerce(0)
        sign, _, _, (alpha, beta) = self._locate(v)
        return sign * (alpha * v.x + beta * v.y)

    def norm_W(self, w: Iterable[Tuple[int, object]]):
        total = self.field.coerce(0)
        for i, c in w:
            self._check_index(i)
            total = total + abs(c)
        return total

    def norm(self, v):
        """Norm of a Vec2 (in J) or a VecD (in J^d)."""
        if isinstance(v, Vec2):
            return self.norm_J(v)
        return self.norm_J(v.j) + self.norm_W(v.w)

    norm_Jd = norm

    def _check_index(self, i: int) -> None:
        if self.dimension is not None and not 1 <= i <= self.dimension - 2:
            raise ValueError(f"W index {i} out of range for dimension {self.dimension}")

    def disc_contains(self, v: Vec2) -> bool:
        """Membership in the unit disc D, via the supporting line of the face
        the ray through ``v`` meets."""
        if v.is_zero():
            return True
        sign, _, _, (alpha, beta) = self._locate(v)
        return sign * (alpha * v.x + beta * v.y) <= 1

    # -- extreme points --

    def unit_vertex(self, kind: str, index: Optional[int] = None) -> Vec2:
        if kind == "chain":
            return self.vertices[index]
        if kind == "limit":
            return self.vertices.limit
        if kind == "e2":
            return E2
        raise ValueError(f"no J-vertex of kind {kind!r}")

    def extreme_classify(self, r, v) -> Extremality:
        if not r > 0:
            raise ValueError("radius must be positive")
        if isinstance(v, Vec2):
            v = VecD(v)
        if self.norm(v) != r:
            return Extremality("not_on_sphere")
        if v.w:
            if v.j.is_zero() and len(v.w) == 1:
                i, c = v.w[0]
                return Extremality("extreme", "w", i, 1 if c > 0 else -1)
            return Extremality("on_sphere")
        u, sign = self._to_upper(v.j / r)
        if not u.y:
            # u is v_0 = -e1 (sign +1) or its mirror e1
            return Extremality("extreme", "chain", 0, sign)
        if u == E2:
            return Extremality("extreme", "e2", None, sign)
        _, facet, case, _ = self._locate(u)
        if case == "i":
            k = facet.index + 1
            if u == self.vertices[k]:
                return Extremality("extreme", "chain", k, sign)
        elif case == "ii":
            if self.field.archimedean and u == self.vertices.limit:
                return Extremality("extreme", "limit", None, sign)
        return Extremality("on_sphere")

    # -- facet listing --

    def facet_table(self, count: int) -> List[dict]:
        """Chain facets ``0..count-1`` plus the east and north-east faces."""
        rows = []
        for k in range(count):
            alpha, beta = self.vertices.functional(k)
            rows.append(
                {
                    "facet": str(Facet("chain", k)),
                    "start": self.vertices[k],
                    "end": self.vertices[k + 1],
                    "alpha": alpha,
                    "beta": beta,
                    "gradient": self.vertices.chord_gradient(k),
                }
            )
        rows.append(
            {
                "facet": "east",
                "start": self.vertices.limit,
                "end": E2,
                "alpha": _EAST[0],
                "beta": _EAST[1],
                "gradient": Fraction(0),
            }
        )
        rows.append(
            {
                "facet": "northeast",
                "start": E2,
                "end": E1,
                "alpha": _NE[0],
                "beta": _NE[1],
                "gradient": Fraction(-1),
            }
        )
        return rows


_spaces: Dict[tuple, JSpace] = {}


def get_space(p: int = DEFAULT_P, q: int = DEFAULT_Q, field: FieldDesc = QQ, dimension=2) -> JSpace:
    """Shared :class:`JSpace` instance (vertex memo is reused across calls)."""
    key = (p, q, field.kind, dimension)
    sp = _spaces.get(key)
    if sp is None:
        sp = _spaces.setdefault(key, JSpace(validate_params(p, q), field, dimension))
    return sp
