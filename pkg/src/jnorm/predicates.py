"""Definable predicates on the spheres of J^d.

The special extreme points of a sphere ``S_r`` are ``r`` times the nonzero
extreme points of the unit circle of J.  Consecutive ones along the circle
are adjacent, which turns the circle into two long paths:

    v_inf, e2, -v_0, -v_1, -v_2, ...        (and its mirror image)

(``v_inf`` is absent over Q(e), where it is not extreme).  A *run* is a walk
along one of these paths; its edge lengths are what the multiplication
gadget reads off.

Two independent routes decide the multiplication gadget ``MGI``:

* :func:`mgi_holds` uses the characterization ``x, y, z in N_>1, z = x*y`` and
  can certify positive answers with an explicit run;
* :func:`mgi_oracle_triples` enumerates runs over a finite set of candidate
  radii and reports every triple any of them realizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .constants import pair_enum
from .field import RatFunc
from .geometry import JSpace, VecD, get_space

__all__ = [
    "Node",
    "Run",
    "AdjacencyGraph",
    "Certificate",
    "is_special_extreme",
    "adjacent_special",
    "enumerate_runs",
    "matches_mgi_pattern",
    "mgi_holds",
    "mgi_witness",
    "mult_graph_holds",
    "mult_graph_witness",
    "candidate_radii",
    "mgi_oracle_triples",
    "depth_for",
    "as_natural",
]


@dataclass(frozen=True)
class Node:
    """A symbolic extreme point ``sign * r * base`` of ``S_r``."""

    kind: str  # chain, limit, e2
    index: Optional[int] = None
    sign: int = 1

    def __neg__(self) -> "Node":
        return Node(self.kind, self.index, -self.sign)

    def __str__(self):
        base = {"chain": f"v{self.index}", "limit": "v_inf", "e2": "e2"}[self.kind]
        return base if self.sign > 0 else f"-{base}"


@dataclass(frozen=True)
class Run:
    nodes: Tuple[Node, ...]
    points: Tuple[VecD, ...]
    lengths: Tuple[object, ...]


def _space(space: Optional[JSpace]) -> JSpace:
    return space if space is not None else get_space()


def _vecd(v) -> VecD:
    return v if isinstance(v, VecD) else VecD(v)


def is_special_extreme(r, v, space: Optional[JSpace] = None) -> bool:
    """True iff ``v`` is an extreme point of ``S_r`` not equidistant from all
    the others, i.e. a nonzero extreme point coming from J."""
    ex = _space(space).extreme_classify(r, _vecd(v))
    return ex.is_extreme and ex.kind != "w"


def adjacent_special(r, u, w, space: Optional[JSpace] = None) -> bool:
    sp = _space(space)
    u, w = _vecd(u), _vecd(w)
    if u == w:
        return False
    if not (is_special_extreme(r, u, sp) and is_special_extreme(r, w, sp)):
        return False
    return sp.norm((u + w) / 2) == r


class AdjacencyGraph:
    """Special extreme points of ``S_r`` whose chain index is at most ``depth``.

    ``paths`` holds the two maximal paths (mirror images of each other); the
    chain end of each path is an accumulation gap, not a real endpoint.
    """

    def __init__(self, r, depth: int, space: Optional[JSpace] = None):
        if not r > 0:
            raise ValueError("radius must be positive")
        self.space = _space(space)
        self.r = r
        self.depth = depth
        head = [Node("e2")]
        if self.space.field.archimedean:
            head.insert(0, Node("limit"))
        path = head + [Node("chain", k, -1) for k in range(depth + 1)]
        self.paths: Tuple[Tuple[Node, ...], ...] = (tuple(path), tuple(-n for n in path))
        self._unit_len = {}

    def point(self, node: Node) -> VecD:
        base = self.space.unit_vertex(node.kind, node.index)
        return VecD(base * (node.sign * self.r))

    @property
    def nodes(self) -> List[Node]:
        return [n for path in self.paths for n in path]

    def edges(self) -> List[Tuple[Node, Node]]:
        return [(a, b) for path in self.paths for a, b in zip(path, path[1:])]

    def unit_length(self, a: Node, b: Node):
        """Length of the edge between ``a`` and ``b`` on the unit circle."""
        key = (a, b) if (a.sign, str(a)) <= (b.sign, str(b)) else (b, a)
        if key not in self._unit_len:
            sp = self.space
            ua = sp.unit_vertex(a.kind, a.index) * a.sign
            ub = sp.unit_vertex(b.kind, b.index) * b.sign
            self._unit_len[key] = sp.norm_J(ua - ub)
        return self._unit_len[key]

    def windows(self, length: int):
        """All directed node sequences of ``length`` consecutive path nodes."""
        for path in self.paths:
            for start in range(len(path) - length + 1):
                seg = path[start:start + length]
                yield seg
                yield seg[::-1]

    def runs(self, length: int) -> List[Run]:
        out = []
        for seg in self.windows(length):
            lengths = tuple(self.r * self.unit_length(a, b) for a, b in zip(seg, seg[1:]))
            out.append(Run(seg, tuple(self.point(n) for n in seg), lengths))
        return out


def enumerate_runs(r, length: int, depth: int, space: Optional[JSpace] = None) -> List[Run]:
    """Every run of ``length`` distinct adjacent special extreme points of
    ``S_r`` within the depth-``depth`` graph."""
    if length < 2:
        raise ValueError("runs have at least two nodes")
    return AdjacencyGraph(r, depth, space).runs(length)


def matches_mgi_pattern(lengths: Sequence, x=None, y=None, z=None) -> bool:
    """Edge lengths ``(1, x, z, y, u)`` with ``1 < x < z > y > u < 1``."""
    if len(lengths) != 5:
        return False
    one, lx, lz, ly, lu = lengths
    if one != 1 or not (1 < lx < lz and lz > ly > lu and lu < 1):
        return False
    return (x is None or lx == x) and (y is None or ly == y) and (z is None or lz == z)


def as_natural(x) -> Optional[int]:
    """The natural number ``n`` with ``x = n`` in N_K, or None."""
    if isinstance(x, RatFunc):
        x = x.constant()
        if x is None:
            return None
    if isinstance(x, int):
        return x if x >= 0 else None
    if isinstance(x, Fraction) and x.denominator == 1 and x >= 0:
        return x.numerator
    return None


@dataclass(frozen=True)
class Certificate:
    """An explicit run witnessing ``MGI(x, y, z)``."""

    r: int
    stage: int
    nodes: Tuple[Node, ...]
    lengths: Tuple[Fraction, ...]

    @property
    def u(self) -> Fraction:
        return self.lengths[-1]


def mgi_witness(x, y, z, space: Optional[JSpace] = None) -> Optional[Certificate]:
    """Build and verify the run ``r*v_{4i+1} .. r*v_{4i+6}`` for ``MGI(x,y,z)``.

    Returns None when ``MGI(x, y, z)`` fails.  Every claim in the returned
    certificate has been re-checked with exact norms.
    """
    sp = _space(space)
    m, n, prod = as_natural(x), as_natural(y), as_natural(z)
    if m is None or n is None or prod is None or m < 2 or n < 2 or prod != m * n:
        return None
    pairs = pair_enum(sp.params)
    i = pairs.index_of(m, n)
    r = pairs.key(i)
    nodes = tuple(Node("chain", 4 * i + j) for j in range(1, 7))
    points = [VecD(sp.vertices[nd.index] * r) for nd in nodes]
    for pt in points:
        if not is_special_extreme(r, pt, sp):
            raise AssertionError(f"{pt} is not special extreme on S_{r}")
    for s, t in zip(points, points[1:]):
        if not adjacent_special(r, s, t, sp):
            raise AssertionError(f"{s} and {t} are not adjacent on S_{r}")
    if len(set(points)) != len(points):
        raise AssertionError("run repeats a vertex")
    lengths = tuple(sp.norm(t - s) for s, t in zip(points, points[1:]))
    if not matches_mgi_pattern(lengths, m, n, prod):
        raise AssertionError(f"witness edge lengths {lengths} do not fit the pattern")
    return Certificate(r, i, nodes, lengths)


def mgi_holds(x, y, z, space: Optional[JSpace] = None, certify: bool = False) -> bool:
    """Decide ``MGI(x, y, z)``: true iff ``x, y, z in N_>1`` and ``z = x*y``."""
    if certify:
        return mgi_witness(x, y, z, space) is not None
    m, n, prod = as_natural(x), as_natural(y), as_natural(z)
    return m is not None and n is not None and m >= 2 and n >= 2 and prod == m * n


def _shift(x, y, z):
    return x + 2, y + 2, 4 + 2 * x + 2 * y + z


def mult_graph_holds(x, y, z, space: Optional[JSpace] = None, certify: bool = False) -> bool:
    """Decide ``M(x, y, z) = MGI(x+2, y+2, 4+2x+2y+z)``, i.e. ``z = x*y`` in N_K."""
    return mgi_holds(*_shift(x, y, z), space=space, certify=certify)


def mult_graph_witness(x, y, z, space: Optional[JSpace] = None) -> Optional[Certificate]:
    return mgi_witness(*_shift(x, y, z), space=space)


def depth_for(max_factor: int, space: Optional[JSpace] = None) -> int:
    """Chain depth whose runs include the witnesses for all ``m, n <= max_factor``."""
    sp = _space(space)
    pairs = pair_enum(sp.params)
    last = pairs.index_of(max_factor, max_factor)
    return 4 * last + 6


def candidate_radii(depth: int, space: Optional[JSpace] = None) -> Set:
    """Radii ``r`` at which some edge of the depth-``depth`` graph has length 1.

    A run whose first edge has length 1 on ``S_r`` lives at one of these."""
    g = AdjacencyGraph(Fraction(1), depth, space)
    return {1 / g.unit_length(a, b) for a, b in g.edges()}


def mgi_oracle_triples(depth: int, space: Optional[JSpace] = None) -> Dict[tuple, Tuple[object, Tuple[Node, ...]]]:
    """Every ``(x, y, z)`` realized as ``(1, x, z, y, u)`` by a 6-node run.

    For each candidate radius ``r`` only the runs starting with an edge of
    length 1 on ``S_r`` are inspected.  Returns ``{(x, y, z): (r, nodes)}``
    for the first run found for each triple.
    """
    unit = AdjacencyGraph(Fraction(1), depth, space)
    by_first: Dict[object, List[Tuple[Node, ...]]] = {}
    for seg in unit.windows(6):
        by_first.setdefault(unit.unit_length(seg[0], seg[1]), []).append(seg)
    found: Dict[tuple, Tuple[object, Tuple[Node, ...]]] = {}
    for r in candidate_radii(depth, space):
        for seg in by_first.get(1 / r, ()):
            lengths = tuple(r * unit.unit_length(a, b) for a, b in zip(seg, seg[1:]))
            if matches_mgi_pattern(lengths):
                _, lx, lz, ly, _ = lengths
                found.setdefault((lx, ly, lz), (r, seg))
    return found
