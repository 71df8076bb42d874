"""Exact rational polytopes.

All combinatorial decisions (which points are vertices, facet incidences,
the sign of a support value) are made in exact arithmetic.  Facet normals
are primitive integer vectors, so ``Facet.support`` is the unnormalised
support value ``max <x, w>`` and its sign is the sign of ``h(P, w/|w|)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm, sqrt
from typing import NamedTuple, Sequence

from lpproj import _hull

Vector = tuple  # tuple of Fraction


def rational(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string; floats are rejected."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected int, Fraction or 'p/q' string, got {type(x).__name__}")


def vector(xs) -> Vector:
    return tuple(rational(x) for x in xs)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class Hyperplane:
    """The set ``<x, normal> = offset``; the plus side is ``>= offset``."""

    normal: Vector
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "normal", vector(self.normal))
        object.__setattr__(self, "offset", rational(self.offset))
        if all(c == 0 for c in self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    def value(self, x) -> Fraction:
        return _dot(self.normal, x) - self.offset


class LinearMap:
    """An n x n rational matrix acting on column vectors."""

    __slots__ = ("entries", "det")

    def __init__(self, entries):
        rows = tuple(vector(r) for r in entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("linear map must be a nonempty square matrix")
        self.entries = rows
        self.det = _det(rows)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols) -> "LinearMap":
        cols = [vector(c) for c in cols]
        return cls([[c[i] for c in cols] for i in range(len(cols))])

    @property
    def n(self) -> int:
        return len(self.entries)

    def __call__(self, x) -> Vector:
        return tuple(_dot(r, x) for r in self.entries)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        cols = list(zip(*other.entries))
        return LinearMap([[_dot(r, c) for c in cols] for r in self.entries])

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)
        return f"LinearMap([{rows}])"

    def transpose(self) -> "LinearMap":
        return LinearMap(list(zip(*self.entries)))

    def inverse(self) -> "LinearMap":
        if self.det == 0:
            raise ValueError("linear map is singular")
        n = self.n
        m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.entries)]
        for c in range(n):
            piv = next(r for r in range(c, n) if m[r][c] != 0)
            m[c], m[piv] = m[piv], m[c]
            inv = 1 / m[c][c]
            m[c] = [x * inv for x in m[c]]
            for r in range(n):
                if r != c and m[r][c] != 0:
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return LinearMap([r[n:] for r in m])

    def to_floats(self):
        return [[float(x) for x in r] for r in self.entries]


def _det(rows) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


@dataclass(frozen=True)
class Facet:
    """One facet (or, for an (n-1)-dimensional polytope, one of its two sides).

    ``content`` is ``vol_{n-1}(F) / |direction|``, an exact rational; the
    operator coefficients only ever need this ratio.
    """

    direction: tuple
    support: Fraction
    content: Fraction
    vertex_ids: tuple

    @property
    def sq_norm(self) -> int:
        return sum(c * c for c in self.direction)

    @property
    def volume(self) -> float:
        return float(self.content) * sqrt(self.sq_norm)

    @property
    def unit_support(self) -> float:
        return float(self.support) / sqrt(self.sq_norm)


@dataclass(frozen=True, eq=False)
class Polytope:
    n: int
    vertices: tuple
    facets: tuple = ()
    dim: int = -1
    volume: Fraction = Fraction(0)
    # for dim == n - 1: the two sides of P, each with the full (n-1)-volume
    sides: tuple = field(default=(), repr=False)

    @classmethod
    def empty(cls, n: int) -> "Polytope":
        return cls(n, ())

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def faces(self) -> tuple:
        """Faces carrying (n-1)-volume: the facets, or both sides of a hyperplane piece."""
        return self.facets if self.dim == self.n else self.sides

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.n == other.n and frozenset(self.vertices) == frozenset(other.vertices)

    def __hash__(self):
        return hash((self.n, frozenset(self.vertices)))

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"Polytope(n={self.n}, dim={self.dim}, vertices=[{verts}])"

    def contains(self, x) -> bool:
        x = vector(x)
        if self.is_empty:
            return False
        if self.dim == self.n:
            return all(_dot(f.direction, x) <= f.support for f in self.facets)
        if x in self.vertices:
            return True
        # x outside a polytope is always a vertex of the enlarged hull
        return x not in convex_hull(list(self.vertices) + [x]).vertices

    def to_dict(self) -> dict:
        return {"n": self.n, "vertices": [[str(c) for c in v] for v in self.vertices]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Polytope":
        n = data["n"]
        if not isinstance(n, int) or n < 1:
            raise ValueError("'n' must be a positive integer")
        verts = data["vertices"]
        for v in verts:
            for c in v:
                if not isinstance(c, (str, int)) or isinstance(c, bool):
                    raise ValueError(f"coordinate {c!r} is not an int or 'p/q' string")
        return convex_hull([vector(v) for v in verts], n=n)

    @classmethod
    def from_json(cls, text: str) -> "Polytope":
        return cls.from_dict(json.loads(text))


def convex_hull(points: Sequence, n: int | None = None) -> Polytope:
    """Exact convex hull; vertices are kept in input order."""
    pts = []
    seen = set()
    for p in points:
        v = vector(p)
        if v not in seen:
            seen.add(v)
            pts.append(v)
    if not pts:
        if n is None:
            raise ValueError("empty point set needs an explicit dimension")
        return Polytope.empty(n)
    if n is None:
        n = len(pts[0])
    if any(len(v) != n for v in pts):
        raise ValueError("points have mismatched dimensions")

    scale = lcm(*(c.denominator for v in pts for c in v))
    ints = [tuple(int(c * scale) for c in v) for v in pts]
    start, basis, pivots = _hull.affine_independent(ints)
    d = len(start) - 1

    if d == n:
        return _full(n, pts, ints, scale)
    return _lower(n, d, pts, ints, scale, start, pivots)


def _full(n, pts, ints, scale) -> Polytope:
    if n == 1:
        lo = min(range(len(pts)), key=lambda i: pts[i][0])
        hi = max(range(len(pts)), key=lambda i: pts[i][0])
        ids = sorted({lo, hi})
        verts = tuple(pts[i] for i in ids)
        pos = {i: k for k, i in enumerate(ids)}
        facets = (
            Facet((1,), pts[hi][0], Fraction(1), (pos[hi],)),
            Facet((-1,), -pts[lo][0], Fraction(1), (pos[lo],)),
        )
        return Polytope(1, verts, facets, 1, pts[hi][0] - pts[lo][0])

    h = _hull.full_hull(ints)
    pos = {i: k for k, i in enumerate(h.extreme)}
    verts = tuple(pts[i] for i in h.extreme)
    cden = factorial(n - 1) * scale ** (n - 1)
    facets = tuple(
        Facet(
            f.direction,
            Fraction(f.support, scale),
            Fraction(f.content2, cden),
            tuple(sorted(pos[i] for i in f.members)),
        )
        for f in sorted(h.facets, key=lambda f: (f.direction, f.support))
    )
    volume = Fraction(h.volume2, factorial(n) * scale ** n)
    return Polytope(n, verts, facets, n, volume)


def _lower(n, d, pts, ints, scale, start, pivots) -> Polytope:
    if d == 0:
        return Polytope(n, (pts[0],), (), 0)
    proj = [tuple(x[c] for c in pivots) for x in ints]
    if d == 1:
        lo = min(range(len(pts)), key=lambda i: proj[i][0])
        hi = max(range(len(pts)), key=lambda i: proj[i][0])
        extreme = sorted({lo, hi})
        proj_vol = Fraction(proj[hi][0] - proj[lo][0], scale)
    else:
        h = _hull.full_hull(proj)
        extreme = h.extreme
        proj_vol = Fraction(h.volume2, factorial(d) * scale ** d)
    verts = tuple(pts[i] for i in extreme)
    sides = ()
    if d == n - 1:
        x0 = ints[start[0]]
        edges = [tuple(a - b for a, b in zip(ints[i], x0)) for i in start[1:]]
        _, w = _hull.primitive(_hull.cross(edges, n))
        a = Fraction(_hull.dot(w, x0), scale)
        (k,) = set(range(n)) - set(pivots)
        content = proj_vol / abs(w[k])
        ids = tuple(range(len(verts)))
        neg = tuple(-c for c in w)
        sides = tuple(sorted([Facet(w, a, content, ids), Facet(neg, -a, content, ids)],
                             key=lambda f: f.direction))
    return Polytope(n, verts, (), d, Fraction(0), sides)


def support_value(P: Polytope, u) -> Fraction:
    u = vector(u)
    if len(u) != P.n:
        raise ValueError("direction has wrong dimension")
    if P.is_empty:
        raise ValueError("support value of the empty set")
    return max(_dot(x, u) for x in P.vertices)


def facet_volume(P: Polytope, f: Facet) -> float:
    """(n-1)-volume of a facet of a full-dimensional polytope."""
    if P.dim != P.n or f not in P.facets:
        raise ValueError("facet does not belong to this polytope")
    return f.volume


def apply_map(P: Polytope, phi: LinearMap) -> Polytope:
    if phi.n != P.n:
        raise ValueError("map and polytope dimensions differ")
    if phi.det == 0:
        raise ValueError("linear map is singular")
    if P.is_empty:
        return P
    return convex_hull([phi(x) for x in P.vertices], n=P.n)


def translate(P: Polytope, t) -> Polytope:
    t = vector(t)
    return convex_hull([tuple(a + b for a, b in zip(x, t)) for x in P.vertices], n=P.n)


def dilate(P: Polytope, s) -> Polytope:
    """The body ``sP`` for a rational s >= 0."""
    s = rational(s)
    if s < 0:
        raise ValueError("dilation factor must be nonnegative")
    return convex_hull([tuple(s * c for c in x) for x in P.vertices], n=P.n)


def _edges(P: Polytope):
    """Vertex index pairs spanning edges of a full-dimensional polytope."""
    on = [set() for _ in P.vertices]
    for k, f in enumerate(P.facets):
        for i in f.vertex_ids:
            on[i].add(k)
    sets = [set(f.vertex_ids) for f in P.facets]
    m = len(P.vertices)
    edges = []
    for i in range(m):
        for j in range(i + 1, m):
            common = on[i] & on[j]
            if not common:
                continue
            face = set.intersection(*(sets[k] for k in common))
            if len(face) == 2:
                edges.append((i, j))
    return edges


class Cut(NamedTuple):
    plus: Polytope
    minus: Polytope
    section: Polytope


def halfspace_cut(P: Polytope, H: Hyperplane) -> Cut:
    """Split P by H into ``P & H+``, ``P & H-`` and ``P & H`` (empty sides allowed)."""
    n = P.n
    if len(H.normal) != n:
        raise ValueError("hyperplane has wrong dimension")
    if P.is_empty:
        e = Polytope.empty(n)
        return Cut(e, e, e)
    vals = [H.value(x) for x in P.vertices]
    if P.dim == n:
        pairs = _edges(P)
    else:
        m = len(P.vertices)
        pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    crossing = []
    for i, j in pairs:
        a, b = vals[i], vals[j]
        if (a > 0 and b < 0) or (a < 0 and b > 0):
            t = a / (a - b)
            x, y = P.vertices[i], P.vertices[j]
            crossing.append(tuple(xi + t * (yi - xi) for xi, yi in zip(x, y)))
    if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
        # H supports P (or misses it): one side is P itself, the other the face on H
        on = convex_hull([x for x, v in zip(P.vertices, vals) if v == 0], n=n)
        if all(v >= 0 for v in vals):
            return Cut(P, on, on)
        return Cut(on, P, on)
    on = [x for x, v in zip(P.vertices, vals) if v == 0]
    plus = [x for x, v in zip(P.vertices, vals) if v > 0]
    minus = [x for x, v in zip(P.vertices, vals) if v < 0]
    return Cut(
        convex_hull(plus + on + crossing, n=n) if plus else convex_hull(on, n=n),
        convex_hull(minus + on + crossing, n=n) if minus else convex_hull(on, n=n),
        convex_hull(on + crossing, n=n),
    )


def intersect_halfspace(P: Polytope, H: Hyperplane) -> Polytope:
    """``P & {<x, normal> >= offset}``."""
    return halfspace_cut(P, H).plus


def intersect(P: Polytope, Q: Polytope) -> Polytope:
    """Intersection with a full-dimensional polytope Q, by cutting along its facets."""
    if Q.is_empty or P.is_empty:
        return Polytope.empty(P.n)
    if Q.dim != Q.n:
        raise ValueError("intersect needs a full-dimensional second argument")
    out = P
    for f in Q.facets:
        out = halfspace_cut(out, Hyperplane(f.direction, f.support)).minus
        if out.is_empty:
            break
    return out


def conv_origin(P: Polytope) -> Polytope:
    """``conv({o} u P)``."""
    o = tuple(Fraction(0) for _ in range(P.n))
    return convex_hull(list(P.vertices) + [o], n=P.n)


def facet_polytope(P: Polytope, f: Facet) -> Polytope:
    return convex_hull([P.vertices[i] for i in f.vertex_ids], n=P.n)


def facets_facing_origin(P: Polytope) -> list:
    """Facets whose support value is negative (the origin lies strictly beyond them)."""
    if P.dim != P.n:
        raise ValueError("facets_facing_origin needs a full-dimensional polytope")
    return [f for f in P.facets if f.support < 0]


def _unit(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


def standard_simplex(n: int) -> Polytope:
    """``conv{o, e_1, ..., e_n}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return convex_hull([tuple(Fraction(0) for _ in range(n))] + [_unit(n, i) for i in range(n)])


def probe_simplex(n: int) -> Polytope:
    """``conv{e_1, ..., e_n}``, the (n-1)-simplex that misses the origin's affine span."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return convex_hull([_unit(n, i) for i in range(n)], n=n)


def shifted_simplex(n: int) -> Polytope:
    """``e_1 + T^n``."""
    return translate(standard_simplex(n), _unit(n, 0))


def box(lo: Sequence, hi: Sequence) -> Polytope:
    lo, hi = vector(lo), vector(hi)
    n = len(lo)
    pts = []
    for mask in range(1 << n):
        pts.append(tuple(hi[i] if mask >> i & 1 else lo[i] for i in range(n)))
    return convex_hull(pts, n=n)


def cube(n: int) -> Polytope:
    return box([0] * n, [1] * n)
