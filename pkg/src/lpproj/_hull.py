"""Exact integer convex-hull kernel.

Points are integer tuples (callers clear denominators first).  The full
dimensional case uses beneath-beyond insertion: the boundary is kept as a
list of oriented (d-1)-simplices, and a new point is coned over the horizon
of the simplices it sees strictly.  The boundary triangulation this leaves
behind is also what the facet contents and the volume are summed over.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from operator import mul


def dot(u, v):
    return sum(map(mul, u, v))


def det_int(rows):
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    k = len(rows)
    if k == 0:
        return 1
    if k == 1:
        return rows[0][0]
    if k == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if k == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for i in range(k - 1):
        if m[i][i] == 0:
            for r in range(i + 1, k):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[i][i]
        for r in range(i + 1, k):
            mr = m[r]
            mi = m[i]
            f = mr[i]
            for c in range(i + 1, k):
                mr[c] = (piv * mr[c] - f * mi[c]) // prev
            mr[i] = 0
        prev = piv
    return sign * m[k - 1][k - 1]


def cross(edges, d):
    """Vector w with det[edges..., u] == <w, u> for every u (d-1 edges in Z^d)."""
    w = []
    for j in range(d):
        minor = [e[:j] + e[j + 1:] for e in edges]
        w.append((-1) ** (d - 1 + j) * det_int(minor))
    return w


def primitive(v):
    """Divide an integer vector by the gcd of its entries; returns (g, v/g)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return 0, tuple(v)
    return g, tuple(x // g for x in v)


def rank(rows):
    """Rank of a list of integer (or rational) vectors."""
    return len(reduce_rows(rows)[0])


def reduce_rows(rows):
    """Incremental fraction-free echelon form of integer vectors.

    Returns ``(basis, pivots, used)`` where ``used`` lists the input indices
    that increased the rank.
    """
    basis = []
    pivots = []
    used = []
    for idx, row in enumerate(rows):
        r = list(row)
        for b, pc in zip(basis, pivots):
            f = r[pc]
            if f:
                bp = b[pc]
                r = [x * bp - f * y for x, y in zip(r, b)]
        for c, x in enumerate(r):
            if x:
                g = 0
                for y in r:
                    g = gcd(g, y)
                basis.append([y // g for y in r])
                pivots.append(c)
                used.append(idx)
                break
    return basis, pivots, used


def affine_independent(points):
    """Indices of a maximal affinely independent subset, starting at point 0."""
    x0 = points[0]
    edges = [tuple(a - b for a, b in zip(x, x0)) for x in points[1:]]
    basis, pivots, used = reduce_rows(edges)
    return [0] + [i + 1 for i in used], basis, pivots


@dataclass
class HullFacet:
    direction: tuple
    support: int
    content2: int  # sum of |g| over boundary simplices, i.e. (d-1)! vol / |w|
    members: set


@dataclass
class FullHull:
    extreme: list
    facets: list
    volume2: int  # d! * volume


def full_hull(points):
    """Hull of distinct integer points that affinely span their space (d >= 2)."""
    d = len(points[0])
    start, _, _ = affine_independent(points)
    if len(start) != d + 1:
        raise ValueError("points do not span the ambient space")
    centre = [sum(points[i][c] for i in start) for c in range(d)]
    simplices = []  # (verts, w, a, |g|)

    def make(verts):
        x0 = points[verts[0]]
        edges = [tuple(a - b for a, b in zip(points[v], x0)) for v in verts[1:]]
        g, w = primitive(cross(edges, d))
        a = dot(w, x0)
        if dot(w, centre) > (d + 1) * a:
            w = tuple(-x for x in w)
            a = -a
        return (tuple(sorted(verts)), w, a, abs(g))

    for face in combinations(start, d):
        simplices.append(make(face))

    in_start = set(start)
    for i, p in enumerate(points):
        if i in in_start:
            continue
        visible = [s for s in simplices if dot(s[1], p) > s[2]]
        if not visible:
            continue
        ridges = Counter()
        for s in visible:
            for r in combinations(s[0], d - 1):
                ridges[r] += 1
        seen = set(id(s) for s in visible)
        simplices = [s for s in simplices if id(s) not in seen]
        for r, cnt in ridges.items():
            if cnt == 1:
                simplices.append(make(r + (i,)))

    groups = {}
    for verts, w, a, g in simplices:
        key = (w, a)
        if key not in groups:
            groups[key] = HullFacet(w, a, 0, set())
        hf = groups[key]
        hf.content2 += g
        hf.members.update(verts)
    facets = list(groups.values())

    candidates = sorted(set().union(*(f.members for f in facets)))
    extreme = []
    for i in candidates:
        x = points[i]
        normals = [f.direction for f in facets if dot(f.direction, x) == f.support]
        if len(normals) >= d and rank(normals) == d:
            extreme.append(i)
    for f in facets:
        f.members = {i for i in extreme if dot(f.direction, points[i]) == f.support}

    v0 = points[extreme[0]]
    volume2 = sum(g * (a - dot(w, v0)) for _, w, a, g in simplices)
    return FullHull(extreme, facets, volume2)
