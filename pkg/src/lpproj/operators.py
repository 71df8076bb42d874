"""Asymmetric L_p projection body operators on polytopes.

Every operator is a facet sum

    sum over faces F with outer normal v of   vol(F) |h(P, v)|^(1-p) <v, .>_(+/-)^p

restricted to faces with ``h(P, v) > 0`` or ``h(P, v) < 0``.  With a
primitive integer normal w, ``v = w/|w|`` and unnormalised support ``a``,
the coefficient of ``<w, .>^p`` collapses to ``(vol(F)/|w|) |a|^(1-p)``;
``vol(F)/|w|`` is exact (``Facet.content``), so the only inexact step is
the power of ``|a|``.

An (n-1)-dimensional polytope contributes both of its sides, each with its
full (n-1)-volume.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass
from math import factorial
from typing import Callable, Union

from lpproj.lp import LpFunction, SignedLpFunction, lp_add, scale_values
from lpproj.polytope import Polytope, shifted_simplex, standard_simplex


class PreconditionError(ValueError):
    """An operator was applied outside its domain."""


class Op(enum.Enum):
    PI_PLUS = "pi-plus"
    PI_MINUS = "pi-minus"
    PI_PLUS_POS = "pi-plus-pos"
    PI_MINUS_POS = "pi-minus-pos"
    PI_PLUS_NEG = "pi-plus-neg"
    PI_MINUS_NEG = "pi-minus-neg"
    DELTA_PLUS = "delta-plus"
    DELTA_MINUS = "delta-minus"

    @property
    def needs_origin(self) -> bool:
        return self in (Op.PI_PLUS, Op.PI_MINUS)


@dataclass(frozen=True)
class Combination:
    """``c1 Pi~+ +_p c2 Pi~- +_p c3 Pi+neg +_p c4 Pi-neg`` on the level of h^p.

    The coefficients are p-th powers of the body-level constants.
    """

    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0
    c4: float = 0.0

    def __post_init__(self):
        if min(self.coefs) < 0:
            raise ValueError("combination coefficients must be nonnegative")

    @property
    def coefs(self):
        return (self.c1, self.c2, self.c3, self.c4)

    @property
    def needs_origin(self) -> bool:
        return False


OperatorKind = Union[Op, Combination]

ALL_OPS = tuple(Op)


def facet_sum(P: Polytope, p: float, side: int, sign: str, scale: float = 1.0,
              bump: float = 0.0) -> LpFunction:
    """Sum over faces with ``side * h(P, v) > 0``, attached to ``<v, .>_sign^p``.

    ``scale`` evaluates the same sum for the dilate ``scale * P`` (any real
    scale > 0) from P's facet data.  ``bump`` multiplies the coefficient of
    the largest eligible face by ``1 + bump``; it exists for negative
    controls only.
    """
    n = P.n
    faces = [f for f in P.faces() if (f.support > 0 if side > 0 else f.support < 0)]
    big = max(faces, key=lambda f: (f.volume, f.direction)) if (bump and faces) else None
    terms = []
    for f in faces:
        content = float(f.content) * scale ** (n - 1)
        h = abs(float(f.support)) * scale
        coef = content * h ** (1.0 - p)
        if f is big:
            coef *= 1.0 + bump
        terms.append((f.direction, sign, coef))
    return LpFunction(p, n, terms)


@lru_cache(maxsize=1024)
def _holds_origin(P: Polytope) -> bool:
    return P.is_empty or P.contains([0] * P.n)


def _require_origin(P: Polytope):
    if not _holds_origin(P):
        raise PreconditionError("operator requires the origin to lie in P")


def pi_plus(P: Polytope, p: float, scale: float = 1.0) -> LpFunction:
    _require_origin(P)
    return facet_sum(P, p, +1, "+", scale)


def pi_minus(P: Polytope, p: float, scale: float = 1.0) -> LpFunction:
    _require_origin(P)
    return facet_sum(P, p, +1, "-", scale)


def pi_plus_pos(P: Polytope, p: float, scale: float = 1.0) -> LpFunction:
    return facet_sum(P, p, +1, "+", scale)


def pi_minus_pos(P: Polytope, p: float, scale: float = 1.0) -> LpFunction:
    return facet_sum(P, p, +1, "-", scale)


def pi_plus_neg(P: Polytope, p: float, scale: float = 1.0) -> LpFunction:
    return facet_sum(P, p, -1, "+", scale)


def pi_minus_neg(P: Polytope, p: float, scale: float = 1.0) -> LpFunction:
    return facet_sum(P, p, -1, "-", scale)


def delta_plus(P: Polytope, p: float, scale: float = 1.0) -> SignedLpFunction:
    return SignedLpFunction(pi_plus_pos(P, p, scale), pi_minus_neg(P, p, scale))


def delta_minus(P: Polytope, p: float, scale: float = 1.0) -> SignedLpFunction:
    return SignedLpFunction(pi_minus_pos(P, p, scale), pi_plus_neg(P, p, scale))


# (side, sign) of the nonnegative parts; Delta is (pos part, subtracted part)
_PARTS = {
    Op.PI_PLUS: ((+1, "+"),),
    Op.PI_MINUS: ((+1, "-"),),
    Op.PI_PLUS_POS: ((+1, "+"),),
    Op.PI_MINUS_POS: ((+1, "-"),),
    Op.PI_PLUS_NEG: ((-1, "+"),),
    Op.PI_MINUS_NEG: ((-1, "-"),),
    Op.DELTA_PLUS: ((+1, "+"), (-1, "-")),
    Op.DELTA_MINUS: ((+1, "-"), (-1, "+")),
}

_COMBINATION_PARTS = ((+1, "+"), (+1, "-"), (-1, "+"), (-1, "-"))


def apply(kind: OperatorKind, P: Polytope, p: float, scale: float = 1.0,
          bump: float = 0.0) -> SignedLpFunction:
    """Evaluate any operator kind as a signed function."""
    if p <= 1:
        raise ValueError("p must be > 1")
    if isinstance(kind, Combination):
        out = LpFunction.zero(p, P.n)
        for c, (side, sign) in zip(kind.coefs, _COMBINATION_PARTS):
            if c:
                part = facet_sum(P, p, side, sign, scale, bump)
                out = lp_add(out, scale_values(part, c))
        return SignedLpFunction(out)
    if kind.needs_origin:
        _require_origin(P)
    parts = _PARTS[kind]
    pos = facet_sum(P, p, *parts[0], scale, bump)
    if len(parts) == 1:
        return SignedLpFunction(pos)
    return SignedLpFunction(pos, facet_sum(P, p, *parts[1], scale))


def operator(kind: OperatorKind, p: float, bump: float = 0.0) -> Callable[[Polytope], SignedLpFunction]:
    """Bind kind and p into a black-box ``P -> SignedLpFunction``."""
    def phi(P: Polytope) -> SignedLpFunction:
        return apply(kind, P, p, bump=bump)
    return phi


def probe_points(n: int):
    """The four probe evaluations used to read off classification constants."""
    e1 = [0.0] * n
    e1[0] = 1.0
    d = [0.0] * n
    d[0], d[1] = -1.0, 1.0
    T, E = standard_simplex(n), shifted_simplex(n)
    return ((T, e1), (T, [-x for x in e1]), (E, d), (E, [-x for x in d]))


def fit_constants(phi: Callable[[Polytope], SignedLpFunction], n: int, p: float | None = None):
    """Constants ``(d1, d2, d3, d4)`` with ``phi = Combination(d1, ..., d4)``.

    ``d1 = (n-1)! phi(T^n)(e_1)``, ``d2`` at ``-e_1``, ``d3`` and ``d4`` from
    ``e_1 + T^n`` at ``+-(e_2 - e_1)``.  No sign checks are made here.
    """
    if n < 3:
        raise ValueError("classification constants need n >= 3")
    k = factorial(n - 1)
    cache = {}
    out = []
    for P, u in probe_points(n):
        key = id(P)
        if key not in cache:
            cache[key] = phi(P)
        out.append(k * cache[key](u))
    return tuple(out)
