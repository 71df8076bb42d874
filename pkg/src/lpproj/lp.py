"""Finite sums ``sum_i c_i <w_i, .>_{s_i}^p`` and their formal differences.

An ``LpFunction`` is the p-th power of the support function of an
L_p-Minkowski combination of segments ``[o, w]``; adding two of them is
L_p-Minkowski addition of the bodies.  Directions are primitive integer
vectors, which makes the term set hashable and structural equality exact.

Canonical form: ``<-w, .>_- == <w, .>_+``, so every term is stored with a
lexicographically positive direction and the sign flipped accordingly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

DROP_TOL = 1e-14


def _check_p(p):
    if not p > 1:
        raise ValueError(f"p must be > 1, got {p}")


def canonical_direction(w, sign):
    """Primitive, lexicographically positive form of the pair (w, sign)."""
    g = 0
    for c in w:
        g = gcd(g, int(c))
    if g == 0:
        raise ValueError("term direction must be nonzero")
    w = tuple(int(c) // g for c in w)
    lead = next(c for c in w if c != 0)
    if lead < 0:
        w = tuple(-c for c in w)
        sign = "-" if sign == "+" else "+"
    return w, sign


@dataclass(frozen=True)
class LpTerm:
    direction: tuple
    sign: str
    coef: float

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")
        if not self.coef >= 0:
            raise ValueError("coefficients must be nonnegative")


def _weight(w, c, p):
    """Size of the term ``c <w, .>^p`` against unit directions."""
    return c * sum(x * x for x in w) ** (p / 2)


def _drop_small(acc, p):
    """Keep terms whose unit-direction weight is not negligible."""
    if not acc:
        return acc
    wt = {k: _weight(k[0], c, p) for k, c in acc.items()}
    top = max(wt.values())
    return {k: c for k, c in acc.items() if c > 0 and wt[k] > DROP_TOL * top}


def _merge(items, p, drop=True):
    acc = {}
    for w, s, c in items:
        key = canonical_direction(w, s)
        acc[key] = acc.get(key, 0.0) + float(c)
    if not acc:
        return {}
    return _drop_small(acc, p) if drop else acc


class LpFunction:
    """A nonnegative p-homogeneous function in canonical term form."""

    __slots__ = ("p", "n", "terms", "_mat", "_coefs")

    def __init__(self, p: float, n: int, terms=()):
        _check_p(p)
        self.p = float(p)
        self.n = int(n)
        items = []
        for t in terms:
            if isinstance(t, LpTerm):
                t = (t.direction, t.sign, t.coef)
            w, s, c = t
            if len(w) != self.n:
                raise ValueError("term direction has wrong dimension")
            if c < 0:
                raise ValueError("coefficients must be nonnegative")
            items.append((w, s, c))
        acc = _merge(items, p)
        self.terms = tuple(LpTerm(w, s, c) for (w, s), c in sorted(acc.items()))
        self._mat = None
        self._coefs = None

    @classmethod
    def zero(cls, p: float, n: int) -> "LpFunction":
        return cls(p, n)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        body = " + ".join(f"{t.coef:.6g}<{t.direction},.>_{t.sign}^p" for t in self.terms) or "0"
        return f"LpFunction(p={self.p}, n={self.n}: {body})"

    def __eq__(self, other):
        if not isinstance(other, LpFunction):
            return NotImplemented
        return (self.p, self.n, self.terms) == (other.p, other.n, other.terms)

    def __hash__(self):
        return hash((self.p, self.n, self.terms))

    def _arrays(self):
        if self._mat is None:
            rows = [[c if t.sign == "+" else -c for c in t.direction] for t in self.terms]
            self._mat = np.array(rows, dtype=float).reshape(len(self.terms), self.n)
            self._coefs = np.array([t.coef for t in self.terms], dtype=float)
        return self._mat, self._coefs

    def eval_many(self, dirs) -> np.ndarray:
        U = np.asarray(dirs, dtype=float)
        if U.ndim != 2 or U.shape[1] != self.n:
            raise ValueError("direction batch has wrong dimension")
        W, c = self._arrays()
        if not len(c):
            return np.zeros(len(U))
        proj = np.maximum(U @ W.T, 0.0)
        return (proj ** self.p) @ c

    def __call__(self, u) -> float:
        u = np.asarray(u, dtype=float)
        if u.shape != (self.n,):
            raise ValueError("direction has wrong dimension")
        return float(self.eval_many(u[None, :])[0])

    def __add__(self, other):
        return lp_add(self, other)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "terms": [{"dir": list(t.direction), "sign": t.sign, "coef": t.coef} for t in self.terms],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LpFunction":
        terms = [(tuple(int(c) for c in t["dir"]), t["sign"], float(t["coef"])) for t in data["terms"]]
        return cls(float(data["p"]), int(data["n"]), terms)


def evaluate(f: LpFunction, u) -> float:
    return f(u)


def _compatible(f, g):
    if f.p != g.p or f.n != g.n:
        raise ValueError(f"mismatched functions: p={f.p}/{g.p}, n={f.n}/{g.n}")


def lp_add(f: LpFunction, g: LpFunction) -> LpFunction:
    _compatible(f, g)
    items = [(t.direction, t.sign, t.coef) for t in f.terms + g.terms]
    return LpFunction(f.p, f.n, items)


def scalar_body(f: LpFunction, c: float) -> LpFunction:
    """The function of the body ``cK``, i.e. every coefficient times c**p."""
    if c < 0:
        raise ValueError("scale must be nonnegative")
    k = float(c) ** f.p
    return LpFunction(f.p, f.n, [(t.direction, t.sign, t.coef * k) for t in f.terms])


def scale_values(f: LpFunction, k: float) -> LpFunction:
    """Pointwise multiple ``k f`` for k >= 0."""
    if k < 0:
        raise ValueError("multiplier must be nonnegative")
    return LpFunction(f.p, f.n, [(t.direction, t.sign, t.coef * k) for t in f.terms])


def _primitive_rational(v):
    """Write a nonzero rational vector as t * w with w primitive integer and t > 0."""
    den = lcm(*(Fraction(c).denominator for c in v))
    ints = [int(Fraction(c) * den) for c in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return Fraction(g, den), tuple(x // g for x in ints)


def compose_inverse(f: LpFunction, phi) -> LpFunction:
    """``f o phi^{-1}``: each direction w becomes ``phi^{-t} w``."""
    if phi.n != f.n:
        raise ValueError("map and function dimensions differ")
    if phi.det == 0:
        raise ValueError("linear map is singular")
    inv_t = phi.inverse().transpose()
    items = []
    for t in f.terms:
        scale, w = _primitive_rational(inv_t(t.direction))
        items.append((w, t.sign, t.coef * float(scale) ** f.p))
    return LpFunction(f.p, f.n, items)


def direction_sample(n: int, rng=None, count: int = 200) -> np.ndarray:
    """All +-e_i, all (+-e_i +- e_j)/sqrt 2, and ``count`` seeded random unit vectors."""
    if rng is None:
        rng = np.random.default_rng(0)
    rows = []
    for i in range(n):
        for s in (1.0, -1.0):
            e = np.zeros(n)
            e[i] = s
            rows.append(e)
    r2 = 1 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1.0, -1.0):
                for sj in (1.0, -1.0):
                    e = np.zeros(n)
                    e[i], e[j] = si * r2, sj * r2
                    rows.append(e)
    g = rng.standard_normal((count, n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return np.vstack([np.array(rows), g])


def _structural_equal(f, g, tol):
    if len(f.terms) != len(g.terms):
        return False
    for a, b in zip(f.terms, g.terms):
        if a.direction != b.direction or a.sign != b.sign:
            return False
        if abs(a.coef - b.coef) > tol * max(1.0, abs(a.coef), abs(b.coef)):
            return False
    return True


def equal(f: LpFunction, g: LpFunction, tol: float = 1e-9, dirs=None) -> bool:
    """Structural comparison, falling back to comparison on sampled directions."""
    _compatible(f, g)
    if _structural_equal(f, g, tol):
        return True
    if dirs is None:
        dirs = direction_sample(f.n)
    a, b = f.eval_many(dirs), g.eval_many(dirs)
    scale = max(np.max(np.abs(a), initial=0.0), np.max(np.abs(b), initial=0.0))
    return bool(np.max(np.abs(a - b), initial=0.0) <= tol * (1 + scale))


def sup_distance(f: LpFunction, g: LpFunction, dirs=None) -> float:
    """Sampled Hausdorff distance of the bodies: max |f^(1/p) - g^(1/p)| on unit vectors."""
    _compatible(f, g)
    if dirs is None:
        dirs = direction_sample(f.n)
    U = np.asarray(dirs, dtype=float)
    U = U / np.linalg.norm(U, axis=1, keepdims=True)
    a = f.eval_many(U) ** (1 / f.p)
    b = g.eval_many(U) ** (1 / g.p)
    return float(np.max(np.abs(a - b), initial=0.0))


class SignedLpFunction:
    """Formal difference ``pos - neg`` of two LpFunctions, common mass cancelled."""

    __slots__ = ("pos", "neg")

    def __init__(self, pos: LpFunction, neg: LpFunction | None = None):
        if neg is None:
            neg = LpFunction.zero(pos.p, pos.n)
        _compatible(pos, neg)
        a = {(t.direction, t.sign): t.coef for t in pos.terms}
        b = {(t.direction, t.sign): t.coef for t in neg.terms}
        for k in set(a) & set(b):
            m = min(a[k], b[k])
            a[k] -= m
            b[k] -= m
        wt = [_weight(w, c, pos.p) for (w, _), c in list(a.items()) + list(b.items())]
        top = max(wt + [0.0])
        pt = [(w, s, c) for (w, s), c in a.items() if c > 0 and _weight(w, c, pos.p) > DROP_TOL * top]
        nt = [(w, s, c) for (w, s), c in b.items() if c > 0 and _weight(w, c, pos.p) > DROP_TOL * top]
        self.pos = LpFunction(pos.p, pos.n, pt)
        self.neg = LpFunction(pos.p, pos.n, nt)

    @classmethod
    def zero(cls, p, n):
        return cls(LpFunction.zero(p, n))

    @property
    def p(self):
        return self.pos.p

    @property
    def n(self):
        return self.pos.n

    @property
    def is_zero(self) -> bool:
        return self.pos.is_zero and self.neg.is_zero

    def __repr__(self):
        return f"SignedLpFunction(pos={self.pos!r}, neg={self.neg!r})"

    def __eq__(self, other):
        if not isinstance(other, SignedLpFunction):
            return NotImplemented
        return self.pos == other.pos and self.neg == other.neg

    def __hash__(self):
        return hash((self.pos, self.neg))

    def eval_many(self, dirs) -> np.ndarray:
        return self.pos.eval_many(dirs) - self.neg.eval_many(dirs)

    def __call__(self, u) -> float:
        return self.pos(u) - self.neg(u)

    def __add__(self, other):
        return s_add(self, other)

    def __neg__(self):
        return s_negate(self)

    def __sub__(self, other):
        return s_add(self, s_negate(other))

    def to_dict(self) -> dict:
        return {"pos": self.pos.to_dict(), "neg": self.neg.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "SignedLpFunction":
        return cls(LpFunction.from_dict(data["pos"]), LpFunction.from_dict(data["neg"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "SignedLpFunction":
        return cls.from_dict(json.loads(text))


def s_add(f: SignedLpFunction, g: SignedLpFunction) -> SignedLpFunction:
    return SignedLpFunction(lp_add(f.pos, g.pos), lp_add(f.neg, g.neg))


def s_negate(f: SignedLpFunction) -> SignedLpFunction:
    return SignedLpFunction(f.neg, f.pos)


def s_scale(f: SignedLpFunction, k: float) -> SignedLpFunction:
    """Multiply values by a real k (negative k swaps the parts)."""
    if k < 0:
        return s_scale(s_negate(f), -k)
    return SignedLpFunction(scale_values(f.pos, k), scale_values(f.neg, k))


def s_eval(f: SignedLpFunction, u) -> float:
    return f(u)
