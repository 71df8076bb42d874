"""Seeded property checks for the operators.

Each ``check_*`` function tests one identity on one input and returns a
``CheckReport``; the ``*_suite`` functions draw seeded cases, run the checks
for every operator kind and merge the reports by maximum residual.  All
identities are compared on h^p (signed functions), sampled on a fixed
direction set, with residuals divided by ``1 + max |value|``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

import numpy as np

from lpproj.lp import direction_sample
from lpproj.operators import ALL_OPS, Combination, Op, apply, fit_constants, operator
from lpproj.polytope import (
    Hyperplane,
    LinearMap,
    Polytope,
    apply_map,
    conv_origin,
    convex_hull,
    dilate,
    facet_polytope,
    facets_facing_origin,
    halfspace_cut,
    intersect,
    standard_simplex,
)

DEFAULT_TOL = {
    "valuation": 1e-8,
    "inclusion-exclusion": 1e-8,
    "contravariance": 1e-8,
    "gl-law": 1e-7,
    "homogeneity": 1e-9,
    "functional-eq": 1e-8,
    "simplicity": 0.0,
    "simple-decomposition": 1e-8,
    "classification": 1e-9,
}
SUITES = tuple(DEFAULT_TOL)

MAX_RETRIES = 16


@dataclass
class CheckReport:
    name: str
    cases: int
    max_residual: float
    tolerance: float
    worst_case: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "worst_case": self.worst_case,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def merge(name: str, reports) -> CheckReport:
    reports = list(reports)
    worst = max(reports, key=lambda r: r.max_residual)
    return CheckReport(name, sum(r.cases for r in reports), worst.max_residual,
                       worst.tolerance, worst.worst_case)


def kind_name(kind) -> str:
    if isinstance(kind, Combination):
        return "combination(" + ",".join(repr(c) for c in kind.coefs) + ")"
    return kind.value


# -- generators ---------------------------------------------------------------

def make_rng(seed: int, *keys) -> np.random.Generator:
    """Generator for a (seed, suite, case...) path; PCG64 via SeedSequence."""
    words = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    for k in keys:
        if isinstance(k, str):
            words.extend(k.encode())
        else:
            words.append(int(k))
    return np.random.default_rng(np.random.SeedSequence(words))


def random_rational(rng, bound=6, dens=(1, 2, 3, 4)) -> Fraction:
    den = int(rng.choice(dens))
    return Fraction(int(rng.integers(-bound * den, bound * den + 1)), den)


def _random_point(n, rng, bound=6):
    return tuple(random_rational(rng, bound) for _ in range(n))


def random_polytope(n: int, rng, contains_origin: bool | None = None) -> Polytope:
    """Full-dimensional hull of 2n..4n small-denominator rational points.

    ``contains_origin=True`` adds reflected copies of a few points so that o is
    a convex combination; ``False`` shifts the cloud until o lies outside;
    ``None`` leaves the position to chance.
    """
    for _ in range(MAX_RETRIES):
        k = int(rng.integers(2 * n, 4 * n + 1))
        pts = [_random_point(n, rng, 3) for _ in range(k)]
        if contains_origin:
            for x in pts[:2]:
                r = Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4)))
                pts.append(tuple(-r * c for c in x))
        elif contains_origin is False or rng.random() < 0.5:
            shift = _random_point(n, rng, 5)
            pts = [tuple(a + b for a, b in zip(x, shift)) for x in pts]
        P = convex_hull(pts, n=n)
        if P.dim != n:
            continue
        if contains_origin is False and P.contains([0] * n):
            continue
        return P
    raise RuntimeError("could not draw a full-dimensional polytope")


def random_lowdim_polytope(n: int, rng, dim: int, through_origin: bool = False,
                           contains_origin: bool = False) -> Polytope:
    """Random polytope of the given dimension < n inside a random affine subspace."""
    for _ in range(MAX_RETRIES):
        basis = [tuple(int(c) for c in rng.integers(-3, 4, size=n)) for _ in range(dim)]
        if contains_origin or through_origin:
            base = (Fraction(0),) * n
        else:
            base = _random_point(n, rng, 4)
        pts = []
        for _ in range(int(rng.integers(dim + 1, 2 * dim + 4))):
            t = [random_rational(rng, 2) for _ in range(dim)]
            pts.append(tuple(base[i] + sum(tj * b[i] for tj, b in zip(t, basis)) for i in range(n)))
        if contains_origin:
            pts += [tuple(-c for c in x) for x in pts[:2]]
        P = convex_hull(pts, n=n)
        if P.dim == dim:
            return P
    raise RuntimeError("could not draw a lower-dimensional polytope")


def random_unimodular(n: int, rng) -> LinearMap:
    """Product of 5..15 elementary integer shears and even permutations; det 1."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(int(rng.integers(5, 16))):
        if n >= 3 and rng.random() < 0.2:
            i, j, k = (int(x) for x in rng.choice(n, size=3, replace=False))
            m[i], m[j], m[k] = m[k], m[i], m[j]
        else:
            i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
            c = int(rng.choice([-1, 1]))
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    phi = LinearMap(m)
    assert phi.det == 1
    return phi


def random_gl_positive(n: int, rng) -> LinearMap:
    """Random rational map with positive determinant."""
    for _ in range(MAX_RETRIES):
        m = [[random_rational(rng, 2) for _ in range(n)] for _ in range(n)]
        phi = LinearMap(m)
        if phi.det > 0:
            return phi
        if phi.det < 0:
            m[0] = [-c for c in m[0]]
            return LinearMap(m)
    raise RuntimeError("could not draw an invertible map")


def random_cut(P: Polytope, rng, through_origin: bool = False) -> Hyperplane:
    """Hyperplane through o, a random interior point, or (sometimes) a vertex."""
    n = P.n
    while True:
        normal = tuple(int(c) for c in rng.integers(-3, 4, size=n))
        if any(normal):
            break
    if through_origin:
        return Hyperplane(normal, 0)
    if rng.random() < 0.15:
        x = P.vertices[int(rng.integers(len(P.vertices)))]
    else:
        w = [Fraction(int(rng.integers(1, 6))) for _ in P.vertices]
        tot = sum(w)
        x = tuple(sum(wi * v[i] for wi, v in zip(w, P.vertices)) / tot for i in range(n))
    return Hyperplane(normal, sum(a * b for a, b in zip(normal, x)))


def phi_lambda(n: int, lam) -> LinearMap:
    """e_1 -> e_1, e_2 -> (1-lam) e_1 + lam e_2, identity elsewhere."""
    lam = Fraction(lam)
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    cols[1] = [1 - lam, lam] + [0] * (n - 2)
    return LinearMap.from_columns(cols)


def psi_lambda(n: int, lam) -> LinearMap:
    """e_1 -> (1-lam) e_1 + lam e_2, e_2 -> e_2, identity elsewhere."""
    lam = Fraction(lam)
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    cols[0] = [1 - lam, lam] + [0] * (n - 2)
    return LinearMap.from_columns(cols)


def h_lambda(n: int, lam) -> Hyperplane:
    """Hyperplane through o with normal lam e_1 - (1-lam) e_2."""
    lam = Fraction(lam)
    return Hyperplane([lam, lam - 1] + [0] * (n - 2), 0)


# -- cached geometry ----------------------------------------------------------

@lru_cache(maxsize=4096)
def _cut(P: Polytope, H: Hyperplane):
    return halfspace_cut(P, H)


@lru_cache(maxsize=4096)
def _image(P: Polytope, phi: LinearMap) -> Polytope:
    return apply_map(P, phi)


@lru_cache(maxsize=64)
def _dirs(n: int) -> np.ndarray:
    return direction_sample(n, make_rng(0, "directions", n))


def _poly(P: Polytope) -> dict:
    return P.to_dict()


def _map(phi: LinearMap) -> list:
    return [[str(c) for c in r] for r in phi.entries]


def _hyper(H: Hyperplane) -> dict:
    return {"normal": [str(c) for c in H.normal], "offset": str(H.offset)}


def _residual(values, combo) -> float:
    scale = 1.0 + max((float(np.max(np.abs(v), initial=0.0)) for v in values), default=0.0)
    return float(np.max(np.abs(combo), initial=0.0)) / scale


def _eval(kind, P, p, dirs, bump=0.0, scale=1.0):
    return apply(kind, P, p, scale=scale, bump=bump).eval_many(dirs)


# -- single-case checks -------------------------------------------------------

def check_valuation(kind, P: Polytope, H: Hyperplane, p: float, tol: float = 1e-8,
                    dirs=None, bump: float = 0.0) -> CheckReport:
    """``phi(P) + phi(P & H) == phi(P & H+) + phi(P & H-)``."""
    dirs = _dirs(P.n) if dirs is None else dirs
    cut = _cut(P, H)
    vals = [_eval(kind, X, p, dirs, bump) for X in (P, cut.section, cut.plus, cut.minus)]
    res = _residual(vals, vals[0] + vals[1] - vals[2] - vals[3])
    case = {"kind": kind_name(kind), "p": p, "P": _poly(P), "H": _hyper(H)}
    return CheckReport("valuation", 1, res, tol, case)


def _intersection(pieces, S):
    out = pieces[S[0]]
    for i in S[1:]:
        out = intersect(out, pieces[i])
    return out


@lru_cache(maxsize=256)
def _meets(pieces):
    n = pieces[0].n
    union = convex_hull([x for P in pieces for x in P.vertices], n=n)
    meets = {}
    for r in range(1, len(pieces) + 1):
        for S in combinations(range(len(pieces)), r):
            meets[S] = _intersection(pieces, S)
    vol = sum((-1) ** (len(S) - 1) * X.volume for S, X in meets.items())
    if vol != union.volume:
        raise ValueError("union of pieces is not convex")
    return union, meets


def check_inclusion_exclusion(kind, pieces, p: float, tol: float = 1e-8,
                              dirs=None) -> CheckReport:
    """Inclusion-exclusion over up to three full-dimensional pieces with convex union."""
    pieces = tuple(pieces)
    n = pieces[0].n
    union, meets = _meets(pieces)
    dirs = _dirs(n) if dirs is None else dirs
    lhs = _eval(kind, union, p, dirs)
    vals = [lhs]
    rhs = np.zeros(len(dirs))
    for S, X in meets.items():
        v = _eval(kind, X, p, dirs)
        vals.append(v)
        rhs += (-1) ** (len(S) - 1) * v
    res = _residual(vals, lhs - rhs)
    case = {"kind": kind_name(kind), "p": p, "pieces": [_poly(P) for P in pieces]}
    return CheckReport("inclusion-exclusion", 1, res, tol, case)


def check_contravariance(kind, P: Polytope, phi: LinearMap, p: float, tol: float = 1e-8,
                         dirs=None, bump: float = 0.0) -> CheckReport:
    """``phi_op(g P)(u) == phi_op(P)(g^-1 u)`` for g of determinant 1."""
    if phi.det != 1:
        raise ValueError("contravariance check needs a map of determinant 1")
    dirs = _dirs(P.n) if dirs is None else dirs
    inv = np.array(phi.inverse().to_floats())
    lhs = _eval(kind, _image(P, phi), p, dirs, bump)
    rhs = _eval(kind, P, p, dirs @ inv.T, bump)
    res = _residual([lhs, rhs], lhs - rhs)
    case = {"kind": kind_name(kind), "p": p, "P": _poly(P), "map": _map(phi)}
    return CheckReport("contravariance", 1, res, tol, case)


def check_gl_law(kind, P: Polytope, phi: LinearMap, p: float, tol: float = 1e-7,
                 dirs=None) -> CheckReport:
    """``op(gP) == det(g)^(p/n) op(det(g)^(1/n) P) o g^-1`` for det g > 0."""
    if phi.det <= 0:
        raise ValueError("GL law check needs a positive determinant")
    n = P.n
    dirs = _dirs(n) if dirs is None else dirs
    det = float(phi.det)
    inv = np.array(phi.inverse().to_floats())
    lhs = _eval(kind, _image(P, phi), p, dirs)
    rhs = det ** (p / n) * _eval(kind, P, p, dirs @ inv.T, scale=det ** (1.0 / n))
    res = _residual([lhs, rhs], lhs - rhs)
    case = {"kind": kind_name(kind), "p": p, "P": _poly(P), "map": _map(phi)}
    return CheckReport("gl-law", 1, res, tol, case)


def _axis_dirs(n):
    return np.vstack([np.eye(n), -np.eye(n)])


def check_homogeneity(kind, n: int, p: float, s_values=(Fraction(1, 2), 2, 3),
                      tol: float = 1e-9) -> CheckReport:
    """``op(sT^n)(+-e_i) == s^(n-p) op(T^n)(+-e_i)``, with sT^n built exactly."""
    T = standard_simplex(n)
    dirs = _axis_dirs(n)
    base = _eval(kind, T, p, dirs)
    worst = (0.0, None)
    for s in s_values:
        s = Fraction(s)
        v = _eval(kind, dilate(T, s), p, dirs)
        expect = float(s) ** (n - p) * base
        r = _residual([v, expect], v - expect)
        if worst[1] is None or r > worst[0]:
            worst = (r, str(s))
    case = {"kind": kind_name(kind), "p": p, "n": n, "s": worst[1]}
    return CheckReport("homogeneity", len(s_values), worst[0], tol, case)


def dissection_is_exact(n: int, lam) -> bool:
    """``T^n & H+ == phi T^n`` and ``T^n & H- == psi T^n`` as vertex sets."""
    T = standard_simplex(n)
    cut = halfspace_cut(T, h_lambda(n, lam))
    return cut.plus == apply_map(T, phi_lambda(n, lam)) and cut.minus == apply_map(T, psi_lambda(n, lam))


def check_functional_equation(kind, n: int, p: float, s, lam, x, tol: float = 1e-8) -> CheckReport:
    """The three-term relation from dissecting sT^n by H_lam, at the points x.

    ``op(sT)(x) = lam^(p/n) op(lam^(1/n) sT)(phi^-1 x)
                  + (1-lam)^(p/n) op((1-lam)^(1/n) sT)(psi^-1 x)``
    """
    s, lam = Fraction(s), Fraction(lam)
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")
    X = np.atleast_2d(np.asarray(x, dtype=float))
    T = standard_simplex(n)
    lhs = _eval(kind, dilate(T, s), p, X)
    lf, sf = float(lam), float(s)
    phi_inv = np.array(phi_lambda(n, lam).inverse().to_floats())
    psi_inv = np.array(psi_lambda(n, lam).inverse().to_floats())
    a = lf ** (p / n) * _eval(kind, T, p, X @ phi_inv.T, scale=lf ** (1 / n) * sf)
    b = (1 - lf) ** (p / n) * _eval(kind, T, p, X @ psi_inv.T, scale=(1 - lf) ** (1 / n) * sf)
    res = _residual([lhs, a, b], lhs - a - b)
    exact = dissection_is_exact(n, lam)
    if not exact:
        res = float("inf")
    case = {"kind": kind_name(kind), "p": p, "n": n, "s": str(s), "lambda": str(lam),
            "dissection_exact": exact}
    return CheckReport("functional-eq", len(X), res, tol, case)


def expected_zero(kind, P: Polytope) -> bool:
    """Whether the operator must vanish on P for dimension reasons alone."""
    n = P.n
    if P.dim == n:
        return False
    if kind in (Op.PI_PLUS, Op.PI_MINUS, Op.DELTA_PLUS, Op.DELTA_MINUS):
        return True
    if P.dim <= n - 2:
        return True
    return P.sides[0].support == 0


def check_simplicity(kind, P: Polytope, p: float) -> CheckReport:
    """Exact vanishing: the residual is the number of surviving terms."""
    if not expected_zero(kind, P):
        raise ValueError("no vanishing is predicted for this input")
    f = apply(kind, P, p)
    res = float(len(f.pos.terms) + len(f.neg.terms))
    case = {"kind": kind_name(kind), "p": p, "P": _poly(P), "dim": P.dim}
    return CheckReport("simplicity", 1, res, 0.0, case)


def check_simple_decomposition(kind, P: Polytope, p: float, tol: float = 1e-8,
                               dirs=None) -> CheckReport:
    """``op(P) == op(P_o) - sum op((F_i)_o)`` over the facets facing the origin."""
    if kind not in (Op.DELTA_PLUS, Op.DELTA_MINUS):
        raise ValueError("decomposition holds for the simple valuations only")
    if P.dim != P.n:
        raise ValueError("decomposition check needs a full-dimensional polytope")
    dirs = _dirs(P.n) if dirs is None else dirs
    lhs = _eval(kind, P, p, dirs)
    vals = [lhs, _eval(kind, conv_origin(P), p, dirs)]
    for f in facets_facing_origin(P):
        vals.append(_eval(kind, conv_origin(facet_polytope(P, f)), p, dirs))
    combo = lhs - vals[1] + sum(vals[2:], np.zeros(len(dirs)))
    res = _residual(vals, combo)
    case = {"kind": kind_name(kind), "p": p, "P": _poly(P)}
    return CheckReport("simple-decomposition", 1, res, tol, case)


def check_classification_roundtrip(n: int, p: float, c, tol: float = 1e-9,
                                   polytopes=None, seed: int = 0, dirs=None) -> CheckReport:
    """Recover ``c`` from probe values of ``Combination(c)`` and rebuild the operator.

    The residual is the larger of the constant error and the sampled
    function error of the rebuilt operator over the test polytopes.
    """
    if n < 3:
        raise ValueError("classification requires n >= 3")
    kind = Combination(*c)
    d = fit_constants(operator(kind, p), n)
    fit_err = max(abs(a - b) for a, b in zip(d, kind.coefs))
    rebuilt = Combination(*(max(x, 0.0) for x in d))
    if polytopes is None:
        rng = make_rng(seed, "classification-polytopes", n)
        polytopes = [random_polytope(n, rng, contains_origin=(i % 2 == 0)) for i in range(20)]
    dirs = _dirs(n) if dirs is None else dirs
    fn_err = 0.0
    basis = (Op.PI_PLUS_POS, Op.PI_MINUS_POS, Op.PI_PLUS_NEG, Op.PI_MINUS_NEG)
    for P in polytopes:
        # the original operator, summed from the four basis operators separately
        a = sum((ci * _eval(k, P, p, dirs) for ci, k in zip(kind.coefs, basis)), np.zeros(len(dirs)))
        b = _eval(rebuilt, P, p, dirs)
        fn_err = max(fn_err, _residual([a, b], a - b))
    case = {"c": list(kind.coefs), "recovered": list(d), "fit_error": fit_err,
            "function_error": fn_err, "n": n, "p": p}
    return CheckReport("classification", 1, max(fit_err, fn_err), tol, case)


# -- suites -------------------------------------------------------------------

def _kinds(kinds):
    return ALL_OPS if kinds is None else tuple(kinds)


def valuation_suite(n, p, cases, seed, tol=None, kinds=None, bump=0.0):
    tol = DEFAULT_TOL["valuation"] if tol is None else tol
    kinds = _kinds(kinds)
    out = []
    geo = []
    for i in range(cases):
        rng = make_rng(seed, "valuation", n, i)
        Po = random_polytope(n, rng, contains_origin=True)
        Ho = random_cut(Po, rng, through_origin=True)
        P = random_polytope(n, rng)
        H = random_cut(P, rng)
        geo.append((Po, Ho, P, H))
    for kind in kinds:
        reps = []
        for Po, Ho, P, H in geo:
            reps.append(check_valuation(kind, Po, Ho, p, tol, bump=bump))
            if not kind.needs_origin:
                reps.append(check_valuation(kind, P, H, p, tol, bump=bump))
        out.append(merge(f"valuation[{kind_name(kind)}]", reps))
    return out


def two_cut_pieces(P: Polytope, rng, through_origin: bool):
    """Three full-dimensional pieces from cutting P, then cutting one half again."""
    for _ in range(MAX_RETRIES):
        a = _cut(P, random_cut(P, rng, through_origin))
        if a.plus.dim != P.n or a.minus.dim != P.n:
            continue
        b = _cut(a.minus, random_cut(a.minus, rng, through_origin))
        if b.plus.dim != P.n or b.minus.dim != P.n:
            continue
        return [a.plus, b.plus, b.minus]
    raise RuntimeError("could not cut the polytope into three pieces")


def inclusion_exclusion_suite(n, p, cases, seed, tol=None, kinds=None):
    tol = DEFAULT_TOL["inclusion-exclusion"] if tol is None else tol
    kinds = _kinds(kinds)
    geo = []
    for i in range(cases):
        rng = make_rng(seed, "inclusion-exclusion", n, i)
        Po = random_polytope(n, rng, contains_origin=True)
        P = random_polytope(n, rng)
        geo.append((two_cut_pieces(Po, rng, True), two_cut_pieces(P, rng, False)))
    out = []
    for kind in kinds:
        reps = []
        for po, pg in geo:
            reps.append(check_inclusion_exclusion(kind, po, p, tol))
            if not kind.needs_origin:
                reps.append(check_inclusion_exclusion(kind, pg, p, tol))
        out.append(merge(f"inclusion-exclusion[{kind_name(kind)}]", reps))
    return out


def contravariance_suite(n, p, cases, seed, tol=None, kinds=None, bump=0.0):
    tol = DEFAULT_TOL["contravariance"] if tol is None else tol
    kinds = _kinds(kinds)
    geo = []
    for i in range(cases):
        rng = make_rng(seed, "contravariance", n, i)
        P = random_polytope(n, rng, contains_origin=bool(i % 2 == 0) or None)
        geo.append((P, random_unimodular(n, rng)))
    out = []
    for kind in kinds:
        reps = [check_contravariance(kind, P, phi, p, tol, bump=bump)
                for P, phi in geo if not kind.needs_origin or P.contains([0] * n)]
        out.append(merge(f"contravariance[{kind_name(kind)}]", reps))
    return out


def gl_law_suite(n, p, cases, seed, tol=None, kinds=None):
    tol = DEFAULT_TOL["gl-law"] if tol is None else tol
    kinds = _kinds(kinds)
    geo = []
    for i in range(cases):
        rng = make_rng(seed, "gl-law", n, i)
        P = random_polytope(n, rng, contains_origin=bool(i % 2 == 0) or None)
        geo.append((P, random_gl_positive(n, rng)))
    out = []
    for kind in kinds:
        reps = [check_gl_law(kind, P, phi, p, tol)
                for P, phi in geo if not kind.needs_origin or P.contains([0] * n)]
        out.append(merge(f"gl-law[{kind_name(kind)}]", reps))
    return out


def homogeneity_suite(n, p, cases=None, seed=None, tol=None, kinds=None):
    tol = DEFAULT_TOL["homogeneity"] if tol is None else tol
    return [merge(f"homogeneity[{kind_name(k)}]", [check_homogeneity(k, n, p, tol=tol)])
            for k in _kinds(kinds)]


LAMBDAS = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))


def functional_equation_suite(n, p, cases=20, seed=0, tol=None, kinds=None):
    tol = DEFAULT_TOL["functional-eq"] if tol is None else tol
    rng = make_rng(seed, "functional-eq", n)
    X = rng.standard_normal((max(int(cases), 1), n))
    X[0] = 0.0
    X[0, 0] = X[0, 1] = 1.0  # e_1 + e_2
    out = []
    for kind in _kinds(kinds):
        reps = [check_functional_equation(kind, n, p, s, lam, X, tol)
                for lam in LAMBDAS for s in (1, 2)]
        out.append(merge(f"functional-eq[{kind_name(kind)}]", reps))
    return out


def simplicity_suite(n, p, cases, seed, tol=None, kinds=None):
    kinds = _kinds(kinds)
    low, low_o, thin, flat = [], [], [], []
    for i in range(cases):
        rng = make_rng(seed, "simplicity", n, i)
        low.append(random_lowdim_polytope(n, rng, int(rng.integers(0, n))))
        low_o.append(random_lowdim_polytope(n, rng, int(rng.integers(0, n)), contains_origin=True))
        thin.append(random_lowdim_polytope(n, rng, int(rng.integers(0, n - 1))))
        flat.append(random_lowdim_polytope(n, rng, n - 1, through_origin=True))
    out = []
    for kind in kinds:
        if kind.needs_origin:
            sample = low_o
        elif kind in (Op.DELTA_PLUS, Op.DELTA_MINUS):
            sample = low + low_o
        else:
            sample = thin + flat
        out.append(merge(f"simplicity[{kind_name(kind)}]", [check_simplicity(kind, P, p) for P in sample]))
    return out


def simple_decomposition_suite(n, p, cases, seed, tol=None, kinds=None):
    tol = DEFAULT_TOL["simple-decomposition"] if tol is None else tol
    kinds = [k for k in _kinds(kinds) if k in (Op.DELTA_PLUS, Op.DELTA_MINUS)]
    geo = [random_polytope(n, make_rng(seed, "simple-decomposition", n, i), contains_origin=False)
           for i in range(cases)]
    return [merge(f"simple-decomposition[{kind_name(k)}]",
                  [check_simple_decomposition(k, P, p, tol) for P in geo]) for k in kinds]


def classification_suite(n, p, cases, seed, tol=None, kinds=None):
    tol = DEFAULT_TOL["classification"] if tol is None else tol
    rng = make_rng(seed, "classification", n)
    polys = [random_polytope(n, rng, contains_origin=(i % 2 == 0)) for i in range(20)]
    reps = []
    for i in range(cases):
        c = tuple(float(x) for x in rng.uniform(0.0, 3.0, size=4))
        reps.append(check_classification_roundtrip(n, p, c, tol, polytopes=polys))
    return [merge("classification", reps)]


SUITE_FUNCS = {
    "valuation": valuation_suite,
    "inclusion-exclusion": inclusion_exclusion_suite,
    "contravariance": contravariance_suite,
    "gl-law": gl_law_suite,
    "homogeneity": homogeneity_suite,
    "functional-eq": functional_equation_suite,
    "simplicity": simplicity_suite,
    "simple-decomposition": simple_decomposition_suite,
    "classification": classification_suite,
}


def run_suite(name: str, n: int, p: float, cases: int, seed: int, tol=None, bump: float = 0.0):
    """Run one named suite; ``bump`` perturbs one coefficient per operator value."""
    if name not in SUITE_FUNCS:
        raise KeyError(name)
    if name == "classification" and n < 3:
        raise ValueError("classification requires n >= 3")
    if bump:
        if name not in ("valuation", "contravariance"):
            raise ValueError("perturbed operators are only wired into valuation and contravariance")
        return SUITE_FUNCS[name](n, p, cases, seed, tol, bump=bump)
    return SUITE_FUNCS[name](n, p, cases, seed, tol)
