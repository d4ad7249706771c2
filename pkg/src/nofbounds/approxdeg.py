"""Approximate degree of Boolean functions and dual polynomials, by exact LP.

``alpha_d(f)`` is the least ``alpha`` for which some polynomial ``p`` of degree
at most ``d`` satisfies ``1 <= p(x) f(x) <= alpha`` for all ``x``; it is
infinite when no degree-``d`` polynomial sign-represents ``f``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import caps as _caps
from .boolfun import BooleanFunction, RealFunction, chi, fourier_transform, monomials, popcount
from .errors import ValidationError
from .lp import LinearProgram, solve
from .rational import INF, fmt, frac, is_inf, parse_alpha


@dataclass(frozen=True)
class MonomialMatrix:
    """Rows are cube points in index order, columns monomials of degree <= d."""

    m: int
    d: int
    columns: tuple  # subset masks
    W: np.ndarray

    @classmethod
    def build(cls, m, d, caps=None):
        _check_arity(m, caps)
        if not 0 <= d <= m:
            raise ValidationError(f"degree must lie in [0, {m}], got {d}")
        cols = tuple(monomials(m, d))
        W = np.array([[chi(S, x) for S in cols] for x in range(1 << m)], dtype=np.int64)
        W.flags.writeable = False
        return cls(m, d, cols, W)

    @property
    def n_columns(self):
        return len(self.columns)

    @staticmethod
    def expected_columns(m, d):
        return sum(comb(m, i) for i in range(d + 1))


def _check_arity(m, caps=None):
    _caps.require("approximate-degree arity", m, _caps.resolve(caps).approxdeg_arity)


def _check_function(f):
    if not isinstance(f, RealFunction) or not f.is_boolean():
        raise ValidationError("approximate degree needs a +-1 valued function")


@dataclass
class AlphaResult:
    d: int
    value: object  # Fraction or INF
    polynomial: tuple = None  # coefficients by column, None when infinite
    columns: tuple = ()

    def to_json(self):
        out = {"d": self.d, "value": fmt(self.value)}
        if self.polynomial is not None:
            out["polynomial"] = {str(S): fmt(c) for S, c in zip(self.columns, self.polynomial) if c}
        return out


def alpha_d(f, d, caps=None):
    """Exact alpha_d(f): min t subject to 1 <= f(x) (Wy)(x) <= t, y free."""
    _check_function(f)
    mm = MonomialMatrix.build(f.m, d, caps)
    nc = mm.n_columns
    lp = LinearProgram(nc + 1, [0] * nc + [1], "min", lower=[None] * nc + [0])
    for x in range(1 << f.m):
        s = int(f.table[x])
        row = [s * int(v) for v in mm.W[x]]
        lp.add(row + [0], ">=", 1)
        lp.add([-v for v in row] + [1], ">=", 0)
    sol = solve(lp, caps)
    if sol.status == "infeasible":
        return AlphaResult(d, INF, None, mm.columns)
    return AlphaResult(d, sol.value, tuple(sol.primal[:nc]), mm.columns)


def sign_representable(f, d, caps=None):
    """Is there a polynomial of degree <= d with f(x) p(x) >= 1 everywhere?  Pure feasibility."""
    _check_function(f)
    mm = MonomialMatrix.build(f.m, d, caps)
    nc = mm.n_columns
    lp = LinearProgram(nc, [0] * nc, "min", lower=[None] * nc)
    for x in range(1 << f.m):
        s = int(f.table[x])
        lp.add([s * int(v) for v in mm.W[x]], ">=", 1)
    return solve(lp, caps).status == "optimal"


def lemma_dual_correlation(f, d, caps=None):
    """max <v,f> over ||v||_1 = 1, v^T W = 0, or None when infeasible (d = m)."""
    _check_function(f)
    mm = MonomialMatrix.build(f.m, d, caps)
    return _dual_lp(f, mm, caps)


def _dual_lp(f, mm, caps, sign_constrained=False):
    n = 1 << f.m
    table = [int(v) for v in f.table]
    if sign_constrained:
        # v = f o u with u >= 0; <v,f> = sum u = 1 is then automatic
        lp = LinearProgram(n, [0] * n, "max")
        lp.add([1] * n, "=", 1)
        for j in range(mm.n_columns):
            lp.add([table[x] * int(mm.W[x, j]) for x in range(n)], "=", 0)
        sol = solve(lp, caps)
        if sol.status != "optimal":
            return None
        return Fraction(1), [table[x] * sol.primal[x] for x in range(n)]
    lp = LinearProgram(2 * n, table + [-t for t in table], "max")
    lp.add([1] * (2 * n), "=", 1)
    for j in range(mm.n_columns):
        col = [int(mm.W[x, j]) for x in range(n)]
        lp.add(col + [-c for c in col], "=", 0)
    sol = solve(lp, caps)
    if sol.status != "optimal":
        return None
    v = [sol.primal[x] - sol.primal[n + x] for x in range(n)]
    if sum(abs(a) for a in v) != 1:
        # only reachable when v^T W = 0 forces v = 0 and the split cancels out
        return None
    return sol.value, v


def alpha_from_correlation(c):
    """(1 + c) / (1 - c), infinite at c = 1."""
    return INF if c == 1 else (1 + c) / (1 - c)


def lemma_dual_value(f, d, caps=None):
    """The dual expression for alpha_d(f); None when the dual program is infeasible."""
    res = lemma_dual_correlation(f, d, caps)
    return None if res is None else alpha_from_correlation(res[0])


def _le(a, b):
    if is_inf(b):
        return True
    return not is_inf(a) and a <= b


@dataclass
class DegreeResult:
    degree: int
    alpha: object
    values: dict = field(default_factory=dict)  # d -> alpha_d(f) for d <= degree

    def to_json(self):
        return {"degree": self.degree, "alpha": fmt(self.alpha), "alpha_d": {str(d): v if isinstance(v, str) else fmt(v) for d, v in self.values.items()}}


def deg_alpha(f, alpha, caps=None, detail=False):
    """Least d with alpha_d(f) <= alpha; for alpha = inf the least d that sign-represents f."""
    _check_function(f)
    alpha = parse_alpha(alpha)
    values = {}
    for d in range(f.m + 1):
        if is_inf(alpha):
            ok = sign_representable(f, d, caps)
            values[d] = "finite" if ok else INF
        else:
            values[d] = alpha_d(f, d, caps).value
            ok = _le(values[d], alpha)
        if ok:
            res = DegreeResult(d, alpha, values)
            return res if detail else d
    raise AssertionError("alpha_m(f) = 1, so the loop always returns")  # pragma: no cover


@dataclass
class DualPolynomial:
    m: int
    values: tuple  # rationals indexed by cube point
    vanishing_degree: int  # orthogonal to every character chi_T with |T| <= this
    correlation: Fraction
    alpha: object = None
    approx_degree: int = None  # deg_alpha(f) the witness was extracted for

    def to_json(self):
        out = {
            "m": self.m,
            "values": [fmt(v) for v in self.values],
            "vanishing_degree": self.vanishing_degree,
            "correlation": fmt(self.correlation),
        }
        if self.alpha is not None:
            out["alpha"] = fmt(self.alpha)
        if self.approx_degree is not None:
            out["approx_degree"] = self.approx_degree
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            m = int(obj["m"])
            values = tuple(frac(v) for v in obj["values"])
            d = int(obj["vanishing_degree"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("dual polynomial JSON needs 'm', 'values', 'vanishing_degree'") from exc
        if len(values) != 1 << m:
            raise ValidationError("dual polynomial table length does not match arity")
        corr = frac(obj["correlation"]) if "correlation" in obj else None
        alpha = parse_alpha(obj["alpha"]) if "alpha" in obj else None
        v = cls(m, values, d, corr, alpha, obj.get("approx_degree"))
        return v


def dual_polynomial(f, alpha, caps=None):
    """A witness that f has no degree-(deg_alpha(f) - 1) alpha-approximation.

    The witness comes from the dual program at d' = deg_alpha(f) - 1, so it
    is orthogonal to characters of size at most d'.  For finite alpha its
    correlation with f is the optimum c of that program, which satisfies
    (1+c)/(1-c) = alpha_{d'}(f) > alpha.  For alpha = inf it is additionally
    sign-consistent with f.
    """
    _check_function(f)
    alpha = parse_alpha(alpha)
    deg = deg_alpha(f, alpha, caps)
    if deg == 0:
        raise ValidationError("f has approximate degree 0 (it is constant); no dual polynomial exists")
    dprime = deg - 1
    mm = MonomialMatrix.build(f.m, dprime, caps)
    res = _dual_lp(f, mm, caps, sign_constrained=is_inf(alpha))
    if res is None:  # pragma: no cover - excluded by LP duality
        raise AssertionError("dual program infeasible below the approximate degree")
    c, v = res
    return DualPolynomial(f.m, tuple(v), dprime, c, alpha, deg)


@dataclass
class DualReport:
    normalized: bool
    vanishing: bool
    correlation: bool
    sign_consistent: object  # bool for alpha = inf, None otherwise
    l1: Fraction
    max_leak_degree: int  # smallest |T| with <v, chi_T> != 0, or -1 if none
    correlation_value: Fraction
    threshold: Fraction
    vanishing_degree: int
    vanishes_at_approx_degree: object = None  # the stronger indexing, reported only

    @property
    def ok(self):
        return self.normalized and self.vanishing and self.correlation and self.sign_consistent is not False

    def to_json(self):
        return {
            "ok": self.ok,
            "normalized": self.normalized,
            "vanishing": self.vanishing,
            "correlation": self.correlation,
            "sign_consistent": self.sign_consistent,
            "l1": fmt(self.l1),
            "lowest_nonvanishing_degree": self.max_leak_degree,
            "correlation_value": fmt(self.correlation_value),
            "threshold": fmt(self.threshold),
            "vanishing_degree": self.vanishing_degree,
            "vanishes_at_approx_degree": self.vanishes_at_approx_degree,
        }


def verify_dual_polynomial(v, f, alpha):
    """Check the three witness properties by direct substitution."""
    _check_function(f)
    if v.m != f.m:
        raise ValidationError("arity mismatch between witness and function")
    alpha = parse_alpha(alpha)
    l1 = sum((abs(x) for x in v.values), Fraction(0))
    spec = fourier_transform(RealFunction(v.m, v.values))
    leaks = [popcount(S) for S, c in enumerate(spec.coefficients) if c]
    lowest = min(leaks, default=-1)
    vanishing = lowest == -1 or lowest > v.vanishing_degree
    corr = sum((a * b for a, b in zip(v.values, f.table)), Fraction(0))
    if is_inf(alpha):
        threshold = Fraction(0)
        sign_ok = all(a * b >= 0 for a, b in zip(v.values, f.table))
        corr_ok = corr > 0
    else:
        threshold = (alpha - 1) / (alpha + 1)
        sign_ok = None
        corr_ok = corr >= threshold
    at_deg = None
    if v.approx_degree is not None:
        at_deg = lowest == -1 or lowest > v.approx_degree
    return DualReport(l1 == 1, vanishing, corr_ok, sign_ok, l1, lowest, corr, threshold, v.vanishing_degree, at_deg)


def as_boolean(f):
    return f if isinstance(f, BooleanFunction) else BooleanFunction(f.m, f.table)
