"""The cylinder intersection norm, its approximate versions, and discrepancy.

Every quantity is an exact linear program over the enumerated basis of
cylinder-intersection characteristic tensors ``X_1, ..., X_B``:

* ``mu(B)``          min sum|a_i|  s.t.  sum a_i X_i = B
* ``mu_pm(B)``       same, with the +-1 tensors 2 X_i - J
* ``mu^alpha(A)``    min sum|a_i|  s.t.  1 <= A o (sum a_i X_i) <= alpha
* dual of the above  max ((1+alpha)<A,Q> + (1-alpha)|Q|_1) / 2  s.t.  |<X_i,Q>| <= 1
* ``disc(A)``        min t  s.t.  |<A o P, X_i>| <= t,  P a distribution
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cylinders import enumerate_basis, mu_star
from .errors import DimensionError, ValidationError
from .lp import LinearProgram, solve
from .rational import INF, fmt, is_inf, parse_alpha
from .tensors import RationalTensor, SignTensor, hadamard_product, l1_norm


@dataclass
class NormResult:
    value: Fraction
    method: str  # "primal" or "dual"
    decomposition: tuple = ()  # (coefficient, basis index) with nonzero coefficient
    witness: RationalTensor = None  # dual tensor Q, when available
    approximant: RationalTensor = None  # the optimal B of mu^alpha
    basis_size: int = 0
    alpha: object = None
    extra: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "value": fmt(self.value),
            "method": self.method,
            "basis_size": self.basis_size,
            "decomposition": [[fmt(c), i] for c, i in self.decomposition],
        }
        if self.alpha is not None:
            out["alpha"] = fmt(self.alpha)
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.approximant is not None:
            out["approximant"] = self.approximant.to_json()
        return out


def _basis_rows(shape, caps, pm=False):
    basis = enumerate_basis(shape, caps)
    X = basis.matrix().astype(np.int64)
    if pm:
        X = 2 * X - 1
    return basis, X


def _as_sign(A):
    if isinstance(A, SignTensor):
        return A
    if isinstance(A, RationalTensor) and A.is_sign():
        return SignTensor(A)
    raise ValidationError("a sign tensor (entries +-1) is required")


def _decompose(B, X, caps, method="primal"):
    nb, size = X.shape
    target = B.entries
    lp = LinearProgram(2 * nb, [1] * (2 * nb), "min")
    for p in range(size):
        col = [int(v) for v in X[:, p]]
        lp.add(col + [-v for v in col], "=", target[p])
    sol = solve(lp, caps)
    coeffs = [sol.primal[i] - sol.primal[nb + i] for i in range(nb)]
    Q = RationalTensor(list(sol.dual), shape=B.shape)
    return NormResult(
        value=sol.value,
        method=method,
        decomposition=tuple((c, i) for i, c in enumerate(coeffs) if c),
        witness=Q,
        basis_size=nb,
    )


def mu(B, caps=None):
    """Cylinder intersection norm of a rational tensor.

    The shadow prices of the equality rows form a dual witness ``Q`` with
    ``mu*(Q) <= 1`` and ``<B, Q> = mu(B)``.
    """
    _, X = _basis_rows(B.shape, caps)
    return _decompose(B, X, caps)


def mu_pm(B, caps=None):
    """The norm with the +-1 tensors ``2 chi(Z) - J`` in place of ``chi(Z)``."""
    _, X = _basis_rows(B.shape, caps, pm=True)
    return _decompose(B, X, caps)


def recompose(shape, decomposition, pm=False, caps=None):
    """Sum of coefficient * basis element, for checking decompositions."""
    _, X = _basis_rows(shape, caps, pm=pm)
    total = [Fraction(0)] * X.shape[1]
    for c, i in decomposition:
        for p in range(X.shape[1]):
            if X[i, p]:
                total[p] += c * int(X[i, p])
    return RationalTensor(total, shape=shape)


def mu_alpha_primal(A, alpha, caps=None):
    """min mu(B) over B with 1 <= A o B <= alpha (no upper bound for alpha = inf)."""
    A = _as_sign(A)
    alpha = parse_alpha(alpha)
    _, X = _basis_rows(A.shape, caps)
    nb, size = X.shape
    signs = [int(v) for v in A.entries]
    lp = LinearProgram(2 * nb, [1] * (2 * nb), "min")
    for p in range(size):
        col = [signs[p] * int(v) for v in X[:, p]]
        row = col + [-v for v in col]
        lp.add(row, ">=", 1)
        if not is_inf(alpha):
            lp.add(row, "<=", alpha)
    sol = solve(lp, caps)
    coeffs = [sol.primal[i] - sol.primal[nb + i] for i in range(nb)]
    approx = [sum((coeffs[i] for i in range(nb) if X[i, p]), Fraction(0)) for p in range(size)]
    return NormResult(
        value=sol.value,
        method="primal",
        decomposition=tuple((c, i) for i, c in enumerate(coeffs) if c),
        approximant=RationalTensor(approx, shape=A.shape),
        basis_size=nb,
        alpha=alpha,
    )


def mu_alpha_dual(A, alpha, caps=None):
    """The maximisation form of mu^alpha, solved as its own LP.

    Finite alpha: max ((1+alpha)<A,Q> + (1-alpha)|Q|_1)/2 with Q = Q+ - Q-.
    alpha = inf:  max <A,Q> over Q = A o R, R >= 0.
    Both subject to |<X_i, Q>| <= 1 for every basis element.
    """
    A = _as_sign(A)
    alpha = parse_alpha(alpha)
    _, X = _basis_rows(A.shape, caps)
    nb, size = X.shape
    signs = [int(v) for v in A.entries]
    if is_inf(alpha):
        lp = LinearProgram(size, [1] * size, "max")
        for i in range(nb):
            row = [int(X[i, p]) * signs[p] for p in range(size)]
            lp.add(row, "<=", 1)
            lp.add(row, ">=", -1)
        sol = solve(lp, caps)
        Q = [signs[p] * sol.primal[p] for p in range(size)]
    else:
        cost = [((1 + alpha) * s + (1 - alpha)) / 2 for s in signs]
        cost += [(-(1 + alpha) * s + (1 - alpha)) / 2 for s in signs]
        lp = LinearProgram(2 * size, cost, "max")
        for i in range(nb):
            row = [int(X[i, p]) for p in range(size)]
            row = row + [-v for v in row]
            lp.add(row, "<=", 1)
            lp.add(row, ">=", -1)
        sol = solve(lp, caps)
        Q = [sol.primal[p] - sol.primal[size + p] for p in range(size)]
    return NormResult(
        value=sol.value,
        method="dual",
        witness=RationalTensor(Q, shape=A.shape),
        basis_size=nb,
        alpha=alpha,
    )


def dual_objective(A, Q, alpha):
    """((1+alpha)<A,Q> + (1-alpha)|Q|_1)/2, or <A,Q> for alpha = inf."""
    from .tensors import inner_product

    alpha = parse_alpha(alpha)
    if is_inf(alpha):
        return inner_product(A, Q)
    return ((1 + alpha) * inner_product(A, Q) + (1 - alpha) * l1_norm(Q)) / 2


def dual_lower_bound(A, Q, alpha, caps=None):
    """Lower bound on mu^alpha(A) from any witness Q, with mu*(Q) computed by search."""
    alpha = parse_alpha(alpha)
    if is_inf(alpha) and not hadamard_product(A, Q).nonneg():
        raise ValidationError("for alpha = inf the witness must satisfy A o Q >= 0")
    ms = mu_star(Q, caps).value
    if ms == 0:
        raise ValidationError("witness has mu*(Q) = 0")
    return dual_objective(A, Q, alpha) / ms


def _check_distribution(A, P):
    if tuple(A.shape) != tuple(P.shape):
        raise DimensionError(f"shape mismatch: {A.shape} vs {P.shape}")
    if not P.nonneg() or sum(P.entries, Fraction(0)) != 1:
        raise ValidationError("P must be a probability distribution (nonnegative, summing to 1)")


def disc_P(A, P, caps=None):
    """Discrepancy of A under distribution P: mu*(A o P)."""
    A = _as_sign(A)
    _check_distribution(A, P)
    return mu_star(hadamard_product(A, P), caps).value


@dataclass
class DiscResult:
    value: Fraction
    distribution: RationalTensor
    basis_size: int

    def to_json(self):
        return {"value": fmt(self.value), "distribution": self.distribution.to_json(), "basis_size": self.basis_size}


def disc(A, caps=None, cross_check=False):
    """min over distributions P of disc_P(A), as one LP.

    Variables P (one per cell) and t; minimise t subject to
    -t <= <A o P, X_i> <= t for every basis element and sum P = 1.
    With ``cross_check`` the identity disc(A) * mu^inf(A) = 1 is asserted.
    """
    A = _as_sign(A)
    _, X = _basis_rows(A.shape, caps)
    nb, size = X.shape
    signs = [int(v) for v in A.entries]
    lp = LinearProgram(size + 1, [0] * size + [1], "min")
    lp.add([1] * size + [0], "=", 1)
    for i in range(nb):
        row = [int(X[i, p]) * signs[p] for p in range(size)]
        lp.add([-v for v in row] + [1], ">=", 0)
        lp.add(row + [1], ">=", 0)
    sol = solve(lp, caps)
    P = RationalTensor(list(sol.primal[:size]), shape=A.shape)
    res = DiscResult(sol.value, P, nb)
    if cross_check:
        inv = mu_alpha_primal(A, INF, caps).value
        if res.value * inv != 1:
            raise AssertionError(f"disc * mu^inf = {res.value * inv}, expected 1")
    return res

