"""Functions on the cube {-1,+1}^m, their Fourier expansions, and built-ins.

Conventions used throughout the package:

* -1 means *true*, +1 means *false*.
* A point ``x`` is encoded as an integer ``i`` in ``[0, 2**m)`` with bit ``j``
  of ``i`` set exactly when ``x_j = -1`` (``j`` counts from 0).
* A subset ``S`` of coordinates is encoded the same way, as a bitmask, so
  ``chi_S(i) = (-1) ** popcount(S & i)``.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import caps as _caps
from .errors import ValidationError
from .rational import fmt, frac


def popcount(x):
    return bin(x).count("1")


def point(i, m):
    """Decode index ``i`` into a tuple of +-1 coordinates."""
    return tuple(-1 if i >> j & 1 else 1 for j in range(m))


def index(x):
    """Encode a tuple of +-1 coordinates as an index."""
    i = 0
    for j, v in enumerate(x):
        if v == -1:
            i |= 1 << j
        elif v != 1:
            raise ValidationError(f"cube coordinates must be +-1, got {v!r}")
    return i


def subset_mask(S, m):
    """Bitmask for a subset of coordinates given as 0-based indices."""
    mask = 0
    for j in S:
        if not 0 <= j < m:
            raise ValidationError(f"coordinate {j} out of range for arity {m}")
        mask |= 1 << j
    return mask


def character(S, x):
    """chi_S(x) for a collection of 0-based coordinates S and a +-1 point x."""
    m = len(x)
    mask = subset_mask(S, m)
    return -1 if popcount(mask & index(x)) % 2 else 1


def chi(mask, i):
    return -1 if popcount(mask & i) % 2 else 1


@dataclass(frozen=True)
class RealFunction:
    m: int
    table: tuple

    def __post_init__(self):
        if self.m < 0:
            raise ValidationError("arity must be nonnegative")
        table = tuple(frac(v) for v in self.table)
        if len(table) != 1 << self.m:
            raise ValidationError(f"table of length {len(table)} does not match arity {self.m}")
        object.__setattr__(self, "table", table)

    def __call__(self, x):
        return self.table[index(x)]

    def __len__(self):
        return len(self.table)

    def is_boolean(self):
        return all(v == 1 or v == -1 for v in self.table)

    def to_json(self):
        if self.is_boolean():
            return {"m": self.m, "table": "".join("+" if v == 1 else "-" for v in self.table)}
        return {"m": self.m, "table": [fmt(v) for v in self.table]}


class BooleanFunction(RealFunction):
    """A +-1 valued function on {-1,+1}^m."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_boolean():
            raise ValidationError("Boolean function values must all be -1 or +1")

    def __neg__(self):
        return BooleanFunction(self.m, tuple(-v for v in self.table))


def _check_arity(m, caps=None):
    if not isinstance(m, int) or m < 0:
        raise ValidationError(f"arity must be a nonnegative integer, got {m!r}")
    _caps.require("truth table arity", m, _caps.resolve(caps).table_arity)


def from_callable(m, fn, caps=None):
    _check_arity(m, caps)
    return BooleanFunction(m, tuple(fn(point(i, m)) for i in range(1 << m)))


def OR(m, caps=None):
    _check_arity(m, caps)
    return BooleanFunction(m, tuple(-1 if i else 1 for i in range(1 << m)))


def AND(m, caps=None):
    _check_arity(m, caps)
    full = (1 << m) - 1
    return BooleanFunction(m, tuple(-1 if i == full else 1 for i in range(1 << m)))


def XOR(m, caps=None):
    _check_arity(m, caps)
    return BooleanFunction(m, tuple(chi((1 << m) - 1, i) for i in range(1 << m)))


def MAJ(m, caps=None):
    """True when strictly more than half the inputs are true."""
    _check_arity(m, caps)
    return BooleanFunction(m, tuple(-1 if 2 * popcount(i) > m else 1 for i in range(1 << m)))


def disj_value(xs):
    """DISJ_{k,n} on k strings of +-1 values: -OR_n(x_1 AND ... AND x_k)."""
    n = len(xs[0])
    for t in range(n):
        if all(x[t] == -1 for x in xs):
            return 1
    return -1


def DISJ(k, n, caps=None):
    """DISJ_{k,n} as a function of k*n bits; bits p*n .. p*n+n-1 belong to player p."""
    if k < 1 or n < 0:
        raise ValidationError("DISJ needs k >= 1 and n >= 0")
    _check_arity(k * n, caps)
    table = []
    for i in range(1 << (k * n)):
        x = point(i, k * n)
        table.append(disj_value([x[p * n:(p + 1) * n] for p in range(k)]))
    return BooleanFunction(k * n, tuple(table))


BUILTINS = {"OR": OR, "AND": AND, "XOR": XOR, "MAJ": MAJ}


def builtin(name, m=None, k=None, n=None, caps=None):
    key = name.upper()
    if key == "DISJ":
        if k is None or n is None:
            raise ValidationError("DISJ needs parameters k and n")
        return DISJ(k, n, caps)
    if key not in BUILTINS:
        raise ValidationError(f"unknown built-in function {name!r}")
    if m is None:
        raise ValidationError(f"{key} needs an arity m")
    return BUILTINS[key](m, caps)


def function_from_json(obj, caps=None):
    """Parse ``{"name": "OR", "m": 3}`` or ``{"m": 2, "table": "+---"}``."""
    if not isinstance(obj, dict) or "m" not in obj and "name" not in obj:
        raise ValidationError("function JSON needs 'm' and either 'name' or 'table'")
    if "name" in obj:
        return builtin(obj["name"], m=obj.get("m"), k=obj.get("k"), n=obj.get("n"), caps=caps)
    m = obj["m"]
    _check_arity(m, caps)
    table = obj.get("table")
    if isinstance(table, str):
        if set(table) - {"+", "-"}:
            raise ValidationError("compact tables may only contain '+' and '-'")
        return BooleanFunction(m, tuple(1 if ch == "+" else -1 for ch in table))
    if table is None:
        raise ValidationError("function JSON needs a 'table'")
    f = RealFunction(m, tuple(table))
    return BooleanFunction(m, f.table) if f.is_boolean() else f


@dataclass(frozen=True)
class FourierSpectrum:
    m: int
    coefficients: tuple  # indexed by subset mask

    def __getitem__(self, S):
        if isinstance(S, int):
            return self.coefficients[S]
        return self.coefficients[subset_mask(S, self.m)]

    @property
    def degree(self):
        """Largest |S| with a nonzero coefficient; -1 for the zero function."""
        return max((popcount(S) for S, c in enumerate(self.coefficients) if c), default=-1)

    def support(self):
        return {S: c for S, c in enumerate(self.coefficients) if c}

    def inverse(self):
        return RealFunction(self.m, tuple(_walsh(list(self.coefficients))))


def _walsh(values):
    """Unnormalised Walsh-Hadamard transform in the subset-mask basis."""
    v = list(values)
    h = 1
    while h < len(v):
        for i in range(0, len(v), 2 * h):
            for j in range(i, i + h):
                a, b = v[j], v[j + h]
                v[j], v[j + h] = a + b, a - b
        h *= 2
    return v


def fourier_transform(f):
    n = len(f.table)
    coeffs = [Fraction(c, 1) / n for c in _walsh(f.table)]
    return FourierSpectrum(f.m, tuple(coeffs))


def degree(f):
    return fourier_transform(f).degree


def inner(f, g):
    if f.m != g.m:
        raise ValidationError("arity mismatch")
    return sum((a * b for a, b in zip(f.table, g.table)), Fraction(0))


def l1_of_function(f):
    return sum((abs(v) for v in f.table), Fraction(0))


def monomials(m, d):
    """Subset masks of size <= d, ordered by size then lexicographically."""
    out = []
    for r in range(min(d, m) + 1):
        for S in combinations(range(m), r):
            out.append(subset_mask(S, m))
    return out
