"""Pattern tensors, the degenerate-cube distribution, and the embedding into DISJ.

Index layout of ``A_{k,M,phi}`` (shape ``(2**(m*M**(k-1)), M**m, ..., M**m)``):

* dimension 0, the string ``x``: bit ``b`` of the index is set when
  ``x_b = -1``.  Block ``i`` (0-based) owns bits ``i*M**(k-1)`` onwards; within
  a block the cell ``(t_1, ..., t_{k-1})`` sits at its row-major offset
  ``sum_j t_j * M**(k-1-j)``.
* dimension ``j`` (1..k-1), the index string ``y_j in [M]^m``: base-``M``
  digits with block 0 most significant, ``sum_i y_j[i] * M**(m-1-i)``.

The entry at ``(x, y_1, ..., y_{k-1})`` is ``c * phi(z)`` with
``z_i = x^i[y_1[i], ..., y_{k-1}[i]]``.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb

import numpy as np

from . import caps as _caps
from .boolfun import OR, RealFunction, disj_value, function_from_json, point
from .errors import ValidationError
from .rational import fmt, frac
from .tensors import RationalTensor, SignTensor


@dataclass(frozen=True)
class PatternSpec:
    k: int
    m: int
    M: int
    phi: RealFunction
    scale: Fraction = None  # None: 1 for +-1 valued phi, 2^m / size otherwise

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ValidationError(f"pattern tensors need k >= 2 players, got {self.k!r}")
        if not isinstance(self.m, int) or self.m < 0:
            raise ValidationError(f"block count must be a nonnegative integer, got {self.m!r}")
        if not isinstance(self.M, int) or self.M < 1:
            raise ValidationError(f"side length must be a positive integer, got {self.M!r}")
        if not isinstance(self.phi, RealFunction):
            raise ValidationError("phi must be a function on the cube")
        if self.scale is not None:
            object.__setattr__(self, "scale", frac(self.scale))

    @property
    def block(self):
        return self.M ** (self.k - 1)

    @property
    def n_bits(self):
        return self.m * self.block

    @property
    def shape(self):
        return (1 << self.n_bits,) + (self.M ** self.m,) * (self.k - 1)

    @property
    def size(self):
        """2^(m M^(k-1)) * M^(m(k-1))."""
        return (1 << self.n_bits) * self.M ** (self.m * (self.k - 1))

    @property
    def c(self):
        if self.scale is not None:
            return self.scale
        if self.phi.is_boolean():
            return Fraction(1)
        return Fraction(1 << self.m, self.size)

    def flags(self):
        out = []
        if self.phi.m != self.m:
            out.append(f"phi has arity {self.phi.m} but m = {self.m}")
        if self.M == 1:
            out.append("M = 1: every cube is degenerate")
        if self.m == 0:
            out.append("m = 0: phi is a constant")
        return out

    def to_json(self):
        return {"k": self.k, "m": self.m, "M": self.M, "phi": self.phi.to_json(), "scale": fmt(self.c)}

    @classmethod
    def from_json(cls, obj, caps=None):
        try:
            k, m, M = int(obj["k"]), int(obj["m"]), int(obj["M"])
            phi = obj["phi"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("pattern JSON needs integer 'k', 'm', 'M' and a 'phi'") from exc
        phi = function_from_json(phi, caps)
        scale = obj.get("scale")
        return cls(k, m, M, phi, None if scale is None else frac(scale))


def cell_offset(t, M):
    """Row-major offset of the cell (t_1, ..., t_{k-1}) inside a block."""
    off = 0
    for v in t:
        off = off * M + v
    return off


def decode_y(idx, M, m):
    """Digits y[0..m-1] of an index along dimensions 1..k-1."""
    digits = [0] * m
    for i in range(m - 1, -1, -1):
        idx, digits[i] = divmod(idx, M)
    return tuple(digits)


def encode_y(digits, M):
    idx = 0
    for v in digits:
        idx = idx * M + v
    return idx


def _selected_bits(spec):
    """(M^m)^(k-1) x m array: bit position of x read in block i for each ybar."""
    k, m, M = spec.k, spec.m, spec.M
    ny = M ** m
    digits = np.array([decode_y(j, M, m) for j in range(ny)], dtype=np.int64).reshape(ny, m)
    pos = np.zeros((ny,) * (k - 1) + (m,), dtype=np.int64)
    for j in range(k - 1):
        shape = [1] * (k - 1) + [m]
        shape[j] = ny
        pos = pos * M + digits.reshape(shape)
    pos = pos + np.arange(m, dtype=np.int64) * spec.block
    return pos.reshape(ny ** (k - 1), m)


def selection_indices(spec, caps=None):
    """Integer array of the tensor's shape: index of the point z fed to phi."""
    _caps.require("pattern tensor size", spec.size, _caps.resolve(caps).tensor_size)
    pos = _selected_bits(spec)
    xs = np.arange(1 << spec.n_bits, dtype=np.int64)
    bits = (xs[:, None, None] >> pos[None]) & 1
    z = (bits << np.arange(spec.m, dtype=np.int64)).sum(axis=-1)
    return z.reshape(spec.shape)


def build_pattern_tensor(spec, caps=None):
    if spec.phi.m != spec.m:
        raise ValidationError(f"phi has arity {spec.phi.m}, pattern expects m = {spec.m}")
    z = selection_indices(spec, caps)
    values = np.array([spec.c * v for v in spec.phi.table], dtype=object)
    arr = values[z]
    t = RationalTensor._wrap(arr)
    return SignTensor(t) if t.is_sign() else t


def pattern_entry(spec, x, ys):
    """Direct decode of a single entry, independent of the vectorised builder."""
    vals = []
    for i in range(spec.m):
        t = [decode_y(y, spec.M, spec.m)[i] for y in ys]
        b = i * spec.block + cell_offset(t, spec.M)
        vals.append(-1 if x >> b & 1 else 1)
    return spec.c * spec.phi(tuple(vals))


@dataclass
class CoverageReport:
    counts: dict  # point index -> number of (x, ybar) selecting it
    expected: int
    ok: bool
    flags: list

    def to_json(self):
        return {"ok": self.ok, "expected": self.expected, "counts": {str(z): c for z, c in self.counts.items()}, "flags": self.flags}


def uniform_coverage_check(spec, caps=None):
    """Each z in {-1,+1}^m is fed to phi exactly size / 2^m times."""
    z = selection_indices(spec, caps)
    counts = np.bincount(z.ravel(), minlength=1 << spec.m)
    expected = spec.size >> spec.m
    c = {i: int(v) for i, v in enumerate(counts)}
    return CoverageReport(c, expected, all(v == expected for v in c.values()), spec.flags())


@dataclass
class CubeStats:
    k: int
    M: int
    m: int
    p1: Fraction  # probability one position is degenerate
    distribution: tuple  # P[g] for g = 0..m, analytic
    enumerated: tuple = None  # P[g] by exhaustive enumeration, when run
    tail_bounds: tuple = ()  # C(m,g) ((k-1)/M)^g

    @property
    def matches(self):
        return self.enumerated is None or self.enumerated == self.distribution

    @property
    def tail_ok(self):
        return all(p <= b for p, b in zip(self.distribution, self.tail_bounds))

    def to_json(self):
        out = {
            "k": self.k,
            "M": self.M,
            "m": self.m,
            "p1": fmt(self.p1),
            "distribution": [fmt(p) for p in self.distribution],
            "tail_bounds": [fmt(b) for b in self.tail_bounds],
            "tail_ok": self.tail_ok,
        }
        if self.enumerated is not None:
            out["enumerated"] = [fmt(p) for p in self.enumerated]
            out["matches"] = self.matches
        return out


def enumerate_degenerate(k, M, m, caps=None):
    """Distribution of the number of degenerate positions over all (ybar^0, ybar^1)."""
    total = M ** (2 * (k - 1) * m)
    _caps.require("degenerate-cube enumeration", total, _caps.resolve(caps).search)
    counts = [0] * (m + 1)
    for ys in product(range(M), repeat=2 * (k - 1) * m):
        # ys[(2j + s) * m + i] is y_j^s[i]
        g = 0
        for i in range(m):
            if any(ys[2 * j * m + i] == ys[(2 * j + 1) * m + i] for j in range(k - 1)):
                g += 1
        counts[g] += 1
    return tuple(Fraction(c, total) for c in counts)


def degenerate_cube_stats(k, M, m, caps=None, enumerate=None):
    """Binomial(m, 1 - (1 - 1/M)^(k-1)), optionally checked by enumeration.

    ``enumerate=None`` enumerates whenever it fits under the search cap.
    """
    if k < 2 or M < 1 or m < 0:
        raise ValidationError("need k >= 2, M >= 1, m >= 0")
    p1 = 1 - (1 - Fraction(1, M)) ** (k - 1)
    dist = tuple(comb(m, g) * p1**g * (1 - p1) ** (m - g) for g in range(m + 1))
    q = Fraction(k - 1, M)
    tail = tuple(comb(m, g) * q**g for g in range(m + 1))
    enum = None
    cap = _caps.resolve(caps).search
    if enumerate or (enumerate is None and M ** (2 * (k - 1) * m) <= cap):
        enum = enumerate_degenerate(k, M, m, caps)
    return CubeStats(k, M, m, p1, dist, enum, tail)


def selectors(spec, ys):
    """The k-1 selector strings for index tuple ``ys``, as +-1 tuples of length n'.

    Position ``(i, t)`` of player j's string is -1 (true) exactly when
    ``t_j = y_j[i]``.
    """
    k, m, M = spec.k, spec.m, spec.M
    out = []
    for j, y in enumerate(ys):
        digits = decode_y(y, M, m)
        z = [1] * spec.n_bits
        for i in range(m):
            for t in product(range(M), repeat=k - 1):
                if t[j] == digits[i]:
                    z[i * spec.block + cell_offset(t, M)] = -1
        out.append(tuple(z))
    return out


def _bits_to_index(z):
    return sum(1 << b for b, v in enumerate(z) if v == -1)


@dataclass
class EmbeddingReport:
    n_prime: int
    selector_indices: list  # per player j: selector index for each y value
    checked: int
    mismatches: int
    subtensor_ok: object  # comparison with the explicit -DISJ tensor, None if too large

    @property
    def ok(self):
        return self.mismatches == 0 and self.subtensor_ok is not False

    def to_json(self):
        return {
            "ok": self.ok,
            "n_prime": self.n_prime,
            "selectors": self.selector_indices,
            "checked": self.checked,
            "mismatches": self.mismatches,
            "subtensor_ok": self.subtensor_ok,
        }


def embed_into_disj(spec, caps=None):
    """Verify A_{k,M,OR_m}[x, ybar] = -DISJ_{k,n'}(x, z_1, ..., z_{k-1}) everywhere."""
    caps = _caps.resolve(caps)
    if spec.phi.m != spec.m or spec.phi.table != OR(spec.m).table:
        raise ValidationError("the DISJ embedding is only defined for phi = OR_m")
    if spec.c != 1:
        raise ValidationError("the DISJ embedding needs scale 1")
    A = build_pattern_tensor(spec, caps)
    ny = spec.M ** spec.m
    sel = [[_bits_to_index(selectors(spec, [y] * (spec.k - 1))[j]) for y in range(ny)] for j in range(spec.k - 1)]
    n = spec.n_bits
    mismatches = 0
    checked = 0
    for ys in product(range(ny), repeat=spec.k - 1):
        zs = selectors(spec, ys)
        for x in range(1 << n):
            val = -disj_value([point(x, n)] + list(zs))
            checked += 1
            if A.array[(x,) + ys] != val:
                mismatches += 1
    sub_ok = None
    full = (1 << n) ** spec.k
    if full <= caps.tensor_size:
        # explicit -DISJ tensor, one axis per player, then the selected subtensor
        from .boolfun import DISJ

        table = np.array([int(v) for v in DISJ(spec.k, n, caps).table], dtype=np.int64)
        # table index = x | z_1 << n | ..., so player p's axis is the p-th least significant
        D = -table.reshape((1 << n,) * spec.k).transpose(tuple(range(spec.k - 1, -1, -1)))
        sub = D[np.ix_(np.arange(1 << n), *[np.array(s) for s in sel])]
        ints = np.array([int(v) for v in A.entries], dtype=np.int64).reshape(A.shape)
        sub_ok = bool((sub == ints).all())
    return EmbeddingReport(n, sel, checked, mismatches, sub_ok)


def pattern_l1(spec, caps=None):
    """||A||_1, computed from the built tensor."""
    A = build_pattern_tensor(spec, caps)
    return sum((abs(v) for v in A.entries), Fraction(0))


def phi_l1(phi):
    return sum((abs(v) for v in phi.table), Fraction(0))

