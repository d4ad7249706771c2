"""Dense k-tensors with exact rational entries.

Entries are stored row-major in a read-only numpy object array of
``fractions.Fraction``.  Nothing here touches floating point.
"""
from fractions import Fraction
from functools import reduce
from math import lcm, prod

import numpy as np

from . import caps as _caps
from .errors import DimensionError, ValidationError
from .rational import fmt, frac


def check_shape(shape, caps=None):
    shape = tuple(shape)
    if len(shape) < 1:
        raise DimensionError("a tensor needs at least one dimension")
    for n in shape:
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
            raise DimensionError(f"dimension lengths must be positive integers, got {shape}")
    shape = tuple(int(n) for n in shape)
    _caps.require("tensor size", prod(shape), _caps.resolve(caps).tensor_size)
    return shape


def _to_fraction_array(values, shape):
    flat = np.empty(prod(shape), dtype=object)
    for i, v in enumerate(values):
        flat[i] = frac(v)
    return flat.reshape(shape)


class RationalTensor:
    """Immutable dense tensor of exact rationals.

    ``RationalTensor([[1, 2], [3, 4]])`` builds from nested lists;
    ``RationalTensor(flat, shape=(2, 2))`` from a row-major sequence.
    """

    __slots__ = ("_a",)

    def __init__(self, data, shape=None, caps=None):
        if isinstance(data, RationalTensor):
            arr = data._a
        elif shape is not None:
            shape = check_shape(shape, caps)
            values = list(np.asarray(data, dtype=object).ravel()) if isinstance(data, np.ndarray) else list(data)
            if len(values) != prod(shape):
                raise DimensionError(f"{len(values)} entries given for shape {shape} (size {prod(shape)})")
            arr = _to_fraction_array(values, shape)
        else:
            raw = np.array(data, dtype=object)
            if raw.ndim == 0:
                raise DimensionError("scalars are not tensors; give a shape")
            shape = check_shape(raw.shape, caps)
            arr = _to_fraction_array(raw.ravel(), shape)
        arr.flags.writeable = False
        self._a = arr

    @classmethod
    def _wrap(cls, arr):
        t = object.__new__(cls)
        arr = np.asarray(arr, dtype=object)
        arr.flags.writeable = False
        t._a = arr
        return t

    @property
    def shape(self):
        return self._a.shape

    @property
    def k(self):
        return self._a.ndim

    @property
    def size(self):
        return self._a.size

    @property
    def array(self):
        """Read-only object ndarray view of the entries."""
        return self._a

    @property
    def entries(self):
        return tuple(self._a.ravel())

    def __getitem__(self, idx):
        return self._a[idx]

    def __eq__(self, other):
        if not isinstance(other, RationalTensor):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        body = ",".join(fmt(v) for v in self.entries[:12])
        more = ",..." if self.size > 12 else ""
        return f"{type(self).__name__}(shape={self.shape}, [{body}{more}])"

    def __neg__(self):
        return RationalTensor._wrap(-self._a)

    def __add__(self, other):
        _same_shape(self, other)
        return RationalTensor._wrap(self._a + other._a)

    def __sub__(self, other):
        _same_shape(self, other)
        return RationalTensor._wrap(self._a - other._a)

    def __mul__(self, c):
        if isinstance(c, RationalTensor):
            return NotImplemented
        return RationalTensor._wrap(self._a * frac(c))

    __rmul__ = __mul__

    def is_sign(self):
        return all(v == 1 or v == -1 for v in self._a.ravel())

    def nonneg(self):
        return all(v >= 0 for v in self._a.ravel())

    def as_integer(self):
        """Return ``(ints, den)`` with ``self == ints / den`` exactly.

        ``ints`` is int64 when that cannot overflow in sums over the whole
        tensor, otherwise a Python-int object array.
        """
        den = reduce(lcm, (v.denominator for v in self._a.ravel()), 1)
        ints = [int(v * den) for v in self._a.ravel()]
        bound = max((abs(v) for v in ints), default=0) * self.size
        dtype = np.int64 if bound < 2**62 else object
        return np.array(ints, dtype=dtype).reshape(self.shape), den

    def to_json(self):
        if self.is_sign():
            return {"shape": list(self.shape), "entries": "".join("+" if v == 1 else "-" for v in self.entries)}
        return {"shape": list(self.shape), "entries": [fmt(v) for v in self.entries]}

    @classmethod
    def from_json(cls, obj, caps=None):
        try:
            shape = obj["shape"]
            entries = obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("tensor JSON needs 'shape' and 'entries'") from exc
        if isinstance(entries, str):
            if set(entries) - {"+", "-"}:
                raise ValidationError("compact sign entries may only contain '+' and '-'")
            entries = [1 if ch == "+" else -1 for ch in entries]
            t = RationalTensor(entries, shape=shape, caps=caps)
            return SignTensor(t) if cls is RationalTensor or cls is SignTensor else t
        t = RationalTensor(entries, shape=shape, caps=caps)
        return cls(t) if cls is SignTensor else t


class SignTensor(RationalTensor):
    """Tensor whose entries are all -1 or +1."""

    __slots__ = ()

    def __init__(self, data, shape=None, caps=None):
        super().__init__(data, shape=shape, caps=caps)
        if not self.is_sign():
            raise ValidationError("sign tensor entries must all be -1 or +1")

    def to_rational(self):
        return RationalTensor._wrap(self._a)


def _same_shape(a, b):
    if not isinstance(b, RationalTensor):
        raise ValidationError(f"expected a tensor, got {type(b).__name__}")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")


def as_tensor(x):
    return x if isinstance(x, RationalTensor) else RationalTensor(x)


def zeros(shape):
    shape = check_shape(shape)
    return RationalTensor._wrap(np.full(shape, Fraction(0), dtype=object))


def ones(shape):
    """The all-ones tensor J."""
    shape = check_shape(shape)
    return SignTensor._wrap(np.full(shape, Fraction(1), dtype=object))


def cell(shape, index):
    """0/1 tensor with a single 1 at ``index``."""
    a = np.full(check_shape(shape), Fraction(0), dtype=object)
    a[tuple(index)] = Fraction(1)
    return RationalTensor._wrap(a)


def sylvester(n):
    """Sylvester-type Hadamard matrix of side ``n`` (a power of two)."""
    if n < 1 or n & (n - 1):
        raise ValidationError(f"Sylvester construction needs a power of two, got {n}")
    h = np.array([[1]], dtype=np.int64)
    while h.shape[0] < n:
        h = np.block([[h, h], [h, -h]])
    return SignTensor(h.tolist())


def random_sign(shape, rng):
    shape = check_shape(shape)
    vals = rng.choice([-1, 1], size=prod(shape))
    return SignTensor([int(v) for v in vals], shape=shape)


def random_rational(shape, rng, num=5, den=4):
    """Entries p/q with |p| <= num and 1 <= q <= den."""
    shape = check_shape(shape)
    n = prod(shape)
    ps = rng.integers(-num, num + 1, size=n)
    qs = rng.integers(1, den + 1, size=n)
    return RationalTensor([Fraction(int(p), int(q)) for p, q in zip(ps, qs)], shape=shape)


def inner_product(a, b):
    _same_shape(a, b)
    return Fraction(sum((a.array * b.array).ravel(), Fraction(0)))


def hadamard_product(a, b):
    _same_shape(a, b)
    return RationalTensor._wrap(a.array * b.array)


def l1_norm(a):
    return Fraction(sum((abs(v) for v in a.array.ravel()), Fraction(0)))


def linf_norm(a):
    return Fraction(max(abs(v) for v in a.array.ravel()))


def mean_abs(a):
    return l1_norm(a) / a.size


def contraction_product(b, axis=0):
    """Contraction product of ``b`` with itself along ``axis`` (0-based).

    The result is a 2(k-1)-tensor whose axes are the remaining dimensions,
    each doubled and interleaved: ``(x2, x2', x3, x3', ...)``.  Entry
    ``[x2, x2', ..., xk, xk']`` is the average over the contracted coordinate
    of the product of ``b`` over all 2^(k-1) choices ``y_j in {x_j, x_j'}``.

    For a matrix contracted along its rows this is ``B.T @ B / rows``.
    """
    k = b.k
    if k < 2:
        raise DimensionError("contraction product needs a tensor with at least 2 dimensions")
    if not 0 <= axis < k:
        raise DimensionError(f"axis {axis} out of range for a {k}-tensor")
    p = np.moveaxis(b.array, axis, 0)
    for j in range(1, k):
        pos = 2 * j - 1
        p = np.expand_dims(p, pos + 1) * np.expand_dims(p, pos)
    n = p.shape[0]
    out = p.sum(axis=0)
    out = np.vectorize(lambda v: Fraction(v) / n, otypes=[object])(out)
    return RationalTensor._wrap(out)
