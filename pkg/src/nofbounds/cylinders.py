"""Cylinders, cylinder intersections, and exhaustive search over them.

A cylinder in dimension ``i`` is a set of index tuples whose membership does
not depend on coordinate ``i``; it is stored as a boolean array over the
remaining coordinates.  A cylinder intersection is one cylinder per
dimension, intersected.

Inside the enumerations a 0/1 tensor is a Python int bitmask, bit ``p`` being
the row-major cell ``p``.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod

import numpy as np

from . import caps as _caps
from .errors import DimensionError, ValidationError
from .tensors import RationalTensor, check_shape


def _other_shape(shape, i):
    return shape[:i] + shape[i + 1:]


@dataclass(frozen=True, eq=False)
class CylinderIntersection:
    shape: tuple
    cylinders: tuple  # cylinders[i]: bool array of shape `shape` minus axis i

    def __post_init__(self):
        shape = tuple(self.shape)
        if len(self.cylinders) != len(shape):
            raise DimensionError(f"need one cylinder per dimension ({len(shape)}), got {len(self.cylinders)}")
        cyl = []
        for i, c in enumerate(self.cylinders):
            c = np.asarray(c, dtype=bool)
            if c.shape != _other_shape(shape, i):
                raise DimensionError(f"cylinder {i} has shape {c.shape}, expected {_other_shape(shape, i)}")
            c = c.copy()
            c.flags.writeable = False
            cyl.append(c)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "cylinders", tuple(cyl))

    @classmethod
    def full(cls, shape):
        shape = tuple(shape)
        return cls(shape, tuple(np.ones(_other_shape(shape, i), dtype=bool) for i in range(len(shape))))

    @classmethod
    def from_cell(cls, shape, idx):
        """The single-cell intersection {idx}."""
        shape = tuple(shape)
        cyl = []
        for i in range(len(shape)):
            c = np.zeros(_other_shape(shape, i), dtype=bool)
            c[tuple(idx[:i]) + tuple(idx[i + 1:])] = True
            cyl.append(c)
        return cls(shape, tuple(cyl))

    def indicator(self):
        """Boolean array of the intersection."""
        out = np.ones(self.shape, dtype=bool)
        for i, c in enumerate(self.cylinders):
            out &= np.expand_dims(c, i)
        return out

    def __eq__(self, other):
        if not isinstance(other, CylinderIntersection):
            return NotImplemented
        return self.shape == other.shape and all(np.array_equal(a, b) for a, b in zip(self.cylinders, other.cylinders))

    def __hash__(self):
        return hash((self.shape,) + tuple(c.tobytes() for c in self.cylinders))

    def to_json(self):
        return {"shape": list(self.shape), "cylinders": [c.astype(int).ravel().tolist() for c in self.cylinders]}


def characteristic_tensor(Z):
    """0/1 tensor of a cylinder intersection."""
    ind = Z.indicator()
    return RationalTensor(ind.astype(int).ravel().tolist(), shape=Z.shape)


def is_cylinder_intersection(tensor):
    """Does a 0/1 tensor equal the characteristic tensor of some cylinder intersection?

    The smallest candidate is the intersection of the projections: cylinder
    ``i`` contains exactly the points whose fibre along ``i`` meets the set.
    """
    a = np.array([[int(v) for v in tensor.entries]]).reshape(tensor.shape)
    if not np.isin(a, (0, 1)).all():
        return False
    a = a.astype(bool)
    out = np.ones(a.shape, dtype=bool)
    for i in range(a.ndim):
        out &= np.expand_dims(a.any(axis=i), i)
    return bool((out == a).all())


def _fibres(shape, i):
    """Bitmask of each fibre along axis ``i``, ordered row-major over the other axes."""
    size = prod(shape)
    idx = np.arange(size).reshape(shape)
    moved = np.moveaxis(idx, i, -1).reshape(-1, shape[i])
    return [sum(1 << int(p) for p in row) for row in moved]


def cylinder_masks(shape, i):
    """Bitmasks of all 2^(size/n_i) cylinders in dimension ``i``."""
    fib = _fibres(shape, i)
    masks = [0] * (1 << len(fib))
    for s in range(1, len(masks)):
        low = s & -s
        masks[s] = masks[s ^ low] | fib[low.bit_length() - 1]
    return masks


@dataclass(frozen=True)
class CylinderBasis:
    shape: tuple
    masks: tuple  # distinct nonzero characteristic bitmasks, lexicographic order

    def __len__(self):
        return len(self.masks)

    def matrix(self):
        """int8 array with one row per basis element, one column per cell."""
        size = prod(self.shape)
        out = np.zeros((len(self.masks), size), dtype=np.int8)
        for r, m in enumerate(self.masks):
            for p in range(size):
                if m >> p & 1:
                    out[r, p] = 1
        return out

    def tensors(self):
        size = prod(self.shape)
        return [RationalTensor([(m >> p) & 1 for p in range(size)], shape=self.shape) for m in self.masks]


def _lex_key(mask, size):
    # entry 0 is the most significant position of the lexicographic order
    return int(format(mask, f"0{size}b")[::-1], 2) if size else 0


_BASIS_CACHE = {}


def enumerate_basis(shape, caps=None):
    """All distinct nonzero characteristic tensors of cylinder intersections."""
    shape = check_shape(shape, caps)
    cap = _caps.resolve(caps).basis_enumeration
    key = (shape, cap)
    if key in _BASIS_CACHE:
        return _BASIS_CACHE[key]
    size = prod(shape)
    full = (1 << size) - 1
    if len(shape) == 1:
        basis = CylinderBasis(shape, (full,))
        _BASIS_CACHE[key] = basis
        return basis
    raw = prod(1 << (size // n) for n in shape)
    # the staged deduplication below examines far fewer than `raw` pairs,
    # so the cap is applied to the work it actually does
    current = {full}
    work = 0
    for i in range(len(shape)):
        cells = size // shape[i]
        work += len(current) << cells
        _caps.require(f"cylinder enumeration for shape {shape} (raw combinations {raw})", work, cap)
        masks = cylinder_masks(shape, i)
        current = {s & c for s in current for c in masks}
    current.discard(0)
    ordered = tuple(sorted(current, key=lambda m: _lex_key(m, size)))
    basis = CylinderBasis(shape, ordered)
    _BASIS_CACHE[key] = basis
    return basis


@dataclass(frozen=True)
class MuStarResult:
    value: Fraction
    witness: CylinderIntersection
    evaluations: int


def search_count(shape):
    """Candidate count of the reduced search, and the greedy axis."""
    shape = tuple(shape)
    size = prod(shape)
    if len(shape) == 1:
        return 1, 0
    g = min(range(len(shape)), key=lambda i: (shape[i], i))
    return prod(1 << (size // shape[i]) for i in range(len(shape)) if i != g), g


def _options(shape, i, g):
    """All cylinders in dimension i as a (2^cells, C, n_g) 0/1 int64 array.

    The last axis is the greedy axis g, the middle one the remaining cells
    in row-major order.
    """
    other = _other_shape(shape, i)
    cells = prod(other)
    bits = (np.arange(1 << cells)[:, None] >> np.arange(cells)[None, :]) & 1
    arr = np.expand_dims(bits.reshape((1 << cells,) + other), i + 1)
    arr = np.broadcast_to(arr, (1 << cells,) + tuple(shape))
    arr = np.moveaxis(arr, g + 1, -1)
    return np.ascontiguousarray(arr.reshape(1 << cells, -1, shape[g]), dtype=np.int64)


def mu_star(Q, caps=None):
    """max over cylinder intersections Z of |<Q, chi(Z)>|, exactly.

    Cylinders in all dimensions but one (the greedy axis, the one with the
    shortest side) are enumerated.  With those fixed the objective is a sum
    over the points of the greedy cylinder's domain, so the best greedy
    cylinder takes every point with a positive (or, for the negative side,
    negative) fibre sum.  Entries are scaled to integers first.
    """
    caps = _caps.resolve(caps)
    shape = Q.shape
    count, g = search_count(shape)
    _caps.require(f"mu* search over shape {shape}", count, caps.search)
    ints, den = Q.as_integer()
    if len(shape) == 1:
        total = ints.sum()
        return MuStarResult(Fraction(abs(int(total)), den), CylinderIntersection.full(shape), 1)
    base = np.moveaxis(ints, g, -1).reshape(-1, shape[g])
    rest = [i for i in range(len(shape)) if i != g]
    opts = {i: _options(shape, i, g) for i in rest}
    vec = rest[-2:] if len(rest) >= 2 else rest[-1:]
    outer = [i for i in rest if i not in vec]
    exact_float = base.dtype != object and int(np.abs(base).sum()) < 2**53
    best = (-1, None)
    for choice in product(*(range(len(opts[i])) for i in outer)):
        t = base
        for i, s in zip(outer, choice):
            t = t * opts[i][s]
        if len(vec) == 2:
            a, b = opts[vec[0]], opts[vec[1]]
            left = (a * t[None]).transpose(1, 0, 2)
            right = b.transpose(1, 2, 0)
            if exact_float:
                # every partial sum is an integer below 2**53, so float64 is exact
                W = np.matmul(left.astype(np.float64), right.astype(np.float64))
            else:
                W = np.matmul(left, right)
            pos = np.maximum(W, 0).sum(axis=0)
            neg = -np.minimum(W, 0).sum(axis=0)
        else:
            W = (opts[vec[0]] * t[None]).sum(axis=-1)
            pos = np.where(W > 0, W, 0).sum(axis=-1)
            neg = -np.where(W < 0, W, 0).sum(axis=-1)
        for side, arr in ((1, pos), (-1, neg)):
            idx = np.unravel_index(int(np.argmax(arr)), arr.shape)
            val = int(arr[idx])
            if val > best[0]:
                best = (val, (choice, tuple(int(v) for v in idx), side))
    val, (choice, idx, side) = best
    witness = _rebuild(shape, g, outer + vec, choice + idx, side, ints)
    return MuStarResult(Fraction(val, den), witness, count)


def _cylinder_from_index(shape, i, s):
    other = _other_shape(shape, i)
    cells = prod(other)
    return np.array([(s >> c) & 1 for c in range(cells)], dtype=bool).reshape(other)


def _rebuild(shape, g, axes, choice, side, ints):
    cyl = [None] * len(shape)
    t = ints
    for i, s in zip(axes, choice):
        cyl[i] = _cylinder_from_index(shape, i, s)
        t = t * np.expand_dims(cyl[i], i)
    W = t.sum(axis=g)
    cyl[g] = (W > 0) if side == 1 else (W < 0)
    return CylinderIntersection(tuple(shape), tuple(cyl))


def mu_star_bruteforce(Q, caps=None):
    """max over the enumerated basis of |<Q, X>|; an independent oracle for mu_star."""
    basis = enumerate_basis(Q.shape, caps)
    vals = [v for v in Q.entries]
    best = Fraction(0)
    for m in basis.masks:
        s = sum((vals[p] for p in range(len(vals)) if m >> p & 1), Fraction(0))
        best = max(best, abs(s))
    return best


def correlation(Q, Z):
    """<Q, chi(Z)>."""
    if tuple(Q.shape) != Z.shape:
        raise DimensionError("shape mismatch between tensor and cylinder intersection")
    ind = Z.indicator().ravel()
    return sum((v for v, keep in zip(Q.entries, ind) if keep), Fraction(0))


def from_json(obj):
    try:
        shape = tuple(obj["shape"])
        cyls = obj["cylinders"]
    except (KeyError, TypeError) as exc:
        raise ValidationError("cylinder intersection JSON needs 'shape' and 'cylinders'") from exc
    arrs = [np.array(c, dtype=bool).reshape(_other_shape(shape, i)) for i, c in enumerate(cyls)]
    return CylinderIntersection(shape, tuple(arrs))
