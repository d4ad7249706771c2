"""Independent reference implementations used only by the tests.

Nothing here imports the library's algorithms: each oracle recomputes its
quantity by the most literal method available (exhaustive enumeration,
direct summation, or a floating-point LP from scipy as a rough cross-check).
"""
import math
from fractions import Fraction
from itertools import product

import numpy as np

E_HAT = Fraction(271828182845905, 10**14)


def grid(shape):
    return list(product(*[range(n) for n in shape]))


def all_intersections(shape):
    """Every 0/1 indicator of a cylinder intersection, by brute force over cylinders.

    A cylinder in dimension i is any subset of the grid with axis i removed.
    """
    k = len(shape)
    pts = grid(shape)
    others = [grid(shape[:i] + shape[i + 1:]) for i in range(k)]
    choices = [range(1 << len(o)) for o in others]
    seen = set()
    for masks in product(*choices):
        ind = []
        for p in pts:
            inside = True
            for i in range(k):
                key = p[:i] + p[i + 1:]
                if not masks[i] >> others[i].index(key) & 1:
                    inside = False
                    break
            ind.append(1 if inside else 0)
        seen.add(tuple(ind))
    return seen


def mu_star_oracle(Q):
    """max |<Q, chi(Z)>| over every cylinder intersection, by enumeration."""
    vals = [Fraction(v) for v in Q.entries]
    best = Fraction(0)
    for ind in all_intersections(Q.shape):
        s = sum((v for v, b in zip(vals, ind) if b), Fraction(0))
        best = max(best, abs(s))
    return best


def mu_star_matrix(Q):
    """Rectangles only: for each row subset the best column set is explicit."""
    arr = np.array(Q.entries, dtype=object).reshape(Q.shape)
    n1, _ = Q.shape
    best = Fraction(0)
    for S in range(1 << n1):
        rows = [i for i in range(n1) if S >> i & 1]
        col = [sum((arr[i, j] for i in rows), Fraction(0)) for j in range(Q.shape[1])]
        pos = sum((c for c in col if c > 0), Fraction(0))
        neg = sum((c for c in col if c < 0), Fraction(0))
        best = max(best, pos, -neg)
    return best


def contraction_oracle(B):
    """(B.B)[y_2, y_2', ...] = mean over x_1 of the product over the 2^(k-1) corners."""
    arr = np.array(B.entries, dtype=object).reshape(B.shape)
    k = len(B.shape)
    rest = B.shape[1:]
    out = {}
    for doubled in product(*[range(n) for n in rest for _ in (0, 1)]):
        pairs = [(doubled[2 * j], doubled[2 * j + 1]) for j in range(k - 1)]
        total = Fraction(0)
        for x in range(B.shape[0]):
            p = Fraction(1)
            for corner in product(*pairs):
                p *= arr[(x,) + corner]
            total += p
        out[doubled] = total / B.shape[0]
    return out


def fourier_oracle(table):
    """phi_hat(S) = 2^-m sum_x phi(x) chi_S(x), with bit j of x set meaning x_j = -1."""
    n = len(table)
    coeffs = []
    for S in range(n):
        s = sum((Fraction(table[x]) * (-1) ** bin(S & x).count("1") for x in range(n)), Fraction(0))
        coeffs.append(s / n)
    return coeffs


def or_table(m):
    # -1 = true; OR is true unless every bit is false (+1), i.e. index 0
    return [1 if x == 0 else -1 for x in range(1 << m)]


def pattern_entry_oracle(k, m, M, phi_table, scale, x_index, ys):
    """Decode x as m blocks of (k-1)-dimensional M-ary row-major cells; y_j base M with block 0 first."""
    block = M ** (k - 1)
    digits = []
    for y in ys:
        d = []
        for _ in range(m):
            d.append(y % M)
            y //= M
        digits.append(d[::-1])
    point = 0
    for i in range(m):
        off = 0
        for j in range(k - 1):
            off = off * M + digits[j][i]
        bit = x_index >> (i * block + off) & 1
        point |= bit << i
    return scale * phi_table[point]


def degenerate_oracle(k, M, m):
    """Exhaustive distribution of the number of positions where some y_j^0[i] = y_j^1[i]."""
    counts = [0] * (m + 1)
    total = 0
    for y0 in product(range(M), repeat=(k - 1) * m):
        for y1 in product(range(M), repeat=(k - 1) * m):
            g = 0
            for i in range(m):
                if any(y0[j * m + i] == y1[j * m + i] for j in range(k - 1)):
                    g += 1
            counts[g] += 1
            total += 1
    return [Fraction(c, total) for c in counts]


def disjointness_oracle(n, k):
    """Parameters and bit bound of the disjointness certificate, scripted from scratch.

    Local search from a float estimate instead of bisection, Fraction arithmetic throughout.
    """
    c = 5 * E_HAT * (k - 1) * 2 ** (2 ** (k - 1))

    def fits(m):
        return m ** (k + 1) * (2 * c) ** (2 * (k - 1)) <= n * n

    # float starting guess, then exact single steps in both directions
    m = max(0, int((n * n / float((2 * c) ** (2 * (k - 1)))) ** (1 / (k + 1))))
    while m > 0 and not fits(m):
        m -= 1
    while fits(m + 1):
        m += 1

    def big_m(m):
        r = math.isqrt(m - 1) + 1 if m > 0 else 0
        return math.ceil(c * r)

    while m >= 1 and m * big_m(m) ** (k - 1) > n:
        m -= 1
    if m < 1:
        return None
    M = big_m(m)
    d = 0
    while 6 * d * d < m:
        d += 1
    assert M * d >= 2 * E_HAT * (k - 1) * 2 ** (2 ** (k - 1)) * m
    # mu^2 >= (1/4) 2^((d-1)/2^(k-1)), then R >= log2(mu^2 / 2)
    bits = Fraction(d - 1, 2 ** (k - 1)) - 3
    return {"m": m, "M": M, "n_prime": m * M ** (k - 1), "d": d, "bits": bits}


def linprog_mu_alpha(A, alpha):
    """Floating-point mu^alpha via scipy over the brute-force basis; a rough cross-check."""
    from scipy.optimize import linprog

    X = np.array(sorted(b for b in all_intersections(A.shape) if any(b)), dtype=float)
    a = np.array([float(v) for v in A.entries])
    nb = len(X)
    G = (X * a).T  # rows: cells
    A_ub = np.vstack([np.hstack([-G, G])] + ([np.hstack([G, -G])] if alpha is not None else []))
    b_ub = np.concatenate([-np.ones(len(a))] + ([alpha * np.ones(len(a))] if alpha is not None else []))
    res = linprog(np.ones(2 * nb), A_ub=A_ub, b_ub=b_ub, bounds=(0, None), method="highs")
    assert res.status == 0
    return res.fun
