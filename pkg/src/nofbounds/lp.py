"""Exact rational linear programming.

A dictionary-form simplex method (two phases, Bland's rule) over gmpy2
``mpq`` rationals.  Every optimal solve returns a primal and a dual solution
and re-verifies, by substitution in exact arithmetic, that both are feasible
and that their objective values coincide.

Programs are stated in a general form: ``min`` or ``max`` of ``c.x`` subject
to rows ``a.x <= b``, ``a.x >= b`` or ``a.x = b`` and per-variable bounds
``lower <= x <= upper``.  A lower bound of ``None`` means unbounded below
(the default lower bound is 0); an upper bound of ``None`` means none.

Dual values are shadow prices: ``dual[i]`` is the rate of change of the
optimal value with respect to the right-hand side of row ``i``.
"""
from dataclasses import dataclass, field
from fractions import Fraction

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover
    mpq = Fraction

from . import caps as _caps
from .errors import NofError, ValidationError
from .rational import fmt, frac

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
RELATIONS = ("<=", ">=", "=")


@dataclass
class LinearProgram:
    n_vars: int
    objective: list
    sense: str = "min"
    constraints: list = field(default_factory=list)  # (coeffs, relation, rhs)
    lower: list = None
    upper: list = None

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValidationError(f"sense must be 'min' or 'max', got {self.sense!r}")
        if len(self.objective) != self.n_vars:
            raise ValidationError("objective length differs from the variable count")
        self.objective = [frac(c) for c in self.objective]
        if self.lower is None:
            self.lower = [Fraction(0)] * self.n_vars
        if self.upper is None:
            self.upper = [None] * self.n_vars
        if len(self.lower) != self.n_vars or len(self.upper) != self.n_vars:
            raise ValidationError("bound vectors must have one entry per variable")
        self.lower = [None if v is None else frac(v) for v in self.lower]
        self.upper = [None if v is None else frac(v) for v in self.upper]
        rows = []
        for row in self.constraints:
            rows.append(self._check_row(*row))
        self.constraints = rows

    def _check_row(self, coeffs, rel, rhs):
        if rel not in RELATIONS:
            raise ValidationError(f"unknown relation {rel!r}")
        if len(coeffs) != self.n_vars:
            raise ValidationError(f"constraint has {len(coeffs)} coefficients, expected {self.n_vars}")
        return ([frac(a) for a in coeffs], rel, frac(rhs))

    def add(self, coeffs, rel, rhs):
        self.constraints.append(self._check_row(coeffs, rel, rhs))

    def to_json(self):
        """Debug dump; rationals as ``"p/q"`` strings."""
        return {
            "n_vars": self.n_vars,
            "sense": self.sense,
            "objective": [fmt(c) for c in self.objective],
            "constraints": [
                {"coeffs": [fmt(a) for a in co], "relation": rel, "rhs": fmt(b)}
                for co, rel, b in self.constraints
            ],
            "lower": [None if v is None else fmt(v) for v in self.lower],
            "upper": [None if v is None else fmt(v) for v in self.upper],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            n_vars=obj["n_vars"],
            objective=obj["objective"],
            sense=obj.get("sense", "min"),
            constraints=[(c["coeffs"], c["relation"], c["rhs"]) for c in obj.get("constraints", [])],
            lower=obj.get("lower"),
            upper=obj.get("upper"),
        )


@dataclass
class LPSolution:
    status: str
    value: Fraction = None
    primal: tuple = None
    dual: tuple = None
    pivots: int = 0

    @property
    def optimal(self):
        return self.status == OPTIMAL


class DualityError(NofError):
    """The solver produced a pair that fails its own exact certificate check."""


def solve(program, caps=None):
    """Solve ``program`` exactly.  Deterministic: same input, same pivots."""
    caps = _caps.resolve(caps)
    canon = _Canonical(program)
    _caps.require("LP dictionary cells", len(canon.rows) * (canon.n + 1), caps.lp_cells)
    status, z, w, pivots = _dictionary_simplex(canon.rows, canon.rhs, canon.cost)
    if status != OPTIMAL:
        return LPSolution(status, pivots=pivots)
    x = canon.primal(z)
    y = canon.dual(w)
    value = sum((c * v for c, v in zip(program.objective, x)), Fraction(0))
    sol = LPSolution(OPTIMAL, value, tuple(x), tuple(y), pivots)
    problems = certificate_problems(program, sol)
    if problems:
        raise DualityError("; ".join(problems))
    return sol


def certificate_problems(program, sol):
    """Exact checks of an optimal solution; returns a list of failures.

    Checks primal feasibility by substitution, the sign conditions on the
    shadow prices and reduced costs, and that the dual objective equals the
    primal one.
    """
    out = []
    x, y = sol.primal, sol.dual
    if len(x) != program.n_vars or len(y) != len(program.constraints):
        return ["solution vector lengths do not match the program"]
    for j, v in enumerate(x):
        lo, hi = program.lower[j], program.upper[j]
        if lo is not None and v < lo or hi is not None and v > hi:
            out.append(f"x[{j}]={v} violates its bounds")
    for i, (co, rel, b) in enumerate(program.constraints):
        lhs = sum((a * v for a, v in zip(co, x)), Fraction(0))
        if rel == "<=" and lhs > b or rel == ">=" and lhs < b or rel == "=" and lhs != b:
            out.append(f"row {i}: {lhs} {rel} {b} fails")
    # work with the minimisation form: min s*c.x, multipliers s*y
    s = 1 if program.sense == "min" else -1
    ys = [s * v for v in y]
    for i, (_, rel, _) in enumerate(program.constraints):
        if rel == ">=" and ys[i] < 0 or rel == "<=" and ys[i] > 0:
            out.append(f"multiplier of row {i} has the wrong sign")
    dual_value = sum((yi * b for yi, (_, _, b) in zip(ys, program.constraints)), Fraction(0))
    for j in range(program.n_vars):
        r = s * program.objective[j] - sum(
            (ys[i] * row[0][j] for i, row in enumerate(program.constraints)), Fraction(0)
        )
        if r > 0:
            if program.lower[j] is None:
                out.append(f"reduced cost of free-below x[{j}] is positive")
            else:
                dual_value += r * program.lower[j]
        elif r < 0:
            if program.upper[j] is None:
                out.append(f"reduced cost of x[{j}] without upper bound is negative")
            else:
                dual_value += r * program.upper[j]
    primal_value = s * sum((c * v for c, v in zip(program.objective, x)), Fraction(0))
    if primal_value != dual_value:
        out.append(f"primal value {primal_value} != dual value {dual_value}")
    if sol.value is not None and sol.value != s * primal_value:
        out.append("reported value differs from c.x")
    return out


class _Canonical:
    """Rewrite a program as ``max cost.z  s.t.  rows.z <= rhs,  z >= 0``."""

    def __init__(self, p):
        self.p = p
        # each original variable maps to (offset, [(z index, sign)])
        self.vmap = []
        n = 0
        for j in range(p.n_vars):
            lo, hi = p.lower[j], p.upper[j]
            if lo is not None:
                self.vmap.append((lo, [(n, 1)]))
                n += 1
            elif hi is not None:
                self.vmap.append((hi, [(n, -1)]))
                n += 1
            else:
                self.vmap.append((Fraction(0), [(n, 1), (n + 1, -1)]))
                n += 2
        self.n = n
        s = -1 if p.sense == "min" else 1
        self.cost = [mpq(0)] * n
        for j, (_, terms) in enumerate(self.vmap):
            for zi, sg in terms:
                self.cost[zi] = mpq(s * sg * p.objective[j])
        self.rows, self.rhs, self.origin = [], [], []
        for i, (co, rel, b) in enumerate(p.constraints):
            row, shift = self._substitute(co)
            if rel in ("<=", "="):
                self._add(row, b - shift, (i, -1))
            if rel in (">=", "="):
                self._add([-a for a in row], shift - b, (i, 1))
        for j in range(p.n_vars):
            lo, hi = p.lower[j], p.upper[j]
            if lo is not None and hi is not None:
                row = [mpq(0)] * n
                row[self.vmap[j][1][0][0]] = mpq(1)
                self._add(row, hi - lo, None)

    def _substitute(self, co):
        row = [mpq(0)] * self.n
        shift = Fraction(0)
        for j, a in enumerate(co):
            if not a:
                continue
            off, terms = self.vmap[j]
            shift += a * off
            for zi, sg in terms:
                row[zi] += mpq(sg * a)
        return row, shift

    def _add(self, row, rhs, origin):
        self.rows.append(row)
        self.rhs.append(mpq(rhs))
        self.origin.append(origin)

    def primal(self, z):
        x = []
        for off, terms in self.vmap:
            x.append(off + sum((sg * Fraction(z[zi]) for zi, sg in terms), Fraction(0)))
        return x

    def dual(self, w):
        # canonical multipliers w >= 0 -> shadow prices of the original rows
        y = [Fraction(0)] * len(self.p.constraints)
        for wi, origin in zip(w, self.origin):
            if origin is not None and wi:
                i, sg = origin
                y[i] += sg * Fraction(wi)
        if self.p.sense == "max":
            y = [-v for v in y]
        return y


def _dictionary_simplex(A, b, c):
    """Maximise c.z subject to A z <= b, z >= 0.

    Returns ``(status, z, w, pivots)`` with ``w`` the optimal multipliers of
    the rows.  Variables are numbered: originals ``0..n-1``, slacks
    ``n..n+m-1``, the phase-one auxiliary variable ``n+m``.
    """
    m, n = len(A), len(c)
    aux = n + m
    # row i:  basic[i] = D[i][0] + sum_j D[i][j+1] * nonbasic[j]
    D = [[mpq(b[i])] + [-mpq(a) for a in A[i]] for i in range(m)]
    basic = list(range(n, n + m))
    nonbasic = list(range(n))
    pivots = 0

    def pivot(D, obj, r, e):
        row = D[r]
        a = row[e]
        inv = 1 / a
        new = [-v * inv for v in row]
        new[e] = inv
        nz = [j for j, v in enumerate(new) if v and j != e]
        for target in D if obj is None else D + [obj]:
            if target is row:
                continue
            t = target[e]
            if not t:
                continue
            for j in nz:
                target[j] += t * new[j]
            target[e] = t * new[e]
        D[r] = new
        basic[r], nonbasic[e - 1] = nonbasic[e - 1], basic[r]

    def run(D, obj):
        nonlocal pivots
        while True:
            e = None
            for j in sorted(range(len(nonbasic)), key=nonbasic.__getitem__):
                if obj[j + 1] > 0:
                    e = j + 1
                    break
            if e is None:
                return OPTIMAL
            r, best = None, None
            for i, row in enumerate(D):
                a = row[e]
                if a < 0:
                    ratio = row[0] / -a
                    if best is None or ratio < best or ratio == best and basic[i] < basic[r]:
                        r, best = i, ratio
            if r is None:
                return UNBOUNDED
            pivot(D, obj, r, e)
            pivots += 1

    if m and min(row[0] for row in D) < 0:
        for row in D:
            row.append(mpq(1))
        nonbasic.append(aux)
        obj = [mpq(0)] * (n + 2)
        obj[-1] = mpq(-1)
        worst = min(range(m), key=lambda i: (D[i][0], basic[i]))
        pivot(D, obj, worst, len(nonbasic))
        pivots += 1
        run(D, obj)
        if obj[0] < 0:
            return INFEASIBLE, None, None, pivots
        if aux in basic:
            r = basic.index(aux)
            cols = [j + 1 for j in range(len(nonbasic)) if D[r][j + 1]]
            if cols:
                pivot(D, obj, r, min(cols, key=lambda e: nonbasic[e - 1]))
                pivots += 1
            else:
                # the row reads aux = 0 and constrains nothing else
                del D[r], basic[r]
        col = nonbasic.index(aux) + 1
        for row in D:
            del row[col]
        del nonbasic[col - 1]

    obj = [mpq(0)] * (n + 1)
    pos = {v: j + 1 for j, v in enumerate(nonbasic)}
    for v in range(n):
        if not c[v]:
            continue
        if v in pos:
            obj[pos[v]] += c[v]
        else:
            row = D[basic.index(v)]
            for j, a in enumerate(row):
                if a:
                    obj[j] += c[v] * a
    status = run(D, obj)
    if status != OPTIMAL:
        return status, None, None, pivots
    z = [mpq(0)] * n
    for i, v in enumerate(basic):
        if v < n:
            z[v] = D[i][0]
    w = [mpq(0)] * m
    for j, v in enumerate(nonbasic):
        if n <= v < n + m:
            w[v - n] = -obj[j + 1]
    return OPTIMAL, z, w, pivots
