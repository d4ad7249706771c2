"""Bound certificates: ordered chains of exact, machine-checkable steps.

A quantity is ``factor**(1/root) * 2**exponent`` with a rational ``factor``,
a rational ``exponent`` and a positive integer ``root``.  Two quantities are
compared by raising both to a common integer power, so no logarithm is ever
evaluated in floating point for a decision.

Step kinds:

``value``    introduce a named quantity (a constant or a computed number)
``derive``   a named quantity obtained from earlier ones by one operation
``compare``  an inequality between two named quantities
``fact``     a finite property re-checkable from stored data
``bound``    a statement about a mathematical object (a norm, a complexity)
             justified by a cited result whose premises are earlier steps
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import ValidationError
from .rational import fmt, frac

VERIFIED_EXACT = "verified-exact"
VERIFIED_ENUM = "verified-by-enumeration"
VERIFIED_ANALYTIC = "verified-analytic"
ASSUMPTION = "external-assumption"
STATUSES = (VERIFIED_EXACT, VERIFIED_ENUM, VERIFIED_ANALYTIC, ASSUMPTION)
RELATIONS = ("<=", ">=", "=", "<", ">")
OPS = ("mul", "div", "pow", "root", "affine")
# integer exponents up to this size are folded into the factor
FOLD_LIMIT = 256


def _iroot(n, r):
    """Exact integer r-th root of n >= 0, or None."""
    if n < 2:
        return n
    x = int(round(n ** (1.0 / r))) if n.bit_length() < 1000 else 1 << (n.bit_length() // r)
    for _ in range(200):
        y = ((r - 1) * x + n // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    for cand in (x - 1, x, x + 1):
        if cand >= 0 and cand**r == n:
            return cand
    return None


@dataclass(frozen=True)
class Quantity:
    """factor**(1/root) * 2**exponent."""

    factor: Fraction
    exponent: Fraction = Fraction(0)
    root: int = 1

    def __post_init__(self):
        f, e, r = frac(self.factor), frac(self.exponent), int(self.root)
        if r < 1:
            raise ValidationError("root must be a positive integer")
        if f < 0 and (r != 1 or e.denominator != 1):
            raise ValidationError("negative quantities must be plain rationals")
        # pull exact roots and powers of two out of the factor
        if r > 1 and f > 0:
            for p in range(r, 1, -1):
                if r % p:
                    continue
                a, b = _iroot(f.numerator, p), _iroot(f.denominator, p)
                if a is not None and b is not None:
                    f, r = Fraction(a, b), r // p
                    break
        if f != 0:
            num, den = f.numerator, f.denominator
            tz = (abs(num) & -abs(num)).bit_length() - 1
            tzd = (den & -den).bit_length() - 1
            f = Fraction(num >> tz, den >> tzd)
            e += Fraction(tz - tzd, r)
        if f in (0, 1):
            r = 1
        if e.denominator == 1 and r == 1 and f != 0 and abs(e) <= FOLD_LIMIT:
            f, e = f * Fraction(2) ** int(e), Fraction(0)
        object.__setattr__(self, "factor", f)
        object.__setattr__(self, "exponent", e)
        object.__setattr__(self, "root", r)

    @classmethod
    def of(cls, x):
        return x if isinstance(x, Quantity) else cls(frac(x))

    @classmethod
    def pow2(cls, e):
        return cls(Fraction(1), frac(e))

    @property
    def is_rational(self):
        return self.root == 1 and self.exponent.denominator == 1

    def as_fraction(self):
        if not self.is_rational:
            raise ValidationError(f"{self} is not a rational number")
        return self.factor * Fraction(2) ** int(self.exponent)

    def __mul__(self, other):
        other = Quantity.of(other)
        L = math.lcm(self.root, other.root)
        f = self.factor ** (L // self.root) * other.factor ** (L // other.root)
        return Quantity(f, self.exponent + other.exponent, L)

    def __truediv__(self, other):
        other = Quantity.of(other)
        if other.factor == 0:
            raise ZeroDivisionError("division by a zero quantity")
        return self * Quantity(1 / other.factor, -other.exponent, other.root)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValidationError("quantities are raised to integer powers only")
        if n < 0:
            return Quantity(1) / self ** (-n)
        return Quantity(self.factor**n, self.exponent * n, self.root)

    def nth_root(self, r):
        if self.factor < 0:
            raise ValidationError("root of a negative quantity")
        return Quantity(self.factor, self.exponent / r, self.root * r)

    def _cmp(self, other):
        other = Quantity.of(other)
        return compare_raw(
            (self.factor, self.exponent, self.root), (other.factor, other.exponent, other.root)
        )

    def __eq__(self, other):
        if not isinstance(other, (Quantity, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash((self.factor, self.exponent, self.root))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def log2(self):
        """Float rendering only; never used for a decision."""
        if self.factor <= 0:
            return -math.inf
        lf = math.log2(self.factor.numerator) - math.log2(self.factor.denominator)
        return lf / self.root + float(self.exponent)

    def floor_log2_rational(self):
        """A rational t with 2**t <= self, t = exponent + floor(log2 factor)/root."""
        if self.factor <= 0:
            raise ValidationError("log of a nonpositive quantity")
        f = self.factor
        t = f.numerator.bit_length() - f.denominator.bit_length()
        while Fraction(2) ** t > f:
            t -= 1
        while Fraction(2) ** (t + 1) <= f:
            t += 1
        return self.exponent + Fraction(t, self.root)

    def lower_rational(self, bits=40):
        """A rational r <= self with r > self - 2**-bits (for positive self)."""
        if self.is_rational:
            return self.as_fraction()
        guess = int(math.floor(2.0 ** (self.log2() + bits))) if self.log2() + bits < 1000 else None
        if guess is None:
            raise ValidationError("quantity too large for a rational approximation")
        scale = Fraction(1, 1 << bits)
        t = max(guess - 2, 0)
        while Quantity(t * scale) > self:
            t -= 1
        while Quantity((t + 1) * scale) <= self:
            t += 1
        return t * scale

    def __str__(self):
        parts = []
        if self.root == 1:
            if self.factor != 1 or self.exponent == 0:
                parts.append(fmt(self.factor))
        else:
            parts.append(f"({fmt(self.factor)})^(1/{self.root})")
        if self.exponent != 0:
            parts.append(f"2^({fmt(self.exponent)})")
        return "*".join(parts)

    def to_json(self):
        out = {"factor": fmt(self.factor), "exponent": fmt(self.exponent)}
        if self.root != 1:
            out["root"] = self.root
        return out

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, (str, int)):
            return cls(frac(obj))
        try:
            return cls(frac(obj["factor"]), frac(obj.get("exponent", 0)), int(obj.get("root", 1)))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad quantity {obj!r}") from exc


def compare_raw(a, b):
    """Sign of a - b for (factor, exponent, root) triples, exactly.

    Both sides are raised to L = lcm of roots and exponent denominators, which
    turns every power into an integer power of a rational.
    """
    fa, ea, ra = a
    fb, eb, rb = b
    if fa <= 0 or fb <= 0:
        sa, sb = (fa > 0) - (fa < 0), (fb > 0) - (fb < 0)
        if sa != sb or sa == 0:
            return (sa > sb) - (sa < sb)
        # both negative, hence plain rationals
        return -compare_raw((-fa, ea, 1), (-fb, eb, 1))
    L = math.lcm(ra, rb, ea.denominator, eb.denominator)
    # log2(f) lies strictly inside (bits - 1, bits + 1); decide from that when possible
    ba = fa.numerator.bit_length() - fa.denominator.bit_length()
    bb = fb.numerator.bit_length() - fb.denominator.bit_length()
    lo_a, hi_a = (ba - 1) * (L // ra) + ea * L, (ba + 1) * (L // ra) + ea * L
    lo_b, hi_b = (bb - 1) * (L // rb) + eb * L, (bb + 1) * (L // rb) + eb * L
    if hi_a <= lo_b:
        return -1
    if hi_b <= lo_a:
        return 1
    va = fa ** (L // ra)
    vb = fb ** (L // rb)
    shift = int((ea - eb) * L)
    if shift >= 0:
        va *= Fraction(2) ** shift
    else:
        vb *= Fraction(2) ** -shift
    return (va > vb) - (va < vb)


def relation_holds(c, rel):
    return {"<=": c <= 0, ">=": c >= 0, "=": c == 0, "<": c < 0, ">": c > 0}[rel]


@dataclass
class Step:
    id: str
    kind: str
    claim: str
    status: str
    citation: str
    name: str = None  # value, derive
    value: Quantity = None  # value, derive
    op: str = None  # derive
    args: tuple = ()  # derive
    params: dict = field(default_factory=dict)  # derive: power, root, scale, shift
    lhs: str = None  # compare
    relation: str = None  # compare, bound
    rhs: str = None  # compare
    holds: bool = None  # compare, fact
    subject: str = None  # bound
    log2: bool = False  # bound: subject >= log2(quantity)
    requires: tuple = ()  # bound
    fact: str = None  # fact type
    data: dict = None  # fact data

    def to_json(self):
        out = {"id": self.id, "kind": self.kind, "claim": self.claim, "status": self.status, "citation": self.citation}
        if self.kind in ("value", "derive"):
            out["name"] = self.name
            out["value"] = self.value.to_json()
        if self.kind == "derive":
            out["op"] = self.op
            out["args"] = list(self.args)
            if self.params:
                out["params"] = {k: fmt(v) if not isinstance(v, int) else v for k, v in self.params.items()}
        if self.kind == "compare":
            out.update(lhs=self.lhs, relation=self.relation, rhs=self.rhs, holds=self.holds)
        if self.kind == "fact":
            out.update(fact=self.fact, holds=self.holds, data=self.data)
        if self.kind == "bound":
            out.update(subject=self.subject, relation=self.relation, quantity=self.name, requires=list(self.requires))
            if self.log2:
                out["log2"] = True
        return out


def apply_op(op, args, params):
    if op == "mul":
        out = Quantity(1)
        for a in args:
            out = out * a
        return out
    if op == "div":
        return args[0] / args[1]
    if op == "pow":
        return args[0] ** int(params["power"])
    if op == "root":
        return args[0].nth_root(int(params["root"]))
    if op == "affine":
        x = args[0].as_fraction()
        return Quantity(x * frac(params.get("scale", 1)) + frac(params.get("shift", 0)))
    raise ValidationError(f"unknown operation {op!r}")


class Chain:
    """Builder for certificate steps; every step is checked as it is added."""

    def __init__(self, prefix=""):
        self.steps = []
        self.env = {}
        self.prefix = prefix

    def _id(self):
        return f"{self.prefix}s{len(self.steps) + 1}"

    def _fresh(self, name):
        if name in self.env:
            raise ValueError(f"quantity {name!r} defined twice")

    def value(self, name, q, claim, status=VERIFIED_EXACT, citation="exact-arithmetic"):
        self._fresh(name)
        q = Quantity.of(q)
        step = Step(self._id(), "value", claim, status, citation, name=name, value=q)
        self.steps.append(step)
        self.env[name] = q
        return step

    def derive(self, name, op, args, claim, status=VERIFIED_EXACT, citation="exact-arithmetic", **params):
        self._fresh(name)
        q = apply_op(op, [self.env[a] for a in args], params)
        step = Step(self._id(), "derive", claim, status, citation, name=name, value=q, op=op, args=tuple(args), params=params)
        self.steps.append(step)
        self.env[name] = q
        return step

    def compare(self, lhs, rel, rhs, claim, status=VERIFIED_EXACT, citation="exact-arithmetic"):
        c = self.env[lhs]._cmp(self.env[rhs])
        step = Step(self._id(), "compare", claim, status, citation, lhs=lhs, relation=rel, rhs=rhs, holds=relation_holds(c, rel))
        self.steps.append(step)
        return step

    def fact(self, fact, data, holds, claim, status=VERIFIED_EXACT, citation="exact-arithmetic"):
        step = Step(self._id(), "fact", claim, status, citation, fact=fact, data=data, holds=bool(holds))
        self.steps.append(step)
        return step

    def bound(self, subject, rel, name, claim, requires=(), status=VERIFIED_ANALYTIC, citation="", log2=False):
        if name not in self.env:
            raise ValueError(f"unknown quantity {name!r}")
        step = Step(self._id(), "bound", claim, status, citation, name=name, subject=subject, relation=rel,
                    requires=tuple(s.id if isinstance(s, Step) else s for s in requires), log2=log2)
        self.steps.append(step)
        return step

    def extend(self, other):
        for s in other.steps:
            self.steps.append(s)
        for k, v in other.env.items():
            self._fresh(k)
            self.env[k] = v


@dataclass
class BoundCertificate:
    title: str
    steps: list
    conclusion: dict  # subject, relation, quantity (name), log2 flag, plus context
    parameters: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def env(self):
        return {s.name: s.value for s in self.steps if s.kind in ("value", "derive")}

    @property
    def final(self):
        """The quantity named by the conclusion."""
        return self.env[self.conclusion["quantity"]]

    @property
    def bits(self):
        """log2 of the final quantity, as a float for display."""
        return self.final.log2()

    @property
    def lower_bits(self):
        """Exact rational t <= log2 of the final quantity, clipped at 0 (a vacuous bound is 0 bits)."""
        q = self.final
        return Fraction(0) if q <= 1 else max(Fraction(0), q.floor_log2_rational())

    @property
    def ok(self):
        return all(s.holds is not False for s in self.steps)

    def summary(self):
        counts = {s: 0 for s in STATUSES}
        for s in self.steps:
            counts[s.status] += 1
        return counts

    def to_json(self):
        concl = dict(self.conclusion)
        q = self.final
        concl["value"] = q.to_json()
        concl["decimal"] = f"{q.log2():.6g} bits" if concl.get("log2") else _decimal(q)
        return {
            "title": self.title,
            "parameters": {k: (fmt(v) if isinstance(v, Fraction) or v == math.inf else v) for k, v in self.parameters.items()},
            "steps": [s.to_json() for s in self.steps],
            "conclusion": concl,
            "summary": self.summary(),
            "notes": list(self.notes),
        }

    def render(self):
        lines = [self.title]
        for s in self.steps:
            lines.append(f"  [{s.id}] {s.claim}  ({s.status}; {s.citation})")
        c = self.conclusion
        q = self.final
        rhs = f"log2({q}) = {q.log2():.6g}" if c.get("log2") else f"{q} ~ {_decimal(q)}"
        lines.append(f"  => {c['subject']} {c['relation']} {rhs}")
        summ = ", ".join(f"{k}: {v}" for k, v in self.summary().items() if v)
        lines.append(f"  steps by status: {summ}")
        return "\n".join(lines)


def _decimal(q):
    lg = q.log2()
    if lg == -math.inf:
        return "0"
    if abs(lg) < 60:
        return f"{2.0 ** lg:.6g}"
    return f"2^{lg:.6g}"


def certificate_from_json(obj):
    """Rebuild a BoundCertificate from its JSON form (used by the CLI)."""
    steps = []
    for s in obj["steps"]:
        kw = {k: s.get(k) for k in ("id", "kind", "claim", "status", "citation")}
        st = Step(**kw)
        if s["kind"] in ("value", "derive"):
            st.name = s["name"]
            st.value = Quantity.from_json(s["value"])
        if s["kind"] == "derive":
            st.op, st.args = s["op"], tuple(s["args"])
            st.params = {k: v for k, v in s.get("params", {}).items()}
        if s["kind"] == "compare":
            st.lhs, st.relation, st.rhs, st.holds = s["lhs"], s["relation"], s["rhs"], s["holds"]
        if s["kind"] == "fact":
            st.fact, st.data, st.holds = s["fact"], s["data"], s["holds"]
        if s["kind"] == "bound":
            st.subject, st.relation, st.name = s["subject"], s["relation"], s["quantity"]
            st.requires, st.log2 = tuple(s.get("requires", ())), bool(s.get("log2", False))
        steps.append(st)
    concl = {k: v for k, v in obj["conclusion"].items() if k not in ("value", "decimal")}
    return BoundCertificate(obj["title"], steps, concl, dict(obj.get("parameters", {})), list(obj.get("notes", [])))


# ---------------------------------------------------------------------------
# Independent checker.  Works on the JSON form only and re-implements the
# arithmetic it needs instead of calling Quantity.


def _q(obj):
    if isinstance(obj, (str, int)):
        return (Fraction(obj), Fraction(0), 1)
    return (Fraction(obj["factor"]), Fraction(obj.get("exponent", "0")), int(obj.get("root", 1)))


def _cmp(a, b):
    """Sign of a - b.  Raises both to a common power L and cancels powers of two."""
    (fa, ea, ra), (fb, eb, rb) = a, b
    sa, sb = (fa > 0) - (fa < 0), (fb > 0) - (fb < 0)
    if sa != sb or sa == 0:
        return (sa > sb) - (sa < sb)
    if sa < 0:
        return _cmp((-fb, eb, rb), (-fa, ea, ra))
    L = math.lcm(ra, rb, ea.denominator, eb.denominator)
    # 2^(ea L) fa^(L/ra) against 2^(eb L) fb^(L/rb); |log2 f| < its bit length + 1
    gap = (ea - eb) * L
    room = (abs(fa.numerator.bit_length() - fa.denominator.bit_length()) + 1) * (L // ra)
    room += (abs(fb.numerator.bit_length() - fb.denominator.bit_length()) + 1) * (L // rb)
    if abs(gap) > room:
        return 1 if gap > 0 else -1
    va, vb = fa ** (L // ra), fb ** (L // rb)
    if gap >= 0:
        va *= Fraction(2) ** int(gap)
    else:
        vb *= Fraction(2) ** int(-gap)
    return (va > vb) - (va < vb)


def _op(op, args, params):
    if op == "mul":
        f, e, r = Fraction(1), Fraction(0), 1
        for af, ae, ar in args:
            L = math.lcm(r, ar)
            f, e, r = f ** (L // r) * af ** (L // ar), e + ae, L
        return (f, e, r)
    if op == "div":
        (af, ae, ar), (bf, be, br) = args
        L = math.lcm(ar, br)
        return (af ** (L // ar) / bf ** (L // br), ae - be, L)
    if op == "pow":
        n = int(params["power"])
        f, e, r = args[0]
        return (f**n, e * n, r)
    if op == "root":
        f, e, r = args[0]
        p = int(params["root"])
        return (f, e / p, r * p)
    if op == "affine":
        f, e, r = args[0]
        if r != 1 or e.denominator != 1:
            raise ValueError("affine needs a rational argument")
        x = f * Fraction(2) ** int(e)
        return (x * Fraction(str(params.get("scale", 1))) + Fraction(str(params.get("shift", 0))), Fraction(0), 1)
    raise ValueError(f"unknown op {op}")


def _chi(mask, i):
    return -1 if bin(mask & i).count("1") % 2 else 1


def _check_fact(fact, data):
    if fact == "dual-polynomial":
        v = [Fraction(x) for x in data["values"]]
        f = [Fraction(x) for x in data["function"]]
        d = int(data["vanishing_degree"])
        if sum(abs(x) for x in v) != 1:
            return False
        for S in range(len(v)):
            if bin(S).count("1") <= d and sum(v[i] * _chi(S, i) for i in range(len(v))) != 0:
                return False
        corr = sum(a * b for a, b in zip(v, f))
        if data.get("sign_consistent") and any(a * b < 0 for a, b in zip(v, f)):
            return False
        return corr >= Fraction(data["threshold"]) and corr == Fraction(data["correlation"])
    if fact == "recompose":
        shape = tuple(data["shape"])
        target = np.array([Fraction(x) for x in data["target"]], dtype=object).reshape(shape)
        total = np.zeros(shape, dtype=object)
        total[...] = Fraction(0)
        for sign, cyl in data["pieces"]:
            ind = np.ones(shape, dtype=bool)
            for i, c in enumerate(cyl):
                other = shape[:i] + shape[i + 1:]
                ind &= np.expand_dims(np.array(c, dtype=bool).reshape(other), i)
            total = total + np.where(ind, Fraction(sign), Fraction(0))
        return bool(np.all(total == target)) and len(data["pieces"]) == int(data["count"])
    if fact == "hadamard":
        shape = tuple(data["shape"])
        H = np.array([1 if ch == "+" else -1 for ch in data["entries"]], dtype=np.int64).reshape(shape)
        k = len(shape)
        for idx in product(*[range(n) for n in shape[1:] for _ in (0, 1)]):
            pairs = [(idx[2 * j], idx[2 * j + 1]) for j in range(k - 1)]
            if any(a == b for a, b in pairs):
                continue
            tot = 0
            for x1 in range(shape[0]):
                p = 1
                for ys in product(*pairs):
                    p *= int(H[(x1,) + ys])
                tot += p
            if tot != 0:
                return False
        return True
    if fact == "recorded":
        return bool(data.get("holds", False))
    raise ValueError(f"unknown fact type {fact!r}")


@dataclass
class CheckReport:
    ok: bool
    problems: list
    counts: dict
    checked_steps: int

    def to_json(self):
        return {"ok": self.ok, "problems": self.problems, "counts": self.counts, "checked_steps": self.checked_steps}


def check_certificate(cert):
    """Re-validate every step of a certificate from its stored values."""
    obj = cert.to_json() if isinstance(cert, BoundCertificate) else cert
    problems = []
    counts = {s: 0 for s in STATUSES}
    env = {}
    ids = {}
    try:
        steps = obj["steps"]
    except (KeyError, TypeError):
        return CheckReport(False, ["no steps"], counts, 0)
    for s in steps:
        sid = s.get("id", "?")
        try:
            status = s["status"]
            if status not in STATUSES:
                problems.append(f"{sid}: unknown status {status!r}")
                continue
            counts[status] += 1
            if not s.get("citation"):
                problems.append(f"{sid}: missing citation")
            kind = s["kind"]
            if sid in ids:
                problems.append(f"{sid}: duplicate step id")
            ids[sid] = s
            if kind == "value":
                if s["name"] in env:
                    problems.append(f"{sid}: {s['name']} redefined")
                env[s["name"]] = _q(s["value"])
            elif kind == "derive":
                args = [env[a] for a in s["args"]]
                got = _op(s["op"], args, s.get("params", {}))
                stored = _q(s["value"])
                if _cmp(got, stored) != 0:
                    problems.append(f"{sid}: derived value of {s['name']} does not match")
                env[s["name"]] = stored
            elif kind == "compare":
                c = _cmp(env[s["lhs"]], env[s["rhs"]])
                holds = relation_holds(c, s["relation"])
                if status != ASSUMPTION and not holds:
                    problems.append(f"{sid}: {s['lhs']} {s['relation']} {s['rhs']} fails")
                if bool(s.get("holds")) != holds:
                    problems.append(f"{sid}: recorded outcome disagrees with recomputation")
            elif kind == "fact":
                holds = _check_fact(s["fact"], s["data"])
                if not holds and status != ASSUMPTION:
                    problems.append(f"{sid}: fact {s['fact']} does not hold")
                if bool(s.get("holds")) != holds:
                    problems.append(f"{sid}: recorded fact outcome disagrees with recomputation")
            elif kind == "bound":
                if s["quantity"] not in env:
                    problems.append(f"{sid}: unknown quantity {s['quantity']}")
                if s["relation"] not in RELATIONS:
                    problems.append(f"{sid}: bad relation")
                for r in s.get("requires", []):
                    if r not in ids:
                        problems.append(f"{sid}: premise {r} missing or later in the chain")
                    elif ids[r].get("holds") is False:
                        problems.append(f"{sid}: premise {r} does not hold")
            else:
                problems.append(f"{sid}: unknown kind {kind!r}")
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            problems.append(f"{sid}: malformed step ({exc})")
    concl = obj.get("conclusion", {})
    name = concl.get("quantity")
    if name not in env:
        problems.append("conclusion refers to an unknown quantity")
    else:
        bound_steps = [s for s in steps if s.get("kind") == "bound" and s.get("quantity") == name and s.get("subject") == concl.get("subject")]
        if not bound_steps:
            problems.append("conclusion is not established by any bound step")
        if "value" in concl and _cmp(_q(concl["value"]), env[name]) != 0:
            problems.append("conclusion value differs from the chain")
    if "summary" in obj and obj["summary"] != counts:
        problems.append("status summary does not match the steps")
    return CheckReport(not problems, problems, counts, len(steps))
