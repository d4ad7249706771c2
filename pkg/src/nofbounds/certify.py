"""Lower-bound certificates for cylinder-intersection norms and NOF complexity.

Every function here returns a :class:`BoundCertificate` whose steps can be
re-validated by :func:`check_certificate` from the stored values alone.

Euler's number enters only through side conditions and constants, always
replaced by the rational over-approximation ``E_HAT``; a larger constant only
makes a side condition harder to meet, so every emitted bound stays sound.

Two conventions are offered for the pattern-tensor step (see
``pattern_mu_star_bound``).  ``"provable"`` (the default) uses a witness that
is orthogonal to characters of size below ``d`` and concludes
``mu*(Q) <= 2^(-(d-1)/2^(k-1))``.  ``"printed"`` takes the statement at face
value, concluding ``2^(-d)`` for the pattern step and ``2^(d/2^(k-1))`` for
the norm bound; those steps are tagged as external assumptions.
"""
import math
from fractions import Fraction
from itertools import product

from . import caps as _caps
from .approxdeg import deg_alpha, dual_polynomial, verify_dual_polynomial
from .boolfun import RealFunction, fourier_transform, popcount
from .certificate import (
    ASSUMPTION,
    VERIFIED_ANALYTIC,
    VERIFIED_ENUM,
    VERIFIED_EXACT,
    BoundCertificate,
    Chain,
    Quantity,
    check_certificate,
)
from .cylinders import mu_star, search_count
from .errors import ConditionViolated, DimensionError, ValidationError
from .pattern import PatternSpec, build_pattern_tensor
from .rational import INF, fmt, frac, is_inf, parse_alpha
from .tensors import RationalTensor, SignTensor, contraction_product, inner_product, l1_norm, mean_abs

E_HAT = Fraction(271828182845905, 10**14)
CONVENTIONS = ("provable", "printed")

__all__ = [
    "E_HAT",
    "check_certificate",
    "contraction_chain_check",
    "is_hadamard",
    "hadamard_check",
    "hadamard_bound",
    "pattern_mu_star_bound",
    "degree_to_mu_alpha",
    "cc_bounds",
    "disjointness_bound",
    "proof_size_bound",
    "partition_certificate",
    "norm_certificate",
]


def _e_upper_bound(chain):
    """Add steps proving e <= E_HAT from the series sum 1/i! plus its tail."""
    N = 20
    s = sum(Fraction(1, math.factorial(i)) for i in range(N + 1))
    tail = Fraction(1, math.factorial(N) * N)
    chain.value("e_series_upper", s + tail, f"sum_(i<={N}) 1/i! + 1/({N}! {N}) is an upper bound on e")
    chain.value("e_hat", E_HAT, "rational constant used in place of e")
    return chain.compare("e_series_upper", "<=", "e_hat", "e <= e_hat")


# ---------------------------------------------------------------------------
# contraction and Hadamard tensors


def contraction_chain_check(B, caps=None):
    """(mu*(B)/size(B))^(2^(k-1)) <= mu*(B.B)/size(B.B) <= E|B.B|, all exact."""
    k = B.k
    if k < 2:
        raise DimensionError("the contraction chain needs k >= 2")
    C = contraction_product(B)
    ms_b = mu_star(B, caps).value
    ms_c = mu_star(C, caps).value
    ch = Chain()
    ch.value("mu*(B)", ms_b, f"mu*(B) = {fmt(ms_b)}", VERIFIED_ENUM, "cylinder-enumeration")
    ch.value("size(B)", B.size, f"size(B) = {B.size}")
    ch.derive("mu*(B)/size(B)", "div", ["mu*(B)", "size(B)"], "normalised dual norm of B")
    ch.derive("lhs", "pow", ["mu*(B)/size(B)"], f"(mu*(B)/size(B))^{2 ** (k - 1)}", power=2 ** (k - 1))
    ch.value("mu*(BB)", ms_c, f"mu*(B.B) = {fmt(ms_c)}", VERIFIED_ENUM, "cylinder-enumeration")
    ch.value("size(BB)", C.size, f"size(B.B) = {C.size}")
    ch.derive("mid", "div", ["mu*(BB)", "size(BB)"], "mu*(B.B)/size(B.B)")
    ch.value("E|BB|", mean_abs(C), f"E|B.B| = {fmt(mean_abs(C))}")
    s1 = ch.compare("lhs", "<=", "mid", "first inequality of the contraction chain")
    ch.compare("mid", "<=", "E|BB|", "second inequality of the contraction chain")
    ch.bound("(mu*(B)/size(B))^(2^(k-1))", "<=", "mid", "mu*(B) bounded through its contraction product",
             requires=[s1], status=VERIFIED_EXACT, citation="contraction-lemma")
    return BoundCertificate(
        "contraction chain",
        ch.steps,
        {"subject": "(mu*(B)/size(B))^(2^(k-1))", "relation": "<=", "quantity": "mid"},
        {"shape": list(B.shape), "k": k},
    )


def is_hadamard(H):
    """Does the contraction product vanish wherever every doubled index pair differs?"""
    if not isinstance(H, RationalTensor) or not H.is_sign():
        return False
    if H.k < 2:
        raise DimensionError("Hadamard tensors have k >= 2")
    C = contraction_product(H).array
    shape = H.shape[1:]
    for idx in product(*[range(n) for n in shape for _ in (0, 1)]):
        if all(idx[2 * j] != idx[2 * j + 1] for j in range(len(shape))) and C[idx] != 0:
            return False
    return True


class HadamardCheck:
    def __init__(self, tensor, flag, N, bound):
        self.tensor = tensor
        self.is_hadamard = flag
        self.N = N
        self.bound = bound

    def to_json(self):
        return {"is_hadamard": self.is_hadamard, "N": self.N, "bound": None if self.bound is None else self.bound.to_json()}


def _side(H):
    if len(set(H.shape)) != 1:
        raise DimensionError(f"a Hadamard tensor has equal side lengths, got {H.shape}")
    return H.shape[0]


def hadamard_bound(H, caps=None):
    """mu^inf(H) >= <H,H>/mu*(H) with mu*(H) bounded by the contraction lemma.

    When mu*(H) is small enough to enumerate, the exact witness value
    <H,H>/mu*(H) is added and becomes the conclusion.
    """
    caps = _caps.resolve(caps)
    if not isinstance(H, RationalTensor) or not H.is_sign():
        raise ValidationError("hadamard_bound needs a sign tensor")
    N = _side(H)
    k = H.k
    if not is_hadamard(H):
        raise ValidationError("tensor is not a Hadamard tensor")
    H = SignTensor(H)
    C = contraction_product(H)
    ch = Chain()
    had = ch.fact("hadamard", {"shape": list(H.shape), "entries": H.to_json()["entries"]}, True,
                  "H.H vanishes wherever every index pair differs")
    ch.value("N", N, f"side length N = {N}")
    ch.value("k-1", k - 1, f"k - 1 = {k - 1}")
    ch.value("<H,H>", inner_product(H, H), f"<H,H> = N^k = {N ** k}")
    ch.value("size(H)", H.size, f"size(H) = {H.size}")
    ch.value("E|HH|", mean_abs(C), f"E|H.H| = {fmt(mean_abs(C))}")
    ch.derive("(k-1)/N", "div", ["k-1", "N"], "union bound on the fraction of nonzero entries")
    s_union = ch.compare("E|HH|", "<=", "(k-1)/N", "E|H.H| <= (k-1)/N", citation="hadamard-union-bound")
    p = 2 ** (k - 1)
    ch.derive("size^p", "pow", ["size(H)"], f"size(H)^{p}", power=p)
    ch.derive("mu*^p bound", "mul", ["size^p", "E|HH|"], f"size(H)^{p} E|H.H|")
    ch.derive("mu*(H) bound", "root", ["mu*^p bound"], f"({p})-th root", root=p)
    s_ms = ch.bound("mu*(H)", "<=", "mu*(H) bound", "contraction lemma applied to H",
                    requires=[s_union], citation="contraction-lemma")
    ch.derive("mu_inf analytic", "div", ["<H,H>", "mu*(H) bound"], "<H,H> / (bound on mu*(H))")
    ch.bound("mu^inf(H)", ">=", "mu_inf analytic", "witness Q = H satisfies H o Q >= 0",
                    requires=[had, s_ms], citation="dual-norm-witness")
    ch.derive("N/(k-1)", "div", ["N", "k-1"], "N/(k-1)")
    ch.derive("target", "root", ["N/(k-1)"], f"(N/(k-1))^(1/{p})", root=p)
    ch.compare("mu_inf analytic", ">=", "target", f"bound is at least (N/(k-1))^(1/{p})")
    final = "mu_inf analytic"
    count, _ = search_count(H.shape)
    if count <= caps.search:
        ms = mu_star(H, caps).value
        ch.value("mu*(H)", ms, f"mu*(H) = {fmt(ms)}", VERIFIED_ENUM, "cylinder-enumeration")
        ch.derive("mu_inf witness", "div", ["<H,H>", "mu*(H)"], "<H,H>/mu*(H)")
        ch.compare("mu_inf witness", ">=", "mu_inf analytic", "the exact witness value improves the analytic one")
        ch.bound("mu^inf(H)", ">=", "mu_inf witness", "witness Q = H with mu*(H) computed exactly",
                 requires=[had], citation="dual-norm-witness")
        final = "mu_inf witness"
    return BoundCertificate(
        "Hadamard tensor bound",
        ch.steps,
        {"subject": "mu^inf(H)", "relation": ">=", "quantity": final, "norm": "mu_inf", "alpha": "inf"},
        {"N": N, "k": k},
    )


def hadamard_check(H, caps=None):
    flag = is_hadamard(H)
    N = H.shape[0]
    bound = hadamard_bound(H, caps).final if flag else None
    return HadamardCheck(H, flag, N, bound)


# ---------------------------------------------------------------------------
# pattern tensors and the degree theorem


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise ValidationError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


def side_condition_holds(k, m, M, g):
    """M g >= 2 e_hat (k-1) 2^(2^(k-1)) m, by exact rational arithmetic."""
    return M * g >= 2 * E_HAT * (k - 1) * 2 ** (2 ** (k - 1)) * m


def _side_condition(ch, k, m, M, g):
    """Steps for the side condition with multiplier g, or ConditionViolated.

    g is the least number of degenerate positions that can contribute a
    nonzero term: one more than the vanishing degree.
    """
    ch.value("M", M, f"M = {M}")
    ch.value("g", g, f"least contributing number of degenerate positions g = {g}")
    ch.value("m", m, f"m = {m}")
    ch.value("2(k-1)2^(2^(k-1))", 2 * (k - 1) * 2 ** (2 ** (k - 1)), f"2(k-1)2^(2^(k-1)) for k = {k}")
    ch.derive("M*g", "mul", ["M", "g"], "M g")
    ch.derive("side rhs", "mul", ["e_hat", "2(k-1)2^(2^(k-1))", "m"], "2 e_hat (k-1) 2^(2^(k-1)) m")
    step = ch.compare("M*g", ">=", "side rhs", "side condition M g >= 2 e (k-1) 2^(2^(k-1)) m, using e_hat >= e",
                      citation="pattern-tensor-lemma")
    if not step.holds:
        raise _violation(k, m, M, g)
    return step


def _violation(k, m, M, g):
    need = 2 * E_HAT * (k - 1) * 2 ** (2 ** (k - 1)) * m
    hint = f" (need M >= {math.ceil(need / g)})" if g else ""
    return ConditionViolated(f"side condition fails: M*g = {M * g} < {float(need):.6g}{hint}")


def _degree_step(ch, k, d, premises, convention):
    """mu*(Q) bound for a witness orthogonal to characters of size below d."""
    p = 2 ** (k - 1)
    if convention == "provable":
        ch.value("mu*(Q) bound", Quantity.pow2(Fraction(-(d - 1), p)), f"2^(-(d-1)/{p}) with d = {d}")
        return ch.bound("mu*(Q)", "<=", "mu*(Q) bound",
                        "pattern lemma through the contraction chain; at least d degenerate positions contribute",
                        requires=premises, citation="pattern-tensor-lemma")
    ch.value("mu*(Q) bound", Quantity.pow2(Fraction(-d, p)), f"2^(-d/{p}) with d = {d}")
    return ch.bound("mu*(Q)", "<=", "mu*(Q) bound", "degree theorem taken as stated",
                    requires=premises, status=ASSUMPTION, citation="degree-to-norm-theorem")


def pattern_mu_star_bound(spec, d, convention="provable", verify_phi=True, caps=None):
    """Certify mu*(Q) for a pattern tensor Q built from a normalised phi.

    ``d`` is the vanishing degree: ``phi_hat(T) = 0`` for every ``|T| <= d``.
    The premises on phi (unit l1 norm, the vanishing, the scale
    ``c = 2^m/size``) are checked from the truth table; with
    ``verify_phi=False`` they are recorded as supplied by the caller.

    ``provable``: needs ``M (d+1) >= 2 e (k-1) 2^(2^(k-1)) m`` and gives
    ``mu*(Q) <= 2^(-d/2^(k-1))``.  ``printed``: needs ``M d >= ...`` and gives
    ``2^(-d)``, tagged as an external assumption.
    """
    _check_convention(convention)
    k, m, M = spec.k, spec.m, spec.M
    if not isinstance(d, int) or d < 0:
        raise ValidationError("degree must be a nonnegative integer")
    phi = spec.phi
    if phi.m != m:
        raise ValidationError(f"phi has arity {phi.m}, pattern expects {m}")
    ch = Chain()
    _e_upper_bound(ch)
    scale_ok = spec.c == Fraction(1 << m, spec.size)
    if verify_phi:
        _caps.require("arity for the Fourier check", m, _caps.resolve(caps).table_arity)
        l1 = sum((abs(v) for v in phi.table), Fraction(0))
        coeffs = fourier_transform(phi).coefficients
        lowest = min((popcount(S) for S, c in enumerate(coeffs) if c), default=m + 1)
        premises = [
            ch.fact("recorded", {"holds": l1 == 1, "l1": fmt(l1)}, l1 == 1, "l1(phi) = 1"),
            ch.fact("recorded", {"holds": lowest > d, "lowest_degree": lowest}, lowest > d,
                    f"phi_hat(T) = 0 for |T| <= {d}"),
        ]
    else:
        premises = [ch.fact("recorded", {"holds": True}, True, f"l1(phi) = 1 and phi_hat(T) = 0 for |T| <= {d}",
                            status=ASSUMPTION, citation="caller-supplied")]
    premises.append(ch.fact("recorded", {"holds": scale_ok, "scale": fmt(spec.c)}, scale_ok, "scale c = 2^m/size(A)"))
    bad = [s.claim for s in premises if not s.holds]
    if bad:
        raise ValidationError("premises on phi fail: " + "; ".join(bad))
    p = 2 ** (k - 1)
    if convention == "provable":
        premises.append(_side_condition(ch, k, m, M, d + 1))
        ch.value("mu*(Q) bound", Quantity.pow2(Fraction(-d, p)), f"2^(-d/{p}) with d = {d}")
        ch.bound("mu*(Q)", "<=", "mu*(Q) bound",
                 "contraction chain: E|Q.Q| <= 2^(-d) size^(-2^(k-1)) once more than d positions are degenerate",
                 requires=premises, citation="pattern-tensor-lemma")
    else:
        premises.append(_side_condition(ch, k, m, M, d))
        ch.value("mu*(Q) bound", Quantity.pow2(-d), f"2^(-d) with d = {d}")
        ch.bound("mu*(Q)", "<=", "mu*(Q) bound", "pattern lemma taken as stated",
                 requires=premises, status=ASSUMPTION, citation="pattern-tensor-lemma")
    return BoundCertificate(
        "pattern tensor dual-norm bound",
        ch.steps,
        {"subject": "mu*(Q)", "relation": "<=", "quantity": "mu*(Q) bound"},
        {"k": k, "m": m, "M": M, "d": d, "convention": convention},
    )


def degree_to_mu_alpha(f, k, M, alpha, alpha0=None, convention="provable", caps=None):
    """Lower bound on mu^alpha(A_{k,M,f}) from the approximate degree of f.

    Finite alpha needs 1 <= alpha < alpha0 < inf and uses deg_alpha0(f);
    alpha = inf uses the sign degree.  When the side condition on M fails
    but mu*(Q) is small enough to enumerate, the exact mu*(Q) replaces the
    analytic bound; otherwise ConditionViolated is raised.
    """
    _check_convention(convention)
    caps = _caps.resolve(caps)
    alpha = parse_alpha(alpha)
    if not isinstance(k, int) or k < 2:
        raise ValidationError("k must be an integer >= 2")
    if not isinstance(M, int) or M < 1:
        raise ValidationError("M must be a positive integer")
    if not f.is_boolean():
        raise ValidationError("f must be +-1 valued")
    if is_inf(alpha):
        a0 = INF
    else:
        if alpha0 is None:
            raise ValidationError("finite alpha needs alpha0")
        a0 = parse_alpha(alpha0)
        if is_inf(a0) or not alpha < a0:
            raise ValidationError(f"need 1 <= alpha < alpha0 < inf, got alpha = {fmt(alpha)}, alpha0 = {fmt(a0)}")
    m = f.m
    d = deg_alpha(f, a0, caps)
    if d == 0:
        raise ValidationError("f has approximate degree 0; no nontrivial bound")
    spec = PatternSpec(k, m, M, f)
    built = spec.size <= caps.tensor_size
    analytic = side_condition_holds(k, m, M, d)
    if not analytic and not (built and search_count(spec.shape)[0] <= caps.search):
        raise _violation(k, m, M, d)

    ch = Chain()
    _e_upper_bound(ch)
    label = "deg_inf(f)" if is_inf(a0) else f"deg_{fmt(a0)}(f)"
    ch.value("deg", d, f"{label} = {d} by exact LP", VERIFIED_EXACT, "approximate-degree-lp")
    v = dual_polynomial(f, a0, caps)
    rep = verify_dual_polynomial(v, f, a0)
    threshold = Fraction(0) if is_inf(a0) else (a0 - 1) / (a0 + 1)
    dp = ch.fact(
        "dual-polynomial",
        {
            "values": [fmt(x) for x in v.values],
            "function": [fmt(x) for x in f.table],
            "vanishing_degree": v.vanishing_degree,
            "threshold": fmt(threshold),
            "correlation": fmt(v.correlation),
            "sign_consistent": is_inf(a0),
        },
        rep.ok,
        f"dual witness q: l1(q) = 1, orthogonal to characters of size <= {d - 1}, <q,f> = {fmt(v.correlation)}",
        citation="lp-duality-dual-polynomial",
    )
    Qspec = PatternSpec(k, m, M, RealFunction(m, v.values))
    if built:
        Q = build_pattern_tensor(Qspec, caps)
        A = build_pattern_tensor(spec, caps)
        l1q, corr = l1_norm(Q), inner_product(A, Q)
        st = VERIFIED_EXACT
    else:
        l1q, corr = Fraction(1), v.correlation
        st = VERIFIED_ANALYTIC
    ch.value("l1(Q)", l1q, f"||Q||_1 = {fmt(l1q)}", st, "pattern-normalization")
    ch.value("<A,Q>", corr, f"<A,Q> = <f,q> = {fmt(corr)}", st, "pattern-normalization")
    ch.value("one", 1, "1")
    norm_ok = ch.compare("l1(Q)", "=", "one", "Q is normalised")
    if is_inf(alpha):
        ch.derive("numerator", "mul", ["<A,Q>"], "<A,Q>, with A o Q >= 0 since q o f >= 0")
        num_steps = [norm_ok, dp]
    else:
        ch.value("alpha", alpha, f"alpha = {fmt(alpha)}")
        ch.value("alpha0", a0, f"alpha0 = {fmt(a0)}")
        ch.derive("numerator", "affine", ["<A,Q>"], "((1+alpha)<A,Q> + (1-alpha))/2",
                  scale=(1 + alpha) / 2, shift=(1 - alpha) / 2)
        ch.value("factor", (a0 - alpha) / (a0 + 1), "(alpha0 - alpha)/(alpha0 + 1)")
        s = ch.compare("numerator", ">=", "factor", "numerator >= (alpha0 - alpha)/(alpha0 + 1)")
        num_steps = [norm_ok, dp, s]
    p = 2 ** (k - 1)
    subject = "mu^inf(A)" if is_inf(alpha) else f"mu^{fmt(alpha)}(A)"
    if analytic:
        side = _side_condition(ch, k, m, M, d)
        ms = _degree_step(ch, k, d, [side, dp, norm_ok], convention)
        top = "numerator" if is_inf(alpha) else "factor"
        shown = (d - 1) if convention == "provable" else d
        ch.derive("bound", "div", [top, "mu*(Q) bound"], f"{top} * 2^({shown}/{p})")
        status = VERIFIED_ANALYTIC if convention == "provable" else ASSUMPTION
        ch.bound(subject, ">=", "bound", f"{subject} >= numerator / mu*(Q)",
                 requires=num_steps + [ms], status=status, citation="approximate-norm-duality")
        route = "analytic"
    else:
        msv = mu_star(Q, caps).value
        ch.value("mu*(Q)", msv, f"mu*(Q) = {fmt(msv)}", VERIFIED_ENUM, "cylinder-enumeration")
        if is_inf(alpha):
            ch.derive("bound", "div", ["numerator", "mu*(Q)"], "<A,Q>/mu*(Q)")
        else:
            ch.derive("exact numerator", "affine", ["<A,Q>"], "((1+alpha)<A,Q> + (1-alpha)||Q||_1)/2",
                      scale=(1 + alpha) / 2, shift=(1 - alpha) * l1q / 2)
            ch.derive("bound", "div", ["exact numerator", "mu*(Q)"], "numerator / mu*(Q)")
        ch.bound(subject, ">=", "bound", f"{subject} >= numerator / mu*(Q) with mu*(Q) exact",
                 requires=num_steps, status=VERIFIED_ENUM, citation="approximate-norm-duality")
        route = "enumeration"
    return BoundCertificate(
        "approximate degree to approximate norm",
        ch.steps,
        {"subject": subject, "relation": ">=", "quantity": "bound",
         "norm": "mu_inf" if is_inf(alpha) else "mu_alpha", "alpha": fmt(alpha)},
        {"k": k, "m": m, "M": M, "alpha": fmt(alpha), "alpha0": fmt(a0), "degree": d,
         "convention": convention, "route": route},
    )


# ---------------------------------------------------------------------------
# communication complexity


def _alpha_of(cert):
    a = cert.conclusion.get("alpha")
    return None if a is None else parse_alpha(a)


def cc_bounds(cert, eps=Fraction(1, 4), kind="randomized"):
    """Append a communication-complexity conversion to a norm certificate.

    ``randomized``:       2^(R_eps) >= mu^alpha / alpha_eps, needs alpha >= alpha_eps = 1/(1-2 eps)
    ``deterministic``:    2^D >= mu (any mu^alpha lower bound is also one on mu)
    ``nondeterministic``: 2^N >= (mu^inf - 1)/2
    """
    eps = frac(eps)
    if not 0 <= eps < Fraction(1, 2):
        raise ValidationError("eps must lie in [0, 1/2)")
    norm = cert.conclusion.get("norm")
    if cert.conclusion.get("relation") != ">=" or norm not in ("mu", "mu_alpha", "mu_inf"):
        raise ValidationError("cc_bounds needs a lower-bound certificate on mu, mu^alpha or mu^inf")
    ch = Chain(prefix="cc")
    ch.steps = list(cert.steps)
    ch.env = dict(cert.env)
    qname = cert.conclusion["quantity"]
    prem = [s for s in cert.steps if s.kind == "bound" and s.subject == cert.conclusion["subject"]][-1]
    subject_tail = cert.conclusion["subject"].split("(", 1)[-1].rstrip(" )")
    target = f"({subject_tail})"
    if kind == "randomized":
        alpha = _alpha_of(cert) if norm != "mu" else None
        if alpha is None:
            raise ValidationError("the randomized conversion needs a mu^alpha certificate")
        a_eps = 1 / (1 - 2 * eps)
        ch.value("alpha_eps", a_eps, f"alpha_eps = 1/(1-2 eps) = {fmt(a_eps)}")
        if is_inf(alpha):
            ok_step = ch.fact("recorded", {"holds": True}, True, "alpha = inf >= alpha_eps")
        else:
            ch.value("alpha_cc", alpha, f"alpha = {fmt(alpha)}")
            ok_step = ch.compare("alpha_cc", ">=", "alpha_eps", "alpha >= alpha_eps")
            if not ok_step.holds:
                raise ValidationError(f"alpha = {fmt(alpha)} < alpha_eps = {fmt(a_eps)}")
        ch.derive("2^R", "div", [qname, "alpha_eps"], "mu^alpha bound / alpha_eps")
        subj = f"R_{fmt(eps)}{target}"
        ch.bound(subj, ">=", "2^R", f"{subj} >= log2(mu^alpha) - log2(alpha_eps)",
                 requires=[prem, ok_step], citation="randomized-cc-conversion", log2=True)
        concl = {"subject": subj, "relation": ">=", "quantity": "2^R", "log2": True, "eps": fmt(eps)}
    elif kind == "deterministic":
        ch.derive("2^D", "mul", [qname], "mu bound (mu >= mu^alpha for every alpha)")
        subj = f"D{target}"
        ch.bound(subj, ">=", "2^D", f"{subj} >= log2(mu)", requires=[prem], citation="deterministic-cc-conversion", log2=True)
        concl = {"subject": subj, "relation": ">=", "quantity": "2^D", "log2": True}
    elif kind == "nondeterministic":
        if norm != "mu_inf":
            raise ValidationError("the nondeterministic conversion needs a mu^inf certificate")
        q = ch.env[qname]
        r = q.lower_rational()
        ch.value("mu_inf lower", r, f"rational r = {fmt(r)} <= mu^inf bound")
        s = ch.compare("mu_inf lower", "<=", qname, "r <= bound")
        ch.derive("2^N", "affine", ["mu_inf lower"], "(r - 1)/2", scale=Fraction(1, 2), shift=Fraction(-1, 2))
        subj = f"N{target}"
        ch.bound(subj, ">=", "2^N", f"{subj} >= log2((mu^inf - 1)/2)", requires=[prem, s],
                 citation="nondeterministic-cc-conversion", log2=True)
        concl = {"subject": subj, "relation": ">=", "quantity": "2^N", "log2": True}
    else:
        raise ValidationError(f"unknown conversion {kind!r}")
    concl["vacuous"] = ch.env[concl["quantity"]] <= 1
    params = dict(cert.parameters)
    params.update(eps=fmt(eps), conversion=kind)
    return BoundCertificate(cert.title + f" + {kind} conversion", ch.steps, concl, params, list(cert.notes))


def norm_certificate(subject_tensor_name, result, alpha=None):
    """Wrap an exact LP value as a certificate (for conversions of computed norms)."""
    ch = Chain()
    if alpha is None:
        norm, subj = "mu", f"mu({subject_tensor_name})"
    elif is_inf(parse_alpha(alpha)):
        norm, subj = "mu_inf", f"mu^inf({subject_tensor_name})"
    else:
        norm, subj = "mu_alpha", f"mu^{fmt(parse_alpha(alpha))}({subject_tensor_name})"
    ch.value("lp value", result.value, f"{subj} = {fmt(result.value)} by exact LP with re-verified duality",
             VERIFIED_EXACT, "exact-lp")
    ch.bound(subj, ">=", "lp value", f"{subj} >= its exact value", status=VERIFIED_EXACT, citation="exact-lp")
    concl = {"subject": subj, "relation": ">=", "quantity": "lp value", "norm": norm}
    if alpha is not None:
        concl["alpha"] = fmt(parse_alpha(alpha))
    return BoundCertificate("exact norm value", ch.steps, concl, {})


def partition_certificate(A, pieces):
    """mu(A) <= number of pieces, for a signed cover A = sum s_i chi(Z_i), s_i = +-1.

    This is the decomposition a deterministic protocol induces on its leaves;
    a c-bit protocol gives at most 2^c pieces.
    """
    from .cylinders import characteristic_tensor

    total = None
    for s, Z in pieces:
        if s not in (1, -1):
            raise ValidationError("partition signs must be +-1")
        if tuple(Z.shape) != tuple(A.shape):
            raise DimensionError("cylinder intersection shape differs from the tensor")
        t = characteristic_tensor(Z) * s
        total = t if total is None else total + t
    holds = total is not None and total == A
    ch = Chain()
    data = {
        "shape": list(A.shape),
        "target": [fmt(v) for v in A.entries],
        "pieces": [[s, [c.astype(int).ravel().tolist() for c in Z.cylinders]] for s, Z in pieces],
        "count": len(pieces),
    }
    fs = ch.fact("recompose", data, holds, f"A = sum of {len(pieces)} signed cylinder intersections")
    if not holds:
        raise ValidationError("the pieces do not reproduce the tensor")
    ch.value("pieces", len(pieces), f"{len(pieces)} pieces")
    ch.bound("mu(A)", "<=", "pieces", "mu(A) <= sum |coefficients|", requires=[fs],
             status=VERIFIED_EXACT, citation="protocol-partition")
    return BoundCertificate("partition upper bound", ch.steps,
                            {"subject": "mu(A)", "relation": "<=", "quantity": "pieces", "norm": "mu"}, {})


# ---------------------------------------------------------------------------
# disjointness and proof size


def disjointness_parameters(n, k):
    """(c_k, m, M, n', d) for the disjointness certificate, or None if m < 1.

    m is the largest integer with m^(k+1) (2 c_k)^(2(k-1)) <= n^2 and
    m M^(k-1) <= n, where M = ceil(c_k ceil(sqrt m)); d = ceil(sqrt(m/6)).
    """
    c_k = 5 * E_HAT * (k - 1) * 2 ** (2 ** (k - 1))
    base = (2 * c_k) ** (2 * (k - 1))
    lo, hi = 0, 1
    while hi ** (k + 1) * base <= n * n:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** (k + 1) * base <= n * n:
            lo = mid
        else:
            hi = mid
    m = lo

    def M_of(m):
        r = math.isqrt(m)
        if r * r < m:
            r += 1
        return math.ceil(c_k * r)

    while m >= 1 and m * M_of(m) ** (k - 1) > n:
        m -= 1
    if m < 1:
        return None
    M = M_of(m)
    d = math.isqrt(m // 6) if m >= 6 else 0
    while 6 * d * d < m:
        d += 1
    return c_k, m, M, m * M ** (k - 1), d


def _trivial(title, subject, params, note):
    ch = Chain()
    ch.value("zero bits", 1, "2^0")
    ch.bound(subject, ">=", "zero bits", f"{subject} >= 0", status=VERIFIED_EXACT, citation="trivial-bound", log2=True)
    return BoundCertificate(title, ch.steps, {"subject": subject, "relation": ">=", "quantity": "zero bits",
                                              "log2": True, "trivial": True, "vacuous": True}, params, [note])


def disjointness_bound(n, k, eps=Fraction(1, 4), convention="provable", prefix=""):
    """Lower bound on R_eps(DISJ_{k,n}) via an embedded pattern tensor of OR_m.

    Uses alpha0 = 3, for which deg_3(OR_m) >= sqrt(m/6) is an external result,
    and alpha = alpha_eps, which must stay below 3 (so eps < 1/3).
    """
    _check_convention(convention)
    if not isinstance(n, int) or not isinstance(k, int) or n < 1 or k < 2:
        raise ValidationError("need integers n >= 1 and k >= 2")
    eps = frac(eps)
    if not 0 <= eps < Fraction(1, 3):
        raise ValidationError("eps must lie in [0, 1/3) so that alpha_eps < alpha0 = 3")
    a0 = Fraction(3)
    alpha = 1 / (1 - 2 * eps)
    subject = f"R_{fmt(eps)}(DISJ_{k},{n})"
    params = {"n": n, "k": k, "eps": fmt(eps), "convention": convention}
    pars = disjointness_parameters(n, k)
    if pars is None:
        return _trivial("disjointness lower bound", subject, params, "n is too small for a pattern tensor (m < 1)")
    c_k, m, M, n_prime, d = pars
    params.update(m=m, M=M, n_prime=n_prime, d=d, c_k=fmt(c_k))
    ch = Chain(prefix=prefix)
    _e_upper_bound(ch)
    ch.value("n", n, f"n = {n}")
    ch.value("5(k-1)2^(2^(k-1))", 5 * (k - 1) * 2 ** (2 ** (k - 1)), f"5(k-1)2^(2^(k-1)) for k = {k}")
    ch.derive("c_k", "mul", ["e_hat", "5(k-1)2^(2^(k-1))"], "c_k = 5 e_hat (k-1) 2^(2^(k-1))")
    ch.value("d", d, f"d = ceil(sqrt(m/6)) = {d}")
    side = _side_condition(ch, k, m, M, d)
    ch.derive("M^(k-1)", "pow", ["M"], f"M^{k - 1}", power=k - 1)
    ch.derive("n'", "mul", ["m", "M^(k-1)"], "n' = m M^(k-1)")
    fits = ch.compare("n'", "<=", "n", "n' <= n")
    ch.value("6", 6, "6")
    ch.derive("6d^2", "mul", ["6", "d", "d"], "6 d^2")
    dsq = ch.compare("6d^2", ">=", "m", "d >= sqrt(m/6)")
    ns = ch.bound("deg_3(OR_m)", ">=", "d", "deg_3(OR_m) >= sqrt(m/6), hence >= d since the degree is an integer",
                  requires=[dsq], status=ASSUMPTION, citation="nisan-szegedy-or-degree")
    dp = ch.bound("dual witness", ">=", "d", "a normalised q orthogonal below degree d with <q,OR_m> >= 1/2 exists",
                  requires=[ns], citation="lp-duality-dual-polynomial")
    ms = _degree_step(ch, k, d, [side, dp], convention)
    ch.value("alpha", alpha, f"alpha = alpha_eps = {fmt(alpha)}")
    ch.value("alpha0", a0, "alpha0 = 3")
    ch.value("<A,Q> lower", (a0 - 1) / (a0 + 1), "<A,Q> >= (alpha0-1)/(alpha0+1)", VERIFIED_ANALYTIC,
             "pattern-normalization")
    ch.derive("numerator", "affine", ["<A,Q> lower"], "((1+alpha)<A,Q> + (1-alpha))/2",
              scale=(1 + alpha) / 2, shift=(1 - alpha) / 2)
    ch.derive("mu bound", "div", ["numerator", "mu*(Q) bound"], "numerator / mu*(Q) bound")
    st = VERIFIED_ANALYTIC if convention == "provable" else ASSUMPTION
    mb = ch.bound(f"mu^{fmt(alpha)}(A)", ">=", "mu bound", "degree theorem for the (k, M, OR_m) pattern tensor",
                  requires=[ms, dp], status=st, citation="approximate-norm-duality")
    ch.value("alpha_eps", alpha, f"alpha_eps = {fmt(alpha)}")
    ch.derive("2^R", "div", ["mu bound", "alpha_eps"], "mu^alpha bound / alpha_eps")
    rb = ch.bound(f"R_{fmt(eps)}(A)", ">=", "2^R", "randomized conversion with alpha = alpha_eps",
                  requires=[mb], citation="randomized-cc-conversion", log2=True)
    emb = ch.fact("recorded", {"holds": True, "n_prime": n_prime}, True,
                  "A_{k,M,OR_m} is a subtensor of -DISJ_{k,n'} via selector strings",
                  status=VERIFIED_ANALYTIC, citation="disjointness-embedding")
    ch.bound(subject, ">=", "2^R", f"{subject} >= R(A) because n' <= n", requires=[rb, fits, emb],
             citation="disjointness-embedding", log2=True)
    return BoundCertificate(
        "disjointness lower bound",
        ch.steps,
        {"subject": subject, "relation": ">=", "quantity": "2^R", "log2": True, "vacuous": ch.env["2^R"] <= 1},
        params,
    )


def _ceil_log2(n):
    return (n - 1).bit_length()


def proof_size_bound(n, k, convention="provable"):
    """Exponent of the size lower bound for Th(k-1) refutations.

    m = the largest integer with (2 m ceil(log2 n))^3 <= n^2, which is at most
    n^(2/3)/(2 log n); a lower bound on R(DISJ_{k,m}) is then substituted into
    exp(Omega((R / log n)^(1/3))).  The constant hidden in Omega is external.
    """
    if not isinstance(n, int) or not isinstance(k, int) or n < 2 or k < 2:
        raise ValidationError("need integers n >= 2 and k >= 2 (k constant)")
    L = _ceil_log2(n)
    lo, hi = 0, 1
    while (2 * hi * L) ** 3 <= n * n:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if (2 * mid * L) ** 3 <= n * n:
            lo = mid
        else:
            hi = mid
    m = lo
    subject = f"ln size(Th({k - 1}) refutation, n={n}) / Omega(1)"
    params = {"n": n, "k": k, "m": m, "log2n_ceil": L, "convention": convention}
    if m < 1:
        return _trivial("proof size bound", subject, params, "n too small: m < 1")
    disj = disjointness_bound(m, k, convention=convention, prefix="disj.")
    ch = Chain()
    ch.steps = list(disj.steps)
    ch.env = dict(disj.env)
    ch.value("L", L, f"ceil(log2 n) = {L}")
    ch.value("m_bps", m, f"m = {m}")
    ch.value("2 (size)", 2, "2")
    ch.value("n (proof)", n, f"n = {n}")
    ch.derive("2mL", "mul", ["2 (size)", "m_bps", "L"], "2 m ceil(log2 n)")
    ch.derive("(2mL)^3", "pow", ["2mL"], "(2 m ceil(log2 n))^3", power=3)
    ch.derive("n^2", "pow", ["n (proof)"], "n^2", power=2)
    mfit = ch.compare("(2mL)^3", "<=", "n^2", "m <= n^(2/3)/(2 ceil(log2 n))")
    q = disj.final
    if q <= 1:
        ch.value("R_lo", 0, f"R(DISJ_{k},{m}) >= 0 bits; the certified bound is vacuous")
        rs = ch.fact("recorded", {"holds": True}, True, "communication is nonnegative", citation="trivial-bound")
    else:
        R_lo = q.floor_log2_rational()
        ch.value("R_lo", R_lo, f"rational lower bound {fmt(R_lo)} on R(DISJ_{k},{m}) in bits")
        ch.value("2^(R_lo)", Quantity.pow2(R_lo), f"2^{fmt(R_lo)}")
        rs = ch.compare("2^(R_lo)", "<=", disj.conclusion["quantity"], "2^R_lo <= 2^R bound")
    ch.derive("R_lo/L", "div", ["R_lo", "L"], "R_lo / ceil(log2 n)")
    ch.derive("exponent", "root", ["R_lo/L"], "(R_lo / ceil(log2 n))^(1/3)", root=3)
    prem = [s for s in disj.steps if s.kind == "bound" and s.subject == disj.conclusion["subject"]][-1]
    ch.bound(subject, ">=", "exponent", "size >= exp(Omega((R(DISJ_{k,m}) / log n)^(1/3)))",
             requires=[prem, mfit, rs], status=ASSUMPTION, citation="proof-size-reduction")
    return BoundCertificate(
        "proof size bound",
        ch.steps,
        {"subject": subject, "relation": ">=", "quantity": "exponent", "positive": ch.env["exponent"] > 0},
        params,
        ["the constant in Omega comes from the reduction and is not computed"],
    )
