"""Command-line front end.  Every verb reads JSON or flags and writes JSON.

Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 a size cap was
hit, 4 a side condition of a bound does not hold.
"""
import argparse
import json
import sys

from . import approxdeg, certify, cylinders, norms, pattern
from .boolfun import builtin, function_from_json
from .caps import DEFAULT_CAPS
from .certificate import check_certificate
from .errors import CapacityError, ConditionViolated, ValidationError
from .rational import fmt, parse_alpha
from .tensors import RationalTensor, SignTensor, sylvester

EXIT_FAILED = 1
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3
EXIT_CONDITION = 4


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc


def _tensor(args, caps):
    if getattr(args, "sylvester", None):
        return sylvester(args.sylvester)
    if not args.tensor:
        raise ValidationError("--tensor is required")
    return RationalTensor.from_json(_load_json(args.tensor), caps=caps)


def _sign_tensor(args, caps):
    t = _tensor(args, caps)
    if not t.is_sign():
        raise ValidationError("this verb needs a sign tensor (entries +-1)")
    return SignTensor(t)


def _function(args, caps):
    if args.function:
        return function_from_json(_load_json(args.function), caps)
    if args.fn:
        return builtin(args.fn, m=args.m, caps=caps)
    raise ValidationError("give --fn NAME --m M or --function FILE")


def _caps(args):
    kw = {}
    for flag, field in (
        ("max_tensor_size", "tensor_size"),
        ("max_search", "search"),
        ("max_basis", "basis_enumeration"),
        ("max_lp_cells", "lp_cells"),
        ("max_arity", "approxdeg_arity"),
    ):
        v = getattr(args, flag, None)
        if v is not None:
            if v < 1:
                raise ValidationError(f"--{flag.replace('_', '-')} must be positive")
            kw[field] = v
    return DEFAULT_CAPS.with_(**kw)


# ---------------------------------------------------------------------------
# verbs; each returns (json result, one-line summary, ok flag)


def cmd_norm(args, caps):
    B = _tensor(args, caps)
    res = norms.mu_pm(B, caps) if args.pm else norms.mu(B, caps)
    name = "mu_pm" if args.pm else "mu"
    return res.to_json(), f"{name} = {fmt(res.value)}", True


def cmd_mu_alpha(args, caps):
    A = _sign_tensor(args, caps)
    alpha = parse_alpha(args.alpha)
    out = {"alpha": fmt(alpha)}
    if args.method in ("primal", "both"):
        out["primal"] = norms.mu_alpha_primal(A, alpha, caps).to_json()
    if args.method in ("dual", "both"):
        out["dual"] = norms.mu_alpha_dual(A, alpha, caps).to_json()
    values = {r["value"] for k, r in out.items() if k != "alpha"}
    ok = len(values) == 1
    out["value"] = values.pop() if ok else None
    return out, f"mu^{fmt(alpha)} = {out['value']}" if ok else "primal and dual disagree", ok


def cmd_disc(args, caps):
    A = _sign_tensor(args, caps)
    if args.distribution:
        P = RationalTensor.from_json(_load_json(args.distribution), caps=caps)
        v = norms.disc_P(A, P, caps)
        return {"disc_P": fmt(v)}, f"disc_P = {fmt(v)}", True
    res = norms.disc(A, caps, cross_check=args.cross_check)
    return res.to_json(), f"disc = {fmt(res.value)}", True


def cmd_mu_star(args, caps):
    Q = _tensor(args, caps)
    res = cylinders.mu_star(Q, caps)
    out = {"value": fmt(res.value), "witness": res.witness.to_json(), "evaluations": res.evaluations}
    return out, f"mu* = {fmt(res.value)}", True


def cmd_adeg(args, caps):
    f = _function(args, caps)
    if args.d is not None:
        res = approxdeg.alpha_d(f, args.d, caps)
        return res.to_json(), f"alpha_{args.d} = {fmt(res.value)}", True
    if args.alpha is None:
        raise ValidationError("give --alpha (degree) or --d (alpha_d)")
    res = approxdeg.deg_alpha(f, args.alpha, caps, detail=True)
    return res.to_json(), f"deg_{fmt(res.alpha)} = {res.degree}", True


def cmd_dualpoly(args, caps):
    f = _function(args, caps)
    v = approxdeg.dual_polynomial(f, args.alpha, caps)
    rep = approxdeg.verify_dual_polynomial(v, f, args.alpha)
    return {"dual_polynomial": v.to_json(), "report": rep.to_json()}, \
        f"witness vanishing up to degree {v.vanishing_degree}, correlation {fmt(v.correlation)}", rep.ok


def _pattern_spec(args, caps):
    if args.spec:
        return pattern.PatternSpec.from_json(_load_json(args.spec), caps)
    return pattern.PatternSpec(args.k, _function(args, caps).m, args.M, _function(args, caps))


def cmd_pattern(args, caps):
    if args.certify:
        f = _function(args, caps)
        cert = certify.degree_to_mu_alpha(f, args.k, args.M, args.alpha, args.alpha0, args.convention, caps)
        return cert.to_json(), cert.render().splitlines()[-2].strip(), True
    spec = _pattern_spec(args, caps)
    A = pattern.build_pattern_tensor(spec, caps)
    cov = pattern.uniform_coverage_check(spec, caps)
    stats = pattern.degenerate_cube_stats(spec.k, spec.M, spec.m, caps)
    out = {
        "spec": spec.to_json(),
        "shape": list(spec.shape),
        "size": spec.size,
        "tensor": A.to_json(),
        "coverage": cov.to_json(),
        "degenerate_cubes": stats.to_json(),
    }
    return out, f"pattern tensor of shape {tuple(spec.shape)}, coverage {'uniform' if cov.ok else 'NOT uniform'}", cov.ok


def cmd_embed_disj(args, caps):
    from .boolfun import OR

    m = args.m
    spec = pattern.PatternSpec(args.k, m, args.M, OR(m, caps))
    rep = pattern.embed_into_disj(spec, caps)
    return rep.to_json(), f"embedding into -DISJ_{args.k},{rep.n_prime}: {'ok' if rep.ok else 'FAILED'}", rep.ok


def cmd_hadamard(args, caps):
    H = _tensor(args, caps)
    flag = certify.is_hadamard(H)
    out = {"is_hadamard": flag}
    if flag:
        cert = certify.hadamard_bound(H, caps)
        out["certificate"] = cert.to_json()
        return out, f"Hadamard; mu^inf >= {cert.final}", True
    return out, "not a Hadamard tensor", True


def cmd_contraction_check(args, caps):
    B = _tensor(args, caps)
    cert = certify.contraction_chain_check(B, caps)
    return cert.to_json(), "contraction chain " + ("holds" if cert.ok else "FAILS"), cert.ok


def cmd_certify_disj(args, caps):
    cert = certify.disjointness_bound(args.n, args.k, args.eps, args.convention)
    return cert.to_json(), f"R_{args.eps}(DISJ_{args.k},{args.n}) >= {fmt(cert.lower_bits)} bits", True


def cmd_proof_size(args, caps):
    cert = certify.proof_size_bound(args.n, args.k, args.convention)
    return cert.to_json(), f"refutation size >= exp(Omega({cert.final}))", True


def cmd_check(args, caps):
    rep = check_certificate(_load_json(args.certificate))
    summary = "certificate valid" if rep.ok else f"certificate INVALID ({len(rep.problems)} problems)"
    return rep.to_json(), summary, rep.ok


def _add_tensor(p, sylv=False):
    p.add_argument("--tensor", help="tensor JSON file")
    if sylv:
        p.add_argument("--sylvester", type=int, help="use the N x N Sylvester matrix instead")


def _add_function(p):
    p.add_argument("--fn", help="built-in function name (OR, AND, XOR, MAJ)")
    p.add_argument("--m", type=int, help="arity of the built-in")
    p.add_argument("--function", help="function JSON file")


def build_parser():
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--out", help="write the JSON result here instead of stdout")
    common.add_argument("--max-tensor-size", type=int)
    common.add_argument("--max-search", type=int, help="cap on mu* candidate evaluations")
    common.add_argument("--max-basis", type=int)
    common.add_argument("--max-lp-cells", type=int)
    common.add_argument("--max-arity", type=int)
    parser = argparse.ArgumentParser(prog="nofbounds", description=__doc__.splitlines()[0], allow_abbrev=False)
    subparsers = parser.add_subparsers(dest="verb", required=True)

    class _Sub:
        def add_parser(self, name, **kw):
            return subparsers.add_parser(name, parents=[common], allow_abbrev=False, **kw)

    sub = _Sub()

    p = sub.add_parser("norm", help="cylinder intersection norm mu (or mu_pm)")
    _add_tensor(p, True)
    p.add_argument("--pm", action="store_true", help="use +-1 cylinder tensors")
    p.set_defaults(run=cmd_norm)

    p = sub.add_parser("mu-alpha", help="approximate norm mu^alpha")
    _add_tensor(p, True)
    p.add_argument("--alpha", required=True, help="rational >= 1 or inf")
    p.add_argument("--method", choices=("primal", "dual", "both"), default="both")
    p.set_defaults(run=cmd_mu_alpha)

    p = sub.add_parser("disc", help="discrepancy")
    _add_tensor(p, True)
    p.add_argument("--distribution", help="distribution JSON; omit to minimise over all")
    p.add_argument("--cross-check", action="store_true", help="assert disc * mu^inf = 1")
    p.set_defaults(run=cmd_disc)

    p = sub.add_parser("mu-star", help="dual norm mu*")
    _add_tensor(p, True)
    p.set_defaults(run=cmd_mu_star)

    p = sub.add_parser("adeg", help="approximate degree")
    _add_function(p)
    p.add_argument("--alpha", help="rational >= 1 or inf")
    p.add_argument("--d", type=int, help="report alpha_d instead of the degree")
    p.set_defaults(run=cmd_adeg)

    p = sub.add_parser("dualpoly", help="dual polynomial witness")
    _add_function(p)
    p.add_argument("--alpha", required=True)
    p.set_defaults(run=cmd_dualpoly)

    p = sub.add_parser("pattern", help="pattern tensor, or a degree-based certificate with --certify")
    _add_function(p)
    p.add_argument("--spec", help="pattern spec JSON file")
    p.add_argument("--k", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--certify", action="store_true")
    p.add_argument("--alpha", default="inf")
    p.add_argument("--alpha0")
    p.add_argument("--convention", choices=certify.CONVENTIONS, default="provable")
    p.set_defaults(run=cmd_pattern)

    p = sub.add_parser("embed-disj", help="check the OR pattern tensor inside -DISJ")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.set_defaults(run=cmd_embed_disj)

    p = sub.add_parser("hadamard", help="Hadamard test and norm certificate")
    _add_tensor(p, True)
    p.set_defaults(run=cmd_hadamard)

    p = sub.add_parser("contraction-check", help="verify the contraction chain on a tensor")
    _add_tensor(p, True)
    p.set_defaults(run=cmd_contraction_check)

    p = sub.add_parser("certify-disj", help="lower-bound certificate for disjointness")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", default="1/4")
    p.add_argument("--convention", choices=certify.CONVENTIONS, default="provable")
    p.set_defaults(run=cmd_certify_disj)

    p = sub.add_parser("proof-size", help="refutation-size exponent")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--convention", choices=certify.CONVENTIONS, default="provable")
    p.set_defaults(run=cmd_proof_size)

    p = sub.add_parser("check", help="re-validate a certificate file")
    p.add_argument("certificate")
    p.set_defaults(run=cmd_check)
    return parser


def _validate(args):
    for name in ("k", "M", "n", "m", "d", "sylvester"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise ValidationError(f"--{name} must be nonnegative")
    if getattr(args, "alpha", None) is not None:
        parse_alpha(args.alpha)
    if args.verb == "pattern" and not args.spec and (args.k is None or args.M is None):
        raise ValidationError("pattern needs --k and --M (or --spec)")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        _validate(args)
        caps = _caps(args)
        result, summary, ok = args.run(args, caps)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ConditionViolated as exc:
        print(f"condition violated: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    text = json.dumps(result, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(summary, file=sys.stderr)
    return 0 if ok else EXIT_FAILED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
