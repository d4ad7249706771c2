"""
Checkable lower-bound certificates
==================================

Each certificate is a list of steps with exact stored values.  The checker
re-validates it from the JSON alone, without solving any LP.
"""
import json

from nofbounds.boolfun import OR
from nofbounds.certificate import certificate_from_json, check_certificate
from nofbounds.certify import cc_bounds, degree_to_mu_alpha, disjointness_bound, hadamard_bound, proof_size_bound
from nofbounds.tensors import sylvester

cert = hadamard_bound(sylvester(8))
print(cert.render())
print()

# A lower bound on mu^inf turns into a randomized communication bound.
print(cc_bounds(cert).render().splitlines()[-2])
print()

#%%
# The degree route: deg_3(OR_1) = 1 gives a bound on mu^2 of the pattern tensor.
cert = degree_to_mu_alpha(OR(1), 2, 44, 2, 3)
print(cert.render())
print()

#%%
# Disjointness.  The bound is vacuous for small n and grows like n^(1/(k+1)).
for n in (10**4, 10**6, 10**9, 10**12):
    c = disjointness_bound(n, 2)
    p = c.parameters
    print(f"n = {n:>14}: m = {p.get('m', '-')}, M = {p.get('M', '-')}, R >= {float(c.lower_bits):.3g} bits")

text = json.dumps(disjointness_bound(10**9, 2).to_json())
rep = check_certificate(json.loads(text))
print("re-checked from JSON:", rep.ok, rep.counts)
print("round trip:", certificate_from_json(json.loads(text)).final)

#%%
for j in (40, 60, 80):
    c = proof_size_bound(2**j, 2)
    print(f"n = 2^{j}: refutation size >= exp(Omega({float(c.final.lower_rational()):.3g}))")
