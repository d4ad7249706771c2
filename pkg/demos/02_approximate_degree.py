"""
Approximate degree of OR and its dual witnesses
================================================

alpha_d(f) is the best approximation ratio achievable by a degree-d
polynomial sign-consistent with f.  It is computed exactly, and so is the
dual witness showing that degree d - 1 is not enough.
"""
from nofbounds.approxdeg import alpha_d, deg_alpha, dual_polynomial, verify_dual_polynomial
from nofbounds.boolfun import OR, RealFunction, fourier_transform
from nofbounds.rational import INF, fmt

print("alpha_d(OR_m) for d = 0..m")
for m in range(1, 5):
    row = [fmt(alpha_d(OR(m), d).value) for d in range(m + 1)]
    print(f"  m = {m}: " + "  ".join(f"{v:>5}" for v in row))

# Reading the table by columns gives the approximate degree.
for alpha in (2, 3, INF):
    degs = [deg_alpha(OR(m), alpha) for m in range(1, 5)]
    print(f"deg_{fmt(alpha)}(OR_m), m = 1..4:", degs)

#%%
# A dual polynomial for OR_4 at alpha = 3.  It has unit l1 norm, no Fourier
# weight on small sets, and correlates with OR_4 beyond (alpha-1)/(alpha+1).
f = OR(4)
v = dual_polynomial(f, 3)
rep = verify_dual_polynomial(v, f, 3)
print("vanishing degree", v.vanishing_degree, " correlation", fmt(v.correlation), " threshold", fmt(rep.threshold))
spec = fourier_transform(RealFunction(4, v.values))
low = [fmt(c) for S, c in enumerate(spec.coefficients) if bin(S).count("1") <= v.vanishing_degree]
print("Fourier coefficients on sets of size <=", v.vanishing_degree, ":", low)
print("all checks pass:", rep.ok)
