"""
Cylinder intersection norms on small tensors
============================================

Every number printed here is an exact rational, the optimum of a linear
program over all cylinder intersections of the given shape.
"""
from fractions import Fraction

import numpy as np

from nofbounds.cylinders import enumerate_basis, mu_star
from nofbounds.norms import disc, mu, mu_alpha_dual, mu_alpha_primal, mu_pm
from nofbounds.rational import INF, fmt
from nofbounds.tensors import ones, random_sign, sylvester

# The basis: all distinct nonzero 0/1 tensors that are cylinder intersections.
# For a matrix these are the combinatorial rectangles.
for shape in [(2, 2), (3, 3), (2, 2, 2)]:
    print(f"shape {shape}: {len(enumerate_basis(shape))} cylinder intersections")

# The all-ones tensor is itself a cylinder intersection.
print("mu(J) =", fmt(mu(ones((2, 2))).value))

# A Sylvester-Hadamard matrix needs far more weight.
H = sylvester(4)
print("H4 =")
print(H.array.astype(int))
print("mu(H4) =", fmt(mu(H).value), "  mu_pm(H4) =", fmt(mu_pm(H).value))

#%%
# Approximate norms shrink as alpha grows.
for alpha in (1, 2, 3, INF):
    p = mu_alpha_primal(H, alpha).value
    d = mu_alpha_dual(H, alpha).value
    print(f"alpha = {fmt(alpha):>3}: primal {fmt(p):>6}  dual {fmt(d):>6}")

# Discrepancy is the reciprocal of mu^inf.
dv = disc(H).value
print("disc(H4) =", fmt(dv), " times mu^inf =", fmt(dv * mu_alpha_primal(H, INF).value))

#%%
# The dual witness of mu(B) certifies the value: mu*(Q) <= 1 and <B,Q> = mu(B).
rng = np.random.default_rng(0)
A = random_sign((2, 2, 2), rng)
res = mu(A)
Q = res.witness
print("random 2x2x2 sign tensor: mu =", fmt(res.value))
print("  mu*(witness) =", fmt(mu_star(Q).value))
print("  <A, witness> =", fmt(sum((a * q for a, q in zip(A.entries, Q.entries)), Fraction(0))))
