"""
Pattern tensors and the embedding into disjointness
====================================================

A pattern tensor feeds an inner function phi with one bit picked from each
block of x; the other players' inputs choose which bit.
"""
from nofbounds.boolfun import OR
from nofbounds.pattern import (
    PatternSpec,
    build_pattern_tensor,
    degenerate_cube_stats,
    embed_into_disj,
    uniform_coverage_check,
)
from nofbounds.rational import fmt

# With one block, two players and M = 2 the tensor is just "read bit y of x".
A = build_pattern_tensor(PatternSpec(2, 1, 2, OR(1)))
print(A.array.astype(int))

for k, m, M in [(2, 1, 2), (2, 2, 2), (3, 1, 2)]:
    spec = PatternSpec(k, m, M, OR(m))
    cov = uniform_coverage_check(spec)
    emb = embed_into_disj(spec)
    print(f"(k, m, M) = {(k, m, M)}: shape {spec.shape}, each z fed {cov.expected} times, "
          f"embedding into -DISJ on {emb.n_prime} bits: {'ok' if emb.ok else 'FAILED'}")

#%%
# Two random index tuples collide in position i with probability
# 1 - (1 - 1/M)^(k-1); the number of colliding positions is binomial.
st = degenerate_cube_stats(2, 4, 2, enumerate=True)
print("k=2, M=4, m=2:  P[g] =", [fmt(p) for p in st.distribution], " enumeration agrees:", st.matches)
print("union-bound tail:     ", [fmt(b) for b in st.tail_bounds], " dominates:", st.tail_ok)
