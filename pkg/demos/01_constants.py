"""Where the unit circle's numbers come from.

Pairs (m, n) with m, n >= 2 are listed by the size of 2^m 5^n.  Each pair
adds four edges to the unit circle, with lengths (1, m, mn, n) / (2^m 5^n).
"""

from fractions import Fraction

from jnorm.constants import (
    a_closed,
    coefficient_a,
    enumerate_pairs,
    gradient_seq,
    partial_sum_a,
    tail_sum_a,
    validate_params,
)

params = validate_params(2, 5)
print(f"total edge length a = {params.a}, weighted total b = {params.b}")
print(f"(2, 3) is refused: a(2, 3) = {a_closed(2, 3)} is not below 1\n")

print(" i   (m, n)        key   a_{4i+1..4i+4}")
for i, (m, n, key) in enumerate(enumerate_pairs(params, 8)):
    blk = ", ".join(str(coefficient_a(params, 4 * i + j)) for j in range(1, 5))
    print(f"{i:2d}   ({m}, {n})  {key:>9d}   {blk}")

# the gradients b_k decrease strictly, one stage per pair
grad = gradient_seq(params)
print("\nfirst gradients:", ", ".join(str(grad[k]) for k in range(1, 9)))
st = grad.stage(0)
print(f"stage 0 settled after {st.halvings} halvings, delta = {st.delta}")

for terms in (40, 200, 800):
    s = partial_sum_a(params, terms)
    gap = params.a - s
    print(f"sum of first {terms:3d} a_k falls short of a by {float(gap):.3e}")
assert partial_sum_a(params, 200) + tail_sum_a(params, 50) == params.a
print("partial sum + exact tail == a:", Fraction(13, 40) == params.a)
