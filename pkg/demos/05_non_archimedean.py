"""Over Q(e) the corner at v_inf disappears.

With an infinitesimal e available, points v_inf - e*e1 sit on the flat top
edge of the disc: they are closer to v_inf than any chain vertex.  So
v_inf is no longer an extreme point, while over Q it is one.
"""

from fractions import Fraction

from jnorm.field import EPS, QQ_EPS, RatFunc, standard_part
from jnorm.geometry import Vec2, get_space

q_space = get_space()
e_space = get_space(field=QQ_EPS)
lim = q_space.vertices.limit
one = RatFunc.const(1)

p = Vec2(lim.x - EPS, one)
print("v_inf - e*e1 =", p.x, ",", p.y)
print("  in the disc over Q(e):", e_space.disc_contains(p))
print("  norm:", e_space.norm(p), " standard part:", standard_part(e_space.norm(p)))

far = Vec2(RatFunc.const(lim.x - Fraction(1, 1000)), one)
print("v_inf - e1/1000 in the disc:", e_space.disc_contains(far))

print("\nv_inf extreme over Q:   ", q_space.extreme_classify(1, lim).is_extreme)
lifted = Vec2(RatFunc.const(lim.x), one)
print("v_inf extreme over Q(e):", e_space.extreme_classify(1, lifted).is_extreme)

print("\nthe chain vertices are still extreme:")
for k in (1, 10, 100):
    v = q_space.vertices[k]
    print(f"  v{k}:", e_space.extreme_classify(1, Vec2(RatFunc.const(v.x), RatFunc.const(v.y))).is_extreme)
