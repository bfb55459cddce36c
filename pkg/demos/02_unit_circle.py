"""A walk around the unit circle of J.

Starting from v_0 = -e1, the vertices climb towards v_inf = (a - b - 1, 1).
Beyond them the circle runs flat along y = 1 to e2 and then down to e1.
"""

from jnorm.geometry import E1, E2, Vec2, get_space

sp = get_space()
vs = sp.vertices

for k in range(6):
    v = vs[k]
    print(f"v{k} = ({float(v.x):+.6f}, {float(v.y):+.6f})  norm {sp.norm(v)}")
print(f"v_inf = {vs.limit.x}, {vs.limit.y}")

print("\nedge k has length a_k:")
for k in range(1, 6):
    print(f"  |v{k + 1} - v{k}| = {sp.norm(vs[k + 1] - vs[k])}")

print("\nwhich face does each ray meet?")
for name, v in [("(1,1)", Vec2(1, 1)), ("v_inf", vs.limit), ("e2 - e1", E2 - E1), ("v1 + v2", vs[1] + vs[2])]:
    facet, case = sp.classify_ray(v)
    print(f"  {name:8s} -> {facet} (case {case}), norm {sp.norm(v)}")

print("\n|e2 - e1| > 1, so e2 - e1 lies outside the disc:", sp.norm(E2 - E1) > 1)
print("the 1-norm and this norm agree on the first quadrant:", sp.norm(E1 + E2) == 2)
