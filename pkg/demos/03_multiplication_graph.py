"""Reading products off the unit circle.

On the sphere of radius r = 2^m 5^n the edges next to the block for (m, n)
have lengths 1, m, mn, n and then something below 1.  A Hamiltonian path
with that shape exists exactly when z = xy.
"""

from jnorm.predicates import (
    depth_for,
    mgi_oracle_triples,
    mgi_witness,
    mult_graph_holds,
)

for m, n in [(2, 2), (2, 3), (3, 4), (7, 5)]:
    cert = mgi_witness(m, n, m * n)
    lengths = ", ".join(str(x) for x in cert.lengths)
    print(f"MGI({m},{n},{m * n}): radius {cert.r}, path {' '.join(map(str, cert.nodes))}")
    print(f"    edge lengths {lengths}")

print("\nMGI(2,2,5):", mgi_witness(2, 2, 5))

# M shifts by two so that 0 and 1 are covered as well
print("\nM(x, y, z) for x, y in 0..4, listing z:")
for x in range(5):
    row = [next(z for z in range(30) if mult_graph_holds(x, y, z)) for y in range(5)]
    print("   ", row)

found = mgi_oracle_triples(depth_for(6))
print(f"\nsearching all runs up to depth {depth_for(6)} finds {len(found)} triples;")
print("every one is a product:", all(x * y == z for (x, y, z) in found))
