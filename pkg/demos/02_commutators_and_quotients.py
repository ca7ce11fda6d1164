"""
Commutators and quotient maps
=============================

The derived subgroup of the Basilica group is generated by the three
commutators [a,b], [a,b^-1], [a,b^2]; modulo the second derived subgroup
they are a Z^3 basis.  The group abelianizes onto Z^2 by exponent sums and
maps onto the discrete Heisenberg group by killing the third lower-central
term.
"""

from basilica import basilica, equals
from basilica.structure import (
    LIFT_SUBSTITUTION,
    ab_image,
    alpha,
    bprime_coords,
    commutator,
    heis_image,
    lift_section,
    tau,
)

B = basilica()
a, b = B.generators()

# the commutators alpha(s,t) = [a^s, b^t] and their section identities
print("[a,b] =", alpha(1, 1), "with sections", alpha(1, 1).section(0), alpha(1, 1).section(1))
print("[a,b^2] sections:", alpha(1, 2).section(0), alpha(1, 2).section(1))

# every alpha(s,t) rewrites over the three basic ones; an odd-exponent case:
s, t = 3, 1
rhs = (alpha(1, 1) * (alpha(1, -1).inverse() * alpha(1, 1)) ** t) ** s
print(f"alpha({s},{2 * t + 1}) rewrites:", equals(alpha(s, 2 * t + 1), rhs))

# exponent sums: the abelianization onto Z^2
print("ab_image(ab) =", ab_image(a * b))
print("ab_image([a^4,b^3]) =", ab_image(alpha(4, 3)))

# presentation relators die in the group and in every quotient
word = tau(3)
print("tau(3) trivial:", word.is_trivial())
print("after one substitution step:", word.substitute(LIFT_SUBSTITUTION).is_trivial())

# the Heisenberg quotient: a -> (1,0,0), b -> (0,1,0), c = [a,b] central
c = commutator(a, b)
print("heis([a,b]) =", heis_image(c))
print("heis([[a,b],b]) is identity:", heis_image(commutator(c, b)).is_identity())

# Z^3 coordinates on the derived subgroup modulo the second derived subgroup
g = alpha(1, 1) ** 2 * alpha(1, -1) ** -1 * alpha(1, 2) ** 3
print("coordinates of [a,b]^2 [a,b^-1]^-1 [a,b^2]^3:", bprime_coords(g))

# rigid-stabilizer lifts: restore a derived-subgroup element below one
# vertex, trivially elsewhere on its level
lifted = lift_section(c, "01")
print("lift of [a,b] to vertex 01:", lifted)
for vertex in ("00", "01", "10", "11"):
    sec = lifted.section_at_vertex(vertex)
    print(f"  section at {vertex}:", "equals [a,b]" if equals(sec, c) else str(sec))
