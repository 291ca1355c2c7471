"""
Divisor classes on simple normal crossing configurations
========================================================

A configuration records components D_1, ..., D_r inside an ambient space
and which subsets meet (the faces).  A divisor D = sum n_i D_i gets a
class on every face: plug the face's own chern symbols into the series
F^{(n_1,...,n_r)} and truncate at the face dimension.  This script builds
the standard small examples, multiplies two divisors, and runs the
structural identities that make the calculus consistent.
"""

from fglcalc import (
    FREE,
    ChernPolynomial,
    FaceClassVector,
    FormalGroupLaw,
    SncComponent,
    SncConfiguration,
    check_properties,
    divisor_class,
    log_backend,
    normal_form,
    product_class,
    restrict_to_component,
    validate_config,
)

# Two surfaces crossing inside a surface germ: components D1, D2, faces
# {1}, {2}, and the double point {1,2}.
pair = SncConfiguration(
    ambient_dim=2,
    components=(SncComponent("D1"), SncComponent("D2")),
    faces=[[1], [2], [1, 2]],
)
print("violations in the double point configuration:", validate_config(pair))

law = FormalGroupLaw(FREE, order=2)

# The reduced divisor D1 + D2.  Each single face carries the class 1; the
# crossing carries the first group-law coefficient.
vec = divisor_class(pair, (1, 1), law)
print("class of D1 + D2:")
for face, cp in vec.items():
    print(f"  {sorted(face)}: {cp}")
print()

# A single component with multiplicity two: the class picks up a chern
# symbol through [2]u = 2u + A(1,1)u^2 + ...
single = SncConfiguration(2, (SncComponent("D1"),), [[1]])
vec2 = divisor_class(single, (2,), law)
print("class of 2*D1:", dict((tuple(sorted(J)), str(c)) for J, c in vec2.items()))
print()

# Products land one dimension lower.  D1 * (D1 + D2) spreads over the
# faces that support both factors.
prod = product_class(pair, (1, 0), (1, 1), law)
print("class of D1 * (D1 + D2):")
for face, cp in prod.items():
    print(f"  {sorted(face)}: {cp}")
print()

# The normal form pushes stray chern symbols into deeper faces: c_2 living
# on face {1} really describes the geometry of the face {1, 2}.  On a
# threefold the moved class survives with one power of c_2 divided out.
threefold = SncConfiguration(
    3, (SncComponent("D1"), SncComponent("D2")), [[1], [2], [1, 2]]
)
stray = FaceClassVector(
    threefold,
    {frozenset({1}): ChernPolynomial(2, 2, FREE, {(0, 1): 1})},
)
print("a stray c2 on face {1} of a threefold:", stray)
print("its normal form:", normal_form(stray))
print()

# Restricting to one component produces the configuration its neighbours
# cut out on it, one dimension down.
three = SncConfiguration(
    3,
    (SncComponent("D1"), SncComponent("D2"), SncComponent("D3")),
    [[1], [2], [3], [1, 2], [1, 3]],
)
sub, sub_mults = restrict_to_component(three, 1, (0, 1, 2))
print("restriction of the 3-component configuration to D1:")
print("  components:", [c.name for c in sub.components])
print("  faces:", [sorted(f) for f in sub.sorted_faces()])
print("  multiplicities carried along:", sub_mults)
print()

# The three structural identities, evaluated for a sample divisor pair on
# a logarithmic backend: symmetry of the product, compatibility with
# restriction, and agreement of the product with the divisor operator.
report = check_properties(pair, (0, 1), (1, 0), FormalGroupLaw(log_backend(2), 3))
print("structural identities:", report)
