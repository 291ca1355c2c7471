"""
Decorated cycles and degeneration relations
===========================================

Cobordism-style cycle groups are free on symbols [Y -> X; L_1, ..., L_r]:
a smooth source mapping to a target, decorated with line bundle names.
Degenerations impose linear relations among these symbols.  This script
builds the double point relation, telescopes a blowup tower, and produces
the three kinds of quotient generators.
"""

from fglcalc import (
    FREE,
    DimWitness,
    SectWitness,
    SpaceLabel,
    TensorWitness,
    blowup_tower_relations,
    double_point_relation,
    log_backend,
    relation_generator,
    telescope_sum,
)
from fglcalc.cycles import BlowupStep, DoublePointDatum

X = SpaceLabel("X", 3)

# A family over a curve whose general fiber Yinf degenerates into two
# smooth pieces A and B crossing along D.  The relation trades the general
# fiber for the pieces plus a projective bundle over the crossing.
datum = DoublePointDatum(
    smooth_fiber=SpaceLabel("Yinf", 2),
    component_a=SpaceLabel("A", 2),
    component_b=SpaceLabel("B", 2),
    intersection=SpaceLabel("D", 1),
    projective_bundle=SpaceLabel("P(D)", 2),
    target=X,
)
print("double point relation:")
print(" ", double_point_relation(datum))
print()

# Blowing up along smooth centers is the basic instance.  Chaining three
# blowups Y0 <- Y1 <- Y2 <- Y3 and summing the relations telescopes: the
# interior stages cancel and only Y0, Y3 and the exceptional bookkeeping
# remain.
steps = [
    BlowupStep(
        SpaceLabel(f"Y{i}", 3), SpaceLabel(f"Y{i+1}", 3),
        SpaceLabel(f"E{i}", 3), SpaceLabel(f"P{i}", 3),
    )
    for i in range(3)
]
for rel in blowup_tower_relations(steps, X):
    print("tower relation:", rel)
print("telescoped:", telescope_sum(steps, X))
print()

# Quotient generator 1: more bundles pulled back from a curve than the
# curve has dimensions. The class is declared zero, so the generator is
# the class itself.
dim_gen = relation_generator(
    "dim",
    DimWitness(SpaceLabel("Y", 3), X, SpaceLabel("C", 1), ("P1", "P2"), ("M",)),
)
print("dim generator: ", dim_gen)

# Quotient generator 2: a section of the last bundle cuts out its zero
# locus, and the class descends to it with the bundle removed.
sect_gen = relation_generator(
    "sect",
    SectWitness(SpaceLabel("Y", 3), X, SpaceLabel("Z", 2), ("L1", "L2")),
)
print("sect generator:", sect_gen)

# Quotient generator 3: a tensor product decoration expands through the
# group law, with one cycle per monomial in copies of L and M.  Over the
# free backend the coefficients are the universal a(i,j); terms needing
# more bundles than dim Y are dropped.
fgl_gen = relation_generator(
    "fgl",
    TensorWitness(SpaceLabel("Y", 2), X, (), "L", "M", "LM"),
    FREE,
)
print("fgl generator (free):", fgl_gen)

# The same generator over a logarithm backend specializes the a(i,j).
fgl_log = relation_generator(
    "fgl",
    TensorWitness(SpaceLabel("Y", 2), X, (), "L", "M", "LM"),
    log_backend(3),
)
print("fgl generator (log): ", fgl_log)
