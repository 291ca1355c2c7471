"""
Formal group laws over graded coefficient rings
===============================================

A formal group law is a two-variable series F(u, v) = u + v + higher terms
that behaves like an abstract addition rule.  This walk-through builds the
universal law, its inverse, the multiplication-by-n series, and the
support decomposition of a multi-variable combination.  Everything is
exact: coefficients are polynomials with rational coefficients, never
floats.
"""

from fglcalc import (
    FREE,
    MULTIPLICATIVE,
    FormalGroupLaw,
    TruncatedSeries,
    log_backend,
    support_decompose,
)

# The free backend imposes nothing beyond symmetry a(i,j) = a(j,i), so its
# law is the universal one.  Truncation order 4 keeps the printout short.
law = FormalGroupLaw(FREE, order=4)
print("universal law, order 4:")
print(" ", law.series)
print()

# The formal inverse chi solves F(u, chi(u)) = 0.  Its coefficients are
# forced order by order; no choice is involved.
print("formal inverse:")
print(" ", law.inverse())
print()

# Two distinguished specializations.  The additive law is plain addition;
# the multiplicative law u + v + b*u*v has the closed-form inverse
# -u + b*u^2 - b^2*u^3 + ...
mult = FormalGroupLaw(MULTIPLICATIVE, order=5)
print("multiplicative inverse:")
print(" ", mult.inverse())
print()

# A logarithm l(u) = u + m(1)u^2 + m(2)u^3 + ... determines a law by
# F = l^{-1}(l(u) + l(v)).  Associativity then holds identically, which
# makes this backend the right place to test the axioms.
lb = log_backend(3)
log_law = FormalGroupLaw(lb, order=4)
names = ("u", "v", "w")
u = TruncatedSeries.variable("u", names, 4, lb)
v = TruncatedSeries.variable("v", names, 4, lb)
w = TruncatedSeries.variable("w", names, 4, lb)
lhs = log_law.sum(log_law.sum(u, v), w)
rhs = log_law.sum(u, log_law.sum(v, w))
print("associativity on the log backend:", lhs == rhs)
print()

# [n]u is u added to itself n times through F; negative n goes through the
# inverse.  On the log backend [2]u picks up m-coefficients quickly.
print("[2]u and [-1]u on the log backend:")
print("  [2]u  =", log_law.n_series(2))
print("  [-1]u =", log_law.n_series(-1))
print()

# F^{(1,-1)}(u1, u2) combines [1]u1 and [-1]u2 through the law.  Splitting
# it by which variables actually occur gives one series per support set;
# recombining them returns the original exactly.
combo = law.linear_combination((1, -1))
parts = support_decompose(combo)
print("combination F^(1,-1) split by variable support:")
for support, part in sorted(parts.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
    label = "{" + ",".join(str(i) for i in sorted(support)) + "}"
    print(f"  {label:>6}: {part}")
