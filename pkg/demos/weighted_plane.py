"""
Blowing up a weighted projective plane at a general point
=========================================================

P(3,4,5) is toric, so its Cox ring is a polynomial ring in three variables.
Blowing up the point (1:1:1) adds generators; this walk-through finds them.
"""

# %%
from coxmod.blowup import blowup_auto, blowup_cemds, lattice_ideal_point, rees_component
from coxmod.cemds import contract, toric_cemds
from coxmod.ideal import Ideal, ideal_power
from coxmod.intlinalg import gale_dual
from coxmod.polynomial import Polynomial
from coxmod.toric import fan_from_ample, irrelevant_ideal

rays = [[1, -2, 1], [-2, -1, 2]]
X = toric_cemds(rays, [1])
print(X.grading.matrix, X.status)

# %% [markdown]
# The point (1,1,1) lies in the big torus.  Its ideal in Cox coordinates is the
# binomial ideal of the torus orbit through it.

# %%
I = lattice_ideal_point(rays, [1, 1, 1])
for g in I.generators:
    print(g)

# %% [markdown]
# Degree one of the saturated Rees algebra is I itself.  Degree two holds one
# more class that is not in I^2: the quintic below.

# %%
A2 = rees_component(X.ideal(), I, irrelevant_ideal(X.fan), 2).ideal
extra = [g for g in A2.generators if not ideal_power(I, 2).contains(g)]
print(extra)

# %%
# searching round by round: with k = 1 the three binomials are not enough
print(blowup_auto(X, I, 1).status)
res = blowup_auto(X, I, 2)
print(res.status, res.k, res.mults)

# %%
# the blow-up with the quintic at multiplicity two
f4 = Polynomial.parse("T1^5 - 3*T1^2*T2*T3 + T1*T2^3 + T3^3", 3)
R = blowup_cemds(X, list(I.generators) + [f4], [1, 1, 1, 2])
X2 = R.cemds
print(X2.r, len(X2.relations), X2.status)
for g in X2.relations:
    print(g)
print(X2.grading.matrix)

# %%
for c in R.report.checks:
    print(f"{c.name:14s} {c.outcome:8s} {c.witness}")

# %%
# contracting the exceptional ray gives back the weighted plane
P1 = [list(row[:7]) for row in X2.P]
back = contract(X2, P1, fan_from_ample(P1, gale_dual(P1), [1]), ample=[1])
print(back.r, back.relations, back.grading.matrix)
