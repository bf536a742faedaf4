"""
A surface with a one-dimensional torus action
=============================================

A rational surface with a single trinomial relation.  Blowing up a point on
the boundary divisor T5 = 0 goes through stretch, barycentric subdivision and
transfer; the new variable T10 is shown K-prime from a Smith form.
"""

# %%
from coxmod.blowup import blowup_cemds, blowup_point_certificate
from coxmod.cemds import VERIFIED, CEMDS
from coxmod.intlinalg import Grading, gale_dual_inverse
from coxmod.polynomial import Polynomial
from coxmod.toric import fan_from_ample

a = 3
Q = Grading.from_rows([[1, 1, 0, -a, 0, 0, 0, 0], [-1, 0, -1, 0, 1, 0, 0, 0],
                       [-1, 0, -2, 0, 0, 1, 0, 0], [0, 0, 1, 1, 0, 0, 1, 0],
                       [-1, 0, 1, 1, 0, 0, 0, 1]])
P = gale_dual_inverse(Q)
w = [0, -1, 0, 3, 0]
rel = Polynomial.parse(f"T2^{a}*T4 - T3*T5*T6^2 - T7*T8", 8)
X = CEMDS.create(P, fan_from_ample(P, Q, w), [rel], Q, w, VERIFIED)
print(X.P)

# %%
f1 = Polynomial.parse(f"T1*T2^{a - 1}*T4*T8 - T3*T6", 8)
res = blowup_cemds(X, [Polynomial.parse("T5", 8), f1], [1, 1])
for g in res.cemds.relations:
    print(g)
print(res.cemds.status)

# %%
for c in res.report.checks:
    print(f"{c.name:14s} {c.outcome:8s} {c.witness}")

# %%
# the subdivision really is the blow-up of the point
point = [1, 1, 1, 1, 0, 1, 1, 1, 0]
print(blowup_point_certificate(res.stretched, point))
