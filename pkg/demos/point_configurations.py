"""
Blow-ups of projective space at points
======================================

Points in linearly general position give toric blow-ups; every hyperplane
through n of them adds a generator and the incidences give the relations.
"""

# %%
from coxmod.ideal import ideal_dim
from coxmod.lineargen import PointConfig, hyperplane_set, linear_blowup

# %% [markdown]
# Four general points of the plane: six lines, ten generators, five quadrics
# (the quintic del Pezzo surface).

# %%
four = PointConfig(2, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
R = linear_blowup(four, verify=True)
print(len(R.system.lines), R.cemds.r, R.cemds.status)
for g in R.cemds.relations:
    print(g)

# %%
# six points of P^3: the coordinate points plus two more on opposite edges
six = PointConfig(3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
                      [1, 0, 0, 1], [0, 1, 1, 0]])
R = linear_blowup(six, verify=True)
X = R.cemds
print(X.r, [str(g) for g in X.relations], X.status)
print(ideal_dim(X.ideal()), 3 + X.grading.free)

# %% [markdown]
# Seven points in the plane.  Six lines carry three of the points and three
# more lines are needed through pairs.  This takes a few
# seconds: the relations are collected from the incidences and saturated.

# %%
seven = PointConfig(2, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, -1],
                        [0, 1, 1], [1, 1, 1]])
for h in hyperplane_set(seven).lines:
    print(h.normal, [p + 1 for p in h.points])

# %%
R = linear_blowup(seven, verify=True)
X = R.cemds
print(X.r, len(X.relations), X.status, ideal_dim(X.ideal()))
