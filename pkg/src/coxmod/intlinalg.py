"""Integer and rational linear algebra.

Matrices are lists of rows of Python integers.  Nothing here uses floating
point.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from . import lp
from .polynomial import rational

Matrix = List[List[int]]


# ---------------------------------------------------------------- basics
def mat(rows: Sequence[Sequence[int]]) -> Matrix:
    return [[int(v) for v in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    Bt = transpose(B) if B else []
    inner = len(B)
    if inner == 0:
        return [[0] * 0 for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def columns(A: Sequence[Sequence[int]]) -> Matrix:
    return transpose(A)


def select_columns(A: Sequence[Sequence[int]], idx: Sequence[int]) -> Matrix:
    return [[row[j] for j in idx] for row in A]


def hstack(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    return [list(a) + list(b) for a, b in zip(A, B)]


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive_vector(v: Sequence[int]) -> List[int]:
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return [int(x) // g for x in v]


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


# ---------------------------------------------------------- rational solving
def rref(A: Sequence[Sequence[object]]) -> Tuple[List[List[mpq]], List[int]]:
    M = [[rational(x) for x in row] for row in A]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(A: Sequence[Sequence[object]]) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def solve_rational(A: Sequence[Sequence[object]], b: Sequence[object]) -> Optional[List[mpq]]:
    """Some rational solution of ``A x = b`` (free variables set to 0), or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [mpq(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x


def determinant(A: Sequence[Sequence[object]]) -> mpq:
    M = [[rational(x) for x in row] for row in A]
    n = len(M)
    det = mpq(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return mpq(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det


# ------------------------------------------------------------ Smith form
@dataclass(frozen=True)
class SmithForm:
    """``A = W * D * V`` with ``W`` and ``V`` unimodular."""
    W: Matrix
    D: Matrix
    V: Matrix
    W_inv: Matrix
    V_inv: Matrix

    @property
    def diagonal(self) -> List[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithForm:
    """Smith normal form with transformation matrices and their inverses."""
    D = mat(A)
    m = len(D)
    n = len(D[0]) if m else (ncols or 0)
    W, W_inv = identity(m), identity(m)
    V, V_inv = identity(n), identity(n)

    # row op on D: R_i += c R_j  ==> W := W * E^{-1}: col_j(W) -= c col_i(W); W_inv: R_i += c R_j
    def row_add(i, j, c):
        if not c:
            return
        D[i] = [a + c * b for a, b in zip(D[i], D[j])]
        W_inv[i] = [a + c * b for a, b in zip(W_inv[i], W_inv[j])]
        for row in W:
            row[j] -= c * row[i]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        W_inv[i], W_inv[j] = W_inv[j], W_inv[i]
        for row in W:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        W_inv[i] = [-a for a in W_inv[i]]
        for row in W:
            row[i] = -row[i]

    # col op on D: C_i += c C_j  ==> V := E^{-1} V: R_j(V) -= c R_i(V); V_inv: C_i += c C_j
    def col_add(i, j, c):
        if not c:
            return
        for row in D:
            row[i] += c * row[j]
        for row in V_inv:
            row[i] += c * row[j]
        V[j] = [a - c * b for a, b in zip(V[j], V[i])]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V_inv:
            row[i], row[j] = row[j], row[i]
        V[i], V[j] = V[j], V[i]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    row_add(i, t, -q)
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    col_add(j, t, -q)
                    if D[t][j]:
                        done = False
            if done:
                # enforce divisibility by the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i][j] % D[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_add(t, bad, 1)
                continue
            # move the smallest entry of row/column t to the pivot
            cand = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]] + \
                   [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
            _, i, j = min(cand)
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
        if D[t][t] < 0:
            row_neg(t)
        t += 1
    return SmithForm(W, D, V, W_inv, V_inv)


# ---------------------------------------------------------- Hermite form
def hermite_rows(A: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by the rows.

    Zero rows are dropped, pivots are positive, and entries above a pivot
    lie in ``[0, pivot)``.  Two row sets span the same lattice iff their
    Hermite forms agree.
    """
    H = [list(map(int, row)) for row in A if any(row)]
    if not H:
        return []
    n = len(H[0])
    r = 0
    for c in range(n):
        rows_c = [i for i in range(r, len(H)) if H[i][c]]
        if not rows_c:
            continue
        while True:
            rows_c = [i for i in range(r, len(H)) if H[i][c]]
            piv = min(rows_c, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            others = [i for i in range(r + 1, len(H)) if H[i][c]]
            if not others:
                break
            for i in others:
                q = H[i][c] // H[r][c]
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        r += 1
        if r == len(H):
            break
    return [row for row in H if any(row)]


def same_lattice(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> bool:
    return hermite_rows(A) == hermite_rows(B)


def in_lattice(v: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    return hermite_rows(list(basis) + [list(v)]) == hermite_rows(basis)


def kernel_vectors(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Lattice basis (as rows, Hermite-canonical) of ``{x in Z^n : A x = 0}``."""
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return identity(n)
    S = smith_normal_form(A)
    rk = S.rank
    # A x = 0  <=>  D V x = 0  <=>  (V x)_i = 0 for i < rank
    basis = [[S.V_inv[i][j] for i in range(n)] for j in range(rk, n)]
    return hermite_rows(basis)


def kernel_basis(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Kernel lattice basis as the *columns* of an ``n x k`` matrix."""
    vecs = kernel_vectors(A, ncols)
    n = len(A[0]) if A else (ncols or 0)
    if not vecs:
        return [[] for _ in range(n)]
    return transpose(vecs)


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[List[int]]:
    """Some integer solution of ``A x = b`` or None."""
    S = smith_normal_form(A)
    m = len(A)
    n = len(A[0]) if m else 0
    c = matvec(S.W_inv, b)
    diag = S.diagonal
    y = [0] * n
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return matvec(S.V_inv, y)


# ---------------------------------------------------------------- gradings
@dataclass(frozen=True)
class Grading:
    """A degree map ``Z^r -> K = Z^free + sum Z/torsion_i``.

    ``matrix`` has ``free + len(torsion)`` rows; torsion rows are read
    modulo their orders and stored reduced to ``[0, order)``.
    """
    free: int
    torsion: Tuple[int, ...]
    matrix: Tuple[Tuple[int, ...], ...]
    ncols: int = -1

    def __post_init__(self):
        rows = [list(r) for r in self.matrix]
        if rows:
            object.__setattr__(self, "ncols", len(rows[0]))
        elif self.ncols < 0:
            raise ValueError("an empty grading matrix needs an explicit column count")
        if len(rows) != self.free + len(self.torsion):
            raise ValueError("grading matrix has the wrong number of rows")
        for k, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError("torsion orders must be at least 2")
            rows[self.free + k] = [x % d for x in rows[self.free + k]]
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in r) for r in rows))
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], torsion: Sequence[int] = ()) -> "Grading":
        return cls(len(rows) - len(torsion), tuple(torsion), tuple(tuple(r) for r in rows))

    @property
    def arity(self) -> int:
        return self.ncols

    @property
    def rank(self) -> int:
        return self.free

    def is_free(self) -> bool:
        return not self.torsion

    @property
    def free_rows(self) -> Matrix:
        return [list(r) for r in self.matrix[:self.free]]

    def degree(self, exp: Sequence[int]) -> Tuple[int, ...]:
        out = []
        for k, row in enumerate(self.matrix):
            v = sum(a * b for a, b in zip(row, exp))
            if k >= self.free:
                v %= self.torsion[k - self.free]
            out.append(v)
        return tuple(out)

    def column(self, i: int) -> Tuple[int, ...]:
        return tuple(row[i] for row in self.matrix)

    def normalize(self, deg: Sequence[int]) -> Tuple[int, ...]:
        out = list(deg)
        for k, d in enumerate(self.torsion):
            out[self.free + k] %= d
        return tuple(out)

    def select(self, idx: Sequence[int]) -> "Grading":
        return Grading(self.free, self.torsion,
                       tuple(tuple(row[j] for j in idx) for row in self.matrix), len(idx))

    def extend(self, degrees: Sequence[Sequence[int]]) -> "Grading":
        rows = [list(r) for r in self.matrix]
        for d in degrees:
            for k in range(len(rows)):
                rows[k].append(d[k])
        return Grading(self.free, self.torsion, tuple(tuple(r) for r in rows),
                       self.ncols + len(degrees))

    def to_dict(self) -> dict:
        out = {"free": self.free, "torsion": list(self.torsion),
               "matrix": [list(r) for r in self.matrix]}
        if not self.matrix:
            out["columns"] = self.ncols
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Grading":
        return cls(int(d["free"]), tuple(d.get("torsion", ())),
                   tuple(tuple(int(x) for x in r) for r in d["matrix"]), int(d.get("columns", -1)))


def _cokernel_grading(relations: Sequence[Sequence[int]], r: int) -> Grading:
    """``Z^r`` modulo the row lattice of ``relations``, in Smith coordinates."""
    rel = [list(row) for row in relations if any(row)]
    if not rel:
        return Grading(r, (), tuple(tuple(row) for row in identity(r)), r)
    S = smith_normal_form(rel)
    diag = S.diagonal
    # u in rowspace(M) <=> u V^{-1} in rowspace(D); new coordinate j of e_i is V_inv[i][j]
    free_rows, tors_rows, tors = [], [], []
    for j in range(r):
        d = diag[j] if j < len(diag) else 0
        col = [S.V_inv[i][j] for i in range(r)]
        if d == 0:
            free_rows.append(col)
        elif d > 1:
            tors_rows.append([x % d for x in col])
            tors.append(d)
    free_rows = hermite_rows(free_rows) if free_rows else []
    return Grading(len(free_rows), tuple(tors), tuple(tuple(x) for x in free_rows + tors_rows), r)


def gale_dual(P: Sequence[Sequence[int]], r: Optional[int] = None) -> Grading:
    """Degree map ``Q`` with ``ker Q = im P^T`` for a full-row-rank ``P``."""
    P = mat(P)
    r = len(P[0]) if P else (r or 0)
    if P and rank(P) != len(P):
        raise ValueError("gale_dual needs a matrix of full row rank")
    return _cokernel_grading(P, r)


def relation_lattice(Q: Grading, idx: Optional[Sequence[int]] = None) -> Matrix:
    """Hermite basis of ``{x : sum x_j deg(T_j) = 0 in K}`` over the chosen columns."""
    idx = list(range(Q.arity)) if idx is None else list(idx)
    s = len(idx)
    t = len(Q.torsion)
    M = []
    for k, row in enumerate(Q.matrix):
        line = [row[j] for j in idx] + [0] * t
        if k >= Q.free:
            line[s + (k - Q.free)] = Q.torsion[k - Q.free]
        M.append(line)
    if not M:
        return identity(s)
    K = kernel_vectors(M, s + t)
    return hermite_rows([v[:s] for v in K])


def is_surjective(Q: Grading) -> bool:
    t = len(Q.torsion)
    M = []
    for k, row in enumerate(Q.matrix):
        line = list(row) + [0] * t
        if k >= Q.free:
            line[len(row) + (k - Q.free)] = Q.torsion[k - Q.free]
        M.append(line)
    if not M:
        return True
    S = smith_normal_form(M)
    return S.rank == len(M) and all(d == 1 for d in S.diagonal)


def gale_dual_inverse(Q: Grading) -> Matrix:
    """Full-row-rank ``P`` whose row lattice is ``ker Q``."""
    if not is_surjective(Q):
        raise ValueError("degree map is not surjective onto its declared group")
    return relation_lattice(Q)


def finest_grading(polys, r: int) -> Grading:
    """Finest grading of ``Z^r`` keeping every polynomial homogeneous."""
    diffs = []
    for p in polys:
        exps = sorted(p.terms)
        if len(exps) > 1:
            u0 = exps[0]
            for u in exps[1:]:
                diffs.append([a - b for a, b in zip(u, u0)])
    return _cokernel_grading(diffs, r)


def graded_positive_weights(Q: Grading) -> Optional[List[int]]:
    """Positive integer weights ``w = y^T Q_free`` (if the degrees lie in an open half space)."""
    rows = Q.free_rows
    if not rows:
        return None
    y = lp.strictly_positive_in_rowspace(rows)
    if y is None:
        return None
    den = 1
    for v in y:
        den = den * v.denominator // gcd(den, int(v.denominator))
    yi = [int(v * den) for v in y]
    w = [sum(yi[k] * rows[k][j] for k in range(len(rows))) for j in range(len(rows[0]))]
    g = content(w)
    return [x // g for x in w]


# ---------------------------------------------------------- cone membership
def cone_member(w: Sequence[object], gens: Sequence[Sequence[object]]) -> bool:
    """Is ``w`` a nonnegative rational combination of ``gens``?"""
    if all(rational(x) == 0 for x in w):
        return True
    return lp.positive_combination(gens, w) is not None


# ---------------------------------------------------------- equivalence
def element_order(Q: Grading, deg: Sequence[int]) -> int:
    """Order of a degree in ``K``; 0 stands for infinite order."""
    if any(deg[:Q.free]):
        return 0
    order = 1
    for x, d in zip(deg[Q.free:], Q.torsion):
        o = d // gcd(d, x % d)
        order = order * o // gcd(order, o)
    return order


def _column_invariant(Q: Grading, j: int) -> tuple:
    col = Q.column(j)
    return (content(col[:Q.free]), element_order(Q, col))


def _small_dependent_sets(Q: Grading, size: int) -> set:
    F = Q.free_rows
    out = set()
    for k in range(1, size + 1):
        for sub in combinations(range(Q.arity), k):
            if rank(select_columns(F, sub)) < k if F else True:
                out.add(frozenset(sub))
    return out


def grading_permutations(Q1: Grading, Q2: Grading, circuit_size: int = 5) -> Iterator[List[int]]:
    """Yield every column permutation ``perm`` with ``Q1[:, perm]`` equivalent to ``Q2``.

    Column ``j`` of ``Q2`` corresponds to column ``perm[j]`` of ``Q1``.  Partial
    assignments are pruned by comparing which small column sets are linearly
    dependent; complete ones are confirmed on the relation lattices.
    """
    r = Q1.arity
    if Q2.arity != r or Q1.free != Q2.free or sorted(Q1.torsion) != sorted(Q2.torsion):
        return
    inv1 = [_column_invariant(Q1, j) for j in range(r)]
    inv2 = [_column_invariant(Q2, j) for j in range(r)]
    size = min(circuit_size, r)
    dep1, dep2 = _small_dependent_sets(Q1, size), _small_dependent_sets(Q2, size)
    if sorted(map(len, dep1)) != sorted(map(len, dep2)):
        return
    for j in range(r):
        inv1[j] += (tuple(sorted(len(d) for d in dep1 if j in d)),)
        inv2[j] += (tuple(sorted(len(d) for d in dep2 if j in d)),)
    if sorted(inv1) != sorted(inv2):
        return
    # place columns that share many dependencies with the chosen ones first
    order: List[int] = []
    left = set(range(r))
    while left:
        def score(j):
            return (sum(1 for d in dep2 if j in d and d - {j} <= set(order)),
                    -sum(1 for x in inv2 if x == inv2[j]), -j)
        j = max(left, key=score)
        order.append(j)
        left.remove(j)
    target = relation_lattice(Q2)
    perm: Dict[int, int] = {}
    used = [False] * r

    by_col1 = [[d for d in dep1 if j in d] for j in range(r)]
    by_col2 = [[d for d in dep2 if j in d] for j in range(r)]

    def consistent(pos: int) -> bool:
        new2 = order[pos]
        chosen2 = set(order[:pos + 1])
        image = {perm[j] for j in chosen2}
        inside2 = [d for d in by_col2[new2] if d <= chosen2]
        if any(frozenset(perm[j] for j in d) not in dep1 for d in inside2):
            return False
        return len(inside2) == sum(1 for d in by_col1[perm[new2]] if d <= image)

    def search(pos: int) -> Iterator[List[int]]:
        if pos == r:
            p = [perm[j] for j in range(r)]
            if relation_lattice(Q1, p) == target:
                yield p
            return
        j2 = order[pos]
        for j1 in range(r):
            if used[j1] or inv1[j1] != inv2[j2]:
                continue
            perm[j2] = j1
            used[j1] = True
            if consistent(pos):
                yield from search(pos + 1)
            used[j1] = False
            del perm[j2]

    yield from search(0)


def gradings_equivalent(Q1: Grading, Q2: Grading) -> Optional[Tuple[Matrix, List[int]]]:
    """Find unimodular ``U`` and a column permutation ``perm`` with ``U Q1[:, perm] = Q2``.

    Returns ``(U, perm)`` with the convention of :func:`grading_permutations`,
    or ``None``.  ``U`` is reported on the free parts.
    """
    p = next(grading_permutations(Q1, Q2), None)
    if p is None:
        return None
    return _left_transform(select_columns(Q1.free_rows, p), Q2.free_rows), p


def _left_transform(F1: Matrix, F2: Matrix) -> Matrix:
    """Integer ``U`` with ``U F1 = F2`` for row-lattice-equivalent full-rank matrices."""
    f = len(F1)
    if f == 0:
        return []
    # pick f independent columns of F1 and solve rationally; integrality follows
    cols = None
    for idx in combinations(range(len(F1[0])), f):
        if determinant(select_columns(F1, idx)) != 0:
            cols = idx
            break
    B1 = select_columns(F1, cols)
    B2 = select_columns(F2, cols)
    # U = B2 * B1^{-1}; solve B1^T U^T = B2^T row by row
    U = []
    B1t = transpose(B1)
    for row in B2:
        x = solve_rational(B1t, row)
        U.append([int(v) for v in x])
    return U
