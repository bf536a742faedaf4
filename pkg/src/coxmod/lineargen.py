"""Blowing up projective space at a point configuration with hyperplane generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .cemds import CEMDS, CEMDSError, compress, modify, projective_space, stretch
from .ideal import Ideal
from .intlinalg import content, kernel_vectors, rank
from .polynomial import Polynomial, rational
from .toric import FanError, barycentric_subdivision_at, orbit_cone
from .verify import VerificationReport


class ConfigurationError(ValueError):
    """The point configuration violates the standing assumptions."""


def _integral(v: Sequence[object]) -> List[int]:
    qs = [rational(x) for x in v]
    den = 1
    for q in qs:
        d = int(q.denominator)
        den = den * d // _gcd(den, d)
    ints = [int(q * den) for q in qs]
    g = content(ints) or 1
    ints = [x // g for x in ints]
    first = next((x for x in ints if x), 0)
    return [-x for x in ints] if first < 0 else ints


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class PointConfig:
    """Points of ``P^n`` in homogeneous coordinates; the first ``n+1`` are coordinate points."""

    n: int
    points: Tuple[Tuple[mpq, ...], ...]

    def __init__(self, n: int, points: Sequence[Sequence[object]]):
        pts = tuple(tuple(rational(x) for x in p) for p in points)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "points", pts)
        self.validate()

    def validate(self) -> None:
        n = self.n
        if len(self.points) < n + 1:
            raise ConfigurationError("need at least the n+1 coordinate points")
        for p in self.points:
            if len(p) != n + 1:
                raise ConfigurationError("points need n+1 homogeneous coordinates")
            if all(x == 0 for x in p):
                raise ConfigurationError("the zero vector is not a point")
        for i in range(n + 1):
            p = self.points[i]
            if any((x != 0) != (j == i) for j, x in enumerate(p)):
                raise ConfigurationError(f"point {i + 1} must be the coordinate point e{i}")
        for a, b in combinations(range(len(self.points)), 2):
            if rank([list(self.points[a]), list(self.points[b])]) < 2:
                raise ConfigurationError(f"points {a + 1} and {b + 1} coincide")

    def to_dict(self) -> dict:
        return {"n": self.n, "points": [[_fmt(x) for x in p] for p in self.points]}


def _fmt(q) -> object:
    q = rational(q)
    return int(q) if q.denominator == 1 else f"{int(q.numerator)}/{int(q.denominator)}"


@dataclass(frozen=True)
class Hyperplane:
    normal: Tuple[int, ...]
    points: Tuple[int, ...]            # incident point indices (0-based)

    def form(self) -> Polynomial:
        r = len(self.normal)
        out = Polynomial.zero(r)
        for i, c in enumerate(self.normal):
            if c:
                out = out + Polynomial.var(i, r).scale(c)
        return out

    def is_coordinate(self) -> bool:
        return sum(1 for c in self.normal if c) == 1


@dataclass(frozen=True)
class IncidenceSystem:
    lines: Tuple[Hyperplane, ...]

    @property
    def coordinate(self) -> List[Hyperplane]:
        return [h for h in self.lines if h.is_coordinate()]

    @property
    def extra(self) -> List[Hyperplane]:
        return [h for h in self.lines if not h.is_coordinate()]

    def is_n_design(self, n: int) -> bool:
        return all(len(h.points) == n for h in self.lines)

    def is_near_pencil(self, npoints: int) -> bool:
        return any(len(h.points) == npoints - 1 for h in self.lines)


def hyperplane_set(cfg: PointConfig) -> IncidenceSystem:
    """All hyperplanes through ``n`` of the points, with their incident points.

    Coordinate hyperplanes come first (``x_0 = 0, ..., x_n = 0``), then the
    others in lexicographic order of their normalized normal vectors.
    """
    n = cfg.n
    pts = [list(p) for p in cfg.points]
    normals = set()
    for sub in combinations(range(len(pts)), n):
        M = [pts[i] for i in sub]
        if rank(M) < n:
            continue
        den_rows = [_integral(row) for row in M]
        u = kernel_vectors(den_rows, n + 1)[0]
        normals.add(tuple(_integral(u)))
    coord = [tuple(1 if j == i else 0 for j in range(n + 1)) for i in range(n + 1)]
    rest = sorted(u for u in normals if u not in set(coord))
    lines = []
    for u in coord + rest:
        inc = tuple(k for k, p in enumerate(pts) if sum(a * b for a, b in zip(u, p)) == 0)
        if len(inc) < n:
            raise ConfigurationError("hyperplane with fewer than n points")
        lines.append(Hyperplane(u, inc))
    return IncidenceSystem(tuple(lines))


@dataclass
class LinearBlowupResult:
    cemds: CEMDS
    system: IncidenceSystem
    stretched: CEMDS
    cones: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def report(self) -> Optional[VerificationReport]:
        return self.cemds.report


def cox_coordinates(cfg: PointConfig, system: IncidenceSystem, idx: int) -> List[mpq]:
    p = cfg.points[idx]
    return list(p) + [h.form().evaluate(p) for h in system.extra]


def linear_blowup(cfg: PointConfig, verify: bool = False, tier: int = 0, oracle=None,
                  timeout: float = 30.0) -> LinearBlowupResult:
    """Stretch ``P^n`` by the extra hyperplanes, subdivide at every point, transfer."""
    n = cfg.n
    system = hyperplane_set(cfg)
    X = projective_space(n)
    fs = [h.form() for h in system.extra]
    X1 = stretch(X, fs, attested=True) if fs else X
    fan = X1.fan
    cones = []
    for idx in range(len(cfg.points)):
        z = cox_coordinates(cfg, system, idx) + [mpq(1)] * idx
        try:
            c = orbit_cone(fan, z)
            fan = barycentric_subdivision_at(fan, c)
        except FanError as exc:
            raise ConfigurationError(f"point {idx + 1} cannot be blown up this way: {exc}") from exc
        cones.append(c)
    X2 = modify(X1, [list(r) for r in fan.P], fan, verify=False, check_refinement=False)
    X3 = compress(X2, 0, verify=verify, tier=tier, oracle=oracle, timeout=timeout)
    if not verify:
        X3 = X3.with_status("weak")
    return LinearBlowupResult(X3, system, X1, cones)


def incidence_torus_ideal(system: IncidenceSystem, cfg: PointConfig) -> Ideal:
    """Generators ``T_l * prod S_p - sum c_i T_i * prod S_p`` for the extra hyperplanes.

    Variables are the hyperplanes in ``system`` order followed by one
    ``S_p`` per point; each generator is divided by its monomial gcd.
    """
    lines = list(system.lines)
    L, k = len(lines), len(cfg.points)
    r = L + k
    coord_pos = {h.normal.index(1): j for j, h in enumerate(lines) if h.is_coordinate()}

    def beta(j: int) -> Polynomial:
        e = [0] * r
        e[j] = 1
        for p in lines[j].points:
            e[L + p] += 1
        return Polynomial.monomial(tuple(e))

    gens = []
    for j, h in enumerate(lines):
        if h.is_coordinate():
            continue
        g = beta(j)
        for i, c in enumerate(h.normal):
            if c:
                g = g - beta(coord_pos[i]).scale(c)
        gens.append(g.strip_monomial().primitive())
    return Ideal(gens, r)
