"""Reference presentations used by the acceptance and regression tests."""

import re

from coxmod.intlinalg import Grading
from coxmod.polynomial import Polynomial


def _s_to_t(text: str, offset: int) -> str:
    return re.sub(r"S(\d+)", lambda m: f"T{int(m.group(1)) + offset}", text)


def polys(texts, arity, offset=None):
    if offset is not None:
        texts = [_s_to_t(t, offset) for t in texts]
    return [Polynomial.parse(t, arity) for t in texts]


SEVEN_POINTS = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, -1], [0, 1, 1], [1, 1, 1]]

# nine line variables T1..T9 followed by the point variables S1..S7
SEVEN_POINT_RELATIONS = [
    "2*T8*S4*S6 - T5*S2 + T9*S7", "2*T1*S3*S6 + T5*S5 - T6*S7",
    "2*T4*S1*S6 + T6*S2 - T9*S5", "-T1*S2*S6 + T2*S1*S5 - T7*S4*S7",
    "2*T7*S3*S4 + T6*S2 + T9*S5", "-T2*S5*S3 + T3*S4*S2 - T4*S7*S6",
    "2*T3*S1*S4 + T5*S5 + T6*S7", "T1*S2*S3 + T8*S4*S5 + T4*S1*S7",
    "2*T2*S1*S3 + T5*S2 + T9*S7", "T2*T6*S3 - T3*T9*S4 - T4*T5*S6",
    "T3*S1*S2 + T8*S5*S6 - T7*S3*S7", "T3*T9*S1 - T5*T7*S3 - T6*T8*S6",
    "T2*T6*S1 - T5*T7*S4 + T1*T9*S6", "T4*T5*S1 + T1*T9*S3 + T6*T8*S4",
    "T3*T7*S4^2 + T1*T4*S6^2 + T2*T6*S5", "T2*T7*S3^2 + T4*T8*S6^2 + T3*T9*S2",
    "T1*T2*S3^2 + T3*T8*S4^2 - T4*T5*S7", "T1*T3*S2^2 + T2*T8*S5^2 + T4*T7*S7^2",
    "T3*T4*S1^2 + T1*T7*S3^2 - T6*T8*S5", "T2*T4*S1^2 + T7*T8*S4^2 - T1*T9*S2",
    "T2*T3*S1^2 + T1*T8*S6^2 + T5*T7*S7", "T4*T5^2*T7 + T2*T6^2*T8 + T1*T3*T9^2",
]

SEVEN_POINT_GRADING = Grading.from_rows([
    [0, -1, -1, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [-1, 0, -1, 0, -1, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0],
    [-1, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, -1, -1, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, -1, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0],
    [-1, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, -1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1],
])


def seven_point_relations():
    return polys(SEVEN_POINT_RELATIONS, 16, offset=9)


# blow ups of P^3 in the four coordinate points and two more
P3_CASES = {
    "i": dict(
        points=[[1, 1, 0, 0], [0, 1, 1, 1]],
        relations=[
            "2*T4*T13 - 2*T5*T16 - 2*T3*T14", "T4*T12*T15 - T2*T14 - T6*T16",
            "T5*T12*T15 - T6*T13 + T7*T14", "T3*T12*T15 - T2*T13 - T7*T16",
            "T5*T11*T12 - T9*T13 + T10*T14", "T4*T11*T12 - T8*T14 - T9*T16",
            "T3*T11*T12 - T8*T13 - T10*T16", "T1*T12*T13 + T7*T11 - T10*T15",
            "T1*T12*T14 + T6*T11 - T9*T15", "T1*T12*T16 - T2*T11 + T8*T15",
            "T5*T8 - T3*T9 + T4*T10", "T2*T5 - T3*T6 + T4*T7",
            "T1*T5*T12^2 + T7*T9 - T6*T10", "T1*T3*T12^2 + T7*T8 - T2*T10",
            "T1*T4*T12^2 + T6*T8 - T2*T9",
        ],
        grading=[
            [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
            [0, -1, -1, -1, -1, -1, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0],
            [-1, 0, -1, -1, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
            [-1, -1, 0, -1, 0, -1, 0, -1, -1, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
            [1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0],
            [0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
        ]),
    "ii": dict(
        points=[[2, 1, 0, 0], [1, 1, 0, 1]],
        relations=[
            "T1*T11 + T7*T14 + 2*T8*T15", "T2*T10 + T7*T14 + T8*T15",
            "T4*T11*T14 - T2*T13 - T5*T15", "T4*T10*T14 - T1*T13 - T6*T15",
            "T4*T10*T11 + T7*T13 - T9*T15", "T6*T11 - 2*T8*T13 - T9*T14",
            "T5*T10 - T8*T13 - T9*T14", "2*T4*T8*T10 + T6*T7 + T1*T9",
            "T4*T8*T11 + T5*T7 + T2*T9", "T4*T8*T14 + T1*T5 - T2*T6",
        ],
        grading=[
            [1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
            [0, -1, -1, -1, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
            [-1, 0, -1, -1, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
            [-1, -1, -1, 0, 0, 0, -1, -1, 0, 0, 0, 0, 1, 0, 0],
            [1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0],
            [1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
        ]),
    "iii": dict(
        points=[[1, 0, 0, 1], [0, 1, 0, 1]],
        relations=[
            "T2*T8*T11 - T6*T9 + T7*T13", "T2*T11*T12 - T4*T9 + T5*T13",
            "T1*T9*T11 - T5*T8 + T7*T12", "T1*T11*T13 - T4*T8 + T6*T12",
            "T1*T2*T11^2 - T5*T6 + T4*T7",
        ],
        grading=[
            [1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
            [0, -1, -1, -1, -1, 0, 0, 1, 0, 0, 0, 0, 0],
            [-1, 0, -1, -1, 0, -1, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
            [-1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
            [1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0],
            [0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1],
        ]),
    "iv": dict(
        points=[[1, 0, 0, 1], [0, 1, 1, 0]],
        relations=["T3*T8 - T5*T12 - T2*T9", "T4*T7 - T6*T11 - T1*T10"],
        grading=[
            [1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
            [0, -1, -1, -1, -1, 0, 1, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0],
            [-1, -1, -1, 0, -1, 0, 0, 0, 0, 1, 0, 0],
            [0, -1, -1, 0, -1, -1, 0, 0, 0, 0, 1, 0],
            [0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        ]),
}

P3_COORDINATE_POINTS = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def p3_case(name):
    case = P3_CASES[name]
    g = Grading.from_rows(case["grading"])
    return (P3_COORDINATE_POINTS + case["points"], polys(case["relations"], g.arity), g)


PLUCKER_RELATIONS = [
    "T7*T8 - T6*T9 + T5*T10", "T4*T6 - T3*T7 - T1*T10", "T4*T8 - T3*T9 + T2*T10",
    "T4*T5 - T2*T7 - T1*T9", "T3*T5 - T2*T6 - T1*T8",
]


# a generic class near the anticanonical one; it lies in a full-dimensional chamber
PLUCKER_AMPLE = [-97, -96, 192, 199, 307]


def plucker_relations():
    return polys(PLUCKER_RELATIONS, 10)


def plucker_cemds():
    from coxmod.cemds import CEMDS
    from coxmod.intlinalg import finest_grading, gale_dual_inverse
    from coxmod.toric import fan_from_ample
    rel = plucker_relations()
    Q = finest_grading(rel, 10)
    P = gale_dual_inverse(Q)
    return CEMDS.create(P, fan_from_ample(P, Q, PLUCKER_AMPLE), rel, Q, PLUCKER_AMPLE)


# weighted projective plane with weights 3, 4, 5 and its general point
P345_RAYS = [[1, -2, 1], [-2, -1, 2]]
P345_CENTER = ["T2^2 - T1*T3", "T1^2*T2 - T3^2", "T1^3 - T2*T3",
               "T1^5 - 3*T1^2*T2*T3 + T1*T2^3 + T3^3"]
P345_MULTS = [1, 1, 1, 2]

P345_BLOWUP_RELATIONS = [
    "-T1*T7 + T4*T5 + T6^2", "T1*T4^2 - T2*T7 + T5*T6",
    "-T1*T4*T6 - T3*T7 + T5^2", "-T1*T5 + T2*T6 + T3*T4",
    "T2^2 - T1*T3 - T4*T8", "T1^3 - T2*T3 - T6*T8",
    "T1^2*T4 - T2*T5 + T3*T6", "T1^2*T6 + T1*T2*T4 - T3*T5 - T7*T8",
    "T1^2*T2 - T3^2 - T5*T8",
]
P345_BLOWUP_GRADING = Grading.from_rows([[3, 4, 5, -1, 1, 0, -3, 9],
                                         [0, 0, 0, 1, 1, 1, 2, -1]])


def p345():
    from coxmod.cemds import toric_cemds
    return toric_cemds(P345_RAYS, [1])


def p345_center():
    return polys(P345_CENTER, 3)


# a surface with torus action of Picard rank five, parameter a >= 2
def kstar_surface(a):
    """Returns the surface, the extra center generator and the center point (Cox coordinates)."""
    from coxmod.cemds import VERIFIED, CEMDS
    from coxmod.intlinalg import gale_dual_inverse
    from coxmod.toric import fan_from_ample
    Q = Grading.from_rows([[1, 1, 0, -a, 0, 0, 0, 0], [-1, 0, -1, 0, 1, 0, 0, 0],
                           [-1, 0, -2, 0, 0, 1, 0, 0], [0, 0, 1, 1, 0, 0, 1, 0],
                           [-1, 0, 1, 1, 0, 0, 0, 1]])
    P = gale_dual_inverse(Q)
    w = [0, -1, 0, 3, 0]
    rel = Polynomial.parse(f"T2^{a}*T4 - T3*T5*T6^2 - T7*T8", 8)
    X = CEMDS.create(P, fan_from_ample(P, Q, w), [rel], Q, w, VERIFIED)
    f1 = Polynomial.parse(f"T1*T2^{a - 1}*T4*T8 - T3*T6", 8)
    return X, f1, [1, 1, 1, 1, 0, 1, 1, 1]
