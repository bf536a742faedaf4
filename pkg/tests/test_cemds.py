import pytest

from coxmod.cemds import (CEMDS, ES, VERIFIED, WEAK, CEMDSError, compress, contract,
                          find_fake_relations, homogeneous_degree, modify, proj_model,
                          projective_space, sharp_pullback, sharp_pushforward, stretch,
                          toric_cemds, transfer)
from coxmod.ideal import Ideal
from coxmod.intlinalg import gale_dual, gradings_equivalent
from coxmod.polynomial import Polynomial
from coxmod.toric import barycentric_subdivision_at, fan_from_ample

from fixtures import p345, p345_center, plucker_cemds

P2_MAP = [[1, 0, -1], [0, 1, -1]]


def P(text, r):
    return Polynomial.parse(text, r)


# ------------------------------------------------------------ transfer
def test_pullback_of_a_character_is_one():
    assert sharp_pullback(P2_MAP, P("T1", 2)) == Polynomial.constant(1, 3)


def test_pullback_clears_denominators():
    assert sharp_pullback(P2_MAP, P("T1 + T2 + 1", 2)) == P("T1 + T2 + T3", 3)


def test_pushforward_inverts_pullback():
    assert sharp_pushforward(P2_MAP, P("T1 + T2 + T3", 3)) == P("T1 + T2 + 1", 2)
    assert sharp_pushforward(P2_MAP, P("T1^2*T3", 3)) == Polynomial.constant(1, 2)


def test_pushforward_rejects_mixed_characters():
    with pytest.raises(CEMDSError):
        sharp_pushforward(P2_MAP, P("T1 + T1^2", 3))


def test_pullback_rejects_zero():
    with pytest.raises(CEMDSError):
        sharp_pullback(P2_MAP, Polynomial.zero(2))


def test_transfer_along_identity_returns_primitive_input():
    g = P("2*T1*T2 - 4*T3^2", 3)
    assert transfer(P2_MAP, P2_MAP, g) == g.primitive()


# ------------------------------------------------------------ stretch / compress
def test_stretch_projective_plane():
    X = projective_space(2)
    fs = [P("T1 - T2", 3), P("T1*T2 - T2^2 + T1*T3", 3)]
    Y = stretch(X, fs)
    assert Y.r == 5 and Y.grading.free == 1 and not Y.grading.torsion
    degs = [Y.grading.column(j)[0] for j in range(5)]
    assert degs[3:] == [degs[0], 2 * degs[0]]
    assert Y.status == WEAK


def test_stretch_rejects_a_variable():
    with pytest.raises(CEMDSError):
        stretch(projective_space(2), [P("2*T2", 3)])


def test_stretch_rejects_inhomogeneous():
    with pytest.raises(CEMDSError):
        stretch(projective_space(2), [P("T1 - T2^2", 3)])


def test_stretch_weighted_plane_degrees():
    Y = stretch(p345(), p345_center())
    assert Y.r == 7
    # the degree group is Z with generator weights 3, 4, 5 (up to sign)
    degs = [Y.grading.column(j)[0] for j in range(7)]
    sign = 1 if degs[0] > 0 else -1
    # f1 = T2^2 - T1*T3 has degree 8, f2 = T1^2*T2 - T3^2 has 10, f3 has 9, f4 has 15
    assert [sign * d for d in degs] == [3, 4, 5, 8, 10, 9, 15]


def test_stretch_without_ample_class_fails():
    X = p345()
    bare = CEMDS.create(X.P, X.fan, (), X.grading, None, X.status)
    with pytest.raises(CEMDSError):
        stretch(bare, [P("T2^2 - T1*T3", 3)])


@pytest.mark.parametrize("make,fs", [
    (lambda: projective_space(2), ["T1 - T2", "T1*T2 - T2^2 + T1*T3"]),
    (p345, ["T2^2 - T1*T3", "T1^3 - T2*T3"]),
])
def test_compress_undoes_stretch(make, fs):
    X = make()
    Y = stretch(X, [P(f, X.r) for f in fs])
    Z = compress(Y, len(fs))
    assert Z.r == X.r
    assert Z.ideal() == X.ideal()
    assert gradings_equivalent(Z.grading, X.grading) is not None
    assert Z.fan.max_cones == X.fan.max_cones


def test_compress_rejects_non_fake():
    X = CEMDS.create(projective_space(2).P, projective_space(2).fan, [P("T1*T2 - T3^2", 3)],
                     ample=[1])
    with pytest.raises(CEMDSError):
        compress(X, 1)


def test_fake_relations_are_split_off():
    rels = [P("T1*T2 - T3^2", 5), P("T4 - T1 - T2", 5), P("T5 - T4*T1", 5)]
    ordinary, fake = find_fake_relations(rels, 5)
    assert ordinary == [rels[0]]
    assert [str(g) for g in fake] == [str(rels[2]), str(rels[1])]


# ------------------------------------------------------------ contract / modify
def test_plucker_contraction_is_toric():
    X2 = plucker_cemds()
    P1 = [list(row[:9]) for row in X2.P]
    Q1 = gale_dual(P1)
    fan1 = fan_from_ample(P1, Q1, [3, 4, -1, 1])
    X1 = contract(X2, P1, fan1, verify=True)
    assert X1.r == 6
    assert X1.relations == ()
    assert X1.grading.free == 4 and not X1.grading.torsion
    assert X1.status == VERIFIED


def test_contract_nothing_is_identity():
    X = p345()
    assert contract(X, [list(r) for r in X.P], X.fan) is X


def test_contract_rejects_wrong_prefix():
    X = p345()
    with pytest.raises(CEMDSError):
        contract(X, [[1, 2], [-2, -1]], X.fan)


def test_modify_with_same_fan_keeps_relations():
    X = plucker_cemds()
    Y = modify(X, [list(r) for r in X.P], X.fan)
    assert Y.relations == X.relations


def test_modify_then_contract_round_trip_on_toric_plane():
    X = projective_space(2)
    fan2 = barycentric_subdivision_at(X.fan, (1, 2))
    Y = modify(X, [list(r) for r in fan2.P], fan2, verify=True)
    assert Y.r == 4 and Y.relations == () and Y.ample is not None
    assert Y.status == VERIFIED
    Z = contract(Y, [list(r) for r in X.P], X.fan, ample=[1])
    assert Z.ideal() == X.ideal() and Z.r == 3


def test_modify_rejects_non_refinement():
    X = projective_space(2)
    P2 = [list(r) + [1] for r in X.P[:1]] + [list(X.P[1]) + [1]]
    from coxmod.toric import Fan
    bad = Fan(P2, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(CEMDSError):
        modify(X, P2, bad)


# ------------------------------------------------------------ misc
def test_inhomogeneous_relation_rejected():
    X = projective_space(2)
    with pytest.raises(CEMDSError):
        CEMDS.create(X.P, X.fan, [P("T1 - T2^2", 3)])


def test_homogeneous_degree():
    Q = gale_dual(P2_MAP)
    assert homogeneous_degree(P("T1*T2 - T3^2", 3), Q) == (2,)
    assert homogeneous_degree(P("T1 - T3^2", 3), Q) is None


def test_proj_model_veronese_conic():
    X = projective_space(1)
    I = proj_model(X, [P("T1^2", 2), P("T1*T2", 2), P("T2^2", 2)])
    assert I == Ideal([P("T1*T3 - T2^2", 3)], 3)


def test_proj_model_rejects_mixed_degrees():
    with pytest.raises(CEMDSError):
        proj_model(projective_space(1), [P("T1^2", 2), P("T2", 2)])


def test_toric_status_is_verified():
    assert toric_cemds([[1, 0, -1], [0, 1, -1]], [1]).status == VERIFIED
    assert ES not in (VERIFIED, WEAK)
