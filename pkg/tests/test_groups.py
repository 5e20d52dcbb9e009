import random
from fractions import Fraction

import pytest

from k3lat.groups import (
    IsometryGroup,
    NeedIsotypicData,
    NotAnIsometry,
    NotFinite,
    coinvariant_L_G,
    fixed_sublattice,
    regular_summand_discriminant_check,
    spinor_plus_membership,
    zg_decomposition,
)
from k3lat.lattice import Lattice
from k3lat.matrix import (
    det,
    identity_matrix,
    inverse,
    int_kernel,
    mat_mul,
    matrix_order,
    to_int_matrix,
    transpose,
)
from k3lat.polys import cyclotomic
from k3lat.standard import k3_lattice, reflection, reflection_general

K3 = k3_lattice()
N = 22
I22 = identity_matrix(N)


def _swap_matrix():
    swap = [[0] * N for _ in range(N)]
    for i in range(6):
        swap[i][i] = 1
    for i in range(8):
        swap[6 + i][14 + i] = 1
        swap[14 + i][6 + i] = 1
    return swap


def _u2_twist():
    # order-4 rotation mixing the first two hyperbolic planes
    M = [[0] * N for _ in range(N)]
    M[0][2] = 1
    M[1][3] = 1
    M[2][0] = -1
    M[3][1] = -1
    for i in range(4, N):
        M[i][i] = 1
    return M


def _c3_rotation():
    # rotation in the A2(-1) plane spanned by two orthogonal-chain roots
    # of the first E8 block (basis slots 6 and 8 pair to -2, -2, 1)
    r1 = [0] * N
    r1[6] = 1
    r2 = [0] * N
    r2[8] = 1
    return mat_mul(reflection(K3.gram, r1), reflection(K3.gram, r2))


def test_group_order_and_validation():
    G = IsometryGroup(K3, [_swap_matrix()])
    assert G.order() == 2
    with pytest.raises(NotAnIsometry):
        bad = identity_matrix(N)
        bad[0][1] = 1  # shears e into f, breaks the form
        IsometryGroup(K3, [bad]).validate()


def test_infinite_group_is_rejected():
    # [[3,2],[4,3]] preserves diag(1,-2) but has infinite order
    amb = Lattice([[1, 0], [0, -2]])
    g = [[3, 2], [4, 3]]
    assert mat_mul(mat_mul(g, amb.gram), transpose(g)) == amb.gram
    with pytest.raises(NotFinite):
        IsometryGroup(amb, [g], element_cap=500).order()


def test_swap_involution_module_shape():
    swap = _swap_matrix()
    dec = zg_decomposition(swap, 2)
    assert (dec.t, dec.c, dec.r) == (6, 0, 8)
    rep = regular_summand_discriminant_check(K3, swap, 2)
    assert rep["image_is_direct_summand"]
    assert rep["disc_is_Fp_space_of_dim_r"]


def test_spinor_values():
    root = [0] * N
    root[6] = 1
    refl_neg = reflection(K3.gram, root)
    assert spinor_plus_membership(K3, refl_neg) is True
    ef = [1, 1] + [0] * 20
    refl_pos = reflection_general(K3.gram, ef)
    assert spinor_plus_membership(K3, refl_pos) is False
    minus = [[-x for x in row] for row in I22]
    assert spinor_plus_membership(K3, minus) is False
    assert spinor_plus_membership(K3, I22) is True
    assert spinor_plus_membership(K3, _swap_matrix()) is True


def test_spinor_is_multiplicative_on_small_groups():
    root = [0] * N
    root[6] = 1
    gens = [_u2_twist(), reflection(K3.gram, root)]
    G = IsometryGroup(K3, gens)
    assert G.order() == 8
    vals = {}
    for g in G.elements():
        vals[tuple(map(tuple, g))] = spinor_plus_membership(K3, g)
    for a in G.elements():
        for b in G.elements():
            ab = mat_mul(a, b)
            expect = vals[tuple(map(tuple, a))] == vals[tuple(map(tuple, b))]
            assert vals[tuple(map(tuple, ab))] == expect


def test_pointwise_reflection_coinvariant():
    root = [0] * N
    root[6] = 1
    Gr = IsometryGroup(K3, [reflection(K3.gram, root)])
    res = coinvariant_L_G(Gr)
    assert res.mode == "pointwise-fixed-3-plane"
    assert res.L_G.rank == 1
    assert res.L_G.gram() == [[-2]]


def test_order_twelve_rotation_coinvariant():
    g12 = mat_mul(_u2_twist(), _c3_rotation())
    G12 = IsometryGroup(K3, [g12])
    assert G12.order() == 12
    res = coinvariant_L_G(G12)
    assert res.mode == "rotation-on-3-plane"
    assert res.p_types == ["trivial", "rotation(d=4,k=1)"]
    assert len(res.variants) == 1
    assert res.L_G.rank == 2
    gram = res.L_G.gram()
    assert gram in ([[-2, 1], [1, -2]], [[-2, -1], [-1, -2]])


def test_order_four_rotation_has_zero_coinvariant():
    G4 = IsometryGroup(K3, [_u2_twist()])
    res = coinvariant_L_G(G4)
    assert res.L_G.rank == 0
    assert res.p_types == ["trivial", "rotation(d=4,k=1)"]


def test_noncyclic_group_needs_isotypic_data():
    root = [0] * N
    root[6] = 1
    Gnc = IsometryGroup(K3, [_u2_twist(), reflection(K3.gram, root)])
    assert Gnc.order() == 8
    with pytest.raises(NeedIsotypicData):
        coinvariant_L_G(Gnc)


def test_order_three_rotation_glues_to_regular_summand():
    C3 = _c3_rotation()
    dec3 = zg_decomposition(C3, 3)
    assert (dec3.t, dec3.c, dec3.r) == (19, 0, 1)
    rep3 = regular_summand_discriminant_check(K3, C3, 3)
    assert rep3["image_is_direct_summand"]
    assert rep3["disc_is_Fp_space_of_dim_r"]
    assert rep3["complement_disc_orders"] == [3]


def test_fixed_sublattice_is_primitive_and_pointwise():
    swap = _swap_matrix()
    F = fixed_sublattice(K3, [swap])
    assert F.rank == 14
    assert F.is_primitive()
    for v in F.basis:
        assert [sum(v[i] * swap[i][j] for i in range(N))
                for j in range(N)] == list(v)


def _companion(poly):
    # companion matrix of a monic polynomial given in ascending order
    n = len(poly) - 1
    C = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        C[i + 1][i] = 1
    for i in range(n):
        C[i][n - 1] = -poly[i]
    return C


def _random_unimodular(rng, n):
    U = identity_matrix(n)
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            U[i][k] += c * U[j][k]
    if abs(det(U)) != 1:
        return identity_matrix(n)
    return U


def test_zg_decomposition_recovers_planted_shape():
    rng = random.Random(77)
    for p in (2, 3, 5, 7):
        for _ in range(12):
            t = rng.randint(0, 3)
            c = rng.randint(0, 2)
            r = rng.randint(0, 2)
            if t + c + r == 0:
                continue
            blocks = []
            for _ in range(t):
                blocks.append([[1]])
            for _ in range(c):
                blocks.append(_companion(cyclotomic(p)))
            for _ in range(r):
                # regular representation: cyclic permutation of Z^p
                P = [[0] * p for _ in range(p)]
                for i in range(p):
                    P[i][(i + 1) % p] = 1
                blocks.append(P)
            n = sum(len(b) for b in blocks)
            g = [[0] * n for _ in range(n)]
            at = 0
            for b in blocks:
                for i, row in enumerate(b):
                    for j, x in enumerate(row):
                        g[at + i][at + j] = x
                at += len(b)
            U = _random_unimodular(rng, n)
            gc = to_int_matrix(mat_mul(mat_mul(U, g), inverse(U)))
            assert matrix_order(gc) in (1, p)
            dec = zg_decomposition(gc, p)
            assert (dec.t, dec.c, dec.r) == (t, c, r)


def test_zg_decomposition_rejects_wrong_order():
    with pytest.raises(ValueError):
        zg_decomposition(_u2_twist(), 2)  # order 4, not 2
