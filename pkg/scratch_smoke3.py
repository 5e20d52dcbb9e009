from k3lat.matrix import mat_mul, mat_eq, identity_matrix, transpose
from k3lat.lattice import Lattice
from k3lat.standard import k3_lattice, reflection, reflection_general
from k3lat.groups import (IsometryGroup, fixed_sublattice, zg_decomposition,
                          regular_summand_discriminant_check,
                          spinor_plus_membership, coinvariant_L_G,
                          NeedIsotypicData)

K3 = k3_lattice()
n = 22
I = identity_matrix(n)

# swap involution on the two E8 blocks
swap = [[0] * n for _ in range(n)]
for i in range(6):
    swap[i][i] = 1
for i in range(8):
    swap[6 + i][14 + i] = 1
    swap[14 + i][6 + i] = 1
G = IsometryGroup(K3, [swap])
assert G.order() == 2
dec = zg_decomposition(swap, 2)
assert (dec.t, dec.c, dec.r) == (6, 0, 8), (dec.t, dec.c, dec.r)
rep = regular_summand_discriminant_check(K3, swap, 2)
assert rep["image_is_direct_summand"]
assert rep["disc_is_Fp_space_of_dim_r"], rep
print("swap zg ok", rep["complement_disc_orders"][:3], "...")

# spinor norms
root = [0] * n
root[6] = 1  # e8a_1, norm -2
refl_neg = reflection(K3.gram, root)
assert spinor_plus_membership(K3, refl_neg) is True
ef = [1, 1] + [0] * 20  # e+f, norm +2
refl_pos = reflection_general(K3.gram, ef)
assert spinor_plus_membership(K3, refl_pos) is False
minus = [[-x for x in row] for row in I]
assert spinor_plus_membership(K3, minus) is False
assert spinor_plus_membership(K3, I) is True
assert spinor_plus_membership(K3, swap) is True
print("spinor ok")

# pointwise branch: reflection group in one root
Gr = IsometryGroup(K3, [refl_neg])
res = coinvariant_L_G(Gr)
assert res.mode == "pointwise-fixed-3-plane"
assert res.L_G.rank == 1 and res.L_G.gram() == [[-2]]
print("pointwise ok")

# order-12 cyclic: order-4 twist on U+U times order-3 rotation in E8a
M = [[0] * n for _ in range(n)]
M[0][2] = 1
M[1][3] = 1
M[2][0] = -1
M[3][1] = -1
for i in range(4, n):
    M[i][i] = 1
# coxeter rotation of the A2(-1) spanned by e8a_1, e8a_3 (indices 6, 8)
r1 = [0] * n
r1[6] = 1
r2 = [0] * n
r2[8] = 1
C3 = mat_mul(reflection(K3.gram, r1), reflection(K3.gram, r2))
g12 = mat_mul(M, C3)
G12 = IsometryGroup(K3, [g12])
assert G12.order() == 12
res = coinvariant_L_G(G12)
assert res.mode == "rotation-on-3-plane", res.mode
assert res.p_types == ["trivial", "rotation(d=4,k=1)"], res.p_types
assert len(res.variants) == 1
assert res.L_G.rank == 2
gram = res.L_G.gram()
assert gram == [[-2, 1], [1, -2]] or gram == [[-2, -1], [-1, -2]], gram
print("order-12 rotation ok", gram)

# prime-order rotation: L_G = 0
G4 = IsometryGroup(K3, [M])
res4 = coinvariant_L_G(G4)
assert res4.L_G.rank == 0
assert res4.p_types == ["trivial", "rotation(d=4,k=1)"]
print("order-4 rotation ok")

# non-cyclic without isotypic data
Gnc = IsometryGroup(K3, [M, refl_neg])
assert Gnc.order() == 8
try:
    coinvariant_L_G(Gnc)
    raise SystemExit("expected NeedIsotypicData")
except NeedIsotypicData:
    print("need-isotypic ok")

# order-3: in a unimodular ambient the A2-plane glues into a regular summand
dec3 = zg_decomposition(C3, 3)
assert (dec3.t, dec3.c, dec3.r) == (19, 0, 1), (dec3.t, dec3.c, dec3.r)
rep3 = regular_summand_discriminant_check(K3, C3, 3)
assert rep3["image_is_direct_summand"] and rep3["disc_is_Fp_space_of_dim_r"]
assert rep3["complement_disc_orders"] == [3]
print("zg p=3 ok")
