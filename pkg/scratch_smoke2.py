import random
from fractions import Fraction

from k3lat.matrix import mat_mul, transpose, mat_eq, identity_matrix, det
from k3lat.lattice import Lattice, signature_of_gram
from k3lat.standard import (cartan_matrix, root_lattice, hyperbolic_plane,
                            k3_lattice, reflection, coxeter_element)
from k3lat.shortvec import (enumerate_vectors, fincke_pohst_up_to,
                            naive_enumerate_up_to, min_norm_and_kissing,
                            classify_root_system, lattice_isometry,
                            disc_form_isometry, has_minus_two_vector)

# 1. root counts via enumerate_vectors (one per +- pair)
for kind, n, count in [("A", 2, 6), ("A", 3, 12), ("D", 4, 24), ("E", 6, 72), ("E", 8, 240)]:
    L = root_lattice(kind, n, sign=-1)
    roots = enumerate_vectors(L, -2)
    assert 2 * len(roots) == count, (kind, n, len(roots), count)
print("root counts ok")

# 2. fincke_pohst vs naive on random definite lattices
rng = random.Random(7)
for trial in range(25):
    n = rng.randint(1, 4)
    B = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
    if det(B) == 0:
        continue
    G = mat_mul(B, transpose(B))
    bound = rng.randint(1, 12)
    fp = fincke_pohst_up_to(G, bound)
    nv1 = naive_enumerate_up_to(G, bound, prune=False)
    nv2 = naive_enumerate_up_to(G, bound, prune=True)
    assert fp == nv1 == nv2, (G, bound, len(fp), len(nv1), len(nv2))
print("fp == naive ok")

# 3. classify_root_system round trip
for kind, n in [("A", 1), ("A", 3), ("D", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8)]:
    L = root_lattice(kind, n, sign=-1)
    rs = classify_root_system(L.gram)
    assert len(rs.components) == 1
    assert rs.components[0] == (kind, n), (kind, n, rs.components)
    assert rs.spanning
print("classification ok")

# A1^2 direct sum
from k3lat.lattice import direct_sum
L2 = direct_sum(root_lattice("A", 1, sign=-1), root_lattice("A", 1, sign=-1))
rs = classify_root_system(L2.gram)
assert sorted(rs.components) == [("A", 1), ("A", 1)], rs.components
print("A1+A1 ok")

# 4. min norm / kissing
G = root_lattice("E", 8, sign=1).gram
mn, kiss = min_norm_and_kissing(G)
assert (mn, kiss) == (2, 240), (mn, kiss)
print("kissing ok")

# 5. lattice_isometry: positive A2 vs itself; A2 vs scaled fails fast
A2 = cartan_matrix("A", 2)
T = lattice_isometry(A2, A2)
assert T is not None and mat_eq(mat_mul(mat_mul(T, A2), transpose(T)), A2)
assert lattice_isometry(A2, [[4, -2], [-2, 4]]) is None
# D4 vs A1^4: same rank/det (D4 det 4, A1^4 det 16) differ -> None
D4 = cartan_matrix("D", 4)
A14 = [[2 if i == j else 0 for j in range(4)] for i in range(4)]
assert lattice_isometry(D4, A14) is None
# A3 in a skewed basis
A3 = cartan_matrix("A", 3)
U = [[1, 2, 1], [0, 1, 3], [0, 0, 1]]
A3s = mat_mul(mat_mul(U, A3), transpose(U))
T = lattice_isometry(A3, A3s)
assert T is not None and mat_eq(mat_mul(mat_mul(T, A3s), transpose(T)), A3)
print("lattice_isometry ok")

# 6. disc forms: A3 against itself in a skewed basis
LA = root_lattice("A", 3, sign=-1)
DA = LA.discriminant_group()
assert DA.cyclic_orders == [4]
A3n = [[-x for x in row] for row in A3s]
DB = Lattice(A3n).discriminant_group()
assert disc_form_isometry(DA, DB)
L1 = Lattice([[2]])
L2_ = Lattice([[-2]])
assert not disc_form_isometry(L1.discriminant_group(), L2_.discriminant_group())
print("disc_form_isometry ok")

# has_minus_two_vector
flag, wit = has_minus_two_vector(root_lattice("A", 2, sign=-1).gram)
assert flag and wit is not None
flag, wit = has_minus_two_vector([[-4]])
assert not flag and wit is None
print("minus-two ok")
