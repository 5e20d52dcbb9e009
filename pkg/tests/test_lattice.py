import random
from fractions import Fraction

from k3lat.lattice import (
    DiscriminantForm,
    Lattice,
    direct_sum,
    express_in_basis,
    gram_of_rows,
    group_generated_by,
    rescale,
    signature_of_gram,
    span_intersection,
    sublattice_index,
)
from k3lat.matrix import det, identity_matrix
from k3lat.standard import hyperbolic_plane, k3_lattice, root_lattice


def _random_symmetric(rng, n, lo=-4, hi=4):
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            A[i][j] = A[j][i] = rng.randint(lo, hi)
    return A


def test_signature_known_lattices():
    assert hyperbolic_plane().signature() == (1, 1, 0)
    assert root_lattice("E", 8, sign=-1).signature() == (0, 8, 0)
    assert k3_lattice().signature() == (3, 19, 0)
    assert signature_of_gram([[0, 1], [1, 0]]) == (1, 1, 0)
    assert signature_of_gram([[0, 0], [0, 3]]) == (1, 0, 1)


def test_signature_counts_match_sylvester():
    # p + m + z == n and p - m tracks the diagonalized form
    rng = random.Random(31)
    for _ in range(40):
        n = rng.randint(1, 5)
        G = _random_symmetric(rng, n)
        p, m, z = signature_of_gram(G)
        assert p + m + z == n
        assert (z == 0) == (det(G) != 0)
        if z == 0:
            sign = 1 if det(G) > 0 else -1
            assert sign == (-1) ** m


def test_discriminant_group_order_is_abs_det():
    rng = random.Random(41)
    done = 0
    while done < 50:
        n = rng.randint(1, 4)
        G = _random_symmetric(rng, n)
        if det(G) == 0:
            continue
        done += 1
        D = DiscriminantForm(G)
        assert D.group_order == abs(det(G))
        prod = 1
        for c in D.cyclic_orders:
            prod *= c
        assert prod == D.group_order


def test_discriminant_form_known_values():
    a1 = root_lattice("A", 1)
    D = DiscriminantForm(a1)
    assert D.cyclic_orders == [2]
    gen = [1]
    assert D.q(gen) == Fraction(1, 2)

    e8 = root_lattice("E", 8)
    assert DiscriminantForm(e8).cyclic_orders == []
    assert e8.is_unimodular() and e8.is_even()

    u2 = rescale(hyperbolic_plane(), 2)
    D2 = DiscriminantForm(u2)
    assert D2.cyclic_orders == [2, 2]
    vals = sorted(D2.q(x) for x in D2.elements())
    assert vals == [Fraction(0), Fraction(0), Fraction(0), Fraction(1)]


def test_discriminant_opposite_negates_q():
    a3 = root_lattice("A", 3)
    D = DiscriminantForm(a3)
    O = D.opposite()
    assert D.cyclic_orders == O.cyclic_orders == [4]
    # q values of the opposite are the negatives mod 2Z, as multisets
    dv = sorted(D.q(x) % 2 for x in D.elements())
    ov = sorted((-O.q(x)) % 2 for x in O.elements())
    assert dv == ov


def test_reduce_and_lift_round_trip():
    a3 = root_lattice("A", 3)
    D = DiscriminantForm(a3)
    for x in D.elements():
        v = D.lift(x)
        assert D.reduce(v) == tuple(x)


def test_direct_sum_and_rescale():
    L = direct_sum(hyperbolic_plane(), root_lattice("A", 2, sign=-1))
    assert L.rank == 4
    assert L.signature() == (1, 3, 0)
    assert L.determinant() == -3
    M = rescale(L, 3)
    assert M.determinant() == (3 ** 4) * -3
    assert M.gram[0][1] == 3


def test_sublattice_saturation_and_complement():
    k3 = k3_lattice()
    # index-2 subgroup of the first hyperbolic plane
    S = k3.sublattice([[2, 0] + [0] * 20, [0, 1] + [0] * 20])
    assert S.index_in_saturation() == 2
    assert not S.is_primitive()
    sat = S.saturation()
    assert sat.index_in_saturation() == 1
    comp = sat.orthogonal_complement()
    assert comp.rank == 20
    assert comp.is_primitive()
    assert signature_of_gram(comp.gram()) == (2, 18, 0)


def test_sublattice_index_and_group_generated_by():
    big = identity_matrix(3)
    small = [[2, 0, 0], [0, 3, 0], [0, 0, 1]]
    assert sublattice_index(small, big) == 6
    gens = group_generated_by([[2, 0], [0, 2], [1, 1]])
    assert sublattice_index(gens, identity_matrix(2)) == 2


def test_span_intersection():
    b1 = [[1, 0, 0], [0, 1, 0]]
    b2 = [[0, 1, 0], [0, 0, 1]]
    I = span_intersection(b1, b2)
    assert len(I) == 1
    v = I[0]
    assert v[0] == 0 and v[2] == 0 and abs(v[1]) == 1


def test_express_in_basis():
    basis = [[1, 1, 0], [0, 1, 1]]
    rows = [[1, 2, 1], [2, 2, 0]]
    X = express_in_basis(rows, basis)
    assert X == [[1, 1], [2, 0]]
    assert express_in_basis([[1, 0, 0]], basis) is None


def test_gram_of_rows_is_restriction():
    e8 = root_lattice("E", 8, sign=-1)
    rows = [[1, 0, 0, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 0]]
    G = gram_of_rows(rows, e8.gram)
    assert G[0][0] == -2 and G[1][1] == -2
    assert G[0][1] == G[1][0] == e8.gram[0][2]


def test_even_unimodular_checks():
    u = hyperbolic_plane()
    assert u.is_even() and u.is_unimodular()
    k3 = k3_lattice()
    assert k3.is_even() and k3.is_unimodular()
    assert abs(k3.determinant()) == 1
    odd = Lattice([[1]])
    assert not odd.is_even()
