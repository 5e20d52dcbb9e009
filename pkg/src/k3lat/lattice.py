"""Integral lattices presented by Gram matrices.

A lattice here is Z^n equipped with a symmetric integer Gram matrix; basis
vectors are rows and an isometry acts on the right of a row vector. A
Sublattice is a row span inside an ambient lattice. A DiscriminantForm is
the finite quadratic form on dual-quotient of a nondegenerate even lattice.
"""

from fractions import Fraction
import itertools
import math

from .matrix import (
    copy_matrix,
    det,
    dot,
    hnf_basis,
    identity_matrix,
    int_kernel,
    inverse,
    is_integral,
    mat_eq,
    mat_mul,
    row_hnf,
    snf,
    solve_right,
    to_fraction_matrix,
    to_int_matrix,
    transpose,
    vec_mat,
)


def signature_of_gram(gram):
    """Inertia (n_plus, n_minus, n_zero) of a rational symmetric matrix."""
    n = len(gram)
    M = to_fraction_matrix(gram)
    for i in range(n):
        for j in range(i):
            assert M[i][j] == M[j][i], "Gram matrix must be symmetric"
    active = list(range(n))
    plus = minus = 0

    def add_row_col(i, j):
        # simultaneous row and column addition keeps the form congruent
        for c in range(n):
            M[i][c] += M[j][c]
        for r in range(n):
            M[r][i] += M[r][j]

    while active:
        piv = None
        for i in active:
            if M[i][i] != 0:
                piv = i
                break
        if piv is None:
            pair = None
            for i in active:
                for j in active:
                    if i != j and M[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                return plus, minus, len(active)
            add_row_col(*pair)
            continue
        d = M[piv][piv]
        if d > 0:
            plus += 1
        else:
            minus += 1
        active.remove(piv)
        for k in active:
            if M[k][piv] != 0:
                f = M[k][piv] / d
                for c in range(n):
                    M[k][c] -= f * M[piv][c]
                for r in range(n):
                    M[r][k] -= f * M[r][piv]
    return plus, minus, 0


def express_in_basis(rows, basis):
    """Coefficient matrix X with X * basis == rows over Q, or None."""
    out = []
    for r in rows:
        x = solve_right(basis, r)
        if x is None:
            return None
        out.append(x)
    return out


def in_rowspan_z(basis, vec):
    """Whether vec lies in the integer row span of basis."""
    H, _ = row_hnf(basis)
    H = [row for row in H if any(row)]
    v = list(vec)
    for row in H:
        j = next(i for i, x in enumerate(row) if x)
        if v[j] % row[j]:
            return False
        q = v[j] // row[j]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


class Lattice:
    """Free Z-module with a symmetric integer bilinear form."""

    def __init__(self, gram, labels=None, allow_degenerate=False):
        n = len(gram)
        for row in gram:
            assert len(row) == n
        for i in range(n):
            for j in range(i):
                assert gram[i][j] == gram[j][i], "Gram matrix must be symmetric"
        self.gram = [list(map(int, row)) for row in gram]
        self.rank = n
        self.labels = list(labels) if labels else None
        self._sig = None
        self._det = None
        self._inv = None
        if not allow_degenerate:
            assert self.determinant() != 0, "degenerate form; pass allow_degenerate"

    def bilinear(self, x, y):
        assert len(x) == len(y) == self.rank
        return dot(vec_mat(x, self.gram), y)

    def q(self, x):
        return self.bilinear(x, x)

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def determinant(self):
        if self._det is None:
            self._det = det(self.gram)
        return self._det

    def signature(self):
        """Inertia triple (n_plus, n_minus, n_zero)."""
        if self._sig is None:
            self._sig = signature_of_gram(self.gram)
        return self._sig

    def sig_plus(self):
        return self.signature()[0]

    def is_negative_definite(self):
        p, m, z = signature_of_gram(self.gram)
        return p == 0 and z == 0

    def is_positive_definite(self):
        p, m, z = signature_of_gram(self.gram)
        return m == 0 and z == 0

    def gram_inverse(self):
        if self._inv is None:
            self._inv = inverse(self.gram)
        return self._inv

    def dual_basis(self):
        """Rows are the dual basis vectors in lattice coordinates."""
        return self.gram_inverse()

    def is_unimodular(self):
        return abs(self.determinant()) == 1

    def discriminant_group(self):
        return DiscriminantForm(self)

    def sublattice(self, basis):
        return Sublattice(self, basis)

    def full_sublattice(self):
        return Sublattice(self, identity_matrix(self.rank))

    def __repr__(self):
        return "Lattice(rank=%d, det=%s)" % (self.rank, self.determinant())


def rescale(lat, c):
    """Same module, form multiplied by the integer c."""
    assert c != 0
    return Lattice([[c * x for x in row] for row in lat.gram])


def direct_sum(
    *lattices,
):
    grams = [l.gram for l in lattices]
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    ofs = 0
    labels = []
    have_labels = all(l.labels for l in lattices)
    for l in lattices:
        g = l.gram
        k = len(g)
        for i in range(k):
            for j in range(k):
                out[ofs + i][ofs + j] = g[i][j]
        if have_labels:
            labels.extend(l.labels)
        ofs += k
    allow = any(det(g) == 0 for g in grams)
    return Lattice(out, labels=labels if have_labels else None,
                   allow_degenerate=allow)


class Sublattice:
    """Integer row span of `basis` inside an ambient lattice."""

    def __init__(self, ambient, basis):
        self.ambient = ambient
        self.basis = [list(map(int, row)) for row in basis]
        for row in self.basis:
            assert len(row) == ambient.rank
        from .matrix import rank as qrank
        assert qrank(self.basis) == len(self.basis), "basis rows must be independent"

    @property
    def rank(self):
        return len(self.basis)

    def gram(self):
        B = self.basis
        BG = mat_mul(B, self.ambient.gram)
        return mat_mul(BG, transpose(B))

    def as_lattice(self, allow_degenerate=False):
        return Lattice(self.gram(), allow_degenerate=allow_degenerate)

    def contains(self, vec):
        return in_rowspan_z(self.basis, vec)

    def saturation_basis(self):
        if not self.basis:
            return []
        return int_kernel(int_kernel(self.basis))

    def saturation(self):
        return Sublattice(self.ambient, self.saturation_basis())

    def index_in_saturation(self):
        if not self.basis:
            return 1
        S, _, _ = snf(self.basis)
        out = 1
        for i in range(min(len(S), len(S[0]))):
            if S[i][i]:
                out *= S[i][i]
        return out

    def is_primitive(self):
        return self.index_in_saturation() == 1

    def orthogonal_complement(self):
        """Vectors of the ambient lattice pairing to zero with this span."""
        if not self.basis:
            return self.ambient.full_sublattice()
        A = mat_mul(self.basis, self.ambient.gram)
        return Sublattice(self.ambient, int_kernel(A))

    def __repr__(self):
        return "Sublattice(rank=%d of ambient rank %d)" % (
            self.rank, self.ambient.rank)


def sublattice_index(sub_basis, sup_basis):
    """Index [sup : sub] for two bases of the same rational span."""
    C = express_in_basis(sub_basis, sup_basis)
    assert C is not None, "first span must lie inside the second"
    assert is_integral(C), "first lattice must be a subgroup of the second"
    d = det(to_int_matrix(C))
    assert d != 0
    return abs(d)


def group_generated_by(rows):
    """Basis of the subgroup of Q^n generated by rational row vectors.

    Returned rows are Fractions (integral entries stay integral Fractions);
    the common-denominator trick reduces to an integer HNF.
    """
    if not rows:
        return []
    rows_f = [[Fraction(x) for x in r] for r in rows]
    d = 1
    for r in rows_f:
        for x in r:
            d = math.lcm(d, x.denominator)
    ints = [[int(x * d) for x in r] for r in rows_f]
    H = hnf_basis(ints)
    return [[Fraction(x, d) for x in row] for row in H]


def gram_of_rows(rows, ambient_gram):
    """Gram matrix rows * ambient_gram * rows^T (rational entries allowed)."""
    G = to_fraction_matrix(ambient_gram)
    R = [[Fraction(x) for x in r] for r in rows]
    return mat_mul(mat_mul(R, G), transpose(R))


def span_intersection(basis1, basis2):
    """Saturated intersection: (span_Q basis1) ∩ (span_Q basis2) ∩ Z^n."""
    if not basis1 or not basis2:
        return []
    k1 = int_kernel(basis1)
    k2 = int_kernel(basis2)
    if not k1 and not k2:
        n = len(basis1[0])
        return identity_matrix(n)
    return int_kernel(k1 + k2)


class DiscriminantForm:
    """Finite quadratic form on dual(L)/L for a nondegenerate even lattice.

    Elements are tuples of residues against `orders` (which form a
    divisibility chain). `lifts` holds one rational representative per
    generator, in lattice coordinates of the source.
    """

    def __init__(self, lattice_or_gram, _negate=False):
        if isinstance(lattice_or_gram, Lattice):
            gram = lattice_or_gram.gram
        else:
            gram = lattice_or_gram
        if _negate:
            gram = [[-x for x in row] for row in gram]
        self.gram = copy_matrix(gram)
        # quadratic values mod 2 exist only for even source lattices
        self.even = all(gram[i][i] % 2 == 0 for i in range(len(gram)))
        S, U, V = snf(gram)
        n = len(gram)
        self.orders = []
        self.lifts = []
        self._snf_V = V
        self._snf_diag = [S[i][i] for i in range(n)]
        self._gen_idx = []
        for i in range(n):
            s = S[i][i]
            assert s != 0, "lattice must be nondegenerate"
            if s > 1:
                self.orders.append(s)
                self.lifts.append([Fraction(U[i][j], s) for j in range(n)])
                self._gen_idx.append(i)
        self._pair_table = None

    @property
    def cyclic_orders(self):
        return list(self.orders)

    @property
    def group_order(self):
        out = 1
        for o in self.orders:
            out *= o
        return out

    def opposite(self):
        return DiscriminantForm(self.gram, _negate=True)

    def _tables(self):
        # generator pairing tables; everything downstream is table lookups
        if self._pair_table is None:
            k = len(self.orders)
            bil = [[Fraction(0)] * k for _ in range(k)]
            quad = [Fraction(0)] * k
            for i in range(k):
                gi = vec_mat(self.lifts[i], to_fraction_matrix(self.gram))
                for j in range(k):
                    bil[i][j] = dot(gi, self.lifts[j])
                quad[i] = bil[i][i]
            self._pair_table = (bil, quad)
        return self._pair_table

    def bilinear(self, x, y):
        """Pairing in Q/Z, returned in [0, 1)."""
        bil, _ = self._tables()
        acc = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        acc += xi * yj * bil[i][j]
        return acc % 1

    def q(self, x):
        """Quadratic value in Q/2Z, returned in [0, 2)."""
        if not self.even:
            raise ValueError("quadratic refinement requires an even lattice")
        bil, quad = self._tables()
        acc = Fraction(0)
        k = len(x)
        for i in range(k):
            if x[i]:
                acc += x[i] * x[i] * quad[i]
                for j in range(i + 1, k):
                    if x[j]:
                        acc += 2 * x[i] * x[j] * bil[i][j]
        return acc % 2

    def lift(self, x):
        """A rational representative in source-lattice coordinates."""
        n = len(self.gram)
        out = [Fraction(0)] * n
        for xi, l in zip(x, self.lifts):
            if xi:
                for j in range(n):
                    out[j] += xi * l[j]
        return out

    def zero(self):
        return tuple([0] * len(self.orders))

    def add(self, x, y):
        return tuple((a + b) % o for a, b, o in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % o for a, o in zip(x, self.orders))

    def scale(self, c, x):
        return tuple((c * a) % o for a, o in zip(x, self.orders))

    def element_order(self, x):
        out = 1
        for a, o in zip(x, self.orders):
            out = math.lcm(out, o // math.gcd(o, a))
        return out

    def elements(self):
        return itertools.product(*[range(o) for o in self.orders])

    def reduce(self, rational_vec):
        """Class of a dual vector (rational source coordinates) as a tuple.

        The vector must pair integrally with the source lattice.
        """
        y = vec_mat([Fraction(c) for c in rational_vec],
                    to_fraction_matrix(self.gram))
        if not all(c.denominator == 1 for c in y):
            raise ValueError("vector does not pair integrally with the lattice")
        t_full = vec_mat([int(c) for c in y], self._snf_V)
        return tuple(t_full[i] % self._snf_diag[i] for i in self._gen_idx)

    def __repr__(self):
        return "DiscriminantForm(orders=%s)" % (self.orders,)
