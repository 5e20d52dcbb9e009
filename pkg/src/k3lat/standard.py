"""Standard lattices: U, ADE root lattices, the K3 lattice, reflections.

Constructors return NamedLattice objects carrying a name and a table of
distinguished coordinate vectors (e and f for U, simple roots for the ADE
types, block generators for K3).
"""

from fractions import Fraction

from .lattice import Lattice, direct_sum
from .matrix import identity_matrix, is_integral, mat_mul, to_int_matrix


class UnsupportedRootSystem(ValueError):
    pass


class NotAMinusTwoVector(ValueError):
    pass


class NamedLattice(Lattice):
    """A Lattice with a name and distinguished coordinate vectors."""

    def __init__(self, gram, name, distinguished=None, labels=None,
                 allow_degenerate=False):
        super().__init__(gram, labels=labels, allow_degenerate=allow_degenerate)
        self.name = name
        self.distinguished = dict(distinguished or {})

    @property
    def lattice(self):
        return self

    def __repr__(self):
        return "NamedLattice(%r, rank %d)" % (self.name, self.rank)


def _chain_edges(n):
    return [(i, i + 1) for i in range(n - 1)]


def _ade_edges(kind, n):
    if kind == "A":
        if n < 1:
            raise UnsupportedRootSystem("A_n needs n >= 1")
        return _chain_edges(n)
    if kind == "D":
        if n < 4:
            raise UnsupportedRootSystem("D_n needs n >= 4")
        edges = _chain_edges(n - 1)[:-1]  # 1..n-2 chain
        edges.append((n - 3, n - 2))
        edges.append((n - 3, n - 1))
        return edges
    if kind == "E":
        if n not in (6, 7, 8):
            raise UnsupportedRootSystem("E_n needs n in {6,7,8}")
        # numbering with the short branch at node 2, attached to node 4
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if n >= 7:
            edges.append((5, 6))
        if n == 8:
            edges.append((6, 7))
        return edges
    raise UnsupportedRootSystem("kind must be A, D or E")


def cartan_matrix(kind, n):
    """Cartan matrix of the simply laced root system, 2 on the diagonal."""
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2
    for i, j in _ade_edges(kind, n):
        C[i][j] = -1
        C[j][i] = -1
    return C


def root_lattice(kind, n, sign=1):
    """Root lattice in its simple-root basis, Gram = sign * Cartan."""
    assert sign in (1, -1)
    C = cartan_matrix(kind, n)
    if sign == -1:
        C = [[-x for x in row] for row in C]
    name = "%s%d" % (kind, n) + ("(-1)" if sign == -1 else "")
    dist = {}
    for i in range(n):
        v = [0] * n
        v[i] = 1
        dist["alpha%d" % (i + 1)] = v
    return NamedLattice(C, name, dist)


def hyperbolic_plane(scale=1):
    """U(scale): Gram [[0, s], [s, 0]] with distinguished e, f."""
    name = "U" if scale == 1 else "U(%d)" % scale
    return NamedLattice([[0, scale], [scale, 0]], name,
                        {"e": [1, 0], "f": [0, 1]})


def hyperbolic_u():
    return hyperbolic_plane(1)


def z_zero():
    """Z as a rank-one lattice with identically zero form."""
    return NamedLattice([[0]], "Zzero", {"z": [1]}, allow_degenerate=True)


def k3_lattice():
    """The even unimodular lattice of signature (3, 19).

    Basis order: three hyperbolic planes, then two copies of the negated
    E8 lattice. Labels name the blocks for readability of reports, and
    every label doubles as a distinguished vector.
    """
    blocks = [hyperbolic_plane(), hyperbolic_plane(), hyperbolic_plane(),
              root_lattice("E", 8, -1), root_lattice("E", 8, -1)]
    labels = []
    for k in range(3):
        labels += ["u%d_e" % (k + 1), "u%d_f" % (k + 1)]
    for k in range(2):
        labels += ["e8%s_%d" % ("ab"[k], i + 1) for i in range(8)]
    gram = direct_sum(*blocks).gram
    dist = {}
    for i, lab in enumerate(labels):
        v = [0] * 22
        v[i] = 1
        dist[lab] = v
    return NamedLattice(gram, "K3", dist, labels=labels)


def e8_coordinate_simple_roots():
    """Simple roots of E8 in the even coordinate model of R^8.

    Rows pair under the standard dot product to the Cartan matrix of E8;
    half-integer entries are Fractions. Useful as a second, independent
    construction of the E8 Gram matrix (and, scaled by -2, of E8(-2)).
    """
    h = Fraction(1, 2)
    rows = [
        [h, -h, -h, -h, -h, -h, -h, h],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [-1, 1, 0, 0, 0, 0, 0, 0],
        [0, -1, 1, 0, 0, 0, 0, 0],
        [0, 0, -1, 1, 0, 0, 0, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
        [0, 0, 0, 0, -1, 1, 0, 0],
        [0, 0, 0, 0, 0, -1, 1, 0],
    ]
    return rows


def reflection_general(gram, v):
    """Matrix of x -> x - 2 (x.v)/(v.v) v acting on row vectors.

    Works for any anisotropic v for which the result is integral (norm +-2
    vectors of an even lattice always qualify; asserts otherwise).
    """
    if isinstance(gram, Lattice):
        gram = gram.gram
    n = len(gram)
    vv = sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))
    assert vv != 0
    R = []
    for i in range(n):
        ev = sum(gram[i][j] * v[j] for j in range(n))  # e_i . v
        row = [Fraction(-2 * ev * v[j], vv) for j in range(n)]
        row[i] += 1
        R.append(row)
    assert is_integral(R), "reflection is not defined over Z for this vector"
    return to_int_matrix(R)


def reflection(ambient, v):
    """The reflection x -> x + (v.x) v in a vector of norm exactly -2."""
    gram = ambient.gram if isinstance(ambient, Lattice) else ambient
    n = len(gram)
    vv = sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))
    if vv != -2:
        raise NotAMinusTwoVector("reflection vector has norm %s, not -2" % vv)
    return reflection_general(gram, v)


def cycle_coxeter_matrix(n):
    """Order-(n+1) rotation on the A_n root lattice.

    Sends the j-th simple root to the (j+1)-st and the last one to minus
    the sum of all of them; characteristic polynomial 1 + x + ... + x^n.
    Preserves both the A_n and the A_n(-1) Gram matrices.
    """
    M = [[0] * n for _ in range(n)]
    for j in range(n - 1):
        M[j][j + 1] = 1
    for c in range(n):
        M[n - 1][c] = -1
    return M


def coxeter_element(kind, n):
    """Cyclic Coxeter transformation; type A only."""
    if kind != "A":
        raise UnsupportedRootSystem("Coxeter elements provided for type A only")
    if n < 1:
        raise UnsupportedRootSystem("A_n needs n >= 1")
    return cycle_coxeter_matrix(n)
