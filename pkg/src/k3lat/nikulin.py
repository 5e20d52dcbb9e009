"""The negative definite lattice family N_p, L_p, K_p for p in {2, 3, 5, 7}.

Start from nu disjoint A_{p-1}(-1) blocks on basis vectors D_{i,j}
(nu(p+1) = 24), adjoin the fractional class varpi built from the weight
vector k to get the overlattice N_p, cut out the index-p sublattice L_p
with the Weyl-type vector rho, and extend by an isotropic direction to
reach K_p = N_p + U. Every arithmetic identity these lattices are supposed
to satisfy is verified at construction time with exact arithmetic.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import math

from .matrix import (
    char_poly,
    det,
    dot,
    hnf_basis,
    identity_matrix,
    int_kernel,
    inverse,
    is_integral,
    mat_eq,
    mat_mul,
    mat_sub,
    matrix_order,
    to_fraction_matrix,
    to_int_matrix,
    transpose,
    vec_mat,
)
from .lattice import (
    DiscriminantForm,
    Lattice,
    direct_sum,
    express_in_basis,
    gram_of_rows,
    group_generated_by,
    signature_of_gram,
    sublattice_index,
)
from .polys import cyclotomic, poly_divmod, poly_trim
from .standard import cartan_matrix, cycle_coxeter_matrix, hyperbolic_plane, root_lattice
from .shortvec import (
    SearchBudgetExceeded,
    disc_form_isometry,
    enumerate_vectors,
    lattice_isometry,
    min_norm_and_kissing,
)


class UnsupportedPrime(ValueError):
    pass


K_VECTORS = {2: [1] * 8, 3: [1] * 6, 5: [1, 1, 2, 2], 7: [1, 2, 3]}
VARPI_NORMS = {2: -4, 3: -4, 5: -8, 7: -12}


@dataclass
class NikulinFamily:
    """All distinguished data of the family at one prime.

    Vectors (varpi, rho, the D_{i,j}) are stored in the D-coordinate frame
    where H2D is the orthogonal sum of negated Cartan blocks; N_p and L_p
    carry their own Gram matrices plus basis rows in that frame.
    """
    p: int
    nu: int
    k: list
    labels: list
    gram_D: list
    varpi: list
    rho: list
    basis_N: list           # rows, D frame, denominators divide p
    N: Lattice
    L_basis_in_N: list = None
    L: Lattice = None
    L_basis_in_D: list = None
    rho_in_N: list = None
    sigma_D: list = None
    sigma_N: list = None
    sigma_L: list = None
    Nhat: Lattice = None
    Nhat_basis: list = None
    K: Lattice = None
    sigma_K: list = None
    K_eprime: list = None
    checks: dict = field(default_factory=dict)

    def d_index(self, i, j):
        """Flat index of D_{i,j}, i in 1..nu, j in 1..p-1."""
        return (i - 1) * (self.p - 1) + (j - 1)

    def d_vector(self, i, j):
        v = [0] * (self.nu * (self.p - 1))
        v[self.d_index(i, j)] = 1
        return v


def _pair(gram, x, y):
    return dot(vec_mat([Fraction(a) for a in x], to_fraction_matrix(gram)), y)


def build_family(p):
    """Construct N_p from the A_{p-1}(-1)^nu blocks and the class varpi."""
    if p not in K_VECTORS:
        raise UnsupportedPrime("p must be one of 2, 3, 5, 7")
    k = K_VECTORS[p]
    nu = len(k)
    assert nu * (p + 1) == 24
    m = nu * (p - 1)
    block = [[-x for x in row] for row in cartan_matrix("A", p - 1)] \
        if p > 2 else [[-2]]
    gram_D = [[0] * m for _ in range(m)]
    for i in range(nu):
        for a in range(p - 1):
            for b in range(p - 1):
                gram_D[i * (p - 1) + a][i * (p - 1) + b] = block[a][b]
    labels = ["D_%d_%d" % (i + 1, j + 1)
              for i in range(nu) for j in range(p - 1)]

    varpi = [Fraction(0)] * m
    rho = [Fraction(0)] * m
    for i in range(1, nu + 1):
        for j in range(1, p):
            idx = (i - 1) * (p - 1) + (j - 1)
            varpi[idx] = Fraction(k[i - 1] * j, p)
            rho[idx] = -Fraction(j * (p - j), 2)

    # the fractional class is integral against every block vector
    for idx in range(m):
        e = [1 if t == idx else 0 for t in range(m)]
        assert _pair(gram_D, varpi, e).denominator == 1

    ww = _pair(gram_D, varpi, varpi)
    assert ww == VARPI_NORMS[p], (p, ww)
    assert ww == Fraction((1 - p) * sum(x * x for x in k), p)
    assert ww % 2 == 0, "overlattice class must have even norm"

    rr = _pair(gram_D, rho, rho)
    assert rr == -2 * (p - 1) * p

    if p > 2:
        assert all(x.denominator == 1 for x in rho), "rho integral for odd p"
    else:
        assert all((2 * x).denominator == 1 for x in rho)
        assert [-x for x in rho] == varpi, "for p = 2 rho is minus varpi"

    unit_rows = [[Fraction(1) if t == s else Fraction(0) for t in range(m)]
                 for s in range(m)]
    basis_N = group_generated_by(unit_rows + [varpi])
    gram_N = gram_of_rows(basis_N, gram_D)
    assert is_integral(gram_N), "N_p must be an integral lattice"
    gram_N = to_int_matrix(gram_N)
    N = Lattice(gram_N)
    assert N.is_even()
    assert sublattice_index(unit_rows, basis_N) == p
    assert det(gram_N) * p * p == det(gram_D)

    fam = NikulinFamily(p=p, nu=nu, k=list(k), labels=labels, gram_D=gram_D,
                        varpi=varpi, rho=rho, basis_N=basis_N, N=N)

    disc_orders = N.discriminant_group().cyclic_orders
    assert disc_orders == [p] * (nu - 2), disc_orders
    fam.checks["disc_N_orders"] = disc_orders

    # no new roots appear in the overlattice
    roots_N = enumerate_vectors(N, -2)
    assert 2 * len(roots_N) == nu * p * (p - 1)
    in_H2D = 0
    for v in roots_N:
        w = vec_mat([Fraction(x) for x in v], basis_N)
        if all(x.denominator == 1 for x in w):
            in_H2D += 1
    assert in_H2D == len(roots_N), "roots of N_p must all lie in H2D"
    fam.checks["root_count_N"] = 2 * len(roots_N)
    return fam


def k_vector_uniqueness(p):
    """The square multiset of k is the only one summing to 0 in F_p.

    Exhausts all multisets of nonzero squares of length nu. For p = 2
    there is nothing to check and the report says so.
    """
    if p == 2:
        return {"p": 2, "vacuous": True}
    k = K_VECTORS[p]
    nu = len(k)
    squares = sorted({(x * x) % p for x in range(1, p)})
    target = sorted((x * x) % p for x in k)
    solutions = [list(c)
                 for c in itertools.combinations_with_replacement(squares, nu)
                 if sum(c) % p == 0]
    report = {"p": p, "vacuous": False, "solutions": solutions,
              "expected": target,
              "unique": solutions == [target]}
    assert report["unique"], report
    return report


def build_Lp(fam):
    """L_p = kernel of x -> rho.x mod p inside N_p; index p."""
    p = fam.p
    m = len(fam.basis_N)
    w = []
    for row in fam.basis_N:
        val = _pair(fam.gram_D, fam.rho, row)
        assert val.denominator == 1, "rho must pair integrally with N_p"
        w.append(int(val) % p)
    assert any(w), "the rho functional must be onto Z/p"
    t0 = next(t for t in range(m) if w[t])
    inv = pow(w[t0], -1, p)
    rows = []
    for t in range(m):
        if t == t0:
            e = [0] * m
            e[t0] = p
            rows.append(e)
        else:
            e = [0] * m
            e[t] = 1
            e[t0] = -((w[t] * inv) % p)
            rows.append(e)
    L_in_N = hnf_basis(rows)
    assert sublattice_index(L_in_N, identity_matrix(m)) == p
    gram_L = to_int_matrix(gram_of_rows(L_in_N, fam.N.gram))
    # re-express in a short basis: enumeration and searches depend on it
    from .shortvec import _short_basis
    R = _short_basis([[-x for x in row] for row in gram_L])
    if R is not None:
        L_in_N = to_int_matrix(mat_mul(R, L_in_N))
        gram_L = to_int_matrix(gram_of_rows(L_in_N, fam.N.gram))
    L = Lattice(gram_L)
    plus, minus, zero = L.signature()
    assert (plus, zero) == (0, 0) and minus == fam.nu * (p - 1)
    assert L.is_even()

    rho_in_N = express_in_basis([fam.rho], fam.basis_N)[0]
    assert all(x.denominator == 1 for x in rho_in_N)
    rho_in_N = [int(x) for x in rho_in_N]
    assert sum(a * b for a, b in zip(rho_in_N, w)) % p == 0, "rho lies in L_p"
    rho_in_L = express_in_basis([rho_in_N], L_in_N)[0]
    assert all(x.denominator == 1 for x in rho_in_L)

    disc = L.discriminant_group()
    assert disc.cyclic_orders == [p] * fam.nu, disc.cyclic_orders

    no_roots = enumerate_vectors(L, -2)
    assert not no_roots, "L_p contains no -2 vectors"

    fam.L_basis_in_N = L_in_N
    fam.L = L
    fam.L_basis_in_D = mat_mul(to_fraction_matrix(L_in_N), fam.basis_N)
    fam.rho_in_N = rho_in_N
    fam.checks["disc_L_orders"] = disc.cyclic_orders
    fam.checks["L_has_no_roots"] = True
    return L


def build_sigma(fam):
    """The blockwise Coxeter rotation sigma = (sigma_1^{k_1}, ...)."""
    p, nu = fam.p, fam.nu
    m = nu * (p - 1)
    C = cycle_coxeter_matrix(p - 1)
    sigma_D = [[0] * m for _ in range(m)]
    for i in range(nu):
        Ck = identity_matrix(p - 1)
        for _ in range(fam.k[i] % p):
            Ck = mat_mul(Ck, C)
        for a in range(p - 1):
            for b in range(p - 1):
                sigma_D[i * (p - 1) + a][i * (p - 1) + b] = Ck[a][b]
    assert mat_eq(mat_mul(mat_mul(sigma_D, fam.gram_D), transpose(sigma_D)),
                  fam.gram_D)

    # restrict to N_p (must be integral: sigma preserves the overlattice)
    imgs = mat_mul(fam.basis_N, to_fraction_matrix(sigma_D))
    sigma_N = express_in_basis(imgs, fam.basis_N)
    assert sigma_N is not None and is_integral(sigma_N)
    sigma_N = to_int_matrix(sigma_N)
    assert mat_eq(mat_mul(mat_mul(sigma_N, fam.N.gram), transpose(sigma_N)),
                  fam.N.gram)
    assert matrix_order(sigma_N, cap=2 * p) == p

    imgs = mat_mul(fam.L_basis_in_N, to_fraction_matrix(sigma_N))
    sigma_L = express_in_basis(imgs, fam.L_basis_in_N)
    assert sigma_L is not None and is_integral(sigma_L)
    sigma_L = to_int_matrix(sigma_L)
    assert mat_eq(mat_mul(mat_mul(sigma_L, fam.L.gram), transpose(sigma_L)),
                  fam.L.gram)
    assert matrix_order(sigma_L, cap=2 * p) == p

    # trivial action on the discriminant group of L_p
    n = len(sigma_L)
    Ginv = fam.L.gram_inverse()
    shift = mat_mul(Ginv, to_fraction_matrix(
        mat_sub(sigma_L, identity_matrix(n))))
    assert is_integral(shift), "sigma must act trivially on disc(L_p)"
    fam.checks["sigma_trivial_on_disc"] = True

    # (sigma - 1)(rho / p) lands in L_p
    rho_in_L = express_in_basis([fam.rho_in_N], fam.L_basis_in_N)[0]
    frac = [x / fam.p for x in rho_in_L]
    moved = vec_mat(frac, to_fraction_matrix(
        mat_sub(sigma_L, identity_matrix(n))))
    assert all(x.denominator == 1 for x in moved)
    fam.checks["sigma_shift_of_rho_over_p"] = True

    # char poly on L_p is a power of the p-th cyclotomic polynomial
    cp = char_poly(sigma_L)
    phi = [Fraction(x) for x in cyclotomic(p)]
    quo = [Fraction(x) for x in cp]
    power = 0
    while True:
        q, r = poly_divmod(quo, phi)
        if poly_trim(r):
            break
        quo = q
        power += 1
    assert power == fam.nu, "char poly must be Phi_p^nu"
    assert not poly_trim(poly_divmod(quo, [Fraction(1)])[1]) and len(
        poly_trim(quo)) == 1
    fam.checks["sigma_char_poly_power"] = power

    fam.sigma_D = sigma_D
    fam.sigma_N = sigma_N
    fam.sigma_L = sigma_L
    return sigma_N


def aut_trivial_on_disc_search(fam, budget=10 ** 6):
    """Search for all isometries of L_p acting trivially on disc(L_p).

    An isometry T is trivial on the discriminant iff Ginv (T - 1) is
    integral, a condition on the columns of T. The backtracking therefore
    builds S = T^t row by row: S preserves the rescaled dual form
    C = p * Ginv (integral since the discriminant has exponent p), each
    row must satisfy (s_i - e_i) C = 0 mod p, and transposing any complete
    solution gives a Gram isometry trivial on the discriminant.
    Completes for p = 2, 3 and reports the group; may exhaust the budget
    for p = 5, 7 and then reports inconclusive.
    """
    from .shortvec import _short_basis

    G = fam.L.gram
    n = len(G)
    p = fam.p
    Ginv = fam.L.gram_inverse()
    C = [[x * p for x in row] for row in Ginv]
    assert is_integral(C), "discriminant exponent must divide p"
    C = to_int_matrix(C)
    # rebase so the dual form has short diagonal, else pools explode;
    # the congruence (S - 1) C = 0 mod p is unimodular-covariant
    R = _short_basis([[-x for x in row] for row in C])
    if R is None:
        R = identity_matrix(n)
    Rinv = to_int_matrix(inverse(R))
    C = to_int_matrix(mat_mul(mat_mul(R, C), transpose(R)))
    norms = sorted({C[i][i] for i in range(n)})
    pool = {}
    try:
        for t in norms:
            vecs = enumerate_vectors(Lattice(C), t, budget=budget)
            pool[t] = [v for v in vecs] + [[-x for x in v] for v in vecs]
    except SearchBudgetExceeded:
        return {"p": fam.p, "complete": False, "inconclusive": True,
                "stage": "enumeration"}

    found = []
    chosen = []
    chosen_c = []
    nodes = 0

    def backtrack(i):
        nonlocal nodes
        if i == n:
            found.append([list(v) for v in chosen])
            return
        for wv in pool[C[i][i]]:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded("aut search budget")
            wc = vec_mat(wv, C)
            # (w - e_i) pairs into p Z^n against the dual basis
            if any((wc[k] - C[i][k]) % p for k in range(n)):
                continue
            ok = True
            for j in range(i):
                if dot(chosen_c[j], wv) != C[j][i]:
                    ok = False
                    break
            if not ok:
                continue
            chosen.append(wv)
            chosen_c.append(wc)
            backtrack(i + 1)
            chosen.pop()
            chosen_c.pop()

    try:
        backtrack(0)
    except SearchBudgetExceeded:
        return {"p": fam.p, "complete": False, "inconclusive": True,
                "stage": "backtracking", "nodes": nodes}

    mats = []
    for Sp in found:
        S = to_int_matrix(mat_mul(mat_mul(Rinv, Sp), R))
        T = transpose(S)
        assert mat_eq(mat_mul(mat_mul(T, G), transpose(T)), G)
        shift = mat_mul(Ginv, to_fraction_matrix(
            mat_sub(T, identity_matrix(n))))
        assert is_integral(shift)
        mats.append(T)
    order = len(mats)
    keys = {tuple(tuple(r) for r in T) for T in mats}
    assert tuple(tuple(r) for r in identity_matrix(n)) in keys
    assert tuple(tuple(r) for r in fam.sigma_L) in keys, \
        "sigma itself must appear in the stabilizer"
    for T in mats[:min(order, 8)]:
        for S in mats[:min(order, 8)]:
            assert tuple(tuple(r) for r in mat_mul(T, S)) in keys
    is_sigma_cyclic = order == fam.p
    report = {"p": fam.p, "complete": True, "inconclusive": False,
              "group_order": order, "equals_sigma_cyclic": is_sigma_cyclic,
              "nodes": nodes}
    if fam.p in (2, 3):
        assert is_sigma_cyclic, report
    return report


def build_hat_and_K(fam):
    """Degenerate extension N_hat and the even lattice K_p = N_p + U.

    Hat coordinates: the D frame plus one isotropic direction f scaled by
    1/p; x goes to x + (rho.x / p) f. K_p adds a second direction s with
    s.s = -2, s.f = 1; the change of basis (e := s + f, f) exhibits
    K_p as N_p plus a hyperbolic plane.
    """
    p = fam.p
    m = len(fam.basis_N)
    # N_hat: basis rows in (D, f) coordinates, Gram degenerate
    hat_rows = []
    for row in fam.basis_N:
        val = _pair(fam.gram_D, fam.rho, row) / p
        hat_rows.append(list(row) + [val])
    f_row = [Fraction(0)] * m + [Fraction(1)]
    hat_rows.append(f_row)
    gram_hat = [row[:] + [0] for row in fam.N.gram] + [[0] * (m + 1)]
    Nhat = Lattice(gram_hat, allow_degenerate=True)
    fam.Nhat = Nhat
    fam.Nhat_basis = hat_rows

    # sum over a full sigma-orbit of lifted classes, including j = 0, is f
    for i in range(1, fam.nu + 1):
        total = [Fraction(0)] * (m + 1)
        d0 = [Fraction(0)] * m
        for j in range(1, p):
            dv = fam.d_vector(i, j)
            lift = list(map(Fraction, dv)) + [_pair(fam.gram_D, fam.rho, dv) / p]
            total = [a + b for a, b in zip(total, lift)]
            d0 = [a - b for a, b in zip(d0, map(Fraction, dv))]
        lift0 = d0 + [_pair(fam.gram_D, fam.rho, d0) / p]
        tilde0 = [a + b for a, b in zip(lift0, f_row)]
        total = [a + b for a, b in zip(total, tilde0)]
        assert total == f_row, "orbit sum of lifted classes must equal f"
    fam.checks["orbit_sum_is_f"] = True

    # K_p in basis (i(n_1), ..., i(n_m), f, s)
    gram_K = [row[:] + [0, 0] for row in fam.N.gram]
    gram_K.append([0] * m + [0, 1])
    gram_K.append([0] * m + [1, -2])
    K = Lattice(gram_K)
    assert K.is_even()
    fam.K = K

    # (e := s + f, f) turns the last block into a hyperbolic plane
    T = identity_matrix(m + 2)
    T[m] = [0] * m + [1, 1]      # e = f + s
    T[m + 1] = [0] * m + [1, 0]  # f
    moved = mat_mul(mat_mul(T, gram_K), transpose(T))
    expected = [row[:] + [0, 0] for row in fam.N.gram]
    expected.append([0] * m + [0, 1])
    expected.append([0] * m + [1, 0])
    assert mat_eq(moved, expected), "K_p must split as N_p plus U"
    fam.checks["K_splits_off_U"] = True

    # rho pairs with s and the isotropic class as stated
    jrho = _flat_rho(fam)
    s = [0] * (m + 1) + [1]
    srho = _pair(gram_K, s, jrho)
    assert srho == 2 * (p - 1), srho
    v = [p * a + b for a, b in zip(s, jrho)]
    assert _pair(gram_K, v, v) == -2 * p
    fam.checks["s_dot_rho"] = int(srho)

    # rank N_p + 2 throughout; at p = 2 that is 8 + 2 with one positive square
    assert K.rank == fam.nu * (p - 1) + 2
    assert K.signature() == (1, fam.nu * (p - 1) + 1, 0)
    return Nhat, K


def _flat_rho(fam):
    """rho as a K_p vector with no f component (possible since rho is
    in L_p: the f correction (rho.rho)/p is an integer multiple of f)."""
    m = len(fam.basis_N)
    rr_over_p = _pair(fam.gram_D, fam.rho, fam.rho) / fam.p
    assert rr_over_p.denominator == 1
    return [Fraction(x) for x in fam.rho_in_N] + [-rr_over_p, Fraction(0)]


def _flat_L_basis(fam):
    """j(L_p) inside K_p: x + (-(rho.x)/p) f, integral exactly on L_p."""
    rows = []
    for lrow in fam.L_basis_in_N:
        x_D = vec_mat([Fraction(c) for c in lrow], fam.basis_N)
        val = _pair(fam.gram_D, fam.rho, x_D) / fam.p
        assert val.denominator == 1
        rows.append([Fraction(c) for c in lrow] + [-val, Fraction(0)])
    return rows


def Lp_complement_in_Kp(fam):
    """The orthogonal complement of L_p in K_p is U(p) on (e', f).

    e' := p s + rho + f is isotropic; the complement Gram is [[0,p],[p,0]];
    and the order-p rotation extends to K_p fixing e' and f pointwise.
    """
    p = fam.p
    m = len(fam.basis_N)
    gram_K = fam.K.gram
    jL = _flat_L_basis(fam)
    pairings = mat_mul(jL, to_fraction_matrix(gram_K))
    comp = int_kernel([[int(x) for x in row] for row in pairings])
    assert len(comp) == 2

    jrho = _flat_rho(fam)
    s = [Fraction(0)] * (m + 1) + [Fraction(1)]
    f = [Fraction(0)] * m + [Fraction(1), Fraction(0)]
    eprime = [p * a + b + c for a, b, c in zip(s, jrho, f)]
    assert all(x.denominator == 1 for x in eprime)
    assert _pair(gram_K, eprime, eprime) == 0, "e' must be isotropic"

    # same Z-span: complement == <e', f>
    ef = [[int(x) for x in eprime], [int(x) for x in f]]
    X = express_in_basis(ef, comp)
    Y = express_in_basis(comp, ef)
    assert X is not None and Y is not None
    assert is_integral(X) and is_integral(Y)
    gram_ef = gram_of_rows(ef, gram_K)
    assert gram_ef == [[0, p], [p, 0]], gram_ef

    # extension of sigma fixing e' and f
    P = [list(map(Fraction, row)) for row in jL] + \
        [list(map(Fraction, ef[0])), list(map(Fraction, ef[1]))]
    B = [[Fraction(0)] * (m + 2) for _ in range(m + 2)]
    for a in range(m):
        for b in range(m):
            B[a][b] = Fraction(fam.sigma_L[a][b])
    B[m][m] = Fraction(1)
    B[m + 1][m + 1] = Fraction(1)
    Pinv = inverse(P)
    sig_hat = mat_mul(mat_mul(Pinv, B), P)
    assert is_integral(sig_hat), "sigma extension must be integral on K_p"
    sig_hat = to_int_matrix(sig_hat)
    assert mat_eq(mat_mul(mat_mul(sig_hat, gram_K), transpose(sig_hat)),
                  gram_K)
    assert matrix_order(sig_hat, cap=2 * p) == p
    assert vec_mat([Fraction(x) for x in eprime],
                   to_fraction_matrix(sig_hat)) == [Fraction(x) for x in eprime]
    assert vec_mat(f, to_fraction_matrix(sig_hat)) == f
    fam.checks["complement_is_Up"] = True
    fam.checks["sigma_extends_to_K"] = True
    fam.sigma_K = sig_hat
    fam.K_eprime = [int(x) for x in eprime]
    return {"p": p, "gram": gram_ef, "eprime": [int(x) for x in eprime],
            "sigma_extension": sig_hat}


GENUS_CANDIDATES = {
    3: lambda: direct_sum(hyperbolic_plane(), hyperbolic_plane(3),
                          hyperbolic_plane(3), root_lattice("A", 2, -1),
                          root_lattice("A", 2, -1)),
    5: lambda: direct_sum(hyperbolic_plane(), hyperbolic_plane(5),
                          hyperbolic_plane(5)),
    7: lambda: direct_sum(hyperbolic_plane(7), Lattice([[2, 1], [1, 4]])),
}


def genus_check_lambda_G(p, fam=None, budget=10 ** 6):
    """The listed invariant-lattice candidate has the right signature and
    its discriminant form is the opposite of disc(L_p)."""
    if p not in (3, 5, 7):
        raise UnsupportedPrime("genus candidates listed for p in {3,5,7}")
    if fam is None:
        fam = build_family(p)
        build_Lp(fam)
    cand = GENUS_CANDIDATES[p]()
    nu = fam.nu
    rank = 22 - nu * (p - 1)
    assert cand.rank == rank
    assert cand.signature() == (3, 19 - nu * (p - 1), 0)
    Dc = cand.discriminant_group()
    DL = fam.L.discriminant_group()
    match = disc_form_isometry(Dc, DL.opposite(), budget=budget)
    report = {"p": p, "candidate_rank": rank,
              "candidate_signature": cand.signature(),
              "disc_orders": Dc.cyclic_orders,
              "opposite_disc_match": bool(match)}
    assert report["opposite_disc_match"], report
    return report


def hermitian_pairing_smoke(fam, samples=6):
    """Orbit sums u . sigma^j u' vanish: the sesquilinear pairing built
    from the rotation takes values in the augmentation ideal."""
    n = len(fam.sigma_L)
    powers = [identity_matrix(n)]
    for _ in range(fam.p - 1):
        powers.append(mat_mul(powers[-1], fam.sigma_L))
    G = fam.L.gram
    count = 0
    for a in range(min(samples, n)):
        for b in range(min(samples, n)):
            u = [1 if t == a else 0 for t in range(n)]
            v = [1 if t == b else 0 for t in range(n)]
            total = 0
            for P in powers:
                total += dot(vec_mat(u, G), vec_mat(v, P))
            assert total == 0, (a, b, total)
            count += 1
    fam.checks["hermitian_orbit_sums_vanish"] = count
    return {"p": fam.p, "pairs_checked": count, "all_zero": True}


def build_full(p, aut_budget=10 ** 6):
    """Build and verify the whole family at p; returns the family object."""
    fam = build_family(p)
    k_vector_uniqueness(p)
    build_Lp(fam)
    build_sigma(fam)
    build_hat_and_K(fam)
    Lp_complement_in_Kp(fam)
    hermitian_pairing_smoke(fam)
    if p in (3, 5, 7):
        genus_check_lambda_G(p, fam)
    fam.checks["aut_search"] = aut_trivial_on_disc_search(fam, aut_budget)
    return fam
