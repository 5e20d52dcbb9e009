"""Finite isometry groups of a lattice and their homological invariants.

Covers group validation/closure, fixed sublattices, the coinvariant
sublattice L_G (pointwise-fixed, cyclic, and projector-supplied modes),
module decomposition counts (t, c, r) for prime-order elements, the
direct-summand check for the regular part, and positive spinor norm.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

from .matrix import (
    char_poly,
    dot,
    identity_matrix,
    int_kernel,
    inverse,
    is_integral,
    mat_eq,
    mat_mul,
    mat_sub,
    rank as qrank,
    to_fraction_matrix,
    to_int_matrix,
    transpose,
    vec_mat,
)
from .lattice import (
    Lattice,
    Sublattice,
    express_in_basis,
    signature_of_gram,
    span_intersection,
)
from .polys import (
    compact_form,
    cyclotomic,
    poly_eval_matrix,
    poly_mul,
    root_separators,
)


class NotAnIsometry(ValueError):
    pass


class NotFinite(ValueError):
    pass


class NeedIsotypicData(ValueError):
    pass


class UnsupportedSchurType(ValueError):
    pass


class NotAZGLattice(ValueError):
    pass


def _key(M):
    return tuple(tuple(row) for row in M)


class IsometryGroup:
    """A finite subgroup of O(ambient) given by generator matrices.

    Matrices act on row vectors from the right. Closure is computed on
    demand by breadth-first products and cached; an element cap guards
    against accidentally infinite input.
    """

    def __init__(self, ambient, generators, element_cap=10 ** 5):
        self.ambient = ambient
        self.generators = [[list(map(int, row)) for row in g]
                           for g in generators]
        self.element_cap = element_cap
        self._elements = None
        G = ambient.gram
        for g in self.generators:
            if len(g) != ambient.rank:
                raise NotAnIsometry("generator has wrong size")
            if not mat_eq(mat_mul(mat_mul(g, G), transpose(g)), G):
                raise NotAnIsometry("generator does not preserve the form")

    def elements(self):
        if self._elements is None:
            I = identity_matrix(self.ambient.rank)
            seen = {_key(I): I}
            frontier = [I]
            while frontier:
                new = []
                for a in frontier:
                    for g in self.generators:
                        prod = mat_mul(a, g)
                        k = _key(prod)
                        if k not in seen:
                            seen[k] = prod
                            new.append(prod)
                            if len(seen) > self.element_cap:
                                raise NotFinite(
                                    "group exceeds element cap %d"
                                    % self.element_cap)
                frontier = new
            self._elements = list(seen.values())
        return self._elements

    def order(self):
        return len(self.elements())

    def validate(self):
        """Closure report: order and element matrices."""
        els = self.elements()
        return {"order": len(els), "elements": els}

    def cyclic_generator(self):
        """An element of order |G| if one exists, else None."""
        n = self.order()
        I = identity_matrix(self.ambient.rank)
        for g in self.elements():
            k = 1
            p = g
            while not mat_eq(p, I):
                p = mat_mul(p, g)
                k += 1
            if k == n:
                return g
        return None

    def fixed_sublattice(self):
        return fixed_sublattice(self.ambient, self.generators)


def fixed_sublattice(ambient, generators):
    """Saturated sublattice of vectors fixed by every generator."""
    if not generators:
        return ambient.full_sublattice()
    n = ambient.rank
    rows = []
    for g in generators:
        rows.extend(transpose(mat_sub(g, identity_matrix(n))))
    basis = int_kernel(rows)
    return Sublattice(ambient, basis)


def _rank_mod_p(M, p):
    A = [[x % p for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if A else 0
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if A[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][col], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][col]:
                f = A[i][col]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


@dataclass
class ZGDecomposition:
    """Summand counts of a prime-order lattice automorphism.

    t trivial (rank 1), c cyclotomic (rank p-1), r regular (rank p);
    t + c(p-1) + r*p equals the rank of the module.
    """
    p: int
    t: int
    c: int
    r: int
    jordan_blocks: dict = field(default_factory=dict)

    def rank(self):
        return self.t + self.c * (self.p - 1) + self.r * self.p


def zg_decomposition(g, p):
    """Detect the (t, c, r) summand counts of an order-p (or 1) isometry.

    Works mod p via the Jordan partition of the nilpotent g-1 and
    cross-checks against rational kernel dimensions.
    """
    n = len(g)
    I = identity_matrix(n)
    power = g
    for _ in range(p - 1):
        power = mat_mul(power, g)
    if not mat_eq(power, I):
        raise ValueError("element does not have order dividing %d" % p)
    N = mat_sub(g, I)
    ranks = [n]
    M = I
    for _ in range(p + 1):
        M = mat_mul(M, N)
        ranks.append(_rank_mod_p(M, p))
    blocks = {}
    for k in range(1, p + 1):
        m_k = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
        assert m_k >= 0
        if m_k:
            blocks[k] = m_k
    allowed = {1, p - 1, p}
    if any(k not in allowed for k in blocks):
        raise NotAZGLattice("Jordan block sizes %s admit no t/c/r splitting"
                            % sorted(blocks))
    dim_fix = n - qrank(N)
    if p == 2:
        r = blocks.get(2, 0)
        t = dim_fix - r
        Nplus = [[g[i][j] + I[i][j] for j in range(n)] for i in range(n)]
        c = (n - qrank(Nplus)) - r
        if t < 0 or c < 0 or t + c != blocks.get(1, 0):
            raise NotAZGLattice("mod-2 profile inconsistent with Z-structure")
    else:
        t = blocks.get(1, 0)
        c = blocks.get(p - 1, 0)
        r = blocks.get(p, 0)
        if dim_fix != t + r:
            raise NotAZGLattice("rational fixed rank disagrees with profile")
        phi_rank = n - qrank(poly_eval_matrix(cyclotomic(p), g))
        if phi_rank != (c + r) * (p - 1):
            raise NotAZGLattice("cyclotomic kernel disagrees with profile")
    dec = ZGDecomposition(p, t, c, r, blocks)
    assert dec.rank() == n
    return dec


def regular_summand_discriminant_check(ambient, g, p):
    """For c = 0 elements: im(g-1) is a direct summand, and the complement
    of the fixed lattice has discriminant (Z/p)^r when ambient is unimodular.
    """
    dec = zg_decomposition(g, p)
    if dec.c != 0:
        raise ValueError("check applies only when no cyclotomic summand occurs")
    n = ambient.rank
    N = mat_sub(g, identity_matrix(n))
    from .matrix import snf
    S, _, _ = snf(N)
    divisors = [S[i][i] for i in range(n)]
    summand = all(d in (0, 1) for d in divisors)
    report = {
        "p": p,
        "t": dec.t,
        "r": dec.r,
        "image_is_direct_summand": summand,
        "snf_divisors": sorted(d for d in divisors if d),
    }
    if abs(ambient.determinant()) == 1:
        fixed = fixed_sublattice(ambient, [g])
        comp = fixed.orthogonal_complement()
        if comp.rank:
            disc = comp.as_lattice().discriminant_group()
            orders = disc.cyclic_orders
        else:
            orders = []
        report["complement_disc_orders"] = orders
        report["disc_dimension_over_Fp"] = len(orders)
        report["disc_is_Fp_space_of_dim_r"] = (
            all(o == p for o in orders) and len(orders) == dec.r)
    return report


def spinor_plus_membership(ambient, g):
    """Whether g preserves the orientation of positive-definite 3-planes.

    Constructive Cartan-Dieudonne over Q: peel off one (or two) rational
    reflections per step, each fixing one more anisotropic vector; g lies
    in O^+ iff the number of positive-norm reflection vectors is even.
    """
    gram = [[Fraction(x) for x in row] for row in ambient.gram]
    G = ambient.gram
    if not mat_eq(mat_mul(mat_mul(g, G), transpose(g)), G):
        raise NotAnIsometry("matrix does not preserve the form")
    A = to_fraction_matrix(g)
    positive = 0

    def reflect_matrix(gram_cur, v):
        n = len(gram_cur)
        gv = vec_mat(v, gram_cur)
        vv = dot(gv, v)
        assert vv != 0
        R = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            R[i][i] = Fraction(1)
        for i in range(n):
            f = 2 * gv[i] / vv
            if f:
                for j in range(n):
                    R[i][j] -= f * v[j]
        return R

    while gram:
        n = len(gram)
        I = [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
             for i in range(n)]
        if mat_eq(A, I):
            break
        # anisotropic vector: a basis vector, or e_i + e_j on a zero diagonal
        x = None
        for i in range(n):
            if gram[i][i] != 0:
                x = [Fraction(1) if j == i else Fraction(0) for j in range(n)]
                break
        if x is None:
            found = next((i, j) for i in range(n) for j in range(n)
                         if i != j and gram[i][j] != 0)
            i, j = found
            x = [Fraction(0)] * n
            x[i] = Fraction(1)
            x[j] = Fraction(1)
        y = vec_mat(x, A)
        if y != x:
            diff = [a - b for a, b in zip(y, x)]
            qd = dot(vec_mat(diff, gram), diff)
            if qd != 0:
                vs = [diff]
            else:
                # Q(y-x) + Q(y+x) = 4 Q(x) != 0, so the sum case applies
                vs = [[a + b for a, b in zip(y, x)], x]
            for v in vs:
                if dot(vec_mat(v, gram), v) > 0:
                    positive += 1
                A = mat_mul(A, reflect_matrix(gram, v))
        assert vec_mat(x, A) == x
        # restrict to the orthogonal complement of x
        gx = vec_mat(x, gram)
        d = math.lcm(*[f.denominator for f in gx]) if any(gx) else 1
        K = int_kernel([[int(f * d) for f in gx]])
        if not K:
            break
        KF = [[Fraction(c) for c in row] for row in K]
        A = express_in_basis([vec_mat(row, A) for row in KF], KF)
        assert A is not None
        gram = mat_mul(mat_mul(KF, gram), transpose(KF))
    return positive % 2 == 0


@dataclass
class CoinvariantResult:
    """L_G and how it was determined.

    mode is one of pointwise-fixed-3-plane, rotation-on-3-plane,
    supplied-isotypic. p_types lists the real representation types whose
    isotypic components meet an invariant positive 3-plane, for the
    variant actually used; variants carries every orientation-compatible
    choice (more than one is possible only outside O^+).
    """
    L_G: Sublattice
    fixed: Sublattice
    mode: str
    p_types: list
    variants: list


def _saturated_span(ambient, bases):
    rows = [row for b in bases for row in b]
    if not rows:
        return Sublattice(ambient, [])
    sat = int_kernel(int_kernel(rows))
    return Sublattice(ambient, sat)


def _rotation_signatures(ambient, g, d, basis):
    """Exact per-eigenvalue signatures of the form on ker Phi_d(g).

    Returns a list of (k, a_k, b_k): the lambda = 2cos(2 pi k / d)
    constituent carries signature (2 a_k, 2 b_k). Uses Sturm-certified
    rational separators and signatures of B(h(t)x, y) for separator-product
    polynomials h; all arithmetic exact.
    """
    m = len(basis)
    phi = len(cyclotomic(d)) - 1
    assert m % phi == 0
    n_d = m // phi
    ginv = to_int_matrix(inverse(g))
    t_full = [[g[i][j] + ginv[i][j] for j in range(len(g))] for i in range(len(g))]
    t_res = express_in_basis([vec_mat(row, t_full) for row in basis], basis)
    assert t_res is not None and is_integral(t_res)
    t_res = to_int_matrix(t_res)
    B = mat_mul(mat_mul(basis, ambient.gram), transpose(basis))
    psi = compact_form(d)
    seps = root_separators(psi)
    nroots = len(seps) - 1
    assert nroots == phi // 2
    inner = seps[1:-1]
    # root l (ascending) flips sign under (y - s_i) exactly for i >= l
    sig_rows = []
    rhs = []
    for j in range(1, nroots + 1):
        h = [Fraction(1)]
        for i in range(j - 1):
            h = poly_mul(h, [-inner[i], Fraction(1)])
        H = poly_eval_matrix(h, t_res)
        Bh = mat_mul(H, B)
        assert mat_eq(Bh, transpose(Bh))
        plus, minus, zero = signature_of_gram(Bh)
        assert zero == 0
        rhs.append(plus - minus)
        sig_rows.append([(-1) ** max(0, j - l) for l in range(1, nroots + 1)])
    # solve sig_rows * (2(a_l - b_l)) = rhs exactly
    from .matrix import solve_right
    sol = solve_right(transpose(sig_rows), rhs)
    assert sol is not None
    ks = [k for k in range(1, (d + 1) // 2) if math.gcd(k, d) == 1]
    assert len(ks) == nroots
    out = []
    for l in range(1, nroots + 1):
        diff = Fraction(sol[l - 1]) / 2
        a = (n_d + diff) / 2
        assert a.denominator == 1 and 0 <= a <= n_d
        a = int(a)
        k = ks[nroots - l]  # ascending eigenvalue = descending k
        out.append((k, a, n_d - a))
    return out


def coinvariant_L_G(group, isotypic_data=None):
    """The coinvariant sublattice L_G of a finite isometry group on K3.

    Exact three-way logic: pointwise fixed positive 3-plane, cyclic
    rotation analysis via cyclotomic kernels, or caller-supplied rational
    isotypic projectors for non-cyclic groups.
    """
    ambient = group.ambient
    assert ambient.signature() == (3, 19, 0), \
        "coinvariant analysis is specific to the K3 lattice signature"
    fixed = group.fixed_sublattice()
    if fixed.rank:
        fp, fm, fz = signature_of_gram(fixed.gram())
    else:
        fp = fm = fz = 0
    if fp == 3:
        L = fixed.orthogonal_complement()
        res = CoinvariantResult(L, fixed, "pointwise-fixed-3-plane",
                                ["trivial"],
                                [{"p_types": ["trivial"], "excluded": []}])
        _check_coinvariant(group, res)
        return res

    gen = group.cyclic_generator()
    if gen is not None:
        return _cyclic_coinvariant(group, gen, fixed)
    if isotypic_data is None:
        raise NeedIsotypicData(
            "non-cyclic group: supply rational isotypic projectors")
    return _projector_coinvariant(group, isotypic_data, fixed)


def _cyclic_coinvariant(group, g, fixed):
    ambient = group.ambient
    N = group.order()
    # saturated cyclotomic kernels K_d = ker Phi_d(g), the Q-isotypic pieces
    comps = {}
    for d in range(1, N + 1):
        if N % d:
            continue
        M = poly_eval_matrix(cyclotomic(d), g)
        basis = int_kernel(transpose(M))
        if basis:
            comps[d] = basis
    assert sum(len(b) for b in comps.values()) == ambient.rank

    a_plus = {}
    rot_sig = {}
    for d, basis in comps.items():
        if d <= 2:
            plus, minus, zero = signature_of_gram(
                mat_mul(mat_mul(basis, ambient.gram), transpose(basis)))
            assert zero == 0
            a_plus[d] = plus
        else:
            rot_sig[d] = _rotation_signatures(ambient, g, d, basis)
    a1 = a_plus.get(1, 0)
    a2 = a_plus.get(2, 0)
    rot_total = sum(a for sigs in rot_sig.values() for (_, a, _) in sigs)
    assert a1 + a2 + 2 * rot_total == 3, "positive part bookkeeping failed"

    # orientation-compatible contents of an invariant positive 3-plane:
    # determinant of the action on the plane must be +1
    variants = []
    if a1 >= 1 and a2 >= 2:
        variants.append({"p_types": ["trivial", "sign", "sign"],
                         "excluded": [1, 2]})
    if a1 >= 1:
        for d, sigs in sorted(rot_sig.items()):
            for (k, a, b) in sigs:
                if a >= 1:
                    variants.append(
                        {"p_types": ["trivial", "rotation(d=%d,k=%d)" % (d, k)],
                         "excluded": [1, d]})
    if not variants:
        raise ValueError("no orientation-compatible invariant positive "
                         "3-plane: the group does not lie in O^+")
    chosen = variants[0]
    keep = [b for d, b in sorted(comps.items()) if d not in chosen["excluded"]]
    L = _saturated_span(ambient, keep)
    res = CoinvariantResult(L, fixed, "rotation-on-3-plane",
                            chosen["p_types"], variants)
    _check_coinvariant(group, res)
    return res


def _projector_coinvariant(group, projectors, fixed):
    ambient = group.ambient
    n = ambient.rank
    F = [to_fraction_matrix(E) for E in projectors]
    total = [[sum(E[i][j] for E in F) for j in range(n)] for i in range(n)]
    assert mat_eq(total, identity_matrix(n)), "projectors must sum to 1"
    for idx, E in enumerate(F):
        assert mat_eq(mat_mul(E, E), E), "projector %d is not idempotent" % idx
        for jdx in range(idx + 1, len(F)):
            assert mat_eq(mat_mul(E, F[jdx]),
                          [[Fraction(0)] * n for _ in range(n)]), \
                "projectors %d,%d do not annihilate" % (idx, jdx)
        for gmat in group.generators:
            gF = to_fraction_matrix(gmat)
            assert mat_eq(mat_mul(gF, E), mat_mul(E, gF)), \
                "projector %d is not equivariant" % idx

    elements = group.elements()
    order = len(elements)
    keep_bases = []
    p_types = []
    comp_report = []
    for idx, E in enumerate(F):
        # integral saturated basis of (image of E) cap lattice
        IminusE = mat_sub(identity_matrix(n), E)
        den = 1
        for row in IminusE:
            for x in row:
                den = math.lcm(den, Fraction(x).denominator)
        Mint = [[int(Fraction(x) * den) for x in row] for row in IminusE]
        basis = int_kernel(transpose(Mint))
        if not basis:
            comp_report.append({"index": idx, "rank": 0})
            continue
        BF = [[Fraction(c) for c in row] for row in basis]
        traces = []
        for gmat in elements:
            R = express_in_basis([vec_mat(row, to_fraction_matrix(gmat))
                                  for row in BF], BF)
            assert R is not None
            traces.append(R)
        s = sum(sum(mat_mul(R, R)[i][i] for i in range(len(basis)))
                for R in traces) / order
        char_sq = Fraction(0)
        for R in traces:
            tr = sum(R[i][i] for i in range(len(basis)))
            Rinv = inverse(R)
            trinv = sum(Rinv[i][i] for i in range(len(basis)))
            char_sq += tr * trinv
        i_val = char_sq / order
        if s <= 0:
            raise UnsupportedSchurType(
                "component %d has non-real Schur type (indicator %s)"
                % (idx, s))
        mult = i_val / s
        z = s * s / i_val
        if mult.denominator != 1 or z != 1:
            raise UnsupportedSchurType(
                "component %d is not a single real-type isotypic piece" % idx)
        plus, minus, zero = signature_of_gram(
            mat_mul(mat_mul(basis, ambient.gram), transpose(basis)))
        assert zero == 0
        is_p = plus > 0
        comp_report.append({"index": idx, "rank": len(basis),
                            "multiplicity": int(mult),
                            "sig_plus": plus, "p_type": is_p})
        if is_p:
            p_types.append("component-%d" % idx)
        else:
            keep_bases.append(basis)
    L = _saturated_span(ambient, keep_bases)
    res = CoinvariantResult(L, fixed, "supplied-isotypic", p_types,
                            [{"p_types": p_types, "components": comp_report}])
    _check_coinvariant(group, res)
    return res


def _check_coinvariant(group, res):
    L = res.L_G
    if L.rank == 0:
        return
    gram = L.gram()
    p, m, z = signature_of_gram(gram)
    assert p == 0 and z == 0, "L_G must be negative definite or zero"
    for g in group.generators:
        imgs = [vec_mat(row, g) for row in L.basis]
        X = express_in_basis(imgs, L.basis)
        assert X is not None and is_integral(X), "L_G must be G-invariant"
