"""Exact integer/rational matrix routines used by the lattice layer.

Everything here works with plain lists of lists holding ints or Fractions.
Vectors are rows throughout the package: a matrix acts on the right of a
row vector, so composition of actions reads left to right.
"""

from fractions import Fraction


def zero_matrix(m, n):
    return [[0] * n for _ in range(m)]


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy_matrix(A):
    return [row[:] for row in A]


def transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def mat_mul(A, B):
    if A and B:
        assert len(A[0]) == len(B), "inner dimensions must agree"
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def mat_eq(A, B):
    if len(A) != len(B):
        return False
    return all(len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
               for ra, rb in zip(A, B))


def vec_mat(x, A):
    """Row vector times matrix."""
    assert len(x) == len(A)
    n = len(A[0]) if A else 0
    out = [0] * n
    for xi, row in zip(x, A):
        if xi:
            for j in range(n):
                out[j] += xi * row[j]
    return out


def mat_vec(A, x):
    """Matrix times column vector, returned as a flat list."""
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def dot(x, y):
    assert len(x) == len(y)
    return sum(a * b for a, b in zip(x, y))


def is_integral(A):
    """True when every entry is an integer (possibly an integral Fraction)."""
    for row in A:
        for a in row:
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    return False
            elif not isinstance(a, int):
                return False
    return True


def to_int_matrix(A):
    """Convert a matrix of integral Fractions/ints to plain ints."""
    out = []
    for row in A:
        r = []
        for a in row:
            if isinstance(a, Fraction):
                assert a.denominator == 1, "entry %s is not an integer" % (a,)
                r.append(int(a))
            else:
                r.append(int(a))
        out.append(r)
    return out


def to_fraction_matrix(A):
    return [[Fraction(a) for a in row] for row in A]


def det(A):
    """Determinant by fraction Gaussian elimination. Returns int for int input."""
    n = len(A)
    if n == 0:
        return 1
    assert all(len(row) == n for row in A), "det needs a square matrix"
    M = to_fraction_matrix(A)
    d = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if M[r][col] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            d = -d
        d *= M[col][col]
        inv = 1 / M[col][col]
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] * inv
                for c in range(col, n):
                    M[r][c] -= f * M[col][c]
    if d.denominator == 1:
        return int(d)
    return d


def inverse(A):
    """Inverse as a Fraction matrix. Raises ZeroDivisionError if singular."""
    n = len(A)
    M = to_fraction_matrix(A)
    I = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if M[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            I[col], I[piv] = I[piv], I[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        I[col] = [x * inv for x in I[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
                I[r] = [x - f * y for x, y in zip(I[r], I[col])]
    return I


def rank(A):
    """Rank over Q."""
    if not A or not A[0]:
        return 0
    M = to_fraction_matrix(A)
    m, n = len(M), len(M[0])
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if M[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        for i in range(r + 1, m):
            if M[i][col] != 0:
                f = M[i][col] * inv
                for c in range(col, n):
                    M[i][c] -= f * M[r][c]
        r += 1
        if r == m:
            break
    return r


def solve_right(A, b):
    """Solve x A = b over Q for a row vector x, or return None.

    A may be rectangular; any solution is returned when one exists.
    """
    m = len(A)
    n = len(A[0]) if A else len(b)
    assert len(b) == n
    # Augmented system on columns of A^T.
    M = [[Fraction(A[i][j]) for i in range(m)] + [Fraction(b[j])] for j in range(n)]
    r = 0
    pivots = []
    for col in range(m):
        piv = None
        for i in range(r, n):
            if M[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    for i in range(r, n):
        if M[i][m] != 0:
            return None
    x = [Fraction(0)] * m
    for row_idx, col in enumerate(pivots):
        x[col] = M[row_idx][m]
    return x


def xgcd(a, b):
    """Extended gcd: returns (g, s, t) with s*a + t*b == g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def row_hnf(A):
    """Row Hermite normal form with transform.

    Returns (H, U) with U unimodular, U*A == H, H in row echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    Zero rows of H are collected at the bottom.
    """
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    H = [list(map(int, row)) for row in A]
    U = identity_matrix(m)
    row = 0
    for col in range(n):
        # find a nonzero entry at or below `row`
        piv = None
        for i in range(row, m):
            if H[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != row:
            H[row], H[piv] = H[piv], H[row]
            U[row], U[piv] = U[piv], U[row]
        # clear the column below with gcd steps
        for i in range(row + 1, m):
            while H[i][col] != 0:
                if abs(H[i][col]) < abs(H[row][col]):
                    H[row], H[i] = H[i], H[row]
                    U[row], U[i] = U[i], U[row]
                q = H[i][col] // H[row][col]
                for c in range(n):
                    H[i][c] -= q * H[row][c]
                for c in range(m):
                    U[i][c] -= q * U[row][c]
        if H[row][col] < 0:
            H[row] = [-x for x in H[row]]
            U[row] = [-x for x in U[row]]
        # reduce entries above the pivot
        p = H[row][col]
        for i in range(row):
            q = H[i][col] // p
            if q:
                for c in range(n):
                    H[i][c] -= q * H[row][c]
                for c in range(m):
                    U[i][c] -= q * U[row][c]
        row += 1
        if row == m:
            break
    return H, U


def hnf_basis(A):
    """Nonzero rows of the row HNF of A: a canonical basis of the row span."""
    H, _ = row_hnf(A)
    return [row for row in H if any(row)]


def int_kernel(A):
    """Basis of the integer solutions x (rows) of A * x^T = 0.

    The returned rows span a saturated subgroup of Z^n (n = columns of A),
    because they arise as part of a unimodular transform.
    """
    if not A:
        return []
    n = len(A[0])
    if n == 0:
        return []
    At = transpose(A)  # n x m; left kernel of A^T is what we want
    H, U = row_hnf(At)
    ker = [U[i] for i in range(n) if not any(H[i])]
    return hnf_basis(ker)


def snf(A):
    """Smith normal form with transforms.

    Returns (S, U, V) with U*A*V == S, U and V unimodular, S diagonal with
    nonnegative entries satisfying s1 | s2 | ... along the diagonal.
    """
    if not A:
        return [], [], []
    m, n = len(A), len(A[0])
    S = [list(map(int, row)) for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst -= q * row src
        for c in range(n):
            S[dst][c] -= q * S[src][c]
        for c in range(m):
            U[dst][c] -= q * U[src][c]

    def add_col(src, dst, q):
        for row in S:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    size = min(m, n)
    while t < size:
        # locate the minimal-abs nonzero entry in the trailing block
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        dirty = False
        for i in range(t + 1, m):
            if S[i][t]:
                q = S[i][t] // S[t][t]
                add_row(t, i, q)
                if S[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if S[t][j]:
                q = S[t][j] // S[t][t]
                add_col(t, j, q)
                if S[t][j]:
                    dirty = True
        if dirty:
            continue  # smaller remainders appeared, repick the pivot
        # pivot must divide the rest of the block
        p = S[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, -1)  # fold the offending row into the pivot row
            continue
        if p < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return S, U, V


def snf_diagonal(A):
    """The diagonal of the Smith normal form, including zeros, length min(m,n)."""
    S, _, _ = snf(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def char_poly(A):
    """Characteristic polynomial det(x*I - A) by Faddeev-LeVerrier.

    Returns coefficients [c0, c1, ..., cn] with cn == 1, as ints when A is
    integral.
    """
    n = len(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = zero_matrix(n, n)
    AF = to_fraction_matrix(A)
    for k in range(1, n + 1):
        # M_k = A * (M_{k-1} + c_{n-k+1} I)
        work = copy_matrix(M)
        ck = coeffs[n - k + 1]
        for i in range(n):
            work[i][i] += ck
        M = mat_mul(AF, work)
        tr = sum(M[i][i] for i in range(n))
        coeffs[n - k] = -tr / k
    out = []
    for c in coeffs:
        if isinstance(c, Fraction) and c.denominator == 1:
            out.append(int(c))
        else:
            out.append(c)
    return out


def matrix_order(M, cap=10000):
    """Multiplicative order of a square integer matrix, or None past cap."""
    n = len(M)
    I = identity_matrix(n)
    P = copy_matrix(M)
    k = 1
    while k <= cap:
        if mat_eq(P, I):
            return k
        P = mat_mul(P, M)
        k += 1
    return None
