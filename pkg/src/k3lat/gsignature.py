"""Equivariant signature-defect arithmetic for prime-order actions.

Point defects are evaluated exactly in Q[x]/Phi_p(x); the final value of
every defect sum is asserted to be a degree-zero (rational) element. Also
houses the signature balance, the maximal-defect statement, the adjunction
style point/surface count identity, and fixed-point-count predictions.
"""

from dataclasses import dataclass
from fractions import Fraction

from .polys import cyclotomic, poly_divmod, poly_mul, poly_trim, poly_xgcd


class InvalidCharacter(ValueError):
    pass


class RankOverflow(ValueError):
    pass


@dataclass
class DefectInput:
    """Local fixed-point data for one prime-order action.

    points: the q of each isolated point with local weights (1, q).
    surfaces: (self_intersection, euler_characteristic) per fixed surface.
    """
    p: int
    points: list
    surfaces: list

    def __post_init__(self):
        for q in self.points:
            if q % self.p == 0:
                raise InvalidCharacter("point weight q must be a unit mod p")


@dataclass
class FixedPointPrediction:
    p: int
    nu: int
    euler: int
    quotient_signature: int
    total_defect: Fraction
    moduli_dimension: int
    edmonds_b0_plus_b2: int = None
    edmonds_b1: int = None


def _phi_reduce(poly, phi):
    return poly_divmod(poly, phi)[1]


def _phi_inverse(poly, phi):
    g, u, _ = poly_xgcd(poly, phi)
    assert len(poly_trim(g)) == 1, "element not invertible mod Phi_p"
    c = g[0]
    return [x / c for x in u]


def defect_point(p, q):
    """Exact Sum over nontrivial p-th roots of unity of
    (1+z)(1+z^q) / ((1-z)(1-z^q)); the local defect of an isolated
    fixed point with rotation weights (1, q).
    """
    q = q % p
    if q == 0:
        raise InvalidCharacter("q must be a unit mod p")
    if p == 2:
        return Fraction(0)
    phi = cyclotomic(p)
    total = [Fraction(0)]

    def x_pow(k):
        out = [Fraction(0)] * (k % p) + [Fraction(1)]
        return _phi_reduce(out, phi)

    for j in range(1, p):
        zj = x_pow(j)
        zjq = x_pow((j * q) % p)
        num = poly_mul(poly_add_const(zj, 1), poly_add_const(zjq, 1))
        den = poly_mul(poly_neg_plus_const(zj, 1), poly_neg_plus_const(zjq, 1))
        num = _phi_reduce(num, phi)
        den = _phi_reduce(den, phi)
        term = _phi_reduce(poly_mul(num, _phi_inverse(den, phi)), phi)
        total = _phi_reduce(poly_mul([Fraction(1)], poly_addl(total, term)),
                            phi)
    total = poly_trim(total)
    assert len(total) <= 1, "defect sum failed to be rational"
    val = total[0] if total else Fraction(0)
    assert (Fraction(val) * 3 * (p - 1)).denominator == 1
    return Fraction(val)


def poly_add_const(poly, c):
    out = list(poly) if poly else [Fraction(0)]
    out[0] = out[0] + c
    return out


def poly_neg_plus_const(poly, c):
    out = [-x for x in poly] if poly else [Fraction(0)]
    out[0] = out[0] + c
    return out


def poly_addl(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def defect_surface(p, self_int):
    """(p^2 - 1)/3 times the self-intersection: the surface defect."""
    return Fraction((p * p - 1) * self_int, 3)


def defect_table(p):
    """q -> defect_point(p, q) for every unit q mod p."""
    return {q: defect_point(p, q) for q in range(1, p)}


def total_defect(data):
    """Sum of all point and surface defects of a DefectInput."""
    s = Fraction(0)
    for q in data.points:
        s += defect_point(data.p, q)
    for self_int, _euler in data.surfaces:
        s += defect_surface(data.p, self_int)
    return s


def signature_balance(p, sigma_N, sigma_quotient, data):
    """Check p * sigma(N/G) == sigma(N) + total defect, exactly."""
    assert data.p == p
    rhs = Fraction(sigma_N) + total_defect(data)
    lhs = Fraction(p * sigma_quotient)
    return {
        "p": p,
        "lhs": lhs,
        "rhs": rhs,
        "balanced": lhs == rhs,
        "discrepancy": lhs - rhs,
    }


def max_defect_check(p):
    """The point defect is strictly maximal at q = p-1, where it equals
    (p-1)(p-2)/3; verified by exhaustive evaluation over all units."""
    assert p > 2, "needs an odd prime"
    table = defect_table(p)
    expected_max = Fraction((p - 1) * (p - 2), 3)
    top = table[p - 1]
    strict = all(v < top for q, v in table.items() if q != p - 1)
    report = {
        "p": p,
        "table": table,
        "max_at": p - 1,
        "max_value": top,
        "max_matches_formula": top == expected_max,
        "strictly_maximal": strict,
    }
    assert report["max_matches_formula"] and report["strictly_maximal"]
    return report


def noether_identity_check(p, points, surfaces):
    """Evaluate m + (1/(p-1)) sum of point defects
    + sum over surfaces of (euler + (p+1)/3 * self_int); compare with 8.
    """
    m = len(points)
    val = Fraction(m)
    for q in points:
        val += defect_point(p, q) / (p - 1)
    for self_int, euler in surfaces:
        val += euler + Fraction((p + 1) * self_int, 3)
    return {"p": p, "value": val, "equals_8": val == 8}


def fixed_point_predictions(p, nu, tcr=None):
    """Numerical predictions for an order-p action whose fixed locus is
    nu isolated points.

    With tcr = (t, c, r) supplied, the mod-p homology bound is asserted:
    nu = t + 2 points and no 1-cycles (c = 0).
    """
    if nu * (p - 1) > 19:
        raise RankOverflow("nu(p-1) = %d exceeds 19" % (nu * (p - 1)))
    pred = FixedPointPrediction(
        p=p,
        nu=nu,
        euler=24 - nu * p,
        quotient_signature=nu * (p - 1) - 16,
        total_defect=Fraction((p - 1) * (nu * p - 16)),
        moduli_dimension=3 * (2 * nu - 5),
    )
    if tcr is not None:
        t, c, r = tcr
        assert nu == t + 2, "point count must equal t + 2"
        assert c == 0, "isolated fixed points force c = 0"
        pred.edmonds_b0_plus_b2 = t + 2
        pred.edmonds_b1 = c
    return pred
