"""
Exact intersection numbers on Y_V.

Everything happens in the rank-one lattice spanned by c1(U_{d+1}) (with
c1(U_d) eliminated through (p+1) c1(U_{d+1}) = 2 c1(U_d)) and in Q, the top
Chow group of Y_V and its special cycles.  All values are Fractions.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .gf import is_prime
from .quadspace import isotropic_line_count_formula


def _check(p, d=None):
    if p == 2 or not is_prime(p):
        raise ParameterError("p must be an odd prime")
    if d is not None and d < 1:
        raise ParameterError("d must be positive")


@dataclass(frozen=True)
class FormalDivisorClass:
    """alpha * c1(U_d) + beta * c1(U_{d+1})."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))

    def __add__(self, other):
        return FormalDivisorClass(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other):
        return FormalDivisorClass(self.alpha - other.alpha, self.beta - other.beta)

    def __rmul__(self, c):
        return FormalDivisorClass(c * self.alpha, c * self.beta)

    @property
    def is_reduced(self):
        return self.alpha == 0


C1_UD = FormalDivisorClass(1, 0)
C1_UD1 = FormalDivisorClass(0, 1)


def chern_relation_reduce(cls, p):
    """Substitute c1(U_d) = ((p+1)/2) c1(U_{d+1})."""
    return FormalDivisorClass(0, cls.beta + cls.alpha * Fraction(p + 1, 2))


def line_bundle_class(p):
    """c1(L_{Y_V}) = c1(U_{d+1}) - c1(U_d), reduced."""
    return chern_relation_reduce(C1_UD1 - C1_UD, p)


def pairing_lemma_value(p):
    """c1(L^dual) against a one-dimensional special cycle: -p + 1."""
    _check(p)
    return Fraction(-p + 1)


def induct_coefficient(p, d):
    _check(p, d)
    return Fraction(-p + 1, p ** (d + 1) + 1)


def analog_closed(p, d):
    _check(p, d)
    out = Fraction(1)
    for i in range(1, d + 1):
        out *= -(p**i) + 1
    return out


def analog_recursive(p, d):
    """
    c1(L^dual)^d by the cycle recursion: one factor of c1(L^dual) becomes
    the weighted sum of special cycles Y_{W^perp/W} over isotropic lines W,
    each of which is a copy of the (d-1)-dimensional variety.
    """
    _check(p, d)
    value = pairing_lemma_value(p)  # d = 1: the curve case
    for k in range(2, d + 1):
        value = induct_coefficient(p, k) * isotropic_line_count_formula(p, k) * value
    return value


def degree_closed(p, d):
    _check(p, d)
    out = Fraction(2**d)
    for i in range(1, d + 1):
        out *= Fraction(-(p**i) + 1, -p + 1)
    return out


def degree_via_chern(p, d):
    """
    c1(U_{d+1}^dual)^d from the reduced relation c1(L) = beta c1(U_{d+1}),
    i.e. c1(U_{d+1}^dual) = c1(L^dual) / beta, and the recursion above.
    """
    _check(p, d)
    beta = line_bundle_class(p).beta
    return (1 / beta) ** d * analog_recursive(p, d)


def weighted_case_identity(p, d, counts):
    """coefficient * (n1 (-p+1) + n2 * 1 + n3 * 0); should be -p + 1."""
    n1, n2, n3 = counts
    return induct_coefficient(p, d) * (n1 * Fraction(-p + 1) + n2 * 1 + n3 * 0)


def primes_below(n):
    return [q for q in range(3, n) if is_prime(q)]


def chow_table(p_max, d_max):
    rows = []
    for p in primes_below(p_max + 1):
        for d in range(1, d_max + 1):
            ac, ar = analog_closed(p, d), analog_recursive(p, d)
            dc, dv = degree_closed(p, d), degree_via_chern(p, d)
            rows.append({
                "p": p, "d": d,
                "analog_closed": ac, "analog_recursive": ar,
                "degree_closed": dc, "degree_via_chern": dv,
                "match": ac == ar and dc == dv,
            })
    return rows
