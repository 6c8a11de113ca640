"""
Finite fields F_p, F_{p^2} = F_p[t]/(t^2 - a) and F_{p^{2m}} = F_{p^2}[s]/(g(s)).

Elements are plain integers ("codes"): the coefficient vector c_0..c_{e-1}
over F_p of the basis t^i s^j (index 2j + i) read as base-p digits.  So
F_p sits inside every tower as the codes 0..p-1 and F_{p^2} as 0..p^2-1,
and b = t (with b^2 = a) has code p.

Scalar operations work on Python ints; the ``v*`` methods work on numpy
integer arrays of codes and are what the enumeration kernels use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ParameterError, ResourceLimitError

TABLE_LIMIT = 2**16  # discrete-log tables up to this order
ADD_TABLE_LIMIT = 2900  # full addition table when q**2 stays below ~8.4M
MAX_ORDER = 2**62


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def smallest_nonresidue(p):
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise ParameterError("no quadratic non-residue mod %d" % p)


# --- polynomials over a base field given by scalar ops (lists, low degree first)

def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x == 0:
            continue
        for j, y in enumerate(g):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _ptrim(out)


def _pmod(F, f, g):
    f = _ptrim(list(f))
    dg = len(g) - 1
    lead_inv = F.inv(g[-1])
    while len(f) - 1 >= dg:
        c = F.mul(f[-1], lead_inv)
        shift = len(f) - 1 - dg
        for j, y in enumerate(g):
            f[shift + j] = F.sub(f[shift + j], F.mul(c, y))
        _ptrim(f)
    return f


def _pgcd(F, f, g):
    f, g = _ptrim(list(f)), _ptrim(list(g))
    while g:
        f, g = g, _pmod(F, f, g)
    return f


def _ppowmod(F, f, n, g):
    result = [1]
    base = _pmod(F, f, g)
    while n:
        if n & 1:
            result = _pmod(F, _pmul(F, result, base), g)
        n >>= 1
        if n:
            base = _pmod(F, _pmul(F, base, base), g)
    return result


def _is_irreducible(F, g):
    """Monic g over F (order Q) is irreducible iff it has no root in any
    F_{Q^j} with j <= deg(g)/2, i.e. gcd(g, s^(Q^j) - s) = 1."""
    m = len(g) - 1
    if m <= 1:
        return m == 1
    Q = F.order
    s = [0, 1]
    x = s
    for _ in range(1, m // 2 + 1):
        x = _ppowmod(F, x, Q, g)
        diff = list(x) + [0] * max(0, 2 - len(x))
        diff[1] = F.sub(diff[1], 1)
        if len(_pgcd(F, g, _ptrim(diff))) > 1:
            return False
    return True


class FieldTower:
    """
    The field F_{p^e} with e = 2m (or e = 1 for the prime field, m = 0).

    Immutable after construction; every table is built in ``__init__``.
    """

    def __init__(self, p, m, a=None, modulus=None, base=None):
        self.p = p
        self.m = m
        self.degree = 1 if m == 0 else 2 * m
        self.order = p**self.degree
        if self.order > MAX_ORDER:
            raise ResourceLimitError("field order %d exceeds 2^62" % self.order)
        self.a = smallest_nonresidue(p) if a is None else a
        self.modulus = tuple(modulus) if modulus is not None else None
        self.base = base  # the F_{p^2} tower, used for schoolbook products when m >= 2
        self._pw = np.array([p**k for k in range(self.degree)], dtype=np.int64)
        self._digit_table = None
        if self.order <= TABLE_LIMIT:
            self._digit_table = self.vdigits(np.arange(self.order))
        self._build_structure()
        self._build_tables()

    # -- construction -------------------------------------------------------

    def _build_structure(self):
        e = self.degree
        T = np.zeros((e, e, e), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                T[i, j] = self.digits(self._mul_school(self.p**i, self.p**j))
        self._struct = T
        F = np.zeros((e, e), dtype=np.int64)
        for k in range(e):
            F[k] = self.digits(self._pow_school(self.p**k, self.p))
        self._frob_mat = F  # row k = digits of frob(basis_k)

    def _build_tables(self):
        q = self.order
        self._exp = self._log = self._inv = self._frob = self._neg = self._add = None
        if q > TABLE_LIMIT:
            return
        gen = self._find_generator()
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_school(x, gen)
        self.generator = gen
        # log[0] is a sentinel pushing every product with 0 into the zero tail
        log[0] = 2 * (q - 1)
        self._exp = np.concatenate([exp, exp, np.zeros(2 * (q - 1) + 1, dtype=np.int64)])
        self._log = log
        inv = np.zeros(q, dtype=np.int64)
        nz = np.arange(1, q)
        inv[nz] = exp[(-log[nz]) % (q - 1)]
        self._inv = inv
        frob = np.zeros(q, dtype=np.int64)
        frob[nz] = exp[(log[nz] * self.p) % (q - 1)]
        self._frob = frob
        codes = np.arange(q, dtype=np.int64)
        self._neg = self._vfrom_digits((-self.vdigits(codes)) % self.p)
        if q <= ADD_TABLE_LIMIT:
            d = self.vdigits(codes)
            s = (d[:, None, :] + d[None, :, :]) % self.p
            dt = np.int16 if q < 2**15 else np.int32
            self._add = (s @ self._pw).astype(dt)

    def _find_generator(self):
        q = self.order
        if q == 2:
            return 1
        factors = prime_factors(q - 1)
        for g in range(2, q):
            if all(self._pow_school(g, (q - 1) // f) != 1 for f in factors):
                return g
        raise AssertionError("no generator found")

    # -- encodings ---------------------------------------------------------

    def digits(self, x):
        out = []
        for _ in range(self.degree):
            out.append(x % self.p)
            x //= self.p
        return out

    def from_digits(self, ds):
        x = 0
        for k in reversed(range(self.degree)):
            x = x * self.p + int(ds[k]) % self.p
        return x

    def vdigits(self, A):
        A = np.asarray(A, dtype=np.int64)
        if self._digit_table is not None:
            return self._digit_table[A]
        return (A[..., None] // self._pw) % self.p

    def _vfrom_digits(self, D):
        return (np.asarray(D, dtype=np.int64) % self.p) @ self._pw

    # -- schoolbook arithmetic (reference path, and above TABLE_LIMIT) --------

    def _mul_school(self, x, y):
        p = self.p
        if self.m == 0:
            return x * y % p
        if self.m == 1:
            x0, x1 = x % p, x // p
            y0, y1 = y % p, y // p
            c0 = (x0 * y0 + self.a * x1 * y1) % p
            c1 = (x0 * y1 + x1 * y0) % p
            return c0 + p * c1
        Q = p * p
        B = self.base
        f = [(x // Q**j) % Q for j in range(self.m)]
        g = [(y // Q**j) % Q for j in range(self.m)]
        r = _pmod(B, _pmul(B, f, g), list(self.modulus))
        return sum(c * Q**j for j, c in enumerate(r))

    def _pow_school(self, x, n):
        result = 1
        while n:
            if n & 1:
                result = self._mul_school(result, x)
            n >>= 1
            if n:
                x = self._mul_school(x, x)
        return result

    # -- scalar arithmetic on codes -------------------------------------------

    def add(self, x, y):
        if self._add is not None:
            return int(self._add[x, y])
        if self.degree == 1:
            return (x + y) % self.p
        dx, dy = self.digits(x), self.digits(y)
        return self.from_digits([u + v for u, v in zip(dx, dy)])

    def neg(self, x):
        if self._neg is not None:
            return int(self._neg[x])
        return self.from_digits([-u for u in self.digits(x)])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self._log is not None:
            return int(self._exp[self._log[x] + self._log[y]])
        return self._mul_school(x, y)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.order)
        if self._inv is not None:
            return int(self._inv[x])
        return self._inv_euclid(x)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, n):
        """x**n by square-and-multiply; negative n goes through inv."""
        if n < 0:
            x, n = self.inv(x), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, x)
            n >>= 1
            if n:
                x = self.mul(x, x)
        return result

    def frob(self, x):
        if self._frob is not None:
            return int(self._frob[x])
        return self.from_digits(np.array(self.digits(x)) @ self._frob_mat)

    def _inv_euclid(self, x):
        if self.m == 0:
            return pow(x, -1, self.p)
        if self.m == 1:
            # (x0 + x1 t)^-1 = (x0 - x1 t) / (x0^2 - a x1^2)
            p = self.p
            x0, x1 = x % p, x // p
            n = pow((x0 * x0 - self.a * x1 * x1) % p, -1, p)
            return (x0 * n) % p + p * ((-x1 * n) % p)
        # extended Euclid over F_{p^2}
        B, Q = self.base, self.p**2
        g = list(self.modulus)
        f = _ptrim([(x // Q**j) % Q for j in range(self.m)])
        r0, r1, s0, s1 = g, f, [], [1]
        while len(r1) > 1:
            lead_inv = B.inv(r1[-1])
            quo = [0] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            while len(rem) >= len(r1):
                c = B.mul(rem[-1], lead_inv)
                shift = len(rem) - len(r1)
                quo[shift] = c
                for j, y in enumerate(r1):
                    rem[shift + j] = B.sub(rem[shift + j], B.mul(c, y))
                _ptrim(rem)
            qs = _pmul(B, quo, s1)
            n = max(len(s0), len(qs))
            s_new = _ptrim([B.sub(s0[i] if i < len(s0) else 0, qs[i] if i < len(qs) else 0)
                            for i in range(n)])
            r0, r1, s0, s1 = r1, rem, s1, s_new
        c = B.inv(r1[0])
        s1 = [B.mul(c, v) for v in s1]
        return sum(v * Q**j for j, v in enumerate(s1))

    # -- vectorised arithmetic on code arrays ---------------------------------

    def vadd(self, A, B):
        if self._add is not None:
            return self._add[A, B].astype(np.int64)
        if self.degree == 1:
            return (np.asarray(A) + np.asarray(B)) % self.p
        return self._vfrom_digits(self.vdigits(A) + self.vdigits(B))

    def vneg(self, A):
        if self._neg is not None:
            return self._neg[A]
        return self._vfrom_digits(-self.vdigits(A))

    def vsub(self, A, B):
        return self.vadd(A, self.vneg(B))

    def vmul(self, A, B):
        if self._log is not None:
            return self._exp[self._log[A] + self._log[B]]
        if self.degree == 1:
            return (np.asarray(A) * np.asarray(B)) % self.p
        DA, DB = np.broadcast_arrays(self.vdigits(A), self.vdigits(B))
        D = np.einsum("...i,...j,ijk->...k", DA, DB, self._struct)
        return self._vfrom_digits(D)

    def vinv(self, A):
        if self._inv is not None:
            if np.any(np.asarray(A) == 0):
                raise ZeroDivisionError("inverse of zero")
            return self._inv[A]
        flat = np.asarray(A).ravel()
        return np.array([self.inv(int(x)) for x in flat], dtype=np.int64).reshape(np.shape(A))

    def vfrob(self, A):
        if self._frob is not None:
            return self._frob[A]
        return self._vfrom_digits(self.vdigits(A) @ self._frob_mat)

    def vscale(self, c, A):
        return self.vmul(np.full(np.shape(A), c, dtype=np.int64), A)

    def matmul(self, A, B):
        """Matrix product over the field using e^2 float64 BLAS products."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        p, e = self.p, self.degree
        inner = A.shape[-1]
        DA = np.ascontiguousarray(np.moveaxis(self.vdigits(A), -1, 0), dtype=np.float64)
        DB = np.ascontiguousarray(np.moveaxis(self.vdigits(B), -1, 0), dtype=np.float64)
        shape = A.shape[:-1] + B.shape[-1:]
        acc = np.zeros((e,) + shape, dtype=np.float64)
        reduce_each = inner * (p - 1) ** 3 * e * e >= 2**52
        for i in range(e):
            for j in range(e):
                coeffs = self._struct[i, j]
                if not coeffs.any():
                    continue
                P = DA[i] @ DB[j]
                if reduce_each:
                    P = np.fmod(P, p)
                for k in np.nonzero(coeffs)[0]:
                    acc[k] += coeffs[k] * P
                if reduce_each:
                    acc = np.fmod(acc, p)
        D = np.fmod(acc, p).astype(np.int64)
        return np.moveaxis(D, 0, -1) @ self._pw

    # -- convenience ----------------------------------------------------------

    def elem(self, x):
        if isinstance(x, FieldElem):
            return x
        if x < 0:
            x = self.neg((-x) % self.p)
        return FieldElem(self, int(x))

    def from_int(self, n):
        """The image of the integer n under Z -> F_p -> this field."""
        return n % self.p

    @property
    def b(self):
        """Code of b = t, the square root of a (towers with m >= 1)."""
        if self.m == 0:
            raise ParameterError("the prime field has no element b")
        return self.p

    @cached_property
    def elements(self):
        return np.arange(self.order, dtype=np.int64)

    def describe(self):
        return {
            "p": self.p,
            "m": self.m,
            "order": self.order,
            "a": self.a,
            "modulus": list(self.modulus) if self.modulus else None,
        }

    def __repr__(self):
        return "FieldTower(p=%d, m=%d, a=%d, modulus=%s)" % (self.p, self.m, self.a, self.modulus)


@dataclass(frozen=True)
class FieldElem:
    tower: FieldTower
    code: int

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.tower is not self.tower:
                raise ParameterError("elements of different towers")
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.tower.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        y = self._coerce(other)
        return NotImplemented if y is NotImplemented else FieldElem(self.tower, self.tower.add(self.code, y))

    __radd__ = __add__

    def __sub__(self, other):
        y = self._coerce(other)
        return NotImplemented if y is NotImplemented else FieldElem(self.tower, self.tower.sub(self.code, y))

    def __rsub__(self, other):
        y = self._coerce(other)
        return NotImplemented if y is NotImplemented else FieldElem(self.tower, self.tower.sub(y, self.code))

    def __mul__(self, other):
        y = self._coerce(other)
        return NotImplemented if y is NotImplemented else FieldElem(self.tower, self.tower.mul(self.code, y))

    __rmul__ = __mul__

    def __truediv__(self, other):
        y = self._coerce(other)
        return NotImplemented if y is NotImplemented else FieldElem(self.tower, self.tower.div(self.code, y))

    def __rtruediv__(self, other):
        y = self._coerce(other)
        return NotImplemented if y is NotImplemented else FieldElem(self.tower, self.tower.div(y, self.code))

    def __neg__(self):
        return FieldElem(self.tower, self.tower.neg(self.code))

    def __pow__(self, n):
        return FieldElem(self.tower, self.tower.pow(self.code, n))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.tower is other.tower and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == self.tower.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((id(self.tower), self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        return "GF(%d^%d)[%d]" % (self.tower.p, self.tower.degree, self.code)

    def frob(self):
        return frob(self)

    def inv(self):
        return inv(self)


def frob(x):
    """The p-power Frobenius x -> x^p."""
    return FieldElem(x.tower, x.tower.frob(x.code))


def inv(x):
    return FieldElem(x.tower, x.tower.inv(x.code))


_TOWER_CACHE = {}


def make_tower(p, m):
    """
    Build F_p < F_{p^2} < F_{p^{2m}} with the smallest non-residue a and the
    first monic irreducible g over F_{p^2} of degree m, where candidates are
    ordered by the integer sum_j g_j (p^2)^j of their lower coefficients.
    Use ``m = 0`` for the prime field alone.
    """
    if not isinstance(p, (int, np.integer)) or not isinstance(m, (int, np.integer)):
        raise ParameterError("p and m must be integers")
    if p == 2:
        raise ParameterError("characteristic 2 is not supported")
    if not is_prime(p):
        raise ParameterError("%r is not a prime" % (p,))
    if m < 0:
        raise ParameterError("extension level must be >= 0")
    if p ** (2 * m) > MAX_ORDER:
        raise ResourceLimitError("field order p^%d too large" % (2 * m))
    key = (int(p), int(m))
    if key in _TOWER_CACHE:
        return _TOWER_CACHE[key]
    a = smallest_nonresidue(p)
    if m == 0:
        tower = FieldTower(p, 0, a)
    elif m == 1:
        tower = FieldTower(p, 1, a, modulus=(0, 1))
    else:
        base = make_tower(p, 1)
        Q = p * p
        for n in range(Q**m):
            low = [(n // Q**j) % Q for j in range(m)]
            if low[0] == 0:
                continue
            g = low + [1]
            if _is_irreducible(base, g):
                break
        else:  # pragma: no cover - irreducibles always exist
            raise AssertionError("no irreducible modulus found")
        tower = FieldTower(p, m, a, modulus=tuple(g), base=base)
    _TOWER_CACHE[key] = tower
    return tower


def prime_field(p):
    return make_tower(p, 0)
