"""Exact arithmetic in the cyclotomic field Q(zeta_e).

zeta_e is a primitive e-th root of unity; elements are residues modulo
the e-th cyclotomic polynomial, stored as coefficient tuples of length
phi(e) over exact rationals.  Representing modulo the cyclotomic
polynomial (rather than x^e - 1) keeps the ring a field, so inverses
always exist.

For phi(e) = 1 (e = 1, 2) the field *is* Q with zeta = 1 or -1, and
CycField hands out plain rationals as its scalars; the heavy linear
algebra then runs on the raw ground type.  CycScalar is the general
wrapper used whenever phi(e) >= 2.
"""

from functools import lru_cache

from .errors import DivisionByZero, OutOfRange
from .rationals import RAT, RAT_ONE, RAT_ZERO, rat_str


@lru_cache(maxsize=None)
def cyclotomic_poly(e):
    """Coefficients (low to high) of the e-th cyclotomic polynomial.

    Monic with integer coefficients, degree phi(e).  Computed from
    x^e - 1 = prod of the d-th cyclotomic polynomials over d | e.
    """
    if e < 1:
        raise OutOfRange(f"cyclotomic order must be >= 1, got {e}")
    poly = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _polydiv_exact(num, den):
    """Divide num by monic den over the integers; division must be exact."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


def euler_phi(e):
    return len(cyclotomic_poly(e)) - 1


class CycField:
    """The field Q(zeta_e), with cached structure data.

    Scalars are plain rationals when phi(e) == 1 and CycScalar tuples
    otherwise; either way they support +, -, *, /, ==, bool.
    """

    _cache = {}

    def __new__(cls, order):
        if order in cls._cache:
            return cls._cache[order]
        if order < 1:
            raise OutOfRange(f"field order must be >= 1, got {order}")
        self = super().__new__(cls)
        self.order = order
        self.modulus = cyclotomic_poly(order)
        self.phi = len(self.modulus) - 1
        self.raw = self.phi == 1
        if self.raw:
            # residue of z modulo the degree-one cyclotomic polynomial
            self._zeta_raw = RAT(-self.modulus[0])
        else:
            self._reduction = self._reduction_rows()
        self._zeta_pows = None
        cls._cache[order] = self
        return self

    def _reduction_rows(self):
        # row k: coefficients of x^(phi + k) reduced modulo the cyclotomic polynomial
        phi = self.phi
        rows = []
        prev = [RAT(-c) for c in self.modulus[:phi]]
        rows.append(tuple(prev))
        for _ in range(phi - 2):
            shifted = [RAT_ZERO] + prev[: phi - 1]
            top = prev[phi - 1]
            if top:
                shifted = [s + top * r for s, r in zip(shifted, rows[0])]
            prev = shifted
            rows.append(tuple(prev))
        return rows

    # -- scalar constructors -------------------------------------------------

    def zero(self):
        return RAT_ZERO if self.raw else CycScalar(self, (RAT_ZERO,) * self.phi)

    def one(self):
        return self.from_rat(RAT_ONE)

    def from_rat(self, r):
        r = RAT(r)
        if self.raw:
            return r
        return CycScalar(self, (r,) + (RAT_ZERO,) * (self.phi - 1))

    def from_int(self, n):
        return self.from_rat(RAT(n))

    def scalar(self, coeffs):
        """Scalar from a coefficient sequence of length phi (low degree first)."""
        coeffs = [RAT(c) for c in coeffs]
        if len(coeffs) != self.phi:
            raise OutOfRange(
                f"need {self.phi} coefficients for order {self.order}, got {len(coeffs)}"
            )
        if self.raw:
            return coeffs[0]
        return CycScalar(self, tuple(coeffs))

    def zeta(self):
        return self.zeta_pow(1)

    def zeta_pow(self, k):
        if self._zeta_pows is None:
            pows = [self.one()]
            if self.raw:
                z = self._zeta_raw
            else:
                coeffs = [RAT_ZERO] * self.phi
                if self.phi >= 2:
                    coeffs[1] = RAT_ONE
                z = CycScalar(self, tuple(coeffs))
                if self.order == 1:
                    z = self.one()
            for _ in range(self.order - 1):
                pows.append(pows[-1] * z)
            self._zeta_pows = pows
        return self._zeta_pows[k % self.order]

    # -- uniform scalar views ------------------------------------------------

    def coeffs(self, s):
        """Coefficient tuple of length phi for any scalar of this field."""
        if self.raw:
            return (RAT(s),)
        return s.c

    def format_scalar(self, s):
        cs = self.coeffs(s)
        parts = []
        for k, c in enumerate(cs):
            if not c:
                continue
            if k == 0:
                parts.append(rat_str(c))
                continue
            mono = "z" if k == 1 else f"z^{k}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{rat_str(c)}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"CycField({self.order})"


class CycScalar:
    """Element of Q(zeta_e) for phi(e) >= 2: a residue modulo the
    cyclotomic polynomial, as a dense coefficient tuple."""

    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycScalar(self.field, tuple(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycScalar(self.field, tuple(a - b for a, b in zip(self.c, other.c)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CycScalar(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.c, other.c
        phi = self.field.phi
        conv = [RAT_ZERO] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
        out = conv[:phi]
        red = self.field._reduction
        for k in range(phi, 2 * phi - 1):
            ck = conv[k]
            if ck:
                row = red[k - phi]
                for i in range(phi):
                    if row[i]:
                        out[i] += ck * row[i]
        return CycScalar(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        """Inverse modulo the cyclotomic polynomial (extended Euclid)."""
        if not self:
            raise DivisionByZero("inverse of zero scalar")
        phi = self.field.phi
        r0 = [RAT(c) for c in self.field.modulus]
        r1 = list(self.c)
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [], [RAT_ONE]
        while True:
            if len(r1) == 1:
                inv = RAT_ONE / r1[0]
                out = [c * inv for c in s1]
                out += [RAT_ZERO] * (phi - len(out))
                return CycScalar(self.field, tuple(out[:phi]))
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
            while r1 and not r1[-1]:
                r1.pop()
            if not r1:
                raise ArithmeticError("scalar not invertible; modulus not irreducible?")

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.c == other.c

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __bool__(self):
        return any(self.c)

    def __hash__(self):
        return hash((self.field.order, self.c))

    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.field is not self.field:
                return NotImplemented
            return other
        if isinstance(other, (int, RAT)):
            return self.field.from_rat(RAT(other))
        return NotImplemented

    def __repr__(self):
        return f"CycScalar({self.field.order}, {self.field.format_scalar(self)!r})"


def _polydivmod(num, den):
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dd:
        return [], num
    out = [RAT_ZERO] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd] / lead
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    return out, num[:dd]


def _polymul(a, b):
    if not a or not b:
        return []
    out = [RAT_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [RAT_ZERO] * (n - len(a))
    b = list(b) + [RAT_ZERO] * (n - len(b))
    return [x - y for x, y in zip(a, b)]
