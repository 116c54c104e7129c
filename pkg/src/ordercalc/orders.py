"""The local model algebras and their element arithmetic.

Over R = k[[u,v]] (truncated to R_N) the three families are, with
g = e/e' and S the skew algebra over R with x^e' = u, y^e' = v and
y x = zeta x y for a primitive e'-th root of unity zeta:

  unramified    e = e' = 1:  A = M_f(R)
  smooth_ram    e > e' = 1:  A = M_f(B),  B the subring of M_e(R) whose
                             entries strictly below the diagonal are
                             divisible by u (a hereditary order)
  singular_ram  e = e' > 1:  A = M_f(S)
  general       e > e' > 1:  A = M_f(B) for B inside M_g(S) with entries
                             below the diagonal divisible by x (element
                             arithmetic only; no deformation theory)

All four are handled by one basis: a monomial is
(P, Q, r, c, a, b, i, j) meaning the matrix with the single entry
x^a y^b u^i v^j in outer block (P, Q) at inner position (r, c), subject
to the divisibility pattern for r > c.  Multiplying two monomials gives
at most one monomial times a power of zeta, so the basis carries sparse
structure constants and every standard generator acts monomially.

Monomials are globally ordered by total (u,v)-degree, then v-exponent,
then position; this order pins down every canonical basis in the package.
"""

from .cyclotomic import CycField
from .errors import OutOfRange, SpecMismatch, TruncMismatch
from .rationals import RAT

KINDS = ("unramified", "smooth_ram", "singular_ram", "general")


class AlgebraSpec:
    """Shape (e, e', f) and truncation order N of a local model algebra.

    Instances are interned per parameter tuple; derived structure (basis,
    index, generator action tables) is built lazily and shared.
    """

    _cache = {}

    def __new__(cls, e, e_prime, f, N):
        key = (e, e_prime, f, N)
        if key in cls._cache:
            return cls._cache[key]
        if e < 1 or e_prime < 1 or f < 1:
            raise SpecMismatch(f"algebra parameters must be positive: {key}")
        if e % e_prime:
            raise SpecMismatch(f"e'={e_prime} must divide e={e}")
        if N < 2:
            raise TruncMismatch(f"truncation order must be >= 2, got {N}")
        self = super().__new__(cls)
        self.e = e
        self.e_prime = e_prime
        self.f = f
        self.N = N
        self.g = e // e_prime
        self.field = CycField(e_prime)
        self._monomials = None
        self._index = None
        self._left = None
        self._right = None
        self._gen_elems = None
        cls._cache[key] = self
        return self

    # -- constructors ---------------------------------------------------------

    @classmethod
    def unramified(cls, f, N):
        return cls(1, 1, f, N)

    @classmethod
    def smooth_ram(cls, e, f, N):
        if e < 2:
            raise SpecMismatch("smooth ramification needs e >= 2")
        return cls(e, 1, f, N)

    @classmethod
    def singular_ram(cls, e, f, N):
        if e < 2:
            raise SpecMismatch("singular ramification needs e >= 2")
        return cls(e, e, f, N)

    @classmethod
    def make(cls, kind, e, f, N):
        if kind == "unramified":
            if e != 1:
                raise SpecMismatch("unramified algebras have e = 1")
            return cls.unramified(f, N)
        if kind == "smooth_ram":
            return cls.smooth_ram(e, f, N)
        if kind == "singular_ram":
            return cls.singular_ram(e, f, N)
        raise SpecMismatch(f"unknown algebra kind {kind!r}")

    @property
    def kind(self):
        if self.e == 1:
            return "unramified"
        if self.e_prime == 1:
            return "smooth_ram"
        if self.e_prime == self.e:
            return "singular_ram"
        return "general"

    def with_truncation(self, N):
        return AlgebraSpec(self.e, self.e_prime, self.f, N)

    def with_f(self, f):
        return AlgebraSpec(self.e, self.e_prime, f, self.N)

    def reduced(self):
        """The Morita-reduced algebra: same ramification data, f = 1."""
        return self.with_f(1)

    # -- basis ------------------------------------------------------------------

    def _pattern_ok(self, r, c, a, i):
        return r <= c or a >= 1 or i >= 1

    def monomials(self):
        if self._monomials is None:
            ep, N = self.e_prime, self.N
            monos = [
                (P, Q, r, c, a, b, i, j)
                for d in range(N)
                for j in range(d + 1)
                for i in (d - j,)
                for P in range(self.f)
                for r in range(self.g)
                for Q in range(self.f)
                for c in range(self.g)
                for a in range(ep)
                for b in range(ep)
                if self._pattern_ok(r, c, a, i)
            ]
            self._monomials = tuple(monos)
            self._index = {m: k for k, m in enumerate(monos)}
        return self._monomials

    def index(self):
        self.monomials()
        return self._index

    @property
    def dim(self):
        return len(self.monomials())

    def mono_degree(self, k):
        m = self.monomials()[k]
        return m[6] + m[7]

    def monomials_of_degree(self, d):
        return [k for k, m in enumerate(self.monomials()) if m[6] + m[7] == d]

    def unit_monomials(self):
        """Indices of the orthogonal idempotent monomials E_(P,r),(P,r)."""
        idx = self.index()
        return [
            ((P, r), idx[(P, P, r, r, 0, 0, 0, 0)])
            for P in range(self.f)
            for r in range(self.g)
        ]

    def mul_mono(self, k1, k2):
        """Product of two basis monomials: None or (index, scalar)."""
        m1 = self.monomials()[k1]
        m2 = self.monomials()[k2]
        P1, Q1, r1, c1, a1, b1, i1, j1 = m1
        P2, Q2, r2, c2, a2, b2, i2, j2 = m2
        if Q1 != P2 or c1 != r2:
            return None
        ep = self.e_prime
        a = a1 + a2
        b = b1 + b2
        i = i1 + i2 + a // ep
        j = j1 + j2 + b // ep
        if i + j >= self.N:
            return None
        key = (P1, Q2, r1, c2, a % ep, b % ep, i, j)
        target = self._index.get(key)
        assert target is not None, "product left the block pattern"
        if b1 and a2:
            return (target, self.field.zeta_pow(b1 * a2))
        return (target, None)  # None scalar means 1

    # -- standard elements -------------------------------------------------------

    def element(self, coeffs):
        return AlgebraElement(self, coeffs)

    def zero_element(self):
        return AlgebraElement(self, {})

    def identity(self):
        one = self.field.one()
        return AlgebraElement(self, {k: one for _, k in self.unit_monomials()})

    def monomial_element(self, mono, coeff=None):
        idx = self.index().get(mono)
        if idx is None:
            raise OutOfRange(f"not a basis monomial of this algebra: {mono}")
        return AlgebraElement(self, {idx: coeff if coeff is not None else self.field.one()})

    def central_series_element(self, i, j, coeff=None):
        """u^i v^j times the identity."""
        if i + j >= self.N:
            return self.zero_element()
        c = coeff if coeff is not None else self.field.one()
        return AlgebraElement(
            self,
            {
                self.index()[(P, P, r, r, 0, 0, i, j)]: c
                for P in range(self.f)
                for r in range(self.g)
            },
        )

    def u_element(self):
        return self.central_series_element(1, 0)

    def v_element(self):
        return self.central_series_element(0, 1)

    def skew_variable(self, which):
        """x or y as an element (e' > 1 only)."""
        if self.e_prime == 1:
            raise SpecMismatch("x, y only exist when e' > 1")
        a, b = (1, 0) if which == "x" else (0, 1)
        one = self.field.one()
        return AlgebraElement(
            self,
            {
                self.index()[(P, P, r, r, a, b, 0, 0)]: one
                for P in range(self.f)
                for r in range(self.g)
            },
        )

    def block_unit(self, k, l):
        """1_f tensor the basis matrix of the hereditary block: entry 1 at
        (k, l) for k <= l, and u (resp. x when e' > 1) for k > l; 1-indexed."""
        if not (1 <= k <= self.g and 1 <= l <= self.g):
            raise OutOfRange(f"block index out of range: ({k}, {l})")
        r, c = k - 1, l - 1
        if r <= c:
            a, i = 0, 0
        elif self.e_prime == 1:
            a, i = 0, 1
        else:
            a, i = 1, 0
        one = self.field.one()
        return AlgebraElement(
            self,
            {self.index()[(P, P, r, c, a, 0, i, 0)]: one for P in range(self.f)},
        )

    def outer_unit(self, P, Q):
        """Matrix unit E_PQ of the outer M_f factor, 1-indexed."""
        if not (1 <= P <= self.f and 1 <= Q <= self.f):
            raise OutOfRange(f"outer index out of range: ({P}, {Q})")
        one = self.field.one()
        return AlgebraElement(
            self,
            {self.index()[(P - 1, Q - 1, r, r, 0, 0, 0, 0)]: one for r in range(self.g)},
        )

    # -- generating sets and action tables ----------------------------------------

    def generator_elements(self):
        """Named algebra generators; their words span the whole algebra."""
        if self._gen_elems is None:
            gens = []
            if self.f > 1:
                gens += [
                    (f"E[{P},{Q}]", self.outer_unit(P, Q))
                    for P in range(1, self.f + 1)
                    for Q in range(1, self.f + 1)
                ]
            if self.g > 1:
                gens += [(f"b[{k},{k}]", self.block_unit(k, k)) for k in range(1, self.g + 1)]
                gens += [
                    (f"b[{k},{k + 1}]", self.block_unit(k, k + 1))
                    for k in range(1, self.g)
                ]
                gens.append((f"b[{self.g},1]", self.block_unit(self.g, 1)))
            if self.e_prime > 1:
                gens += [("x", self.skew_variable("x")), ("y", self.skew_variable("y"))]
            gens += [("u", self.u_element()), ("v", self.v_element())]
            self._gen_elems = gens
        return self._gen_elems

    def gen_element(self, name):
        for n, g in self.generator_elements():
            if n == name:
                return g
        raise OutOfRange(f"unknown generator {name!r}")

    def _tables(self, side):
        out = []
        for name, g in self.generator_elements():
            table = []
            for k in range(self.dim):
                acc = {}
                for kg, sg in g.coeffs.items():
                    prod = self.mul_mono(kg, k) if side == "left" else self.mul_mono(k, kg)
                    if prod is None:
                        continue
                    k2, s = prod
                    term = sg if s is None else sg * s
                    prev = acc.get(k2)
                    term = term if prev is None else prev + term
                    if term:
                        acc[k2] = term
                    else:
                        acc.pop(k2, None)
                one = self.field.one()
                table.append(
                    tuple((k2, None if s == one else s) for k2, s in acc.items())
                )
            out.append((name, table))
        return out

    def left_actions(self):
        if self._left is None:
            self._left = self._tables("left")
        return self._left

    def right_actions(self):
        if self._right is None:
            self._right = self._tables("right")
        return self._right

    def describe(self):
        return {
            "kind": self.kind,
            "e": self.e,
            "e_prime": self.e_prime,
            "f": self.f,
            "N": self.N,
        }

    def __repr__(self):
        return f"AlgebraSpec({self.kind}, e={self.e}, e'={self.e_prime}, f={self.f}, N={self.N})"


def apply_action(table, row):
    """Image of a sparse vector under a precomputed generator action."""
    out = {}
    for k, c in row.items():
        for k2, s in table[k]:
            term = c if s is None else c * s
            prev = out.get(k2)
            term = term if prev is None else prev + term
            if term:
                out[k2] = term
            else:
                del out[k2]
    return out


class AlgebraElement:
    """Sparse element: {monomial index: scalar}."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        self.spec = spec
        self.coeffs = {k: c for k, c in coeffs.items() if c}

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.spec is not self.spec:
            raise TruncMismatch("operands live in different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                del out[k]
        return AlgebraElement(self.spec, out)

    def __neg__(self):
        return AlgebraElement(self.spec, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        spec = self.spec
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                prod = spec.mul_mono(k1, k2)
                if prod is None:
                    continue
                k, s = prod
                term = c1 * c2
                if s is not None:
                    term = term * s
                prev = out.get(k)
                term = term if prev is None else prev + term
                if term:
                    out[k] = term
                else:
                    del out[k]
        return AlgebraElement(spec, out)

    def scaled(self, scalar):
        return AlgebraElement(self.spec, {k: scalar * c for k, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.spec is other.spec and self.coeffs == other.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def is_zero(self):
        return not self.coeffs

    def vector(self):
        return dict(self.coeffs)

    def __pow__(self, n):
        if n < 0:
            raise OutOfRange("negative powers are not defined here")
        out = self.spec.identity()
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        from .parsing import format_element

        return format_element(self)

    def __repr__(self):
        return f"AlgebraElement({self.spec.kind}, {self.__str__()!r})"


def alg_mul(a, b):
    """Structure-constant product in the local model algebra."""
    return a * b


def standard_basis(spec, i, j):
    """The basis matrix b_(i,j) of the hereditary order: single entry in
    row i, column j, equal to 1 for i <= j and u for i > j (diagonally
    embedded when f > 1)."""
    if spec.kind != "smooth_ram":
        raise SpecMismatch("standard_basis is defined for smooth ramification")
    if not (1 <= i <= spec.e and 1 <= j <= spec.e):
        raise OutOfRange(f"index out of range: ({i}, {j}) with e={spec.e}")
    return spec.block_unit(i, j)


def dual_shift_element(spec):
    """The u-cleared dual shift c: ones on the superdiagonal, u in the
    bottom-left corner.  c equals u times the generator of the dual
    bimodule, so dual computations stay inside the algebra; c^e = u."""
    if spec.kind != "smooth_ram":
        raise SpecMismatch("the dual shift element lives in the smooth-ramification algebra")
    out = spec.block_unit(spec.e, 1)
    for k in range(1, spec.e):
        out = out + spec.block_unit(k, k + 1)
    return out


def maximal_ideal(spec, i=1):
    """Generators of the i-th two-sided maximal ideal.

    smooth_ram: replace R by its maximal ideal in diagonal entry (i, i);
    singular_ram: the unique maximal ideal, generated by x and y (index
    ignored); unramified: u and v times the identity.  For f > 1 the
    left-ideal closure of these diagonally embedded generators is the
    full f x f matrix ideal (colength f^2); for f = 1 the colength is 1.
    """
    if spec.kind == "smooth_ram":
        if not (1 <= i <= spec.e):
            raise OutOfRange(f"maximal ideal index out of range: {i} with e={spec.e}")
        bii = spec.block_unit(i, i)
        gens = [spec.u_element() * bii, spec.v_element() * bii]
        gens += [
            spec.block_unit(k, l)
            for k in range(1, spec.e + 1)
            for l in range(1, spec.e + 1)
            if (k, l) != (i, i)
        ]
        return gens
    if spec.kind == "singular_ram":
        return [spec.skew_variable("x"), spec.skew_variable("y")]
    if spec.kind == "unramified":
        return [spec.u_element(), spec.v_element()]
    raise SpecMismatch("no maximal-ideal description for the general kind")
