"""Truncated power series in two variables and their finite-colength ideals.

R_N = k[u,v]/(u,v)^N models the complete local ring k[[u,v]] up to
truncation order N; k is a cyclotomic field (usually plain Q).  Monomials
u^i v^j with i + j < N are ordered by total degree, then by v-exponent
(u < v), and that order fixes all canonical forms and deterministic picks.

An ideal is stored as a canonical subspace of R_N closed under
multiplication by u and v.  The saturation certificate: if the subspace
contains every monomial of degree N-1, the untruncated ideal it
represents contains (u,v)^(N-1), and colength computed in R_N equals the
true colength.  Operations that need exactness refuse unsaturated input.
"""

from functools import lru_cache

from .cyclotomic import CycField
from .errors import (
    EqualIdeals,
    IdealIsUnitIdeal,
    NotSaturated,
    SpecMismatch,
    TruncMismatch,
)
from .linalg import Subspace, scale
from .rationals import RAT


@lru_cache(maxsize=None)
def series_monomials(N):
    """Monomials (i, j) of R_N in the global order: by degree, then v-exponent."""
    return tuple((d - j, j) for d in range(N) for j in range(d + 1))


@lru_cache(maxsize=None)
def series_index(N):
    return {m: k for k, m in enumerate(series_monomials(N))}


def series_dim(N):
    return N * (N + 1) // 2


class TruncSeries:
    """Element of R_N: sparse {(i, j): scalar} with i + j < N."""

    __slots__ = ("field", "N", "coeffs")

    def __init__(self, field, N, coeffs=None):
        if N < 1:
            raise TruncMismatch(f"truncation order must be >= 1, got {N}")
        self.field = field
        self.N = N
        clean = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise TruncMismatch(f"negative exponent in monomial u^{i} v^{j}")
            if i + j < N and c:
                clean[(i, j)] = c
        self.coeffs = clean

    @classmethod
    def from_int_coeffs(cls, field, N, coeffs):
        return cls(field, N, {m: field.from_rat(RAT(c)) for m, c in coeffs.items()})

    @classmethod
    def monomial(cls, field, N, i, j, coeff=1):
        return cls(field, N, {(i, j): field.from_rat(RAT(coeff))})

    @classmethod
    def zero(cls, field, N):
        return cls(field, N, {})

    @classmethod
    def one(cls, field, N):
        return cls.monomial(field, N, 0, 0)

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            raise TruncMismatch("expected a TruncSeries operand")
        if other.N != self.N or other.field is not self.field:
            raise TruncMismatch(
                f"operands live in different rings: N={self.N} vs N={other.N}"
            )

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return TruncSeries(self.field, self.N, out)

    def __neg__(self):
        return TruncSeries(self.field, self.N, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        N = self.N
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i + j >= N:
                    continue
                s = out.get((i, j))
                p = c1 * c2
                s = p if s is None else s + p
                if s:
                    out[(i, j)] = s
                else:
                    del out[(i, j)]
        return TruncSeries(self.field, N, out)

    def scaled(self, scalar):
        return TruncSeries(self.field, self.N, {m: scalar * c for m, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.N == other.N and self.field is other.field and self.coeffs == other.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def is_zero(self):
        return not self.coeffs

    def vector(self):
        idx = series_index(self.N)
        return {idx[m]: c for m, c in self.coeffs.items()}

    @classmethod
    def from_vector(cls, field, N, vec):
        monos = series_monomials(N)
        return cls(field, N, {monos[k]: c for k, c in vec.items()})

    def retruncate(self, N):
        return TruncSeries(self.field, N, {m: c for m, c in self.coeffs.items() if sum(m) < N})

    def __str__(self):
        from .parsing import format_series

        return format_series(self)

    def __repr__(self):
        return f"TruncSeries(N={self.N}, {self.__str__()!r})"


def _shift(vec, N, du, dv):
    """Vector of u^du v^dv times the series with the given vector."""
    monos = series_monomials(N)
    idx = series_index(N)
    out = {}
    for k, c in vec.items():
        i, j = monos[k]
        i, j = i + du, j + dv
        if i + j < N:
            out[idx[(i, j)]] = c
    return out


class CommIdeal:
    """Finite-colength ideal of R_N as a canonical subspace.

    saturated means the subspace contains every monomial of degree N-1;
    saturation_level is the least s with all monomials of every degree
    in [s, N) present (None when unsaturated).  Colength queries reject
    unsaturated ideals: the truncation is too small to certify them.
    """

    __slots__ = ("field", "N", "space", "saturation_level", "_colength")

    def __init__(self, field, N, space, verify=True):
        self.field = field
        self.N = N
        self.space = space
        if verify:
            for p in space.pivots():
                row = space.rows[p]
                for du, dv in ((1, 0), (0, 1)):
                    if not space.contains(_shift(row, N, du, dv)):
                        raise SpecMismatch(
                            "subspace is not closed under multiplication by u, v"
                        )
        self.saturation_level = self._saturation_level()
        self._colength = None

    def _saturation_level(self):
        idx = series_index(self.N)
        level = self.N
        for d in range(self.N - 1, -1, -1):
            ok = all(
                self.space.contains({idx[(d - j, j)]: self.field.one()})
                for j in range(d + 1)
            )
            if not ok:
                break
            level = d
        return level if level <= self.N - 1 else None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_generators(cls, gens, N=None, field=None):
        if not gens and field is None:
            raise SpecMismatch("need at least one generator or an explicit field")
        field = field or gens[0].field
        N = N or gens[0].N
        if N < 2:
            raise TruncMismatch(f"need truncation order >= 2, got {N}")
        space = Subspace()
        work = []
        for g in gens:
            vec = g.retruncate(N).vector()
            if space.insert(vec) is not None:
                work.append(vec)
        while work:
            vec = work.pop()
            for du, dv in ((1, 0), (0, 1)):
                shifted = _shift(vec, N, du, dv)
                if shifted and space.insert(shifted) is not None:
                    work.append(shifted)
        return cls(field, N, space, verify=False)

    @classmethod
    def whole(cls, field, N):
        one = TruncSeries.one(field, N)
        return cls.from_generators([one], N=N, field=field)

    @classmethod
    def maximal(cls, field, N):
        u = TruncSeries.monomial(field, N, 1, 0)
        v = TruncSeries.monomial(field, N, 0, 1)
        return cls.from_generators([u, v], N=N, field=field)

    @classmethod
    def from_basis(cls, rows, field, N):
        return cls(field, N, Subspace.from_rows(rows), verify=True)

    # -- queries ---------------------------------------------------------------

    @property
    def saturated(self):
        return self.saturation_level is not None

    def colength(self):
        if not self.saturated:
            raise NotSaturated(
                "truncation too small to certify finite colength",
                detail={"N": self.N},
            )
        if self._colength is None:
            self._colength = series_dim(self.N) - self.space.dim
        return self._colength

    def is_whole(self):
        return self.space.dim == series_dim(self.N)

    def contains_series(self, s):
        return self.space.contains(s.retruncate(self.N).vector())

    def contains_ideal(self, other):
        self._check(other)
        return self.space.contains_subspace(other.space)

    def _check(self, other):
        if other.N != self.N or other.field is not self.field:
            raise TruncMismatch("ideals live in different rings")

    def __eq__(self, other):
        if not isinstance(other, CommIdeal):
            return NotImplemented
        return self.N == other.N and self.field is other.field and self.space == other.space

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def sum(self, other):
        self._check(other)
        space = self.space.copy()
        for row in other.space.rows.values():
            space.insert(dict(row))
        return CommIdeal(self.field, self.N, space, verify=False)

    def intersect(self, other):
        from .linalg import intersect as _isect

        self._check(other)
        return CommIdeal(self.field, self.N, _isect(self.space, other.space), verify=False)

    def shifted_space(self, du, dv):
        """Subspace of u^du v^dv times this ideal (not saturated in general)."""
        out = Subspace()
        for row in self.space.rows.values():
            out.insert(_shift(row, self.N, du, dv))
        return out

    def basis_series(self):
        return [
            TruncSeries.from_vector(self.field, self.N, self.space.rows[p])
            for p in self.space.pivots()
        ]

    def standard_monomials(self):
        """Monomials spanning R_N modulo this ideal."""
        monos = series_monomials(self.N)
        return [monos[k] for k in self.space.standard_coords(series_dim(self.N))]

    def retruncate(self, N):
        """Rebuild at truncation order N from the current basis."""
        return CommIdeal.from_generators(self.basis_series(), N=N, field=self.field)

    def __repr__(self):
        sat = self.saturation_level
        return f"CommIdeal(N={self.N}, dim={self.space.dim}, sat={sat})"


def ideal_from_generators(gens, N=None, field=None):
    """Smallest ideal of R_N containing the generators."""
    return CommIdeal.from_generators(gens, N=N, field=field)


def colength(ideal):
    return ideal.colength()


def _residue_echelon(space, vectors):
    """Canonical echelon of the residues of vectors modulo space.

    The returned Subspace's rows are honest ambient vectors lying in
    span(vectors) + space, supported away from space's pivots.
    """
    out = Subspace()
    for vec in vectors:
        out.insert(space.reduce(vec))
    return out


def _require_saturated(J, who):
    if not J.saturated:
        raise NotSaturated(f"{who} requires a saturated ideal", detail={"N": J.N})


def nakayama_corank1_pick(J):
    """Deterministic ideal J' inside J with J/J' one-dimensional and
    J' containing (u,v)*J: drop the first pivot of J modulo (u,v)*J."""
    _require_saturated(J, "nakayama_corank1_pick")
    mj = Subspace()
    for row in J.space.rows.values():
        for du, dv in ((1, 0), (0, 1)):
            sh = _shift(row, J.N, du, dv)
            if sh:
                mj.insert(sh)
    quo = _residue_echelon(mj, (dict(J.space.rows[p]) for p in J.space.pivots()))
    pivs = quo.pivots()
    space = mj
    for p in pivs[1:]:
        space.insert(dict(quo.rows[p]))
    out = CommIdeal(J.field, J.N, space, verify=False)
    assert out.space.dim == J.space.dim - 1
    return out


def _socle_inside(outer_rows, inner_space, N):
    """Vectors w in span(outer_rows) with u*w and v*w inside inner_space."""
    D = series_dim(N)
    kernel = []
    elim = {}
    for vec in outer_rows:
        vec = dict(vec)
        res = inner_space.reduce(_shift(vec, N, 1, 0))
        res_v = inner_space.reduce(_shift(vec, N, 0, 1))
        for k, c in res_v.items():
            res[k + D] = c
        while res:
            q = min(res)
            hit = elim.get(q)
            if hit is None:
                inv = 1 / res[q]
                elim[q] = (scale(res, inv), scale(vec, inv))
                vec = None
                break
            c = -res[q]
            for k, x in hit[0].items():
                s = res.get(k)
                s = c * x if s is None else s + c * x
                if s:
                    res[k] = s
                else:
                    del res[k]
            for k, x in hit[1].items():
                s = vec.get(k)
                s = c * x if s is None else s + c * x
                if s:
                    vec[k] = s
                else:
                    del vec[k]
        if vec is not None and not res:
            kernel.append(vec)
    return kernel


def socle_pick(J):
    """Deterministic ideal J' containing J with J'/J one-dimensional:
    add the last-pivot socle vector of R_N/J."""
    _require_saturated(J, "socle_pick")
    if J.is_whole():
        raise IdealIsUnitIdeal("the unit ideal has no strictly larger ideal")
    monos = series_monomials(J.N)
    one = J.field.one()
    all_vectors = [{k: one} for k in range(len(monos))]
    kernel = _socle_inside(all_vectors, J.space, J.N)
    quo = _residue_echelon(J.space, kernel)
    assert quo.dim >= 1
    last = quo.pivots()[-1]
    space = J.space.copy()
    space.insert(dict(quo.rows[last]))
    out = CommIdeal(J.field, J.N, space, verify=False)
    assert out.space.dim == J.space.dim + 1
    return out


def socle_and_cosocle_picks(inner, outer):
    """Given inner strictly inside outer, return (smaller, larger):

    smaller: codimension 1 in outer, containing (u,v)*outer + inner;
    larger:  inner plus one socle vector of outer/inner.

    Both quotients outer/smaller and larger/inner are one-dimensional,
    hence isomorphic to the residue field as modules.
    """
    inner._check(outer)
    _require_saturated(inner, "socle_and_cosocle_picks")
    _require_saturated(outer, "socle_and_cosocle_picks")
    if not outer.contains_ideal(inner):
        raise SpecMismatch("inner ideal is not contained in the outer ideal")
    if inner.space == outer.space:
        raise EqualIdeals("the two ideals coincide")

    base = Subspace()
    for row in outer.space.rows.values():
        for du, dv in ((1, 0), (0, 1)):
            sh = _shift(row, outer.N, du, dv)
            if sh:
                base.insert(sh)
    for row in inner.space.rows.values():
        base.insert(dict(row))
    quo = _residue_echelon(base, (dict(outer.space.rows[p]) for p in outer.space.pivots()))
    assert quo.dim >= 1
    for p in quo.pivots()[1:]:
        base.insert(dict(quo.rows[p]))
    smaller = CommIdeal(outer.field, outer.N, base, verify=False)
    assert smaller.space.dim == outer.space.dim - 1

    rows = [dict(outer.space.rows[p]) for p in outer.space.pivots()]
    kernel = _socle_inside(rows, inner.space, inner.N)
    quo2 = _residue_echelon(inner.space, kernel)
    assert quo2.dim >= 1
    space2 = inner.space.copy()
    space2.insert(dict(quo2.rows[quo2.pivots()[-1]]))
    larger = CommIdeal(inner.field, inner.N, space2, verify=False)
    assert larger.space.dim == inner.space.dim + 1
    return smaller, larger


def staircase_ideal(l, N, field=None):
    """The monomial ideal of colength l whose quotient basis is the first
    l monomials in the global order (the minimal staircase)."""
    field = field or CycField(1)
    if l < 0:
        raise SpecMismatch("colength must be nonnegative")
    if N < 2 or series_dim(N) <= l:
        raise TruncMismatch(f"truncation N={N} too small for colength {l}")
    monos = series_monomials(N)
    one = field.one()
    space = Subspace.from_rows({k: one} for k in range(l, len(monos)))
    return CommIdeal(field, N, space, verify=False)
