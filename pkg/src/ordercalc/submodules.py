"""Finite-colength left ideals in the truncated model algebras.

A LeftIdeal is a canonical subspace of the truncated algebra closed
under left multiplication by the standard generators.  Saturation (the
subspace contains every monomial of top degree N-1) certifies that
colength, containment and closure answers agree with the untruncated
algebra; the saturation *level* is the least s with all monomials of
degree >= s present, and N-1-level is the precision budget available
for operations that consume a power of u.

The two-sidedness criterion: for a left ideal I with I A* inside A* I,
I is two-sided.  A* is spanned by b* A for the shift matrix b* with
u^(-1) above the diagonal; all computations here use the u-cleared
element c = u b* (ones on the superdiagonal, u in the corner), so the
containment test I c A inside c I runs entirely inside the algebra at
the cost of one unit of precision budget.

Two-sided ideals satisfying the containment are circulant: determined
by a chain of ideals J_1 contains ... contains J_e with J_e containing
u J_1, laid out along the diagonals (chain_compose / chain_decompose).
"""

from .errors import (
    ChainInvariantViolated,
    DimensionBound,
    NotCirculant,
    NotSaturated,
    OutOfRange,
    PrecisionExhausted,
    SpecMismatch,
)
from .linalg import Subspace
from .orders import AlgebraElement, apply_action, dual_shift_element
from .power_series import CommIdeal, series_dim, series_index, series_monomials


def action_table(spec, element, side):
    """Sparse action table of an arbitrary element on the monomial basis."""
    table = []
    one = spec.field.one()
    for k in range(spec.dim):
        acc = {}
        for kg, sg in element.coeffs.items():
            prod = spec.mul_mono(kg, k) if side == "left" else spec.mul_mono(k, kg)
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
        table.append(tuple((k2, None if s == one else s) for k2, s in acc.items()))
    return table


class LeftIdeal:
    """Left ideal of a truncated model algebra, in canonical form."""

    __slots__ = ("spec", "space", "saturation_level", "_colength")

    def __init__(self, spec, space):
        self.spec = spec
        self.space = space
        self.saturation_level = self._saturation_level()
        self._colength = None

    def _saturation_level(self):
        rows = self.space.rows
        level = self.spec.N
        for d in range(self.spec.N - 1, -1, -1):
            for k in self.spec.monomials_of_degree(d):
                row = rows.get(k)
                if row is None or len(row) != 1:
                    return level if level <= self.spec.N - 1 else None
            level = d
        return level

    @property
    def saturated(self):
        return self.saturation_level is not None

    @property
    def precision_budget(self):
        if self.saturation_level is None:
            return None
        return (self.spec.N - 1) - self.saturation_level

    def colength(self):
        if not self.saturated:
            raise NotSaturated(
                "truncation too small to certify finite colength",
                detail={"spec": self.spec.describe()},
            )
        if self._colength is None:
            self._colength = self.spec.dim - self.space.dim
        return self._colength

    def is_whole(self):
        return self.space.dim == self.spec.dim

    def is_proper(self):
        return not self.is_whole()

    def contains_element(self, elem):
        return self.space.contains(elem.coeffs)

    def contains_ideal(self, other):
        self._check(other)
        return self.space.contains_subspace(other.space)

    def _check(self, other):
        if other.spec is not self.spec:
            raise SpecMismatch("ideals live in different algebras")

    def __eq__(self, other):
        if not isinstance(other, LeftIdeal):
            return NotImplemented
        return self.spec is other.spec and self.space == other.space

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def basis_vectors(self):
        return [dict(self.space.rows[p]) for p in self.space.pivots()]

    def basis_elements(self):
        return [AlgebraElement(self.spec, v) for v in self.basis_vectors()]

    def standard_monomials(self):
        """Monomial tuples spanning the algebra modulo this ideal."""
        monos = self.spec.monomials()
        return [monos[k] for k in self.space.standard_coords(self.spec.dim)]

    def retruncate(self, N):
        """Rebuild this ideal at truncation order N (exact for saturated input)."""
        spec2 = self.spec.with_truncation(N)
        idx2 = spec2.index()
        monos = self.spec.monomials()
        gens = []
        for vec in self.basis_vectors():
            out = {}
            for k, c in vec.items():
                m = monos[k]
                k2 = idx2.get(m)
                if k2 is not None:
                    out[k2] = c
            if out:
                gens.append(AlgebraElement(spec2, out))
        return close_left_ideal(gens, spec2)

    def __repr__(self):
        return (
            f"LeftIdeal({self.spec.kind}, dim={self.space.dim}/{self.spec.dim}, "
            f"sat={self.saturation_level})"
        )


def _close_space(spec, vectors, side):
    tables = spec.left_actions() if side == "left" else spec.right_actions()
    space = Subspace()
    work = []
    for vec in vectors:
        vec = {k: c for k, c in vec.items() if c}
        if vec and space.insert(vec) is not None:
            work.append(vec)
    while work:
        vec = work.pop()
        for _, table in tables:
            img = apply_action(table, vec)
            if img and space.insert(img) is not None:
                work.append(img)
    return space


def close_left_ideal(gens, spec=None):
    """Smallest left ideal containing the generators."""
    if spec is None:
        if not gens:
            raise SpecMismatch("need generators or an explicit algebra spec")
        spec = gens[0].spec
    for g in gens:
        if g.spec is not spec:
            raise SpecMismatch("generators live in different algebras")
    return LeftIdeal(spec, _close_space(spec, (g.coeffs for g in gens), "left"))


def whole_ideal(spec):
    return close_left_ideal([spec.identity()], spec)


def right_escape(ideal):
    """First basis-row-times-generator product leaving the ideal, or None."""
    if not ideal.saturated:
        raise NotSaturated("two-sidedness test requires a saturated ideal")
    spec = ideal.spec
    space = ideal.space
    for p in space.pivots():
        row = space.rows[p]
        for name, table in spec.right_actions():
            img = apply_action(table, row)
            if img and not space.contains(img):
                return {
                    "row_pivot": p,
                    "generator": name,
                    "product": AlgebraElement(spec, img),
                }
    return None


def is_two_sided(ideal):
    """True iff the ideal is also closed under right multiplication."""
    return right_escape(ideal) is None


def left_escape(ideal):
    """First basis-row-times-left-generator product leaving the subspace,
    or None when the subspace really is a left ideal.  Used to certify
    hand-assembled subspaces."""
    spec = ideal.spec
    space = ideal.space
    for p in space.pivots():
        row = space.rows[p]
        for name, table in spec.left_actions():
            img = apply_action(table, row)
            if img and not space.contains(img):
                return {
                    "row_pivot": p,
                    "generator": name,
                    "product": AlgebraElement(spec, img),
                }
    return None


def is_left_ideal_subspace(ideal):
    return left_escape(ideal) is None


def dual_containment_escape(ideal):
    """Violating product for I A* inside A* I, or None if contained.

    Both sides are multiplied by the central u, turning the test into
    I c A inside c I for the u-cleared dual shift c; this consumes one
    unit of precision budget.  For the unramified algebra the trace form
    identifies A* with A and the test degenerates to two-sidedness.
    """
    spec = ideal.spec
    if spec.kind == "unramified":
        return right_escape(ideal)
    if spec.kind != "smooth_ram":
        raise SpecMismatch(
            "dual containment is defined for the unramified and smooth-ramification kinds"
        )
    if not ideal.saturated:
        raise NotSaturated("dual containment test requires a saturated ideal")
    if ideal.precision_budget < 1:
        raise PrecisionExhausted(
            "one unit of precision budget is needed to clear u^(-1)",
            detail={"saturation_level": ideal.saturation_level, "N": spec.N},
        )
    c = dual_shift_element(spec)
    c_left = action_table(spec, c, "left")
    c_right = action_table(spec, c, "right")

    target = Subspace()
    for p in ideal.space.pivots():
        img = apply_action(c_left, ideal.space.rows[p])
        if img:
            target.insert(img)

    reached = Subspace()
    work = []
    for p in ideal.space.pivots():
        img = apply_action(c_right, ideal.space.rows[p])
        if not img:
            continue
        if not target.contains(img):
            return {"word": "row*c", "row_pivot": p, "product": AlgebraElement(spec, img)}
        if reached.insert(dict(img)) is not None:
            work.append(img)
    while work:
        vec = work.pop()
        for name, table in spec.right_actions():
            img = apply_action(table, vec)
            if not img:
                continue
            if not target.contains(img):
                return {
                    "word": f"row*c*...*{name}",
                    "product": AlgebraElement(spec, img),
                }
            if reached.insert(dict(img)) is not None:
                work.append(img)
    return None


def check_dual_containment(ideal):
    return dual_containment_escape(ideal) is None


# -- circulant chains ----------------------------------------------------------


class IdealChain:
    """The chain J_1 contains ... contains J_e with J_e containing u J_1."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(entries)
        if not entries:
            raise ChainInvariantViolated("empty chain")
        N = entries[0].N
        field = entries[0].field
        for J in entries:
            if J.N != N or J.field is not field:
                raise ChainInvariantViolated("chain entries live in different rings")
        for a, b in zip(entries, entries[1:]):
            if not a.contains_ideal(b):
                raise ChainInvariantViolated(
                    "chain is not descending",
                    detail={"position": entries.index(b) + 1},
                )
        u_first = entries[0].shifted_space(1, 0)
        if not entries[-1].space.contains_subspace(u_first):
            raise ChainInvariantViolated("last entry does not contain u times the first")
        self.entries = entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __eq__(self, other):
        if not isinstance(other, IdealChain):
            return NotImplemented
        return self.entries == other.entries

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def colengths(self):
        return [J.colength() for J in self.entries]

    def __repr__(self):
        return f"IdealChain(e={len(self.entries)}, colengths={[J.space.dim for J in self.entries]})"


def circulant_slot(i, j, e):
    """Which chain entry sits at cell (i, j) (1-indexed): J_(e-(j-i)) on and
    above the diagonal, u J_(i-j) below."""
    return e - (j - i) if i <= j else i - j


def _place_series_vector(spec, r, c, vec, du=0):
    """Algebra vector with the R_N-vector vec at inner cell (r, c), shifted by u^du."""
    monos = series_monomials(spec.N)
    idx = spec.index()
    out = {}
    for k, coeff in vec.items():
        i, j = monos[k]
        i += du
        if i + j < spec.N:
            out[idx[(0, 0, r, c, 0, 0, i, j)]] = coeff
    return out


def _cell_projection(ideal, r, c):
    """Span of the (r, c) inner-cell entries of the ideal's basis (raw, no
    division by u)."""
    monos = ideal.spec.monomials()
    sidx = series_index(ideal.spec.N)
    out = []
    for vec in ideal.basis_vectors():
        proj = {}
        for k, coeff in vec.items():
            P, Q, rr, cc, a, b, i, j = monos[k]
            if rr == r and cc == c:
                proj[sidx[(i, j)]] = coeff
        if proj:
            out.append(proj)
    return out


def chain_compose(chain, spec):
    """The circulant two-sided ideal built from a chain (smooth, f = 1)."""
    if spec.kind != "smooth_ram" or spec.f != 1:
        raise SpecMismatch("chains compose in the smooth-ramification algebra with f = 1")
    e = spec.e
    if len(chain) != e:
        raise ChainInvariantViolated(f"chain length {len(chain)} != e = {e}")
    if chain[0].N != spec.N or chain[0].field is not spec.field:
        raise ChainInvariantViolated("chain truncation does not match the algebra")
    space = Subspace()
    for i in range(1, e + 1):
        for j in range(1, e + 1):
            J = chain[circulant_slot(i, j, e) - 1]
            du = 0 if i <= j else 1
            for row in J.space.rows.values():
                placed = _place_series_vector(spec, i - 1, j - 1, row, du)
                if placed:
                    space.insert(placed)
    return LeftIdeal(spec, space)


def _block_project(ideal):
    """Restrict to the outer cell (1,1); returns the f = 1 ideal."""
    spec = ideal.spec
    red = spec.reduced()
    idx = red.index()
    monos = spec.monomials()
    space = Subspace()
    for vec in ideal.basis_vectors():
        proj = {}
        for k, coeff in vec.items():
            P, Q, r, c, a, b, i, j = monos[k]
            if P == 0 and Q == 0:
                proj[idx[(0, 0, r, c, a, b, i, j)]] = coeff
        if proj:
            space.insert(proj)
    return LeftIdeal(red, space)


def mf_expand(reduced_ideal, f):
    """The ideal of f x f matrices with every block entry in the given
    f = 1 ideal."""
    red = reduced_ideal.spec
    if red.f != 1:
        raise SpecMismatch("mf_expand expects an f = 1 ideal")
    spec = red.with_f(f)
    idx = spec.index()
    monos = red.monomials()
    space = Subspace()
    for P in range(f):
        for Q in range(f):
            for vec in reduced_ideal.basis_vectors():
                placed = {}
                for k, coeff in vec.items():
                    _, _, r, c, a, b, i, j = monos[k]
                    placed[idx[(P, Q, r, c, a, b, i, j)]] = coeff
                if placed:
                    space.insert(placed)
    return LeftIdeal(spec, space)


def block_constant_reduction(ideal):
    """The f = 1 ideal J with ideal == M_f(J); NotCirculant when the ideal
    is not block-constant."""
    reduced = _block_project(ideal)
    if mf_expand(reduced, ideal.spec.f) != ideal:
        raise NotCirculant(
            "ideal is not of the block-constant form M_f(J)",
            detail={"f": ideal.spec.f},
        )
    return reduced


def chain_decompose(ideal, _shape_only=False):
    """Chain of entry ideals of a circulant two-sided ideal (smooth kind).

    Verifies the circulant shape outright: the chain extracted from the
    last column must recompose to the ideal exactly.  Shape failure
    (NotCirculant) signals that the dual-containment hypothesis fails;
    a verified shape conversely forces the containment, since the
    circulant layout commutes with the dual shift.
    """
    spec = ideal.spec
    if spec.kind != "smooth_ram":
        raise SpecMismatch("chain decomposition applies to the smooth-ramification kind")
    if not ideal.saturated:
        raise NotSaturated("chain decomposition requires a saturated ideal")
    if spec.f > 1:
        return chain_decompose(block_constant_reduction(ideal), _shape_only=_shape_only)
    if ideal.precision_budget < 1:
        raise PrecisionExhausted(
            "one unit of precision budget is needed to compare below-diagonal cells"
        )
    e = spec.e
    entries = []
    for i in range(1, e + 1):
        vectors = _cell_projection(ideal, i - 1, e - 1)
        try:
            J = CommIdeal(spec.field, spec.N, Subspace.from_rows(vectors), verify=True)
        except SpecMismatch as exc:
            raise NotCirculant(
                "entry span is not an ideal", detail={"cell": (i, e)}
            ) from exc
        entries.append(J)
    try:
        chain = IdealChain(entries)
    except ChainInvariantViolated as exc:
        raise NotCirculant(f"extracted entries violate the chain conditions: {exc}") from exc
    recomposed = chain_compose(chain, spec)
    if recomposed != ideal:
        raise NotCirculant(
            "ideal is not circulant over its last-column entry ideals",
            detail=_circulant_mismatch_detail(ideal, chain),
        )
    return chain


def _circulant_mismatch_detail(ideal, chain):
    spec = ideal.spec
    e = spec.e
    for i in range(1, e + 1):
        for j in range(1, e + 1):
            expected = chain[circulant_slot(i, j, e) - 1]
            du = 0 if i <= j else 1
            want = Subspace()
            for row in expected.space.rows.values():
                placed = _place_series_vector(spec, i - 1, j - 1, row, du)
                if placed:
                    want.insert(placed)
            got = Subspace.from_rows(_cell_projection(ideal, i - 1, j - 1))
            if got != want:
                return {"cell": (i, j), "slot": circulant_slot(i, j, e)}
    return {}


# -- Morita reduction for the unramified case -----------------------------------


class FreeModuleSubmodule:
    """Submodule of R_N^f, coordinates (component, monomial)."""

    __slots__ = ("field", "N", "f", "space")

    def __init__(self, field, N, f, space):
        self.field = field
        self.N = N
        self.f = f
        self.space = space

    @classmethod
    def from_summands(cls, summands):
        first = summands[0]
        field, N = first.field, first.N
        D = series_dim(N)
        space = Subspace()
        for q, M in enumerate(summands):
            for row in M.space.rows.values():
                space.insert({q * D + k: c for k, c in row.items()})
        return cls(field, N, len(summands), space)

    def colength(self):
        return self.f * series_dim(self.N) - self.space.dim

    def __eq__(self, other):
        if not isinstance(other, FreeModuleSubmodule):
            return NotImplemented
        return (
            self.N == other.N
            and self.f == other.f
            and self.field is other.field
            and self.space == other.space
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __repr__(self):
        return f"FreeModuleSubmodule(f={self.f}, N={self.N}, dim={self.space.dim})"


def morita_lift(summands, spec):
    """Left ideal of M_f(R) Morita-matched to the direct sum of the given
    ideals of R: matrices whose every row vector lies in the direct sum
    (component Q constrained to the Q-th summand).  Colength scales by f."""
    if spec.kind != "unramified":
        raise SpecMismatch("morita_lift applies to the unramified algebra")
    if len(summands) != spec.f:
        raise SpecMismatch(f"need exactly f = {spec.f} summands, got {len(summands)}")
    for M in summands:
        if M.N != spec.N or M.field is not spec.field:
            raise SpecMismatch("summand ring does not match the algebra")
    idx = spec.index()
    monos = series_monomials(spec.N)
    space = Subspace()
    for P in range(spec.f):
        for Q, M in enumerate(summands):
            for row in M.space.rows.values():
                placed = {
                    idx[(P, Q, 0, 0, 0, 0) + monos[k]]: c for k, c in row.items()
                }
                space.insert(placed)
    return LeftIdeal(spec, space)


def morita_drop(ideal):
    """First-row submodule of R^f, extracted through the idempotent E_11."""
    spec = ideal.spec
    if spec.kind != "unramified":
        raise SpecMismatch("morita_drop applies to the unramified algebra")
    D = series_dim(spec.N)
    sidx = series_index(spec.N)
    monos = spec.monomials()
    space = Subspace()
    for vec in ideal.basis_vectors():
        proj = {}
        for k, c in vec.items():
            P, Q, _, _, _, _, i, j = monos[k]
            if P == 0:
                proj[Q * D + sidx[(i, j)]] = c
        if proj:
            space.insert(proj)
    return FreeModuleSubmodule(spec.field, spec.N, spec.f, space)


# -- simple quotients ------------------------------------------------------------


def find_codim_one_quotients(spec, max_dim=4096):
    """All colength-1 left ideals: kernels of characters of the truncated
    algebra.

    Any character kills every monomial of positive degree (nilpotent) and
    every off-diagonal unit (its square is zero), so candidate characters
    are the indicator functionals of the diagonal unit monomials, and
    multiplicativity can only fail on products of degree-zero monomials.
    """
    if spec.dim > max_dim:
        raise DimensionBound(
            f"algebra dimension {spec.dim} exceeds the bound {max_dim}",
            detail={"dim": spec.dim, "max_dim": max_dim},
        )
    monos = spec.monomials()
    consts = [
        k for k, m in enumerate(monos) if m[4] == 0 and m[5] == 0 and m[6] == 0 and m[7] == 0
    ]
    out = []
    one = spec.field.one()
    for _, ed in spec.unit_monomials():
        ok = True
        for k1 in consts:
            if not ok:
                break
            for k2 in consts:
                prod = spec.mul_mono(k1, k2)
                lhs = prod is not None and prod[0] == ed
                rhs = k1 == ed and k2 == ed
                if lhs != rhs:
                    ok = False
                    break
        if ok:
            space = Subspace.from_rows({k: one} for k in range(spec.dim) if k != ed)
            out.append(LeftIdeal(spec, space))
    return out
