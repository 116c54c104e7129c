"""Deformations of finite-colength left ideals.

Two constructions produce, from a proper left ideal, another left ideal
of the same colength that *fails* the dual containment I A* inside A* I:

* unramified (f > 1): pass through the Morita correspondence, replace
  the module by the minimal staircase ideal plus free summands,
  J + R^(f-1); the result is never two-sided, and for the full matrix
  algebra the trace form turns dual containment into two-sidedness.

* smooth ramification: decompose the circulant ideal into its chain,
  then modify the first row only.  If all chain entries are equal, shrink
  the last entry by a corank-one pick (still containing (u,v) times it)
  and grow the first by a socle vector; otherwise pick the first index m
  where the chain drops and trade a corank-one pick against a socle
  vector across that step.  The modified first row breaks the circulant
  shape, which forces the dual containment to fail.

In the smooth case the two ideals J, J' differ in a single simple
quotient, so the pencil (J intersect J') + span(a.w + b.w') over points
[a : b] of the projective line interpolates between them with constant
colength; family_fiber extracts one fiber exactly.
"""

from .errors import (
    DimensionBound,
    ImproperIdeal,
    NotCosimple,
    NotSmoothRam,
    OutOfRange,
    RequiresFGreaterOne,
    SpecMismatch,
    TruncMismatch,
    ZeroPoint,
)
from .linalg import Subspace, intersect
from .orders import AlgebraElement, apply_action
from .power_series import (
    CommIdeal,
    nakayama_corank1_pick,
    series_dim,
    socle_and_cosocle_picks,
    socle_pick,
    staircase_ideal,
)
from .submodules import (
    IdealChain,
    LeftIdeal,
    _place_series_vector,
    action_table,
    block_constant_reduction,
    chain_compose,
    chain_decompose,
    circulant_slot,
    close_left_ideal,
    dual_containment_escape,
    find_codim_one_quotients,
    left_escape,
    mf_expand,
    morita_lift,
    right_escape,
    whole_ideal,
)

# Eleven fixed pencil points plus both endpoints; scalars are taken in the
# coefficient field, so these stay exact for every algebra.
DEFAULT_SAMPLE_POINTS = (
    (1, 0),
    (0, 1),
    (1, 1),
    (1, -1),
    (2, 1),
    (1, 2),
    (3, 1),
    (1, 3),
    (2, -3),
    (1, 4),
    (5, 2),
    (1, -2),
)


class FiberSample:
    __slots__ = ("point", "ideal", "colength")

    def __init__(self, point, ideal, colength):
        self.point = point
        self.ideal = ideal
        self.colength = colength


class DeformationCertificate:
    """Endpoints and evidence for one deformation run.

    Invariants: before, after and every sampled fiber share one colength;
    dual_containment_after is False except on the no-op branch, where the
    input already failed the containment and is returned unchanged.
    """

    __slots__ = (
        "spec",
        "before",
        "after",
        "colength",
        "dual_containment_before",
        "dual_containment_after",
        "branch",
        "split_index",
        "chain_before",
        "chain_after",
        "witness",
        "family_samples",
        "left_ideal_verified",
    )

    def __init__(self, **kw):
        for name in self.__slots__:
            setattr(self, name, kw.pop(name))
        if kw:
            raise TypeError(f"unexpected fields: {sorted(kw)}")

    def summary(self):
        return {
            "branch": self.branch,
            "colength": self.colength,
            "dual_containment_before": self.dual_containment_before,
            "dual_containment_after": self.dual_containment_after,
            "left_ideal_verified": self.left_ideal_verified,
            "family_points": len(self.family_samples),
        }


def deform_unramified(summands, spec):
    """Deform a direct-sum submodule of R^f (f > 1) to the staircase shape
    J + R^(f-1); the lifted ideal fails dual containment."""
    if spec.kind != "unramified":
        raise SpecMismatch("deform_unramified applies to the unramified algebra")
    if spec.f <= 1:
        raise RequiresFGreaterOne("the unramified deformation needs f > 1")
    before = morita_lift(summands, spec)
    l = sum(M.colength() for M in summands)
    if l == 0:
        raise ImproperIdeal("the whole module admits no deformation target")
    if series_dim(spec.N) <= l:
        raise TruncMismatch(f"truncation N={spec.N} too small for colength {l}")
    stair = staircase_ideal(l, spec.N, spec.field)
    whole = CommIdeal.whole(spec.field, spec.N)
    after = morita_lift([stair] + [whole] * (spec.f - 1), spec)
    assert after.colength() == before.colength() == spec.f * l
    witness = right_escape(after)
    assert witness is not None, "staircase lift is unexpectedly two-sided"
    return DeformationCertificate(
        spec=spec,
        before=before,
        after=after,
        colength=after.colength(),
        dual_containment_before=right_escape(before) is None,
        dual_containment_after=False,
        branch="unramified",
        split_index=None,
        chain_before=None,
        chain_after=None,
        witness=witness,
        family_samples=[],
        left_ideal_verified=left_escape(after) is None,
    )


def _assemble_primed(spec, chain, primed):
    """The subspace of eq-style layout with the primed entries in row one
    and the original circulant rows below."""
    e = spec.e
    space = Subspace()
    for j in range(1, e + 1):
        J = primed[circulant_slot(1, j, e) - 1]
        for row in J.space.rows.values():
            placed = _place_series_vector(spec, 0, j - 1, row, 0)
            if placed:
                space.insert(placed)
    for i in range(2, e + 1):
        for j in range(1, e + 1):
            J = chain[circulant_slot(i, j, e) - 1]
            du = 0 if i <= j else 1
            for row in J.space.rows.values():
                placed = _place_series_vector(spec, i - 1, j - 1, row, du)
                if placed:
                    space.insert(placed)
    return LeftIdeal(spec, space)


def deform_smooth_ram(ideal, sample_points=DEFAULT_SAMPLE_POINTS):
    """Deform a dual-contained left ideal of the smooth-ramification
    algebra to one failing dual containment, with a sampled pencil
    connecting the two.  Input already failing the containment is
    returned unchanged (nothing to deform)."""
    spec = ideal.spec
    if spec.kind != "smooth_ram":
        raise NotSmoothRam(f"expected the smooth-ramification kind, got {spec.kind}")
    if not ideal.saturated:
        from .errors import NotSaturated

        raise NotSaturated("deformation requires a saturated ideal")

    if spec.f > 1:
        escape = dual_containment_escape(ideal)
        if escape is not None:
            return _no_op_certificate(spec, ideal, escape)
        reduced_cert = deform_smooth_ram(
            block_constant_reduction(ideal), sample_points=sample_points
        )
        after = mf_expand(reduced_cert.after, spec.f)
        assert after.colength() == ideal.colength()
        witness = dual_containment_escape(after)
        assert witness is not None
        samples = [
            FiberSample(s.point, mf_expand(s.ideal, spec.f), s.colength * spec.f**2)
            for s in reduced_cert.family_samples
        ]
        return DeformationCertificate(
            spec=spec,
            before=ideal,
            after=after,
            colength=after.colength(),
            dual_containment_before=True,
            dual_containment_after=False,
            branch=reduced_cert.branch,
            split_index=reduced_cert.split_index,
            chain_before=reduced_cert.chain_before,
            chain_after=reduced_cert.chain_after,
            witness=witness,
            family_samples=samples,
            left_ideal_verified=left_escape(after) is None,
        )

    escape = dual_containment_escape(ideal)
    if escape is not None:
        return _no_op_certificate(spec, ideal, escape)
    if ideal.is_whole():
        raise ImproperIdeal("the unit ideal admits no deformation")

    chain = chain_decompose(ideal)
    entries = list(chain)
    e = spec.e
    if all(J == entries[0] for J in entries):
        primed = list(entries)
        primed[e - 1] = nakayama_corank1_pick(entries[e - 1])
        primed[0] = socle_pick(entries[0])
        branch, split_index = "all_equal", None
    else:
        m = next(i for i in range(e - 1) if entries[i] != entries[i + 1])
        smaller, larger = socle_and_cosocle_picks(entries[m + 1], entries[m])
        primed = list(entries)
        primed[m] = smaller
        primed[m + 1] = larger
        branch, split_index = "split", m + 1

    after = _assemble_primed(spec, entries, primed)
    verified = left_escape(after) is None
    assert verified, "assembled deformation is not a left ideal"
    assert after.colength() == ideal.colength()
    witness = dual_containment_escape(after)
    assert witness is not None, "deformed ideal unexpectedly satisfies dual containment"

    cert = DeformationCertificate(
        spec=spec,
        before=ideal,
        after=after,
        colength=after.colength(),
        dual_containment_before=True,
        dual_containment_after=False,
        branch=branch,
        split_index=split_index,
        chain_before=chain,
        chain_after=tuple(primed),
        witness=witness,
        family_samples=[],
        left_ideal_verified=verified,
    )
    field = spec.field
    for a, b in sample_points:
        point = (field.from_int(a), field.from_int(b))
        fiber = family_fiber(ideal, after, point)
        cert.family_samples.append(FiberSample(point, fiber, fiber.colength()))
    return cert


def _no_op_certificate(spec, ideal, escape):
    return DeformationCertificate(
        spec=spec,
        before=ideal,
        after=ideal,
        colength=ideal.colength(),
        dual_containment_before=False,
        dual_containment_after=False,
        branch="no_op",
        split_index=None,
        chain_before=None,
        chain_after=None,
        witness=escape,
        family_samples=[],
        left_ideal_verified=True,
    )


def _coset_vector(space, intersection):
    """Monic residue mod the intersection of the first basis row outside it."""
    for p in space.pivots():
        res = intersection.reduce(space.rows[p])
        if res:
            inv = 1 / res[min(res)]
            return {k: c * inv for k, c in res.items()}
    return None


def _character_on(spec, vec, intersection):
    """Scalars alpha_t with t.vec = alpha_t.vec modulo the intersection,
    one per generator; None where the action is not scalar."""
    out = []
    pivot = min(vec)
    for _, table in spec.left_actions():
        img = apply_action(table, vec)
        res = intersection.reduce(img)
        if not res:
            out.append(spec.field.zero())
            continue
        alpha = res.get(pivot)
        if alpha is None:
            return None
        diff = dict(res)
        for k, c in vec.items():
            s = diff.get(k)
            s = -alpha * c if s is None else s - alpha * c
            if s:
                diff[k] = s
            else:
                diff.pop(k, None)
        if diff:
            return None
        out.append(alpha)
    return out


def family_fiber(ideal, ideal2, point):
    """Fiber of the pencil through two cosimple deformation endpoints.

    point = (a, b) with (a, b) != (0, 0): returns
    (J intersect J') + span(a.w + b.w') for the canonical coset
    representatives w, w'.  The fiber at (1, 0) is the first ideal
    exactly, at (0, 1) the second, and every fiber is a left ideal of
    the same colength because the algebra acts on both one-dimensional
    quotients through one character.
    """
    spec = ideal.spec
    if ideal2.spec is not spec:
        raise SpecMismatch("fiber endpoints live in different algebras")
    if spec.kind != "smooth_ram":
        raise NotSmoothRam("the pencil construction lives in the smooth-ramification algebra")
    a, b = point
    if not a and not b:
        raise ZeroPoint("(0, 0) is not a point of the projective line")
    if spec.f > 1:
        red = family_fiber(
            block_constant_reduction(ideal), block_constant_reduction(ideal2), point
        )
        return mf_expand(red, spec.f)

    meet = intersect(ideal.space, ideal2.space)
    if ideal.space.dim - meet.dim != 1 or ideal2.space.dim - meet.dim != 1:
        raise NotCosimple(
            "the two ideals do not differ by one simple quotient",
            detail={
                "dim_first": ideal.space.dim,
                "dim_second": ideal2.space.dim,
                "dim_meet": meet.dim,
            },
        )
    w = _coset_vector(ideal.space, meet)
    w2 = _coset_vector(ideal2.space, meet)
    chi = _character_on(spec, w, meet)
    chi2 = _character_on(spec, w2, meet)
    if chi is None or chi2 is None or chi != chi2:
        raise NotCosimple("the two simple quotients carry different module structures")

    combo = {}
    if a:
        combo = {k: a * c for k, c in w.items()}
    if b:
        for k, c in w2.items():
            s = combo.get(k)
            s = b * c if s is None else s + b * c
            if s:
                combo[k] = s
            else:
                del combo[k]
    space = Subspace()
    for row in meet.rows.values():
        space.insert(dict(row))
    space.insert(combo)
    assert space.dim == meet.dim + 1
    fiber = LeftIdeal(spec, space)
    for _, table in spec.left_actions():
        img = apply_action(table, combo)
        if img and not space.contains(img):
            raise NotCosimple("pencil fiber failed the left-ideal check")
    assert fiber.colength() == ideal.colength()
    return fiber


# -- nonemptiness of the colength-l locus ----------------------------------------


class ProbeResult:
    __slots__ = ("l", "f", "divides", "witness", "reduced_simple_count", "checks")

    def __init__(self, l, f, divides, witness, reduced_simple_count, checks):
        self.l = l
        self.f = f
        self.divides = divides
        self.witness = witness
        self.reduced_simple_count = reduced_simple_count
        self.checks = checks

    def __bool__(self):
        return self.divides


def _radical_normal_generators(spec):
    """Elements generating the radical with b r = r' b normality, so the
    radical of a left ideal is spanned by their products with a basis."""
    if spec.kind == "smooth_ram":
        from .orders import dual_shift_element

        return [dual_shift_element(spec), spec.v_element()]
    if spec.kind == "singular_ram":
        return [spec.skew_variable("x"), spec.skew_variable("y")]
    if spec.kind == "unramified":
        return [spec.u_element(), spec.v_element()]
    raise SpecMismatch("no radical description for the general kind")


def simple_corank_step(ideal):
    """Kernel of a map from the ideal onto its first simple quotient
    (f = 1): colength grows by exactly one."""
    spec = ideal.spec
    if spec.f != 1:
        raise SpecMismatch("the corank step runs on the Morita-reduced algebra")
    rad_tables = [action_table(spec, g, "left") for g in _radical_normal_generators(spec)]
    current = Subspace()
    for row in ideal.space.rows.values():
        for table in rad_tables:
            img = apply_action(table, row)
            if img:
                current.insert(img)
    stashed = None
    for _, ed in spec.unit_monomials():
        unit_elem = spec.monomial_element(spec.monomials()[ed])
        table = action_table(spec, unit_elem, "left")
        vecs = []
        fresh = False
        for vec in ideal.basis_vectors():
            img = apply_action(table, vec)
            if img:
                vecs.append(img)
                if not fresh and not current.contains(img):
                    fresh = True
        if stashed is None and fresh:
            stashed = vecs
        else:
            for vjm in vecs:
                current.insert(vjm)
    assert stashed is not None, "Nakayama: a nonzero ideal has a simple quotient"
    quo = Subspace()
    residues = {}
    for vec in stashed:
        res = current.reduce(vec)
        p = quo.insert(res)
        if p is not None:
            residues[p] = res
    for p in quo.pivots()[1:]:
        current.insert(residues[p])
    out = LeftIdeal(spec, current)
    assert out.space.dim == ideal.space.dim - 1
    return out


def _free_row_lift(reduced_ideal, f):
    """Left ideal of the f x f matrices over the reduced algebra whose
    rows lie in reduced_ideal + algebra^(f-1); colength scales by f."""
    red = reduced_ideal.spec
    spec = red.with_f(f)
    idx = spec.index()
    monos = red.monomials()
    space = Subspace()
    whole_rows = [{k: red.field.one()} for k in range(red.dim)]
    for P in range(f):
        for Q in range(f):
            rows = reduced_ideal.basis_vectors() if Q == 0 else whole_rows
            for vec in rows:
                placed = {}
                for k, c in vec.items():
                    _, _, r, c2, aa, bb, i, j = monos[k]
                    placed[idx[(P, Q, r, c2, aa, bb, i, j)]] = c
                space.insert(placed)
    return LeftIdeal(spec, space)


def divisibility_probe(spec, l, max_dim=4096, colength_bound=24):
    """Does a left ideal of colength l exist?  True iff f divides l.

    The obstruction: every simple left module has length f (checked by
    enumerating the simple quotients of the Morita-reduced algebra and,
    for f > 1, confirming the algebra itself has no colength-1 ideals),
    and the colength of any finite-colength ideal is a sum of simple
    lengths.  When f divides l a witness is built greedily by l/f
    corank-one steps on the reduced algebra, lifted along one free row.
    """
    if l < 0:
        raise OutOfRange("colength must be nonnegative")
    if l > colength_bound:
        raise DimensionBound(
            f"colength {l} exceeds the probe bound {colength_bound}"
        )
    steps = l // spec.f
    n_work = max(spec.N, steps + 2)
    red = spec.reduced().with_truncation(max(2, min(n_work, 4)))
    reduced_simples = find_codim_one_quotients(red, max_dim=max_dim)
    expected = {"smooth_ram": spec.e, "singular_ram": 1, "unramified": 1}.get(spec.kind)
    if expected is None:
        raise SpecMismatch("no probe for the general kind")
    checks = {"reduced_simple_count_expected": expected}
    assert len(reduced_simples) == expected
    if spec.f > 1:
        checks["simples_at_f"] = len(
            find_codim_one_quotients(spec.with_truncation(2), max_dim=max_dim)
        )
        assert checks["simples_at_f"] == 0
    if l % spec.f:
        return ProbeResult(l, spec.f, False, None, len(reduced_simples), checks)

    work = spec.reduced().with_truncation(n_work)
    witness = whole_ideal(work)
    for _ in range(steps):
        witness = simple_corank_step(witness)
    assert witness.colength() == steps
    if spec.f > 1:
        witness = _free_row_lift(witness, spec.f)
    assert witness.colength() == l
    return ProbeResult(l, spec.f, True, witness, len(reduced_simples), checks)
