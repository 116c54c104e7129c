"""Seeded random pools of ideals for the property suites.

The criteria quantify over all finite-colength ideals; testing samples
them.  Left ideals are produced by closing 1-3 random low-degree
elements and discarding unsaturated results; sparse elements almost
never give finite colength, so the elements are dense across the matrix
cells in degrees 0 and 1.  Two-sided pool members additionally close on
the right.  Circulant chain composites (expanded to M_f for f > 1) are
mixed in so that the dual-containment-true side of every implication is
exercised, not just vacuously.  Everything is driven by an explicit seed.
"""

import random

from .cyclotomic import CycField
from .errors import OrderCalcError
from .linalg import Subspace
from .orders import AlgebraElement, AlgebraSpec, apply_action
from .power_series import CommIdeal, TruncSeries, ideal_from_generators
from .submodules import IdealChain, LeftIdeal, chain_compose, close_left_ideal, mf_expand


class PoolExhausted(OrderCalcError):
    code = "PoolExhausted"


def random_scalar(rng, field, lo=-2, hi=2):
    n = 0
    while not n:
        n = rng.randint(lo, hi)
    return field.from_int(n)


def random_element(rng, spec, max_terms=3, max_degree=2, degree_weights=(1, 4, 3)):
    """Sparse element with few low-degree terms (for arithmetic tests)."""
    monos = spec.monomials()
    by_degree = [
        [k for k, m in enumerate(monos) if m[6] + m[7] == d]
        for d in range(min(max_degree, spec.N - 1) + 1)
    ]
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.choices(range(len(by_degree)), weights=degree_weights[: len(by_degree)])[0]
        k = rng.choice(by_degree[d])
        coeffs[k] = random_scalar(rng, spec.field)
    return AlgebraElement(spec, coeffs)


def random_low_degree_element(rng, spec, constant_share=0.15, linear_share=0.55):
    """Dense element with random entries of degree <= 1 in every cell;
    closing a couple of these is how the pools reach finite colength."""
    coeffs = {}
    for k, m in enumerate(spec.monomials()):
        _, _, _, _, a, b, i, j = m
        d = i + j
        if d > 1:
            continue
        if d == 0 and (a or b):
            continue
        share = constant_share if d == 0 else linear_share
        if rng.random() > share:
            continue
        n = rng.randint(-2, 2)
        if n:
            coeffs[k] = spec.field.from_int(n)
    return AlgebraElement(spec, coeffs)


def random_left_ideal(rng, spec, max_gens=3):
    gens = [random_low_degree_element(rng, spec) for _ in range(rng.randint(1, max_gens))]
    return close_left_ideal(gens, spec)


def right_closure(ideal):
    """Two-sided closure: close the basis on the right as well."""
    spec = ideal.spec
    space = Subspace()
    work = []
    for vec in ideal.basis_vectors():
        if space.insert(dict(vec)) is not None:
            work.append(vec)
    while work:
        vec = work.pop()
        for _, table in spec.right_actions():
            img = apply_action(table, vec)
            if img and space.insert(img) is not None:
                work.append(img)
    return LeftIdeal(spec, space)


def random_series(rng, field, N, max_terms=3, max_degree=2):
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.choices(range(min(max_degree, N - 1) + 1), weights=(1, 4, 3))[0]
        j = rng.randint(0, d)
        coeffs[(d - j, j)] = random_scalar(rng, field)
    return TruncSeries(field, N, coeffs)


def random_comm_ideal(rng, field, N, colength_cap=4, allow_whole=False, max_tries=2000):
    for _ in range(max_tries):
        k = rng.randint(1, 2) + 1
        gens = [random_series(rng, field, N) for _ in range(k)]
        J = ideal_from_generators(gens, N=N, field=field)
        if not J.saturated:
            continue
        col = J.colength()
        if col == 0 and not allow_whole:
            continue
        if col <= colength_cap:
            return J
    raise PoolExhausted("no commutative ideal found within the try budget")


def random_chain(rng, field, N, e, entry_cap=3, all_equal=False):
    """A valid descending chain with u times the first entry inside the last."""
    if all_equal:
        J = random_comm_ideal(rng, field, N, entry_cap)
        return IdealChain([J] * e)
    entries = [random_comm_ideal(rng, field, N, entry_cap, allow_whole=True)]
    for _ in range(e - 1):
        entries.append(
            entries[-1].intersect(random_comm_ideal(rng, field, N, entry_cap, allow_whole=True))
        )
    u_first = CommIdeal(field, N, entries[0].shifted_space(1, 0), verify=False)
    entries = [J.sum(u_first) for J in entries]
    return IdealChain(entries)


def pool_left_ideals(
    spec,
    count,
    seed=0,
    colength_cap=8,
    min_budget=1,
    circulant_share=0.3,
    two_sided_share=0.25,
    max_tries=500_000,
):
    """count saturated left ideals with at least min_budget precision to
    spare: dense-closure ideals, a share of two-sided closures, and for
    the smooth kind a share of circulant composites."""
    rng = random.Random(seed)
    out = []
    n_circ = int(count * circulant_share) if spec.kind == "smooth_ram" else 0
    red = spec.reduced()
    tries = 0
    while len(out) < n_circ:
        tries += 1
        if tries > max_tries:
            raise PoolExhausted("circulant pool budget exhausted")
        chain = random_chain(
            rng, spec.field, spec.N, spec.e, entry_cap=2, all_equal=rng.random() < 0.4
        )
        J = chain_compose(chain, red)
        if not J.saturated or J.precision_budget < min_budget:
            continue
        if spec.f > 1:
            J = mf_expand(J, spec.f)
        if J.colength() <= colength_cap:
            out.append(J)
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise PoolExhausted("left-ideal pool budget exhausted")
        I = random_left_ideal(rng, spec)
        if not I.saturated or I.precision_budget < min_budget:
            continue
        if I.colength() > colength_cap:
            continue
        if rng.random() < two_sided_share:
            I = right_closure(I)
            if I.colength() > colength_cap or I.precision_budget < min_budget:
                continue
        out.append(I)
    return out


def pool_eligible_chains(e, count, seed=0, total_cap=8, working_N=6, field=None):
    """Composite circulant ideals with colength between 1 and total_cap,
    re-truncated so each lives at N = colength + 2.

    For e >= 3 the all-equal branch is unreachable under a cap of 8 (the
    composite colength of an all-equal chain is a multiple of e^2), so
    those pools only carry split chains; pools with e = 2 carry both.
    """
    field = field or CycField(1)
    rng = random.Random(seed)
    out = []
    want_equal = e * e <= total_cap
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 200_000:
            raise PoolExhausted("chain pool budget exhausted")
        all_equal = want_equal and rng.random() < 0.45
        chain = random_chain(rng, field, working_N, e, entry_cap=2, all_equal=all_equal)
        total = e * sum(J.colength() for J in chain)
        if not (1 <= total <= total_cap):
            continue
        N = total + 2
        spec = AlgebraSpec.smooth_ram(e, 1, N)
        chain_n = IdealChain([J.retruncate(N) for J in chain])
        J = chain_compose(chain_n, spec)
        if not J.saturated or J.precision_budget < 1 or J.colength() != total:
            continue
        out.append(J)
    return out
