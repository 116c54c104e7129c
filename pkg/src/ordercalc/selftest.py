"""Acceptance criteria and self-test suites.

Each criterion function takes a shared context (seeded pools are built
once and reused) and returns a CriterionResult; the CLI selftest command
and the pytest acceptance module both run these, so there is exactly one
implementation of every check.
"""

import time

from .linalg import Subspace
from .orders import AlgebraSpec, apply_action, dual_shift_element, maximal_ideal
from .pools import pool_eligible_chains, pool_left_ideals
from .submodules import (
    action_table,
    chain_compose,
    chain_decompose,
    check_dual_containment,
    close_left_ideal,
    find_codim_one_quotients,
    is_two_sided,
    left_escape,
    mf_expand,
)
from .deformations import deform_smooth_ram, divisibility_probe, family_fiber


class CriterionResult:
    __slots__ = ("name", "ok", "seconds", "cases", "failures", "detail")

    def __init__(self, name, ok, seconds, cases, failures, detail=None):
        self.name = name
        self.ok = ok
        self.seconds = seconds
        self.cases = cases
        self.failures = failures
        self.detail = detail or {}

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.cases} cases in {self.seconds:.1f}s"

    def to_json(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "seconds": round(self.seconds, 2),
            "cases": self.cases,
            "failures": self.failures[:10],
            "detail": self.detail,
        }


class AcceptanceContext:
    """Seeded pools shared between criteria."""

    def __init__(self, seed=0, scale=1.0):
        self.seed = seed
        self.scale = scale
        self._two_sided_pools = None
        self._chain_pools = None
        self._deform_certs = None

    def n(self, full_count, minimum=2):
        return max(minimum, int(full_count * self.scale))

    def two_sided_pools(self):
        if self._two_sided_pools is None:
            self._two_sided_pools = {}
            for e in (2, 3):
                for f in (1, 2):
                    spec = AlgebraSpec.smooth_ram(e, f, 4)
                    self._two_sided_pools[(e, f)] = pool_left_ideals(
                        spec, self.n(200, 20), seed=self.seed + 13 * e + f, colength_cap=8
                    )
        return self._two_sided_pools

    def chain_pools(self):
        if self._chain_pools is None:
            self._chain_pools = {
                2: pool_eligible_chains(2, self.n(24, 8), seed=self.seed + 2),
                3: pool_eligible_chains(3, self.n(14, 4), seed=self.seed + 3),
            }
        return self._chain_pools

    def deform_certs(self):
        if self._deform_certs is None:
            self._deform_certs = [
                (J, deform_smooth_ram(J))
                for pool in self.chain_pools().values()
                for J in pool
            ]
        return self._deform_certs


def _timed(fn):
    def wrapper(ctx):
        t0 = time.time()
        name, cases, failures, detail = fn(ctx)
        return CriterionResult(name, not failures, time.time() - t0, cases, failures, detail)

    return wrapper


def _span_image(table, ideal):
    out = Subspace()
    for row in ideal.space.rows.values():
        img = apply_action(table, row)
        if img:
            out.insert(img)
    return out


@_timed
def criterion_1(ctx):
    """Conjugation: c m_1 = m_e c and c m_i = m_(i-1) c, e in {2,3,4}, N=5."""
    failures = []
    cases = 0
    for e in (2, 3, 4):
        spec = AlgebraSpec.smooth_ram(e, 1, 5)
        c = dual_shift_element(spec)
        left_c = action_table(spec, c, "left")
        right_c = action_table(spec, c, "right")
        ideals = [close_left_ideal(maximal_ideal(spec, i), spec) for i in range(1, e + 1)]
        for i in range(1, e + 1):
            cases += 1
            target = ideals[(i - 2) % e]  # m_(i-1), with m_0 read as m_e
            lhs = _span_image(left_c, ideals[i - 1])
            rhs = _span_image(right_c, target)
            if lhs != rhs:
                failures.append(f"e={e} i={i}")
    return "criterion 1 (conjugation relations)", cases, failures, {}


@_timed
def criterion_2(ctx):
    """Dual containment implies two-sided, on seeded pools of >= 200."""
    failures = []
    cases = 0
    true_count = 0
    for (e, f), pool in sorted(ctx.two_sided_pools().items()):
        for k, ideal in enumerate(pool):
            cases += 1
            if check_dual_containment(ideal):
                true_count += 1
                if not is_two_sided(ideal):
                    failures.append(f"e={e} f={f} pool[{k}]")
    return (
        "criterion 2 (dual containment => two-sided)",
        cases,
        failures,
        {"containment_true": true_count},
    )


@_timed
def criterion_3(ctx):
    """Chain round trip and colength formula on the containment-true pool."""
    failures = []
    cases = 0
    for (e, f), pool in sorted(ctx.two_sided_pools().items()):
        for k, ideal in enumerate(pool):
            if not check_dual_containment(ideal):
                continue
            cases += 1
            try:
                chain = chain_decompose(ideal)
            except Exception as exc:
                failures.append(f"e={e} f={f} pool[{k}]: decompose {type(exc).__name__}")
                continue
            recomposed = chain_compose(chain, ideal.spec.reduced())
            if f > 1:
                recomposed = mf_expand(recomposed, f)
            if recomposed != ideal:
                failures.append(f"e={e} f={f} pool[{k}]: recompose differs")
            expected = e * sum(J.colength() for J in chain) * f * f
            if ideal.colength() != expected:
                failures.append(f"e={e} f={f} pool[{k}]: colength formula")
    return "criterion 3 (chain round trip + colength formula)", cases, failures, {}


@_timed
def criterion_4(ctx):
    """Deformation suite: left ideal, equal colength, containment broken."""
    failures = []
    branch_counts = {"all_equal": 0, "split": 0}
    cases = 0
    for J, cert in ctx.deform_certs():
        cases += 1
        key = f"e={J.spec.e} N={J.spec.N} col={J.colength()}"
        if cert.branch == "no_op":
            failures.append(f"{key}: unexpected no-op branch")
            continue
        branch_counts[cert.branch] += 1
        if not cert.left_ideal_verified or left_escape(cert.after) is not None:
            failures.append(f"{key}: left-ideal check")
        if cert.after.colength() != J.colength():
            failures.append(f"{key}: colength changed")
        if check_dual_containment(cert.after):
            failures.append(f"{key}: containment survived")
    minimum = 10 if ctx.scale >= 1 else 2
    for branch, count in branch_counts.items():
        if count < minimum:
            failures.append(f"branch {branch} hit only {count} < {minimum} times")
    return "criterion 4 (deformation suite)", cases, failures, branch_counts


@_timed
def criterion_5(ctx):
    """Pencil endpoints exact, colength constant at 10 more points."""
    failures = []
    cases = 0
    for J, cert in ctx.deform_certs():
        key = f"e={J.spec.e} col={J.colength()}"
        samples = cert.family_samples
        if len(samples) < 12:
            failures.append(f"{key}: only {len(samples)} samples")
            continue
        field = J.spec.field
        one, zero = field.one(), field.zero()
        endpoint_1 = family_fiber(J, cert.after, (one, zero))
        endpoint_2 = family_fiber(J, cert.after, (zero, one))
        cases += len(samples)
        if endpoint_1 != J or samples[0].ideal != J:
            failures.append(f"{key}: fiber at (1,0) is not the input")
        if endpoint_2 != cert.after or samples[1].ideal != cert.after:
            failures.append(f"{key}: fiber at (0,1) is not the deformation")
        if any(s.colength != J.colength() for s in samples):
            failures.append(f"{key}: non-constant fiber colength")
    return "criterion 5 (projective-line family)", cases, failures, {}


def _probe_grid():
    grid = []
    for f in (1, 2):
        grid.append((AlgebraSpec.unramified(f, 4), f))
        for e in (2, 3):
            grid.append((AlgebraSpec.smooth_ram(e, f, 4), f))
            grid.append((AlgebraSpec.singular_ram(e, f, 4), f))
    return grid


@_timed
def criterion_6(ctx):
    """Nonemptiness of colength l iff f | l, all kinds, e <= 3, f <= 2."""
    failures = []
    cases = 0
    for spec, f in _probe_grid():
        for l in range(1, 2 * f + 1):
            cases += 1
            key = f"{spec.kind} e={spec.e} f={f} l={l}"
            result = divisibility_probe(spec, l)
            if result.divides != (l % f == 0):
                failures.append(f"{key}: probe says {result.divides}")
                continue
            if result.divides and result.witness.colength() != l:
                failures.append(f"{key}: witness colength {result.witness.colength()}")
    for e in (2, 3):
        spec = AlgebraSpec.singular_ram(e, 1, 4)
        for l in range(1, 5):
            cases += 1
            result = divisibility_probe(spec, l)
            if not result.divides or result.witness.colength() != l:
                failures.append(f"singular e={e} f=1 l={l}: no witness")
    return "criterion 6 (colength divisibility)", cases, failures, {}


@_timed
def criterion_7(ctx):
    """Simple-module counts via colength-1 ideals."""
    failures = []
    cases = 0
    for e in (2, 3):
        cases += 2
        spec = AlgebraSpec.smooth_ram(e, 1, 4)
        found = find_codim_one_quotients(spec)
        expected = [close_left_ideal(maximal_ideal(spec, i), spec) for i in range(1, e + 1)]
        if len(found) != e or found != expected:
            failures.append(f"smooth e={e}: {len(found)} ideals")
        sing = AlgebraSpec.singular_ram(e, 1, 4)
        found_s = find_codim_one_quotients(sing)
        if len(found_s) != 1 or found_s[0] != close_left_ideal(maximal_ideal(sing), sing):
            failures.append(f"singular e={e}: {len(found_s)} ideals")
    for spec in (
        AlgebraSpec.unramified(2, 4),
        AlgebraSpec.smooth_ram(2, 2, 4),
        AlgebraSpec.smooth_ram(3, 2, 4),
        AlgebraSpec.singular_ram(2, 2, 4),
        AlgebraSpec.singular_ram(3, 2, 4),
    ):
        cases += 1
        if find_codim_one_quotients(spec):
            failures.append(f"{spec.kind} f=2 has a colength-1 ideal")
    return "criterion 7 (simple-module counts)", cases, failures, {}


@_timed
def criterion_8(ctx):
    """Results unchanged when N is raised by one (20 spot checks)."""
    failures = []
    cases = 0

    picked = []
    for (e, f), pool in sorted(ctx.two_sided_pools().items()):
        picked.extend(pool[:3])
    for ideal in picked[:12]:
        cases += 1
        lifted = ideal.retruncate(ideal.spec.N + 1)
        key = f"{ideal.spec.kind} e={ideal.spec.e} f={ideal.spec.f}"
        if lifted.colength() != ideal.colength():
            failures.append(f"{key}: colength moved")
            continue
        if set(lifted.standard_monomials()) != set(ideal.standard_monomials()):
            failures.append(f"{key}: quotient basis moved")
        if is_two_sided(lifted) != is_two_sided(ideal):
            failures.append(f"{key}: two-sidedness moved")
        if check_dual_containment(lifted) != check_dual_containment(ideal):
            failures.append(f"{key}: dual containment moved")

    for J, cert in ctx.deform_certs()[:6]:
        cases += 1
        lifted = J.retruncate(J.spec.N + 1)
        cert2 = deform_smooth_ram(lifted)
        key = f"deform e={J.spec.e} col={J.colength()}"
        if cert2.branch != cert.branch or cert2.colength != cert.colength:
            failures.append(f"{key}: branch/colength moved")
        if cert2.dual_containment_after:
            failures.append(f"{key}: containment came back")
        if set(cert2.after.standard_monomials()) != set(cert.after.standard_monomials()):
            failures.append(f"{key}: deformed quotient basis moved")

    for spec, f in (_probe_grid()[k] for k in (0, 2, 4)):
        cases += 1
        a = divisibility_probe(spec, f)
        b = divisibility_probe(spec.with_truncation(spec.N + 1), f)
        if a.divides != b.divides or a.witness.colength() != b.witness.colength():
            failures.append(f"probe {spec.kind} f={f}: moved")
    return "criterion 8 (truncation stability)", cases, failures, {}


ALL_CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
)


def run_acceptance(seed=0, scale=1.0, echo=None):
    ctx = AcceptanceContext(seed=seed, scale=scale)
    results = []
    for crit in ALL_CRITERIA:
        res = crit(ctx)
        results.append(res)
        if echo:
            echo(res.line())
    return results


def run_selftest(level="quick", seed=0, echo=None):
    """quick: scaled-down pools (about a minute); full: acceptance scale."""
    if level not in ("quick", "full"):
        from .errors import ParseError

        raise ParseError(f"selftest level must be quick or full, got {level!r}")
    scale = 1.0 if level == "full" else 0.12
    t0 = time.time()
    results = run_acceptance(seed=seed, scale=scale, echo=echo)
    report = {
        "level": level,
        "seed": seed,
        "ok": all(r.ok for r in results),
        "seconds": round(time.time() - t0, 2),
        "suites": [r.to_json() for r in results],
    }
    return report
