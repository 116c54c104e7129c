"""Canonical JSON forms of the domain objects, and certificate hashing.

Canonical JSON: sorted keys, compact separators, exact rationals as
"p/q" strings inside polynomial strings.  Certificates embed the full
job (operation, algebra, payload), a sha256 of its canonical form, and
the result; verification re-runs the job and compares byte-for-byte, so
any tampering with inputs, bases or flags is caught.
"""

import hashlib
import json

from .errors import ParseError
from .orders import AlgebraSpec
from .parsing import element_entries, format_element, format_series, parse_element, parse_series
from .power_series import CommIdeal
from .submodules import IdealChain, LeftIdeal, close_left_ideal

SCHEMA = "ordercalc.certificate/1"


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def pretty_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def input_hash(job):
    return "sha256:" + hashlib.sha256(canonical_json(job).encode()).hexdigest()


# -- algebra specs ---------------------------------------------------------------


def spec_from_json(d):
    if not isinstance(d, dict):
        raise ParseError("algebra must be an object")
    try:
        e = int(d.get("e", 1))
        f = int(d.get("f", 1))
        N = int(d["N"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("algebra needs integer fields e, f, N")
    kind = d.get("kind")
    if "e_prime" in d:
        spec = AlgebraSpec(e, int(d["e_prime"]), f, N)
    elif kind is not None:
        spec = AlgebraSpec.make(kind, e, f, N)
    else:
        raise ParseError("algebra needs a kind or an explicit e_prime")
    if kind is not None and spec.kind != kind:
        raise ParseError(f"algebra kind {kind!r} does not match e={e}, e_prime={spec.e_prime}")
    return spec


def spec_to_json(spec):
    return spec.describe()


# -- ideals -----------------------------------------------------------------------


def left_ideal_to_json(ideal):
    return {
        "basis": [format_element(b) for b in ideal.basis_elements()],
        "colength": ideal.colength() if ideal.saturated else None,
        "saturated": ideal.saturated,
        "saturation_level": ideal.saturation_level,
    }


def left_ideal_from_json(spec, d):
    """Left ideal from {"generators": [...]} or {"basis": [...]}; either
    list is closed, which is the identity on honest canonical bases."""
    if not isinstance(d, dict):
        raise ParseError("ideal must be an object")
    gens = d.get("generators", d.get("basis"))
    if gens is None and "chain" in d:
        chain = chain_from_json(d["chain"], spec.field, spec.N)
        from .submodules import chain_compose

        return chain_compose(chain, spec)
    if not isinstance(gens, list) or not gens:
        raise ParseError("ideal needs a nonempty generators/basis list (or a chain)")
    return close_left_ideal([parse_element(spec, g) for g in gens], spec)


def comm_ideal_to_json(J):
    return {
        "N": J.N,
        "basis": [format_series(s) for s in J.basis_series()],
        "colength": J.colength() if J.saturated else None,
        "saturated": J.saturated,
    }


def comm_ideal_from_json(d, field, N):
    if isinstance(d, str):
        if d == "R":
            return CommIdeal.whole(field, N)
        raise ParseError(f"unknown ideal shorthand {d!r}")
    gens = d.get("generators", d.get("basis"))
    if not isinstance(gens, list):
        raise ParseError("ideal needs a generators/basis list")
    if not gens:
        return CommIdeal.whole(field, N)
    series = [parse_series(g, field, int(d.get("N", N))).retruncate(N) for g in gens]
    return CommIdeal.from_generators(series, N=N, field=field)


def chain_to_json(chain):
    return [comm_ideal_to_json(J) for J in chain]


def chain_from_json(items, field, N):
    if not isinstance(items, list) or not items:
        raise ParseError("chain must be a nonempty list")
    return IdealChain([comm_ideal_from_json(d, field, N) for d in items])


def witness_to_json(spec, witness):
    if witness is None:
        return None
    out = {}
    if "generator" in witness:
        out["generator"] = witness["generator"]
    if "word" in witness:
        out["word"] = witness["word"]
    if "row_pivot" in witness:
        out["row_pivot_monomial"] = format_element(
            spec.monomial_element(spec.monomials()[witness["row_pivot"]])
        )
    out["product"] = format_element(witness["product"])
    return out


def scalar_to_str(field, s):
    return field.format_scalar(s)


def fiber_to_json(spec, sample):
    a, b = sample.point
    return {
        "point": [scalar_to_str(spec.field, a), scalar_to_str(spec.field, b)],
        "colength": sample.colength,
        "basis": [format_element(x) for x in sample.ideal.basis_elements()],
    }


def deformation_to_json(cert):
    spec = cert.spec
    out = {
        "branch": cert.branch,
        "split_index": cert.split_index,
        "colength": cert.colength,
        "dual_containment_before": cert.dual_containment_before,
        "dual_containment_after": cert.dual_containment_after,
        "left_ideal_verified": cert.left_ideal_verified,
        "before": left_ideal_to_json(cert.before),
        "after": left_ideal_to_json(cert.after),
        "witness": witness_to_json(spec, cert.witness),
        "family_samples": [fiber_to_json(spec, s) for s in cert.family_samples],
    }
    out["chain_before"] = chain_to_json(cert.chain_before) if cert.chain_before else None
    out["chain_after"] = (
        [comm_ideal_to_json(J) for J in cert.chain_after] if cert.chain_after else None
    )
    return out


def probe_to_json(result, spec):
    out = {
        "l": result.l,
        "f": result.f,
        "divides": result.divides,
        "reduced_simple_count": result.reduced_simple_count,
        "checks": result.checks,
    }
    if result.witness is not None:
        out["witness"] = left_ideal_to_json(result.witness)
        out["witness_algebra"] = spec_to_json(result.witness.spec)
    else:
        out["witness"] = None
    return out


def build_certificate(command, algebra_json, payload, result, seed=0):
    job = {"command": command, "algebra": algebra_json, "payload": payload, "seed": seed}
    return {
        "schema": SCHEMA,
        "operation": command,
        "job": job,
        "input_hash": input_hash(job),
        "result": result,
    }


def diff_paths(a, b, path=""):
    """First path where two JSON-like values differ, or None."""
    if type(a) is not type(b):
        return path or "/"
    if isinstance(a, dict):
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                return f"{path}/{k}"
            d = diff_paths(a[k], b[k], f"{path}/{k}")
            if d:
                return d
        return None
    if isinstance(a, list):
        if len(a) != len(b):
            return f"{path}/length"
        for i, (x, y) in enumerate(zip(a, b)):
            d = diff_paths(x, y, f"{path}/{i}")
            if d:
                return d
        return None
    return None if a == b else (path or "/")
