"""Command-line front end.

One job per invocation, as JSON on --input FILE or standard input:

    {"command": "...", "algebra": {"kind": ..., "e": ..., "f": ..., "N": ...},
     "payload": {...}}

Commands: colength, check-two-sided, check-dual-containment,
decompose-chain, compose-chain, deform, family-fiber,
probe-divisibility, find-simple-quotients, selftest, verify-certificate.

On success a certificate (job echo, input hash, result) is printed with
sorted keys, so output is byte-stable for a given input and seed.  Exit
codes: 0 success, 1 parse errors, 2 precondition or verification
failures (with a structured error object on stdout).
"""

import argparse
import json
import sys

from .certificates import (
    SCHEMA,
    build_certificate,
    chain_from_json,
    chain_to_json,
    comm_ideal_from_json,
    deformation_to_json,
    diff_paths,
    input_hash,
    left_ideal_from_json,
    left_ideal_to_json,
    pretty_json,
    probe_to_json,
    spec_from_json,
    spec_to_json,
    witness_to_json,
)
from .deformations import (
    deform_smooth_ram,
    deform_unramified,
    divisibility_probe,
    family_fiber,
)
from .errors import CertificateMismatch, OrderCalcError, ParseError
from .parsing import parse_scalar
from .selftest import run_selftest
from .submodules import (
    chain_compose,
    chain_decompose,
    check_dual_containment,
    dual_containment_escape,
    find_codim_one_quotients,
    is_two_sided,
    right_escape,
)

COMMANDS = (
    "colength",
    "check-two-sided",
    "check-dual-containment",
    "decompose-chain",
    "compose-chain",
    "deform",
    "family-fiber",
    "probe-divisibility",
    "find-simple-quotients",
    "selftest",
    "verify-certificate",
)


def run_job(command, algebra_json, payload, seed=0, max_dim=4096):
    """Dispatch one job; returns the JSON-ready result object."""
    if command == "selftest":
        level = payload.get("level", "quick")
        return run_selftest(level=level, seed=seed)

    spec = spec_from_json(algebra_json)

    if command == "colength":
        ideal = left_ideal_from_json(spec, payload)
        return {
            "colength": ideal.colength(),
            "saturation_level": ideal.saturation_level,
            "ideal": left_ideal_to_json(ideal),
        }

    if command == "check-two-sided":
        ideal = left_ideal_from_json(spec, payload)
        escape = right_escape(ideal)
        return {
            "two_sided": escape is None,
            "witness": witness_to_json(spec, escape),
            "colength": ideal.colength(),
        }

    if command == "check-dual-containment":
        ideal = left_ideal_from_json(spec, payload)
        escape = dual_containment_escape(ideal)
        return {
            "contained": escape is None,
            "witness": witness_to_json(spec, escape),
            "colength": ideal.colength(),
        }

    if command == "decompose-chain":
        ideal = left_ideal_from_json(spec, payload)
        chain = chain_decompose(ideal)
        return {
            "chain": chain_to_json(chain),
            "colengths": chain.colengths(),
            "colength": ideal.colength(),
        }

    if command == "compose-chain":
        chain = chain_from_json(payload.get("chain"), spec.field, spec.N)
        ideal = chain_compose(chain, spec)
        return {
            "ideal": left_ideal_to_json(ideal),
            "colength": ideal.colength(),
            "two_sided": is_two_sided(ideal),
            "dual_containment": check_dual_containment(ideal),
        }

    if command == "deform":
        if spec.kind == "unramified":
            summands = payload.get("summands")
            if not isinstance(summands, list):
                raise ParseError("unramified deformation needs a summands list")
            cert = deform_unramified(
                [comm_ideal_from_json(d, spec.field, spec.N) for d in summands], spec
            )
        else:
            cert = deform_smooth_ram(left_ideal_from_json(spec, payload))
        return deformation_to_json(cert)

    if command == "family-fiber":
        before = left_ideal_from_json(spec, payload.get("before", {}))
        after = left_ideal_from_json(spec, payload.get("after", {}))
        point = payload.get("point")
        if not isinstance(point, list) or len(point) != 2:
            raise ParseError("family-fiber needs point = [a, b]")
        a = parse_scalar(str(point[0]), spec.field)
        b = parse_scalar(str(point[1]), spec.field)
        fiber = family_fiber(before, after, (a, b))
        return {
            "point": [spec.field.format_scalar(a), spec.field.format_scalar(b)],
            "fiber": left_ideal_to_json(fiber),
            "colength": fiber.colength(),
        }

    if command == "probe-divisibility":
        l = payload.get("l")
        if not isinstance(l, int):
            raise ParseError("probe-divisibility needs an integer payload field l")
        return probe_to_json(divisibility_probe(spec, l), spec)

    if command == "find-simple-quotients":
        ideals = find_codim_one_quotients(spec, max_dim=max_dim)
        return {"count": len(ideals), "ideals": [left_ideal_to_json(i) for i in ideals]}

    raise ParseError(f"unknown command {payload and command or command!r}")


def verify_certificate_data(cert, max_dim=4096):
    """Re-run the embedded job and compare byte-for-byte."""
    if not isinstance(cert, dict) or cert.get("schema") != SCHEMA:
        raise ParseError(f"not an ordercalc certificate (schema {SCHEMA})")
    job = cert.get("job")
    if not isinstance(job, dict):
        raise ParseError("certificate carries no job")
    if input_hash(job) != cert.get("input_hash"):
        raise CertificateMismatch(
            "input hash does not match the embedded job",
            detail={"expected": input_hash(job), "found": cert.get("input_hash")},
        )
    result = run_job(
        job.get("command"),
        job.get("algebra"),
        job.get("payload", {}),
        seed=job.get("seed", 0),
        max_dim=max_dim,
    )
    mismatch = diff_paths(result, cert.get("result"))
    if mismatch:
        raise CertificateMismatch(
            "recomputed result differs from the certificate",
            detail={"path": mismatch},
        )
    return {
        "verified": True,
        "operation": job.get("command"),
        "input_hash": cert.get("input_hash"),
    }


def _read_input(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="ordercalc",
        description="Exact ideal calculus for the local models of orders "
        "over a surface germ; reads one JSON job and emits a certificate.",
    )
    parser.add_argument("--input", "-i", default="-", help="job JSON file, or - for stdin")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    parser.add_argument("--truncation", type=int, help="override the algebra truncation order N")
    parser.add_argument("--max-dim", type=int, default=4096, help="enumeration dimension guard")
    parser.add_argument(
        "--verify", action="store_true", help="treat the input as a certificate and re-check it"
    )
    args = parser.parse_args(argv)

    try:
        data = json.loads(_read_input(args.input))
    except (OSError, json.JSONDecodeError) as exc:
        print(pretty_json({"error": {"code": "ParseError", "message": str(exc)}}))
        return 1

    try:
        if args.verify or (isinstance(data, dict) and data.get("command") == "verify-certificate"):
            cert = data if args.verify else data.get("payload")
            print(pretty_json(verify_certificate_data(cert, max_dim=args.max_dim)))
            return 0
        if not isinstance(data, dict) or "command" not in data:
            raise ParseError("job JSON needs a command field")
        command = data["command"]
        if command not in COMMANDS:
            raise ParseError(f"unknown command {command!r}")
        algebra = data.get("algebra")
        if args.truncation is not None and isinstance(algebra, dict):
            algebra = dict(algebra, N=args.truncation)
        payload = data.get("payload", {})
        result = run_job(command, algebra, payload, seed=args.seed, max_dim=args.max_dim)
        print(pretty_json(build_certificate(command, algebra, payload, result, seed=args.seed)))
        if command == "selftest" and not result.get("ok", False):
            return 2
        return 0
    except ParseError as exc:
        print(pretty_json({"error": exc.payload()}))
        return 1
    except OrderCalcError as exc:
        print(pretty_json({"error": exc.payload()}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
