import json

import pytest

from ordercalc.cli import main, run_job, verify_certificate_data
from ordercalc.certificates import build_certificate
from ordercalc.errors import CertificateMismatch


def run_cli(capsys, job, *flags):
    import io
    import sys

    text = json.dumps(job) if isinstance(job, dict) else job
    old = sys.stdin
    sys.stdin = io.StringIO(text)
    try:
        code = main(list(flags))
    finally:
        sys.stdin = old
    return code, capsys.readouterr().out


SMOOTH2 = {"kind": "smooth_ram", "e": 2, "f": 1, "N": 4}
M1_GENS = {
    "generators": [
        "[[u, 0], [0, 0]]",
        "[[v, 0], [0, 0]]",
        "[[0, 1], [0, 0]]",
        "[[0, 0], [u, 0]]",
        "[[0, 0], [0, 1]]",
    ]
}


def test_colength_command(capsys):
    code, out = run_cli(
        capsys, {"command": "colength", "algebra": SMOOTH2, "payload": M1_GENS}
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["result"]["colength"] == 1
    assert cert["schema"] == "ordercalc.certificate/1"
    assert cert["input_hash"].startswith("sha256:")


def test_two_sided_and_dual_containment_commands(capsys):
    code, out = run_cli(
        capsys, {"command": "check-two-sided", "algebra": SMOOTH2, "payload": M1_GENS}
    )
    assert code == 0 and json.loads(out)["result"]["two_sided"] is True
    code, out = run_cli(
        capsys,
        {"command": "check-dual-containment", "algebra": SMOOTH2, "payload": M1_GENS},
    )
    result = json.loads(out)["result"]
    assert code == 0 and result["contained"] is False
    assert result["witness"]["product"]


def test_compose_then_decompose_chain(capsys):
    algebra = {"kind": "smooth_ram", "e": 2, "f": 1, "N": 5}
    chain = {"chain": [{"generators": ["u", "v"]}, {"generators": ["u", "v"]}]}
    code, out = run_cli(
        capsys, {"command": "compose-chain", "algebra": algebra, "payload": chain}
    )
    assert code == 0
    composed = json.loads(out)["result"]
    assert composed["colength"] == 4
    assert composed["two_sided"] is True and composed["dual_containment"] is True

    code, out = run_cli(
        capsys,
        {
            "command": "decompose-chain",
            "algebra": algebra,
            "payload": {"basis": composed["ideal"]["basis"]},
        },
    )
    assert code == 0
    assert json.loads(out)["result"]["colengths"] == [1, 1]


def test_deform_certificate_verifies_and_detects_tampering(capsys, tmp_path):
    job = {
        "command": "deform",
        "algebra": {"kind": "smooth_ram", "e": 2, "f": 1, "N": 6},
        "payload": {"chain": [{"generators": ["u", "v"]}, {"generators": ["u", "v"]}]},
    }
    code, out = run_cli(capsys, job)
    assert code == 0
    cert = json.loads(out)
    result = cert["result"]
    assert result["colength"] == 4
    assert result["dual_containment_after"] is False
    assert len(result["family_samples"]) == 12

    path = tmp_path / "cert.json"
    path.write_text(out)
    code2 = main(["--verify", "--input", str(path)])
    verified = json.loads(capsys.readouterr().out)
    assert code2 == 0 and verified["verified"] is True

    tampered = json.loads(out)
    tampered["result"]["after"]["basis"][0] = "[[u, 0], [0, 0]]"
    code3, out3 = run_cli(capsys, tampered, "--verify")
    assert code3 == 2
    assert json.loads(out3)["error"]["code"] == "CertificateMismatch"

    as_command = {"command": "verify-certificate", "payload": json.loads(out)}
    code4, out4 = run_cli(capsys, as_command)
    assert code4 == 0 and json.loads(out4)["verified"] is True


def test_probe_and_simple_quotients_commands(capsys):
    code, out = run_cli(
        capsys,
        {
            "command": "probe-divisibility",
            "algebra": {"kind": "singular_ram", "e": 2, "f": 2, "N": 4},
            "payload": {"l": 1},
        },
    )
    assert code == 0
    assert json.loads(out)["result"]["divides"] is False

    code, out = run_cli(
        capsys,
        {
            "command": "find-simple-quotients",
            "algebra": {"kind": "singular_ram", "e": 2, "f": 1, "N": 4},
            "payload": {},
        },
    )
    assert code == 0 and json.loads(out)["result"]["count"] == 1


def test_family_fiber_command(capsys):
    algebra = {"kind": "smooth_ram", "e": 2, "f": 1, "N": 6}
    deform_job = {
        "command": "deform",
        "algebra": algebra,
        "payload": {"chain": [{"generators": ["u", "v"]}, {"generators": ["u", "v"]}]},
    }
    code, out = run_cli(capsys, deform_job)
    result = json.loads(out)["result"]
    fiber_job = {
        "command": "family-fiber",
        "algebra": algebra,
        "payload": {
            "before": {"basis": result["before"]["basis"]},
            "after": {"basis": result["after"]["basis"]},
            "point": ["1", "1"],
        },
    }
    code, out = run_cli(capsys, fiber_job)
    assert code == 0
    assert json.loads(out)["result"]["colength"] == 4


def test_exit_codes(capsys):
    code, out = run_cli(capsys, '{"command": bad json')
    assert code == 1
    code, out = run_cli(capsys, {"command": "no-such-command"})
    assert code == 1
    code, out = run_cli(
        capsys,
        {
            "command": "colength",
            "algebra": SMOOTH2,
            "payload": {"generators": ["[[0, 1], [0, 0]]"]},
        },
    )
    assert code == 2
    assert json.loads(out)["error"]["code"] == "NotSaturated"


def test_truncation_override(capsys):
    job = {"command": "colength", "algebra": SMOOTH2, "payload": M1_GENS}
    code, out = run_cli(capsys, job, "--truncation", "6")
    assert code == 0
    cert = json.loads(out)
    assert cert["job"]["algebra"]["N"] == 6
    assert cert["result"]["colength"] == 1


def test_output_is_byte_stable(capsys):
    job = {
        "command": "deform",
        "algebra": {"kind": "smooth_ram", "e": 2, "f": 1, "N": 5},
        "payload": {"chain": [{"generators": ["u", "v"]}, {"generators": ["u", "v"]}]},
    }
    _, out1 = run_cli(capsys, job)
    _, out2 = run_cli(capsys, job)
    assert out1 == out2


def test_verify_rejects_wrong_hash():
    job = {"command": "colength", "algebra": SMOOTH2, "payload": M1_GENS, "seed": 0}
    result = run_job("colength", SMOOTH2, M1_GENS)
    cert = build_certificate("colength", SMOOTH2, M1_GENS, result)
    cert["job"]["payload"] = {"generators": ["[[u, 0], [0, 1]]"]}
    with pytest.raises(CertificateMismatch):
        verify_certificate_data(cert)
