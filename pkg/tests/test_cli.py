import io
import json
from contextlib import redirect_stdout

import pytest

from cmgate import cli
from cmgate import ffield as ff
from cmgate.errors import ParseError, WrongVariables


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.run(list(argv))
    return code, buf.getvalue()


def run_json(*argv):
    code, out = run_cli("--format", "json", *argv)
    return code, json.loads(out)


F5 = ff.make_field(5, 1)


class TestParseCurve:
    def test_frobenius_monomial(self):
        poly = cli.parse_curve("X - Y^25", F5)
        assert poly.terms[(1, 0)].coeffs[0] == 1
        assert poly.terms[(0, 25)].coeffs[0] == 4

    def test_product(self):
        poly = cli.parse_curve("X*Y - 1", F5)
        assert set(poly.terms) == {(1, 1), (0, 0)}

    def test_parentheses_and_powers(self):
        poly = cli.parse_curve("(X + Y)^2 - 2*X*Y", F5)
        assert set(poly.terms) == {(2, 0), (0, 2)}

    def test_coefficients_reduced_mod_p(self):
        poly = cli.parse_curve("7*X - 12", F5)
        assert poly.terms[(1, 0)].coeffs[0] == 2
        assert poly.terms[(0, 0)].coeffs[0] == 3

    def test_wrong_variable(self):
        with pytest.raises(WrongVariables):
            cli.parse_curve("X - Z", F5)

    def test_ring_element_slot_rejects_curve_variables(self):
        with pytest.raises(WrongVariables):
            cli.parse_ring_element("X - 1", F5)

    def test_parse_error_carries_position(self):
        with pytest.raises(ParseError) as err:
            cli.parse_curve("X + ", F5)
        assert err.value.position is not None

    def test_ring_element(self):
        poly = cli.parse_ring_element("t^5 - t", F5)
        assert poly.degree() == 5


class TestCommands:
    def test_kronecker(self):
        code, out = run_cli("kronecker", "-7", "5")
        assert code == 0 and out.strip() == "-1"

    def test_class_number(self):
        code, out = run_cli("class-number", "-23")
        assert code == 0 and out.strip() == "3"

    def test_hilbert_json(self):
        code, payload = run_json("hilbert", "--D", "-15", "--p", "61")
        assert code == 0
        assert payload["result"]["degree"] == 2
        assert payload["result"]["coeffs"] == [23, 34, 1]

    def test_endo_disc(self):
        code, payload = run_json("endo-disc", "--p", "5", "--j", "3")
        assert code == 0 and payload["result"]["D"] == -4

    def test_find_disc(self):
        code, out = run_cli("find-disc", "--ell", "5", "--p", "2", "--dmin", "1")
        assert code == 0 and out.strip() == "-7"

    def test_inert_check_pass(self):
        code, payload = run_json("inert-check", "--D", "-7", "--ell", "5", "--p", "11")
        assert code == 0 and payload["verdict"] == "pass"

    def test_inert_check_sharpness_fails(self):
        code, payload = run_json("inert-check", "--D", "-23", "--ell", "2", "--p", "59")
        assert code == 1 and payload["verdict"] == "fail"

    def test_volcano(self):
        code, payload = run_json("volcano", "--p", "5", "--j", "3", "--ell", "2")
        assert code == 0
        assert payload["result"] == {"level": 0, "depth": 1}

    def test_galois_threshold(self):
        code, payload = run_json("galois-threshold", "--ell", "3", "--p", "5",
                                 "--mmax", "4")
        assert code == 0
        assert payload["result"]["degrees"] == [2, 6, 18, 54]
        assert payload["result"]["threshold"] == 1

    def test_cyclotomic(self):
        code, payload = run_json("cyclotomic", "--n", "6", "--p", "5")
        assert code == 0 and payload["result"]["coeffs"] == [1, 4, 1]

    def test_curve_points(self):
        code, payload = run_json("curve-points", "--p", "5",
                                 "--curve", "X*Y - 1", "--k", "1")
        assert code == 0 and payload["result"]["count"] == 4

    def test_ao_gate_pass(self):
        code, payload = run_json("ao-gate", "--p", "5", "--curve", "X - Y^5",
                                 "--kmax", "2")
        assert code == 0
        assert payload["verdict"] == "pass"
        assert payload["result"]["conclusion"] == {"form": "X=Y^p^n", "n": 1}

    def test_ao_gate_fail_exit_code(self):
        code, payload = run_json("ao-gate", "--p", "5", "--curve", "X + Y - 1",
                                 "--kmax", "3", "--witness-limit", "1")
        assert code == 1
        assert payload["verdict"] == "fail"
        assert payload["witnesses"]

    def test_subgroup_detect(self):
        code, payload = run_json("subgroup-detect", "--p", "5",
                                 "--curve", "X^2 - 2*Y")
        assert code == 0
        form = payload["result"]["form"]
        assert (form["a"], form["b"]) == (2, -1)

    def test_support_modular(self):
        code, payload = run_json("support-modular", "--p", "5", "--A", "t",
                                 "--B", "t^5", "--dmax", "30")
        assert code == 0
        assert payload["result"]["conclusion"] == {"form": "B=A^p^n", "n": 1}

    def test_support_mult(self):
        code, payload = run_json("support-mult", "--p", "5", "--A", "t",
                                 "--B", "t^2", "--nmax", "6")
        assert code == 0
        assert payload["result"]["conclusion"] == {"k": 2, "m": 0}

    def test_support_cyclo_failure_path(self):
        code, payload = run_json("support-cyclo", "--p", "5", "--A", "t",
                                 "--B", "t^2", "--nmax", "8")
        assert code == 1
        assert any(w["n"] == 8 for w in payload["witnesses"])

    def test_construct_points(self):
        code, payload = run_json("construct-points", "--p", "5",
                                 "--curve", "X*Y - 1", "--nmax", "1",
                                 "--count", "2")
        assert code == 0
        assert len(payload["result"]["witnesses"]) == 2

    def test_isogeny_path(self):
        code, payload = run_json("isogeny-path", "--p", "61", "--j1", "32",
                                 "--j2", "56", "--levels", "2")
        assert code == 0 and payload["result"]["found"]

    def test_neighbors(self):
        code, payload = run_json("neighbors", "--p", "13", "--j", "5", "--ell", "2")
        assert code == 0
        total = sum(n["multiplicity"] for n in payload["result"]["neighbors"])
        assert total == 3

    def test_usage_error_exit_code(self):
        code, _ = run_cli("ao-gate", "--p", "5")
        assert code == 2

    def test_unknown_variable_is_usage_error(self):
        code, _ = run_cli("ao-gate", "--p", "5", "--curve", "X - W", "--kmax", "2")
        assert code == 2

    def test_selftest_single_criterion(self):
        code, payload = run_json("selftest", "--criteria", "11")
        assert code == 0
        assert payload["result"]["criteria"][0]["passed"]


class TestDeterminism:
    def test_byte_identical_json(self):
        argv = ("ao-gate", "--p", "5", "--curve", "X - Y^5", "--kmax", "2")
        _, first = run_cli("--format", "json", "--seed", "3", *argv)
        _, second = run_cli("--format", "json", "--seed", "3", *argv)
        assert first == second

    def test_cross_process_byte_identity(self):
        # fresh interpreters with different hash seeds must agree byte for
        # byte, which rules out hash-iteration-order leaks into the output
        import os
        import subprocess
        import sys

        argv = [sys.executable, "-m", "cmgate.cli", "--format", "json",
                "support-mult", "--p", "5", "--A", "t", "--B", "t^2",
                "--nmax", "5"]
        outputs = []
        for hashseed in ("1", "99"):
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            proc = subprocess.run(argv, capture_output=True, env=env)
            assert proc.returncode == 0, proc.stderr
            outputs.append(proc.stdout)
        assert outputs[0] == outputs[1]

    def test_json_top_level_schema(self):
        _, payload = run_json("kronecker", "-7", "5")
        assert set(payload) == {
            "command", "config", "verdict", "witnesses", "exceptions",
            "bounds", "timings", "result",
        }
