"""
Tests for the command-line application.
"""
import io
import json
import logging
import re

import pytest

from core.application import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED, KBonacciApplication
from core.event_system import EventType
from entities.recurrence import Recurrence
from entities.structure_function import SequenceKind, Spectrum, StructureFunction
from solvers.recurrence_engine import kbonacci_classical, pentanacci_pq


@pytest.fixture
def app():
    return KBonacciApplication(environ={}, stderr=io.StringIO())


def run_json(app, *argv):
    code, out = app.run(list(argv))
    return code, json.loads(out.decode("utf-8"))


class TestCommands:

    def test_coefficients(self, app):
        code, out = app.run(["coefficients", "--family", "classical", "--k", "3"])
        assert code == EXIT_OK
        assert out == b'{"order":3,"coefficients":["3","-3","1"]}\n'

    def test_coefficients_with_extension(self, app):
        code, data = run_json(app, "coefficients", "--family", "classical", "--k", "2", "--extend", "0")
        assert data["coefficients"] == ["2", "-1", "0"]

    def test_spectrum_csv(self, app):
        code, out = app.run(["spectrum", "--mu", "1", "--n-max", "2", "--format", "csv"])
        assert code == EXIT_OK
        assert out == b"n,phi,energy\n0,0,1\n1,2,4\n2,6,9\n"

    def test_spectrum_json_round_trip(self, app):
        code, data = run_json(app, "spectrum", "--bracket", "q", "--q", "1/2", "--mu", "2", "--n-max", "4")
        sf = StructureFunction.q_deformed("1/2", 2)
        assert Spectrum.from_dict(data) == sf.spectrum(4)
        assert StructureFunction.from_dict(data["structure_function"]) == sf

    def test_detect(self, app):
        code, data = run_json(app, "detect", "--mu", "1", "--max-order", "4")
        assert code == EXIT_OK
        assert Recurrence.from_dict(data) == kbonacci_classical(3)
        assert data["applied_to"] == "phi"

    def test_detect_without_result(self, app):
        code, data = run_json(app, "detect", "--bracket", "pq", "--p", "2", "--q", "3", "--mu", "1",
                              "--max-order", "4")
        assert code == EXIT_OK
        assert data == {"order": None, "coefficients": None, "applied_to": "phi"}

    def test_detect_cap_from_environment(self):
        app = KBonacciApplication(environ={"KBONACCI_MAX_ORDER_CAP": "2"}, stderr=io.StringIO())
        code, data = run_json(app, "detect", "--mu", "1", "--max-order", "5")
        assert code == EXIT_OK
        assert data["order"] is None

    def test_collision_is_recorded(self, app):
        app.run(["detect", "--bracket", "pq", "--p", "4", "--q", "2", "--mu", "1", "--max-order", "5"])
        assert [event.event_type for event in app.findings] == [EventType.PARAMETER_COLLISION]

    def test_verify_exit_codes(self, app):
        code, data = run_json(app, "verify", "--mu", "1", "--family", "classical", "--k", "3")
        assert code == EXIT_OK
        assert data["holds"] is True
        code, data = run_json(app, "verify", "--mu", "1", "--family", "classical", "--k", "2")
        assert code == EXIT_VERIFICATION_FAILED
        assert data["first_failure"]["n"] == 1

    def test_verify_explicit_coefficients_on_energy(self, app):
        code, _ = run_json(app, "verify", "--bracket", "pq", "--p", "2", "--q", "3", "--mu", "1",
                           "--family", "pentanacci", "--apply-to", "energy")
        assert code == EXIT_OK
        code, _ = run_json(app, "verify", "--mu", "1", "--coefficients", "3", "-3", "1", "--window", "2", "2")
        assert code == EXIT_VERIFICATION_FAILED

    def test_verify_relation_input(self, app, tmp_path):
        source = tmp_path / "rec.json"
        source.write_text(pentanacci_pq(2, 3).applied(SequenceKind.ENERGY).to_json(), encoding="utf-8")
        code, data = run_json(app, "verify", "--bracket", "pq", "--p", "2", "--q", "3", "--mu", "1",
                              "--relation-input", str(source))
        assert code == EXIT_OK
        assert data["holds"] is True
        assert data["recurrence"]["applied_to"] == "energy"

        source.write_text(kbonacci_classical(2).to_json(), encoding="utf-8")
        code, data = run_json(app, "verify", "--mu", "1", "--relation-input", str(source))
        assert code == EXIT_VERIFICATION_FAILED
        assert data["recurrence"]["applied_to"] == "phi"

    def test_inhom(self, app):
        code, data = run_json(app, "inhom", "--mu", "1", "2")
        assert code == EXIT_OK
        assert data["alpha"] == ["16", "24"]
        assert data["verification"]["holds"] is True

    def test_quasi_csv(self, app):
        code, out = app.run(["quasi", "--method", "ratio", "--n-max", "3", "--format", "csv"])
        assert code == EXIT_OK
        assert out == b"n,lambda,rho\n1,2,-1\n2,2,-1\n3,2,-1\n"

    def test_quasi_recursive(self, app):
        code, data = run_json(app, "quasi", "--c", "1", "--n-max", "2")
        assert data["points"][0] == {"n": 1, "lambda": "4/3", "rho": "1"}
        assert data["verification"]["holds"] is True

    def test_table(self, app):
        code, data = run_json(app, "table", "--r-max", "2")
        assert [row["alpha"] for row in data["rows"]] == [["4mu1"], ["4mu1+6mu2", "12mu2"]]
        code, out = app.run(["table", "--r-max", "1", "--format", "text"])
        assert "a0 = 4mu1" in out.decode("utf-8")

    def test_audit(self, app):
        code, data = run_json(app, "audit")
        assert code == EXIT_OK
        assert data["discrepancy_count"] > 0

    def test_output_file(self, app, tmp_path):
        target = tmp_path / "out.json"
        code, out = app.run(["coefficients", "--family", "q", "--k", "2", "--q", "2", "--output", str(target)])
        assert code == EXIT_OK
        assert out == b""
        assert target.read_bytes() == b'{"order":2,"coefficients":["3","-2"]}\n'

    def test_input_file(self, app, tmp_path):
        source = tmp_path / "sf.json"
        source.write_text(StructureFunction.pq_deformed(2, 3, 1).to_json(), encoding="utf-8")
        code, data = run_json(app, "detect", "--input", str(source), "--max-order", "5")
        assert data["coefficients"][-1] == "1296"

    def test_outputs_are_exact_and_deterministic(self, app):
        argv = ["spectrum", "--bracket", "pq", "--p", "1/2", "--q", "3", "--mu", "1/3", "--n-max", "6"]
        first = app.run(argv)
        assert first == app.run(argv)
        assert not re.search(rb"\d\.\d", first[1])


class TestErrors:

    def test_malformed_rational(self, app):
        code, out = app.run(["spectrum", "--mu", "1.5"])
        assert code == EXIT_USAGE
        assert out == b""
        assert "malformed" in app.stderr.getvalue()

    def test_unsupported_family(self, app):
        code, _ = app.run(["inhom", "--bracket", "pq", "--p", "2", "--q", "3", "--mu", "1"])
        assert code == EXIT_USAGE

    def test_unknown_command(self, app):
        code, _ = app.run(["fibonacci"])
        assert code == EXIT_USAGE

    def test_missing_family_parameter(self, app):
        code, _ = app.run(["coefficients", "--family", "q", "--k", "3"])
        assert code == EXIT_USAGE

    def test_bad_environment(self):
        app = KBonacciApplication(environ={"KBONACCI_MAX_ORDER_CAP": "zero"}, stderr=io.StringIO())
        code, _ = app.run(["table", "--r-max", "1"])
        assert code == EXIT_USAGE

    def test_unsupported_format(self, app):
        code, _ = app.run(["detect", "--mu", "1", "--max-order", "4", "--format", "csv"])
        assert code == EXIT_USAGE

    @pytest.mark.parametrize("argv,overlay", [
        (["detect", "--mu", "1"], {"detection": {"max_order_cap": "lots"}}),
        (["detect", "--mu", "1"], {"detection": {"max_order_cap": 0}}),
        (["spectrum", "--mu", "1"], {"spectrum": {"default_n_max": "ten"}}),
        (["table"], {"table": {"default_r_max": [5]}}),
    ])
    def test_invalid_configuration_value(self, app, tmp_path, argv, overlay):
        user = tmp_path / "user.json"
        user.write_text(json.dumps(overlay), encoding="utf-8")
        code, out = app.run(argv + ["--config", str(user)])
        assert code == EXIT_USAGE
        assert out == b""
        assert "must be" in app.stderr.getvalue()

    @pytest.mark.parametrize("content", ['{"order": 2}', '["3", "-3", "1"]', '{"coefficients": ["1.5"]}',
                                         '{"coefficients": ["2", "-1"], "applied_to": "psi"}'])
    def test_malformed_relation_input(self, app, tmp_path, content):
        source = tmp_path / "rec.json"
        source.write_text(content, encoding="utf-8")
        code, _ = app.run(["verify", "--mu", "1", "--relation-input", str(source)])
        assert code == EXIT_USAGE


class TestDiagnostics:

    def test_warnings_reach_each_application_stream(self):
        first = KBonacciApplication(environ={}, stderr=io.StringIO())
        first.run(["table", "--r-max", "1"])
        second = KBonacciApplication(environ={"KBONACCI_MAX_ORDER_CAP": "2"}, stderr=io.StringIO())
        code, data = run_json(second, "detect", "--mu", "1", "--max-order", "5")
        assert code == EXIT_OK
        assert "exceeds the cap 2" in second.stderr.getvalue()
        assert "exceeds the cap" not in first.stderr.getvalue()

    def test_handlers_are_released_after_run(self, app):
        before = list(logging.getLogger().handlers)
        app.run(["coefficients", "--family", "classical", "--k", "2"])
        assert logging.getLogger().handlers == before

    def test_log_file_from_configuration(self, tmp_path):
        log_file = tmp_path / "kbonacci.log"
        user = tmp_path / "user.json"
        user.write_text(json.dumps({"logging": {"file": str(log_file)}}), encoding="utf-8")
        app = KBonacciApplication(environ={"KBONACCI_MAX_ORDER_CAP": "2"}, stderr=io.StringIO())
        app.run(["detect", "--mu", "1", "--max-order", "5", "--config", str(user)])
        assert "exceeds the cap 2" in log_file.read_text(encoding="utf-8")
