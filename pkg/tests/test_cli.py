import json

import pandas as pd
import pytest

from pasting_engine.format.parser import parse_document
from pasting_engine.main import main
from tests.conftest import sample_path, sample_text

RUNNING = sample_path("running.paste")


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture(autouse=True)
def quiet_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("PASTING_OUTPUT_DIR", str(tmp_path / "outputs"))
    monkeypatch.setenv("PASTING_MACLANE_MAX_LENGTH", "3")
    monkeypatch.setenv("PASTING_MACLANE_SKELETONS", "2")
    monkeypatch.setenv("PASTING_AXIOM_SAMPLES", "5")


class TestCheck:
    def test_running_example(self, capsys):
        assert main(["check", RUNNING]) == 0
        assert "pasting diagram: presented by theta1 ; theta2 ; theta3" in capsys.readouterr().out

    def test_json_report(self, capsys):
        code, report = run_json(capsys, "check", RUNNING)
        assert code == 0
        assert report["schema_version"] == 1
        assert report["command"] == "check"
        assert report["ok"] is True
        assert report["face_order"] == ["theta1", "theta2", "theta3"]

    def test_reversed_edge(self, capsys):
        code, report = run_json(capsys, "check", sample_path("reversed_edge.paste"))
        assert code == 2
        assert report["valid"] is False
        assert any("not a directed path" in v for v in report["violations"])

    def test_graph_without_faces(self, capsys):
        assert main(["check", sample_path("empty_faces.paste")]) == 2
        assert "no interior faces" in capsys.readouterr().out

    def test_missing_file(self, capsys, tmp_path):
        assert main(["check", str(tmp_path / "absent.paste")]) == 1
        assert "File not found" in capsys.readouterr().err

    def test_syntax_error(self, capsys, tmp_path):
        source = tmp_path / "broken.paste"
        source.write_text("diagram x\nobject A $\n", encoding="utf-8")
        assert main(["check", str(source)]) == 1
        assert "line 2, column 10" in capsys.readouterr().err


class TestSchemes:
    def test_all_presentations(self, capsys):
        code, report = run_json(capsys, "schemes", sample_path("side_by_side.paste"), "--all")
        assert code == 0
        assert report["count"] == 2
        assert [p["face_order"] for p in report["presentations"]] == [["alpha", "beta"], ["beta", "alpha"]]

    def test_not_a_pasting_scheme(self, capsys):
        code, report = run_json(capsys, "schemes", sample_path("empty_faces.paste"))
        assert code == 2
        assert report["command"] == "schemes"
        assert report["pasting_scheme"] is False


class TestExtend:
    def test_canonical(self, capsys):
        code, report = run_json(capsys, "extend", RUNNING)
        assert code == 0
        assert report["associativity_indices"] == [1, 3]
        assert [f["kind"] for f in report["factors"]] == ["face", "a⁻¹", "face", "a", "face"]
        assert report["factors"][1]["move"] == "LeftToRight@root"

    def test_redundant_pair(self, capsys):
        code, report = run_json(capsys, "extend", RUNNING, "--strategy", "redundant-pair", "--seed", "4")
        assert code == 0
        assert report["strategy"] == "redundant-pair"
        assert len(report["factors"]) == 7

    def test_reordered_needs_a_second_presentation(self, capsys):
        assert main(["extend", RUNNING, "--strategy", "reordered"]) == 1
        assert "second presentation" in capsys.readouterr().err


class TestEval:
    def test_span_model(self, capsys):
        code, report = run_json(capsys, "eval", RUNNING, "--model", "span",
                                "--assignments", sample_path("running_span.paste"))
        assert code == 0
        assert report["composite"][0] == ["(a1, b1)", "(c1, d1)"]
        assert [t["label"] for t in report["trace"]] == [
            "theta1 * 1_f2", "a⁻¹", "1_h1 * theta2", "a", "theta3 * 1_g2",
        ]

    def test_matrix_model(self, capsys):
        code, report = run_json(capsys, "eval", RUNNING, "--model", "matrix",
                                "--assignments", sample_path("running_matrix.paste"))
        assert code == 0
        assert report["composite"] == {"source": 3, "target": 3, "rows": [[1, 3, 0], [0, 0, 1], [0, 1, 1]]}

    def test_embedded_block(self, capsys):
        code, report = run_json(capsys, "eval", sample_path("side_by_side.paste"), "--model", "matrix")
        assert code == 0
        assert report["composite"]["rows"] == [[2, 0], [0, 3]]

    def test_output_is_stable(self, capsys):
        argv = ["eval", RUNNING, "--assignments", sample_path("running_span.paste"), "--json"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first

    def test_missing_block(self, capsys):
        assert main(["eval", RUNNING, "--model", "span"]) == 1
        assert "no model span block" in capsys.readouterr().err


class TestFmt:
    def test_normalized_text_reparses(self, capsys):
        assert main(["fmt", RUNNING]) == 0
        assert parse_document(capsys.readouterr().out) == parse_document(sample_text("running.paste"))


class TestVerify:
    def test_small_run(self, capsys):
        code, report = run_json(capsys, "verify", "--trials", "2", "--max-faces", "3", "--max-path-len", "3",
                                "--suite", "uniqueness,maclane", "--workers", "2")
        assert code == 0
        assert report["ok"] is True
        assert [s["suite"] for s in report["suites"]] == ["uniqueness", "maclane"]
        assert report["config"]["trials"] == 2

    def test_csv_output(self, capsys, tmp_path):
        target = tmp_path / "results.csv"
        code = main(["verify", "--trials", "2", "--max-faces", "2", "--suite", "axioms",
                     "--output-csv", str(target)])
        assert code == 0
        frame = pd.read_csv(target, encoding="utf-8-sig")
        assert list(frame["suite"]) == ["axioms"] * 3

    def test_unknown_suite(self):
        with pytest.raises(SystemExit) as info:
            main(["verify", "--suite", "bogus"])
        assert info.value.code == 2
