"""End-to-end tests for the replication driver."""

from __future__ import annotations

import contextlib
import io
import json

import pytest

from multistruct.cli import ReplicationRecord, RUNNERS, build_parser, main, report_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(scope="module")
def full_report(tmp_path_factory):
    path = tmp_path_factory.mktemp("report") / "report.json"
    with contextlib.redirect_stdout(io.StringIO()):
        code = main(["replicate", "all", "--json", str(path)])
    return code, json.loads(path.read_text())


EXPECTED_EXIT = {
    "double-conic": 1,  # section-degree prose slip reported
    "double-plane": 0,
    "triple-plane": 1,  # sign of the printed quartic coefficient
    "wedge": 1,  # printed c1 of the wedge square
    "koszul": 1,  # printed constant denominator
    "expansion": 1,  # five flipped signs below the leading coefficient
    "congruence": 0,
    "graded": 0,
    "ext-claim": 0,
}


class TestExitCodes:
    @pytest.mark.parametrize("target", sorted(EXPECTED_EXIT))
    def test_per_target(self, capsys, target):
        code, out, _ = run_cli(capsys, "replicate", target)
        assert code == EXPECTED_EXIT[target]
        assert "summary:" in out

    def test_all_aggregates(self, capsys):
        code, out, _ = run_cli(capsys, "replicate", "all")
        assert code == 1
        summary_line = out.strip().splitlines()[-1]
        assert "83 records" in summary_line
        assert "9 discrepancies" in summary_line

    def test_invalid_inputs(self, capsys):
        assert run_cli(capsys, "replicate", "double-conic", "--r", "0")[0] == 2
        assert run_cli(capsys, "replicate", "graded", "--r", "-3")[0] == 2
        assert (
            run_cli(capsys, "replicate", "graded", "--points", "1:0,0:1")[0] == 2
        )
        assert (
            run_cli(capsys, "replicate", "koszul", "--json", "/nonexistent/x.json")[0]
            == 2
        )

    def test_argparse_rejections(self, capsys):
        parser = build_parser()
        for argv in (
            ["replicate", "bogus"],
            ["replicate", "graded", "--window", "5..3"],
            ["replicate", "graded", "--r", "two"],
            ["replicate", "graded", "--template", "guessed"],
            ["replicate", "graded", "--points", "1:0,0:0"],
        ):
            with pytest.raises(SystemExit) as exc:
                parser.parse_args(argv)
            assert exc.value.code == 2
        capsys.readouterr()


class TestRecords:
    def test_record_structure(self, capsys):
        code, out, _ = run_cli(capsys, "replicate", "koszul")
        assert "[ ok ] koszul/t2-coefficient" in out
        assert "[DIFF] koszul/constant-term" in out

    def test_diff_lines_show_published_value(self, capsys):
        _, out, _ = run_cli(capsys, "replicate", "wedge")
        diff = next(line for line in out.splitlines() if "lambda2-c1" in line)
        assert "[published: 3*c1]" in diff
        assert "2*c1" in diff

    def test_template_flag_filters(self, capsys):
        _, out, _ = run_cli(capsys, "replicate", "expansion", "--template", "paper")
        assert "(derived)" not in out
        _, out, _ = run_cli(capsys, "replicate", "expansion", "--template", "derived")
        assert "(paper)" not in out
        code, _, _ = run_cli(capsys, "replicate", "expansion", "--template", "derived")
        assert code == 0  # no published counterpart records to disagree with

    def test_congruence_template_verdicts(self, capsys):
        _, out, _ = run_cli(capsys, "replicate", "congruence")
        assert "congruence/double-plane-verdict (paper): nonexistence" in out
        assert "congruence/double-plane-verdict (derived): exists-candidate" in out
        assert "congruence/triple-plane-verdict (derived): exists-candidate" in out

    def test_fixed_r_mode(self, capsys):
        code, out, _ = run_cli(capsys, "replicate", "double-conic", "--r", "2")
        assert code == 1
        assert "tangent-dimension (n/a): 19" in out

    def test_window_flag(self, capsys):
        _, out, _ = run_cli(capsys, "replicate", "ext-claim", "--window", "0..2")
        assert "vanishing[r=2]" in out
        assert "vanishing[r=3]" not in out


class TestJsonReport:
    def test_schema(self, full_report):
        code, doc = full_report
        assert code == 1
        assert list(doc) == ["version", "timestamp", "records", "summary"]
        assert list(doc["summary"]) == ["total", "matched", "discrepancies"]
        assert doc["summary"]["total"] == len(doc["records"]) == 83
        for record in doc["records"]:
            assert list(record) == [
                "claim_id",
                "paper_value",
                "computed_value",
                "template",
                "match",
                "notes",
            ]
            assert record["template"] in ("paper", "derived", "n/a")
            assert isinstance(record["match"], bool)

    def test_record_keys_unique(self, full_report):
        _, doc = full_report
        keys = [(r["claim_id"], r["template"]) for r in doc["records"]]
        assert len(keys) == len(set(keys))

    def test_paper_value_semantics(self, full_report):
        _, doc = full_report
        records = {
            (r["claim_id"], r["template"]): r for r in doc["records"]
        }
        published = records["expansion/C(t+2,2)", "paper"]
        assert published["paper_value"] != "n/a"
        assert published["match"] is False
        assert "sign" in published["notes"]
        unpublished = records["expansion/C(t+2,2)", "derived"]
        assert unpublished["paper_value"] == "n/a"
        assert unpublished["match"] is True
        internal = records["wedge/split-agreement", "n/a"]
        assert internal["paper_value"] == "n/a"
        assert internal["match"] is True

    def test_determinism_excluding_timestamp(self, full_report, capsys, tmp_path):
        _, first = full_report
        path = tmp_path / "again.json"
        run_cli(capsys, "replicate", "all", "--json", str(path))
        second = json.loads(path.read_text())
        first = dict(first)
        first.pop("timestamp")
        second.pop("timestamp")
        assert first == second

    def test_report_json_counts(self):
        records = [
            ReplicationRecord("x", "1", "1", "n/a", True, ""),
            ReplicationRecord("y", "1", "2", "n/a", False, ""),
        ]
        doc = report_json(records)
        assert doc["summary"] == {"total": 2, "matched": 1, "discrepancies": 1}


class TestRunnersDirect:
    def test_every_target_has_runner(self):
        assert set(EXPECTED_EXIT) == set(RUNNERS)
