import json

import pytest

from combstab.cli import main

I1 = {
    "curve": {"genera": [2, 2]},
    "bundle": {"rank": 2, "multidegree": [1, 1]},
    "polarization": {"weights": ["1/3", "2/3"]},
}
I1_FAIL = {
    "curve": {"genera": [2, 2]},
    "bundle": {"rank": 2, "multidegree": [5, 1]},
    "polarization": {"weights": ["1/2", "1/2"]},
}
KERNEL_SU = {
    "curve": {"genera": [2, 3]},
    "pair": {"rank": 1, "sections": 4, "multidegree": [4, 5], "kernel_dims": [1, 0]},
}
KERNEL_GAP = {
    "curve": {"genera": [2, 3]},
    "pair": {"rank": 1, "sections": 4, "multidegree": [2, 5], "kernel_dims": [1, 0]},
}
KERNEL_OK = {
    "curve": {"genera": [2, 2, 2]},
    "pair": {
        "rank": 1,
        "sections": 3,
        "multidegree": [3, 3, 3],
        "kernel_dims": [0, 0, 0],
        "assumptions": {"general_linear_series": True},
    },
}


@pytest.fixture
def write_doc(tmp_path):
    def _write(doc, name="doc.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return _write


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyze:
    def test_pass_with_forced_destabilizer(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "analyze", write_doc(I1))
        assert code == 0
        assert "overall: PASS" in out
        assert "PossiblyUnstable" in out
        assert "(1, 0)" in out

    def test_failure_names_witness(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "analyze", write_doc(I1_FAIL))
        assert code == 1
        assert "overall: FAIL" in out
        assert "E_1(-p_1)" in out

    def test_flag_polarization_overrides(self, capsys, write_doc):
        doc = dict(I1)
        del doc["polarization"]
        code, out, _ = run_cli(
            capsys, "analyze", write_doc(doc), "--polarization", "1/3,2/3"
        )
        assert code == 0
        assert "(1/3, 2/3)" in out

    def test_missing_polarization_is_input_error(self, capsys, write_doc):
        doc = {"curve": I1["curve"], "bundle": I1["bundle"]}
        code, _, err = run_cli(capsys, "analyze", write_doc(doc))
        assert code == 2
        assert "polarization" in err

    def test_invalid_polarization_is_input_error(self, capsys, write_doc):
        code, _, err = run_cli(
            capsys, "analyze", write_doc(I1), "--polarization", "1/2,1/3"
        )
        assert code == 2
        assert "sum" in err

    def test_rank_one_note(self, capsys, write_doc):
        doc = {
            "curve": {"genera": [2, 2]},
            "bundle": {"rank": 1, "multidegree": [3, 3]},
            "polarization": {"weights": ["1/2", "1/2"]},
        }
        code, out, _ = run_cli(capsys, "analyze", write_doc(doc))
        assert code == 0
        assert "rank 1" in out

    def test_json_payload(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "analyze", write_doc(I1), "--json")
        payload = json.loads(out)
        assert payload["exit"] == code == 0
        assert payload["necessary"]["overall_pass"] is True
        assert payload["classification"][0]["forced_destabilizers"] == [[1, 0]]

    def test_malformed_json_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        code, _, err = run_cli(capsys, "analyze", str(path))
        assert code == 2
        assert "malformed" in err


class TestRegion:
    def test_closed_and_strict(self, capsys, write_doc):
        path = write_doc(I1)
        code, out, _ = run_cli(capsys, "region", path)
        assert code == 0
        assert "w_1 in [1/4, 3/4]" in out
        assert "feasible" in out
        code, out, _ = run_cli(capsys, "region", path, "--strict")
        assert code == 0
        assert "w_1 in (1/4, 3/4)" in out

    def test_infeasible_exits_one(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "region", write_doc(I1_FAIL))
        assert code == 1
        assert "empty" in out
        assert "infeasible" in out


class TestPolarize:
    def test_bundle_route(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "polarize", write_doc(I1), "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["weights"] == ["1/2", "1/2"]

    def test_pair_route(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "polarize", write_doc(KERNEL_OK), "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["weights"] == ["1/3", "1/3", "1/3"]

    def test_infeasible(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "polarize", write_doc(I1_FAIL))
        assert code == 1
        assert "no polarization" in out

    def test_needs_bundle_or_pair(self, capsys, write_doc):
        code, _, err = run_cli(capsys, "polarize", write_doc({"curve": {"genera": [2, 2]}}))
        assert code == 2
        assert "bundle or a pair" in err


class TestKernel:
    def test_strongly_unstable_exits_one(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "kernel", write_doc(KERNEL_SU))
        assert code == 1
        assert "StronglyUnstable" in out
        assert "r_1 = 2" in out

    def test_gap_case_exits_zero(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "kernel", write_doc(KERNEL_GAP))
        assert code == 0
        assert "NotDetermined" in out

    def test_constructive_polarization(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "kernel", write_doc(KERNEL_OK))
        assert code == 0
        assert "ExistsSemistablePolarization" in out
        assert "(1/3, 1/3, 1/3)" in out

    def test_json_payload(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "kernel", write_doc(KERNEL_SU), "--json")
        payload = json.loads(out)
        assert payload["exit"] == code == 1
        assert payload["strong_unstability"]["verdict"] == "StronglyUnstable"
        assert payload["strong_unstability"]["triggering_j"] == 1
        assert payload["kernel_bundle"]["component_eulers"] == [-7, -11]

    def test_invalid_pair_is_input_error(self, capsys, write_doc):
        doc = {
            "curve": {"genera": [2, 2]},
            "pair": {"rank": 1, "sections": 3, "multidegree": [1, 3], "kernel_dims": [0, 0]},
        }
        code, _, err = run_cli(capsys, "kernel", write_doc(doc))
        assert code == 2
        assert "d_1 = 1" in err

    def test_inconsistent_spine_kernel_is_input_error(self, capsys, write_doc):
        doc = {
            "curve": {"genera": [2, 2]},
            "pair": {"rank": 1, "sections": 3, "multidegree": [3, 3], "kernel_dims": [0, 1]},
        }
        code, _, err = run_cli(capsys, "kernel", write_doc(doc))
        assert code == 2
        assert "spine" in err


class TestValidate:
    def test_ok(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "validate", write_doc(I1))
        assert code == 0
        assert "ok" in out

    def test_violations_exit_one(self, capsys, write_doc):
        doc = {
            "curve": {"genera": [2, 2]},
            "polarization": {"weights": ["1/2", "1/3"]},
        }
        code, out, _ = run_cli(capsys, "validate", write_doc(doc))
        assert code == 1
        assert "sum" in out

    def test_schema_error_exits_two(self, capsys, write_doc):
        code, _, err = run_cli(capsys, "validate", write_doc({"curve": {"genera": [2, 2]}, "x": 1}))
        assert code == 2
        assert "unknown" in err


class TestSelftest:
    def test_small_run(self, capsys):
        code, out, _ = run_cli(capsys, "selftest", "--count", "40", "--seed", "3")
        assert code == 0
        assert "result: PASS" in out

    def test_zero_count_vacuous(self, capsys):
        code, out, _ = run_cli(capsys, "selftest", "--count", "0")
        assert code == 0
        assert "oracle agreements: 0/0" in out

    def test_bad_bounds_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "selftest", "--count", "1", "--max-components", "1")
        assert code == 2
        assert "max_components" in err

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(capsys, "selftest", "--count", "25", "--seed", "3", "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["passed"] is True
        assert payload["total_run"] == payload["total_agreed"] > 0
