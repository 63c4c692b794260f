"""Command line interface: commands, exit codes, deterministic reports."""

import json

import numpy as np
import pytest

from perispec import dump_json, load_map_file
from perispec.cli import main

GENERIC = [float(np.cos(2 * np.pi / 5)), float(np.sin(2 * np.pi / 5))]


def _write_map(tmp_path, name="ex1", lambda0=GENERIC, extra=None):
    preset = {"name": name}
    if lambda0 is not None:
        preset["lambda0"] = lambda0
    if extra:
        preset.update(extra)
    path = tmp_path / f"{name}.json"
    path.write_text(dump_json({"map": {"preset": preset}}))
    return path


FAST = ["--samples", "500"]


def test_analyze_exits_zero_and_emits_valid_json(tmp_path, capsys):
    path = _write_map(tmp_path)
    assert main(["analyze", str(path), "--json", *FAST]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["unital"] is True
    assert report["ergodic"] is True
    assert report["complete_positivity"]["completely_positive"] is False
    assert report["positivity"]["passed"] is True
    assert len(report["point_spectrum"]) == 3


def test_analyze_reports_are_byte_identical(tmp_path):
    path = _write_map(tmp_path)
    outputs = []
    for attempt in range(2):
        out = tmp_path / f"report{attempt}.json"
        assert main(["analyze", str(path), "--out", str(out), *FAST]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_analyze_emit_round_trips_to_the_same_analysis(tmp_path):
    path = _write_map(tmp_path)
    explicit = tmp_path / "explicit.json"
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    assert main(
        ["analyze", str(path), "--emit", str(explicit), "--out", str(first), *FAST]
    ) == 0
    assert main(["analyze", str(explicit), "--out", str(second), *FAST]) == 0
    a = json.loads(first.read_text())
    b = json.loads(second.read_text())
    assert a["point_spectrum"] == b["point_spectrum"]
    assert a["classifications"] == b["classifications"]
    assert a["invariant_state"] == b["invariant_state"]


def test_analyze_continuous_preset_includes_family_sections(tmp_path, capsys):
    path = _write_map(tmp_path, name="ex2c", lambda0=[0.0, 1.0])
    assert main(["analyze", str(path), "--json", *FAST]) == 0
    report = json.loads(capsys.readouterr().out)
    continuous = report["continuous"]
    assert continuous["semigroup_max_residual"] < 1e-10
    assert continuous["zero_time_note"]
    assert continuous["identity_at_zero"] is False
    checks = continuous["eigen_checks"]
    assert checks and all(c["max_residual"] < 1e-10 for c in checks)


def test_classify_lists_basis_and_combination(tmp_path, capsys):
    path = _write_map(tmp_path, name="ex2", lambda0=[0.0, 1.0])
    code = main(
        [
            "classify",
            str(path),
            "--lam",
            "0,1",
            "--coeffs",
            "0.6,0;0.8,0",
            "--json",
        ]
    )
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["dimension"] == 2
    assert {entry["case"] for entry in report["vectors"]} <= {"I", "II", "III"}
    combo = report["combination"]
    assert combo["case"] == "II"
    assert combo["alpha1"] ** 2 + combo["alpha2"] ** 2 == pytest.approx(1.0)
    assert combo["theta"] == pytest.approx(
        (combo["alpha1"] * combo["alpha2"]) ** 2, abs=1e-12
    )


def test_classify_rejects_values_outside_the_spectrum(tmp_path, capsys):
    path = _write_map(tmp_path)
    assert main(["classify", str(path), "--lam", "0.5,0.5"]) == 2
    assert "not a peripheral eigenvalue" in capsys.readouterr().err


def test_classify_rejects_coefficient_count_mismatch(tmp_path):
    path = _write_map(tmp_path)
    code = main(
        ["classify", str(path), "--lam", "1,0", "--coeffs", "1,0;1,0"]
    )
    assert code == 2


def test_choi_on_single_block_map(tmp_path, capsys):
    path = _write_map(tmp_path)
    assert main(["choi", str(path), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["completely_positive"] is False
    assert report["min_eigenvalue"] == pytest.approx(-0.5, abs=1e-9)


def test_choi_rejects_multi_block_maps(tmp_path, capsys):
    path = _write_map(tmp_path, name="ex2", lambda0=[0.0, 1.0])
    assert main(["choi", str(path)]) == 2
    assert "MultiBlockUnsupported" in capsys.readouterr().err


def test_positivity_methods_and_schedule(tmp_path, capsys):
    path = tmp_path / "block.json"
    path.write_text(
        dump_json(
            {
                "block2": {
                    "a": [[2, 0], [0, 2]],
                    "b": [[0, 1], [0, 0]],
                    "c": [[0, 0], [1, 0]],
                    "d": [[1, 0], [0, 1]],
                }
            }
        )
    )
    for method in ("eps", "eps-prime", "oracle"):
        assert main(["positivity", str(path), "--method", method, "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["is_psd"] is True
    assert main(
        ["positivity", str(path), "--method", "eps", "--schedule", "0.5,0.01"]
    ) == 0
    capsys.readouterr()


def test_positivity_commuting_violation_is_a_numerical_error(tmp_path, capsys):
    path = tmp_path / "block.json"
    path.write_text(
        dump_json(
            {
                "block2": {
                    "a": [[1, 0], [0, 2]],
                    "b": [[0, 0], [0, 0]],
                    "c": [[0, 0], [0, 0]],
                    "d": [[1, 1], [1, 1]],
                }
            }
        )
    )
    assert main(["positivity", str(path), "--method", "commuting"]) == 3
    assert "CommutationViolated" in capsys.readouterr().err


def test_positivity_transforms_report_result_blocks(tmp_path, capsys):
    path = tmp_path / "block.json"
    path.write_text(
        dump_json(
            {
                "block2": {
                    "a": [[2, 0], [0, 2]],
                    "b": [[0, 1], [0, 0]],
                    "c": [[0, 0], [1, 0]],
                    "d": [[1, 0], [0, 1]],
                    "x": [[1, 0], [1, 1]],
                    "y": [[2, 0], [0, 1]],
                }
            }
        )
    )
    for transform in ("corner-swap", "congruence"):
        assert main(["positivity", str(path), "--transform", transform, "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["input_psd"]["is_psd"] is True
        assert report["result_psd"]["is_psd"] is True
        assert set(report["result"]) == {"a", "b", "c", "d"}


def test_example_command_round_trips_through_the_loader(tmp_path, capsys):
    assert main(["example", "ex1", "--angle", "72", "--json"]) == 0
    document = json.loads(capsys.readouterr().out)
    loaded = load_map_file(document)
    assert loaded.phi.algebra.blocks == (2,)
    assert main(["example", "psi_swap", "--json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert load_map_file(document).phi.algebra.blocks == (1, 1)


def test_example_command_requires_exactly_one_rotation_flag(capsys):
    assert main(["example", "ex1"]) == 2
    capsys.readouterr()
    assert main(["example", "ex1", "--angle", "72", "--lambda0", "0,1"]) == 2
    capsys.readouterr()


def test_example_explicit_emits_a_superop_document(capsys):
    assert main(["example", "ex1", "--angle", "90", "--explicit", "--json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert "superop" in document["map"]
    assert load_map_file(document).phi.matrix.shape == (4, 4)


@pytest.mark.parametrize(
    "content",
    [
        "not json at all",
        '{"map": {}}',
        '{"map": {"preset": {"name": "nope", "lambda0": [0, 1]}}}',
        '{"map": {"superop": [[1, 0], [0, 1], [0, 0]]}}',
        '{"algebra": {"blocks": [2]}, "map": {"superop": [[0, 1], [1, 0]]}}',
    ],
)
def test_malformed_map_files_exit_two(tmp_path, capsys, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert main(["analyze", str(path), *FAST]) == 2
    assert capsys.readouterr().err.startswith("error")


def test_missing_file_exits_two(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "absent.json")]) == 2
    capsys.readouterr()


def test_bad_tolerance_flag_exits_two(tmp_path, capsys):
    path = _write_map(tmp_path)
    assert main(["analyze", str(path), "--tol", "-1"]) == 2
    capsys.readouterr()
