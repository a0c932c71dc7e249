"""CLI layer: manifest loading, check dispatch, report formats, exit codes."""

import json
import pathlib

import pytest

from fncalc.cli import (
    EXIT_ERROR,
    EXIT_FAIL,
    EXIT_PASS,
    ManifestError,
    emit,
    load_manifest,
    main,
    run_check,
)

MANIFESTS = pathlib.Path(__file__).resolve().parent.parent / "manifests"


def write_manifest(tmp_path, doc) -> str:
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    return str(path)


N_ROWS = [
    ["1", "0", "0", "-z"],
    ["0", "1", "0", "0"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
]


def n_manifest(**extra):
    doc = {
        "chart": {"coords": ["x", "y", "z", "w"]},
        "endomorphisms": {"N": N_ROWS},
        "checks": [],
    }
    doc.update(extra)
    return doc


class TestLoadManifest:
    def test_fixture_file(self):
        m = load_manifest(str(MANIFESTS / "f2_idempotent.json"))
        assert m.chart.dim == 4
        assert set(m.endomorphisms) == {"N", "Z"}
        assert m.seed == 0 and m.probe_degree == 2 and m.points == 5
        # column convention: the d/dw column of N is (-z, 0, 0, 0)
        col = [m.endomorphisms["N"].matrix()[i][3] for i in range(4)]
        assert str(col[0]) == "-z"
        assert all(c.is_zero for c in col[1:])

    def test_malformed_expression_reports_position(self, tmp_path):
        doc = n_manifest()
        doc["endomorphisms"]["N"] = [
            ["x+*y", "0", "0", "0"],
            ["0", "0", "0", "0"],
            ["0", "0", "0", "0"],
            ["0", "0", "0", "0"],
        ]
        with pytest.raises(ManifestError) as exc:
            load_manifest(write_manifest(tmp_path, doc))
        assert "position" in str(exc.value)

    def test_json_syntax_error_reports_location(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{\n  broken\n}")
        with pytest.raises(ManifestError) as exc:
            load_manifest(str(path))
        assert "line" in str(exc.value)

    def test_unresolved_reference(self, tmp_path):
        doc = n_manifest(algebroids={"A": {"anchor": "missing"}})
        with pytest.raises(ManifestError) as exc:
            load_manifest(write_manifest(tmp_path, doc))
        assert "missing" in str(exc.value)

    def test_shape_mismatch(self, tmp_path):
        doc = n_manifest()
        doc["endomorphisms"]["N"] = [["1", "0"], ["0", "1"]]
        with pytest.raises(ManifestError):
            load_manifest(write_manifest(tmp_path, doc))

    def test_unknown_check_kind(self, tmp_path):
        doc = n_manifest(checks=[{"kind": "frobnicate"}])
        with pytest.raises(ManifestError):
            load_manifest(write_manifest(tmp_path, doc))

    def test_antisymmetric_structure_normalization(self, tmp_path):
        doc = {
            "chart": {"coords": ["x", "y"]},
            "bundle_algebroids": {
                "B": {
                    "rank": 2,
                    "anchor": [["1", "0"], ["x", "0"]],
                    "structure": {"c[2,1,1]": "-1"},
                }
            },
            "checks": [],
        }
        m = load_manifest(write_manifest(tmp_path, doc))
        balg = m.bundle_algebroids["B"]
        assert str(balg.structure_component(0, 1, 0)) == "1"
        assert str(balg.structure_component(1, 0, 0)) == "-1"


class TestRunCheck:
    def test_torsion_fixture_value(self, tmp_path):
        m = load_manifest(write_manifest(tmp_path, n_manifest()))
        record = run_check(m, {"kind": "torsion", "endo": "N"})
        assert record.status == "fail"
        assert record.residuals == [
            {"basis": "(e_z,e_w)->d/dx", "slot": "torsion", "value": "1"}
        ]

    def test_cohomology_trivial_passes(self, tmp_path):
        doc = {
            "chart": {"coords": ["x", "y"]},
            "endomorphisms": {"Id": [["1", "0"], ["0", "1"]]},
            "algebroids": {"T": {"anchor": "Id", "correction": "auto:zero"}},
            "checks": [],
        }
        m = load_manifest(write_manifest(tmp_path, doc))
        record = run_check(m, {"kind": "cohomology", "algebroid": "T"})
        assert record.status == "pass"
        assert all(r["value"] == "0" for r in record.residuals)

    def test_complex_on_idempotent_is_error(self, tmp_path):
        m = load_manifest(write_manifest(tmp_path, n_manifest()))
        record = run_check(m, {"kind": "complex", "endo": "N"})
        assert record.status == "error"
        assert "J^2" in record.message

    def test_unknown_name_is_error(self, tmp_path):
        m = load_manifest(write_manifest(tmp_path, n_manifest()))
        record = run_check(m, {"kind": "torsion", "endo": "nope"})
        assert record.status == "error"


class TestEmitAndExitCodes:
    def test_verify_pass_exit_zero(self, capsys):
        code = main(["verify", str(MANIFESTS / "f3_product.json")])
        assert code == EXIT_PASS
        assert "overall: pass" in capsys.readouterr().out

    def test_verify_fail_exit_one(self, tmp_path, capsys):
        doc = n_manifest(checks=[{"kind": "torsion", "endo": "N"}])
        code = main(["verify", write_manifest(tmp_path, doc)])
        assert code == EXIT_FAIL
        out = capsys.readouterr().out
        assert "overall: fail" in out

    def test_verify_error_exit_two(self, tmp_path, capsys):
        doc = n_manifest(checks=[{"kind": "complex", "endo": "N"}])
        code = main(["verify", write_manifest(tmp_path, doc)])
        assert code == EXIT_ERROR
        capsys.readouterr()

    def test_invalid_manifest_exit_two(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("not json")
        code = main(["verify", str(path)])
        assert code == EXIT_ERROR
        assert "error" in capsys.readouterr().err

    def test_json_deterministic_and_without_timing(self, tmp_path, capsys):
        doc = n_manifest(
            checks=[
                {"kind": "torsion", "endo": "N"},
                {"kind": "idempotent", "endo": "N"},
            ]
        )
        path = write_manifest(tmp_path, doc)
        main(["verify", path, "--format", "json"])
        first = capsys.readouterr().out
        main(["verify", path, "--format", "json"])
        second = capsys.readouterr().out
        assert first == second
        doc_out = json.loads(first)
        assert "timing" not in first
        assert doc_out["seed"] == 0
        assert [c["status"] for c in doc_out["checks"]] == ["fail", "pass"]

    def test_seed_flag_recorded(self, tmp_path, capsys):
        doc = n_manifest(checks=[{"kind": "torsion", "endo": "N"}])
        path = write_manifest(tmp_path, doc)
        main(["verify", path, "--format", "json", "--seed", "11"])
        assert json.loads(capsys.readouterr().out)["seed"] == 11


class TestSubcommands:
    def test_torsion_command(self, tmp_path, capsys):
        doc = n_manifest()
        code = main(
            ["torsion", write_manifest(tmp_path, doc), "N", "--format", "json"]
        )
        assert code == EXIT_FAIL
        doc_out = json.loads(capsys.readouterr().out)
        assert doc_out["checks"][0]["residuals"][0]["value"] == "1"

    def test_decompose_command(self, tmp_path, capsys):
        doc = n_manifest(
            algebroids={"A": {"anchor": "N", "correction": "auto:torsion"}}
        )
        code = main(
            ["decompose", write_manifest(tmp_path, doc), "A", "--format", "json"]
        )
        assert code == EXIT_PASS
        record = json.loads(capsys.readouterr().out)["checks"][0]
        assert record["details"]["L"]["entries"] == {"3,4": ["-1", "0", "0", "0"]}

    def test_build_emits_manifest_fragment(self, tmp_path, capsys):
        code = main(
            [
                "build",
                write_manifest(tmp_path, n_manifest()),
                "idempotent:N",
                "--format",
                "json",
            ]
        )
        assert code == EXIT_PASS
        fragment = json.loads(capsys.readouterr().out)
        alg = fragment["algebroids"]["idempotent:N"]
        assert alg["anchor_matrix"][0] == ["1", "0", "0", "-z"]
        assert alg["correction"]["entries"] == {"3,4": ["-1", "0", "0", "0"]}

    def test_build_unknown_construction_exit_two(self, tmp_path, capsys):
        code = main(
            ["build", write_manifest(tmp_path, n_manifest()), "complexify:N"]
        )
        assert code == EXIT_ERROR
        capsys.readouterr()

    def test_build_rejects_invalid_input(self, tmp_path, capsys):
        code = main(["build", write_manifest(tmp_path, n_manifest()), "complex:N"])
        assert code == EXIT_ERROR
        capsys.readouterr()
