"""Tests for the command line: reports, summaries and exit codes."""

import json

import pytest

from src.phinmod.codec import write_module_file
from src.phinmod.families import CATALOG
from src.phinmod.main import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, main
from src.phinmod.module import Filtration, HodgeType, JordanHint, PhiNModule, ShapeId, standard_monodromy, standard_phi


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, json.loads(out) if out.strip() else None, err


@pytest.fixture
def module_file(tmp_path, instance):
    """Write a family representative and return its path."""
    def write(name, family, eigen, fil=(), r=1, s=2):
        path = tmp_path / f"{name}.json"
        write_module_file(CATALOG.instantiate(instance(family, eigen, fil, r, s), check=False), path)
        return str(path)
    return write


@pytest.fixture
def inadmissible_file(tmp_path, field):
    phi = standard_phi(field, ShapeId.CRYS6, [4, 2, 1])
    m = PhiNModule(field, HodgeType(1, 2), phi, standard_monodromy(field, 0),
                   Filtration.from_vectors(field, (0, 0, 1), [(0, 0, 1), (0, 1, 0)]),
                   JordanHint(tuple(phi[i, i] for i in range(3))))
    path = tmp_path / "bad.json"
    write_module_file(m, path)
    return str(path)


def test_validate(capsys, module_file, tmp_path):
    """Test validate on a valid and an invalid module."""
    code, report, _ = run_cli(capsys, "validate", module_file("m", "Cris14", [4, 2, 1]))
    assert code == EXIT_OK
    assert report["valid"] is True
    assert report["command"] == "validate"

    doc = json.loads((tmp_path / "m.json").read_text())
    doc["N"] = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
    (tmp_path / "n.json").write_text(json.dumps(doc))
    code, report, _ = run_cli(capsys, "validate", str(tmp_path / "n.json"))
    assert code == EXIT_NEGATIVE
    assert "N not nilpotent" in report["violations"]


def test_admissible(capsys, module_file, inadmissible_file):
    """Test the admissibility verdict and the optional witness."""
    code, report, err = run_cli(capsys, "admissible", module_file("m", "Cris14", [4, 2, 1]))
    assert code == EXIT_OK and report["admissible"] is True

    code, report, _ = run_cli(capsys, "admissible", inadmissible_file)
    assert code == EXIT_NEGATIVE
    assert "witness" not in report

    code, report, _ = run_cli(capsys, "admissible", "--witness", inadmissible_file)
    assert report["witness"]["t_H"] == 2


def test_classify(capsys, module_file, inadmissible_file):
    """Test classification with the reducibility report."""
    code, report, err = run_cli(capsys, "classify", module_file("m", "Cris14", [4, 2, 1]))
    assert code == EXIT_OK
    assert report["family"]["id"] == "Cris14"
    assert report["reducibility"]["kind"] == "Decomposable"
    assert "Cris14" in err

    code, report, _ = run_cli(capsys, "classify", inadmissible_file)
    assert code == EXIT_NEGATIVE
    assert report["admissible"] is False


def test_iso(capsys, module_file):
    """Test isomorphism verdicts and summaries."""
    a = module_file("a", "Cris4", [2], [3])
    b = module_file("b", "Cris4", [2], [4])
    code, report, _ = run_cli(capsys, "iso", "--witness", a, a)
    assert code == EXIT_OK
    assert "witness" in report

    code, report, err = run_cli(capsys, "iso", a, b)
    assert code == EXIT_NEGATIVE
    assert report["isomorphic"] is False
    assert "not isomorphic" in err


def test_enumerate(capsys):
    """Test that rank two at (1, 2) lists only R2_3."""
    code, report, err = run_cli(capsys, "enumerate", "--r", "1", "--s", "2", "--rank-n", "2")
    assert code == EXIT_OK
    assert [f["id"] for f in report["families"]] == ["R2_3"]
    assert report["n_rank"] == 2
    assert err.startswith("1 families")


def test_instantiate(capsys):
    """Test building a representative from parameters."""
    params = json.dumps({"eigen_params": [4, 2, 1]})
    code, report, _ = run_cli(capsys, "instantiate", "--family", "Cris14", "--params", params,
                              "--r", "1", "--s", "2")
    assert code == EXIT_OK
    assert report["family"]["id"] == "Cris14"
    assert report["reducibility"]["kind"] == "Decomposable"


def test_instantiate_constraint_violation(capsys):
    """Test that violated family constraints are an error."""
    params = json.dumps({"eigen_params": [2], "hodge": {"r": 1, "s": 3}})
    code, report, err = run_cli(capsys, "instantiate", "--family", "Cris1", "--params", params)
    assert code == EXIT_ERROR
    assert report["error"] == "CatalogConstraintError"
    assert "s = 2r" in err


class TestErrors:

    def test_unknown_command(self, capsys):
        """Test that a usage error exits with 2."""
        assert main(["frobnicate"]) == EXIT_ERROR

    def test_missing_file(self, capsys, tmp_path):
        """Test that an unreadable file is reported as a format error."""
        code, report, _ = run_cli(capsys, "classify", str(tmp_path / "absent.json"))
        assert code == EXIT_ERROR
        assert report["error"] == "format"

    def test_invalid_module_is_error_for_other_commands(self, capsys, tmp_path, module_file):
        """Test that only validate treats invariant violations as a negative answer."""
        doc = json.loads(open(module_file("m", "Cris14", [4, 2, 1])).read())
        doc["phi"] = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
        (tmp_path / "z.json").write_text(json.dumps(doc))
        code, report, _ = run_cli(capsys, "admissible", str(tmp_path / "z.json"))
        assert code == EXIT_ERROR
        assert "phi not invertible" in report["violations"]


def test_certify_empty_campaign(capsys):
    """Test that a zero-sample campaign passes."""
    code, report, err = run_cli(capsys, "certify", "--r", "1", "--s", "2", "--samples", "0")
    assert code == EXIT_OK
    assert report["passed"] is True
    assert "empty campaign" in err


def test_version(capsys):
    """Test --version."""
    assert main(["--version"]) == EXIT_OK
