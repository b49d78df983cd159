import json
from pathlib import Path

import pytest

from z2band.src.cli import (
    EXIT_BRANCH,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    TRIM_COLUMNS,
    main,
    parse_grid,
    parse_signs,
)
from z2band.src.config import TOLERANCES
from z2band.src.errors import BranchAmbiguous, ParseError

DATA = Path(__file__).parent / "data"

pytestmark = pytest.mark.integration


def run(capsys, *argv) -> tuple:
    """Run the CLI and return (exit code, stdout, stderr)."""
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv) -> tuple:
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestArguments:
    """Test suite for command-line value parsing"""

    def test_grid(self):
        """Comma-separated sizes of at least 3"""
        assert parse_grid("24,24") == (24, 24)
        with pytest.raises(ParseError):
            parse_grid("2,8")
        with pytest.raises(ParseError):
            parse_grid("a,b")

    def test_signs(self):
        """+, -, +1 and -1 are accepted"""
        assert parse_signs("-,+,+1,-1,1") == [-1, 1, 1, -1, 1]
        with pytest.raises(ParseError):
            parse_signs("+,0")


class TestValidateCommand:
    """Test suite for `validate`"""

    def test_builtin_passes(self, capsys):
        """dvec:m=1 validates with exit 0"""
        code, data = run_json(capsys, "validate", "--builtin", "dvec:m=1", "--density", "8")
        assert code == EXIT_OK
        assert data["passed"] is True

    def test_phase_builtin(self, capsys):
        """phase:k=1 is valid by construction"""
        assert run(capsys, "validate", "--builtin", "phase:k=1")[0] == EXIT_OK

    def test_broken_file(self, capsys):
        """A missing hopping partner exits 1 and names the displacement"""
        code, data = run_json(capsys, "validate", "--model", str(DATA / "broken.tb"))
        assert code == EXIT_FAILURE
        assert data["passed"] is False
        assert data["displacement"] == [1]

    def test_gapless_file(self, capsys):
        """A gapless model exits 1 and reports the minimum gap"""
        code, data = run_json(capsys, "validate", "--model", str(DATA / "gapless.tb"), "--density", "8")
        assert code == EXIT_FAILURE
        assert data["passed"] is False
        assert data["min_gap"] < TOLERANCES.gap_min
        assert any(reason.startswith("gap closes") for reason in data["failures"])


class TestInvariantCommand:
    """Test suite for `invariant`"""

    def test_phase_models(self, capsys):
        """phase:k=1 is nontrivial, phase:k=2 is trivial"""
        code, data = run_json(capsys, "invariant", "--builtin", "phase:k=1", "--space", "t1")
        assert code == EXIT_OK
        assert data["nu"] == -1
        assert [t["sign"] for t in data["trims"]] == [-1, 1]
        _, data = run_json(capsys, "invariant", "--builtin", "phase:k=2")
        assert data["nu"] == 1

    def test_dvec(self, capsys):
        """dvec:m=1 on T^2 gives nu = -1 with cobordism and tqft tables"""
        code, data = run_json(capsys, "invariant", "--builtin", "dvec:m=1", "--space", "t2",
                              "--path-samples", "128")
        assert code == EXIT_OK
        assert data["nu"] == -1
        assert len(data["cobordism"]) == 2
        assert data["tqft"][0]["nu"] == -1

    def test_flat_follows_space(self, capsys):
        """Plain flat takes its dimension from --space"""
        code, data = run_json(capsys, "invariant", "--builtin", "flat", "--space", "t2")
        assert code == EXIT_OK
        assert data["space"] == "t2"
        assert data["nu"] == 1

    def test_csv_table(self, capsys):
        """--format csv prints one row per fixed point"""
        code, out, _ = run(capsys, "invariant", "--builtin", "phase:k=1", "--format", "csv")
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == ",".join(TRIM_COLUMNS)
        assert len(lines) == 3
        assert lines[1].startswith("Γ,0,-1,")

    def test_output_file(self, capsys, tmp_path):
        """--output writes the same JSON to a file instead of stdout"""
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "invariant", "--builtin", "phase:k=3", "--output", str(target))
        assert code == EXIT_OK
        assert out == ""
        printed = run(capsys, "invariant", "--builtin", "phase:k=3")[1]
        assert target.read_text(encoding="utf-8") == printed
        assert json.loads(printed)["nu"] == -1

    def test_deterministic(self, capsys):
        """Two runs print byte-identical JSON"""
        argv = ("invariant", "--builtin", "dvec:m=1", "--path-samples", "64")
        first = run(capsys, *argv)[1]
        second = run(capsys, *argv)[1]
        assert first == second

    def test_branch_ambiguous(self, capsys, mocker):
        """An ambiguous square-root branch exits 3"""
        mocker.patch("z2band.src.cli.kane_mele", side_effect=BranchAmbiguous("step of 3.1 rad"))
        code, _, err = run(capsys, "invariant", "--builtin", "phase:k=1")
        assert code == EXIT_BRANCH
        assert "--path-samples" in err


class TestBerryCommand:
    """Test suite for `berry`"""

    def test_lower_half(self, capsys):
        """The spin-up block of dvec:m=1 has chern -1"""
        code, data = run_json(capsys, "berry", "--builtin", "dvec:m=1", "--band", "lower-half")
        assert code == EXIT_OK
        assert data["chern"] == -1

    @pytest.mark.slow
    def test_all_occupied(self, capsys):
        """Time reversal forces chern 0 on the full occupied bundle"""
        code, data = run_json(capsys, "berry", "--builtin", "dvec:m=1", "--grid", "24,24")
        assert code == EXIT_OK
        assert data["chern"] == 0

    def test_flat(self, capsys):
        """Plain flat takes its dimension from --grid and has chern 0"""
        code, data = run_json(capsys, "berry", "--builtin", "flat", "--grid", "8,8")
        assert code == EXIT_OK
        assert data["chern"] == 0
        assert data["grid"] == [8, 8]

    def test_flat_explicit_dim(self, capsys):
        """dim= still fixes the dimension of flat"""
        code, _, err = run(capsys, "berry", "--builtin", "flat:dim=1", "--grid", "8,8")
        assert code == EXIT_USAGE
        assert "1D" in err

    def test_no_half_block(self, capsys):
        """--band lower-half needs a model with a half block"""
        code, _, _ = run(capsys, "berry", "--builtin", "flat:dim=2", "--band", "lower-half")
        assert code == EXIT_USAGE

    def test_curvature_csv(self, capsys, tmp_path):
        """--csv writes kx, ky, curvature per plaquette"""
        target = tmp_path / "curvature.csv"
        code, _, _ = run(capsys, "berry", "--builtin", "dvec:m=1", "--band", "lower-half",
                         "--grid", "8,8", "--csv", str(target))
        lines = target.read_text(encoding="utf-8").splitlines()
        assert code == EXIT_OK
        assert lines[0] == "kx,ky,curvature"
        assert len(lines) == 65


class TestTqftCommand:
    """Test suite for `tqft`"""

    def test_weak_phase_signs(self, capsys):
        """Opposite -1 signs on T^3: trivial torus, nontrivial planes"""
        code, data = run_json(capsys, "tqft", "--signs=-,+,+,+,-,+,+,+", "--space", "t3",
                              "--pairing", "axis-z", "--grouping", "0")
        assert code == EXIT_OK
        assert data["nu"] == 1
        assert data["monoidal"]["passed"] is True
        assert [row["z"] for row in data["tqft"] if row["dim"] == 2] == [1, 1]
        assert data["pairing"]["name"] == "axis-z"

    def test_trivial_signs(self, capsys):
        """All positive signs give an all-zero table"""
        code, data = run_json(capsys, "tqft", "--signs", "+,+,+,+,+,+,+,+", "--space", "t3")
        assert code == EXIT_OK
        assert all(row["z"] == 0 for row in data["tqft"])
        assert len(data["tqft"]) == 15

    def test_from_model(self, capsys):
        """phase:k=1 gives Z(Γ) = 1 and Z(X) = 0"""
        code, data = run_json(capsys, "tqft", "--builtin", "phase:k=1")
        rows = {row["carrier"]: row["z"] for row in data["tqft"]}
        assert code == EXIT_OK
        assert rows == {"T^1": 1, "Γ": 1, "X": 0}

    def test_human_table(self, capsys):
        """Human output ends with the monoidal verdict"""
        code, out, _ = run(capsys, "tqft", "--signs=-,+", "--space", "t1", "--format", "human")
        assert code == EXIT_OK
        assert out.splitlines()[-1] == "monoidal: PASS"
        assert "nu = -1" in out


class TestUsageErrors:
    """Test suite for exit code 2"""

    def test_model_and_builtin(self, capsys):
        """--model and --builtin are exclusive"""
        code, _, err = run(capsys, "invariant", "--builtin", "flat", "--model", str(DATA / "flat.tb"))
        assert code == EXIT_USAGE
        assert "exactly one" in err

    def test_bad_values(self, capsys):
        """Unknown spaces, short grids, bad pairings and sign counts"""
        assert run(capsys, "invariant", "--builtin", "flat", "--space", "t4")[0] == EXIT_USAGE
        assert run(capsys, "berry", "--builtin", "flat:dim=2", "--grid", "2,2")[0] == EXIT_USAGE
        assert run(capsys, "tqft", "--signs=-,+", "--space", "t1", "--pairing", "diag")[0] == EXIT_USAGE
        assert run(capsys, "tqft", "--signs=-,+,+", "--space", "t2")[0] == EXIT_USAGE
        assert run(capsys, "invariant", "--builtin", "phase:k=1", "--space", "t2")[0] == EXIT_USAGE

    def test_unparsable_file(self, capsys, tmp_path):
        """A malformed model file is a usage error"""
        path = tmp_path / "bad.tb"
        path.write_text("[lattice]\ndim = two\n", encoding="utf-8")
        assert run(capsys, "invariant", "--model", str(path))[0] == EXIT_USAGE

    def test_unknown_command(self):
        """argparse rejects unknown commands with exit 2"""
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2
