"""
Tests for the command-line entry point: output shape, exit codes and
determinism.
"""

import json

import pytest

from src import fuzz
from src import main as cli
from src.main import main
from src.fuzz import Violation
from src.models.betti import BettiTable
from src.utils.constants import (
    EXIT_CHECK_FAILED, EXIT_OK, EXIT_STRUCTURAL, EXIT_VALIDATION,
    STAIRCASE_LAMBDA, STAIRCASE_MU,
)
from src.utils.errors import StructuralError


def _csv(values):
    return ",".join(map(str, values))


def _run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestFerrersCommand:
    """Tests for `ferrers`."""

    def test_decompose_staircase(self, capsys):
        """decompose reports pieces and empties of the staircase."""
        code, doc = _run_json(capsys, "ferrers", "decompose",
                              "--lambda", _csv(STAIRCASE_LAMBDA), "--mu", _csv(STAIRCASE_MU))
        assert code == EXIT_OK
        details = doc["details"]
        assert details["cells"] == 18
        assert details["rect"] == 3
        assert details["spherical"] is False
        assert [p["top_cell"] for p in details["pieces"]] == [[1, 1], [3, 4], [6, 6]]
        assert details["empties"] == [{"kind": "row", "labels": [2]},
                                      {"kind": "column", "labels": [7]}]

    def test_decompose_text(self, capsys):
        """The text rendering lists empties and rect."""
        code = main(["ferrers", "decompose", "--lambda", _csv(STAIRCASE_LAMBDA),
                     "--mu", _csv(STAIRCASE_MU)])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "empty row rectangle {x2}" in out
        assert "empty column rectangle {y7}" in out
        assert "rect = 3, spherical = False" in out

    def test_betti_square_all_methods(self, capsys):
        """All three engines agree on the 2 x 2 square."""
        code, doc = _run_json(capsys, "ferrers", "betti", "--lambda", "2,2", "--crosscheck")
        assert code == EXIT_OK
        assert doc["agreement"] is True
        methods = [c["method"] for c in doc["computations"]]
        assert methods == ["hochster", "nagel-reiner", "corso-nagel"]
        for comp in doc["computations"]:
            assert comp["betti"] == [[0, 2, 4], [1, 3, 4], [2, 4, 1]]
            assert comp["extremal"] == [2, 4, 1]
        assert doc["details"]["closed_form"] == {"totals": [4, 4, 1], "pd": 2}

    def test_betti_both_fields(self, capsys):
        """--field both runs GF(2) and the rationals."""
        code, doc = _run_json(capsys, "ferrers", "betti", "--lambda", "3,3,2", "--mu", "1,0,0",
                              "--method", "hochster", "--field", "both")
        assert code == EXIT_OK
        assert [c["field"] for c in doc["computations"]] == ["gf2", "rational"]
        assert doc["agreement"] is True

    def test_skew_shape_skips_closed_form(self, capsys):
        """The closed form is skipped on skew shapes with a note."""
        code, doc = _run_json(capsys, "ferrers", "betti", "--lambda", "3,2", "--mu", "1,0")
        assert code == EXIT_OK
        assert "closed form skipped: skew shape" in doc["notes"]

    def test_explicit_closed_form_on_skew_shape(self, capsys):
        """Asking for the closed form on a skew shape is an error."""
        code = main(["ferrers", "betti", "--lambda", "3,2", "--mu", "1,0",
                     "--method", "corso-nagel"])
        assert code == EXIT_VALIDATION
        assert "corso-nagel" in capsys.readouterr().err

    def test_pdreg(self, capsys):
        """pdreg reports pd, reg and rect."""
        code, doc = _run_json(capsys, "ferrers", "pdreg", "--lambda", "2,2", "--crosscheck")
        assert code == EXIT_OK
        assert doc["details"] == {"pd": 2, "reg": 2, "rect": 1}

    def test_empty_diagram(self, capsys):
        """A diagram without cells is degenerate and vacuously spherical."""
        code, doc = _run_json(capsys, "ferrers", "betti", "--lambda", "2", "--mu", "2")
        assert code == EXIT_OK
        assert doc["details"]["degenerate"] is True
        assert doc["details"]["spherical"] is True
        assert any("no cells" in note for note in doc["notes"])

    @pytest.mark.parametrize("argv, fragment", [
        (["--lambda", "1,2"], "nonincreasing"),
        (["--lambda", "7,x"], "item 2"),
        (["--lambda", "2,1", "--mu", "0,2"], "mu is not nonincreasing"),
        (["--lambda", "2,1", "--mu", "2,2"], "lambda_2 = 1 < mu_2 = 2"),
    ])
    def test_invalid_input(self, capsys, argv, fragment):
        """Invalid parameters exit 2 with a precise message."""
        code = main(["ferrers", "betti", *argv])
        assert code == EXIT_VALIDATION
        assert fragment in capsys.readouterr().err

    def test_disagreement_exits_three(self, capsys, monkeypatch):
        """Disagreeing engines exit 3."""
        monkeypatch.setattr(cli, "nagel_reiner_betti",
                            lambda diagram: BettiTable.from_counts({(0, 2): 99}))
        code = main(["ferrers", "betti", "--lambda", "2,1", "--crosscheck"])
        assert code == EXIT_CHECK_FAILED
        assert "agreement: NO" in capsys.readouterr().out

    def test_structural_error_exits_four(self, capsys, monkeypatch):
        """Internal consistency errors exit 4."""
        def broken(diagram):
            raise StructuralError("top-left position is not a cell")
        monkeypatch.setattr(cli, "rectangular_decomposition", broken)
        code = main(["ferrers", "decompose", "--lambda", "2,1"])
        assert code == EXIT_STRUCTURAL
        assert "internal consistency" in capsys.readouterr().err


class TestGraphCommand:
    """Tests for `graph`."""

    def test_single_edge(self, capsys):
        """graph betti on one edge."""
        code, doc = _run_json(capsys, "graph", "betti", "--edges", "1-2")
        assert code == EXIT_OK
        assert doc["computations"][0]["betti"] == [[0, 2, 1]]

    def test_six_path(self, capsys):
        """P6 has a concentrated corner at (3, 6)."""
        code, doc = _run_json(capsys, "graph", "betti", "--edges", "1-2,2-3,3-4,4-5,5-6")
        comp = doc["computations"][0]
        assert (comp["pd"], comp["reg"]) == (3, 3)
        assert comp["extremal"] == [3, 6, 1]
        assert comp["concentrated"] is True

    def test_nu(self, capsys):
        """graph nu reports nu and the count."""
        code, doc = _run_json(capsys, "graph", "nu", "--edges", "1-2,2-3,3-4,4-5,5-6")
        assert doc["details"] == {"nu": 2, "count": 3}

    def test_blocks(self, capsys):
        """graph blocks lists cut vertices and blocks."""
        code, doc = _run_json(capsys, "graph", "blocks", "--edges", "1-2,1-3,2-3,3-4,3-5,4-5")
        assert doc["details"] == {"cut_vertices": [3], "blocks": [[1, 2, 3], [3, 4, 5]]}

    def test_loop_rejected(self, capsys):
        """Loops exit 2."""
        assert main(["graph", "betti", "--edges", "1-1"]) == EXIT_VALIDATION

    def test_vertex_limit(self, capsys):
        """--max-vertices refuses larger graphs."""
        edges = _csv(f"{i}-{i + 1}" for i in range(1, 8))
        code = main(["graph", "betti", "--edges", edges, "--max-vertices", "6"])
        assert code == EXIT_VALIDATION
        assert "limited to 6 vertices" in capsys.readouterr().err


class TestClosedCommand:
    """Tests for `closed`."""

    def test_diamond(self, capsys):
        """closed verifies the diamond prediction."""
        code, doc = _run_json(capsys, "closed", "--edges", "1-2,1-3,2-3,2-4,3-4")
        assert code == EXIT_OK
        details = doc["details"]
        assert details["closed"] is True
        assert details["mu"] == [1, 0, 0, 0]
        prediction = details["prediction"]
        assert (prediction["p"], prediction["r"], prediction["value"]) == (3, 3, 1)
        assert details["prediction_verified"] is True
        assert any("J_G itself is not resolved" in note for note in doc["notes"])

    def test_glued_diamonds(self, capsys):
        """closed verifies the glued diamonds with --crosscheck."""
        code, doc = _run_json(capsys, "closed", "--edges",
                              "1-2,1-3,2-3,2-4,3-4,4-5,4-6,5-6,5-7,6-7", "--crosscheck")
        assert code == EXIT_OK
        prediction = doc["details"]["prediction"]
        assert (prediction["p"], prediction["r"], prediction["value"]) == (7, 5, 1)
        assert doc["details"]["cut_vertices"] == [4]
        assert doc["details"]["prediction_verified"] is True

    def test_complete_graph(self, capsys):
        """K4 is closed but outside the formula."""
        code, doc = _run_json(capsys, "closed", "--edges", "1-2,1-3,1-4,2-3,2-4,3-4")
        assert code == EXIT_OK
        assert doc["details"]["prediction"]["applicable"] is False
        assert any("block regularity 2" in note for note in doc["notes"])

    def test_claw_not_closed(self, capsys):
        """The claw is reported as not closed."""
        code, doc = _run_json(capsys, "closed", "--edges", "1-2,1-3,1-4")
        assert code == EXIT_OK
        assert doc["details"] == {"closed": False}
        assert doc["computations"] == []

    def test_labeling_not_closed(self, capsys):
        """A supplied labeling that is not closed is reported."""
        code, doc = _run_json(capsys, "closed", "--edges", "1-2,2-3", "--labeling", "2,1,3")
        assert code == EXIT_OK
        assert doc["details"] == {"closed": False}

    def test_bad_labeling(self, capsys):
        """A labeling missing vertices exits 2."""
        assert main(["closed", "--edges", "1-2,2-3", "--labeling", "1,2"]) == EXIT_VALIDATION


class TestFuzzCommand:
    """Tests for `fuzz`."""

    def test_zero_count(self, capsys):
        """count 0 is a vacuous pass."""
        code, doc = _run_json(capsys, "fuzz", "--count", "0")
        assert code == EXIT_OK
        assert doc["details"] == {"checked": 0, "failure": None, "counterexamples": []}

    def test_small_run(self, capsys):
        """A short run checks every instance."""
        code, doc = _run_json(capsys, "fuzz", "--seed", "1", "--count", "3",
                              "--max-rows", "3", "--max-cols", "3")
        assert code == EXIT_OK
        assert doc["details"]["checked"] == 3

    def test_bounds_refused(self, capsys):
        """Bounds above the ceiling exit 2."""
        assert main(["fuzz", "--max-rows", "30"]) == EXIT_VALIDATION

    def test_counterexample_reported(self, capsys, monkeypatch):
        """Refuted claims are reported but only fail the run with --strict."""
        monkeypatch.setattr(fuzz, "check_diagram",
                            lambda diagram, *args: Violation("last-column", "forced"))
        argv = ["fuzz", "--seed", "1", "--count", "2", "--max-rows", "3", "--max-cols", "3"]
        code, doc = _run_json(capsys, *argv)
        assert code == EXIT_OK
        found = doc["details"]["counterexamples"]
        assert [c["kind"] for c in found] == ["counterexample", "counterexample"]
        assert doc["details"]["failure"] is None
        assert any("refutes the last-column claim" in note for note in doc["notes"])

        assert main([*argv, "--strict"]) == EXIT_CHECK_FAILED
        assert "COUNTEREXAMPLE last-column" in capsys.readouterr().out


class TestOutput:
    """Determinism and option handling."""

    def test_json_is_deterministic(self, capsys):
        """Identical runs print identical JSON."""
        argv = ["ferrers", "betti", "--lambda", "3,3,2", "--mu", "1,0,0", "--json"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first

    def test_timing_only_on_request(self, capsys):
        """Timing appears in JSON only with --timing."""
        _, doc = _run_json(capsys, "graph", "betti", "--edges", "1-2")
        assert "elapsed_s" not in doc
        main(["graph", "betti", "--edges", "1-2", "--json", "--timing"])
        assert "elapsed_s" in json.loads(capsys.readouterr().out)

    def test_threads_must_be_positive(self, capsys):
        """--threads 0 exits 2."""
        assert main(["graph", "betti", "--edges", "1-2", "--threads", "0"]) == EXIT_VALIDATION

    def test_config_field_default(self, capsys, isolated_config):
        """The stored field is the default."""
        isolated_config.mkdir(parents=True)
        (isolated_config / "config.json").write_text(json.dumps({"field": "rational"}))
        _, doc = _run_json(capsys, "graph", "betti", "--edges", "1-2")
        assert doc["computations"][0]["field"] == "rational"

    def test_text_render(self, capsys):
        """Text output shows the method line and totals."""
        assert main(["graph", "betti", "--edges", "1-2,3-4"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "[hochster / gf2] pd=1 reg=3" in out
        assert "total:" in out
