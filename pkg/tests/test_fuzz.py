"""
Tests for the seeded cross-check harness.
"""

import random

import pytest

from src import fuzz
from src.diagram import new_skew_ferrers
from src.fuzz import (
    CLAIM_PROPERTIES, ENGINE_PROPERTIES, PRESETS, FuzzFailure, FuzzInstance, Violation,
    check_diagram, generate_instances, random_parameters, run_fuzz, shrink,
)
from src.models.betti import BettiTable
from src.utils.errors import SizeLimitError, ValidationError

# Smallest shape whose last column is not concentrated
SKEW_COUNTEREXAMPLE = ((3, 2, 2), (1, 1, 0))


class TestGeneration:
    """Tests for instance generation."""

    def test_same_seed_same_instances(self):
        """A seed fixes the instance list."""
        assert generate_instances(7, 20, 5, 5) == generate_instances(7, 20, 5, 5)

    def test_different_seeds_differ(self):
        """Different seeds draw different shapes."""
        assert generate_instances(1, 20, 6, 6) != generate_instances(2, 20, 6, 6)

    def test_presets_cycled(self):
        """Presets are used in turn, in declaration order."""
        instances = generate_instances(3, 8, 4, 4)
        assert [i.preset for i in instances] == list(PRESETS) * 2

    @pytest.mark.parametrize("preset", sorted(PRESETS))
    def test_presets_give_valid_diagrams(self, preset):
        """Every preset draws (lambda, mu) within the bounds."""
        rng = random.Random(11)
        for _ in range(50):
            lam, mu = random_parameters(rng, 5, 6, preset)
            d = new_skew_ferrers(lam, mu)
            assert d.num_rows <= 5 and d.num_cols <= 6

    def test_ferrers_preset(self):
        """The ferrers preset keeps mu = 0."""
        for instance in generate_instances(5, 10, 5, 5, ["ferrers"]):
            assert set(instance.mu) == {0}

    def test_narrow_preset(self):
        """The narrow preset keeps at most two cells per row."""
        for instance in generate_instances(5, 10, 5, 5, ["narrow"]):
            assert all(a - b <= 2 for a, b in zip(instance.lam, instance.mu))

    def test_instances_have_cells(self):
        """Empty diagrams are redrawn."""
        for instance in generate_instances(9, 30, 3, 3):
            assert not new_skew_ferrers(instance.lam, instance.mu).is_empty

    def test_zero_count(self):
        """count 0 gives no instances."""
        assert generate_instances(1, 0, 4, 4) == []

    @pytest.mark.parametrize("count, rows, cols, presets", [
        (-1, 4, 4, None),
        (5, 0, 4, None),
        (5, 4, 4, ["tall"]),
    ])
    def test_invalid(self, count, rows, cols, presets):
        """Negative counts, empty bounds and unknown presets are rejected."""
        with pytest.raises(ValidationError):
            generate_instances(1, count, rows, cols, presets)

    def test_bounds_limited(self):
        """Bounds above the fuzz ceiling are refused."""
        with pytest.raises(SizeLimitError):
            generate_instances(1, 5, 30, 4)


class TestChecks:
    """Tests for the property suite on single diagrams."""

    @pytest.mark.parametrize("lam, mu", [
        ((1,), (0,)),
        ((2, 2), (0, 0)),
        ((3, 3, 2), (1, 0, 0)),
        ((4, 3, 3, 1), (2, 1, 0, 0)),
        ((3, 3, 2), (3, 1, 0)),
    ])
    def test_all_properties_hold(self, lam, mu):
        """Shapes where every engine and claim holds."""
        assert check_diagram(new_skew_ferrers(lam, mu)) is None

    def test_last_column_counterexample(self):
        """A tree with an induced claw and an induced five-path breaks concentration."""
        violation = check_diagram(new_skew_ferrers(*SKEW_COUNTEREXAMPLE))
        assert violation.prop == "last-column"
        assert violation.kind == "counterexample"
        assert "counterexample" in violation.describe()

    def test_property_kinds(self):
        """Engine properties are disagreements, the rest are claims."""
        assert set(ENGINE_PROPERTIES).isdisjoint(CLAIM_PROPERTIES)
        for prop in ENGINE_PROPERTIES:
            assert Violation(prop, "").kind == "disagreement"
        for prop in CLAIM_PROPERTIES:
            assert Violation(prop, "").kind == "counterexample"

    def test_shrink_keeps_failure(self):
        """Shrinking stops at the smallest diagram that still fails."""
        start = new_skew_ferrers((2, 2), (0, 0))
        small = shrink(start, lambda d: d.num_cells >= 2)
        assert small.num_cells == 2

    def test_shrink_to_single_cell(self):
        """An always-failing predicate shrinks to one cell."""
        start = new_skew_ferrers((4, 3, 3, 1), (2, 1, 0, 0))
        assert shrink(start, lambda d: True).num_cells == 1


class TestRunFuzz:
    """Tests for complete runs."""

    def test_small_run_passes(self):
        """Engines agree on a short run."""
        result = run_fuzz(seed=1, count=6, max_rows=3, max_cols=3)
        assert result.ok
        assert result.checked == 6

    def test_zero_count_is_vacuous(self):
        """count 0 checks nothing and passes."""
        result = run_fuzz(seed=1, count=0, max_rows=4, max_cols=4)
        assert result.ok and result.checked == 0
        assert result.claims_hold

    def test_disagreement_stops_and_shrinks(self, monkeypatch):
        """A broken engine stops the run at the first instance."""
        monkeypatch.setattr(fuzz, "nagel_reiner_betti", lambda diagram: BettiTable())
        result = run_fuzz(seed=4, count=3, max_rows=4, max_cols=4)
        assert not result.ok
        assert result.checked == 1
        assert result.failure.violation.prop == "oracle-vs-counting"
        assert result.failure.violation.kind == "disagreement"
        assert result.failure.reproducer == ((1,), (0,))

    def test_counterexamples_do_not_stop_the_run(self, monkeypatch):
        """Claim violations are collected and every instance is checked."""
        monkeypatch.setattr(fuzz, "check_diagram",
                            lambda diagram, *args: Violation("last-column", "forced"))
        result = run_fuzz(seed=2, count=3, max_rows=3, max_cols=3)
        assert result.ok
        assert result.checked == 3
        assert not result.claims_hold
        assert [c.instance.index for c in result.counterexamples] == [0, 1, 2]
        assert all(c.reproducer == ((1,), (0,)) for c in result.counterexamples)

    def test_reproducer_command(self):
        """The reproducer is a runnable command line."""
        failure = FuzzFailure(FuzzInstance(0, "skew", (3, 2), (1, 0)),
                              Violation("rect-nu", "rect = 2 but nu = 1"),
                              ((2, 1), (1, 0)))
        assert failure.reproducer_command() == \
            "skewbetti ferrers betti --crosscheck --lambda 2,1 --mu 1,0"
        data = failure.to_dict()
        assert data["reproducer"] == {"lambda": [2, 1], "mu": [1, 0]}
        assert data["kind"] == "counterexample"


class TestFullScale:
    """Seeded runs at 6 x 6, as the defaults configure them."""

    def test_hundred_mixed_instances(self):
        """Engines agree on all 100; the first refuted claim shrinks to the known tree."""
        result = run_fuzz(seed=1, count=100, max_rows=6, max_cols=6)
        assert result.ok
        assert result.checked == 100
        assert result.counterexamples
        assert all(c.violation.kind == "counterexample" for c in result.counterexamples)

        first = result.counterexamples[0]
        assert (first.instance.lam, first.instance.mu) == ((6, 5, 5, 2), (4, 4, 3, 2))
        assert first.violation.prop == "last-column"
        assert first.reproducer == SKEW_COUNTEREXAMPLE

    def test_fifty_ferrers_instances(self):
        """Ferrers shapes satisfy every engine and every claim."""
        result = run_fuzz(seed=3, count=50, max_rows=6, max_cols=6, presets=["ferrers"])
        assert result.ok
        assert result.claims_hold
        assert result.checked == 50
