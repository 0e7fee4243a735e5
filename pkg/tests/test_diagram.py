"""
Tests for skew Ferrers diagrams and their rectangular decomposition.

Validates:
  - Construction from (lambda, mu) and its validation errors
  - Restriction keeps labels and the staircase shape
  - The decomposition of the 7x7 staircase: 3 pieces, empties {x2} then {y7}
  - Partition invariants and the bitmask decomposition used for counting
"""

from itertools import chain, combinations

import pytest

from src.diagram import (
    new_skew_ferrers, cells, restrict, rectangular_decomposition, rect, is_spherical,
    is_degenerate, ferrers_shape, render_diagram, parse_int_list, row_masks,
    spherical_rect, to_parameters,
)
from src.models.diagram import CellDiagram, EmptyKind
from src.utils.constants import STAIRCASE_LAMBDA, STAIRCASE_MU, STAIRCASE_TABLE_LAMBDA
from src.utils.errors import DiagramError, StructuralError, ValidationError


def _staircase():
    return new_skew_ferrers(STAIRCASE_LAMBDA, STAIRCASE_MU)


def _subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


class TestNewSkewFerrers:
    """Tests for building diagrams from (lambda, mu)."""

    def test_staircase_row_x5(self):
        """Row x5 of the staircase sits in columns y4, y5."""
        d = _staircase()
        assert d.num_rows == 7 and d.num_cols == 7
        assert d.row_cols(5) == (4, 5)

    def test_staircase_rows(self):
        """Row intervals and cell count of the staircase."""
        d = _staircase()
        expected = {1: (1, 2, 3), 2: (2, 3), 3: (2, 3, 4, 5), 4: (3, 4, 5),
                    5: (4, 5), 6: (5, 6), 7: (6, 7)}
        for row, cols in expected.items():
            assert d.row_cols(row) == cols

    def test_staircase_has_18_cells(self):
        """Sum of lambda_i - mu_i."""
        assert len(cells(_staircase())) == 18

    def test_full_rectangle(self):
        """mu = 0 with equal parts is a full rectangle."""
        d = new_skew_ferrers((2, 2), (0, 0))
        assert cells(d) == {(1, 1), (1, 2), (2, 1), (2, 2)}

    def test_two_one(self):
        """lambda = (2, 1) has three cells."""
        d = new_skew_ferrers((2, 1), (0, 0))
        assert cells(d) == {(1, 1), (1, 2), (2, 2)}

    def test_equal_parts_give_empty_row(self):
        """lambda_i = mu_i leaves row i empty."""
        d = new_skew_ferrers((3, 2), (1, 2))
        assert d.row_cols(2) == ()
        assert d.nonempty_rows == (1,)

    def test_col_rows(self):
        """Rows meeting each column."""
        d = _staircase()
        assert d.col_rows(4) == (3, 4, 5)
        assert d.col_rows(7) == (7,)

    @pytest.mark.parametrize("lam, mu", [
        ((), ()),                   # empty
        ((2, 3), (0, 0)),           # lambda increases
        ((3, 3), (0, 1)),           # mu increases
        ((2, 1), (0, 2)),           # lambda_2 < mu_2
        ((2, 0), (0, 0)),           # nonpositive part
        ((2, 1), (0, -1)),          # negative mu
        ((2, 1), (0,)),             # length mismatch
    ])
    def test_invalid_parameters(self, lam, mu):
        """Non-monotone or mismatched parameters are rejected."""
        with pytest.raises(DiagramError):
            new_skew_ferrers(lam, mu)

    def test_diagram_error_is_value_error(self):
        """DiagramError is a ValueError."""
        with pytest.raises(ValueError):
            new_skew_ferrers((1, 2), (0, 0))

    def test_broken_staircase_rejected(self):
        """Left endpoints moving left going down is not a staircase."""
        with pytest.raises(DiagramError):
            CellDiagram((1, 2), (1, 2, 3), ((1, 2), (0, 2)))


class TestRestrict:
    """Tests for sub-diagrams D_{X', Y'}."""

    def test_identity(self):
        """Restricting to everything keeps the diagram."""
        d = _staircase()
        assert restrict(d, d.row_labels, d.col_labels) == d

    def test_lower_right_block(self):
        """A lower-right block keeps its cells."""
        d = restrict(_staircase(), range(3, 8), range(4, 8))
        assert d.row_labels == (3, 4, 5, 6, 7)
        assert d.col_labels == (4, 5, 6, 7)
        assert d.row_cols(3) == (4, 5)

    def test_labels_kept(self):
        """Restriction keeps the original labels."""
        d = restrict(_staircase(), [1, 3], [2, 5])
        assert cells(d) == {(1, 2), (3, 2), (3, 5)}

    def test_without_empty_rectangles_is_spherical(self):
        """Dropping the empties leaves a spherical diagram."""
        d = _staircase()
        sub = restrict(d, [r for r in d.row_labels if r != 2],
                       [c for c in d.col_labels if c != 7])
        assert is_spherical(sub)
        assert rect(sub) == 3

    def test_idempotent(self):
        """Restricting twice is restricting once."""
        d = _staircase()
        once = restrict(d, [1, 3, 4, 6], [2, 3, 5, 6])
        assert restrict(once, [1, 3, 4, 6], [2, 3, 5, 6]) == once

    @pytest.mark.parametrize("rows, cols", [([8], [1]), ([1], [0])])
    def test_unknown_label(self, rows, cols):
        """Unknown labels are rejected."""
        with pytest.raises(DiagramError):
            restrict(_staircase(), rows, cols)


class TestRectangularDecomposition:
    """Tests for the piece / empty rectangle split."""

    def test_staircase_pieces(self):
        """Three pieces with tops (1, 1), (3, 4), (6, 6)."""
        dec = rectangular_decomposition(_staircase())
        assert dec.rect == 3
        assert [p.top_cell for p in dec.pieces] == [(1, 1), (3, 4), (6, 6)]

    def test_staircase_empties(self):
        """Empties {x2} then {y7}."""
        dec = rectangular_decomposition(_staircase())
        assert [(e.kind, e.labels) for e in dec.empties] == [
            (EmptyKind.ROW, (2,)), (EmptyKind.COLUMN, (7,)),
        ]
        assert not dec.spherical

    def test_staircase_piece_rectangles(self):
        """Each piece lies in its rows and columns."""
        pieces = rectangular_decomposition(_staircase()).pieces
        assert (pieces[0].rows, pieces[0].cols) == ((1,), (1, 2, 3))
        assert (pieces[1].rows, pieces[1].cols) == ((3, 4, 5), (4, 5))
        assert (pieces[2].rows, pieces[2].cols) == ((6, 7), (6,))

    def test_second_piece_holds_x5_y4(self):
        """(x5, y4) belongs to the piece grown from (x3, y4)."""
        pieces = rectangular_decomposition(_staircase()).pieces
        assert (5, 4) in pieces[1].cells
        assert pieces[1].cells == {(3, 4), (3, 5), (4, 4), (4, 5), (5, 4), (5, 5), (6, 5)}

    def test_table_variant_same_summary(self):
        """The 16-cell variant decomposes the same way."""
        d = new_skew_ferrers(STAIRCASE_TABLE_LAMBDA, STAIRCASE_MU)
        dec = rectangular_decomposition(d)
        assert d.row_cols(3) == (3, 4, 5)
        assert [p.top_cell for p in dec.pieces] == [(1, 1), (3, 4), (6, 6)]
        assert [e.labels for e in dec.empties] == [(2,), (7,)]
        assert len(cells(d)) == 16

    @pytest.mark.parametrize("lam, mu", [
        (STAIRCASE_LAMBDA, STAIRCASE_MU),
        (STAIRCASE_TABLE_LAMBDA, STAIRCASE_MU),
        ((4, 4, 3, 1), (2, 1, 0, 0)),
        ((5, 3, 3, 2, 2), (3, 2, 1, 1, 0)),
        ((3, 3, 2), (3, 1, 0)),
    ])
    def test_partition(self, lam, mu):
        """Pieces and empties cover rows and columns once; piece cells cover cells once."""
        d = new_skew_ferrers(lam, mu)
        dec = rectangular_decomposition(d)
        rows = [r for p in dec.pieces for r in p.rows] + list(dec.empty_rows())
        cols = [c for p in dec.pieces for c in p.cols] + list(dec.empty_cols())
        assert sorted(rows) == sorted(d.row_labels)
        assert sorted(cols) == sorted(d.col_labels)
        piece_cells = [c for p in dec.pieces for c in p.cells]
        assert len(piece_cells) == len(set(piece_cells))
        assert set(piece_cells) == cells(d)

    def test_full_rectangle(self):
        """A rectangle is one piece and spherical."""
        dec = rectangular_decomposition(new_skew_ferrers((3, 3), (0, 0)))
        assert dec.rect == 1
        assert dec.spherical

    def test_two_one(self):
        """lambda = (2, 1) has one piece and an empty row."""
        dec = rectangular_decomposition(new_skew_ferrers((2, 1), (0, 0)))
        assert dec.rect == 1
        piece = dec.pieces[0]
        assert piece.cells == {(1, 1), (1, 2), (2, 2)}
        assert (piece.rows, piece.cols) == ((1,), (1, 2))
        assert [(e.kind, e.labels) for e in dec.empties] == [(EmptyKind.ROW, (2,))]
        assert not is_spherical(new_skew_ferrers((2, 1), (0, 0)))

    def test_empty_diagram_is_degenerate(self):
        """No cells: rect 0, vacuously spherical, rows and columns still partitioned."""
        d = new_skew_ferrers((2,), (2,))
        dec = rectangular_decomposition(d)
        assert dec.rect == 0
        assert dec.spherical is True
        assert dec.degenerate
        assert is_degenerate(d)
        assert is_spherical(d)
        assert (dec.empty_rows(), dec.empty_cols()) == ((1,), (1, 2))

    def test_empty_restriction_vacuously_spherical(self):
        """The empty restriction is degenerate and spherical."""
        d = restrict(_staircase(), [], [])
        dec = rectangular_decomposition(d)
        assert (dec.rect, dec.spherical, dec.degenerate) == (0, True, True)

    def test_leading_empty_row_stripped_first(self):
        """An empty first row is set aside before any piece."""
        d = new_skew_ferrers((2, 2), (2, 0))
        dec = rectangular_decomposition(d)
        assert dec.empties[0].labels == (1,)
        assert [p.top_cell for p in dec.pieces] == [(2, 1)]

    def test_top_cell_must_be_a_cell(self):
        """A non-staircase cell set trips the structural assertion."""
        bad = CellDiagram.__new__(CellDiagram)
        object.__setattr__(bad, "row_labels", (1, 2))
        object.__setattr__(bad, "col_labels", (1, 2))
        object.__setattr__(bad, "row_intervals", ((1, 1), (0, 0)))
        with pytest.raises(StructuralError):
            rectangular_decomposition(bad)


class TestSphericalRect:
    """The bitmask decomposition agrees with restrict + decompose."""

    @pytest.mark.parametrize("lam, mu", [
        ((3, 3, 2), (1, 0, 0)),
        ((2, 1), (0, 0)),
        ((3, 2, 2, 1), (2, 1, 0, 0)),
    ])
    def test_matches_object_decomposition(self, lam, mu):
        """The bitmask path agrees with the object decomposition."""
        d = new_skew_ferrers(lam, mu)
        masks = row_masks(d)
        for rows in _subsets(range(d.num_rows)):
            for cols in _subsets(range(d.num_cols)):
                col_mask = sum(1 << c for c in cols)
                sub = restrict(d, [d.row_labels[r] for r in rows],
                               [d.col_labels[c] for c in cols])
                dec = rectangular_decomposition(sub)
                expected = dec.rect if dec.spherical and not dec.degenerate else None
                assert spherical_rect(masks, list(rows), col_mask) == expected

    def test_row_masks(self):
        """Row masks mark each row's columns."""
        assert row_masks(new_skew_ferrers((3, 2), (1, 0))) == (0b011, 0b110)


class TestShapesAndText:
    """Tests for shape recognition, parameters, rendering and parsing."""

    def test_ferrers_shape(self):
        """mu = 0 shapes are recognised."""
        assert ferrers_shape(new_skew_ferrers((3, 2, 2), (0, 0, 0))) == (3, 2, 2)

    def test_skew_is_not_ferrers(self):
        """Skew shapes are not Ferrers shapes."""
        assert ferrers_shape(_staircase()) is None

    def test_to_parameters_after_stripping(self):
        """The stripped staircase rebuilds from its parameters."""
        d = _staircase()
        sub = restrict(d, [r for r in d.row_labels if r != 2],
                       [c for c in d.col_labels if c != 7])
        lam, mu = to_parameters(sub)
        assert lam == (6, 5, 4, 3, 2, 1)
        assert mu == (3, 1, 1, 1, 0, 0)
        assert len(cells(new_skew_ferrers(lam, mu))) == len(cells(sub)) == 15

    def test_to_parameters_round_trip(self):
        """Parameters rebuild the same cells."""
        assert to_parameters(_staircase()) == (STAIRCASE_LAMBDA, STAIRCASE_MU)

    def test_render(self):
        """Text grid rendering."""
        text = render_diagram(new_skew_ferrers((2, 1), (0, 0)))
        lines = text.splitlines()
        assert lines[1].startswith("x1")
        assert lines[2].split()[1:] == [".", "x"]

    def test_parse_int_list(self):
        """Comma lists parse to integers."""
        assert parse_int_list("7, 6,5", "--lambda") == (7, 6, 5)

    def test_parse_int_list_names_item(self):
        """Parse errors name the flag and item."""
        with pytest.raises(ValidationError, match=r"--lambda: item 2 'x'"):
            parse_int_list("7,x", "--lambda")

    def test_parse_int_list_empty(self):
        """Empty lists are rejected."""
        with pytest.raises(ValidationError):
            parse_int_list("  ", "--mu")
