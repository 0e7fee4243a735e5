from src.models.diagram import (
    CellDiagram, Piece, EmptyKind, EmptyRectangle, RectangularDecomposition,
)
from src.models.graph import SimpleGraph, Side, ClosedAnalysis, BlockShape
from src.models.complex import SimplicialComplex, DimVector
from src.models.betti import BettiTable, ExtremalPrediction, CorsoNagelTotals
from src.models.report import Computation, RunReport
