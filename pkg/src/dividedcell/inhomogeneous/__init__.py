"""Inhomogeneous problems: divided cells and the chain that walks them."""

from .cells import (
    Cell,
    Classification,
    DividedCell,
    InnerBox,
    classify,
    evaluate,
    inner_box,
    is_divided,
    is_I_reduced,
    normalize,
    quadrant_of,
)
from .dca import (
    ChainEntry,
    ChainRecord,
    InhomMarkoffResult,
    StepChoice,
    Successor,
    chain,
    markoff_inhom,
    step_backward,
    step_forward,
    step_matrix,
    successors,
    vertex_values,
)
from .pitman import initial_cell, neighbors

eval = evaluate  # noqa: A001  (name used throughout the docs)
from .anchors import Location, anchors, compare_cells, locate, superfluous_run
