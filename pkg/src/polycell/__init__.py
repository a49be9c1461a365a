"""Generalized tilings of polycells: tensions, height functions, flips,
distributive lattices, tilability and uniform sampling."""

from .core import (
    Cell,
    DirectedGraph,
    Embedding,
    InvalidPolycellError,
    NotATensionError,
    Polycell,
    PolycellError,
    PreconditionError,
    Tile,
    Travel,
    ValidationReport,
    flux,
    is_balanced_boundary,
    is_contractible,
    is_full,
    is_tension,
    tiles,
    validate,
)
from .encoders import (
    PolyominoRegion,
    RhombusRegion,
    TilePlacement,
    decode_dominoes,
    decode_rhombus,
    encode_polyomino,
    encode_rhombus,
)
from .flips import (
    FlipGraph,
    count_components,
    efg_orientation,
    flip,
    flip_graph,
    flip_terminal,
    join,
    maximal_vertices,
    meet,
)
from .oracle import brute_force_tilings
from .sampler import SamplerConfig, sample_cftp, sample_exact
from .tilability import Untilable, is_tilable, maximal_tiling
from .tilings import (
    HeightFunction,
    Tiling,
    height_function,
    height_on_boundary,
    is_valid_tiling,
    tension_to_tiling,
    tiling_to_tension,
)

__version__ = "0.1.0"
