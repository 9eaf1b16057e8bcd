"""Temperature-1 aTAM toolkit for just-barely-3D thin rectangles."""

from .core import TAS, Assembly, Glue, TileType, attach, binds, binding_graph, frontier, is_terminal
from .params import ConstructionParams, compute_params
from .rectgen import generate_tileset

__all__ = [
    "TAS", "Assembly", "Glue", "TileType", "attach", "binds", "binding_graph", "frontier",
    "is_terminal", "ConstructionParams", "compute_params", "generate_tileset",
]
__version__ = "0.1.0"
