"""Farey complexes of finite rings, friezes, SL2-tilings and their integer lifts."""
from .complex import (
    FareyComplex,
    SL2Matrix,
    build_complex,
    diameter,
    export_complex,
    genus_and_cusps,
    is_surface_complex,
)
from .frieze import (
    Frieze,
    TilingWindow,
    count_friezes,
    extend_frieze,
    frieze_from_path,
    path_from_frieze,
    realize_quiddity,
    tiling_from_paths,
    tiling_recurrences,
)
from .lifting import (
    CongruenceData,
    NotLiftable,
    ReductionTrace,
    is_strongly_contractible,
    lift_closed_path,
    lift_frieze,
    lift_matrix,
    lift_path_positive,
    lift_tiling_positive,
)
from .paths import Path, TwistedPath, itinerary, lift_path, make_path, parse_path, path_from_itinerary
from .ring import galois_field, make_ring, parse_ring, parse_units

__all__ = [
    "CongruenceData", "FareyComplex", "Frieze", "NotLiftable", "Path", "ReductionTrace",
    "SL2Matrix", "TilingWindow", "TwistedPath", "build_complex", "count_friezes", "diameter",
    "export_complex", "extend_frieze", "frieze_from_path", "galois_field", "genus_and_cusps",
    "is_strongly_contractible", "is_surface_complex", "itinerary", "lift_closed_path",
    "lift_frieze", "lift_matrix", "lift_path", "lift_path_positive", "lift_tiling_positive",
    "make_path", "make_ring", "parse_path", "parse_ring", "path_from_frieze",
    "path_from_itinerary", "realize_quiddity", "tiling_from_paths", "tiling_recurrences",
    "parse_units",
]
