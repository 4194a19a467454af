"""Object-centric process cube engine.

Parse OCEL event logs, partition them along event- and object-attribute
dimensions under Existence/All materialization, extract per-cell sub-logs,
discover frequency/performance-annotated object-centric models, and
compare two cells' models.
"""

from .ocel import (
    OCEL,
    Event,
    ObjectInstance,
    ValidationReport,
    parse_jsonocel,
    parse_xmlocel,
    validate,
    sublog,
    export_jsonocel,
    export_xmlocel,
)
from .cube import (
    MISSING,
    DimensionDescriptor,
    Materialization,
    ProcessCube,
    CountGrid,
    list_dimensions,
    build_cube,
    cell_events,
    slice_cube,
    dice_cube,
    grid_view,
    materialize_cell,
)
from .discovery import (
    OCDFG,
    OCPN,
    ModelDiff,
    flatten,
    discover_ocdfg,
    discover_ocpn,
    compare_models,
)
from .synth import generate_log

__all__ = [
    "OCEL",
    "Event",
    "ObjectInstance",
    "ValidationReport",
    "parse_jsonocel",
    "parse_xmlocel",
    "validate",
    "sublog",
    "export_jsonocel",
    "export_xmlocel",
    "MISSING",
    "DimensionDescriptor",
    "Materialization",
    "ProcessCube",
    "CountGrid",
    "list_dimensions",
    "build_cube",
    "cell_events",
    "slice_cube",
    "dice_cube",
    "grid_view",
    "materialize_cell",
    "OCDFG",
    "OCPN",
    "ModelDiff",
    "flatten",
    "discover_ocdfg",
    "discover_ocpn",
    "compare_models",
    "generate_log",
]

__version__ = "0.1.0"
