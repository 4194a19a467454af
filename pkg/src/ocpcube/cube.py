"""Process cube over an OCEL: dimensions, build, slice/dice, grids, cells.

Dimensions are either event attributes or (object type, attribute) pairs.
Object-attribute dimensions support two materialization semantics:
Existence (some related object of the type has the value) and All (every
related object of the type has the value, and at least one exists).
Events with no value for a dimension land in the ``MISSING`` bucket.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Any, Iterable, Mapping

from .ocel import OCEL, format_timestamp, sublog

__all__ = [
    "MISSING",
    "DimensionDescriptor",
    "Materialization",
    "ProcessCube",
    "CountGrid",
    "CubeError",
    "UnknownDimension",
    "EmptyDimensionList",
    "CoordinateDimensionMismatch",
    "ValueNotInDomain",
    "SameDimensionTwice",
    "EmptySelection",
    "list_dimensions",
    "build_cube",
    "cell_events",
    "slice_cube",
    "dice_cube",
    "grid_view",
    "materialize_cell",
    "encode_value",
    "decode_value",
]


class _Missing:
    """Singleton coordinate for events without a value on a dimension."""

    _instance: "_Missing | None" = None

    def __new__(cls) -> "_Missing":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "MISSING"


MISSING = _Missing()

NULL_TOKEN = "__null__"


class CubeError(Exception):
    """Base class for cube query failures."""


class UnknownDimension(CubeError):
    pass


class EmptyDimensionList(CubeError):
    pass


class CoordinateDimensionMismatch(CubeError):
    pass


class ValueNotInDomain(CubeError):
    pass


class SameDimensionTwice(CubeError):
    pass


class EmptySelection(CubeError):
    pass


@dataclass(frozen=True, order=True)
class DimensionDescriptor:
    """A cube axis: an event attribute or a typed object attribute.

    ``scope`` is the object type for object-attribute dimensions and None
    for event-attribute dimensions.
    """

    kind: str  # "event" | "object"
    name: str
    scope: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("event", "object"):
            raise ValueError(f"bad dimension kind {self.kind!r}")
        if (self.kind == "object") != (self.scope is not None):
            raise ValueError("scope is required iff kind == 'object'")

    def spec(self) -> str:
        """Textual form: ``event:<name>`` or ``object:<type>.<name>``."""
        if self.kind == "event":
            return f"event:{self.name}"
        return f"object:{self.scope}.{self.name}"

    @classmethod
    def parse(cls, text: str) -> "DimensionDescriptor":
        """Parse ``event:<name>`` / ``object:<type>.<name>``.

        Bare forms ``<name>`` and ``<type>.<name>`` are accepted for
        convenience on API and CLI surfaces.
        """
        if text.startswith("event:"):
            return cls("event", text[len("event:"):])
        if text.startswith("object:"):
            rest = text[len("object:"):]
            if "." not in rest:
                raise UnknownDimension(f"object dimension needs <type>.<name>: {text!r}")
            scope, name = rest.split(".", 1)
            return cls("object", name, scope)
        if "." in text:
            scope, name = text.split(".", 1)
            return cls("object", name, scope)
        return cls("event", text)


class Materialization(str, Enum):
    EXISTENCE = "existence"
    ALL = "all"


DimValue = Any  # AttrValue | MISSING
Coordinate = tuple  # aligned with cube.dims order


def _value_sort_key(value: DimValue) -> tuple:
    if isinstance(value, bool):
        return (0, value, "")
    if isinstance(value, (int, float)):
        return (1, value, "")
    if isinstance(value, datetime):
        return (2, 0, value.isoformat())
    return (3, 0, str(value))


def sort_domain(values: Iterable[DimValue]) -> tuple:
    """Order values by type class then value, with MISSING trailing."""
    concrete = [v for v in values if v is not MISSING]
    out = sorted(set(concrete), key=_value_sort_key)
    if any(v is MISSING for v in values):
        out.append(MISSING)
    return tuple(out)


def encode_value(value: DimValue) -> str:
    """Canonical string form of a dimension value (MISSING -> __null__)."""
    if value is MISSING:
        return NULL_TOKEN
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, datetime):
        return format_timestamp(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def decode_value(token: str, domain: Iterable[DimValue]) -> DimValue:
    """Resolve a string token against a dimension's domain."""
    if token == NULL_TOKEN:
        return MISSING
    for value in domain:
        if value is not MISSING and encode_value(value) == token:
            return value
    raise ValueNotInDomain(f"value {token!r} not in dimension domain")


@dataclass(frozen=True)
class ProcessCube:
    """Fully materialized cube: coordinate -> event-id set over a base log."""

    base: OCEL
    dims: tuple[DimensionDescriptor, ...]
    mode: Materialization
    index: Mapping[Coordinate, frozenset[str]]
    domain: Mapping[DimensionDescriptor, tuple]

    def events(self) -> frozenset[str]:
        out: set[str] = set()
        for cell in self.index.values():
            out |= cell
        return frozenset(out)


@dataclass(frozen=True)
class CountGrid:
    """Marginal event counts for a (row, column) dimension pair."""

    row_dim: DimensionDescriptor
    col_dim: DimensionDescriptor | None  # None = synthetic ALL column
    rows: tuple
    cols: tuple
    counts: tuple[tuple[int, ...], ...]


def list_dimensions(log: OCEL) -> list[DimensionDescriptor]:
    """All event attributes plus all (type, attribute) pairs in the log."""
    event_dims = [DimensionDescriptor("event", n) for n in sorted(log.attribute_names)]
    pairs = sorted(
        {(o.otype, name) for o in log.objects.values() for name in o.ovmap}
    )
    object_dims = [DimensionDescriptor("object", name, otype) for otype, name in pairs]
    return event_dims + object_dims


def event_dim_values(
    log: OCEL, event, dim: DimensionDescriptor, mode: Materialization
) -> frozenset:
    """Value buckets of one event on one dimension (the membership rule).

    Existence: every attribute value carried by some related object of the
    scoped type; MISSING when none carries it. All: the single common value
    when every related object of the type carries it; no bucket at all on
    disagreement; MISSING when the event has no object of the type.
    """
    if dim.kind == "event":
        return frozenset({event.vmap.get(dim.name, MISSING)})
    scoped = [
        log.objects[oid]
        for oid in event.omap
        if oid in log.objects and log.objects[oid].otype == dim.scope
    ]
    if mode is Materialization.EXISTENCE:
        values = {o.ovmap[dim.name] for o in scoped if dim.name in o.ovmap}
        return frozenset(values) if values else frozenset({MISSING})
    # All mode: no vacuous truth with zero scoped objects.
    if not scoped:
        return frozenset({MISSING})
    values = {o.ovmap.get(dim.name, MISSING) for o in scoped}
    if len(values) == 1 and MISSING not in values:
        return frozenset(values)
    return frozenset()


def build_cube(
    log: OCEL,
    dims: Iterable[DimensionDescriptor],
    mode: Materialization,
) -> ProcessCube:
    """Eagerly materialize the full cell index for the given dimensions."""
    dims = tuple(dims)
    if not dims:
        raise EmptyDimensionList("a cube needs at least one dimension")
    if len(set(dims)) != len(dims):
        raise SameDimensionTwice("duplicate dimension in cube definition")
    available = set(list_dimensions(log))
    for dim in dims:
        if dim not in available:
            raise UnknownDimension(f"dimension {dim.spec()} not present in log")

    index: dict[Coordinate, set[str]] = {}
    for event in log.events:
        per_dim = [event_dim_values(log, event, dim, mode) for dim in dims]
        if any(not values for values in per_dim):
            continue
        for coord in itertools.product(*per_dim):
            index.setdefault(coord, set()).add(event.id)

    domain = {
        dim: sort_domain({coord[i] for coord in index})
        for i, dim in enumerate(dims)
    }
    frozen = {coord: frozenset(ids) for coord, ids in index.items()}
    return ProcessCube(base=log, dims=dims, mode=mode, index=frozen, domain=domain)


def _check_coord(cube: ProcessCube, coord: Mapping[DimensionDescriptor, DimValue]) -> Coordinate:
    if set(coord) != set(cube.dims):
        raise CoordinateDimensionMismatch(
            "coordinate keys must equal the cube's dimension set"
        )
    key = []
    for dim in cube.dims:
        value = coord[dim]
        # MISSING is always queryable, even when unpopulated.
        if value is not MISSING and value not in cube.domain.get(dim, ()):
            raise ValueNotInDomain(
                f"value {encode_value(value)!r} not in domain of {dim.spec()}"
            )
        key.append(value)
    return tuple(key)


def cell_events(
    cube: ProcessCube, coord: Mapping[DimensionDescriptor, DimValue]
) -> frozenset[str]:
    """Event ids at a coordinate; empty for in-domain unpopulated cells."""
    return cube.index.get(_check_coord(cube, coord), frozenset())


def slice_cube(
    cube: ProcessCube, dim: DimensionDescriptor, value: DimValue
) -> ProcessCube:
    """Fix one dimension to a value and drop it from the cube."""
    if dim not in cube.dims:
        raise UnknownDimension(f"dimension {dim.spec()} not in cube")
    if value is not MISSING and value not in cube.domain.get(dim, ()):
        raise ValueNotInDomain(
            f"value {encode_value(value)!r} not in domain of {dim.spec()}"
        )
    pos = cube.dims.index(dim)
    new_dims = cube.dims[:pos] + cube.dims[pos + 1:]
    merged: dict[Coordinate, set[str]] = {}
    for coord, ids in cube.index.items():
        if coord[pos] != value and not (coord[pos] is MISSING and value is MISSING):
            continue
        reduced = coord[:pos] + coord[pos + 1:]
        merged.setdefault(reduced, set()).update(ids)
    if not new_dims:
        # 0-dim cube keeps a single root cell.
        merged.setdefault((), set())
    domain = {
        d: sort_domain({coord[i] for coord in merged})
        for i, d in enumerate(new_dims)
    }
    return ProcessCube(
        base=cube.base,
        dims=new_dims,
        mode=cube.mode,
        index={c: frozenset(ids) for c, ids in merged.items()},
        domain=domain,
    )


def dice_cube(
    cube: ProcessCube,
    selection: Mapping[DimensionDescriptor, Iterable[DimValue]],
) -> ProcessCube:
    """Restrict dimensions to value subsets, keeping the dimension set."""
    positions: dict[int, set] = {}
    for dim, values in selection.items():
        if dim not in cube.dims:
            raise UnknownDimension(f"dimension {dim.spec()} not in cube")
        values = set(values)
        if not values:
            raise EmptySelection(f"empty value set for {dim.spec()}")
        for value in values:
            if value is not MISSING and value not in cube.domain.get(dim, ()):
                raise ValueNotInDomain(
                    f"value {encode_value(value)!r} not in domain of {dim.spec()}"
                )
        positions[cube.dims.index(dim)] = values
    index = {
        coord: ids
        for coord, ids in cube.index.items()
        if all(coord[i] in values for i, values in positions.items())
    }
    domain = {
        dim: sort_domain({coord[i] for coord in index})
        for i, dim in enumerate(cube.dims)
    }
    return ProcessCube(
        base=cube.base, dims=cube.dims, mode=cube.mode, index=index, domain=domain
    )


def grid_view(
    cube: ProcessCube,
    row_dim: DimensionDescriptor,
    col_dim: DimensionDescriptor | None = None,
) -> CountGrid:
    """Marginal event counts with rows/cols in domain order.

    Other dimensions are unrestricted (marginalized). A 1-dim cube uses a
    synthetic single "ALL" column when col_dim is None.
    """
    if row_dim not in cube.dims:
        raise UnknownDimension(f"dimension {row_dim.spec()} not in cube")
    if col_dim is not None:
        if col_dim not in cube.dims:
            raise UnknownDimension(f"dimension {col_dim.spec()} not in cube")
        if col_dim == row_dim:
            raise SameDimensionTwice("row and column dimensions must differ")
    row_pos = cube.dims.index(row_dim)
    col_pos = cube.dims.index(col_dim) if col_dim is not None else None

    buckets: dict[tuple, set[str]] = {}
    for coord, ids in cube.index.items():
        key = (coord[row_pos], coord[col_pos] if col_pos is not None else "ALL")
        buckets.setdefault(key, set()).update(ids)

    rows = cube.domain.get(row_dim, ())
    cols = cube.domain.get(col_dim, ()) if col_dim is not None else ("ALL",)
    counts = tuple(
        tuple(len(buckets.get((r, c), ())) for c in cols) for r in rows
    )
    return CountGrid(row_dim=row_dim, col_dim=col_dim, rows=rows, cols=cols, counts=counts)


def materialize_cell(
    cube: ProcessCube, coord: Mapping[DimensionDescriptor, DimValue]
) -> OCEL:
    """Extract the cell's sub-log from the cube's base log."""
    return sublog(cube.base, set(cell_events(cube, coord)))
