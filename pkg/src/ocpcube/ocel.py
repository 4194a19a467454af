"""Object-centric event log (OCEL) core: parse, validate, restrict, export.

Supports the JSON-OCEL and XML-OCEL interchange formats. Parsed logs are
immutable; events are kept in canonical order (timestamp, then event id)
so every downstream computation is deterministic.
"""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Iterable, Mapping

__all__ = [
    "AttrValue",
    "Event",
    "ObjectInstance",
    "OCEL",
    "ValidationIssue",
    "ValidationReport",
    "OcelError",
    "MalformedInput",
    "DanglingObjectRef",
    "BadTimestamp",
    "UnknownEventId",
    "parse_jsonocel",
    "parse_xmlocel",
    "validate",
    "sublog",
    "export_jsonocel",
    "export_xmlocel",
    "format_timestamp",
    "parse_timestamp",
]

AttrValue = str | int | float | bool | datetime


class OcelError(Exception):
    """Base class for OCEL processing failures."""


class MalformedInput(OcelError):
    """Input is not a structurally valid OCEL document."""


class DanglingObjectRef(OcelError):
    """An event references an object id that is not in the log."""


class BadTimestamp(OcelError):
    """A timestamp field could not be parsed as an instant."""


class UnknownEventId(OcelError):
    """A requested event id does not exist in the log."""


_TIMESTAMP_RE = re.compile(
    r"^\d{4}-\d{2}-\d{2}[T ]\d{2}:\d{2}:\d{2}(\.\d+)?(Z|[+-]\d{2}:?\d{2})?$"
)


def parse_timestamp(raw: str) -> datetime:
    """Parse an ISO-8601 instant and normalize it to UTC.

    Naive timestamps are interpreted as UTC. The original offset is not
    retained; comparison semantics need a single timeline.
    """
    if not isinstance(raw, str) or not _TIMESTAMP_RE.match(raw):
        raise BadTimestamp(f"unparseable timestamp: {raw!r}")
    text = raw.replace(" ", "T")
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    # 3.10 fromisoformat rejects offsets without a colon
    if re.search(r"[+-]\d{4}$", text):
        text = text[:-2] + ":" + text[-2:]
    try:
        dt = datetime.fromisoformat(text)
    except ValueError as exc:
        raise BadTimestamp(f"unparseable timestamp: {raw!r}") from exc
    if dt.tzinfo is None:
        return dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def format_timestamp(dt: datetime) -> str:
    """Render a UTC instant as ISO-8601 with a Z suffix."""
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    text = dt.astimezone(timezone.utc).isoformat()
    return text.replace("+00:00", "Z")


def _coerce_value(raw: Any) -> Any:
    """Map a JSON scalar to an attribute value.

    Strings in strict ISO-8601 instant form become timestamps so that
    typed XML payloads and JSON payloads round-trip to equal logs.
    Non-scalar payloads are preserved as their JSON text.
    """
    if isinstance(raw, bool) or isinstance(raw, (int, float)):
        return raw
    if isinstance(raw, str):
        if _TIMESTAMP_RE.match(raw):
            return parse_timestamp(raw)
        return raw
    if raw is None:
        return ""
    return json.dumps(raw, sort_keys=True)


@dataclass(frozen=True)
class Event:
    """A single event: activity, instant, attribute map, related objects."""

    id: str
    activity: str
    timestamp: datetime
    vmap: Mapping[str, Any]
    omap: tuple[str, ...]


@dataclass(frozen=True)
class ObjectInstance:
    """An object with its type and attribute map."""

    id: str
    otype: str
    ovmap: Mapping[str, Any]


@dataclass(frozen=True)
class OCEL:
    """Immutable object-centric event log in canonical event order."""

    events: tuple[Event, ...]
    objects: Mapping[str, ObjectInstance]
    attribute_names: frozenset[str]
    object_types: frozenset[str]

    def event_ids(self) -> list[str]:
        return [e.id for e in self.events]

    def events_by_id(self) -> dict[str, Event]:
        return {e.id: e for e in self.events}

    def objects_of_type(self, otype: str) -> list[ObjectInstance]:
        return [o for o in self.objects.values() if o.otype == otype]


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str
    location: str


@dataclass
class ValidationReport:
    errors: list[ValidationIssue] = field(default_factory=list)
    warnings: list[ValidationIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def _canonical_events(events: Iterable[Event]) -> tuple[Event, ...]:
    # Ties in timestamp break by lexicographic event id.
    return tuple(sorted(events, key=lambda e: (e.timestamp, e.id)))


def _dedup_ordered(ids: Iterable[str]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for oid in ids:
        seen.setdefault(oid, None)
    return tuple(seen)


def _make_log(
    events: list[Event],
    objects: dict[str, ObjectInstance],
    declared_attrs: Iterable[str],
    declared_types: Iterable[str],
) -> OCEL:
    for ev in events:
        for oid in ev.omap:
            if oid not in objects:
                raise DanglingObjectRef(
                    f"event {ev.id} references unknown object {oid!r}"
                )
    attrs = set(declared_attrs)
    for ev in events:
        attrs.update(ev.vmap)
    types = set(declared_types)
    for obj in objects.values():
        types.add(obj.otype)
    return OCEL(
        events=_canonical_events(events),
        objects=dict(objects),
        attribute_names=frozenset(attrs),
        object_types=frozenset(types),
    )


def parse_jsonocel(data: bytes) -> OCEL:
    """Parse a JSON-OCEL document into a validated log."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"not valid UTF-8 JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedInput("top-level JSON value must be an object")
    for key in ("ocel:global-log", "ocel:events", "ocel:objects"):
        if key not in doc:
            raise MalformedInput(f"missing required key {key!r}")
    glog = doc["ocel:global-log"]
    if not isinstance(glog, dict):
        raise MalformedInput("'ocel:global-log' must be an object")
    declared_attrs = glog.get("ocel:attribute-names", [])
    declared_types = glog.get("ocel:object-types", [])

    raw_objects = doc["ocel:objects"]
    if not isinstance(raw_objects, dict):
        raise MalformedInput("'ocel:objects' must be a map")
    objects: dict[str, ObjectInstance] = {}
    for oid, body in raw_objects.items():
        if not isinstance(body, dict) or "ocel:type" not in body:
            raise MalformedInput(f"object {oid!r} missing 'ocel:type'")
        ovmap = {
            str(k): _coerce_value(v)
            for k, v in body.get("ocel:ovmap", {}).items()
        }
        # Unknown extra keys become string attributes rather than errors.
        for k, v in body.items():
            if k not in ("ocel:type", "ocel:ovmap"):
                ovmap.setdefault(str(k), str(v))
        objects[str(oid)] = ObjectInstance(str(oid), str(body["ocel:type"]), ovmap)

    raw_events = doc["ocel:events"]
    if not isinstance(raw_events, dict):
        raise MalformedInput("'ocel:events' must be a map")
    events: list[Event] = []
    for eid, body in raw_events.items():
        if not isinstance(body, dict):
            raise MalformedInput(f"event {eid!r} body must be an object")
        for req in ("ocel:activity", "ocel:timestamp"):
            if req not in body:
                raise MalformedInput(f"event {eid!r} missing {req!r}")
        ts = parse_timestamp(body["ocel:timestamp"])
        vmap = {
            str(k): _coerce_value(v)
            for k, v in body.get("ocel:vmap", {}).items()
        }
        for k, v in body.items():
            if k not in ("ocel:activity", "ocel:timestamp", "ocel:omap", "ocel:vmap"):
                vmap.setdefault(str(k), str(v))
        omap = _dedup_ordered(str(o) for o in body.get("ocel:omap", []))
        events.append(Event(str(eid), str(body["ocel:activity"]), ts, vmap, omap))

    return _make_log(events, objects, declared_attrs, declared_types)


_XML_TAG_TO_TYPE = {"string", "int", "float", "boolean", "date"}


def _xml_value(elem: ET.Element) -> Any:
    tag = elem.tag
    raw = elem.get("value", "")
    if tag == "string":
        return raw
    if tag == "int":
        try:
            return int(raw)
        except ValueError as exc:
            raise MalformedInput(f"bad int value {raw!r}") from exc
    if tag == "float":
        try:
            return float(raw)
        except ValueError as exc:
            raise MalformedInput(f"bad float value {raw!r}") from exc
    if tag == "boolean":
        return raw.lower() == "true"
    if tag == "date":
        return parse_timestamp(raw)
    raise MalformedInput(f"unknown value element <{tag}>")


def _xml_map(list_elem: ET.Element | None) -> dict[str, Any]:
    if list_elem is None:
        return {}
    out: dict[str, Any] = {}
    for child in list_elem:
        key = child.get("key")
        if key is None:
            raise MalformedInput("value element missing 'key' attribute")
        out[key] = _xml_value(child)
    return out


def _xml_children_by_key(elem: ET.Element) -> dict[str, ET.Element]:
    return {c.get("key", ""): c for c in elem}


def parse_xmlocel(data: bytes) -> OCEL:
    """Parse an XML-OCEL document; value-equal to the JSON rendering."""
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedInput(f"not well-formed XML: {exc}") from exc
    if root.tag != "log":
        raise MalformedInput("root element must be <log>")

    declared_attrs: list[str] = []
    declared_types: list[str] = []
    for glob in root.findall("global"):
        for lst in glob.findall("list"):
            key = lst.get("key")
            values = [c.get("value", "") for c in lst]
            if key == "attribute-names":
                declared_attrs.extend(values)
            elif key == "object-types":
                declared_types.extend(values)

    objects: dict[str, ObjectInstance] = {}
    objects_elem = root.find("objects")
    if objects_elem is not None:
        for obj in objects_elem.findall("object"):
            fields = _xml_children_by_key(obj)
            if "id" not in fields or "type" not in fields:
                raise MalformedInput("<object> missing id or type")
            oid = fields["id"].get("value", "")
            otype = fields["type"].get("value", "")
            ovmap = _xml_map(fields.get("ovmap"))
            objects[oid] = ObjectInstance(oid, otype, ovmap)

    events: list[Event] = []
    events_elem = root.find("events")
    if events_elem is not None:
        for ev in events_elem.findall("event"):
            fields = _xml_children_by_key(ev)
            for req in ("id", "activity", "timestamp"):
                if req not in fields:
                    raise MalformedInput(f"<event> missing {req!r}")
            eid = fields["id"].get("value", "")
            activity = fields["activity"].get("value", "")
            ts_elem = fields["timestamp"]
            ts = parse_timestamp(ts_elem.get("value", ""))
            vmap = _xml_map(fields.get("vmap"))
            omap_elem = fields.get("omap")
            omap = _dedup_ordered(
                c.get("value", "") for c in (omap_elem if omap_elem is not None else [])
            )
            events.append(Event(eid, activity, ts, vmap, omap))

    return _make_log(events, objects, declared_attrs, declared_types)


def validate(log: OCEL) -> ValidationReport:
    """Enumerate every invariant violation; pure, never raises."""
    report = ValidationReport()
    seen: set[str] = set()
    prev_key: tuple[datetime, str] | None = None
    for ev in log.events:
        if not ev.id:
            report.errors.append(
                ValidationIssue("EMPTY_EVENT_ID", "event with empty id", "events")
            )
        if ev.id in seen:
            report.errors.append(
                ValidationIssue("DUP_EVENT_ID", f"duplicate event id {ev.id!r}", ev.id)
            )
        seen.add(ev.id)
        key = (ev.timestamp, ev.id)
        if prev_key is not None and key < prev_key:
            report.errors.append(
                ValidationIssue(
                    "UNSORTED_EVENTS",
                    f"event {ev.id!r} out of canonical order",
                    ev.id,
                )
            )
        prev_key = key
        for oid in ev.omap:
            if oid not in log.objects:
                report.errors.append(
                    ValidationIssue(
                        "DANGLING_OBJECT_REF",
                        f"event {ev.id!r} references unknown object {oid!r}",
                        ev.id,
                    )
                )
        for name in ev.vmap:
            if name not in log.attribute_names:
                report.errors.append(
                    ValidationIssue(
                        "UNDECLARED_ATTRIBUTE",
                        f"event {ev.id!r} uses undeclared attribute {name!r}",
                        ev.id,
                    )
                )
    for obj in log.objects.values():
        if obj.otype not in log.object_types:
            report.errors.append(
                ValidationIssue(
                    "UNKNOWN_OTYPE",
                    f"object {obj.id!r} has undeclared type {obj.otype!r}",
                    obj.id,
                )
            )
    referenced = {oid for ev in log.events for oid in ev.omap}
    for oid in log.objects:
        if oid not in referenced:
            report.warnings.append(
                ValidationIssue(
                    "UNREFERENCED_OBJECT",
                    f"object {oid!r} not referenced by any event",
                    oid,
                )
            )
    return report


def sublog(log: OCEL, keep: set[str]) -> OCEL:
    """Restrict a log to the given event ids.

    Objects no longer referenced are dropped; attribute names and object
    types are recomputed from what remains.
    """
    known = set(log.event_ids())
    unknown = keep - known
    if unknown:
        raise UnknownEventId(f"unknown event ids: {sorted(unknown)}")
    events = [e for e in log.events if e.id in keep]
    referenced = {oid for e in events for oid in e.omap}
    objects = {oid: log.objects[oid] for oid in log.objects if oid in referenced}
    attrs = {name for e in events for name in e.vmap}
    types = {obj.otype for obj in objects.values()}
    return OCEL(
        events=tuple(events),
        objects=objects,
        attribute_names=frozenset(attrs),
        object_types=frozenset(types),
    )


def _json_value(value: Any) -> Any:
    if isinstance(value, datetime):
        return format_timestamp(value)
    return value


def export_jsonocel(log: OCEL) -> bytes:
    """Serialize to canonical JSON-OCEL; byte output is stable."""
    doc = {
        "ocel:global-log": {
            "ocel:attribute-names": sorted(log.attribute_names),
            "ocel:object-types": sorted(log.object_types),
        },
        "ocel:events": {
            e.id: {
                "ocel:activity": e.activity,
                "ocel:timestamp": format_timestamp(e.timestamp),
                "ocel:omap": list(e.omap),
                "ocel:vmap": {k: _json_value(e.vmap[k]) for k in sorted(e.vmap)},
            }
            for e in log.events
        },
        "ocel:objects": {
            oid: {
                "ocel:type": obj.otype,
                "ocel:ovmap": {k: _json_value(obj.ovmap[k]) for k in sorted(obj.ovmap)},
            }
            for oid, obj in sorted(log.objects.items())
        },
    }
    return json.dumps(doc, indent=2, ensure_ascii=False).encode("utf-8")


def _xml_value_elem(parent: ET.Element, key: str, value: Any) -> None:
    if isinstance(value, bool):
        tag, text = "boolean", "true" if value else "false"
    elif isinstance(value, int):
        tag, text = "int", str(value)
    elif isinstance(value, float):
        tag, text = "float", repr(value)
    elif isinstance(value, datetime):
        tag, text = "date", format_timestamp(value)
    else:
        tag, text = "string", str(value)
    ET.SubElement(parent, tag, {"key": key, "value": text})


def export_xmlocel(log: OCEL) -> bytes:
    """Serialize to XML-OCEL; parses back value-equal to the log."""
    root = ET.Element("log")
    glob = ET.SubElement(root, "global", {"scope": "log"})
    attrs = ET.SubElement(glob, "list", {"key": "attribute-names"})
    for name in sorted(log.attribute_names):
        ET.SubElement(attrs, "string", {"key": "attribute-name", "value": name})
    types = ET.SubElement(glob, "list", {"key": "object-types"})
    for name in sorted(log.object_types):
        ET.SubElement(types, "string", {"key": "object-type", "value": name})

    events = ET.SubElement(root, "events")
    for e in log.events:
        ev = ET.SubElement(events, "event")
        ET.SubElement(ev, "string", {"key": "id", "value": e.id})
        ET.SubElement(ev, "string", {"key": "activity", "value": e.activity})
        ET.SubElement(ev, "date", {"key": "timestamp", "value": format_timestamp(e.timestamp)})
        omap = ET.SubElement(ev, "list", {"key": "omap"})
        for oid in e.omap:
            ET.SubElement(omap, "string", {"key": "object-id", "value": oid})
        vmap = ET.SubElement(ev, "list", {"key": "vmap"})
        for k in sorted(e.vmap):
            _xml_value_elem(vmap, k, e.vmap[k])

    objects = ET.SubElement(root, "objects")
    for oid, obj in sorted(log.objects.items()):
        oe = ET.SubElement(objects, "object")
        ET.SubElement(oe, "string", {"key": "id", "value": oid})
        ET.SubElement(oe, "string", {"key": "type", "value": obj.otype})
        ovmap = ET.SubElement(oe, "list", {"key": "ovmap"})
        for k in sorted(obj.ovmap):
            _xml_value_elem(ovmap, k, obj.ovmap[k])

    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True)
