"""Parsing, validation, restriction, and round-trip of OCEL logs."""

from __future__ import annotations

import json

import pytest

from ocpcube import (
    parse_jsonocel,
    parse_xmlocel,
    validate,
    sublog,
    export_jsonocel,
    export_xmlocel,
    generate_log,
)
from ocpcube.ocel import (
    BadTimestamp,
    DanglingObjectRef,
    MalformedInput,
    UnknownEventId,
)

from conftest import FIX1_DOC, fix1_json_bytes


class TestParseJson:
    def test_fix1_shape(self, fix1):
        assert len(fix1.events) == 4
        assert len(fix1.objects) == 3
        assert fix1.object_types == {"item", "order"}
        assert fix1.attribute_names == {"channel"}
        assert fix1.event_ids() == ["e1", "e2", "e3", "e4"]

    def test_empty_events(self):
        doc = dict(FIX1_DOC, **{"ocel:events": {}})
        log = parse_jsonocel(json.dumps(doc).encode())
        assert len(log.events) == 0
        assert len(log.objects) == 3

    def test_dangling_object_ref(self):
        doc = json.loads(fix1_json_bytes())
        doc["ocel:events"]["e2"]["ocel:omap"].append("zz")
        with pytest.raises(DanglingObjectRef, match="e2"):
            parse_jsonocel(json.dumps(doc).encode())

    def test_not_json(self):
        with pytest.raises(MalformedInput):
            parse_jsonocel(b"this is not json")

    def test_missing_top_level_key(self):
        with pytest.raises(MalformedInput, match="ocel:objects"):
            parse_jsonocel(b'{"ocel:global-log": {}, "ocel:events": {}}')

    def test_bad_timestamp(self):
        doc = json.loads(fix1_json_bytes())
        doc["ocel:events"]["e1"]["ocel:timestamp"] = "yesterday"
        with pytest.raises(BadTimestamp):
            parse_jsonocel(json.dumps(doc).encode())

    def test_canonical_order_resorts(self):
        doc = json.loads(fix1_json_bytes())
        # equal timestamps tie-break lexicographically by id
        for eid in doc["ocel:events"]:
            doc["ocel:events"][eid]["ocel:timestamp"] = "2024-01-01T10:00:00Z"
        log = parse_jsonocel(json.dumps(doc).encode())
        assert log.event_ids() == ["e1", "e2", "e3", "e4"]

    def test_unknown_extra_keys_become_strings(self):
        doc = json.loads(fix1_json_bytes())
        doc["ocel:events"]["e1"]["custom"] = 7
        log = parse_jsonocel(json.dumps(doc).encode())
        assert log.events_by_id()["e1"].vmap["custom"] == "7"

    def test_timestamps_normalized_to_utc(self):
        doc = json.loads(fix1_json_bytes())
        doc["ocel:events"]["e1"]["ocel:timestamp"] = "2024-01-01T11:00:00+01:00"
        log = parse_jsonocel(json.dumps(doc).encode())
        assert log.events_by_id()["e1"].timestamp.isoformat() == "2024-01-01T10:00:00+00:00"


class TestParseXml:
    def test_cross_format_equality(self, fix1, fix1_xml_bytes):
        assert parse_xmlocel(fix1_xml_bytes) == fix1

    def test_empty_events_element(self):
        xml = b"<log><events/><objects/></log>"
        log = parse_xmlocel(xml)
        assert len(log.events) == 0

    def test_missing_timestamp(self):
        xml = (
            b"<log><events><event>"
            b'<string key="id" value="e1"/>'
            b'<string key="activity" value="a"/>'
            b"</event></events><objects/></log>"
        )
        with pytest.raises(MalformedInput, match="timestamp"):
            parse_xmlocel(xml)

    def test_not_xml(self):
        with pytest.raises(MalformedInput):
            parse_xmlocel(b"{json}")


class TestValidate:
    def test_fix1_valid(self, fix1):
        report = validate(fix1)
        assert report.errors == []

    def test_duplicate_event_id(self, fix1):
        import dataclasses

        ev = fix1.events[0]
        broken = dataclasses.replace(fix1, events=fix1.events + (ev,))
        codes = {i.code for i in validate(broken).errors}
        assert "DUP_EVENT_ID" in codes

    def test_unknown_otype(self, fix1):
        import dataclasses

        broken = dataclasses.replace(fix1, object_types=frozenset({"item"}))
        codes = {i.code for i in validate(broken).errors}
        assert "UNKNOWN_OTYPE" in codes


class TestSublog:
    def test_keep_three(self, fix1):
        sub = sublog(fix1, {"e1", "e2", "e4"})
        assert sub.event_ids() == ["e1", "e2", "e4"]
        assert set(sub.objects) == {"c1", "o1", "o2"}

    def test_keep_one_drops_objects(self, fix1):
        sub = sublog(fix1, {"e3"})
        assert sub.event_ids() == ["e3"]
        assert set(sub.objects) == {"o2"}
        assert sub.object_types == {"item"}

    def test_keep_empty(self, fix1):
        sub = sublog(fix1, set())
        assert sub.events == ()
        assert sub.objects == {}

    def test_keep_all_is_identity_on_events(self, fix1):
        sub = sublog(fix1, set(fix1.event_ids()))
        assert sub.events == fix1.events

    def test_unknown_event_id(self, fix1):
        with pytest.raises(UnknownEventId):
            sublog(fix1, {"nope"})

    def test_monotone(self, fix1):
        small = sublog(fix1, {"e1"})
        large = sublog(fix1, {"e1", "e3"})
        assert set(small.event_ids()) <= set(large.event_ids())


class TestRoundTrip:
    def test_fix1_json(self, fix1):
        assert parse_jsonocel(export_jsonocel(fix1)) == fix1

    def test_fix1_xml(self, fix1):
        assert parse_xmlocel(export_xmlocel(fix1)) == fix1

    def test_export_deterministic(self, fix1):
        assert export_jsonocel(fix1) == export_jsonocel(fix1)

    def test_empty_log_export(self, fix1):
        empty = sublog(fix1, set())
        doc = json.loads(export_jsonocel(empty))
        assert doc["ocel:events"] == {}
        assert doc["ocel:objects"] == {}
        assert parse_jsonocel(export_jsonocel(empty)) == empty

    def test_single_event_export(self, fix1):
        sub = sublog(fix1, {"e3"})
        doc = json.loads(export_jsonocel(sub))
        assert len(doc["ocel:events"]) == 1
        assert len(doc["ocel:objects"]) == 1

    @pytest.mark.parametrize("seed", range(5))
    def test_generated_round_trip(self, seed):
        log = generate_log(60, seed=seed)
        assert parse_jsonocel(export_jsonocel(log)) == log
        assert parse_xmlocel(export_xmlocel(log)) == log
