"""Shared fixtures: the canonical 4-event order/item log in both formats."""

from __future__ import annotations

import json

import pytest

FIX1_DOC = {
    "ocel:global-log": {
        "ocel:attribute-names": ["channel"],
        "ocel:object-types": ["item", "order"],
    },
    "ocel:events": {
        "e1": {
            "ocel:activity": "place",
            "ocel:timestamp": "2024-01-01T10:00:00Z",
            "ocel:omap": ["c1", "o1", "o2"],
            "ocel:vmap": {"channel": "web"},
        },
        "e2": {
            "ocel:activity": "pick",
            "ocel:timestamp": "2024-01-01T10:05:00Z",
            "ocel:omap": ["o1"],
            "ocel:vmap": {"channel": "web"},
        },
        "e3": {
            "ocel:activity": "pick",
            "ocel:timestamp": "2024-01-01T10:10:00Z",
            "ocel:omap": ["o2"],
            "ocel:vmap": {"channel": "phone"},
        },
        "e4": {
            "ocel:activity": "ship",
            "ocel:timestamp": "2024-01-01T10:20:00Z",
            "ocel:omap": ["c1", "o1", "o2"],
            "ocel:vmap": {"channel": "web"},
        },
    },
    "ocel:objects": {
        "o1": {"ocel:type": "item", "ocel:ovmap": {"product": "X"}},
        "o2": {"ocel:type": "item", "ocel:ovmap": {"product": "Y"}},
        "c1": {"ocel:type": "order", "ocel:ovmap": {}},
    },
}

FIX1_XML = b"""<?xml version='1.0' encoding='utf-8'?>
<log>
  <global scope="log">
    <list key="attribute-names">
      <string key="attribute-name" value="channel"/>
    </list>
    <list key="object-types">
      <string key="object-type" value="item"/>
      <string key="object-type" value="order"/>
    </list>
  </global>
  <events>
    <event>
      <string key="id" value="e1"/>
      <string key="activity" value="place"/>
      <date key="timestamp" value="2024-01-01T10:00:00Z"/>
      <list key="omap">
        <string key="object-id" value="c1"/>
        <string key="object-id" value="o1"/>
        <string key="object-id" value="o2"/>
      </list>
      <list key="vmap">
        <string key="channel" value="web"/>
      </list>
    </event>
    <event>
      <string key="id" value="e2"/>
      <string key="activity" value="pick"/>
      <date key="timestamp" value="2024-01-01T10:05:00Z"/>
      <list key="omap">
        <string key="object-id" value="o1"/>
      </list>
      <list key="vmap">
        <string key="channel" value="web"/>
      </list>
    </event>
    <event>
      <string key="id" value="e3"/>
      <string key="activity" value="pick"/>
      <date key="timestamp" value="2024-01-01T10:10:00Z"/>
      <list key="omap">
        <string key="object-id" value="o2"/>
      </list>
      <list key="vmap">
        <string key="channel" value="phone"/>
      </list>
    </event>
    <event>
      <string key="id" value="e4"/>
      <string key="activity" value="ship"/>
      <date key="timestamp" value="2024-01-01T10:20:00Z"/>
      <list key="omap">
        <string key="object-id" value="c1"/>
        <string key="object-id" value="o1"/>
        <string key="object-id" value="o2"/>
      </list>
      <list key="vmap">
        <string key="channel" value="web"/>
      </list>
    </event>
  </events>
  <objects>
    <object>
      <string key="id" value="o1"/>
      <string key="type" value="item"/>
      <list key="ovmap">
        <string key="product" value="X"/>
      </list>
    </object>
    <object>
      <string key="id" value="o2"/>
      <string key="type" value="item"/>
      <list key="ovmap">
        <string key="product" value="Y"/>
      </list>
    </object>
    <object>
      <string key="id" value="c1"/>
      <string key="type" value="order"/>
      <list key="ovmap"/>
    </object>
  </objects>
</log>
"""


def fix1_json_bytes() -> bytes:
    return json.dumps(FIX1_DOC).encode("utf-8")


@pytest.fixture
def fix1_bytes() -> bytes:
    return fix1_json_bytes()


@pytest.fixture
def fix1_xml_bytes() -> bytes:
    return FIX1_XML


@pytest.fixture
def fix1():
    from ocpcube import parse_jsonocel

    return parse_jsonocel(fix1_json_bytes())
