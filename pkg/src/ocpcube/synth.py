"""Synthetic OCEL generator with controllable size and attribute counts.

Used by the ``bench`` subcommand for scaling checks and by the test suite
as a source of random-but-reproducible logs.
"""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

from .ocel import OCEL, Event, ObjectInstance

__all__ = ["generate_log"]

_ACTIVITIES = [
    "create", "check", "pick", "pack", "ship", "invoice", "pay", "close",
]


def generate_log(
    n_events: int,
    n_event_attrs: int = 4,
    n_object_attrs: int = 4,
    n_object_types: int = 3,
    max_objects_per_event: int = 5,
    seed: int = 0,
    missing_rate: float = 0.1,
) -> OCEL:
    """Build a reproducible random OCEL.

    Events reference 1..max_objects_per_event objects drawn from a shared
    pool, giving the one-to-many event/object relationship that drives
    object-attribute materialization cost. A fraction of attribute values
    is left absent so the missing-value bucket is exercised.
    """
    rng = random.Random(seed)
    types = [f"type{t}" for t in range(n_object_types)]
    event_attrs = [f"eattr{i}" for i in range(n_event_attrs)]
    object_attrs = [f"oattr{i}" for i in range(n_object_attrs)]

    n_objects = max(4, n_events // 3)
    objects: dict[str, ObjectInstance] = {}
    for i in range(n_objects):
        otype = types[i % len(types)]
        ovmap = {
            name: f"v{rng.randrange(4)}"
            for name in object_attrs
            if rng.random() >= missing_rate
        }
        oid = f"{otype}-{i}"
        objects[oid] = ObjectInstance(oid, otype, ovmap)
    pool = list(objects)

    start = datetime(2024, 1, 1, tzinfo=timezone.utc)
    events: list[Event] = []
    clock = start
    for i in range(n_events):
        clock += timedelta(seconds=rng.randrange(1, 120))
        k = rng.randrange(1, max_objects_per_event + 1)
        omap = tuple(dict.fromkeys(rng.choices(pool, k=k)))
        vmap = {
            name: f"w{rng.randrange(4)}"
            for name in event_attrs
            if rng.random() >= missing_rate
        }
        events.append(
            Event(
                id=f"e{i:06d}",
                activity=rng.choice(_ACTIVITIES),
                timestamp=clock,
                vmap=vmap,
                omap=omap,
            )
        )

    return OCEL(
        events=tuple(events),
        objects=objects,
        attribute_names=frozenset(event_attrs),
        object_types=frozenset(types),
    )
