"""Class cache for interactive fiber queries.

Offline, seed lines populate one cache entry per signature class; online,
a queried line either hits its class (the stored representative diagram
is transferred onto it) or misses (computed directly, and the line
becomes the representative of a newly discovered class).  Classes are
discovered lazily instead of enumerated geometrically.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field

from .diagram import FiberDiagram
from .errors import MorsefiberError, SnapshotError
from .jsonio import diagram_from_points_payload, diagram_points_payload, line_payload
from .line_fiber import (
    LineSignature,
    fiber_diagram,
    pushed_criticals,
    signature,
    transfer,
)
from .lines import Line
from .rank_invariant import RankEngine
from .rationals import format_rational, parse_rational


@dataclass
class ClassCacheEntry:
    class_id: str
    signature: LineSignature
    representative: Line
    diagrams: dict[int, FiberDiagram] = field(default_factory=dict)
    hit_count: int = 0


@dataclass(frozen=True)
class QueryResult:
    diagram: FiberDiagram
    cache_status: str  # "hit" | "miss"
    class_id: str
    timing_micros: int


@dataclass(frozen=True)
class PrecomputeStats:
    classes_discovered: int
    duplicates: int
    errors: tuple[str, ...]


class FiberCache:
    """Signature-keyed cache of representative-line diagrams."""

    def __init__(self, engine: RankEngine):
        self.engine = engine
        self.entries: dict[str, ClassCacheEntry] = {}
        self._lock = threading.Lock()

    def default_degrees(self) -> tuple[int, ...]:
        return tuple(range(max(self.engine.filtration.max_dim, 0) + 1))

    def _entry_for(self, sig: LineSignature) -> ClassCacheEntry | None:
        entry = self.entries.get(sig.class_id())
        if entry is not None and entry.signature != sig:
            # 64-bit digest collision; resolved by exact comparison.
            raise MorsefiberError("signature hash collision between distinct classes")
        return entry

    def _ensure_degrees(self, entry: ClassCacheEntry, degrees) -> None:
        for dim in degrees:
            if dim not in entry.diagrams:
                entry.diagrams[dim] = fiber_diagram(
                    self.engine, entry.representative, [dim]
                )

    def _assemble(self, entry: ClassCacheEntry, degrees) -> FiberDiagram:
        points = []
        for dim in degrees:
            points.extend(entry.diagrams[dim].points)
        return FiberDiagram.build(entry.representative, degrees, points)

    def _insert(self, sig: LineSignature, line: Line, degrees) -> ClassCacheEntry:
        entry = ClassCacheEntry(
            class_id=sig.class_id(), signature=sig, representative=line
        )
        self._ensure_degrees(entry, degrees)
        with self._lock:
            entry = self.entries.setdefault(entry.class_id, entry)
        return entry

    def precompute(self, seed_lines) -> PrecomputeStats:
        discovered = 0
        duplicates = 0
        errors = []
        degrees = self.default_degrees()
        for k, line in enumerate(seed_lines):
            try:
                sig = signature(self.engine.cbar, line)
                if self._entry_for(sig) is None:
                    self._insert(sig, line, degrees)
                    discovered += 1
                else:
                    duplicates += 1
            except MorsefiberError as exc:
                errors.append(f"seed {k}: {exc}")
        return PrecomputeStats(discovered, duplicates, tuple(errors))

    def query(self, line: Line, degrees=None) -> QueryResult:
        started = time.perf_counter_ns()
        degrees = tuple(sorted(set(degrees))) if degrees else self.default_degrees()
        sig = signature(self.engine.cbar, line)
        entry = self._entry_for(sig)
        if entry is not None:
            entry.hit_count += 1
            status = "hit"
        else:
            # A concurrent miss on the same class may race us; setdefault
            # keeps the first entry and we transfer from it like a hit.
            entry = self._insert(sig, line, degrees)
            status = "miss"
        self._ensure_degrees(entry, degrees)
        diagram = self._assemble(entry, degrees)
        if entry.representative != line:
            diagram = transfer(self.engine.cbar, diagram, line)
        elapsed = (time.perf_counter_ns() - started) // 1000
        return QueryResult(
            diagram=diagram,
            cache_status=status,
            class_id=entry.class_id,
            timing_micros=int(elapsed),
        )

    def stops_for(self, line: Line):
        return pushed_criticals(self.engine.cbar, line)

    # -- snapshot persistence ------------------------------------------------

    def save_snapshot(self, path) -> None:
        entries = []
        for entry in sorted(self.entries.values(), key=lambda e: e.class_id):
            entries.append(
                {
                    "classId": entry.class_id,
                    "representative": line_payload(entry.representative),
                    "hitCount": entry.hit_count,
                    "signature": [
                        {
                            "grade": [format_rational(x) for x in grade],
                            "face": sorted(entry.signature.faces[grade]),
                        }
                        for grade in sorted(entry.signature.faces)
                    ],
                    "diagrams": {
                        str(dim): diagram_points_payload(entry.diagrams[dim])
                        for dim in sorted(entry.diagrams)
                    },
                }
            )
        with open(path, "w", encoding="utf-8") as fh:
            json.dump({"version": 1, "entries": entries}, fh, sort_keys=True, indent=1)

    def load_snapshot(self, path) -> int:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        loaded = 0
        for raw in data.get("entries", []):
            rep = Line(
                base=tuple(parse_rational(x) for x in raw["representative"]["base"]),
                direction=tuple(parse_rational(x) for x in raw["representative"]["dir"]),
            )
            sig = signature(self.engine.cbar, rep)
            if sig.class_id() != raw["classId"]:
                raise SnapshotError(
                    "snapshot entry does not match this dataset "
                    f"(stored class {raw['classId']}, recomputed {sig.class_id()})"
                )
            entry = ClassCacheEntry(
                class_id=raw["classId"],
                signature=sig,
                representative=rep,
                hit_count=int(raw.get("hitCount", 0)),
            )
            for dim_text, payload in raw.get("diagrams", {}).items():
                dim = int(dim_text)
                entry.diagrams[dim] = diagram_from_points_payload(rep, [dim], payload)
            with self._lock:
                self.entries.setdefault(entry.class_id, entry)
            loaded += 1
        return loaded
