"""Classification reports: construction, JSON round trip and text tables."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field, fields
from typing import Any

from . import families
from .action import TwistedAction, orbits, orbit_count
from .slice import signature

SCHEMA_VERSION = "1"


@dataclass
class OrbitEntry:
    representative: list[int]
    size: int
    diag: str | None = None
    canonical_form: list[int] | None = None
    canonical_label: str | None = None
    signature: list[int] | None = None


@dataclass
class ClassificationReport:
    family: dict[str, Any]
    orbits: list[OrbitEntry]
    counts: dict[str, int]
    engine: dict[str, Any]
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ClassificationReport:
        known = {f.name for f in fields(OrbitEntry)}
        entries = [OrbitEntry(**{k: v for k, v in o.items() if k in known}) for o in data["orbits"]]
        return cls(
            family=data["family"],
            orbits=entries,
            counts=data["counts"],
            engine=data["engine"],
            schema_version=data.get("schema_version", SCHEMA_VERSION),
        )

    @classmethod
    def from_json(cls, text: str) -> ClassificationReport:
        return cls.from_dict(json.loads(text))


def diag_string(coords) -> str:
    return "diag(" + ",".join("-1" if c else "1" for c in coords) + ")"


def _canonical_labels(p: int, q: int) -> dict[tuple[int, ...], str]:
    forms = families.canonical_forms_sl_so(p, q)
    labels = {}
    for k in range(p // 2 + 1):
        labels[forms[k].coords] = f"s_{k}"
    for k in range(1, q // 2 + 1):
        labels[forms[p // 2 + k].coords] = f"s'_{k}"
    return labels


def classify(
    action: TwistedAction,
    *,
    family: dict[str, Any],
    mode: str = "twisted",
    p: int | None = None,
    q: int | None = None,
    compare: bool = False,
    limit: int | None = None,
    engine: str = "bfs",
) -> ClassificationReport:
    start = time.perf_counter()
    result = orbits(action, engine=engine, limit=limit, members=False)
    counts = {mode: len(result)}
    if compare and p is not None:
        for other in families.MODES:
            if other not in counts:
                counts[other] = orbit_count(families.build(p, q, other), limit=limit)
    elapsed = (time.perf_counter() - start) * 1000

    sl_so = p is not None
    canon = {}
    if sl_so and mode == "twisted":
        labels = _canonical_labels(p, q)
        for form in families.canonical_forms_sl_so(p, q):
            canon[result.index_of(form)] = form
    entries = []
    for i, orb in enumerate(result):
        rep = list(orb.representative.coords)
        entry = OrbitEntry(representative=rep, size=orb.size)
        if sl_so:
            entry.diag = diag_string(rep)
        if i in canon:
            form = canon[i]
            entry.canonical_form = list(form.coords)
            entry.canonical_label = labels[form.coords]
            entry.signature = list(signature(form, p, q))
        entries.append(entry)

    return ClassificationReport(
        family=family,
        orbits=entries,
        counts=counts,
        engine={
            "name": engine,
            "state_count": action.states.order,
            "runtime_ms": round(elapsed, 3),
            "fingerprint": result.fingerprint,
        },
    )


def format_classification(report: ClassificationReport) -> str:
    fam = report.family
    lines = [
        f"family:   {fam.get('description', '')}",
        f"states:   {report.engine['state_count']}",
        "counts:   " + "  ".join(f"{k}={v}" for k, v in report.counts.items()),
        "",
    ]
    width = max(len("representative"), *(len("".join(map(str, o.representative))) for o in report.orbits))
    header = f"{'#':>3}  {'representative':<{width}}  {'size':>8}"
    has_diag = any(o.diag for o in report.orbits)
    has_canon = any(o.canonical_label for o in report.orbits)
    if has_diag:
        dwidth = max(len("diag"), *(len(o.diag or "") for o in report.orbits))
        header += f"  {'diag':<{dwidth}}"
    if has_canon:
        header += f"  {'canonical':<9}  {'signature':<9}"
    lines.append(header)
    for i, o in enumerate(report.orbits, 1):
        row = f"{i:>3}  {''.join(map(str, o.representative)):<{width}}  {o.size:>8}"
        if has_diag:
            row += f"  {o.diag:<{dwidth}}"
        if has_canon:
            sig = f"({o.signature[0]},{o.signature[1]})" if o.signature else "-"
            row += f"  {o.canonical_label or '-':<9}  {sig:<9}"
        lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


@dataclass
class TableRow:
    p: int
    q: int
    twisted: int
    plain_w00: int
    match: bool = field(init=False)

    def __post_init__(self):
        self.match = self.twisted == self.plain_w00


def recipe_table(max_n: int, limit: int | None = None) -> list[TableRow]:
    rows = []
    for n in range(2, max_n + 1):
        for p in range(1, n):
            q = n - p
            tw = orbit_count(families.build_sl_so(p, q), limit=limit)
            w00 = orbit_count(families.build_plain_w00(p, q), limit=limit)
            rows.append(TableRow(p, q, tw, w00))
    return rows


def format_table(rows: list[TableRow]) -> str:
    lines = [f"{'p':>3} {'q':>3} {'n':>3} {'twisted':>8} {'w00':>8}  flag"]
    for r in rows:
        flag = "match" if r.match else "mismatch"
        lines.append(f"{r.p:>3} {r.q:>3} {r.p + r.q:>3} {r.twisted:>8} {r.plain_w00:>8}  {flag}")
    return "\n".join(lines) + "\n"


def table_json(rows: list[TableRow]) -> str:
    return json.dumps(
        {"schema_version": SCHEMA_VERSION, "rows": [asdict(r) for r in rows]},
        indent=2,
        sort_keys=True,
    )
