"""Report assembly and byte-stable JSON / text emission."""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .autos import AutGroup
from .groups import FiniteGroup
from .search import DeterminingReport, GeneratingReport
from .suite import SuiteReport


def group_report(g: FiniteGroup, alpha: DeterminingReport | None = None,
                 gamma: GeneratingReport | None = None, aut: AutGroup | None = None,
                 capped: dict[str, Any] | None = None, **extra: Any) -> dict:
    """Report dict for a single group; absent quantities are simply left out."""
    rep: dict[str, Any] = {"descriptor": g.descriptor, "order": g.order, "nodes": 0, "millis": 0,
                           "witnesses": {}, "capped_flags": {}}
    if alpha is not None:
        rep["alpha"] = alpha.alpha
        rep["method"] = alpha.method
        rep["witnesses"]["alpha"] = [g.labels[x] for x in alpha.witness]
        rep["nodes"] += alpha.nodes_explored
        rep["capped_flags"]["alpha"] = False
    if gamma is not None:
        rep["gamma"] = gamma.gamma
        rep["witnesses"]["gamma"] = [g.labels[x] for x in gamma.witness]
        rep["nodes"] += gamma.nodes_explored
        rep["capped_flags"]["gamma"] = False
    if aut is not None:
        rep["aut_order"] = aut.order
        rep["aut_generators"] = [list(s.image) for s in aut.generators]
        rep["capped_flags"]["aut"] = aut.capped
    for key, value in (capped or {}).items():
        rep["capped_flags"][key] = True
        rep.setdefault("bounds", {})[key] = value
    rep.update(extra)
    return rep


def suite_report(report: SuiteReport, order: int | None = None) -> dict:
    return {
        "descriptor": report.catalog,
        "order": order,
        "capped_flags": {"suite": any(e.verdict == "skip" for e in report.entries)},
        "witnesses": {},
        "nodes": 0,
        "millis": report.millis,
        "suite_entries": [e.as_dict() for e in report.entries],
        "summary": {v: report.count(v) for v in ("pass", "fail", "skip")},
    }


def _plain(obj: Any) -> Any:
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _text(rep: dict) -> str:
    lines = []
    scalars = {k: v for k, v in rep.items() if k not in ("suite_entries", "groups", "aut_generators")}
    width = max(map(len, scalars), default=0)
    for key in sorted(scalars):
        value = scalars[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, default=_plain)
        lines.append(f"{key:<{width}}  {value}")
    if "groups" in rep:
        lines.append("")
        lines += [f"{g['order']:>6}  {g['descriptor']}" for g in rep["groups"]]
    if "aut_generators" in rep:
        lines.append("")
        lines += [" ".join(map(str, s)) for s in rep["aut_generators"]]
    if "suite_entries" in rep:
        entries = rep["suite_entries"]
        gw = max([len("group")] + [len(e["group"]) for e in entries])
        cw = max([len("check")] + [len(e["check"]) for e in entries])
        lines.append("")
        lines.append(f"{'group':<{gw}}  {'check':<{cw}}  verdict")
        for e in entries:
            lines.append(f"{e['group']:<{gw}}  {e['check']:<{cw}}  {e['verdict']}")
            if e["verdict"] == "fail":
                lines.append(f"{'':<{gw}}  {json.dumps(e['detail'], sort_keys=True, default=_plain)}")
    return "\n".join(lines) + "\n"


def emit_report(rep: dict, fmt: str = "json") -> bytes:
    """Serialize a report; identical input gives identical bytes."""
    if fmt == "json":
        return (json.dumps(rep, sort_keys=True, indent=2, default=_plain) + "\n").encode()
    if fmt == "text":
        return _text(rep).encode()
    raise ValueError(f"unknown format {fmt!r}")
