"""Persistence: solution files, OBJ meshes, CSV sweeps.

Solution files are a single self-describing JSON text document with an
explicit schema version.  All floats are rendered with 17 significant
digits, which round-trips IEEE doubles exactly and keeps output
byte-identical across runs with the same inputs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .geometry import ZigzagParams, build_vertices
from .height import SolutionRecord, TraceRow
from .scmap import Prevertices
from .weierstrass import SurfaceMesh, WeierstrassData, build_weierstrass

SCHEMA_VERSION = 1

__all__ = [
    "SolutionFile",
    "solution_to_record",
    "record_to_solution",
    "save_solution",
    "load_solution",
    "write_obj",
    "write_csv",
]


def _fmt(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(float(x), ".17g")


def _render(obj) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(k)}: {_render(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, complex):
        return _render([obj.real, obj.imag])
    return json.dumps(obj)


@dataclass(frozen=True)
class SolutionFile:
    data: dict

    def dumps(self) -> str:
        return _render(self.data) + "\n"


def record_to_solution(record: SolutionRecord,
                       wd: WeierstrassData | None = None) -> SolutionFile:
    tr = record.trace
    summary = {
        "iterations": len(tr),
        "final_height": tr[-1].height if tr else record.height,
        "final_grad_norm": tr[-1].grad_norm if tr else math.nan,
        "min_stratum_distance": min((row.stratum_distance for row in tr),
                                    default=math.nan),
    }
    data = {
        "schema_version": SCHEMA_VERSION,
        "genus": record.zigzag.genus,
        "turn_order": record.zigzag.turn_order,
        "side_lengths": list(record.zigzag.side_lengths),
        "prev_ne": list(record.prev_ne.values),
        "prev_sw": list(record.prev_sw.values),
        "ext_ne": list(record.ext_ne),
        "ext_sw": list(record.ext_sw),
        "height": record.height,
        "converged": record.converged,
        "trace_summary": summary,
    }
    if wd is None and record.converged:
        wd = build_weierstrass(record)
    if wd is not None:
        data["weierstrass"] = {
            "prevertices": list(wd.prevertices.values),
            "scale_ne": complex(wd.scale_ne),
            "scale_sw": complex(wd.scale_sw),
            "dh_scale": complex(wd.dh_scale),
        }
    return SolutionFile(data)


def solution_to_record(sf: SolutionFile) -> SolutionRecord:
    d = sf.data
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {d.get('schema_version')}")
    z = ZigzagParams(int(d["genus"]), int(d["turn_order"]),
                     tuple(d["side_lengths"]))
    summary = d.get("trace_summary", {})
    row = TraceRow(
        int(summary.get("iterations", 0)),
        float(summary.get("final_height", d["height"])),
        float(summary.get("final_grad_norm", math.nan)),
        float(summary.get("min_stratum_distance", math.nan)),
    )
    return SolutionRecord(
        z,
        Prevertices(tuple(d["prev_ne"])),
        Prevertices(tuple(d["prev_sw"])),
        tuple(d["ext_ne"]),
        tuple(d["ext_sw"]),
        float(d["height"]),
        bool(d["converged"]),
        (row,),
    )


def weierstrass_from_solution(sf: SolutionFile) -> WeierstrassData:
    """Rebuild WeierstrassData from the stored constants (no re-solve)."""
    d = sf.data
    w = d.get("weierstrass")
    if w is None:
        raise ValueError("solution file carries no weierstrass block")

    def as_complex(v):
        return complex(v[0], v[1])

    z = ZigzagParams(int(d["genus"]), int(d["turn_order"]), tuple(d["side_lengths"]))
    return WeierstrassData(
        int(d["genus"]),
        int(d["turn_order"]),
        Prevertices(tuple(w["prevertices"])),
        as_complex(w["scale_ne"]),
        as_complex(w["scale_sw"]),
        as_complex(w["dh_scale"]),
        build_vertices(z),
    )


def save_solution(path, record: SolutionRecord, wd=None) -> None:
    with open(path, "w") as fh:
        fh.write(record_to_solution(record, wd).dumps())


def load_solution(path) -> SolutionFile:
    with open(path) as fh:
        return SolutionFile(json.load(fh))


def write_obj(path, mesh: SurfaceMesh) -> None:
    """Wavefront OBJ with 1-based faces; symmetry generators in comments."""
    lines = []
    for gen in mesh.symmetries:
        entry = f"# sym {gen.name} {gen.description}"
        if gen.matrix is not None:
            flat = " ".join(_fmt(x) for row in gen.matrix for x in row)
            entry += f" | matrix {flat}"
        lines.append(entry)
    for v in mesh.vertices:
        lines.append(f"v {_fmt(v[0])} {_fmt(v[1])} {_fmt(v[2])}")
    for t in mesh.triangles:
        lines.append(f"f {t[0] + 1} {t[1] + 1} {t[2] + 1}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_csv(path, header: list[str], rows) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) if isinstance(x, float) else str(x)
                             for x in row) + "\n")
