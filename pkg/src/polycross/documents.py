"""Document (wire) formats: polynomials, crossings, reports, trajectories.

Complex numbers travel as [re, im] pairs and coefficients ascend in power.
Serialization is exact: floats survive a JSON round trip bit-for-bit, so a
report parsed back from its own document compares equal to the original.
"""

from __future__ import annotations

import json
import math
from typing import Any, Dict, List, Optional, Sequence

from .geometry import Crossing, CrossingKind
from .poly import Polynomial
from .solver import RootEstimate, SolverReport, TrackOutcome, VietaDiagnostics
from .tracker import (
    BoundaryReached,
    CriticalPoint,
    RootFound,
    StepLimit,
    TrackEvent,
    Trajectory,
    trajectory_records,
)


class DocumentError(ValueError):
    """Malformed document: wrong shape, bad numbers, or an invalid polynomial."""


def _pair(z: complex) -> List[float]:
    return [z.real, z.imag]


def _un_pair(obj: Any, what: str) -> complex:
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj)
    ):
        raise DocumentError(f"{what} must be a [re, im] pair, got {obj!r}")
    if not all(math.isfinite(float(v)) for v in obj):
        raise DocumentError(f"{what} must be finite, got {obj!r}")
    return complex(float(obj[0]), float(obj[1]))


def poly_to_document(p: Polynomial, label: Optional[str] = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"coeffs": [_pair(c) for c in p.coeffs]}
    if label is not None:
        doc["label"] = label
    return doc


def poly_from_document(doc: Any) -> Polynomial:
    """Parse {"coeffs": [[re, im], ...], "label": optional} into a Polynomial."""
    if not isinstance(doc, dict):
        raise DocumentError(f"polynomial document must be an object, got {type(doc).__name__}")
    coeffs = doc.get("coeffs")
    if not isinstance(coeffs, (list, tuple)) or not coeffs:
        raise DocumentError("coeffs must be a nonempty list of [re, im] pairs")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise DocumentError("label must be a string")
    cs = [_un_pair(c, f"coeffs[{i}]") for i, c in enumerate(coeffs)]
    try:
        return Polynomial(cs)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def crossing_to_dict(c: Crossing) -> Dict[str, Any]:
    return {"r": c.r, "theta": c.theta, "x": c.x, "kind": c.kind.value}


def crossing_from_dict(d: Any) -> Crossing:
    try:
        return Crossing(
            r=float(d["r"]),
            theta=float(d["theta"]),
            x=float(d["x"]),
            kind=CrossingKind(d["kind"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad crossing record: {d!r}") from exc


def event_to_dict(ev: TrackEvent) -> Dict[str, Any]:
    if isinstance(ev, RootFound):
        return {"type": "root_found", "root": _pair(ev.root)}
    if isinstance(ev, CriticalPoint):
        return {"type": "critical_point", "location": _pair(ev.location)}
    if isinstance(ev, BoundaryReached):
        return {"type": "boundary_reached", "r_limit": ev.r_limit}
    if isinstance(ev, StepLimit):
        return {"type": "step_limit"}
    raise DocumentError(f"unknown event {ev!r}")


def event_from_dict(d: Any) -> TrackEvent:
    try:
        kind = d["type"]
        if kind == "root_found":
            return RootFound(root=_un_pair(d["root"], "root"))
        if kind == "critical_point":
            return CriticalPoint(location=_un_pair(d["location"], "location"))
        if kind == "boundary_reached":
            return BoundaryReached(r_limit=float(d["r_limit"]))
        if kind == "step_limit":
            return StepLimit()
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"bad event record: {d!r}") from exc
    raise DocumentError(f"unknown event type {d!r}")


def report_to_document(report: SolverReport) -> Dict[str, Any]:
    return {
        "mode": report.mode,
        "degree": report.degree,
        "complete": report.complete,
        "label": report.label,
        "roots": [
            {
                "root": _pair(e.root),
                "residual": e.residual,
                "multiplicity": e.multiplicity,
            }
            for e in report.roots
        ],
        "tracks": [
            {
                "start": crossing_to_dict(t.start),
                "event": event_to_dict(t.event),
                "steps": t.steps,
            }
            for t in report.tracks
        ],
        "vieta": (
            None
            if report.vieta is None
            else {
                "sum_error": report.vieta.sum_error,
                "product_error": report.vieta.product_error,
            }
        ),
    }


def report_from_document(doc: Any) -> SolverReport:
    try:
        roots = tuple(
            RootEstimate(
                root=_un_pair(e["root"], "root"),
                residual=float(e["residual"]),
                multiplicity=int(e["multiplicity"]),
            )
            for e in doc["roots"]
        )
        tracks = tuple(
            TrackOutcome(
                start=crossing_from_dict(t["start"]),
                event=event_from_dict(t["event"]),
                steps=int(t["steps"]),
            )
            for t in doc["tracks"]
        )
        vieta = doc.get("vieta")
        return SolverReport(
            mode=str(doc["mode"]),
            degree=int(doc["degree"]),
            roots=roots,
            tracks=tracks,
            vieta=(
                None
                if vieta is None
                else VietaDiagnostics(
                    sum_error=float(vieta["sum_error"]),
                    product_error=float(vieta["product_error"]),
                )
            ),
            complete=bool(doc["complete"]),
            label=doc.get("label"),
        )
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"bad report document: {exc}") from exc


def curve_to_document(
    points: Sequence[complex], crossings: Sequence[Crossing], r: float
) -> Dict[str, Any]:
    return {
        "r": r,
        "points": [_pair(z) for z in points],
        "crossings": [crossing_to_dict(c) for c in crossings],
    }


def trajectory_to_records(p: Polynomial, traj: Trajectory) -> List[Dict[str, Any]]:
    """Record dicts in trajectory order plus exactly one terminal event record."""
    recs: List[Dict[str, Any]] = list(trajectory_records(p, traj))
    recs.append({"event": event_to_dict(traj.event)})
    return recs


def dumps(obj: Any) -> str:
    """Locale-independent JSON with exact float repr."""
    return json.dumps(obj, allow_nan=False, separators=(",", ": "), indent=1)
