"""JSON report envelope shared by the CLI and the corpus runner."""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .ratfun import QI, RatFun
from .ratfun.points import ApproxPoint, Infinity, point_to_json

SCHEMA = 1
VERDICTS = ("pass", "fail", "inconclusive")


def make_report(command: str, inputs: dict, parameters: dict, results: dict, verdict: str,
                timing: float | None = None, provenance: dict | None = None) -> dict:
    if verdict not in VERDICTS:
        raise ValueError(f"unknown verdict {verdict!r}")
    rep = {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "parameters": parameters,
        "results": results,
        "verdict": verdict,
    }
    if provenance is not None:
        rep["provenance"] = provenance
    if timing is not None:
        rep["timing_seconds"] = round(timing, 3)
    return rep


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (QI, ApproxPoint, Infinity)):
        return point_to_json(o)
    if isinstance(o, RatFun):
        return str(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, (complex, np.complexfloating)):
        return [float(o.real), float(o.imag)]
    if isinstance(o, np.ndarray):
        return o.tolist()
    if hasattr(o, "to_json"):
        return o.to_json()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(report, default=_default, indent=2, allow_nan=True) + "\n"


def write(report: dict, path: str) -> None:
    text = dumps(report)
    if path == "-":
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def exact(value) -> dict:
    """Provenance wrapper for exactly known values."""
    return {"value": value, "exact": True}


def approx(value: float, error_bound: float | None = None) -> dict:
    out = {"value": value, "exact": False}
    if error_bound is not None:
        out["error_bound"] = error_bound
    return out
