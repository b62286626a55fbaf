"""File formats: matrix-json, vectors, specs, Kraus sets, environment
states, evolution traces and dilation profiles.

All floating-point output is printed with 17 significant digits so that
every value round-trips exactly; emission order is fixed, making outputs
byte-reproducible.
"""

from __future__ import annotations

import json

import numpy as np

from .battery import EnvState
from .choi import ChoiMatrix, FixedPointSpec
from .dual_map import EvolutionTrace, KrausSet
from .errors import DimensionError
from .metric import MetricProfile


def fmt(x: float) -> str:
    """17-significant-digit decimal form of a float."""
    return format(float(x), ".17g")


def _emit(obj) -> str:
    """Deterministic JSON with 17-digit floats (insertion-ordered keys)."""
    if isinstance(obj, dict):
        inner = ",".join(f"{json.dumps(k)}:{_emit(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_emit(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(float(obj))
    if obj is None:
        return "null"
    return json.dumps(obj)


def dumps(obj) -> str:
    """Serialize to a single JSON line with a trailing newline."""
    return _emit(obj) + "\n"


# --- matrices and vectors ------------------------------------------------

def matrix_to_json(m) -> dict:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={a.ndim}")
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "re": [float(x) for x in a.real.reshape(-1)],
        "im": [float(x) for x in a.imag.reshape(-1)],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.size != rows * cols or im.size != rows * cols:
        raise DimensionError(
            f"matrix payload has {re.size}/{im.size} entries, expected {rows * cols}"
        )
    return (re + 1j * im).reshape(rows, cols)


def vector_to_json(v) -> dict:
    a = np.asarray(v, dtype=complex).reshape(-1)
    return {"re": [float(x) for x in a.real], "im": [float(x) for x in a.imag]}


def vector_from_json(obj: dict) -> np.ndarray:
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.size != im.size:
        raise DimensionError("vector re/im lengths differ")
    return re + 1j * im


# --- composite objects ----------------------------------------------------

def spec_to_json(spec: FixedPointSpec) -> dict:
    return {"A": matrix_to_json(spec.a), "v": vector_to_json(spec.v)}


def spec_from_json(obj: dict) -> FixedPointSpec:
    return FixedPointSpec(a=matrix_from_json(obj["A"]), v=vector_from_json(obj["v"]))


def choi_to_json(z: ChoiMatrix) -> dict:
    payload = {"dim": int(z.dim)}
    payload.update(matrix_to_json(z.matrix))
    return payload


def choi_from_json(obj: dict) -> ChoiMatrix:
    return ChoiMatrix(dim=int(obj["dim"]), matrix=matrix_from_json(obj))


def kraus_to_json(k: KrausSet) -> dict:
    return {
        "dim": int(k.dim),
        "ops": [{"tag": tag, "matrix": matrix_to_json(op)} for tag, op in k.ops],
    }


def kraus_from_json(obj: dict) -> KrausSet:
    ops = tuple(
        (entry["tag"], matrix_from_json(entry["matrix"])) for entry in obj["ops"]
    )
    return KrausSet(dim=int(obj["dim"]), ops=ops)


def env_to_json(env: EnvState) -> dict:
    return {
        "d": int(env.dim),
        "spectrum": [float(s) for s in env.spectrum],
        "V": matrix_to_json(env.basis),
    }


def env_from_json(obj: dict) -> EnvState:
    return EnvState(
        dim=int(obj["d"]),
        spectrum=np.asarray(obj["spectrum"], dtype=float),
        basis=matrix_from_json(obj["V"]),
    )


# --- traces and profiles ---------------------------------------------------

def trace_to_csv(trace: EvolutionTrace) -> str:
    lines = ["t,expectation"]
    for t, x in zip(trace.times, trace.values):
        lines.append(f"{fmt(t)},{fmt(x)}")
    return "\n".join(lines) + "\n"


def trace_to_json(trace: EvolutionTrace) -> dict:
    return {
        "times": [float(t) for t in trace.times],
        "values": [float(x) for x in trace.values],
        "phi": float(trace.phi_fit),
    }


def profile_to_csv(profile: MetricProfile) -> str:
    lines = ["r,target,phi,clipped"]
    for rec in profile.records:
        flag = "true" if rec.clipped else "false"
        lines.append(
            f"{fmt(rec.r)},{fmt(rec.target_factor)},{fmt(rec.phi_achieved)},{flag}"
        )
    return "\n".join(lines) + "\n"


def profile_to_json(profile: MetricProfile, verbose: bool = False) -> dict:
    records = []
    for rec in profile.records:
        entry = {
            "r": float(rec.r),
            "target": float(rec.target_factor),
            "phi": float(rec.phi_achieved),
            "clipped": bool(rec.clipped),
        }
        if verbose:
            entry["env"] = env_to_json(rec.env)
        records.append(entry)
    return {
        "M": float(profile.params.M),
        "r0": float(profile.params.r0),
        "d": int(profile.params.d),
        "records": records,
    }
