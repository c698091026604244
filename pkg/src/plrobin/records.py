"""Record serialization: canonical JSON/CSV with 12-significant-digit floats."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile

import numpy as np

from .problem import Annulus, Ball
from .shooting import RadialSolution
from .verify import ComparisonRecord, Rectangle

__all__ = ["round12", "canonical", "domain_dict", "eigen_record",
           "comparison_record_dict", "profile_csv", "records_csv",
           "json_text", "write_atomic"]


def round12(x: float) -> float:
    """Round to 12 significant digits so repeated runs print identically."""
    return float(f"{x:.12g}")


def canonical(obj):
    """Recursively round floats; leaves ints, strings and bools alone."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return round12(float(obj))
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [canonical(v) for v in obj]
    return obj


def domain_dict(dom) -> dict:
    if isinstance(dom, Ball):
        return {"kind": "ball", "radius": dom.radius}
    if isinstance(dom, Annulus):
        return {"kind": "annulus", "inner": dom.inner, "outer": dom.outer}
    if isinstance(dom, Rectangle):
        return {"kind": "rectangle", "lx": dom.lx, "ly": dom.ly}
    raise TypeError(f"unknown domain {dom!r}")


def eigen_record(sol: RadialSolution) -> dict:
    rec = {
        "kappa": sol.space.curvature_sign,
        "n": sol.space.dimension,
        "p": sol.params.p,
        "beta": sol.params.beta,
        "domain": domain_dict(sol.domain),
        "lambda": sol.lam,
        "residual": sol.residual,
        "tol": sol.tol,
    }
    if sol.space.sphere_radius is not None:
        rec["sphere_radius"] = sol.space.sphere_radius
    return canonical(rec)


def comparison_record_dict(rec: ComparisonRecord) -> dict:
    out = {
        "kappa": rec.kappa,
        "n": rec.n,
        "p": rec.p,
        "beta": rec.beta,
        "domain": domain_dict(rec.domain),
        "alpha": rec.alpha,
        "lambda_domain": rec.lambda_domain,
        "sharp_radius": rec.sharp_radius,
        "lambda_ball": rec.lambda_ball,
        "gap": rec.gap,
        "perimeter": rec.perimeter,
        "sharp_perimeter": rec.sharp_perimeter,
        "isoperimetric_gap": rec.isoperimetric_gap,
        "flagged": rec.flagged,
    }
    if rec.sphere_radius is not None:
        out["sphere_radius"] = rec.sphere_radius
    return canonical(out)


def profile_csv(sol: RadialSolution) -> str:
    """Solution profiles as CSV with columns r, v, w, f."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r", "v", "w", "f"])
    for r, v, w, f in zip(sol.grid, sol.v, sol.w, sol.f):
        writer.writerow([f"{x:.12g}" for x in (r, v, w, f)])
    return buf.getvalue()


def _flatten(record: dict) -> dict:
    flat = {}
    for key, value in record.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                flat[f"{key}_{sub}"] = v
        else:
            flat[key] = value
    return flat


def records_csv(records: list[dict]) -> str:
    """CSV mirror of a JSON record list, one row per record."""
    rows = [_flatten(canonical(r)) for r in records]
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, restval="",
                            lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(canonical(obj), indent=2, sort_keys=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
