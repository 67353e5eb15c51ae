"""Deterministic CSV/JSON writers: fixed key order, 17-significant-digit floats.

Identical inputs must produce byte-identical files, so floats are formatted
with %.17g (exact round trip), dict key order is preserved as built, and no
timestamps or environment data ever enter a report.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = ["format_float", "dumps_json", "write_json", "write_norms_csv", "format_p"]


def format_float(x: float) -> str:
    if math.isnan(x):
        raise ValueError("NaN cannot appear in a report; encode failures explicitly")
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return f"{x:.17g}"


def format_p(p: float) -> str:
    """Key for a Lebesgue exponent: integers bare, inf literal."""
    if math.isinf(p):
        return "inf"
    if float(p).is_integer():
        return str(int(p))
    return repr(float(p))


def dumps_json(obj, indent: int = 0) -> str:
    pad = " " * indent
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{out}"'
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        inner = ",\n".join(pad + "  " + dumps_json(v, indent + 2) for v in obj)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for k, v in obj.items():
            items.append(pad + "  " + f'"{k}": ' + dumps_json(v, indent + 2))
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_json(obj, path: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        fh.write(dumps_json(obj))
        fh.write("\n")


def write_norms_csv(series, p_list, path: str) -> None:
    """NormSeries CSV: t, norm_p_<p> per finite p, norm_inf, min_theta, max_theta."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    finite_ps = [p for p in p_list if not math.isinf(p)]
    header = ["t"] + [f"norm_p_{format_p(p)}" for p in finite_ps] + [
        "norm_inf", "min_theta", "max_theta",
    ]
    inf_norms = series.norms.get(math.inf)
    if inf_norms is None:
        # sup norm is derivable from the tracked extrema
        inf_norms = [max(abs(lo), abs(hi)) for lo, hi in zip(series.min_theta, series.max_theta)]
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for i, t in enumerate(series.times):
            row = [f"{t:.17g}"]
            row += [f"{series.norms[p][i]:.17g}" for p in finite_ps]
            row.append(f"{inf_norms[i]:.17g}")
            row.append(f"{series.min_theta[i]:.17g}")
            row.append(f"{series.max_theta[i]:.17g}")
            fh.write(",".join(row) + "\n")
