"""Save and load sampled symbols as self-describing ``.npz`` archives.

The archive holds two entries: ``header``, a JSON string, and ``values``, the
complex array of shape ``(N,)*d + (N,)*d``.  Evaluators are not stored, so a
loaded symbol supports on-grid operations only.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .grid import GridSpec
from .symbols import SampledSymbol, SymbolClassParams, SymbolError

FORMAT_NAME = "gevrey-pdo-symbol"
FORMAT_VERSION = 1


def symbol_header(a: SampledSymbol) -> dict:
    p = a.params
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "d": a.grid.d,
        "N": a.grid.N,
        "L": a.grid.L,
        "m": p.m,
        "rho": p.rho,
        "delta": p.delta,
        "s": p.s,
        "R": p.R,
        "support_box": [list(iv) for iv in a.support_box],
        "meta": {k: v for k, v in a.meta.items() if isinstance(v, (str, int, float, bool))},
    }


def save_symbol(path, a: SampledSymbol) -> Path:
    path = Path(path)
    if path.suffix != ".npz":
        path = path.with_suffix(".npz")
    np.savez(path, header=np.array(json.dumps(symbol_header(a), sort_keys=True)), values=a.values)
    return path


def load_symbol(path) -> SampledSymbol:
    with np.load(path, allow_pickle=False) as data:
        try:
            header = json.loads(str(data["header"]))
            values = np.array(data["values"])
        except KeyError as exc:
            raise SymbolError(f"{path}: missing archive entry {exc}") from None
    if header.get("format") != FORMAT_NAME:
        raise SymbolError(f"{path}: not a symbol archive")
    if header.get("version") != FORMAT_VERSION:
        raise SymbolError(f"{path}: unsupported symbol archive version {header.get('version')}")
    grid = GridSpec(int(header["d"]), int(header["N"]), float(header["L"]))
    params = SymbolClassParams(header["m"], header["rho"], header["delta"], header["s"], header["R"])
    return SampledSymbol(grid, values, params, [tuple(iv) for iv in header["support_box"]],
                         None, dict(header.get("meta", {})))
