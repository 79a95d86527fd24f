"""Golden files: frozen exact values under ``<dir>/<ring>/<invariant>.json``.

The files are plain sorted JSON so that a changed value shows up as a
readable diff.
"""

from __future__ import annotations

import json
import os
from typing import Callable

from . import catalog, frobdec, hkest, polyvol, toric


def _frac(x) -> str:
    return catalog.fmt(x)


def invariants(entry: catalog.CatalogEntry, workers: int = 1) -> dict[str, Callable[[], object]]:
    """Invariant name -> thunk computing its JSON value."""
    c = entry.cone
    small = c.d <= 3
    qs = (2, 3, 4) if small else (2,)
    ns = range(c.d + 2) if small else range(4)

    def classgroup():
        cl = toric.class_group(c)
        return {"free_rank": cl.free_rank, "torsion": list(cl.torsion)}

    def gorenstein():
        g = toric.gorenstein_data(c)
        return {"gorenstein": g.is_gorenstein, "q_index": g.q_index}

    def decomposition():
        dec = frobdec.decompose(c, 4, workers=workers)
        return {"q": 4, "free": dec.free_count, "canonical": dec.canonical_count,
                "classes": [[list(k), n] for k, n in dec.class_counts]}

    return {
        "fsig": lambda: _frac(polyvol.fsignature(c)),
        "classgroup": classgroup,
        "gorenstein": gorenstein,
        "type": lambda: toric.cm_type(c),
        "hilbert_basis": lambda: [list(h) for h in toric.hilbert_basis(c)],
        "frobenius_colength": lambda: {str(q): hkest.frobenius_colength(c, q) for q in qs},
        "power_colength": lambda: {str(n): hkest.power_colength(c, n) for n in ns},
        "decompose_q4": decomposition,
    }


def _dump(value) -> str:
    return json.dumps(value, indent=2, sort_keys=True) + "\n"


def _path(root: str, ring: str, name: str) -> str:
    return os.path.join(root, ring, f"{name}.json")


def write_all(root: str, workers: int = 1) -> list[str]:
    written = []
    for e in catalog.catalog():
        os.makedirs(os.path.join(root, e.name), exist_ok=True)
        for name, thunk in invariants(e, workers).items():
            p = _path(root, e.name, name)
            with open(p, "w") as fh:
                fh.write(_dump({"ring": e.name, "invariant": name, "value": thunk()}))
            written.append(p)
    return written


def check_all(root: str, workers: int = 1) -> list[str]:
    """Paths whose recomputed value differs from the stored one (or are missing)."""
    bad = []
    for e in catalog.catalog():
        for name, thunk in invariants(e, workers).items():
            p = _path(root, e.name, name)
            try:
                with open(p) as fh:
                    stored = fh.read()
            except OSError:
                bad.append(p)
                continue
            if stored != _dump({"ring": e.name, "invariant": name, "value": thunk()}):
                bad.append(p)
    return bad
