"""JSON forms for the objects that cross the command line."""

from __future__ import annotations

import json
from typing import Any

from .cobordism import CobElement, ProjProductRing
from .fgl import FglMorphism, FormalGroupLaw, additive_fgl, multiplicative_fgl
from .scalars import RingMap, ring_from_descriptor
from .series import TruncSeries


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def ringmap_to_json(f: RingMap) -> dict:
    T = f.target
    return {
        "source": f.source.descriptor(),
        "target": T.descriptor(),
        "images": [[g, T.to_json(v)] for g, v in sorted(f.images)],
    }


def ringmap_from_json(obj) -> RingMap:
    S = ring_from_descriptor(obj["source"])
    T = ring_from_descriptor(obj["target"])
    return RingMap(S, T, tuple((g, T.from_json(v)) for g, v in obj.get("images", [])))


def morphism_to_json(m: FglMorphism) -> dict:
    if not isinstance(m.phi, RingMap):
        raise TypeError("only morphisms with an explicit ring map serialize")
    return {
        "source": m.source.to_json(),
        "target": m.target.to_json(),
        "phi": ringmap_to_json(m.phi),
        "gamma": m.gamma.to_json(),
    }


def morphism_from_json(obj) -> FglMorphism:
    return FglMorphism(
        FormalGroupLaw.from_json(obj["source"]),
        FormalGroupLaw.from_json(obj["target"]),
        ringmap_from_json(obj["phi"]),
        TruncSeries.from_json(obj["gamma"]),
    )


def element_to_json(e: CobElement) -> dict:
    return {"theory": e.ring.theory.to_json(), **e.ring.to_json(), "poly": e.poly.to_json()}


def element_from_json(obj, theory: FormalGroupLaw | None = None) -> CobElement:
    F = theory if theory is not None else FormalGroupLaw.from_json(obj["theory"])
    R = ProjProductRing(F, tuple(int(b) for b in obj["bounds"]), int(obj["trunc"]),
                        tuple(obj.get("names") or [f"z{i + 1}" for i in range(len(obj["bounds"]))]))
    s = TruncSeries.from_json(obj["poly"])
    if s.ring != F.ring:
        s = s.change_ring(F.ring)
    return R.from_series(s)


def law_by_name(name: str, ring_desc: dict | None, trunc: int) -> FormalGroupLaw:
    """``additive`` or ``multiplicative`` over a ring descriptor (default Z)."""
    ring = ring_from_descriptor(ring_desc or {"kind": "Integers"})
    if name == "additive":
        return additive_fgl(ring, trunc)
    if name == "multiplicative":
        return multiplicative_fgl(ring, trunc)
    raise ValueError(f"unknown law {name!r}")
