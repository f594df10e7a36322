"""Analysis reports and their JSON form.

JSON is the source of truth for downstream tools. Infinite gamma is written
as the string ``"inf"``; a degenerate tangent has ``gamma: null`` with both
norms present, so readers never have to divide.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

from . import __version__
from .croper import CLASS_BAND, TAU_SPHERE, TAU_ZERO, GammaResult, SpherePoint, TangentClass
from .expr import TAU_DEN
from .locus import LocusComponent, LocusKind, LocusParams

SCHEMA_VERSION = 1


def default_tolerances(params: LocusParams | None = None) -> dict:
    return {
        "tau_zero": params.tau_zero if params else TAU_ZERO,
        "tau_sphere": TAU_SPHERE,
        "tau_den": TAU_DEN,
        "class_band": CLASS_BAND,
    }


@dataclass
class AnalysisReport:
    expression: str
    components: list[LocusComponent]
    indeterminate_points: list[SpherePoint] = field(default_factory=list)
    tolerances: dict = field(default_factory=default_tolerances)
    params: LocusParams = field(default_factory=LocusParams)
    rng_seed: int = 0
    tool_version: str = __version__
    # human-readable remarks, e.g. where a closed form from the literature disagrees
    notes: list[str] = field(default_factory=list)

    @property
    def degenerate_points(self) -> list[SpherePoint]:
        return [p for c in self.components for p in c.degenerate_points]

    def counts(self) -> dict[str, int]:
        out = {k.value: 0 for k in LocusKind}
        for c in self.components:
            out[c.kind.value] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "expression": self.expression,
            "components": [_component_to_dict(c) for c in self.components],
            "indeterminate_points": [_point_to_json(p) for p in self.indeterminate_points],
            "tolerances": dict(self.tolerances),
            "params": asdict(self.params),
            "rng_seed": self.rng_seed,
            "tool_version": self.tool_version,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> AnalysisReport:
        return cls(
            expression=d["expression"],
            components=[_component_from_dict(c) for c in d["components"]],
            indeterminate_points=[_point_from_json(p) for p in d.get("indeterminate_points", [])],
            tolerances=dict(d["tolerances"]),
            params=LocusParams(**d["params"]),
            rng_seed=int(d["rng_seed"]),
            tool_version=d["tool_version"],
            notes=list(d.get("notes", [])),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> AnalysisReport:
        return cls.from_dict(json.loads(text))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())
            fh.write("\n")

    @classmethod
    def load(cls, path) -> AnalysisReport:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())

    def __eq__(self, other) -> bool:
        # compare through the serialized form so that nan gammas compare equal
        if not isinstance(other, AnalysisReport):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def _point_to_json(p: SpherePoint) -> list[float]:
    return [p.z.real, p.z.imag, p.w.real, p.w.imag]


def _point_from_json(v) -> SpherePoint:
    return SpherePoint(complex(v[0], v[1]), complex(v[2], v[3]))


def _gamma_to_json(g: GammaResult) -> dict:
    if g.degenerate or math.isnan(g.gamma):
        gamma = None
    elif math.isinf(g.gamma):
        gamma = "inf"
    else:
        gamma = g.gamma
    return {
        "numerator_norm": _finite(g.numerator_norm),
        "denominator_norm": _finite(g.denominator_norm),
        "gamma": gamma,
        "degenerate": g.degenerate,
    }


def _finite(x: float):
    return x if math.isfinite(x) else None


def _gamma_from_json(d: dict) -> GammaResult:
    g = d["gamma"]
    if g is None:
        gamma = math.nan
    elif g == "inf":
        gamma = math.inf
    else:
        gamma = float(g)
    num = d["numerator_norm"]
    den = d["denominator_norm"]
    return GammaResult(
        math.nan if num is None else float(num),
        math.nan if den is None else float(den),
        gamma,
        bool(d["degenerate"]),
    )


def _component_to_dict(c: LocusComponent) -> dict:
    return {
        "id": c.id,
        "kind": c.kind.value,
        "closed": c.closed,
        "partial": c.partial,
        "points": [_point_to_json(p) for p in c.points],
        "gammas": [_gamma_to_json(g) for g in c.gammas],
        "classes": [k.value for k in c.classes],
        "degenerate_points": [_point_to_json(p) for p in c.degenerate_points],
    }


def _component_from_dict(d: dict) -> LocusComponent:
    return LocusComponent(
        id=int(d["id"]),
        kind=LocusKind(d["kind"]),
        points=[_point_from_json(p) for p in d["points"]],
        closed=bool(d["closed"]),
        gammas=[_gamma_from_json(g) for g in d["gammas"]],
        classes=[TangentClass(k) for k in d["classes"]],
        degenerate_points=[_point_from_json(p) for p in d["degenerate_points"]],
        partial=bool(d.get("partial", False)),
    )


__all__ = ["AnalysisReport", "default_tolerances"]
