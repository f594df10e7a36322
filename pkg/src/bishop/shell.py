"""Pipeline orchestration, built-in examples and geometry export."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

from .croper import SpherePoint
from .expr import RatExpr, as_expr, format_expr
from .locus import LocusParams, find_components
from .parsing import parse_expr
from .perturb import DiffReport, PoleFamilySpec, build_pole_family, build_torus_knot_map, compare_analyses
from .report import AnalysisReport, default_tolerances
from .topo import linking_number, project_component, select_pole, project_points

EXAMPLES = ("ex1", "ex2", "ex2c", "ex3", "ex4", "ex5", "ex6", "ex6b", "ex7", "ex8", "torus_surface")
EPS_EXAMPLES = ("ex6b", "ex7", "ex8")
DEFAULT_EPS = 0.1


@dataclass(frozen=True)
class ExampleSpec:
    name: str
    alpha: float = 2.0
    p: int = 2
    q: int = 3
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if self.name not in EXAMPLES:
            raise ValueError(f"unknown example {self.name!r}; choose from {', '.join(EXAMPLES)}")
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise ValueError("alpha must be finite and non-negative")
        if not (math.isfinite(self.eps) and self.eps >= 0):
            raise ValueError("eps must be finite and non-negative")


def example_expression(spec: ExampleSpec) -> tuple[RatExpr, list[str]]:
    """The map of a built-in example, plus notes to attach to its report."""
    name = spec.name
    notes: list[str] = []
    if name == "ex1":
        return parse_expr("0.5*zb^2 + wb"), notes
    if name == "ex2":
        a = spec.alpha
        f = as_expr(a) * parse_expr("zb^2") + parse_expr("wb")
        if a > 0:
            if 2 * a > 1:
                notes.append(
                    f"curve |w| = 1/(2*alpha) = {1 / (2 * a):.6g}: computed gamma is 1/(8*alpha^2) = "
                    f"{1 / (8 * a * a):.6g}; the literature closed form 1/(4*alpha) = {1 / (4 * a):.6g} "
                    "disagrees except at alpha = 1/2"
                )
            else:
                notes.append(
                    f"no curve |w| = 1/(2*alpha) = {1 / (2 * a):.6g}: it would lie off the unit sphere"
                )
        return f, notes
    if name == "ex2c":
        return parse_expr("wb^2"), notes
    if name == "ex3":
        return parse_expr("zb^2*w + wb^2*z"), notes
    if name == "ex4":
        return build_torus_knot_map(spec.p, spec.q), notes
    if name == "ex5":
        notes.append(
            "computed gamma is |2x^2 + 2x - 1| / (4 (1 - x)^(3/2)) with x = |z|^2 (about 0.126 and 7.94); "
            "the literature values 0.09 and 1.29 come from alpha/(4(1 - alpha)), which restricts to the "
            "curve before differentiating; the elliptic/hyperbolic split agrees"
        )
        return parse_expr("z*wb^2 + zb*wb"), notes
    if name == "ex6":
        return parse_expr("i*zb*(1 - w)^3/(wb - 1)"), notes
    if name == "ex6b":
        return build_pole_family(PoleFamilySpec("zb", 1, 3, spec.eps)), notes
    if name == "ex7":
        return build_pole_family(PoleFamilySpec("wb", 1, 3, spec.eps)), notes
    if name == "ex8":
        return build_pole_family(PoleFamilySpec("zb*wb", 2, 3, spec.eps)), notes
    return parse_expr("zb*wb"), notes


def analyze(f, params: LocusParams | None = None, notes=None) -> AnalysisReport:
    params = params or LocusParams()
    f = as_expr(f)
    indeterminate: list[SpherePoint] = []
    comps = find_components(f, params, indeterminate=indeterminate)
    return AnalysisReport(
        expression=format_expr(f),
        components=comps,
        indeterminate_points=indeterminate,
        tolerances=default_tolerances(params),
        params=params,
        rng_seed=params.rng_seed,
        notes=list(notes or []),
    )


def run_analyze(expression: str, params: LocusParams | None = None) -> AnalysisReport:
    """Parse ``expression`` and run the full tangent pipeline on it."""
    return analyze(parse_expr(expression), params)


def run_example(name: str | ExampleSpec, params: LocusParams | None = None, **kw) -> AnalysisReport:
    spec = name if isinstance(name, ExampleSpec) else ExampleSpec(name, **{k: v for k, v in kw.items() if v is not None})
    f, notes = example_expression(spec)
    return analyze(f, params, notes)


def export_geometry(report: AnalysisReport, path, pole: SpherePoint | str = "auto") -> SpherePoint:
    """Write stereographic coordinates of every component point as CSV; returns the pole."""
    if isinstance(pole, str):
        if pole != "auto":
            raise ValueError("pole must be a SpherePoint or 'auto'")
        pole = select_pole(report.components)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["component_id", "index", "x", "y", "z", "gamma", "class"])
        for c in report.components:
            if not c.points:
                continue
            xyz = project_points(c.as_array(), pole)
            for k, (row, g, cls) in enumerate(zip(xyz, c.gammas, c.classes)):
                if g.degenerate or math.isnan(g.gamma):
                    gamma = ""
                elif math.isinf(g.gamma):
                    gamma = "inf"
                else:
                    gamma = repr(g.gamma)
                out.writerow([c.id, k, repr(float(row[0])), repr(float(row[1])), repr(float(row[2])), gamma, cls.value])
    return pole


def run_linking(report: AnalysisReport, i: int, j: int) -> float:
    comps = report.components
    for k in (i, j):
        if not 0 <= k < len(comps):
            raise IndexError(f"no component {k}")
    pole = select_pole(comps)
    return linking_number(project_component(comps[i], pole), project_component(comps[j], pole))


def run_perturb(name: str, eps_list, params: LocusParams | None = None, tol_match: float | None = None) -> list[DiffReport]:
    """Compare the unperturbed example with each epsilon-shifted one."""
    if name not in EPS_EXAMPLES:
        raise ValueError(f"example {name!r} has no epsilon family; choose from {', '.join(EPS_EXAMPLES)}")
    base = run_example(name, params, eps=0.0)
    return [compare_analyses(base, run_example(name, params, eps=float(e)), tol_match) for e in eps_list]


__all__ = [
    "EXAMPLES",
    "ExampleSpec",
    "analyze",
    "example_expression",
    "export_geometry",
    "run_analyze",
    "run_example",
    "run_linking",
    "run_perturb",
]
