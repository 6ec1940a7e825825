"""JSON reports and SVG rendering of parabolic diagrams."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import __version__
from .diagram import Intersection, Kind, ParabolicDiagram

SCHEMA_VERSION = "1.0"
SIG_DIGITS = 12


# --------------------------------------------------------------------------
# JSON encoding


def num(x: Any):
    """Round a scalar to 12 significant digits; complex as ``{re, im}``, infinity as ``"inf"``."""
    if x is None:
        return None
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        if z.imag == 0:
            return num(z.real)
        return {"re": num(z.real), "im": num(z.imag)}
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    if x == 0:
        return 0.0
    return float(f"{x:.{SIG_DIGITS - 1}e}")


def decode_num(v):
    if v == "inf":
        return math.inf
    if v == "-inf":
        return -math.inf
    if isinstance(v, dict):
        return complex(v["re"], v["im"])
    return v


def _intersection(z: Intersection) -> dict:
    return {
        "participants": list(z.participants),
        "abscissa": num(z.abscissa),
        "ordinate": num(z.ordinate),
        "kind": z.kind.value,
        "tangent": z.tangent,
        "multiplicity": z.multiplicity,
        "marginal": z.marginal,
    }


def diagram_dict(d: ParabolicDiagram) -> dict:
    return {
        "parabolas": [
            {"id": P.id, "roots": [num(P.p), num(P.q)], "momentum": num(P.m), "vertex": num(P.vertex)}
            for P in d.parabolas
        ],
        "lines": [{"id": L.id, "axis": L.user_axis, "x": num(L.x0)} for L in d.lines],
        "intersections": [_intersection(z) for z in d.intersections],
    }


def _spectrum(rep) -> dict:
    return {
        "formula": [num(z) for z in rep.formula_eigs],
        "oracle": [num(z) for z in rep.oracle_eigs],
        "max_mismatch": num(rep.max_mismatch),
        "tolerance": num(rep.tolerance),
        "agrees": rep.agrees,
        "zero_modes": rep.zero_modes,
        "nondiagonalizable": rep.nondiagonalizable,
        "degenerate": [list(z.participants) + [num(z.abscissa)] for z in rep.degenerate],
    }


def _probe(p) -> dict:
    return {
        "epsilon": num(p.epsilon),
        "trials": p.trials,
        "seed": p.seed,
        "horizon": num(p.horizon),
        "dt": num(p.dt),
        "max_deviation": num(p.max_deviation),
        "measured_growth_rate": num(p.measured_growth_rate),
        "predicted_rate": num(p.predicted_rate),
        "escaped": p.escaped,
        "verdict_consistent": p.verdict_consistent,
    }


def rotation_input(rot) -> dict:
    return {
        "eigenvalues": [num(x) for x in rot.body.eigenvalues],
        "planes": [{"axes": [p.axis_a, p.axis_b], "omega": num(p.omega)} for p in rot.spec.planes],
    }


def report_dict(analysis, seed: int | None = None, extra: dict | None = None) -> dict:
    a = analysis
    out = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "ndrigid", "version": __version__},
        "seed": seed,
        "input": rotation_input(a.rotation),
        "tolerances": {k: num(v) for k, v in vars(a.tolerances).items()},
        "diagram": diagram_dict(a.diagram),
        "verdict": {
            "status": a.verdict.status.value,
            "witnesses": [_intersection(z) for z in a.verdict.witnesses],
        },
        "spectrum_points": [num(z) for z in a.diagram.spectrum_points()],
        "spectrum": _spectrum(a.spectrum),
        "pencil": {
            "numeric_points": [num(z) for z in a.pencil.numeric_points],
            "max_mismatch": num(a.pencil.max_mismatch),
            "set_match": a.pencil.set_match,
            "kernels": [{"lambda": num(k.lam), "numeric": k.numeric, "expected": k.expected} for k in a.pencil.kernels],
        },
        "certificates": {
            "diagonalizable": a.diagonalizable,
            "fine_pencil": a.fine_pencil,
            "compactness": [
                {
                    "lambda": num(c.lam),
                    "x": [num(v) for v in c.certificate.x],
                    "min_eigenvalue": num(c.certificate.min_eigenvalue),
                    "compact": c.certificate.compact,
                    "has_lower": c.has_lower,
                    "consistent": c.consistent,
                }
                for c in a.compactness
            ],
        },
        "lie_classes": [
            {
                "lambda": num(c.lam),
                "case": c.case,
                "class": c.canonical(),
                "dim": c.total_dim,
                "kernel_dim": c.kernel_dim,
                "N": c.N,
            }
            for c in a.lie_classes
        ],
        "probes": [_probe(p) for p in a.probes],
        "warnings": list(a.warnings),
    }
    if extra:
        out.update(extra)
    return out


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"


def emit_report(analysis, seed: int | None = None, extra: dict | None = None) -> str:
    return dumps(report_dict(analysis, seed, extra))


# --------------------------------------------------------------------------
# SVG


@dataclass(frozen=True)
class Viewport:
    x0: float
    x1: float
    y0: float
    y1: float


def auto_viewport(d: ParabolicDiagram) -> Viewport:
    lam2 = d.rotation.body.lam ** 2
    x0, x1 = 0.8 * float(lam2.min()), 1.2 * float(lam2.max())
    ys = []
    for z in d.intersections:
        if z.kind in (Kind.REAL_UPPER, Kind.REAL_LOWER):
            x0, x1 = min(x0, z.abscissa), max(x1, z.abscissa)
            ys.append(abs(z.ordinate))
    if not ys:
        ys = [abs(P.chi(x)) for P in d.parabolas for x in (x0, x1)]
    ymax = 3.0 * max(ys) if ys and max(ys) > 0 else 1.0
    pad = 0.05 * (x1 - x0)
    return Viewport(x0 - pad, x1 + pad, -ymax, ymax)


def _f(x: float) -> str:
    return f"{x:.3f}"


_MARKER = {
    Kind.REAL_UPPER: 'fill="#1f4e9c" stroke="#1f4e9c"',
    Kind.REAL_LOWER: 'fill="white" stroke="#b02a2a" stroke-width="1.5"',
}
_PALETTE = ["#2a7f62", "#7a3e9d", "#c0641a", "#2d6fa8", "#9c2d4e", "#5b6b1f", "#1d8a99", "#8a5a2b"]


def render_svg(d: ParabolicDiagram, viewport: Viewport | None = None, width: int = 640, height: int = 400,
               samples: int = 400) -> str:
    vp = auto_viewport(d) if viewport is None else viewport
    margin = 30

    def sx(x: float) -> float:
        return margin + (x - vp.x0) / (vp.x1 - vp.x0) * (width - 2 * margin)

    def sy(y: float) -> float:
        y = min(max(y, vp.y0), vp.y1)
        return margin + (vp.y1 - y) / (vp.y1 - vp.y0) * (height - 2 * margin)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{_f(sx(vp.x0))}" y1="{_f(sy(0))}" x2="{_f(sx(vp.x1))}" y2="{_f(sy(0))}" stroke="black"/>',
    ]
    for k, l2 in enumerate(d.rotation.body.lam ** 2):
        x = sx(float(l2))
        out.append(f'<line x1="{_f(x)}" y1="{_f(sy(0) - 3)}" x2="{_f(x)}" y2="{_f(sy(0) + 3)}" stroke="black"/>')
        out.append(f'<text x="{_f(x)}" y="{_f(sy(0) + 14)}" font-size="9" text-anchor="middle">l{k + 1}^2</text>')

    xs = np.linspace(vp.x0, vp.x1, samples)
    for i, P in enumerate(d.parabolas):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{_f(sx(x))},{_f(sy(P.chi(x)))}" for x in xs)
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.2"/>')
        out.append(f'<text x="{_f(sx(P.vertex))}" y="{_f(sy(P.chi(P.vertex)) + 12)}" font-size="10" fill="{color}" '
                   f'text-anchor="middle">{P.id}</text>')
    for L in d.lines:
        x = sx(L.x0)
        out.append(f'<line x1="{_f(x)}" y1="{_f(sy(vp.y1))}" x2="{_f(x)}" y2="{_f(sy(vp.y0))}" stroke="#555" '
                   'stroke-dasharray="4,3"/>')
        out.append(f'<text x="{_f(x + 3)}" y="{_f(sy(vp.y1) + 10)}" font-size="10">{L.id}</text>')

    notes = []
    for z in d.intersections:
        if z.kind is Kind.INFINITE:
            notes.append(f"{z.participants[0]}-{z.participants[1]} meet at infinity")
            continue
        if z.kind is Kind.COMPLEX:
            if complex(z.abscissa).imag > 0:
                notes.append(f"{z.participants[0]}-{z.participants[1]} complex pair at "
                             f"{complex(z.abscissa).real:.6g} +/- {abs(complex(z.abscissa).imag):.6g}i")
            continue
        cx, cy = _f(sx(z.abscissa)), _f(sy(z.ordinate))
        if z.tangent:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="6" fill="none" stroke="#d08a00" stroke-width="2"/>')
        out.append(f'<circle cx="{cx}" cy="{cy}" r="3.5" {_MARKER[z.kind]}/>')
    for k, note in enumerate(notes):
        out.append(f'<text x="{margin}" y="{height - 8 - 12 * (len(notes) - 1 - k)}" font-size="10">{note}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
