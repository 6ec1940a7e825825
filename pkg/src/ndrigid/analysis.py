"""Cross-checks that tie the diagram, the pencil, the spectrum and the Lie classes together."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .body import StationaryRotation
from .diagram import (
    DEFAULT_CLASS_TOL,
    Kind,
    ParabolicDiagram,
    Verdict,
    build_diagram,
    diagonalizability_check,
    is_infinite,
    stability_verdict,
)
from .dynamics import ProbeResult, perturbation_probe
from .lie_class import LieAlgebraClass, classify_g_lambda
from .pencil import (
    DEFAULT_PD_TOL,
    DEFAULT_RANK_TOL,
    CocycleCertificate,
    cluster_values,
    compactness_certificate,
    expected_kernel_dim,
    fine_pencil_check,
    kernel_dim,
    pencil_eigenvalues,
)
from .spectrum import SpectrumReport, compare_spectra


@dataclass(frozen=True)
class Tolerances:
    class_tol: float = DEFAULT_CLASS_TOL
    rank_tol: float = DEFAULT_RANK_TOL
    pd_tol: float = DEFAULT_PD_TOL
    asymmetry_tol: float = 1e-9
    lambda_match_tol: float = 1e-8


@dataclass
class KernelCheck:
    lam: complex | float
    numeric: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.numeric == self.expected


@dataclass
class PencilConsistency:
    diagram_points: list
    numeric_points: list
    max_mismatch: float
    set_match: bool
    kernels: list[KernelCheck]

    @property
    def ok(self) -> bool:
        return self.set_match and all(k.ok for k in self.kernels)


def _match_points(a: list, b: list, tol: float) -> tuple[bool, float]:
    """Set match of spectral points; infinity must appear in both or neither."""
    ia = [x for x in a if is_infinite(x)]
    ib = [x for x in b if is_infinite(x)]
    fa = np.array([complex(x) for x in a if not is_infinite(x)])
    fb = np.array([complex(x) for x in b if not is_infinite(x)])
    if len(ia) != len(ib) or fa.size != fb.size:
        return False, math.inf
    if fa.size == 0:
        return True, 0.0
    cost = np.abs(fa[:, None] - fb[None, :]) / np.maximum(1.0, np.abs(fa[:, None]))
    r, c = linear_sum_assignment(cost)
    worst = float(cost[r, c].max())
    return worst <= tol, worst


def pencil_consistency(diagram: ParabolicDiagram, tol: Tolerances = Tolerances()) -> PencilConsistency:
    rot = diagram.rotation
    dpts = diagram.spectrum_points()
    npts = cluster_values(pencil_eigenvalues(rot, tol.rank_tol))
    ok, worst = _match_points(dpts, npts, tol.lambda_match_tol)
    kernels = [KernelCheck(z, kernel_dim(rot, z, tol.rank_tol), expected_kernel_dim(diagram, z)) for z in dpts]
    return PencilConsistency(dpts, npts, worst, ok, kernels)


@dataclass
class CompactnessResult:
    lam: float
    certificate: CocycleCertificate
    has_lower: bool
    tangent: bool = False

    @property
    def consistent(self) -> bool:
        """Positive definite exactly when no point at this abscissa lies below the axis.

        No claim is made at a tangency, where the form may degenerate.
        """
        if self.tangent and not self.has_lower:
            return True
        return self.certificate.compact != self.has_lower


def compactness_scan(diagram: ParabolicDiagram, tol: Tolerances = Tolerances()) -> list[CompactnessResult]:
    """Magic-formula certificate at every real finite spectral point."""
    rot = diagram.rotation
    out = []
    for lam in diagram.spectrum_points():
        if is_infinite(lam) or isinstance(lam, complex):
            continue
        pts = [z for z in diagram.intersections if not z.is_infinite and abs(z.abscissa - lam) <= tol.class_tol * max(1.0, abs(lam))]
        lower = any(z.kind is Kind.REAL_LOWER for z in pts)
        cert = compactness_certificate(rot, lam, tol.pd_tol)
        out.append(CompactnessResult(float(lam), cert, lower, any(z.tangent for z in pts)))
    return out


@dataclass
class Analysis:
    rotation: StationaryRotation
    diagram: ParabolicDiagram
    verdict: Verdict
    spectrum: SpectrumReport
    pencil: PencilConsistency
    compactness: list[CompactnessResult]
    diagonalizable: bool
    fine_pencil: bool
    lie_classes: list[LieAlgebraClass]
    probes: list[ProbeResult] = field(default_factory=list)
    tolerances: Tolerances = field(default_factory=Tolerances)
    warnings: list[str] = field(default_factory=list)


def analyze(rot: StationaryRotation, tol: Tolerances = Tolerances(), probe: dict | None = None) -> Analysis:
    """Run every check on one rotation; ``probe`` holds keyword arguments for the perturbation probe."""
    diagram = build_diagram(rot, tol.class_tol)
    verdict = stability_verdict(diagram)
    spec = compare_spectra(rot, tol.class_tol)
    pc = pencil_consistency(diagram, tol)
    comp = compactness_scan(diagram, tol)
    lams = diagram.spectrum_points()
    if not any(is_infinite(x) for x in lams):
        lams = lams + [math.inf]
    classes = [classify_g_lambda(diagram, lam, tol.rank_tol) for lam in lams]
    warnings = list(verdict.warnings)
    if spec.nondiagonalizable:
        warnings.append("diagram has a tangency: spectra compared as multisets only")
    if not spec.agrees:
        warnings.append(f"formula and oracle spectra differ by {spec.max_mismatch:.3e}")
    if not pc.ok:
        warnings.append("pencil rank drops disagree with the diagram")
    for c in comp:
        if not c.consistent:
            warnings.append(f"compactness certificate at lam={c.lam:g} contradicts the diagram")
    for c in classes:
        warnings += c.warnings
    probes = []
    if probe:
        probe = dict(probe)
        eps_list = probe.pop("epsilons", [probe.pop("epsilon", 1e-4)])
        for eps in eps_list:
            probes.append(perturbation_probe(rot, eps, **probe))
    return Analysis(
        rotation=rot,
        diagram=diagram,
        verdict=verdict,
        spectrum=spec,
        pencil=pc,
        compactness=comp,
        diagonalizable=diagonalizability_check(diagram),
        fine_pencil=fine_pencil_check(rot),
        lie_classes=classes,
        probes=probes,
        tolerances=tol,
        warnings=warnings,
    )
