"""Spectrum of the Euler flow linearized at a regular stationary rotation.

Two independent routes are provided: closed formulas indexed by the
intersection points of the parabolic diagram, and a direct linearization
of ``M' = [M, Omega]`` restricted to the common tangent space ``T(M)`` of
the generic symplectic leaves.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .body import StationaryRotation, velocity_from_momentum
from .diagram import (
    DEFAULT_CLASS_TOL,
    Intersection,
    Kind,
    ParabolicDiagram,
    build_diagram,
    diagonalizability_check,
    is_infinite,
    same_point,
)
from .errors import DegenerateFormula, InSpectrum, NotDegenerate
from .pencil import AMatrix, generic_parameter, numeric_rank, poisson_tensor, so_basis

EXOTIC_TOL = 1e-9


# --------------------------------------------------------------------------
# adjoint action of block-diagonal elements on kernel blocks


def adjoint_matrix_V(rot: StationaryRotation, lam, i: int, j: int, x) -> np.ndarray:
    """Matrix of ``ad_lam X`` on ``V_ij(lam)`` in the ``(alpha, beta)`` kernel coordinates."""
    A = AMatrix.at(rot.lam_int, lam).diag
    c = x[i] - rot.mom[j] / rot.mom[i] * x[j]
    return np.array([[0.0, -A[2 * i] * c], [A[2 * i + 1] * c, 0.0]], dtype=np.result_type(A, c))


def adjoint_matrix_W(rot: StationaryRotation, lam, i: int, k: int, x) -> np.ndarray:
    """Matrix of ``ad_lam X`` on ``W_ik`` in its natural coordinates."""
    A = AMatrix.at(rot.lam_int, lam).diag
    return np.array([[0.0, x[i] * A[2 * i + 1]], [-x[i] * A[2 * i], 0.0]], dtype=np.result_type(A, x[i]))


def _chi(rot: StationaryRotation, i: int, lam):
    la, lb = rot.plane_eigs(i)
    return (lam - la ** 2) * (lam - lb ** 2) / rot.mom[i] ** 2


def _check_V(rot: StationaryRotation, lam, i: int, j: int, tol: float) -> None:
    ci, cj = _chi(rot, i, lam), _chi(rot, j, lam)
    if abs(ci - cj) > tol * max(1.0, abs(ci), abs(cj)):
        raise NotDegenerate(f"V_{i + 1}{j + 1} has no kernel at lam={lam}")


def adjoint_eigenvalues(rot: StationaryRotation, i: int, j_or_axis: int, lam, x, *, line: bool = False,
                        tol: float = 1e-8) -> tuple[complex, complex]:
    """``(+nu, -nu)`` for ``ad_lam X`` on ``V_ij(lam)``, or ``(+mu, -mu)`` on ``W_ik(lam)`` when ``line``.

    ``j_or_axis`` is a plane index, or an internal axis index when ``line`` is set.
    """
    if is_infinite(lam):
        raise NotDegenerate("use finite spectral points")
    root = cmath.sqrt(-complex(_chi(rot, i, lam)))
    if line:
        x0 = rot.lam_int[j_or_axis] ** 2
        if abs(lam - x0) > tol * max(1.0, x0):
            raise NotDegenerate(f"W block has no kernel at lam={lam}")
        mu = root * rot.mom[i] * x[i]
        return mu, -mu
    j = j_or_axis
    _check_V(rot, lam, i, j, tol)
    nu = root * (rot.mom[j] * x[j] - rot.mom[i] * x[i])
    return nu, -nu


# --------------------------------------------------------------------------
# closed-form spectrum


@dataclass(frozen=True)
class Contribution:
    """Eigenvalues ``(+s, -s)`` attached to one diagram intersection."""

    source: Intersection
    value: complex
    degenerate: bool = False

    @property
    def pair(self) -> tuple[complex, complex]:
        return self.value, -self.value


def exotic_difference(rot: StationaryRotation, i: int, j: int, root) -> complex:
    la, lb = rot.plane_eigs(i)
    lc, ld = rot.plane_eigs(j)
    return (root + la * lb) / (la + lb) - (root + lc * ld) / (lc + ld)


def exotic_condition_check(rot: StationaryRotation, i: int, j: int, root, tol: float = EXOTIC_TOL) -> bool:
    """True when the eigenvalue attached to a real root collapses to zero."""
    if is_infinite(root) or isinstance(root, complex):
        return False
    la, lb = rot.plane_eigs(i)
    lc, ld = rot.plane_eigs(j)
    d = exotic_difference(rot, i, j, root)
    scale = max(abs(root), la * lb, lc * ld) / min(la + lb, lc + ld)
    return abs(d) <= tol * scale


def sigma_value(rot: StationaryRotation, z: Intersection) -> complex:
    i, j = z.plane_i, z.plane_j
    if z.is_infinite:
        return 1j * (abs(rot.omegas[j]) - abs(rot.omegas[i]))
    root = z.abscissa
    chi = _chi(rot, i, root)
    if chi == 0:
        raise DegenerateFormula(f"chi_{i + 1} vanishes at the root {root}")
    return complex(exotic_difference(rot, i, j, root) / cmath.sqrt(-complex(chi)))


def tau_value(rot: StationaryRotation, z: Intersection) -> complex:
    i, k = z.plane_i, z.line_axis
    la, lb = rot.plane_eigs(i)
    lk = float(rot.lam_int[k])
    chi = _chi(rot, i, lk ** 2)
    if chi == 0:
        raise DegenerateFormula(f"chi_{i + 1} vanishes at lam_{k}^2")
    return complex((lk - la) * (lk - lb) / (la + lb) / cmath.sqrt(-complex(chi)))


def formula_contributions(diagram: ParabolicDiagram, exotic_tol: float = EXOTIC_TOL) -> list[Contribution]:
    rot = diagram.rotation
    out = []
    for z in diagram.intersections:
        if z.is_line:
            out.append(Contribution(z, tau_value(rot, z)))
            continue
        s = sigma_value(rot, z)
        deg = z.kind is Kind.REAL_LOWER and exotic_condition_check(rot, z.plane_i, z.plane_j, z.abscissa, exotic_tol)
        for _ in range(z.multiplicity):
            out.append(Contribution(z, s, deg))
    return out


def linearized_spectrum_formula(rot: StationaryRotation | ParabolicDiagram, class_tol: float = DEFAULT_CLASS_TOL) -> list[complex]:
    diagram = rot if isinstance(rot, ParabolicDiagram) else build_diagram(rot, class_tol)
    eigs: list[complex] = []
    for c in formula_contributions(diagram):
        eigs.extend(c.pair)
    return eigs


# --------------------------------------------------------------------------
# direct linearization oracle


def euler_field(M: np.ndarray, jdiag) -> np.ndarray:
    Om = velocity_from_momentum(M, np.asarray(jdiag, dtype=float))
    return M @ Om - Om @ M


def linearize_euler_exact(rot_or_M, jdiag=None) -> np.ndarray:
    """Matrix of ``d -> [d, Omega] + [M, dOmega]`` in the coordinates of :func:`so_basis`."""
    if isinstance(rot_or_M, StationaryRotation):
        M, jdiag = rot_or_M.M, rot_or_M.body.lam
    else:
        M = np.asarray(rot_or_M, dtype=float)
    jdiag = np.asarray(jdiag, dtype=float)
    n = M.shape[0]
    S = jdiag[:, None] + jdiag[None, :]
    Om = M / S
    B = so_basis(n)
    dOm = B / S[None]
    img = (B @ Om - Om @ B) + (M @ dOm - dOm @ M)
    iu = np.triu_indices(n, 1)
    return img[:, iu[0], iu[1]].T


def tangent_space_T(rot: StationaryRotation, alpha: float | None = None, rank_tol: float = 1e-10,
                    diagram: ParabolicDiagram | None = None) -> np.ndarray:
    """Orthonormal basis (columns, :func:`so_basis` coordinates) of the image of ``P_alpha``."""
    diagram = build_diagram(rot) if diagram is None else diagram
    if alpha is None:
        alpha = generic_parameter(rot, diagram.Lambda)
    elif any(same_point(alpha, z, 1e-6) for z in diagram.Lambda):
        raise InSpectrum(f"alpha={alpha} lies in the spectrum of the pencil")
    G = poisson_tensor(rot.M, rot.body.lam, alpha)
    r = numeric_rank(G, rank_tol)
    U, _, _ = np.linalg.svd(G)
    return U[:, :r]


def oracle_spectrum(rot: StationaryRotation, alpha: float | None = None, diagram: ParabolicDiagram | None = None):
    """Eigenvalues of the linearization restricted to ``T(M)`` and the invariance residual."""
    L = linearize_euler_exact(rot)
    Q = tangent_space_T(rot, alpha, diagram=diagram)
    if Q.shape[1] == 0:
        return np.zeros(0, dtype=complex), 0.0
    LQ = L @ Q
    Bm = Q.T @ LQ
    resid = float(np.linalg.norm(LQ - Q @ Bm) / max(np.linalg.norm(L), 1e-300))
    return np.linalg.eigvals(Bm), resid


# --------------------------------------------------------------------------
# comparison


def match_multisets(a, b) -> tuple[float, np.ndarray, np.ndarray]:
    """Optimal assignment on ``|a_k - b_l|``; returns the worst matched distance and the index pairs."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size != b.size:
        raise ValueError(f"multisets differ in size: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0, np.zeros(0, int), np.zeros(0, int)
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max()), r, c


@dataclass
class SpectrumReport:
    formula_eigs: np.ndarray
    oracle_eigs: np.ndarray
    max_mismatch: float
    zero_modes: int
    nondiagonalizable: bool = False
    degenerate: list = field(default_factory=list)
    invariance_residual: float = 0.0
    contributions: list = field(default_factory=list)

    @property
    def scale(self) -> float:
        e = np.concatenate([np.abs(self.formula_eigs), np.abs(self.oracle_eigs), [0.0]])
        return float(e.max())

    @property
    def tolerance(self) -> float:
        return 1e-8 * (1.0 + self.scale)

    @property
    def agrees(self) -> bool:
        return self.max_mismatch < self.tolerance

    @property
    def max_real_part(self) -> float:
        return float(np.max(np.abs(self.formula_eigs.real), initial=0.0))


def compare_spectra(rot: StationaryRotation, class_tol: float = DEFAULT_CLASS_TOL,
                    alpha: float | None = None) -> SpectrumReport:
    diagram = build_diagram(rot, class_tol)
    contribs = formula_contributions(diagram)
    formula = np.array([v for c in contribs for v in c.pair], dtype=complex)
    oracle, resid = oracle_spectrum(rot, alpha, diagram)
    mismatch, _, _ = match_multisets(formula, oracle)
    N = rot.n * (rot.n - 1) // 2
    degenerate = [c.source for c in contribs if c.degenerate]
    return SpectrumReport(
        formula_eigs=formula,
        oracle_eigs=oracle,
        max_mismatch=mismatch,
        zero_modes=N - oracle.size,
        nondiagonalizable=not diagonalizability_check(diagram),
        degenerate=degenerate,
        invariance_residual=resid,
        contributions=contribs,
    )


def growth_rate(rot: StationaryRotation, class_tol: float = DEFAULT_CLASS_TOL) -> float:
    """Largest real part among the closed-form eigenvalues."""
    eigs = linearized_spectrum_formula(rot, class_tol)
    return float(max((e.real for e in eigs), default=0.0))


def any_real_part(values, tol: float = 1e-8) -> bool:
    values = np.asarray(values, dtype=complex)
    scale = 1.0 + float(np.max(np.abs(values), initial=0.0))
    return bool(np.any(np.abs(values.real) > tol * scale))
