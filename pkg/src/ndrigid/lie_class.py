"""Isomorphism class of the kernel algebras ``g_lam`` read off the parabolic diagram.

``g_lam`` is ``Ker P_lam(M)`` with the bracket ``[, ]_lam``. Its class is
determined by which curves of the diagram meet at abscissa ``lam`` and on
which side of each meeting point the parabola vertices lie. Dimensions of
the predicted class are cross-checked against the numerical kernel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diagram import Intersection, Kind, ParabolicDiagram, is_infinite, same_point
from .errors import NegativeN
from .pencil import numeric_rank, poisson_tensor

FIELD_R = "R"
FIELD_C = "C"


@dataclass(frozen=True)
class Point:
    """A point of the diagram at abscissa ``lam`` with the parabolas through it."""

    ordinate: complex | float
    planes: tuple[int, ...]
    kind: Kind
    left: int = 0
    right: int = 0

    @property
    def n_z(self) -> int:
        return len(self.planes)


@dataclass(frozen=True)
class DiagramCombinatorics:
    lam: complex | float
    points: tuple[Point, ...]
    v: int
    l_lam: int = 0
    r_lam: int = 0
    has_line_at_lam: bool = False
    warnings: tuple[str, ...] = ()

    @property
    def upper(self) -> tuple[Point, ...]:
        return tuple(p for p in self.points if p.kind is Kind.REAL_UPPER)

    @property
    def lower(self) -> tuple[Point, ...]:
        return tuple(p for p in self.points if p.kind is Kind.REAL_LOWER)


@dataclass(frozen=True)
class Factor:
    tag: str
    p: int
    q: int = 0

    @property
    def k(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        k = self.k
        if self.tag in ("so", "so_C"):
            return k * (k - 1) // 2
        if self.tag in ("u", "gl", "gl_C"):
            return k * k
        if self.tag == "so_semi":
            return k * (k - 1) // 2 + k
        if self.tag in ("u_semi", "gl_semi"):
            return k * k + 2 * k
        if self.tag in ("R", "C"):
            return k
        raise ValueError(self.tag)

    def render(self) -> str:
        p, q = sorted((self.p, self.q))
        sig = f"{q}" if p == 0 else f"{p},{q}"
        return {
            "so": f"so({sig})",
            "u": f"u({sig})",
            "gl": f"gl({self.k},R)",
            "so_C": f"so({self.k},C)",
            "gl_C": f"gl({self.k},C)",
            "so_semi": f"so({sig})|x R^{self.k}",
            "u_semi": f"u({sig})|x C^{self.k}",
            "gl_semi": f"gl({self.k},R)|x R^{2 * self.k}",
            "R": f"R^{self.k}",
            "C": f"C^{self.k}",
        }[self.tag]


@dataclass
class LieAlgebraClass:
    lam: complex | float
    case: int
    factors: list[Factor]
    N: int
    ground_field: str = FIELD_R
    kernel_dim: int | None = None
    N_predicted: int | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def nonabelian_dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def total_dim(self) -> int:
        return self.nonabelian_dim + self.N

    def canonical(self) -> str:
        parts = [f.render() for f in self.factors if f.dim > 0]
        parts.append(f"{self.ground_field}^{self.N}")
        return " (+) ".join(parts)

    def __str__(self) -> str:
        return self.canonical()


# --------------------------------------------------------------------------
# combinatorics


def _group_by_ordinate(items: list[tuple[int, complex | float]], tol: float) -> list[tuple[complex | float, list[int]]]:
    groups: list[tuple[complex | float, list[int]]] = []
    for plane, y in items:
        for g in groups:
            if same_point(g[0], y, tol):
                if plane not in g[1]:
                    g[1].append(plane)
                break
        else:
            groups.append((y, [plane]))
    return groups


def _pair_points(diagram: ParabolicDiagram, lam, tol: float) -> list[tuple[complex | float, list[int], Kind]]:
    """Connected groups of parabolas meeting pairwise at abscissa ``lam``."""
    hits: list[Intersection] = [
        z for z in diagram.intersections
        if not z.is_line and not z.is_infinite and same_point(z.abscissa, lam, tol)
    ]
    groups: list[tuple[complex | float, list[int], Kind]] = []
    for z in hits:
        for k, (y, planes, kind) in enumerate(groups):
            if same_point(y, z.ordinate, tol):
                for p in (z.plane_i, z.plane_j):
                    if p not in planes:
                        planes.append(p)
                break
        else:
            groups.append((z.ordinate, [z.plane_i, z.plane_j], z.kind))
    return groups


def _sides(diagram: ParabolicDiagram, planes, lam, tol: float) -> tuple[int, int, list[str]]:
    left = right = 0
    warnings = []
    for i in planes:
        xv = diagram.parabolas[i].vertex
        if same_point(xv, lam, tol):
            warnings.append(f"vertex of P{i + 1} sits on the meeting point at {lam}")
        if xv < lam:
            left += 1
        else:
            right += 1
    return left, right, warnings


def combinatorics_at(diagram: ParabolicDiagram, lam, tol: float | None = None) -> DiagramCombinatorics:
    tol = diagram.class_tol if tol is None else tol
    v = len(diagram.lines)
    warnings: list[str] = []
    if is_infinite(lam):
        items = [(P.plane_index, P.m ** 2) for P in diagram.parabolas]
        pts = tuple(
            Point(1.0 / y, tuple(sorted(planes)), Kind.INFINITE)
            for y, planes in _group_by_ordinate(items, tol)
        )
        return DiagramCombinatorics(lam, pts, v)

    if isinstance(lam, complex) and abs(lam.imag) > tol * max(1.0, abs(lam)):
        pts = tuple(Point(y, tuple(sorted(pl)), kind) for y, pl, kind in _pair_points(diagram, lam, tol))
        return DiagramCombinatorics(lam, pts, v)

    lam = float(np.real(lam))
    line_here = [L for L in diagram.lines if same_point(L.x0, lam, tol)]
    l_lam = sum(1 for L in diagram.lines if L.x0 < lam and L not in line_here)
    r_lam = sum(1 for L in diagram.lines if L.x0 > lam and L not in line_here)
    if line_here:
        items = [(P.plane_index, P.chi(lam)) for P in diagram.parabolas]
        raw = [(y, planes, Kind.REAL_UPPER if y > 0 else Kind.REAL_LOWER)
               for y, planes in _group_by_ordinate(items, tol)]
    else:
        raw = _pair_points(diagram, lam, tol)
    pts = []
    for y, planes, kind in raw:
        left = right = 0
        if kind is Kind.REAL_UPPER:
            left, right, w = _sides(diagram, planes, lam, tol)
            warnings += w
        pts.append(Point(y, tuple(sorted(planes)), kind, left, right))
    return DiagramCombinatorics(lam, tuple(pts), v, l_lam, r_lam, bool(line_here), tuple(warnings))


# --------------------------------------------------------------------------
# classification


def numeric_kernel_dim(diagram: ParabolicDiagram, lam, rank_tol: float = 1e-10) -> int:
    """Kernel dimension of ``P_lam`` (over C for non-real ``lam``)."""
    rot = diagram.rotation
    G = poisson_tensor(rot.M, rot.body.lam, lam)
    N = rot.n * (rot.n - 1) // 2
    return N - numeric_rank(G, rank_tol)


def classify_factors(comb: DiagramCombinatorics) -> tuple[int, list[Factor], str]:
    lam = comb.lam
    if is_infinite(lam):
        factors = [Factor("so", comb.v)] + [Factor("u", p.n_z) for p in comb.points]
        return 2, factors, FIELD_R
    if isinstance(lam, complex):
        factors = [Factor("so_C", comb.v)] + [Factor("gl_C", p.n_z) for p in comb.points]
        return 3, factors, FIELD_C
    if comb.has_line_at_lam:
        factors = [Factor("so_semi", comb.l_lam, comb.r_lam)]
        factors += [Factor("u_semi", p.left, p.right) for p in comb.upper]
        factors += [Factor("gl_semi", p.n_z) for p in comb.lower]
        return 4, factors, FIELD_R
    factors = [Factor("so", comb.l_lam, comb.r_lam)]
    factors += [Factor("u", p.left, p.right) for p in comb.upper]
    factors += [Factor("gl", p.n_z) for p in comb.lower]
    return 1, factors, FIELD_R


def dim_crosscheck(cls: LieAlgebraClass, numeric_kernel_dim: int) -> int:
    N = numeric_kernel_dim - cls.nonabelian_dim
    if N < 0:
        raise NegativeN(
            f"kernel dimension {numeric_kernel_dim} is smaller than the classified factors ({cls.nonabelian_dim}) at lam={cls.lam}"
        )
    return N


def _predicted_N(diagram: ParabolicDiagram, comb: DiagramCombinatorics) -> int:
    """Planes not passing through any point of ``Sigma_lam`` each leave one abelian direction."""
    used = {i for p in comb.points for i in p.planes}
    return diagram.rotation.m - len(used)


def classify_g_lambda(diagram: ParabolicDiagram, lam, rank_tol: float = 1e-10,
                      kernel_dim: int | None = None) -> LieAlgebraClass:
    comb = combinatorics_at(diagram, lam)
    case, factors, fld = classify_factors(comb)
    kd = numeric_kernel_dim(diagram, lam, rank_tol) if kernel_dim is None else kernel_dim
    cls = LieAlgebraClass(comb.lam, case, factors, 0, fld, kd, _predicted_N(diagram, comb), list(comb.warnings))
    cls.N = dim_crosscheck(cls, kd)
    if cls.N != cls.N_predicted:
        cls.warnings.append(f"abelian part R^{cls.N} differs from the count of free planes ({cls.N_predicted})")
    return cls


def classify_all(diagram: ParabolicDiagram, rank_tol: float = 1e-10) -> list[LieAlgebraClass]:
    """Classes at every point of the spectrum and at infinity."""
    pts = diagram.spectrum_points()
    if not any(is_infinite(p) for p in pts):
        pts = pts + [math.inf]
    return [classify_g_lambda(diagram, lam, rank_tol) for lam in pts]


def is_compact_class(cls: LieAlgebraClass) -> bool:
    """Compact iff every factor is a definite orthogonal or unitary algebra."""
    for f in cls.factors:
        if f.dim == 0:
            continue
        if f.tag not in ("so", "u") or min(f.p, f.q) > 0:
            return False
    return cls.ground_field == FIELD_R
