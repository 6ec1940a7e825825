"""Parabolic diagrams and the stability verdict.

Each rotation plane with eigenvalues ``(la, lb)`` and momentum ``m``
contributes the parabola ``chi(x) = (x - la**2)(x - lb**2) / m**2``; each
fixed axis with eigenvalue ``l`` contributes the vertical line ``x = l**2``.
Intersections are taken in the projective plane, so two parabolas always
meet twice counted with multiplicity (possibly at infinity, when their
leading coefficients agree).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .body import StationaryRotation
from .errors import DegenerateCurvePair, OnAxisIntersection

DEFAULT_CLASS_TOL = 1e-9
INFINITY = math.inf

TANGENCY_NOTE = (
    "tangent intersection in the upper half-plane: the sufficient conditions for stability "
    "do not apply, so no verdict is given"
)


class Kind(str, Enum):
    REAL_UPPER = "RealUpper"
    REAL_LOWER = "RealLower"
    COMPLEX = "Complex"
    INFINITE = "Infinite"


class Status(str, Enum):
    STABLE = "Stable"
    UNSTABLE = "Unstable"
    INCONCLUSIVE = "InconclusiveTangency"


def is_infinite(x) -> bool:
    return isinstance(x, (float, int)) and math.isinf(x)


@dataclass(frozen=True)
class Parabola:
    plane_index: int
    p: float
    q: float
    m: float

    @property
    def id(self) -> str:
        return f"P{self.plane_index + 1}"

    @property
    def leading(self) -> float:
        return 1.0 / self.m ** 2

    @property
    def vertex(self) -> float:
        return 0.5 * (self.p + self.q)

    @property
    def coefficients(self) -> tuple[float, float, float]:
        """``(c2, c1, c0)`` of ``chi(x) = c2 x**2 + c1 x + c0``."""
        s = self.leading
        return s, -s * (self.p + self.q), s * self.p * self.q

    def chi(self, x):
        if is_infinite(x):
            return self.leading
        return (x - self.p) * (x - self.q) / self.m ** 2


@dataclass(frozen=True)
class VerticalLine:
    axis_index: int  # internal coordinate of the fixed axis
    user_axis: int
    x0: float

    @property
    def id(self) -> str:
        return f"L{self.user_axis}"


@dataclass(frozen=True)
class Intersection:
    participants: tuple[str, str]
    abscissa: complex | float
    ordinate: complex | float | None
    kind: Kind
    tangent: bool = False
    multiplicity: int = 1
    marginal: bool = False
    plane_i: int = -1
    plane_j: int | None = None  # second plane for parabola pairs
    line_axis: int | None = None  # internal axis for line/parabola pairs

    @property
    def is_line(self) -> bool:
        return self.line_axis is not None

    @property
    def is_infinite(self) -> bool:
        return self.kind is Kind.INFINITE


@dataclass(frozen=True, eq=False)
class ParabolicDiagram:
    rotation: StationaryRotation
    parabolas: tuple[Parabola, ...]
    lines: tuple[VerticalLine, ...]
    intersections: tuple[Intersection, ...]
    class_tol: float = DEFAULT_CLASS_TOL

    @property
    def Lambda(self) -> list:
        """Intersection abscissas as a multiset; infinity appears as ``math.inf``."""
        out = []
        for z in self.intersections:
            out.extend([z.abscissa] * z.multiplicity)
        return out

    def spectrum_points(self) -> list:
        """Distinct abscissas (within ``class_tol``), reals first, then complex, then infinity."""
        return distinct_values(self.Lambda, self.class_tol)


@dataclass(frozen=True)
class Verdict:
    status: Status
    witnesses: tuple[Intersection, ...] = ()
    warnings: tuple[str, ...] = field(default=())


def same_point(a, b, tol: float) -> bool:
    if is_infinite(a) or is_infinite(b):
        return is_infinite(a) and is_infinite(b)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def distinct_values(values, tol: float) -> list:
    out: list = []
    for v in values:
        if not any(same_point(v, w, tol) for w in out):
            out.append(v)
    real = sorted((v for v in out if not is_infinite(v) and not isinstance(v, complex)))
    cplx = sorted((v for v in out if isinstance(v, complex)), key=lambda z: (z.real, z.imag))
    inf = [v for v in out if is_infinite(v)]
    return real + cplx + inf


def _quadratic_roots(a: float, b: float, c: float, tol: float):
    """Roots of ``a x^2 + b x + c`` with ``a != 0``.

    Returns ``(roots, disc_class, marginal)`` where ``disc_class`` is one of
    ``"real"``, ``"complex"``, ``"double"``. Classification is made on the
    monic form ``x^2 + B x + C`` relative to ``B^2 + 4|C|``.
    """
    B, C = b / a, c / a
    disc = B * B - 4.0 * C
    scale = B * B + 4.0 * abs(C)
    if abs(disc) <= tol * scale:
        return (-0.5 * B,), "double", disc != 0.0
    if disc > 0:
        sq = math.sqrt(disc)
        qq = -0.5 * (B + math.copysign(sq, B))
        if qq == 0.0:
            r = (-0.5 * sq, 0.5 * sq)
        else:
            r = (qq, C / qq)
        return tuple(sorted(r)), "real", False
    sq = math.sqrt(-disc)
    return (complex(-0.5 * B, -0.5 * sq), complex(-0.5 * B, 0.5 * sq)), "complex", False


def pair_quadratic(P_i: Parabola, P_j: Parabola) -> tuple[float, float, float]:
    """Coefficients of ``m_j^2 (x-p_i)(x-q_i) - m_i^2 (x-p_j)(x-q_j)``."""
    mi2, mj2 = P_i.m ** 2, P_j.m ** 2
    c2 = mj2 - mi2
    c1 = -mj2 * (P_i.p + P_i.q) + mi2 * (P_j.p + P_j.q)
    c0 = mj2 * P_i.p * P_i.q - mi2 * P_j.p * P_j.q
    return c2, c1, c0


def _real_kind(y: float) -> Kind:
    return Kind.REAL_UPPER if y > 0 else Kind.REAL_LOWER


def intersect_parabolas(P_i: Parabola, P_j: Parabola, class_tol: float = DEFAULT_CLASS_TOL) -> list[Intersection]:
    if P_i.plane_index > P_j.plane_index:
        P_i, P_j = P_j, P_i
    ids = (P_i.id, P_j.id)
    common = dict(plane_i=P_i.plane_index, plane_j=P_j.plane_index)
    c2, c1, c0 = pair_quadratic(P_i, P_j)
    mi2, mj2 = P_i.m ** 2, P_j.m ** 2
    xs = max(abs(P_i.p), abs(P_i.q), abs(P_j.p), abs(P_j.q), 1.0)
    cscale = max(mi2, mj2)

    if abs(c2) <= class_tol * cscale:
        y_inf = 1.0 / (0.5 * (mi2 + mj2))
        if abs(c1) <= class_tol * cscale * xs:
            if abs(c0) <= class_tol * cscale * xs * xs:
                raise DegenerateCurvePair(f"parabolas {ids[0]} and {ids[1]} coincide")
            return [Intersection(ids, INFINITY, y_inf, Kind.INFINITE, tangent=True, multiplicity=2, **common)]
        x = -c0 / c1
        y = P_i.chi(x)
        return [
            Intersection(ids, INFINITY, y_inf, Kind.INFINITE, **common),
            Intersection(ids, float(x), float(y), _real_kind(y), **common),
        ]

    roots, cls, marginal = _quadratic_roots(c2, c1, c0, class_tol)
    if cls == "double":
        x = roots[0]
        y = P_i.chi(x)
        return [Intersection(ids, float(x), float(y), _real_kind(y), tangent=True, multiplicity=2, marginal=marginal, **common)]
    if cls == "real":
        return [Intersection(ids, float(x), float(P_i.chi(x)), _real_kind(P_i.chi(x)), **common) for x in roots]
    return [Intersection(ids, z, complex(P_i.chi(z)), Kind.COMPLEX, **common) for z in roots]


def intersect_line_parabola(L: VerticalLine, P: Parabola, class_tol: float = DEFAULT_CLASS_TOL) -> Intersection:
    x0 = L.x0
    y = P.chi(x0)
    if abs((x0 - P.p) * (x0 - P.q)) <= class_tol * max(abs(x0), abs(P.p), abs(P.q)) ** 2:
        raise OnAxisIntersection(f"line {L.id} passes through a root of {P.id}")
    lo, hi = min(P.p, P.q), max(P.p, P.q)
    kind = Kind.REAL_LOWER if lo < x0 < hi else Kind.REAL_UPPER
    return Intersection((P.id, L.id), float(x0), float(y), kind, plane_i=P.plane_index, line_axis=L.axis_index)


def build_diagram(rot: StationaryRotation, class_tol: float = DEFAULT_CLASS_TOL) -> ParabolicDiagram:
    lam = rot.lam_int
    mom = rot.mom
    parabolas = tuple(
        Parabola(i, float(lam[2 * i] ** 2), float(lam[2 * i + 1] ** 2), float(mom[i])) for i in range(rot.m)
    )
    lines = tuple(VerticalLine(k, rot.user_axis(k), float(lam[k] ** 2)) for k in rot.fixed_internal)
    inter: list[Intersection] = []
    for i in range(len(parabolas)):
        for j in range(i + 1, len(parabolas)):
            inter.extend(intersect_parabolas(parabolas[i], parabolas[j], class_tol))
    for P in parabolas:
        for L in lines:
            inter.append(intersect_line_parabola(L, P, class_tol))
    return ParabolicDiagram(rot, parabolas, lines, tuple(inter), class_tol)


def stability_verdict(diagram: ParabolicDiagram) -> Verdict:
    bad = tuple(z for z in diagram.intersections if z.kind in (Kind.COMPLEX, Kind.REAL_LOWER))
    warnings = list(diagram.rotation.warnings)
    if any(z.marginal for z in diagram.intersections):
        warnings.append("marginal: a tangency was decided inside the classification tolerance band")
    if bad:
        return Verdict(Status.UNSTABLE, bad, tuple(warnings))
    tangents = tuple(z for z in diagram.intersections if z.tangent)
    if tangents:
        return Verdict(Status.INCONCLUSIVE, tangents, tuple(warnings + [TANGENCY_NOTE]))
    return Verdict(Status.STABLE, (), tuple(warnings))


def diagonalizability_check(diagram: ParabolicDiagram) -> bool:
    """True iff no two parabolas are tangent (including tangency at infinity)."""
    return not any(z.tangent and not z.is_line for z in diagram.intersections)


def pair_discriminant(P_i: Parabola, P_j: Parabola) -> float:
    """Discriminant of the pair quadratic in monic normalisation (``nan`` if it is not quadratic)."""
    c2, c1, c0 = pair_quadratic(P_i, P_j)
    if c2 == 0:
        return float("nan")
    B, C = c1 / c2, c0 / c2
    return B * B - 4 * C


def sqrt_neg(z) -> complex:
    """Principal square root of ``-z``."""
    return cmath.sqrt(-complex(z))


def points_at(diagram: ParabolicDiagram, lam, tol: float | None = None) -> list[Intersection]:
    tol = diagram.class_tol if tol is None else tol
    return [z for z in diagram.intersections if same_point(z.abscissa, lam, max(tol, 1e-12))]


def as_array(values) -> np.ndarray:
    return np.array([complex(v) for v in values])
