"""Rigid body and regular stationary rotations.

Axes are numbered 1..n in order of increasing mass-tensor eigenvalue. A
rotation is given as a list of planes ``(axis_a, axis_b, omega)``; the
angular velocity has ``Omega[a, b] = omega`` and the momentum is
``M = Omega J + J Omega``.

Besides the user frame, every :class:`StationaryRotation` carries an
*internal* frame in which plane ``i`` occupies coordinates ``(2i, 2i+1)`` and
the fixed axes come last. The pencil and spectrum code works in that frame.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import AxisReuse, BadIndex, DegenerateBody, NonPositiveEigenvalue, ZeroFrequency

DEFAULT_ASYMMETRY_TOL = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class BodySpec:
    """Mass tensor eigenvalues, sorted ascending."""

    eigenvalues: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def lam(self) -> np.ndarray:
        return np.asarray(self.eigenvalues, dtype=float)

    @property
    def J(self) -> np.ndarray:
        return np.diag(self.lam)


@dataclass(frozen=True)
class Plane:
    axis_a: int
    axis_b: int
    omega: float


@dataclass(frozen=True)
class RotationSpec:
    planes: tuple[Plane, ...] = ()

    @classmethod
    def from_tuples(cls, planes: Iterable[Sequence]) -> "RotationSpec":
        return cls(tuple(Plane(int(a), int(b), float(w)) for a, b, w in planes))

    def fixed_axes(self, n: int) -> tuple[int, ...]:
        used = {ax for p in self.planes for ax in (p.axis_a, p.axis_b)}
        return tuple(k for k in range(1, n + 1) if k not in used)


@dataclass(frozen=True, eq=False)
class StationaryRotation:
    body: BodySpec
    spec: RotationSpec
    M: np.ndarray
    Omega: np.ndarray
    momenta: tuple[float, ...]
    perm: tuple[int, ...]
    warnings: tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.body.n

    @property
    def m(self) -> int:
        """Number of rotation planes."""
        return len(self.spec.planes)

    @property
    def omegas(self) -> np.ndarray:
        return np.array([p.omega for p in self.spec.planes], dtype=float)

    @property
    def mom(self) -> np.ndarray:
        return np.asarray(self.momenta, dtype=float)

    @property
    def lam_int(self) -> np.ndarray:
        """Mass tensor diagonal in the internal frame."""
        return self.body.lam[list(self.perm)]

    @property
    def M_int(self) -> np.ndarray:
        p = list(self.perm)
        return self.M[np.ix_(p, p)]

    @property
    def Omega_int(self) -> np.ndarray:
        p = list(self.perm)
        return self.Omega[np.ix_(p, p)]

    def plane_eigs(self, i: int) -> tuple[float, float]:
        lam = self.lam_int
        return float(lam[2 * i]), float(lam[2 * i + 1])

    @property
    def fixed_internal(self) -> range:
        """Internal indices of the fixed axes."""
        return range(2 * self.m, self.n)

    def user_axis(self, k: int) -> int:
        """1-based user axis number of internal coordinate ``k``."""
        return self.perm[k] + 1

    @property
    def dim_K(self) -> int:
        v = self.n - 2 * self.m
        return self.m + v * (v - 1) // 2


def validate_body(raw: Sequence[float], asymmetry_tol: float = DEFAULT_ASYMMETRY_TOL) -> BodySpec:
    if len(raw) == 0:
        raise ValueError("body needs at least one eigenvalue")
    lam = sorted(float(x) for x in raw)
    if lam[0] <= 0 or not all(np.isfinite(lam)):
        raise NonPositiveEigenvalue(f"mass tensor eigenvalues must be positive and finite, got {list(raw)}")
    for a, b in zip(lam, lam[1:]):
        if (b - a) <= asymmetry_tol * b:
            raise DegenerateBody(f"eigenvalues {a!r} and {b!r} coincide within relative tolerance {asymmetry_tol}")
    return BodySpec(tuple(lam))


def momentum_from_velocity(Omega: np.ndarray, body: BodySpec | np.ndarray) -> np.ndarray:
    lam = body.lam if isinstance(body, BodySpec) else np.asarray(body, dtype=float)
    return Omega * (lam[:, None] + lam[None, :])


def velocity_from_momentum(M: np.ndarray, body: BodySpec | np.ndarray) -> np.ndarray:
    """Invert ``M = Omega J + J Omega`` entrywise: ``Omega_ij = M_ij / (lam_i + lam_j)``."""
    lam = body.lam if isinstance(body, BodySpec) else np.asarray(body, dtype=float)
    return M / (lam[:, None] + lam[None, :])


def is_stationary(M: np.ndarray, body: BodySpec | np.ndarray, tol: float = 1e-12) -> bool:
    Om = velocity_from_momentum(M, body)
    c = M @ Om - Om @ M
    return bool(np.linalg.norm(c) <= tol * np.linalg.norm(M) ** 2)


def build_stationary(body: BodySpec, spec: RotationSpec | Iterable[Sequence]) -> StationaryRotation:
    if not isinstance(spec, RotationSpec):
        spec = RotationSpec.from_tuples(spec)
    n = body.n
    seen: set[int] = set()
    for p in spec.planes:
        for ax in (p.axis_a, p.axis_b):
            if not 1 <= ax <= n:
                raise BadIndex(f"axis {ax} outside 1..{n}")
        if p.axis_a == p.axis_b or p.axis_a in seen or p.axis_b in seen:
            raise AxisReuse(f"plane ({p.axis_a}, {p.axis_b}) reuses an axis")
        seen.update((p.axis_a, p.axis_b))
        if p.omega == 0 or not np.isfinite(p.omega):
            raise ZeroFrequency(f"plane ({p.axis_a}, {p.axis_b}) has omega={p.omega}")

    lam = body.lam
    Om = np.zeros((n, n))
    mom = []
    for p in spec.planes:
        a, b = p.axis_a - 1, p.axis_b - 1
        Om[a, b] = p.omega
        Om[b, a] = -p.omega
        mom.append((lam[a] + lam[b]) * p.omega)
    M = momentum_from_velocity(Om, body)

    perm = [ax - 1 for p in spec.planes for ax in (p.axis_a, p.axis_b)]
    perm += [k - 1 for k in spec.fixed_axes(n)]

    warnings = []
    w2 = [p.omega ** 2 for p in spec.planes]
    for i in range(len(w2)):
        for j in range(i + 1, len(w2)):
            if abs(w2[i] - w2[j]) <= 1e-9 * max(w2[i], w2[j]):
                warnings.append(
                    f"planes {i + 1} and {j + 1} share |omega|; Omega has a repeated eigenvalue pair and "
                    "the verdict is reported without a guarantee for that case"
                )
    return StationaryRotation(
        body=body,
        spec=spec,
        M=_frozen(M),
        Omega=_frozen(Om),
        momenta=tuple(float(x) for x in mom),
        perm=tuple(perm),
        warnings=tuple(warnings),
    )


def rotation(eigenvalues: Sequence[float], planes: Iterable[Sequence], asymmetry_tol: float = DEFAULT_ASYMMETRY_TOL) -> StationaryRotation:
    """Shorthand: ``rotation([1, 2, 3], [(1, 3, 1.0)])``."""
    return build_stationary(validate_body(eigenvalues, asymmetry_tol), RotationSpec.from_tuples(planes))
