"""Named regression fixtures and a random generator of regular rotations."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .body import StationaryRotation, rotation
from .diagram import build_diagram, pair_quadratic

# omega_1^2 / omega_2^2 at which the two parabolas of the (e1,e4),(e2,e3) rotation of
# J = diag(1,2,3,4) become tangent: smaller root of 25 r^2 - 234 r + 225
TANGENCY_RATIO_4D = (234.0 - math.sqrt(234.0 ** 2 - 4 * 25 * 225)) / 50.0


@dataclass(frozen=True)
class Fixture:
    name: str
    eigenvalues: tuple[float, ...]
    planes: tuple[tuple[int, int, float], ...]
    expected: str | None = None  # verdict status value
    note: str = ""

    def build(self) -> StationaryRotation:
        return rotation(self.eigenvalues, self.planes)


def _through_point(sq: list[float], pairs: list[tuple[int, int]], lam: float, y: float = 1.0):
    """Planes on ``pairs`` whose parabolas all pass through ``(lam, y)``."""
    eig = [math.sqrt(s) for s in sq]
    planes = []
    for a, b in pairs:
        m2 = (sq[a - 1] - lam) * (sq[b - 1] - lam) / y
        m = math.sqrt(m2)
        planes.append((a, b, m / (eig[a - 1] + eig[b - 1])))
    return tuple(eig), tuple(planes)


def _triple_point_indefinite() -> Fixture:
    eig, planes = _through_point([36.0, 58.0, 76.0, 94.0, 100.0, 158.0], [(1, 2), (3, 5), (4, 6)], 67.0)
    return Fixture("triple-point-u12", eig, planes, None, "three parabolas through (67, 1), vertices 1 left and 2 right")


def _triple_point_definite() -> Fixture:
    eig, planes = _through_point([56.0, 69.6, 73.6, 78.0, 124.3, 138.0], [(1, 4), (2, 5), (3, 6)], 47.0)
    return Fixture("triple-point-u3", eig, planes, None, "three parabolas through (47, 1), all vertices to the right")


def _r(ratio: float) -> tuple[tuple[int, int, float], ...]:
    return ((1, 4, math.sqrt(ratio)), (2, 3, 1.0))


FIXTURES: dict[str, Fixture] = {
    f.name: f
    for f in [
        Fixture("3d-axis3", (1.0, 2.0, 3.0), ((1, 2, 1.0),), "Stable", "rotation about the largest-eigenvalue axis"),
        Fixture("3d-axis2", (1.0, 2.0, 3.0), ((1, 3, 1.0),), "Unstable", "middle axis"),
        Fixture("3d-axis1", (1.0, 2.0, 3.0), ((2, 3, 1.0),), "Stable", "smallest-eigenvalue axis"),
        Fixture("4d-adjacent", (1.0, 2.0, 3.0, 4.0), ((1, 2, 1.0), (3, 4, 0.6)), "Stable"),
        Fixture("4d-adjacent-equal-m", (1.0, 2.0, 3.0, 4.0), ((1, 2, 7.0 / 3.0), (3, 4, 1.0)), "Stable",
                "equal momenta, intersection at infinity"),
        Fixture("4d-interlaced", (1.0, 2.0, 3.0, 4.0), ((1, 3, 1.0), (2, 4, 0.8)), "Unstable"),
        Fixture("4d-nested-slow", (1.0, 2.0, 3.0, 4.0), _r(0.5), "Stable", "omega_1 << omega_2"),
        Fixture("4d-nested-complex", (1.0, 2.0, 3.0, 4.0), _r(3.0), "Unstable", "complex pair"),
        Fixture("4d-nested-fast", (1.0, 2.0, 3.0, 4.0), _r(10.0), "Unstable", "real pair below the axis"),
        Fixture("4d-nested-tangent", (1.0, 2.0, 3.0, 4.0), _r(TANGENCY_RATIO_4D), "InconclusiveTangency"),
        Fixture("5d-one-line", (1.0, 2.0, 3.0, 4.0, 5.5), ((1, 4, 1.3), (2, 3, -0.7)), "Unstable"),
        Fixture("5d-adjacent-pairs", (1.0, 1.5, 2.2, 3.1, 4.0), ((1, 2, 2.0), (3, 4, 1.0)), "Stable"),
        Fixture("6d-codim2-adjacent", (0.7, 1.1, 1.6, 2.5, 3.3, 4.2), ((3, 4, 1.4),), "Stable"),
        Fixture("6d-codim2-gap", (0.7, 1.1, 1.6, 2.5, 3.3, 4.2), ((2, 4, 1.4),), "Unstable"),
        _triple_point_indefinite(),
        _triple_point_definite(),
    ]
}


def fixture(name: str) -> StationaryRotation:
    return FIXTURES[name].build()


# --------------------------------------------------------------------------
# random regular rotations


def _well_separated(diagram, tol: float) -> bool:
    """Reject diagrams close to a tangency or to an intersection at infinity."""
    P = diagram.parabolas
    for i in range(len(P)):
        for j in range(i + 1, len(P)):
            c2, c1, c0 = pair_quadratic(P[i], P[j])
            mscale = max(P[i].m ** 2, P[j].m ** 2)
            if abs(c2) <= tol * mscale:
                return False
            B, C = c1 / c2, c0 / c2
            if abs(B * B - 4 * C) <= tol * (B * B + 4 * abs(C)):
                return False
    for P_ in P:
        for L in diagram.lines:
            if abs((L.x0 - P_.p) * (L.x0 - P_.q)) <= tol * max(L.x0, P_.q) ** 2:
                return False
    return True


def random_rotation(rng: np.random.Generator, n: int | None = None, n_range=(4, 8), eig_range=(0.5, 5.0),
                    omega_range=(0.1, 3.0), min_gap: float = 1e-2, separation: float = 1e-6,
                    max_tries: int = 1000) -> StationaryRotation:
    """Random regular rotation with a non-tangent, finite-intersection diagram."""
    for _ in range(max_tries):
        nn = int(rng.integers(n_range[0], n_range[1] + 1)) if n is None else n
        eig = np.sort(rng.uniform(*eig_range, size=nn))
        if np.min(np.diff(eig)) < min_gap:
            continue
        m = int(rng.integers(1, nn // 2 + 1))
        axes = rng.permutation(nn)[: 2 * m] + 1
        omegas = rng.uniform(*omega_range, size=m) * rng.choice([-1.0, 1.0], size=m)
        planes = [(int(min(axes[2 * i], axes[2 * i + 1])), int(max(axes[2 * i], axes[2 * i + 1])), float(omegas[i]))
                  for i in range(m)]
        rot = rotation(eig.tolist(), planes)
        if _well_separated(build_diagram(rot), separation):
            return rot
    raise RuntimeError("could not draw a well-separated rotation")


def random_suite(count: int, seed: int = 0, **kwargs) -> list[StationaryRotation]:
    rng = np.random.default_rng(seed)
    return [random_rotation(rng, **kwargs) for _ in range(count)]
