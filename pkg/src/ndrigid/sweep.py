"""Verdict sweeps over one angular velocity with bisection of the transitions."""
from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .body import rotation
from .diagram import DEFAULT_CLASS_TOL, Status, build_diagram, stability_verdict
from .errors import BadParameter

_PARAM = re.compile(r"^omega([1-9][0-9]*)$")


@dataclass(frozen=True)
class SweepProblem:
    eigenvalues: tuple[float, ...]
    planes: tuple[tuple[int, int, float], ...]
    plane_index: int  # 0-based
    class_tol: float = DEFAULT_CLASS_TOL

    def verdict(self, value: float) -> Status:
        planes = list(self.planes)
        a, b, _ = planes[self.plane_index]
        planes[self.plane_index] = (a, b, float(value))
        return stability_verdict(build_diagram(rotation(self.eigenvalues, planes), self.class_tol)).status


@dataclass(frozen=True)
class Transition:
    lo: float
    hi: float
    status_lo: Status
    status_hi: Status

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass
class SweepResult:
    parameter: str
    values: np.ndarray
    statuses: list[Status]
    transitions: list[Transition]


def parse_parameter(name: str, n_planes: int) -> int:
    m = _PARAM.match(name)
    if not m:
        raise BadParameter(f"sweep parameter must look like 'omega1', got {name!r}")
    k = int(m.group(1))
    if k > n_planes:
        raise BadParameter(f"{name} refers to plane {k}, but only {n_planes} planes are given")
    return k - 1


def bisect_transition(problem: SweepProblem, lo: float, hi: float, s_lo: Status, s_hi: Status,
                      rel_width: float = 1e-6, max_iter: int = 200) -> Transition:
    """Shrink ``[lo, hi]`` until its width is below ``rel_width`` times its magnitude.

    Intermediate statuses other than the two endpoints (a tangency exactly
    at the boundary, say) are assigned to the side they were reached from.
    """
    for _ in range(max_iter):
        if abs(hi - lo) <= rel_width * max(abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        s = problem.verdict(mid)
        if s == s_lo:
            lo = mid
        elif s == s_hi:
            hi = mid
        else:
            # a third status sits inside the bracket; keep the half that still changes
            hi, s_hi = mid, s
    return Transition(lo, hi, s_lo, s_hi)


def run_sweep(eigenvalues, planes, parameter: str, value_range, steps: int = 50, rel_width: float = 1e-6,
              class_tol: float = DEFAULT_CLASS_TOL, jobs: int = 1) -> SweepResult:
    lo, hi = float(value_range[0]), float(value_range[1])
    if lo == hi or lo * hi <= 0:
        raise BadParameter(f"sweep range [{lo}, {hi}] must be non-degenerate and must not contain 0")
    idx = parse_parameter(parameter, len(planes))
    problem = SweepProblem(tuple(float(x) for x in eigenvalues), tuple(tuple(p) for p in planes), idx, class_tol)
    values = np.linspace(lo, hi, steps)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            statuses = list(pool.map(problem.verdict, values))
    else:
        statuses = [problem.verdict(v) for v in values]
    transitions = []
    for k in range(len(values) - 1):
        if statuses[k] != statuses[k + 1]:
            transitions.append(bisect_transition(problem, values[k], values[k + 1], statuses[k], statuses[k + 1], rel_width))
    return SweepResult(parameter, values, statuses, transitions)
