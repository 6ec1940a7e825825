"""Numerical integration of ``M' = [M, Omega]`` and perturbation experiments."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .body import BodySpec, StationaryRotation
from .errors import StepOverflow

OVERFLOW_NORM = 1e12


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 1e-3
    T: float = 100.0
    lam_samples: tuple[float, ...] | None = None  # default {0, 1, lam_max^2 + 1}
    powers: tuple[int, ...] = (2, 4)
    record_every: int = 1

    def __post_init__(self):
        if not (self.dt > 0 and self.T > 0):
            raise ValueError(f"dt and T must be positive, got dt={self.dt}, T={self.T}")

    @property
    def steps(self) -> int:
        return int(round(self.T / self.dt))

    def samples_for(self, jdiag) -> tuple[float, ...]:
        if self.lam_samples is not None:
            return tuple(self.lam_samples)
        return (0.0, 1.0, float(np.max(jdiag)) ** 2 + 1.0)


@dataclass
class TrajectoryRecord:
    times: np.ndarray
    states: np.ndarray  # (T, n, n)
    invariants: np.ndarray  # (T, len(lams), len(ks))
    energy: np.ndarray
    norms: np.ndarray
    lam_samples: tuple[float, ...]
    powers: tuple[int, ...]

    def drift(self) -> np.ndarray:
        """Max relative deviation of every monitored invariant from its initial value."""
        f0 = self.invariants[0]
        scale = np.maximum(np.abs(f0), 1e-300)
        return np.max(np.abs(self.invariants - f0), axis=0) / scale

    def energy_drift(self) -> float:
        return float(np.max(np.abs(self.energy - self.energy[0])) / max(abs(self.energy[0]), 1e-300))

    def to_csv(self, path) -> None:
        n = self.states.shape[1]
        iu = np.triu_indices(n, 1)
        head = ["t"] + [f"M{i + 1}{j + 1}" for i, j in zip(*iu)]
        head += [f"f[{lam:g},{k}]" for lam in self.lam_samples for k in self.powers] + ["H"]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(head)
            for t, M, f, h in zip(self.times, self.states, self.invariants, self.energy):
                w.writerow([repr(float(t))] + [repr(float(x)) for x in M[iu]] + [repr(float(x)) for x in f.ravel()] + [repr(float(h))])


def _jdiag(body) -> np.ndarray:
    return body.lam if isinstance(body, (BodySpec,)) else np.asarray(body, dtype=float)


def _inv_sum(lam: np.ndarray) -> np.ndarray:
    return 1.0 / (lam[:, None] + lam[None, :])


def vector_field(M: np.ndarray, body) -> np.ndarray:
    """``[M, Omega]`` for one state or a stack of states with shape ``(..., n, n)``."""
    P = M @ (M * _inv_sum(_jdiag(body)))
    # Omega M = (M Omega)^T for antisymmetric M and Omega
    return P - np.swapaxes(P, -1, -2)


def _project(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M - np.swapaxes(M, -1, -2))


def _field(M: np.ndarray, inv_s: np.ndarray) -> np.ndarray:
    P = M @ (M * inv_s)
    return P - np.swapaxes(P, -1, -2)


def _rk4(M: np.ndarray, inv_s: np.ndarray, dt: float) -> np.ndarray:
    k1 = _field(M, inv_s)
    k2 = _field(M + (0.5 * dt) * k1, inv_s)
    k3 = _field(M + (0.5 * dt) * k2, inv_s)
    k4 = _field(M + dt * k3, inv_s)
    return _project(M + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4))


def rk4_step(M: np.ndarray, body, dt: float) -> np.ndarray:
    """One classical RK4 step followed by re-projection onto antisymmetric matrices."""
    return _rk4(M, _inv_sum(_jdiag(body)), dt)


def manakov_invariants(M: np.ndarray, body, lams: Sequence[float], ks: Sequence[int]) -> np.ndarray:
    """``Tr (M + lam J^2)^k`` with shape ``(..., len(lams), len(ks))``."""
    j2 = np.diag(_jdiag(body) ** 2)
    out = np.empty(M.shape[:-2] + (len(lams), len(ks)))
    kmax = max(ks)
    for a, lam in enumerate(lams):
        A = M + lam * j2
        P = np.broadcast_to(np.eye(M.shape[-1]), A.shape).copy()
        for k in range(1, kmax + 1):
            P = P @ A
            if k in ks:
                out[..., a, list(ks).index(k)] = np.trace(P, axis1=-2, axis2=-1)
    return out


def kinetic_energy(M: np.ndarray, body) -> np.ndarray:
    """``1/2 Tr(Omega M)`` (negative with this pairing, as for the Hamiltonian at infinity)."""
    lam = _jdiag(body)
    Om = M / (lam[:, None] + lam[None, :])
    return 0.5 * np.einsum("...ij,...ji->...", Om, M)


def integrate(M0: np.ndarray, body, cfg: IntegratorConfig = IntegratorConfig()) -> TrajectoryRecord:
    jd = _jdiag(body)
    lams = cfg.samples_for(jd)
    M = _project(np.array(M0, dtype=float))
    steps = cfg.steps
    every = max(1, cfg.record_every)
    states = [M.copy()]
    times = [0.0]
    inv_s = _inv_sum(jd)
    for s in range(1, steps + 1):
        M = _rk4(M, inv_s, cfg.dt)
        if not np.isfinite(M).all() or np.abs(M).max() > OVERFLOW_NORM:
            rec = _record(np.array(times), np.array(states), jd, lams, cfg.powers)
            raise StepOverflow(f"state norm exceeded {OVERFLOW_NORM:g} at t={s * cfg.dt:g}", rec)
        if s % every == 0 or s == steps:
            states.append(M.copy())
            times.append(s * cfg.dt)
    return _record(np.array(times), np.array(states), jd, lams, cfg.powers)


def _record(times, states, jd, lams, ks) -> TrajectoryRecord:
    return TrajectoryRecord(
        times=times,
        states=states,
        invariants=manakov_invariants(states, jd, lams, ks),
        energy=kinetic_energy(states, jd),
        norms=np.linalg.norm(states, axis=(-2, -1)),
        lam_samples=tuple(lams),
        powers=tuple(ks),
    )


# --------------------------------------------------------------------------
# perturbation probe


@dataclass
class ProbeResult:
    epsilon: float
    trials: int
    max_deviation: float
    measured_growth_rate: float
    predicted_rate: float
    verdict_consistent: bool
    seed: int = 0
    horizon: float = 0.0
    dt: float = 0.0
    escaped: int = 0
    rates: list[float] = field(default_factory=list)

    @property
    def ratio(self) -> float:
        return self.max_deviation / self.epsilon if self.epsilon > 0 else 0.0


def random_directions(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random antisymmetric matrices of unit Frobenius norm."""
    A = rng.normal(size=(count, n, n))
    A = A - np.swapaxes(A, -1, -2)
    return A / np.linalg.norm(A, axis=(-2, -1))[:, None, None]


def run_batch(M0: np.ndarray, body, dt: float, T: float, ref: np.ndarray, stop_at: float | None = None,
              sample_every: int = 1, modal: np.ndarray | None = None):
    """Integrate a stack of states and track the deviation from ``ref``.

    Returns sample times, Frobenius deviations with shape ``(trials, samples)``
    and, when ``modal`` is given, the modal amplitudes ``|modal @ coords(M - ref)|``
    with shape ``(trials, samples, modes)`` (else ``None``). A trial stops
    once its deviation exceeds ``stop_at``; its last values are carried forward.
    """
    jd = _jdiag(body)
    M = _project(np.array(M0, dtype=float))
    n = M.shape[-1]
    iu = np.triu_indices(n, 1)
    steps = int(round(T / dt))

    def measure(M):
        D = M - ref
        d = np.linalg.norm(D, axis=(-2, -1))
        if modal is None:
            return d, None
        return d, np.abs(D[:, iu[0], iu[1]] @ modal.T)

    d, w = measure(M)
    times, devs, mdevs = [0.0], [d], [w]
    active = np.ones(M.shape[0], dtype=bool)
    inv_s = _inv_sum(jd)
    for s in range(1, steps + 1):
        if active.all():
            M = _rk4(M, inv_s, dt)
        else:
            M[active] = _rk4(M[active], inv_s, dt)
        if s % sample_every == 0 or s == steps:
            d, w = measure(M)
            d[~active] = devs[-1][~active]
            if w is not None:
                w[~active] = mdevs[-1][~active]
            times.append(s * dt)
            devs.append(d)
            mdevs.append(w)
            if stop_at is not None:
                active &= d <= stop_at
                if not active.any():
                    break
    mod = None if modal is None else np.stack(mdevs, axis=1)
    return np.array(times), np.array(devs).T, mod


def modal_projector(rot: StationaryRotation) -> np.ndarray:
    """Map from upper-triangle coordinates to eigen-coordinates of the linearized flow on ``T(M)``.

    Along a trajectory in the linear regime each coordinate evolves as
    ``exp(mu t)``, so its log-amplitude is a straight line even when the
    Frobenius deviation oscillates or mixes several rates.
    """
    from .spectrum import linearize_euler_exact, tangent_space_T

    L = linearize_euler_exact(rot)
    Q = tangent_space_T(rot)
    if Q.shape[1] == 0:
        return np.zeros((0, L.shape[0]))
    _, V = np.linalg.eig(Q.T @ L @ Q)
    return np.linalg.solve(V, Q.T)


def _window(dev: np.ndarray, eps: float, lo: float, hi: float) -> tuple[int, int] | None:
    above_lo = np.nonzero(dev > lo * eps)[0]
    if above_lo.size == 0:
        return None
    i0 = above_lo[0]
    above_hi = np.nonzero(dev > hi * eps)[0]
    i1 = above_hi[0] if above_hi.size else len(dev) - 1
    return (i0, i1) if i1 - i0 >= 3 else None


def fit_growth(times: np.ndarray, dev: np.ndarray, eps: float, lo: float = 10.0, hi: float = 1e3) -> float:
    """Slope of ``log dev`` between the first crossings of ``lo*eps`` and ``hi*eps``."""
    win = _window(dev, eps, lo, hi)
    if win is None:
        return 0.0
    i0, i1 = win
    return float(max(np.polyfit(times[i0:i1 + 1], np.log(dev[i0:i1 + 1]), 1)[0], 0.0))


def fit_modal_growth(times: np.ndarray, dev: np.ndarray, amps: np.ndarray, eps: float, lo: float = 10.0,
                     hi: float = 1e3) -> float:
    """Log-linear slope of the modal amplitude that dominates at the end of the ``dev`` window.

    Picking the dominant mode, not the steepest one, keeps quadratic
    harmonics (which grow at twice the rate near the top of the window)
    out of the estimate.
    """
    win = _window(dev, eps, lo, hi)
    if win is None:
        return 0.0
    i0, i1 = win
    k = int(np.argmax(amps[i1]))
    a = np.maximum(amps[i0:i1 + 1, k], 1e-300)
    return float(max(np.polyfit(times[i0:i1 + 1], np.log(a), 1)[0], 0.0))


def perturbation_probe(rot: StationaryRotation, epsilon: float, trials: int = 4, dt: float | None = None,
                       T: float | None = None, seed: int = 0, predicted_rate: float | None = None,
                       bound_constant: float | None = None, unstable: bool | None = None,
                       rate_rel_tol: float = 0.1, modal_fit: bool = True) -> ProbeResult:
    """Perturb the rotation in random directions and watch the deviation.

    For unstable rotations the growth rate is fitted on the window where the
    deviation grows from ``10 eps`` to ``1e3 eps`` and compared with
    ``predicted_rate``. With ``modal_fit`` the fit runs on the modal
    amplitudes of :func:`modal_projector`, otherwise on the Frobenius
    deviation itself. For stable rotations the deviation must stay below
    ``bound_constant * eps`` over the horizon.
    """
    from .diagram import Status, build_diagram, stability_verdict
    from .spectrum import growth_rate, linearized_spectrum_formula

    if predicted_rate is None:
        predicted_rate = growth_rate(rot)
    if unstable is None:
        unstable = stability_verdict(build_diagram(rot)).status is Status.UNSTABLE
    scale = max(float(np.max(np.abs(linearized_spectrum_formula(rot)), initial=0.0)), abs(rot.omegas).max())
    if dt is None:
        dt = 0.02 / max(scale, 1e-3)
    if T is None:
        T = 30.0 / predicted_rate if unstable and predicted_rate > 0 else 200.0
    if epsilon == 0:
        return ProbeResult(0.0, trials, 0.0, 0.0, predicted_rate, True, seed, T, dt)

    rng = np.random.default_rng(seed)
    D = random_directions(rot.n, trials, rng)
    M0 = rot.M[None] + epsilon * D
    stop = 2e3 * epsilon if unstable else None
    modal = modal_projector(rot) if unstable and modal_fit else None
    times, devs, amps = run_batch(M0, rot.body, dt, T, rot.M, stop_at=stop, modal=modal)
    max_dev = float(devs.max())
    if amps is None:
        rates = [fit_growth(times, d, epsilon) for d in devs]
    else:
        rates = [fit_modal_growth(times, d, a, epsilon) for d, a in zip(devs, amps)]
    escaped = int(sum(d.max() > 1e3 * epsilon for d in devs))
    measured = float(max(rates)) if rates else 0.0
    if unstable:
        ok = escaped > 0 and predicted_rate > 0 and abs(measured - predicted_rate) <= rate_rel_tol * predicted_rate
    else:
        ok = bound_constant is None or max_dev <= bound_constant * epsilon
    return ProbeResult(epsilon, trials, max_dev, measured, predicted_rate, bool(ok), seed, T, dt, escaped, rates)
