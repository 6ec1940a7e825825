"""The Poisson pencil of the rigid body evaluated at a stationary rotation.

Conventions. For a parameter ``lam`` the Lie pencil is
``[X, Y]_lam = X A Y - Y A X`` with ``A = J^2 - lam E`` (``A = E`` at
``lam = inf``). The Poisson tensor at ``M`` is

    P_lam(M)(X, Y) = <M, [X, Y]_lam>,   <U, V> = Tr(U^T V),

the positive pairing on antisymmetric matrices. With this sign the block
restrictions, the kernel generators and the cocycle forms below hold as
closed formulas, and the Euler field equals ``P_lam dH_lam`` for the
Hamiltonians of :func:`hamiltonian_H` (whose gradients are taken with
respect to ``Tr(U V)``).

Functions taking ``rot`` work in the rotation's internal frame (planes on
coordinate pairs ``(2i, 2i+1)``, fixed axes last). Functions taking an
explicit ``(M, jdiag)`` work in any frame where ``J = diag(jdiag)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .body import StationaryRotation
from .diagram import Kind, ParabolicDiagram, distinct_values, is_infinite, same_point
from .errors import BadParameters, BranchFailure, CertificateFails, InSpectrum, NotDegenerate, NotInSpectrum

DEFAULT_RANK_TOL = 1e-10
DEFAULT_PD_TOL = 1e-10


# --------------------------------------------------------------------------
# basis of so(n)


def so_basis(n: int) -> np.ndarray:
    """Stack of ``E_ij - E_ji`` for ``i < j`` in row-major order, shape ``(N, n, n)``."""
    iu = np.triu_indices(n, 1)
    B = np.zeros((len(iu[0]), n, n))
    k = np.arange(len(iu[0]))
    B[k, iu[0], iu[1]] = 1.0
    B[k, iu[1], iu[0]] = -1.0
    return B


def to_coords(X: np.ndarray) -> np.ndarray:
    return X[np.triu_indices(X.shape[-1], 1)]


def from_coords(x: np.ndarray, n: int) -> np.ndarray:
    X = np.zeros((n, n), dtype=np.result_type(x, float))
    iu = np.triu_indices(n, 1)
    X[iu] = x
    X[(iu[1], iu[0])] = -x
    return X


# --------------------------------------------------------------------------
# A matrix and brackets


@dataclass(frozen=True)
class AMatrix:
    """Diagonal of ``J^2 - lam E`` (all ones at infinity)."""

    diag: np.ndarray
    lam: complex | float

    @classmethod
    def at(cls, jdiag, lam) -> "AMatrix":
        jdiag = np.asarray(jdiag, dtype=float)
        if is_infinite(lam):
            return cls(np.ones_like(jdiag), lam)
        return cls(jdiag ** 2 - lam, lam)

    def pair(self, i: int) -> np.ndarray:
        """Two-by-two block of plane ``i`` (internal frame)."""
        return self.diag[2 * i: 2 * i + 2]


def _adiag(A) -> np.ndarray:
    return A.diag if isinstance(A, AMatrix) else np.asarray(A)


def bracket_lambda(X: np.ndarray, Y: np.ndarray, A) -> np.ndarray:
    """``X A Y - Y A X`` for a diagonal ``A`` (an :class:`AMatrix` or its diagonal)."""
    a = _adiag(A)
    XA = X * a[None, :]
    YA = Y * a[None, :]
    return XA @ Y - YA @ X


def poisson_eval(M: np.ndarray, jdiag, lam, X: np.ndarray, Y: np.ndarray):
    A = AMatrix.at(jdiag, lam)
    val = np.sum(M * bracket_lambda(X, Y, A))
    return val.item()


def poisson_tensor(M: np.ndarray, jdiag, lam) -> np.ndarray:
    """Gram matrix ``G[k, l] = P_lam(M)(B_k, B_l)`` over :func:`so_basis`."""
    n = M.shape[0]
    a = AMatrix.at(jdiag, lam).diag
    B = so_basis(n)
    # <M, B_k A B_l - B_l A B_k> = 2 * sum_{ab} M_ab (B_k A B_l)_ab  (antisymmetric parts add)
    BA = B * a[None, None, :]
    T = np.einsum("kab,lbc,ac->kl", BA, B, M)
    return T - T.T


def _tensor_int(rot: StationaryRotation, lam) -> np.ndarray:
    return poisson_tensor(rot.M_int, rot.lam_int, lam)


def numeric_rank(G: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL) -> int:
    if G.size == 0:
        return 0
    s = np.linalg.svd(G, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rank_tol * s[0]))


def numeric_kernel(G: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel."""
    if G.size == 0:
        return np.zeros((G.shape[1], 0))
    U, s, Vh = np.linalg.svd(G)
    r = int(np.sum(s > rank_tol * s[0])) if s[0] > 0 else 0
    return Vh[r:].conj().T


def kernel_dim(rot: StationaryRotation, lam, rank_tol: float = DEFAULT_RANK_TOL) -> int:
    N = rot.n * (rot.n - 1) // 2
    return N - numeric_rank(_tensor_int(rot, lam), rank_tol)


# --------------------------------------------------------------------------
# subspaces K, V_ij, W_ij (internal frame)


def common_kernel_basis(rot: StationaryRotation) -> list[np.ndarray]:
    """Generators of K: in-plane rotations, then the so(n - 2m) of the fixed axes."""
    n, m = rot.n, rot.m
    out = []
    for i in range(m):
        E = np.zeros((n, n))
        E[2 * i, 2 * i + 1], E[2 * i + 1, 2 * i] = 1.0, -1.0
        out.append(E)
    for a in range(2 * m, n):
        for b in range(a + 1, n):
            E = np.zeros((n, n))
            E[a, b], E[b, a] = 1.0, -1.0
            out.append(E)
    return out


def embed_V(X2: np.ndarray, i: int, j: int, n: int) -> np.ndarray:
    Z = np.zeros((n, n), dtype=np.result_type(X2, float))
    r, c = slice(2 * i, 2 * i + 2), slice(2 * j, 2 * j + 2)
    Z[r, c] = X2
    Z[c, r] = -X2.T
    return Z


def embed_W(v: np.ndarray, i: int, k: int, n: int) -> np.ndarray:
    Z = np.zeros((n, n), dtype=np.result_type(v, float))
    Z[2 * i: 2 * i + 2, k] = v
    Z[k, 2 * i: 2 * i + 2] = -np.asarray(v)
    return Z


def _Mblock(m: float) -> np.ndarray:
    return np.array([[0.0, m], [-m, 0.0]])


def restrict_V(rot: StationaryRotation, lam, i: int, j: int) -> np.ndarray:
    """Closed-form Gram matrix of ``P_lam`` on ``V_ij``.

    Basis order: the 2x2 units ``E11, E12, E21, E22`` of the block in rows of
    plane ``i`` and columns of plane ``j``. The form is
    ``2 Tr(M_i X A_j Y^T + M_j X^T A_i Y)``.
    """
    A = AMatrix.at(rot.lam_int, lam)
    Mi, Mj = _Mblock(rot.mom[i]), _Mblock(rot.mom[j])
    Ai, Aj = np.diag(A.pair(i)), np.diag(A.pair(j))
    units = [np.eye(4)[k].reshape(2, 2) for k in range(4)]
    G = np.zeros((4, 4), dtype=np.result_type(A.diag, float))
    for k, X in enumerate(units):
        for l, Y in enumerate(units):
            G[k, l] = 2 * np.trace(Mi @ X @ Aj @ Y.T + Mj @ X.T @ Ai @ Y)
    return G


def restrict_W(rot: StationaryRotation, lam, i: int, k: int) -> np.ndarray:
    """Closed-form Gram of ``P_lam`` on ``W_ik``: ``-2 a_k v^T M_i w``."""
    a_k = AMatrix.at(rot.lam_int, lam).diag[k]
    return -2 * a_k * _Mblock(rot.mom[i])


def restrict_block(rot: StationaryRotation, lam, i: int, j: int, *, line: bool = False) -> np.ndarray:
    return restrict_W(rot, lam, i, j) if line else restrict_V(rot, lam, i, j)


def V_det_factor(rot: StationaryRotation, lam, i: int, j: int):
    """``m_j^2 a_{2i-1} a_{2i} - m_i^2 a_{2j-1} a_{2j}``; zero exactly on the spectrum."""
    A = AMatrix.at(rot.lam_int, lam)
    ai, aj = A.pair(i), A.pair(j)
    mi, mj = rot.mom[i], rot.mom[j]
    return mj ** 2 * ai[0] * ai[1] - mi ** 2 * aj[0] * aj[1]


def _V_det_scale(rot: StationaryRotation, lam, i: int, j: int) -> float:
    A = AMatrix.at(rot.lam_int, lam)
    ai, aj = A.pair(i), A.pair(j)
    mi, mj = rot.mom[i], rot.mom[j]
    return float(max(abs(mj ** 2 * ai[0] * ai[1]), abs(mi ** 2 * aj[0] * aj[1]), 1e-300))


def V_kernel_block(rot: StationaryRotation, lam, i: int, j: int, alpha, beta) -> np.ndarray:
    """The 2x2 kernel element with coordinates ``(alpha, beta)``."""
    A = AMatrix.at(rot.lam_int, lam)
    ai, aj = A.pair(i), A.pair(j)
    mi, mj = rot.mom[i], rot.mom[j]
    return np.array(
        [[alpha * mj * ai[1], beta * mi * aj[0]], [-beta * mj * ai[0], alpha * mi * aj[0]]]
    )


def kernel_basis_Vij(rot: StationaryRotation, lam, i: int, j: int, tol: float = 1e-8) -> list[np.ndarray]:
    if abs(V_det_factor(rot, lam, i, j)) > tol * _V_det_scale(rot, lam, i, j):
        raise NotDegenerate(f"P_lam is nondegenerate on V_{i + 1}{j + 1} at lam={lam}")
    n = rot.n
    return [embed_V(V_kernel_block(rot, lam, i, j, 1.0, 0.0), i, j, n),
            embed_V(V_kernel_block(rot, lam, i, j, 0.0, 1.0), i, j, n)]


def kernel_basis_Wij(rot: StationaryRotation, lam, i: int, k: int, tol: float = 1e-8) -> list[np.ndarray]:
    x0 = rot.lam_int[k] ** 2
    if is_infinite(lam) or abs(lam - x0) > tol * max(1.0, x0):
        raise NotDegenerate(f"P_lam is nondegenerate on W at lam={lam}")
    n = rot.n
    return [embed_W(np.array([1.0, 0.0]), i, k, n), embed_W(np.array([0.0, 1.0]), i, k, n)]


# --------------------------------------------------------------------------
# spectrum of the pencil by rank drops


@dataclass
class RankReport:
    generic_rank: int
    ranks: dict
    spectrum_numeric: list
    common_kernel_dim: int


def generic_parameter(rot: StationaryRotation, avoid=(), tol: float = 1e-6) -> float:
    """A real parameter below ``lam_min^2`` that stays away from ``avoid``."""
    lmin2 = float(np.min(rot.body.lam)) ** 2
    for factor in (0.5, 0.75, 0.3, 0.9, 0.1, 1.7, 3.1):
        alpha = -factor * lmin2
        if not any(same_point(alpha, z, tol) for z in avoid):
            return alpha
    raise InSpectrum("no generic parameter found")


def _numeric_common_kernel(rot: StationaryRotation, rank_tol: float) -> np.ndarray:
    lmin2 = float(np.min(rot.body.lam)) ** 2
    # two parameters below lam_min^2 and one above lam_max^2; a rank drop at one of them cannot
    # enlarge the intersection of the three kernels beyond K
    lmax2 = float(np.max(rot.body.lam)) ** 2
    G = np.vstack([_tensor_int(rot, -0.37 * lmin2 - 0.11), _tensor_int(rot, -1.93 * lmin2 - 0.7),
                   _tensor_int(rot, 1.61 * lmax2 + 0.3)])
    return numeric_kernel(G, rank_tol)


def pencil_eigenvalues(rot: StationaryRotation, rank_tol: float = DEFAULT_RANK_TOL) -> list:
    """Values where ``P_0 - lam P_inf`` drops rank modulo the common kernel.

    Computed as the generalized eigenvalues of the pencil restricted to the
    complement of the numerically determined common kernel. Each point of
    the spectrum shows up with even multiplicity.
    """
    Kb = _numeric_common_kernel(rot, rank_tol)
    N = rot.n * (rot.n - 1) // 2
    if Kb.shape[1] == N:
        return []
    Q = scipy.linalg.null_space(Kb.T) if Kb.shape[1] else np.eye(N)
    G0 = Q.T @ _tensor_int(rot, 0.0) @ Q
    Gi = Q.T @ _tensor_int(rot, math.inf) @ Q
    w = scipy.linalg.eigvals(G0, Gi, homogeneous_eigvals=True)
    alpha, beta = w
    out = []
    scale = max(np.abs(alpha).max(), np.abs(beta).max())
    for a, b in zip(alpha, beta):
        if abs(b) <= 1e-12 * scale:
            out.append(math.inf)
        else:
            z = complex(a / b)
            out.append(z.real if abs(z.imag) <= 1e-9 * max(1.0, abs(z)) else z)
    return out


def cluster_values(values, radius: float = 1e-6) -> list:
    """Average numerically split copies of the same spectral point."""
    finite = [complex(v) for v in values if not is_infinite(v)]
    groups: list[list[complex]] = []
    for v in sorted(finite, key=lambda z: (z.real, z.imag)):
        for g in groups:
            c = np.mean(g)
            if abs(v - c) <= radius * max(1.0, abs(c)):
                g.append(v)
                break
        else:
            groups.append([v])
    out = []
    for g in groups:
        c = complex(np.mean(g))
        out.append(c.real if abs(c.imag) <= 1e-9 * max(1.0, abs(c)) else c)
    if any(is_infinite(v) for v in values):
        out.append(math.inf)
    return out


def rank_and_spectrum(rot: StationaryRotation, lam_samples=(), rank_tol: float = DEFAULT_RANK_TOL) -> RankReport:
    N = rot.n * (rot.n - 1) // 2
    ranks = {lam: numeric_rank(_tensor_int(rot, lam), rank_tol) for lam in lam_samples}
    spec = cluster_values(pencil_eigenvalues(rot, rank_tol))
    alpha = generic_parameter(rot, spec)
    generic = numeric_rank(_tensor_int(rot, alpha), rank_tol)
    if generic % 2:
        raise RuntimeError(f"odd numerical rank {generic}; rank threshold is inconsistent")
    return RankReport(generic, ranks, spec, N - generic)


def expected_kernel_dim(diagram: ParabolicDiagram, lam) -> int:
    """``dim K + 2`` per curve pair meeting at ``lam`` (tangent pairs count once)."""
    rot = diagram.rotation
    pairs = set()
    for z in diagram.intersections:
        if same_point(z.abscissa, lam, diagram.class_tol):
            pairs.add((z.plane_i, z.plane_j, z.line_axis))
    return rot.dim_K + 2 * len(pairs)


# --------------------------------------------------------------------------
# Hamiltonians


def _sqrt_branch(lam) -> complex:
    s = cmath.sqrt(complex(lam))
    return s


def hamiltonian_at(M: np.ndarray, jdiag, lam):
    """``H_lam(M)``; gradient taken with respect to ``Tr(U V)``."""
    jdiag = np.asarray(jdiag, dtype=float)
    S = jdiag[:, None] + jdiag[None, :]
    Om = M / S
    if is_infinite(lam):
        return 0.5 * float(np.trace(Om @ M))
    s = _sqrt_branch(lam)
    d = jdiag + s
    if np.any(np.abs(d) == 0):
        raise BranchFailure(f"J + sqrt(lam) E is singular at lam={lam}")
    R = Om / d[:, None] / d[None, :]
    val = -0.5 * np.trace(R @ M)
    return val.real if np.isreal(lam) and complex(lam).real >= 0 else complex(val)


def dH_at(M: np.ndarray, jdiag, lam) -> np.ndarray:
    jdiag = np.asarray(jdiag, dtype=float)
    Om = M / (jdiag[:, None] + jdiag[None, :])
    if is_infinite(lam):
        return Om
    d = jdiag + _sqrt_branch(lam)
    if np.any(np.abs(d) == 0):
        raise BranchFailure(f"J + sqrt(lam) E is singular at lam={lam}")
    R = -Om / d[:, None] / d[None, :]
    if np.isreal(lam) and complex(lam).real >= 0:
        return R.real
    return R


def hamiltonian_H(lam, rot: StationaryRotation):
    return hamiltonian_at(rot.M, rot.body.lam, lam)


def dH_entries(lam, rot: StationaryRotation) -> np.ndarray:
    """Block entries ``x_i = -omega_i / ((la + sqrt lam)(lb + sqrt lam))`` of ``dH_lam``."""
    out = []
    s = None if is_infinite(lam) else _sqrt_branch(lam)
    for i in range(rot.m):
        la, lb = rot.plane_eigs(i)
        w = rot.omegas[i]
        out.append(w if s is None else -w / ((la + s) * (lb + s)))
    return np.array(out, dtype=complex)


def dH(lam, rot: StationaryRotation) -> np.ndarray:
    """``dH_lam`` at the rotation, as a matrix in the internal frame."""
    return dH_at(rot.M_int, rot.lam_int, lam)


def block_diag_from_entries(x, n: int) -> np.ndarray:
    x = np.asarray(x)
    X = np.zeros((n, n), dtype=np.result_type(x, float))
    for i, xi in enumerate(x):
        X[2 * i, 2 * i + 1] = xi
        X[2 * i + 1, 2 * i] = -xi
    return X


# --------------------------------------------------------------------------
# cocycle forms and compactness


@dataclass
class CocycleForm:
    lam: float
    gram: np.ndarray
    labels: list = field(default_factory=list)


@dataclass
class CocycleCertificate:
    lam: float
    x: np.ndarray
    gram: np.ndarray
    min_eigenvalue: float
    compact: bool
    labels: list = field(default_factory=list)


def degenerate_blocks(rot: StationaryRotation, lam, tol: float = 1e-8) -> list[tuple[str, int, int]]:
    """``("V", i, j)`` and ``("W", i, k)`` summands of ``Ker P_lam / K``."""
    out = []
    for i in range(rot.m):
        for j in range(i + 1, rot.m):
            if abs(V_det_factor(rot, lam, i, j)) <= tol * _V_det_scale(rot, lam, i, j):
                out.append(("V", i, j))
    if not is_infinite(lam):
        for i in range(rot.m):
            for k in rot.fixed_internal:
                x0 = rot.lam_int[k] ** 2
                if abs(lam - x0) <= tol * max(1.0, x0):
                    out.append(("W", i, k))
    return out


def cocycle_BX(rot: StationaryRotation, lam: float, x, tol: float = 1e-8) -> CocycleForm:
    """Gram matrix of ``B_X(Y, Y) = P_inf([X, Y]_lam, Y)`` on ``Ker P_lam / K``.

    ``x`` holds the entries of ``X`` in the in-plane generators. Coordinates
    are ``(alpha, beta)`` of the kernel generators on each ``V_ij(lam)`` and
    the natural coordinates on each ``W_ik``.
    """
    if is_infinite(lam) or isinstance(lam, complex):
        raise BadParameters("cocycle forms are evaluated at finite real spectral points")
    blocks = degenerate_blocks(rot, lam, tol)
    if not blocks:
        raise NotInSpectrum(f"lam={lam} is not in the spectrum of the pencil")
    A = AMatrix.at(rot.lam_int, lam).diag
    mom = rot.mom
    x = np.asarray(x, dtype=float)
    b = np.array([A[2 * i] + A[2 * i + 1] for i in range(rot.m)])
    diag = []
    for kind, i, j in blocks:
        if kind == "V":
            c = -2 * A[2 * j] * (mom[i] ** 2 * b[j] - mom[j] ** 2 * b[i]) * (mom[i] * x[i] - mom[j] * x[j])
            diag += [c * A[2 * i + 1], c * A[2 * i]]
        else:
            c = -2 * mom[i] * x[i]
            diag += [c * A[2 * i], c * A[2 * i + 1]]
    return CocycleForm(lam, np.diag(diag), blocks)


def cocycle_direct(rot: StationaryRotation, lam: float, X: np.ndarray, Y: np.ndarray, Z: np.ndarray) -> float:
    """``P_inf([X, Y]_lam, Z)`` evaluated from the definitions."""
    A = AMatrix.at(rot.lam_int, lam)
    return poisson_eval(rot.M_int, rot.lam_int, math.inf, bracket_lambda(X, Y, A), Z)


def magic_x(rot: StationaryRotation, lam: float) -> np.ndarray:
    """``x_i = -m_i / b_i`` with ``b_i`` the trace of the plane's ``A`` block."""
    A = AMatrix.at(rot.lam_int, lam).diag
    return np.array([-rot.mom[i] / (A[2 * i] + A[2 * i + 1]) for i in range(rot.m)])


def compactness_certificate(rot: StationaryRotation, lam, pd_tol: float = DEFAULT_PD_TOL,
                            tol: float = 1e-8, strict: bool = False) -> CocycleCertificate:
    if is_infinite(lam):
        # the kernel at infinity is the stabiliser of M in so(n), a compact algebra
        return CocycleCertificate(lam, np.zeros(rot.m), np.zeros((0, 0)), math.inf, True, [])
    if isinstance(lam, complex):
        raise BadParameters("compactness is only defined at real spectral points")
    x = magic_x(rot, lam)
    form = cocycle_BX(rot, lam, x, tol)
    g = form.gram
    ev = np.linalg.eigvalsh(g)
    min_ev = float(ev.min())
    compact = bool(min_ev > pd_tol * max(np.abs(ev).max(), 1e-300))
    cert = CocycleCertificate(float(lam), x, g, min_ev, compact, form.labels)
    if strict and not compact:
        raise CertificateFails(f"B_X is not positive definite at lam={lam} (min eigenvalue {min_ev:.3e})", cert)
    return cert


# --------------------------------------------------------------------------
# fine pencil and strong regularity


def pencil_isomorphism_F(alpha: float, beta: float, X: np.ndarray, jdiag) -> np.ndarray:
    """Isomorphism from ``[, ]_alpha`` to ``[, ]_beta`` for parameters below ``lam_min^2``."""
    j2 = np.asarray(jdiag, dtype=float) ** 2
    da, db = j2 - alpha, j2 - beta
    if np.any(da <= 0) or np.any(db <= 0):
        raise BadParameters("both parameters must lie strictly below lam_min^2")
    d = np.sqrt(da) / np.sqrt(db)
    return X * d[:, None] * d[None, :]


def k0_abelian(rot: StationaryRotation, lam_samples, tol: float = 1e-12) -> bool:
    """``[K_0, K_0]_lam = 0`` and ``[K_0, K_1]_lam = 0`` for every sampled parameter."""
    K = common_kernel_basis(rot)
    K0, K1 = K[: rot.m], K[rot.m:]
    for lam in lam_samples:
        A = AMatrix.at(rot.lam_int, lam)
        for X in K0:
            for Y in K0 + K1:
                if np.abs(bracket_lambda(X, Y, A)).max() > tol:
                    return False
    return True


def fine_pencil_check(rot: StationaryRotation, rng=None, trials: int = 5, tol: float = 1e-10) -> bool:
    """Check the homomorphism property of ``F_{alpha beta}`` on random elements."""
    rng = np.random.default_rng(0) if rng is None else rng
    lmin2 = float(np.min(rot.body.lam)) ** 2
    alpha, beta = -0.5 * lmin2, 0.25 * lmin2
    jd = rot.lam_int
    Aa, Ab = AMatrix.at(jd, alpha), AMatrix.at(jd, beta)
    n = rot.n
    for _ in range(trials):
        X = rng.normal(size=(n, n))
        Y = rng.normal(size=(n, n))
        X, Y = X - X.T, Y - Y.T
        lhs = pencil_isomorphism_F(alpha, beta, bracket_lambda(X, Y, Aa), jd)
        rhs = bracket_lambda(pencil_isomorphism_F(alpha, beta, X, jd), pencil_isomorphism_F(alpha, beta, Y, jd), Ab)
        if np.abs(lhs - rhs).max() > tol * max(1.0, np.abs(lhs).max()):
            return False
    return True


def spectral_points(diagram: ParabolicDiagram) -> list:
    return distinct_values(diagram.Lambda, diagram.class_tol)


def real_upper_only(diagram: ParabolicDiagram, lam) -> bool:
    pts = [z for z in diagram.intersections if same_point(z.abscissa, lam, diagram.class_tol)]
    return bool(pts) and all(z.kind in (Kind.REAL_UPPER, Kind.INFINITE) for z in pts)
