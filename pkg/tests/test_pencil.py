from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ndrigid.body import rotation
from ndrigid.catalogue import FIXTURES, fixture, random_suite
from ndrigid.diagram import Kind, build_diagram
from ndrigid.errors import BadParameters, CertificateFails, NotDegenerate, NotInSpectrum
from ndrigid.pencil import (
    AMatrix,
    V_det_factor,
    block_diag_from_entries,
    bracket_lambda,
    cocycle_BX,
    cocycle_direct,
    common_kernel_basis,
    compactness_certificate,
    degenerate_blocks,
    dH,
    dH_at,
    dH_entries,
    embed_V,
    embed_W,
    expected_kernel_dim,
    fine_pencil_check,
    from_coords,
    generic_parameter,
    hamiltonian_H,
    hamiltonian_at,
    k0_abelian,
    kernel_basis_Vij,
    kernel_basis_Wij,
    kernel_dim,
    numeric_rank,
    pencil_eigenvalues,
    pencil_isomorphism_F,
    poisson_eval,
    poisson_tensor,
    rank_and_spectrum,
    restrict_V,
    restrict_W,
    so_basis,
    to_coords,
    V_kernel_block,
)
from ndrigid.spectrum import euler_field

from conftest import ALL_FIXTURES, random_antisym


def _tensor(rot, lam):
    return poisson_tensor(rot.M_int, rot.lam_int, lam)


def test_basis_coordinates_round_trip(rng):
    X = random_antisym(rng, 5)
    np.testing.assert_array_equal(from_coords(to_coords(X), 5), X)
    assert so_basis(5).shape == (10, 5, 5)


def test_bracket_at_infinity_is_commutator(rng):
    X, Y = random_antisym(rng, 5), random_antisym(rng, 5)
    A = AMatrix.at(np.arange(1.0, 6.0), math.inf)
    np.testing.assert_allclose(bracket_lambda(X, Y, A), X @ Y - Y @ X, atol=1e-13)


def test_bracket_is_alternating(rng):
    X = random_antisym(rng, 4)
    A = AMatrix.at(np.arange(1.0, 5.0), 2.3)
    assert not bracket_lambda(X, X, A).any()


@settings(max_examples=40, deadline=None)
@given(lam=st.floats(-20, 40), seed=st.integers(0, 2 ** 31))
def test_jacobi_identity(lam, seed):
    rng = np.random.default_rng(seed)
    jd = np.sort(rng.uniform(0.5, 4, 5))
    A = AMatrix.at(jd, lam)
    X, Y, Z = (random_antisym(rng, 5) for _ in range(3))
    b = lambda U, V: bracket_lambda(U, V, A)  # noqa: E731
    jac = b(X, b(Y, Z)) + b(Y, b(Z, X)) + b(Z, b(X, Y))
    scale = max(1.0, np.abs(A.diag).max()) ** 2 * np.abs(X).max() * np.abs(Y).max() * np.abs(Z).max()
    assert np.abs(jac).max() <= 1e-12 * scale * 100


def test_tensor_is_antisymmetric_and_matches_pairing(rng):
    rot = fixture("5d-one-line")
    G = poisson_tensor(rot.M, rot.body.lam, 1.7)
    np.testing.assert_allclose(G, -G.T, atol=1e-13)
    B = so_basis(5)
    assert G[2, 7] == pytest.approx(poisson_eval(rot.M, rot.body.lam, 1.7, B[2], B[7]), abs=1e-13)
    X, Y = random_antisym(rng, 5), random_antisym(rng, 5)
    lhs = poisson_eval(rot.M, rot.body.lam, 1.7, X, Y)
    assert lhs == pytest.approx(-poisson_eval(rot.M, rot.body.lam, 1.7, Y, X))
    assert lhs == pytest.approx(to_coords(X) @ G @ to_coords(Y))


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_common_kernel_annihilates(name, rng):
    rot = FIXTURES[name].build()
    for lam in (-0.3, 2.0, math.inf):
        for X in common_kernel_basis(rot):
            for _ in range(3):
                Y = random_antisym(rng, rot.n)
                assert abs(poisson_eval(rot.M_int, rot.lam_int, lam, X, Y)) < 1e-11


def test_block_formula_on_V(rng):
    rot = rotation([0.7, 1.1, 1.6, 2.5, 3.3, 4.2], [(1, 4, 1.2), (2, 6, -0.7), (3, 5, 2.1)])
    for lam in (0.3, 5.5, 2 + 1j):
        G = restrict_V(rot, lam, 0, 2)
        for _ in range(5):
            X2, Y2 = rng.normal(size=(2, 2)), rng.normal(size=(2, 2))
            X, Y = embed_V(X2, 0, 2, 6), embed_V(Y2, 0, 2, 6)
            direct = poisson_eval(rot.M_int, rot.lam_int, lam, X, Y)
            assert direct == pytest.approx(X2.ravel() @ G @ Y2.ravel(), abs=1e-12 * max(1, abs(direct)))


def test_V_and_W_blocks_are_orthogonal(rng):
    rot = rotation([0.7, 1.1, 1.6, 2.5, 3.3], [(1, 4, 1.2), (2, 5, -0.7)])
    X = embed_V(rng.normal(size=(2, 2)), 0, 1, 5)
    Y = embed_W(rng.normal(size=2), 0, 4, 5)
    Z = embed_W(rng.normal(size=2), 1, 4, 5)
    for lam in (0.1, 3.0):
        assert abs(poisson_eval(rot.M_int, rot.lam_int, lam, X, Y)) < 1e-12
        assert abs(poisson_eval(rot.M_int, rot.lam_int, lam, Y, Z)) < 1e-12


def test_W_block_vanishes_exactly_on_the_line():
    rot = fixture("5d-one-line")
    k = rot.fixed_internal[0]
    x0 = rot.lam_int[k] ** 2
    assert not restrict_W(rot, x0, 0, k).any()
    assert abs(np.linalg.det(restrict_W(rot, x0 + 0.5, 0, k))) > 0
    assert len(kernel_basis_Wij(rot, x0, 0, k)) == 2
    with pytest.raises(NotDegenerate):
        kernel_basis_Wij(rot, x0 + 0.5, 0, k)


@pytest.mark.parametrize("name", ["4d-interlaced", "4d-nested-complex", "4d-adjacent", "4d-nested-fast"])
def test_V_determinant_vanishes_at_abscissas(name):
    rot = fixture(name)
    d = build_diagram(rot)
    for z in d.intersections:
        f = V_det_factor(rot, z.abscissa, z.plane_i, z.plane_j)
        A = AMatrix.at(rot.lam_int, z.abscissa).diag
        scale = max(rot.mom) ** 2 * np.abs(A).max() ** 2
        assert abs(f) <= 1e-12 * scale
        G = restrict_V(rot, z.abscissa, z.plane_i, z.plane_j)
        for E in kernel_basis_Vij(rot, z.abscissa, z.plane_i, z.plane_j):
            block = E[2 * z.plane_i: 2 * z.plane_i + 2, 2 * z.plane_j: 2 * z.plane_j + 2]
            assert np.abs(G @ block.ravel()).max() <= 1e-10 * np.abs(G).max() * np.abs(block).max()
    with pytest.raises(NotDegenerate):
        kernel_basis_Vij(rot, -1.234, 0, 1)
    assert numeric_rank(restrict_V(rot, -1.234, 0, 1)) == 4


def test_kernel_block_generators_independent():
    rot = fixture("4d-interlaced")
    z = build_diagram(rot).intersections[0]
    a = V_kernel_block(rot, z.abscissa, 0, 1, 1.0, 0.0).ravel()
    b = V_kernel_block(rot, z.abscissa, 0, 1, 0.0, 1.0).ravel()
    assert np.linalg.matrix_rank(np.vstack([a, b])) == 2


def test_tangent_block_kernel_is_two_dimensional():
    rot = fixture("4d-nested-tangent")
    z = build_diagram(rot).intersections[0]
    G = restrict_V(rot, z.abscissa, 0, 1)
    assert 4 - numeric_rank(G, 1e-7) == 2


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_generic_rank_and_drops(name):
    rot = FIXTURES[name].build()
    d = build_diagram(rot)
    N = rot.n * (rot.n - 1) // 2
    alpha = generic_parameter(rot, d.Lambda)
    assert kernel_dim(rot, alpha) == rot.dim_K
    assert (N - rot.dim_K) % 2 == 0
    for lam in d.spectrum_points():
        assert kernel_dim(rot, lam) == expected_kernel_dim(d, lam)


def test_kernel_at_infinity_is_stabilizer():
    rot = fixture("5d-one-line")
    L = np.array([to_coords(euler_like) for euler_like in
                  [B @ rot.M - rot.M @ B for B in so_basis(5)]]).T
    stab = 10 - np.linalg.matrix_rank(L)
    assert kernel_dim(rot, math.inf) == stab


def test_rank_report():
    rep = rank_and_spectrum(fixture("4d-interlaced"), lam_samples=(0.0,))
    assert rep.generic_rank == 4 and rep.common_kernel_dim == 2
    assert sorted(rep.spectrum_numeric) == pytest.approx(sorted(build_diagram(fixture("4d-interlaced")).Lambda))


def test_pencil_eigenvalues_have_even_multiplicity():
    vals = pencil_eigenvalues(fixture("4d-interlaced"))
    assert len(vals) == 4


def test_hamiltonian_values():
    rot = rotation([1, 2, 3], [(1, 3, 1.0)])
    assert hamiltonian_H(math.inf, rot) == pytest.approx(-4.0)
    lam = rot.body.lam
    Om = rot.Omega
    Jinv = np.diag(1 / lam)
    assert hamiltonian_H(0.0, rot) == pytest.approx(-0.5 * np.trace(Jinv @ Om @ Jinv @ rot.M))


@pytest.mark.parametrize("lam", [0.0, 2.5, -0.2, math.inf])
def test_gradient_matches_finite_differences(lam, rng):
    jd = np.array([0.8, 1.3, 2.0, 2.9])
    M = random_antisym(rng, 4)
    G = dH_at(M, jd, lam)
    h = 1e-6
    for B in so_basis(4)[:4]:
        fd = (hamiltonian_at(M + h * B, jd, lam) - hamiltonian_at(M - h * B, jd, lam)) / (2 * h)
        assert np.real(fd) == pytest.approx(np.real(np.trace(G @ B)), rel=1e-6, abs=1e-8)


def test_gradient_entries_and_rest():
    rot = fixture("5d-one-line")
    for lam in (0.0, 3.3, math.inf):
        X = dH(lam, rot)
        np.testing.assert_allclose(X[: 2 * rot.m, : 2 * rot.m], block_diag_from_entries(dH_entries(lam, rot), 2 * rot.m)
                                   .real, atol=1e-14)
    rest = rotation([1, 2, 3], [])
    assert not dH(1.0, rest).any()


@pytest.mark.parametrize("name", ["4d-interlaced", "5d-one-line", "4d-nested-fast", "3d-axis3"])
def test_gradient_in_kernel(name):
    rot = fixture(name)
    d = build_diagram(rot)
    for lam in d.spectrum_points() + [0.7]:
        if isinstance(lam, complex):
            continue
        G = _tensor(rot, lam)
        x = to_coords(dH(lam, rot))
        assert np.abs(G @ x).max() <= 1e-10 * max(1.0, np.abs(G).max() * np.abs(x).max())


def test_bihamiltonian_identity(rng):
    # P_lam(dH_lam) gives the same field for every lam: compare with the Euler field at a random point
    jd = np.array([0.8, 1.3, 2.0, 2.9, 3.4])
    M = random_antisym(rng, 5)
    B = so_basis(5)
    ref = None
    for lam in (-0.4, 0.2, math.inf):
        G = poisson_tensor(M, jd, lam)
        v = G @ to_coords(dH_at(M, jd, lam))
        ref = v if ref is None else ref
        np.testing.assert_allclose(v / np.abs(ref).max(), ref / np.abs(ref).max(), atol=1e-10)
    f = euler_field(M, jd)
    ratio = to_coords(f) @ ref / (ref @ ref)
    np.testing.assert_allclose(ratio * ref, to_coords(f), atol=1e-10 * np.abs(f).max())
    assert B.shape[0] == ref.size


def test_cocycle_block_values():
    rot = fixture("5d-one-line")
    k = rot.fixed_internal[0]
    lam = float(rot.lam_int[k] ** 2)
    x = np.array([0.37, -1.1])
    form = cocycle_BX(rot, lam, x)
    A = AMatrix.at(rot.lam_int, lam).diag
    W = [i for i, lab in enumerate(form.labels) if lab[0] == "W"]
    assert W
    assert form.gram[0, 0] == pytest.approx(-2 * rot.mom[0] * x[0] * A[0])
    assert form.gram[1, 1] == pytest.approx(-2 * rot.mom[0] * x[0] * A[1])
    assert not cocycle_BX(rot, lam, np.zeros(2)).gram.any()


@pytest.mark.parametrize("name", ["5d-one-line", "4d-interlaced", "4d-nested-fast", "4d-adjacent", "6d-codim2-gap"])
def test_cocycle_matches_definition(name, rng):
    rot = fixture(name)
    d = build_diagram(rot)
    for lam in d.spectrum_points():
        if isinstance(lam, complex) or math.isinf(lam):
            continue
        x = rng.normal(size=rot.m)
        form = cocycle_BX(rot, lam, x)
        X = block_diag_from_entries(x, rot.n)
        col = 0
        for kind, i, j in form.labels:
            gens = (kernel_basis_Vij(rot, lam, i, j) if kind == "V" else kernel_basis_Wij(rot, lam, i, j))
            for a in range(2):
                for b in range(2):
                    direct = cocycle_direct(rot, lam, X, gens[a], gens[b])
                    want = form.gram[col + a, col + b]
                    assert direct == pytest.approx(want, abs=1e-11 * max(1.0, np.abs(form.gram).max()))
            col += 2


def test_cocycle_errors():
    rot = fixture("4d-interlaced")
    with pytest.raises(BadParameters):
        cocycle_BX(rot, math.inf, [1.0, 1.0])
    with pytest.raises(NotInSpectrum):
        cocycle_BX(rot, -3.21, [1.0, 1.0])


@pytest.mark.parametrize("name", sorted(k for k, f in FIXTURES.items() if f.expected == "Stable"))
def test_certificate_passes_on_stable(name):
    rot = fixture(name)
    for lam in build_diagram(rot).spectrum_points():
        assert compactness_certificate(rot, lam, strict=True).compact


@pytest.mark.parametrize("name", ["3d-axis2", "4d-interlaced", "4d-nested-fast", "6d-codim2-gap"])
def test_certificate_fails_at_lower_points(name):
    rot = fixture(name)
    lows = [z.abscissa for z in build_diagram(rot).intersections if z.kind is Kind.REAL_LOWER]
    assert lows
    for lam in lows:
        assert not compactness_certificate(rot, lam).compact
        with pytest.raises(CertificateFails):
            compactness_certificate(rot, lam, strict=True)


def test_certificate_at_infinity():
    assert compactness_certificate(fixture("4d-interlaced"), math.inf).compact


def test_isomorphism_F(rng):
    jd = np.array([0.8, 1.3, 2.0, 2.9])
    X = random_antisym(rng, 4)
    np.testing.assert_allclose(pencil_isomorphism_F(-0.2, -0.2, X, jd), X)
    Y = random_antisym(rng, 4)
    alpha, beta = -0.3, 0.5
    lhs = pencil_isomorphism_F(alpha, beta, bracket_lambda(X, Y, AMatrix.at(jd, alpha)), jd)
    rhs = bracket_lambda(pencil_isomorphism_F(alpha, beta, X, jd), pencil_isomorphism_F(alpha, beta, Y, jd),
                         AMatrix.at(jd, beta))
    np.testing.assert_allclose(lhs, rhs, atol=1e-11)
    with pytest.raises(BadParameters):
        pencil_isomorphism_F(0.0, 1.0, X, jd)


def test_fine_pencil_and_abelian_k0():
    for rot in random_suite(5, seed=3):
        assert fine_pencil_check(rot)
        assert k0_abelian(rot, (-1.0, 0.5, math.inf))


def test_degenerate_blocks_listing():
    rot = fixture("5d-one-line")
    k = rot.fixed_internal[0]
    assert degenerate_blocks(rot, float(rot.lam_int[k] ** 2)) == [("W", 0, k), ("W", 1, k)]
