from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from ndrigid.body import rotation
from ndrigid.catalogue import FIXTURES, TANGENCY_RATIO_4D, fixture
from ndrigid.diagram import (
    TANGENCY_NOTE,
    Kind,
    Parabola,
    Status,
    VerticalLine,
    build_diagram,
    diagonalizability_check,
    intersect_line_parabola,
    intersect_parabolas,
    pair_discriminant,
    pair_quadratic,
    stability_verdict,
)
from ndrigid.errors import DegenerateCurvePair, OnAxisIntersection

from conftest import VERDICT_FIXTURES


def test_long_axis_diagram():
    d = build_diagram(rotation([1, 2, 3], [(1, 2, 1.0)]))
    assert len(d.parabolas) == 1 and len(d.lines) == 1
    P, L = d.parabolas[0], d.lines[0]
    assert (P.p, P.q) == (1.0, 4.0) and L.x0 == 9.0
    assert d.Lambda == [9.0]
    assert d.intersections[0].kind is Kind.REAL_UPPER


@pytest.mark.parametrize("omega", [1.0, 0.5, 2.0])
def test_middle_axis_diagram(omega):
    d = build_diagram(rotation([1, 2, 3], [(1, 3, omega)]))
    z = d.intersections[0]
    assert z.abscissa == 4.0
    assert z.ordinate == pytest.approx(-15 / (16 * omega ** 2), rel=1e-14)
    assert z.kind is Kind.REAL_LOWER


def test_two_dimensional_body_has_no_intersections():
    d = build_diagram(rotation([1, 2], [(1, 2, 1.0)]))
    assert d.intersections == () and d.Lambda == []


def test_line_parabola_upper():
    z = intersect_line_parabola(VerticalLine(2, 3, 9.0), Parabola(0, 1.0, 4.0, 3.0))
    assert z.ordinate == pytest.approx(40 / 9) and z.kind is Kind.REAL_UPPER


def test_line_parabola_lower():
    z = intersect_line_parabola(VerticalLine(2, 3, 4.0), Parabola(0, 1.0, 9.0, 4.0))
    assert z.ordinate == pytest.approx(-15 / 16) and z.kind is Kind.REAL_LOWER


def test_line_through_root_is_rejected():
    with pytest.raises(OnAxisIntersection):
        intersect_line_parabola(VerticalLine(2, 3, 4.0), Parabola(0, 1.0, 4.0, 2.0))


def test_coincident_parabolas_rejected():
    with pytest.raises(DegenerateCurvePair):
        intersect_parabolas(Parabola(0, 1.0, 4.0, 2.0), Parabola(1, 1.0, 4.0, 2.0))


def test_equal_momenta_give_point_at_infinity():
    d = build_diagram(rotation([1, 2, 3, 4], [(1, 2, 7.0), (3, 4, 3.0)]))
    kinds = sorted(z.kind.value for z in d.intersections)
    assert kinds == ["Infinite", "RealUpper"]
    assert any(math.isinf(x) for x in d.Lambda)


def test_fast_outer_plane_gives_complex_pair():
    d = build_diagram(fixture("4d-nested-complex"))
    zs = d.intersections
    assert [z.kind for z in zs] == [Kind.COMPLEX, Kind.COMPLEX]
    assert zs[0].abscissa == pytest.approx(zs[1].abscissa.conjugate())


def test_tangent_fixture():
    d = build_diagram(fixture("4d-nested-tangent"))
    (z,) = d.intersections
    assert z.tangent and z.multiplicity == 2 and z.kind is Kind.REAL_UPPER
    v = stability_verdict(d)
    assert v.status is Status.INCONCLUSIVE and TANGENCY_NOTE in v.warnings
    assert not diagonalizability_check(d)


def test_tangency_ratio_matches_discriminant():
    rot = rotation([1, 2, 3, 4], [(1, 4, math.sqrt(TANGENCY_RATIO_4D)), (2, 3, 1.0)])
    P = build_diagram(rot).parabolas
    c2, c1, c0 = pair_quadratic(*P)
    assert abs(c1 * c1 - 4 * c2 * c0) <= 1e-10 * c1 * c1


@pytest.mark.parametrize("name", VERDICT_FIXTURES)
def test_fixture_verdicts(name):
    f = FIXTURES[name]
    assert stability_verdict(build_diagram(f.build())).status.value == f.expected


def test_three_dimensional_recovery():
    # the classically stable axes are those of extreme moment of inertia I_k = tr J - J_k
    statuses = [stability_verdict(build_diagram(rotation([1, 2, 3], [pl]))).status
                for pl in [(1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)]]
    assert statuses == [Status.STABLE, Status.UNSTABLE, Status.STABLE]


def test_unstable_verdict_has_witnesses():
    v = stability_verdict(build_diagram(fixture("4d-interlaced")))
    assert v.witnesses and all(z.kind in (Kind.REAL_LOWER, Kind.COMPLEX) for z in v.witnesses)


def test_single_plane_is_diagonalizable():
    assert diagonalizability_check(build_diagram(rotation([1, 2, 3, 4, 5], [(2, 4, 1.0)])))


def _grid_sign_changes(P_i, P_j, points=1000):
    """Count sign changes of chi_i - chi_j on a grid wide enough to hold every real root."""
    c2, c1, c0 = pair_quadratic(P_i, P_j)
    R = 1.0 + max(abs(c1 / c2), abs(c0 / c2))
    xs = np.linspace(-R, R, points)
    f = (xs - P_i.p) * (xs - P_i.q) / P_i.m ** 2 - (xs - P_j.p) * (xs - P_j.q) / P_j.m ** 2
    return int(np.sum(np.sign(f[1:]) != np.sign(f[:-1])))


@settings(max_examples=150, deadline=None)
@given(
    roots=st.lists(st.floats(0.1, 30.0), min_size=4, max_size=4, unique=True),
    mi=st.floats(0.3, 10.0),
    mj=st.floats(0.3, 10.0),
)
def test_discriminant_sign_matches_grid_oracle(roots, mi, mj):
    P_i = Parabola(0, *sorted(roots[:2]), mi)
    P_j = Parabola(1, *sorted(roots[2:]), mj)
    assume(abs(mi - mj) > 1e-2 * max(mi, mj))
    disc = pair_discriminant(P_i, P_j)
    c2, c1, c0 = pair_quadratic(P_i, P_j)
    B, C = c1 / c2, c0 / c2
    assume(abs(disc) > 1e-2 * (B * B + 4 * abs(C)))
    R = 1.0 + max(abs(B), abs(C))
    assume(math.sqrt(max(disc, 0.0)) > 10 * 2 * R / 1000)  # grid resolves the two roots
    changes = _grid_sign_changes(P_i, P_j)
    assert (disc > 0) == (changes == 2)
    kinds = {z.kind for z in intersect_parabolas(P_i, P_j)}
    assert (disc > 0) == (Kind.COMPLEX not in kinds)


@settings(max_examples=80, deadline=None)
@given(
    eig=st.lists(st.floats(0.3, 6.0), min_size=4, max_size=7, unique=True),
    w=st.lists(st.floats(0.1, 3.0), min_size=3, max_size=3),
    data=st.data(),
)
def test_intersections_lie_on_both_curves(eig, w, data):
    eig = sorted(eig)
    assume(min(np.diff(eig)) > 1e-2)
    n = len(eig)
    perm = data.draw(st.permutations(range(1, n + 1)))
    m = data.draw(st.integers(1, n // 2))
    planes = [(perm[2 * i], perm[2 * i + 1], w[i]) for i in range(m)]
    d = build_diagram(rotation(eig, planes))
    P = d.parabolas
    # every pair contributes two points, every parabola-line pair one
    assert len(d.Lambda) == m * (m - 1) + m * (n - 2 * m)
    for z in d.intersections:
        if z.kind is Kind.INFINITE:
            continue
        yi = P[z.plane_i].chi(z.abscissa)
        assert abs(yi - z.ordinate) <= 1e-9 * max(1.0, abs(yi))
        if z.plane_j is not None:
            yj = P[z.plane_j].chi(z.abscissa)
            assert abs(yi - yj) <= 1e-7 * max(1.0, abs(yi), abs(z.abscissa) ** 2 / min(p.m for p in P) ** 2)
        if z.kind is Kind.REAL_UPPER:
            assert z.ordinate > 0
        if z.kind is Kind.REAL_LOWER:
            assert z.ordinate < 0
        if z.is_line:
            assert z.kind is not Kind.INFINITE
