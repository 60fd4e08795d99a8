import itertools
from fractions import Fraction as Q

import pytest

from threefold import (
    ValidationError,
    ci_c2,
    euler_budget,
    g_quadratic,
    torus_fixed_points,
    ueno_report,
)
from threefold.case_studies import ROTATION_I, ci_c2_series_check, _block_diag


def test_rotation_fixed_point_counts():
    # |det(A - I)| = 2 per elliptic factor, cubed on the 6-torus
    assert torus_fixed_points(ROTATION_I) == 2
    A3 = _block_diag([list(r) for r in ROTATION_I], 3)
    assert torus_fixed_points(A3) == 8
    # A^2 = -I per factor: |det(-2I)| = 4, so 64 points of period <= 2
    A2 = [[-1 if i == j else 0 for j in range(6)] for i in range(6)]
    assert torus_fixed_points(A2) == 64


def test_torus_fixed_points_degenerate():
    with pytest.raises(ValidationError):
        torus_fixed_points([[1, 1], [0, 1]])


def test_ueno_report_numbers():
    r = ueno_report()
    assert r.fixed_points == 8
    assert r.period2_points == 56
    assert r.singular_points == 36
    assert r.chi_quotient == 20
    assert r.chi_resolution == 92
    assert r.picard_resolution == 45
    assert r.identity_check is True


def test_ueno_internal_consistency():
    r = ueno_report()
    assert r.singular_points == r.fixed_points + r.period2_points // 2
    assert r.chi_resolution == 2 + 2 * r.picard_resolution


@pytest.mark.parametrize(
    "base,target,nblow",
    [((4, 1), (92, 45), 44), ((6, 2), (92, 45), 43), ((8, 3), (92, 45), 42)],
)
def test_euler_budget_forces_rational_centers(base, target, nblow):
    r = euler_budget(base, target)
    assert r.num_blowups == nblow
    assert r.genus_slack == 0
    assert r.all_centers_rational_forced
    assert r.feasible


def test_euler_budget_slack_and_infeasibility():
    r = euler_budget((4, 1), (90, 45))
    assert r.genus_slack == 2 and not r.all_centers_rational_forced and r.feasible
    r2 = euler_budget((4, 1), (94, 45))
    assert not r2.feasible and "infeasible" in r2.describe()
    with pytest.raises(ValidationError):
        euler_budget((4, 5), (4, 1))


def test_ci_c2_closed_form_examples():
    r = ci_c2(4, [1])
    assert (r.c1_coeff, r.c2_coeff, r.positive) == (4, 6, True)
    r = ci_c2(4, [2])
    assert r.c2_coeff == 10 - 0 - 10 + 4 == 4 and r.positive
    r = ci_c2(7, [2, 1, 1, 1])
    assert r.positive
    with pytest.raises(ValidationError):
        ci_c2(4, [2, 2])
    with pytest.raises(ValidationError):
        ci_c2(3, [])


def test_ci_c2_matches_series_oracle_sweep():
    for n in range(4, 8):
        for degrees in itertools.product(range(1, 5), repeat=n - 3):
            assert ci_c2_series_check(n, list(degrees)), (n, degrees)
            assert ci_c2(n, list(degrees)).positive, (n, degrees)


def test_g_quadratic_boundary_values():
    for n in range(4, 13):
        assert g_quadratic(n, n - 3) == 6
        assert g_quadratic(n, n - 1) == Q(2 * (n - 2), n - 3)
        # the quadratic's own value at x = n (recomputed exactly; the
        # printed closed form in the source text is an arithmetic slip)
        assert g_quadratic(n, n) == Q(3 * n, 2 * (n - 3))
        assert g_quadratic(n, n) > 0
        assert g_quadratic(n, n - 2) > 3


def test_g_quadratic_exact_in_rational_argument():
    assert g_quadratic(5, Q(7, 2)) == Q(15) - Q(6) * Q(7, 2) + Q(3, 4) * Q(49, 4)


def test_g_quadratic_rejects_n3():
    with pytest.raises(ValidationError):
        g_quadratic(3, 1)


def test_cauchy_schwarz_bracket_non_negative():
    # ((n-4)/(2(n-3))) (sum d)^2 - sum_{i<j} d_i d_j >= 0 over the scan
    for n in range(4, 10):
        k = n - 3
        for degrees in itertools.product(range(1, 7), repeat=k):
            s = sum(degrees)
            s2 = sum(
                d1 * d2 for i, d1 in enumerate(degrees) for d2 in degrees[i + 1 :]
            )
            bracket = Q(n - 4, 2 * (n - 3)) * s * s - s2
            assert bracket >= 0, (n, degrees)


def test_positivity_from_brackets():
    # the two-bracket split implies the closed form is positive everywhere
    for n in range(4, 10):
        k = n - 3
        for degrees in itertools.product(range(1, 7), repeat=k):
            s = sum(degrees)
            assert ci_c2(n, list(degrees)).c2_coeff == pytest.approx(
                float(
                    Q(n - 4, 2 * (n - 3)) * s * s
                    - sum(d1 * d2 for i, d1 in enumerate(degrees) for d2 in degrees[i + 1 :])
                    + g_quadratic(n, s)
                )
            )
