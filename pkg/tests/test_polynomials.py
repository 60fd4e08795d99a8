import random
from fractions import Fraction as Q

import numpy as np
import pytest

from threefold.polynomials import (
    AlgebraicNumber,
    berkowitz_charpoly,
    cauchy_root_bound,
    certified_spectral_radius,
    count_real_roots,
    disk_root_count,
    disk_root_count_robust,
    exterior_square,
    int_matrix_det,
    isolate_real_roots,
    matrix_adjugate_unimodular,
    minimal_polynomial_of_root,
    poly_compose_square,
    poly_eval,
    poly_to_str,
    refine_root_interval,
)


def test_charpoly_known_values():
    assert berkowitz_charpoly([[0, 1], [1, 1]]) == [-1, -1, 1]
    assert berkowitz_charpoly([[1, 0], [0, 1]]) == [1, -2, 1]
    assert berkowitz_charpoly([[2]]) == [-2, 1]


def test_charpoly_matches_numpy_on_random_matrices():
    rng = random.Random(13)
    for _ in range(120):
        n = rng.randint(1, 5)
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        got = berkowitz_charpoly(m)
        want = np.poly(np.array(m, dtype=float))[::-1]
        assert len(got) == n + 1
        assert all(abs(g - w) < 1e-6 for g, w in zip(got, want))


def test_int_det_matches_numpy():
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randint(1, 5)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert int_matrix_det(m) == round(np.linalg.det(np.array(m, dtype=float)))


def test_adjugate_inverse():
    rng = random.Random(23)
    found = 0
    while found < 30:
        n = rng.randint(2, 4)
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if int_matrix_det(m) not in (1, -1):
            continue
        found += 1
        inv = matrix_adjugate_unimodular(m)
        prod = [
            [sum(m[i][t] * inv[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        assert prod == [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    with pytest.raises(ValueError):
        matrix_adjugate_unimodular([[2, 0], [0, 1]])


def test_real_root_isolation_matches_numpy():
    rng = random.Random(31)
    for _ in range(150):
        deg = rng.randint(1, 6)
        p = [rng.randint(-6, 6) for _ in range(deg)] + [rng.choice([1, -1, 2])]
        roots = np.roots(p[::-1])
        real = sorted(z.real for z in roots if abs(z.imag) < 1e-9)
        # count distinct real roots within clusters
        distinct = []
        for r in real:
            if not distinct or abs(r - distinct[-1]) > 1e-6:
                distinct.append(r)
        intervals = isolate_real_roots(p)
        assert len(intervals) == len(distinct), (p, intervals, distinct)
        for (lo, hi), r in zip(sorted(intervals), distinct):
            assert float(lo) - 1e-6 <= r <= float(hi) + 1e-6


def test_refine_interval():
    p = [-2, 0, 1]  # x^2 - 2
    lo, hi = refine_root_interval(p, Q(0), Q(2), Q(1, 10**12))
    assert hi - lo <= Q(1, 10**12)
    assert abs(float((lo + hi) / 2) - 2**0.5) < 1e-10
    with pytest.raises(ValueError):
        refine_root_interval(p, Q(3), Q(4), Q(1, 100))


def test_count_real_roots_half_open():
    p = [-1, 0, 1]  # roots at -1, 1
    assert count_real_roots(p, Q(0), Q(1)) == 1
    assert count_real_roots(p, Q(1), Q(2)) == 0
    assert count_real_roots(p, Q(-2), Q(2)) == 2


def test_disk_count_matches_numpy():
    rng = random.Random(47)
    for _ in range(120):
        deg = rng.randint(1, 5)
        p = [rng.randint(-5, 5) for _ in range(deg)] + [rng.choice([1, -1, 3])]
        if poly_eval(p, 0) == 0:
            continue
        roots = np.roots(p[::-1])
        radius = Q(rng.randint(1, 40), rng.randint(7, 13))
        mods = np.abs(roots)
        if min(abs(m - float(radius)) for m in mods) < 1e-6:
            continue  # too close to the circle for a float comparison
        want = int((mods < float(radius)).sum())
        # distinct roots only
        want_distinct = 0
        seen = []
        for z in roots:
            if any(abs(z - w) < 1e-7 for w in seen):
                continue
            seen.append(z)
            if abs(z) < float(radius):
                want_distinct += 1
        # the exact counter may refuse a degenerate Routh table at this exact
        # radius; the robust wrapper's tiny perturbation cannot cross a root
        # modulus here because the test skipped radii within 1e-6 of one
        got, _used = disk_root_count_robust(p, radius)
        assert got == want_distinct, (p, radius)


def test_disk_count_robust_perturbs_boundary():
    p = [-1, 0, 1]  # roots at +-1 exactly on the unit circle
    count, used = disk_root_count_robust(p, Q(1), direction=+1)
    assert count == 2 and used > 1


def test_exterior_square_eigenvalues():
    rng = random.Random(53)
    for _ in range(40):
        n = rng.randint(2, 4)
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        ev = np.linalg.eigvals(np.array(m, dtype=float))
        sq = exterior_square(m)
        ev2 = sorted(np.linalg.eigvals(np.array(sq, dtype=float)))
        want = sorted(
            ev[i] * ev[j] for i in range(n) for j in range(i + 1, n)
        )
        for a, b in zip(ev2, want):
            assert abs(a - b) < 1e-6


def test_compose_square_roots():
    p = [-1, -1, 1]  # roots phi, -1/phi
    q = poly_compose_square(p)
    # q has roots phi^2 and phi^-2
    phi = (1 + 5**0.5) / 2
    vals = [poly_eval(q, Q(int(round(r * 10**6)), 10**6)) for r in (phi**2, phi**-2)]
    assert all(abs(float(v)) < 1e-3 for v in vals)


def test_minimal_polynomial_selection():
    # (x^2 - 2)(x^2 - x - 1): pick the factor owning each root
    p = [2, 2, -3, -1, 1]
    mp = minimal_polynomial_of_root(p, Q(14, 10), Q(15, 10))  # sqrt2 = 1.414...
    assert mp == [-2, 0, 1]
    mp2 = minimal_polynomial_of_root(p, Q(16, 10), Q(17, 10))  # phi = 1.618...
    assert mp2 == [-1, -1, 1]


def test_spectral_radius_golden_ratio():
    a = certified_spectral_radius([[0, 1], [1, 1]])
    assert a.minpoly == (-1, -1, 1)
    assert a.width <= Q(1, 10**10)
    assert abs(float(a) - (1 + 5**0.5) / 2) < 1e-9


def test_spectral_radius_negative_dominant_root():
    # companion of x^2 + x - 1 has spectral radius phi carried by -phi
    a = certified_spectral_radius([[0, 1], [1, -1]])
    assert a.minpoly == (-1, -1, 1)
    assert abs(float(a) - (1 + 5**0.5) / 2) < 1e-9


def test_spectral_radius_roots_of_unity():
    assert certified_spectral_radius([[0, -1], [1, 0]]).is_one()
    assert certified_spectral_radius([[1, 0], [0, 1]]).is_one()
    assert float(certified_spectral_radius([[0, -1], [1, -1]])) == 1.0  # order 3


def test_spectral_radius_complex_dominant():
    # [[0,-2],[1,0]] has eigenvalues +-i sqrt 2
    a = certified_spectral_radius([[0, -2], [1, 0]])
    assert a.minpoly == (-2, 0, 1)
    assert abs(float(a) - 2**0.5) < 1e-9
    # pad with an identity block: same radius, real eigenvalue 1 present
    m4 = [[0, -2, 0, 0], [1, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    b = certified_spectral_radius(m4)
    assert b.minpoly == (-2, 0, 1)


def test_spectral_radius_tied_moduli():
    # exact ties between real roots and complex moduli must still certify
    cases = [
        ([[0, 4], [1, 0]], (-2, 1), 2.0),  # eigenvalues +-2
        ([[2, 0, 0], [0, 0, -4], [0, 1, 0]], (-2, 1), 2.0),  # 2 and +-2i
        ([[-2, 0, 0], [0, 0, -4], [0, 1, 0]], (-2, 1), 2.0),  # -2 and +-2i
        ([[0, -1, 0], [1, 0, 0], [0, 0, 2]], (-2, 1), 2.0),  # rotation + 2
        (
            [[0, -2, 0, 0], [1, 0, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]],
            (-2, 1),
            2.0,
        ),  # real 2 dominating a +-i sqrt2 pair and a fixed direction
    ]
    for m, minpoly, value in cases:
        r = certified_spectral_radius(m)
        assert r.minpoly == minpoly, m
        assert abs(float(r) - value) < 1e-9, m


def test_spectral_radius_matches_numpy_random():
    rng = random.Random(61)
    for _ in range(150):
        n = rng.randint(2, 4)
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if int_matrix_det(m) == 0:
            continue
        got = certified_spectral_radius(m)
        want = max(abs(np.linalg.eigvals(np.array(m, dtype=float))))
        # the float oracle itself is only good to ~eps^(1/multiplicity) for
        # defective eigenvalues, so compare loosely; the exact side is tight
        assert abs(float(got) - want) < 1e-4


def test_cauchy_bound_contains_all_roots():
    rng = random.Random(67)
    for _ in range(60):
        deg = rng.randint(1, 5)
        p = [rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([1, 2, -3])]
        bound = float(cauchy_root_bound(p))
        roots = np.roots(p[::-1])
        assert all(abs(z) < bound + 1e-9 for z in roots)


def test_poly_to_str():
    assert poly_to_str([-1, -1, 1]) == "x^2 - x - 1"
    assert poly_to_str([2, 0, 0, 5]) == "5*x^3 + 2"
    assert poly_to_str([0]) == "0"
    assert poly_to_str([-1, 1]) == "x - 1"


def test_algebraic_number_refined():
    a = AlgebraicNumber((-2, 0, 1), Q(1), Q(2))
    b = a.refined(Q(1, 10**6))
    assert b.width <= Q(1, 10**6)
    assert b.lo >= a.lo and b.hi <= a.hi
