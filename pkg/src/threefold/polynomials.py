"""Exact integer-polynomial tools for certified spectral radii.

Polynomials are dense coefficient lists, lowest degree first, over Fraction
(integer inputs stay integral where the algorithm allows).  The pieces:

- berkowitz_charpoly: division-free characteristic polynomial.
- Sturm-chain real-root counting/isolation with exact rational endpoints.
- disk_root_count: number of distinct roots in |x| < R, via the Moebius map
  onto a half-plane and an exact Routh table.  Used to certify that no
  complex root escapes past the leading real root.
- certified_spectral_radius: spectral radius of an integer matrix as an
  exact algebraic number (minimal polynomial + isolating interval).  When
  the dominant modulus is not carried by real roots alone, the squared
  radius is recovered as the largest real root of the Kronecker-square
  characteristic polynomial, which always carries it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import sympy

QQ = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# basic polynomial arithmetic (dense, low-to-high)
# ---------------------------------------------------------------------------


def poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return list(p)


def poly_degree(p) -> int:
    p = poly_trim(p)
    return len(p) - 1 if any(c != 0 for c in p) else -1


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_scale(p, a):
    return [a * c for c in p]


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return poly_trim(out)


def poly_derivative(p):
    if len(p) <= 1:
        return [0]
    return [i * c for i, c in enumerate(p)][1:]


def poly_divmod(p, q):
    """Exact division with remainder over the rationals."""
    p = [QQ(c) for c in poly_trim(p)]
    q = [QQ(c) for c in poly_trim(q)]
    dq = poly_degree(q)
    if dq < 0:
        raise ZeroDivisionError("division by zero polynomial")
    quot = [ZERO] * max(1, len(p) - dq)
    rem = p[:]
    lead = q[-1]
    while poly_degree(rem) >= dq:
        dr = poly_degree(rem)
        f = rem[dr] / lead
        quot[dr - dq] = f
        for i in range(dq + 1):
            rem[dr - dq + i] -= f * q[i]
        rem = poly_trim(rem)
        if all(c == 0 for c in rem):
            rem = [ZERO]
            break
    return poly_trim(quot), poly_trim(rem)


def poly_gcd(p, q):
    a, b = poly_trim(p), poly_trim(q)
    while poly_degree(b) >= 0 and any(c != 0 for c in b):
        _, r = poly_divmod(a, b)
        a, b = b, r
        if all(c == 0 for c in b):
            break
    return poly_monic(a)


def poly_monic(p):
    p = poly_trim([QQ(c) for c in p])
    lead = p[-1]
    if lead == 0:
        return p
    return [c / lead for c in p]


def poly_primitive_int(p):
    """Scale a rational polynomial to primitive integer coefficients with
    positive leading coefficient."""
    from math import gcd

    p = poly_trim([QQ(c) for c in p])
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def poly_squarefree(p):
    """Squarefree part of p (same distinct roots, multiplicity one)."""
    d = poly_derivative(p)
    if poly_degree(d) < 0:
        return poly_monic(p)
    g = poly_gcd(p, d)
    if poly_degree(g) == 0:
        return poly_monic(p)
    q, r = poly_divmod(p, g)
    assert all(c == 0 for c in r)
    return poly_monic(q)


def poly_negate_variable(p):
    """p(-x)."""
    return [(-1) ** i * c for i, c in enumerate(p)]


def poly_compose_square(p):
    """Polynomial with coefficient list q such that q(x^2) = +-p(x) p(-x);
    its roots are the squares of the roots of p."""
    prod = poly_mul(p, poly_negate_variable(p))
    # product of p(x)p(-x) is even
    q = [c for i, c in enumerate(prod) if i % 2 == 0]
    assert all(c == 0 for i, c in enumerate(prod) if i % 2 == 1)
    if q[-1] < 0:
        q = [-c for c in q]
    return poly_trim(q)


def poly_to_str(p, var: str = "x") -> str:
    p = poly_trim(p)
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = f"{mag}"
        elif i == 1:
            body = f"{var}" if mag == 1 else f"{mag}*{var}"
        else:
            body = f"{var}^{i}" if mag == 1 else f"{mag}*{var}^{i}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# characteristic polynomial and exterior square
# ---------------------------------------------------------------------------


def berkowitz_charpoly(matrix) -> list[int]:
    """Characteristic polynomial det(xI - A), low-to-high, division-free.

    Integer matrices give integer coefficients; rational entries are fine too.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix not square")
    if n == 0:
        return [1]
    # Berkowitz iteration: build the coefficient vector via Toeplitz products.
    vec = [1, -matrix[0][0]]
    for k in range(1, n):
        a = matrix[k][k]
        row = matrix[k][:k]  # R: 1 x k
        col = [matrix[i][k] for i in range(k)]  # C: k x 1
        sub = [matrix[i][:k] for i in range(k)]  # principal k x k block
        # powers[j] = R . sub^j . C
        powers = []
        cur = col
        for _ in range(k):
            powers.append(sum(r * c for r, c in zip(row, cur)))
            cur = [sum(sub[i][t] * cur[t] for t in range(k)) for i in range(k)]
        # Toeplitz column: [1, -a, -powers[0], -powers[1], ...]
        toep = [1, -a] + [-p for p in powers]
        new = [0] * (k + 2)
        for i in range(k + 2):
            s = 0
            for j in range(min(i, len(vec) - 1) + 1):
                if i - j < len(toep):
                    s += toep[i - j] * vec[j]
            new[i] = s
        vec = new
    # vec holds [1, c_{n-1}, ..., c_0] in falling powers of x
    return list(reversed(vec))


def exterior_square(matrix):
    """Matrix of the induced action on 2-vectors, basis e_i ^ e_j (i < j)."""
    n = len(matrix)
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for (i, j) in pairs:
        row = []
        for (k, l) in pairs:
            row.append(matrix[i][k] * matrix[j][l] - matrix[i][l] * matrix[j][k])
        out.append(row)
    return out


def kronecker_square(matrix):
    """The Kronecker product of the matrix with itself (eigenvalues are all
    pairwise eigenvalue products, self-products included)."""
    n = len(matrix)
    out = []
    for i in range(n):
        for k in range(n):
            row = []
            for j in range(n):
                for l in range(n):
                    row.append(matrix[i][j] * matrix[k][l])
            out.append(row)
    return out


def companion_matrix(p):
    """Companion matrix of a polynomial (low-to-high), made monic first."""
    mono = poly_monic(p)
    n = poly_degree(mono)
    out = [[ZERO] * n for _ in range(n)]
    for i in range(1, n):
        out[i][i - 1] = ONE
    for i in range(n):
        out[i][n - 1] = -mono[i]
    return out


def int_matrix_det(matrix) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [[int(v) for v in row] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def matrix_adjugate_unimodular(matrix):
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    n = len(matrix)
    det = int_matrix_det(matrix)
    if det not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {det})")
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [matrix[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            row.append(((-1) ** (i + j)) * int_matrix_det(minor) * det)
        adj.append(row)
    return adj


# ---------------------------------------------------------------------------
# Sturm chains and real-root isolation
# ---------------------------------------------------------------------------
#
# Chains are cached per integer-coefficient tuple and every sign evaluation
# at a rational p/q is done homogeneously in integers
# (sign of sum_i c_i p^i q^(d-i)), so refinement never touches Fraction
# arithmetic in the inner loop.

from functools import lru_cache


@lru_cache(maxsize=4096)
def _squarefree_int_cached(p: tuple) -> tuple:
    return tuple(poly_primitive_int(poly_squarefree(list(p))))


def _primitive_same_sign(p) -> list[int]:
    """Clear denominators and divide by the content, never flipping signs
    (a sign flip would corrupt a Sturm chain)."""
    from math import gcd

    p = poly_trim([QQ(c) for c in p])
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return ints


@lru_cache(maxsize=4096)
def _sturm_chain_int(p: tuple) -> tuple:
    chain = [list(p)]
    d = poly_derivative(chain[0])
    if poly_degree(d) >= 0:
        chain.append(_primitive_same_sign(d))
    while poly_degree(chain[-1]) > 0:
        _, r = poly_divmod(chain[-2], chain[-1])
        if all(c == 0 for c in r):
            break
        chain.append(_primitive_same_sign([-c for c in r]))
    return tuple(tuple(q) for q in chain)


def _sign_at_rational(q: tuple, num: int, den: int) -> int:
    # sign of q(num/den) for den > 0: Horner on den^deg * q(num/den),
    # value = sum_i c_i num^i den^(deg-i), all in integers
    acc = 0
    power = 1
    for c in reversed(q):
        acc = acc * num + c * power
        power *= den
    if acc > 0:
        return 1
    if acc < 0:
        return -1
    return 0


def _variations_at(chain, x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    signs = []
    for q in chain:
        s = _sign_at_rational(q, num, den)
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _chain_for(p) -> tuple:
    key = tuple(poly_primitive_int(poly_trim(p)))
    return _sturm_chain_int(_squarefree_int_cached(key))


def count_real_roots(p, lo, hi) -> int:
    """Distinct real roots of p in (lo, hi]; p need not be squarefree."""
    chain = _chain_for(p)
    return _variations_at(chain, QQ(lo)) - _variations_at(chain, QQ(hi))


def cauchy_root_bound(p) -> Fraction:
    """All roots have modulus < 1 + max |c_i / lead|."""
    p = poly_trim(p)
    lead = QQ(p[-1])
    if lead == 0:
        raise ValueError("zero polynomial")
    mx = max((abs(QQ(c) / lead) for c in p[:-1]), default=ZERO)
    return 1 + mx


def isolate_real_roots(p) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (lo, hi], one per distinct real root."""
    chain = _chain_for(p)
    sf = list(chain[0])
    bound = cauchy_root_bound(sf)
    out = []

    def recurse(lo, hi, v_lo, v_hi):
        count = v_lo - v_hi
        if count == 0:
            return
        if count == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        v_mid = _variations_at(chain, mid)
        recurse(lo, mid, v_lo, v_mid)
        recurse(mid, hi, v_mid, v_hi)

    recurse(-bound, bound, _variations_at(chain, -bound), _variations_at(chain, bound))
    return out


def refine_root_interval(p, lo, hi, width) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval (lo, hi] of a root of p below `width`."""
    chain = _chain_for(p)
    lo, hi = QQ(lo), QQ(hi)
    v_lo = _variations_at(chain, lo)
    v_hi = _variations_at(chain, hi)
    if v_lo - v_hi <= 0:
        raise ValueError("interval does not isolate a root")
    while hi - lo > width:
        mid = (lo + hi) / 2
        v_mid = _variations_at(chain, mid)
        if v_lo - v_mid > 0:
            hi, v_hi = mid, v_mid
        else:
            lo, v_lo = mid, v_mid
    return lo, hi


# ---------------------------------------------------------------------------
# roots-in-disk counting (Moebius + Routh)
# ---------------------------------------------------------------------------


class BoundaryRoot(Exception):
    """A root lies (numerically) on the tested circle; retry with another radius."""


def _routh_left_halfplane_count(p) -> int:
    """Number of roots with Re < 0, all-exact; raises BoundaryRoot on a
    degenerate table (roots on the imaginary axis or symmetric pairs)."""
    p = poly_trim([QQ(c) for c in p])
    n = poly_degree(p)
    if n <= 0:
        return 0
    # rows ordered from the leading coefficient down
    coeffs = list(reversed(p))
    row1 = coeffs[0::2]
    row2 = coeffs[1::2]
    width = len(row1)
    row1 = row1 + [ZERO] * (width - len(row1))
    row2 = row2 + [ZERO] * (width - len(row2))
    table = [row1, row2]
    for _ in range(n - 1):
        prev, cur = table[-2], table[-1]
        if cur[0] == 0:
            raise BoundaryRoot
        new = []
        for j in range(width - 1):
            new.append((cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0])
        new.append(ZERO)
        table.append(new)
        if all(c == 0 for c in new) and len(table) <= n:
            raise BoundaryRoot
    firsts = [row[0] for row in table[: n + 1]]
    if any(f == 0 for f in firsts):
        raise BoundaryRoot
    # sign changes in the first column count roots with Re > 0
    changes = sum(1 for a, b in zip(firsts, firsts[1:]) if (a > 0) != (b > 0))
    return n - changes


def disk_root_count(p, radius: Fraction) -> int:
    """Distinct roots of p with |x| < radius (exact; raises BoundaryRoot if a
    root sits on the circle of that radius, caller perturbs)."""
    sf = poly_squarefree(p)
    n = poly_degree(sf)
    if n <= 0:
        return 0
    # scale: roots of g(y) = sf(radius * y) in unit disk
    g = [QQ(c) * radius**i for i, c in enumerate(sf)]
    # Moebius x = (1+w)/(1-w) maps Re w < 0 onto |x| < 1:
    # h(w) = (1-w)^n g((1+w)/(1-w))
    one_plus = [ONE, ONE]
    one_minus = [ONE, -ONE]
    h = [ZERO]
    pow_plus = [ONE]
    pow_minus = [ONE]
    plus_powers = [[ONE]]
    minus_powers = [[ONE]]
    for _ in range(n):
        plus_powers.append(poly_mul(plus_powers[-1], one_plus))
        minus_powers.append(poly_mul(minus_powers[-1], one_minus))
    for k in range(n + 1):
        if g[k] == 0:
            continue
        term = poly_scale(poly_mul(plus_powers[k], minus_powers[n - k]), g[k])
        h = poly_add(h, term)
    h = poly_trim(h)
    if poly_degree(h) < n:
        # degree drop means g(-1) = 0, i.e. a root at x = -radius
        raise BoundaryRoot
    return _routh_left_halfplane_count(h)


def disk_root_count_robust(p, radius: Fraction, direction: int = 1) -> tuple[int, Fraction]:
    """disk_root_count with automatic radius perturbation.

    Nudges the radius by shrinking steps in the given direction (+1 grows,
    -1 shrinks) until the circle is root-free.  Returns (count, radius used).
    """
    eps = QQ(1, 10**9)
    r = radius
    for _ in range(60):
        try:
            return disk_root_count(p, r), r
        except BoundaryRoot:
            r = r + direction * eps
            eps = eps / 7
    raise RuntimeError("could not find a root-free circle near the requested radius")


# ---------------------------------------------------------------------------
# algebraic numbers and certified spectral radius
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real algebraic number: integer minimal polynomial plus an isolating
    rational interval [lo, hi] containing exactly that root."""

    minpoly: tuple[int, ...]
    lo: Fraction
    hi: Fraction

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refined(self, width: Fraction) -> "AlgebraicNumber":
        if self.lo == self.hi:
            return self
        lo, hi = refine_root_interval(list(self.minpoly), self.lo, self.hi, width)
        return AlgebraicNumber(self.minpoly, lo, hi)

    def minpoly_str(self) -> str:
        return poly_to_str(list(self.minpoly))

    def is_one(self) -> bool:
        return self.lo == self.hi == 1


@lru_cache(maxsize=2048)
def _irreducible_factors_int(p: tuple) -> tuple:
    x = sympy.Symbol("x")
    expr = sum(int(c) * x**i for i, c in enumerate(p))
    _, factors = sympy.Poly(expr, x).factor_list()
    return tuple(
        tuple(int(c) for c in reversed(fac.all_coeffs())) for fac, _mult in factors
    )


def minimal_polynomial_of_root(p, lo, hi) -> list[int]:
    """Irreducible integer factor of p whose root lies in the isolating
    interval (lo, hi]; interval is refined until a unique factor matches."""
    ints = poly_primitive_int(p)
    candidates = [list(f) for f in _irreducible_factors_int(tuple(ints))]
    while True:
        matching = [
            f for f in candidates if count_real_roots(f, lo, hi) > 0
        ]
        if len(matching) == 1:
            out = poly_primitive_int(matching[0])
            return out
        if not matching:
            raise ValueError("no factor has a root in the interval")
        lo, hi = refine_root_interval(p, lo, hi, (hi - lo) / 4)


def _fraction_sqrt_bounds(x: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(x) <= hi with hi - lo <= width, for x >= 0."""
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return ZERO, ZERO
    scale = 1
    while QQ(1, scale) > width * width / 4:
        scale *= 4
    num = x.numerator * scale * scale
    den = x.denominator
    # sqrt(x) = sqrt(num/den)/scale = sqrt(num*den)/(den*scale)
    s = isqrt(num * den)
    lo = QQ(s, den * scale)
    hi = QQ(s + 1, den * scale)
    return lo, hi


DEFAULT_WIDTH = QQ(1, 10**10)


def certified_spectral_radius(matrix, width: Fraction = DEFAULT_WIDTH) -> AlgebraicNumber:
    """Spectral radius of an integer matrix as a certified algebraic number.

    Strategy: if every root of the characteristic polynomial lies in the
    closed unit disk and the matrix is invertible over Z, the radius is
    exactly 1 (all eigenvalues are then roots of unity).  Otherwise isolate
    the largest-modulus real root r and certify with two disk counts that
    the annulus just around |r| contains only real roots and nothing lies
    outside; when a complex pair dominates (or ties with a real root), the
    squared radius is recovered as the largest real root of the Kronecker-
    square characteristic polynomial and verified by the same disk counts.
    """
    p = berkowitz_charpoly(matrix)
    return _certified_radius_from_poly(p, matrix, width)


def _abs_interval(lo, hi):
    if hi <= 0:
        return -hi, -lo
    if lo >= 0:
        return lo, hi
    return ZERO, max(-lo, hi)


def _dominant_real_root(sf, width):
    """The real root of largest modulus, or None if there is no real root.

    Returns (lo, hi) isolating that root with hi - lo <= width.  Candidates
    with overlapping modulus intervals are refined until a unique champion
    emerges; the only tie that survives refinement is an exact +-r pair
    (detected through gcd(p(x), p(-x))), where either sign serves.
    """
    intervals = isolate_real_roots(sf)
    if not intervals:
        return None
    w = min(QQ(1, 10**6), width)
    for _round in range(600):
        refined = [refine_root_interval(sf, lo, hi, w) for (lo, hi) in intervals]
        abs_iv = [_abs_interval(lo, hi) for (lo, hi) in refined]
        champion = max(range(len(abs_iv)), key=lambda k: abs_iv[k][1])
        overlapping = [
            k
            for k in range(len(abs_iv))
            if k != champion and abs_iv[k][1] >= abs_iv[champion][0]
        ]
        if not overlapping:
            return refined[champion]
        if len(overlapping) == 1:
            # an exact opposite-sign twin has the same modulus; either works
            k = overlapping[0]
            same_sign = (refined[k][1] <= 0) == (refined[champion][1] <= 0)
            if not same_sign:
                even_part = poly_gcd(sf, poly_negate_variable(sf))
                lo, hi = refined[champion]
                a, b = (lo, hi) if hi > 0 else (-hi, -lo)
                if poly_degree(even_part) > 0 and count_real_roots(even_part, a, b) > 0:
                    return refined[champion]
        intervals = refined
        w = w / 2**16
    raise RuntimeError("real roots with pathologically close moduli")


def _verified_radius_interval(sf, n, lo, hi, width):
    """Disk-certify that the spectral radius lies in [lo - delta, hi + delta]:
    everything inside the outer radius, something escaping the inner one.
    Returns (r_in, r_out, inner_count) or None."""
    delta = max(width / 4, QQ(1, 10**12))
    outer, r_out = disk_root_count_robust(sf, hi + delta, direction=+1)
    if outer != n:
        return None
    if lo - delta <= 0:
        # every root has positive modulus (the constant term is non-zero)
        return ZERO, r_out, 0
    inner, r_in = disk_root_count_robust(sf, lo - delta, direction=-1)
    if inner == n:
        return None
    return r_in, r_out, inner


def _certified_radius_from_poly(p, matrix, width) -> AlgebraicNumber:
    sf = poly_squarefree(p)
    n = poly_degree(sf)
    if n <= 0:
        raise ValueError("constant polynomial has no spectral radius")
    if poly_eval(sf, 0) == 0:
        raise ValueError("singular matrix: zero eigenvalue")

    constant = abs(poly_eval([QQ(c) for c in poly_primitive_int(p)], 0))
    lead = abs(poly_primitive_int(p)[-1])
    # product of |roots| = constant/lead ; >= 1 forces radius >= 1
    if constant >= lead:
        cnt, _ = disk_root_count_robust(sf, ONE + QQ(1, 10**6), direction=+1)
        if cnt == n:
            # Kronecker: all roots in the closed unit disk with unit product,
            # so every root has modulus exactly 1
            return AlgebraicNumber((-1, 1), ONE, ONE)

    champion = _dominant_real_root(sf, width / 4)
    if champion is not None:
        lo, hi = champion
        # certify: everything inside |x| < a_hi + delta, and the annulus
        # (a_lo - delta, a_hi + delta] contains only real roots
        for _attempt in range(3):
            a_lo, a_hi = _abs_interval(lo, hi)
            ring = _verified_radius_interval(sf, n, a_lo, a_hi, hi - lo)
            if ring is not None:
                r_in, r_out, inner = ring
                annulus = n - inner
                reals_in_annulus = count_real_roots(sf, r_in, r_out) + count_real_roots(
                    sf, -r_out, -r_in
                )
                if annulus == reals_in_annulus:
                    # the dominant modulus is carried by a real root
                    if hi <= 0:
                        mp = poly_primitive_int(
                            poly_negate_variable(minimal_polynomial_of_root(sf, lo, hi))
                        )
                        return AlgebraicNumber(tuple(mp), -hi, -lo)
                    mp = minimal_polynomial_of_root(sf, lo, hi)
                    return AlgebraicNumber(tuple(mp), lo, hi)
            # a complex modulus sits too close: tighten and retry before
            # concluding complex dominance
            lo, hi = refine_root_interval(sf, lo, hi, (hi - lo) / 2**10)

    # Complex-dominant or tied moduli.  The squared radius is always the
    # largest real root of the Kronecker-square characteristic polynomial:
    # alpha_max * conj(alpha_max) is real, positive, and no eigenvalue
    # product can exceed it.  Quartic growth limits this to small matrices,
    # which is where the generic annulus certificate can be defeated.
    if n > 8:
        raise ValueError(
            "could not certify the spectral radius (tied moduli on a matrix "
            "too large for the tensor-square fallback)"
        )
    source = matrix if matrix is not None else companion_matrix(sf)
    if len(source) > 8:
        source = companion_matrix(sf)
    cp = berkowitz_charpoly(kronecker_square(source))
    cp_sf = poly_squarefree(cp)
    reals = isolate_real_roots(cp_sf)
    if not reals:
        raise ValueError("tensor square has no real eigenvalue; engine bug")
    lam_lo, lam_hi = max(reals, key=lambda iv: iv[1])
    lam_lo, lam_hi = refine_root_interval(
        cp_sf, lam_lo, lam_hi, min(width * width / 8, QQ(1, 10**12))
    )
    if lam_hi <= 0:
        raise ValueError("tensor square has no positive real eigenvalue; engine bug")
    m_lam = minimal_polynomial_of_root(cp_sf, lam_lo, lam_hi)
    s = AlgebraicNumber(tuple(m_lam), lam_lo, lam_hi)
    m2 = [0] * (2 * len(s.minpoly) - 1)
    for i, c in enumerate(s.minpoly):
        m2[2 * i] = c
    for _round in range(80):
        lo = _fraction_sqrt_bounds(s.lo, width / 2)[0]
        hi = _fraction_sqrt_bounds(s.hi, width / 2)[1]
        # the sqrt interval must isolate a unique root of m(x^2) and pass
        # the disk certificate on the original polynomial
        if count_real_roots(m2, lo, hi) == 1 and (
            _verified_radius_interval(sf, n, lo, hi, hi - lo) is not None
        ):
            mp = minimal_polynomial_of_root(m2, lo, hi)
            lo2, hi2 = refine_root_interval(mp, lo, hi, width)
            return AlgebraicNumber(tuple(mp), lo2, hi2)
        s = s.refined(s.width / 2**8)
    raise ValueError("could not certify the spectral radius (tied moduli)")
