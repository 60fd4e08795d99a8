"""Exact intersection calculus for the rational divisor/curve lattices of a threefold.

A ThreefoldModel stores the numerical shadow of a smooth projective threefold:
a divisor basis, a curve basis, the divisor*divisor multiplication table (with
values in the curve lattice), the divisor/curve pairing, the first and second
Chern classes, the topological Euler characteristic and the Picard number.

All scalars are exact rationals.  Floating point never enters this module;
the dynamics code converts on its own side when it needs numerics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

QQ = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

DIVISOR = "divisor"
CURVE = "curve"

# base_flags understood by the condition checkers
FLAG_PICARD_RANK_1 = "picard-rank-1"
FLAG_C2_MOVABLE_POSITIVE = "c2-movable-positive"
FLAG_CONDITION_A = "condition-A-asserted"
FLAG_CONDITION_B = "condition-B-asserted"


class ValidationError(ValueError):
    """A model or class violates a structural invariant."""


def _to_q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ValidationError(f"not an exact rational: {x!r}")


def _tuple_q(coeffs: Iterable) -> tuple[Fraction, ...]:
    return tuple(_to_q(c) for c in coeffs)


@dataclass(frozen=True)
class BasisElement:
    """One named generator of the divisor or curve lattice.

    origin is "base" for generators of the base model and
    "exceptional(step=k)" for classes created by the k-th blowup
    (1-indexed).  Generators keep their identity under later blowups;
    an element whose step predates the model's last step is implicitly
    the pullback of the same-named element downstairs.
    """

    name: str
    kind: str  # DIVISOR or CURVE
    origin: str = "base"
    step: int | None = None

    def __post_init__(self):
        if self.kind not in (DIVISOR, CURVE):
            raise ValidationError(f"bad basis kind {self.kind!r}")


@dataclass(frozen=True)
class DivisorClass:
    """A rational divisor class, as coefficients over a model's divisor basis."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _tuple_q(self.coeffs))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _same_len(self, other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _same_len(self, other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coeffs))

    def scale(self, a) -> "DivisorClass":
        a = _to_q(a)
        return DivisorClass(tuple(a * c for c in self.coeffs))

    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class CurveClass:
    """A rational curve class, as coefficients over a model's curve basis."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _tuple_q(self.coeffs))

    def __add__(self, other: "CurveClass") -> "CurveClass":
        _same_len(self, other)
        return CurveClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CurveClass") -> "CurveClass":
        _same_len(self, other)
        return CurveClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CurveClass":
        return CurveClass(tuple(-a for a in self.coeffs))

    def scale(self, a) -> "CurveClass":
        a = _to_q(a)
        return CurveClass(tuple(a * c for c in self.coeffs))

    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)


def _same_len(a, b):
    if len(a.coeffs) != len(b.coeffs):
        raise ValidationError(
            f"dimension mismatch: {len(a.coeffs)} vs {len(b.coeffs)}"
        )


@dataclass(frozen=True)
class ThreefoldModel:
    """Immutable intersection-theoretic state of a threefold.

    mul2[i][j] is the curve class of the product of divisor generators i and j,
    stored as a raw coefficient tuple.  pairing[i][a] is the intersection
    number of divisor generator i with curve generator a.  Blowups return new
    models; `parent` and `last_step` record the provenance used by the
    pushforward/pullback maps and are ignored by equality.
    """

    label: str
    divisor_basis: tuple[BasisElement, ...]
    curve_basis: tuple[BasisElement, ...]
    mul2: tuple[tuple[tuple[Fraction, ...], ...], ...]
    pairing: tuple[tuple[Fraction, ...], ...]
    c1: DivisorClass
    c2: CurveClass
    euler: int
    picard: int
    base_flags: frozenset[str] = frozenset()
    parent: "ThreefoldModel | None" = field(default=None, compare=False, repr=False)
    last_step: str | None = field(default=None, compare=False)

    # -- lookups ---------------------------------------------------------

    def divisor_index(self, name: str) -> int:
        for i, e in enumerate(self.divisor_basis):
            if e.name == name:
                return i
        raise ValidationError(f"no divisor generator named {name!r} in {self.label}")

    def curve_index(self, name: str) -> int:
        for a, e in enumerate(self.curve_basis):
            if e.name == name:
                return a
        raise ValidationError(f"no curve generator named {name!r} in {self.label}")

    def divisor(self, coeffs: Mapping[str, object] | Sequence) -> DivisorClass:
        """Build a divisor class from a name->coefficient mapping or a full vector."""
        if isinstance(coeffs, Mapping):
            vec = [ZERO] * len(self.divisor_basis)
            for name, c in coeffs.items():
                vec[self.divisor_index(name)] = _to_q(c)
            return DivisorClass(tuple(vec))
        vec = _tuple_q(coeffs)
        if len(vec) != len(self.divisor_basis):
            raise ValidationError("divisor vector has wrong length")
        return DivisorClass(vec)

    def curve(self, coeffs: Mapping[str, object] | Sequence) -> CurveClass:
        """Build a curve class from a name->coefficient mapping or a full vector."""
        if isinstance(coeffs, Mapping):
            vec = [ZERO] * len(self.curve_basis)
            for name, c in coeffs.items():
                vec[self.curve_index(name)] = _to_q(c)
            return CurveClass(tuple(vec))
        vec = _tuple_q(coeffs)
        if len(vec) != len(self.curve_basis):
            raise ValidationError("curve vector has wrong length")
        return CurveClass(vec)

    def zero_divisor(self) -> DivisorClass:
        return DivisorClass((ZERO,) * len(self.divisor_basis))

    def zero_curve(self) -> CurveClass:
        return CurveClass((ZERO,) * len(self.curve_basis))

    def divisor_names(self) -> list[str]:
        return [e.name for e in self.divisor_basis]

    def curve_names(self) -> list[str]:
        return [e.name for e in self.curve_basis]


# ---------------------------------------------------------------------------
# products and pairings
# ---------------------------------------------------------------------------


def multiply_divisors(model: ThreefoldModel, d1: DivisorClass, d2: DivisorClass) -> CurveClass:
    """Bilinear extension of the divisor product table; returns a curve class."""
    n = len(model.divisor_basis)
    if len(d1) != n or len(d2) != n:
        raise ValidationError("divisor class not dimensioned for this model")
    m = len(model.curve_basis)
    acc = [ZERO] * m
    mul2 = model.mul2
    for i, ci in enumerate(d1.coeffs):
        if ci == 0:
            continue
        row_i = mul2[i]
        for j, cj in enumerate(d2.coeffs):
            if cj == 0:
                continue
            f = ci * cj
            row = row_i[j]
            for k, v in enumerate(row):
                if v:
                    acc[k] += f * v
    return CurveClass(tuple(acc))


def pair(model: ThreefoldModel, d: DivisorClass, c: CurveClass) -> Fraction:
    """Intersection number of a divisor class with a curve class."""
    if len(d) != len(model.divisor_basis) or len(c) != len(model.curve_basis):
        raise ValidationError("class not dimensioned for this model")
    total = ZERO
    pairing = model.pairing
    for i, ci in enumerate(d.coeffs):
        if ci == 0:
            continue
        row = pairing[i]
        for a, ca in enumerate(c.coeffs):
            if ca:
                total += ci * ca * row[a]
    return total


def triple(model: ThreefoldModel, d1: DivisorClass, d2: DivisorClass, d3: DivisorClass) -> Fraction:
    """Triple product of divisor classes, derived as pair(d1*d2, d3)."""
    return pair(model, d3, multiply_divisors(model, d1, d2))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def pairing_determinant(model: ThreefoldModel) -> Fraction:
    """Determinant of the divisor/curve pairing matrix (exact)."""
    n = len(model.divisor_basis)
    rows = [list(r) for r in model.pairing]
    det = ONE
    for col in range(n):
        piv = None
        for r in range(col, n):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            return ZERO
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = ONE / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col] == 0:
                continue
            f = rows[r][col] * inv
            for c in range(col, n):
                rows[r][c] -= f * rows[col][c]
    return det


def validate_model(model: ThreefoldModel) -> None:
    """Raise ValidationError naming the first violated model invariant."""
    nd = len(model.divisor_basis)
    nc = len(model.curve_basis)
    if nd != nc:
        raise ValidationError(f"divisor basis size {nd} != curve basis size {nc}")
    if model.picard != nd:
        raise ValidationError(f"picard={model.picard} but divisor basis has size {nd}")
    names_d = [e.name for e in model.divisor_basis]
    names_c = [e.name for e in model.curve_basis]
    if len(set(names_d)) != nd:
        raise ValidationError("duplicate divisor generator names")
    if len(set(names_c)) != nc:
        raise ValidationError("duplicate curve generator names")
    if len(model.mul2) != nd or any(len(r) != nd for r in model.mul2):
        raise ValidationError("mul2 table is not square of basis size")
    for i in range(nd):
        for j in range(nd):
            if len(model.mul2[i][j]) != nc:
                raise ValidationError(f"mul2[{i}][{j}] has wrong curve dimension")
            if model.mul2[i][j] != model.mul2[j][i]:
                raise ValidationError(
                    f"mul2 not symmetric at ({names_d[i]}, {names_d[j]})"
                )
    if len(model.pairing) != nd or any(len(r) != nc for r in model.pairing):
        raise ValidationError("pairing table has wrong shape")
    if len(model.c1) != nd:
        raise ValidationError("c1 has wrong dimension")
    if len(model.c2) != nc:
        raise ValidationError("c2 has wrong dimension")
    # full symmetry of the derived triple product on basis triples
    basis = [model.divisor([ONE if k == i else ZERO for k in range(nd)]) for i in range(nd)]
    for i in range(nd):
        for j in range(i, nd):
            prod = multiply_divisors(model, basis[i], basis[j])
            for k in range(j, nd):
                tijk = pair(model, basis[k], prod)
                tik = pair(model, basis[j], multiply_divisors(model, basis[i], basis[k]))
                if tijk != tik:
                    raise ValidationError(
                        "triple product not symmetric on "
                        f"({names_d[i]}, {names_d[j]}, {names_d[k]})"
                    )
    if pairing_determinant(model) == 0:
        raise ValidationError("pairing matrix is singular")


# ---------------------------------------------------------------------------
# base models
# ---------------------------------------------------------------------------


def _series_mul(a: list[Fraction], b: list[Fraction], order: int = 4) -> list[Fraction]:
    out = [ZERO] * order
    for i, ai in enumerate(a):
        if ai == 0 or i >= order:
            continue
        for j, bj in enumerate(b):
            if i + j < order and bj:
                out[i + j] += ai * bj
    return out


def _series_inv(a: list[Fraction], order: int = 4) -> list[Fraction]:
    # invert a power series with unit constant term, truncated
    assert a[0] == 1
    out = [ONE] + [ZERO] * (order - 1)
    for k in range(1, order):
        s = ZERO
        for i in range(1, k + 1):
            if i < len(a):
                s += a[i] * out[k - i]
        out[k] = -s
    return out


def chern_series_ci(n: int, degrees: Sequence[int]) -> list[Fraction]:
    """Truncated total Chern series of a complete intersection threefold in P^n.

    Returns [1, c1, c2, c3] coefficients in powers of the hyperplane class,
    from (1+h)^(n+1) / prod_j (1 + d_j h) mod h^4.
    """
    num = [ONE, ZERO, ZERO, ZERO]
    step = [ONE, ONE, ZERO, ZERO]  # (1 + h)
    for _ in range(n + 1):
        num = _series_mul(num, step)
    den = [ONE, ZERO, ZERO, ZERO]
    for d in degrees:
        den = _series_mul(den, [ONE, Fraction(d), ZERO, ZERO])
    return _series_mul(num, _series_inv(den))


def _model_p3() -> ThreefoldModel:
    h = BasisElement("h", DIVISOR)
    l = BasisElement("l", CURVE)
    return ThreefoldModel(
        label="P3",
        divisor_basis=(h,),
        curve_basis=(l,),
        mul2=(((ONE,),),),
        pairing=((ONE,),),
        c1=DivisorClass((QQ(4),)),
        c2=CurveClass((QQ(6),)),
        euler=4,
        picard=1,
        base_flags=frozenset({FLAG_PICARD_RANK_1, FLAG_C2_MOVABLE_POSITIVE}),
    )


def _model_p2xp1() -> ThreefoldModel:
    # A = P2 x {pt}, B = P1 x P1 ; f1 = P1 x {pt}, f2 = {pt} x P1
    A = BasisElement("A", DIVISOR)
    B = BasisElement("B", DIVISOR)
    f1 = BasisElement("f1", CURVE)
    f2 = BasisElement("f2", CURVE)
    z = (ZERO, ZERO)
    return ThreefoldModel(
        label="P2xP1",
        divisor_basis=(A, B),
        curve_basis=(f1, f2),
        mul2=(
            (z, (ONE, ZERO)),
            ((ONE, ZERO), (ZERO, ONE)),
        ),
        pairing=(
            (ZERO, ONE),
            (ONE, ZERO),
        ),
        c1=DivisorClass((QQ(2), QQ(3))),
        c2=CurveClass((QQ(6), QQ(3))),
        euler=6,
        picard=2,
        base_flags=frozenset({FLAG_C2_MOVABLE_POSITIVE}),
    )


def _model_p1cubed() -> ThreefoldModel:
    # H_i = preimage of a point on the i-th factor, l_i = fiber of the i-th projection
    divisors = tuple(BasisElement(f"H{i}", DIVISOR) for i in (1, 2, 3))
    curves = tuple(BasisElement(f"l{i}", CURVE) for i in (1, 2, 3))

    def curve_vec(k: int | None) -> tuple[Fraction, ...]:
        return tuple(ONE if k == a else ZERO for a in range(3))

    mul2 = []
    for i in range(3):
        row = []
        for j in range(3):
            if i == j:
                row.append(curve_vec(None))
            else:
                k = 3 - i - j  # complementary index
                row.append(curve_vec(k))
        mul2.append(tuple(row))
    pairing = tuple(tuple(ONE if i == a else ZERO for a in range(3)) for i in range(3))
    return ThreefoldModel(
        label="P1xP1xP1",
        divisor_basis=divisors,
        curve_basis=curves,
        mul2=tuple(mul2),
        pairing=pairing,
        c1=DivisorClass((QQ(2), QQ(2), QQ(2))),
        c2=CurveClass((QQ(4), QQ(4), QQ(4))),
        euler=8,
        picard=3,
        base_flags=frozenset({FLAG_C2_MOVABLE_POSITIVE}),
    )


def _model_ci(n: int, degrees: Sequence[int]) -> ThreefoldModel:
    if n < 4:
        raise ValidationError("complete intersection needs ambient dimension n >= 4")
    if len(degrees) != n - 3:
        raise ValidationError(
            f"complete intersection in P^{n} needs exactly {n - 3} degrees, got {len(degrees)}"
        )
    if any((not isinstance(d, int)) or d < 1 for d in degrees):
        raise ValidationError("hypersurface degrees must be positive integers")
    series = chern_series_ci(n, degrees)
    deg_x = 1
    for d in degrees:
        deg_x *= d
    c1 = series[1]
    c2 = series[2]
    chi = series[3] * deg_x
    if chi.denominator != 1:
        raise ValidationError("non-integral Euler characteristic in Chern expansion")
    h = BasisElement("h", DIVISOR)
    h2 = BasisElement("h2", CURVE)
    label = f"CI(P{n};{','.join(str(d) for d in degrees)})"
    return ThreefoldModel(
        label=label,
        divisor_basis=(h,),
        curve_basis=(h2,),
        mul2=(((ONE,),),),
        pairing=((Fraction(deg_x),),),
        c1=DivisorClass((c1,)),
        c2=CurveClass((c2,)),
        euler=int(chi),
        picard=1,
        base_flags=frozenset({FLAG_PICARD_RANK_1, FLAG_C2_MOVABLE_POSITIVE}),
    )


def make_custom_base(
    label: str,
    divisor_names: Sequence[str],
    curve_names: Sequence[str],
    mul2: Mapping[tuple[str, str], Mapping[str, object] | CurveClass],
    pairing: Mapping[tuple[str, str], object],
    c1: Mapping[str, object] | DivisorClass,
    c2: Mapping[str, object] | CurveClass,
    euler: int,
    flags: Iterable[str] = (),
) -> ThreefoldModel:
    """Assemble a user-supplied base model and validate every invariant.

    mul2 is keyed by unordered divisor-name pairs; missing pairs default to
    zero.  pairing is keyed by (divisor name, curve name); missing entries
    default to zero.  Hypothesis flags are taken on the caller's word: the
    condition checkers refuse theorems whose flags are not asserted here.
    """
    nd = len(divisor_names)
    nc = len(curve_names)
    d_index = {n_: i for i, n_ in enumerate(divisor_names)}
    c_index = {n_: a for a, n_ in enumerate(curve_names)}
    if len(d_index) != nd or len(c_index) != nc:
        raise ValidationError("duplicate generator names")

    def curve_of(v) -> tuple[Fraction, ...]:
        if isinstance(v, CurveClass):
            if len(v) != nc:
                raise ValidationError("curve class has wrong length")
            return v.coeffs
        vec = [ZERO] * nc
        for name, coeff in v.items():
            if name not in c_index:
                raise ValidationError(f"unknown curve generator {name!r}")
            vec[c_index[name]] = _to_q(coeff)
        return tuple(vec)

    table = [[None] * nd for _ in range(nd)]
    for (a, b), v in mul2.items():
        if a not in d_index or b not in d_index:
            raise ValidationError(f"unknown divisor generator in mul2 key ({a}, {b})")
        i, j = d_index[a], d_index[b]
        vec = curve_of(v)
        for (r, c) in ((i, j), (j, i)):
            if table[r][c] is not None and table[r][c] != vec:
                raise ValidationError(f"conflicting mul2 entries for ({a}, {b})")
            table[r][c] = vec
    zero_c = (ZERO,) * nc
    mul2_t = tuple(tuple(table[i][j] if table[i][j] is not None else zero_c for j in range(nd)) for i in range(nd))

    ptable = [[ZERO] * nc for _ in range(nd)]
    for (a, b), v in pairing.items():
        if a not in d_index or b not in c_index:
            raise ValidationError(f"unknown generator in pairing key ({a}, {b})")
        ptable[d_index[a]][c_index[b]] = _to_q(v)

    divisor_basis = tuple(BasisElement(n_, DIVISOR) for n_ in divisor_names)
    curve_basis = tuple(BasisElement(n_, CURVE) for n_ in curve_names)

    c1_vec = c1 if isinstance(c1, DivisorClass) else None
    c2_vec = c2 if isinstance(c2, CurveClass) else None

    model = ThreefoldModel(
        label=label,
        divisor_basis=divisor_basis,
        curve_basis=curve_basis,
        mul2=mul2_t,
        pairing=tuple(tuple(r) for r in ptable),
        c1=c1_vec if c1_vec is not None else DivisorClass(tuple(ZERO for _ in range(nd))),
        c2=c2_vec if c2_vec is not None else CurveClass(tuple(ZERO for _ in range(nc))),
        euler=euler,
        picard=nd,
        base_flags=frozenset(flags),
    )
    if c1_vec is None:
        model = _replace_chern(model, model.divisor(c1), None)
    if c2_vec is None:
        model = _replace_chern(model, None, model.curve(c2))
    validate_model(model)
    return model


def _replace_chern(model: ThreefoldModel, c1: DivisorClass | None, c2: CurveClass | None) -> ThreefoldModel:
    from dataclasses import replace

    kwargs = {}
    if c1 is not None:
        kwargs["c1"] = c1
    if c2 is not None:
        kwargs["c2"] = c2
    return replace(model, **kwargs)


def make_base(spec: str, *, n: int | None = None, degrees: Sequence[int] | None = None, **custom) -> ThreefoldModel:
    """Construct one of the stock base models.

    spec is one of "p3", "p2xp1", "p1cubed", "complete_intersection" (with n
    and degrees), or "custom" (with the make_custom_base keyword arguments).
    """
    key = spec.lower()
    if key == "p3":
        return _model_p3()
    if key in ("p2xp1", "p2p1"):
        return _model_p2xp1()
    if key in ("p1cubed", "p1xp1xp1"):
        return _model_p1cubed()
    if key in ("complete_intersection", "ci"):
        if n is None or degrees is None:
            raise ValidationError("complete_intersection needs n and degrees")
        return _model_ci(n, list(degrees))
    if key == "custom":
        return make_custom_base(**custom)
    raise ValidationError(f"unknown base spec {spec!r}")
