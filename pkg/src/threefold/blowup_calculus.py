"""Blowup transforms of a ThreefoldModel at a point or along a smooth curve.

A point blowup adds an exceptional plane (divisor E, line class L); a curve
blowup adds an exceptional ruled surface (divisor F, fiber class M).  Both
extend the product and pairing tables, propagate the Chern classes, and bump
the Euler characteristic and Picard number.

Conventions for the new tables, with pi* the divisor pullback and pi^! the
curve-class pullback (pad by zero on the new exceptional curve coordinate):

  point:  pi*(a).pi*(b) = pi^!(a.b),  pi*(a).E = 0,  E.E = -L,
          pair(pi*(a), L) = 0, pair(E, pi^! c) = 0, pair(E, L) = -1,
          c1 -> pi*(c1) - 2E, c2 -> pi^!(c2), euler += 2.

  curve C of genus g, gamma = c1.C + 2g - 2:
          pi*(a).F = (a.C) M,  F.F = -pi^!(C) + gamma M,
          pair(pi*(a), M) = 0, pair(F, pi^! c) = 0, pair(F, M) = -1,
          c1 -> pi*(c1) - F, c2 -> pi^!(c2 + C) - (c1.C) M, euler += 2 - 2g.

These are the unique extensions reproducing F^3 = -gamma and the pushforward
identity of F.F onto -C, given that pullbacks pair to zero against the new
exceptional classes.  Disjointness of successive curve centers is the
caller's assertion; a center meeting an earlier exceptional divisor is
handled purely through its class (the E.C coefficient lands on M).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .intersection_ring import (
    CURVE,
    DIVISOR,
    ONE,
    ZERO,
    BasisElement,
    CurveClass,
    DivisorClass,
    ThreefoldModel,
    ValidationError,
    pair,
)

QQ = Fraction


@dataclass(frozen=True)
class SurfaceData:
    """A hypersurface through a curve center: its class, the multiplicity of
    the curve in it, and kappa = S.C (recomputed from the class when omitted)."""

    surface: DivisorClass
    mu: int
    kappa: Fraction | None = None

    def __post_init__(self):
        if self.mu < 1:
            raise ValidationError("surface multiplicity mu must be >= 1")


@dataclass(frozen=True)
class CurveCenterSpec:
    """A curve blowup center: its class in the current model, its genus, and
    optional geometric facts the lattice cannot see (asserted by the caller)."""

    curve_class: CurveClass
    genus: int
    disjoint_from: tuple[str, ...] = ()
    normal_bundle_decomposable: bool | None = None
    tau0: int | None = None
    surface_data: SurfaceData | None = None
    movable_witness: bool | None = None
    label: str = ""

    def __post_init__(self):
        if self.genus < 0:
            raise ValidationError("genus must be non-negative")
        if self.curve_class.is_zero():
            raise ValidationError("curve center class is zero")


@dataclass(frozen=True)
class BlowupStep:
    """One tower step: kind "point", or kind "curve" with a center."""

    kind: str
    center: CurveCenterSpec | None = None

    def __post_init__(self):
        if self.kind not in ("point", "curve"):
            raise ValidationError(f"bad blowup step kind {self.kind!r}")
        if self.kind == "curve" and self.center is None:
            raise ValidationError("curve step needs a center")


def point_step() -> BlowupStep:
    return BlowupStep("point")


def curve_step(center: CurveCenterSpec) -> BlowupStep:
    return BlowupStep("curve", center)


@dataclass(frozen=True)
class BlowupTower:
    """A base spec plus an ordered list of blowup steps.

    base is either a ThreefoldModel or a string accepted by make_base.
    Curve centers must be dimensioned for the model at their own step.
    """

    base: ThreefoldModel
    steps: tuple[BlowupStep, ...] = ()

    def evaluate(self) -> list[ThreefoldModel]:
        """One model per prefix: [base, after step 1, ..., after step k]."""
        models = [self.base]
        for step in self.steps:
            cur = models[-1]
            if step.kind == "point":
                models.append(blow_up_point(cur))
            else:
                models.append(blow_up_curve(cur, step.center))
        return models

    def top(self) -> ThreefoldModel:
        return self.evaluate()[-1]


# ---------------------------------------------------------------------------
# the two blowup transforms
# ---------------------------------------------------------------------------


def _fresh_name(taken: set[str], stem: str) -> str:
    k = 1
    while f"{stem}{k}" in taken:
        k += 1
    return f"{stem}{k}"


def _extend_tables(model: ThreefoldModel):
    """Pad every old mul2 entry and pairing row by one zero coordinate.

    Returns mutable lists with the new exceptional row/column left as None
    for the caller to fill.
    """
    n = len(model.divisor_basis)
    zero = ZERO
    mul2 = []
    for i in range(n):
        old_row = model.mul2[i]
        mul2.append([old_row[j] + (zero,) for j in range(n)] + [None])
    mul2.append([None] * (n + 1))
    pairing = [model.pairing[i] + (zero,) for i in range(n)]
    return mul2, pairing


def blow_up_point(model: ThreefoldModel) -> ThreefoldModel:
    """Blow up a point: basis gains E (divisor) and L (line in E)."""
    n = len(model.divisor_basis)
    step_index = _next_step_index(model)
    taken_d = set(model.divisor_names())
    taken_c = set(model.curve_names())
    e_name = _fresh_name(taken_d, "E")
    l_name = _fresh_name(taken_c, "L")

    mul2, pairing = _extend_tables(model)
    zero_curve = (ZERO,) * (n + 1)
    minus_l = tuple(ZERO for _ in range(n)) + (-ONE,)
    for i in range(n):
        mul2[i][n] = zero_curve
        mul2[n][i] = zero_curve
    mul2[n][n] = minus_l
    pairing.append(tuple(ZERO for _ in range(n)) + (-ONE,))

    c1 = DivisorClass(model.c1.coeffs + (QQ(-2),))
    c2 = CurveClass(model.c2.coeffs + (ZERO,))
    return ThreefoldModel(
        label=f"{model.label}+pt",
        divisor_basis=model.divisor_basis
        + (BasisElement(e_name, DIVISOR, "exceptional", step_index),),
        curve_basis=model.curve_basis
        + (BasisElement(l_name, CURVE, "exceptional", step_index),),
        mul2=tuple(tuple(row) for row in mul2),
        pairing=tuple(pairing),
        c1=c1,
        c2=c2,
        euler=model.euler + 2,
        picard=model.picard + 1,
        base_flags=frozenset(),
        parent=model,
        last_step="point",
    )


def gamma(model: ThreefoldModel, center: CurveCenterSpec) -> Fraction:
    """Normal-bundle degree of the center: c1 . C + 2g - 2."""
    if len(center.curve_class) != len(model.curve_basis):
        raise ValidationError("center class not dimensioned for this model")
    return pair(model, model.c1, center.curve_class) + 2 * center.genus - 2


def blow_up_curve(model: ThreefoldModel, center: CurveCenterSpec) -> ThreefoldModel:
    """Blow up a smooth curve: basis gains F (ruled divisor) and M (fiber)."""
    n = len(model.divisor_basis)
    if len(center.curve_class) != len(model.curve_basis):
        raise ValidationError("center class not dimensioned for this model")
    if center.surface_data is not None:
        sd = center.surface_data
        if len(sd.surface) != n:
            raise ValidationError("surface class not dimensioned for this model")
        kappa = pair(model, sd.surface, center.curve_class)
        if sd.kappa is not None and sd.kappa != kappa:
            raise ValidationError(
                f"surface_data kappa={sd.kappa} but S.C={kappa}"
            )
    step_index = _next_step_index(model)
    g = gamma(model, center)
    c1_dot_c = pair(model, model.c1, center.curve_class)

    taken_d = set(model.divisor_names())
    taken_c = set(model.curve_names())
    f_name = _fresh_name(taken_d, "F")
    m_name = _fresh_name(taken_c, "M")

    mul2, pairing = _extend_tables(model)
    # pi*(e_i) . F = (e_i . C) M, with e_i . C read off the pairing row
    zeros = (ZERO,) * n
    cvec = center.curve_class.coeffs
    for i in range(n):
        prow = model.pairing[i]
        coeff = sum((prow[a] * ca for a, ca in enumerate(cvec) if ca), ZERO)
        vec = zeros + (coeff,)
        mul2[i][n] = vec
        mul2[n][i] = vec
    # F.F = -pi^!(C) + gamma M
    ff = tuple(-c for c in center.curve_class.coeffs) + (g,)
    mul2[n][n] = ff
    pairing.append(tuple(ZERO for _ in range(n)) + (-ONE,))

    c1 = DivisorClass(model.c1.coeffs + (QQ(-1),))
    c2 = CurveClass(
        tuple(a + b for a, b in zip(model.c2.coeffs, center.curve_class.coeffs))
        + (-c1_dot_c,)
    )
    label = center.label or f"C{step_index}"
    return ThreefoldModel(
        label=f"{model.label}+{label}",
        divisor_basis=model.divisor_basis
        + (BasisElement(f_name, DIVISOR, "exceptional", step_index),),
        curve_basis=model.curve_basis
        + (BasisElement(m_name, CURVE, "exceptional", step_index),),
        mul2=tuple(tuple(row) for row in mul2),
        pairing=tuple(pairing),
        c1=c1,
        c2=c2,
        euler=model.euler + 2 - 2 * center.genus,
        picard=model.picard + 1,
        base_flags=frozenset(),
        parent=model,
        last_step="curve",
    )


def _next_step_index(model: ThreefoldModel) -> int:
    depth = 0
    cur = model
    while cur.parent is not None:
        depth += 1
        cur = cur.parent
    return depth + 1


# ---------------------------------------------------------------------------
# pullback / pushforward between a model and its blowup
# ---------------------------------------------------------------------------


def _check_step_pair(model_after: ThreefoldModel):
    if model_after.parent is None:
        raise ValidationError(
            f"model {model_after.label!r} is not a recorded blowup of anything"
        )
    return model_after.parent


def pullback_divisor(model_after: ThreefoldModel, d: DivisorClass) -> DivisorClass:
    """pi* of a divisor class from the parent model (inject, zero on E/F)."""
    parent = _check_step_pair(model_after)
    if len(d) != len(parent.divisor_basis):
        raise ValidationError("class not dimensioned for the parent model")
    return DivisorClass(d.coeffs + (ZERO,))


def pushforward_divisor(model_after: ThreefoldModel, d: DivisorClass) -> DivisorClass:
    """pi_* of a divisor class: drop the exceptional coordinate."""
    parent = _check_step_pair(model_after)
    if len(d) != len(model_after.divisor_basis):
        raise ValidationError("class not dimensioned for this model")
    return DivisorClass(d.coeffs[:-1])


def pullback_curve(model_after: ThreefoldModel, c: CurveClass) -> CurveClass:
    """pi^! of a curve class from the parent model (inject, zero on L/M)."""
    parent = _check_step_pair(model_after)
    if len(c) != len(parent.curve_basis):
        raise ValidationError("class not dimensioned for the parent model")
    return CurveClass(c.coeffs + (ZERO,))


def pushforward_curve(model_after: ThreefoldModel, c: CurveClass) -> CurveClass:
    """pi_* of a curve class: drop the exceptional coordinate (L and M push to 0)."""
    _check_step_pair(model_after)
    if len(c) != len(model_after.curve_basis):
        raise ValidationError("class not dimensioned for this model")
    return CurveClass(c.coeffs[:-1])


# ---------------------------------------------------------------------------
# stock centers
# ---------------------------------------------------------------------------


def line_strict_transform(
    model: "ThreefoldModel | BlowupTower",
    point_indices: tuple[int, ...] | list[int],
    degree: int = 1,
    genus: int = 0,
    label: str = "",
) -> CurveCenterSpec:
    """Strict transform of a degree-d curve through chosen blown-up points.

    Accepts the current model or a tower (whose top model is used).  The
    model must contain curve generators named "l" (the base line class) and
    "L<i>" for each index; the class is d*l - sum of the chosen L_i with
    genus as given (0 for lines and rational normal curves).
    """
    if isinstance(model, BlowupTower):
        model = model.top()
    idx = list(point_indices)
    if len(set(idx)) != len(idx):
        raise ValidationError("repeated point indices")
    if degree < 1:
        raise ValidationError("degree must be positive")
    coeffs = {"l": Fraction(degree)}
    for i in idx:
        coeffs[f"L{i}"] = Fraction(-1)
    cls = model.curve(coeffs)
    return CurveCenterSpec(
        curve_class=cls,
        genus=genus,
        label=label or f"D({','.join(str(i) for i in idx)})",
    )
