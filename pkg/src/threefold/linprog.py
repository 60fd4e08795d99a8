"""Exact rational linear programming with Farkas certificates.

Systems are lists of affine forms over named variables, split into
equalities (form = 0) and inequalities (form >= 0), with all coefficients
exact rationals.  rational_feasible maximizes one chosen variable by a
two-phase dense simplex with Bland's rule, so runs are deterministic and
never cycle.  When the maximum is attained, the dual solution is returned
as a certificate: multipliers y_i >= 0 for the inequalities and free z_j
for the equalities with

    sum_i y_i * f_i + sum_j z_j * g_j  ==  (max) - objective

as affine forms, which proves objective <= max over the feasible set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

QQ = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class LinProgError(ValueError):
    """Malformed constraint system."""


@dataclass(frozen=True)
class LinearForm:
    """An affine form sum_i coeffs[i] * x_i + constant over a variable list."""

    coeffs: tuple[Fraction, ...]
    constant: Fraction = ZERO
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(QQ(c) for c in self.coeffs))
        object.__setattr__(self, "constant", QQ(self.constant))

    def evaluate(self, point: tuple[Fraction, ...]) -> Fraction:
        if len(point) != len(self.coeffs):
            raise LinProgError("point has wrong dimension")
        return sum((c * x for c, x in zip(self.coeffs, point)), self.constant)

    def render(self, variables: list[str]) -> str:
        parts = []
        for c, v in zip(self.coeffs, variables):
            if c == 0:
                continue
            if c == 1:
                parts.append(f"+ {v}")
            elif c == -1:
                parts.append(f"- {v}")
            elif c > 0:
                parts.append(f"+ {c} {v}")
            else:
                parts.append(f"- {-c} {v}")
        if self.constant != 0 or not parts:
            parts.append(f"+ {self.constant}" if self.constant >= 0 else f"- {-self.constant}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text


@dataclass(frozen=True)
class ConstraintSystem:
    """Named variables with equality (= 0) and inequality (>= 0) affine forms."""

    variables: tuple[str, ...]
    equalities: tuple[LinearForm, ...] = ()
    inequalities: tuple[LinearForm, ...] = ()

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise LinProgError("duplicate variable names")
        n = len(self.variables)
        for f in list(self.equalities) + list(self.inequalities):
            if len(f.coeffs) != n:
                raise LinProgError(
                    f"form {f.label or f.coeffs} not dimensioned to {n} variables"
                )

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise LinProgError(f"unknown variable {name!r}") from None


@dataclass(frozen=True)
class CertificateEntry:
    kind: str  # "eq" or "ineq"
    index: int
    label: str
    multiplier: Fraction


@dataclass(frozen=True)
class FeasibleResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    maximum: Fraction | None = None
    argmax: tuple[Fraction, ...] | None = None
    certificate: tuple[CertificateEntry, ...] = ()


def _simplex(tableau, basis, m, width, cols):
    """Run simplex to optimality on a maximization tableau.

    tableau has m constraint rows plus an objective row (reduced costs kept
    as negated coefficients so that a negative entry means 'can improve').
    Entering column by most-negative reduced cost with lowest-index ties;
    after a long degenerate streak we switch to Bland's rule, which cannot
    cycle, so the run is deterministic and finite.  Returns False if
    unbounded.
    """
    degenerate_streak = 0
    bland = False
    while True:
        obj = tableau[m]
        pivot_col = -1
        if bland:
            for j in cols:
                if obj[j] < 0:
                    pivot_col = j
                    break
        else:
            best_cost = ZERO
            for j in cols:
                v = obj[j]
                if v < best_cost:
                    best_cost = v
                    pivot_col = j
        if pivot_col < 0:
            return True
        pivot_row = -1
        best = None
        for i in range(m):
            a = tableau[i][pivot_col]
            if a > 0:
                ratio = tableau[i][width] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[pivot_row]
                ):
                    best = ratio
                    pivot_row = i
        if pivot_row < 0:
            return False
        if best == 0:
            degenerate_streak += 1
            if degenerate_streak > 200:
                bland = True
        else:
            degenerate_streak = 0
        _pivot(tableau, basis, pivot_row, pivot_col, m, width)


def _pivot(tableau, basis, pivot_row, pivot_col, m, width):
    row = tableau[pivot_row]
    inv = ONE / row[pivot_col]
    if inv != 1:
        tableau[pivot_row] = row = [v * inv for v in row]
    for i in range(m + 1):
        if i == pivot_row:
            continue
        f = tableau[i][pivot_col]
        if f == 0:
            continue
        tableau[i] = [v if not w else v - f * w for v, w in zip(tableau[i], row)]
    basis[pivot_row] = pivot_col


def rational_feasible(system: ConstraintSystem, objective: str) -> FeasibleResult:
    """Maximize one variable over the polyhedron; exact, with dual certificate.

    The result distinguishes an empty polyhedron ("infeasible") from a
    bounded maximum, and reports "unbounded" when the objective is not
    bounded above.  Pivoting ties break deterministically on a fixed column
    order, so certificates are reproducible.

    Presolve: an inequality of the shape c*x >= 0 with c > 0 is absorbed as
    a non-negativity bound on x (one tableau column, no row); its Farkas
    multiplier is recovered from the reduced cost of that column.  Variables
    without such a bound are split into positive and negative parts.
    """
    n = len(system.variables)
    obj_idx = system.var_index(objective)
    ineqs = list(system.inequalities)
    eqs = list(system.equalities)

    # sign-row presolve
    bound_row_of_var: dict[int, int] = {}
    bound_coeff: dict[int, Fraction] = {}
    for idx, f in enumerate(ineqs):
        if f.constant != 0:
            continue
        nz = [(j, c) for j, c in enumerate(f.coeffs) if c != 0]
        if len(nz) == 1 and nz[0][1] > 0 and nz[0][0] not in bound_row_of_var:
            bound_row_of_var[nz[0][0]] = idx
            bound_coeff[nz[0][0]] = nz[0][1]
    bound_rows = set(bound_row_of_var.values())
    row_ineqs = [i for i in range(len(ineqs)) if i not in bound_rows]

    # column layout: one column per bounded variable, two per free variable
    pos_col: list[int] = [0] * n
    neg_col: list[int | None] = [None] * n
    col = 0
    for j in range(n):
        pos_col[j] = col
        col += 1
        if j not in bound_row_of_var:
            neg_col[j] = col
            col += 1
    nvar = col

    # rows: inequalities f >= 0 as (-f).x + s = f.constant, then equalities
    # g = 0 as g.x = -g.constant
    m = len(row_ineqs) + len(eqs)
    n_slack = len(row_ineqs)
    slack_of_row = {}
    for pos, _i in enumerate(row_ineqs):
        slack_of_row[pos] = nvar + pos

    tab_rows = []
    for pos, i in enumerate(row_ineqs):
        f = ineqs[i]
        r = [ZERO] * (nvar + n_slack)
        for j, c in enumerate(f.coeffs):
            if c == 0:
                continue
            r[pos_col[j]] = -c
            if neg_col[j] is not None:
                r[neg_col[j]] = c
        r[slack_of_row[pos]] = ONE
        b = f.constant
        flipped = b < 0
        if flipped:
            r = [-v for v in r]
            b = -b
        tab_rows.append((r, b, flipped))
    for g in eqs:
        r = [ZERO] * (nvar + n_slack)
        for j, c in enumerate(g.coeffs):
            if c == 0:
                continue
            r[pos_col[j]] = c
            if neg_col[j] is not None:
                r[neg_col[j]] = -c
        b = -g.constant
        flipped = b < 0
        if flipped:
            r = [-v for v in r]
            b = -b
        tab_rows.append((r, b, flipped))

    # artificial columns for rows lacking a ready basic column
    art_of_row = {}
    basis: list[int] = [0] * m
    need_art = []
    for i, (r, b, _flipped) in enumerate(tab_rows):
        s = slack_of_row.get(i)
        if s is not None and r[s] == 1:
            basis[i] = s
        else:
            need_art.append(i)
    n_art = len(need_art)
    width = nvar + n_slack + n_art
    for k, i in enumerate(need_art):
        art_of_row[i] = nvar + n_slack + k
        basis[i] = nvar + n_slack + k

    tableau = []
    for i, (r, b, _flipped) in enumerate(tab_rows):
        row = r + [ZERO] * n_art + [b]
        if i in art_of_row:
            row[art_of_row[i]] = ONE
        tableau.append(row)

    all_cols = list(range(width))

    # phase 1: drive artificials to zero
    if n_art:
        obj = [ZERO] * (width + 1)
        for i in art_of_row:
            obj = [o - v for o, v in zip(obj, tableau[i])]
        for i, c in art_of_row.items():
            obj[c] = ZERO
        tableau.append(obj)
        _simplex(tableau, basis, m, width, all_cols)
        if tableau[m][width] != 0:
            return FeasibleResult(status="infeasible")
        # pivot any artificial still basic out of the basis; rows that stay
        # artificial-basic are redundant (all-zero on real columns) and inert
        for i in range(m):
            if basis[i] >= nvar + n_slack:
                for j in range(nvar + n_slack):
                    if tableau[i][j] != 0:
                        _pivot(tableau, basis, i, j, m, width)
                        break
        tableau.pop()

    # phase 2: maximize the chosen variable
    cost = [ZERO] * (width + 1)
    cost[pos_col[obj_idx]] = -ONE
    if neg_col[obj_idx] is not None:
        cost[neg_col[obj_idx]] = ONE
    tableau.append(cost)
    for i in range(m):
        bj = basis[i]
        f = tableau[m][bj]
        if f != 0:
            tableau[m] = [v if not w else v - f * w for v, w in zip(tableau[m], tableau[i])]
    structural_cols = list(range(nvar + n_slack))
    ok = _simplex(tableau, basis, m, width, structural_cols)
    if not ok:
        return FeasibleResult(status="unbounded")

    maximum = tableau[m][width]
    point = [ZERO] * n
    vals = [ZERO] * width
    for i in range(m):
        vals[basis[i]] = tableau[i][width]
    for j in range(n):
        point[j] = vals[pos_col[j]]
        if neg_col[j] is not None:
            point[j] -= vals[neg_col[j]]

    # Dual extraction.  With y the simplex multipliers, the objective row
    # over inequality row i's slack column equals the form multiplier
    # Y_i >= 0 directly (a flipped row's sign cancels against its flipped
    # slack).  The reduced cost of a bounded variable's column is the
    # multiplier of its absorbed sign row, divided by the row coefficient.
    # For an equality row the entry over its artificial column is the raw
    # multiplier y_i; the form multiplier is -y_i unflipped, +y_i flipped.
    # Together: sum_i Y_i f_i + sum_j Z_j g_j == maximum - objective.
    obj_row = tableau[m]
    cert_of_ineq: dict[int, Fraction] = {}
    for pos, i in enumerate(row_ineqs):
        cert_of_ineq[i] = obj_row[slack_of_row[pos]]
    for j, i in bound_row_of_var.items():
        cert_of_ineq[i] = obj_row[pos_col[j]] / bound_coeff[j]
    cert = [
        CertificateEntry("ineq", i, ineqs[i].label, cert_of_ineq[i])
        for i in range(len(ineqs))
    ]
    for k, g in enumerate(eqs):
        i = len(row_ineqs) + k
        z = obj_row[art_of_row[i]]
        if not tab_rows[i][2]:
            z = -z
        cert.append(CertificateEntry("eq", k, g.label, z))

    return FeasibleResult(
        status="optimal",
        maximum=maximum,
        argmax=tuple(point),
        certificate=tuple(cert),
    )


def replay_certificate(
    system: ConstraintSystem, objective: str, result: FeasibleResult
) -> bool:
    """Check a certificate exactly: non-negative inequality multipliers whose
    combination with the equality multipliers equals (max - objective) as an
    affine form."""
    if result.status != "optimal":
        return False
    n = len(system.variables)
    obj_idx = system.var_index(objective)
    acc = [ZERO] * n
    const = ZERO
    for e in result.certificate:
        form = (
            system.inequalities[e.index] if e.kind == "ineq" else system.equalities[e.index]
        )
        if e.kind == "ineq" and e.multiplier < 0:
            return False
        for j in range(n):
            acc[j] += e.multiplier * form.coeffs[j]
        const += e.multiplier * form.constant
    target = [ZERO] * n
    target[obj_idx] = -ONE
    return acc == target and const == result.maximum


def render_certificate(
    system: ConstraintSystem, result: FeasibleResult
) -> list[str]:
    """One line per constraint with its multiplier, exact rationals as p/q."""
    lines = []
    for e in result.certificate:
        form = (
            system.inequalities[e.index] if e.kind == "ineq" else system.equalities[e.index]
        )
        rel = ">= 0" if e.kind == "ineq" else "= 0"
        label = e.label or f"{e.kind}[{e.index}]"
        lines.append(
            f"{e.multiplier} * ({form.render(list(system.variables))} {rel})   [{label}]"
        )
    return lines
