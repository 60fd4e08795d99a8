"""Line-oriented tower description files.

Grammar (one statement per line, '#' starts a comment, rationals as p/q):

    base p3 | p2xp1 | p1cubed | ci(n;d1,d2,...) | custom
    blowup point
    blowup curve class = <expr> genus = <int> [normal=decomposable]
        [tau0=<int>] [surface=<divisor expr>;mu=<int>[;kappa=<p/q>]]
        [movable] [label=<name>]
    alias <name> = <curve expr>

Class expressions are rational linear combinations of the generator names
available at the current step ("l - L1 - L2", "3/2 l", "2*l").  An alias
names a curve class at the step where it is defined and may be used later;
it is silently pulled back (zero-padded) to the current basis.

A custom base is a block after "base custom", closed by "end":

    label <text>
    divisor <name> / curve <name>        (repeated, in order)
    mul <d1> <d2> = <curve expr | 0>     (one per unordered pair)
    pair <d> <c> = <p/q>                 (missing entries default to 0)
    c1 = <divisor expr>
    c2 = <curve expr>
    euler = <int>
    picard = <int>
    flag <name>                          (optional, repeated)

`ring show` emits exactly this block, so its output re-parses to the same
model.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .blowup_calculus import (
    BlowupStep,
    BlowupTower,
    CurveCenterSpec,
    SurfaceData,
    blow_up_curve,
    blow_up_point,
)
from .intersection_ring import (
    CurveClass,
    DivisorClass,
    ThreefoldModel,
    ValidationError,
    make_base,
    make_custom_base,
)

QQ = Fraction
ZERO = Fraction(0)


class TowerParseError(ValueError):
    def __init__(self, message: str, line: int, col: int | None = None):
        loc = f"line {line}" + (f", col {col}" if col is not None else "")
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class TowerDocument:
    tower: BlowupTower
    aliases: dict[str, tuple[int, CurveClass]]  # name -> (basis size at def, class)

    def models(self):
        return self.tower.evaluate()

    def top(self) -> ThreefoldModel:
        return self.tower.top()


_TOKEN = re.compile(
    r"\s*(?:(?P<sign>[+-])|(?P<num>\d+/\d+|\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<star>\*))"
)


def _parse_linear_expr(text: str, line: int, col0: int, resolve):
    """Parse a rational linear combination; `resolve(name) -> vector (list)`.

    Returns the accumulated coefficient list (length decided by resolve).
    """
    pos = 0
    acc = None
    sign = 1
    pending_num: Fraction | None = None
    saw_term = False
    expecting_term = True
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TowerParseError(
                f"unexpected character {text[pos:].lstrip()[:1]!r} in expression",
                line,
                col0 + pos + 1,
            )
        pos = m.end()
        if m.group("sign"):
            if pending_num is not None:
                raise TowerParseError(
                    "dangling coefficient without a generator name", line, col0 + pos
                )
            if not expecting_term and m.group("sign"):
                sign = 1 if m.group("sign") == "+" else -1
                expecting_term = True
            elif expecting_term:
                sign *= 1 if m.group("sign") == "+" else -1
            continue
        if m.group("num"):
            if pending_num is not None:
                raise TowerParseError("two coefficients in a row", line, col0 + pos)
            pending_num = QQ(m.group("num"))
            continue
        if m.group("star"):
            if pending_num is None:
                raise TowerParseError("'*' without a coefficient", line, col0 + pos)
            continue
        name = m.group("name")
        vec = resolve(name)
        if vec is None:
            raise TowerParseError(f"unknown name {name!r}", line, col0 + pos)
        coeff = (pending_num if pending_num is not None else QQ(1)) * sign
        if acc is None:
            acc = [ZERO] * len(vec)
        if len(vec) != len(acc):
            raise TowerParseError(f"name {name!r} has inconsistent dimension", line)
        for i, v in enumerate(vec):
            if v:
                acc[i] += coeff * v
        pending_num = None
        sign = 1
        expecting_term = False
        saw_term = True
    if pending_num is not None:
        raise TowerParseError("trailing coefficient without a generator", line)
    if not saw_term:
        raise TowerParseError("empty class expression", line, col0 + 1)
    return acc


def _strip_comment(raw: str) -> str:
    if "#" in raw:
        raw = raw[: raw.index("#")]
    return raw.rstrip()


_CI_RE = re.compile(r"^ci\((\d+);([\d,]+)\)$")
_CURVE_RE = re.compile(
    r"^blowup\s+curve\s+class\s*=\s*(?P<cls>.*?)\s+genus\s*=\s*(?P<genus>\d+)(?P<rest>.*)$"
)
_OPT_RES = {
    "normal": re.compile(r"^normal\s*=\s*decomposable\b"),
    "tau0": re.compile(r"^tau0\s*=\s*(-?\d+)\b"),
    "movable": re.compile(r"^movable\b"),
    "label": re.compile(r"^label\s*=\s*(\S+)"),
    "surface": re.compile(
        r"^surface\s*=\s*(?P<surf>[^;]+);\s*mu\s*=\s*(?P<mu>\d+)"
        r"(?:\s*;\s*kappa\s*=\s*(?P<kappa>-?\d+(?:/\d+)?))?"
    ),
}


def parse_tower(text: str) -> TowerDocument:
    """Parse a tower description; raises TowerParseError with location."""
    lines = text.splitlines()
    idx = 0
    n_lines = len(lines)

    def next_meaningful(i):
        while i < n_lines and not _strip_comment(lines[i]).strip():
            i += 1
        return i

    idx = next_meaningful(idx)
    if idx >= n_lines:
        raise TowerParseError("empty tower file: expected a 'base' line", max(1, n_lines))
    first = _strip_comment(lines[idx]).strip()
    if not first.startswith("base"):
        raise TowerParseError("first statement must be 'base <spec>'", idx + 1)
    base_arg = first[4:].strip()
    if not base_arg:
        raise TowerParseError("missing base spec", idx + 1)

    if base_arg == "custom":
        base, idx = _parse_custom_block(lines, idx + 1)
    else:
        m = _CI_RE.match(base_arg)
        try:
            if m:
                n = int(m.group(1))
                degrees = [int(d) for d in m.group(2).split(",")]
                base = make_base("ci", n=n, degrees=degrees)
            else:
                base = make_base(base_arg)
        except ValidationError as e:
            raise TowerParseError(str(e), idx + 1) from None
        idx += 1

    model = base
    steps: list[BlowupStep] = []
    aliases: dict[str, tuple[int, CurveClass]] = {}

    def resolve_curve(name):
        try:
            k = model.curve_index(name)
        except ValidationError:
            if name in aliases:
                size, cls = aliases[name]
                cur = len(model.curve_basis)
                return list(cls.coeffs) + [ZERO] * (cur - size)
            return None
        return [QQ(1) if a == k else ZERO for a in range(len(model.curve_basis))]

    def resolve_divisor(name):
        try:
            k = model.divisor_index(name)
        except ValidationError:
            return None
        return [QQ(1) if a == k else ZERO for a in range(len(model.divisor_basis))]

    while True:
        idx = next_meaningful(idx)
        if idx >= n_lines:
            break
        line_no = idx + 1
        stmt = _strip_comment(lines[idx]).strip()
        idx += 1
        if stmt == "blowup point":
            model = blow_up_point(model)
            steps.append(BlowupStep("point"))
            continue
        if stmt.startswith("blowup curve"):
            m = _CURVE_RE.match(stmt)
            if not m:
                if "genus" not in stmt:
                    raise TowerParseError(
                        "curve blowup needs 'genus = <int>'", line_no
                    )
                raise TowerParseError(
                    "malformed curve blowup (expected 'blowup curve class = <expr> genus = <int> [options]')",
                    line_no,
                )
            cls_text = m.group("cls")
            col0 = stmt.index(cls_text)
            vec = _parse_linear_expr(cls_text, line_no, col0, resolve_curve)
            genus = int(m.group("genus"))
            opts = _parse_curve_options(m.group("rest"), line_no, model, resolve_divisor)
            try:
                center = CurveCenterSpec(
                    curve_class=model.curve(vec),
                    genus=genus,
                    normal_bundle_decomposable=opts.get("normal"),
                    tau0=opts.get("tau0"),
                    surface_data=opts.get("surface"),
                    movable_witness=opts.get("movable"),
                    label=opts.get("label", ""),
                )
                model = blow_up_curve(model, center)
            except ValidationError as e:
                raise TowerParseError(str(e), line_no) from None
            steps.append(BlowupStep("curve", center))
            continue
        if stmt.startswith("alias"):
            m = re.match(r"^alias\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$", stmt)
            if not m:
                raise TowerParseError("malformed alias (expected 'alias <name> = <expr>')", line_no)
            name, expr = m.group(1), m.group(2)
            if resolve_curve(name) is not None:
                raise TowerParseError(f"alias {name!r} shadows an existing name", line_no)
            vec = _parse_linear_expr(expr, line_no, stmt.index(expr), resolve_curve)
            aliases[name] = (len(vec), CurveClass(tuple(vec)))
            continue
        if stmt.startswith("base"):
            raise TowerParseError("duplicate 'base' statement", line_no)
        if stmt.startswith("blowup"):
            raise TowerParseError(
                "unknown blowup kind (expected 'blowup point' or 'blowup curve ...')",
                line_no,
            )
        raise TowerParseError(f"unrecognized statement {stmt.split()[0]!r}", line_no)

    return TowerDocument(tower=BlowupTower(base, tuple(steps)), aliases=aliases)


def _parse_curve_options(rest: str, line_no: int, model, resolve_divisor):
    opts = {}
    pos = 0
    rest = rest.strip()
    while pos < len(rest):
        while pos < len(rest) and rest[pos].isspace():
            pos += 1
        if pos >= len(rest):
            break
        chunk = rest[pos:]
        for key, rx in _OPT_RES.items():
            m = rx.match(chunk)
            if not m:
                continue
            if key == "normal":
                opts["normal"] = True
            elif key == "tau0":
                opts["tau0"] = int(m.group(1))
            elif key == "movable":
                opts["movable"] = True
            elif key == "label":
                opts["label"] = m.group(1)
            else:
                surf_text = m.group("surf").strip()
                vec = _parse_linear_expr(surf_text, line_no, pos, resolve_divisor)
                kappa = m.group("kappa")
                opts["surface"] = SurfaceData(
                    surface=DivisorClass(tuple(vec)),
                    mu=int(m.group("mu")),
                    kappa=QQ(kappa) if kappa is not None else None,
                )
            pos += m.end()
            break
        else:
            raise TowerParseError(
                f"unknown curve option at {chunk.split()[0]!r}", line_no
            )
    return opts


# ---------------------------------------------------------------------------
# custom base block
# ---------------------------------------------------------------------------


def _parse_custom_block(lines, start):
    label = "custom"
    divisors: list[str] = []
    curves: list[str] = []
    mul: dict[tuple[str, str], dict] = {}
    pairing: dict[tuple[str, str], Fraction] = {}
    c1_expr = None
    c2_expr = None
    euler = None
    picard = None
    flags: list[str] = []
    i = start
    closed = False
    while i < len(lines):
        line_no = i + 1
        stmt = _strip_comment(lines[i]).strip()
        i += 1
        if not stmt:
            continue
        if stmt == "end":
            closed = True
            break
        head, _, tail = stmt.partition(" ")
        tail = tail.strip()
        if head == "label":
            label = tail
        elif head == "divisor":
            divisors.append(tail)
        elif head == "curve":
            curves.append(tail)
        elif head == "mul":
            m = re.match(r"^(\S+)\s+(\S+)\s*=\s*(.*)$", tail)
            if not m:
                raise TowerParseError("malformed mul entry", line_no)
            a, b, expr = m.groups()
            if expr.strip() == "0":
                vec = {name: ZERO for name in curves}
            else:
                coeffs = _parse_linear_expr(
                    expr,
                    line_no,
                    0,
                    lambda nm: (
                        [QQ(1) if t == curves.index(nm) else ZERO for t in range(len(curves))]
                        if nm in curves
                        else None
                    ),
                )
                vec = {name: coeffs[t] for t, name in enumerate(curves)}
            mul[(a, b)] = vec
        elif head == "pair":
            m = re.match(r"^(\S+)\s+(\S+)\s*=\s*(-?\d+(?:/\d+)?)$", tail)
            if not m:
                raise TowerParseError("malformed pair entry (want 'pair d c = p/q')", line_no)
            pairing[(m.group(1), m.group(2))] = QQ(m.group(3))
        elif head == "c1":
            c1_expr = (tail.lstrip("= ").strip(), line_no)
        elif head == "c2":
            c2_expr = (tail.lstrip("= ").strip(), line_no)
        elif head == "euler":
            euler = int(tail.lstrip("= ").strip())
        elif head == "picard":
            picard = int(tail.lstrip("= ").strip())
        elif head == "flag":
            flags.append(tail)
        else:
            raise TowerParseError(f"unknown custom-base statement {head!r}", line_no)
    if not closed:
        raise TowerParseError("custom base block never closed with 'end'", len(lines))
    if c1_expr is None or c2_expr is None or euler is None:
        raise TowerParseError("custom base needs c1, c2 and euler", i)

    def resolve_in(names):
        def resolve(nm):
            if nm in names:
                k = names.index(nm)
                return [QQ(1) if t == k else ZERO for t in range(len(names))]
            return None

        return resolve

    c1_vec = _parse_linear_expr(c1_expr[0], c1_expr[1], 0, resolve_in(divisors))
    c2_vec = _parse_linear_expr(c2_expr[0], c2_expr[1], 0, resolve_in(curves))
    try:
        model = make_custom_base(
            label=label,
            divisor_names=divisors,
            curve_names=curves,
            mul2=mul,
            pairing=pairing,
            c1=DivisorClass(tuple(c1_vec)),
            c2=CurveClass(tuple(c2_vec)),
            euler=euler,
            flags=flags,
        )
    except ValidationError as e:
        raise TowerParseError(f"invalid custom base: {e}", start) from None
    if picard is not None and picard != model.picard:
        raise TowerParseError(
            f"declared picard = {picard} but basis has size {model.picard}", start
        )
    return model, i


# ---------------------------------------------------------------------------
# serialization (ring show emits a re-parseable custom base)
# ---------------------------------------------------------------------------


def render_class(names, coeffs) -> str:
    parts = []
    for name, c in zip(names, coeffs):
        if c == 0:
            continue
        if c == 1:
            parts.append(("+", name))
        elif c == -1:
            parts.append(("-", name))
        else:
            parts.append(("+" if c > 0 else "-", f"{abs(c)} {name}"))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def serialize_model(model: ThreefoldModel) -> str:
    """Emit the model as a parseable 'base custom' block."""
    dn = model.divisor_names()
    cn = model.curve_names()
    lines = ["base custom", f"label {model.label}"]
    for name in dn:
        lines.append(f"divisor {name}")
    for name in cn:
        lines.append(f"curve {name}")
    for i in range(len(dn)):
        for j in range(i, len(dn)):
            lines.append(f"mul {dn[i]} {dn[j]} = {render_class(cn, model.mul2[i][j])}")
    for i in range(len(dn)):
        for a in range(len(cn)):
            v = model.pairing[i][a]
            if v != 0:
                lines.append(f"pair {dn[i]} {cn[a]} = {v}")
    lines.append(f"c1 = {render_class(dn, model.c1.coeffs)}")
    lines.append(f"c2 = {render_class(cn, model.c2.coeffs)}")
    lines.append(f"euler = {model.euler}")
    lines.append(f"picard = {model.picard}")
    for flag in sorted(model.base_flags):
        lines.append(f"flag {flag}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def models_equivalent(a: ThreefoldModel, b: ThreefoldModel) -> bool:
    """Structural identity of two models: same generator names and order,
    same tables, Chern classes, Euler number, Picard number and flags.
    Provenance (blowup history, element origins) is ignored."""
    return (
        a.divisor_names() == b.divisor_names()
        and a.curve_names() == b.curve_names()
        and a.mul2 == b.mul2
        and a.pairing == b.pairing
        and a.c1 == b.c1
        and a.c2 == b.c2
        and a.euler == b.euler
        and a.picard == b.picard
        and a.base_flags == b.base_flags
    )
