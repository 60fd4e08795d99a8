import pytest

from threefold.cli import main

THEOREM_TOWER = """base p3
blowup point
blowup point
blowup curve class = l - L1 - L2 genus = 0
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_case_ueno_output(capsys):
    code, out, _ = run(capsys, "case", "ueno")
    assert code == 0
    assert "chi_resolution: 92" in out
    assert "fixed_points: 8" in out
    assert "picard_resolution: 45" in out


def test_case_ueno_records(capsys):
    code, human, _ = run(capsys, "case", "ueno")
    code2, records, _ = run(capsys, "case", "ueno", "--format", "records")
    assert code2 == 0
    # every human-readable number appears in the records
    rec_values = {line.split("=", 1)[1] for line in records.strip().splitlines()}
    for line in human.strip().splitlines():
        if ":" in line:
            value = line.split(":", 1)[1].strip()
            assert value in rec_values, line


def test_p3lines_headline(capsys):
    code, out, _ = run(capsys, "p3lines", "--n", "10")
    assert code == 0
    assert "deg(u)=0 forced; zero entropy by Condition A" in out
    assert "certificate." in out


def test_check_trace(capsys, tmp_path):
    f = tmp_path / "tower.txt"
    f.write_text(THEOREM_TOWER)
    code, out, _ = run(capsys, "check", "--condition", "B", str(f))
    assert code == 0
    assert "holds-by-theorem; trace: T5,T5,T7" in out


def test_check_unknown_exits_zero(capsys, tmp_path):
    f = tmp_path / "tower.txt"
    f.write_text("base p3\nblowup curve class = l genus = 3\n")
    code, out, _ = run(capsys, "check", "--condition", "A", str(f))
    assert code == 0
    assert "unknown" in out


def test_picard1_cli(capsys, tmp_path):
    f = tmp_path / "line.txt"
    f.write_text("base p3\nblowup curve class = l genus = 0\n")
    code, out, _ = run(capsys, "picard1", str(f))
    assert code == 0
    assert "alphas: 1" in out


def test_dynamics_raw(capsys, tmp_path):
    f = tmp_path / "fib.mat"
    f.write_text("0 1\n1 1\n")
    code, out, _ = run(capsys, "dynamics", "--matrix", str(f))
    assert code == 0
    assert "lambda1_minpoly: x^2 - x - 1" in out
    assert "rationality_obstruction: consistent" in out
    assert "primitive_hint: false" in out


def test_dynamics_with_model(capsys, tmp_path):
    mat = tmp_path / "swap.mat"
    mat.write_text("1 0 0\n0 0 1\n0 1 0\n")
    tower = tmp_path / "tower.txt"
    tower.write_text("base p3\nblowup point\nblowup point\n")
    code, out, _ = run(capsys, "dynamics", "--matrix", str(mat), "--model", str(tower))
    assert code == 0
    assert "action_valid: true" in out
    assert "eigenclass_status: entropy-zero" in out


def test_dynamics_positive_entropy_eigenclass(capsys, tmp_path):
    from threefold import make_custom_base, serialize_model

    divisors = [f"d{i}" for i in range(1, 5)] + ["f"]
    curves = [f"c{i}" for i in range(1, 5)] + ["g"]
    model = make_custom_base(
        label="synthetic",
        divisor_names=divisors,
        curve_names=curves,
        mul2={("f", "f"): {"g": 1}},
        pairing={(d, c): 1 for d, c in zip(divisors, curves)},
        c1={"f": 2},
        c2={"g": 3},
        euler=12,
    )
    tower = tmp_path / "synth.tower"
    tower.write_text(serialize_model(model))
    mat = tmp_path / "salem.mat"
    rows = [
        [0, 0, 0, -1, 0],
        [1, 0, 0, 2, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 2, 0],
        [0, 0, 0, 0, 1],
    ]
    mat.write_text("\n".join(" ".join(str(v) for v in r) for r in rows) + "\n")
    code, out, _ = run(capsys, "dynamics", "--matrix", str(mat), "--model", str(tower))
    assert code == 0
    assert "eigenclass_status: ok" in out
    assert "lambda1_minpoly: x^4 - 2*x^3 - 2*x + 1" in out
    assert "residual.zeta_c2" in out


def test_dynamics_invalid_action_reports(capsys, tmp_path):
    mat = tmp_path / "bad.mat"
    mat.write_text("2 0\n0 1\n")
    tower = tmp_path / "tower.txt"
    tower.write_text("base p3\nblowup point\n")
    code, out, _ = run(capsys, "dynamics", "--matrix", str(mat), "--model", str(tower))
    assert code == 0
    assert "action_valid: false" in out
    assert "violation.0" in out


def test_budget_cli(capsys):
    code, out, _ = run(capsys, "budget", "--base", "6,2", "--target", "92,45")
    assert code == 0
    assert "num_blowups: 43" in out
    assert "genus_slack: 0" in out


def test_ring_show_roundtrip(capsys, tmp_path):
    from threefold import models_equivalent, parse_tower

    f = tmp_path / "tower.txt"
    f.write_text(THEOREM_TOWER)
    code, out, _ = run(capsys, "ring", "show", str(f))
    assert code == 0
    original = parse_tower(THEOREM_TOWER).top()
    reparsed = parse_tower(out).top()
    assert models_equivalent(original, reparsed)


def test_ring_show_records_carries_tables(capsys, tmp_path):
    f = tmp_path / "tower.txt"
    f.write_text("base p2xp1\n")
    code, out, _ = run(capsys, "ring", "show", str(f), "--format", "records")
    assert code == 0
    assert "mul.A.B=f1" in out
    assert "pair.B.f1=1" in out
    assert "c1=2 A + 3 B" in out


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "--condition", "C", "x"])
    assert exc.value.code == 2


def test_parse_error_exit_1(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("blowup curve class = l genus = 0\n")
    code, _, err = run(capsys, "check", "--condition", "A", str(f))
    assert code == 1
    assert "line 1" in err


def test_missing_file_exit_1(capsys):
    code, _, err = run(capsys, "p3lines", "--n", "0")
    assert code == 1
    code, _, err = run(capsys, "check", "--condition", "A", "/nonexistent/tower")
    assert code == 1


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("base p3\n"))
    code, out, _ = run(capsys, "ring", "show", "-")
    assert code == 0
    assert "c1 = 4 h" in out
