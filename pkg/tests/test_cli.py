import pytest

from twistk3.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_derive(capsys):
    code, out, _ = run(capsys, "derive")
    assert code == 0
    assert "equation: w^2 = -4*x0^6 - 308*x0^5*x1" in out
    assert "+ 40*y2^6" in out


def test_derive_human_format(capsys):
    code, out, _ = run(capsys, "derive", "--format", "human")
    assert code == 0 and "x0^6" in out


@pytest.mark.parametrize("content", ["", "x0*y0 +", "x0^3*y0^2"])
def test_bad_divisor_file(tmp_path, capsys, content):
    path = tmp_path / "d.txt"
    path.write_text(content)
    code, _, err = run(capsys, "derive", "--divisor", str(path))
    assert code == 2 and err.startswith("error:")


def test_missing_file(capsys):
    code, _, err = run(capsys, "derive", "--divisor", "/nonexistent/divisor.txt")
    assert code == 2 and "cannot read" in err


def test_smooth(capsys):
    code, out, _ = run(capsys, "smooth")
    assert code == 0 and out.count("smooth: yes") == 2


def test_surface_input(tmp_path, capsys):
    path = tmp_path / "s.txt"
    path.write_text("w^2 = x0^6 + x1^6 + x2^6")
    code, out, _ = run(capsys, "badprimes", "--surface", str(path), "--bound", "100")
    assert code == 0 and "bad primes: 2, 3" in out


def test_badprimes_small_bound(capsys):
    code, out, _ = run(capsys, "badprimes", "--bound", "1000000")
    assert code == 0
    assert "bad primes: 2, 5, 7, 307, 4591, 27077, 371857" in out
    assert "rejected 3" in out


def test_search_and_invariants(capsys):
    code, out, _ = run(capsys, "search", "--place", "5", "--point=-1,-1,0")
    assert code == 0 and "verified" in out
    code, out, _ = run(capsys, "invariants", "--side", "y", "--point=-3,-1,1", "--place", "2")
    assert code == 0 and "invariant: 1/2" in out
    code, out, _ = run(capsys, "invariants", "--side", "y", "--point", "4,3,3", "--place", "real")
    assert code == 0 and "invariant: 0" in out


def test_invariant_indeterminate_exits_1(capsys):
    code, _, err = run(capsys, "invariants", "--side", "y", "--point", "1,1,1", "--place", "2")
    assert code == 1 and "vanishing" in err


def test_point_not_over_place(capsys):
    code, _, err = run(capsys, "invariants", "--point", "1,1,1", "--place", "real")
    assert code == 2 and "not a square in R" in err


def test_symbol(capsys):
    code, out, _ = run(capsys, "symbol", "-1", "-1", "--place", "real")
    assert code == 0 and "symbol: -1" in out
    code, out, _ = run(capsys, "symbol", "2", "3", "--place", "3")
    assert "symbol: -1" in out
    code, _, _ = run(capsys, "symbol", "0", "3", "--place", "3")
    assert code == 2


def test_verify_table_bundled(capsys):
    code, out, _ = run(capsys, "verify-table")
    assert code == 0 and "passed: 17" in out and "failed: 0" in out


def test_verify_table_decides_new_rows(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("23 : 1, 1, 1\n3 : 1, 1, 1\n")
    code, out, _ = run(capsys, "verify-table", "--table", str(path))
    # g(1,1,1) = -730 is a square mod 23 but 3 divides it exactly once
    assert "23 [1, 1, 1]: pass" in out
    assert "3 [1, 1, 1]: fail" in out
    assert code == 1


def test_verify_table_empty_and_malformed(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("")
    code, out, err = run(capsys, "verify-table", "--table", str(path))
    assert code == 0 and "rows: 0" in out and "warning" in err
    path.write_text("5 : 1, 2\n")
    code, _, err = run(capsys, "verify-table", "--table", str(path))
    assert code == 2 and "line 1" in err


def test_sod_check(capsys):
    code, out, _ = run(capsys, "sod-check")
    assert code == 0 and "residual sets agree: yes" in out
    code, out, _ = run(capsys, "sod-check", "--swap")
    assert code == 0 and "residual sets agree: yes" in out


def test_verdict_incomplete_factorisation(capsys):
    code, out, _ = run(capsys, "verdict", "--bound", "1000", "--extra-primes", "")
    assert code == 1 and "status: unknown" in out


@pytest.mark.parametrize("place,needle", [
    ("2", "alpha_2 at the point: 1/2"),
    ("real", "alpha_2 at the point: 0"),
    ("rational", "[1,1,1,0]"),
])
def test_reproduce_examples(capsys, place, needle):
    code, out, _ = run(capsys, "reproduce-paper", "--place", place)
    assert code == 0 and needle in out


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "reproduce-paper", "--place", "2")[1] for _ in range(2)}
    assert len(outs) == 1


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
