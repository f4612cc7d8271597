import io
import shutil
import subprocess
import sys

import pytest

from oracles import brute_force_catalog
from vbq.algebra import derive_vr, identity_operator, linear_biquandle, swap_operator, virtual
from vbq.cli import main
from vbq.fileformat import format_structure, parse_catalog, parse_structure


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, op, f=None):
        p = tmp_path / name
        p.write_text(format_structure(op, f))
        return str(p)

    return {
        "swap": write("swap.vbq", swap_operator(3)),
        "swap_shift": write("swap_shift.vbq", swap_operator(3), (1, 2, 0)),
        "lin": write("lin.vbq", linear_biquandle(3, 1, 2)),
        "lin_shift": write("lin_shift.vbq", linear_biquandle(3, 1, 2), (1, 2, 0)),
        "ident": write("ident.vbq", identity_operator(2)),
        "bad_entry": str(_write(tmp_path / "bad.vbq", "vbq\nsize 3\nR1\n0 1 2\n0 1 2\n0 1 7\n"
                                "R2\n0 0 0\n1 1 1\n2 2 2\n")),
        "bad_grammar": str(_write(tmp_path / "junk.vbq", "hello\n")),
    }


def _write(p, text):
    p.write_text(text)
    return p


# --- check -------------------------------------------------------------------------

def test_check_valid(files):
    code, out = run("check", files["swap"])
    assert code == 0
    assert out.splitlines()[-1] == "valid biquandle of size 3"


def test_check_virtual(files):
    code, out = run("check", files["lin_shift"])
    assert code == 0 and "PASS f automorphism" in out


def test_check_identity_names_type_one(files):
    code, out = run("check", files["ident"])
    assert code == 1
    assert "FAIL type I: a=0 has 2 values x with R(x,a)=(x,a): [0, 1]" in out


def test_check_out_of_range_entry(files, capsys):
    code, _ = run("check", files["bad_entry"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_check_grammar_error(files):
    assert run("check", files["bad_grammar"])[0] == 2


def test_check_missing_file(tmp_path):
    assert run("check", str(tmp_path / "nope.vbq"))[0] == 2


# --- vr ----------------------------------------------------------------------------

def test_vr_identity_f(files):
    code, out = run("vr", files["lin"])
    assert code == 0
    assert out == format_structure(linear_biquandle(3, 1, 2))


def test_vr_with_shift(files):
    code, out = run("vr", files["lin_shift"])
    op, f = parse_structure(out)
    assert code == 0 and f == (1, 2, 0)
    assert op == derive_vr(virtual(linear_biquandle(3, 1, 2), (1, 2, 0)))


def test_vr_rejects_invalid(files):
    assert run("vr", files["ident"])[0] == 1


# --- color -------------------------------------------------------------------------

def test_color_full_twist(files):
    assert run("color", files["lin"], "--braid", "s1 s1") == (0, "3\n")


def test_color_gauss_hopf(files):
    assert run("color", files["swap"], "--gauss", "U1+O2+|O1+U2+") == (0, "9\n")


def test_color_empty_word(files):
    assert run("color", files["swap"], "--braid", "", "--strands", "2") == (0, "9\n")


def test_color_witnesses(files):
    code, out = run("color", files["lin_shift"], "--braid", "v1", "--witnesses")
    assert code == 0 and out == "3\n0 1\n1 2\n2 0\n"
    code, out = run("color", files["lin_shift"], "--braid", "v1", "--rep", "psi", "--witnesses")
    assert out == "3\n0 0\n1 1\n2 2\n"


def test_color_budget_exit(files):
    assert run("color", files["lin"], "--braid", "", "--strands", "12", "--budget", "1000")[0] == 3


def test_color_bad_braid(files):
    assert run("color", files["lin"], "--braid", "q1")[0] == 2
    assert run("color", files["lin"], "--gauss", "O1+U1-")[0] == 2


def test_color_requires_one_source(files):
    with pytest.raises(SystemExit):
        run("color", files["lin"])
    with pytest.raises(SystemExit):
        run("color", files["lin"], "--braid", "s1", "--gauss", "O1+U1+")


def test_bad_workers(files):
    assert run("color", files["lin"], "--braid", "s1", "--workers", "0")[0] == 2


# --- bridge ------------------------------------------------------------------------

def test_bridge_virtual_crossing(files):
    code, out = run("bridge", files["lin_shift"], "--braid", "v1")
    assert code == 0
    assert "phi 3 psi 3 vr 3" in out


def test_bridge_single_crossing(files):
    code, out = run("bridge", files["swap_shift"], "--braid", "s1")
    assert code == 0 and "phi 3 psi 3 vr 3" in out


def test_bridge_fuzz(files):
    code, out = run("bridge", files["lin_shift"], "--fuzz", "50", "--seed", "9", "--strands", "3")
    assert code == 0
    assert out.splitlines()[-1] == "50 braids, all counts equal"


# --- present ---------------------------------------------------------------------------

def test_present_phi_rho():
    assert run("present", "--braid", "v1", "--rep", "phi") == (0, "f^-1(x2) = x1\nf^1(x1) = x2\n")


def test_present_psi_sigma():
    assert run("present", "--braid", "s1", "--rep", "psi") == (
        0, "R1(x1,f^1(x2)) = x1\nR2(f^-1(x1),x2) = x2\n")


def test_present_gauss():
    assert run("present", "--gauss", "O1+U1+") == (0, "R1(x1,f^1(x2)) = x1\nR2(f^-1(x1),x2) = x2\n")


# --- enum --------------------------------------------------------------------------------

def test_enum_size_one():
    code, out = run("enum", "--size", "1")
    assert code == 0 and len(parse_catalog(out)) == 1


def test_enum_size_two_matches_oracle():
    code, out = run("enum", "--size", "2")
    assert code == 0
    assert sorted((op.r1, op.r2) for op, _ in parse_catalog(out)) == brute_force_catalog(2, latin_only=False)
    assert out.startswith("# 2 biquandles of size 2")


def test_enum_virtual_iso():
    code, out = run("enum", "--size", "3", "--virtual", "--iso")
    items = parse_catalog(out)
    assert code == 0 and len(items) == 36 and all(f is not None for _, f in items)


def test_enum_size_limit(capsys):
    assert run("enum", "--size", "5")[0] == 2
    assert "limit" in capsys.readouterr().err


# --- entry point ---------------------------------------------------------------------------

def test_console_script(files):
    exe = shutil.which("vbq")
    cmd = [exe] if exe else [sys.executable, "-m", "vbq.cli"]
    res = subprocess.run(cmd + ["color", files["lin"], "--braid", "s1 s1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "3\n"
    res = subprocess.run(cmd + ["check", files["ident"]], capture_output=True, text=True)
    assert res.returncode == 1
