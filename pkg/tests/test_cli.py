import mpmath
import pytest

from selberg import cli
from selberg.divisor import read_divisor

SYNTH = "# complete_below 50\nmu 0 mult 1\nmu 0.1875 mult 2\nmu 2 mult 3\nmu 7.5 mult 1\n"


@pytest.fixture(scope="module")
def out(tmp_path_factory):
    return tmp_path_factory.mktemp("out")


@pytest.fixture
def synth(tmp_path):
    p = tmp_path / "synthetic.spec"
    p.write_text(SYNTH)
    return str(p)


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_spectrum_and_cache(capsys, out):
    code, cap = run(capsys, "spectrum", "--Lmax", "6", "--out", str(out))
    assert code == 0
    path = cap.out.split()[1]
    text = open(path).read()
    assert text.splitlines()[3].startswith("ell 3.05714")
    code, cap2 = run(capsys, "spectrum", "--Lmax", "6", "--out", str(out))
    assert code == 0 and cap2.out == cap.out
    assert open(path).read() == text
    code, _ = run(capsys, "spectrum", "--Lmax", "6", "--out", str(out), "--force")
    assert open(path).read() == text


def test_spectrum_empty(capsys, out):
    code, cap = run(capsys, "spectrum", "--Lmax", "1", "--out", str(out))
    assert code == 0
    lines = open(cap.out.split()[1]).read().splitlines()
    assert lines == ["# group bolza", "# Lmax 1.0", "# precision 40"]


def test_output_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SELBERG_OUT", str(tmp_path / "env"))
    code, cap = run(capsys, "spectrum", "--Lmax", "3.5")
    assert code == 0 and str(tmp_path / "env") in cap.out


def test_zeta_line_format(capsys, out):
    code, cap = run(capsys, "zeta", "1.5+0.25j", "--Lmax", "6", "--out", str(out))
    assert code == 0
    parts = cap.out.split()
    assert parts[0] == "lambda" and parts[3] == "value" and parts[6] == "err"
    assert float(parts[1]) == 1.5 and float(parts[2]) == 0.25


def test_zeta_refuses_outside_region(capsys, out):
    code, cap = run(capsys, "zeta", "0.3", "--Lmax", "6", "--out", str(out))
    assert code == 2 and "1/2" in cap.err


def test_zeta_logderiv_matches_difference(capsys, out):
    h = 1e-5
    vals = []
    for lam in (1.2 - h, 1.2 + h):
        _, cap = run(capsys, "zeta", repr(lam), "--Lmax", "8", "--out", str(out))
        vals.append(mpmath.mpf(cap.out.split()[4]))
    _, cap = run(capsys, "zeta", "1.2", "--mode", "logderiv", "--Lmax", "8", "--out", str(out))
    ld = float(cap.out.split()[4])
    with mpmath.workdps(40):
        fd = (mpmath.log(vals[1]) - mpmath.log(vals[0])) / (2 * h)
    assert abs(ld - float(fd)) < 1e-6


def test_zeta_thread_independent(capsys, out):
    _, a = run(capsys, "zeta", "0.9+3j", "--Lmax", "6", "--out", str(out), "--threads", "1")
    _, b = run(capsys, "zeta", "0.9+3j", "--Lmax", "6", "--out", str(out), "--threads", "4")
    assert a.out == b.out


def test_check_les(capsys):
    code, cap = run(capsys, "check", "les", "--genus", "2", "--nmax", "20")
    assert code == 0 and cap.out.strip().endswith("pass")


def test_check_residues(capsys):
    code, cap = run(capsys, "check", "residues", "--genus", "2", "--nmax", "2",
                    "--precision", "20")
    assert code == 0 and cap.out.count(" ok") == 3


def test_check_patterson(capsys, synth):
    code, cap = run(capsys, "check", "patterson", "--genus", "2", "--spectrum", synth,
                    "--nmax", "5")
    assert code == 0 and "MISMATCH" not in cap.out


def test_check_patterson_needs_spectrum(capsys):
    code, cap = run(capsys, "check", "patterson", "--genus", "2")
    assert code == 2 and "--spectrum" in cap.err


def test_check_local_factor(capsys):
    code, cap = run(capsys, "check", "local-factor", "--precision", "30")
    assert code == 0 and "pass" in cap.out


def test_divisor_command(capsys, synth, tmp_path):
    code, cap = run(capsys, "divisor", "--spectrum", synth, "--out", str(tmp_path),
                    "--bound", "3")
    assert code == 0
    d = read_divisor(cap.out.split()[1])
    assert d.order_at(-0.5) == 3 and d.order_at(-2.5) == 10


@pytest.mark.parametrize("argv", [["spectrum", "--precision", "10"],
                                  ["spectrum", "--Lmax", "0"],
                                  ["spectrum", "--genus", "1"],
                                  ["zeta", "x+y"],
                                  ["spectrum", "--group", "nowhere.gens"]])
def test_precondition_exit_code(capsys, argv, tmp_path):
    code, _ = run(capsys, *argv, "--out", str(tmp_path))
    assert code == 2


def test_verification_exit_code(capsys, tmp_path):
    # large translations along the Bolza axes give a Schottky group: no compact domain
    lines = ["# genus 2"]
    with mpmath.workdps(50):
        for k in range(4):
            th = k * mpmath.pi / 8
            R = mpmath.matrix([[mpmath.cos(th), -mpmath.sin(th)], [mpmath.sin(th), mpmath.cos(th)]])
            M = R * mpmath.diag([5, mpmath.mpf(1) / 5]) * R.T
            lines.append("gen " + " ".join(mpmath.nstr(M[i, j], 48)
                                           for i in range(2) for j in range(2)))
    p = tmp_path / "schottky.gens"
    p.write_text("\n".join(lines) + "\n")
    code, cap = run(capsys, "spectrum", "--group", str(p), "--Lmax", "4", "--out", str(tmp_path))
    assert code == 3 and "not certified" in cap.err
