import shutil
import subprocess
import sys

import pytest

from nilmaps.cli import EXIT_FAIL, EXIT_OK, EXIT_REVIEW, EXIT_USAGE, main
from nilmaps.maps import parse_map

WORKED_FILE = ("field = Q\nu = x^2 + y\nv = -2*x^3 - 2*x*y + z\n"
               "h = x^4 + 2*x^2*y + y^2\nshape = A\n")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return dict(line.split("=", 1) for line in out.splitlines())


@pytest.fixture
def mapfile(tmp_path):
    def write(text, name="h.map"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_gen_worked_instance(capsys):
    code, out, _ = run(capsys, "gen", "thm22", "-p", "g=t", "-p", "a=1", "-p", "v1=1", "-p", "c0=1")
    assert code == EXIT_OK
    assert out == WORKED_FILE


def test_gen_prop31_worked_instance(capsys):
    code, out, _ = run(capsys, "gen", "prop31", "-p", "g=t")
    assert code == EXIT_OK
    assert out == ("field = Q\nu = -2*x*y - 2*y^3 + z\nv = x + y^2\n"
                   "h = x^2 + 2*x*y^2 + y^4\nshape = C\n")


def test_gen_rejects_constant_g(capsys):
    code, _, err = run(capsys, "gen", "thm22", "-p", "g=0")
    assert code == EXIT_USAGE
    assert "invalid parameter g" in err


def test_gen_lists_every_bad_field(capsys):
    code, _, err = run(capsys, "gen", "prop31", "-p", "g=t", "-p", "u1=0", "-p", "c0=0")
    assert code == EXIT_USAGE
    assert "u1" in err and "c0" in err


def test_gen_param_file_and_field(capsys, tmp_path):
    pf = tmp_path / "p.txt"
    pf.write_text("# params\nfield = GF(7)\ng = t^2 + t\nc0 = 3\nshear = 2\n")
    code, out, _ = run(capsys, "gen", "thm33", str(pf))
    assert code == EXIT_OK
    H = parse_map(out)
    assert H.shape == "B" and H.field.name == "GF(7)"


def test_gen_unknown_key(capsys):
    code, _, err = run(capsys, "gen", "thm22", "-p", "g=t", "-p", "u1=2")
    assert code == EXIT_USAGE and "u1" in err


def test_check_exit_codes(capsys, mapfile):
    code, out, _ = run(capsys, "check", mapfile(WORKED_FILE))
    assert code == EXIT_OK
    rec = records(out)
    assert rec["nilpotent"] == "true"
    assert [rec[f"residual_{k}"] for k in (1, 2, 3)] == ["0", "0", "0"]
    code, out, _ = run(capsys, "check", mapfile("u = x\nv = y\nh = z\n"))
    assert code == EXIT_FAIL
    assert records(out)["c1"] == "3"


def test_check_parse_error_has_position(capsys, mapfile):
    code, _, err = run(capsys, "check", mapfile("u = x + * y\nv = y\nh = z\n"))
    assert code == EXIT_USAGE
    assert "position" in err and "line 1" in err


def test_check_shape_error(capsys, mapfile):
    code, _, err = run(capsys, "check", mapfile("u = y\nv = z^2\nh = x\nshape = A\n"))
    assert code == EXIT_USAGE


def test_classify_records(capsys, mapfile):
    code, out, _ = run(capsys, "classify", mapfile(WORKED_FILE))
    assert code == EXIT_OK
    rec = records(out)
    assert rec["variant"] == "NormalFormA"
    assert (rec["g"], rec["a"], rec["v1"], rec["c0"]) == ("t", "1", "1", "1")
    code, out, _ = run(capsys, "classify", mapfile("u = x + y\nv = 2*x + 2*y\nh = z\n"))
    assert code == EXIT_OK
    assert records(out) == {"variant": "Dependent", "witness": "1,-1/2,0"}


def test_classify_errors_are_distinct(capsys, mapfile):
    code, _, e1 = run(capsys, "classify", mapfile("u = x\nv = y\nh = z\n"))
    assert code == EXIT_FAIL and "not nilpotent" in e1
    code, _, e2 = run(capsys, "classify", mapfile("u = y + 1\nv = z\nh = x\n"))
    assert code == EXIT_FAIL and "not origin preserving" in e2
    code, _, e3 = run(capsys, "classify", mapfile("u = z\nv = y\nh = x\nshape = A\n"))
    assert code == EXIT_FAIL and "shape mismatch" in e3


def test_classify_no_match(capsys, mapfile):
    text = ("u = -2*x*y + x - 2*y^3 + z\nv = x + y^2\n"
            "h = x^2 + 2*x*y^2 + 2*x*y - x + y^4 + 2*y^3 - z\n")
    code, out, _ = run(capsys, "classify", mapfile(text))
    assert code == EXIT_FAIL
    rec = records(out)
    assert rec["variant"] == "NoMatch"
    assert "deg_y_u" in rec and "deg_y_h" in rec


def test_pipeline_fixed_point(capsys, mapfile):
    for fam, extra in (("thm22", ["-p", "g=t^3 - 2*t", "-p", "a=2", "-p", "l1=1/2"]),
                       ("prop31", ["-p", "g=t^2", "-p", "u1=3", "-p", "l2=-1"]),
                       ("thm33", ["-p", "g=t", "-p", "shear=-2/3"])):
        code, out, _ = run(capsys, "gen", fam, *extra)
        assert code == EXIT_OK
        path = mapfile(out, f"{fam}.map")
        assert run(capsys, "check", path)[0] == EXIT_OK
        code, rec, _ = run(capsys, "classify", path)
        assert code == EXIT_OK
        assert records(rec)["variant"].startswith("NormalForm")


def test_depend(capsys, mapfile):
    assert run(capsys, "depend", mapfile("u = x + y\nv = 2*x + 2*y\nh = z\n"))[0] == EXIT_OK
    assert run(capsys, "depend", mapfile(WORKED_FILE))[0] == EXIT_FAIL


def test_lemma21(capsys):
    code, out, _ = run(capsys, "lemma21", "y^3 + 3*x^2*y^2 + 3*x^4*y + x^6")
    rec = records(out)
    assert code == EXIT_OK
    assert (rec["shift"], rec["outer"], rec["quotient"], rec["constant_c"]) == ("x^2", "t^3", "2*x", "0")
    code, out, _ = run(capsys, "lemma21", "y^2 + x")
    assert code == EXIT_FAIL and records(out)["applicable"] == "false"
    assert run(capsys, "lemma21", "y^7 + x", "--field", "GF(7)")[0] == EXIT_USAGE


def test_conjugate(capsys, mapfile):
    code, out, _ = run(capsys, "gen", "thm33", "-p", "g=t")
    path = mapfile(out)
    code, out, _ = run(capsys, "conjugate", path, "-T", "1,0,0;1,1,0;0,0,1")
    assert code == EXIT_OK
    code, base, _ = run(capsys, "gen", "prop31", "-p", "g=t")
    assert parse_map(out).same_map(parse_map(base))
    assert run(capsys, "conjugate", path, "-T", "1,1,0;1,1,0;0,0,1")[0] == EXIT_USAGE
    assert run(capsys, "conjugate", path, "-T", "1,0;0,1")[0] == EXIT_USAGE


def test_search_requires_seed_when_sampling(capsys):
    assert run(capsys, "search", "--preset", "c-linear-v", "--sample", "10")[0] == EXIT_USAGE


def test_search_cap(capsys):
    code, _, err = run(capsys, "search", "--shape", "C", "--u", "z^2,z,y,x", "--v", "z,x,y",
                       "--h", "x,y", "--cap", "1000")
    assert code == EXIT_USAGE and str(7**9) in err


def test_search_sampled_independent_of_workers(capsys):
    args = ["search", "--preset", "b-quadratic-outer", "--sample", "2000", "--seed", "4"]
    c1, o1, _ = run(capsys, *args)
    c2, o2, _ = run(capsys, *args, "--workers", "2")
    assert c1 == c2 == EXIT_OK
    assert o1 == o2
    assert records(o1)["nilpotent_independent_unmatched"] == "0"


def test_search_review_exit_and_specimen_files(capsys, tmp_path):
    U, V, H = "x*y,x,y^3,z", "x,y^2", "x^2,x*y^2,x*y,x,y^4,y^3,z"
    code, out, err = run(capsys, "search", "--shape", "GENERAL", "--field", "GF(3)",
                         "--u", U, "--v", V, "--h", H, "--require-u", U, "--require-v", V,
                         "--require-h", H, "--out", str(tmp_path / "specimens"))
    assert code == EXIT_REVIEW
    assert "review" in err
    assert records(out)["specimens"] == "64"
    assert len(list((tmp_path / "specimens").glob("*.map"))) == 64


def test_usage_errors(capsys):
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "check", "/nonexistent/file.map")[0] == EXIT_USAGE


def test_human_output(capsys, mapfile):
    code, out, _ = run(capsys, "check", mapfile(WORKED_FILE), "--human")
    assert code == EXIT_OK
    assert out.startswith("JH is nilpotent")


def test_deterministic_output(capsys, mapfile):
    path = mapfile(WORKED_FILE)
    outs = {run(capsys, "classify", path)[1] for _ in range(3)}
    assert len(outs) == 1


@pytest.mark.skipif(shutil.which("nilmaps") is None, reason="console script not installed")
def test_console_script(tmp_path):
    p = subprocess.run(["nilmaps", "gen", "thm22", "-p", "g=t"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == WORKED_FILE
    f = tmp_path / "i.map"
    f.write_text("u = x\nv = y\nh = z\n")
    assert subprocess.run(["nilmaps", "check", str(f)], capture_output=True).returncode == 1
    assert subprocess.run([sys.executable, "-m", "nilmaps.cli", "check", str(f)],
                          capture_output=True).returncode == 1
