import json
import subprocess
import sys

import pytest

from coxmod.cli import main
from coxmod.compare import match_presentation
from coxmod.formats import cemds_from_dict, cemds_to_dict, dumps

from fixtures import (P345_BLOWUP_GRADING, P345_BLOWUP_RELATIONS, P345_CENTER, P345_MULTS,
                      p345, polys)


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else dumps(obj))
        return str(path)
    write("p345.json", cemds_to_dict(p345()))
    write("center.json", {"gens": P345_CENTER, "mults": P345_MULTS})
    write("center3.json", {"gens": P345_CENTER[:3], "mults": [1, 1, 1]})
    write("point.json", {"point": [1, 1, 1]})
    write.dir = tmp_path
    return write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_blowup_reproduces_printed_ring(files, capsys):
    d = files.dir
    code, out, _ = run(["blowup", "--input", str(d / "p345.json"),
                        "--center", str(d / "center.json")], capsys)
    assert code == 0
    X = cemds_from_dict(json.loads(out))
    assert X.r == 8
    m = match_presentation(X.ideal(), X.grading, polys(P345_BLOWUP_RELATIONS, 8),
                           printed_grading=P345_BLOWUP_GRADING, require_equal=True)
    assert m is not None


def test_blowup_auto_exhausted_at_k1(files, capsys):
    d = files.dir
    code, out, _ = run(["blowup-auto", "--input", str(d / "p345.json"),
                        "--center", str(d / "center3.json"), "--max-k", "1"], capsys)
    assert code == 2
    assert json.loads(out)["status"] == "exhausted"


def test_insufficient_center_is_refuted(files, capsys):
    d = files.dir
    code, out, _ = run(["blowup", "--input", str(d / "p345.json"),
                        "--center", str(d / "center3.json")], capsys)
    assert code == 1
    assert json.loads(out)["status"] == "unverified-ES"


def test_malformed_polynomial_reports_position(files, capsys):
    d = files.dir
    code, out, err = run(["proj-model", "--input", str(d / "p345.json"),
                          "--poly", "T1 + * T2"], capsys)
    assert code == 1 and out == ""
    assert "cannot parse polynomial" in err and "5" in err


def test_distinct_error_messages(files, capsys):
    d = files.dir
    bad = files("bad.json", "{not json")
    code, _, err = run(["verify", "--input", bad], capsys)
    assert code == 1 and "bad input" in err
    code, _, err = run(["blowup", "--input", str(d / "p345.json"),
                        "--center", str(d / "center.json"), "--gb-step-budget", "1"], capsys)
    assert code == 1 and "budget" in err
    code, _, _ = run(["verify", "--input", str(d / "p345.json"), "--no-such-flag"], capsys)
    assert code == 1
    code, _, err = run(["blowup", "--input", str(d / "p345.json")], capsys)
    assert code == 1 and "--center" in err


def test_output_is_byte_identical_across_runs(files, capsys):
    d = files.dir
    outs = []
    for k in range(2):
        target = str(d / f"out{k}.json")
        code = main(["blowup", "--input", str(d / "p345.json"),
                     "--center", str(d / "center.json"), "--output", target])
        assert code == 0
        outs.append(open(target, "rb").read())
    assert outs[0] == outs[1]


def test_lattice_ideal_and_certificate(files, capsys):
    from coxmod.cemds import toric_cemds
    d = files.dir
    code, out, _ = run(["lattice-ideal", "--input", str(d / "p345.json"),
                        "--center", str(d / "point.json")], capsys)
    assert code == 0 and json.loads(out)["ideal"]["arity"] == 3
    # a general point of a singular surface has no regular cone: the certificate is false
    code, out, _ = run(["lattice-ideal", "--input", str(d / "p345.json"),
                        "--center", str(d / "point.json"), "--certificate"], capsys)
    assert code == 1 and json.loads(out)["certificate"] is False
    p2 = files("p2.json", cemds_to_dict(toric_cemds([[1, 0, -1], [0, 1, -1]], [1])))
    fixed = files("fixed.json", {"point": [0, 0, 1]})
    code, out, _ = run(["lattice-ideal", "--input", p2, "--center", fixed, "--certificate"],
                       capsys)
    assert code == 0 and json.loads(out)["certificate"] is True


def test_specialize_substitutes_parameters(files, capsys):
    d = files.dir
    code, out, _ = run(["proj-model", "--input", str(d / "p345.json"), "--poly", "T1^a",
                        "--poly", "c*T1^b", "--specialize", "a=2", "--specialize", "b=2",
                        "--specialize", "c=1/2"], capsys)
    # both coordinates have the same degree and differ by a scalar: a line in P^1
    assert code == 0
    assert json.loads(out)["ideal"]["arity"] == 2


def test_linear_blowup_of_plane(files, capsys):
    cfg = files("cfg.json", {"n": 2, "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]})
    code, out, _ = run(["linear-blowup", "--config", cfg, "--verify"], capsys)
    assert code == 0
    assert len(json.loads(out)["hyperplanes"]) == 6


def test_runbook_chains_stages(files, capsys):
    d = files.dir
    book = files("book.json", {"stages": [
        "blowup --input p345.json --center center.json --output blown.json",
        "verify --input blown.json --output report.json",
    ]})
    code, _, _ = run(["runbook", "--runbook", book, "--output", str(d / "book_out.json")], capsys)
    assert code == 0
    summary = json.loads((d / "book_out.json").read_text())
    assert [s["exit"] for s in summary["stages"]] == [0, 0]
    assert json.loads((d / "report.json").read_text())["report"]["overall"] == "verified"
    assert (d / "blown.json").exists()


def test_module_entry_point(files):
    d = files.dir
    proc = subprocess.run([sys.executable, "-m", "coxmod", "verify", "--input",
                           str(d / "p345.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["report"]["overall"] == "verified"
