import io
import json
import subprocess
import sys

import pytest

from hibilab.cli import run

B3 = "poset 3\nnames a b c\n"
FIG = "poset 4\nnames a b c d\nb < d\nc < d\n"
CHAIN_GRAPH = "complex 4\nsplit 0 1 | 2 3\n0 2\n1 3\n0 3\n"
SQUARE = "complex 4\nsplit 0 1 | 2 3\n0 2\n0 3\n1 2\n1 3\n"


@pytest.fixture
def files(tmp_path):
    for name, text in (("b3.txt", B3), ("fig.txt", FIG), ("g.txt", CHAIN_GRAPH), ("sq.txt", SQUARE)):
        (tmp_path / name).write_text(text)
    return tmp_path


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, out.getvalue()


def test_band_betti_golden():
    code, text = call("band-betti", "--rank", "3")
    assert code == 0
    assert text == "       0 1 2\ntotal: 6 6 1\n    3: 6 6 .\n    4: . . 1\n"


def test_betti_of_b3(files):
    code, text = call("betti", "--poset", files / "b3.txt", "--debug-crosscheck")
    assert code == 0
    assert text == "        0  1  2  3\ntotal:  8 12  6  1\n    3:  8 12  6  1\n"
    code, text = call("betti", "--poset", files / "b3.txt", "--json")
    assert [r["beta"] for r in json.loads(text)] == [8, 12, 6, 1]


def test_hibi_golden(files):
    code, text = call("hibi", "--poset", files / "fig.txt", "--segment", "{a},{b}")
    assert code == 0
    assert text == "ring xa xb xc xd ya yb yc yd\nxb*ya*yc*yd\nxa*yb*yc*yd\n"


def test_pipeline_hibi_into_betti(files):
    hibi = subprocess.run(
        [sys.executable, "-m", "hibilab.cli", "hibi", "--lattice-from-poset", str(files / "b3.txt"), "--segment", "all"],
        capture_output=True, text=True, check=True,
    )
    betti = subprocess.run(
        [sys.executable, "-m", "hibilab.cli", "betti"], input=hibi.stdout, capture_output=True, text=True
    )
    assert betti.returncode == 0
    assert betti.stdout.splitlines()[1].split()[1:] == ["8", "12", "6", "1"]


def test_check_linear_one_line_band(files):
    code, text = call("check-linear", "--poset", files / "b3.txt", "--band", 1, 1)
    assert code == 1
    assert text.splitlines()[0] == "linear resolution: false"
    assert "p=ab not in I and meet of N(p) = ∅ not in J" in text
    code, text = call("check-linear", "--poset", files / "fig.txt", "--band", 1, 3, "--debug-crosscheck")
    assert code == 0 and text == "linear resolution: true\n"


def test_check_equal_json(files):
    code, text = call("check-equal", "--poset", files / "fig.txt", "--band", 1, 3, "--json")
    assert code == 0 and json.loads(text) == {"verdict": True, "witnesses": []}


def test_empty_split(files):
    code, text = call(
        "empty-split", "--poset", files / "b3.txt", "--ideal", "{},{a},{b},{c}", "--coideal", "{a,b},{a,c},{b,c},{a,b,c}"
    )
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "degree: 4" and len(lines) == 8
    assert "  xa*xb*yb*yc = lcm(u_ab, u_a)" in lines


def test_graph_commands(files):
    code, text = call("classify-graph", "--complex", files / "g.txt")
    assert code == 0 and "order: x1 < x2" in text
    code, _ = call("classify-graph", "--complex", files / "sq.txt")
    assert code == 1
    code, text = call("segment-of-complex", "--complex", files / "g.txt")
    assert code == 0 and text == "segment (3 elements): {} {x1} {x1,x2}\n"
    code, text = call("covers", "--complex", files / "g.txt")
    assert text == "x1 x2\nx1 x4\nx3 x4\nunmixed: yes\n"


def test_birkhoff_and_dual(files):
    code, text = call("birkhoff", "--poset", files / "fig.txt")
    assert text.splitlines()[:3] == ["distributive: yes", "join-irreducibles: a b c d", "covers: b < d, c < d"]
    code, text = call("dual", "--poset", files / "fig.txt")
    assert text.splitlines()[0] == "dual poset covers: abc < ab, abc < ac"
    code, text = call("ideals", "--poset", files / "fig.txt")
    assert text.splitlines()[0] == "10 ideals"


def test_emit_complex(files):
    code, text = call("betti", "--poset", files / "b3.txt", "--emit-complex")
    doc = json.loads(text)
    assert [len(t) for t in doc["terms"]] == [8, 12, 6, 1]
    assert {"row", "col", "sign", "variable"} == set(doc["differentials"][0]["entries"][0])


def test_exit_codes_for_errors(files, capsys):
    bad = files / "bad.txt"
    bad.write_text("poset 3\n0 < 9\n")
    code, _ = call("ideals", "--poset", bad)
    assert code == 2
    assert "line 2" in capsys.readouterr().err
    code, _ = call("segment-of-complex", "--complex", files / "sq.txt")
    assert code == 2
    code, _ = call("check-equal", "--poset", files / "b3.txt", "--ideal", "{}", "--coideal", "{a,b,c}")
    assert code == 2
    code, _ = call("ideals", "--poset", files / "missing.txt")
    assert code == 2
    with pytest.raises(SystemExit):
        run(["no-such-command"])


def test_non_cover_warning(files, capsys):
    p = files / "shortcut.txt"
    p.write_text("poset 3\n0 < 1\n1 < 2\n0 < 2\n")
    code, text = call("ideals", "--poset", p)
    assert code == 0 and text.startswith("4 ideals")
    assert "not a cover" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["betti", "--poset", "fig.txt", "--segment", "ab,ac,bc,abc,bcd", "--json"],
        ["sweep", "--max-size", "2"],
        ["birkhoff", "--poset", "fig.txt", "--json"],
        ["check-linear", "--poset", "b3.txt", "--band", "1", "2"],
    ],
)
def test_deterministic_output(files, argv):
    argv = [str(files / a) if a.endswith(".txt") else a for a in argv]
    first = call(*argv)
    assert call(*argv) == first


def test_sweep_small():
    code, text = call("sweep", "--max-size", 3, "--json")
    assert code == 0
    res = json.loads(text)
    assert all(v["mismatches"] == 0 and v["cases"] > 0 for v in res.values())
