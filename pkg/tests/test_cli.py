import json
import subprocess
import sys

import pytest

from helpers import complete_bipartite, cycle, path, star
from irrdecomp import Graph, parse_decomposition, parse_edge_list, serialize_edge_list, verify
from irrdecomp.cli import run
from irrdecomp.graph import split_graph_stream


@pytest.fixture
def write(tmp_path):
    def _write(name: str, content) -> str:
        p = tmp_path / name
        p.write_text(content if isinstance(content, str) else serialize_edge_list(content))
        return str(p)

    return _write


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- decompose and verify ----------------------------------------------------------


@pytest.mark.parametrize(
    "g, method",
    [
        (cycle(8), "auto"),
        (star(5), "bipartite"),
        (cycle(5).add_edges([(0, 5)]), "auto"),
        (Graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4)]), "general"),
        (Graph([(0, 1), (1, 2), (1, 3), (3, 4)]), "degenerate"),
    ],
)
def test_decompose_then_verify(capsys, write, g, method):
    gp = write("g.txt", g)
    code, out, _ = call(capsys, "decompose", gp, "--method", method)
    assert code == 0
    assert "# method:" in out
    cert_line = next(line for line in out.splitlines() if line.startswith("# certificate: "))
    assert json.loads(cert_line.split(": ", 1)[1])["valid"] is True
    d = parse_decomposition(g, out)
    assert verify(d).valid
    cp = write("c.txt", out)
    code, out, _ = call(capsys, "verify", gp, cp)
    assert code == 0 and json.loads(out)["valid"] is True


def test_decompose_is_deterministic(capsys, write):
    gp = write("g.txt", complete_bipartite(3, 5).add_edges([(0, 8), (8, 9)]))
    first = call(capsys, "decompose", gp, "--seed", "3")
    second = call(capsys, "decompose", gp, "--seed", "3")
    assert first == second


def test_decompose_report(capsys, write, tmp_path):
    gp = write("g.txt", cycle(6))
    rp = str(tmp_path / "r.json")
    code, _, _ = call(capsys, "decompose", gp, "--report", rp)
    assert code == 0
    report = json.loads(open(rp).read())
    assert set(report) == {"method", "classes", "bound", "valid", "timings", "seed"}
    assert report["method"] == "bipartite" and report["valid"] is True and report["bound"] == 9


def test_decompose_exceptional_exit_code(capsys, write):
    code, _, err = call(capsys, "decompose", write("g.txt", path(3)))
    assert code == 2 and "odd path" in err


def test_factor_gate_without_force(capsys, write):
    gp = write("g.txt", cycle(6))
    code, _, err = call(capsys, "decompose", gp, "--method", "factor")
    assert code == 4
    assert "edge connectivity 2 is below the required 16" in err


def test_factor_with_force(capsys, write):
    gp = write("g.txt", complete_bipartite(17, 15))
    code, out, _ = call(capsys, "decompose", gp, "--method", "factor", "--force")
    assert code == 0 and "# method: factor" in out


def test_factor_on_16_connected_input(capsys, write):
    gp = write("g.txt", complete_bipartite(16, 16))
    code, out, _ = call(capsys, "decompose", gp, "--method", "factor")
    assert code == 0
    assert parse_decomposition(complete_bipartite(16, 16), out).k == 2


def test_verify_invalid_and_incomplete(capsys, write):
    c4 = cycle(4)
    gp = write("g.txt", c4)
    code, out, _ = call(capsys, "verify", gp, write("bad.txt", "0 1 1\n2 3 1\n1 2 2\n0 3 2\n"))
    assert code == 1 and json.loads(out)["valid"] is False
    code, _, _ = call(capsys, "verify", gp, write("part.txt", "0 1 1\n"))
    assert code == 1
    code, out, _ = call(capsys, "verify", gp, write("ok.txt", "0 1 1\n1 2 1\n2 3 2\n0 3 2\n"), "--max-classes", "1")
    assert code == 1 and json.loads(out)["maxClasses"] == 1


def test_parse_errors_exit_4(capsys, write):
    code, _, err = call(capsys, "stats", write("g.txt", "0 1\n0 1\n"))
    assert code == 4 and "line 2" in err
    code, _, _ = call(capsys, "verify", write("g.txt", "0 1\n"), write("c.txt", "0 1 x\n"))
    assert code == 4
    code, _, _ = call(capsys, "stats", "/nonexistent/file")
    assert code == 4


def test_usage_errors_exit_4(capsys):
    assert call(capsys, "frobnicate")[0] == 4
    assert call(capsys, "decompose")[0] == 4
    assert call(capsys, "decompose", "x", "--method", "magic")[0] == 4


# -- chi ---------------------------------------------------------------------------------


def test_chi_odd_path(capsys, write):
    code, out, _ = call(capsys, "chi", write("g.txt", path(3)), "--exact")
    assert code == 2 and out.strip() == "exceptional: odd path"


def test_chi_values(capsys, write):
    code, out, _ = call(capsys, "chi", write("g.txt", cycle(6)), "--exact")
    assert (code, out.strip()) == (0, "chi_irr = 3")
    code, out, _ = call(capsys, "chi", write("g.txt", cycle(6)), "--exact", "--limit", "2")
    assert (code, out.strip()) == (0, "chi_irr > 2")
    code, out, _ = call(capsys, "chi", write("g.txt", complete_bipartite(3, 3)), "--exact", "--witness")
    lines = out.splitlines()
    assert lines[0] == "chi_irr = 2"
    assert verify(parse_decomposition(complete_bipartite(3, 3), "\n".join(lines[1:])), 2).valid


def test_chi_requires_exact(capsys, write):
    assert call(capsys, "chi", write("g.txt", cycle(4)))[0] == 4


# -- reduce-odd, generate, stats ------------------------------------------------------------


def test_reduce_odd(capsys, write):
    code, out, _ = call(capsys, "reduce-odd", write("g.txt", star(5)))
    assert code == 0
    assert out.splitlines()[-1] == "# remainder component sizes: 2"
    assert parse_edge_list(out).size == 3
    code, _, err = call(capsys, "reduce-odd", write("g.txt", cycle(3)))
    assert code == 2 and "odd cycle" in err


def test_generate_all_connected(capsys):
    code, out, _ = call(capsys, "generate", "--all-connected", "4")
    assert code == 0 and len(split_graph_stream(out)) == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["--random-bipartite", "4", "5", "0.5"],
        ["--random-degenerate", "3", "12"],
        ["--random-connected", "8", "12"],
    ],
)
def test_generate_random_is_seeded(capsys, argv):
    a = call(capsys, "generate", *argv, "--seed", "11")
    b = call(capsys, "generate", *argv, "--seed", "11")
    c = call(capsys, "generate", *argv, "--seed", "12")
    assert a == b and a[0] == 0
    assert parse_edge_list(a[1]).order > 0
    assert c[0] == 0


def test_generate_bad_number(capsys):
    assert call(capsys, "generate", "--random-bipartite", "4", "x", "0.5")[0] == 4


def test_stats(capsys, write):
    gp = write("g.txt", complete_bipartite(4, 4))
    code, out, _ = call(capsys, "stats", gp, "--json")
    assert code == 0
    assert json.loads(out) == {
        "order": 8,
        "size": 16,
        "parity": "even",
        "components": 1,
        "bipartite": True,
        "degeneracy": 4,
        "edge_connectivity": 4,
    }
    code, out, _ = call(capsys, "stats", write("h.txt", Graph([(0, 1), (2, 3), (3, 4)])))
    assert "edge_connectivity: -" in out and "parity: odd" in out


def test_module_entry_point(write):
    gp = write("g.txt", cycle(4))
    proc = subprocess.run(
        [sys.executable, "-m", "irrdecomp", "chi", gp, "--exact"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "chi_irr = 2"
