import json
import os

from gentlebands.cli import main

from conftest import DATA

KRON = os.path.join(DATA, "kronecker.json")
GLUED = os.path.join(DATA, "glued_kronecker.json")
FIVE = os.path.join(DATA, "five_vertex.json")
LOOP = os.path.join(DATA, "loop_no_relation.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_validate(capsys):
    code, out = run(capsys, "validate", KRON)
    assert code == 0 and "gentle" in out
    code, out = run(capsys, "validate", LOOP)
    assert code == 1 and "relation-free cycle" in out
    code, out = run(capsys, "validate", GLUED)
    assert code == 0


def test_strings_bands_diagrammes(capsys):
    code, out = run(capsys, "strings", KRON, "--dim", "1,1")
    assert code == 0 and out.split() == ["e_1", "e_2", "a", "b"]
    code, out = run(capsys, "bands", KRON, "--dim", "1,1")
    assert out.split() == ["(a.b-)"]
    code, out = run(capsys, "diagrammes", KRON, "--dim", "1,1")
    assert len(out.splitlines()) == 4


def test_hom(capsys):
    code, out = run(capsys, "hom", KRON, "b.a-.b", "b.a-.b")
    assert code == 0 and out.strip() == "2"
    # End(M(B, lam, 1)) is one-dimensional: no substring pairs, identity only
    code, out = run(capsys, "hom", KRON, "(a.b-)", "(a.b-)", "--same-lambda")
    assert out.strip() == "1"
    code, out = run(capsys, "hom", KRON, "(a.b-)", "(a.b-)", "--same-lambda",
                    "--quasi", "2", "3")
    assert out.strip() == "2"


def test_hvec(capsys):
    code, out = run(capsys, "hvec", KRON, "{(a.b-)}", "--lmax", "4", "--format", "json")
    data = json.loads(out)
    assert data["entries"]["e_2"] == 1 and "e_1" not in data["entries"]


def test_moves_lists_band_band_resolution(capsys):
    code, out = run(capsys, "moves", GLUED, "{(b.a-.d-.c.d-.c), (a.b-)}", "--format", "json")
    data = json.loads(out)
    below = [json.loads(r) for r in data["below"]]
    assert any(rec["to"] == "{(a.b-.c-.d)^x2}" for rec in below)


def test_poset_dot(capsys):
    code, out = run(capsys, "poset", KRON, "--dim", "1,1", "--format", "dot",
                    "--show-h", "e_1,e_2,a,b")
    assert code == 0
    assert out.count("->") == 4 and out.count("label=") == 4


def test_poset_restricted(capsys):
    code, out = run(capsys, "poset", GLUED, "--dim", "2,4,2", "--restricted-bands",
                    "--format", "json")
    data = json.loads(out)
    assert len(data["nodes"]) == 6 and data["restricted"]


def test_poset_zero_dim(capsys):
    code, out = run(capsys, "poset", KRON, "--dim", "0,0")
    assert code == 0 and "1 diagrammes" in out


def test_identify(capsys, tmp_path):
    mod = {
        "dims": {"1": 2, "2": 2},
        "matrices": {"a": [["7/2", "0"], ["0", "1"]], "b": [["1", "0"], ["0", "0"]]},
    }
    path = tmp_path / "mod.json"
    path.write_text(json.dumps(mod))
    code, out = run(capsys, "identify", KRON, str(path))
    assert code == 0 and out.strip() == "{a, (a.b-)}"


def test_verify_kronecker(capsys):
    code, out = run(capsys, "verify", KRON, "--dim", "1,1", "--budget", "4")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert data["report"]["order_inclusion"]["coincide"]


def test_verify_five_vertex_zero_hom_pair(capsys):
    code, out = run(capsys, "verify", FIVE, "--dim", "1,1,2,1,1", "--budget", "12")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    # the sweep covered band-band pairs of total dimension 12
    assert data["report"]["oracle_equivalence"]["checked"] > 100
    assert data["report"]["oracle_equivalence"]["failures"] == []
    # the generated order embeds in the h-order; extra h-pairs are reported
    assert data["report"]["order_inclusion"]["violations"] == []


def test_determinism_across_runs(capsys):
    outs = set()
    for _ in range(2):
        code, out = run(capsys, "poset", KRON, "--dim", "2,2", "--format", "json", "--seed", "0")
        outs.add(out)
    assert len(outs) == 1
    code, out1 = run(capsys, "verify", KRON, "--dim", "1,1", "--seed", "3")
    code, out2 = run(capsys, "verify", KRON, "--dim", "1,1", "--seed", "3")
    assert out1 == out2
    code, out3 = run(capsys, "verify", KRON, "--dim", "1,1", "--seed", "4", "--jobs", "2")
    code, out4 = run(capsys, "verify", KRON, "--dim", "1,1", "--seed", "4", "--jobs", "1")
    assert out3 == out4


def test_bad_walk_is_reported(capsys):
    code = main(["hom", KRON, "zz", "a"])
    assert code == 2
