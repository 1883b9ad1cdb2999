import json

import numpy as np
import pytest

from geosym.cli import main
from geosym.fileio import operator_to_dict, save_json, state_from_dict, state_to_dict
from geosym.operators import HermitianOperator, projector
from geosym.tensor_core import basis_state, ghz_state, superposition, w_state


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, state in [("ghz3", ghz_state(3)), ("zero", basis_state("000")), ("w3", w_state(3))]:
        paths[name] = tmp_path / f"{name}.json"
        save_json(state_to_dict(state), paths[name])
    paths["bad"] = tmp_path / "bad.json"
    paths["bad"].write_text(json.dumps({"n_parties": 1, "local_dim": 2, "amplitudes": [[1, 0], [1, 0]]}))
    paths["matrix"] = tmp_path / "m.json"
    paths["matrix"].write_text(json.dumps({"dim": 2, "entries": [[0, 0], [1, 0], [1, 0], [0, 0]]}))
    singlet = HermitianOperator(2, 2, projector(superposition({"01": 1, "10": -1}).amplitudes))
    paths["op"] = tmp_path / "op.json"
    save_json(operator_to_dict(singlet), paths["op"])
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_measure_ghz3(files, capsys):
    code, out, _ = run(capsys, "measure", files["ghz3"])
    assert code == 0
    assert "G        = 0.707106781" in out
    assert "E_G      = 0.5" in out
    assert "eps_G    = 1" in out
    assert "symmetric maximizer: yes" in out


def test_measure_product_and_symmetric_only(files, capsys):
    code, out, _ = run(capsys, "measure", files["zero"], "--json")
    doc = json.loads(out)
    assert code == 0 and doc["overlap_g"] == pytest.approx(1) and doc["geometric_measure"] == pytest.approx(0)
    code, out, _ = run(capsys, "measure", files["w3"], "--symmetric-only")
    assert code == 0 and "G        = 0.666666667" in out


def test_measure_json_maximizer_reloads(files, capsys):
    _, out, _ = run(capsys, "measure", files["ghz3"], "--json")
    doc = json.loads(out)
    state = state_from_dict(doc["maximizer_state"])
    assert np.array_equal(state.amplitudes, state_from_dict(json.loads(json.dumps(doc["maximizer_state"]))).amplitudes)


def test_measure_errors(files, capsys):
    code, _, err = run(capsys, "measure", files["bad"])
    assert code == 2 and "amplitudes" in err
    code, _, err = run(capsys, "measure", files["ghz3"], "--field", "real", "--restarts", "5")
    assert code == 0
    with pytest.raises(SystemExit) as exc:
        main(["measure", str(files["ghz3"]), "--bogus"])
    assert exc.value.code == 2


def test_takagi(files, capsys):
    code, out, _ = run(capsys, "takagi", files["matrix"])
    assert code == 0 and "values   = 1, 1" in out
    code, out, _ = run(capsys, "takagi", files["matrix"], "--json")
    assert json.loads(out)["values"] == pytest.approx([1, 1])


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--n", 4, "--k", 2)
    assert code == 0 and out.strip() == "S=5 T=6 X=1"
    _, out, _ = run(capsys, "dims", "--n", 5, "--k", 3, "--json")
    assert json.loads(out) == {"n": 5, "k": 3, "S": 21, "T": 51, "X": 30}


def test_subspace_basis_roundtrip(capsys):
    code, out, _ = run(capsys, "subspace-basis", "--which", "X", "--n", 4, "--k", 2)
    doc = json.loads(out)
    assert code == 0 and len(doc["vectors"]) == 1
    state = state_from_dict(doc["vectors"][0])
    assert json.loads(json.dumps(state_to_dict(state))) == doc["vectors"][0]


def test_operator_max(files, capsys):
    code, out, _ = run(capsys, "operator-max", files["op"])
    assert code == 0 and "G_hat = 0.5" in out
    code, out, _ = run(capsys, "operator-max", files["op"], "--symmetric", "--json")
    assert json.loads(out)["value"] == pytest.approx(0, abs=1e-9)


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "lemma1", "--n", 3, "--k", 2, "--trials", 5)
    assert code == 0 and json.loads(out)["passed"]
    code, _, err = run(capsys, "verify", "lemma1", "--n", 2)
    assert code == 2 and "N >= 3" in err


def test_verify_is_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "observation1", "--trials", 10, "--seed", 3)
    _, b, _ = run(capsys, "verify", "observation1", "--trials", 10, "--seed", 3)
    assert a == b


def test_counterexamples(capsys):
    code, out, _ = run(capsys, "counterexamples")
    assert code == 0
    assert sum(line.startswith("PASS") for line in out.splitlines()) == 4
    code, out, _ = run(capsys, "counterexamples", "--json")
    assert json.loads(out)["passed"]
