"""Every JSON artifact validates against its versioned schema in schemas/."""

import json
import math
import os
import subprocess
from pathlib import Path

import pytest

qfim = pytest.importorskip("qfim")
jsonschema = pytest.importorskip("jsonschema")

REPO_ROOT = Path(__file__).resolve().parents[2]
SCHEMA_DIR = REPO_ROOT / "schemas"


def load_schema(name):
    return json.loads((SCHEMA_DIR / name).read_text())


def validate(payload, schema_name):
    jsonschema.validate(payload, load_schema(schema_name))


def test_scenario_records_schema(tmp_path):
    config = {
        "scenario": "oat",
        "N": 6,
        "t_steps": 4,
        "t_max": 0.5,
        "format": "json",
        "output_dir": str(tmp_path),
        "report_times": [0.25],
        "outputs": {"commuting_sets": True, "qgt": True},
    }
    validate(config, "qfim-scenario-config.v1.schema.json")
    qfim.run_scenario(json.dumps(config))
    records = json.loads((tmp_path / "records.json").read_text())
    validate(records, "qfim-scenario-records.v1.schema.json")
    sets_report = json.loads((tmp_path / "commuting_sets_0.json").read_text())
    validate(sets_report, "qfim-commuting-sets.v1.schema.json")


def cli_json(args, cwd=None):
    cli = os.environ.get("QFIM_CLI")
    if not cli or not Path(cli).exists():
        pytest.skip("QFIM_CLI not set")
    out = subprocess.run([cli, *args], capture_output=True, text=True, check=True, cwd=cwd)
    return out.stdout


def test_cli_outputs_validate(tmp_path):
    eig = json.loads(cli_json(["qfim-at", "--scenario", "oat", "--N", "6", "--t", "0.2"]))
    validate(eig, "qfim-eigen.v1.schema.json")

    conn = json.loads(cli_json(["connect", "--n", "2", "--N", "3", "--generator", "Jz", "--target", "Jy"]))
    validate(conn, "qfim-connection.v1.schema.json")
    validate(conn["r_operator"], "qfim-operator.v1.schema.json")

    manifest = json.loads(
        cli_json(["basis-dump", "--n", "3", "--N", "2", "--out", str(tmp_path / "basis")])
    )
    validate(manifest, "qfim-basis-manifest.v1.schema.json")

    sets = json.loads(
        cli_json(["commuting-sets", "--scenario", "tat", "--N", "4", "--t", str(math.pi / 4)])
    )
    validate(sets, "qfim-commuting-sets.v1.schema.json")


def test_state_schema_roundtrip(tmp_path):
    space = qfim.enumerate_space(2, 3)
    psi = qfim.coherent_spin_state(space, 1.0, 0.5)
    payload = {
        "schema": "qfim-state.v1",
        "n": 2,
        "N": 3,
        "dim": 4,
        "ordering": "reverse-lex",
        "label": "css",
        "re": [float(x.real) for x in psi],
        "im": [float(x.imag) for x in psi],
    }
    validate(payload, "qfim-state.v1.schema.json")
    path = tmp_path / "state.json"
    path.write_text(json.dumps(payload))
    # the CLI consumes the same format for custom scenarios
    config = {
        "scenario": "custom",
        "N": 3,
        "t_steps": 3,
        "t_max": 0.3,
        "format": "json",
        "output_dir": str(tmp_path),
        "custom_state_file": str(path),
        "custom_hamiltonian_file": str(tmp_path / "ham.json"),
    }
    h = qfim.build_hamiltonian(space, "oat", 1.0)
    ham_payload = {
        "schema": "qfim-operator.v1",
        "n": 2,
        "N": 3,
        "dim": 4,
        "ordering": "reverse-lex",
        "label": "H",
        "matrix": {
            "re": [float(v.real) for v in h.flatten()],
            "im": [float(v.imag) for v in h.flatten()],
        },
    }
    validate(ham_payload, "qfim-operator.v1.schema.json")
    (tmp_path / "ham.json").write_text(json.dumps(ham_payload))
    qfim.run_scenario(json.dumps(config))
    records = json.loads((tmp_path / "records.json").read_text())
    validate(records, "qfim-scenario-records.v1.schema.json")
    assert len(records["records"]) == 3
