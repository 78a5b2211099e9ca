import json

import pytest

from conftest import tiny_config
from helpers import load_json
from sqom.cli import main
from sqom.experiments import config_to_dict


def write_config(tmp_path, **overrides):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config_to_dict(tiny_config(**overrides))),
                    encoding="utf-8")
    return path


def test_run_command_writes_outputs(tmp_path):
    config_path = write_config(tmp_path)
    out_dir = tmp_path / "out"
    code = main(["run", "--config", str(config_path), "--out", str(out_dir),
                 "--name", "cli_demo"])
    assert code == 0
    assert (out_dir / "cli_demo.csv").exists()
    manifest = load_json(out_dir / "cli_demo_manifest.json")
    assert manifest["name"] == "cli_demo"
    assert manifest["config"]["variant"] == "dsme_thermal"


def test_run_command_variant_and_mode_overrides(tmp_path):
    config_path = write_config(tmp_path)
    out_dir = tmp_path / "out"
    code = main(["run", "--config", str(config_path), "--out", str(out_dir),
                 "--variant", "sme_squeezed_bare", "--mode", "literal"])
    assert code == 0
    manifest = load_json(out_dir / "run_manifest.json")
    assert manifest["config"]["variant"] == "sme_squeezed_bare"
    assert manifest["config"]["mode"] == "literal"


def test_sweep_command(tmp_path):
    config_path = write_config(tmp_path, samples=10, t_max_kappa=0.2)
    out_dir = tmp_path / "out"
    code = main(["sweep", "--config", str(config_path), "--axis", "theta",
                 "--values", "0,1.5,3.0", "--out", str(out_dir),
                 "--name", "cli_sweep"])
    assert code == 0
    lines = (out_dir / "cli_sweep.csv").read_text().strip().split("\n")
    assert len(lines) == 4  # header + three points
    manifest = load_json(out_dir / "cli_sweep_manifest.json")
    assert manifest["values"] == [0.0, 1.5, 3.0]


def test_sweep_rejects_malformed_values(tmp_path, capsys):
    config_path = write_config(tmp_path)
    code = main(["sweep", "--config", str(config_path), "--axis", "r",
                 "--values", "0,zero", "--out", str(tmp_path / "out")])
    assert code == 2
    assert "values" in capsys.readouterr().err


def test_sweep_rejects_unsorted_values(tmp_path, capsys):
    config_path = write_config(tmp_path)
    code = main(["sweep", "--config", str(config_path), "--axis", "r",
                 "--values", "1.0,0.5", "--out", str(tmp_path / "out")])
    assert code == 2
    assert "increasing" in capsys.readouterr().err


def test_validate_command_passes():
    assert main(["validate"]) == 0


def test_unknown_preset_name_rejected(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["preset", "fig9", "--out", str(tmp_path)])
    assert info.value.code == 2


def test_missing_config_file_reports_error(tmp_path, capsys):
    code = main(["run", "--config", str(tmp_path / "absent.json"),
                 "--out", str(tmp_path / "out")])
    assert code == 2
    assert "absent.json" in capsys.readouterr().err
