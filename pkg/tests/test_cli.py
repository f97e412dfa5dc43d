import shutil

import pytest
import yaml

from qbench.runner.cli import main


@pytest.fixture
def workdir(tmp_path, fixtures_dir, monkeypatch):
    shutil.copy(fixtures_dir / "experiment.yml", tmp_path / "e.yml")
    (tmp_path / "b.yml").write_text("name: local\nasynchronous: false\nseed: 3\n")
    (tmp_path / "ba.yml").write_text("name: local\nasynchronous: true\nseed: 3\n")
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_benchmark_to_file(workdir):
    assert main(["cert-fourier", "benchmark", "e.yml", "b.yml", "--output", "r.yml"]) == 0
    doc = yaml.safe_load((workdir / "r.yml").read_text())
    assert len(doc["data"]) == 8


def test_benchmark_to_stdout(workdir, capsys):
    assert main(["cert-fourier", "benchmark", "e.yml", "b.yml"]) == 0
    assert len(yaml.safe_load(capsys.readouterr().out)["data"]) == 8


def test_async_workflow(workdir, capsys):
    assert main(["cert-fourier", "benchmark", "e.yml", "ba.yml", "--output", "a.yml"]) == 0
    assert (workdir / ".qbench_jobs").is_dir()
    assert main(["cert-fourier", "status", "a.yml"]) == 0
    assert yaml.safe_load(capsys.readouterr().out) == {"DONE": 1}
    assert main(["cert-fourier", "resolve", "a.yml", "res.yml"]) == 0
    assert main(["cert-fourier", "tabulate", "res.yml", "t.csv"]) == 0
    assert main(["cert-fourier", "plot", "t.csv", "p.svg"]) == 0
    # noiseless backend: no mitigated series in either panel
    assert (workdir / "p.svg").read_text().count("<polyline") == 3


def test_unsupported_benchmark_type(workdir, capsys):
    assert main(["disc-fourier", "benchmark", "e.yml", "b.yml"]) == 1
    assert "unsupported benchmark type" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [], ["cert-fourier"], ["cert-fourier", "benchmark", "e.yml"], ["cert-fourier", "fly"],
    ["cert-fourier", "benchmark", "e.yml", "b.yml", "--colour"],
])
def test_usage_errors(workdir, argv):
    assert main(argv) == 1


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "cert-fourier" in capsys.readouterr().out


def test_runtime_errors(workdir, capsys):
    assert main(["cert-fourier", "benchmark", "missing.yml", "b.yml"]) == 2
    (workdir / "bad.yml").write_text("type: certification-fourier\n")
    assert main(["cert-fourier", "benchmark", "bad.yml", "b.yml"]) == 2
    assert "qubits" in capsys.readouterr().err
    (workdir / "junk.csv").write_text("x\n")
    assert main(["cert-fourier", "plot", "junk.csv", "p.svg"]) == 2
    (workdir / "a.yml").write_text(yaml.safe_dump({
        "metadata": {"backend_description": {"name": "local"}}, "data": [{"job_id": "0" * 16, "keys": []}],
    }))
    assert main(["cert-fourier", "status", "a.yml"]) == 2
    assert main(["cert-fourier", "resolve", "a.yml", "r.yml"]) == 2
