import csv
import re

import pytest
import yaml

from qbench.runner.report import CSV_HEADER, MalformedCsv, plot, read_table, tabulate, tabulate_rows
from qbench.runner.workflow import MalformedResults
from qbench.theory import ideal_p2

HEADER_LINE = "target,ancilla,phi,delta,ideal_prob,cert_prob,mitigated_cert_prob"


@pytest.fixture
def hardware(fixtures_dir):
    return yaml.safe_load((fixtures_dir / "hardware_sync_results.yml").read_text())


def _panels(svg: str) -> list[str]:
    return re.findall(r'<g class="panel">(.*?)</g>', svg, flags=re.S)


def test_tabulate_hardware_file(hardware, tmp_path):
    out = tmp_path / "t.csv"
    assert tabulate(hardware, out) == 8
    lines = out.read_text().splitlines()
    assert lines[0] == HEADER_LINE
    first = lines[1].split(",")
    assert first[:4] == ["0", "1", "0.0", "0.05"]
    assert float(first[4]) == 0.95
    assert float(first[5]) == pytest.approx(0.9450)
    assert float(first[6]) == pytest.approx(0.9464, abs=3e-3)
    assert out.read_text().endswith("\n")


def test_phi_keeps_full_precision(hardware, tmp_path):
    out = tmp_path / "t.csv"
    tabulate(hardware, out)
    rows = list(csv.DictReader(out.open()))
    assert rows[1]["phi"] == "0.8975979010256552"


def test_ideal_column_ignores_histograms(hardware):
    rows = tabulate_rows(hardware)
    for rec in hardware["data"]:
        rec["results_per_circuit"][0]["histogram"] = {"11": 10}
    assert [r.ideal_prob for r in tabulate_rows(hardware)] == [r.ideal_prob for r in rows]
    assert all(r.ideal_prob == ideal_p2(r.phi, r.delta) for r in rows)


def test_missing_mitigation_leaves_empty_cell(hardware, tmp_path):
    for rec in hardware["data"]:
        for c in rec["results_per_circuit"]:
            del c["mitigation_info"], c["mitigated_histogram"]
    out = tmp_path / "t.csv"
    tabulate(hardware, out)
    assert all(line.endswith(",") for line in out.read_text().splitlines()[1:])


def test_empty_data_gives_header_only(tmp_path):
    out = tmp_path / "t.csv"
    assert tabulate({"data": []}, out) == 0
    assert out.read_text() == HEADER_LINE + "\n"


def test_postselection_rows():
    hist0, hist1 = {"00": 450, "10": 50, "01": 300, "11": 200}, {"01": 400, "11": 100, "00": 300, "10": 200}
    doc = {"data": [{
        "target": 0, "ancilla": 1, "phi": 0.0, "delta": 0.05,
        "results_per_circuit": [{"name": "u_v0", "histogram": hist0}, {"name": "u_v1", "histogram": hist1}],
    }]}
    (row,) = tabulate_rows(doc)
    assert row.cert_prob == pytest.approx(0.85) and row.mitigated_cert_prob is None


def test_unknown_circuit_names_rejected(hardware):
    hardware["data"][0]["results_per_circuit"][0]["name"] = "w"
    with pytest.raises(MalformedResults):
        tabulate_rows(hardware)


def test_plot_has_three_series_and_deviation_panel(hardware, tmp_path):
    tabulate(hardware, tmp_path / "t.csv")
    plot(tmp_path / "t.csv", tmp_path / "p.svg")
    svg = (tmp_path / "p.svg").read_text()
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    probs, devs = _panels(svg)
    assert probs.count("<polyline") == 3
    assert devs.count("<polyline") == 2
    assert 'class="ideal_prob"' in probs


def test_plot_of_empty_table_has_axes_only(tmp_path):
    tabulate({"data": []}, tmp_path / "t.csv")
    plot(tmp_path / "t.csv", tmp_path / "p.svg")
    svg = (tmp_path / "p.svg").read_text()
    assert "<polyline" not in svg
    assert svg.count('class="axis"') == 4


def test_plot_skips_empty_mitigated_series(hardware, tmp_path):
    for rec in hardware["data"]:
        for c in rec["results_per_circuit"]:
            del c["mitigation_info"], c["mitigated_histogram"]
    tabulate(hardware, tmp_path / "t.csv")
    plot(tmp_path / "t.csv", tmp_path / "p.svg")
    probs, _ = _panels((tmp_path / "p.svg").read_text())
    assert probs.count("<polyline") == 2


@pytest.mark.parametrize("text", [
    "a,b\n",
    HEADER_LINE + "\n0,1,zero,0.05,0.95,0.9,\n",
    HEADER_LINE + "\n0,1,0.0,0.05\n",
    "",
])
def test_malformed_csv(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(MalformedCsv):
        read_table(path)
    with pytest.raises(MalformedCsv):
        plot(path, tmp_path / "p.svg")


def test_header_constant():
    assert ",".join(CSV_HEADER) == HEADER_LINE
