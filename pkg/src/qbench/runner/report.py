"""CSV tabulation of resolved results and a two-panel SVG summary plot."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from math import pi
from pathlib import Path
from xml.sax.saxutils import escape

from ..schemes import DIRECT_SUM, POSTSELECTION, compute_mitigated_p2, compute_p2_direct_sum, compute_p2_postselection
from ..theory import ideal_p2
from .config import IoError
from .workflow import MalformedResults, validate_resolved

CSV_HEADER = ("target", "ancilla", "phi", "delta", "ideal_prob", "cert_prob", "mitigated_cert_prob")


class MalformedCsv(ValueError):
    pass


@dataclass(frozen=True)
class TabulatedRow:
    target: int
    ancilla: int
    phi: float
    delta: float
    ideal_prob: float
    cert_prob: float
    mitigated_cert_prob: float | None = None

    def cells(self) -> list[str]:
        mitigated = "" if self.mitigated_cert_prob is None else f"{self.mitigated_cert_prob:.6g}"
        return [
            str(self.target), str(self.ancilla), repr(self.phi), repr(self.delta),
            f"{self.ideal_prob:.6g}", f"{self.cert_prob:.6g}", mitigated,
        ]


def _method_of(names: list[str]) -> str:
    if names == ["u"]:
        return DIRECT_SUM
    if sorted(names) == ["u_v0", "u_v1"]:
        return POSTSELECTION
    raise MalformedResults(f"unrecognised circuit names {names}")


def tabulate_rows(doc) -> list[TabulatedRow]:
    rows = []
    for rec in validate_resolved(doc):
        by_name = {c["name"]: c for c in rec["results_per_circuit"]}
        method = _method_of(list(by_name))
        if method == DIRECT_SUM:
            cert = compute_p2_direct_sum(by_name["u"]["histogram"])
        else:
            cert = compute_p2_postselection(by_name["u_v0"]["histogram"], by_name["u_v1"]["histogram"])
        mitigated = None
        if all("mitigated_histogram" in c for c in by_name.values()):
            quasi = {name: c["mitigated_histogram"] for name, c in by_name.items()}
            mitigated = compute_mitigated_p2(method, quasi["u"] if method == DIRECT_SUM else quasi)
        phi, delta = float(rec["phi"]), float(rec["delta"])
        rows.append(TabulatedRow(int(rec["target"]), int(rec["ancilla"]), phi, delta, ideal_p2(phi, delta), cert, mitigated))
    return rows


def tabulate(doc, csv_path) -> int:
    """Write one CSV row per (qubit pair, phi); returns the number of rows."""
    rows = tabulate_rows(doc)
    try:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            writer.writerows(r.cells() for r in rows)
    except OSError as exc:
        raise IoError(f"cannot write {csv_path}: {exc.strerror or exc}") from exc
    return len(rows)


def read_table(csv_path) -> list[dict]:
    try:
        with open(csv_path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            body = list(reader)
    except OSError as exc:
        raise IoError(f"cannot read {csv_path}: {exc.strerror or exc}") from exc
    if header is None or tuple(header) != CSV_HEADER:
        raise MalformedCsv("unexpected CSV header")
    out = []
    for n, cells in enumerate(body, start=2):
        if len(cells) != len(CSV_HEADER):
            raise MalformedCsv(f"line {n}: expected {len(CSV_HEADER)} cells")
        row = {}
        for name, cell in zip(CSV_HEADER, cells):
            if name == "mitigated_cert_prob" and cell == "":
                row[name] = None
                continue
            try:
                row[name] = float(cell)
            except ValueError:
                raise MalformedCsv(f"line {n}: {name} is not numeric: {cell!r}") from None
        out.append(row)
    return out


# --- SVG ----------------------------------------------------------------------

_W, _H = 720, 300
_LEFT, _RIGHT, _TOP, _BOTTOM = 60, 20, 30, 40
_COLORS = {"ideal_prob": "#1f77b4", "cert_prob": "#d62728", "mitigated_cert_prob": "#2ca02c"}


def _panel(title: str, series: list[tuple[str, list[tuple[float, float]]]], y_max: float, y0: int) -> list[str]:
    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM

    def sx(x):
        return _LEFT + pw * x / (2 * pi)

    def sy(y):
        return y0 + _TOP + ph * (1 - y / y_max)

    parts = [
        '<g class="panel">',
        f'<text x="{_LEFT}" y="{y0 + _TOP - 10}" font-size="13">{escape(title)}</text>',
        f'<line class="axis" x1="{_LEFT}" y1="{sy(0):.2f}" x2="{_LEFT + pw}" y2="{sy(0):.2f}" stroke="black"/>',
        f'<line class="axis" x1="{_LEFT}" y1="{sy(0):.2f}" x2="{_LEFT}" y2="{sy(y_max):.2f}" stroke="black"/>',
        f'<text x="{_LEFT + pw / 2}" y="{y0 + _H - 8}" font-size="12" text-anchor="middle">phi [rad]</text>',
    ]
    for tick in range(5):
        x = tick * pi / 2
        parts.append(f'<text x="{sx(x):.2f}" y="{sy(0) + 15:.2f}" font-size="10" text-anchor="middle">{x:.2f}</text>')
    for tick in range(3):
        y = y_max * tick / 2
        parts.append(f'<text x="{_LEFT - 6}" y="{sy(y) + 4:.2f}" font-size="10" text-anchor="end">{y:.3g}</text>')
    for name, points in series:
        if not points:
            continue
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in points)
        parts.append(f'<polyline class="{name}" fill="none" stroke="{_COLORS[name]}" stroke-width="1.5" points="{coords}"/>')
    parts.append("</g>")
    return parts


def plot(csv_path, svg_path) -> None:
    """Probabilities against phi, and absolute deviations from the ideal curve below.

    Each qubit pair gets its own polyline per series; empty series are skipped.
    """
    rows = sorted(read_table(csv_path), key=lambda r: (r["target"], r["ancilla"], r["phi"]))
    pairs = sorted({(r["target"], r["ancilla"]) for r in rows})
    probs, devs = [], []
    for pair in pairs:
        mine = [r for r in rows if (r["target"], r["ancilla"]) == pair]
        for name in _COLORS:
            probs.append((name, [(r["phi"], r[name]) for r in mine if r[name] is not None]))
            if name != "ideal_prob":
                devs.append((name, [(r["phi"], abs(r[name] - r["ideal_prob"])) for r in mine if r[name] is not None]))
    dev_max = max([y for _, pts in devs for _, y in pts] + [1e-3]) * 1.1
    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{2 * _H}" viewBox="0 0 {_W} {2 * _H}">',
        '<rect width="100%" height="100%" fill="white"/>',
        *_panel("type-II error probability", probs, 1.0, 0),
        *_panel("absolute deviation from ideal", devs, dev_max, _H),
        "</svg>",
    ]
    try:
        Path(svg_path).write_text("\n".join(body) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {svg_path}: {exc.strerror or exc}") from exc
