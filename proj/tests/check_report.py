#!/usr/bin/env python3
# Copyright 2026 The kpistat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Runs the full pipeline twice, checks byte-identical outputs, the report schema and SVG shapes.

Exits 77 (ctest skip) when the jsonschema package is unavailable.
"""

import json
import pathlib
import shutil
import subprocess
import sys

try:
    import jsonschema
except ImportError:
    print("jsonschema not installed; skipping")
    sys.exit(77)

EXPECTED_FILES = {
    "report.json", "correlation_r.csv", "correlation_p.csv", "correlation_table.txt",
    "distances.csv", "partition.csv", "dendrogram.nwk", "mds_coordinates.csv",
    "ca_coordinates.csv", "factor_loadings.csv", "dendrogram.svg", "mds.svg", "ca.svg",
}


def run(cli, out):
    shutil.rmtree(out, ignore_errors=True)
    proc = subprocess.run([cli, "pipeline", "--builtin", "table1_kpi", "--out", str(out)],
                          capture_output=True, text=True)
    if proc.returncode != 0:
        sys.exit(f"pipeline failed ({proc.returncode}): {proc.stderr}")
    return proc.stdout


def main():
    cli, schema_path, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    a, b = work / "a", work / "b"
    out_a, out_b = run(cli, a), run(cli, b)
    errors = []
    if out_a != out_b:
        errors.append("stdout differs between runs")

    names = {p.name for p in a.iterdir()}
    if names != EXPECTED_FILES:
        errors.append(f"unexpected file set: {sorted(names ^ EXPECTED_FILES)}")
    for name in sorted(names):
        if (a / name).read_bytes() != (b / name).read_bytes():
            errors.append(f"{name} differs between runs")

    report = json.loads((a / "report.json").read_text())
    jsonschema.validate(report, json.loads(schema_path.read_text()))
    if str(work) in (a / "report.json").read_text():
        errors.append("report.json embeds the output directory")

    n_samples = len(report["samples"])
    n_vars = len(report["variables"])
    dendro = (a / "dendrogram.svg").read_text()
    checks = [
        ("dendrogram brackets", dendro.count('<path class="bracket"'), n_samples - 1),
        ("dendrogram leaf labels", dendro.count('<text class="leaf-label"'), n_samples),
        ("mds points", (a / "mds.svg").read_text().count('<circle class="point"'), n_samples),
        ("ca row points", (a / "ca.svg").read_text().count('<circle class="point"'), n_samples),
        ("ca column points", (a / "ca.svg").read_text().count('<rect class="point-alt"'), n_vars),
    ]
    for what, got, want in checks:
        if got != want:
            errors.append(f"{what}: {got} != {want}")

    for e in errors:
        print("error:", e)
    print("report outputs:", "ok" if not errors else f"{len(errors)} problem(s)")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
