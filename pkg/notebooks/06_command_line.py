"""
Command-line round trip
=======================

``weylwig wigner`` writes a Wigner function as CSV with a JSON envelope and
summary; ``weylwig quantize`` turns it back into an operator kernel.
"""

import json
import tempfile
from pathlib import Path

from weylwig.cli import main

with tempfile.TemporaryDirectory() as d:
    out = Path(d)
    main(["wigner", "--state", "fock:1", "--N", "64", "--out", str(out / "w.csv")])
    summary = json.loads((out / "w.summary.json").read_text())
    print("min", summary["min"], "max", summary["max"], "bound ok", summary["bound_ok"])
    main(["quantize", str(out / "w.csv"), "--kind", "wigner", "--N", "64", "--roundtrip",
          "--out", str(out / "op.json")])
    print("round-trip residual", json.loads((out / "op.json").read_text())["roundtrip_residual"])
    rc = main(["check", "--suite", "bounds", "--N", "64", "--out", str(out / "report.json")])
    print("check exit code", rc)
