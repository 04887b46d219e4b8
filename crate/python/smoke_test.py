"""Smoke test for the pyquatherm extension.

Build first:  cargo build --release -p quatherm-py
Then run:     python3 python/smoke_test.py [path/to/libpyquatherm.so]
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import subprocess
import sys
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load(path):
    loader = importlib.machinery.ExtensionFileLoader("pyquatherm", str(path))
    spec = importlib.util.spec_from_file_location("pyquatherm", path, loader=loader)
    mod = importlib.util.module_from_spec(spec)
    loader.exec_module(mod)
    return mod


def check_schema():
    binary = ROOT / "target" / "release" / "quatherm"
    if not binary.exists():
        print("skip: CLI binary not built")
        return
    try:
        import jsonschema
    except ImportError:
        print("skip: jsonschema not installed")
        return
    schema = json.loads((ROOT / "docs" / "report.schema.json").read_text())
    out = subprocess.run(
        [str(binary), "density", "--p", "3", "--ell", "2", "--alpha", "0"],
        check=True, capture_output=True, text=True,
    ).stdout
    report = json.loads(out)
    jsonschema.validate(report, schema)
    assert report[1]["data"] == {"count": "972", "normalized": "4/3", "stable": True}
    print("ok: CLI output matches the report schema")


def main():
    default = ROOT / "target" / "release" / "libpyquatherm.so"
    q = load(pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else default)

    r = q.density(3, 1, [0])
    assert r["count"] == 36 and r["normalized"] == Fraction(4, 3), r

    closed = q.density_closed([1, 1])
    assert closed(3) == 80, str(closed)
    assert q.density_closed([0])(3) == Fraction(4, 3)

    text, symmetric = q.psi([-1, -1])
    assert symmetric and text == "(q - 1)", text

    assert q.orbit_volume([1, 1])(3) == Fraction(2, 5)
    assert q.pairing([1, 1], [1, 1]) == q.orbit_volume([1, 1])
    assert q.pairing([0, 0], [2, 0])(3) == 0

    verdicts = q.ideal_membership(3, [[0, 0, 0], [2, 0, 0]], [3])
    assert all(member for _, _, member in verdicts), verdicts

    try:
        q.density(3, 1, [2, 0])
    except q.LevelTooSmall:
        pass
    else:
        raise AssertionError("level 1 should be rejected for entry 2")

    try:
        q.density(3, 2, [0, 0], budget=10)
    except q.BudgetExceeded:
        pass
    else:
        raise AssertionError("tiny budget should be exceeded")

    records = q.verify("fast")
    failing = [r["name"] for r in records if r["status"] == "fail"]
    print(f"ok: bindings; fast suite {len(records)} records, failing: {failing}")

    check_schema()


if __name__ == "__main__":
    main()
