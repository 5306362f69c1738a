"""Runs the CLI and validates every report it prints against the shipped schema."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

exe, schema_path = sys.argv[1], sys.argv[2]
schema = json.loads(Path(schema_path).read_text())
validator = jsonschema.Draft202012Validator(schema)


def report(args, expect):
    p = subprocess.run([exe, *args], capture_output=True, text=True)
    if p.returncode != expect:
        sys.exit(f"{args}: exit {p.returncode}, expected {expect}\n{p.stderr}")
    doc = json.loads(p.stdout)
    errors = sorted(validator.iter_errors(doc), key=str)
    if errors:
        sys.exit(f"{args}: {errors[0].message} at {list(errors[0].path)}")
    return doc


with tempfile.TemporaryDirectory() as d:
    even = str(Path(d) / "even.json")
    generic = str(Path(d) / "generic.json")
    report(["solve", "--degree", "4", "--even", "--out", even], 0)
    report(["solve", "--degree", "4", "--out", generic], 0)
    kv = report(["verify", "--suite", "kv", "--associator", even], 1)
    assert any(c.get("witness") for c in kv["checks"])
    report(["verify", "--suite", "kv", "--associator", generic], 0)
    report(["verify", "--suite", "torsor", "--associator", even, "--degree", "3"], 0)
    report(["verify", "--suite", "cocycle", "--degree", "3"], 0)
    report(["verify", "--suite", "centralizer", "--degree", "3"], 0)
    everything = report(["verify", "--suite", "all", "--associator", generic], 0)
    assert everything["cap"] is None
print("reports match the schema")
