"""Validates the CLI's JSON output against the shipped schemas."""

import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])

schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.json")}
registry = Registry().with_resources(
    (s["$id"], Resource.from_contents(s)) for s in schemas.values()
)


def check(schema_name, *args, code=0):
    run = subprocess.run([cli, *args], capture_output=True, text=True)
    assert run.returncode == code, (args, run.returncode, run.stderr)
    doc = json.loads(run.stdout)
    Draft202012Validator(schemas[schema_name], registry=registry).validate(doc)
    return doc


check("chars.schema.json", "convert", "--e", "16", "--sigma", "-12", "--json")
check("chars.schema.json", "convert", "--b2plus", "3", "--b2minus", "5", "--json")
for m, n, code in [(2, 5, 0), (5, 2, 0), (2, 14, 0), (4, 5, 0), (8, 8, 0), (7, 7, 3), (6, 11, 0)]:
    doc = check("plan.schema.json", "plan", str(m), str(n), "--json", code=code)
    assert doc["point"] == {"m": m, "n": n}
    if doc["status"] == "realized":
        assert doc["model"] == f"R_{{{m},{n}}}", doc["model"]
        assert doc["descriptor"]["irreducible"] == "yes"
doc = check("scan.schema.json", "scan", "--stage", "core", "--json")
assert len(doc["open"]) == 31
print("schema checks passed")
