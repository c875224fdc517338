"""Validates `catclust cluster --format json` output against the result schema."""
import json
import subprocess
import sys

try:
    import jsonschema
except ImportError:
    print("jsonschema not installed; skipping")
    sys.exit(77)

cli, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)

runs = [
    ["cluster", "--method", m, "--fixture", "seven_event", "--format", "json"] + extra
    for m in ("reinforce", "cm", "grid")
    for extra in ([], ["--timing"], ["--shards", "3"])
]
for args in runs:
    out = subprocess.run([cli] + args, check=True, capture_output=True, text=True).stdout
    jsonschema.validate(json.loads(out), schema)
    print("ok:", " ".join(args))
