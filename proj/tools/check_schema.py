"""Validates pcurv JSON reports against docs/report-schema.json.

Usage: check_schema.py PCURV_BINARY SCHEMA
Exits 0 when every report validates; skips (exit 0) if jsonschema is missing.
"""
import json
import subprocess
import sys

RUNS = [
    ["verify", "kz", "--p", "5", "--samples", "3"],
    ["verify", "kz", "--p", "5", "--samples", "0"],
    ["verify", "pseudo-pencil"],
    ["verify", "qkz", "--p", "3", "--samples", "3"],
    ["verify", "cm-identity", "--n", "3", "--p", "7", "--samples", "2"],
    ["compute", "pseudo-pencil", "--p", "3"],
    ["compute", "kz", "--p", "5", "--hbar", "2"],
    ["suite", "quick"],
]


def main():
    try:
        import jsonschema
    except ImportError:
        print("jsonschema not installed; skipping")
        return 0
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in RUNS:
        out = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True, check=False)
        errors = list(validator.iter_errors(json.loads(out.stdout)))
        status = "ok" if not errors else "INVALID"
        print(f"{status}: {' '.join(args)}")
        for e in errors:
            print(f"  {e.json_path}: {e.message}")
        failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
