"""Validates `confdec check --json` reports on the corpus against the schema."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main(binary, schema_path, data_dir):
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    files = sorted(pathlib.Path(data_dir).glob("*.trs"))
    for path in files:
        proc = subprocess.run([binary, "check", str(path), "--json"], capture_output=True, text=True)
        if proc.returncode not in (0, 1, 2):
            print(f"{path.name}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        report = json.loads(proc.stdout)
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        for e in errors:
            print(f"{path.name}: {'/'.join(map(str, e.path))}: {e.message}")
        failures += bool(errors)
        if not errors:
            print(f"{path.name}: {report['verdict']} ok")
    if not files:
        print("no corpus files")
        return 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:4]))
