"""Runs each advdiff subcommand on a small configuration and validates the
emitted manifests against schemas/manifest.schema.json.

usage: validate_outputs.py ADVDIFF_BINARY SCHEMA_DIR WORK_DIR
"""

import csv
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

RUNS = {
    "simulate_zero": (["simulate", "--family", "zero", "--t-end", "0.2", "--n", "401"], "simulate"),
    "simulate_compact": (["simulate", "--family", "compact", "--t-end", "0.1", "--n", "401"], "simulate"),
    "simulate_radial": (["simulate", "--family", "selfsim_radial", "--d", "3", "--t-end", "0.2",
                         "--n", "1001", "--L", "30"], "simulate"),
    "simulate_gaussian": (["simulate", "--family", "gaussian", "--gamma", "4", "--beta", "0.45",
                           "--t-end", "0.3", "--n", "1025"], "simulate"),
    "profile_1": (["profile", "--d", "1"], "profile"),
    "profile_3": (["profile", "--d", "3"], "profile"),
    "phase_2": (["phase", "--d", "2"], "phase"),
    "duhamel": (["duhamel"], "duhamel"),
    "verify_a7": (["verify", "--only", "A7"], "verify"),
}


def run(binary, out, args):
    proc = subprocess.run([binary, "--out", str(out), *args], capture_output=True, text=True)
    if proc.returncode != 0:
        raise SystemExit(f"{args} exited with {proc.returncode}:\n{proc.stderr}")


def main():
    binary, schema_dir, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schema = json.loads((schema_dir / "manifest.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)
    shutil.rmtree(work, ignore_errors=True)
    failures = 0
    for name, (args, command) in RUNS.items():
        out = work / name
        run(binary, out, args)
        manifest = json.loads((out / f"{command}.json").read_text())
        errors = sorted(validator.iter_errors(manifest), key=lambda e: list(e.path))
        for e in errors:
            print(f"{name}: {'/'.join(map(str, e.path))}: {e.message}")
        failures += len(errors)
        for output in manifest["outputs"]:
            with open(out / output, newline="") as f:
                header = next(csv.reader(f))
            if not header or any(not h for h in header):
                print(f"{name}: {output} has an incomplete header")
                failures += 1
        print(f"{name}: {'ok' if not errors else 'INVALID'}")

    # Identical configuration, identical bytes.
    again = work / "phase_2_again"
    run(binary, again, RUNS["phase_2"][0])
    for f in ("phase.csv", "phase.json"):
        if (again / f).read_bytes() != (work / "phase_2" / f).read_bytes():
            print(f"determinism: {f} differs between identical runs")
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
