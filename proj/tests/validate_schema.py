#!/usr/bin/env python3
"""Validate CLI JSON reports against the shipped schema.

Usage: validate_schema.py <fourneg binary> <schema.json>
"""
import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    (["check", "catalog:O6"], 0),
    (["check", "catalog:B3"], 0),
    (["contexts", "catalog:MO2"], 0),
    (["presheaf", "catalog:B3"], 0),
    (["daseinise", "catalog:O6", "x"], 0),
    (["starsuite", "catalog:MO2"], 0),
    (["internal", "catalog:O6"], 0),
    (["bridge", "catalog:MO3"], 0),
    (["nogo", "catalog:B2"], 0),
    (["residuate", "catalog:B2"], 0),
    (["catalog"], 0),
    (["catalog", "O6"], 0),
    (["all", "catalog:O6"], 0),
    (["all", "catalog:B1"], 0),
    (["logic", "check", "--model", "subclop:O6", "--sequent", "p |- **p"], 0),
    (["logic", "axioms", "--model", "chain:3"], 0),
    (["logic", "rules", "--model", "subclop:B2"], 0),
    (["logic", "saturate", "--logic", "akchurin", "--depth", "1", "--vars", "2"], 0),
    (["logic", "countermodel", "--sequent", "@@p |- p"], 0),
]


def run(binary, args):
    return subprocess.run([binary] + args, capture_output=True, text=True, check=False)


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args, expected in COMMANDS:
        name = " ".join(args)
        as_json = run(binary, args + ["--json"])
        human = run(binary, args)
        problems = []
        if as_json.returncode != expected or human.returncode != expected:
            problems.append(f"exit {as_json.returncode}/{human.returncode}, expected {expected}")
        try:
            report = json.loads(as_json.stdout)
        except json.JSONDecodeError as e:
            problems.append(f"not JSON: {e}")
            report = None
        if report is not None:
            problems += [e.message for e in validator.iter_errors(report)]
            ids = [c["id"] for s in report["sections"] for c in s["claims"]]
            missing = [i for i in ids if f"[{i}]" not in human.stdout]
            if missing:
                problems.append(f"claim ids absent from human output: {missing[:5]}")
            if len(ids) != len(set(ids)):
                problems.append("duplicate claim ids")
            flagged = sum(c["violation"] for s in report["sections"] for c in s["claims"])
            if flagged != report["violations"]:
                problems.append("violation count does not match the claims")
        status = "ok" if not problems else "FAIL"
        print(f"{status}: {name}")
        for p in problems:
            print(f"    {p}")
        failures += bool(problems)
    print(f"{len(COMMANDS) - failures}/{len(COMMANDS)} reports valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
