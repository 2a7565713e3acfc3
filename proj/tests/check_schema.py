"""Runs the ie binary over a spread of commands and validates every JSON report."""

import json
import subprocess
import sys

import jsonschema

CASES = [
    ["eval", "x^2", "--at", "x=H+eps"],
    ["eval", "exp(eps) + atan(H)"],
    ["st", "3 + eps"],
    ["classify", "1/H"],
    ["deriv", "sin(x)", "--at", "0"],
    ["limit", "(n+1)/n"],
    ["limit", "(-1)^n"],
    ["compare", "(-1)^n/n", "0"],
    ["compare", "1/n", "0"],
    ["cont", "abs(x)", "--at", "0"],
    ["ucont", "x^2", "--domain", "R"],
    ["ucont", "sqrt(x)", "--domain", "(0,1)"],
    ["uconv", "--sum", "n*x*exp(-n*x)", "--limit", "0"],
    ["stevin", "x^3 - 300*x - 33915024", "--bracket", "0,1000", "--digits", "6"],
    ["ivt", "x^2 - 2", "--bracket", "1,2", "-m", "3", "--iters", "4"],
    ["delta", "exp(x)", "--at", "0"],
    ["eval", "1/0"],
    ["stevin", "x^2 - 2", "--bracket", "2,3"],
]


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in CASES:
        proc = subprocess.run([binary, "--json", *args], capture_output=True, text=True)
        report = json.loads(proc.stdout)
        errors = list(validator.iter_errors(report))
        expected = {"ok": 0, "undecided": 2, "error": 1}[report["status"]]
        if errors or proc.returncode != expected:
            failures += 1
            print("FAIL", " ".join(args), proc.returncode, [e.message for e in errors])
        else:
            print("ok  ", " ".join(args))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
