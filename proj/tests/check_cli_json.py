"""Runs spc --json over a fixed command list, validates every document
against the schema and checks that repeated runs are byte-identical."""

import json
import subprocess
import sys

import jsonschema

SPC, SCHEMA = sys.argv[1], sys.argv[2]

# (arguments, expected exit status)
COMMANDS = [
    (["coeffs", "E o C"], 0),
    (["coeffs", "E o E"], 1),
    (["coeffs", "E o"], 2),
    (["egf", "C"], 0),
    (["enumerate", "C", "3"], 0),
    (["orbits", "S", "3"], 0),
    (["iso", "P", "E*E"], 0),
    (["iso", "D(P)", "L*L", "--upto", "3"], 0),
    (["natcount", "C", "D(C)", "--upto", "2"], 0),
    (["natenum", "X", "L", "--upto", "2"], 0),
    (["suite", "der_cyc", "--upto", "4"], 0),
    (["suite", "nonsense"], 1),
    (["monoid", "--mu", "concat", "--upto", "3"], 0),
    (["monoid", "--mu", "concat-reverse", "--upto", "3"], 0),
    (["algtensor", "E", "E", "--upto", "3"], 0),
    (["algtensor", "L", "E", "--upto", "3"], 1),
    (["terminal", "E", "--dyn", "adjL", "--upto", "3"], 0),
    (["terminal", "E", "--dyn", "tensor:X", "--upto", "3"], 0),
    (["terminal", "L", "--dyn", "adjL", "--upto", "3"], 1),
    (["homday", "X", "C", "--upto", "4"], 0),
    (["solve", "--op", "1 + X:0", "--upto", "4"], 0),
    (["solve", "--op", "1 + X:1", "--upto", "4"], 0),
    (["solve", "--op", "1 + X:", "--upto", "4"], 2),
    (["fixcheck", "L", "--op", "1 + X:0", "--upto", "4"], 0),
]


def run(args):
    p = subprocess.run([SPC, "--json", *args], capture_output=True, check=False)
    return p.returncode, p.stdout


def main():
    with open(SCHEMA, encoding="utf-8") as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args, status in COMMANDS:
        code, out = run(args)
        again = run(args)
        problems = []
        if code != status:
            problems.append(f"exit {code}, expected {status}")
        if again != (code, out):
            problems.append("output differs between runs")
        try:
            doc = json.loads(out)
            problems += [e.message for e in validator.iter_errors(doc)]
            if (doc.get("result") is None) != (status != 0):
                problems.append("result presence does not match the status")
            if status != 0 and not doc.get("diagnostics"):
                problems.append("no diagnostics on failure")
        except json.JSONDecodeError as e:
            problems.append(f"not JSON: {e}")
        print(("ok   " if not problems else "FAIL ") + " ".join(args))
        for p in problems:
            print("     " + p)
        failures += bool(problems)
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
