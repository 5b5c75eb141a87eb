#!/usr/bin/env python3
# Copyright 2026 The lpsnav Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Run the lpsnav CLI and validate its JSON output against the schemas.

usage: validate_output.py <lpsnav binary> <schema directory>
"""

import itertools
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

COMMANDS = [
    ["four-squares", "50", "5", "0", "0"],
    ["four-squares", "30", "5", "0", "0"],
    ["four-squares", "50", "5", "1", "2"],
    ["--mode", "fast", "four-squares", "1000000000000000000000000000001", "58", "1", "10"],
    ["navigate-diagonal", "5", "29", "1", "0"],
    ["navigate-diagonal", "5", "29", "0", "12"],
    ["--timing", "navigate-diagonal", "5", "41", "3", "4"],
    ["navigate", "5", "29", "1", "2", "3", "7"],
    ["predict-bounds", "5", "29", "1", "0"],
    ["predict", "5", "101", "1", "1"],
    ["verify", "5", "13"],
    ["verify", "5", "29"],
    ["np-reduce", "3", "1", "2"],
    ["--seed", "4", "np-reduce", "4", "2", "3"],
]


def run(binary, args):
    proc = subprocess.run([binary, *args], capture_output=True, check=False)
    return proc.returncode, proc.stdout.decode()


def gauss_mul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def np_solution(instance):
    """A point meeting the residues, built from the Gaussian primes."""
    q, a, b = (int(instance[k]) for k in ("q", "a", "b"))
    pis = [(int(p["re"]), int(p["im"])) for p in instance["witness"]["pi_list"]]
    for picks in itertools.product((False, True), repeat=len(pis)):
        for unit in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            z = unit
            for pi, conj in zip(pis, picks):
                z = gauss_mul(z, (pi[0], -pi[1]) if conj else pi)
            if (z[0] - a) % q == 0 and (z[1] - b) % q == 0:
                return z
    return None


def main():
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {}
    for path in schema_dir.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        schemas[path.name[: -len(".schema.json")]] = schema

    failures = 0
    outputs = []

    def check(args, expect_exit=0):
        nonlocal failures
        code, out = run(binary, args)
        label = " ".join(args)
        if code != expect_exit:
            print(f"FAIL exit {code}: {label}")
            failures += 1
            return None
        doc = json.loads(out)
        schema = schemas.get(doc.get("command"))
        if schema is None:
            print(f"FAIL no schema for {doc.get('command')}: {label}")
            failures += 1
            return None
        errors = list(jsonschema.Draft202012Validator(schema).iter_errors(doc))
        if errors:
            print(f"FAIL schema: {label}: {errors[0].message}")
            failures += 1
            return None
        if "--timing" not in args and run(binary, args)[1] != out:
            print(f"FAIL output differs between runs: {label}")
            failures += 1
        print(f"ok   {label}")
        outputs.append(doc)
        return doc

    for args in COMMANDS:
        check(args)

    reduced = [d for d in outputs if d["command"] == "np-reduce"]
    with tempfile.TemporaryDirectory() as tmp:
        for i, doc in enumerate(reduced):
            path = pathlib.Path(tmp) / f"instance{i}.json"
            path.write_text(json.dumps(doc))
            sol = np_solution(doc["instance"])
            if sol is not None:
                check(["np-decode", str(path), str(sol[0]), str(sol[1])])

    missing = set(schemas) - {d["command"] for d in outputs}
    if missing:
        print(f"FAIL commands never exercised: {sorted(missing)}")
        failures += 1
    print(f"{len(outputs)} outputs validated, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
