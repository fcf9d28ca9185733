"""Runs the agency binary over the fixtures and validates every JSON report
against schema/report.schema.json. Usage: validate_reports.py <agency> <schema>"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

FIXTURES = ["copy", "pa", "ca2", "copy-paloop", "blind-paloop"]


def main() -> int:
    agency, schema_path = str(Path(sys.argv[1]).resolve()), Path(sys.argv[2])
    schema = json.loads(schema_path.read_text())
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        d = Path(tmp)

        def run(*args: str) -> subprocess.CompletedProcess:
            return subprocess.run([agency, *args], capture_output=True, text=True, cwd=d)

        for name in FIXTURES:
            (d / f"{name}.json").write_text(run("fixture", name).stdout)
        (d / "all-stps.json").write_text('{"builtin": "all-stps", "max_domain_size": 4}')
        (d / "pa-loop.json").write_text('{"builtin": "pa-loop"}')
        (d / "bad.json").write_text('{\n "spatial": ["a"],\n  x\n}')
        (d / "pair.json").write_text(json.dumps([
            {"id": "x", "assignment": {"a@0": "1", "a@1": "1"}},
            {"id": "y", "assignment": {"a@0": "1", "a@1": "1", "b@1": "1"}},
        ]))

        cases = []
        for name in FIXTURES:
            cases += [(name, ["validate", f"{name}.json"]), (name, ["enumerate", f"{name}.json"])]
        for name in ["pa", "copy-paloop", "blind-paloop"]:
            f = f"{name}.json"
            cases += [
                (name, ["entityset-check", f, "--entity-set", "pa-loop.json"]),
                (name, ["actions", f, "--entity-set", "pa-loop.json", "--entity", "M:0,0,0", "--trajectory", "0"]),
                (name, ["perceptions", f, "--entity-set", "pa-loop.json", "--entity", "M:0,0,0", "--t", "0"]),
                (name, ["paloop", "extract", f]),
                (name, ["paloop", "verify", f]),
                (name, ["paloop", "entropy", f, "--t", "0"]),
                (name, ["paloop", "equiv", f]),
                (name, ["paloop", "specialize", f, "--anchor", "0,0,0", "--t", "0"]),
            ]
        cases += [
            ("ca2", ["entityset-check", "ca2.json", "--entity-set", "all-stps.json"]),
            ("ca2", ["entityset-check", "ca2.json", "--entity-set", "pair.json"]),
            ("ca2", ["actions", "ca2.json", "--entity-set", "pair.json", "--entity", "x", "--trajectory",
                     "a@0=1,b@0=0,a@1=1,b@1=0", "--t", "0"]),
            ("ca2", ["perceptions", "ca2.json", "--entity-set", "all-stps.json", "--entity", "e17", "--t", "0"]),
            ("pa", ["perceptions", "pa.json", "--entity-set", "pa-loop.json", "--entity", "M:0,0,0", "--t", "1"]),
            ("pa", ["paloop", "verify", "--seeds", "10"]),
            ("pa", ["paloop", "equiv", "--seeds", "10"]),
            ("pa", ["paloop", "specialize", "--seeds", "10"]),
            ("pa", ["paloop", "entropy", "pa.json", "--t", "2"]),
            ("bad", ["validate", "bad.json"]),
            ("none", ["fixture", "nope"]),
            ("none", ["validate"]),
        ]

        failures = 0
        for _, args in cases:
            proc = run(*args)
            label = " ".join(args)
            try:
                report = json.loads(proc.stdout)
            except json.JSONDecodeError as e:
                print(f"FAIL {label}: not JSON ({e})")
                failures += 1
                continue
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            expected_error = proc.returncode != 0
            if errors:
                print(f"FAIL {label}: {errors[0].message} at {list(errors[0].path)}")
                failures += 1
            elif expected_error != ("error" in report):
                print(f"FAIL {label}: exit {proc.returncode} does not match report shape")
                failures += 1
            else:
                print(f"ok   {label} (exit {proc.returncode})")
        print(f"{len(cases) - failures}/{len(cases)} reports valid")
        return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
