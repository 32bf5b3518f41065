"""Runs the CLI and validates its JSON against the published schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

tool, schema_dir, samples_dir = map(pathlib.Path, sys.argv[1:4])

schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
registry = Registry().with_resources(
    (s["$id"], Resource.from_contents(s)) for s in schemas.values()
)


def check(instance, schema_name):
    schema = schemas[schema_name]
    jsonschema.Draft202012Validator(schema, registry=registry).validate(instance)


def run(*args, expect=0):
    proc = subprocess.run([str(tool), *args], capture_output=True, text=True)
    if proc.returncode != expect:
        sys.exit(f"{args}: exit {proc.returncode}, expected {expect}\n{proc.stderr}")
    return proc


records = [
    ("eval", "pfq", "--num=1,1", "--den=3"),
    ("eval", "pfq", "--num=-3,1/2", "--den=5/2"),
    ("eval", "ramanujan", "--alpha=-2", "--beta=1/2", "--m=1/3", "--z=4"),
    ("eval", "ramanujan", "--alpha=1/2", "--beta=1", "--m=1/2", "--z=0", "--form=integer"),
    ("eval", "ramanujan", "--alpha=1/5", "--beta=2/3", "--m=3/7", "--z=1", "--form=recast"),
    ("eval", "ramanujan", "--alpha=1/2", "--beta=1/2", "--m=2", "--z=1", "--form=closed"),
    ("verify", "theorem", "--k=3", "--beta=0.75", "--m=0.2", "--z=1+1i", "--mode=float"),
    ("verify", "inner-sum", "--m=1/3", "--n=1", "--r=2"),
    ("verify", "finite-diff", "--m=1/2", "--n=2", "--r=3"),
    ("verify", "askey-ismail", "--a=1", "--c=1", "--d=3", "--k=1"),
    ("verify", "counterexample", "--alpha=1/2", "--beta=1/2"),
    ("verify", "counterexample", "--alpha=-2", "--beta=1/3"),
]
for args in records:
    out = json.loads(run(*args).stdout)
    check(out, "output_record.schema.json")
    if "report" in out:
        check(out["report"], "identity_report.schema.json")

# Exact values survive a string round trip through the CLI.
for text in ["-5/36", "123456789/987654320", "0", "-7"]:
    out = json.loads(run("eval", "ramanujan", "--alpha=0", f"--beta={text}", "--m=1/2", "--z=0").stdout)
    assert out["parameters"]["beta"] == text, out["parameters"]

for grid in sorted(samples_dir.glob("*.json")):
    check(json.loads(grid.read_text()), "grid.schema.json")
    with tempfile.TemporaryDirectory() as tmp:
        summary_path = pathlib.Path(tmp) / "summary.json"
        csv_path = pathlib.Path(tmp) / "out.csv"
        run("sweep", f"--grid={grid}", f"--out={csv_path}", f"--summary={summary_path}", "--jobs=2")
        summary = json.loads(summary_path.read_text())
        check(summary, "sweep_summary.schema.json")
        rows = csv_path.read_text().splitlines()
        assert rows[0] == "index,alpha,beta,m,z,lhs,rhs,rel_diff,verdict,unexpected", rows[0]
        assert len(rows) == summary["total"] + 1

print(f"validated {len(records)} records and {len(list(samples_dir.glob('*.json')))} grids")
