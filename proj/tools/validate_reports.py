#!/usr/bin/env python3
"""Validate every report in an lplab output directory against docs/*.schema.json.

Also checks the CSV layout: header '<abscissa>,value,error', LF line endings,
one row per table entry.
"""
import argparse
import json
import pathlib
import sys

import jsonschema


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("schema_dir", type=pathlib.Path)
    ap.add_argument("output_dirs", type=pathlib.Path, nargs="+")
    args = ap.parse_args()

    report_schema = json.loads((args.schema_dir / "report.schema.json").read_text())
    summary_schema = json.loads((args.schema_dir / "summary.schema.json").read_text())
    failures = 0
    for out in args.output_dirs:
        summary = json.loads((out / "summary.json").read_text())
        jsonschema.validate(summary, summary_schema)
        for entry in summary["experiments"]:
            path = out / f"{entry['name']}.json"
            report = json.loads(path.read_text())
            try:
                jsonschema.validate(report, report_schema)
            except jsonschema.ValidationError as err:
                print(f"{path}: {err.message}")
                failures += 1
                continue
            raw = (out / f"{entry['name']}.csv").read_bytes()
            if b"\r" in raw:
                print(f"{path.with_suffix('.csv')}: CR line ending")
                failures += 1
            lines = raw.decode().split("\n")
            if lines[0] != f"{report['table']['abscissa']},value,error" or lines[-1] != "":
                print(f"{path.with_suffix('.csv')}: bad header or missing final LF")
                failures += 1
            if len(lines) - 2 != len(report["table"]["rows"]):
                print(f"{path.with_suffix('.csv')}: row count differs from the report table")
                failures += 1
        print(f"{out}: {len(summary['experiments'])} reports checked")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
