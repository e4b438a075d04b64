#!/usr/bin/env python3
"""Run the full verification and write the JSON certificate next to a summary.

Usage:
    python scripts/verify_all.py [certificate.json] [--jobs N]
"""

import json
import sys
from pathlib import Path

from spancert.cli import RunConfig, certificate_document, render_text, verify_all_records


def main() -> int:
    args = [a for a in sys.argv[1:] if not a.startswith("--")]
    jobs = 1
    for a in sys.argv[1:]:
        if a.startswith("--jobs"):
            jobs = int(a.split("=", 1)[1]) if "=" in a else jobs
    target = Path(args[0]) if args else Path("certificate.json")
    config = RunConfig(output="json", parallelism=jobs)
    records = verify_all_records(config)
    doc = certificate_document(config, records)
    target.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(render_text(records))
    print(f"certificate written to {target}")
    return 0 if all(r.passed for r in records) else 1


if __name__ == "__main__":
    raise SystemExit(main())
