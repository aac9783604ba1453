"""Run the acceptance suites and print one line per criterion (exit 1 on any failure)."""

import json
import sys

from suspec.selfcheck import run_all


def main():
    results = run_all()
    for r in results:
        print(r.line())
    if "--json" in sys.argv:
        print(json.dumps([r.to_json() for r in results], indent=2))
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
