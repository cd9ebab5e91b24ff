"""Weber's formula over a (nu, y, sign) grid, written as CSV through the CLI.

    python3 scripts/weber_sweep.py > weber.csv
"""
from __future__ import annotations

import json
import sys
import tempfile

from complexbessel import cli

GRID = {"identity": "weber",
        "params": {"nu": [-0.5, 0, 0.4, 1, "0.6i", "0.3+0.2i"], "y": [0.5, 1, 2], "sign": [1, -1]}}


def main() -> int:
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(GRID, fh)
    return cli.main(["sweep", "--grid", fh.name, "--format", "csv"])


if __name__ == "__main__":
    sys.exit(main())
