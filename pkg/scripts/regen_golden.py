"""Rewrite tests/golden/*.txt from the current CLI; review the diff before committing."""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from golden_cases import CASES  # noqa: E402

from alphatrace.cli import run  # noqa: E402


def main() -> None:
    for name, (argv, code) in CASES.items():
        argv = [str(ROOT / "systems" / a) if a.endswith((".sys", ".gps")) else a for a in argv]
        outcome = run(argv)
        if outcome.code != code:
            raise SystemExit(f"{name}: exit {outcome.code}, expected {code}")
        (ROOT / "tests" / "golden" / f"{name}.txt").write_text(outcome.out, encoding="utf-8")
        print(f"wrote {name}")


if __name__ == "__main__":
    main()
