"""Write the golden hom tables from the independent oracles in tests/oracles.py."""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402

GOLDEN = ROOT / "src" / "onesided" / "fixtures" / "golden"
HEADER = "source\ttarget\tshift\tdim\n"


def write(name: str, rows) -> None:
    body = "".join("\t".join(map(str, r)) + "\n" for r in rows)
    (GOLDEN / name).write_text(HEADER + body)
    print(f"wrote {GOLDEN / name} ({len(rows)} rows)")


if __name__ == "__main__":
    GOLDEN.mkdir(parents=True, exist_ok=True)
    write("a3-dhom.tsv", oracles.dhom_rows())
    write("a3-qhom-serre1.tsv", oracles.qhom_rows())
