"""Print canonical split-mask bytes for (n, fraction, seed) triples on stdin.

Used by the determinism acceptance check: two independent processes must
produce byte-identical output for the same triples.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from modelhub.evalengine import make_split  # noqa: E402


def main() -> None:
    triples = json.loads(sys.stdin.read())
    for n, fraction, seed in triples:
        sys.stdout.buffer.write(make_split(n, fraction, seed).canonical_bytes())
        sys.stdout.buffer.write(b"\n")


if __name__ == "__main__":
    main()
