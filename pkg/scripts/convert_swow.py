#!/usr/bin/env python3
"""Convert a word-association strength CSV into the edge-list TSV the CLI
reads.

Expects one row per (cue, response, strength) with a header; column names
are configurable (defaults match the published Small World of Words
strength exports). By default edges whose response is not itself a cue are
dropped, restricting the network to the cue vocabulary.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path


def convert(
    src: Path,
    dst: Path,
    cue_col: str,
    response_col: str,
    weight_col: str,
    restrict_to_cues: bool,
) -> tuple[int, int]:
    with open(src, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {cue_col, response_col, weight_col} - set(reader.fieldnames or [])
        if missing:
            sys.exit(f"missing columns {sorted(missing)}; found {reader.fieldnames}")
        rows = [
            (r[cue_col].strip(), r[response_col].strip(), r[weight_col].strip())
            for r in reader
        ]
    cues = {c.lower() for c, _, _ in rows}
    written = 0
    skipped = 0
    with open(dst, "w", encoding="utf-8") as out:
        out.write(f"# converted from {src.name}: cue\tresponse\tweight\n")
        for cue, response, weight in rows:
            if not cue or not response or not weight:
                skipped += 1
                continue
            if restrict_to_cues and response.lower() not in cues:
                skipped += 1
                continue
            out.write(f"{cue}\t{response}\t{weight}\n")
            written += 1
    return written, skipped


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("src", type=Path, help="strength CSV")
    ap.add_argument("dst", type=Path, help="edge-list TSV to write")
    ap.add_argument("--cue-col", default="cue")
    ap.add_argument("--response-col", default="response")
    ap.add_argument("--weight-col", default="R1.Strength")
    ap.add_argument(
        "--keep-all-responses",
        action="store_true",
        help="keep edges to responses that never appear as cues",
    )
    args = ap.parse_args()
    written, skipped = convert(
        args.src,
        args.dst,
        args.cue_col,
        args.response_col,
        args.weight_col,
        restrict_to_cues=not args.keep_all_responses,
    )
    print(f"wrote {written} edges to {args.dst} ({skipped} rows skipped)")


if __name__ == "__main__":
    main()
