"""Parsers for the association edge list and the three-cue problem file.

Edge list: UTF-8 TSV, one `source<TAB>target<TAB>weight` per line, weight in
(0, 1], lines starting with `#` ignored. Problem file: UTF-8 CSV with header
`s1,s2,s3,response,hardness`. Words are NFC-normalised, trimmed and
lowercased before lookup; no stemming.
"""

from __future__ import annotations

import csv
import unicodedata
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .errors import ParseError, ValidationError
from .graph import WeightedDigraph

EASY_MIN = 0.64
MEDIUM_MIN = 0.32

CATEGORIES = ("easy", "medium", "hard")


def normalize_word(word: str) -> str:
    return unicodedata.normalize("NFC", word).strip().lower()


def category_for(hardness: float) -> str:
    """easy: H >= 0.64, medium: 0.32 <= H < 0.64, hard: H < 0.32."""
    if hardness >= EASY_MIN:
        return "easy"
    if hardness >= MEDIUM_MIN:
        return "medium"
    return "hard"


@dataclass(frozen=True)
class RatProblem:
    """One three-stimulus problem resolved against a loaded network."""

    index: int
    stimuli: tuple[int, int, int]
    response: int
    hardness: float
    words: tuple[str, str, str, str]  # s1, s2, s3, response as normalised text

    @property
    def category(self) -> str:
        return category_for(self.hardness)


@dataclass(frozen=True)
class ExcludedProblem:
    lineno: int
    words: tuple[str, str, str, str]
    reason: str


@dataclass
class RatDataset:
    problems: list[RatProblem]
    excluded: list[ExcludedProblem] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.problems)

    def category_counts(self) -> dict[str, int]:
        counts = {c: 0 for c in CATEGORIES}
        for p in self.problems:
            counts[p.category] += 1
        return counts

    @cached_property
    def hardness(self) -> list[float]:
        return [p.hardness for p in self.problems]


@dataclass
class GraphLoadReport:
    lines: int = 0
    edges: int = 0
    self_loops_dropped: int = 0
    duplicates_merged: int = 0
    weights_clamped: int = 0

    def to_dict(self) -> dict:
        return {
            "lines": self.lines,
            "edges": self.edges,
            "self_loops_dropped": self.self_loops_dropped,
            "duplicates_merged": self.duplicates_merged,
            "weights_clamped": self.weights_clamped,
        }


def load_graph(path: str | Path) -> tuple[WeightedDigraph, GraphLoadReport]:
    """Parse an edge-list TSV into a graph plus an ingest report.

    Self-loops are dropped (counted). Repeated ordered pairs have their
    weights summed and clamped to 1.0 (both counted).
    """
    report = GraphLoadReport()
    ids: dict[str, int] = {}
    words: list[str] = []
    weights: dict[tuple[int, int], float] = {}

    def intern(word: str) -> int:
        wid = ids.get(word)
        if wid is None:
            wid = len(words)
            ids[word] = wid
            words.append(word)
        return wid

    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line or line.startswith("#"):
                continue
            report.lines += 1
            fields = line.split("\t")
            if len(fields) != 3:
                raise ParseError(f"expected 3 tab-separated fields, got {len(fields)}", lineno)
            src_word = normalize_word(fields[0])
            dst_word = normalize_word(fields[1])
            if not src_word or not dst_word:
                raise ParseError("empty word label", lineno)
            try:
                w = float(fields[2])
            except ValueError:
                raise ParseError(f"non-numeric weight {fields[2]!r}", lineno) from None
            if not 0.0 < w <= 1.0:
                raise ParseError(f"weight {w} outside (0, 1]", lineno)
            s = intern(src_word)
            t = intern(dst_word)
            if s == t:
                report.self_loops_dropped += 1
                continue
            if (s, t) in weights:
                report.duplicates_merged += 1
                merged = weights[s, t] + w
                if merged > 1.0:
                    merged = 1.0
                    report.weights_clamped += 1
                weights[s, t] = merged
            else:
                weights[s, t] = w
    g = WeightedDigraph.from_edges(
        words, ((s, t, w) for (s, t), w in weights.items())
    )
    report.edges = g.edge_count
    return g, report


def save_graph(g: WeightedDigraph, path: str | Path) -> None:
    """Write the loadable TSV form; float repr round-trips exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        for s, t, w in g.edges():
            fh.write(f"{g.words[s]}\t{g.words[t]}\t{w!r}\n")


_RAT_HEADER = ["s1", "s2", "s3", "response", "hardness"]


def load_rats(path: str | Path, g: WeightedDigraph) -> RatDataset:
    """Parse and validate the problem CSV against a loaded network.

    Problems whose words are missing from the network, whose stimuli have no
    outgoing associations, or whose four words are not distinct are excluded
    with a per-problem diagnostic rather than failing the whole file.
    """
    problems: list[RatProblem] = []
    excluded: list[ExcludedProblem] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty problem file", 1) from None
        if [h.strip().lower() for h in header] != _RAT_HEADER:
            raise ParseError(
                f"expected header {','.join(_RAT_HEADER)!r}, got {','.join(header)!r}", 1
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 5:
                raise ParseError(f"expected 5 fields, got {len(row)}", lineno)
            words = tuple(normalize_word(w) for w in row[:4])
            if any(not w for w in words):
                raise ParseError("empty word label", lineno)
            try:
                hardness = float(row[4])
            except ValueError:
                raise ParseError(f"non-numeric hardness {row[4]!r}", lineno) from None
            if not 0.0 <= hardness <= 1.0:
                raise ValidationError(
                    f"line {lineno}: hardness {hardness} outside [0, 1]"
                )
            reason = _validate_problem(g, words)
            if reason is not None:
                excluded.append(ExcludedProblem(lineno, words, reason))
                continue
            wids = tuple(g.index_of(w) for w in words)
            problems.append(
                RatProblem(
                    index=len(problems),
                    stimuli=(wids[0], wids[1], wids[2]),
                    response=wids[3],
                    hardness=hardness,
                    words=words,
                )
            )
    return RatDataset(problems, excluded)


def _validate_problem(g: WeightedDigraph, words: tuple[str, ...]) -> str | None:
    missing = [w for w in words if g.index_of(w) is None]
    if missing:
        return f"not in network: {', '.join(missing)}"
    if len(set(words)) != 4:
        return "words not distinct"
    dead = [w for w in words[:3] if g.out_degree(g.index_of(w)) == 0]
    if dead:
        return f"stimulus with no outgoing associations: {', '.join(dead)}"
    return None
