"""Row-by-row crochet instructions for triangulated {3,k} disks.

Row 1 works the central fan: a rising chain, then ``k - 1`` clusters of
three chains plus a double crochet back into the center, closed by three
chains and a half stitch.  Every later row places ``k - 3`` such clusters
into each double crochet of the row before.  For ``k = 7`` this gives the
familiar 1 + 6 / 4-per-anchor scheme.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping
import re

from .errors import DomainError


class StitchKind(enum.Enum):
    SLIP_STITCH = "SlipStitch"
    CHAIN = "Chain"
    HALF_STITCH = "HalfStitch"
    DOUBLE_CROCHET = "DoubleCrochet"


ABBREVIATIONS = {
    StitchKind.SLIP_STITCH: "sl",
    StitchKind.CHAIN: "ch",
    StitchKind.HALF_STITCH: "hs",
    StitchKind.DOUBLE_CROCHET: "dc",
}

CH = StitchKind.CHAIN
DC = StitchKind.DOUBLE_CROCHET
HS = StitchKind.HALF_STITCH

CLUSTER = (CH, CH, CH, DC)


@dataclass(frozen=True)
class Step:
    number: int
    text: str
    stitches: tuple[StitchKind, ...]
    anchor: str
    repeat: int = 1

    def __post_init__(self):
        if self.repeat < 1:
            raise ValueError("repeat must be at least 1")
        if not self.stitches:
            raise ValueError("a step needs at least one stitch")

    def counts(self) -> Counter:
        c = Counter(self.stitches)
        return Counter({kind: n * self.repeat for kind, n in c.items()})


@dataclass(frozen=True)
class Row:
    index: int
    steps: tuple[Step, ...]
    note: str = ""


@dataclass(frozen=True)
class Pattern:
    k: int
    rows: tuple[Row, ...]
    metadata: tuple[str, ...] = field(default=())

    def __post_init__(self):
        totals = [sum(row_counts(r).values()) for r in self.rows]
        if any(b <= a for a, b in zip(totals, totals[1:])):
            raise ValueError(f"row stitch totals must increase, got {totals}")


_WORDS = (
    "zero one two three four five six seven eight nine ten eleven twelve thirteen "
    "fourteen fifteen sixteen seventeen eighteen nineteen twenty"
).split()


def number_word(n: int) -> str:
    return _WORDS[n] if 0 <= n < len(_WORDS) else str(n)


def _times(n: int) -> str:
    return "one more time" if n == 1 else f"{number_word(n)} more times"


def _first_row(k: int, start: int) -> Row:
    extra = k - 2
    steps = [
        Step(start, "Crochet three chain stitches for rising", (CH, CH, CH), "rising"),
        Step(
            start + 1,
            "crochet three chain stitches, then a double crochet stitch in the first chain",
            CLUSTER,
            "first chain",
        ),
    ]
    if extra:
        steps.append(Step(start + 2, f"repeat previous step {_times(extra)}", CLUSTER, "first chain", extra))
    n = start + len(steps)
    steps += [
        Step(n, "crochet three chains", (CH, CH, CH), "none"),
        Step(n + 1, "finish the row with the half stitch", (HS,), "top of rising chain"),
    ]
    return Row(1, tuple(steps))


def _later_row(k: int, index: int, anchors: int, start: int) -> Row:
    per_anchor = k - 3
    steps = [
        Step(start, "Three chain stitches for rising", (CH, CH, CH), "rising"),
        Step(
            start + 1,
            "three chain stitches, double crochet stitch into the first double crochet of the previous row",
            CLUSTER,
            "first double crochet of previous row",
        ),
    ]
    if per_anchor > 1:
        steps.append(
            Step(
                start + 2,
                f"repeat the previous step {_times(per_anchor - 1)} into the same double crochet",
                CLUSTER,
                "same anchor",
                per_anchor - 1,
            )
        )
    group_end = start + len(steps) - 1
    n = group_end + 1
    if anchors > 1:
        span = f"steps {start + 1}-{group_end}" if group_end > start + 1 else f"step {start + 1}"
        steps.append(
            Step(
                n,
                f"repeat {span} {_times(anchors - 1)}, moving to the next double crochet each time",
                CLUSTER * per_anchor,
                "next double crochet of previous row",
                anchors - 1,
            )
        )
        n += 1
    steps += [
        Step(n, "three chains", (CH, CH, CH), "none"),
        Step(n + 1, "finish the row with the half stitch", (HS,), "top of rising chain"),
    ]
    return Row(index, tuple(steps), "yarn may switch to another color here")


def compile_pattern(k: int, rows: int) -> Pattern:
    if k < 7:
        raise DomainError(f"k={k} does not give a hyperbolic disk (need k >= 7)")
    if rows < 1:
        raise DomainError(f"need at least one row, got {rows}")
    out = [_first_row(k, 1)]
    for index in range(2, rows + 1):
        prev = out[-1]
        anchors = row_counts(prev)[DC]
        out.append(_later_row(k, index, anchors, prev.steps[-1].number + 1))
    meta = ("begin with a slip knot",)
    return Pattern(k, tuple(out), meta)


def pattern_k7(rows: int) -> Pattern:
    """The seven-triangles-per-vertex scheme, rows 1 to 4 written out step by step."""
    if not 1 <= rows <= 4:
        raise DomainError(f"the seven-triangle scheme has rows 1..4, got {rows}; use compile_pattern")
    row1 = Row(
        1,
        (
            Step(1, "Crochet three chain stitches for rising", (CH, CH, CH), "rising"),
            Step(
                2,
                "crochet three chain stitches, then a double crochet stitch in the first chain",
                CLUSTER,
                "first chain",
            ),
            Step(3, "repeat previous step five more times", CLUSTER, "first chain", 5),
            Step(4, "crochet three chains", (CH, CH, CH), "none"),
            Step(5, "finish the row with the half stitch", (HS,), "top of rising chain"),
        ),
    )
    out = [row1]
    anchors = 6
    for index in range(2, rows + 1):
        s = out[-1].steps[-1].number + 1
        out.append(
            Row(
                index,
                (
                    Step(s, "Three chain stitches for rising", (CH, CH, CH), "rising"),
                    Step(
                        s + 1,
                        "three chain stitches, double crochet stitch into the first double crochet "
                        "of the previous row",
                        CLUSTER,
                        "first double crochet of previous row",
                    ),
                    Step(
                        s + 2,
                        "repeat the previous step three more times into the same double crochet",
                        CLUSTER,
                        "same anchor",
                        3,
                    ),
                    Step(
                        s + 3,
                        f"repeat steps {s + 1}-{s + 2} {_times(anchors - 1)}, "
                        "moving to the next double crochet each time",
                        CLUSTER * 4,
                        "next double crochet of previous row",
                        anchors - 1,
                    ),
                    Step(s + 4, "three chains", (CH, CH, CH), "none"),
                    Step(s + 5, "finish the row with the half stitch", (HS,), "top of rising chain"),
                ),
                "yarn may switch to another color here",
            )
        )
        anchors *= 4
    return Pattern(7, tuple(out), ("begin with a slip knot",))


def row_counts(row: Row) -> Counter:
    total = Counter()
    for step in row.steps:
        total += step.counts()
    return total


@dataclass(frozen=True)
class StitchCounts:
    per_row: tuple[dict[StitchKind, int], ...]
    total: dict[StitchKind, int]

    @property
    def row_totals(self) -> list[int]:
        return [sum(r.values()) for r in self.per_row]

    @property
    def grand_total(self) -> int:
        return sum(self.total.values())


def stitch_counts(p: Pattern) -> StitchCounts:
    per_row = tuple({kind: row_counts(r)[kind] for kind in StitchKind} for r in p.rows)
    total = {kind: sum(r[kind] for r in per_row) for kind in StitchKind}
    return StitchCounts(per_row, total)


def yarn_estimate(p: Pattern, per_stitch_length: Mapping[StitchKind, float]) -> float:
    """Yarn length in cm, given how much yarn one stitch of each kind uses."""
    missing = [kind.value for kind in StitchKind if kind not in per_stitch_length]
    if missing:
        raise KeyError(f"no yarn length given for {', '.join(missing)}")
    for kind, length in per_stitch_length.items():
        if not length > 0:
            raise DomainError(f"yarn length for {kind.value} must be positive")
    counts = stitch_counts(p).total
    return float(sum(counts[kind] * per_stitch_length[kind] for kind in StitchKind))


def _stitch_code(step: Step) -> str:
    return f"({' '.join(ABBREVIATIONS[s] for s in step.stitches)}) x{step.repeat}"


def render_text(p: Pattern) -> str:
    lines = [f"Triangulated disk, {p.k} triangles at each vertex"]
    lines += [f"Note: {m}" for m in p.metadata]
    for row in p.rows:
        header = f"Row {row.index}:"
        if row.note:
            header += f" ({row.note})"
        lines.append(header)
        for step in row.steps:
            lines.append(f"  Step {step.number}: {step.text}  {_stitch_code(step)}")
    return "\n".join(lines) + "\n"


def to_document(p: Pattern) -> dict:
    """Structured form: ``{k, rows: [{index, steps: [{stitches, anchor, repeat}]}]}``."""
    return {
        "k": p.k,
        "rows": [
            {
                "index": row.index,
                "steps": [
                    {"stitches": [s.value for s in step.stitches], "anchor": step.anchor, "repeat": step.repeat}
                    for step in row.steps
                ],
            }
            for row in p.rows
        ],
        "metadata": list(p.metadata),
    }


_STEP_CODE = re.compile(r"^\s*Step \d+:.*\((?P<codes>[a-z ]+)\) x(?P<repeat>\d+)$", re.MULTILINE)


def parse_text_counts(text: str) -> Counter:
    """Expand the stitch codes of :func:`render_text` output back into counts."""
    by_abbrev = {v: k for k, v in ABBREVIATIONS.items()}
    total = Counter()
    for m in _STEP_CODE.finditer(text):
        for code in m["codes"].split():
            total[by_abbrev[code]] += int(m["repeat"])
    return total


def document_counts(doc: dict) -> Counter:
    total = Counter()
    for row in doc["rows"]:
        for step in row["steps"]:
            for s in step["stitches"]:
                total[StitchKind(s)] += step["repeat"]
    return total
