"""Regenerate the published table of primitive odd-edge Euler bricks below 1000."""

from __future__ import annotations

from dataclasses import dataclass

from .bricks import BrickWitness, build_brick, search_brick_witnesses, verify_brick

# n -> (rep1, rep2, d, brick tuple), copied from the published example lists.
EXPECTED: dict[int, tuple[tuple[int, int, int], tuple[int, int, int], int, tuple[int, ...]]] = {
    85: ((1, 11, 6), (5, 9, 8), 366, (85, 132, 720, 157, 725, 732)),
    117: ((1, 11, 2), (3, 8, 5), 122, (117, 44, 240, 125, 267, 244)),
    195: ((1, 22, 17), (3, 33, 32), 3190, (195, 748, 6336, 773, 6339, 6380)),
    231: ((1, 16, 5), (33, 4, 3), 404, (231, 160, 792, 281, 825, 808)),
    275: ((1, 18, 7), (5, 8, 3), 174, (275, 252, 240, 373, 365, 348)),
    495: ((1, 52, 47), (15, 17, 16), 4756, (495, 4888, 8160, 4913, 8175, 9512)),
    855: ((1, 32, 13), (15, 11, 8), 1384, (855, 832, 2640, 1193, 2775, 2768)),
    935: ((1, 96, 91), (17, 28, 27), 15540, (935, 17472, 25704, 17497, 25721, 31080)),
    187: ((11, 9, 8), (17, 6, 5), 942, (187, 1584, 1020, 1595, 1037, 1884)),
    429: ((11, 8, 5), (39, 6, 5), 1250, (429, 880, 2340, 979, 2379, 2550)),
    693: ((3, 16, 5), (7, 10, 1), 250, (693, 480, 140, 843, 707, 500)),
}

CENSUS_MAX = 999


@dataclass
class ReportRow:
    n: int
    expected_type: int
    found: BrickWitness | None
    checks: dict[str, bool]
    notes: list[str]

    @property
    def passed(self) -> bool:
        return self.found is not None and all(self.checks.values())


@dataclass
class PaperReport:
    rows: list[ReportRow]
    unexpected: list[BrickWitness]

    @property
    def passed(self) -> bool:
        return not self.unexpected and all(r.passed for r in self.rows)

    def render(self) -> str:
        lines = [f"{'n':>4}  type  {'rep1':<13} {'rep2':<13} {'d':>6}  brick  status"]
        for r in self.rows:
            w = r.found
            if w is None:
                lines.append(f"{r.n:>4}  {r.expected_type:>4}  (no witness found)  FAIL")
                continue
            brick = ",".join(map(str, build_brick(w)))
            status = "PASS" if r.passed else "FAIL [" + ",".join(k for k, ok in r.checks.items() if not ok) + "]"
            lines.append(
                f"{r.n:>4}  {w.brick_type:>4}  {str(tuple(w.rep1)):<13} {str(tuple(w.rep2)):<13} "
                f"{w.d:>6}  ({brick})  {status}"
            )
            lines.extend(f"        note: {note}" for note in r.notes)
        for w in self.unexpected:
            lines.append(f"{w.n:>4}  unexpected primitive witness {tuple(w.rep1)} {tuple(w.rep2)} d={w.d}  FAIL")
        total = sum(r.passed for r in self.rows)
        lines.append(f"{total}/{len(self.rows)} rows pass; {len(self.unexpected)} unexpected witnesses")
        return "\n".join(lines)


def report_paper_examples() -> PaperReport:
    """Scan odd n up to 999 from scratch and compare with the published table."""
    found: dict[int, list[BrickWitness]] = {}
    for n in range(3, CENSUS_MAX + 1, 2):
        for w in search_brick_witnesses(n):
            if w.primitive and not w.degenerate:
                found.setdefault(n, []).append(w)
    rows = []
    for n, (rep1, rep2, d, brick) in sorted(EXPECTED.items(), key=lambda kv: (kv[1][0][0] > 1, kv[0])):
        expected_type = 1 + (rep1[0] > 1) + (rep2[0] > 1)
        ws = found.pop(n, [])
        notes = []
        if len(ws) != 1:
            rows.append(ReportRow(n, expected_type, ws[0] if ws else None, {"unique": False}, notes))
            continue
        w = ws[0]
        built = tuple(build_brick(w))
        checks = {
            "reps": (tuple(w.rep1), tuple(w.rep2)) == (rep1, rep2),
            "d": w.d == d,
            "type": w.brick_type == expected_type,
            "brick": built == brick,
        }
        if not checks["brick"]:
            diff = [f"position {i}: expected {e}, found {b}" for i, (e, b) in enumerate(zip(brick, built)) if e != b]
            notes.append("; ".join(diff))
            verdict = verify_brick(brick)
            if not verdict:
                notes.append(f"expected tuple is not an Euler brick ({verdict.failed})")
        rows.append(ReportRow(n, expected_type, w, checks, notes))
    unexpected = [w for ws in found.values() for w in ws]
    return PaperReport(rows, unexpected)
