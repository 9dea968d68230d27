"""JSONL hit records: construction, serialization and verify-on-load."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, Iterator

from .biquad import BiquadHit, annotate_hit
from .bricks import BrickWitness, build_brick, verify_brick
from .cuboids import CuboidWitness, build_perfect_cuboid, independent_recheck, verify_perfect_cuboid

SCHEMA_VERSION = 1


class VerificationError(RuntimeError):
    """A witness or persisted record failed exact re-verification."""


def brick_record(w: BrickWitness, search_id: str) -> dict:
    brick = build_brick(w)
    return {
        "schema_version": SCHEMA_VERSION,
        "task": "bricks",
        "n": w.n,
        "witness": w.to_dict(),
        "solid": {"kind": "euler_brick", "lengths": list(brick)},
        "primitive": w.primitive,
        "anomaly": False,
        "search_id": search_id,
    }


def cuboid_record(w: CuboidWitness, search_id: str) -> dict:
    """Record for a perfect-cuboid hit; always an anomaly.

    Raises VerificationError unless the built candidate passes both the
    exact identity check and the independent GMP recheck.
    """
    cand = build_perfect_cuboid(w)
    verdict = verify_perfect_cuboid(cand)
    if not verdict:
        raise VerificationError(f"cuboid witness for n={w.n} rejected: {verdict.failed}")
    if not independent_recheck(w):
        raise VerificationError(f"cuboid witness for n={w.n} rejected by independent recheck")
    return {
        "schema_version": SCHEMA_VERSION,
        "task": "cuboids",
        "n": w.n,
        "witness": w.to_dict(),
        "solid": {"kind": "perfect_cuboid", "lengths": list(cand)},
        "primitive": math.gcd(cand.a, cand.b, cand.c) == 1,
        "anomaly": True,
        "search_id": search_id,
    }


def biquad_record(h: BiquadHit, search_id: str) -> dict:
    if not h.is_valid():
        raise VerificationError(f"biquadratic hit {h.key} fails its defining identity")
    return {
        "schema_version": SCHEMA_VERSION,
        "task": "biquad",
        "n": None,
        "witness": h.to_dict(),
        "solid": None,
        "primitive": True,
        "anomaly": h.anomaly,
        "search_id": search_id,
    }


def dumps(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))


def verify_record(rec: dict) -> None:
    """Re-check a loaded record against its owning module; raise on mismatch."""
    if rec.get("schema_version") != SCHEMA_VERSION:
        raise VerificationError(f"unsupported schema_version {rec.get('schema_version')!r}")
    task = rec.get("task")
    if task == "bricks":
        w = BrickWitness.from_dict(rec["n"], rec["witness"])
        lengths = rec["solid"]["lengths"]
        if not w.is_valid():
            raise VerificationError(f"brick witness for n={rec['n']} is invalid")
        if list(build_brick(w)) != lengths or not verify_brick(lengths):
            raise VerificationError(f"brick for n={rec['n']} does not match its witness")
        if rec["primitive"] != w.primitive or rec["witness"]["brick_type"] != w.brick_type:
            raise VerificationError(f"brick flags for n={rec['n']} are inconsistent")
    elif task == "cuboids":
        w = CuboidWitness.from_dict(rec["n"], rec["witness"])
        lengths = rec["solid"]["lengths"]
        if list(build_perfect_cuboid(w)) != lengths or not verify_perfect_cuboid(lengths):
            raise VerificationError(f"cuboid for n={rec['n']} fails verification")
        if not independent_recheck(w):
            raise VerificationError(f"cuboid for n={rec['n']} fails independent recheck")
    elif task == "biquad":
        h = BiquadHit.from_dict(rec["witness"])
        if not h.is_valid():
            raise VerificationError(f"biquadratic hit {h.key} fails its defining identity")
        # Annotations must be exactly one of the two recomputations.
        if h.annotations not in (annotate_hit(h, True).annotations, annotate_hit(h, False).annotations):
            raise VerificationError(f"annotations of {h.key} do not recompute")
        if rec["anomaly"] != h.anomaly:
            raise VerificationError(f"anomaly flag of {h.key} is inconsistent")
    else:
        raise VerificationError(f"unknown task {task!r}")


def iter_records(path: str | Path, verify: bool = True) -> Iterator[dict]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise VerificationError(f"{path}:{lineno}: malformed JSON ({exc})") from None
            if verify:
                try:
                    verify_record(rec)
                except (KeyError, TypeError) as exc:
                    raise VerificationError(f"{path}:{lineno}: missing field {exc}") from None
                except VerificationError as exc:
                    raise VerificationError(f"{path}:{lineno}: {exc}") from None
            yield rec


def load_records(path: str | Path, verify: bool = True) -> list[dict]:
    return list(iter_records(path, verify))


def write_records(path: str | Path, records: Iterable[dict]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(dumps(rec) + "\n")
            count += 1
    return count
