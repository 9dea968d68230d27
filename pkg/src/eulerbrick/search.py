"""Range-scan driver: sharding, worker pool, checkpoint/resume, summaries.

Only the coordinating process writes output or checkpoints. Workers get
contiguous blocks of the shard's odd n and return serialized records; the
coordinator writes them back in n order through a bounded in-order window.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import time
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .biquad import coprime_odd_pairs, search_biquadratic
from .bricks import search_brick_witnesses
from .cuboids import ALL_CONJECTURES, search_cuboid_witnesses
from .pythag import diff_square_reps
from .records import (
    SCHEMA_VERSION,
    biquad_record,
    brick_record,
    cuboid_record,
    dumps,
    load_records,
)

log = logging.getLogger(__name__)

TASKS = ("bricks", "cuboids")
WORKERS_ENV = "EULERBRICK_WORKERS"
CHECKPOINT_VERSION = 1


class SearchError(RuntimeError):
    pass


class CheckpointError(SearchError):
    pass


class OutputExists(SearchError):
    pass


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise SearchError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise SearchError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return value


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class SearchConfig:
    task: str
    n_min: int
    n_max: int
    conjectures: tuple[int, ...] = tuple(sorted(ALL_CONJECTURES))
    strict: bool = False
    shard_index: int = 0
    shard_count: int = 1
    output_path: str | None = None
    checkpoint_path: str | None = None
    workers: int = 1
    block_size: int = 500
    checkpoint_stride: int = 1
    overwrite: bool = False

    def __post_init__(self):
        if self.task not in TASKS:
            raise SearchError(f"task must be one of {TASKS}, got {self.task!r}")
        if not 3 <= self.n_min <= self.n_max:
            raise SearchError(f"need 3 <= n_min <= n_max, got [{self.n_min}, {self.n_max}]")
        if self.shard_count < 1 or not 0 <= self.shard_index < self.shard_count:
            raise SearchError(f"bad shard {self.shard_index}/{self.shard_count}")
        if self.workers < 1 or self.block_size < 1 or self.checkpoint_stride < 1:
            raise SearchError("workers, block_size and checkpoint_stride must be >= 1")
        conj = tuple(sorted(set(self.conjectures)))
        if not conj or not set(conj) <= ALL_CONJECTURES:
            raise SearchError(f"conjectures must be a nonempty subset of 1..6, got {self.conjectures}")
        object.__setattr__(self, "conjectures", conj)

    def _scan_definition(self) -> dict:
        d = {"schema_version": SCHEMA_VERSION, "task": self.task, "n_min": self.n_min,
             "n_max": self.n_max, "strict": self.strict}
        if self.task == "cuboids":
            d["conjectures"] = list(self.conjectures)
        return d

    def search_id(self) -> str:
        """Hash of what is searched; identical for every shard of one scan."""
        return _digest(self._scan_definition())[:16]

    def fingerprint(self) -> str:
        """Hash of the scan definition plus the shard layout."""
        d = self._scan_definition()
        d["shard"] = [self.shard_index, self.shard_count]
        return _digest(d)

    def shard_values(self, after: int | None = None) -> range:
        """Odd n of this shard, in ascending order, optionally only those > ``after``."""
        k, i = self.shard_count, self.shard_index
        first = self.n_min | 1
        # rank of odd n is (n - 1) // 2
        offset = (i - (first - 1) // 2) % k
        start = first + 2 * offset
        if after is not None and after >= start:
            start += ((after - start) // (2 * k) + 1) * 2 * k
        return range(start, self.n_max + 1, 2 * k)

    def to_json(self) -> dict:
        return asdict(self)


def scan_n(task: str, n: int, conjectures=ALL_CONJECTURES, strict: bool = False, search_id: str = "") -> list[dict]:
    """Records for a single n, in canonical witness order."""
    reps = diff_square_reps(n)
    if task == "bricks":
        return [brick_record(w, search_id) for w in search_brick_witnesses(n, strict, reps)]
    return [cuboid_record(w, search_id) for w in search_cuboid_witnesses(n, conjectures, strict, reps)]


def _scan_block(task, conjectures, strict, search_id, start, stop, step) -> list[str]:
    lines = []
    for n in range(start, stop, step):
        lines.extend(dumps(r) for r in scan_n(task, n, conjectures, strict, search_id))
    return lines


def _blocks(values: range, size: int) -> Iterator[range]:
    for lo in range(0, len(values), size):
        yield values[lo : lo + size]


def _ordered_results(cfg: SearchConfig, blocks: Iterable[range]) -> Iterator[tuple[range, list[str]]]:
    args = (cfg.task, cfg.conjectures, cfg.strict, cfg.search_id())
    if cfg.workers == 1:
        for b in blocks:
            yield b, _scan_block(*args, b.start, b.stop, b.step)
        return
    window = 2 * cfg.workers
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        pending: deque = deque()
        it = iter(blocks)
        for b in it:
            pending.append((b, pool.submit(_scan_block, *args, b.start, b.stop, b.step)))
            if len(pending) >= window:
                break
        while pending:
            b, fut = pending.popleft()
            yield b, fut.result()
            nxt = next(it, None)
            if nxt is not None:
                pending.append((nxt, pool.submit(_scan_block, *args, nxt.start, nxt.stop, nxt.step)))


def _write_checkpoint(path: str, cfg: SearchConfig, last_n: int | None, count: int, complete: bool) -> None:
    payload = {
        "checkpoint_version": CHECKPOINT_VERSION,
        "fingerprint": cfg.fingerprint(),
        "config": cfg.to_json(),
        "last_n": last_n,
        "record_count": count,
        "complete": complete,
    }
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def read_checkpoint(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise CheckpointError(f"checkpoint {path} does not exist") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"checkpoint {path} is corrupt: {exc}") from None
    try:
        ok = (
            data["checkpoint_version"] == CHECKPOINT_VERSION
            and isinstance(data["fingerprint"], str)
            and isinstance(data["record_count"], int)
            and data["record_count"] >= 0
            and (data["last_n"] is None or isinstance(data["last_n"], int))
            and isinstance(data["complete"], bool)
            and isinstance(data["config"], dict)
        )
    except (KeyError, TypeError):
        ok = False
    if not ok:
        raise CheckpointError(f"checkpoint {path} is corrupt: missing or malformed fields")
    return data


def summary_path_for(output_path: str) -> str:
    return f"{output_path}.summary.csv"


def summarize(records: list[dict], cfg: SearchConfig, wall_time: float, complete: bool) -> dict:
    per_n = Counter(r["n"] for r in records)
    by_type: Counter = Counter()
    prim_by_type: Counter = Counter()
    by_conj: Counter = Counter()
    degenerate = 0
    for r in records:
        w = r["witness"]
        if cfg.task == "bricks":
            by_type[w["brick_type"]] += 1
            if w["degenerate"]:
                degenerate += 1
            elif r["primitive"]:
                prim_by_type[w["brick_type"]] += 1
        else:
            by_conj[w["conjecture"]] += 1
            degenerate += w["degenerate"]
    max_mult = max(per_n.values(), default=0)
    max_n = min((n for n, c in per_n.items() if c == max_mult), default=None)
    summary = {
        "task": cfg.task,
        "search_id": cfg.search_id(),
        "fingerprint": cfg.fingerprint(),
        "n_min": cfg.n_min,
        "n_max": cfg.n_max,
        "shard": f"{cfg.shard_index}/{cfg.shard_count}",
        "strict": cfg.strict,
        "n_scanned": len(cfg.shard_values()),
        "records": len(records),
        "anomalies": sum(1 for r in records if r["anomaly"]),
        "degenerate": degenerate,
        "max_multiplicity": max_mult,
        "max_multiplicity_n": max_n,
        "complete": complete,
        "wall_time_s": round(wall_time, 3),
    }
    if cfg.task == "bricks":
        for t in (1, 2, 3):
            summary[f"type{t}"] = by_type[t]
            summary[f"primitive_type{t}"] = prim_by_type[t]
        summary["primitive"] = sum(prim_by_type.values())
    else:
        summary["conjectures"] = ",".join(map(str, cfg.conjectures))
        for c in range(1, 7):
            summary[f"conjecture{c}"] = by_conj[c]
    return summary


def write_summary_csv(path: str, summary: dict) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["key", "value"])
        for k, v in summary.items():
            w.writerow([k, v])


def _finish(cfg: SearchConfig, t0: float, complete: bool) -> dict:
    records = load_records(cfg.output_path)
    summary = summarize(records, cfg, time.perf_counter() - t0, complete)
    write_summary_csv(summary_path_for(cfg.output_path), summary)
    return summary


def _drive(cfg: SearchConfig, after: int | None, count: int, t0: float, stop_after: int | None) -> dict:
    values = cfg.shard_values(after)
    if not values:
        if cfg.checkpoint_path:
            _write_checkpoint(cfg.checkpoint_path, cfg, after, count, True)
        return _finish(cfg, t0, True)
    blocks_since = 0
    last_n = after
    complete = True
    with open(cfg.output_path, "a", encoding="utf-8") as out:
        for block, lines in _ordered_results(cfg, _blocks(values, cfg.block_size)):
            for line in lines:
                out.write(line + "\n")
            count += len(lines)
            last_n = block[-1]
            blocks_since += 1
            done = last_n == values[-1]
            stopping = stop_after is not None and last_n >= stop_after and not done
            if cfg.checkpoint_path and (blocks_since >= cfg.checkpoint_stride or done or stopping):
                out.flush()
                os.fsync(out.fileno())
                _write_checkpoint(cfg.checkpoint_path, cfg, last_n, count, done)
                blocks_since = 0
            if stopping:
                complete = False
                log.info("stopping after n=%d with %d records", last_n, count)
                break
    if complete and cfg.checkpoint_path:
        _write_checkpoint(cfg.checkpoint_path, cfg, last_n, count, True)
    return _finish(cfg, t0, complete)


def run_search(cfg: SearchConfig, stop_after: int | None = None) -> dict:
    """Scan this shard's odd n in ``[n_min, n_max]`` and write JSONL records.

    ``stop_after`` ends the run early once a block reaching that n has been
    written and checkpointed; :func:`resume` picks it up later.
    """
    if not cfg.output_path:
        raise SearchError("run_search needs an output_path")
    t0 = time.perf_counter()
    for p in (cfg.output_path, cfg.checkpoint_path):
        if p and os.path.exists(p) and not cfg.overwrite:
            raise OutputExists(f"{p} already exists; pass overwrite to replace it")
    Path(cfg.output_path).write_text("", encoding="utf-8")
    if cfg.checkpoint_path:
        _write_checkpoint(cfg.checkpoint_path, cfg, None, 0, False)
    return _drive(cfg, None, 0, t0, stop_after)


def resume(checkpoint_path: str, cfg: SearchConfig | None = None, stop_after: int | None = None) -> dict:
    """Continue a checkpointed scan; the final output equals an uninterrupted run."""
    t0 = time.perf_counter()
    ck = read_checkpoint(checkpoint_path)
    try:
        stored = SearchConfig(**ck["config"])
    except (TypeError, SearchError) as exc:
        raise CheckpointError(f"checkpoint {checkpoint_path} has an invalid config: {exc}") from None
    if stored.fingerprint() != ck["fingerprint"]:
        raise CheckpointError(f"checkpoint {checkpoint_path} is corrupt: fingerprint does not match its config")
    if cfg is None:
        cfg = stored
    elif cfg.fingerprint() != ck["fingerprint"]:
        raise CheckpointError("configuration fingerprint differs from the checkpoint; refusing to resume")
    if cfg.checkpoint_path != checkpoint_path:
        cfg = SearchConfig(**{**cfg.to_json(), "checkpoint_path": checkpoint_path})
    out = cfg.output_path
    if not out or not os.path.exists(out):
        raise CheckpointError(f"output file {out!r} named by the checkpoint is missing")
    with open(out, "rb") as fh:
        lines = fh.read().split(b"\n")
    complete_lines = lines[:-1]  # anything after the last newline is a torn write
    keep = ck["record_count"]
    if len(complete_lines) < keep:
        raise CheckpointError(
            f"output {out} has {len(complete_lines)} complete records but the checkpoint expects {keep}"
        )
    if len(lines) - 1 != keep or lines[-1]:
        with open(out, "wb") as fh:
            fh.write(b"".join(line + b"\n" for line in complete_lines[:keep]))
    if ck["complete"]:
        return _finish(cfg, t0, True)
    return _drive(cfg, ck["last_n"], keep, t0, stop_after)


def run_biquad(
    conjecture: int,
    bound: int,
    scale_bound: int = 9,
    strict: bool = True,
    workers: int = 1,
    output_path: str | None = None,
    overwrite: bool = False,
) -> tuple[list[dict], dict]:
    """Biquadratic search, split across workers by the value of P."""
    t0 = time.perf_counter()
    if output_path and os.path.exists(output_path) and not overwrite:
        raise OutputExists(f"{output_path} already exists; pass overwrite to replace it")
    search_id = _digest({"schema_version": SCHEMA_VERSION, "task": "biquad", "conjecture": conjecture,
                         "bound": bound, "scale_bound": scale_bound, "strict": strict})[:16]
    if workers == 1:
        hits = search_biquadratic(conjecture, bound, scale_bound, strict)
    else:
        ps = sorted({p for p, _ in coprime_odd_pairs(bound)})
        parts = [set(ps[i::workers]) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(search_biquadratic, conjecture, bound, scale_bound, strict, part)
                    for part in parts if part]
            hits = [h for f in futs for h in f.result()]
        hits.sort(key=lambda h: h.key)
    records = [biquad_record(h, search_id) for h in hits]
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            for r in records:
                fh.write(dumps(r) + "\n")
    summary = {
        "task": "biquad",
        "search_id": search_id,
        "conjecture": conjecture,
        "bound": bound,
        "scale_bound": scale_bound,
        "strict": strict,
        "records": len(records),
        "annotated": sum(1 for h in hits if h.annotations),
        "anomalies": sum(1 for r in records if r["anomaly"]),
        "wall_time_s": round(time.perf_counter() - t0, 3),
    }
    if output_path:
        write_summary_csv(summary_path_for(output_path), summary)
    return records, summary
