"""Monte Carlo harness: channels read until decode, aggregated over many trials.

Each trial samples a uniform codeword, streams uniform channel outputs into
the decoder and records how many channels it required, i.e. outputs read
beyond the one that initialises the decoder's tracking state (a zero-budget
decode counts its single read).  Trials use independent generators derived
as Random(f"{seed}:{trial_index}") so a run is reproducible and independent
of how trials are split across workers.
"""

from __future__ import annotations

import csv
import random
import time
import warnings
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .codebook import DEFAULT_RARITY, CodeParams, top_two_threshold
from .decoder import DecoderConfig, StreamDecoder, default_max_reads
from .patterns import PatternSampler

DEFAULT_SEED = 1729

CSV_COLUMNS = ["n", "ts", "td", "ti", "average", "median", "failures", "samples"]


@dataclass(frozen=True)
class SimSpec:
    q: int
    n: int
    t_sub: int
    t_del: int
    t_ins: int
    samples: int
    seed: int = DEFAULT_SEED
    jobs: int = 1
    max_reads: int | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    def decoder_config(self) -> DecoderConfig:
        return DecoderConfig(
            q=self.q, n=self.n, t_sub=self.t_sub, t_del=self.t_del, t_ins=self.t_ins
        )


@dataclass
class SimResult:
    average: float | None
    median: float | None
    histogram: dict[int, int] = field(default_factory=dict)
    failures: int = 0
    wrong_decodes: int = 0
    samples: int = 0
    wall_time: float = 0.0


def _median_from_histogram(hist: Counter) -> float | None:
    total = sum(hist.values())
    if total == 0:
        return None
    lower_rank = (total - 1) // 2
    upper_rank = total // 2
    acc = 0
    lower = upper = None
    for reads in sorted(hist):
        acc += hist[reads]
        if lower is None and acc > lower_rank:
            lower = reads
        if acc > upper_rank:
            upper = reads
            break
    return (lower + upper) / 2 if lower != upper else float(lower)


def _run_trials(args) -> tuple[Counter, int, int]:
    q, n, t_sub, t_del, t_ins, seed, lo, hi, cap = args
    cfg = DecoderConfig(q=q, n=n, t_sub=t_sub, t_del=t_del, t_ins=t_ins)
    sampler = PatternSampler(n, q, t_sub, t_del, t_ins)
    tau = top_two_threshold(CodeParams(q=q, n=n))
    text_mode = q <= 10
    tokens = "0123456789"[:q] if text_mode else tuple(range(q))
    hist: Counter = Counter()
    failures = 0
    wrong = 0
    for trial in range(lo, hi):
        rng = random.Random(f"{seed}:{trial}")
        while True:
            if text_mode:
                x = "".join(rng.choices(tokens, k=n))
                counts = sorted((x.count(c) for c in tokens), reverse=True)
            else:
                x = tuple(rng.choices(tokens, k=n))
                counts = sorted((x.count(s) for s in tokens), reverse=True)
            if counts[0] + counts[1] < tau:
                break
        dec = StreamDecoder(cfg)
        result = None
        for _ in range(cap):
            result = dec.push(sampler.sample_output(rng, x))
            if result is not None:
                break
        if not result:
            failures += 1
        else:
            hist[dec.channels_required] += 1
            if result != x:
                wrong += 1
    return hist, failures, wrong


def run_sim(spec: SimSpec) -> SimResult:
    """Run spec.samples independent trials and aggregate reads-until-decode.

    average and median are over halting trials; trials that hit the read cap
    (or aborted) are counted in failures.  Deterministic given seed.
    """
    cfg = spec.decoder_config()
    halting_floor = (spec.q - 1) * float(DEFAULT_RARITY) * (spec.t_del + spec.t_sub)
    if spec.n < halting_floor:
        warnings.warn(
            f"n={spec.n} below {halting_floor:.1f}; halting is not guaranteed "
            f"to become likely for these budgets",
            stacklevel=2,
        )
    cap = spec.max_reads if spec.max_reads is not None else default_max_reads(cfg)
    start = time.perf_counter()
    chunks = min(spec.samples, spec.jobs * 4 if spec.jobs > 1 else 1)
    bounds = [round(k * spec.samples / chunks) for k in range(chunks + 1)]
    tasks = [
        (spec.q, spec.n, spec.t_sub, spec.t_del, spec.t_ins, spec.seed, bounds[k], bounds[k + 1], cap)
        for k in range(chunks)
        if bounds[k] < bounds[k + 1]
    ]
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            parts = list(pool.map(_run_trials, tasks))
    else:
        parts = [_run_trials(task) for task in tasks]
    hist: Counter = Counter()
    failures = 0
    wrong = 0
    for h, f, w in parts:
        hist.update(h)
        failures += f
        wrong += w
    halted = sum(hist.values())
    average = sum(r * c for r, c in hist.items()) / halted if halted else None
    return SimResult(
        average=average,
        median=_median_from_histogram(hist),
        histogram=dict(sorted(hist.items())),
        failures=failures,
        wrong_decodes=wrong,
        samples=spec.samples,
        wall_time=time.perf_counter() - start,
    )


def sweep_rows(specs: list[SimSpec]) -> list[dict]:
    rows = []
    for spec in specs:
        res = run_sim(spec)
        rows.append(
            {
                "n": spec.n,
                "ts": spec.t_sub,
                "td": spec.t_del,
                "ti": spec.t_ins,
                "average": res.average,
                "median": res.median,
                "failures": res.failures,
                "samples": spec.samples,
            }
        )
    return rows


def run_sweep(specs: list[SimSpec], output_path: str | None = None) -> list[dict]:
    """Simulate every spec and optionally write the aggregate table as CSV."""
    rows = sweep_rows(specs)
    if output_path is not None:
        with open(output_path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
    return rows
