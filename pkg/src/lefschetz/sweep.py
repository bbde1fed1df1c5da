"""Seeded verification campaigns over random power sequences.

The sampled sequences depend only on (seed, ranges, count); each sequence
gets its own oracle seed derived from the campaign seed and its index, so
results do not depend on how work is spread across processes.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from lefschetz.analysis import (
    ALL_MAXIMAL,
    Engine,
    case_i_proof_ledger,
    case_ii_analysis,
    compute_case_data,
    rank_profile,
)
from lefschetz.combinatorics import PowerSequence
from lefschetz.oracle import PrimeFieldConfig, oracle_profile


@dataclass
class SweepRecord:
    index: int
    powers: list[int]
    case: str
    p: int
    b: int
    verdict: str
    oracle_verdict: str
    wlp_verdict: str
    wlp_oracle_verdict: str
    engines_agree: bool
    ledger_ok: bool | None
    case_ii_ok: bool | None
    seed: int
    prime: int
    seconds: float

    @property
    def failed(self) -> bool:
        verdicts = (self.verdict, self.oracle_verdict, self.wlp_verdict, self.wlp_oracle_verdict)
        return (any(v != ALL_MAXIMAL for v in verdicts)
                or self.ledger_ok is False or self.case_ii_ok is False)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def sample_sequences(r_range: tuple[int, int], a_range: tuple[int, int], count: int, seed: int) -> list[list[int]]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        r = int(rng.integers(r_range[0], r_range[1] + 1))
        out.append(sorted(int(a) for a in rng.integers(a_range[0], a_range[1] + 1, size=r)))
    return out


def sequence_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(index,)).generate_state(1)[0])


def check_sequence(index: int, powers: list[int], seed: int, prime: int, trials: int) -> SweepRecord:
    start = time.perf_counter()
    ps = PowerSequence(powers)
    cfg = PrimeFieldConfig(prime=prime, trials=trials, seed=sequence_seed(seed, index))
    cd = compute_case_data(ps)
    profile = oracle_profile(ps, (1, 2), cfg)
    reports = {(k, eng): rank_profile(ps, k, eng, cfg, profile)
               for k in (1, 2) for eng in (Engine.COMBINATORIAL, Engine.ORACLE)}
    agree = all(
        [row.dims() for row in reports[(k, Engine.COMBINATORIAL)].rows]
        == [row.dims() for row in reports[(k, Engine.ORACLE)].rows]
        for k in (1, 2)
    )
    ledger_ok = case_i_proof_ledger(ps).passed if cd.case == "I" else None
    case_ii_ok = case_ii_analysis(ps).passed if cd.case == "II" else None
    return SweepRecord(
        index=index,
        powers=list(ps),
        case=cd.case,
        p=cd.p,
        b=cd.b,
        verdict=str(reports[(2, Engine.COMBINATORIAL)].verdict),
        oracle_verdict=str(reports[(2, Engine.ORACLE)].verdict),
        wlp_verdict=str(reports[(1, Engine.COMBINATORIAL)].verdict),
        wlp_oracle_verdict=str(reports[(1, Engine.ORACLE)].verdict),
        engines_agree=agree,
        ledger_ok=ledger_ok,
        case_ii_ok=case_ii_ok,
        seed=cfg.seed,
        prime=prime,
        seconds=round(time.perf_counter() - start, 4),
    )


def _check_star(args):
    return check_sequence(*args)


def run_sweep(r_range, a_range, count: int, seed: int, prime: int, trials: int = 3,
              jobs: int = 1, out=None):
    """Check ``count`` sampled sequences, appending one JSON line per record to ``out``."""
    tasks = [(i, seq, seed, prime, trials)
             for i, seq in enumerate(sample_sequences(r_range, a_range, count, seed))]
    records = []

    def emit(rec):
        records.append(rec)
        if out is not None:
            out.write(rec.to_json() + "\n")
            out.flush()

    if jobs <= 1:
        for task in tasks:
            emit(_check_star(task))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for rec in pool.map(_check_star, tasks, chunksize=4):
                emit(rec)
    return records


def summarize(records) -> dict:
    return {
        "count": len(records),
        "cases": dict(sorted(Counter(rec.case for rec in records).items())),
        "agreements": sum(rec.engines_agree for rec in records),
        "disagreements": [rec.index for rec in records if not rec.engines_agree],
        "failures": [rec.index for rec in records if rec.failed],
        "seconds": round(sum(rec.seconds for rec in records), 3),
    }
