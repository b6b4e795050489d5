"""Seeded Monte-Carlo estimates of bit-flipping success at fixed error weights.

Randomness: each trial owns a SplitMix64 stream whose initial state is

    s = mix(seed); s = mix(s ^ weight); state = mix(s ^ trial)

with ``mix(z) = finalize(z + 0x9E3779B97F4A7C15)`` (the SplitMix64 output
function).  Error supports come from a partial Fisher-Yates shuffle of
``0..n-1`` using Lemire's bounded draw on the top 32 bits of each output.
Results therefore depend only on (seed, weight, trial) and never on how
trials are split across threads or which kernel backend runs them.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from ._backend import BACKEND, kernels, split_range, thread_count
from .binmat import BitVector
from .code import MdpcCode, build_code
from .decoder import STRICT_MAJORITY, DecoderConfig, guaranteed_radius
from .errors import DomainError

CSV_COLUMNS = ["q", "t", "weight", "trials", "successes", "probability", "ci95"]
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ExperimentSpec:
    q: int
    weights: tuple[int, ...]
    t: int = 1
    multipliers: tuple[int, ...] | None = None
    trials: int = 100_000
    rounds: int = 1
    seed: int = 0
    threshold: str | int = STRICT_MAJORITY

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.multipliers is not None:
            object.__setattr__(self, "multipliers", tuple(int(s) for s in self.multipliers))
        if self.trials < 1:
            raise DomainError("trials must be at least 1")
        if any(w < 0 for w in self.weights):
            raise DomainError("error weights must be non-negative")
        object.__setattr__(self, "seed", int(self.seed) & _MASK64)

    @property
    def decoder(self) -> DecoderConfig:
        return DecoderConfig(threshold=self.threshold, max_rounds=self.rounds)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["weights"] = list(self.weights)
        if self.multipliers is not None:
            d["multipliers"] = list(self.multipliers)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown experiment fields: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentSpec":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class WeightResult:
    weight: int
    trials: int
    successes: int
    residual_total: int = 0

    @property
    def probability(self) -> float:
        return self.successes / self.trials

    @property
    def ci95(self) -> float:
        """Normal-approximation half-width of the 95% interval."""
        p = self.probability
        return 1.959963984540054 * math.sqrt(p * (1 - p) / self.trials)


@dataclass
class SimReport:
    spec: ExperimentSpec
    rows: list[WeightResult]
    wall_time: float = 0.0
    backend: str = field(default=BACKEND, compare=False)

    def row(self, weight: int) -> WeightResult:
        return next(r for r in self.rows if r.weight == weight)


def trial_state(seed: int, weight: int, trial: int) -> int:
    return kernels.trial_state(seed & _MASK64, weight, trial)


def sample_error(n: int, weight: int, state: int) -> tuple[BitVector, int]:
    """Uniform weight-``weight`` error; returns it with the advanced state."""
    if not 0 <= weight <= n:
        raise DomainError(f"weight {weight} outside [0, {n}]")
    support, state = kernels.sample_support(state, n, weight)
    return BitVector.from_support(n, support), state


def trial_error(n: int, weight: int, seed: int, trial: int) -> BitVector:
    return sample_error(n, weight, trial_state(seed, weight, trial))[0]


def run_experiment(spec: ExperimentSpec, code: MdpcCode | None = None) -> SimReport:
    """Decode ``spec.trials`` random errors per weight, applied to the zero word."""
    start = time.perf_counter()
    code = code or build_code(spec.q, spec.t, spec.multipliers)
    H = code.H
    for w in spec.weights:
        if w > H.cols:
            raise DomainError(f"weight {w} exceeds the length {H.cols}")
    thr = spec.decoder.uniform_threshold(H)
    cs, rs = H.column_supports, H.row_supports
    workers = thread_count()
    rows = []
    for weight in spec.weights:
        chunks = split_range(0, spec.trials, workers)

        def work(chunk, weight=weight):
            return kernels.count_successes(cs, rs, H.rows, thr, weight, spec.seed,
                                           chunk[0], chunk[1], spec.rounds)

        if len(chunks) == 1:
            parts = [work(chunks[0])]
        else:
            with ThreadPoolExecutor(len(chunks)) as pool:
                parts = list(pool.map(work, chunks))
        rows.append(WeightResult(weight, spec.trials,
                                 sum(p[0] for p in parts), sum(p[1] for p in parts)))
    return SimReport(spec, rows, time.perf_counter() - start)


def table_weights(q: int, count: int = 3) -> list[int]:
    """Error weights just past the one-round guarantee: r+1, ..., r+count."""
    r = (q + 1) // 4
    return [r + i for i in range(1, count + 1)]


def report_emit(report: SimReport, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in report.rows:
            writer.writerow([report.spec.q, report.spec.t, r.weight, r.trials, r.successes,
                             f"{r.probability:.6f}", f"{r.ci95:.6f}"])
        return buf.getvalue()
    if fmt == "json":
        payload = {
            "spec": report.spec.to_dict(),
            "rows": [
                {"weight": r.weight, "trials": r.trials, "successes": r.successes,
                 "residual_total": r.residual_total,
                 "probability": round(r.probability, 6), "ci95": round(r.ci95, 6)}
                for r in report.rows
            ],
            "wall_time": report.wall_time,
            "backend": report.backend,
        }
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def report_from_json(text: str) -> SimReport:
    d = json.loads(text)
    rows = [WeightResult(r["weight"], r["trials"], r["successes"], r.get("residual_total", 0))
            for r in d["rows"]]
    return SimReport(ExperimentSpec.from_dict(d["spec"]), rows, d.get("wall_time", 0.0),
                     d.get("backend", BACKEND))


def guarantee_holds(report: SimReport, code: MdpcCode) -> bool:
    """Every weight within the one-round radius must decode in every trial."""
    radius = guaranteed_radius(code)
    return all(r.successes == r.trials for r in report.rows if r.weight <= radius)
