"""Parallel bit-flipping decoding over GF(2)."""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels, split_range, thread_count
from .binmat import BitMatrix, BitVector, mat_vec
from .errors import DomainError, ResourceError, ShapeError

STRICT_MAJORITY = "strict-majority"
MAX_PATTERNS = 10**8


@dataclass(frozen=True)
class DecoderConfig:
    """``threshold`` is ``"strict-majority"`` (flip when more than half of a
    position's checks fail; ties stay) or a fixed count tau (flip when at
    least tau checks fail)."""

    threshold: str | int = STRICT_MAJORITY
    max_rounds: int = 1
    policy: str = "parallel"

    def __post_init__(self):
        if self.max_rounds < 1:
            raise DomainError("max_rounds must be at least 1")
        if self.policy != "parallel":
            raise DomainError("only the parallel flip policy is implemented")
        if self.threshold != STRICT_MAJORITY and not (isinstance(self.threshold, int) and self.threshold >= 1):
            raise DomainError(f"bad threshold {self.threshold!r}")

    def thresholds(self, H: BitMatrix) -> np.ndarray:
        """Per-column flip threshold: flip position j when u_j >= result[j]."""
        v = H.column_weights()
        if self.threshold == STRICT_MAJORITY:
            return v // 2 + 1
        if np.any(self.threshold > v):
            raise DomainError(f"fixed threshold {self.threshold} exceeds a column weight")
        return np.full(H.cols, self.threshold, dtype=np.int64)

    def uniform_threshold(self, H: BitMatrix) -> int:
        thr = self.thresholds(H)
        if thr.size and np.any(thr != thr[0]):
            raise DomainError("compiled kernels need a constant column weight")
        return int(thr[0])


@dataclass
class DecodeReport:
    word: BitVector
    rounds: int
    flips_per_round: list[int]
    success: bool
    residual_weight: int | None = None
    flipped: list[list[int]] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        out = {"success": self.success, "rounds": self.rounds, "flips_per_round": self.flips_per_round}
        if self.residual_weight is not None:
            out["residual_weight"] = self.residual_weight
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def syndrome(H: BitMatrix, y: BitVector) -> BitVector:
    return mat_vec(H, y)


def unsatisfied_counts(H: BitMatrix, y: BitVector) -> np.ndarray:
    """``u_j``: how many failing checks contain position j."""
    s = syndrome(H, y).to_bits().astype(np.int64)
    return s @ H.dense


def bit_flip_round(H: BitMatrix, y: BitVector, config: DecoderConfig = DecoderConfig()):
    """One parallel round; returns (new word, sorted flipped positions)."""
    if y.length != H.cols:
        raise ShapeError(f"word length {y.length} != {H.cols} columns")
    flips = np.flatnonzero(unsatisfied_counts(H, y) >= config.thresholds(H))
    mask = np.zeros(H.cols, dtype=np.uint8)
    mask[flips] = 1
    return y ^ BitVector.from_bits(mask), flips.tolist()


def decode(H: BitMatrix, y: BitVector, config: DecoderConfig = DecoderConfig(),
           error: BitVector | None = None) -> DecodeReport:
    """Iterate rounds until the syndrome vanishes or ``max_rounds`` is spent.

    When the true ``error`` is given the report carries the weight of what is
    left of it.
    """
    word = y
    flips_per_round, flipped = [], []
    for _ in range(config.max_rounds):
        word, flips = bit_flip_round(H, word, config)
        flips_per_round.append(len(flips))
        flipped.append(flips)
        if syndrome(H, word).is_zero():
            break
    residual = None
    if error is not None:
        residual = (word ^ y ^ error).weight()
    return DecodeReport(
        word=word,
        rounds=len(flips_per_round),
        flips_per_round=flips_per_round,
        success=syndrome(H, word).is_zero(),
        residual_weight=residual,
        flipped=flipped,
    )


def guaranteed_radius(code) -> int:
    """All errors up to this weight are corrected by a single round."""
    return code.v // (2 * code.sH)


def _pattern_count(n: int, w: int) -> int:
    return sum(math.comb(n, i) for i in range(1, w + 1))


def exhaustive_radius_check(code, w: int, config: DecoderConfig = DecoderConfig()):
    """Does one round correct every error of weight 1..w on the zero word?

    Returns ``(True, None)`` or ``(False, pattern)`` where ``pattern`` is the
    failing support of smallest weight, lexicographically first among those.
    """
    H = code.H if hasattr(code, "H") else code
    n = H.cols
    if _pattern_count(n, w) > MAX_PATTERNS:
        raise ResourceError(f"{_pattern_count(n, w)} patterns exceed the guard of {MAX_PATTERNS}")
    thr = config.uniform_threshold(H)
    cs, rs = H.column_supports, H.row_supports
    workers = thread_count()
    for weight in range(1, w + 1):
        # many more chunks than workers: low first positions carry most patterns
        chunks = split_range(0, n - weight + 1, 1 if workers == 1 else 8 * workers)

        def scan(chunk, weight=weight):
            return kernels.radius_scan(cs, rs, H.rows, thr, weight, chunk[0], chunk[1])

        if workers == 1:
            results = [scan(c) for c in chunks]
        else:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(scan, chunks))
        failures = [r for r in results if r is not None]
        if failures:
            return False, min(failures)
    return True, None

