"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Every function here returns exactly what its compiled twin returns.  Work is
vectorised across trials or patterns instead of looping per word.
"""

from __future__ import annotations

from itertools import combinations, islice

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_BATCH = 2048

_G = np.uint64(GOLDEN)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_LOW32 = np.uint64(0xFFFFFFFF)


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_state(seed: int, weight: int, trial: int) -> int:
    s = _finalize((seed + GOLDEN) & MASK64)
    s = _finalize(((s ^ weight) + GOLDEN) & MASK64)
    return _finalize(((s ^ trial) + GOLDEN) & MASK64)


def _randbelow(state: int, bound: int) -> tuple[int, int]:
    while True:
        state = (state + GOLDEN) & MASK64
        m = (_finalize(state) >> 32) * bound
        low = m & 0xFFFFFFFF
        if low < bound and low < ((1 << 32) - bound) % bound:
            continue
        return m >> 32, state


def sample_support(state: int, n: int, weight: int) -> tuple[list[int], int]:
    """Partial Fisher-Yates draw; returns (sorted support, final state)."""
    perm: dict[int, int] = {}
    for i in range(weight):
        r, state = _randbelow(state, n - i)
        j = i + r
        perm[i], perm[j] = perm.get(j, j), perm.get(i, i)
    return sorted(perm.get(i, i) for i in range(weight)), state


# -- vectorised sampling ------------------------------------------------------


def _vfinalize(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _vtrial_states(seed: int, weight: int, trials: np.ndarray) -> np.ndarray:
    base = _finalize(((_finalize((seed + GOLDEN) & MASK64) ^ weight) + GOLDEN) & MASK64)
    with np.errstate(over="ignore"):
        return _vfinalize((np.uint64(base) ^ trials.astype(np.uint64)) + _G)


def _vrandbelow(states: np.ndarray, bound: int) -> np.ndarray:
    """Advance every state in place; return one bounded draw per state."""
    b = np.uint64(bound)
    thresh = np.uint64(((1 << 32) - bound) % bound)
    out = np.empty(states.shape, dtype=np.uint64)
    todo = np.arange(states.size)
    with np.errstate(over="ignore"):
        while todo.size:
            states[todo] += _G
            m = (_vfinalize(states[todo]) >> np.uint64(32)) * b
            low = m & _LOW32
            reject = (low < b) & (low < thresh)
            keep = ~reject
            out[todo[keep]] = m[keep] >> np.uint64(32)
            todo = todo[reject]
    return out


def sample_batch(seed: int, weight: int, lo: int, hi: int, n: int) -> np.ndarray:
    """0/1 error matrix for trials ``lo..hi-1``, one row per trial."""
    trials = np.arange(lo, hi, dtype=np.int64)
    states = _vtrial_states(seed, weight, trials)
    B = trials.size
    perm = np.tile(np.arange(n, dtype=np.int32), (B, 1))
    rows = np.arange(B)
    for i in range(weight):
        j = i + _vrandbelow(states, n - i).astype(np.int64)
        a = perm[rows, i].copy()
        perm[rows, i] = perm[rows, j]
        perm[rows, j] = a
    E = np.zeros((B, n), dtype=np.float32)
    if weight:
        E[rows[:, None], perm[:, :weight]] = 1.0
    return E


# -- decoding ---------------------------------------------------------------


def _dense(colsupp: np.ndarray, m: int) -> np.ndarray:
    n = colsupp.shape[0]
    H = np.zeros((m, n), dtype=np.float32)
    H[colsupp.ravel(), np.repeat(np.arange(n), colsupp.shape[1])] = 1.0
    return H


def _flip(Y: np.ndarray, H: np.ndarray, thr: int) -> np.ndarray:
    S = np.mod(Y @ H.T, 2.0)
    U = S @ H
    return (U >= thr).astype(np.float32)


def count_successes(colsupp, rowsupp, m, thr, weight, seed, lo, hi, rounds):
    H = _dense(np.asarray(colsupp), m)
    n = H.shape[1]
    successes = 0
    residual = 0
    for start in range(lo, hi, _BATCH):
        Y = sample_batch(seed, weight, start, min(hi, start + _BATCH), n)
        for _ in range(rounds):
            Y = np.abs(Y - _flip(Y, H, thr))
        ok = ~np.mod(Y @ H.T, 2.0).any(axis=1)
        successes += int(ok.sum())
        residual += int(Y.sum())
    return successes, residual


def radius_scan(colsupp, rowsupp, m, thr, weight, first_lo, first_hi):
    H = _dense(np.asarray(colsupp), m)
    n = H.shape[1]
    if weight == 0 or first_lo >= first_hi or first_lo > n - weight:
        return None
    for first in range(first_lo, min(first_hi, n - weight + 1)):
        rest = combinations(range(first + 1, n), weight - 1)
        while True:
            chunk = list(islice(rest, _BATCH))
            if not chunk:
                break
            idx = np.empty((len(chunk), weight), dtype=np.int64)
            idx[:, 0] = first
            if weight > 1:
                idx[:, 1:] = np.array(chunk, dtype=np.int64)
            E = np.zeros((len(chunk), n), dtype=np.float32)
            E[np.arange(len(chunk))[:, None], idx] = 1.0
            bad = np.flatnonzero((_flip(E, H, thr) != E).any(axis=1))
            if bad.size:
                return idx[bad[0]].tolist()
    return None


def one_round(colsupp, rowsupp, m, thr, support):
    H = _dense(np.asarray(colsupp), m)
    y = np.zeros((1, H.shape[1]), dtype=np.float32)
    y[0, list(support)] = 1.0
    return np.flatnonzero(_flip(y, H, thr)[0]).tolist()


def gray_scan(gens, cap):
    gens = np.asarray(gens, dtype=np.uint64)
    k = gens.size
    if k == 0:
        return None, [], 0
    k_lo = min(k, 16)
    table = np.zeros(1, dtype=np.uint64)
    for g in gens[:k_lo]:
        table = np.concatenate([table, table ^ g])
    best = 65
    found: list[np.ndarray] = []
    count = 0
    for hi_index in range(1 << (k - k_lo)):
        offset = np.uint64(0)
        for b in range(k - k_lo):
            if hi_index >> b & 1:
                offset ^= gens[k_lo + b]
        words = table ^ offset
        if hi_index == 0:
            words = words[1:]
        wts = np.bitwise_count(words)
        w = int(wts.min())
        if w < best:
            best, found, count = w, [], 0
        if w == best:
            hits = words[wts == w]
            found.append(hits)
            count += hits.size
    words = np.concatenate(found)[:cap] if found else np.zeros(0, dtype=np.uint64)
    return best, [int(x) for x in words], count
