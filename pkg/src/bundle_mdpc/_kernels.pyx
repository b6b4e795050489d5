# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Must agree bit for bit with ``_fallback``."""

from libc.stdint cimport uint64_t, int32_t, uint8_t, uint32_t
from libc.stdlib cimport malloc, calloc, free


cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL


cdef inline uint64_t _finalize(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t _next(uint64_t* state) noexcept nogil:
    state[0] += GOLDEN
    return _finalize(state[0])


cdef inline uint64_t _trial_state(uint64_t seed, uint64_t weight, uint64_t trial) noexcept nogil:
    cdef uint64_t s = _finalize(seed + GOLDEN)
    s = _finalize((s ^ weight) + GOLDEN)
    return _finalize((s ^ trial) + GOLDEN)


cdef inline uint32_t _randbelow(uint64_t* state, uint32_t bound) noexcept nogil:
    cdef uint64_t m
    cdef uint32_t low, thresh
    while True:
        m = (_next(state) >> 32) * <uint64_t>bound
        low = <uint32_t>(m & 0xFFFFFFFFULL)
        if low < bound:
            thresh = <uint32_t>((0x100000000ULL - bound) % bound)
            if low < thresh:
                continue
        return <uint32_t>(m >> 32)


def trial_state(uint64_t seed, uint64_t weight, uint64_t trial):
    return _trial_state(seed, weight, trial)


def sample_support(uint64_t state, int n, int weight):
    """Partial Fisher-Yates draw; returns (sorted support, final state)."""
    cdef int32_t* perm = <int32_t*>malloc(n * sizeof(int32_t))
    cdef int i, j, tmp
    for i in range(n):
        perm[i] = i
    for i in range(weight):
        j = i + <int>_randbelow(&state, <uint32_t>(n - i))
        tmp = perm[i]; perm[i] = perm[j]; perm[j] = tmp
    out = []
    for i in range(weight):
        out.append(perm[i])
    out.sort()
    free(perm)
    return out, state


cdef struct Work:
    int n
    int m
    int v
    int w
    int thr
    const int32_t* colsupp
    const int32_t* rowsupp
    uint8_t* y
    uint8_t* synd
    int32_t* u
    int32_t* supp
    int nsupp
    int32_t* rows_touched
    int nrows
    int32_t* cols_touched
    int ncols
    int32_t* flips
    int nflips


cdef int _syndrome(Work* W) noexcept nogil:
    """Fill synd from the support; returns number of unsatisfied checks."""
    cdef int a, b, i, j, unsat = 0
    W.nrows = 0
    for a in range(W.nsupp):
        j = W.supp[a]
        for b in range(W.v):
            i = W.colsupp[j * W.v + b]
            if W.synd[i] == 0:
                W.rows_touched[W.nrows] = i
                W.nrows += 1
                W.synd[i] = 1
                unsat += 1
            elif W.synd[i] == 1:
                W.synd[i] = 2
                unsat -= 1
            else:
                W.synd[i] = 1
                unsat += 1
    return unsat


cdef void _clear_syndrome(Work* W) noexcept nogil:
    cdef int a
    for a in range(W.nrows):
        W.synd[W.rows_touched[a]] = 0
    W.nrows = 0


cdef void _round(Work* W) noexcept nogil:
    """One parallel bit-flip round on W.y / W.supp; sets W.flips."""
    cdef int a, b, i, j, k
    _syndrome(W)
    W.ncols = 0
    for a in range(W.nrows):
        i = W.rows_touched[a]
        if W.synd[i] == 1:
            for b in range(W.w):
                j = W.rowsupp[i * W.w + b]
                if W.u[j] == 0:
                    W.cols_touched[W.ncols] = j
                    W.ncols += 1
                W.u[j] += 1
    _clear_syndrome(W)
    W.nflips = 0
    for a in range(W.ncols):
        j = W.cols_touched[a]
        if W.u[j] >= W.thr:
            W.flips[W.nflips] = j
            W.nflips += 1
        W.u[j] = 0
    for a in range(W.nflips):
        j = W.flips[a]
        if W.y[j]:
            W.y[j] = 0
        else:
            W.y[j] = 1
            W.supp[W.nsupp] = j
            W.nsupp += 1
    k = 0
    for a in range(W.nsupp):
        j = W.supp[a]
        if W.y[j]:
            W.supp[k] = j
            k += 1
    W.nsupp = k


cdef int _alloc(Work* W, int n, int m, int v, int w, int thr,
                const int32_t* colsupp, const int32_t* rowsupp) noexcept nogil:
    W.n = n; W.m = m; W.v = v; W.w = w; W.thr = thr
    W.colsupp = colsupp
    W.rowsupp = rowsupp
    W.y = <uint8_t*>calloc(n, 1)
    W.synd = <uint8_t*>calloc(m, 1)
    W.u = <int32_t*>calloc(n, sizeof(int32_t))
    W.supp = <int32_t*>malloc(2 * n * sizeof(int32_t))
    W.rows_touched = <int32_t*>malloc(m * sizeof(int32_t))
    W.cols_touched = <int32_t*>malloc(n * sizeof(int32_t))
    W.flips = <int32_t*>malloc(n * sizeof(int32_t))
    W.nsupp = 0
    W.nrows = 0
    W.ncols = 0
    W.nflips = 0
    return 0


cdef void _free(Work* W) noexcept nogil:
    free(W.y); free(W.synd); free(W.u); free(W.supp)
    free(W.rows_touched); free(W.cols_touched); free(W.flips)


cdef void _reset_word(Work* W) noexcept nogil:
    cdef int a
    for a in range(W.nsupp):
        W.y[W.supp[a]] = 0
    W.nsupp = 0


def count_successes(const int32_t[:, ::1] colsupp, const int32_t[:, ::1] rowsupp, int m,
                    int thr, int weight, uint64_t seed, long lo, long hi, int rounds):
    """Decode errors for trials ``lo..hi-1`` of one weight; return (successes, residual sum)."""
    cdef int n = colsupp.shape[0]
    cdef int v = colsupp.shape[1]
    cdef int w = rowsupp.shape[1]
    cdef Work W
    cdef long trial, successes = 0, residual = 0
    cdef uint64_t state
    cdef int i, j, tmp, r, unsat
    cdef int32_t* perm = <int32_t*>malloc(n * sizeof(int32_t))
    cdef int32_t* drawn = <int32_t*>malloc((weight + 1) * sizeof(int32_t))
    _alloc(&W, n, m, v, w, thr, &colsupp[0, 0], &rowsupp[0, 0])
    with nogil:
        for i in range(n):
            perm[i] = i
        for trial in range(lo, hi):
            state = _trial_state(seed, <uint64_t>weight, <uint64_t>trial)
            for i in range(weight):
                j = i + <int>_randbelow(&state, <uint32_t>(n - i))
                tmp = perm[i]; perm[i] = perm[j]; perm[j] = tmp
                drawn[i] = j
            for i in range(weight):
                W.supp[i] = perm[i]
                W.y[perm[i]] = 1
            W.nsupp = weight
            # undo the swaps so perm is the identity again
            for i in range(weight - 1, -1, -1):
                j = drawn[i]
                tmp = perm[i]; perm[i] = perm[j]; perm[j] = tmp
            unsat = _syndrome(&W)
            _clear_syndrome(&W)
            r = 0
            while unsat and r < rounds:
                _round(&W)
                r += 1
                unsat = _syndrome(&W)
                _clear_syndrome(&W)
            if unsat == 0:
                successes += 1
            residual += W.nsupp
            _reset_word(&W)
    _free(&W)
    free(perm)
    free(drawn)
    return successes, residual


def radius_scan(const int32_t[:, ::1] colsupp, const int32_t[:, ::1] rowsupp, int m,
                int thr, int weight, int first_lo, int first_hi):
    """First pattern of exactly ``weight`` errors, with smallest position in
    ``[first_lo, first_hi)``, that one round does not correct; None if all pass."""
    cdef int n = colsupp.shape[0]
    cdef int v = colsupp.shape[1]
    cdef int w = rowsupp.shape[1]
    cdef Work W
    cdef int32_t* idx = <int32_t*>malloc((weight + 1) * sizeof(int32_t))
    cdef int i, a, ok, found = 0
    if weight == 0 or first_lo >= first_hi or first_lo > n - weight:
        free(idx)
        return None
    _alloc(&W, n, m, v, w, thr, &colsupp[0, 0], &rowsupp[0, 0])
    with nogil:
        for i in range(weight):
            idx[i] = first_lo + i
        while True:
            if idx[0] >= first_hi:
                break
            for i in range(weight):
                W.supp[i] = idx[i]
                W.y[idx[i]] = 1
            W.nsupp = weight
            _round(&W)
            ok = W.nsupp == 0
            _reset_word(&W)
            if not ok:
                found = 1
                break
            # advance to the next combination in lexicographic order
            i = weight - 1
            while i >= 0 and idx[i] == n - weight + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for a in range(i + 1, weight):
                idx[a] = idx[a - 1] + 1
    result = None
    if found:
        result = []
        for i in range(weight):
            result.append(idx[i])
    _free(&W)
    free(idx)
    return result


def one_round(const int32_t[:, ::1] colsupp, const int32_t[:, ::1] rowsupp, int m,
              int thr, support):
    """Flip positions of one round applied to the word with the given support."""
    cdef int n = colsupp.shape[0]
    cdef Work W
    cdef int a
    _alloc(&W, n, m, colsupp.shape[1], rowsupp.shape[1], thr, &colsupp[0, 0], &rowsupp[0, 0])
    for j in support:
        W.supp[W.nsupp] = j
        W.y[j] = 1
        W.nsupp += 1
    _round(&W)
    flips = []
    for a in range(W.nflips):
        flips.append(W.flips[a])
    flips.sort()
    _reset_word(&W)
    _free(&W)
    return flips


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def gray_scan(const uint64_t[::1] gens, long cap):
    """Minimum weight over all nonzero combinations of ``gens`` (length <= 64 bits)
    and up to ``cap`` words attaining it, visited in Gray-code order."""
    cdef int k = gens.shape[0]
    cdef unsigned long long i, total, cur = 0
    cdef int wt, best = 65
    cdef long count = 0
    cdef uint64_t* keep = <uint64_t*>malloc((cap + 1) * sizeof(uint64_t))
    if k == 0:
        free(keep)
        return None, [], 0
    total = 1ULL << k
    with nogil:
        for i in range(1, total):
            cur ^= gens[__builtin_ctzll(i)]
            wt = __builtin_popcountll(cur)
            if wt < best:
                best = wt
                count = 0
            if wt == best:
                if count < cap:
                    keep[count] = cur
                count += 1
    words = []
    for i in range(min(count, cap)):
        words.append(keep[i])
    free(keep)
    return best, words, count
