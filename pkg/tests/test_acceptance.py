"""Acceptance suite: one PASS/FAIL line per criterion, printed in the
terminal summary (or directly when run as a script).

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest

from bundle_mdpc import geometry as geo
from bundle_mdpc._backend import BACKEND
from bundle_mdpc.binmat import incidence_matrix, mat_mul_int, max_column_intersection
from bundle_mdpc.code import (
    SupportClass,
    build_code,
    classify_support,
    dimension,
    min_distance_exhaustive,
    min_weight_codewords,
)
from bundle_mdpc.decoder import exhaustive_radius_check
from bundle_mdpc.errors import SearchFailure
from bundle_mdpc.sim import ExperimentSpec, report_emit, run_experiment, table_weights

RESULTS: list[str] = []

# Reference success rates (percent) at weights floor((q+1)/4) + 1, 2, 3.
TABLE = {
    5: (50.82, 0.16, None),
    7: (50.10, 0.34, None),
    9: (79.31, 3.86, None),
    11: (43.83, 0.19, None),
    13: (90.4, 14.4, None),
    17: (97.2, 57.8, 7.8),
    19: (91.8, 42.6, 10.7),
    23: (97.86, 77.66, 31.3),
    25: (99.87, 95.3, 71.25),
}
TABLE_TOL_PP = 5.0
TABLE_MAX_BAD_ROWS = 2  # three or more rows out of tolerance is a failure
TABLE_TRIALS = 100_000
TABLE_SEED = 42


def record(number, title, ok, detail, elapsed, limit):
    in_time = elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    timing = f"{elapsed:.2f}s < {limit:g}s" if in_time else f"{elapsed:.2f}s exceeds {limit:g}s"
    RESULTS.append(f"{status} criterion {number:>2}: {title} [{detail}] ({timing})")
    assert ok, detail
    assert in_time, timing


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_difference_set_axioms():
    qs = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25]

    def run():
        bad = [s for s, n in [((0, 1, 3), 7), ((0, 1, 3, 9), 13)] if not geo.is_perfect_difference_set(s, n)]
        for q in qs:
            D = geo.singer_difference_set(q)
            if not geo.is_perfect_difference_set(D.elements, q * q + q + 1):
                bad.append(q)
        return bad

    bad, dt = timed(run)
    record(1, "perfect difference sets", not bad, f"failures: {bad}" if bad else f"2 worked examples + {len(qs)} Singer sets", dt, 1)


def test_plane_identity():
    qs = [2, 3, 4, 5, 7, 8, 9]

    def run():
        bad = []
        for q in qs:
            A = incidence_matrix(geo.plane(q))
            n = q * q + q + 1
            if not np.array_equal(mat_mul_int(A, A.T), q * np.eye(n, dtype=np.int64) + 1):
                bad.append(q)
        return bad

    bad, dt = timed(run)
    record(2, "A A^T = qI + J", not bad, f"failures: {bad}" if bad else f"q in {qs}", dt, 5)


def closed_form_dimension(q):
    if q % 2:
        return q * q + q + 2
    h = int(math.log2(q))
    return 2 ** (2 * h + 1) + 2 ** (h + 1) - 2 * 3**h + 1


def test_dimension():
    qs = [3, 5, 7, 9, 11, 13, 2, 4, 8]

    def run():
        return {q: (dimension(build_code(q)), closed_form_dimension(q)) for q in qs}

    dims, dt = timed(run)
    bad = {q: v for q, v in dims.items() if v[0] != v[1]}
    # the even closed form evaluates to 7, 23, 91 at q = 2, 4, 8
    detail = ", ".join(f"q={q}:{k}" for q, (k, _) in dims.items())
    record(3, "dimension closed forms", not bad, f"mismatch {bad}" if bad else detail, dt, 10)


def test_minimum_distance():
    def run():
        return {q: min_distance_exhaustive(build_code(q)) for q in (2, 3, 4)}

    d, dt = timed(run)
    ok = d == {2: 4, 3: 5, 4: 6}
    record(4, "minimum distance q+2", ok, f"d = {d}", dt, 60)


def test_support_characterization():
    odd = {SupportClass.OVAL_PLUS_TANGENT_LINES, SupportClass.LINE_PLUS_TANGENT_OVALS}
    even = {SupportClass.DUAL_HYPEROVAL, SupportClass.HYPEROVAL_OF_OVALS}

    def run():
        out = {}
        for q in (2, 3, 4):
            code = build_code(q)
            tally = {}
            for c in min_weight_codewords(code):
                cls = classify_support(c, code)
                tally[cls.value] = tally.get(cls.value, 0) + 1
            out[q] = tally
        return out

    tallies, dt = timed(run)
    ok = (
        sum(tallies[3].values()) == 26
        and set(tallies[3]) <= {c.value for c in odd}
        and all(set(tallies[q]) <= {c.value for c in even} for q in (2, 4))
        and all("other" not in t for t in tallies.values())
    )
    record(5, "minimum-weight supports", ok, f"{tallies}", dt, 60)


def test_column_intersection():
    def run():
        out = {}
        for q in (2, 3, 4, 5, 7, 8, 9, 11, 13):
            code = build_code(q)
            out[(q, "A")] = max_column_intersection(incidence_matrix(code.lines))
            out[(q, 1)] = code.sH
        for q in (5, 7, 9):
            out[(q, 2)] = build_code(q, 2).sH
        return out

    s, dt = timed(run)
    ok = all(v == 1 for k, v in s.items() if k[1] == "A")
    ok &= all(v == 2 for k, v in s.items() if k[1] == 1)
    ok &= all(v <= 4 for k, v in s.items() if k[1] == 2)
    detail = "A:1 everywhere, (A|B):2 everywhere, t=2: " + ", ".join(f"q={k[0]}:{v}" for k, v in s.items() if k[1] == 2)
    record(6, "maximum column intersection", ok, detail if ok else f"{s}", dt, 10)


def test_one_round_guarantee():
    def run():
        out = {}
        for q in (5, 7, 9, 11):
            w = (q + 1) // 4
            out[q] = (w, exhaustive_radius_check(build_code(q), w))
        return out

    res, dt = timed(run)
    ok = all(r[1][0] for r in res.values())
    detail = ", ".join(f"q={q} w<={w}:{'ok' if r[0] else r[1]}" for q, (w, r) in res.items())
    record(7, "one-round correction radius", ok, detail, dt, 300)


_table_cache = {}


def table_reports():
    if "reports" not in _table_cache:
        start = time.perf_counter()
        reports = [
            run_experiment(ExperimentSpec(q=q, weights=table_weights(q), trials=TABLE_TRIALS, seed=TABLE_SEED))
            for q in TABLE
        ]
        _table_cache["reports"] = (reports, time.perf_counter() - start)
    return _table_cache["reports"]


def test_table_reproduction():
    reports, dt = table_reports()
    rows, bad = [], []
    for rep in reports:
        q = rep.spec.q
        for r, ref in zip(rep.rows, TABLE[q]):
            if ref is None:
                continue
            got = 100 * r.probability
            off = got - ref
            rows.append((q, r.weight, got, ref))
            if abs(off) > TABLE_TOL_PP:
                bad.append(f"q={q} w={r.weight}: {got:.2f}% vs {ref}% ({off:+.2f}pp)")
    for q, w, got, ref in rows:
        flag = "ok " if abs(got - ref) <= TABLE_TOL_PP else "OUT"
        RESULTS.append(f"     {flag} q={q:>2} w={w}: {got:6.2f}% vs {ref:6.2f}% ({got - ref:+.2f}pp)")
    ok = len(bad) <= TABLE_MAX_BAD_ROWS
    detail = f"{len(rows) - len(bad)}/{len(rows)} rows within +-{TABLE_TOL_PP:g}pp"
    if bad:
        detail += "; out of tolerance: " + "; ".join(bad)
    record(8, "success-rate table", ok, detail, dt, 600)


def test_generalized_dimension():
    def run():
        out = {}
        for q in (3, 5):
            try:
                out[q] = dimension(build_code(q, 2))
            except SearchFailure as exc:
                out[q] = exc
        return out

    dims, dt = timed(run)
    failed = {q: v for q, v in dims.items() if isinstance(v, SearchFailure)}
    if failed:
        RESULTS.append(f"SKIP criterion  9: two-bundle dimension [bundle search failed: {failed}]")
        pytest.skip(f"bundle search failed: {failed}")
    expected = {q: 2 * (q * q + q + 1) + 1 for q in (3, 5)}
    record(9, "two-bundle dimension", dims == expected, f"k = {dims}, expected {expected}", dt, 30)


def test_determinism(monkeypatch):
    reports, _ = table_reports()
    reference = "".join(report_emit(r) for r in reports)
    start = time.perf_counter()
    outputs = {}
    for threads in ("1", "4"):
        monkeypatch.setenv("BUNDLE_MDPC_THREADS", threads)
        outputs[threads] = "".join(
            report_emit(run_experiment(ExperimentSpec(q=q, weights=table_weights(q), trials=TABLE_TRIALS, seed=TABLE_SEED)))
            for q in TABLE
        )
    dt = time.perf_counter() - start
    ok = all(o == reference for o in outputs.values())
    record(10, "byte-identical CSV across thread counts", ok,
           f"seed {TABLE_SEED}, threads default/1/4, backend {BACKEND}", dt, 1200)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
