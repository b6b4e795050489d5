"""Projective-bundle MDPC codes: assembly, dimension, minimum distance and
the geometric shape of minimum-weight codewords."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import geometry as geo
from ._backend import kernels
from .binmat import (
    BitMatrix,
    BitVector,
    concat_horizontal,
    incidence_matrix,
    kernel_basis,
    mat_vec,
    max_column_intersection,
    rank_gf2,
)
from .errors import DomainError, ResourceError

DEFAULT_BUDGET = 26
_WORD_CAP = 1 << 22


class SupportClass(str, enum.Enum):
    OVAL_PLUS_TANGENT_LINES = "oval-plus-tangent-lines"
    LINE_PLUS_TANGENT_OVALS = "line-plus-tangent-ovals"
    DUAL_HYPEROVAL = "dual-hyperoval"
    HYPEROVAL_OF_OVALS = "hyperoval-of-ovals"
    OTHER = "other"


@dataclass(frozen=True, eq=False)
class MdpcCode:
    """Code with parity-check matrix ``(A | B_1 | ... | B_t)``."""

    q: int
    t: int
    H: BitMatrix
    multipliers: tuple[int, ...]
    difference_set: geo.DifferenceSet
    lines: geo.BlockSystem = field(repr=False)
    bundles: tuple[geo.BlockSystem, ...] = field(repr=False)

    @property
    def points(self) -> int:
        return self.q * self.q + self.q + 1

    @property
    def n(self) -> int:
        return self.H.cols

    @property
    def v(self) -> int:
        return self.q + 1

    @property
    def w(self) -> int:
        return (self.t + 1) * (self.q + 1)

    @cached_property
    def sH(self) -> int:
        return max_column_intersection(self.H)

    @cached_property
    def k(self) -> int:
        return dimension(self)

    def block(self, column: int) -> tuple[int, ...]:
        """Point set of the line or oval indexing ``column`` of H."""
        part, j = divmod(column, self.points)
        system = self.lines if part == 0 else self.bundles[part - 1]
        return system.blocks[j]


def default_multipliers(q: int) -> tuple[int, ...]:
    n = q * q + q + 1
    return (2,) if q % 2 else (n - 1,)


def build_code(q: int, t: int = 1, multipliers=None) -> MdpcCode:
    """Concatenate the plane with ``t`` verified, pairwise disjoint bundles."""
    if geo.prime_power(q) is None:
        raise DomainError(f"{q} is not a prime power")
    if t < 1:
        raise DomainError("t must be at least 1")
    D = geo.singer_difference_set(q)
    lines = geo.block_system_from_shifts(D.elements, D.modulus, q, "lines")
    if multipliers is None and t == 1:
        multipliers = default_multipliers(q)
    bundles = geo.find_disjoint_bundles(q, t, pool=multipliers, D=D)
    H = concat_horizontal([incidence_matrix(lines)] + [incidence_matrix(b) for b in bundles])
    return MdpcCode(
        q=q,
        t=t,
        H=H,
        multipliers=tuple(b.multiplier() for b in bundles),
        difference_set=D,
        lines=lines,
        bundles=tuple(bundles),
    )


def dimension(code: MdpcCode) -> int:
    return code.n - rank_gf2(code.H)


def predicted_dimension(q: int, t: int = 1) -> int | None:
    """Closed-form dimension where it is known exactly (t = 1, or q odd)."""
    if q % 2:
        return t * (q * q + q + 1) + 1
    if t == 1:
        h = q.bit_length() - 1
        return 2 ** (2 * h + 1) + 2 ** (h + 1) - 2 * 3**h + 1
    return None


def is_quasi_cyclic(code: MdpcCode) -> bool:
    """Shifting every circulant block of H by one row and one column fixes H."""
    n = code.points
    dense = code.H.dense
    parts = [dense[:, i * n:(i + 1) * n] for i in range(code.t + 1)]
    return all(np.array_equal(np.roll(np.roll(P, 1, axis=0), 1, axis=1), P) for P in parts)


# -- minimum distance ---------------------------------------------------------


def _generators(code: MdpcCode, budget: int) -> list[BitVector]:
    basis = kernel_basis(code.H)
    if len(basis) > budget:
        raise ResourceError(f"dimension {len(basis)} exceeds the enumeration budget {budget}")
    return basis


def _scan(code: MdpcCode, budget: int, cap: int) -> tuple[int, list[int], int]:
    basis = _generators(code, budget)
    if not basis:
        return 0, [], 0
    if code.n <= 64:
        gens = np.array([b.to_int() for b in basis], dtype=np.uint64)
        return kernels.gray_scan(gens, cap)
    gens = [b.to_int() for b in basis]
    best, words, count, cur = code.n + 1, [], 0, 0
    for i in range(1, 1 << len(gens)):
        cur ^= gens[(i & -i).bit_length() - 1]
        wt = cur.bit_count()
        if wt < best:
            best, words, count = wt, [], 0
        if wt == best:
            if count < cap:
                words.append(cur)
            count += 1
    return best, words, count


def min_distance_exhaustive(code: MdpcCode, budget: int = DEFAULT_BUDGET) -> int:
    """Exact minimum distance by Gray-code enumeration of all codewords."""
    return _scan(code, budget, 1)[0]


def _support_key(v: BitVector):
    return tuple(v.support())


def min_weight_codewords(code: MdpcCode, budget: int = DEFAULT_BUDGET) -> list[BitVector]:
    """All nonzero codewords of minimum weight, sorted by support."""
    best, words, count = _scan(code, budget, _WORD_CAP)
    if count > len(words):
        raise ResourceError(f"{count} minimum-weight codewords exceed the cap {_WORD_CAP}")
    vecs = [BitVector.from_int(code.n, w) for w in words]
    return sorted(vecs, key=_support_key)


def classify_support(codeword: BitVector, code: MdpcCode) -> SupportClass:
    if code.t != 1:
        raise DomainError("support classification is defined for t = 1")
    if codeword.length != code.n or not mat_vec(code.H, codeword).is_zero():
        raise DomainError("not a codeword")
    n, q = code.points, code.q
    support = codeword.support()
    L = [j for j in support if j < n]
    O = [j - n for j in support if j >= n]
    lines, ovals = code.lines, code.bundles[0]
    if len(support) != q + 2:
        return SupportClass.OTHER
    if q % 2:
        if len(O) == 1 and sorted(geo.tangent_blocks(ovals, O[0], lines)) == L:
            return SupportClass.OVAL_PLUS_TANGENT_LINES
        if len(L) == 1 and sorted(geo.tangent_blocks(lines, L[0], ovals)) == O:
            return SupportClass.LINE_PLUS_TANGENT_OVALS
        return SupportClass.OTHER
    if not O and geo.covers_evenly_zero_or_two([lines.blocks[j] for j in L], n):
        return SupportClass.DUAL_HYPEROVAL
    if not L and geo.covers_evenly_zero_or_two([ovals.blocks[j] for j in O], n):
        return SupportClass.HYPEROVAL_OF_OVALS
    return SupportClass.OTHER


def min_weight_at_most(code: MdpcCode, wmax: int) -> tuple[bool, BitVector | None]:
    """Is there a nonzero codeword of weight <= wmax?  Returns the witness with
    the smallest weight, lexicographically smallest support among those."""
    if wmax > 4:
        raise ResourceError("column-dependence search supports wmax <= 4")
    cols = [code.H.column(j).to_int() for j in range(code.n)]
    n = code.n

    def witness(support):
        return True, BitVector.from_support(n, support)

    if wmax >= 1:
        for j, c in enumerate(cols):
            if c == 0:
                return witness([j])
    by_value: dict[int, list[int]] = {}
    for j, c in enumerate(cols):
        by_value.setdefault(c, []).append(j)
    if wmax >= 2:
        best = min((tuple(js[:2]) for js in by_value.values() if len(js) > 1), default=None)
        if best:
            return witness(best)
    if wmax >= 3:
        for a, b in combinations(range(n), 2):
            for c in by_value.get(cols[a] ^ cols[b], ()):
                if c > b:
                    return witness([a, b, c])
    if wmax >= 4:
        pairs: dict[int, list[tuple[int, int]]] = {}
        for a, b in combinations(range(n), 2):
            pairs.setdefault(cols[a] ^ cols[b], []).append((a, b))
        best = None
        for group in pairs.values():
            for (a, b), (c, d) in combinations(group, 2):
                quad = tuple(sorted({a, b, c, d}))
                if len(quad) == 4 and (best is None or quad < best):
                    best = quad
        if best:
            return witness(best)
    return False, None


# -- serialisation --------------------------------------------------------------


def descriptor(code: MdpcCode, d: int | None = None) -> dict:
    out = {
        "q": code.q,
        "t": code.t,
        "multipliers": list(code.multipliers),
        "n": code.n,
        "k": code.k,
        "sH": code.sH,
    }
    if d is not None:
        out["d"] = d
    return out


def descriptor_json(code: MdpcCode, d: int | None = None) -> str:
    return json.dumps(descriptor(code, d), indent=2, sort_keys=True) + "\n"
