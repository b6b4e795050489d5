"""Perfect difference sets, the cyclic model of PG(2,q) and projective bundles.

Points of the plane are the residues modulo ``n = q^2 + q + 1``.  Lines are
the cyclic shifts of a perfect difference set ``D``; the bundles used here are
the cyclic shifts of ``sD`` for a unit multiplier ``s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, SearchFailure, StructureError
from .gf import FiniteField, TraceMap, prime_power

MAX_POINTS = 2**20

# Multipliers whose shift systems are conic bundles for odd q.
NAMED_MULTIPLIERS = {"circumscribed": -1, "inscribed": 2, "self-polar": "1/2"}


@dataclass(frozen=True)
class DifferenceSet:
    order: int
    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if not is_perfect_difference_set(self.elements, self.modulus):
            raise StructureError("elements do not form a perfect difference set")
        if len(self.elements) != self.order + 1:
            raise StructureError(f"expected {self.order + 1} elements, got {len(self.elements)}")


@dataclass(frozen=True)
class Multiplier:
    s: int
    name: str = "custom"

    @classmethod
    def named(cls, name: str, n: int) -> "Multiplier":
        value = NAMED_MULTIPLIERS[name]
        if value == "1/2":
            return cls(pow(2, -1, n), name)
        return cls(value % n, name)


def is_perfect_difference_set(elements, n: int) -> bool:
    """True iff the differences of distinct elements are pairwise distinct mod n."""
    try:
        elems = [int(e) for e in elements]
    except (TypeError, ValueError):
        return False
    if n < 1 or any(e < 0 or e >= n for e in elems) or len(set(elems)) != len(elems):
        return False
    seen = set()
    for a in elems:
        for b in elems:
            if a != b:
                d = (a - b) % n
                if d in seen:
                    return False
                seen.add(d)
    return True


def singer_difference_set(q: int) -> DifferenceSet:
    """Exponents ``i`` with ``Tr(beta^i) = 0`` for the canonical primitive beta of GF(q^3)."""
    pe = prime_power(q)
    if pe is None:
        raise DomainError(f"{q} is not a prime power")
    n = q * q + q + 1
    if n > MAX_POINTS:
        raise DomainError(f"q^2+q+1 = {n} exceeds the supported 2^20 points")
    p, e = pe
    f = FiniteField(p, 3 * e)
    tr = TraceMap(f, q)
    x = f.gen()
    power = f.one()
    elements = []
    for i in range(n):
        if not any(tr.coeffs(power.coeffs)):
            elements.append(i)
        power = power * x
    return DifferenceSet(q, n, tuple(elements))


def scale_set(s: int | Multiplier, D: DifferenceSet | tuple, n: int | None = None) -> tuple[int, ...]:
    """``{s*d mod n}`` sorted; a Multiplier or plain residue is accepted."""
    if isinstance(s, Multiplier):
        s = s.s
    if isinstance(D, DifferenceSet):
        elements, n = D.elements, D.modulus
    else:
        elements = D
    if math.gcd(s, n) != 1:
        raise DomainError(f"multiplier {s} is not a unit modulo {n}")
    return tuple(sorted((s * d) % n for d in elements))


@dataclass(frozen=True)
class BlockSystem:
    """A family of ``n`` blocks over the points ``0..n-1``.

    ``kind`` is ``"lines"``, ``"bundle:<s>"`` or ``"custom"``.  The raw
    constructor does not check any axiom; see :meth:`violation`.
    """

    q: int
    n: int
    blocks: tuple[tuple[int, ...], ...]
    kind: str = "custom"

    @cached_property
    def incidence(self) -> np.ndarray:
        """Dense 0/1 matrix, rows are points and columns are blocks."""
        M = np.zeros((self.n, len(self.blocks)), dtype=np.uint8)
        for j, block in enumerate(self.blocks):
            M[list(block), j] = 1
        return M

    @cached_property
    def intersections(self) -> np.ndarray:
        """Integer matrix of pairwise block intersection sizes."""
        return intersection_sizes(self, self)

    def violation(self) -> str | None:
        """Name of the first violated plane axiom, or None."""
        k = self.q + 1
        if len(self.blocks) != self.n:
            return f"block count {len(self.blocks)} != {self.n}"
        for block in self.blocks:
            if len(block) != k or len(set(block)) != k:
                return f"block size != {k}"
            if any(p < 0 or p >= self.n for p in block):
                return "point index out of range"
        if np.any(self.incidence.sum(axis=1) != k):
            return f"point degree != {k}"
        inter = self.intersections.copy()
        np.fill_diagonal(inter, 1)
        if np.any(inter != 1):
            return "two blocks do not meet in exactly one point"
        return None

    def to_text(self) -> str:
        lines = [f"{self.q} {self.n} {self.kind}"]
        lines += [" ".join(str(p) for p in block) for block in self.blocks]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BlockSystem":
        rows = text.splitlines()
        try:
            q, n, kind = rows[0].split()
            blocks = tuple(tuple(int(x) for x in row.split()) for row in rows[1:] if row.strip())
            return cls(int(q), int(n), blocks, kind)
        except (ValueError, IndexError) as exc:
            raise ValueError(f"malformed block system: {exc}") from exc

    def multiplier(self) -> int | None:
        if self.kind.startswith("bundle:"):
            return int(self.kind.split(":", 1)[1])
        return None


def intersection_sizes(X: BlockSystem, Y: BlockSystem) -> np.ndarray:
    # float BLAS is exact for these magnitudes and far faster than integer matmul
    prod = X.incidence.T.astype(np.float64) @ Y.incidence.astype(np.float64)
    return prod.astype(np.int64)


def block_system_from_shifts(base, n: int, q: int, kind: str = "custom") -> BlockSystem:
    """Blocks ``base + i mod n`` for ``i = 0..n-1``; raises if an axiom fails."""
    base = tuple(sorted(int(b) % n for b in base))
    if len(base) != q + 1:
        raise StructureError(f"base has {len(base)} points, expected {q + 1}")
    blocks = tuple(tuple(sorted((b + i) % n for b in base)) for i in range(n))
    system = BlockSystem(q, n, blocks, kind)
    problem = system.violation()
    if problem:
        raise StructureError(f"shift system of {base} mod {n}: {problem}")
    return system


def plane(q: int) -> BlockSystem:
    D = singer_difference_set(q)
    return block_system_from_shifts(D.elements, D.modulus, q, "lines")


def bundle(D: DifferenceSet, s: int | Multiplier) -> BlockSystem:
    s_val = s.s if isinstance(s, Multiplier) else s % D.modulus
    return block_system_from_shifts(scale_set(s_val, D), D.modulus, D.order, f"bundle:{s_val}")


def is_oval(S, lines: BlockSystem) -> bool:
    S = set(int(p) for p in S)
    if len(S) != lines.q + 1:
        return False
    return all(len(S.intersection(line)) <= 2 for line in lines.blocks)


def is_projective_bundle(candidate: BlockSystem, lines: BlockSystem) -> bool:
    if candidate.n != lines.n or len(candidate.blocks) != lines.n:
        return False
    k = lines.q + 1
    if any(len(set(b)) != k or len(b) != k for b in candidate.blocks):
        return False
    if any(p < 0 or p >= lines.n for b in candidate.blocks for p in b):
        return False
    if intersection_sizes(lines, candidate).max() > 2:
        return False
    inter = candidate.intersections.copy()
    np.fill_diagonal(inter, 1)
    return bool(np.all(inter == 1))


def tangent_blocks(X: BlockSystem, index: int, other: BlockSystem) -> list[int]:
    """Blocks of ``other`` meeting block ``index`` of ``X`` in exactly one point.

    With ``other is X`` this is every other block of a plane, since any two
    distinct blocks meet once; oval tangency needs two distinct systems.
    """
    target = set(X.blocks[index])
    return [j for j, b in enumerate(other.blocks) if len(target.intersection(b)) == 1]


def tangency_matrix(lines: BlockSystem, bundle_: BlockSystem) -> np.ndarray:
    """0/1 matrix, rows are lines, columns are ovals, 1 where they are tangent."""
    return (intersection_sizes(lines, bundle_) == 1).astype(np.uint8)


def is_plane_incidence(M: np.ndarray, q: int) -> bool:
    """True iff ``M`` is the incidence matrix of a projective plane of order q."""
    n = q * q + q + 1
    if M.shape != (n, n):
        return False
    Mf = M.astype(np.float64)
    target = q * np.eye(n) + np.ones((n, n))
    return bool(np.array_equal(Mf @ Mf.T, target) and np.array_equal(Mf.T @ Mf, target))


def tangency_plane_check(lines: BlockSystem, bundle_: BlockSystem) -> bool:
    return is_plane_incidence(tangency_matrix(lines, bundle_), lines.q)


def _are_disjoint(X: BlockSystem, Y: BlockSystem) -> bool:
    return not set(X.blocks).intersection(Y.blocks)


def default_pool(q: int) -> list[int]:
    n = q * q + q + 1
    return [s for s in range(2, n) if math.gcd(s, n) == 1]


def find_disjoint_bundles(q: int, t: int, pool=None, D: DifferenceSet | None = None) -> list[BlockSystem]:
    """Greedy search for ``t`` pairwise disjoint bundles among shifts of ``sD``.

    Candidates are tried in increasing residue order; each one is verified
    before it is accepted.
    """
    if t < 1:
        raise DomainError("t must be at least 1")
    D = D or singer_difference_set(q)
    n = D.modulus
    lines = block_system_from_shifts(D.elements, n, q, "lines")
    candidates = sorted({int(s) % n for s in (pool if pool is not None else default_pool(q))})
    found: list[BlockSystem] = []
    for s in candidates:
        if math.gcd(s, n) != 1:
            continue
        blocks = tuple(tuple(sorted((b + i) % n for b in scale_set(s, D))) for i in range(n))
        cand = BlockSystem(q, n, blocks, f"bundle:{s}")
        if not is_projective_bundle(cand, lines):
            continue
        if all(_are_disjoint(cand, other) for other in found):
            found.append(cand)
            if len(found) == t:
                return found
    raise SearchFailure(f"found only {len(found)} of {t} disjoint bundles for q={q}", len(found))


def nucleus(oval, lines: BlockSystem) -> int:
    """Common point of the q+1 tangent lines of an oval (q even)."""
    if lines.q % 2:
        raise DomainError("ovals have a nucleus only for even q")
    S = set(int(p) for p in oval)
    tangents = [b for b in lines.blocks if len(S.intersection(b)) == 1]
    common = set(range(lines.n))
    for b in tangents:
        common.intersection_update(b)
    if len(tangents) != lines.q + 1 or len(common) != 1:
        raise StructureError("tangent lines of the oval are not concurrent")
    return common.pop()


def is_hyperoval(points, lines: BlockSystem) -> bool:
    S = set(points)
    if len(S) != lines.q + 2:
        return False
    return all(len(S.intersection(b)) in (0, 2) for b in lines.blocks)


def covers_evenly_zero_or_two(blocks, n: int) -> bool:
    """Every point lies in 0 or 2 of the given blocks."""
    cover = [0] * n
    for b in blocks:
        for p in b:
            cover[p] += 1
    return all(c in (0, 2) for c in cover)
