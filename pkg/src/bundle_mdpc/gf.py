"""Arithmetic in GF(p^m) with elements stored as dense coefficient vectors.

Only what is needed to build Singer difference sets: primitive polynomials,
the four field operations and the relative trace onto a subfield.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DomainError, ResourceError

MAX_ORDER = 2**32


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` or None if q is not a prime power."""
    if q < 2:
        return None
    factors = prime_factors(q)
    if len(factors) != 1:
        return None
    p = factors[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# -- polynomials over GF(p): coefficient tuples, lowest degree first ---------


def _polymulmod(a, b, mod, p):
    m = len(mod) - 1
    prod = [0] * (2 * m - 1) if m else [0]
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    # mod is monic
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for k in range(m + 1):
                prod[d - m + k] = (prod[d - m + k] - c * mod[k]) % p
    return tuple(prod[:m]) if m else ()


def _polypowmod(base, e, mod, p):
    m = len(mod) - 1
    result = tuple([1] + [0] * (m - 1))
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


def _x_reduced(mod, p):
    """The class of x modulo ``mod`` as a coefficient tuple."""
    m = len(mod) - 1
    if m == 1:
        return ((-mod[0]) % p,)
    return tuple(1 if i == 1 else 0 for i in range(m))


def _is_primitive(mod, p):
    m = len(mod) - 1
    if mod[0] == 0:
        return False
    N = p**m - 1
    one = tuple([1] + [0] * (m - 1))
    x = _x_reduced(mod, p)
    if _polypowmod(x, N, mod, p) != one:
        return False
    return all(_polypowmod(x, N // r, mod, p) != one for r in prime_factors(N))


def find_primitive_polynomial(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic primitive polynomial of degree ``m`` over GF(p).

    Candidates are ordered by their value when the coefficients are read as
    base-``p`` digits, highest degree most significant, so the scan for
    ``(2, 3)`` yields x^3 + x + 1 before x^3 + x^2 + 1.  The returned tuple
    lists coefficients lowest degree first and ends with the leading 1.
    """
    if not is_prime(p) or m < 1:
        raise DomainError(f"need a prime p and m >= 1, got p={p}, m={m}")
    if p**m > MAX_ORDER:
        raise ResourceError(f"p^m = {p}^{m} exceeds the supported order 2^32")
    for digits in itertools.product(range(p), repeat=m):
        # digits are (c_{m-1}, ..., c_0)
        mod = tuple(reversed(digits)) + (1,)
        if _is_primitive(mod, p):
            return mod
    raise AssertionError("no primitive polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FiniteField:
    """GF(p^m) defined by a primitive modulus."""

    p: int
    m: int
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.modulus:
            object.__setattr__(self, "modulus", find_primitive_polynomial(self.p, self.m))
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise DomainError("modulus must be monic of degree m")
        if not _is_primitive(self.modulus, self.p):
            raise DomainError("modulus is not primitive")

    @property
    def order(self) -> int:
        return self.p**self.m

    def __call__(self, coeffs) -> "FieldElement":
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.m:
            raise DomainError("too many coefficients")
        return FieldElement(self, coeffs + (0,) * (self.m - len(coeffs)))

    def zero(self) -> "FieldElement":
        return self(())

    def one(self) -> "FieldElement":
        return self((1,))

    def gen(self) -> "FieldElement":
        """The class of x, a generator of the multiplicative group."""
        return FieldElement(self, _x_reduced(self.modulus, self.p))

    def from_int(self, v: int) -> "FieldElement":
        """Element whose coefficients are the base-p digits of ``v``."""
        coeffs = []
        for _ in range(self.m):
            v, c = divmod(v, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    def elements(self):
        for v in range(self.order):
            yield self.from_int(v)

    # raw coefficient arithmetic, shared by FieldElement

    def _add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _mul(self, a, b):
        return _polymulmod(a, b, self.modulus, self.p)

    def _pow(self, a, e):
        return _polypowmod(a, e, self.modulus, self.p)


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField = field(repr=False)
    coeffs: tuple[int, ...]

    def __add__(self, other):
        return FieldElement(self.field, self.field._add(self.coeffs, other.coeffs))

    def __neg__(self):
        return FieldElement(self.field, tuple((-c) % self.field.p for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, tuple(c * other % self.field.p for c in self.coeffs))
        return FieldElement(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return self.field.one()
        return FieldElement(self.field, self.field._pow(self.coeffs, e))

    def inverse(self):
        if self.is_zero():
            raise DomainError("zero has no multiplicative inverse")
        return self ** (self.field.order - 2)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_int(self) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.p + c
        return v


def field_arith(f: FiniteField, a: FieldElement, b: FieldElement | None, kind: str, e: int = 0):
    """Dispatch ``add``, ``mul``, ``inv`` or ``pow`` on elements of ``f``."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    if kind == "pow":
        return a**e
    raise ValueError(f"unknown operation {kind!r}")


def _check_subfield(f: FiniteField, q: int) -> None:
    pe = prime_power(q)
    if pe is None or pe[0] != f.p or f.order != q**3:
        raise DomainError(f"GF({q}) is not a subfield of index 3 in GF({f.order})")


def relative_trace(f: FiniteField, x: FieldElement, q: int) -> FieldElement:
    """Trace from GF(q^3) down to GF(q): ``x + x^q + x^(q^2)``."""
    _check_subfield(f, q)
    xq = x**q
    return x + xq + xq**q


class TraceMap:
    """The relative trace as a GF(p)-linear map on coefficient vectors.

    Evaluating via precomputed images of the basis ``1, x, ..., x^(m-1)``
    avoids two exponentiations per element.
    """

    def __init__(self, f: FiniteField, q: int):
        _check_subfield(f, q)
        self.field = f
        self.q = q

    @cached_property
    def basis_images(self) -> list[tuple[int, ...]]:
        f = self.field
        return [
            relative_trace(f, f(tuple(1 if i == k else 0 for i in range(f.m))), self.q).coeffs
            for k in range(f.m)
        ]

    def coeffs(self, x: tuple[int, ...]) -> tuple[int, ...]:
        p = self.field.p
        acc = [0] * self.field.m
        for c, img in zip(x, self.basis_images):
            if c:
                for i, t in enumerate(img):
                    acc[i] += c * t
        return tuple(a % p for a in acc)

    def __call__(self, x: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.coeffs(x.coeffs))
