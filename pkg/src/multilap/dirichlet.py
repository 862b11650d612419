"""Integers 1..N as a multicomplex over the primes, plus truncated Dirichlet
convolution.

Writing each integer as a prime-exponent vector turns {1, ..., N} into a
divisor-closed monomial set over the primes up to N, shifted under the
natural prime order.  The per-prime counts of integers with k prime factors
(with multiplicity) and odd exponent at that prime give the t-vector; its
sorted conjugate is the s-vector, and for k = 2 both can be read off a 0/1
matrix of admissible prime pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .complexes import Multicomplex
from .formula import conjugate_partition
from .monomials import Monomial

MAX_BOUND = 10**8


def primes_upto(bound: int) -> list[int]:
    """All primes <= bound, ascending (classic sieve)."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(bound**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, bound + 1) if sieve[p]]


def smallest_prime_factors(bound: int) -> list[int]:
    """spf[n] = least prime factor of n, for 0 <= n <= bound (spf[0] = spf[1] = 0)."""
    spf = list(range(bound + 1))
    if bound >= 1:
        spf[1] = 0
    for p in range(2, int(bound**0.5) + 1):
        if spf[p] == p:
            for n in range(p * p, bound + 1, p):
                if spf[n] == n:
                    spf[n] = p
    return spf


def prime_exponents(m: int) -> Monomial:
    """Exponent vector of m over the primes 2, 3, 5, ..., trimmed at the
    largest prime factor; the empty tuple for m = 1."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if m == 1:
        return ()
    factors: dict[int, int] = {}
    rest = m
    d = 2
    while d * d <= rest:
        while rest % d == 0:
            factors[d] = factors.get(d, 0) + 1
            rest //= d
        d += 1
    if rest > 1:
        factors[rest] = factors.get(rest, 0) + 1
    primes = primes_upto(max(factors))
    return tuple(factors.get(p, 0) for p in primes)


def from_prime_exponents(alpha: Monomial) -> int:
    """Inverse of prime_exponents: the integer with the given exponents."""
    if any(e < 0 for e in alpha):
        raise ValueError(f"negative exponent in {alpha}")
    needed = len(alpha)
    primes: list[int] = []
    candidate = 2
    while len(primes) < needed:
        if all(candidate % p for p in primes):
            primes.append(candidate)
        candidate += 1
    out = 1
    for p, e in zip(primes, alpha):
        out *= p**e
    return out


@dataclass(frozen=True)
class DirichletTruncation:
    """The integers 1..bound as a multicomplex over the primes <= bound."""

    bound: int
    primes: tuple[int, ...]
    complex: Multicomplex


def build_truncation(bound: int) -> DirichletTruncation:
    """Exponent vectors of 1..bound over the primes <= bound.  Divisor
    closure is inherited from integer divisibility; the result is shifted
    under the natural prime order."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    if bound > MAX_BOUND:
        raise ValueError(f"bound {bound} exceeds cap {MAX_BOUND}")
    primes = primes_upto(bound)
    index = {p: i for i, p in enumerate(primes)}
    spf = smallest_prime_factors(bound)
    n = len(primes)
    members = []
    for m in range(1, bound + 1):
        e = [0] * n
        rest = m
        while rest > 1:
            p = spf[rest]
            e[index[p]] += 1
            rest //= p
        members.append(tuple(e))
    mc = Multicomplex._from_validated(frozenset(members), n)
    return DirichletTruncation(bound, tuple(primes), mc)


def _factor_counts(bound: int):
    """Yield (n, omega, odd_prime_indices) for 2 <= n <= bound."""
    primes = primes_upto(bound)
    index = {p: i for i, p in enumerate(primes)}
    spf = smallest_prime_factors(bound)
    for m in range(2, bound + 1):
        rest = m
        omega = 0
        odd: dict[int, int] = {}
        while rest > 1:
            p = spf[rest]
            omega += 1
            odd[p] = odd.get(p, 0) ^ 1
            rest //= p
        yield m, omega, [index[p] for p, bit in odd.items() if bit]


def _trim(values: list[int]) -> tuple[int, ...]:
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def t_vector(bound: int, k: int) -> tuple[int, ...]:
    """Entry i counts the integers 1 < n <= bound with exactly k prime
    factors (with multiplicity) whose i-th prime carries an odd exponent.
    Trailing zeros are trimmed."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if bound > MAX_BOUND:
        raise ValueError(f"bound {bound} exceeds cap {MAX_BOUND}")
    counts = [0] * len(primes_upto(bound)) if bound >= 2 else []
    for _, omega, odd_indices in _factor_counts(max(bound, 1)):
        if omega == k:
            for i in odd_indices:
                counts[i] += 1
    return _trim(counts)


def s_vector(bound: int, k: int) -> tuple[int, ...]:
    """Conjugate partition of the decreasing sort of the t-vector."""
    return conjugate_partition(tuple(sorted(t_vector(bound, k), reverse=True)))


def _pair_side(primes: list[int], bound: int) -> int:
    """Number of rows that can hold an admissible pair: the largest a with
    p_a * p_1 <= bound.  Floored at one so degenerate bounds still print a
    1x1 zero matrix."""
    side = 0
    for a, p in enumerate(primes, start=1):
        if p * primes[0] <= bound:
            side = a
    return max(side, 1)


def y2_matrix(bound: int) -> np.ndarray:
    """0/1 matrix of distinct prime pairs with product <= bound."""
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    primes = primes_upto(bound)
    side = _pair_side(primes, bound)
    y = np.zeros((side, side), dtype=np.int64)
    for a in range(side):
        for b in range(side):
            if a != b and primes[a] * primes[b] <= bound:
                y[a, b] = 1
    return y


def u2_matrix(bound: int) -> np.ndarray:
    """The pair matrix with its diagonal deleted by shifting each row left
    past the diagonal; row sums give the k = 2 t-vector and column sums the
    s-vector."""
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    primes = primes_upto(bound)
    side = _pair_side(primes, bound)

    def y(a: int, b: int) -> int:
        if a == b or b >= len(primes):
            return 0
        return 1 if primes[a] * primes[b] <= bound else 0

    u = np.zeros((side, side), dtype=np.int64)
    for a in range(side):
        for b in range(side):
            u[a, b] = y(a, b) if b < a else y(a, b + 1)
    return u


@dataclass(frozen=True)
class ArithmeticalFunction:
    """A real-valued function on 1..bound, stored sparsely."""

    bound: int
    coefficients: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        for m in self.coefficients:
            if not 1 <= m <= self.bound:
                raise ValueError(f"support point {m} outside 1..{self.bound}")

    def __call__(self, m: int) -> float:
        return self.coefficients.get(m, 0.0)

    @classmethod
    def indicator(cls, m: int, bound: int) -> "ArithmeticalFunction":
        return cls(bound, {m: 1.0})

    @classmethod
    def ones(cls, bound: int) -> "ArithmeticalFunction":
        return cls(bound, {m: 1.0 for m in range(1, bound + 1)})


def truncated_convolve(
    f: ArithmeticalFunction, g: ArithmeticalFunction, bound: int
) -> ArithmeticalFunction:
    """Dirichlet convolution with everything above the bound cut away:
    out(k) = sum over divisors d of k of f(d) * g(k/d), for k <= bound."""
    for h in (f, g):
        if h.bound > bound and any(m > bound for m in h.coefficients):
            raise ValueError(f"support exceeds bound {bound}")
    out: dict[int, float] = {}
    for a, fa in f.coefficients.items():
        if fa == 0.0:
            continue
        for b, gb in g.coefficients.items():
            ab = a * b
            if ab <= bound and gb != 0.0:
                out[ab] = out.get(ab, 0.0) + fa * gb
    return ArithmeticalFunction(bound, {m: v for m, v in out.items() if v != 0.0})
