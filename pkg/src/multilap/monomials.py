"""Exponent-vector arithmetic for monomials over a fixed ordered variable set.

A monomial in x_1, ..., x_n is a plain tuple of n non-negative integers,
entry i holding the exponent of x_(i+1).  The unit monomial is the all-zeros
tuple.  Everything here is a pure function on tuples.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator

Monomial = tuple[int, ...]

# Inputs whose total degree exceeds this cap are rejected at container level.
DEGREE_CAP = 10**6


class AmbientMismatchError(ValueError):
    """Raised when monomials of different ambient dimension are combined."""


def unit(ambient_dim: int) -> Monomial:
    return (0,) * ambient_dim


def variable(ambient_dim: int, index: int) -> Monomial:
    """The degree-one monomial x_(index+1)."""
    if not 0 <= index < ambient_dim:
        raise IndexError(f"variable index {index} outside ambient dimension {ambient_dim}")
    return tuple(1 if i == index else 0 for i in range(ambient_dim))


def total_degree(m: Monomial) -> int:
    return sum(m)


def support(m: Monomial) -> tuple[int, ...]:
    """Indices of the variables that occur in m, ascending."""
    return tuple(i for i, e in enumerate(m) if e > 0)


def _require_same_ambient(a: Monomial, b: Monomial) -> None:
    if len(a) != len(b):
        raise AmbientMismatchError(f"ambient dimensions differ: {len(a)} vs {len(b)}")


def divides(a: Monomial, b: Monomial) -> bool:
    """True iff a[i] <= b[i] for every i."""
    _require_same_ambient(a, b)
    return all(x <= y for x, y in zip(a, b))


def multiply(a: Monomial, b: Monomial) -> Monomial:
    _require_same_ambient(a, b)
    return tuple(x + y for x, y in zip(a, b))


def bump(m: Monomial, index: int) -> Monomial:
    """m * x_(index+1)."""
    return tuple(e + 1 if i == index else e for i, e in enumerate(m))


def drop(m: Monomial, index: int) -> Monomial:
    """m / x_(index+1); requires a positive exponent there."""
    if m[index] <= 0:
        raise ValueError(f"variable {index} does not divide {m}")
    return tuple(e - 1 if i == index else e for i, e in enumerate(m))


def square_decompose(m: Monomial) -> tuple[Monomial, Monomial]:
    """Split m = p^2 * q with q square-free: p[i] = m[i] // 2, q[i] = m[i] % 2."""
    return tuple(e // 2 for e in m), tuple(e & 1 for e in m)


def parity_vector(m: Monomial) -> Monomial:
    """Componentwise mod-2 reduction; the exponent vector of the square-free part."""
    return tuple(e & 1 for e in m)


def is_squarefree(m: Monomial) -> bool:
    return all(e <= 1 for e in m)


def divisors(m: Monomial) -> Iterator[Monomial]:
    """All divisors of m, including the unit and m itself."""
    yield from product(*(range(e + 1) for e in m))


def basis_key(m: Monomial) -> tuple[int, tuple[int, ...]]:
    """Sort key for the canonical basis order: total degree ascending, then
    lexicographically with the larger exponent vector first (so within one
    degree x1-heavy monomials precede x2-heavy ones)."""
    return (sum(m), tuple(-e for e in m))


def compare_basis_order(a: Monomial, b: Monomial) -> int:
    """-1, 0 or +1 as a precedes, equals or follows b in the basis order."""
    ka, kb = basis_key(a), basis_key(b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def sort_basis(monomials: Iterable[Monomial]) -> list[Monomial]:
    return sorted(monomials, key=basis_key)


# --- text rendering -------------------------------------------------------
#
# Two forms are supported: the canonical exponent-vector form "2 1 0" and the
# symbolic form "x1^2*x2".  Both parse; exponent vectors are the canonical
# output.


def format_exponents(m: Monomial) -> str:
    return " ".join(str(e) for e in m)


def format_symbolic(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def parse_exponents(text: str) -> Monomial:
    fields = text.split()
    try:
        exps = tuple(int(f) for f in fields)
    except ValueError:
        raise ValueError(f"not an exponent vector: {text!r}") from None
    if any(e < 0 for e in exps):
        raise ValueError(f"negative exponent in {text!r}")
    return exps


def parse_symbolic_factors(text: str) -> list[tuple[int, int]]:
    """Parse "x1^2*x2" into [(0, 2), (1, 1)] factor pairs (0-based indices)."""
    text = text.strip()
    if text == "1":
        return []
    factors = []
    for piece in text.split("*"):
        piece = piece.strip()
        base, _, exp_text = piece.partition("^")
        if not base.startswith("x"):
            raise ValueError(f"bad factor {piece!r} in {text!r}")
        try:
            index = int(base[1:]) - 1
            exp = int(exp_text) if exp_text else 1
        except ValueError:
            raise ValueError(f"bad factor {piece!r} in {text!r}") from None
        if index < 0 or exp < 0:
            raise ValueError(f"bad factor {piece!r} in {text!r}")
        factors.append((index, exp))
    return factors


def parse_symbolic(text: str, ambient_dim: int) -> Monomial:
    exps = [0] * ambient_dim
    for index, exp in parse_symbolic_factors(text):
        if index >= ambient_dim:
            raise ValueError(f"variable x{index + 1} outside ambient dimension {ambient_dim}")
        exps[index] += exp
    return tuple(exps)


def parse_monomial(text: str, ambient_dim: int, symbolic: bool = False) -> Monomial:
    m = parse_symbolic(text, ambient_dim) if symbolic else parse_exponents(text)
    if not symbolic and len(m) != ambient_dim:
        raise ValueError(f"expected {ambient_dim} exponents, got {len(m)}: {text!r}")
    return m
