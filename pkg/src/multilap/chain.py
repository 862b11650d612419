"""Boundary matrices of the chain complex attached to a multicomplex.

The boundary of a monomial removes one variable at a time, but only
variables of odd exponent contribute; removing the j-th variable of the
ascending support of m = x_{i_0}^{a_0} ... x_{i_k}^{a_k} carries the sign
(-1)^(a_0 + ... + a_{j-1}).  Divisor closure guarantees every image monomial
stays inside the complex, and the composite of two boundaries vanishes.

The dual map is built from the mirror rule: the coefficient of x_j * m is
(-1)^(a_1 + ... + a_{j-1}) when the exponent of x_j in m is even and x_j * m
belongs to the complex, and 0 otherwise.  As a matrix this is exactly the
transpose of the boundary one degree up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .complexes import Multicomplex
from .monomials import Monomial, bump, drop, format_exponents, support


@dataclass(frozen=True)
class BoundaryMatrix:
    """Sparse integer matrix between two adjacent graded layers.

    `entries` stores, per column, the (row_index, value) pairs with ascending
    row index; values are -1 or +1 and each column has at most ambient_dim of
    them.  Iteration order is deterministic so dumps are reproducible.
    """

    degree: int
    rows: tuple[Monomial, ...]
    cols: tuple[Monomial, ...]
    entries: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def column(self, j: int) -> tuple[tuple[int, int], ...]:
        return self.entries[j]

    def triples(self) -> Iterator[tuple[int, int, int]]:
        """(row, col, value) triples sorted by row then column."""
        flat = [
            (i, j, v)
            for j, col in enumerate(self.entries)
            for i, v in col
        ]
        flat.sort()
        return iter(flat)

    def to_dense(self) -> np.ndarray:
        a = np.zeros(self.shape, dtype=np.int64)
        for j, col in enumerate(self.entries):
            for i, v in col:
                a[i, j] = v
        return a

    def apply(self, vector: Sequence[int]) -> np.ndarray:
        """Matrix-vector product on an integer chain."""
        if len(vector) != len(self.cols):
            raise ValueError(f"chain length {len(vector)} != {len(self.cols)} columns")
        out = np.zeros(len(self.rows), dtype=np.int64)
        for j, col in enumerate(self.entries):
            c = vector[j]
            if c:
                for i, v in col:
                    out[i] += v * c
        return out


def boundary_column(m: Monomial) -> list[tuple[Monomial, int]]:
    """Image monomials of the boundary of m with their signs."""
    out = []
    prefix = 0
    for i in support(m):
        e = m[i]
        if e & 1:
            out.append((drop(m, i), -1 if prefix & 1 else 1))
        prefix += e
    return out


def boundary_matrix(mc: Multicomplex, degree: int) -> BoundaryMatrix:
    """The boundary map from the degree layer down to the one below.

    At degree 0 the target basis is empty (the zero map); above the top
    degree the source basis is empty.
    """
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    cols = mc.layer(degree)
    rows = mc.layer(degree - 1) if degree >= 1 else ()
    row_index = {m: i for i, m in enumerate(rows)}
    entries = []
    for m in cols:
        col = sorted(
            (row_index[t], sign) for t, sign in boundary_column(m)
        )
        entries.append(tuple(col))
    return BoundaryMatrix(degree, rows, cols, tuple(entries))


def dual_boundary_matrix(mc: Multicomplex, degree: int) -> BoundaryMatrix:
    """The dual of the boundary at this degree: maps the layer below up into
    the degree layer.  Built from the mirror rule; equals the transpose of
    ``boundary_matrix(mc, degree)`` entry by entry."""
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    cols = mc.layer(degree - 1)
    rows = mc.layer(degree)
    row_index = {m: i for i, m in enumerate(rows)}
    entries = []
    for m in cols:
        col = []
        prefix = 0
        for j in range(mc.ambient_dim):
            if m[j] & 1 == 0:
                t = bump(m, j)
                if t in mc:
                    col.append((row_index[t], -1 if prefix & 1 else 1))
            prefix += m[j]
        col.sort()
        entries.append(tuple(col))
    return BoundaryMatrix(degree, rows, cols, tuple(entries))


def boundary_square_is_zero(mc: Multicomplex) -> bool:
    """Exact integer check that consecutive boundary maps compose to zero."""
    for d in range(2, mc.max_degree + 1):
        outer = boundary_matrix(mc, d - 1).to_dense()
        inner = boundary_matrix(mc, d).to_dense()
        if outer.size and inner.size and np.any(outer @ inner):
            return False
    return True


def format_boundary_matrix(b: BoundaryMatrix) -> str:
    """Dump format: a header line, sorted entry triples, then row and column
    legends in basis order."""
    lines = [f"rows {len(b.rows)} cols {len(b.cols)} degree {b.degree}"]
    for i, j, v in b.triples():
        lines.append(f"{i} {j} {v}")
    for i, m in enumerate(b.rows):
        lines.append(f"row {i} {format_exponents(m)}")
    for j, m in enumerate(b.cols):
        lines.append(f"col {j} {format_exponents(m)}")
    return "\n".join(lines) + "\n"
