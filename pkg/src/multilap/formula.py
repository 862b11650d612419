"""Combinatorial spectrum predictions for shifted multicomplexes.

For a shifted multicomplex the nonzero up-spectrum at chain degree k (the
eigenvalues of boundary_k times its transpose, acting one layer below) is an
integer partition with two equivalent closed forms: the conjugate of the
summed parity vectors over the degree-k layer, or the constituent-by-
constituent sum of conjugated degree sequences.  Both are exposed here and
cross-checked against the eigensolver in the tests.

Degree sequences are sorted decreasingly before conjugation: variables
absent from the complex contribute inert zero coordinates, and spectra are
order-free multisets anyway.
"""

from __future__ import annotations

from typing import Sequence

from .complexes import Multicomplex
from .monomials import parity_vector, total_degree


class NotShiftedError(ValueError):
    """The prediction was requested for a complex that is not shifted."""


class NotSquarefreeError(ValueError):
    """A simplicial-complex operation received a non-square-free input."""


def conjugate_partition(parts: Sequence[int]) -> tuple[int, ...]:
    """Transpose of the staircase diagram: entry j counts the parts >= j+1.
    Involutive on weakly decreasing sequences; trailing zeros never appear in
    the output."""
    parts = tuple(parts)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"not weakly decreasing: {parts}")
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    width = parts[0] if parts else 0
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, width + 1))


def _as_partition(counts: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(counts, reverse=True))


def simplicial_up_spectrum(delta: Multicomplex, degree: int) -> tuple[int, ...]:
    """Predicted nonzero up-spectrum of a shifted simplicial complex at one
    chain degree: the conjugate of its degree sequence there."""
    if not delta.is_simplicial():
        raise NotSquarefreeError("input contains a non-square-free monomial")
    return conjugate_partition(_as_partition(delta.degree_sequence(degree)))


def _require_shifted(
    mc: Multicomplex, order: Sequence[int] | None, force: bool
) -> None:
    if not force and not mc.is_shifted(order):
        raise NotShiftedError(
            "complex is not shifted under the given order; "
            "pass force=True to compute the (unverified) prediction anyway"
        )


def predicted_up_spectrum(
    mc: Multicomplex,
    degree: int,
    order: Sequence[int] | None = None,
    force: bool = False,
) -> tuple[int, ...]:
    """Conjugate of the componentwise sum of parity vectors over the layer.

    For shifted complexes this equals the nonzero eigenvalues of the
    boundary at this chain degree composed with its transpose, i.e. the up
    Laplacian one layer below.
    """
    _require_shifted(mc, order, force)
    counts = [0] * mc.ambient_dim
    for m in mc.layer(degree):
        for i, bit in enumerate(parity_vector(m)):
            counts[i] += bit
    return conjugate_partition(_as_partition(counts))


def constituent_up_spectrum(
    mc: Multicomplex,
    degree: int,
    order: Sequence[int] | None = None,
    force: bool = False,
) -> tuple[int, ...]:
    """Same prediction assembled from the square-free constituents: each
    contributes its conjugated degree sequence at the degree lowered by twice
    the degree of its square root."""
    _require_shifted(mc, order, force)
    parts: list[int] = []
    for p, piece in mc.constituents().items():
        shift = 2 * total_degree(p)
        if shift <= degree:
            seq = _as_partition(piece.degree_sequence(degree - shift))
            parts.extend(conjugate_partition(seq))
    return _as_partition(parts)
