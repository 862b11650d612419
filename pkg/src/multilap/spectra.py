"""Laplacians of a multicomplex and their spectra.

Three operators live on each graded layer: the up Laplacian (boundary from
one degree above composed with its transpose), the down Laplacian (transpose
composed the other way), and their sum.  All are symmetric positive
semidefinite integer matrices; their eigenvalue multisets, identified with
weakly decreasing sequences and compared modulo trailing zeros, are the
spectra.

Eigenvalues come from a cyclic Jacobi sweep: small dense symmetric matrices,
backward stable, no external solver.  Ranks (for Betti numbers) count
singular values above RANK_EPS, read off the Gram matrix of the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .chain import boundary_matrix
from .complexes import Multicomplex
from .monomials import Monomial, total_degree

ZERO_EPS = 1e-8    # below this an eigenvalue counts as zero
SNAP_EPS = 1e-6    # integer snapping / multiset comparison tolerance
RANK_EPS = 1e-6    # singular values above this count toward rank

KINDS = ("up", "down", "total")


class EigensolverError(RuntimeError):
    """Jacobi iteration failed to converge within the sweep budget."""


def jacobi_eigenvalues(
    a: np.ndarray, max_sweeps: int = 100, symmetry_tol: float = 1e-8
) -> np.ndarray:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps the strict upper triangle, annihilating one off-diagonal entry per
    rotation; converged once the off-diagonal Frobenius norm drops below
    1e-12 * (1 + diagonal norm).  Returns the diagonal unsorted.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return np.empty(0)
    scale = max(1.0, float(np.max(np.abs(a))))
    if float(np.max(np.abs(a - a.T))) > symmetry_tol * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    a = (a + a.T) / 2.0
    if n == 1:
        return np.diagonal(a).copy()

    for _ in range(max_sweeps):
        diag = np.diagonal(a)
        diag_norm = math.sqrt(float(np.dot(diag, diag)))
        total = float(np.sum(a * a))
        off_norm = math.sqrt(max(total - diag_norm * diag_norm, 0.0))
        if off_norm < 1e-12 * (1.0 + diag_norm):
            return np.diagonal(a).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
    diag = np.diagonal(a)
    diag_norm = math.sqrt(float(np.dot(diag, diag)))
    total = float(np.sum(a * a))
    off_norm = math.sqrt(max(total - diag_norm * diag_norm, 0.0))
    if off_norm < 1e-12 * (1.0 + diag_norm):
        return np.diagonal(a).copy()
    raise EigensolverError(f"no convergence after {max_sweeps} sweeps (off-norm {off_norm:.3e})")


def _multiset_equal(xs: Sequence[float], ys: Sequence[float], tol: float) -> bool:
    if len(xs) != len(ys):
        return False
    return all(abs(x - y) <= tol for x, y in zip(sorted(xs), sorted(ys)))


def _multiset_minus(
    xs: Sequence[float], ys: Sequence[float], tol: float
) -> list[float] | None:
    """Multiset difference within tolerance; None if ys is not contained."""
    rest = sorted(xs)
    for y in sorted(ys, reverse=True):
        for idx in range(len(rest) - 1, -1, -1):
            if abs(rest[idx] - y) <= tol:
                del rest[idx]
                break
        else:
            return None
    rest.sort(reverse=True)
    return rest


@dataclass(frozen=True)
class Spectrum:
    """Weakly decreasing eigenvalue multiset of a positive semidefinite map.

    Values within zero_eps of zero are clamped to exactly zero; anything
    below -zero_eps is rejected.  `snapped` carries the integer form when
    every value sits within SNAP_EPS of an integer, and None otherwise — it
    never replaces the raw values.
    """

    values: tuple[float, ...]
    zero_eps: float = ZERO_EPS

    @classmethod
    def from_values(
        cls, values: Sequence[float], zero_eps: float = ZERO_EPS
    ) -> "Spectrum":
        cleaned = []
        for v in sorted((float(v) for v in values), reverse=True):
            if v < -zero_eps:
                raise ValueError(f"eigenvalue {v} below -{zero_eps}")
            cleaned.append(0.0 if abs(v) <= zero_eps else v)
        return cls(tuple(cleaned), zero_eps)

    def __len__(self) -> int:
        return len(self.values)

    def nonzero(self) -> tuple[float, ...]:
        return tuple(v for v in self.values if v > self.zero_eps)

    def zero_multiplicity(self) -> int:
        return len(self.values) - len(self.nonzero())

    @property
    def snapped(self) -> tuple[int, ...] | None:
        ints = tuple(int(round(v)) for v in self.values)
        if all(abs(v - i) <= SNAP_EPS for v, i in zip(self.values, ints)):
            return ints
        return None

    def union(self, other: "Spectrum") -> "Spectrum":
        return Spectrum.from_values(self.values + other.values, self.zero_eps)

    def equal_up_to_zeros(self, other, tol: float = SNAP_EPS) -> bool:
        """Nonzero parts agree as multisets within tol; `other` may be a
        Spectrum or any sequence of numbers (e.g. an integer partition)."""
        mine = self.nonzero()
        if isinstance(other, Spectrum):
            theirs = other.nonzero()
        else:
            theirs = tuple(float(v) for v in other if v > self.zero_eps)
        return _multiset_equal(mine, theirs, tol)


@dataclass(frozen=True)
class LaplacianMatrix:
    """Symmetric integer matrix of one Laplacian on one graded layer."""

    kind: str
    degree: int
    basis: tuple[Monomial, ...]
    matrix: np.ndarray

    @property
    def size(self) -> int:
        return len(self.basis)


def laplacian_up(mc: Multicomplex, degree: int) -> LaplacianMatrix:
    """Boundary from one degree above times its transpose; zero when the
    layer above is empty."""
    basis = mc.layer(degree)
    d_up = boundary_matrix(mc, degree + 1).to_dense()
    return LaplacianMatrix("up", degree, basis, d_up @ d_up.T)


def laplacian_down(mc: Multicomplex, degree: int) -> LaplacianMatrix:
    """Transpose of the boundary at this degree times the boundary; zero at
    degree 0."""
    basis = mc.layer(degree)
    d = boundary_matrix(mc, degree).to_dense()
    return LaplacianMatrix("down", degree, basis, d.T @ d)


def laplacian_total(mc: Multicomplex, degree: int) -> LaplacianMatrix:
    up = laplacian_up(mc, degree)
    down = laplacian_down(mc, degree)
    return LaplacianMatrix("total", degree, up.basis, up.matrix + down.matrix)


_LAPLACIANS = {
    "up": laplacian_up,
    "down": laplacian_down,
    "total": laplacian_total,
}


def symmetric_eigenvalues(a: np.ndarray, zero_eps: float = ZERO_EPS) -> Spectrum:
    return Spectrum.from_values(jacobi_eigenvalues(a), zero_eps)


def spectrum_of(
    mc: Multicomplex, degree: int, kind: str, zero_eps: float = ZERO_EPS
) -> Spectrum:
    if kind not in _LAPLACIANS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if degree < 0:
        return Spectrum.from_values((), zero_eps)
    lap = _LAPLACIANS[kind](mc, degree)
    return symmetric_eigenvalues(lap.matrix.astype(float), zero_eps)


def spectrum_up(mc: Multicomplex, degree: int, zero_eps: float = ZERO_EPS) -> Spectrum:
    return spectrum_of(mc, degree, "up", zero_eps)


def spectrum_down(mc: Multicomplex, degree: int, zero_eps: float = ZERO_EPS) -> Spectrum:
    return spectrum_of(mc, degree, "down", zero_eps)


def spectrum_total(mc: Multicomplex, degree: int, zero_eps: float = ZERO_EPS) -> Spectrum:
    return spectrum_of(mc, degree, "total", zero_eps)


@dataclass(frozen=True)
class RelationReport:
    """Pairwise spectrum identities at one degree, all modulo zero parts:
    down here = up one below; total = up joined with down; up = total minus
    down."""

    degree: int
    down_matches_up_below: bool
    total_matches_union: bool
    up_matches_total_minus_down: bool

    @property
    def ok(self) -> bool:
        return (
            self.down_matches_up_below
            and self.total_matches_union
            and self.up_matches_total_minus_down
        )


def verify_spectrum_relations(
    mc: Multicomplex, degree: int, tol: float = SNAP_EPS
) -> RelationReport:
    up = spectrum_up(mc, degree)
    down = spectrum_down(mc, degree)
    total = spectrum_total(mc, degree)
    up_below = spectrum_up(mc, degree - 1)

    down_ok = down.equal_up_to_zeros(up_below, tol)
    union_ok = total.equal_up_to_zeros(up.union(down), tol)
    diff = _multiset_minus(total.nonzero(), down.nonzero(), tol)
    diff_ok = diff is not None and _multiset_equal(diff, list(up.nonzero()), tol)
    return RelationReport(degree, down_ok, union_ok, diff_ok)


def constituent_spectrum_sum(
    mc: Multicomplex, degree: int, kind: str, zero_eps: float = ZERO_EPS
) -> Spectrum:
    """Multiset union of constituent spectra, each shifted down by twice the
    degree of its square root; equals the direct spectrum modulo zeros."""
    values: list[float] = []
    for p, piece in mc.constituents().items():
        shift = 2 * total_degree(p)
        if shift <= degree:
            values.extend(spectrum_of(piece, degree - shift, kind, zero_eps).values)
    return Spectrum.from_values(values, zero_eps)


def boundary_rank(mc: Multicomplex, degree: int, eps: float = RANK_EPS) -> int:
    """Rank of one boundary map: eigenvalues of the smaller Gram matrix that
    exceed eps squared."""
    d = boundary_matrix(mc, degree).to_dense()
    if d.shape[0] == 0 or d.shape[1] == 0:
        return 0
    gram = d @ d.T if d.shape[0] <= d.shape[1] else d.T @ d
    eig = jacobi_eigenvalues(gram.astype(float))
    return int(np.sum(eig > eps * eps))


def betti_number(mc: Multicomplex, degree: int) -> int:
    """Kernel dimension of the boundary here minus the rank one above."""
    if degree < 0 or degree > mc.max_degree:
        return 0
    f = len(mc.layer(degree))
    rank_here = boundary_rank(mc, degree) if degree >= 1 else 0
    return f - rank_here - boundary_rank(mc, degree + 1)


def betti_numbers(mc: Multicomplex) -> tuple[int, ...]:
    """Real Betti numbers per degree; empty for the empty multicomplex."""
    if len(mc) == 0:
        return ()
    ranks = [boundary_rank(mc, d) for d in range(0, mc.max_degree + 2)]
    out = []
    for ell in range(mc.max_degree + 1):
        f = len(mc.layer(ell))
        out.append(f - ranks[ell] - ranks[ell + 1])
    return tuple(out)


def degree_report(mc: Multicomplex, degree: int, tol: float = SNAP_EPS) -> dict:
    """One layer's spectra, Betti number and relation check, JSON-ready.
    Raw eigenvalues and their snapped integer forms are both present."""
    up = spectrum_up(mc, degree)
    down = spectrum_down(mc, degree)
    total = spectrum_total(mc, degree)
    rel = verify_spectrum_relations(mc, degree, tol)
    report = {
        "degree": degree,
        "up": list(up.values),
        "down": list(down.values),
        "total": list(total.values),
        "betti": betti_number(mc, degree),
        "relations_ok": rel.ok,
    }
    for key, spec in (("up", up), ("down", down), ("total", total)):
        snapped = spec.snapped
        report[f"{key}_snapped"] = list(snapped) if snapped is not None else None
    return report
