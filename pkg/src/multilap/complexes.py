"""Finite multicomplexes: divisor-closed monomial sets with graded layers.

Construction validates divisor closure (use ``Multicomplex.closure`` to
repair instead).  Layers are kept in the canonical basis order so that every
matrix built downstream is reproducible bit for bit.  A multicomplex whose
monomials are all square-free is a simplicial complex, graded so the empty
simplex sits in degree 0.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from .monomials import (
    DEGREE_CAP,
    Monomial,
    basis_key,
    bump,
    drop,
    format_exponents,
    format_symbolic,
    is_squarefree,
    parse_exponents,
    parse_symbolic_factors,
    sort_basis,
    square_decompose,
    support,
    total_degree,
    unit,
    variable,
)


class NotDivisorClosedError(ValueError):
    """A monomial is present while one of its divisors is missing."""

    def __init__(self, missing: Monomial, member: Monomial):
        self.missing = missing
        self.member = member
        super().__init__(
            f"not divisor-closed: {member} is in the complex "
            f"but its divisor {missing} is not"
        )


class ParseError(ValueError):
    def __init__(self, message: str, line_no: int):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


def natural_order(ambient_dim: int) -> tuple[int, ...]:
    return tuple(range(ambient_dim))


def reverse_order(ambient_dim: int) -> tuple[int, ...]:
    return tuple(range(ambient_dim - 1, -1, -1))


def _ranks(order: Sequence[int] | None, ambient_dim: int) -> list[int]:
    """rank[v] = position of variable v in the order (smaller = earlier)."""
    if order is None:
        return list(range(ambient_dim))
    if sorted(order) != list(range(ambient_dim)):
        raise ValueError(f"order {order} is not a permutation of 0..{ambient_dim - 1}")
    ranks = [0] * ambient_dim
    for pos, v in enumerate(order):
        ranks[v] = pos
    return ranks


class Multicomplex:
    """An immutable finite multicomplex on an explicit ambient dimension."""

    __slots__ = ("ambient_dim", "_members", "_layers", "max_degree")

    def __init__(self, monomials: Iterable[Monomial], ambient_dim: int):
        members = frozenset(tuple(m) for m in monomials)
        for m in members:
            if len(m) != ambient_dim:
                raise ValueError(f"monomial {m} has length {len(m)}, expected {ambient_dim}")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            if total_degree(m) > DEGREE_CAP:
                raise ValueError(f"total degree of {m} exceeds cap {DEGREE_CAP}")
        # Single-step closure implies full closure.
        for m in members:
            for i in support(m):
                d = drop(m, i)
                if d not in members:
                    raise NotDivisorClosedError(d, m)
        self._init_from_validated(members, ambient_dim)

    def _init_from_validated(self, members: frozenset[Monomial], ambient_dim: int) -> None:
        self.ambient_dim = ambient_dim
        self._members = members
        layers: dict[int, list[Monomial]] = {}
        for m in members:
            layers.setdefault(total_degree(m), []).append(m)
        self._layers = {d: tuple(sort_basis(ms)) for d, ms in layers.items()}
        self.max_degree = max(layers) if layers else -1

    @classmethod
    def _from_validated(cls, members: frozenset[Monomial], ambient_dim: int) -> "Multicomplex":
        mc = cls.__new__(cls)
        mc._init_from_validated(members, ambient_dim)
        return mc

    @classmethod
    def from_monomials(cls, monomials: Iterable[Monomial], ambient_dim: int) -> "Multicomplex":
        """Validating constructor; rejects non-divisor-closed input."""
        return cls(monomials, ambient_dim)

    @classmethod
    def closure(cls, monomials: Iterable[Monomial], ambient_dim: int) -> "Multicomplex":
        """Smallest divisor-closed superset of the input."""
        members = _divisor_close(monomials, ambient_dim)
        return cls._from_validated(frozenset(members), ambient_dim)

    # --- container protocol ---------------------------------------------

    def __contains__(self, m: Monomial) -> bool:
        return m in self._members

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[Monomial]:
        for d in sorted(self._layers):
            yield from self._layers[d]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multicomplex):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._members == other._members

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self._members))

    def __repr__(self) -> str:
        return f"Multicomplex({len(self)} monomials, ambient_dim={self.ambient_dim})"

    # --- graded structure -------------------------------------------------

    def layer(self, degree: int) -> tuple[Monomial, ...]:
        """Monomials of the given total degree, in basis order."""
        return self._layers.get(degree, ())

    def f_vector(self) -> tuple[int, ...]:
        """Per-degree monomial counts (f_0, ..., f_maxdeg); empty if empty."""
        return tuple(len(self.layer(d)) for d in range(self.max_degree + 1))

    def vertices(self) -> tuple[int, ...]:
        """Variable indices whose degree-one monomial belongs to the complex."""
        n = self.ambient_dim
        return tuple(i for i in range(n) if variable(n, i) in self._members)

    # --- predicates ---------------------------------------------------------

    def is_shifted(self, order: Sequence[int] | None = None) -> bool:
        """Whenever x_j*m is present, i precedes j in the order, and x_i is a
        vertex, then x_i*m must be present too."""
        ranks = _ranks(order, self.ambient_dim)
        verts = sorted(self.vertices(), key=lambda v: ranks[v])
        for t in self._members:
            for j in support(t):
                m = drop(t, j)
                rj = ranks[j]
                for i in verts:
                    if ranks[i] >= rj:
                        break
                    if bump(m, i) not in self._members:
                        return False
        return True

    def is_simplicial(self) -> bool:
        return all(is_squarefree(m) for m in self._members)

    # --- decomposition ------------------------------------------------------

    def constituents(self) -> dict[Monomial, "Multicomplex"]:
        """Square-free pieces indexed by the square root p of the even part:
        the piece at p collects every q with p^2 * q in the complex.  The
        pieces partition the complex via m = p^2 * q."""
        groups: dict[Monomial, set[Monomial]] = {}
        for m in self._members:
            p, q = square_decompose(m)
            groups.setdefault(p, set()).add(q)
        return {
            p: Multicomplex._from_validated(frozenset(qs), self.ambient_dim)
            for p, qs in sorted(groups.items(), key=lambda kv: basis_key(kv[0]))
        }

    def degree_sequence(self, degree: int) -> tuple[int, ...]:
        """Entry j counts the degree-`degree` monomials divisible by x_(j+1)."""
        layer = self.layer(degree)
        return tuple(sum(1 for m in layer if m[j] > 0) for j in range(self.ambient_dim))

    def relabel(self, perm: Sequence[int]) -> "Multicomplex":
        """Permute variables: exponent of old variable i moves to perm[i]."""
        n = self.ambient_dim
        if sorted(perm) != list(range(n)):
            raise ValueError(f"perm {perm} is not a permutation of 0..{n - 1}")
        relabeled = set()
        for m in self._members:
            e = [0] * n
            for i, x in enumerate(m):
                e[perm[i]] = x
            relabeled.add(tuple(e))
        return Multicomplex._from_validated(frozenset(relabeled), n)


def _divisor_close(monomials: Iterable[Monomial], ambient_dim: int) -> set[Monomial]:
    todo = []
    for m in monomials:
        m = tuple(m)
        if len(m) != ambient_dim:
            raise ValueError(f"monomial {m} has length {len(m)}, expected {ambient_dim}")
        if any(e < 0 for e in m):
            raise ValueError(f"negative exponent in {m}")
        if total_degree(m) > DEGREE_CAP:
            raise ValueError(f"total degree of {m} exceeds cap {DEGREE_CAP}")
        todo.append(m)
    members: set[Monomial] = set()
    while todo:
        m = todo.pop()
        if m in members:
            continue
        members.add(m)
        for i in support(m):
            d = drop(m, i)
            if d not in members:
                todo.append(d)
    return members


# --- ideal correspondence ---------------------------------------------------


def complement_ideal_generators(
    mc: Multicomplex, through_degree: int | None = None
) -> frozenset[Monomial]:
    """Minimal monomials (under divisibility) outside the multicomplex; they
    generate the artinian ideal whose standard monomials are the complex.
    Every minimal generator has degree at most max_degree + 1, so the default
    degree bound is exactly that."""
    n = mc.ambient_dim
    least = mc.max_degree + 1
    if through_degree is None:
        through_degree = least
    elif through_degree < least:
        raise ValueError(f"degree bound {through_degree} below max_degree + 1 = {least}")
    if unit(n) not in mc:
        return frozenset({unit(n)})
    gens: set[Monomial] = set()
    for m in mc:
        for i in range(n):
            t = bump(m, i)
            if t in mc or t in gens:
                continue
            if all(drop(t, k) in mc for k in support(t)):
                gens.add(t)
    return frozenset(gens)


def is_strongly_stable(
    gens: Iterable[Monomial], ambient_dim: int, order: Sequence[int] | None = None
) -> bool:
    """Borel-fixedness of the ideal the generators span: swapping any variable
    of a generator for an earlier one must stay inside the ideal.  Checking
    generators suffices because every ideal member is a generator times
    something, and the swap commutes with that product."""
    ranks = _ranks(order, ambient_dim)
    gen_list = [tuple(g) for g in gens]
    for g in gen_list:
        if len(g) != ambient_dim:
            raise ValueError(f"generator {g} has length {len(g)}, expected {ambient_dim}")
    for g in gen_list:
        for i in support(g):
            for j in range(ambient_dim):
                if ranks[j] >= ranks[i]:
                    continue
                swapped = bump(drop(g, i), j)
                if not any(
                    all(x <= y for x, y in zip(h, swapped)) for h in gen_list
                ):
                    return False
    return True


# --- random instances (for randomized property checks) -----------------------


def random_multicomplex(
    rng: random.Random,
    ambient_dim: int,
    max_degree: int,
    max_size: int = 60,
    n_generators: int = 3,
    full_support: bool = False,
) -> Multicomplex:
    """Divisor closure of a handful of random monomials, resampled until the
    result fits within max_size."""
    for attempt in range(1000):
        cap = max(1, max_degree - (attempt // 100))
        gens = [
            _random_monomial(rng, ambient_dim, cap)
            for _ in range(rng.randint(1, n_generators))
        ]
        if full_support:
            gens.extend(variable(ambient_dim, i) for i in range(ambient_dim))
        mc = Multicomplex.closure(gens, ambient_dim)
        if len(mc) <= max_size:
            return mc
    raise RuntimeError("could not sample a multicomplex within max_size")


def random_shifted_multicomplex(
    rng: random.Random,
    ambient_dim: int,
    max_degree: int,
    max_size: int = 60,
    order: Sequence[int] | None = None,
) -> Multicomplex:
    """Random divisor-closed seed, then closed under the shifted exchange rule
    (add x_i*m whenever x_j*m is present, i precedes j, and x_i is a vertex)
    until stable.  The fixed point satisfies the shifted predicate for the
    given order by construction."""
    ranks = _ranks(order, ambient_dim)
    for attempt in range(1000):
        cap = max(1, max_degree - (attempt // 100))
        seed = [
            _random_monomial(rng, ambient_dim, cap)
            for _ in range(rng.randint(1, 3))
        ]
        members = _shifted_close(_divisor_close(seed, ambient_dim), ambient_dim, ranks)
        if len(members) <= max_size:
            return Multicomplex._from_validated(frozenset(members), ambient_dim)
    raise RuntimeError("could not sample a shifted multicomplex within max_size")


def _random_monomial(rng: random.Random, ambient_dim: int, max_degree: int) -> Monomial:
    e = [0] * ambient_dim
    for _ in range(rng.randint(0, max_degree)):
        e[rng.randrange(ambient_dim)] += 1
    return tuple(e)


def _shifted_close(
    members: set[Monomial], ambient_dim: int, ranks: Sequence[int]
) -> set[Monomial]:
    # Exchange additions can expose missing divisors and new vertices, so
    # alternate the two closures until neither adds anything.
    while True:
        verts = [
            i for i in range(ambient_dim) if variable(ambient_dim, i) in members
        ]
        verts.sort(key=lambda v: ranks[v])
        added: set[Monomial] = set()
        for t in members:
            for j in support(t):
                m = drop(t, j)
                rj = ranks[j]
                for i in verts:
                    if ranks[i] >= rj:
                        break
                    cand = bump(m, i)
                    if cand not in members:
                        added.add(cand)
        if not added:
            return members
        members = _divisor_close(members | added, ambient_dim)


# --- text format -------------------------------------------------------------
#
# Canonical file format: optional first line "vars <n>", then one monomial per
# line as space-separated exponents.  Lines whose first non-blank character is
# '#' are comments.  The symbolic flag accepts "x1^2*x2" lines instead.


def parse_multicomplex(
    text: str, symbolic: bool = False, validate: bool = True
) -> Multicomplex:
    header_dim: int | None = None
    rows: list[tuple[int, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header_dim is None and not rows and line.startswith("vars"):
            fields = line.split()
            if len(fields) != 2 or not fields[1].isdigit():
                raise ParseError(f"bad header {line!r}", line_no)
            header_dim = int(fields[1])
            continue
        rows.append((line_no, line))

    monomials: list[Monomial]
    if symbolic:
        factor_rows = []
        for line_no, line in rows:
            try:
                factor_rows.append((line_no, parse_symbolic_factors(line)))
            except ValueError as exc:
                raise ParseError(str(exc), line_no) from None
        ambient = header_dim
        if ambient is None:
            ambient = max(
                (i + 1 for _, fs in factor_rows for i, _ in fs), default=0
            )
        monomials = []
        for line_no, factors in factor_rows:
            exps = [0] * ambient
            for i, e in factors:
                if i >= ambient:
                    raise ParseError(
                        f"variable x{i + 1} outside ambient dimension {ambient}", line_no
                    )
                exps[i] += e
            monomials.append(tuple(exps))
    else:
        parsed = []
        for line_no, line in rows:
            try:
                parsed.append((line_no, parse_exponents(line)))
            except ValueError as exc:
                raise ParseError(str(exc), line_no) from None
        ambient = header_dim
        if ambient is None:
            lengths = {len(m) for _, m in parsed}
            if len(lengths) > 1:
                bad = next(ln for ln, m in parsed if len(m) != len(parsed[0][1]))
                raise ParseError("inconsistent exponent-vector length", bad)
            ambient = lengths.pop() if lengths else 0
        monomials = []
        for line_no, m in parsed:
            if len(m) != ambient:
                raise ParseError(
                    f"expected {ambient} exponents, got {len(m)}", line_no
                )
            monomials.append(m)

    if validate:
        return Multicomplex(monomials, ambient)
    return Multicomplex.closure(monomials, ambient)


def load_multicomplex(path, symbolic: bool = False, validate: bool = True) -> Multicomplex:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_multicomplex(fh.read(), symbolic=symbolic, validate=validate)


def format_multicomplex(mc: Multicomplex, symbolic: bool = False) -> str:
    lines = [f"vars {mc.ambient_dim}"]
    for m in mc:
        lines.append(format_symbolic(m) if symbolic else format_exponents(m))
    return "\n".join(lines) + "\n"
