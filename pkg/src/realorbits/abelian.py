"""Finite abelian groups ``Z/m1 x ... x Z/mr`` in additive notation.

These model torsion points of a compact torus: a sign matrix
``diag(+-1, ..., +-1)`` is a vector over ``Z/2`` (``-1 <-> 1``) and fourth
roots of unity live in ``Z/4`` (``i <-> 1``, ``-1 <-> 2``, ``-i <-> 3``).

Subgroups are stored by generators and a canonical Hermite basis of the
lattice they span together with ``m_i e_i``.  That basis gives the order,
membership and lexicographically least coset representatives without
enumerating anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import AmbientMismatch, InternalError, LimitExceeded, NotASubgroup, NotAState

DEFAULT_LIMIT = 2**24

# mixed-radix codes are packed into int64 only below this bound
_PACKED_BOUND = 2**62


def mod_rows(arr: np.ndarray, moduli: Sequence[int]) -> np.ndarray:
    """Reduce the columns of ``arr`` in place; bit masks when every modulus is a power of 2."""
    if all(m & (m - 1) == 0 for m in moduli):
        arr &= np.array(moduli, dtype=np.int64) - 1
    else:
        arr %= np.array(moduli, dtype=np.int64)
    return arr


@dataclass(frozen=True)
class TorsionGroup:
    moduli: tuple[int, ...]

    def __init__(self, moduli: Iterable[int]):
        moduli = tuple(int(m) for m in moduli)
        if any(m < 1 for m in moduli):
            raise ValueError(f"moduli must be >= 1, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def __call__(self, *coords) -> GroupElement:
        if len(coords) == 1 and not isinstance(coords[0], (int, np.integer)):
            coords = tuple(coords[0])
        return self.element(coords)

    def element(self, coords: Iterable[int]) -> GroupElement:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return GroupElement(self, tuple(c % m for c, m in zip(coords, self.moduli)))

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def basis(self, i: int) -> GroupElement:
        return self.element(1 if j == i else 0 for j in range(self.rank))

    def full(self) -> SubgroupSpec:
        return SubgroupSpec(self, [self.basis(i) for i in range(self.rank)])

    def trivial(self) -> SubgroupSpec:
        return SubgroupSpec(self, [])

    @cached_property
    def radix(self) -> tuple[int, ...]:
        """Weights of the mixed-radix code; code order equals lex order."""
        weights = []
        w = 1
        for m in reversed(self.moduli):
            weights.append(w)
            w *= m
        return tuple(reversed(weights))

    @property
    def packable(self) -> bool:
        return self.order < _PACKED_BOUND

    def code(self, coords: Sequence[int]) -> int:
        return sum(c * w for c, w in zip(coords, self.radix))

    def __repr__(self):
        return f"TorsionGroup({list(self.moduli)})"


@dataclass(frozen=True, order=False)
class GroupElement:
    group: TorsionGroup
    coords: tuple[int, ...]

    def _check(self, other: GroupElement) -> None:
        if not isinstance(other, GroupElement):
            raise TypeError(f"cannot combine GroupElement with {type(other).__name__}")
        if other.group != self.group:
            raise AmbientMismatch(f"{self.group} vs {other.group}")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(
            self.group,
            tuple((a + b) % m for a, b, m in zip(self.coords, other.coords, self.group.moduli)),
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(
            self.group, tuple((-a) % m for a, m in zip(self.coords, self.group.moduli))
        )

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __mul__(self, k: int) -> GroupElement:
        return self.group.element(k * a for a in self.coords)

    __rmul__ = __mul__

    def __lt__(self, other: GroupElement) -> bool:
        self._check(other)
        return self.coords < other.coords

    def __le__(self, other: GroupElement) -> bool:
        self._check(other)
        return self.coords <= other.coords

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return f"({','.join(map(str, self.coords))})"


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def neg(a: GroupElement) -> GroupElement:
    return -a


def _hermite_basis(moduli: tuple[int, ...], rows: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    """Canonical upper-triangular basis of ``span(rows) + sum(m_i Z e_i)``.

    Row ``j`` has a positive pivot ``p_j | m_j`` in column ``j`` and entries
    right of column ``j`` reduced into ``[0, p_k)``.
    """
    r = len(moduli)
    work = [[x % m for x, m in zip(row, moduli)] for row in rows]
    basis: list[list[int]] = []
    for c in range(r):
        m = moduli[c]
        pivot = [0] * r
        pivot[c] = m
        rest = []
        for row in work:
            if row[c] == 0:
                rest.append(row)
                continue
            # euclid on column c between pivot and row
            a, b = pivot, row
            while b[c] != 0:
                q = a[c] // b[c]
                a, b = b, [
                    (x - q * y) % moduli[k] if k > c else x - q * y
                    for k, (x, y) in enumerate(zip(a, b))
                ]
            if a[c] < 0:
                a = [(-x) % moduli[k] if k > c else -x for k, x in enumerate(a)]
            pivot = a
            if any(b):
                rest.append(b)
        basis.append(pivot)
        work = rest
    # back-reduce entries right of each pivot
    for i in range(r):
        row = basis[i]
        for j in range(i + 1, r):
            q = row[j] // basis[j][j]
            if q:
                row = [x - q * y for x, y in zip(row, basis[j])]
        basis[i] = row
    return tuple(tuple(row) for row in basis)


class SubgroupSpec:
    """A subgroup of a :class:`TorsionGroup` given by generators.

    The generated set is closed by construction; the Hermite basis of the
    lattice it spans is computed eagerly and used for membership tests,
    order and coset reduction.
    """

    def __init__(self, ambient: TorsionGroup, generators: Iterable[GroupElement | Sequence[int]] = ()):
        gens = []
        for g in generators:
            if isinstance(g, GroupElement):
                if g.group != ambient:
                    raise AmbientMismatch(f"generator {g} not in {ambient}")
            else:
                g = ambient.element(g)
            gens.append(g)
        self.ambient = ambient
        self.generators = tuple(gens)
        self.hermite = _hermite_basis(ambient.moduli, [list(g.coords) for g in gens])

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self.hermite[i][i] for i in range(self.ambient.rank))

    @property
    def order(self) -> int:
        return math.prod(m // p for m, p in zip(self.ambient.moduli, self.pivots))

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, SubgroupSpec):
            return NotImplemented
        return self.ambient == other.ambient and self.hermite == other.hermite

    def __hash__(self):
        return hash((self.ambient, self.hermite))

    def __repr__(self):
        return f"SubgroupSpec({self.ambient}, order={self.order}, gens={list(self.generators)})"

    def reduce(self, v: GroupElement | Sequence[int]) -> tuple[int, ...]:
        """Lexicographically least element of the coset ``v + self``."""
        coords = list(v.coords if isinstance(v, GroupElement) else v)
        moduli = self.ambient.moduli
        for j, row in enumerate(self.hermite):
            q = coords[j] // row[j]
            if q:
                coords = [x - q * y for x, y in zip(coords, row)]
            coords[j] %= moduli[j]
        return tuple(c % m for c, m in zip(coords, moduli))

    def reduce_array(self, arr: np.ndarray) -> np.ndarray:
        """Row-wise :meth:`reduce` of an integer array."""
        arr = np.array(arr, dtype=np.int64, copy=True)
        for j, row in enumerate(self.hermite):
            q = arr[:, j] // row[j]
            arr -= q[:, None] * np.array(row, dtype=np.int64)
        return mod_rows(arr, self.ambient.moduli)

    def __contains__(self, v) -> bool:
        if isinstance(v, GroupElement) and v.group != self.ambient:
            return False
        return not any(self.reduce(v))

    def contains_subgroup(self, other: SubgroupSpec) -> bool:
        if other.ambient != self.ambient:
            return False
        return all(row in self for row in other.hermite)

    def element_array(self, limit: int | None = None) -> np.ndarray:
        """All elements as an ``(order, rank)`` array, rows in lex order."""
        return self._array(DEFAULT_LIMIT if limit is None else limit)

    def _array(self, limit: int) -> np.ndarray:
        if self.order > limit:
            raise LimitExceeded(f"subgroup of order {self.order} exceeds limit {limit}")
        cached = self.__dict__.get("_cached_array")
        if cached is not None:
            return cached
        r = self.ambient.rank
        arr = np.zeros((1, r), dtype=np.int64)
        for j, row in enumerate(self.hermite):
            steps = self.ambient.moduli[j] // row[j]
            if steps == 1:
                continue
            k = np.arange(steps, dtype=np.int64)[:, None, None]
            arr = mod_rows((arr[None, :, :] + k * np.array(row, dtype=np.int64)).reshape(-1, r), self.ambient.moduli)
        arr = np.asfortranarray(arr[np.lexsort(arr.T[::-1])] if r else arr)
        arr.setflags(write=False)
        self.__dict__["_cached_array"] = arr
        return arr

    def enumerate(self, limit: int | None = None) -> list[GroupElement]:
        amb = self.ambient
        return [GroupElement(amb, tuple(int(x) for x in row)) for row in self.element_array(limit)]

    def __iter__(self):
        return iter(self.enumerate())


def enumerate_subgroup(S: SubgroupSpec, limit: int | None = None) -> list[GroupElement]:
    return S.enumerate(limit)


def two_torsion(G: TorsionGroup | SubgroupSpec) -> SubgroupSpec:
    """Elements ``v`` with ``2v = 0``; for a subgroup, intersected with it."""
    if isinstance(G, SubgroupSpec):
        amb = G.ambient
        full = two_torsion(amb)
        # 2-torsion of the ambient is small (2^#even), filter it
        return SubgroupSpec(amb, [v for v in full.enumerate() if v in G])
    gens = []
    for i, m in enumerate(G.moduli):
        if m % 2 == 0:
            gens.append((m // 2) * G.basis(i))
    return SubgroupSpec(G, gens)


def squares(S: SubgroupSpec) -> SubgroupSpec:
    """The subgroup of doubles ``{2s : s in S}``."""
    return SubgroupSpec(S.ambient, [2 * g for g in S.generators])


@dataclass(frozen=True)
class Quotient:
    group: SubgroupSpec
    kernel: SubgroupSpec
    representatives: tuple[GroupElement, ...] = field(repr=False)

    def project(self, s: GroupElement) -> GroupElement:
        if s not in self.group:
            raise NotAState(f"{s} is not in {self.group}")
        return GroupElement(self.group.ambient, self.kernel.reduce(s))

    def __len__(self):
        return len(self.representatives)


def quotient(S: SubgroupSpec, N: SubgroupSpec, limit: int | None = None) -> Quotient:
    """Coset representatives of ``S / N``, each the lex-least of its coset."""
    if N.ambient != S.ambient or not S.contains_subgroup(N):
        raise NotASubgroup("kernel is not contained in the group")
    amb = S.ambient
    n_reps = S.order // N.order
    reduced = N.reduce_array(S.element_array(limit))
    if amb.packable:
        radix = np.array(amb.radix, dtype=np.int64)
        codes = np.unique(reduced @ radix)
        reps = (codes[:, None] // radix) % np.array(amb.moduli, dtype=np.int64)
    else:
        reps = np.unique(reduced, axis=0)
    if len(reps) != n_reps:
        raise InternalError(f"found {len(reps)} cosets, expected {n_reps}")
    return Quotient(S, N, tuple(GroupElement(amb, tuple(int(x) for x in r)) for r in reps))


def naive_closure(ambient: TorsionGroup, generators: Iterable[GroupElement]) -> list[GroupElement]:
    """Closure by repeated addition; a slow oracle for tests."""
    gens = list(generators)
    seen = {ambient.zero()}
    frontier = [ambient.zero()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                for y in (x + g, x - g):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return sorted(seen)


def subgroup_from_predicate(ambient: TorsionGroup, pred: Callable[[tuple[int, ...]], bool]) -> list[GroupElement]:
    """Brute-force filter of the ambient group; test helper."""
    import itertools

    return [
        ambient.element(c)
        for c in itertools.product(*(range(m) for m in ambient.moduli))
        if pred(c)
    ]


def even_weight(ambient: TorsionGroup) -> SubgroupSpec:
    """Sign vectors with an even number of ``-1`` entries (all moduli 2)."""
    if any(m != 2 for m in ambient.moduli):
        raise ValueError("even_weight needs every modulus equal to 2")
    r = ambient.rank
    return SubgroupSpec(ambient, [ambient.basis(0) + ambient.basis(i) for i in range(1, r)])
