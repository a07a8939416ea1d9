"""Twisted affine actions on a state subgroup and their orbit partitions.

A generator acts as ``s -> L(s) + c`` where ``L`` is monomial (a coordinate
permutation with unit multipliers) and ``c`` is the twist.  For a normalizer
element ``n`` this is twisted conjugation ``s -> n s n^-1 * n sigma(n)^-1``:
``L`` is the ordinary conjugation on the torus and ``c = n sigma(n)^-1``.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .abelian import DEFAULT_LIMIT, GroupElement, SubgroupSpec, TorsionGroup, mod_rows
from .errors import AmbientMismatch, InternalError, LimitExceeded, NotAState, ValidationFailed


@dataclass(frozen=True)
class TwistedGenerator:
    """``s -> L(s) + twist`` with ``L(s)[perm[i]] = units[i] * s[i]``.

    ``perm`` is 0-based: coordinate ``i`` is sent to position ``perm[i]``.
    """

    label: str
    perm: tuple[int, ...]
    units: tuple[int, ...]
    twist: GroupElement

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(x) for x in self.perm))
        object.__setattr__(self, "units", tuple(int(x) for x in self.units))
        r = self.twist.group.rank
        if len(self.perm) != r or len(self.units) != r:
            raise ValueError(
                f"generator {self.label!r}: perm and units need length {r}"
            )
        if any(not 0 <= x < r for x in self.perm):
            raise ValueError(f"generator {self.label!r}: perm entries out of range")

    @property
    def group(self) -> TorsionGroup:
        return self.twist.group

    @classmethod
    def identity(cls, G: TorsionGroup, label: str = "id") -> TwistedGenerator:
        return cls(label, tuple(range(G.rank)), (1,) * G.rank, G.zero())

    @classmethod
    def swap(cls, G: TorsionGroup, i: int, j: int, twist=None, label: str | None = None) -> TwistedGenerator:
        """Transposition of coordinates ``i`` and ``j`` (0-based)."""
        perm = list(range(G.rank))
        perm[i], perm[j] = j, i
        if twist is None:
            twist = G.zero()
        elif not isinstance(twist, GroupElement):
            twist = G.element(twist)
        return cls(label or f"swap({i + 1},{j + 1})", tuple(perm), (1,) * G.rank, twist)

    def is_invertible(self) -> bool:
        moduli = self.group.moduli
        if sorted(self.perm) != list(range(len(self.perm))):
            return False
        return all(
            moduli[self.perm[i]] == moduli[i] and math.gcd(u, moduli[i]) == 1
            for i, u in enumerate(self.units)
        )

    def linear(self, s: GroupElement) -> GroupElement:
        if s.group != self.group:
            raise AmbientMismatch(f"{s} is not in {self.group}")
        out = [0] * len(self.perm)
        for i, (j, u) in enumerate(zip(self.perm, self.units)):
            out[j] = u * s.coords[i]
        return self.group.element(out)

    def __call__(self, s: GroupElement) -> GroupElement:
        return self.linear(s) + self.twist

    def apply_array(self, arr: np.ndarray) -> np.ndarray:
        """Vectorized ``apply`` over the rows of an integer array."""
        src = np.argsort(self.perm)
        out = arr[:, src]
        if any(u != 1 for u in self.units):
            out *= np.array(self.units, dtype=np.int64)[src]
        out += np.array(self.twist.coords, dtype=np.int64)
        return mod_rows(out, self.group.moduli)

    def inverse(self) -> TwistedGenerator:
        if not self.is_invertible():
            raise ValueError(f"generator {self.label!r} has a non-invertible linear part")
        moduli = self.group.moduli
        r = len(self.perm)
        perm = [0] * r
        units = [0] * r
        for i, (j, u) in enumerate(zip(self.perm, self.units)):
            perm[j] = i
            units[j] = pow(u, -1, moduli[i])
        lin = TwistedGenerator(self.label, tuple(perm), tuple(units), self.group.zero())
        return TwistedGenerator(self.label + "^-1", tuple(perm), tuple(units), -lin.linear(self.twist))

    def with_twist(self, twist: GroupElement) -> TwistedGenerator:
        return TwistedGenerator(self.label, self.perm, self.units, twist)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "perm": [j + 1 for j in self.perm],
            "units": list(self.units),
            "twist": list(self.twist.coords),
        }


def apply(g: TwistedGenerator, s: GroupElement) -> GroupElement:
    return g(s)


def compose(m: TwistedGenerator, n: TwistedGenerator) -> TwistedGenerator:
    """The generator acting as ``m`` after ``n``.

    The twist follows the cocycle rule ``c(mn) = c(m) + L_m(c(n))``.
    """
    if m.group != n.group:
        raise AmbientMismatch(f"{m.group} vs {n.group}")
    moduli = m.group.moduli
    perm = tuple(m.perm[n.perm[i]] for i in range(len(n.perm)))
    units = tuple(
        (n.units[i] * m.units[n.perm[i]]) % moduli[perm[i]] for i in range(len(n.perm))
    )
    return TwistedGenerator(f"{m.label}*{n.label}", perm, units, m.twist + m.linear(n.twist))


@dataclass
class Check:
    generator: str
    name: str
    ok: bool
    message: str = ""


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def summary(self) -> str:
        if self.ok:
            return f"ok ({len(self.checks)} checks)"
        return "\n".join(f"  {c.generator}: {c.message}" for c in self.failures)


class TwistedAction:
    """Generators acting on ``states``, a subgroup of ``ambient``."""

    def __init__(
        self,
        ambient: TorsionGroup,
        states: SubgroupSpec,
        generators: Iterable[TwistedGenerator] = (),
        description: str = "",
    ):
        if states.ambient != ambient:
            raise AmbientMismatch("state subgroup lives in a different ambient group")
        self.ambient = ambient
        self.states = states
        self.generators = tuple(generators)
        self.description = description
        for g in self.generators:
            if g.group != ambient:
                raise AmbientMismatch(f"generator {g.label!r} lives in {g.group}, not {ambient}")

    def __repr__(self):
        return (
            f"TwistedAction({self.ambient}, |states|={self.states.order}, "
            f"gens={[g.label for g in self.generators]})"
        )

    def with_generators(self, generators: Iterable[TwistedGenerator], description: str | None = None):
        return TwistedAction(
            self.ambient,
            self.states,
            generators,
            self.description if description is None else description,
        )

    def untwisted(self) -> TwistedAction:
        """Same linear parts with every twist set to zero."""
        zero = self.ambient.zero()
        return self.with_generators(
            [g.with_twist(zero) for g in self.generators], self.description + " (untwisted)"
        )

    @property
    def fingerprint(self) -> str:
        payload = {
            "moduli": list(self.ambient.moduli),
            "states": [list(row) for row in self.states.hermite],
            "generators": [g.to_json() for g in self.generators],
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def validate(A: TwistedAction) -> ValidationReport:
    report = ValidationReport()
    seen = set()
    for g in A.generators:
        if g.label in seen:
            report.checks.append(Check(g.label, "label", False, "duplicate generator label"))
        seen.add(g.label)

        invertible = g.is_invertible()
        report.checks.append(
            Check(g.label, "invertible", invertible, "" if invertible else "non-invertible linear part")
        )
        inside = g.twist in A.states
        report.checks.append(
            Check(g.label, "twist", inside, "" if inside else f"twist {g.twist} outside state subgroup")
        )
        if invertible:
            bad = [h for h in A.states.generators if g.linear(h) not in A.states]
            report.checks.append(
                Check(
                    g.label,
                    "preserves",
                    not bad,
                    "" if not bad else f"linear part moves {bad[0]} out of the state subgroup",
                )
            )
    return report


@dataclass(frozen=True)
class Orbit:
    representative: GroupElement
    size: int
    members: tuple[GroupElement, ...] | None = None


class OrbitSet:
    """Partition of the state set, orbits sorted by least member."""

    def __init__(self, orbits, fingerprint, labels, states_array, ambient):
        self.orbits: tuple[Orbit, ...] = tuple(orbits)
        self.fingerprint = fingerprint
        # labels[k] = index of the orbit holding the k-th state (lex order)
        self.labels = labels
        self._states = states_array
        self._ambient = ambient

    def __len__(self):
        return len(self.orbits)

    def __iter__(self):
        return iter(self.orbits)

    def __getitem__(self, i):
        return self.orbits[i]

    def __eq__(self, other):
        if not isinstance(other, OrbitSet):
            return NotImplemented
        return (
            self.fingerprint == other.fingerprint
            and self.orbits == other.orbits
            and np.array_equal(self.labels, other.labels)
        )

    def same_partition(self, other: OrbitSet) -> bool:
        """Equality ignoring which action produced the partition."""
        return self.orbits == other.orbits and np.array_equal(self.labels, other.labels)

    def __repr__(self):
        return f"OrbitSet({len(self.orbits)} orbits, sizes={self.sizes})"

    @property
    def states_array(self) -> np.ndarray:
        """Lex-sorted states, row ``k`` labelled by ``labels[k]``."""
        return self._states

    @property
    def representatives(self) -> list[GroupElement]:
        return [o.representative for o in self.orbits]

    @property
    def sizes(self) -> list[int]:
        return [o.size for o in self.orbits]

    def index_of(self, s: GroupElement) -> int:
        idx = _Indexer(self._ambient, self._states).find(np.array([s.coords], dtype=np.int64))
        if idx[0] < 0:
            raise NotAState(f"{s} is not a state")
        return int(self.labels[idx[0]])

    def find(self, s: GroupElement) -> Orbit:
        return self.orbits[self.index_of(s)]

    def members_of(self, i: int) -> list[GroupElement]:
        rows = self._states[self.labels == i]
        return [GroupElement(self._ambient, tuple(int(x) for x in r)) for r in rows]


class _Indexer:
    """Row -> position lookup in a lex-sorted state array."""

    def __init__(self, ambient: TorsionGroup, states: np.ndarray):
        self.ambient = ambient
        self.states = states
        if ambient.packable:
            self.radix = np.array(ambient.radix, dtype=np.int64)
            self.codes = states @ self.radix
            self.table = None
        else:
            self.table = {tuple(r): k for k, r in enumerate(states.tolist())}

    def find(self, rows: np.ndarray) -> np.ndarray:
        """Positions of ``rows``; ``-1`` where a row is not a state."""
        if self.table is not None:
            return np.array([self.table.get(tuple(r), -1) for r in rows.tolist()], dtype=np.int64)
        codes = rows @ self.radix
        pos = np.searchsorted(self.codes, codes)
        pos = np.minimum(pos, len(self.codes) - 1)
        hit = self.codes[pos] == codes
        return np.where(hit, pos, -1)


def image_tables(A: TwistedAction, limit: int | None = None, workers: int = 1) -> tuple[np.ndarray, list[np.ndarray]]:
    """State array plus one permutation table per generator and inverse."""
    states = A.states.element_array(limit)
    indexer = _Indexer(A.ambient, states)

    def table(g):
        t = indexer.find(g.apply_array(states))
        if (t < 0).any() or len(np.unique(t)) != len(t):
            raise InternalError(f"generator {g.label!r} does not permute the states")
        return t

    if workers > 1 and len(A.generators) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            forward = list(pool.map(table, A.generators))
    else:
        forward = [table(g) for g in A.generators]
    tables = []
    for t in forward:
        inv = np.empty_like(t)
        inv[t] = np.arange(len(t), dtype=t.dtype)
        tables.append(t)
        if not np.array_equal(inv, t):
            tables.append(inv)
    return states, tables


def _bfs_labels(k: int, tables: list[np.ndarray]) -> np.ndarray:
    labels = np.full(k, -1, dtype=np.int64)
    visited = np.zeros(k, dtype=bool)
    n_orbits = 0
    for seed in range(k):
        if visited[seed]:
            continue
        visited[seed] = True
        labels[seed] = n_orbits
        frontier = np.array([seed], dtype=np.int64)
        while frontier.size:
            nxt = np.unique(np.concatenate([t[frontier] for t in tables])) if tables else frontier[:0]
            nxt = nxt[~visited[nxt]]
            visited[nxt] = True
            labels[nxt] = n_orbits
            frontier = nxt
        n_orbits += 1
    return labels


def _union_find_labels(k: int, tables: list[np.ndarray]) -> np.ndarray:
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in tables:
        for x, y in enumerate(t.tolist()):
            rx, ry = find(x), find(y)
            if rx != ry:
                # smaller index becomes the root so roots are lex-least members
                if rx < ry:
                    parent[ry] = rx
                else:
                    parent[rx] = ry
    roots = np.array([find(x) for x in range(k)], dtype=np.int64)
    # relabel roots in increasing order
    _, labels = np.unique(roots, return_inverse=True)
    return labels.astype(np.int64)


ENGINES = {"bfs": _bfs_labels, "union_find": _union_find_labels}


def orbits(
    A: TwistedAction,
    *,
    engine: str = "bfs",
    members: bool = True,
    limit: int | None = None,
    workers: int = 1,
    check: bool = True,
) -> OrbitSet:
    """Partition the states of ``A`` into orbits of the generated group."""
    if check:
        report = validate(A)
        if not report.ok:
            raise ValidationFailed(report)
    limit = DEFAULT_LIMIT if limit is None else limit
    if A.states.order > limit:
        raise LimitExceeded(f"{A.states.order} states exceed limit {limit}")
    states, tables = image_tables(A, limit, workers)
    labels = ENGINES[engine](len(states), tables)

    amb = A.ambient
    sizes = np.bincount(labels)
    firsts = np.full(len(sizes), len(states), dtype=np.int64)
    np.minimum.at(firsts, labels, np.arange(len(states)))
    if not np.all(np.diff(firsts) > 0):
        raise InternalError("orbit labels are not ordered by least member")

    groups = None
    if members:
        order = np.argsort(labels, kind="stable")
        groups = np.split(order, np.cumsum(sizes)[:-1])
    result = []
    for i, (first, size) in enumerate(zip(firsts.tolist(), sizes.tolist())):
        rep = GroupElement(amb, tuple(int(x) for x in states[first]))
        mem = None
        if groups is not None:
            mem = tuple(GroupElement(amb, tuple(int(x) for x in states[j])) for j in groups[i])
        result.append(Orbit(rep, size, mem))
    return OrbitSet(result, A.fingerprint, labels, states, amb)


def orbit_count(A: TwistedAction, **kwargs) -> int:
    kwargs.setdefault("members", False)
    return len(orbits(A, **kwargs))


def orbit_of(A: TwistedAction, s: GroupElement) -> Orbit:
    """Orbit of a single state, found by direct closure from ``s``."""
    if s.group != A.ambient or s not in A.states:
        raise NotAState(f"{s} is not a state of this action")
    gens = list(A.generators)
    gens += [g.inverse() for g in gens]
    seen = {s}
    frontier = [s]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    members = tuple(sorted(seen))
    return Orbit(members[0], len(members), members)


def all_states(A: TwistedAction, limit: int | None = None) -> list[GroupElement]:
    return A.states.enumerate(limit)


def permutation_table(g: TwistedGenerator, states: Sequence[GroupElement]) -> list[int]:
    """Index table of ``g`` on an explicit state list (slow path for tests)."""
    index = {s: k for k, s in enumerate(states)}
    return [index[g(s)] for s in states]
