"""Built-in actions for ``G = SL_n`` with ``H = SO_{p,q}``.

Here ``T_1`` is the diagonal torus and ``T_1 ∩ H`` consists of the sign
matrices ``diag(+-1, ..., +-1)`` with an even number of minus signs, i.e. the
even-weight vectors of ``(Z/2)^n``.  Root reflections act by transposing two
diagonal entries; a reflection in a pair ``i <= p < j`` is represented by
``[[0, i], [i, 0]]`` on that block, and for it ``n sigma(n)^-1 = -I``.  In
additive notation that twist is ``e_i + e_j`` (:data:`CROSSING_TWIST_NOTE`).

Three variants share the state set:

* ``twisted``   -- twisted conjugation by ``N_0`` (the correct classification);
* ``plain_w0``  -- plain permutations by the little Weyl group ``S_n``;
* ``plain_w00`` -- plain permutations by ``S_p x S_q`` (the Borel-Ji recipe).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .abelian import GroupElement, SubgroupSpec, TorsionGroup, even_weight
from .action import TwistedAction, TwistedGenerator, orbits
from .errors import InternalError, InvalidFamily, NotAState, RankLimit

RANK_LIMIT = 24

MODES = ("twisted", "plain_w0", "plain_w00")

CROSSING_TWIST_NOTE = (
    "n = [[0, i], [i, 0]] has sigma(n) = [[0, -i], [-i, 0]] = -n = n^-1, "
    "so n sigma(n)^-1 = n^2 = -I on the block: twist e_p + e_(p+1)"
)


@dataclass(frozen=True)
class FamilySpec:
    kind: str = "sl_so"
    mode: str = "twisted"
    p: int | None = None
    q: int | None = None
    path: str | None = None

    def __post_init__(self):
        if self.kind not in ("sl_so", "custom"):
            raise InvalidFamily(f"unknown family kind {self.kind!r}")
        if self.mode not in MODES:
            raise InvalidFamily(f"unknown mode {self.mode!r}")
        if self.kind == "custom":
            if self.mode != "twisted":
                raise InvalidFamily("plain modes only exist for the sl_so family")
            if self.path is None:
                raise InvalidFamily("custom family needs a spec path")
        else:
            _check_pq(self.p, self.q)

    def build(self, rank_limit: int = RANK_LIMIT) -> TwistedAction:
        if self.kind == "custom":
            from .specfile import load_spec

            return load_spec(self.path)
        return build(self.p, self.q, self.mode, rank_limit=rank_limit)

    def describe(self) -> str:
        if self.kind == "custom":
            return f"custom({self.path})"
        return f"sl_so(p={self.p}, q={self.q}) {self.mode}"


def _check_pq(p, q, rank_limit: int = RANK_LIMIT) -> int:
    if p is None or q is None:
        raise InvalidFamily("sl_so needs both p and q")
    if int(p) != p or int(q) != q:
        raise InvalidFamily("p and q must be integers")
    if p < 1 or q < 1:
        raise InvalidFamily(f"sl_so needs p, q >= 1 (got p={p}, q={q})")
    n = p + q
    if n > rank_limit:
        raise RankLimit(f"n = p + q = {n} exceeds the rank limit {rank_limit}")
    return n


def _states(n: int) -> tuple[TorsionGroup, SubgroupSpec]:
    G = TorsionGroup([2] * n)
    return G, even_weight(G)


def build_sl_so(p: int, q: int, *, rank_limit: int = RANK_LIMIT, crossing_twist: bool = True) -> TwistedAction:
    """Twisted conjugation action of ``N_0`` on ``T_1 ∩ H``.

    Generators are the adjacent transpositions; only the one crossing the
    block boundary, ``(p, p+1)``, carries a twist.  ``Z_0`` acts trivially
    and is left out.  ``crossing_twist=False`` drops that twist and exists
    for fault injection only.
    """
    n = _check_pq(p, q, rank_limit)
    G, states = _states(n)
    gens = []
    for i in range(n - 1):
        if i == p - 1:
            twist = G.basis(i) + G.basis(i + 1) if crossing_twist else G.zero()
            gens.append(TwistedGenerator.swap(G, i, i + 1, twist, label=f"r{i + 1},{i + 2}*"))
        else:
            gens.append(TwistedGenerator.swap(G, i, i + 1, label=f"r{i + 1},{i + 2}"))
    return TwistedAction(G, states, gens, f"SL_{n}/SO_{p},{q} twisted N0-action")


def build_sl_so_all_crossings(p: int, q: int, *, rank_limit: int = RANK_LIMIT) -> TwistedAction:
    """Same group as :func:`build_sl_so`, generated by every root reflection."""
    n = _check_pq(p, q, rank_limit)
    G, states = _states(n)
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            crossing = i < p <= j
            twist = G.basis(i) + G.basis(j) if crossing else G.zero()
            gens.append(TwistedGenerator.swap(G, i, j, twist, label=f"r{i + 1},{j + 1}"))
    return TwistedAction(G, states, gens, f"SL_{n}/SO_{p},{q} twisted, all reflections")


def build_plain_w00(p: int, q: int, *, rank_limit: int = RANK_LIMIT) -> TwistedAction:
    n = _check_pq(p, q, rank_limit)
    G, states = _states(n)
    gens = [
        TwistedGenerator.swap(G, i, i + 1, label=f"w{i + 1},{i + 2}")
        for i in range(n - 1)
        if i != p - 1
    ]
    return TwistedAction(G, states, gens, f"SL_{n}/SO_{p},{q} plain S_{p} x S_{q}")


def build_plain_w0(p: int, q: int, *, rank_limit: int = RANK_LIMIT) -> TwistedAction:
    n = _check_pq(p, q, rank_limit)
    G, states = _states(n)
    gens = [TwistedGenerator.swap(G, i, i + 1, label=f"w{i + 1},{i + 2}") for i in range(n - 1)]
    return TwistedAction(G, states, gens, f"SL_{n}/SO_{p},{q} plain S_{n}")


def build_z0(p: int, q: int, *, rank_limit: int = RANK_LIMIT) -> TwistedAction:
    """``Z_0`` (even sign matrices) by twisted conjugation.

    A real diagonal ``z`` commutes with the torus and ``z sigma(z)^-1 = 1``,
    so every generator is the identity map.
    """
    n = _check_pq(p, q, rank_limit)
    G, states = _states(n)
    gens = [
        TwistedGenerator(f"z{h}", tuple(range(n)), (1,) * n, G.zero())
        for h in states.generators
    ]
    return TwistedAction(G, states, gens, f"SL_{n}/SO_{p},{q} Z0 twisted")


_BUILDERS = {"twisted": build_sl_so, "plain_w0": build_plain_w0, "plain_w00": build_plain_w00}


def build(p: int, q: int, mode: str = "twisted", *, rank_limit: int = RANK_LIMIT) -> TwistedAction:
    try:
        builder = _BUILDERS[mode]
    except KeyError:
        raise InvalidFamily(f"unknown mode {mode!r}") from None
    return builder(p, q, rank_limit=rank_limit)


def canonical_forms_sl_so(p: int, q: int) -> list[GroupElement]:
    """``s_k`` (2k minus signs ending at position p) then ``s'_k`` (starting at p+1)."""
    n = _check_pq(p, q, rank_limit=10**9)
    G = TorsionGroup([2] * n)
    forms = []
    for k in range(p // 2 + 1):
        forms.append(G.element(1 if p - 2 * k <= j < p else 0 for j in range(n)))
    for k in range(1, q // 2 + 1):
        forms.append(G.element(1 if p <= j < p + 2 * k else 0 for j in range(n)))
    return forms


def canonical_form_sl_so(s: GroupElement, p: int, q: int, orbit_set=None) -> GroupElement:
    """The canonical form in the ``N_0``-orbit of ``s``."""
    action = build_sl_so(p, q)
    if s.group != action.ambient or s not in action.states:
        raise NotAState(f"{s} is not in T_1 ∩ H for (p, q) = ({p}, {q})")
    if orbit_set is None:
        orbit_set = orbits(action, members=False)
    target = orbit_set.index_of(s)
    hits = [c for c in canonical_forms_sl_so(p, q) if orbit_set.index_of(c) == target]
    if len(hits) != 1:
        raise InternalError(f"orbit of {s} meets {len(hits)} canonical forms")
    return hits[0]


def w00_orbit_count_formula(p: int, q: int) -> int:
    """Number of pairs (minus signs among first p, among last q) with even sum."""
    return sum(1 for a in range(p + 1) for b in range(q + 1) if (a + b) % 2 == 0)


def twisted_orbit_count_formula(p: int, q: int) -> int:
    return p // 2 + q // 2 + 1


def realized_signatures(p: int, q: int) -> set[tuple[int, int]]:
    """``(p - 2k, q + 2k)`` and ``(p + 2k, q - 2k)`` within range."""
    down = {(p - 2 * k, q + 2 * k) for k in range(p // 2 + 1)}
    up = {(p + 2 * k, q - 2 * k) for k in range(q // 2 + 1)}
    return down | up


def load_spec(path: str | Path) -> TwistedAction:
    from .specfile import load_spec as _load

    return _load(path)
