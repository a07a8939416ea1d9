"""Slice points ``x = t x_0`` and their relation to cocycles.

A state coordinate ``s_j`` in ``Z/m`` stands for ``exp(2 pi i s_j / m)``.  A
slice point ``t`` with ``t^2 = s`` then has its coordinate in ``Z/2m`` and
``s = t mod m``.  For sign vectors (``m = 2``) the slice lives in ``(Z/4)^r``:
``diag(i, i, 1)`` is ``(1, 1, 0)`` and squares to ``diag(-1, -1, 1)``.

Square roots are only defined up to the 2-torsion ``{0, m}^r`` of the slice
ambient; everything that compares slice points does so modulo it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .abelian import GroupElement, Quotient, SubgroupSpec, TorsionGroup, quotient, two_torsion
from .action import TwistedAction, TwistedGenerator
from .errors import AmbientMismatch, NotAState


@dataclass(frozen=True)
class SlicePoint:
    t: GroupElement
    family: str = ""


@dataclass(frozen=True)
class SignaturePair:
    pos: int
    neg: int

    def __iter__(self):
        return iter((self.pos, self.neg))

    def as_tuple(self) -> tuple[int, int]:
        return (self.pos, self.neg)


def slice_ambient(states_ambient: TorsionGroup) -> TorsionGroup:
    return TorsionGroup([2 * m for m in states_ambient.moduli])


def state_ambient(slice_amb: TorsionGroup) -> TorsionGroup:
    if any(m % 2 for m in slice_amb.moduli):
        raise AmbientMismatch(f"{slice_amb} is not a slice ambient (odd modulus)")
    return TorsionGroup([m // 2 for m in slice_amb.moduli])


def square_map(x: SlicePoint | GroupElement) -> GroupElement:
    """``x = t x_0 -> s = t^2``, as an element of the state ambient."""
    t = x.t if isinstance(x, SlicePoint) else x
    target = state_ambient(t.group)
    return target.element(t.coords)


def sqrt_twist(c: GroupElement, family: str = "") -> SlicePoint:
    """Canonical square root: lift each coordinate into ``[0, m)``.

    For signs this picks ``i`` (not ``-i``) as the root of ``-1``.
    """
    return SlicePoint(slice_ambient(c.group).element(c.coords), family)


def _lift_unit(u: int, m: int) -> int:
    """A unit mod ``2m`` reducing to ``u`` mod ``m``."""
    u %= m
    return u if math.gcd(u, 2 * m) == 1 else u + m


def lift_generator(g: TwistedGenerator) -> TwistedGenerator:
    """``t -> L(t) + a(n)`` on the slice ambient, ``a(n)`` the canonical root of ``c(n)``."""
    moduli = g.group.moduli
    units = tuple(_lift_unit(u, moduli[i]) for i, u in enumerate(g.units))
    return TwistedGenerator(g.label, g.perm, units, sqrt_twist(g.twist).t)


def slice_action(n: TwistedGenerator, x: SlicePoint) -> SlicePoint:
    if x.t.group != slice_ambient(n.group):
        raise AmbientMismatch(f"slice point {x.t} does not match generator {n.label!r}")
    return SlicePoint(lift_generator(n)(x.t), x.family)


def zero_z2(action: TwistedAction) -> SubgroupSpec:
    """Slice points whose square is a state: the preimage of the states."""
    amb = slice_ambient(action.ambient)
    gens = [amb.element(h.coords) for h in action.states.generators]
    gens += [m * amb.basis(i) for i, m in enumerate(action.ambient.moduli)]
    return SubgroupSpec(amb, gens)


def torus_two_torsion(action: TwistedAction) -> SubgroupSpec:
    """The square-root ambiguity ``{0, m}^r``."""
    return two_torsion(slice_ambient(action.ambient))


def slice_classes(action: TwistedAction, limit: int | None = None) -> Quotient:
    """``0Z2`` modulo the 2-torsion of the slice ambient."""
    return quotient(zero_z2(action), torus_two_torsion(action), limit)


def slice_point_action(action: TwistedAction, *, translations: bool = True) -> TwistedAction:
    """The induced action on ``0Z2``.

    With ``translations`` the 2-torsion translations are added as generators,
    so each orbit is a full preimage of an orbit on the states.
    """
    amb = slice_ambient(action.ambient)
    gens = [lift_generator(g) for g in action.generators]
    if translations:
        for h in torus_two_torsion(action).generators:
            gens.append(TwistedGenerator(f"tor{h}", tuple(range(amb.rank)), (1,) * amb.rank, h))
    return TwistedAction(amb, zero_z2(action), gens, action.description + " on 0Z2")


def signature(s: GroupElement, p: int, q: int) -> SignaturePair:
    """Signature of the diagonal form with coefficients ``(-1)^s_j * eps_j``.

    ``eps_j`` is ``+1`` for ``j <= p`` and ``-1`` after; the form ``t x_0`` has
    coefficients ``t_j^2 eps_j = s_j eps_j``, so no square root is needed.
    """
    n = p + q
    if s.group != TorsionGroup([2] * n) or sum(s.coords) % 2:
        raise NotAState(f"{s} is not in T_1 ∩ H for (p, q) = ({p}, {q})")
    pos = sum(1 for j, sj in enumerate(s.coords) if sj ^ (j >= p) == 0)
    return SignaturePair(pos, n - pos)


def signature_array(states: np.ndarray, p: int) -> np.ndarray:
    """Number of positive coefficients for each row."""
    eps = (np.arange(states.shape[1]) >= p).astype(np.int64)
    return (states ^ eps == 0).sum(axis=1)


def is_valid(action: TwistedAction, x: SlicePoint) -> bool:
    return square_map(x) in action.states


__all__ = [
    "SlicePoint",
    "SignaturePair",
    "lift_generator",
    "signature",
    "slice_action",
    "slice_ambient",
    "slice_classes",
    "slice_point_action",
    "sqrt_twist",
    "square_map",
    "torus_two_torsion",
    "zero_z2",
]
