"""Invariant suites run by ``realorbits selftest``.

Each suite returns a :class:`SuiteResult`; a suite records the first few
failures and keeps going so the summary shows how widespread a fault is.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import families
from .abelian import (
    SubgroupSpec,
    TorsionGroup,
    naive_closure,
    quotient,
    squares,
    two_torsion,
)
from .action import compose, image_tables, orbits, orbit_of
from .slice import (
    lift_generator,
    signature,
    signature_array,
    slice_classes,
    slice_point_action,
    square_map,
    zero_z2,
)
from .specfile import dump_spec, parse_spec

FAULTS = ("zero-crossing-twist",)


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, message: str) -> None:
        self.checks += 1
        if not cond and len(self.failures) < 20:
            self.failures.append(message)
        elif not cond:
            self.failures.append("...")


@dataclass
class Context:
    max_n: int = 12
    fault: str | None = None

    def twisted(self, p, q):
        return families.build_sl_so(p, q, crossing_twist=self.fault != "zero-crossing-twist")

    def pairs(self, max_n=None):
        top = self.max_n if max_n is None else min(max_n, self.max_n)
        for n in range(2, top + 1):
            for p in range(1, n):
                yield p, n - p


def suite_abelian(ctx: Context, res: SuiteResult) -> None:
    groups = [TorsionGroup(m) for m in ([2, 2, 2], [4, 4], [3], [2, 4, 6], [6, 4, 3])]
    for G in groups:
        full = G.full().enumerate()
        for a, b in itertools.product(full, repeat=2):
            res.expect(a + b == b + a, f"{G}: {a}+{b} not commutative")
            res.expect(a + (-a) == G.zero(), f"{G}: {a} has no inverse")
        for a, b, c in itertools.islice(itertools.product(full, repeat=3), 2000):
            res.expect((a + b) + c == a + (b + c), f"{G}: not associative at {a},{b},{c}")
        tt = two_torsion(G)
        res.expect(tt.enumerate() == naive_closure(G, tt.generators), f"{G}: 2-torsion closure")
        res.expect(all(2 * v == G.zero() for v in tt), f"{G}: 2-torsion has an element of order > 2")
        expected = 2 ** sum(1 for m in G.moduli if m % 2 == 0)
        res.expect(tt.order == expected, f"{G}: |2-torsion| = {tt.order}, expected {expected}")
        sq = squares(G.full())
        res.expect(sq.enumerate() == sorted({2 * v for v in full}), f"{G}: squares")
        Q = quotient(G.full(), sq)
        res.expect(G.order == sq.order * len(Q), f"{G}: Lagrange fails for squares quotient")
        for s in full:
            proj = Q.project(s)
            res.expect(Q.project(proj) == proj, f"{G}: project not idempotent at {s}")
            for n in sq.generators:
                res.expect(Q.project(s + n) == proj, f"{G}: project not constant on coset of {s}")


def suite_cocycle(ctx: Context, res: SuiteResult) -> None:
    for p, q in ctx.pairs(8):
        A = ctx.twisted(p, q)
        states = A.states.enumerate()
        gens = list(A.generators)
        for m, n in itertools.product(gens, repeat=2):
            mn = compose(m, n)
            for s in states:
                res.expect(mn(s) == m(n(s)), f"({p},{q}) {m.label}*{n.label} incoherent at {s}")
            res.expect(
                mn.twist == m.twist + m.linear(n.twist),
                f"({p},{q}) cocycle rule fails for {m.label},{n.label}",
            )
        for g in gens:
            ident = compose(g, g.inverse())
            res.expect(
                all(ident(s) == s for s in states), f"({p},{q}) {g.label} times inverse is not identity"
            )


def suite_engine(ctx: Context, res: SuiteResult) -> None:
    for p, q in ctx.pairs(11):
        for A in (ctx.twisted(p, q), families.build_plain_w00(p, q)):
            states, tables = image_tables(A)
            k = len(states)
            for t in tables:
                res.expect(np.array_equal(np.sort(t), np.arange(k)), f"({p},{q}) generator not bijective")
            bfs = orbits(A, engine="bfs")
            uf = orbits(A, engine="union_find")
            res.expect(bfs == uf, f"({p},{q}) BFS and union-find disagree")
            res.expect(orbits(A, workers=4) == bfs, f"({p},{q}) result depends on worker count")
            res.expect(sum(bfs.sizes) == k, f"({p},{q}) sizes do not sum to |states|")
            seen = set()
            for orb in bfs:
                mem = set(orb.members)
                res.expect(not (mem & seen), f"({p},{q}) orbits overlap")
                seen |= mem
                res.expect(orb.representative == min(orb.members), f"({p},{q}) representative not least")
            if k <= 64:
                for s in A.states:
                    res.expect(orbit_of(A, s) == bfs.find(s), f"({p},{q}) orbit_of({s}) disagrees")


def suite_families(ctx: Context, res: SuiteResult) -> None:
    for p, q in ctx.pairs():
        A = ctx.twisted(p, q)
        orb = orbits(A, members=False)
        want = families.twisted_orbit_count_formula(p, q)
        res.expect(len(orb) == want, f"({p},{q}) {len(orb)} orbits, expected {want}")
        hits = [orb.index_of(c) for c in families.canonical_forms_sl_so(p, q)]
        res.expect(
            sorted(hits) == list(range(len(orb))),
            f"({p},{q}) canonical forms do not meet each orbit exactly once",
        )
        w00 = orbits(families.build_plain_w00(p, q), members=False)
        res.expect(
            len(w00) == families.w00_orbit_count_formula(p, q), f"({p},{q}) W00 count off formula"
        )
        res.expect(len(w00) > len(orb), f"({p},{q}) W00 count {len(w00)} <= twisted {len(orb)}")
        if p + q <= 7 and ctx.fault is None:
            res.expect(
                orbits(families.build_sl_so_all_crossings(p, q), members=False).same_partition(orb),
                f"({p},{q}) minimal generators disagree with all reflections",
            )


def suite_signature(ctx: Context, res: SuiteResult) -> None:
    for p, q in ctx.pairs():
        A = ctx.twisted(p, q)
        orb = orbits(A, members=False)
        pos = signature_array(A.states.element_array(), p)
        per_orbit = {}
        for label, value in zip(orb.labels.tolist(), pos.tolist()):
            per_orbit.setdefault(label, set()).add(value)
        res.expect(
            all(len(v) == 1 for v in per_orbit.values()), f"({p},{q}) signature varies within an orbit"
        )
        realized = {(v, p + q - v) for vs in per_orbit.values() for v in vs}
        res.expect(
            len(realized) == len(orb), f"({p},{q}) signature does not separate orbits"
        )
        res.expect(
            realized == families.realized_signatures(p, q), f"({p},{q}) realized signatures {sorted(realized)}"
        )
        forms = families.canonical_forms_sl_so(p, q)
        expected = [(p - 2 * k, q + 2 * k) for k in range(p // 2 + 1)]
        expected += [(p + 2 * k, q - 2 * k) for k in range(1, q // 2 + 1)]
        for c, want in zip(forms, expected):
            res.expect(tuple(signature(c, p, q)) == want, f"({p},{q}) signature of {c} is not {want}")


def suite_slice(ctx: Context, res: SuiteResult) -> None:
    for p, q in ctx.pairs(10):
        A = ctx.twisted(p, q)
        Z = zero_z2(A)
        pts = Z.element_array()
        moduli = np.array(A.ambient.moduli)
        for g in A.generators:
            lhs = lift_generator(g).apply_array(pts) % moduli
            rhs = g.apply_array(pts % moduli)
            res.expect(np.array_equal(lhs, rhs), f"({p},{q}) commuting square fails for {g.label}")
        classes = slice_classes(A)
        images = {square_map(x) for x in classes.representatives}
        res.expect(len(classes) == A.states.order, f"({p},{q}) |0Z2/2-torsion| != |states|")
        res.expect(len(images) == len(classes), f"({p},{q}) square map not injective on classes")
        if p + q <= 8:
            base = orbits(A)
            lifted = orbits(slice_point_action(A), members=False)
            res.expect(len(lifted) == len(base), f"({p},{q}) slice orbit count differs")
            for orb, lorb in zip(base, lifted):
                res.expect(
                    square_map(lorb.representative) == orb.representative,
                    f"({p},{q}) slice orbit representative mismatch",
                )
                res.expect(
                    lorb.size == orb.size * 2 ** (p + q), f"({p},{q}) slice orbit is not a full preimage"
                )


def suite_spec(ctx: Context, res: SuiteResult) -> None:
    for p, q in [(1, 1), (2, 1), (3, 2), (2, 2)]:
        if p + q > ctx.max_n:
            continue
        A = ctx.twisted(p, q)
        B = parse_spec(dump_spec(A))
        res.expect(orbits(A) == orbits(B), f"({p},{q}) spec round trip changes the orbit set")


SUITES: dict[str, Callable[[Context, SuiteResult], None]] = {
    "abelian": suite_abelian,
    "cocycle": suite_cocycle,
    "engine": suite_engine,
    "families": suite_families,
    "signature": suite_signature,
    "slice": suite_slice,
    "spec": suite_spec,
}


def run(names=None, max_n: int = 12, fault: str | None = None) -> list[SuiteResult]:
    ctx = Context(max_n=max_n, fault=fault)
    results = []
    for name in names or SUITES:
        res = SuiteResult(name)
        start = time.perf_counter()
        try:
            SUITES[name](ctx, res)
        except Exception as exc:  # a crashing suite is a failing suite
            res.failures.append(f"{type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results
