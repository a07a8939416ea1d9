import numpy as np
import pytest

from oracles import generic_orbits
from randact import random_action, random_even_weight_action
from realorbits.abelian import SubgroupSpec, TorsionGroup, even_weight
from realorbits.action import (
    TwistedAction,
    TwistedGenerator,
    apply,
    compose,
    image_tables,
    orbit_of,
    orbits,
    validate,
)
from realorbits.errors import AmbientMismatch, LimitExceeded, NotAState, ValidationFailed
from realorbits.families import build_plain_w0, build_sl_so

G3 = TorsionGroup([2, 2, 2])


def crossing():
    return TwistedGenerator.swap(G3, 1, 2, G3(0, 1, 1))


def test_apply_examples():
    assert apply(crossing(), G3(1, 1, 0)) == G3(1, 1, 0)
    assert apply(TwistedGenerator.swap(G3, 0, 1), G3(0, 1, 1)) == G3(1, 0, 1)
    ident = TwistedGenerator.identity(G3)
    for s in G3.full():
        assert apply(ident, s) == s


def test_apply_rejects_foreign_state():
    with pytest.raises(AmbientMismatch):
        apply(crossing(), TorsionGroup([4, 4, 4]).zero())


def test_units_and_perm_convention():
    Z4 = TorsionGroup([4, 4, 4])
    g = TwistedGenerator("g", (1, 2, 0), (3, 1, 1), Z4.zero())
    # coordinate i goes to perm[i], scaled by units[i]
    assert g(Z4(1, 2, 3)) == Z4(3, 3, 2)


def test_compose_examples():
    c = crossing()
    cc = compose(c, c)
    assert cc.perm == (0, 1, 2) and cc.twist.is_zero()
    m = TwistedGenerator.swap(G3, 0, 1)
    mn = compose(m, c)
    assert mn.twist == G3(1, 0, 1)
    assert mn.perm == tuple(m.perm[c.perm[i]] for i in range(3))
    for s in G3.full():
        assert mn(s) == m(c(s))
    ident = TwistedGenerator.identity(G3)
    g = compose(c, ident)
    assert (g.perm, g.units, g.twist) == (c.perm, c.units, c.twist)


def test_inverse():
    Z4 = TorsionGroup([4, 4])
    g = TwistedGenerator("g", (1, 0), (3, 1), Z4(1, 2))
    inv = g.inverse()
    for s in Z4.full():
        assert inv(g(s)) == s
        assert g(inv(s)) == s


def test_validate_examples():
    assert validate(build_sl_so(2, 1)).ok
    bad_twist = TwistedAction(G3, even_weight(G3), [TwistedGenerator.swap(G3, 0, 1, G3(1, 0, 0))])
    report = validate(bad_twist)
    assert not report.ok
    assert "twist" in report.failures[0].message and "outside state subgroup" in report.failures[0].message
    Z4 = TorsionGroup([4])
    bad_unit = TwistedAction(Z4, Z4.full(), [TwistedGenerator("u2", (0,), (2,), Z4.zero())])
    report = validate(bad_unit)
    assert [c.message for c in report.failures] == ["non-invertible linear part"]


def test_validate_subgroup_preservation_and_labels():
    Z4 = TorsionGroup([4, 4])
    S = SubgroupSpec(Z4, [[1, 0]])
    swap = TwistedGenerator.swap(Z4, 0, 1, label="s")
    report = validate(TwistedAction(Z4, S, [swap]))
    assert [c.name for c in report.failures] == ["preserves"]
    dup = TwistedAction(Z4, Z4.full(), [swap, swap])
    assert [c.name for c in validate(dup).failures] == ["label"]


def test_orbits_examples():
    one = orbits(build_sl_so(1, 1))
    assert len(one) == 1 and one[0].size == 2
    assert [m.coords for m in one[0].members] == [(0, 0), (1, 1)]

    two = orbits(build_sl_so(2, 1))
    assert [[m.coords for m in o.members] for o in two] == [
        [(0, 0, 0), (0, 1, 1), (1, 0, 1)],
        [(1, 1, 0)],
    ]

    S = even_weight(TorsionGroup([2] * 4))
    none = orbits(TwistedAction(S.ambient, S, []))
    assert len(none) == 8 and none.sizes == [1] * 8


def test_orbits_requires_valid_action():
    bad = TwistedAction(G3, even_weight(G3), [TwistedGenerator.swap(G3, 0, 1, G3(1, 0, 0))])
    with pytest.raises(ValidationFailed):
        orbits(bad)


def test_orbits_limit():
    with pytest.raises(LimitExceeded):
        orbits(build_sl_so(6, 6), limit=100)


def test_orbit_of_examples():
    A = build_sl_so(2, 1)
    o = orbit_of(A, G3(0, 1, 1))
    assert (o.representative, o.size) == (G3(0, 0, 0), 3)
    o = orbit_of(A, G3(1, 1, 0))
    assert (o.representative, o.size) == (G3(1, 1, 0), 1)
    empty = TwistedAction(G3, even_weight(G3), [])
    assert orbit_of(empty, G3(1, 0, 1)).size == 1
    with pytest.raises(NotAState):
        orbit_of(A, G3(1, 0, 0))


def test_twisted_vs_plain_on_sl2():
    A = build_sl_so(1, 1)
    assert len(orbits(A)) == 1
    assert len(orbits(A.untwisted())) == 2
    assert orbits(A.untwisted()).same_partition(orbits(build_plain_w0(1, 1)))


def _check_properties(A, exhaustive):
    states, tables = image_tables(A)
    k = len(states)
    for t in tables:
        assert np.array_equal(np.sort(t), np.arange(k))
    bfs = orbits(A, engine="bfs", members=exhaustive)
    uf = orbits(A, engine="union_find", members=exhaustive)
    assert bfs == uf
    assert orbits(A, engine="bfs", members=exhaustive, workers=4) == bfs
    assert sum(bfs.sizes) == k
    assert np.all(np.diff([bfs.labels.tolist().index(i) for i in range(len(bfs))]) > 0)
    if exhaustive:
        elems = A.states.enumerate()
        assert set(elems) == {x for o in bfs for x in o.members}
        for g in A.generators:
            assert {g(s) for s in elems} == set(elems)
            for h in A.generators:
                gh = compose(g, h)
                assert all(gh(s) == g(h(s)) for s in elems)
        oracle = generic_orbits(elems, list(A.generators))
        assert [list(o.members) for o in bfs] == oracle
        for s in elems[:: max(1, k // 16)]:
            assert orbit_of(A, s) == bfs.find(s)


@pytest.mark.parametrize("seed", range(40))
def test_engine_properties_random_small(seed):
    rng = np.random.default_rng(seed)
    _check_properties(random_action(rng, 2**10), exhaustive=True)


@pytest.mark.parametrize("seed", range(3))
def test_engine_properties_random_large(seed):
    rng = np.random.default_rng(1000 + seed)
    A = random_even_weight_action(rng, 17 + seed, n_gens=2)
    _check_properties(A, exhaustive=False)


def test_determinism_across_runs():
    A = build_sl_so(5, 4)
    first = orbits(A)
    for workers in (1, 2, 8):
        again = orbits(build_sl_so(5, 4), workers=workers)
        assert again == first
        assert [o.representative.coords for o in again] == [o.representative.coords for o in first]
