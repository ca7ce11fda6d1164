import pytest

from basilica import InputError, Perm, basilica, equals
from basilica.permgrp import (
    SubgroupHandle,
    group_order,
    hword_parse,
    hword_str,
    level_perms,
    level_quotient_equals_full,
    orbit,
    projected_subgroup,
    stabilizer_generator_pairs,
    stabilizer_generators,
)


def mulclose(perms, maxsize=100_000):
    """Naive closure of a permutation set under composition."""
    els = {p.images for p in perms}
    if not els:
        return 1
    frontier = list(els)
    while frontier:
        new = []
        for p in frontier:
            for q in perms:
                r = tuple(p[y] for y in q.images)
                if r not in els:
                    els.add(r)
                    new.append(r)
                    if len(els) > maxsize:
                        raise RuntimeError("closure too large")
        frontier = new
    return len(els)


@pytest.fixture(scope="module")
def handles():
    B = basilica()
    a, b = B.generators()
    return B, SubgroupHandle(B, [a]), SubgroupHandle(B, [b]), SubgroupHandle(B, [a, b])


def test_orbit_examples(handles):
    B, Ha, Hb, Hab = handles
    assert orbit(Hb, "0").orbit == ("0", "1")
    assert orbit(Ha, "0").orbit == ("0",)
    assert orbit(Hab, "101").orbit == tuple(
        format(i, "03b") for i in range(8)
    )


def test_orbit_transversal_moves_base(handles):
    B, Ha, Hb, Hab = handles
    tab = orbit(Hab, "01")
    assert tab.transversal[tab.base] == ()
    for u in tab.orbit:
        assert Hab.evaluate(tab.transversal[u]).act(tab.base) == u


def test_orbit_rejects_bad_vertex(handles):
    B, Ha, Hb, Hab = handles
    with pytest.raises(InputError):
        orbit(Hab, "0x")


def test_stabilizer_of_root_is_generators(handles):
    B, Ha, Hb, Hab = handles
    gens = stabilizer_generators(Hab, "")
    assert len(gens) == 2
    assert equals(gens[0], B.generator("a"))
    assert equals(gens[1], B.generator("b"))


def test_stabilizer_cyclic_b(handles):
    B, Ha, Hb, Hab = handles
    gens = stabilizer_generators(Hb, "0")
    assert len(gens) == 1
    assert equals(gens[0], B.element("bb"))


def test_stabilizer_full_group(handles):
    B, Ha, Hb, Hab = handles
    gens = stabilizer_generators(Hab, "0")
    a, b = B.generators()
    expected = [a, b * b, b.inverse() * a * b]
    assert len(gens) == 3
    for want in expected:
        assert any(equals(g, want) for g in gens)
    # the conjugate b a b^-1 = (b, 1) lies in the generated stabilizer
    by_index = {str(g): g for g in gens}
    s_a, s_bb, s_bab = by_index["a"], by_index["bb"], by_index["Bab"]
    conj = s_bb * s_bab * s_bb.inverse()
    assert equals(conj, b * a * b.inverse())
    assert equals(conj.section(0), b)
    assert conj.section(1).is_trivial()


def test_stabilizer_generators_fix_vertex(handles):
    B, Ha, Hb, Hab = handles
    for vertex in ("0", "10", "110"):
        for g in stabilizer_generators(Hab, vertex):
            assert g.act(vertex) == vertex


def test_stabilizer_pairs_expressions_match(handles):
    B, Ha, Hb, Hab = handles
    for elem, hw in stabilizer_generator_pairs(Hab, "10"):
        assert equals(Hab.evaluate(hw), elem)


def test_projected_subgroup_examples(handles):
    B, Ha, Hb, Hab = handles
    proj = projected_subgroup(Hab, "0")
    # the projection contains a and recovers b, so it is the whole group
    assert any(equals(g, B.generator("a")) for g in proj.generators)
    assert level_quotient_equals_full(proj, 3)
    assert projected_subgroup(Ha, "0").generators == ()
    Hab_only = SubgroupHandle(B, [B.element("ab")])
    proj = projected_subgroup(Hab_only, "")
    assert len(proj.generators) == 1
    assert equals(proj.generators[0], B.element("ab"))


def test_self_replication(handles):
    B, Ha, Hb, Hab = handles
    for vertex in ("", "0", "1", "00", "01", "10", "11"):
        proj = projected_subgroup(Hab, vertex)
        assert level_quotient_equals_full(proj, 3)


def test_group_order_examples(handles):
    B, Ha, Hb, Hab = handles
    assert group_order([Perm((1, 0))]) == 2
    assert group_order([]) == 1
    assert group_order([Perm((0, 1, 2))]) == 1
    level2 = level_perms(B, Hab.generators, 2)
    assert group_order(level2) == mulclose(level2) == 8


def test_group_order_agrees_with_closure(handles):
    B, Ha, Hb, Hab = handles
    battery = [
        level_perms(B, Hab.generators, 3),
        level_perms(B, Hab.generators, 4),
        level_perms(B, [B.element("ab")], 4),
        level_perms(B, [B.element("ba"), B.element("bb")], 3),
        [Perm((1, 2, 3, 4, 0)), Perm((1, 0, 2, 3, 4))],
    ]
    for perms in battery:
        fast = group_order(perms)
        if fast <= 5000:
            assert fast == mulclose(perms)


def test_group_order_mixed_degrees_rejected():
    with pytest.raises(InputError):
        group_order([Perm((1, 0)), Perm((0, 1, 2))])


def test_level_quotient_equals_full(handles):
    B, Ha, Hb, Hab = handles
    assert level_quotient_equals_full(Hab, 3)
    assert not level_quotient_equals_full(Ha, 1)
    assert not level_quotient_equals_full(SubgroupHandle(B, [B.element("ab")]), 2)


def test_orbit_stabilizer_identity(handles):
    B, Ha, Hb, Hab = handles
    battery = [Hab, Hb, SubgroupHandle(B, [B.element("ab"), B.element("bb")])]
    for H in battery:
        for vertex in ("0", "1", "01", "110"):
            n = len(vertex) + 2
            tab = orbit(H, vertex)
            stab = stabilizer_generators(H, vertex)
            stab_order = group_order(level_perms(B, stab, n))
            full_order = group_order(level_perms(B, H.generators, n))
            assert stab_order * len(tab.orbit) == full_order


def test_hword_round_trip():
    for hw in [(), (1,), (1, -2, 1), (-3, -3, 2)]:
        assert hword_parse(hword_str(hw), 3) == hw
    with pytest.raises(InputError):
        hword_parse("g5", 2)
    with pytest.raises(InputError):
        hword_parse("x0", 2)
