"""Permutation actions, subgroup classification, orbits."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symbez.exactnum import Cyclo12, OMEGA, OMEGA2, I
from symbez.group import (
    OrbitType,
    Permutation,
    ProjPointExact,
    ProjPointNumeric,
    S3_CLASSES,
    S4_CLASSES,
    class_by_name,
    classify_subgroup,
    decompose_orbits,
    generate_subgroup,
    orbit,
    stabilizer,
    symmetric_group,
)


def perms(n):
    return st.sampled_from(symmetric_group(n))


class TestPermutations:
    def test_compose(self):
        s = Permutation.from_cycles(3, (0, 1))
        t = Permutation.from_cycles(3, (1, 2))
        assert (s * t).images == tuple(s(t(i)) for i in range(3))

    @given(perms(4), perms(4), perms(4))
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(perms(4))
    def test_inverse(self, p):
        assert p * p.inverse() == Permutation.identity(4)

    def test_cycle_type(self):
        assert Permutation.from_cycles(4, (0, 1)).cycle_type() == (2, 1, 1)
        assert Permutation.from_cycles(4, (0, 1), (2, 3)).cycle_type() == (2, 2)
        assert Permutation.from_cycles(4, (0, 1, 2, 3)).cycle_type() == (4,)

    def test_symmetric_group_sizes(self):
        assert len(symmetric_group(3)) == 6
        assert len(symmetric_group(4)) == 24


class TestSubgroupCatalog:
    def test_class_orders(self):
        assert {c.name: c.order for c in S3_CLASSES} == {
            "Trivial": 1, "C2": 2, "C3": 3, "S3": 6,
        }
        assert {c.name: c.order for c in S4_CLASSES} == {
            "Trivial": 1, "C2o": 2, "C2e": 2, "C4": 4, "K4n": 4, "K4": 4,
            "D8": 8, "C3": 3, "S3": 6, "A4": 12, "S4": 24,
        }

    def test_generated_orders_match(self):
        for cls in S3_CLASSES + S4_CLASSES:
            assert len(cls.elements) == cls.order

    def test_k4n_is_normal_and_k4_is_not(self):
        full = symmetric_group(4)
        k4n = class_by_name("S4", "K4n").elements
        k4 = class_by_name("S4", "K4").elements
        assert all(
            frozenset(g * h * g.inverse() for h in k4n) == k4n for g in full
        )
        assert any(
            frozenset(g * h * g.inverse() for h in k4) != k4 for g in full
        )

    def test_classify_all_catalog_classes(self):
        for cls in S3_CLASSES:
            assert classify_subgroup("S3", cls.elements) is cls
        for cls in S4_CLASSES:
            assert classify_subgroup("S4", cls.elements) is cls

    def test_classify_is_conjugation_invariant(self):
        full = symmetric_group(4)
        for cls in S4_CLASSES:
            for g in full[::5]:
                conj = frozenset(g * h * g.inverse() for h in cls.elements)
                assert classify_subgroup("S4", conj) is cls

    def test_classify_every_actual_subgroup_of_s4(self):
        # enumerate all subgroups by brute force and check each lands in
        # exactly one catalog class of the right order
        full = symmetric_group(4)
        seen = set()
        for r in range(1, 5):
            for gens in itertools.combinations(full, r):
                sub = generate_subgroup(4, gens)
                if sub in seen:
                    continue
                seen.add(sub)
                cls = classify_subgroup("S4", sub)
                assert cls.order == len(sub)

    def test_rejects_non_closed_set(self):
        s = Permutation.from_cycles(3, (0, 1))
        t = Permutation.from_cycles(3, (1, 2))
        with pytest.raises(ValueError):
            classify_subgroup("S3", {Permutation.identity(3), s, t})


class TestExactPoints:
    def test_canonical_form(self):
        p = ProjPointExact.make([2, 4, 2])
        assert p.coords == (Cyclo12.of(1), Cyclo12.of(2), Cyclo12.of(1))

    def test_canonical_last_nonzero(self):
        from fractions import Fraction

        p = ProjPointExact.make([3, 6, 0])
        # last nonzero coordinate becomes 1
        assert p.coords == (
            Cyclo12.of(Fraction(1, 2)),
            Cyclo12.of(1),
            Cyclo12.of(0),
        )

    def test_action_moves_coordinates(self):
        p = ProjPointExact.make([1, 2, 3])
        swap = Permutation.from_cycles(3, (0, 1))
        assert p.act(swap) == ProjPointExact.make([2, 1, 3])

    @given(perms(3), perms(3))
    def test_left_action(self, s, t):
        p = ProjPointExact.make([1, 5, -7])
        assert p.act(t).act(s) == p.act(s * t)

    def test_stabilizer_of_omega_point(self):
        p = ProjPointExact.make([OMEGA, OMEGA2, 1])
        fixing, cls = stabilizer(p)
        assert cls.name == "C3"
        assert len(fixing) == 3

    def test_stabilizer_of_diagonal_point(self):
        _, cls = stabilizer(ProjPointExact.make([-1, 1, 0]))
        assert cls.name == "C2"
        _, cls = stabilizer(ProjPointExact.make([1, 1, 1]))
        assert cls.name == "S3"
        _, cls = stabilizer(ProjPointExact.make([1, 2, 3]))
        assert cls.name == "Trivial"

    def test_stabilizer_of_c4_point(self):
        p = ProjPointExact.make([I, -1, -I, 1])
        fixing, cls = stabilizer(p)
        assert cls.name == "C4"

    def test_orbit_stabilizer_theorem(self):
        for coords in ([1, 2, 3], [-1, 1, 0], [OMEGA, OMEGA2, 1], [1, 1, 1]):
            p = ProjPointExact.make(coords)
            fixing, _ = stabilizer(p)
            assert len(orbit(p)) * len(fixing) == 6

    def test_orbit_stabilizer_theorem_s4(self):
        for coords in ([1, 2, 3, 4], [I, -1, -I, 1], [1, 1, 1, 1], [2, -2, -1, 1]):
            p = ProjPointExact.make(coords)
            fixing, _ = stabilizer(p)
            assert len(orbit(p)) * len(fixing) == 24

    def test_conjugate_and_is_real(self):
        assert ProjPointExact.make([1, -2, 1]).is_real()
        p = ProjPointExact.make([OMEGA, OMEGA2, 1])
        assert not p.is_real()
        assert p.conjugate() == ProjPointExact.make([OMEGA2, OMEGA, 1])

    def test_repeated_coordinate(self):
        assert ProjPointExact.make([2, 2, 3, 1]).has_repeated_coordinate()
        assert not ProjPointExact.make([I, -1, -I, 1]).has_repeated_coordinate()


class TestNumericPoints:
    def test_matches_itself_after_rescaling(self):
        a = ProjPointNumeric.make([1 + 2j, 3j, -1], 128)
        b = ProjPointNumeric.make([(1 + 2j) * 1j, 3j * 1j, -1j], 128)
        assert a.matches(b)

    def test_distinct_points_do_not_match(self):
        a = ProjPointNumeric.make([1, 2, 3], 128)
        b = ProjPointNumeric.make([1, 2, 3.001], 128)
        assert not a.matches(b)

    def test_exact_embed_matches_numeric(self):
        exact = ProjPointExact.make([OMEGA, OMEGA2, 1])
        num = ProjPointNumeric.make(
            [complex(-0.5, 3 ** 0.5 / 2), complex(-0.5, -(3 ** 0.5) / 2), 1], 128
        )
        assert exact.embed(128).matches(num)

    def test_numeric_stabilizer(self):
        p = ProjPointExact.make([OMEGA, OMEGA2, 1]).embed(128)
        _, cls = stabilizer(p)
        assert cls.name == "C3"

    def test_is_real(self):
        assert ProjPointNumeric.make([1, -2.5, 3], 128).is_real()
        assert not ProjPointNumeric.make([1j, 1, 1], 128).is_real()


class TestOrbitDecomposition:
    def test_example_intersection_orbits(self):
        points = [
            ProjPointExact.make([-1, 0, 1]),
            ProjPointExact.make([0, -1, 1]),
            ProjPointExact.make([1, -1, 0]),
            ProjPointExact.make([OMEGA, OMEGA2, 1]),
            ProjPointExact.make([OMEGA2, OMEGA, 1]),
        ]
        orbit_type, orbit_ids, stabs = decompose_orbits(points)
        assert orbit_type.render() == "[S3/C3] + [S3/C2]"
        assert orbit_type.total_size() == 5
        assert orbit_type.orbit_count() == 2
        # first three points share an orbit, last two share the other
        assert orbit_ids[0] == orbit_ids[1] == orbit_ids[2]
        assert orbit_ids[3] == orbit_ids[4]
        assert orbit_ids[0] != orbit_ids[3]
        assert stabs[0] == "C2" and stabs[3] == "C3"

    def test_free_orbit(self):
        base = ProjPointExact.make([1, 2, 3])
        points = orbit(base)
        orbit_type, _, _ = decompose_orbits(points)
        assert orbit_type.render() == "[S3]"
        assert orbit_type.total_size() == 6

    def test_not_closed_raises(self):
        with pytest.raises(ValueError):
            decompose_orbits([ProjPointExact.make([1, 2, 3])])

    def test_empty_set(self):
        orbit_type, ids, stabs = decompose_orbits([])
        assert orbit_type.is_empty()
        assert ids == [] and stabs == []

    def test_numeric_orbit_closure(self):
        base = ProjPointExact.make([I, -1, -I, 1])
        points = [q.embed(128) for q in orbit(base)]
        assert len(points) == 6
        orbit_type, _, _ = decompose_orbits(points)
        assert orbit_type.render() == "[S4/C4]"


class TestOrbitTypeRendering:
    def test_multiplicity_prefix(self):
        t = OrbitType.make("S3", ["Trivial", "Trivial", "C2"])
        assert t.render() == "[S3/C2] + 2[S3]"
        assert t.total_size() == 15

    def test_sorted_by_decreasing_stabilizer_order(self):
        t = OrbitType.make("S3", ["C2", "C3"])
        assert t.render() == "[S3/C3] + [S3/C2]"

    def test_s4_rendering(self):
        t = OrbitType.make("S4", ["C4", "Trivial"])
        assert t.render() == "[S4/C4] + [S4]"
        assert t.total_size() == 30

    def test_equality_is_semantic(self):
        a = OrbitType.make("S3", ["C2", "Trivial", "C2"])
        b = OrbitType.make("S3", ["Trivial", "C2", "C2"])
        assert a == b
