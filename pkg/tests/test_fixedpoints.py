"""Fixed-point catalogs, tangent lemmas, obstruction certificates."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from symbez.exactnum import Cyclo12, I, OMEGA, OMEGA2, ONE, ZERO
from symbez.fixedpoints import (
    CATALOG_P2,
    CATALOG_P3,
    FixedPointFamily,
    admissible_families,
    admissible_table,
    catalog,
    exact_rank,
    full_catalog,
    gradient_at,
    obstruction,
    run_enumerations,
    special_point_membership,
    tangent_line_p2,
    verify_catalog_by_stabilizer,
    verify_stabilizer_containment,
)
from symbez.group import ProjPointExact, class_by_name
from symbez.parse import parse_poly
from symbez.poly import (
    MultiPoly,
    elementary_symmetric,
    random_symmetric,
    uni_degree,
    uni_eval,
)


def scaled_power(f: MultiPoly, point) -> MultiPoly:
    """f scaled and shifted by a power of e1 to vanish at the point."""
    e1 = elementary_symmetric(f.num_vars, 1)
    s = e1.evaluate_exact(point)
    value = f.evaluate_exact(point)
    d = f.degree()
    e1_pow = MultiPoly(f.num_vars, {(0,) * f.num_vars: ONE})
    for _ in range(d):
        e1_pow = e1_pow * e1
    return f * (s ** d) - e1_pow * value


class TestCatalogShape:
    def test_family_counts(self):
        assert len(CATALOG_P2) == 7
        assert len(CATALOG_P3) == 30
        assert len(admissible_families(2)) == 3
        assert len(admissible_families(3)) == 5

    def test_admissible_table_dedupes_orbits(self):
        assert len(admissible_table(2)) == 2
        assert len(admissible_table(3)) == 3

    def test_catalog_filters_by_class(self):
        assert len(catalog(2, "C2")) == 3
        assert len(catalog(2, "C3")) == 3
        assert len(catalog(3, "K4n")) == 4
        assert catalog(2, "Trivial") == ()

    def test_catalog_rejects_bad_names(self):
        with pytest.raises(ValueError):
            catalog(4, "C2")
        with pytest.raises(ValueError):
            catalog(2, "C4")  # not an S3 class

    def test_param_counts(self):
        two, one, zero = 0, 0, 0
        for fam in full_catalog(2) + full_catalog(3):
            if fam.param_count == 2:
                two += 1
            elif fam.param_count == 1:
                one += 1
            else:
                zero += 1
        assert two == 1  # only the oriented-swap plane family
        assert one == 9
        assert zero == 27

    def test_pattern_text(self):
        texts = [f.pattern_text() for f in CATALOG_P2]
        assert "[-1 : 1 : 0]" in texts
        assert "[a : a : 1]" in texts
        assert "[omega : omega^2 : 1]" in texts
        assert "[I : -1 : -I : 1]" in [f.pattern_text() for f in CATALOG_P3]


class TestInstantiate:
    def fam_c2e(self):
        return next(
            f for f in catalog(3, "C2e") if f.admissible and f.param_count == 1
        )

    def test_finite_family_needs_no_params(self):
        pt = catalog(2, "C2")[0].instantiate()
        assert pt == ProjPointExact.make((Cyclo12.of(-1), ONE, ZERO))

    def test_missing_parameter_raises(self):
        with pytest.raises(ValueError):
            self.fam_c2e().instantiate()

    def test_excluded_parameter_raises(self):
        with pytest.raises(ValueError):
            self.fam_c2e().instantiate(a=1)

    def test_allow_excluded_builds_degenerate_member(self):
        pt = self.fam_c2e().instantiate(a=1, allow_excluded=True)
        assert pt.has_repeated_coordinate()

    def test_generic_member_has_distinct_coords(self):
        pt = self.fam_c2e().instantiate(a=2)
        assert not pt.has_repeated_coordinate()
        assert pt == ProjPointExact.make(
            (Cyclo12.of(2), Cyclo12.of(-2), Cyclo12.of(-1), ONE)
        )

    def test_stabilizer_containment_all_families(self):
        for fam in full_catalog(2) + full_catalog(3):
            assert verify_stabilizer_containment(fam)

    def test_containment_fails_for_wrong_class(self):
        fake = FixedPointFamily(
            ambient_dim=2,
            stabilizer_name="C3",
            pattern=catalog(2, "C2")[2].pattern,  # the diagonal [a : a : 1]
            admissible=False,
        )
        assert not verify_stabilizer_containment(fake)


class TestRestrict:
    def test_linear_restriction(self):
        diag = catalog(2, "C2")[2]
        e1 = elementary_symmetric(3, 1)
        r = diag.restrict(e1)
        assert uni_degree(r) == 1
        assert uni_eval(r, Cyclo12.of(Fraction(-1, 2))).is_zero()

    def test_restriction_tracks_membership(self):
        fam = next(f for f in catalog(3, "C2e") if f.param_count == 1)
        f = random_symmetric(4, 3, seed=5)
        r = fam.restrict(f)
        for a in (Cyclo12.of(2), Cyclo12.of(-3), OMEGA, I):
            pt = fam.instantiate(a=a, allow_excluded=True)
            assert uni_eval(r, a).is_zero() == f.evaluate_exact(pt.coords).is_zero()

    def test_restrict_rejects_wrong_arity(self):
        diag = catalog(2, "C2")[2]
        with pytest.raises(ValueError):
            diag.restrict(elementary_symmetric(4, 2))
        finite = catalog(2, "C3")[0]
        with pytest.raises(ValueError):
            finite.restrict(elementary_symmetric(3, 1))


class TestGradientLemmas:
    @given(st.integers(0, 10**6), st.integers(2, 5))
    @settings(max_examples=30, deadline=None)
    def test_symmetric_point_forces_zero_gradient(self, seed, degree):
        f = random_symmetric(3, degree, seed=seed)
        shifted = scaled_power(f, (ONE, ONE, ONE))
        assume(not shifted.is_zero())
        pt = ProjPointExact.make((ONE, ONE, ONE))
        assert all(g.is_zero() for g in gradient_at(shifted, pt))

    @given(st.integers(0, 10**6), st.integers(2, 4))
    @settings(max_examples=30, deadline=None)
    def test_diagonal_tangent_direction(self, seed, degree):
        a = Cyclo12.of(2)
        coords = (a, a, ONE)
        f = random_symmetric(3, degree, seed=seed)
        shifted = scaled_power(f, coords)
        assume(not shifted.is_zero())
        pt = ProjPointExact.make(coords)
        grad = gradient_at(shifted, pt)
        assume(not all(g.is_zero() for g in grad))
        assert tangent_line_p2(shifted, pt) == (ONE, ONE, Cyclo12.of(-4))

    @given(st.integers(0, 10**6), st.integers(2, 4))
    @settings(max_examples=30, deadline=None)
    def test_swap_point_tangent_is_far_line(self, seed, degree):
        coords = (ONE, ONE, ZERO)
        f = random_symmetric(3, degree, seed=seed)
        shifted = scaled_power(f, coords)
        assume(not shifted.is_zero())
        pt = ProjPointExact.make(coords)
        grad = gradient_at(shifted, pt)
        assume(not all(g.is_zero() for g in grad))
        assert tangent_line_p2(shifted, pt) == (ZERO, ZERO, ONE)

    def test_tangent_rejects_off_curve_and_singular(self):
        e1 = elementary_symmetric(3, 1)
        with pytest.raises(ValueError):
            tangent_line_p2(e1, ProjPointExact.make((ONE, ONE, ONE)))
        nodal = parse_poly("X^3 + Y^3 + Z^3 - 3*X*Y*Z", 3)
        with pytest.raises(ValueError):
            tangent_line_p2(nodal, ProjPointExact.make((ONE, ONE, ONE)))


class TestExactRank:
    def test_small_cases(self):
        one = ONE
        assert exact_rank([]) == 0
        assert exact_rank([(ZERO, ZERO), (ZERO, ZERO)]) == 0
        assert exact_rank([(one, ZERO), (ZERO, one)]) == 2
        assert exact_rank([(one, OMEGA), (OMEGA2, OMEGA2 * OMEGA)]) == 1
        assert exact_rank(
            [(one, one, one), (one, OMEGA, OMEGA2), (one, OMEGA2, OMEGA)]
        ) == 3

    def test_rank_bounded_by_shape(self):
        rows = [(ONE, OMEGA, I), (I, ONE, OMEGA)]
        assert exact_rank(rows) <= 2


class TestObstructionCertificates:
    def test_validation(self):
        e1 = elementary_symmetric(3, 1)
        e2 = elementary_symmetric(3, 2)
        pt = ProjPointExact.make((ZERO, Cyclo12.of(-1), ONE))
        with pytest.raises(ValueError):
            obstruction(pt, [e1])  # ternary needs two forms
        with pytest.raises(ValueError):
            obstruction(pt, [e1, elementary_symmetric(4, 1)])
        off = ProjPointExact.make((ONE, ONE, ONE))
        with pytest.raises(ValueError):
            obstruction(off, [e1, e2])

    def test_singular_point(self):
        e2 = elementary_symmetric(3, 2)
        e3 = elementary_symmetric(3, 3)
        pt = ProjPointExact.make((ONE, ZERO, ZERO))
        cert = obstruction(pt, [e2, e3])
        assert cert.kind == "SingularPoint"
        assert cert.which_input == 1  # XYZ has vanishing gradient there
        assert cert.is_obstruction

    def test_shared_tangent_at_cube_root_point(self):
        e1 = elementary_symmetric(3, 1)
        e2 = elementary_symmetric(3, 2)
        q1 = e1 * e1 + e2
        q2 = e1 * e1 - e2
        pt = ProjPointExact.make((OMEGA, OMEGA2, ONE))
        cert = obstruction(pt, [q1, q2])
        assert cert.kind == "SharedTangent"
        assert cert.jacobian_rank == 1
        assert cert.line == (ONE, OMEGA, OMEGA2)

    def test_rank_drop_at_sign_point(self):
        e1 = elementary_symmetric(4, 1)
        e3 = elementary_symmetric(4, 3)
        p3 = parse_poly("X^3 + Y^3 + Z^3 + W^3", 4)
        pt = ProjPointExact.make((Cyclo12.of(-1), Cyclo12.of(-1), ONE, ONE))
        cert = obstruction(pt, [e1, p3, e3])
        assert cert.kind == "RankDrop"
        assert cert.jacobian_rank <= 2
        assert "repeated coordinates" in cert.note

    def test_no_obstruction_at_transverse_point(self):
        e1 = elementary_symmetric(3, 1)
        quintic = parse_poly("X^5 + Y^5 + Z^5", 3)
        pt = ProjPointExact.make((ZERO, Cyclo12.of(-1), ONE))
        cert = obstruction(pt, [e1, quintic])
        assert cert.kind == "NoObstruction"
        assert cert.jacobian_rank == 2
        assert not cert.is_obstruction

    def test_to_json_round(self):
        e1 = elementary_symmetric(3, 1)
        quintic = parse_poly("X^5 + Y^5 + Z^5", 3)
        pt = ProjPointExact.make((OMEGA, OMEGA2, ONE))
        data = obstruction(pt, [e1, quintic]).to_json()
        assert data["kind"] in (
            "SingularPoint", "SharedTangent", "RankDrop", "NoObstruction",
        )
        assert isinstance(data["point"], str)


class TestCatalogVerification:
    def test_ternary_catalog_passes(self):
        check = verify_catalog_by_stabilizer(2)
        assert check.passed
        assert check.families_checked == 7
        assert all(e.complete for e in check.enumerations)

    def test_quaternary_catalog_passes(self):
        check = verify_catalog_by_stabilizer(3)
        assert check.passed
        assert check.families_checked == 30

    def test_enumeration_degrees(self):
        by_stab = {e.stabilizer_name: e for e in run_enumerations(2)}
        assert by_stab["C2"].degree == 2 and by_stab["C2"].roots_found == 2
        assert by_stab["C3"].degree == 3 and by_stab["C3"].roots_found == 3
        by_stab = {e.stabilizer_name: e for e in run_enumerations(3)}
        assert by_stab["C4"].degree == 4 and by_stab["C4"].roots_found == 4
        assert by_stab["C3"].degree == 3
        assert by_stab["K4n"].degree == 8 and by_stab["K4n"].roots_found == 8

    def test_check_serializes(self):
        data = verify_catalog_by_stabilizer(2).to_json()
        assert data["passed"] is True
        assert len(data["enumerations"]) == 2


class TestSpecialPointMembership:
    def test_ternary_e1_hits_all_admissible(self):
        memberships = special_point_membership(elementary_symmetric(3, 1))
        stabs = sorted(m.family.stabilizer_name for m in memberships)
        assert stabs == ["C2", "C3", "C3"]

    def test_quaternary_e1_contains_whole_plane_family(self):
        memberships = special_point_membership(elementary_symmetric(4, 1))
        entire = [m for m in memberships if m.entire_family and m.family.param_count]
        assert len(entire) == 1
        assert entire[0].family.stabilizer_name == "C2e"
        assert len(memberships) == 5

    def test_quadric_meets_plane_family_at_imaginary_params(self):
        p2 = parse_poly("X^2 + Y^2 + Z^2 + W^2", 4)
        memberships = special_point_membership(p2)
        c2e = next(
            m for m in memberships if m.family.stabilizer_name == "C2e"
        )
        assert not c2e.entire_family
        assert c2e.parameters_complete
        assert set(c2e.parameters) == {I, -I}

    def test_sixth_power_sum_misses_every_admissible_point(self):
        f = parse_poly("X^6 + Y^6 + Z^6", 3)
        assert special_point_membership(f) == []
