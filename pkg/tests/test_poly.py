"""Multivariate polynomial arithmetic and the elementary symmetric basis."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symbez.exactnum import Cyclo12, OMEGA, OMEGA2, ONE, ZERO, I
from symbez.poly import (
    ElemBasisPoly,
    MultiPoly,
    elementary_symmetric,
    from_elementary_basis,
    random_symmetric,
    random_symmetric_elem,
    substitute_variable,
    to_elementary_basis,
    uni_divmod,
    uni_eval,
    uni_gcd,
    uni_mul,
    weighted_e_monomials,
)
from symbez.parse import PolyParseError, parse_poly


def X(n=3):
    return MultiPoly.variable(n, 0)


def Y(n=3):
    return MultiPoly.variable(n, 1)


def Z(n=3):
    return MultiPoly.variable(n, 2)


def small_polys(num_vars=3, max_terms=5, max_exp=3):
    def build(entries):
        terms = {}
        for exps, num in entries:
            terms[exps] = terms.get(exps, ZERO) + Cyclo12.of(num)
        return MultiPoly(num_vars, terms)

    exps = st.tuples(*[st.integers(0, max_exp)] * num_vars)
    entry = st.tuples(exps, st.integers(-9, 9))
    return st.builds(build, st.lists(entry, max_size=max_terms))


class TestRingOps:
    def test_construction_drops_zeros(self):
        f = MultiPoly(3, {(1, 0, 0): ZERO, (0, 1, 0): ONE})
        assert (1, 0, 0) not in f.terms
        assert f.degree() == 1

    def test_zero_degree_is_none(self):
        assert MultiPoly.zero(3).degree() is None

    def test_sum_of_cubes(self):
        f = X() ** 3 + Y() ** 3 + Z() ** 3
        assert f.degree() == 3
        assert f.is_homogeneous()
        assert f.is_symmetric()

    def test_product_degree_adds(self):
        f = (X() + Y()) * (X() - Y())
        assert f == X() ** 2 - Y() ** 2

    @given(small_polys(), small_polys(), small_polys())
    @settings(max_examples=40)
    def test_ring_axioms(self, f, g, h):
        assert (f + g) * h == f * h + g * h
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)

    @given(small_polys())
    def test_additive_inverse(self, f):
        assert (f - f).is_zero()

    def test_pow(self):
        f = X() + Y() + Z()
        assert f ** 0 == MultiPoly.constant(3, 1)
        assert f ** 1 == f
        assert f ** 3 == f * f * f


class TestCalculus:
    def test_partial_derivative(self):
        f = X() ** 2 * Y() + Z() ** 3
        assert f.partial_derivative(0) == 2 * X() * Y()
        assert f.partial_derivative(2) == 3 * Z() ** 2

    def test_euler_residual_vanishes_for_homogeneous(self):
        f = X() ** 4 + X() ** 2 * Y() * Z() + Z() ** 4
        assert f.euler_residual().is_zero()

    def test_euler_residual_nonzero_for_inhomogeneous(self):
        f = X() ** 2 + Y()
        # sum X_i f_i - 2 f = (2X^2 + Y) - 2(X^2 + Y) = -Y
        assert f.euler_residual() == -Y()

    @given(small_polys())
    @settings(max_examples=40)
    def test_euler_identity(self, f):
        # The residual is zero exactly when f is homogeneous.
        assert f.euler_residual().is_zero() == f.is_homogeneous()

    def test_dehomogenize(self):
        f = X() ** 2 + X() * Z() + Z() ** 2
        g = f.dehomogenize(2)
        assert g == X() ** 2 + X() + MultiPoly.constant(3, 1)
        assert g.num_vars == 3


class TestSymmetry:
    def test_apply_permutation(self):
        f = X() ** 2 * Y()
        swap = (1, 0, 2)
        assert f.apply_permutation(swap) == Y() ** 2 * X()

    def test_permutation_composition(self):
        f = X() ** 3 + 2 * Y() ** 2 * Z()
        s = (1, 2, 0)
        t = (1, 0, 2)
        st_images = tuple(s[t[i]] for i in range(3))
        assert f.apply_permutation(t).apply_permutation(s) == f.apply_permutation(
            st_images
        )

    def test_is_symmetric(self):
        assert (X() + Y() + Z()).is_symmetric()
        assert (X() * Y() * Z()).is_symmetric()
        assert not (X() + Y()).is_symmetric()
        assert (X() ** 5 + Y() ** 5 + Z() ** 5).is_symmetric()


class TestEvaluation:
    def test_exact_at_ones(self):
        f = X() ** 5 + Y() ** 5 + Z() ** 5
        assert f.evaluate_exact([1, 1, 1]) == Cyclo12.of(3)

    def test_exact_at_omega_point(self):
        f = X() + Y() + Z()
        assert f.evaluate_exact([OMEGA, OMEGA2, ONE]).is_zero()

    def test_numeric_matches_exact(self):
        f = X() ** 2 * Y() + 3 * Z() ** 3
        exact = f.evaluate_exact([2, Fraction(1, 2), -1])
        numeric = f.evaluate_numeric(
            [Cyclo12.of(2).embed(128), Cyclo12.of(Fraction(1, 2)).embed(128),
             Cyclo12.of(-1).embed(128)]
        )
        target = exact.embed(128)
        assert abs((numeric.to_mpc() - target.to_mpc())) < 1e-30

    def test_univariate_example(self):
        f = MultiPoly(1, {(2,): ONE})
        assert f.evaluate_exact([3]) == Cyclo12.of(9)


class TestElementaryBasis:
    def test_elementary_symmetric_polys(self):
        assert elementary_symmetric(3, 1) == X() + Y() + Z()
        assert elementary_symmetric(3, 2) == X() * Y() + X() * Z() + Y() * Z()
        assert elementary_symmetric(3, 3) == X() * Y() * Z()

    def test_weighted_monomial_enumeration(self):
        # weight 5 in 3 variables: all (a,b,c) with a + 2b + 3c = 5
        monos = weighted_e_monomials(3, 5)
        assert set(monos) == {(5, 0, 0), (3, 1, 0), (1, 2, 0), (2, 0, 1), (0, 1, 1)}

    def test_power_sum_via_newton_identities(self):
        # Oracle: Newton's identities p_k = e1 p_{k-1} - e2 p_{k-2} + ...
        # computed in the e-basis ring independently of the conversion
        # algorithm under test.
        n, top = 3, 5
        e = {k: to_elementary_basis(elementary_symmetric(n, k)) for k in range(1, n + 1)}

        def eb_mul(p, q):
            out = {}
            for (ea, ca) in p.terms:
                for (eb_, cb) in q.terms:
                    key = tuple(a + b for a, b in zip(ea, eb_))
                    out[key] = out.get(key, ZERO) + ca * cb
            return ElemBasisPoly.make(n, out)

        def eb_add(p, q):
            out = dict(p.terms)
            for exps, c in q.terms:
                out[exps] = out.get(exps, ZERO) + c
            return ElemBasisPoly.make(n, out)

        def eb_scale(p, s):
            return ElemBasisPoly.make(n, {exps: c * s for exps, c in p.terms})

        p = {0: ElemBasisPoly.make(n, {(0,) * n: Cyclo12.of(n)})}
        for k in range(1, top + 1):
            acc = ElemBasisPoly.make(n, {})
            for j in range(1, min(k, n) + 1):
                sign = Cyclo12.of((-1) ** (j - 1))
                if k - j == 0:
                    contrib = eb_scale(e[j], sign * k)
                else:
                    contrib = eb_scale(eb_mul(e[j], p[k - j]), sign)
                acc = eb_add(acc, contrib)
            p[k] = acc

        f = X() ** 5 + Y() ** 5 + Z() ** 5
        assert to_elementary_basis(f).terms == p[5].terms
        # frozen expansion, readable form:
        # p5 = e1^5 - 5 e1^3 e2 + 5 e1 e2^2 + 5 e1^2 e3 - 5 e2 e3
        expected = {
            (5, 0, 0): Cyclo12.of(1),
            (3, 1, 0): Cyclo12.of(-5),
            (1, 2, 0): Cyclo12.of(5),
            (2, 0, 1): Cyclo12.of(5),
            (0, 1, 1): Cyclo12.of(-5),
        }
        assert dict(to_elementary_basis(f).terms) == expected

    def test_rejects_asymmetric_input(self):
        with pytest.raises(ValueError):
            to_elementary_basis(X() + 2 * Y() + Z())

    @given(st.integers(0, 2 ** 32 - 1), st.integers(1, 7))
    @settings(max_examples=30, deadline=None)
    def test_round_trip(self, seed, degree):
        p = random_symmetric_elem(3, degree, seed)
        f = from_elementary_basis(p)
        assert f.is_symmetric()
        assert to_elementary_basis(f).terms == p.terms

    def test_round_trip_four_vars(self):
        p = random_symmetric_elem(4, 4, 7)
        f = from_elementary_basis(p)
        assert to_elementary_basis(f).terms == p.terms

    def test_e_basis_weight(self):
        p = ElemBasisPoly.make(3, {(1, 2, 0): ONE})
        assert p.weight() == 5


class TestRandomSymmetric:
    def test_deterministic(self):
        assert random_symmetric(3, 4, 123) == random_symmetric(3, 4, 123)
        assert random_symmetric(3, 4, 123) != random_symmetric(3, 4, 124)

    def test_homogeneous_symmetric_nonzero(self):
        for seed in range(10):
            f = random_symmetric(3, 5, seed)
            assert not f.is_zero()
            assert f.is_homogeneous()
            assert f.is_symmetric()
            assert f.degree() == 5

    def test_coeff_bound_respected(self):
        p = random_symmetric_elem(3, 6, 5, coeff_bound=3)
        for _, c in p.terms:
            assert abs(c.as_rational()) <= 3


class TestSubstitution:
    def test_linear_substitution(self):
        # Y := -X - Z in X + Y + Z gives 0
        f = X() + Y() + Z()
        repl = -X() - Z()
        assert substitute_variable(f, 1, repl).is_zero()

    def test_substitution_matches_evaluation(self):
        g = X() ** 3 + 2 * Y() ** 3 - Z() ** 3 + X() * Y() * Z()
        repl = -X() - Z()
        sub = substitute_variable(g, 1, repl)
        for pt in [(1, 0, 2), (Fraction(1, 2), 0, -3), (OMEGA, 0, 1)]:
            x, _, z = pt
            y = -Cyclo12.of(x) - Cyclo12.of(z)
            assert sub.evaluate_exact([x, 0, z]) == g.evaluate_exact([x, y, z])


class TestUniPolys:
    def test_divmod(self):
        # (a^2 + 1) = (a + I)(a - I)
        p = [ONE, ZERO, ONE]
        d = [I, ONE]
        q, r = uni_divmod(p, d)
        assert r == []
        assert q == [-I, ONE]

    def test_gcd(self):
        a = uni_mul([ONE, ONE], [Cyclo12.of(-2), ONE])   # (a+1)(a-2)
        b = uni_mul([ONE, ONE], [Cyclo12.of(3), ONE])    # (a+1)(a+3)
        g = uni_gcd(a, b)
        assert g == [ONE, ONE]

    def test_gcd_coprime(self):
        g = uni_gcd([ONE, ONE], [Cyclo12.of(-1), ONE])
        assert g == [ONE]

    def test_eval(self):
        p = [Cyclo12.of(2), ZERO, ONE]  # a^2 + 2
        assert uni_eval(p, I) == Cyclo12.of(1)


class TestParser:
    def test_simple(self):
        f = parse_poly("X^5+Y^5+Z^5")
        assert f == X() ** 5 + Y() ** 5 + Z() ** 5

    def test_whitespace_and_parens(self):
        f = parse_poly(" ( X + Y ) * ( X - Y ) ")
        assert f == X() ** 2 - Y() ** 2

    def test_rational_coefficients(self):
        f = parse_poly("1/2*X + 3*Y - Z")
        assert f.terms[(1, 0, 0)] == Cyclo12.of(Fraction(1, 2))

    def test_constants(self):
        f = parse_poly("omega^2 + omega + 1")
        assert f.is_zero()
        g = parse_poly("I^2 + 1")
        assert g.is_zero()

    def test_unary_minus(self):
        assert parse_poly("-X + Y") == -X() + Y()

    def test_lowercase_variables(self):
        assert parse_poly("x0 + x1 + x2") == X() + Y() + Z()

    def test_four_variables(self):
        f = parse_poly("X+Y+Z+W", num_vars=4)
        assert f.num_vars == 4
        assert f.degree() == 1

    def test_elementary_mode(self):
        f = parse_poly("e1*e2 - 9*e3", basis="elementary")
        e1, e2, e3 = (elementary_symmetric(3, k) for k in (1, 2, 3))
        assert f == e1 * e2 - 9 * e3

    def test_e_vars_rejected_in_monomial_mode(self):
        with pytest.raises(PolyParseError):
            parse_poly("e1 + e2")

    def test_w_rejected_in_three_vars(self):
        with pytest.raises(PolyParseError):
            parse_poly("X+Y+Z+W", num_vars=3)

    def test_e4_rejected_in_three_vars(self):
        with pytest.raises(PolyParseError):
            parse_poly("e4", num_vars=3, basis="elementary")

    def test_syntax_error_position(self):
        with pytest.raises(PolyParseError) as err:
            parse_poly("X + + Y")
        assert "position" in str(err.value)

    def test_unknown_identifier(self):
        with pytest.raises(PolyParseError):
            parse_poly("X + foo")

    def test_round_trip_render(self):
        for text in ["X^2+Y^2+Z^2", "X*Y*Z", "-2*X+1/3*Y"]:
            f = parse_poly(text)
            assert parse_poly(str(f)) == f
