"""Field arithmetic in Q(zeta12)."""

from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symbez.exactnum import (
    I,
    OMEGA,
    OMEGA2,
    ONE,
    ZERO,
    ZETA,
    ComplexApprox,
    Cyclo12,
    exact_sqrt,
    recognize,
    render_exact,
    to_mpc,
)


def rationals(max_num=40, max_den=12):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def field_elements():
    return st.builds(
        lambda a, b, c, d: Cyclo12((a, b, c, d)),
        rationals(), rationals(), rationals(), rationals(),
    )


class TestBasics:
    def test_sum_cancels_zeta_cubed(self):
        a = ONE + ZETA**3
        b = ONE - ZETA**3
        assert a + b == Cyclo12.of(2)

    def test_omega_sum_is_zero(self):
        # 1 + omega + omega^2 = 0: on the basis, omega = zeta^2 - 1 and
        # omega^2 = -zeta^2, so the zeta^2 parts cancel with the -1.
        assert OMEGA + OMEGA2 + ONE == ZERO

    def test_omega_is_zeta_fourth(self):
        assert OMEGA == ZETA**4
        assert OMEGA2 == ZETA**8

    def test_i_squared(self):
        assert I * I == Cyclo12.of(-1)

    def test_omega_cubed(self):
        assert OMEGA**3 == ONE

    def test_zeta_times_i_reduces(self):
        # zeta * zeta^3 = zeta^4 = zeta^2 - 1
        assert ZETA * I == Cyclo12.from_coeffs(-1, 0, 1, 0)

    def test_minimal_polynomial(self):
        assert ZETA**4 - ZETA**2 + ONE == ZERO

    def test_zeta_order_twelve(self):
        powers = {ZETA**k for k in range(12)}
        assert len(powers) == 12
        assert ZETA**12 == ONE


class TestConjugation:
    def test_conj_fixes_rationals(self):
        assert Cyclo12.of(Fraction(3, 7)).conjugate() == Cyclo12.of(Fraction(3, 7))

    def test_conj_of_i(self):
        assert I.conjugate() == -I

    def test_conj_of_omega(self):
        assert OMEGA.conjugate() == OMEGA2

    def test_conj_sends_zeta_to_eleventh_power(self):
        assert ZETA.conjugate() == ZETA**11

    @given(field_elements())
    def test_conj_is_involution(self, a):
        assert a.conjugate().conjugate() == a

    @given(field_elements(), field_elements())
    def test_conj_is_ring_map(self, a, b):
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert (a + b).conjugate() == a.conjugate() + b.conjugate()

    def test_is_real(self):
        assert ONE.is_real()
        assert not I.is_real()
        assert not OMEGA.is_real()
        # zeta + conj(zeta) = 2*cos(pi/6) = sqrt(3) is real
        assert (ZETA + ZETA.conjugate()).is_real()


class TestFieldAxioms:
    @given(field_elements(), field_elements(), field_elements())
    @settings(max_examples=60)
    def test_mul_associative_and_distributive(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(field_elements(), field_elements())
    def test_mul_commutative(self, a, b):
        assert a * b == b * a

    @given(field_elements())
    def test_additive_inverse(self, a):
        assert a + (-a) == ZERO
        assert ZERO + a == a

    @given(field_elements())
    @settings(max_examples=60)
    def test_multiplicative_inverse(self, a):
        if a.is_zero():
            with pytest.raises(ZeroDivisionError):
                a.inverse()
        else:
            assert a * a.inverse() == ONE

    def test_inverse_of_omega(self):
        assert OMEGA.inverse() == OMEGA2

    def test_inverse_of_i(self):
        assert I.inverse() == -I

    def test_division(self):
        assert (OMEGA / OMEGA2) == OMEGA2  # omega / omega^2 = omega^{-1} = omega^2
        assert Cyclo12.of(1) / 2 == Cyclo12.of(Fraction(1, 2))


class TestEmbedding:
    def test_zeta_embeds_on_unit_circle(self):
        z = to_mpc(ZETA, 128)
        with mp.workprec(128):
            assert abs(abs(z) - 1) < mp.mpf(2) ** -120
            assert abs(z - mp.expjpi(mp.mpf(1) / 6)) < mp.mpf(2) ** -120

    def test_omega_embeds_as_cube_root(self):
        z = to_mpc(OMEGA, 128)
        with mp.workprec(128):
            target = mp.mpc(mp.mpf(-1) / 2, mp.sqrt(3) / 2)
            assert abs(z - target) < mp.mpf(2) ** -120

    @given(field_elements(), field_elements())
    @settings(max_examples=40)
    def test_embed_is_ring_morphism(self, a, b):
        bits = 128
        za, zb = to_mpc(a, bits), to_mpc(b, bits)
        zab = to_mpc(a * b, bits)
        with mp.workprec(bits):
            scale = 1 + abs(za) * abs(zb)
            assert abs(za * zb - zab) < scale * mp.mpf(2) ** -100

    @given(field_elements())
    @settings(max_examples=40)
    def test_embed_conj_is_complex_conj(self, a):
        z = to_mpc(a, 128)
        zc = to_mpc(a.conjugate(), 128)
        with mp.workprec(128):
            assert abs(mp.conj(z) - zc) < (1 + abs(z)) * mp.mpf(2) ** -100

    def test_precision_escalation_tightens(self):
        lo = ZETA.embed(64)
        hi = ZETA.embed(256)
        assert lo.precision_bits == 64
        assert hi.precision_bits == 256
        with mp.workprec(300):
            exact = mp.expjpi(mp.mpf(1) / 6)
            assert abs(hi.to_mpc() - exact) < abs(lo.to_mpc() - exact) + mp.mpf(2) ** -250

    def test_complex_approx_roundtrip(self):
        c = ComplexApprox.from_mpc(mp.mpc(2, -3), 128)
        assert complex(c) == complex(2, -3)


class TestRendering:
    def test_named_values(self):
        assert render_exact(OMEGA) == "omega"
        assert render_exact(OMEGA2) == "omega^2"
        assert render_exact(I) == "I"
        assert render_exact(-I) == "-I"
        assert render_exact(Cyclo12.of(Fraction(-1, 2))) == "-1/2"
        assert render_exact(ZERO) == "0"

    def test_general_form_parses_back(self):
        # deferred import to keep this module independent of the parser
        from symbez.parse import parse_scalar

        for a in (ZETA, ZETA**5, ZETA**7, OMEGA - I, Cyclo12.from_coeffs(1, 2, 3, 4)):
            assert parse_scalar(render_exact(a)) == a


class TestRecognition:
    def test_rationals(self):
        for q in (0, 1, -1, Fraction(3, 7), Fraction(-22, 5)):
            assert recognize(to_mpc(Cyclo12.of(q), 128)) == Cyclo12.of(q)

    def test_named_constants(self):
        for a in (ZETA, I, OMEGA, OMEGA2, ZETA**7, OMEGA - I):
            assert recognize(to_mpc(a, 128)) == a

    @given(field_elements())
    @settings(max_examples=60)
    def test_roundtrip(self, a):
        assert recognize(to_mpc(a, 160), 160) == a

    def test_low_precision_tolerates_noise(self):
        # a point polished near a singular root keeps only half its bits
        z = to_mpc(OMEGA, 192) + mp.mpc(1e-21, -3e-21)
        assert recognize(z, 192) is None
        assert recognize(z, 48) == OMEGA

    def test_rejects_outside_field(self):
        with mp.workprec(128):
            assert recognize(mp.sqrt(mp.mpf(2)), 128) is None
            assert recognize(mp.pi, 128) is None

    def test_huge_coefficients_rejected(self):
        assert recognize(mp.mpf(10) ** 9 + Fraction(1, 3), 128, max_coeff=10**6) is None

    def test_exact_sqrt_squares(self):
        for a in (ZERO, ONE, Cyclo12.of(4), OMEGA, -ONE, I, Cyclo12.of(Fraction(9, 16))):
            s = exact_sqrt(a * a)
            assert s is not None and s * s == a * a

    def test_exact_sqrt_of_minus_one_and_omega(self):
        s = exact_sqrt(-ONE)
        assert s in (I, -I)
        t = exact_sqrt(OMEGA2)
        assert t is not None and t * t == OMEGA2

    def test_exact_sqrt_outside_field(self):
        assert exact_sqrt(Cyclo12.of(2)) is None
        assert exact_sqrt(Cyclo12.of(5)) is None

    def test_exact_sqrt_of_three(self):
        # sqrt(3) = zeta + zeta^-1 lies in the field
        s = exact_sqrt(Cyclo12.of(3))
        assert s is not None and s * s == Cyclo12.of(3)
