"""Exact arithmetic in the cyclotomic field Q(zeta12).

zeta12 is a primitive 12th root of unity with minimal polynomial
t^4 - t^2 + 1, so the field has degree 4 over Q.  It contains
i = zeta^3 and the primitive cube root of unity omega = zeta^4,
which makes every coordinate appearing in the fixed-point catalogs
exactly representable.  Elements are stored on the power basis
{1, zeta, zeta^2, zeta^3} with Fraction coefficients.

Rational = fractions.Fraction is the exact rational scalar type used
throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

Rational = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)

# zeta^4 = zeta^2 - 1, and the powers 5 and 6 reduced to the basis.
_ZETA4 = (-_F1, _F0, _F1, _F0)
_ZETA5 = (_F0, -_F1, _F0, _F1)
_ZETA6 = (-_F1, _F0, _F0, _F0)

# Complex conjugation sends zeta to zeta^11 = zeta - zeta^3; images of
# the basis elements, precomputed on the basis.
_CONJ = (
    (_F1, _F0, _F0, _F0),
    (_F0, _F1, _F0, -_F1),
    (_F1, _F0, -_F1, _F0),
    (_F0, _F0, _F0, -_F1),
)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True, slots=True)
class Cyclo12:
    """An element c0 + c1*zeta + c2*zeta^2 + c3*zeta^3 of Q(zeta12)."""

    coeffs: tuple[Fraction, Fraction, Fraction, Fraction]

    @staticmethod
    def of(value) -> Cyclo12:
        """Coerce an int, Fraction, or Cyclo12 into the field."""
        if isinstance(value, Cyclo12):
            return value
        return Cyclo12((_as_fraction(value), _F0, _F0, _F0))

    @staticmethod
    def from_coeffs(c0, c1=0, c2=0, c3=0) -> Cyclo12:
        return Cyclo12(tuple(_as_fraction(c) for c in (c0, c1, c2, c3)))

    def __add__(self, other) -> Cyclo12:
        other = Cyclo12.of(other)
        a, b = self.coeffs, other.coeffs
        return Cyclo12((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __sub__(self, other) -> Cyclo12:
        other = Cyclo12.of(other)
        a, b = self.coeffs, other.coeffs
        return Cyclo12((a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]))

    def __rsub__(self, other) -> Cyclo12:
        return Cyclo12.of(other) - self

    def __neg__(self) -> Cyclo12:
        a = self.coeffs
        return Cyclo12((-a[0], -a[1], -a[2], -a[3]))

    def __mul__(self, other) -> Cyclo12:
        other = Cyclo12.of(other)
        a, b = self.coeffs, other.coeffs
        # Fast path: rational times rational is the common case in
        # polynomial expansion work.
        if a[1] == 0 and a[2] == 0 and a[3] == 0:
            s = a[0]
            return Cyclo12((s * b[0], s * b[1], s * b[2], s * b[3]))
        if b[1] == 0 and b[2] == 0 and b[3] == 0:
            s = b[0]
            return Cyclo12((s * a[0], s * a[1], s * a[2], s * a[3]))
        prod = [_F0] * 7
        for i in range(4):
            ai = a[i]
            if ai:
                for j in range(4):
                    if b[j]:
                        prod[i + j] += ai * b[j]
        c = prod[:4]
        for k, table in ((4, _ZETA4), (5, _ZETA5), (6, _ZETA6)):
            s = prod[k]
            if s:
                for i in range(4):
                    if table[i]:
                        c[i] += s * table[i]
        return Cyclo12(tuple(c))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Cyclo12:
        return self * Cyclo12.of(other).inverse()

    def __rtruediv__(self, other) -> Cyclo12:
        return Cyclo12.of(other) * self.inverse()

    def __pow__(self, n: int) -> Cyclo12:
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.coeffs[1] == 0 and self.coeffs[2] == 0 and self.coeffs[3] == 0

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def conjugate(self) -> Cyclo12:
        c = self.coeffs
        out = [_F0, _F0, _F0, _F0]
        for i in range(4):
            ci = c[i]
            if ci:
                img = _CONJ[i]
                for j in range(4):
                    if img[j]:
                        out[j] += ci * img[j]
        return Cyclo12(tuple(out))

    def is_real(self) -> bool:
        """Whether the element is fixed by complex conjugation."""
        return self.conjugate() == self

    def inverse(self) -> Cyclo12:
        """Multiplicative inverse, via the 4x4 multiplication matrix."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta12)")
        if self.is_rational():
            return Cyclo12((_F1 / self.coeffs[0], _F0, _F0, _F0))
        # Columns are the basis images under multiplication by self.
        cols = [self]
        for _ in range(3):
            cols.append(cols[-1]._mul_zeta())
        mat = [[cols[j].coeffs[i] for j in range(4)] for i in range(4)]
        rhs = [_F1, _F0, _F0, _F0]
        sol = _solve4(mat, rhs)
        return Cyclo12(tuple(sol))

    def _mul_zeta(self) -> Cyclo12:
        c = self.coeffs
        # shift by one power of zeta and fold zeta^4 = zeta^2 - 1
        return Cyclo12((-c[3], c[0], c[1] + c[3], c[2]))

    def embed(self, precision_bits: int = 128) -> ComplexApprox:
        """Numeric value with zeta = exp(i*pi/6) at the given precision."""
        return ComplexApprox.from_mpc(to_mpc(self, precision_bits), precision_bits)

    def __str__(self) -> str:
        return render_exact(self)

    def __repr__(self) -> str:
        return f"Cyclo12({self.coeffs!r})"


def _solve4(mat, rhs):
    """Solve a 4x4 rational linear system by Gaussian elimination."""
    n = 4
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular multiplication matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = _F1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


ZERO = Cyclo12((_F0, _F0, _F0, _F0))
ONE = Cyclo12((_F1, _F0, _F0, _F0))
ZETA = Cyclo12((_F0, _F1, _F0, _F0))
I = Cyclo12((_F0, _F0, _F0, _F1))
OMEGA = Cyclo12((-_F1, _F0, _F1, _F0))       # zeta^4
OMEGA2 = Cyclo12((_F0, _F0, -_F1, _F0))      # zeta^8


def to_mpc(a: Cyclo12, precision_bits: int = 128) -> mp.mpc:
    """Raw mpmath value of a field element; zeta = exp(i*pi/6)."""
    with mp.workprec(precision_bits + 16):
        zeta = mp.expjpi(mp.mpf(1) / 6)
        acc = mp.mpc(0)
        power = mp.mpc(1)
        for c in a.coeffs:
            if c:
                acc += power * mp.mpf(c.numerator) / c.denominator
            power *= zeta
        return +acc


@dataclass(frozen=True, slots=True)
class ComplexApprox:
    """A complex value carried at an explicit binary precision."""

    real: mp.mpf
    imag: mp.mpf
    precision_bits: int

    @staticmethod
    def from_mpc(z, precision_bits: int) -> ComplexApprox:
        with mp.workprec(precision_bits):
            z = mp.mpc(z)
            return ComplexApprox(+z.real, +z.imag, precision_bits)

    def to_mpc(self) -> mp.mpc:
        return mp.mpc(self.real, self.imag)

    def __abs__(self):
        with mp.workprec(self.precision_bits):
            return mp.sqrt(self.real * self.real + self.imag * self.imag)

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __str__(self) -> str:
        return str(self.to_mpc())


def recognize(z, precision_bits: int = 128, max_coeff: int = 10 ** 6) -> Cyclo12 | None:
    """Guess the field element a numeric value approximates.

    Real and imaginary parts of Q(zeta12) elements live in Q + Q*sqrt(3),
    so each is recovered by an integer-relation search against
    (value, 1, sqrt(3)).  Returns None when no convincing candidate
    exists; callers must verify the guess exactly before relying on it.
    """
    precision_bits = max(precision_bits, 53)  # pslq floor
    with mp.workprec(precision_bits):
        z = mp.mpc(z)
        sqrt3 = mp.sqrt(3)
        tol = mp.mpf(2) ** (-precision_bits + max(24, precision_bits // 4))

        def real_part(t):
            # t = u + v*sqrt(3) with small rational u, v
            if abs(t) < tol:
                return Fraction(0), Fraction(0)
            rel = mp.pslq([t, mp.mpf(1), sqrt3], maxcoeff=max_coeff, maxsteps=400)
            if not rel or rel[0] == 0:
                return None
            a, b, c = rel
            return Fraction(-b, a), Fraction(-c, a)

        re = real_part(z.real)
        im = real_part(z.imag)
        if re is None or im is None:
            return None
        u, v = re
        uprime, vprime = im
        # coefficients on the zeta power basis:
        #   re = (c0 + c2/2) + (c1/2) sqrt(3), im = (c1/2 + c3) + (c2/2) sqrt(3)
        c1 = 2 * v
        c2 = 2 * vprime
        c0 = u - Fraction(c2, 2)
        c3 = uprime - Fraction(c1, 2)
        candidate = Cyclo12((c0, c1, c2, c3))
        if max(abs(c.numerator) for c in candidate.coeffs) > max_coeff or max(
            c.denominator for c in candidate.coeffs
        ) > max_coeff:
            return None
        if abs(to_mpc(candidate, precision_bits) - z) < tol * (1 + abs(z)):
            return candidate
        return None


def exact_sqrt(a: Cyclo12, precision_bits: int = 192) -> Cyclo12 | None:
    """A square root of a inside Q(zeta12), when one exists there."""
    if a.is_zero():
        return ZERO
    with mp.workprec(precision_bits):
        root = mp.sqrt(to_mpc(a, precision_bits))
    for cand in (recognize(root, precision_bits), recognize(-root, precision_bits)):
        if cand is not None and cand * cand == a:
            return cand
    return None


# Special values rendered by name; keys are basis coefficient tuples.
_RENDER_TABLE = {
    I.coeffs: "I",
    (-I).coeffs: "-I",
    OMEGA.coeffs: "omega",
    (-OMEGA).coeffs: "-omega",
    OMEGA2.coeffs: "omega^2",
    (-OMEGA2).coeffs: "-omega^2",
}


def render_exact(a: Cyclo12) -> str:
    """Readable form of a field element.

    Rationals print as themselves, the named constants print by name,
    and everything else is written on the basis {1, omega, I, I*omega},
    which the expression parser also accepts.
    """
    if a.is_rational():
        return str(a.coeffs[0])
    named = _RENDER_TABLE.get(a.coeffs)
    if named:
        return named
    # a = c0 + c1 z + c2 z^2 + c3 z^3 with z = -I*omega, z^2 = -omega^2,
    # z^3 = I, and omega^2 = -1 - omega gives the decomposition below.
    c0, c1, c2, c3 = a.coeffs
    rat = c0 + c2
    om = c2
    im = c3
    imom = -c1
    parts = []
    for coeff, name in ((rat, None), (om, "omega"), (im, "I"), (imom, "I*omega")):
        if coeff == 0:
            continue
        if name is None:
            text = str(coeff)
        elif coeff == 1:
            text = name
        elif coeff == -1:
            text = f"-{name}"
        else:
            text = f"{coeff}*{name}"
        if parts and not text.startswith("-"):
            parts.append("+" + text)
        else:
            parts.append(text)
    return "".join(parts) if parts else "0"
