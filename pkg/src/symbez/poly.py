"""Sparse multivariate polynomials over Q(zeta12).

A polynomial is a map from exponent tuples to nonzero Cyclo12
coefficients; the zero polynomial has no terms.  Instances are treated
as immutable.  The module also provides the elementary symmetric basis
(every symmetric polynomial is a unique polynomial in e1..en), a
deterministic seeded generator for random symmetric forms, and small
univariate helpers used for family restrictions and gcd work.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import mpmath as mp

from .exactnum import Cyclo12, ComplexApprox, ZERO, ONE, to_mpc

ExponentVector = tuple[int, ...]

VAR_NAMES = ("X", "Y", "Z", "W")


def _images_of(perm) -> tuple[int, ...]:
    return tuple(getattr(perm, "images", perm))


class MultiPoly:
    """A sparse polynomial in up to four variables."""

    __slots__ = ("num_vars", "terms", "_embed_cache", "_deriv_cache")

    def __init__(self, num_vars: int, terms: dict[ExponentVector, Cyclo12]):
        if not 1 <= num_vars <= 4:
            raise ValueError("num_vars must be between 1 and 4")
        clean = {}
        for exps, coeff in terms.items():
            if len(exps) != num_vars:
                raise ValueError("exponent vector length does not match num_vars")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            if not coeff.is_zero():
                clean[exps] = coeff
        self.num_vars = num_vars
        self.terms = clean
        self._embed_cache: dict[int, list] = {}
        self._deriv_cache: dict[int, MultiPoly] = {}

    # ----- construction -----

    @staticmethod
    def zero(num_vars: int) -> MultiPoly:
        return MultiPoly(num_vars, {})

    @staticmethod
    def constant(num_vars: int, value) -> MultiPoly:
        c = Cyclo12.of(value)
        return MultiPoly(num_vars, {(0,) * num_vars: c})

    @staticmethod
    def variable(num_vars: int, index: int) -> MultiPoly:
        if not 0 <= index < num_vars:
            raise ValueError("variable index out of range")
        exps = tuple(1 if i == index else 0 for i in range(num_vars))
        return MultiPoly(num_vars, {exps: ONE})

    # ----- basic queries -----

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    # ----- ring operations -----

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.num_vars != self.num_vars:
                raise ValueError("mixed variable counts")
            return other
        return MultiPoly.constant(self.num_vars, other)

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            cur = terms.get(exps)
            terms[exps] = coeff if cur is None else cur + coeff
        return MultiPoly(self.num_vars, terms)

    __radd__ = __add__

    def __sub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            cur = terms.get(exps)
            terms[exps] = -coeff if cur is None else cur - coeff
        return MultiPoly(self.num_vars, terms)

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            scalar = Cyclo12.of(other)
            if scalar.is_zero():
                return MultiPoly.zero(self.num_vars)
            return MultiPoly(
                self.num_vars, {e: scalar * c for e, c in self.terms.items()}
            )
        if other.num_vars != self.num_vars:
            raise ValueError("mixed variable counts")
        acc: dict[ExponentVector, Cyclo12] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                cur = acc.get(exps)
                acc[exps] = prod if cur is None else cur + prod
        return MultiPoly(self.num_vars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.num_vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # ----- calculus and substitution -----

    def partial_derivative(self, var: int) -> MultiPoly:
        cached = self._deriv_cache.get(var)
        if cached is not None:
            return cached
        terms = {}
        for exps, coeff in self.terms.items():
            k = exps[var]
            if k == 0:
                continue
            new = list(exps)
            new[var] = k - 1
            key = tuple(new)
            add = coeff * k
            cur = terms.get(key)
            terms[key] = add if cur is None else cur + add
        result = MultiPoly(self.num_vars, terms)
        self._deriv_cache[var] = result
        return result

    def euler_residual(self) -> MultiPoly:
        """sum_i X_i * df/dX_i - deg(f) * f; zero iff f is homogeneous."""
        if self.is_zero():
            return self
        d = self.degree()
        acc = MultiPoly.zero(self.num_vars)
        for i in range(self.num_vars):
            acc = acc + MultiPoly.variable(self.num_vars, i) * self.partial_derivative(i)
        return acc - self * d

    def dehomogenize(self, var: int) -> MultiPoly:
        """Substitute X_var = 1; the variable count stays the same."""
        terms: dict[ExponentVector, Cyclo12] = {}
        for exps, coeff in self.terms.items():
            new = list(exps)
            new[var] = 0
            key = tuple(new)
            cur = terms.get(key)
            terms[key] = coeff if cur is None else cur + coeff
        return MultiPoly(self.num_vars, terms)

    def apply_permutation(self, perm) -> MultiPoly:
        """Variable substitution X_i -> X_{sigma(i)}."""
        images = _images_of(perm)
        if len(images) != self.num_vars:
            raise ValueError("permutation degree does not match num_vars")
        terms = {}
        for exps, coeff in self.terms.items():
            new = [0] * self.num_vars
            for i, e in enumerate(exps):
                new[images[i]] = e
            terms[tuple(new)] = coeff
        return MultiPoly(self.num_vars, terms)

    def is_symmetric(self) -> bool:
        n = self.num_vars
        if n == 1:
            return True
        swap = tuple([1, 0] + list(range(2, n)))
        cycle = tuple(list(range(1, n)) + [0])
        return (
            self.apply_permutation(swap) == self
            and self.apply_permutation(cycle) == self
        )

    # ----- evaluation -----

    def evaluate_exact(self, coords) -> Cyclo12:
        coords = [Cyclo12.of(c) for c in coords]
        if len(coords) != self.num_vars:
            raise ValueError("wrong number of coordinates")
        maxexp = [0] * self.num_vars
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e > maxexp[i]:
                    maxexp[i] = e
        powers = []
        for i, c in enumerate(coords):
            row = [ONE]
            for _ in range(maxexp[i]):
                row.append(row[-1] * c)
            powers.append(row)
        acc = ZERO
        for exps, coeff in self.terms.items():
            val = coeff
            for i, e in enumerate(exps):
                if e:
                    val = val * powers[i][e]
            acc = acc + val
        return acc

    def embedded_terms(self, precision_bits: int) -> list:
        """Cached (exponents, mpc coefficient) pairs at a precision."""
        cached = self._embed_cache.get(precision_bits)
        if cached is None:
            cached = [
                (exps, to_mpc(coeff, precision_bits))
                for exps, coeff in sorted(self.terms.items())
            ]
            self._embed_cache[precision_bits] = cached
        return cached

    def eval_mpc(self, coords, precision_bits: int):
        """Evaluate at raw mpmath complex coordinates."""
        terms = self.embedded_terms(precision_bits)
        with mp.workprec(precision_bits):
            maxexp = [0] * self.num_vars
            for exps, _ in terms:
                for i, e in enumerate(exps):
                    if e > maxexp[i]:
                        maxexp[i] = e
            powers = []
            for i in range(self.num_vars):
                row = [mp.mpc(1)]
                ci = mp.mpc(coords[i])
                for _ in range(maxexp[i]):
                    row.append(row[-1] * ci)
                powers.append(row)
            acc = mp.mpc(0)
            for exps, coeff in terms:
                val = coeff
                for i, e in enumerate(exps):
                    if e:
                        val = val * powers[i][e]
                acc += val
            return +acc

    def evaluate_numeric(self, coords) -> ComplexApprox:
        bits = max(
            [c.precision_bits for c in coords if isinstance(c, ComplexApprox)],
            default=128,
        )
        raw = [c.to_mpc() if isinstance(c, ComplexApprox) else mp.mpc(c) for c in coords]
        return ComplexApprox.from_mpc(self.eval_mpc(raw, bits), bits)

    def coeff_norm(self, precision_bits: int = 128):
        """Sum of coefficient magnitudes (scale for relative residuals)."""
        with mp.workprec(precision_bits):
            return +sum(
                (abs(c) for _, c in self.embedded_terms(precision_bits)), mp.mpf(0)
            )

    # ----- rendering -----

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.num_vars}, {self.terms!r})"


def render_poly(f: MultiPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for exps, coeff in sorted(f.terms.items(), reverse=True):
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(VAR_NAMES[i])
            elif e > 1:
                factors.append(f"{VAR_NAMES[i]}^{e}")
        ctext = str(coeff)
        need_parens = ("+" in ctext[1:]) or ("-" in ctext[1:])
        if not factors:
            body = f"({ctext})" if need_parens else ctext
        elif coeff == ONE:
            body = "*".join(factors)
        elif coeff == -ONE:
            body = "-" + "*".join(factors)
        elif need_parens:
            body = f"({ctext})*" + "*".join(factors)
        else:
            body = f"{ctext}*" + "*".join(factors)
        if parts and not body.startswith("-"):
            parts.append("+" + body)
        else:
            parts.append(body)
    return "".join(parts)


# ----- elementary symmetric basis -----

def elementary_symmetric(num_vars: int, k: int) -> MultiPoly:
    """The k-th elementary symmetric polynomial in num_vars variables."""
    if not 0 <= k <= num_vars:
        raise ValueError("elementary symmetric index out of range")
    if k == 0:
        return MultiPoly.constant(num_vars, 1)
    from itertools import combinations

    terms = {}
    for subset in combinations(range(num_vars), k):
        exps = tuple(1 if i in subset else 0 for i in range(num_vars))
        terms[exps] = ONE
    return MultiPoly(num_vars, terms)


_EMONO_CACHE: dict[tuple[int, ExponentVector], MultiPoly] = {}


def _expand_e_monomial(num_vars: int, exps: ExponentVector) -> MultiPoly:
    cached = _EMONO_CACHE.get((num_vars, exps))
    if cached is None:
        cached = MultiPoly.constant(num_vars, 1)
        for i, e in enumerate(exps):
            if e:
                cached = cached * elementary_symmetric(num_vars, i + 1) ** e
        _EMONO_CACHE[(num_vars, exps)] = cached
    return cached


@dataclass(frozen=True)
class ElemBasisPoly:
    """A polynomial in the elementary symmetric generators e1..en.

    terms maps exponent tuples (powers of e1, e2, ...) to coefficients;
    the weight of a term is sum((i+1) * power_i), the total degree of
    its expansion.
    """

    num_vars: int
    terms: tuple[tuple[ExponentVector, Cyclo12], ...]

    @staticmethod
    def make(num_vars: int, terms: dict[ExponentVector, Cyclo12]) -> ElemBasisPoly:
        clean = tuple(
            sorted((e, c) for e, c in terms.items() if not c.is_zero())
        )
        return ElemBasisPoly(num_vars, clean)

    def is_zero(self) -> bool:
        return not self.terms

    def weight(self) -> int | None:
        """Weighted degree, or None for zero or mixed-weight input."""
        weights = {
            sum((i + 1) * e for i, e in enumerate(exps)) for exps, _ in self.terms
        }
        if len(weights) != 1:
            return None
        return weights.pop()

    def expand(self) -> MultiPoly:
        acc = MultiPoly.zero(self.num_vars)
        for exps, coeff in self.terms:
            acc = acc + _expand_e_monomial(self.num_vars, exps) * coeff
        return acc

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.terms:
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"e{i + 1}")
                elif e > 1:
                    factors.append(f"e{i + 1}^{e}")
            ctext = str(coeff)
            need_parens = ("+" in ctext[1:]) or ("-" in ctext[1:])
            if not factors:
                body = f"({ctext})" if need_parens else ctext
            elif coeff == ONE:
                body = "*".join(factors)
            elif coeff == -ONE:
                body = "-" + "*".join(factors)
            elif need_parens:
                body = f"({ctext})*" + "*".join(factors)
            else:
                body = f"{ctext}*" + "*".join(factors)
            if parts and not body.startswith("-"):
                parts.append("+" + body)
            else:
                parts.append(body)
        return "".join(parts)


def from_elementary_basis(p: ElemBasisPoly) -> MultiPoly:
    return p.expand()


def to_elementary_basis(f: MultiPoly) -> ElemBasisPoly:
    """Rewrite a symmetric polynomial in the elementary generators.

    Classical leading-term subtraction: the lex-leading exponent of a
    symmetric polynomial is non-increasing, and the matching e-monomial
    e1^(a1-a2) * e2^(a2-a3) * ... has the same leading term.
    """
    if not f.is_symmetric():
        raise ValueError("polynomial is not symmetric")
    n = f.num_vars
    remaining = dict(f.terms)
    out: dict[ExponentVector, Cyclo12] = {}
    while remaining:
        lead = max(remaining)
        coeff = remaining[lead]
        if any(lead[i] < lead[i + 1] for i in range(n - 1)):
            raise ValueError("leading term not sorted; input was not symmetric")
        e_exps = tuple(
            lead[i] - lead[i + 1] if i < n - 1 else lead[n - 1] for i in range(n)
        )
        out[e_exps] = out.get(e_exps, ZERO) + coeff
        expansion = _expand_e_monomial(n, e_exps)
        for exps, c in expansion.terms.items():
            cur = remaining.get(exps, ZERO) - coeff * c
            if cur.is_zero():
                remaining.pop(exps, None)
            else:
                remaining[exps] = cur
    return ElemBasisPoly.make(n, out)


def weighted_e_monomials(num_vars: int, weight: int) -> list[ExponentVector]:
    """All e-exponent tuples with sum((i+1)*a_i) equal to weight."""
    out = []

    def rec(idx: int, left: int, acc: list[int]):
        if idx == num_vars - 1:
            w = num_vars
            if left % w == 0:
                out.append(tuple(acc + [left // w]))
            return
        step = idx + 1
        for a in range(left // step + 1):
            rec(idx + 1, left - step * a, acc + [a])

    rec(0, weight, [])
    return sorted(out)


def random_symmetric_elem(
    num_vars: int, degree: int, seed: int, coeff_bound: int = 10
) -> ElemBasisPoly:
    """Seeded random homogeneous symmetric form, written in e1..en.

    Coefficients are uniform integers in [-coeff_bound, coeff_bound];
    the result is never identically zero.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    monos = weighted_e_monomials(num_vars, degree)
    rng = random.Random(seed)
    while True:
        coeffs = [rng.randint(-coeff_bound, coeff_bound) for _ in monos]
        if any(coeffs):
            break
    terms = {m: Cyclo12.of(c) for m, c in zip(monos, coeffs) if c}
    return ElemBasisPoly.make(num_vars, terms)


def random_symmetric(
    num_vars: int, degree: int, seed: int, coeff_bound: int = 10
) -> MultiPoly:
    return random_symmetric_elem(num_vars, degree, seed, coeff_bound).expand()


# ----- substitution helpers -----

def coeffs_in_var(f: MultiPoly, var: int) -> dict[int, MultiPoly]:
    """Coefficients of f as a polynomial in one variable.

    Keys are powers of the variable; values keep the full variable
    count with that variable's slot zeroed.
    """
    out: dict[int, dict[ExponentVector, Cyclo12]] = {}
    for exps, coeff in f.terms.items():
        k = exps[var]
        rest = list(exps)
        rest[var] = 0
        out.setdefault(k, {})[tuple(rest)] = coeff
    return {k: MultiPoly(f.num_vars, terms) for k, terms in out.items()}


def substitute_variable(f: MultiPoly, var: int, replacement: MultiPoly) -> MultiPoly:
    """Substitute X_var := replacement (replacement must not use X_var)."""
    if any(e[var] for e in replacement.terms):
        raise ValueError("replacement polynomial uses the substituted variable")
    by_power = coeffs_in_var(f, var)
    acc = MultiPoly.zero(f.num_vars)
    power = MultiPoly.constant(f.num_vars, 1)
    for k in range(max(by_power, default=0) + 1):
        part = by_power.get(k)
        if part is not None:
            acc = acc + part * power
        power = power * replacement
    return acc


# ----- univariate polynomials over Cyclo12 -----
#
# Represented as coefficient lists, ascending powers, no trailing zeros;
# the empty list is the zero polynomial.  Used for one-parameter family
# restrictions and exact gcd computations.

UniPoly = list


def uni_trim(p: UniPoly) -> UniPoly:
    while p and p[-1].is_zero():
        p.pop()
    return p


def uni_degree(p: UniPoly) -> int | None:
    return len(p) - 1 if p else None


def uni_add(p: UniPoly, q: UniPoly) -> UniPoly:
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else ZERO
        b = q[i] if i < len(q) else ZERO
        out.append(a + b)
    return uni_trim(out)


def uni_scale(p: UniPoly, s: Cyclo12) -> UniPoly:
    if s.is_zero():
        return []
    return [c * s for c in p]


def uni_mul(p: UniPoly, q: UniPoly) -> UniPoly:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return uni_trim(out)


def uni_divmod(p: UniPoly, d: UniPoly) -> tuple[UniPoly, UniPoly]:
    if not d:
        raise ZeroDivisionError("univariate division by zero")
    rem = list(p)
    quot = [ZERO] * max(0, len(p) - len(d) + 1)
    lead_inv = d[-1].inverse()
    while len(rem) >= len(d):
        if rem[-1].is_zero():
            rem.pop()
            continue
        shift = len(rem) - len(d)
        factor = rem[-1] * lead_inv
        quot[shift] = factor
        for i, c in enumerate(d):
            rem[shift + i] = rem[shift + i] - factor * c
        rem.pop()
    return uni_trim(quot), uni_trim(rem)


def uni_monic(p: UniPoly) -> UniPoly:
    if not p:
        return []
    inv = p[-1].inverse()
    return [c * inv for c in p]


def uni_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    a, b = list(p), list(q)
    while b:
        _, r = uni_divmod(a, b)
        a, b = b, r
    return uni_monic(a)


def uni_eval(p: UniPoly, x) -> Cyclo12:
    x = Cyclo12.of(x)
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def uni_derivative(p: UniPoly) -> UniPoly:
    return uni_trim([c * k for k, c in enumerate(p)][1:])


def uni_embed(p: UniPoly, precision_bits: int) -> list:
    return [to_mpc(c, precision_bits) for c in p]


def uni_to_text(p: UniPoly, var: str = "a") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c.is_zero():
            continue
        ctext = str(c)
        need_parens = ("+" in ctext[1:]) or ("-" in ctext[1:])
        if k == 0:
            body = f"({ctext})" if need_parens else ctext
        else:
            head = f"{var}" if k == 1 else f"{var}^{k}"
            if c == ONE:
                body = head
            elif c == -ONE:
                body = f"-{head}"
            elif need_parens:
                body = f"({ctext})*{head}"
            else:
                body = f"{ctext}*{head}"
        if parts and not body.startswith("-"):
            parts.append("+" + body)
        else:
            parts.append(body)
    return "".join(parts)
