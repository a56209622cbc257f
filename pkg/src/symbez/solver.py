"""Intersection of symmetric hypersurfaces with certified verdicts.

The solve drivers validate a symmetric system, locate every
intersection point (projecting to a binary resultant for curve pairs,
chaining eliminations for surface triples), upgrade recognizable points
to exact field coordinates, and decide transversality per point: exact
Jacobian rank where coordinates are exact, a scaled smallest singular
value elsewhere.  Reports carry residuals, multiplicities, stabilizer
classes, the orbit decomposition, and exact obstruction certificates
for every special point that blocks transversality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from mpmath import mp

from .exactnum import Cyclo12, recognize, render_exact, to_mpc
from .fixedpoints import (
    FixedPointFamily,
    Obstruction,
    exact_rank,
    full_catalog,
    gradient_at,
    obstruction,
)
from .group import (
    OrbitType,
    ProjPointExact,
    ProjPointNumeric,
    decompose_orbits,
    stabilizer,
)
from .poly import (
    MultiPoly,
    UniPoly,
    coeffs_in_var,
    substitute_variable,
    to_elementary_basis,
    uni_degree,
    uni_divmod,
    uni_embed,
    uni_eval,
    uni_gcd,
    uni_trim,
)

_ZERO = Cyclo12.of(0)
_ONE = Cyclo12.of(1)


class CommonFactorError(ValueError):
    """The input forms share a nonconstant factor."""


class DegenerateSystemError(ValueError):
    """The system does not cut out finitely many points."""


@dataclass(frozen=True)
class SolveOptions:
    """Precision and tolerance knobs for the solve drivers."""

    precision_bits: int = 128
    match_tolerance: float = 1e-8
    cluster_radius: float = 1e-6
    jacobian_threshold: float = 1e-6
    residual_accept: float = 1e-20
    residual_reject: float = 1e-8


# ----- exact resultants -----


def _lex_lead(terms: dict) -> tuple:
    return max(terms)


def _exact_div(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """Quotient num/den when the division is exact; raises otherwise."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return MultiPoly.zero(num.num_vars)
    dlead = _lex_lead(den.terms)
    dinv = den.terms[dlead].inverse()
    rem = dict(num.terms)
    quo: dict[tuple, Cyclo12] = {}
    while rem:
        nlead = _lex_lead(rem)
        diff = tuple(a - b for a, b in zip(nlead, dlead))
        if any(d < 0 for d in diff):
            raise ValueError("division is not exact")
        q = rem[nlead] * dinv
        quo[diff] = q
        for exps, c in den.terms.items():
            key = tuple(a + b for a, b in zip(diff, exps))
            val = rem.get(key, _ZERO) - q * c
            if val.is_zero():
                rem.pop(key, None)
            else:
                rem[key] = val
    return MultiPoly(num.num_vars, quo)


def _bareiss_det(matrix: list[list[MultiPoly]], num_vars: int) -> MultiPoly:
    """Fraction-free determinant of a matrix of polynomials."""
    n = len(matrix)
    if n == 0:
        return MultiPoly.constant(num_vars, 1)
    work = [row[:] for row in matrix]
    sign = 1
    prev = MultiPoly.constant(num_vars, 1)
    for k in range(n - 1):
        if work[k][k].is_zero():
            pivot = next(
                (r for r in range(k + 1, n) if not work[r][k].is_zero()), None
            )
            if pivot is None:
                return MultiPoly.zero(num_vars)
            work[k], work[pivot] = work[pivot], work[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = _exact_div(
                    work[k][k] * work[i][j] - work[i][k] * work[k][j], prev
                )
            work[i][k] = MultiPoly.zero(num_vars)
        prev = work[k][k]
    det = work[n - 1][n - 1]
    return -det if sign < 0 else det


def _poly_power(f: MultiPoly, n: int) -> MultiPoly:
    out = MultiPoly.constant(f.num_vars, 1)
    for _ in range(n):
        out = out * f
    return out


def sylvester_resultant(f: MultiPoly, g: MultiPoly, var: int) -> MultiPoly:
    """Exact resultant of f and g eliminating one variable.

    Computed as the Sylvester determinant by fraction-free elimination,
    so the result stays in the polynomial ring of the remaining
    variables (the eliminated slot survives with exponent zero).
    """
    if f.num_vars != g.num_vars:
        raise ValueError("mixed variable counts")
    if not 0 <= var < f.num_vars:
        raise ValueError("variable index out of range")
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    fc = coeffs_in_var(f, var)
    gc = coeffs_in_var(g, var)
    m = max(fc)
    n = max(gc)
    if m == 0 and n == 0:
        raise ValueError("neither input involves the variable")
    if m == 0:
        return _poly_power(fc[0], n)
    if n == 0:
        return _poly_power(gc[0], m)
    nv = f.num_vars
    zero = MultiPoly.zero(nv)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + k] = fc.get(m - k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + k] = gc.get(n - k, zero)
        rows.append(row)
    return _bareiss_det(rows, nv)


# ----- linear coordinate shears -----


def _shear_from(f: MultiPoly, src: int, offsets: dict[int, int]) -> MultiPoly:
    """Substitute X_t -> X_t + k_t * X_src for each (t, k_t) in offsets."""
    if not offsets or all(k == 0 for k in offsets.values()):
        return f
    nv = f.num_vars
    acc: dict[tuple, Cyclo12] = {}
    for exps, coeff in f.terms.items():
        base = list(exps)
        expansion = {tuple(base): coeff}
        for t, k in offsets.items():
            if k == 0 or exps[t] == 0:
                continue
            et = exps[t]
            new: dict[tuple, Cyclo12] = {}
            for key, c in expansion.items():
                lst = list(key)
                lst[t] -= et
                for j in range(et + 1):
                    term = list(lst)
                    term[t] += et - j
                    term[src] += j
                    scale = Cyclo12.of(math.comb(et, j) * k ** j)
                    tk = tuple(term)
                    val = new.get(tk, _ZERO) + c * scale
                    if val.is_zero():
                        new.pop(tk, None)
                    else:
                        new[tk] = val
            expansion = new
        for key, c in expansion.items():
            val = acc.get(key, _ZERO) + c
            if val.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = val
    return MultiPoly(nv, acc)


def _unshear_coords(coords, src: int, offsets: dict[int, int]):
    out = list(coords)
    for t, k in offsets.items():
        if k:
            out[t] = out[t] + k * coords[src]
    return out


# ----- numeric univariate roots -----


def _aberth(coeffs, precision_bits: int, cluster_radius: float):
    """Roots with multiplicities of a numeric polynomial.

    Simultaneous (Aberth-Ehrlich) iteration followed by greedy
    clustering; a cluster of k nearby approximations reports one root
    of multiplicity k.  Coefficients are ascending mpc values.
    """
    with mp.workprec(precision_bits + 32):
        coeffs = [mp.mpc(c) for c in coeffs]
        scale = max((abs(c) for c in coeffs), default=mp.mpf(0))
        if scale == 0:
            raise ValueError("zero polynomial has no finite root set")
        tiny = scale * mp.mpf(2) ** (-(precision_bits // 2) - 8)
        top = len(coeffs) - 1
        while top > 0 and abs(coeffs[top]) < tiny:
            top -= 1
        coeffs = coeffs[: top + 1]
        n = len(coeffs) - 1
        if n <= 0:
            return []
        lead = coeffs[-1]
        monic = [c / lead for c in coeffs]
        if n == 1:
            return [(+(-monic[0]), 1)]
        # Fujiwara root bound: much tighter than 1 + max|c| when the
        # original leading coefficient was small
        radius = mp.mpf(0)
        for j in range(1, n + 1):
            a = abs(monic[n - j])
            if a > 0:
                radius = max(radius, mp.exp(mp.log(a) / j))
        radius = 2 * radius if radius > 0 else mp.mpf(1)
        roots = [
            radius * mp.expjpi(mp.mpf(2 * k + 1) / n + mp.mpf(1) / 7)
            for k in range(n)
        ]
        # stopping at half precision is enough: singleton clusters are
        # sharpened by Newton below, and multiple roots cannot do better
        # than the half-precision noise floor anyway
        stop = mp.mpf(2) ** (-(precision_bits // 2) - 16)
        # the stall exit is only for the multiple-root noise plateau; a
        # straggler still travelling with large corrections must keep
        # iterating even when the max correction is not improving
        endgame = mp.mpf(2) ** (-(precision_bits // 4))
        best = mp.inf
        stalled = 0
        for _ in range(300):
            biggest = mp.mpf(0)
            new_roots = list(roots)
            for k, z in enumerate(roots):
                pv = monic[-1]
                dv = mp.mpc(0)
                for c in reversed(monic[:-1]):
                    dv = dv * z + pv
                    pv = pv * z + c
                if abs(pv) == 0:
                    continue
                if abs(dv) == 0:
                    new_roots[k] = z + mp.mpf(1) / 1000
                    biggest = max(biggest, mp.mpf(1))
                    continue
                newton = pv / dv
                total = mp.mpc(0)
                for j, w in enumerate(roots):
                    if j != k:
                        diff = z - w
                        if abs(diff) > 0:
                            total += 1 / diff
                denom = 1 - newton * total
                step = newton if abs(denom) < mp.mpf(2) ** (-precision_bits) else newton / denom
                new_roots[k] = z - step
                biggest = max(biggest, abs(step) / (1 + abs(z)))
            roots = new_roots
            if biggest < stop:
                break
            if biggest < best:
                best = biggest
                stalled = 0
            elif biggest < endgame:
                stalled += 1
                if stalled >= 25:
                    break
            else:
                stalled = 0
        order = sorted(
            range(n), key=lambda i: (float(roots[i].real), float(roots[i].imag))
        )
        clusters: list[list] = []
        for idx in order:
            z = roots[idx]
            placed = False
            for cluster in clusters:
                if abs(z - cluster[0]) < cluster_radius * (1 + abs(cluster[0])):
                    cluster.append(z)
                    placed = True
                    break
            if not placed:
                clusters.append([z])
        out = []
        for cluster in clusters:
            center = sum(cluster, mp.mpc(0)) / len(cluster)
            if len(cluster) == 1:
                # sharpen simple roots with plain Newton steps
                z = center
                for _ in range(3):
                    pv = monic[-1]
                    dv = mp.mpc(0)
                    for c in reversed(monic[:-1]):
                        dv = dv * z + pv
                        pv = pv * z + c
                    if abs(dv) == 0:
                        break
                    z = z - pv / dv
                center = z
            out.append((+center, len(cluster)))
        out.sort(key=lambda rm: (float(rm[0].real), float(rm[0].imag)))
        return out


def univariate_roots(
    p: UniPoly, precision_bits: int = 128, cluster_radius: float = 1e-6
):
    """All complex roots of an exact univariate polynomial.

    Returns (root, multiplicity) pairs; multiplicities sum to the
    degree.  Multiple roots are reported once at the cluster centroid.
    """
    deg = uni_degree(p)
    if deg is None:
        raise ValueError("zero polynomial has no finite root set")
    if deg == 0:
        return []
    return _aberth(uni_embed(p, precision_bits + 32), precision_bits, cluster_radius)


def _candidate_values():
    from .exactnum import ZETA

    vals = [Cyclo12.of(0)]
    power = Cyclo12.of(1)
    for _ in range(12):
        vals.append(power)
        power = power * ZETA
    return tuple(vals)


_CANDIDATES = _candidate_values()


def _divide_out_root(p: UniPoly, root: Cyclo12) -> UniPoly:
    quo, rem = uni_divmod(p, [-root, _ONE])
    if any(not c.is_zero() for c in rem):
        raise ValueError("not a root")
    return quo


def exact_uni_roots(
    p: UniPoly, precision_bits: int = 192
) -> tuple[list[Cyclo12], bool]:
    """Roots of p inside the coefficient field, with multiplicity.

    Tries the twelfth roots of unity and zero, then closes linear and
    quadratic leftovers by formula (square roots recognized inside the
    field), then recognizes numeric roots of higher-degree leftovers.
    The flag reports whether the full degree was certified; repeated
    roots appear repeatedly.
    """
    deg = uni_degree(p)
    if deg is None:
        raise ValueError("zero polynomial has no finite root set")
    roots: list[Cyclo12] = []
    work = p
    for cand in _CANDIDATES:
        while uni_degree(work) >= 1 and uni_eval(work, cand).is_zero():
            roots.append(cand)
            work = _divide_out_root(work, cand)
    deg = uni_degree(work)
    if deg == 0:
        return roots, True
    if deg == 1:
        roots.append(-work[0] * work[1].inverse())
        return roots, True
    if deg == 2:
        from .exactnum import exact_sqrt

        c0, c1, c2 = work
        disc = c1 * c1 - Cyclo12.of(4) * c2 * c0
        s = exact_sqrt(disc, precision_bits)
        if s is None:
            return roots, False
        inv = (Cyclo12.of(2) * c2).inverse()
        roots.append((-c1 + s) * inv)
        roots.append((-c1 - s) * inv)
        return roots, True
    for z, _mult in _aberth(uni_embed(work, precision_bits + 32), precision_bits, 1e-6):
        cand = recognize(z, precision_bits)
        if cand is None:
            continue
        while uni_degree(work) >= 1 and uni_eval(work, cand).is_zero():
            roots.append(cand)
            work = _divide_out_root(work, cand)
    return roots, uni_degree(work) == 0


# ----- restrictions of families -----


@dataclass(frozen=True)
class RestrictedRoots:
    """Common parameters of one family on a tuple of forms."""

    family: FixedPointFamily
    entire_family: bool
    parameters: tuple[Cyclo12, ...]
    excluded_parameters: tuple[Cyclo12, ...]
    complete: bool

    @property
    def all_parameters(self) -> tuple[Cyclo12, ...]:
        return self.parameters + self.excluded_parameters


def restricted_family_roots(
    fs, family: FixedPointFamily, precision_bits: int = 192
) -> RestrictedRoots:
    """Parameters at which every form vanishes along a one-parameter family.

    Restricts each form to the family, takes the gcd of the nonzero
    restrictions, and extracts its exact roots; parameters hitting the
    family's excluded set are reported separately (those members carry
    extra coordinate coincidences).
    """
    if family.param_count != 1:
        raise ValueError("restricted roots need a one-parameter family")
    restrictions = [family.restrict(f) for f in fs]
    nonzero = [r for r in restrictions if uni_degree(r) is not None]
    if not nonzero:
        return RestrictedRoots(family, True, (), (), True)
    common = nonzero[0]
    for r in nonzero[1:]:
        common = uni_gcd(common, r)
        if uni_degree(common) == 0:
            break
    if uni_degree(common) == 0:
        return RestrictedRoots(family, False, (), (), True)
    raw, complete = exact_uni_roots(common, precision_bits)
    seen: list[Cyclo12] = []
    for r in raw:
        if not any(r == s for s in seen):
            seen.append(r)
    allowed = tuple(
        r for r in seen if not any(r == bad for bad in family.excluded)
    )
    shut = tuple(r for r in seen if any(r == bad for bad in family.excluded))
    return RestrictedRoots(family, False, allowed, shut, complete)


# ----- numeric point utilities -----


def jacobian_score(fs, coords, precision_bits: int = 128) -> float:
    """Scaled smallest singular value of the Jacobian at a point.

    The column of the largest-magnitude coordinate is dropped (it is
    determined by homogeneity) and rows are normalized, so the score is
    invariant under rescaling of the point and of each form.
    """
    fs = tuple(fs)
    with mp.workprec(precision_bits + 16):
        coords = [mp.mpc(c) for c in coords]
        ncols = len(coords)
        drop = max(range(ncols), key=lambda i: abs(coords[i]))
        rows = []
        for f in fs:
            grad = [
                f.partial_derivative(i).eval_mpc(coords, precision_bits + 16)
                for i in range(ncols)
            ]
            row = [grad[i] for i in range(ncols) if i != drop]
            norm = mp.sqrt(sum((abs(v) ** 2 for v in row), mp.mpf(0)))
            if norm == 0:
                return 0.0
            rows.append([v / norm for v in row])
        matrix = mp.matrix(rows)
        sigma = mp.svd_c(matrix, compute_uv=False)
        return float(min(sigma))


def _newton_polish(fs, coords, precision_bits: int):
    """Sharpen a near-solution in the chart of its largest coordinate."""
    fs = tuple(fs)
    with mp.workprec(precision_bits + 16):
        coords = [mp.mpc(c) for c in coords]
        ncols = len(coords)
        fix = max(range(ncols), key=lambda i: abs(coords[i]))
        free = [i for i in range(ncols) if i != fix]
        partials = [
            [f.partial_derivative(i) for i in range(ncols)] for f in fs
        ]
        for _ in range(6):
            values = mp.matrix(
                [f.eval_mpc(coords, precision_bits + 16) for f in fs]
            )
            if max(abs(v) for v in values) < mp.mpf(2) ** (-precision_bits - 4):
                break
            jac = mp.matrix(len(fs), len(free))
            for r in range(len(fs)):
                for c, i in enumerate(free):
                    jac[r, c] = partials[r][i].eval_mpc(coords, precision_bits + 16)
            try:
                delta = mp.lu_solve(jac, values)
            except (ZeroDivisionError, ValueError):
                break
            for c, i in enumerate(free):
                coords[i] = coords[i] - delta[c]
        return [+c for c in coords]


def _try_exact(point: ProjPointNumeric, fs, precision_bits: int):
    """Lift a numeric point to exact coordinates when they verify.

    Recognition is retried at decreasing precision because clustered or
    rank-deficient points carry only part of the working accuracy; the
    exact evaluation of every form is the acceptance test, so a false
    recognition at low precision is harmless.
    """
    coords = point.coords
    with mp.workprec(precision_bits):
        pivot = max(range(len(coords)), key=lambda i: abs(coords[i]))
        inv = 1 / coords[pivot]
        scaled = [+(c * inv) for c in coords]
    ladder = [precision_bits, (2 * precision_bits) // 3, precision_bits // 2, 48]
    for bits in ladder:
        exact = []
        for c in scaled:
            cand = recognize(c, bits)
            if cand is None:
                break
            exact.append(cand)
        if len(exact) != len(scaled):
            continue
        try:
            candidate = ProjPointExact.make(tuple(exact))
        except ValueError:
            continue
        if all(f.evaluate_exact(candidate.coords).is_zero() for f in fs):
            return candidate
    return None


def _residual(fs, coords, precision_bits: int) -> float:
    with mp.workprec(precision_bits + 16):
        worst = mp.mpf(0)
        for f in fs:
            value = abs(f.eval_mpc(coords, precision_bits + 16))
            scale = f.coeff_norm(precision_bits + 16)
            worst = max(worst, value / scale)
        return float(worst)


# ----- projection solve for ternary pairs -----


_SHEAR_GRID = [
    (0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2),
    (2, 2), (3, 0), (0, 3), (3, 1), (1, 3), (3, 2), (2, 3), (3, 3),
]


def _binary_eval_list(poly: MultiPoly, precision_bits: int):
    """Embedded (x-exponent, z-exponent, coefficient) triples."""
    out = []
    for exps, coeff in sorted(poly.terms.items()):
        out.append((exps[0], exps[2], to_mpc(coeff, precision_bits)))
    return out


def _eval_binary(triples, x, z):
    acc = mp.mpc(0)
    for ex, ez, c in triples:
        acc += c * x ** ex * z ** ez
    return acc


def _ternary_core(F: MultiPoly, G: MultiPoly, options: SolveOptions):
    """All intersection points of two coprime ternary forms.

    Shears coordinates so the projection center misses both curves,
    interpolates the binary resultant from unit-circle samples, splits
    it into projective roots with multiplicities, and intersects the
    two fiber root sets over each root.  Returns numeric points with
    multiplicities, notes, and a completeness flag.
    """
    d = F.degree()
    e = G.degree()
    bezout = d * e
    prec = options.precision_bits
    work = prec + 64
    notes: list[str] = []
    shear = None
    for lam, mu in _SHEAR_GRID:
        probe = (Cyclo12.of(lam), _ONE, Cyclo12.of(mu))
        if (
            not F.evaluate_exact(probe).is_zero()
            and not G.evaluate_exact(probe).is_zero()
        ):
            shear = (lam, mu)
            break
    if shear is None:
        raise DegenerateSystemError(
            "no projection center found off both curves"
        )
    lam, mu = shear
    offsets = {0: lam, 2: mu}
    F2 = _shear_from(F, 1, offsets)
    G2 = _shear_from(G, 1, offsets)
    fc = coeffs_in_var(F2, 1)
    gc = coeffs_in_var(G2, 1)
    with mp.workprec(work):
        ftriples = {k: _binary_eval_list(v, work) for k, v in fc.items()}
        gtriples = {k: _binary_eval_list(v, work) for k, v in gc.items()}
        size = d + e

        def sylvester_sample(x, z):
            fvals = [
                _eval_binary(ftriples[k], x, z) if k in ftriples else mp.mpc(0)
                for k in range(d + 1)
            ]
            gvals = [
                _eval_binary(gtriples[k], x, z) if k in gtriples else mp.mpc(0)
                for k in range(e + 1)
            ]
            rows = []
            for i in range(e):
                row = [mp.mpc(0)] * size
                for k in range(d + 1):
                    row[i + k] = fvals[d - k]
                rows.append(row)
            for i in range(d):
                row = [mp.mpc(0)] * size
                for k in range(e + 1):
                    row[i + k] = gvals[e - k]
                rows.append(row)
            return mp.det(mp.matrix(rows))

        count = bezout + 1
        samples = [
            sylvester_sample(mp.expjpi(mp.mpf(2 * j) / count), mp.mpc(1))
            for j in range(count)
        ]
        rcoeffs = []
        for k in range(count):
            acc = mp.mpc(0)
            for j in range(count):
                acc += samples[j] * mp.expjpi(mp.mpf(-2 * j * k) / count)
            rcoeffs.append(acc / count)
        scale = max(abs(c) for c in rcoeffs)
        norm_bound = (F2.coeff_norm(work) + 1) ** e * (G2.coeff_norm(work) + 1) ** d
        if scale < norm_bound * mp.mpf(2) ** (-(prec + 24)):
            raise CommonFactorError(
                "inputs share a common factor (vanishing resultant)"
            )
        tiny = scale * mp.mpf(2) ** (-(prec // 2) - 8)
        top = bezout
        while top > 0 and abs(rcoeffs[top]) < tiny:
            top -= 1
        infinity_mult = bezout - top
        finite = rcoeffs[: top + 1]
    projection = _aberth(finite, prec + 32, options.cluster_radius)
    if infinity_mult:
        projection = projection + [(None, infinity_mult)]

    raw: list[tuple[ProjPointNumeric, int]] = []
    complete = True
    with mp.workprec(work):
        for t0, mult in projection:
            if t0 is None:
                x0, z0 = mp.mpc(1), mp.mpc(0)
            else:
                x0, z0 = mp.mpc(t0), mp.mpc(1)
            fy = [
                _eval_binary(ftriples[k], x0, z0) if k in ftriples else mp.mpc(0)
                for k in range(d + 1)
            ]
            gy = [
                _eval_binary(gtriples[k], x0, z0) if k in gtriples else mp.mpc(0)
                for k in range(e + 1)
            ]
            froots = _aberth(fy, prec, options.cluster_radius)
            groots = _aberth(gy, prec, options.cluster_radius)
            commons = []
            for yf, mf in froots:
                best = None
                for yg, mg in groots:
                    gap = abs(yf - yg)
                    if gap < options.cluster_radius * (1 + abs(yf)):
                        if best is None or gap < best[0]:
                            best = (gap, yg, mg)
                if best is not None:
                    commons.append(((yf + best[1]) / 2, min(mf, best[2])))
            if not commons:
                notes.append(
                    f"no fiber point found over projection root {mp.nstr(x0, 8)}"
                )
                complete = False
                continue
            if len(commons) == 1:
                assigned = [mult]
            else:
                base = [m for _, m in commons]
                short = mult - sum(base)
                if short == 0:
                    assigned = base
                elif short > 0:
                    base[0] += short
                    assigned = base
                else:
                    assigned = [1] * len(commons)
                    extra = mult - len(commons)
                    if extra > 0:
                        assigned[0] += extra
                    else:
                        notes.append(
                            "fiber multiplicities disagree with the projection"
                        )
                        complete = False
            for (y0, _), m in zip(commons, assigned):
                coords = _unshear_coords((x0, y0, z0), 1, offsets)
                raw.append(
                    (
                        ProjPointNumeric.make(
                            coords, prec, options.match_tolerance
                        ),
                        m,
                    )
                )
    return raw, notes, complete


# ----- solved points and reports -----


@dataclass(frozen=True)
class SolvedPoint:
    """One intersection point with its certificates."""

    numeric: ProjPointNumeric
    exact: ProjPointExact | None
    multiplicity: int
    residual: float
    jacobian_score: float
    stabilizer_name: str
    orbit_id: int
    is_real: bool
    transverse: bool

    def coords_json(self) -> list[str]:
        if self.exact is not None:
            return [render_exact(c) for c in self.exact.coords]
        with mp.workprec(self.numeric.precision_bits):
            return [mp.nstr(c, 17) for c in self.numeric.coords]

    def to_json(self) -> dict:
        return {
            "coords": self.coords_json(),
            "exact": self.exact is not None,
            "stabilizer": self.stabilizer_name,
            "orbit_id": self.orbit_id,
            "multiplicity": self.multiplicity,
            "residual": self.residual,
            "jacobian_score": self.jacobian_score,
            "is_real": self.is_real,
        }


@dataclass(frozen=True)
class IntersectionReport:
    """Full verdict for one symmetric intersection."""

    space: str
    degrees: tuple[int, ...]
    bezout: int
    points: tuple[SolvedPoint, ...]
    orbit_type: OrbitType | None
    transverse: bool
    obstructions: tuple[Obstruction, ...]
    real_count: int
    complete: bool
    precision_bits: int
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "degrees": list(self.degrees),
            "bezout": self.bezout,
            "transverse": self.transverse,
            "obstruction": (
                [o.to_json() for o in self.obstructions]
                if self.obstructions
                else None
            ),
            "orbit_type": None if self.orbit_type is None else self.orbit_type.render(),
            "real_count": self.real_count,
            "complete": self.complete,
            "precision_bits": self.precision_bits,
            "notes": list(self.notes),
            "points": [p.to_json() for p in self.points],
        }


def _exact_obstruction_scan(fs, ambient_dim: int, precision_bits: int):
    """Exact certificates at cataloged special points on every form."""
    certs: list[Obstruction] = []
    notes: list[str] = []
    for fam in full_catalog(ambient_dim):
        if fam.param_count == 2:
            continue
        if fam.param_count == 0:
            point = fam.instantiate()
            if all(f.evaluate_exact(point.coords).is_zero() for f in fs):
                cert = obstruction(point, fs)
                if cert.is_obstruction:
                    certs.append(cert)
            continue
        found = restricted_family_roots(fs, fam, precision_bits)
        if found.entire_family:
            notes.append(
                f"family {fam.pattern_text()} lies inside every input"
            )
            continue
        for param in found.all_parameters:
            point = fam.instantiate(a=param, allow_excluded=True)
            cert = obstruction(point, fs)
            if cert.is_obstruction:
                certs.append(cert)
        if not found.complete:
            notes.append(
                f"family {fam.pattern_text()} has uncertified common parameters"
            )
    unique: list[Obstruction] = []
    seen = set()
    for cert in certs:
        key = (cert.kind, str(cert.point))
        if key not in seen:
            seen.add(key)
            unique.append(cert)
    return unique, notes


def _assemble_report(
    space: str,
    fs,
    degrees: tuple[int, ...],
    raw,
    options: SolveOptions,
    notes: list[str],
    complete: bool,
) -> IntersectionReport:
    fs = tuple(fs)
    prec = options.precision_bits
    bezout = 1
    for d in degrees:
        bezout *= d
    nf = len(fs)

    merged: list[list] = []
    for point, mult in raw:
        numeric = point.embed(prec) if isinstance(point, ProjPointExact) else point
        hit = None
        for entry in merged:
            if entry[1].matches(numeric, options.match_tolerance):
                hit = entry
                break
        if hit is None:
            merged.append([point, numeric, mult])
        else:
            hit[2] += mult

    entries = []
    for point, numeric, mult in merged:
        if isinstance(point, ProjPointExact):
            exact = point
        else:
            if mult == 1:
                polished = _newton_polish(fs, numeric.coords, prec)
                numeric = ProjPointNumeric.make(
                    polished, prec, options.match_tolerance
                )
            exact = None
        score = jacobian_score(fs, numeric.coords, prec)
        if exact is None:
            # recognition is costly and only special or suspect points
            # can carry exact certificates; generic free-orbit points
            # stay numeric
            special = (
                mult > 1
                or score < options.jacobian_threshold * 100
                or stabilizer(numeric)[1].name != "Trivial"
            )
            if special:
                exact = _try_exact(numeric, fs, prec)
        if exact is not None:
            numeric = exact.embed(prec)
            score = jacobian_score(fs, numeric.coords, prec)
        residual = (
            0.0 if exact is not None else _residual(fs, numeric.coords, prec)
        )
        if exact is not None:
            grads = [gradient_at(f, exact) for f in fs]
            full_rank = exact_rank(grads) == nf
        else:
            if options.jacobian_threshold <= score < options.jacobian_threshold * 100:
                score = jacobian_score(fs, numeric.coords, 2 * prec)
            full_rank = score >= options.jacobian_threshold
        transverse_here = mult == 1 and full_rank
        entries.append(
            {
                "numeric": numeric,
                "exact": exact,
                "mult": mult,
                "residual": residual,
                "score": score,
                "transverse": transverse_here,
            }
        )

    representative = [
        e["exact"] if e["exact"] is not None else e["numeric"] for e in entries
    ]
    orbit_type = None
    orbit_ids = [-1] * len(entries)
    stab_names = []
    try:
        orbit_type, orbit_ids, stab_names = decompose_orbits(representative)
    except ValueError as exc:
        notes = notes + [f"orbit decomposition failed: {exc}"]
        complete = False
        stab_names = [stabilizer(p)[1].name for p in representative]

    certs, scan_notes = _exact_obstruction_scan(
        fs, len(degrees) if space == "P3" else 2, options.precision_bits
    )
    notes = notes + scan_notes
    for entry in entries:
        if entry["exact"] is not None and not entry["transverse"]:
            cert = obstruction(entry["exact"], fs)
            if cert.is_obstruction and not any(
                c.kind == cert.kind and c.point == cert.point for c in certs
            ):
                certs.append(cert)

    total = sum(e["mult"] for e in entries)
    if total != bezout:
        notes = notes + [
            f"multiplicities sum to {total}, expected {bezout}"
        ]
        complete = False
    transverse = (
        complete
        and total == bezout
        and all(e["transverse"] for e in entries)
        and not certs
    )
    real_count = 0
    for entry in entries:
        if entry["exact"] is not None:
            if entry["exact"].is_real():
                real_count += 1
        elif entry["numeric"].is_real(options.match_tolerance):
            real_count += 1

    order = sorted(
        range(len(entries)),
        key=lambda i: (orbit_ids[i], str(entries[i]["numeric"])),
    )
    points = []
    for i in order:
        entry = entries[i]
        is_real = (
            entry["exact"].is_real()
            if entry["exact"] is not None
            else entry["numeric"].is_real(options.match_tolerance)
        )
        points.append(
            SolvedPoint(
                numeric=entry["numeric"],
                exact=entry["exact"],
                multiplicity=entry["mult"],
                residual=entry["residual"],
                jacobian_score=entry["score"],
                stabilizer_name=stab_names[i] if stab_names else "",
                orbit_id=orbit_ids[i],
                is_real=is_real,
                transverse=entry["transverse"],
            )
        )
    return IntersectionReport(
        space=space,
        degrees=tuple(degrees),
        bezout=bezout,
        points=tuple(points),
        orbit_type=orbit_type,
        transverse=transverse,
        obstructions=tuple(certs),
        real_count=real_count,
        complete=complete,
        precision_bits=prec,
        notes=tuple(notes),
    )


# ----- validation helpers -----


def _validate_form(f: MultiPoly, num_vars: int, label: str) -> int:
    if f.num_vars != num_vars:
        raise ValueError(f"{label} must use {num_vars} variables")
    if f.is_zero():
        raise ValueError(f"{label} is zero")
    if not f.is_homogeneous():
        raise ValueError(f"{label} is not homogeneous")
    if not f.is_symmetric():
        raise ValueError(f"{label} is not symmetric")
    return f.degree()


def _proportional(f: MultiPoly, g: MultiPoly) -> bool:
    if set(f.terms) != set(g.terms):
        return False
    exps = next(iter(f.terms))
    ratio = g.terms[exps] * f.terms[exps].inverse()
    return all(
        (g.terms[e] - ratio * c).is_zero() for e, c in f.terms.items()
    )


def _elem_coeff_rows(forms) -> list[tuple[Cyclo12, ...]]:
    support: list[tuple] = []
    vectors = []
    basis_forms = [to_elementary_basis(f) for f in forms]
    for bf in basis_forms:
        for exps, _ in bf.terms:
            if exps not in support:
                support.append(exps)
    support.sort()
    for bf in basis_forms:
        lookup = dict(bf.terms)
        vectors.append(tuple(lookup.get(e, _ZERO) for e in support))
    return vectors


# ----- curve pairs -----


def _solve_line_case(f: MultiPoly, g: MultiPoly, options: SolveOptions):
    """Intersect the symmetric line with a symmetric curve, exactly.

    The only symmetric ternary linear form vanishes where the
    coordinate sum does, so substituting Y = -X - Z turns the curve
    into a binary form whose projective roots are the answer.
    """
    e = g.degree()
    minus = MultiPoly(3, {(1, 0, 0): -_ONE, (0, 0, 1): -_ONE})
    restricted = substitute_variable(g, 1, minus)
    if restricted.is_zero():
        raise CommonFactorError("the curve contains the symmetric line")
    coeffs: list[Cyclo12] = [_ZERO] * (e + 1)
    for exps, coeff in restricted.terms.items():
        coeffs[exps[0]] = coeffs[exps[0]] + coeff
    coeffs = uni_trim(coeffs)
    top = uni_degree(coeffs)
    infinity_mult = e - top
    prec = options.precision_bits
    raw = []
    if top >= 1:
        for t0, mult in _aberth(
            uni_embed(coeffs, prec + 32), prec, options.cluster_radius
        ):
            with mp.workprec(prec + 16):
                coords = (mp.mpc(t0), -mp.mpc(t0) - 1, mp.mpc(1))
            raw.append(
                (ProjPointNumeric.make(coords, prec, options.match_tolerance), mult)
            )
    if infinity_mult:
        point = ProjPointExact.make((_ONE, -_ONE, _ZERO))
        raw.append((point, infinity_mult))
    return raw, [], True


def solve_p2(
    f: MultiPoly, g: MultiPoly, options: SolveOptions | None = None
) -> IntersectionReport:
    """Intersect two symmetric ternary forms and certify the verdict."""
    options = options or SolveOptions()
    d = _validate_form(f, 3, "first input")
    e = _validate_form(g, 3, "second input")
    if d > e:
        f, g = g, f
        d, e = e, d
    if d == e and _proportional(f, g):
        raise CommonFactorError("inputs are proportional")
    if d == 1:
        raw, notes, complete = _solve_line_case(f, g, options)
    else:
        raw, notes, complete = _ternary_core(f, g, options)
    return _assemble_report("P2", (f, g), (d, e), raw, options, notes, complete)


# ----- surface triples -----


_P3_SHEAR_GRID = [
    (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1),
    (0, 1, 1), (1, 1, 1), (2, 0, 0), (0, 2, 0), (0, 0, 2), (2, 1, 0),
    (1, 2, 0), (2, 1, 1), (1, 2, 1), (2, 2, 1), (3, 1, 0), (1, 3, 2),
]


def _restrict_last_zero(f: MultiPoly) -> MultiPoly:
    """Restriction to the vanishing of the last coordinate, one variable fewer."""
    terms = {}
    for exps, coeff in f.terms.items():
        if exps[-1] == 0:
            terms[exps[:-1]] = coeff
    return MultiPoly(f.num_vars - 1, terms)


def _univariate_from(poly: MultiPoly, var: int) -> UniPoly:
    """Read a polynomial supported on one variable as a UniPoly."""
    out: list[Cyclo12] = []
    for exps, coeff in poly.terms.items():
        power = exps[var]
        if sum(exps) != power:
            raise ValueError("polynomial involves other variables")
        while len(out) <= power:
            out.append(_ZERO)
        out[power] = coeff
    return uni_trim(out)


def _p3_chain(forms, options: SolveOptions):
    """Elimination-chain solve for a surface triple in general position."""
    f1, f2, f3 = forms
    prec = options.precision_bits
    notes: list[str] = []
    complete = True
    chosen = None
    for alpha, beta, gamma in _P3_SHEAR_GRID:
        probe = (Cyclo12.of(alpha), Cyclo12.of(beta), _ONE, Cyclo12.of(gamma))
        if all(not fi.evaluate_exact(probe).is_zero() for fi in forms):
            offsets = {0: alpha, 1: beta, 3: gamma}
            sheared = [_shear_from(fi, 2, offsets) for fi in forms]
            charts = [s.dehomogenize(3) for s in sheared]
            r1 = sylvester_resultant(charts[0], charts[1], 2)
            r2 = sylvester_resultant(charts[0], charts[2], 2)
            if r1.is_zero() or r2.is_zero():
                raise DegenerateSystemError(
                    "two inputs share a component"
                )
            resultant = sylvester_resultant(r1, r2, 1)
            if not resultant.is_zero():
                chosen = (offsets, sheared, charts, r1, r2, resultant)
                break
    if chosen is None:
        raise DegenerateSystemError(
            "elimination collapses for every tried projection"
        )
    offsets, sheared, charts, r1, r2, resultant = chosen
    xpoly = _univariate_from(resultant, 0)

    candidates = []
    with mp.workprec(prec + 48):
        for x0, _ in _aberth(
            uni_embed(xpoly, prec + 48), prec, options.cluster_radius
        ):
            x0 = mp.mpc(x0)
            r1y = [
                v.eval_mpc((x0, 0, 0, 0), prec + 48)
                for v in _coeff_list(r1, 1)
            ]
            r2y = [
                v.eval_mpc((x0, 0, 0, 0), prec + 48)
                for v in _coeff_list(r2, 1)
            ]
            if max(abs(c) for c in r1y) == 0 or max(abs(c) for c in r2y) == 0:
                continue
            y_f = _aberth(r1y, prec, options.cluster_radius)
            y_g = _aberth(r2y, prec, options.cluster_radius)
            for y0, _ in y_f:
                if not any(
                    abs(y0 - y1) < options.cluster_radius * (1 + abs(y0))
                    for y1, _ in y_g
                ):
                    continue
                fibers = []
                degenerate_fiber = False
                for chart in charts:
                    zc = [
                        v.eval_mpc((x0, y0, 0, 0), prec + 48)
                        for v in _coeff_list(chart, 2)
                    ]
                    if max(abs(c) for c in zc) == 0:
                        degenerate_fiber = True
                        break
                    fibers.append(_aberth(zc, prec, options.cluster_radius))
                if degenerate_fiber:
                    notes.append("a fiber polynomial degenerated; skipped")
                    complete = False
                    continue
                for z0, _ in fibers[0]:
                    near = all(
                        any(
                            abs(z0 - z1) < options.cluster_radius * (1 + abs(z0))
                            for z1, _ in fiber
                        )
                        for fiber in fibers[1:]
                    )
                    if near:
                        candidates.append((x0, y0, mp.mpc(z0)))

    plane_raw = []
    plane_forms = [_restrict_last_zero(s) for s in sheared]
    live = [(i, p) for i, p in enumerate(plane_forms) if not p.is_zero()]
    if len(live) < 2:
        notes.append("the triple degenerates on the far plane")
        complete = False
    else:
        pairs = [(a, b) for a in range(len(live)) for b in range(a + 1, len(live))]
        solved_pair = None
        for a, b in pairs:
            try:
                solved_pair = (
                    _ternary_core(live[a][1], live[b][1], options),
                    {live[a][0], live[b][0]},
                )
                break
            except CommonFactorError:
                continue
        if solved_pair is None:
            notes.append("every far-plane pair shares a factor")
            complete = False
        else:
            (pair_raw, pair_notes, pair_complete), used = solved_pair
            notes.extend(pair_notes)
            complete = complete and pair_complete
            rest = [p for i, p in enumerate(plane_forms) if i not in used and not p.is_zero()]
            for point, mult in pair_raw:
                keep = True
                with mp.workprec(prec + 16):
                    for other in rest:
                        value = abs(other.eval_mpc(point.coords, prec + 16))
                        if value > options.residual_reject * (other.coeff_norm(prec + 16)):
                            keep = False
                            break
                if keep:
                    plane_raw.append((point.coords, mult))

    raw = []
    seen: list[ProjPointNumeric] = []
    with mp.workprec(prec + 16):
        finite = [
            ((x0, y0, z0, mp.mpc(1)), 1) for x0, y0, z0 in candidates
        ]
        plane4 = [
            (
                (c[0], c[1], c[2], mp.mpc(0)),
                mult,
            )
            for c, mult in plane_raw
        ]
        for chart_coords, mult in finite + plane4:
            original = _unshear_coords(chart_coords, 2, offsets)
            polished = _newton_polish(forms, original, prec)
            if _residual(forms, polished, prec) > 1e-14:
                continue
            point = ProjPointNumeric.make(polished, prec, options.match_tolerance)
            duplicate = False
            for other in seen:
                if point.matches(other, options.match_tolerance):
                    duplicate = True
                    break
            if duplicate:
                continue
            seen.append(point)
            raw.append((point, mult))
    return raw, notes, complete


def _coeff_list(poly: MultiPoly, var: int) -> list[MultiPoly]:
    table = coeffs_in_var(poly, var)
    return [table.get(k, MultiPoly.zero(poly.num_vars)) for k in range(max(table) + 1)]


def solve_p3(
    f: MultiPoly, g: MultiPoly, h: MultiPoly, options: SolveOptions | None = None
) -> IntersectionReport:
    """Intersect three symmetric quaternary forms and certify the verdict."""
    options = options or SolveOptions()
    degrees = [
        _validate_form(f, 4, "first input"),
        _validate_form(g, 4, "second input"),
        _validate_form(h, 4, "third input"),
    ]
    forms = [x for _, x in sorted(zip(degrees, (f, g, h)), key=lambda p: p[0])]
    degrees.sort()
    by_degree: dict[int, list[MultiPoly]] = {}
    for d, x in zip(degrees, forms):
        by_degree.setdefault(d, []).append(x)
    for d, group in by_degree.items():
        if len(group) >= 2 and exact_rank(_elem_coeff_rows(group)) < len(group):
            raise DegenerateSystemError(
                f"the degree-{d} inputs are linearly dependent"
            )
    d1, d2, d3 = degrees
    if d1 == 1:
        minus = MultiPoly(
            4, {(1, 0, 0, 0): -_ONE, (0, 1, 0, 0): -_ONE, (0, 0, 1, 0): -_ONE}
        )
        ternaries = []
        for x, deg in zip(forms[1:], degrees[1:]):
            substituted = substitute_variable(x, 3, minus)
            restricted = _restrict_last_zero_slot(substituted)
            if restricted.is_zero():
                raise DegenerateSystemError(
                    f"the degree-{deg} input vanishes on the symmetric plane"
                )
            ternaries.append(restricted)
        try:
            raw3, notes, complete = _ternary_core(
                ternaries[0], ternaries[1], options
            )
        except CommonFactorError as exc:
            raise DegenerateSystemError(
                f"the two larger inputs meet the symmetric plane in a "
                f"common curve ({exc})"
            ) from exc
        raw = []
        prec = options.precision_bits
        with mp.workprec(prec + 16):
            for point, mult in raw3:
                x0, y0, z0 = point.coords
                coords = (x0, y0, z0, -x0 - y0 - z0)
                raw.append(
                    (
                        ProjPointNumeric.make(coords, prec, options.match_tolerance),
                        mult,
                    )
                )
    else:
        raw, notes, complete = _p3_chain(forms, options)
    return _assemble_report(
        "P3", tuple(forms), tuple(degrees), raw, options, notes, complete
    )


def _restrict_last_zero_slot(f: MultiPoly) -> MultiPoly:
    """Drop an unused last variable slot."""
    terms = {}
    for exps, coeff in f.terms.items():
        if exps[-1] != 0:
            raise ValueError("last variable still occurs")
        terms[exps[:-1]] = coeff
    return MultiPoly(f.num_vars - 1, terms)
