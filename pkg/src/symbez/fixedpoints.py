"""Catalogs of projective points with prescribed symmetry, and the
obstructions they impose on transverse intersections.

Each catalog entry is a family of points fixed (projectively) by a
subgroup class, written as coordinate monomials in up to two free
parameters.  A coordinate is a triple (coeff, apow, cpow) standing for
coeff * a^apow * c^cpow, so [a : -a : -1 : 1] becomes
((1,1,0), (-1,1,0), (-1,0,0), (1,0,0)).

Admissible families are the ones whose generic member can appear in a
transverse symmetric intersection; the rest force a singular point, a
shared tangent line, or a Jacobian rank drop whenever they lie on every
hypersurface.  obstruction() checks a concrete point against a concrete
tuple of forms and returns an exact certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Cyclo12, OMEGA, OMEGA2, I, ZETA, render_exact
from .group import ProjPointExact, class_by_name
from .poly import MultiPoly, UniPoly, uni_degree, uni_trim

_ZERO = Cyclo12.of(0)
_ONE = Cyclo12.of(1)
_NEG = Cyclo12.of(-1)

# Coordinate monomials: (coefficient, power of a, power of c).
PatternCoord = tuple[Cyclo12, int, int]

_A: PatternCoord = (_ONE, 1, 0)
_NEG_A: PatternCoord = (_NEG, 1, 0)
_A2: PatternCoord = (_ONE, 2, 0)
_A3: PatternCoord = (_ONE, 3, 0)
_C: PatternCoord = (_ONE, 0, 1)


def _const(value) -> PatternCoord:
    return (Cyclo12.of(value), 0, 0)


def _coord_text(coord: PatternCoord) -> str:
    coeff, apow, cpow = coord
    if apow == 0 and cpow == 0:
        return render_exact(coeff)
    parts = []
    if apow:
        parts.append("a" if apow == 1 else f"a^{apow}")
    if cpow:
        parts.append("c" if cpow == 1 else f"c^{cpow}")
    var = "*".join(parts)
    if coeff == _ONE:
        return var
    if coeff == _NEG:
        return "-" + var
    return f"{render_exact(coeff)}*{var}"


@dataclass(frozen=True)
class FixedPointFamily:
    """Points fixed by every element of one subgroup class."""

    ambient_dim: int
    stabilizer_name: str
    pattern: tuple[PatternCoord, ...]
    admissible: bool
    excluded: tuple[Cyclo12, ...] = ()
    tag: str = ""

    @property
    def group_name(self) -> str:
        return "S3" if self.ambient_dim == 2 else "S4"

    @property
    def param_count(self) -> int:
        if any(cpow for _, _, cpow in self.pattern):
            return 2
        if any(apow for _, apow, _ in self.pattern):
            return 1
        return 0

    def pattern_text(self) -> str:
        return "[" + " : ".join(_coord_text(c) for c in self.pattern) + "]"

    def instantiate(self, a=None, c=None, allow_excluded: bool = False) -> ProjPointExact:
        """The member at the given parameter values, canonicalized.

        Excluded parameters are refused by default; passing
        allow_excluded builds the degenerate member anyway (it exists
        as a point, just with extra coordinate coincidences).
        """
        need = self.param_count
        if need >= 1 and a is None:
            raise ValueError(f"family {self.pattern_text()} needs parameter a")
        if need == 2 and c is None:
            raise ValueError(f"family {self.pattern_text()} needs parameter c")
        a = Cyclo12.of(0) if a is None else Cyclo12.of(a)
        c = Cyclo12.of(0) if c is None else Cyclo12.of(c)
        if not allow_excluded and any(a == bad for bad in self.excluded):
            raise ValueError(
                f"parameter {render_exact(a)} is excluded for {self.pattern_text()}"
            )
        coords = []
        for coeff, apow, cpow in self.pattern:
            value = coeff
            for _ in range(apow):
                value = value * a
            for _ in range(cpow):
                value = value * c
            coords.append(value)
        return ProjPointExact.make(tuple(coords))

    def restrict(self, f: MultiPoly) -> UniPoly:
        """f composed with the pattern, as a polynomial in a."""
        if self.param_count != 1:
            raise ValueError("restriction needs exactly one free parameter")
        if f.num_vars != self.ambient_dim + 1:
            raise ValueError("form and family live in different spaces")
        out: dict[int, Cyclo12] = {}
        for exps, coeff in f.terms.items():
            value = coeff
            apow = 0
            for idx, e in enumerate(exps):
                base, ap, _ = self.pattern[idx]
                for _ in range(e):
                    value = value * base
                apow += ap * e
            out[apow] = out.get(apow, _ZERO) + value
        coeffs = [_ZERO] * (max(out, default=0) + 1)
        for power, value in out.items():
            coeffs[power] = value
        return uni_trim(coeffs)


def _fam(ambient_dim, stab, pattern, admissible, excluded=(), tag=""):
    coords = tuple(
        c if isinstance(c, tuple) else (Cyclo12.of(c), 0, 0) for c in pattern
    )
    return FixedPointFamily(
        ambient_dim=ambient_dim,
        stabilizer_name=stab,
        pattern=coords,
        admissible=admissible,
        excluded=tuple(Cyclo12.of(x) for x in excluded),
        tag=tag,
    )


# Ternary forms: families fixed by each S3 subgroup class.  Points with
# all coordinates distinct and a free S3-orbit belong to "Trivial" and
# are not cataloged.
CATALOG_P2: tuple[FixedPointFamily, ...] = (
    _fam(2, "C2", [_NEG, _const(1), _const(0)], True,
         tag="a = -1 branch of a^2 = 1 on [a : 1 : 0]"),
    _fam(2, "C2", [_const(1), _const(1), _const(0)], False,
         tag="a = 1 branch of a^2 = 1 on [a : 1 : 0]; shared tangent Z = 0"),
    _fam(2, "C2", [_A, _A, _const(1)], False,
         tag="diagonal family; shared tangent X + Y - 2aZ = 0"),
    _fam(2, "C3", [OMEGA, OMEGA2, _const(1)], True,
         tag="b = omega^2 branch of b^3 = 1 on [b^2 : b : 1]"),
    _fam(2, "C3", [OMEGA2, OMEGA, _const(1)], True,
         tag="b = omega branch of b^3 = 1 on [b^2 : b : 1]"),
    _fam(2, "C3", [_const(1), _const(1), _const(1)], False,
         tag="b = 1 branch of b^3 = 1; singular for symmetric pairs"),
    _fam(2, "S3", [_const(1), _const(1), _const(1)], False,
         tag="unique fully symmetric point; singular for symmetric pairs"),
)

# Quaternary forms: families fixed by each S4 subgroup class.  Every
# inadmissible family below has a repeated coordinate at all parameter
# values, which forces a Jacobian rank drop for symmetric triples.
CATALOG_P3: tuple[FixedPointFamily, ...] = (
    _fam(3, "C2o", [_A, _A, _C, _const(1)], False,
         tag="two free parameters; repeated first pair"),
    _fam(3, "C2o", [_A, _A, _const(1), _const(0)], False,
         tag="repeated first pair on the W = 0 plane"),
    _fam(3, "C2o", [_const(-1), _const(1), _const(0), _const(0)], False,
         tag="repeated zero pair"),
    _fam(3, "C2o", [_const(1), _const(1), _const(0), _const(0)], False,
         tag="repeated pairs"),
    _fam(3, "C2e", [_A, _NEG_A, _NEG, _const(1)], True,
         excluded=(0, 1, -1),
         tag="free parameter; a in {0, 1, -1} excluded (repeated coordinates)"),
    _fam(3, "C2e", [_A, _A, _const(1), _const(1)], False,
         tag="repeated pairs"),
    _fam(3, "C2e", [_const(-1), _const(1), _const(0), _const(0)], False,
         tag="repeated zero pair"),
    _fam(3, "C2e", [_const(1), _const(1), _A, _A], False,
         tag="repeated pairs"),
    _fam(3, "C4", [I, _const(-1), Cyclo12.of(0) - I, _const(1)], True,
         tag="a = I branch of a^4 = 1 on [a : a^2 : a^3 : 1]"),
    _fam(3, "C4", [Cyclo12.of(0) - I, _const(-1), I, _const(1)], True,
         tag="a = -I branch of a^4 = 1 on [a : a^2 : a^3 : 1]"),
    _fam(3, "C4", [_const(1), _const(1), _const(1), _const(1)], False,
         tag="a = 1 branch of a^4 = 1; all coordinates equal"),
    _fam(3, "C4", [_const(-1), _const(1), _const(-1), _const(1)], False,
         tag="a = -1 branch of a^4 = 1; repeated coordinates"),
    _fam(3, "K4n", [_const(1), _const(-1), _const(-1), _const(1)], False,
         tag="sign point; repeated coordinates"),
    _fam(3, "K4n", [_const(-1), _const(1), _const(-1), _const(1)], False,
         tag="sign point; repeated coordinates"),
    _fam(3, "K4n", [_const(1), _const(1), _const(1), _const(1)], False,
         tag="sign point; all coordinates equal"),
    _fam(3, "K4n", [_const(-1), _const(-1), _const(1), _const(1)], False,
         tag="sign point; repeated coordinates"),
    _fam(3, "K4", [_const(0), _const(0), _const(-1), _const(1)], False,
         tag="repeated zero pair"),
    _fam(3, "K4", [_A, _A, _const(1), _const(1)], False,
         tag="repeated pairs"),
    _fam(3, "K4", [_const(-1), _const(1), _const(0), _const(0)], False,
         tag="repeated zero pair"),
    _fam(3, "K4", [_const(1), _const(1), _A, _A], False,
         tag="repeated pairs"),
    _fam(3, "D8", [_const(1), _const(1), _const(1), _const(1)], False,
         tag="all coordinates equal"),
    _fam(3, "D8", [_const(-1), _const(1), _const(-1), _const(1)], False,
         tag="repeated coordinates"),
    _fam(3, "C3", [OMEGA, OMEGA2, _const(1), _const(0)], True,
         tag="b = omega^2 branch of b^3 = 1 on [b^2 : b : 1 : 0]"),
    _fam(3, "C3", [OMEGA2, OMEGA, _const(1), _const(0)], True,
         tag="b = omega branch of b^3 = 1 on [b^2 : b : 1 : 0]"),
    _fam(3, "C3", [_A, _A, _A, _const(1)], False,
         tag="diagonal of the rotated coordinates"),
    _fam(3, "C3", [_const(1), _const(1), _const(1), _const(0)], False,
         tag="b = 1 branch of b^3 = 1; repeated coordinates"),
    _fam(3, "S3", [_const(1), _const(1), _const(1), _const(0)], False,
         tag="repeated coordinates"),
    _fam(3, "S3", [_A, _A, _A, _const(1)], False,
         tag="diagonal of the permuted coordinates"),
    _fam(3, "A4", [_const(1), _const(1), _const(1), _const(1)], False,
         tag="all coordinates equal"),
    _fam(3, "S4", [_const(1), _const(1), _const(1), _const(1)], False,
         tag="all coordinates equal"),
)


def catalog(ambient_dim: int, stabilizer_name: str) -> tuple[FixedPointFamily, ...]:
    """All cataloged families for one subgroup class."""
    if ambient_dim not in (2, 3):
        raise ValueError("ambient dimension must be 2 or 3")
    class_by_name("S3" if ambient_dim == 2 else "S4", stabilizer_name)
    table = CATALOG_P2 if ambient_dim == 2 else CATALOG_P3
    return tuple(f for f in table if f.stabilizer_name == stabilizer_name)


def full_catalog(ambient_dim: int) -> tuple[FixedPointFamily, ...]:
    if ambient_dim == 2:
        return CATALOG_P2
    if ambient_dim == 3:
        return CATALOG_P3
    raise ValueError("ambient dimension must be 2 or 3")


def admissible_families(ambient_dim: int) -> tuple[FixedPointFamily, ...]:
    return tuple(f for f in full_catalog(ambient_dim) if f.admissible)


def admissible_table(ambient_dim: int) -> tuple[FixedPointFamily, ...]:
    """Admissible families, one representative per point orbit."""
    chosen: list[FixedPointFamily] = []
    seen_orbits: list[frozenset[ProjPointExact]] = []
    for fam in admissible_families(ambient_dim):
        if fam.param_count == 0:
            orb = _orbit_of(fam.instantiate())
            if orb in seen_orbits:
                continue
            seen_orbits.append(orb)
        chosen.append(fam)
    return tuple(chosen)


def _orbit_of(point: ProjPointExact) -> frozenset[ProjPointExact]:
    from .group import orbit

    return frozenset(orbit(point))


def gradient_at(f: MultiPoly, point: ProjPointExact) -> tuple[Cyclo12, ...]:
    """All partial derivatives of f evaluated at the point."""
    if f.num_vars != len(point.coords):
        raise ValueError("form and point live in different spaces")
    return tuple(
        f.partial_derivative(i).evaluate_exact(point.coords)
        for i in range(f.num_vars)
    )


def _first_nonzero_scaled(vec: tuple[Cyclo12, ...]) -> tuple[Cyclo12, ...]:
    for value in vec:
        if not value.is_zero():
            inv = value.inverse()
            return tuple(inv * v for v in vec)
    raise ValueError("zero vector has no canonical scaling")


def tangent_line_p2(f: MultiPoly, point: ProjPointExact) -> tuple[Cyclo12, ...]:
    """Coefficients of the tangent line of V(f) at a smooth point.

    Scaled so the first nonzero coefficient is 1 (lines are dual
    objects, so this differs from the point normalization on purpose).
    """
    if f.num_vars != 3:
        raise ValueError("tangent lines are for ternary forms")
    if not f.evaluate_exact(point.coords).is_zero():
        raise ValueError("point does not lie on the curve")
    grad = gradient_at(f, point)
    if all(g.is_zero() for g in grad):
        raise ValueError("curve is singular at the point")
    return _first_nonzero_scaled(grad)


def exact_rank(rows: list[tuple[Cyclo12, ...]]) -> int:
    """Rank of a matrix over the coefficient field."""
    work = [list(row) for row in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    col = 0
    while rank < len(work) and col < ncols:
        pivot = next(
            (r for r in range(rank, len(work)) if not work[r][col].is_zero()), None
        )
        if pivot is None:
            col += 1
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [inv * v for v in work[rank]]
        for r in range(len(work)):
            if r != rank and not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [v - factor * p for v, p in zip(work[r], work[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class Obstruction:
    """Exact certificate that a point blocks (or permits) transversality."""

    kind: str  # SingularPoint | SharedTangent | RankDrop | NoObstruction
    point: ProjPointExact
    which_input: int | None = None
    line: tuple[Cyclo12, ...] | None = None
    jacobian_rank: int | None = None
    note: str = ""

    @property
    def is_obstruction(self) -> bool:
        return self.kind != "NoObstruction"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "point": str(self.point),
            "which_input": self.which_input,
            "line": None if self.line is None else
                "[" + " : ".join(render_exact(v) for v in self.line) + "]",
            "jacobian_rank": self.jacobian_rank,
            "note": self.note,
        }


def obstruction(point: ProjPointExact, fs) -> Obstruction:
    """Classify the point as a transversality obstruction for the forms.

    The point must lie on every form.  Returns a SingularPoint,
    SharedTangent (ternary pairs), or RankDrop (quaternary triples)
    certificate, or NoObstruction when the intersection is transverse
    there.
    """
    fs = tuple(fs)
    ncoords = len(point.coords)
    if ncoords == 3 and len(fs) != 2:
        raise ValueError("ternary obstructions take exactly two forms")
    if ncoords == 4 and len(fs) != 3:
        raise ValueError("quaternary obstructions take exactly three forms")
    for idx, f in enumerate(fs):
        if f.num_vars != ncoords:
            raise ValueError("form and point live in different spaces")
        if not f.evaluate_exact(point.coords).is_zero():
            raise ValueError(f"point does not lie on input {idx}")
    grads = [gradient_at(f, point) for f in fs]
    for idx, grad in enumerate(grads):
        if all(g.is_zero() for g in grad):
            return Obstruction(
                kind="SingularPoint",
                point=point,
                which_input=idx,
                note=f"input {idx} has vanishing gradient",
            )
    rank = exact_rank(grads)
    if ncoords == 3:
        if rank <= 1:
            return Obstruction(
                kind="SharedTangent",
                point=point,
                line=_first_nonzero_scaled(grads[0]),
                jacobian_rank=rank,
                note="gradients are proportional",
            )
        return Obstruction(kind="NoObstruction", point=point, jacobian_rank=rank)
    if rank <= 2:
        note = "Jacobian rank drops"
        if point.has_repeated_coordinate():
            note = "repeated coordinates force equal Jacobian columns"
        return Obstruction(
            kind="RankDrop", point=point, jacobian_rank=rank, note=note,
        )
    return Obstruction(kind="NoObstruction", point=point, jacobian_rank=rank)


def verify_stabilizer_containment(fam: FixedPointFamily, samples=None) -> bool:
    """Brute-force check that sample members are fixed by the whole class."""
    cls = class_by_name(fam.group_name, fam.stabilizer_name)
    points = _sample_points(fam, samples)
    for point in points:
        for sigma in cls.elements:
            if point.act(sigma) != point:
                return False
    return True


_PARAM_SAMPLES = (
    Cyclo12.of(2),
    Cyclo12.of(3),
    Cyclo12.of(Fraction(1, 2)),
    Cyclo12.of(Fraction(-5, 3)),
    OMEGA,
    I,
)


def _sample_points(fam: FixedPointFamily, samples=None) -> list[ProjPointExact]:
    samples = _PARAM_SAMPLES if samples is None else tuple(samples)
    if fam.param_count == 0:
        return [fam.instantiate()]
    usable = [s for s in samples if not any(s == bad for bad in fam.excluded)]
    if fam.param_count == 1:
        return [fam.instantiate(a=s) for s in usable]
    return [fam.instantiate(a=s, c=t) for s, t in zip(usable, reversed(usable))]


@dataclass(frozen=True)
class EnumerationCheck:
    """Completeness record for one finite branch enumeration."""

    ambient_dim: int
    stabilizer_name: str
    constraint: str
    degree: int
    roots_found: int
    points_match: bool

    @property
    def complete(self) -> bool:
        return self.roots_found == self.degree and self.points_match


# Twelfth roots of unity and zero: every root of the catalog constraints
# (a^2 = 1, b^3 = 1, a^4 = 1) lies in this finite candidate set.
_ROOT_CANDIDATES = tuple([Cyclo12.of(0)] + [ZETA ** k for k in range(12)])


def _enumerate_constraint(
    pattern: tuple[PatternCoord, ...], constraint: UniPoly
) -> tuple[list[ProjPointExact], int]:
    """All points of the pattern whose parameter satisfies the constraint."""
    fam = FixedPointFamily(
        ambient_dim=len(pattern) - 1,
        stabilizer_name="Trivial",
        pattern=pattern,
        admissible=False,
    )
    roots = []
    for cand in _ROOT_CANDIDATES:
        acc = _ZERO
        power = _ONE
        for coeff in constraint:
            acc = acc + coeff * power
            power = power * cand
        if acc.is_zero():
            roots.append(cand)
    return [fam.instantiate(a=r) for r in roots], len(roots)


_UNIT_PATTERN_P2 = (_A, _const(1), _const(0))
_CUBE_PATTERN_P2 = (_A2, _A, _const(1))
_CUBE_PATTERN_P3 = (_A2, _A, _const(1), _const(0))
_QUARTIC_PATTERN_P3 = (_A, _A2, _A3, _const(1))
_SIGN_PATTERNS_P3 = (
    (_A, _NEG_A, _const(-1), _const(1)),
    (_A, _A, _const(1), _const(1)),
    (_const(-1), _const(1), _A, _NEG_A),
    (_const(1), _const(1), _A, _A),
)


def _poly_pm1(*coeffs) -> UniPoly:
    return [Cyclo12.of(c) for c in coeffs]


def _finite_points(ambient_dim: int, stabilizer_name: str) -> set[ProjPointExact]:
    return {
        fam.instantiate()
        for fam in catalog(ambient_dim, stabilizer_name)
        if fam.param_count == 0
    }


def run_enumerations(ambient_dim: int) -> list[EnumerationCheck]:
    """Re-derive every finite catalog branch from its defining constraint."""
    checks = []
    if ambient_dim == 2:
        specs = [
            ("C2", [(_UNIT_PATTERN_P2, _poly_pm1(-1, 0, 1), "a^2 = 1")]),
            ("C3", [(_CUBE_PATTERN_P2, _poly_pm1(-1, 0, 0, 1), "b^3 = 1")]),
        ]
    else:
        specs = [
            ("C4", [(_QUARTIC_PATTERN_P3, _poly_pm1(-1, 0, 0, 0, 1), "a^4 = 1")]),
            ("C3", [(_CUBE_PATTERN_P3, _poly_pm1(-1, 0, 0, 1), "b^3 = 1")]),
            ("K4n", [
                (pat, _poly_pm1(-1, 0, 1), "a^2 = 1") for pat in _SIGN_PATTERNS_P3
            ]),
        ]
    for stab, branches in specs:
        expected = _finite_points(ambient_dim, stab)
        derived: set[ProjPointExact] = set()
        total_degree = 0
        total_roots = 0
        for pattern, constraint, _ in branches:
            points, nroots = _enumerate_constraint(pattern, constraint)
            derived.update(points)
            total_degree += uni_degree(constraint)
            total_roots += nroots
        checks.append(
            EnumerationCheck(
                ambient_dim=ambient_dim,
                stabilizer_name=stab,
                constraint=" and ".join(b[2] for b in branches),
                degree=total_degree,
                roots_found=total_roots,
                points_match=derived == expected,
            )
        )
    return checks


@dataclass(frozen=True)
class CatalogCheck:
    """Result of brute-force catalog verification for one ambient space."""

    ambient_dim: int
    families_checked: int
    stabilizer_failures: tuple[str, ...]
    admissibility_failures: tuple[str, ...]
    enumerations: tuple[EnumerationCheck, ...]

    @property
    def passed(self) -> bool:
        return (
            not self.stabilizer_failures
            and not self.admissibility_failures
            and all(e.complete for e in self.enumerations)
        )

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "families_checked": self.families_checked,
            "stabilizer_failures": list(self.stabilizer_failures),
            "admissibility_failures": list(self.admissibility_failures),
            "enumerations": [
                {
                    "stabilizer": e.stabilizer_name,
                    "constraint": e.constraint,
                    "degree": e.degree,
                    "roots_found": e.roots_found,
                    "points_match": e.points_match,
                    "complete": e.complete,
                }
                for e in self.enumerations
            ],
            "passed": self.passed,
        }


def verify_catalog_by_stabilizer(ambient_dim: int) -> CatalogCheck:
    """Check every family's symmetry, admissibility flag, and completeness.

    Sample members of each family must be fixed by the full subgroup
    class; inadmissible quaternary families must exhibit their repeated
    coordinate; finite branches must be recovered by solving their
    defining constraints.
    """
    stab_failures = []
    adm_failures = []
    families = full_catalog(ambient_dim)
    for fam in families:
        if not verify_stabilizer_containment(fam):
            stab_failures.append(f"{fam.stabilizer_name} {fam.pattern_text()}")
        for point in _sample_points(fam):
            if ambient_dim == 3:
                # repeated coordinates characterize inadmissibility here
                if point.has_repeated_coordinate() == fam.admissible:
                    adm_failures.append(
                        f"{fam.stabilizer_name} {fam.pattern_text()}"
                    )
                    break
            else:
                if fam.admissible and point.has_repeated_coordinate():
                    adm_failures.append(
                        f"{fam.stabilizer_name} {fam.pattern_text()}"
                    )
                    break
    # classes with no catalog entries still count as checked (all points
    # or no points carry that exact symmetry type)
    return CatalogCheck(
        ambient_dim=ambient_dim,
        families_checked=len(families),
        stabilizer_failures=tuple(stab_failures),
        admissibility_failures=tuple(adm_failures),
        enumerations=tuple(run_enumerations(ambient_dim)),
    )


@dataclass(frozen=True)
class FamilyMembership:
    """How one admissible family meets a single hypersurface."""

    family: FixedPointFamily
    entire_family: bool
    parameters: tuple[Cyclo12, ...]
    points: tuple[ProjPointExact, ...]
    parameters_complete: bool

    def to_json(self) -> dict:
        return {
            "stabilizer": self.family.stabilizer_name,
            "pattern": self.family.pattern_text(),
            "entire_family": self.entire_family,
            "parameters": [render_exact(p) for p in self.parameters],
            "points": [str(p) for p in self.points],
            "parameters_complete": self.parameters_complete,
        }


def special_point_membership(f: MultiPoly) -> list[FamilyMembership]:
    """Which admissible families lie on V(f), exactly.

    Finite families are evaluated directly.  One-parameter families are
    restricted to a univariate polynomial whose exact roots (outside the
    excluded set) give the member points; parameters_complete reports
    whether every root was certified exactly.
    """
    ambient_dim = f.num_vars - 1
    out = []
    for fam in admissible_families(ambient_dim):
        if fam.param_count == 0:
            point = fam.instantiate()
            if f.evaluate_exact(point.coords).is_zero():
                out.append(FamilyMembership(fam, True, (), (point,), True))
            continue
        restricted = fam.restrict(f)
        if uni_degree(restricted) is None:
            # identically zero: the whole family lies on the surface
            out.append(FamilyMembership(fam, True, (), (), True))
            continue
        from .solver import exact_uni_roots

        roots, complete = exact_uni_roots(restricted)
        kept = [r for r in roots if not any(r == bad for bad in fam.excluded)]
        if kept or not complete:
            out.append(
                FamilyMembership(
                    family=fam,
                    entire_family=False,
                    parameters=tuple(kept),
                    points=tuple(fam.instantiate(a=r) for r in kept),
                    parameters_complete=complete,
                )
            )
    return out
