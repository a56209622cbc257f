"""Coordinate permutation actions on projective points.

S3 acts on P2 and S4 on P3 by permuting homogeneous coordinates.  The
module provides the permutation groups, their subgroups up to
conjugacy, stabilizers and orbit decompositions for exact and numeric
points, and the orbit-type bookkeeping (a multiset of subgroup classes,
one per orbit, rendered in coset notation).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import mpmath as mp

from .exactnum import Cyclo12, ZERO, ONE, to_mpc


@dataclass(frozen=True, slots=True)
class Permutation:
    """A permutation of {0..n-1}, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @staticmethod
    def identity(n: int) -> Permutation:
        return Permutation(tuple(range(n)))

    @staticmethod
    def from_cycles(n: int, *cycles) -> Permutation:
        images = list(range(n))
        for cycle in cycles:
            for i, a in enumerate(cycle):
                images[a] = cycle[(i + 1) % len(cycle)]
        return Permutation(tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition self after other."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        out = [0] * len(self.images)
        for i, j in enumerate(self.images):
            out[j] = i
        return Permutation(tuple(out))

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths, sorted descending (a partition of n)."""
        seen = [False] * len(self.images)
        lengths = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.images[i]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))

    def __str__(self) -> str:
        # cycle notation on 1-based letters
        seen = [False] * len(self.images)
        cycles = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i + 1)
                i = self.images[i]
            if len(cycle) > 1:
                cycles.append("(" + " ".join(map(str, cycle)) + ")")
        return "".join(cycles) if cycles else "()"


def symmetric_group(n: int) -> list[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(n))]


def generate_subgroup(n: int, generators) -> frozenset[Permutation]:
    """Closure of a generating set, by breadth-first multiplication."""
    elements = {Permutation.identity(n)}
    frontier = list(elements)
    gens = list(generators)
    while frontier:
        new = []
        for g in gens:
            for h in frontier:
                p = g * h
                if p not in elements:
                    elements.add(p)
                    new.append(p)
        frontier = new
    return frozenset(elements)


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups, with a fixed representative."""

    group: str                      # "S3" or "S4"
    name: str
    generators: tuple[Permutation, ...]
    order: int

    @property
    def degree(self) -> int:
        return 3 if self.group == "S3" else 4

    @property
    def elements(self) -> frozenset[Permutation]:
        return generate_subgroup(self.degree, self.generators)


def _cls(group, name, order, *cycle_lists):
    n = 3 if group == "S3" else 4
    gens = tuple(Permutation.from_cycles(n, *cycles) for cycles in cycle_lists)
    return SubgroupClass(group, name, gens, order)


# Subgroups of S3 up to conjugacy (all classes determined by order).
S3_CLASSES = (
    _cls("S3", "Trivial", 1),
    _cls("S3", "C2", 2, [(0, 1)]),
    _cls("S3", "C3", 3, [(0, 1, 2)]),
    _cls("S3", "S3", 6, [(0, 1)], [(0, 1, 2)]),
)

# Subgroups of S4 up to conjugacy.  C2o is generated by a transposition
# ("odd"), C2e by a double transposition ("even"); K4n is the normal
# Klein four-group of double transpositions, K4 the non-normal copy.
S4_CLASSES = (
    _cls("S4", "Trivial", 1),
    _cls("S4", "C2o", 2, [(0, 1)]),
    _cls("S4", "C2e", 2, [(0, 1), (2, 3)]),
    _cls("S4", "C4", 4, [(0, 1, 2, 3)]),
    _cls("S4", "K4n", 4, [(0, 1), (2, 3)], [(0, 2), (1, 3)]),
    _cls("S4", "K4", 4, [(0, 1)], [(2, 3)]),
    _cls("S4", "D8", 8, [(0, 1, 2, 3)], [(0, 2)]),
    _cls("S4", "C3", 3, [(0, 1, 2)]),
    _cls("S4", "S3", 6, [(0, 1, 2)], [(0, 1)]),
    _cls("S4", "A4", 12, [(0, 1, 2)], [(0, 1), (2, 3)]),
    _cls("S4", "S4", 24, [(0, 1)], [(0, 1, 2, 3)]),
)


def classes_for(group: str) -> tuple[SubgroupClass, ...]:
    if group == "S3":
        return S3_CLASSES
    if group == "S4":
        return S4_CLASSES
    raise ValueError(f"unknown group {group!r}")


def class_by_name(group: str, name: str) -> SubgroupClass:
    for cls in classes_for(group):
        if cls.name == name:
            return cls
    raise ValueError(f"no subgroup class named {name!r} in {group}")


def _signature(elements) -> tuple:
    return (len(elements), tuple(sorted(p.cycle_type() for p in elements)))


def _signature_table(group: str) -> dict:
    table = {}
    for cls in classes_for(group):
        sig = _signature(cls.elements)
        if sig in table:
            raise AssertionError("subgroup class signatures collide")
        table[sig] = cls
    return table


_SIG_TABLES: dict[str, dict] = {}


def classify_subgroup(group: str, elements) -> SubgroupClass:
    """Identify a subgroup's conjugacy class.

    The (order, cycle-type multiset) signature separates all classes of
    S3 and S4: the three order-4 classes differ in how many
    transpositions and double transpositions they contain.
    """
    elements = frozenset(elements)
    n = 3 if group == "S3" else 4
    for p in elements:
        for q in elements:
            if p * q not in elements:
                raise ValueError("element set is not closed under composition")
    if Permutation.identity(n) not in elements:
        raise ValueError("element set does not contain the identity")
    table = _SIG_TABLES.get(group)
    if table is None:
        table = _signature_table(group)
        _SIG_TABLES[group] = table
    sig = _signature(elements)
    cls = table.get(sig)
    if cls is None:
        raise ValueError("element set is not a subgroup of the expected group")
    return cls


# ----- projective points -----

@dataclass(frozen=True, slots=True)
class ProjPointExact:
    """A point of P^(n-1) with Cyclo12 coordinates.

    Canonical form: the last nonzero coordinate is 1, so equality is
    plain coordinate-wise comparison.
    """

    coords: tuple[Cyclo12, ...]

    @staticmethod
    def make(coords) -> ProjPointExact:
        coords = tuple(Cyclo12.of(c) for c in coords)
        pivot = None
        for i in range(len(coords) - 1, -1, -1):
            if not coords[i].is_zero():
                pivot = i
                break
        if pivot is None:
            raise ValueError("all coordinates are zero")
        inv = coords[pivot].inverse()
        return ProjPointExact(tuple(c * inv for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def act(self, perm: Permutation) -> ProjPointExact:
        """Left action: coordinate i moves to position perm(i)."""
        out = [ZERO] * len(self.coords)
        for i, c in enumerate(self.coords):
            out[perm(i)] = c
        return ProjPointExact.make(out)

    def conjugate(self) -> ProjPointExact:
        return ProjPointExact.make(tuple(c.conjugate() for c in self.coords))

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coords)

    def has_repeated_coordinate(self) -> bool:
        n = len(self.coords)
        return any(
            self.coords[i] == self.coords[j]
            for i in range(n)
            for j in range(i + 1, n)
        )

    def embed(self, precision_bits: int = 128) -> ProjPointNumeric:
        raw = [to_mpc(c, precision_bits) for c in self.coords]
        return ProjPointNumeric.make(raw, precision_bits)

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class ProjPointNumeric:
    """A numeric projective point at an explicit precision.

    Canonical form: unit Euclidean norm with the largest-magnitude
    coordinate rotated to be real and positive.  Matching uses the
    phase-aligned distance, which is scale-free and avoids tie jitter
    when two coordinates have nearly equal magnitude.
    """

    coords: tuple
    precision_bits: int
    match_tolerance: float = 1e-8

    @staticmethod
    def make(raw_coords, precision_bits: int, match_tolerance: float = 1e-8) -> ProjPointNumeric:
        with mp.workprec(precision_bits):
            coords = [mp.mpc(c) for c in raw_coords]
            norm = mp.sqrt(sum((abs(c) ** 2 for c in coords), mp.mpf(0)))
            if norm == 0:
                raise ValueError("all coordinates are zero")
            coords = [c / norm for c in coords]
            mags = [abs(c) for c in coords]
            k = max(range(len(coords)), key=lambda i: mags[i])
            phase = coords[k] / mags[k]
            coords = [c / phase for c in coords]
            return ProjPointNumeric(
                tuple(+c for c in coords), precision_bits, match_tolerance
            )

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def act(self, perm: Permutation) -> ProjPointNumeric:
        out = [None] * len(self.coords)
        for i, c in enumerate(self.coords):
            out[perm(i)] = c
        return ProjPointNumeric.make(out, self.precision_bits, self.match_tolerance)

    def conjugate(self) -> ProjPointNumeric:
        with mp.workprec(self.precision_bits):
            return ProjPointNumeric.make(
                [mp.conj(c) for c in self.coords],
                self.precision_bits,
                self.match_tolerance,
            )

    def distance(self, other: ProjPointNumeric) -> float:
        """Distance after optimal phase alignment of unit vectors."""
        bits = max(self.precision_bits, other.precision_bits)
        with mp.workprec(bits):
            inner = sum(
                (a * mp.conj(b) for a, b in zip(self.coords, other.coords)),
                mp.mpc(0),
            )
            mag = abs(inner)
            if mag == 0:
                return 2.0
            phase = inner / mag
            diff = sum(
                (abs(a - phase * b) ** 2 for a, b in zip(self.coords, other.coords)),
                mp.mpf(0),
            )
            return float(mp.sqrt(diff))

    def matches(self, other: ProjPointNumeric, tolerance: float | None = None) -> bool:
        tol = tolerance if tolerance is not None else self.match_tolerance
        return self.distance(other) < tol

    def is_real(self, tolerance: float | None = None) -> bool:
        tol = tolerance if tolerance is not None else self.match_tolerance
        with mp.workprec(self.precision_bits):
            return all(abs(c.imag) < tol for c in self.coords)

    def __str__(self) -> str:
        with mp.workprec(min(self.precision_bits, 64)):
            return "[" + " : ".join(mp.nstr(c, 8) for c in self.coords) + "]"


def _point_group(point) -> str:
    return "S3" if len(point.coords) == 3 else "S4"


def _same_point(a, b) -> bool:
    if isinstance(a, ProjPointExact) and isinstance(b, ProjPointExact):
        return a == b
    if isinstance(a, ProjPointExact):
        a = a.embed(b.precision_bits)
    if isinstance(b, ProjPointExact):
        b = b.embed(a.precision_bits)
    return a.matches(b)


def stabilizer(point) -> tuple[frozenset[Permutation], SubgroupClass]:
    """Brute-force stabilizer and its conjugacy class."""
    group = _point_group(point)
    n = len(point.coords)
    fixing = frozenset(
        p for p in symmetric_group(n) if _same_point(point.act(p), point)
    )
    return fixing, classify_subgroup(group, fixing)


def orbit(point) -> list:
    """The orbit of a point; length times stabilizer order is n!."""
    n = len(point.coords)
    out = []
    for p in symmetric_group(n):
        image = point.act(p)
        if not any(_same_point(image, q) for q in out):
            out.append(image)
    return out


@dataclass(frozen=True)
class OrbitType:
    """A multiset of stabilizer classes, one entry per orbit."""

    group: str
    counts: tuple[tuple[str, int], ...]   # (class name, multiplicity), sorted

    @staticmethod
    def make(group: str, names) -> OrbitType:
        tally: dict[str, int] = {}
        for name in names:
            class_by_name(group, name)
            tally[name] = tally.get(name, 0) + 1
        return OrbitType(group, tuple(sorted(tally.items())))

    def is_empty(self) -> bool:
        return not self.counts

    def total_size(self) -> int:
        order = 6 if self.group == "S3" else 24
        return sum(
            mult * (order // class_by_name(self.group, name).order)
            for name, mult in self.counts
        )

    def orbit_count(self) -> int:
        return sum(mult for _, mult in self.counts)

    def render(self) -> str:
        """Coset notation, terms sorted by decreasing stabilizer order."""
        if not self.counts:
            return "0"
        entries = sorted(
            self.counts,
            key=lambda item: (-class_by_name(self.group, item[0]).order, item[0]),
        )
        parts = []
        for name, mult in entries:
            coset = f"[{self.group}]" if name == "Trivial" else f"[{self.group}/{name}]"
            parts.append(coset if mult == 1 else f"{mult}{coset}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()


def decompose_orbits(points) -> tuple[OrbitType, list[int], list[str]]:
    """Partition a permutation-closed point list into orbits.

    Returns the orbit type, an orbit id per point (ids numbered in
    first-appearance order), and the stabilizer class name per point.
    Raises if the set is not closed under the group action.
    """
    if not points:
        group = "S3"
        return OrbitType.make(group, []), [], []
    group = _point_group(points[0])
    n = len(points[0].coords)
    elements = symmetric_group(n)

    def find(image) -> int | None:
        for idx, q in enumerate(points):
            if _same_point(image, q):
                return idx
        return None

    orbit_ids = [-1] * len(points)
    stab_names = [""] * len(points)
    next_id = 0
    for start in range(len(points)):
        if orbit_ids[start] != -1:
            continue
        members = set()
        for p in elements:
            image = points[start].act(p)
            idx = find(image)
            if idx is None:
                raise ValueError(
                    f"point set is not closed under {group}: "
                    f"{points[start]} maps outside the set under {p}"
                )
            members.add(idx)
        _, cls = stabilizer(points[start])
        for idx in members:
            if orbit_ids[idx] == -1:
                orbit_ids[idx] = next_id
                stab_names[idx] = cls.name
        next_id += 1
    reps = {}
    for idx, oid in enumerate(orbit_ids):
        reps.setdefault(oid, stab_names[idx])
    orbit_type = OrbitType.make(group, list(reps.values()))
    return orbit_type, orbit_ids, stab_names
