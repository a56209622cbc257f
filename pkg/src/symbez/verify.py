"""Sampling-based verification of the classification and congruence results.

Each run draws seeded random symmetric forms, solves the system, and
compares the outcome against the expected tables: the product-of-degrees
classification in the plane, the real-point counts, the mod-12
congruence in space, and independence of the orbit type from the chosen
section.  Verdicts are pass / fail / inconclusive; a pass requires zero
contradicting trials, and inconclusive means no trial was informative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .group import OrbitType, _same_point
from .poly import random_symmetric
from .solver import (
    CommonFactorError,
    DegenerateSystemError,
    IntersectionReport,
    SolveOptions,
    solve_p2,
    solve_p3,
)

P2_PRODUCT_CAP = 30
P3_PRODUCT_CAP = 24
RESAMPLE_FACTOR = 5

_MASK64 = (1 << 64) - 1


def mix_seed(*parts: int) -> int:
    """Deterministic substream seed from integer parts (never hash())."""
    acc = 0x243F6A8885A308D3
    for part in parts:
        acc = (acc + (part & _MASK64) + 0x9E3779B97F4A7C15) & _MASK64
        acc ^= acc >> 30
        acc = (acc * 0xBF58476D1CE4E5B9) & _MASK64
        acc ^= acc >> 27
        acc = (acc * 0x94D049BB133111EB) & _MASK64
        acc ^= acc >> 31
    return acc


@dataclass(frozen=True)
class TrialRecord:
    """One solved (or rejected) random instance inside a run."""

    index: int
    outcome: str  # transverse | non-transverse | rejected | error
    orbit_type: str | None = None
    real_count: int | None = None
    note: str = ""
    report: IntersectionReport | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "outcome": self.outcome,
            "orbit_type": self.orbit_type,
            "real_count": self.real_count,
            "note": self.note,
        }


@dataclass(frozen=True)
class VerificationRun:
    """Aggregated verdict of one sampling run against one expected result."""

    theorem: str
    params: dict
    trials: tuple[TrialRecord, ...]
    verdict: str  # pass | fail | inconclusive
    counts: dict

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def transverse_reports(self) -> list[IntersectionReport]:
        return [
            t.report
            for t in self.trials
            if t.outcome == "transverse" and t.report is not None
        ]

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": self.params,
            "trials": [t.to_json() for t in self.trials],
            "verdict": self.verdict,
            "counts": self.counts,
        }


def expected_orbit_type_p2(d: int, e: int) -> OrbitType | None:
    """Orbit type of any transverse (d, e) intersection in the plane.

    Determined by de mod 6; None means no transverse symmetric pair of
    those degrees exists (the impossible residues 1 and 4).
    """
    if d < 1 or e < 1:
        raise ValueError("degrees must be at least 1")
    k, r = divmod(d * e, 6)
    if r in (1, 4):
        return None
    names = ["Trivial"] * k
    if r == 2:
        names.append("C3")
    elif r == 3:
        names.append("C2")
    elif r == 5:
        names.extend(["C2", "C3"])
    return OrbitType.make("S3", names)


def p2_table_consistent(max_product: int = 1000) -> bool:
    """Arithmetic self-checks of the plane table over all products.

    The expected orbit type must have total size de wherever defined,
    and the impossible cells must be exactly the products congruent to
    1 mod 3.
    """
    for de in range(1, max_product + 1):
        expected = expected_orbit_type_p2(1, de)
        if (expected is None) != (de % 3 == 1):
            return False
        if expected is not None and expected.total_size() != de:
            return False
    return True


def _structurally_vacuous_p2(d: int, e: int) -> bool:
    # the only symmetric linear form is a multiple of e1
    return d == 1 and e == 1


def _draw_p2(d: int, e: int, seed: int, index: int):
    f = random_symmetric(3, d, seed=mix_seed(seed, index, 0))
    g = random_symmetric(3, e, seed=mix_seed(seed, index, 1))
    return f, g


def verify_p2_table(
    d: int,
    e: int,
    trials: int = 10,
    seed: int = 0,
    precision_bits: int = 128,
) -> VerificationRun:
    """Sample random (d, e) pairs and compare against the expected table.

    Admissible cells resample non-transverse draws up to five times the
    trial budget so the verdict rests on transverse instances; the
    impossible cells instead require every draw to be non-transverse
    with an exact obstruction certificate attached.
    """
    if d < 1 or e < 1:
        raise ValueError("degrees must be at least 1")
    if d * e > P2_PRODUCT_CAP:
        raise ValueError(f"product of degrees exceeds the cap {P2_PRODUCT_CAP}")
    expected = expected_orbit_type_p2(d, e)
    params = {
        "degrees": [d, e],
        "trials": trials,
        "seed": seed,
        "precision_bits": precision_bits,
        "expected": "Impossible" if expected is None else expected.render(),
    }
    options = SolveOptions(precision_bits=precision_bits)
    records: list[TrialRecord] = []
    contradictions = 0
    transverse = 0
    informative = 0
    budget = trials if expected is None else RESAMPLE_FACTOR * trials
    index = 0
    while index < budget:
        if expected is not None and transverse >= trials:
            break
        f, g = _draw_p2(d, e, seed, index)
        index += 1
        try:
            report = solve_p2(f, g, options)
        except (CommonFactorError, DegenerateSystemError) as exc:
            records.append(
                TrialRecord(index - 1, "rejected", note=str(exc))
            )
            continue
        except Exception as exc:  # recorded, never thrown
            records.append(TrialRecord(index - 1, "error", note=str(exc)))
            continue
        rendered = None if report.orbit_type is None else report.orbit_type.render()
        if report.transverse:
            transverse += 1
            informative += 1
            if expected is None:
                contradictions += 1
                records.append(
                    TrialRecord(
                        index - 1, "transverse", rendered, report.real_count,
                        note="transverse where the table forbids it",
                        report=report,
                    )
                )
            elif report.orbit_type != expected:
                contradictions += 1
                records.append(
                    TrialRecord(
                        index - 1, "transverse", rendered, report.real_count,
                        note=f"orbit type differs from expected {expected.render()}",
                        report=report,
                    )
                )
            else:
                records.append(
                    TrialRecord(
                        index - 1, "transverse", rendered, report.real_count,
                        report=report,
                    )
                )
        else:
            note = ""
            if expected is None:
                informative += 1
                if report.obstructions:
                    note = "non-transverse with certificate"
                else:
                    contradictions += 1
                    note = "non-transverse but no obstruction certificate"
            records.append(
                TrialRecord(
                    index - 1, "non-transverse", rendered, report.real_count,
                    note=note, report=report,
                )
            )
    counts = {
        "draws": len(records),
        "transverse": transverse,
        "non_transverse": sum(1 for r in records if r.outcome == "non-transverse"),
        "rejected": sum(1 for r in records if r.outcome == "rejected"),
        "errors": sum(1 for r in records if r.outcome == "error"),
        "contradictions": contradictions,
    }
    if contradictions:
        verdict = "fail"
    elif informative:
        verdict = "pass"
    elif _structurally_vacuous_p2(d, e) and counts["rejected"] == len(records):
        verdict = "pass"
        counts["vacuous"] = True
    else:
        verdict = "inconclusive"
    return VerificationRun("p2-table", params, tuple(records), verdict, counts)


def _conjugation_closed(report: IntersectionReport) -> bool:
    points = [p.exact if p.exact is not None else p.numeric for p in report.points]
    return all(
        any(_same_point(p.conjugate(), q) for q in points) for p in points
    )


def check_real_count_p2(report: IntersectionReport) -> bool:
    """Whether the report's real count is one of the admitted values.

    Products congruent to 3 or 5 mod 6 admit 3+6k real points with
    0 <= k < de/6; products congruent to 0 or 2 admit 6k real points
    with 0 <= k <= de/6.
    """
    if report.space != "P2":
        raise ValueError("real-point bounds are for plane intersections")
    if not report.transverse:
        raise ValueError("real-point bounds apply to transverse intersections")
    if not _conjugation_closed(report):
        raise ValueError("real-point bounds need conjugation-fixed inputs")
    de = report.bezout
    r = de % 6
    if r in (1, 4):
        raise ValueError("no transverse pair exists at these degrees")
    if r in (3, 5):
        allowed = {3 + 6 * k for k in range(de // 6 + 1)}
    else:
        allowed = {6 * k for k in range(de // 6 + 1)}
    return report.real_count in allowed


def p3_degree_congruence(d1: int, d2: int, d3: int) -> bool:
    """Whether a transverse triple of these degrees is congruence-admissible."""
    if min(d1, d2, d3) < 1:
        raise ValueError("degrees must be at least 1")
    return (d1 * d2 * d3) % 12 in (0, 2, 6, 8)


def p3_achievable_sums(max_sum: int = 120) -> set[int]:
    """All orbit-size sums over {24, 12, 8, 6} with at most one 8 and one 6."""
    sums = set()
    for eight in (0, 8):
        for six in (0, 6):
            base = eight + six
            for a in range(0, (max_sum - base) // 24 + 1):
                for b in range(0, (max_sum - base - 24 * a) // 12 + 1):
                    sums.add(base + 24 * a + 12 * b)
    return {s for s in sums if 0 < s <= max_sum}


def p3_congruence_matches_enumeration(max_sum: int = 120) -> bool:
    """Exhaustive agreement of the mod-12 test with the size enumeration.

    Every achievable sum must satisfy the congruence, and the achievable
    sums must cover all four residues.  The converse is deliberately not
    checked: 2 satisfies the congruence but is below the smallest orbit,
    matching the fact that no transverse product-2 triple exists.
    """
    achievable = p3_achievable_sums(max_sum)
    if any((s % 12) not in (0, 2, 6, 8) for s in achievable):
        return False
    return {s % 12 for s in achievable} == {0, 2, 6, 8}


def check_p3_constraints(report: IntersectionReport) -> tuple[bool, tuple[str, ...]]:
    """Necessary conditions on a transverse space intersection.

    Stabilizers limited to Trivial, C2e, C3, C4; at most one orbit each
    of the C4 and C3 kinds; real count a multiple of twelve; real points
    only on orbits with stabilizer Trivial or C2e.
    """
    if report.space != "P3":
        raise ValueError("these constraints are for space intersections")
    if not report.transverse:
        raise ValueError("the constraints apply to transverse intersections")
    reasons: list[str] = []
    counts = dict(report.orbit_type.counts) if report.orbit_type else {}
    for name in counts:
        if name not in ("Trivial", "C2e", "C3", "C4"):
            reasons.append(f"stabilizer {name} admits no transverse intersection")
    if counts.get("C4", 0) > 1:
        reasons.append("more than one orbit with stabilizer C4")
    if counts.get("C3", 0) > 1:
        reasons.append("more than one orbit with stabilizer C3")
    if report.real_count % 12 != 0:
        reasons.append(f"real count {report.real_count} is not a multiple of 12")
    for point in report.points:
        if point.is_real and point.stabilizer_name not in ("Trivial", "C2e"):
            reasons.append(
                f"real point with stabilizer {point.stabilizer_name}"
            )
    return (not reasons, tuple(reasons))


def _draw_p3(degrees, seed: int, index: int):
    return tuple(
        random_symmetric(4, deg, seed=mix_seed(seed, index, slot))
        for slot, deg in enumerate(degrees)
    )


def verify_p3_constraints(
    degrees: tuple[int, int, int],
    trials: int = 5,
    seed: int = 0,
    precision_bits: int = 128,
) -> VerificationRun:
    """Sample random triples and check the necessary conditions on each.

    Transverse trials must satisfy check_p3_constraints and the degree
    congruence; when the congruence fails, every trial must come back
    non-transverse.
    """
    d1, d2, d3 = degrees
    if min(degrees) < 1:
        raise ValueError("degrees must be at least 1")
    if d1 * d2 * d3 > P3_PRODUCT_CAP:
        raise ValueError(f"product of degrees exceeds the cap {P3_PRODUCT_CAP}")
    congruent = p3_degree_congruence(d1, d2, d3)
    params = {
        "degrees": list(degrees),
        "trials": trials,
        "seed": seed,
        "precision_bits": precision_bits,
        "congruence_admissible": congruent,
    }
    options = SolveOptions(precision_bits=precision_bits)
    records: list[TrialRecord] = []
    contradictions = 0
    transverse = 0
    informative = 0
    budget = trials if not congruent else RESAMPLE_FACTOR * trials
    index = 0
    while index < budget:
        if congruent and transverse >= trials:
            break
        forms = _draw_p3(degrees, seed, index)
        index += 1
        try:
            report = solve_p3(*forms, options=options)
        except (CommonFactorError, DegenerateSystemError) as exc:
            records.append(TrialRecord(index - 1, "rejected", note=str(exc)))
            continue
        except Exception as exc:
            records.append(TrialRecord(index - 1, "error", note=str(exc)))
            continue
        rendered = None if report.orbit_type is None else report.orbit_type.render()
        if report.transverse:
            transverse += 1
            informative += 1
            ok, reasons = check_p3_constraints(report)
            if not congruent:
                ok = False
                reasons = ("transverse despite an inadmissible degree product",)
            if not ok:
                contradictions += 1
            records.append(
                TrialRecord(
                    index - 1, "transverse", rendered, report.real_count,
                    note="; ".join(reasons), report=report,
                )
            )
        else:
            if not congruent:
                informative += 1
            records.append(
                TrialRecord(
                    index - 1, "non-transverse", rendered, report.real_count,
                    report=report,
                )
            )
    counts = {
        "draws": len(records),
        "transverse": transverse,
        "non_transverse": sum(1 for r in records if r.outcome == "non-transverse"),
        "rejected": sum(1 for r in records if r.outcome == "rejected"),
        "errors": sum(1 for r in records if r.outcome == "error"),
        "contradictions": contradictions,
    }
    if contradictions:
        verdict = "fail"
    elif informative:
        verdict = "pass"
    else:
        verdict = "inconclusive"
    return VerificationRun("p3-constraints", params, tuple(records), verdict, counts)


def orbit_type_independence(
    space: str,
    degrees: tuple[int, ...],
    trials: int = 10,
    seed: int = 0,
    precision_bits: int = 128,
) -> VerificationRun:
    """Check that every transverse instance yields the same orbit type.

    Needs at least two transverse trials for a non-vacuous pass; a cell
    where every completed trial is non-transverse passes vacuously (the
    impossible plane cells), and a cell where every draw is rejected
    passes only when that is structurally forced.
    """
    if space not in ("P2", "P3"):
        raise ValueError("space must be P2 or P3")
    if space == "P2":
        if len(degrees) != 2:
            raise ValueError("plane intersections take two degrees")
        if degrees[0] * degrees[1] > P2_PRODUCT_CAP:
            raise ValueError(f"product of degrees exceeds the cap {P2_PRODUCT_CAP}")
    else:
        if len(degrees) != 3:
            raise ValueError("space intersections take three degrees")
        if degrees[0] * degrees[1] * degrees[2] > P3_PRODUCT_CAP:
            raise ValueError(f"product of degrees exceeds the cap {P3_PRODUCT_CAP}")
    params = {
        "space": space,
        "degrees": list(degrees),
        "trials": trials,
        "seed": seed,
        "precision_bits": precision_bits,
    }
    options = SolveOptions(precision_bits=precision_bits)
    records: list[TrialRecord] = []
    seen_type: OrbitType | None = None
    contradictions = 0
    transverse = 0
    completed = 0
    index = 0
    while index < RESAMPLE_FACTOR * trials and transverse < trials:
        if space == "P2":
            forms = _draw_p2(degrees[0], degrees[1], seed, index)
        else:
            forms = _draw_p3(degrees, seed, index)
        index += 1
        try:
            report = (
                solve_p2(*forms, options)
                if space == "P2"
                else solve_p3(*forms, options=options)
            )
        except (CommonFactorError, DegenerateSystemError) as exc:
            records.append(TrialRecord(index - 1, "rejected", note=str(exc)))
            continue
        except Exception as exc:
            records.append(TrialRecord(index - 1, "error", note=str(exc)))
            continue
        completed += 1
        rendered = None if report.orbit_type is None else report.orbit_type.render()
        if not report.transverse:
            records.append(
                TrialRecord(
                    index - 1, "non-transverse", rendered, report.real_count,
                    report=report,
                )
            )
            continue
        transverse += 1
        note = ""
        if seen_type is None:
            seen_type = report.orbit_type
        elif report.orbit_type != seen_type:
            contradictions += 1
            note = f"orbit type differs from first transverse trial {seen_type.render()}"
        records.append(
            TrialRecord(
                index - 1, "transverse", rendered, report.real_count,
                note=note, report=report,
            )
        )
    counts = {
        "draws": len(records),
        "transverse": transverse,
        "non_transverse": sum(1 for r in records if r.outcome == "non-transverse"),
        "rejected": sum(1 for r in records if r.outcome == "rejected"),
        "errors": sum(1 for r in records if r.outcome == "error"),
        "contradictions": contradictions,
    }
    if contradictions:
        verdict = "fail"
    elif transverse >= 2:
        verdict = "pass"
        counts["orbit_type"] = seen_type.render()
    elif completed and transverse == 0:
        verdict = "pass"
        counts["vacuous"] = True
    elif (
        not completed
        and space == "P2"
        and _structurally_vacuous_p2(*degrees)
        and counts["rejected"] == len(records)
    ):
        verdict = "pass"
        counts["vacuous"] = True
    else:
        verdict = "inconclusive"
    return VerificationRun("orbit-type-independence", params, tuple(records), verdict, counts)
