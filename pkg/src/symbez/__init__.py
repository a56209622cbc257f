"""Symmetric hypersurface intersections in P2 and P3.

Exact cyclotomic arithmetic, orbit decomposition under the coordinate
permutation action, fixed-point catalogs with obstruction certificates,
a numeric solver with exact certification, and verification drivers for
the classification of transverse orbit types.
"""

__version__ = "0.1.0"

from .exactnum import Cyclo12, ComplexApprox, Rational, I, OMEGA, OMEGA2, ZETA
from .group import OrbitType, ProjPointExact, ProjPointNumeric
from .poly import (
    MultiPoly,
    ElemBasisPoly,
    elementary_symmetric,
    random_symmetric,
    render_poly,
)
from .parse import PolyParseError, parse_poly, parse_scalar
from .fixedpoints import (
    FixedPointFamily,
    Obstruction,
    catalog,
    full_catalog,
    obstruction,
    special_point_membership,
    verify_catalog_by_stabilizer,
)
from .solver import (
    CommonFactorError,
    DegenerateSystemError,
    IntersectionReport,
    SolveOptions,
    SolvedPoint,
    solve_p2,
    solve_p3,
)
from .verify import (
    VerificationRun,
    check_p3_constraints,
    check_real_count_p2,
    expected_orbit_type_p2,
    orbit_type_independence,
    p3_degree_congruence,
    verify_p2_table,
    verify_p3_constraints,
)

__all__ = [
    "Cyclo12",
    "ComplexApprox",
    "Rational",
    "I",
    "OMEGA",
    "OMEGA2",
    "ZETA",
    "OrbitType",
    "ProjPointExact",
    "ProjPointNumeric",
    "MultiPoly",
    "ElemBasisPoly",
    "elementary_symmetric",
    "random_symmetric",
    "render_poly",
    "PolyParseError",
    "parse_poly",
    "parse_scalar",
    "FixedPointFamily",
    "Obstruction",
    "catalog",
    "full_catalog",
    "obstruction",
    "special_point_membership",
    "verify_catalog_by_stabilizer",
    "CommonFactorError",
    "DegenerateSystemError",
    "IntersectionReport",
    "SolveOptions",
    "SolvedPoint",
    "solve_p2",
    "solve_p3",
    "VerificationRun",
    "check_p3_constraints",
    "check_real_count_p2",
    "expected_orbit_type_p2",
    "orbit_type_independence",
    "p3_degree_congruence",
    "verify_p2_table",
    "verify_p3_constraints",
]
