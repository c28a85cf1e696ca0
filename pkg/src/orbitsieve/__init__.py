"""Exact arithmetic dynamics on the projective line over Q.

Rational self-maps as integer form pairs, orbits over Q and modulo prime
powers, dynatomic forms and rational periodic points, primitive prime
divisors along orbits, and a certified day/night semidecision procedure for
"does this orbit ever meet that finite set of points?".
"""

from .numtheory import (
    Factorization,
    FactorizationBudgetError,
    ResidueClassSet,
    crt_pair,
    factorial_valuation,
    factorize,
    good_primes,
    is_prime,
    mobius,
    primality_confidence,
    valuation,
)
from .projective import (
    INFINITY,
    ZERO,
    ChordalValue,
    PrimePowerModulus,
    ProjectivePoint,
    ResiduePoint,
    chordal,
    congruent_mod,
    format_point,
    normalize,
    parse_modulus,
    parse_point,
    reduce_mod,
)
from .ratmap import (
    BadPrimeError,
    BadPrimeReport,
    BinaryForm,
    DegenerateMapError,
    DynatomicDivisionError,
    DynatomicForm,
    HeightBudgetError,
    RationalMap,
    dynatomic,
    dynatomic_degree,
    is_polynomial_type,
    iterate_point,
    newton_map,
    parse_map,
    parse_polynomial,
    rational_periodic_points,
    resultant,
)
from .orbit import HitSet, ModOrbit, OrbitSummary, hit_set, orbit_mod, orbit_rational
from .zsigmondy import (
    PrimitiveDivisorRun,
    SupportReport,
    difference_support,
    primitive_divisors,
)
from .localglobal import (
    Budgets,
    Certificate,
    CycleBlowupError,
    DecisionProblem,
    FactorialDepthRow,
    ModulusEvidence,
    PlaceReport,
    certificate_from_dict,
    certificate_to_dict,
    decide,
    degree_one_demo,
    intersect_hit_sets,
    newton_place_report,
    night_schedule,
    problem_from_dict,
    problem_to_dict,
    verify_certificate,
)

__version__ = "0.1.0"
