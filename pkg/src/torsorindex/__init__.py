"""Period and index of torsors of elliptic curves with full rational 2-torsion.

A torsor class on y^2 = x(x-a)(x-b) is a pair (M, N) of square classes.
This package decides its period (1 or 2) and index (1, 2 or 4) with exact
rational arithmetic: Kummer descent groups, Hilbert symbols, quaternion
splitting, point halving in multiquadratic fields, plus brute-force oracles
for everything the closed formulas claim.
"""

from .classify import (
    SPECIAL_CURVE,
    SPECIAL_GROUP,
    TorsorClass,
    TorsorClassification,
    Witness,
    classify,
    ed_conjectural,
    find_halving_witness,
    index_general,
    index_special,
    index_witness,
    known_complete_group,
    period,
    search_examples,
)
from .curves import (
    IDENTITY,
    Curve,
    DescentGroup,
    DescentPair,
    Point,
    bounded_point_search,
    descent_group,
    kummer_image,
)
from .errors import BudgetError, DomainError
from .exact import (
    Factorization,
    SquareClass,
    factor,
    is_prime,
    is_squarefree,
    legendre,
    rational_sqrt,
    square_class,
)
from .hilbert import (
    Place,
    QuaternionClass,
    hilbert_oracle,
    hilbert_symbol,
    quaternion_splits,
    ramified_places,
)
from .multiquad import HalfPoint, MQElement, MultiQuadField, halve_point

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "Curve",
    "DescentGroup",
    "DescentPair",
    "DomainError",
    "Factorization",
    "HalfPoint",
    "IDENTITY",
    "MQElement",
    "MultiQuadField",
    "Place",
    "Point",
    "QuaternionClass",
    "SPECIAL_CURVE",
    "SPECIAL_GROUP",
    "SquareClass",
    "TorsorClass",
    "TorsorClassification",
    "Witness",
    "bounded_point_search",
    "classify",
    "descent_group",
    "ed_conjectural",
    "factor",
    "find_halving_witness",
    "halve_point",
    "hilbert_oracle",
    "hilbert_symbol",
    "index_general",
    "index_special",
    "index_witness",
    "is_prime",
    "is_squarefree",
    "known_complete_group",
    "kummer_image",
    "legendre",
    "period",
    "quaternion_splits",
    "ramified_places",
    "rational_sqrt",
    "search_examples",
    "square_class",
]
