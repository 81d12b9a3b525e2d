"""Exact-arithmetic toolkit for binary quadratic operads.

Computes multilinear component dimensions of quotients of the free operad on
one non-symmetric binary operation, Koszul dual relation spaces by two
independent routes, and the generating-series obstruction to Koszulity.
"""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    CrossCheckError,
    FieldError,
    ParseError,
    QuadopError,
)
from .trees import (
    DEFAULT_MAX_ARITY,
    MonomialIndex,
    TreeMonomial,
    enumerate_multilinear,
    graft,
    index_of,
    iter_multilinear,
    mirror,
    monomial_at,
    monomial_count,
    relabel,
    render,
)
from .linalg import (
    Membership,
    RrefBasis,
    SparseMat,
    SparseVec,
    annihilator,
    member,
    rank,
    rref,
)
from .identities import (
    IdentitySource,
    LinComb,
    RelationSpace,
    opposite_relations,
    parse_expression,
    parse_identity,
    s3_closure,
)
from .ideal import DimEntry, DimTable, consequences, dims
from .pairing import PairingForm, gk_pairing, koszul_dual
from .lieadmiss import (
    ConditionReport,
    Jacobiator,
    NOVIKOV_DUAL_CONDITIONS,
    NOVIKOV_REWRITES,
    QuotientBasis,
    check_novikov_conditions,
    jacobiator,
    jacobiator_conditions,
    normal_form,
    quotient_basis,
)
from .series import KoszulVerdict, TruncSeries, compose, hilbert_series, koszul_obstruction
from .presets import PRESET_NAMES, PRESET_RELATIONS, load_relations_file, preset_space, registry
