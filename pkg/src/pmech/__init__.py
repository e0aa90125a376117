"""pmech: exact phase-space brackets on one or two Heisenberg sectors.

The package keeps every computation in the field of rational functions of
the two formal Planck constants over the Gaussian rationals, so algebraic
identities (canonical relations, Jacobi, the rotation example) hold exactly
and are checked by syntactic equality.
"""

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    IndexOutOfRange,
    NoPreimage,
    NotClassical,
    ParseError,
    PMechError,
    PoleAtClassicalLimit,
    PoleAtEvaluation,
)
from .exactnum import (
    H1,
    H2,
    GaussianRational,
    HPolynomial,
    RationalFunction,
)
from .symbols import JetObservable, Monomial, Symbol, p, q
from .heisenberg import (
    CoadjointPoint,
    DGroupElement,
    HGroupElement,
    classical_rep_phase,
    coadjoint,
    dn_multiply,
    hn_identity,
    hn_inverse,
    hn_multiply,
    phase_value,
    symplectic_form,
)
from .brackets import (
    BracketResult,
    SectorConfig,
    aleksandrov_bracket,
    cc_bracket,
    moyal_bracket,
    poisson_bracket,
    qc_bracket,
    qc_third_term,
    qq_bracket,
    star,
    star_commutator,
    universal_bracket,
)
from .mechanise import (
    MechanisedObservable,
    lambda_factor,
    mechanise_universal,
    project_cc,
    project_qc,
    project_qq,
)
from .dynamics import (
    EvolutionSeries,
    evolve_qc_jet,
    evolve_taylor,
    jet_trajectory_numeric,
    trajectory_numeric,
)
from .oracle import (
    NCElement,
    nc_multiply,
    oracle_star_check,
    weyl_quantize,
)
from .parser import lower, parse, parse_symbol

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
