"""Lifting classical polynomials to double-group observables and projecting back.

Mechanisation substitutes each momentum p_j by Lambda_j * p_j with

    Lambda_1 = h2 / (h1 + h2),      Lambda_2 = h1 / (h1 + h2),

the regularizing factors that make the canonical bracket relations come out
as exact Kronecker deltas. Coordinates are untouched. For observables built
from the linear generators the symmetrized calculus reduces to exactly this
substitution.

The classical projection returns the recorded preimage (momentum factors go
back to 1). It is deliberately NOT the h1, h2 -> 0 limit of Lambda_j: that
limit is direction-dependent (1/2 along h1 = h2), so the projection follows
the representation-table semantics instead.
"""

from dataclasses import dataclass

from .errors import NoPreimage, NotClassical, PoleAtEvaluation
from .exactnum import HP_H1, HP_H2, RationalFunction
from .symbols import JetObservable, KIND_P, Symbol

_LAMBDA = {
    1: RationalFunction(HP_H2, HP_H1 + HP_H2),
    2: RationalFunction(HP_H1, HP_H1 + HP_H2),
}


def lambda_factor(sector: int) -> RationalFunction:
    """Momentum weight of the given sector: h_other / (h1 + h2)."""
    return _LAMBDA[sector]


@dataclass(frozen=True)
class MechanisedObservable:
    """Double-group observable with its classical preimage kept alongside."""

    symbol: Symbol
    classical: Symbol

    @property
    def n(self) -> int:
        return self.symbol.n

    def __str__(self):
        return self.symbol.render()


def mechanise_universal(f: Symbol) -> MechanisedObservable:
    """Weight every momentum power with its Lambda factor."""
    if not f.is_hbar_free():
        raise NotClassical(f"cannot mechanise hbar-dependent observable: {f}")
    out = {}
    for mono, coeff in f.terms.items():
        for (sector, kind, _index), exp in mono.items():
            if kind == KIND_P:
                coeff = coeff * _LAMBDA[sector] ** exp
        out[mono] = coeff
    return MechanisedObservable(symbol=Symbol(f.n, out), classical=f)


def _as_mechanised(m) -> MechanisedObservable:
    if isinstance(m, MechanisedObservable):
        return m
    raise NoPreimage(
        "projection needs a mechanised observable with a recorded classical preimage"
    )


def project_cc(m: MechanisedObservable) -> Symbol:
    """Classical projection: the recorded preimage."""
    return _as_mechanised(m).classical


def project_qq(m, h1_value=None, h2_value=None) -> Symbol:
    """Quantum-quantum projection: formally the identity; numeric Planck
    constants (both nonzero) may be substituted."""
    symbol = m.symbol if isinstance(m, MechanisedObservable) else m
    if h1_value is None and h2_value is None:
        return symbol
    if not h1_value or not h2_value:
        raise PoleAtEvaluation(
            "quantum-quantum projection needs nonzero h1 and h2"
        )
    return symbol.subs_hbars(h1_value, h2_value)


def project_qc(m) -> JetObservable:
    """Quantum-classical projection: the coefficient 1-jet at h2 = 0."""
    symbol = m.symbol if isinstance(m, MechanisedObservable) else m
    return symbol.jet()
