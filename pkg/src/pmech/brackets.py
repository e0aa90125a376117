"""Star products and the bracket family built on them.

The star product is the terminating bidifferential series on polynomial
symbols, normalized so that [q, p] = i*hbar in each quantum sector:

    a (*) b = sum_{r,s} (i*hbar/2)^(r+s) (-1)^s / (r! s!)
              (d_q^r d_p^s a) (d_p^r d_q^s b),

taken per quantum degree of freedom with that sector's Planck constant.
Classical sectors contribute pointwise multiplication. The universal
bracket rescales the star commutator by 1/(i*h1) + 1/(i*h2); its 1-jet at
h2 = 0 is the quantum-classical bracket, and the historical two-term
combination is available separately for comparison.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DimensionMismatch, NotClassical
from .exactnum import (
    GR_I,
    GaussianRational,
    H1,
    H2,
    HP_ONE,
    HPolynomial,
    RF_ONE,
    RationalFunction,
)
from .symbols import JetObservable, Symbol, pvar, qvar


@dataclass(frozen=True)
class SectorConfig:
    """Which sectors multiply with a quantum deformation."""

    sector1_quantum: bool
    sector2_quantum: bool

    @classmethod
    def from_name(cls, name: str) -> "SectorConfig":
        try:
            return _SECTOR_CONFIGS[name]
        except KeyError:
            raise ValueError(f"unknown sector {name!r}") from None

    def quantum_sectors(self):
        out = []
        if self.sector1_quantum:
            out.append(1)
        if self.sector2_quantum:
            out.append(2)
        return out


UNIVERSAL = SectorConfig(True, True)
CLASSICAL_BOTH = SectorConfig(False, False)
SECTOR1_QUANTUM = SectorConfig(True, False)
SECTOR2_QUANTUM = SectorConfig(False, True)

_SECTOR_CONFIGS = {
    "universal": UNIVERSAL,
    "qq": UNIVERSAL,
    "cc": CLASSICAL_BOTH,
    "qc": SECTOR1_QUANTUM,
}

_INV_IH = {
    H1: RationalFunction(HP_ONE, HPolynomial({(1, 0): GR_I})),
    H2: RationalFunction(HP_ONE, HPolynomial({(0, 1): GR_I})),
}
UB_SCALAR = _INV_IH[H1] + _INV_IH[H2]

_HALF_I_H = {
    H1: RationalFunction(HPolynomial({(1, 0): GaussianRational(0, Fraction(1, 2))})),
    H2: RationalFunction(HPolynomial({(0, 1): GaussianRational(0, Fraction(1, 2))})),
}


def star(a: Symbol, b: Symbol, cfg: SectorConfig = UNIVERSAL) -> Symbol:
    """Star product of two symbols under the given sector configuration.

    Terminates on polynomials because each bidifferential order lowers the
    degree on both sides.
    """
    a._check_same_n(b)
    pairs = []
    for sector in cfg.quantum_sectors():
        for index in range(1, a.n + 1):
            pairs.append((qvar(sector, index), pvar(sector, index), sector))
    tensor = [(a, b, RF_ONE)]
    for qv, pv, sector in pairs:
        half = _HALF_I_H[sector]
        half_pows = [RF_ONE]
        expanded = []
        for f, g, c in tensor:
            fq, gp = f, g
            r = 0
            while fq and gp:
                fqp, gpq = fq, gp
                s = 0
                while fqp and gpq:
                    k = r + s
                    while len(half_pows) <= k:
                        half_pows.append(half_pows[-1] * half)
                    scale = c * half_pows[k]
                    ratio = Fraction(-1 if s % 2 else 1, factorial(r) * factorial(s))
                    if ratio != 1:
                        scale = scale * ratio
                    expanded.append((fqp, gpq, scale))
                    fqp = fqp.diff(pv)
                    gpq = gpq.diff(qv)
                    s += 1
                fq = fq.diff(qv)
                gp = gp.diff(pv)
                r += 1
        tensor = expanded
    return Symbol.sum_of(((f * g).scale(c) for f, g, c in tensor), n=a.n)


def star_commutator(a: Symbol, b: Symbol, cfg: SectorConfig = UNIVERSAL) -> Symbol:
    return star(a, b, cfg) - star(b, a, cfg)


def moyal_bracket(a: Symbol, b: Symbol, hbar: int = H1) -> Symbol:
    """(1/(i*hbar)) times the star commutator with only that sector quantum."""
    cfg = SECTOR1_QUANTUM if hbar == H1 else SECTOR2_QUANTUM
    return star_commutator(a, b, cfg).scale(_INV_IH[hbar])


def poisson_bracket(a: Symbol, b: Symbol, sectors=(1, 2)) -> Symbol:
    """Classical bracket over the chosen sectors."""
    a._check_same_n(b)
    parts = []
    for sector in sectors:
        for index in range(1, a.n + 1):
            qv, pv = qvar(sector, index), pvar(sector, index)
            parts.append(a.diff(qv) * b.diff(pv))
            parts.append(-(a.diff(pv) * b.diff(qv)))
    return Symbol.sum_of(parts, n=a.n)


def universal_bracket(a: Symbol, b: Symbol) -> Symbol:
    """Star commutator with both sectors quantum, rescaled by
    1/(i*h1) + 1/(i*h2); the bracket that restricts to every sector."""
    return star_commutator(a, b, UNIVERSAL).scale(UB_SCALAR)


def qq_bracket(a: Symbol, b: Symbol, h1_value=None, h2_value=None) -> Symbol:
    """Universal bracket, optionally with numeric Planck constants."""
    out = universal_bracket(a, b)
    if h1_value is None and h2_value is None:
        return out
    return out.subs_hbars(
        h1_value if h1_value is not None else 0,
        h2_value if h2_value is not None else 0,
    )


def cc_bracket(a: Symbol, b: Symbol) -> Symbol:
    """Poisson bracket over both sectors; operands must be hbar-free."""
    if not a.is_hbar_free():
        raise NotClassical(f"left operand depends on Planck constants: {a}")
    if not b.is_hbar_free():
        raise NotClassical(f"right operand depends on Planck constants: {b}")
    return poisson_bracket(a, b, sectors=(1, 2))


def qc_bracket(a: Symbol, b: Symbol) -> JetObservable:
    """1-jet at h2 = 0 of the universal bracket.

    Raises PoleAtClassicalLimit when the pair is not admissible in the
    quantum-classical sector (for instance two bare momenta).
    """
    return universal_bracket(a, b).jet()


def _poisson_star_sector2(a: Symbol, b: Symbol) -> Symbol:
    """Sector-2 Poisson bidifferential composed with the sector-1 star."""
    cfg = SECTOR1_QUANTUM
    parts = []
    for index in range(1, a.n + 1):
        qv, pv = qvar(2, index), pvar(2, index)
        parts.append(star(a.diff(qv), b.diff(pv), cfg))
        parts.append(-star(a.diff(pv), b.diff(qv), cfg))
    return Symbol.sum_of(parts, n=a.n)


def aleksandrov_bracket(a: JetObservable, b: JetObservable) -> Symbol:
    """Historical two-term quantum-classical combination on jet values:
    scaled sector-1 commutator plus the symmetrized sector-2 Poisson term.
    """
    A, B = a.value, b.value
    A._check_same_n(B)
    term1 = star_commutator(A, B, SECTOR1_QUANTUM).scale(_INV_IH[H1])
    sym = _poisson_star_sector2(A, B) - _poisson_star_sector2(B, A)
    return term1 + sym.scale(Fraction(1, 2))


def qc_third_term(a: Symbol, b: Symbol) -> Symbol:
    """The analytic correction: what the full quantum-classical bracket adds
    beyond the two-term combination, isolated by subtraction."""
    full = qc_bracket(a, b).value
    return full - aleksandrov_bracket(a.jet(), b.jet())


@dataclass(frozen=True)
class BracketResult:
    """Sector-tagged bracket value: a plain symbol or a 1-jet."""

    kind: str
    symbol: Symbol | None = None
    jet: JetObservable | None = None

    @classmethod
    def of_symbol(cls, value: Symbol) -> "BracketResult":
        return cls(kind="symbol", symbol=value)

    @classmethod
    def of_jet(cls, value: JetObservable) -> "BracketResult":
        return cls(kind="jet", jet=value)

    def render(self) -> str:
        if self.kind == "jet":
            return self.jet.render()
        return self.symbol.render()

    def __str__(self):
        return self.render()


def sector_bracket(
    sector: str, a: Symbol, b: Symbol, h1_value=None, h2_value=None
) -> BracketResult:
    """Dispatch a bracket evaluation by sector name."""
    if sector == "universal":
        return BracketResult.of_symbol(universal_bracket(a, b))
    if sector == "qq":
        return BracketResult.of_symbol(qq_bracket(a, b, h1_value, h2_value))
    if sector == "cc":
        return BracketResult.of_symbol(cc_bracket(a, b))
    if sector == "qc":
        return BracketResult.of_jet(qc_bracket(a, b))
    raise ValueError(f"unknown sector {sector!r}")
