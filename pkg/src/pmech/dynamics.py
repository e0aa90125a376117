"""Exact time evolution by iterated brackets.

The dynamic equation df/dt = Bracket(H, f) is solved as a formal Taylor
series: f_{k+1} is the sector bracket of H with f_k, and the truncated
solution is sum_k t^k/k! f_k. Coefficients stay exact rational functions;
floats appear only when a trajectory is rendered.

The H-first ordering is the default because it reproduces the rotation
example's cos/sin matrices; passing bracket_order="f-first" flips the sign
convention.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotClassical, PoleAtClassicalLimit
from .exactnum import GaussianRational
from .symbols import Symbol
from .brackets import poisson_bracket, universal_bracket

SECTORS = ("universal", "qq", "cc", "qc")
BRACKET_ORDERS = ("H-first", "f-first")


@dataclass
class EvolutionSeries:
    """Taylor data of one evolution: f(t) ~ sum t^k/k! coeffs[k]."""

    sector: str
    hamiltonian: Symbol
    observable: Symbol
    coeffs: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def _sector_step(sector: str):
    if sector == "cc":
        return lambda h, f: poisson_bracket(h, f, sectors=(1, 2))
    if sector in ("universal", "qq", "qc"):
        return universal_bracket
    raise ValueError(f"unknown sector {sector!r}")


def evolve_taylor(
    sector: str,
    hamiltonian: Symbol,
    observable: Symbol,
    order: int,
    bracket_order: str = "H-first",
) -> EvolutionSeries:
    """Iterate the sector bracket to the requested Taylor order.

    The qc sector iterates in the formal h2 algebra; jets are taken only
    when reading the series out (see evolve_qc_jet).
    """
    if bracket_order not in BRACKET_ORDERS:
        raise ValueError(f"unknown bracket order {bracket_order!r}")
    if sector == "cc":
        if not hamiltonian.is_hbar_free() or not observable.is_hbar_free():
            raise NotClassical("cc evolution needs hbar-free Hamiltonian and observable")
    step = _sector_step(sector)
    coeffs = [observable]
    current = observable
    for _ in range(order):
        if bracket_order == "H-first":
            current = step(hamiltonian, current)
        else:
            current = step(current, hamiltonian)
        coeffs.append(current)
    return EvolutionSeries(
        sector=sector, hamiltonian=hamiltonian, observable=observable, coeffs=coeffs
    )


def evolve_qc_jet(
    hamiltonian: Symbol,
    observable: Symbol,
    order: int,
    bracket_order: str = "H-first",
) -> list:
    """Quantum-classical evolution read out as 1-jets at h2 = 0.

    Raises PoleAtClassicalLimit naming the offending order when an iterate
    is not jet-admissible.
    """
    series = evolve_taylor("qc", hamiltonian, observable, order, bracket_order)
    jets = []
    for k, coeff in enumerate(series.coeffs):
        try:
            jets.append(coeff.jet())
        except PoleAtClassicalLimit as exc:
            raise PoleAtClassicalLimit(
                f"order {k}: {exc.args[0]}", monomial=exc.monomial
            ) from None
    return jets


def _taylor_value(values, t: Fraction) -> GaussianRational:
    """Horner evaluation of sum values[k] t^k / k!."""
    acc = GaussianRational(0)
    for k in range(len(values) - 1, -1, -1):
        acc = values[k] + acc * Fraction(t, k + 1)
    return acc


def trajectory_numeric(
    series: EvolutionSeries,
    point: dict,
    times,
    h1_value=0,
    h2_value=0,
) -> list:
    """Exact truncated-Taylor trajectory: one (t, value) row per time."""
    times = [Fraction(t) for t in times]
    evaluated = [c.eval(point, h1_value, h2_value) for c in series.coeffs]
    return [(t, _taylor_value(evaluated, t)) for t in times]


def jet_trajectory_numeric(
    jets: list,
    point: dict,
    times,
    h1_value=0,
) -> list:
    """Trajectory of a jet series: (t, value, derivative) rows."""
    times = [Fraction(t) for t in times]
    values = [j.value.eval(point, h1_value, 0) for j in jets]
    derivs = [j.derivative.eval(point, h1_value, 0) for j in jets]
    return [(t, _taylor_value(values, t), _taylor_value(derivs, t)) for t in times]
