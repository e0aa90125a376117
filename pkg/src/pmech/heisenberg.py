"""Group-level computations on one Heisenberg sector and on the double group.

Elements carry exact rational coordinates, so group-law and action
identities are checked by equality rather than tolerance.
"""

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch


def _frac_tuple(values):
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class HGroupElement:
    """Element (s, x, y) of a single Heisenberg sector, x and y of length n."""

    s: Fraction
    x: tuple
    y: tuple

    def __init__(self, s, x, y):
        x = _frac_tuple(x)
        y = _frac_tuple(y)
        if len(x) != len(y):
            raise DimensionMismatch(
                f"x has length {len(x)} but y has length {len(y)}"
            )
        if not x:
            raise DimensionMismatch("dimension n must be at least 1")
        object.__setattr__(self, "s", Fraction(s))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return len(self.x)

    def __str__(self):
        xs = ",".join(str(v) for v in self.x)
        ys = ",".join(str(v) for v in self.y)
        return f"{self.s};{xs};{ys}"


@dataclass(frozen=True)
class DGroupElement:
    """Pair of sector elements sharing the same n."""

    g1: HGroupElement
    g2: HGroupElement

    def __post_init__(self):
        if self.g1.n != self.g2.n:
            raise DimensionMismatch("components have different dimensions")

    @property
    def n(self) -> int:
        return self.g1.n

    def __str__(self):
        return f"{self.g1}|{self.g2}"


@dataclass(frozen=True)
class CoadjointPoint:
    """Point (hbar, q, p) of the dual of the Heisenberg Lie algebra."""

    hbar: Fraction
    q: tuple
    p: tuple

    def __init__(self, hbar, q, p):
        q = _frac_tuple(q)
        p = _frac_tuple(p)
        if len(q) != len(p):
            raise DimensionMismatch(
                f"q has length {len(q)} but p has length {len(p)}"
            )
        object.__setattr__(self, "hbar", Fraction(hbar))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return len(self.q)

    def __str__(self):
        qs = ",".join(str(v) for v in self.q)
        ps = ",".join(str(v) for v in self.p)
        return f"{self.hbar};{qs};{ps}"


def symplectic_form(x, y, x2, y2) -> Fraction:
    """sum_j (x_j y2_j - x2_j y_j)."""
    x, y, x2, y2 = map(_frac_tuple, (x, y, x2, y2))
    if not len(x) == len(y) == len(x2) == len(y2):
        raise DimensionMismatch("symplectic form needs equal-length vectors")
    return sum((xj * y2j - x2j * yj for xj, yj, x2j, y2j in zip(x, y, x2, y2)), Fraction(0))


def hn_identity(n: int = 1) -> HGroupElement:
    return HGroupElement(0, (0,) * n, (0,) * n)


def hn_multiply(g: HGroupElement, h: HGroupElement) -> HGroupElement:
    """Group law: (s, x, y)(s', x', y') twists s by half the symplectic form."""
    if g.n != h.n:
        raise DimensionMismatch("group elements of different dimension")
    s = g.s + h.s + Fraction(1, 2) * symplectic_form(g.x, g.y, h.x, h.y)
    x = tuple(a + b for a, b in zip(g.x, h.x))
    y = tuple(a + b for a, b in zip(g.y, h.y))
    return HGroupElement(s, x, y)


def hn_inverse(g: HGroupElement) -> HGroupElement:
    return HGroupElement(-g.s, tuple(-v for v in g.x), tuple(-v for v in g.y))


def dn_multiply(d: DGroupElement, e: DGroupElement) -> DGroupElement:
    if d.n != e.n:
        raise DimensionMismatch("double-group elements of different dimension")
    return DGroupElement(hn_multiply(d.g1, e.g1), hn_multiply(d.g2, e.g2))


def coadjoint(g: HGroupElement, f: CoadjointPoint) -> CoadjointPoint:
    """Co-adjoint action: (hbar, q, p) -> (hbar, q + hbar*y, p - hbar*x).

    Fixes every point with hbar = 0; sweeps the full 2n-plane otherwise.
    """
    if g.n != f.n:
        raise DimensionMismatch("group element and point of different dimension")
    q = tuple(qj + f.hbar * yj for qj, yj in zip(f.q, g.y))
    p = tuple(pj - f.hbar * xj for pj, xj in zip(f.p, g.x))
    return CoadjointPoint(f.hbar, q, p)


def classical_rep_phase(q, p, g: HGroupElement) -> Fraction:
    """Exact phase exponent theta = q.x + p.y of the one-dimensional
    representation g -> exp(-2*pi*i*theta); the centre coordinate s drops out.
    """
    q = _frac_tuple(q)
    p = _frac_tuple(p)
    if len(q) != len(p) or len(q) != g.n:
        raise DimensionMismatch("phase-space point and group element disagree")
    return sum(
        (qj * xj + pj * yj for qj, pj, xj, yj in zip(q, p, g.x, g.y)), Fraction(0)
    )


def phase_value(theta: Fraction) -> complex:
    """Float rendering of exp(-2*pi*i*theta)."""
    return cmath.exp(-2j * cmath.pi * float(theta))
