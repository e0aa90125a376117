"""Phase-space observables: sparse polynomials over rational-function coefficients.

Variables come in two sectors, each with q and p components and indices
1..n. A variable id is the tuple (sector, kind, index) with kind 0 for q
and 1 for p; the canonical variable order is q1 < p1 < q2 < p2, indices
ascending inside each block.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, PoleAtClassicalLimit
from .exactnum import (
    GR_ONE,
    GaussianRational,
    RF_ONE,
    RF_ZERO,
    RationalFunction,
)

KIND_Q = 0
KIND_P = 1

VarId = tuple


def var_id(sector: int, kind: int, index: int = 1) -> VarId:
    if sector not in (1, 2):
        raise ValueError(f"sector must be 1 or 2, got {sector}")
    if kind not in (KIND_Q, KIND_P):
        raise ValueError(f"kind must be q(0) or p(1), got {kind}")
    if index < 1:
        raise ValueError(f"index must be positive, got {index}")
    return (sector, kind, index)


def qvar(sector: int, index: int = 1) -> VarId:
    return var_id(sector, KIND_Q, index)


def pvar(sector: int, index: int = 1) -> VarId:
    return var_id(sector, KIND_P, index)


def var_name(var: VarId) -> str:
    sector, kind, index = var
    base = f"{'qp'[kind]}{sector}"
    return base if index == 1 else f"{base}_{index}"


def all_vars(n: int):
    """All variable ids for n degrees of freedom, in canonical order."""
    out = []
    for sector in (1, 2):
        for kind in (KIND_Q, KIND_P):
            for index in range(1, n + 1):
                out.append((sector, kind, index))
    return out


class Monomial:
    """Product of phase-variable powers; exponents are strictly positive."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exponents=None):
        if exponents is None:
            items = ()
        elif isinstance(exponents, dict):
            items = tuple(sorted((v, e) for v, e in exponents.items() if e))
        else:
            items = tuple(sorted((v, e) for v, e in exponents if e))
        for _, e in items:
            if e < 0:
                raise ValueError("negative exponent in monomial")
        object.__setattr__(self, "_exps", items)
        object.__setattr__(self, "_hash", hash(items))

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    @classmethod
    def unit(cls) -> "Monomial":
        return _MONO_UNIT

    @classmethod
    def of(cls, var: VarId, power: int = 1) -> "Monomial":
        return cls({var: power})

    @property
    def exponents(self):
        return dict(self._exps)

    def items(self):
        return self._exps

    def is_unit(self) -> bool:
        return not self._exps

    def degree(self) -> int:
        return sum(e for _, e in self._exps)

    def exponent(self, var: VarId) -> int:
        for v, e in self._exps:
            if v == var:
                return e
        return 0

    def max_index(self) -> int:
        return max((v[2] for v, _ in self._exps), default=0)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not self._exps:
            return other
        if not other._exps:
            return self
        exps = dict(self._exps)
        for v, e in other._exps:
            exps[v] = exps.get(v, 0) + e
        return Monomial(exps)

    def diff(self, var: VarId):
        """(reduced monomial, old exponent), or None when the derivative is 0."""
        exps = dict(self._exps)
        power = exps.get(var, 0)
        if not power:
            return None
        if power == 1:
            del exps[var]
        else:
            exps[var] = power - 1
        return Monomial(exps), power

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._exps == other._exps

    def __hash__(self):
        return self._hash

    def sort_key(self, n: int):
        """Graded-lex key: total degree, then exponent vector q1..p2."""
        vec = tuple(self.exponent(v) for v in all_vars(n))
        return (self.degree(), vec)

    def render(self) -> str:
        if not self._exps:
            return "1"
        parts = []
        for v, e in self._exps:
            name = var_name(v)
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"Monomial({self.render()!r})"


_MONO_UNIT = Monomial()


def _coeff_is_atom(text: str) -> bool:
    """Coefficient strings that can multiply a monomial without parentheses."""
    if text.isdigit() or text == "i":
        return True
    for base in ("h1", "h2", "h"):
        if text == base:
            return True
        if text.startswith(base + "^") and text[len(base) + 1 :].isdigit():
            return True
    return False


class Symbol:
    """Polynomial observable on the double phase space.

    Coefficients live in the rational-function field of h1, h2; the term
    map is kept free of zero coefficients so equality is syntactic.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms=None):
        if n < 1:
            raise ValueError("n must be at least 1")
        cleaned = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = _coerce_rf(coeff)
                if not coeff.is_zero():
                    if mono.max_index() > n:
                        raise DimensionMismatch(
                            f"monomial {mono.render()} exceeds n={n}"
                        )
                    cleaned[mono] = coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", cleaned)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Symbol is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, n: int = 1) -> "Symbol":
        return cls(n)

    @classmethod
    def constant(cls, value, n: int = 1) -> "Symbol":
        return cls(n, {Monomial.unit(): _coerce_rf(value)})

    @classmethod
    def variable(cls, var: VarId, n: int = 1) -> "Symbol":
        return cls(n, {Monomial.of(var): RF_ONE})

    @classmethod
    def sum_of(cls, symbols, n: int = 1) -> "Symbol":
        """Sum many symbols in one pass (single term-map merge)."""
        acc = {}
        for sym in symbols:
            n = sym.n
            for mono, coeff in sym._terms.items():
                held = acc.get(mono)
                total = coeff if held is None else held + coeff
                if total.is_zero():
                    acc.pop(mono, None)
                else:
                    acc[mono] = total
        return cls(n, acc)

    # -- inspection ----------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return not self.is_zero()

    def coefficient(self, mono: Monomial) -> RationalFunction:
        return self._terms.get(mono, RF_ZERO)

    def constant_coefficient(self) -> RationalFunction:
        return self._terms.get(Monomial.unit(), RF_ZERO)

    def as_coefficient(self):
        """The constant value when the symbol has no phase variables, else None."""
        if not self._terms:
            return RF_ZERO
        if len(self._terms) == 1 and Monomial.unit() in self._terms:
            return self._terms[Monomial.unit()]
        return None

    def degree(self) -> int:
        return max((m.degree() for m in self._terms), default=0)

    def is_hbar_free(self) -> bool:
        return all(c.is_hbar_free() for c in self._terms.values())

    def depends_on_h2(self) -> bool:
        return any(c.depends_on_h2() for c in self._terms.values())

    def _check_same_n(self, other: "Symbol"):
        if self.n != other.n:
            raise DimensionMismatch(
                f"symbols built over n={self.n} and n={other.n}"
            )

    # -- ring arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(value, n):
        if isinstance(value, Symbol):
            return value
        if isinstance(value, (int, Fraction, GaussianRational, RationalFunction)):
            return Symbol.constant(value, n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented
        self._check_same_n(other)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc = out.get(mono)
            total = coeff if acc is None else acc + coeff
            if total.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = total
        return Symbol(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Symbol(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented
        self._check_same_n(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = m1 * m2
                prod = c1 * c2
                acc = out.get(mono)
                total = prod if acc is None else acc + prod
                if total.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = total
        return Symbol(self.n, out)

    __rmul__ = __mul__

    def scale(self, coeff) -> "Symbol":
        coeff = _coerce_rf(coeff)
        if coeff.is_zero():
            return Symbol(self.n)
        if coeff.is_one():
            return self
        return Symbol(self.n, {m: c * coeff for m, c in self._terms.items()})

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative symbol power")
        result = Symbol.constant(1, self.n)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- calculus ------------------------------------------------------------

    def diff(self, var: VarId) -> "Symbol":
        out = {}
        for mono, coeff in self._terms.items():
            reduced = mono.diff(var)
            if reduced is None:
                continue
            new_mono, power = reduced
            acc = out.get(new_mono)
            add = coeff * power
            out[new_mono] = add if acc is None else acc + add
        return Symbol(self.n, out)

    def diff_hbar(self, var: int) -> "Symbol":
        return Symbol(self.n, {m: c.diff(var) for m, c in self._terms.items()})

    def jet(self) -> "JetObservable":
        """1-jet at h2 = 0, taken coefficientwise."""
        values = {}
        derivs = {}
        for mono, coeff in self._terms.items():
            try:
                value, deriv = coeff.eval_h2_jet()
            except PoleAtClassicalLimit as exc:
                raise PoleAtClassicalLimit(
                    f"{exc.args[0]} (monomial {mono.render()})", monomial=mono
                ) from None
            if not value.is_zero():
                values[mono] = value
            if not deriv.is_zero():
                derivs[mono] = deriv
        return JetObservable(Symbol(self.n, values), Symbol(self.n, derivs))

    def subs_hbars(self, h1_value, h2_value) -> "Symbol":
        """Substitute numeric Planck constants into every coefficient."""
        out = {}
        for mono, coeff in self._terms.items():
            value = coeff.subs(h1_value, h2_value)
            if not value.is_zero():
                out[mono] = RationalFunction.from_rational(value)
        return Symbol(self.n, out)

    def eval(self, point: dict, h1_value=0, h2_value=0) -> GaussianRational:
        """Exact evaluation at a phase point and numeric Planck constants.

        Missing variables evaluate to 0.
        """
        total = GaussianRational(0)
        for mono, coeff in self._terms.items():
            factor = coeff.subs(h1_value, h2_value)
            if factor.is_zero():
                continue
            for var, exp in mono.items():
                base = point.get(var, 0)
                if not isinstance(base, GaussianRational):
                    base = GaussianRational(base)
                factor = factor * base**exp
                if factor.is_zero():
                    break
            total = total + factor
        return total

    # -- canonical form ------------------------------------------------------

    def sorted_terms(self):
        return sorted(
            self._terms.items(), key=lambda kv: kv[0].sort_key(self.n), reverse=True
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, RationalFunction)):
            other = Symbol.constant(other, self.n)
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.n, frozenset(self._terms.items())))
            )
        return self._hash

    def render(self, h1_name="h1") -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self.sorted_terms():
            negative = coeff.is_display_negative()
            shown = -coeff if negative else coeff
            coeff_str = shown.render(h1_name=h1_name)
            if mono.is_unit():
                body = coeff_str if _coeff_is_atom(coeff_str) else f"({coeff_str})"
            elif shown.is_one():
                body = mono.render()
            else:
                if not _coeff_is_atom(coeff_str):
                    coeff_str = f"({coeff_str})"
                body = f"{coeff_str}*{mono.render()}"
            pieces.append(("-" if negative else "") + body)
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += f" - {piece[1:]}"
            else:
                out += f" + {piece}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Symbol(n={self.n}, {self.render()!r})"

    def to_json_terms(self, h1_name="h1"):
        """Term list for the stable JSON schema, canonical order."""
        out = []
        for mono, coeff in self.sorted_terms():
            out.append(
                {
                    "coeff_num": coeff.num.render(h1_name=h1_name),
                    "coeff_den": coeff.den.render(h1_name=h1_name),
                    "monomial": {var_name(v): e for v, e in mono.items()},
                }
            )
        return out


def _coerce_rf(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction.from_rational(value)


def q(sector: int, index: int = 1, n: int = 1) -> Symbol:
    """Coordinate symbol q of the given sector."""
    return Symbol.variable(qvar(sector, index), n)


def p(sector: int, index: int = 1, n: int = 1) -> Symbol:
    """Momentum symbol p of the given sector."""
    return Symbol.variable(pvar(sector, index), n)


@dataclass(frozen=True)
class JetObservable:
    """1-jet (value, h2-derivative) of an observable at h2 = 0.

    Both components are symbols whose coefficients involve only the first
    Planck constant, rendered as plain ``h`` in this context.
    """

    value: Symbol
    derivative: Symbol

    def __post_init__(self):
        if self.value.n != self.derivative.n:
            raise DimensionMismatch("jet components built over different n")
        if self.value.depends_on_h2() or self.derivative.depends_on_h2():
            raise ValueError("jet components must not depend on h2")

    @property
    def n(self) -> int:
        return self.value.n

    def is_zero(self) -> bool:
        return self.value.is_zero() and self.derivative.is_zero()

    def __add__(self, other: "JetObservable") -> "JetObservable":
        return JetObservable(
            self.value + other.value, self.derivative + other.derivative
        )

    def __neg__(self) -> "JetObservable":
        return JetObservable(-self.value, -self.derivative)

    def __sub__(self, other: "JetObservable") -> "JetObservable":
        return self + (-other)

    def scale(self, coeff) -> "JetObservable":
        return JetObservable(self.value.scale(coeff), self.derivative.scale(coeff))

    def render(self) -> str:
        return f"jet ({self.value.render(h1_name='h')}, {self.derivative.render(h1_name='h')})"

    def __str__(self):
        return self.render()
