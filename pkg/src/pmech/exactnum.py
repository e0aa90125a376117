"""Exact coefficient arithmetic for the observable algebra.

Three layers, each immutable and hash-stable:

* :class:`GaussianRational` -- numbers a + b*i with exact rational parts.
* :class:`HPolynomial` -- polynomials in the two formal Planck constants
  h1, h2 with Gaussian-rational coefficients, stored sparsely.
* :class:`RationalFunction` -- the field of quotients of the above, kept in
  a canonical form (gcd-reduced, denominator monic under graded-lex) so that
  equality is a plain syntactic comparison.

No floating point enters anywhere; floats exist only in rendering helpers.
"""

from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, PoleAtClassicalLimit, PoleAtEvaluation

H1 = 1
H2 = 2


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class GaussianRational:
    """An exact complex rational a + b*i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self):
        return not self.is_zero()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise DivisionByZero("division by zero Gaussian rational")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = GR_ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def is_display_negative(self) -> bool:
        """Whether the canonical rendering starts with a minus sign."""
        if self.im == 0:
            return self.re < 0
        if self.re == 0:
            return self.im < 0
        return False

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        im = self.im
        sign = "+" if im > 0 else "-"
        im_abs = abs(im)
        im_part = "i" if im_abs == 1 else f"{im_abs}*i"
        return f"{self.re}{sign}{im_part}"

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# gcd machinery.
#
# Fraction denominators are cleared up front so the pseudo-remainder
# sequences run on plain Gaussian-integer pairs (re, im). Contents are
# pulled out at every step (primitive PRS), keeping coefficient growth
# polynomial, and a specialization check certifies the common coprime case
# without running the sequence at all. Everything here is internal; the
# public result is always monic over the Gaussian rationals.
# ---------------------------------------------------------------------------

ZI_ZERO = (0, 0)
ZI_ONE = (1, 0)


def _zi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _zi_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _zi_norm(a):
    return a[0] * a[0] + a[1] * a[1]


def _iround(num, den):
    """Nearest integer to num/den for den > 0."""
    return (2 * num + den) // (2 * den)


def _zi_gcd(a, b):
    """Euclidean gcd in the Gaussian integers (some associate)."""
    while b != ZI_ZERO:
        norm = _zi_norm(b)
        xr = a[0] * b[0] + a[1] * b[1]
        xi = a[1] * b[0] - a[0] * b[1]
        quot = (_iround(xr, norm), _iround(xi, norm))
        a, b = b, _zi_sub(a, _zi_mul(quot, b))
    return a


def _zi_div(a, b):
    """Exact division in the Gaussian integers."""
    norm = _zi_norm(b)
    xr = a[0] * b[0] + a[1] * b[1]
    xi = a[1] * b[0] - a[0] * b[1]
    if xr % norm or xi % norm:
        raise ArithmeticError("inexact Gaussian-integer division")
    return (xr // norm, xi // norm)


# Univariate polynomials over the Gaussian integers: lists, index = degree.


def _uz_trim(poly):
    while poly and poly[-1] == ZI_ZERO:
        poly.pop()
    return poly


def _uz_mul(a, b):
    if not a or not b:
        return []
    out = [ZI_ZERO] * (len(a) + len(b) - 1)
    for ia, ca in enumerate(a):
        if ca == ZI_ZERO:
            continue
        for ib, cb in enumerate(b):
            out[ia + ib] = (
                out[ia + ib][0] + ca[0] * cb[0] - ca[1] * cb[1],
                out[ia + ib][1] + ca[0] * cb[1] + ca[1] * cb[0],
            )
    return _uz_trim(out)


def _uz_content(poly):
    content = ZI_ZERO
    for coeff in poly:
        content = _zi_gcd(content, coeff)
        if _zi_norm(content) == 1:
            break
    return content


def _uz_pp(poly, content):
    if _zi_norm(content) == 1 and content == ZI_ONE:
        return list(poly)
    return [_zi_div(c, content) if c != ZI_ZERO else ZI_ZERO for c in poly]


def _uz_div_exact(a, b):
    """Exact division of univariate Gaussian-integer polynomials."""
    rem = list(a)
    _uz_trim(rem)
    if not rem:
        return []
    out = [ZI_ZERO] * (len(rem) - len(b) + 1)
    while rem:
        if len(rem) < len(b):
            raise ArithmeticError("inexact univariate division")
        shift = len(rem) - len(b)
        factor = _zi_div(rem[-1], b[-1])
        out[shift] = factor
        for k, cb in enumerate(b):
            rem[shift + k] = _zi_sub(rem[shift + k], _zi_mul(factor, cb))
        _uz_trim(rem)
    return out


def _uz_prem(a, b):
    """Pseudo-remainder of univariate Gaussian-integer polynomials."""
    rem = list(a)
    lead_b = b[-1]
    while rem and len(rem) >= len(b):
        shift = len(rem) - len(b)
        lead_r = rem[-1]
        rem = [_zi_mul(c, lead_b) for c in rem]
        for k, cb in enumerate(b):
            rem[shift + k] = _zi_sub(rem[shift + k], _zi_mul(lead_r, cb))
        _uz_trim(rem)
    return rem


def _uz_gcd(a, b):
    """Primitive-PRS gcd of univariate Gaussian-integer polynomials."""
    a, b = _uz_trim(list(a)), _uz_trim(list(b))
    if not a:
        return b
    if not b:
        return a
    cont_a = _uz_content(a)
    cont_b = _uz_content(b)
    cont = _zi_gcd(cont_a, cont_b)
    pa = _uz_pp(a, cont_a)
    pb = _uz_pp(b, cont_b)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while True:
        rem = _uz_prem(pa, pb)
        if not rem:
            prim = pb
            break
        if len(rem) == 1:
            prim = [ZI_ONE]
            break
        pa, pb = pb, _uz_pp(rem, _uz_content(rem))
    return _uz_trim([_zi_mul(c, cont) for c in prim])


def _uz_eval(poly, t: int):
    acc = ZI_ZERO
    for coeff in reversed(poly):
        acc = (acc[0] * t + coeff[0], acc[1] * t + coeff[1])
    return acc


# Bivariate: polynomials in h2 whose coefficients are the univariate kind.


def _bz_trim(poly):
    while poly and not poly[-1]:
        poly.pop()
    return poly


def _bz_content(poly):
    content = []
    for coeffs in poly:
        if coeffs:
            content = _uz_gcd(content, coeffs)
            if len(content) == 1 and _zi_norm(content[0]) == 1:
                return [ZI_ONE]
    return content


def _bz_pp(poly, content):
    if content == [ZI_ONE]:
        return [list(c) for c in poly]
    return [_uz_div_exact(c, content) if c else [] for c in poly]


def _bz_prem(a, b):
    rem = [list(c) for c in a]
    deg_b = len(b) - 1
    lead_b = b[-1]
    while rem and len(rem) - 1 >= deg_b:
        shift = len(rem) - 1 - deg_b
        lead_r = rem[-1]
        scaled = [_uz_mul(c, lead_b) for c in rem]
        for k, cb in enumerate(b):
            piece = _uz_mul(cb, lead_r)
            target = scaled[shift + k]
            size = max(len(target), len(piece))
            target = target + [ZI_ZERO] * (size - len(target))
            for j, cj in enumerate(piece):
                target[j] = _zi_sub(target[j], cj)
            scaled[shift + k] = _uz_trim(target)
        rem = _bz_trim(scaled)
    return rem


def _bz_coprime_certified(pa, pb):
    """True when specialization at h1 = t proves the primitive parts coprime."""
    for t in (2, -3, 5, -7, 11):
        if _uz_eval(pa[-1], t) == ZI_ZERO:
            continue
        ua = _uz_trim([_uz_eval(c, t) for c in pa])
        ub = _uz_trim([_uz_eval(c, t) for c in pb])
        if not ub:
            return False
        return len(_uz_gcd(ua, ub)) == 1
    return False


def _clear_denominators(poly: "HPolynomial"):
    """Integer-pair term map of a scalar multiple of the polynomial."""
    scale = 1
    for coeff in poly._terms.values():
        scale = scale * coeff.re.denominator // gcd(scale, coeff.re.denominator)
        scale = scale * coeff.im.denominator // gcd(scale, coeff.im.denominator)
    return {
        exps: (int(coeff.re * scale), int(coeff.im * scale))
        for exps, coeff in poly._terms.items()
    }


def _bz_from_terms(zterms):
    deg2 = max(a2 for (_, a2) in zterms)
    out = [[] for _ in range(deg2 + 1)]
    buckets = {}
    for (a1, a2), coeff in zterms.items():
        buckets.setdefault(a2, {})[a1] = coeff
    for a2, bucket in buckets.items():
        coeffs = [ZI_ZERO] * (max(bucket) + 1)
        for a1, coeff in bucket.items():
            coeffs[a1] = coeff
        out[a2] = _uz_trim(coeffs)
    return _bz_trim(out)


def _bz_to_hpoly(poly, shift=(0, 0)) -> "HPolynomial":
    terms = {}
    for a2, coeffs in enumerate(poly):
        for a1, coeff in enumerate(coeffs):
            if coeff != ZI_ZERO:
                terms[(a1 + shift[0], a2 + shift[1])] = GaussianRational(
                    coeff[0], coeff[1]
                )
    return HPolynomial(terms)


def hpoly_gcd(a: "HPolynomial", b: "HPolynomial") -> "HPolynomial":
    """Monic gcd of two polynomials in h1, h2 over the Gaussian rationals."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    ta = _clear_denominators(a)
    tb = _clear_denominators(b)
    # common monomial factor, and the single-term fast path
    mono = (
        min(min(e[0] for e in ta), min(e[0] for e in tb)),
        min(min(e[1] for e in ta), min(e[1] for e in tb)),
    )
    if len(ta) == 1 or len(tb) == 1:
        return HPolynomial({mono: GR_ONE})
    if mono != (0, 0):
        ta = {(e[0] - mono[0], e[1] - mono[1]): c for e, c in ta.items()}
        tb = {(e[0] - mono[0], e[1] - mono[1]): c for e, c in tb.items()}
    pa = _bz_from_terms(ta)
    pb = _bz_from_terms(tb)
    cont_a = _bz_content(pa)
    cont_b = _bz_content(pb)
    cont = _uz_gcd(cont_a, cont_b)
    pa = _bz_pp(pa, cont_a)
    pb = _bz_pp(pb, cont_b)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    if len(pb) == 1 or _bz_coprime_certified(pa, pb):
        # primitive parts share nothing: the gcd is content times monomial
        return _bz_to_hpoly([cont], shift=mono).monic()
    while True:
        rem = _bz_prem(pa, pb)
        if not rem:
            prim = pb
            break
        if len(rem) == 1:
            prim = [[ZI_ONE]]
            break
        pa, pb = pb, _bz_pp(rem, _bz_content(rem))
    combined = [_uz_mul(c, cont) for c in prim]
    return _bz_to_hpoly(combined, shift=mono).monic()


# ---------------------------------------------------------------------------
# Polynomials in h1, h2.
# ---------------------------------------------------------------------------


def _grlex_key(exponents):
    a1, a2 = exponents
    return (a1 + a2, a1)


class HPolynomial:
    """Sparse polynomial in h1, h2 over the Gaussian rationals.

    Terms map exponent pairs (a1, a2) to nonzero coefficients; the term
    order used for leading terms and rendering is graded-lex with h1 > h2.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for exps, coeff in terms.items():
                if not isinstance(coeff, GaussianRational):
                    coeff = GaussianRational(coeff)
                if not coeff.is_zero():
                    cleaned[exps] = coeff
        object.__setattr__(self, "_terms", cleaned)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("HPolynomial is immutable")

    @classmethod
    def constant(cls, value) -> "HPolynomial":
        if not isinstance(value, GaussianRational):
            value = GaussianRational(value)
        return cls({(0, 0): value})

    @classmethod
    def hbar(cls, var: int) -> "HPolynomial":
        if var == H1:
            return cls({(1, 0): GR_ONE})
        if var == H2:
            return cls({(0, 1): GR_ONE})
        raise ValueError(f"unknown Planck variable {var!r}")

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0, 0): GR_ONE}

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def constant_value(self) -> GaussianRational:
        if self.is_zero():
            return GR_ZERO
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms[(0, 0)]

    def degree_in(self, var: int) -> int:
        if not self._terms:
            return -1
        idx = 0 if var == H1 else 1
        return max(e[idx] for e in self._terms)

    def leading(self):
        """Leading (exponents, coefficient) under graded-lex, h1 > h2."""
        exps = max(self._terms, key=_grlex_key)
        return exps, self._terms[exps]

    def monic(self) -> "HPolynomial":
        if self.is_zero():
            return self
        _, lead = self.leading()
        if lead == GR_ONE:
            return self
        inv = lead.inverse()
        return HPolynomial({e: c * inv for e, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, HPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc = out.get(exps)
            total = coeff if acc is None else acc + coeff
            if total.is_zero():
                out.pop(exps, None)
            else:
                out[exps] = total
        return HPolynomial(out)

    def __neg__(self):
        return HPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HPolynomial):
            return NotImplemented
        if not self._terms or not other._terms:
            return HP_ZERO
        out = {}
        for (a1, a2), ca in self._terms.items():
            for (b1, b2), cb in other._terms.items():
                exps = (a1 + b1, a2 + b2)
                prod = ca * cb
                acc = out.get(exps)
                total = prod if acc is None else acc + prod
                if total.is_zero():
                    out.pop(exps, None)
                else:
                    out[exps] = total
        return HPolynomial(out)

    def scale(self, coeff: GaussianRational) -> "HPolynomial":
        if coeff.is_zero():
            return HP_ZERO
        if coeff == GR_ONE:
            return self
        return HPolynomial({e: c * coeff for e, c in self._terms.items()})

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = HP_ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def diff(self, var: int) -> "HPolynomial":
        idx = 0 if var == H1 else 1
        out = {}
        for exps, coeff in self._terms.items():
            power = exps[idx]
            if power == 0:
                continue
            new = (exps[0] - 1, exps[1]) if idx == 0 else (exps[0], exps[1] - 1)
            out[new] = coeff * power
        return HPolynomial(out)

    def subs_h2_zero(self) -> "HPolynomial":
        return HPolynomial({e: c for e, c in self._terms.items() if e[1] == 0})

    def subs(self, h1_value, h2_value) -> GaussianRational:
        h1v = h1_value if isinstance(h1_value, GaussianRational) else GaussianRational(h1_value)
        h2v = h2_value if isinstance(h2_value, GaussianRational) else GaussianRational(h2_value)
        total = GR_ZERO
        for (a1, a2), coeff in self._terms.items():
            total = total + coeff * h1v**a1 * h2v**a2
        return total

    def divide_exact(self, divisor: "HPolynomial") -> "HPolynomial":
        """Exact multivariate division; the caller guarantees divisibility."""
        if divisor.is_zero():
            raise DivisionByZero("polynomial division by zero")
        quot = {}
        rem = dict(self._terms)
        d_exps, d_coeff = divisor.leading()
        d_inv = d_coeff.inverse()
        while rem:
            exps = max(rem, key=_grlex_key)
            coeff = rem[exps]
            shift = (exps[0] - d_exps[0], exps[1] - d_exps[1])
            if shift[0] < 0 or shift[1] < 0:
                raise ArithmeticError("inexact polynomial division")
            factor = coeff * d_inv
            quot[shift] = factor
            for (b1, b2), cb in divisor._terms.items():
                target = (b1 + shift[0], b2 + shift[1])
                acc = rem.get(target, GR_ZERO) - factor * cb
                if acc.is_zero():
                    rem.pop(target, None)
                else:
                    rem[target] = acc
        return HPolynomial(quot)

    def __eq__(self, other):
        if not isinstance(other, HPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash(frozenset(self._terms.items()))
            )
        return self._hash

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def render(self, h1_name="h1", h2_name="h2") -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for (a1, a2), coeff in self.sorted_terms():
            factors = []
            if a1:
                factors.append(h1_name if a1 == 1 else f"{h1_name}^{a1}")
            if a2:
                factors.append(h2_name if a2 == 1 else f"{h2_name}^{a2}")
            mono = "*".join(factors)
            if not mono:
                pieces.append(str(coeff))
            elif coeff == GR_ONE:
                pieces.append(mono)
            elif coeff == -GR_ONE:
                pieces.append(f"-{mono}")
            elif coeff.re != 0 and coeff.im != 0:
                pieces.append(f"({coeff})*{mono}")
            else:
                pieces.append(f"{coeff}*{mono}")
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
        return f"HPolynomial({self.render()!r})"


HP_ZERO = HPolynomial()
HP_ONE = HPolynomial.constant(GR_ONE)
HP_H1 = HPolynomial.hbar(H1)
HP_H2 = HPolynomial.hbar(H2)


def _monomial_gcd_reduce(num: HPolynomial, den: HPolynomial):
    """Cheap reduction when one side is a single term: strip common h powers."""
    n_terms = num._terms
    d_terms = den._terms
    min_a1 = min(min(e[0] for e in n_terms), min(e[0] for e in d_terms))
    min_a2 = min(min(e[1] for e in n_terms), min(e[1] for e in d_terms))
    if min_a1 == 0 and min_a2 == 0:
        return num, den
    shift = lambda terms: {(a1 - min_a1, a2 - min_a2): c for (a1, a2), c in terms.items()}
    return HPolynomial(shift(n_terms)), HPolynomial(shift(d_terms))


class RationalFunction:
    """Element of the field of rational functions in h1, h2.

    Canonical form: numerator and denominator coprime, denominator monic
    under graded-lex. Equality and hashing are syntactic on that form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, HPolynomial):
            num = HPolynomial.constant(num)
        if den is None:
            den = HP_ONE
        elif not isinstance(den, HPolynomial):
            den = HPolynomial.constant(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if not _reduced:
            num, den = self._reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def _reduce(num: HPolynomial, den: HPolynomial):
        if num.is_zero():
            return HP_ZERO, HP_ONE
        if not den.is_one():
            if len(num._terms) == 1 or len(den._terms) == 1:
                num, den = _monomial_gcd_reduce(num, den)
                if len(den._terms) > 1 and len(num._terms) > 1:
                    g = hpoly_gcd(num, den)
                    if not g.is_one():
                        num = num.divide_exact(g)
                        den = den.divide_exact(g)
            else:
                g = hpoly_gcd(num, den)
                if not g.is_one():
                    num = num.divide_exact(g)
                    den = den.divide_exact(g)
        if den.is_one():
            return num, HP_ONE
        _, lead = den.leading()
        if lead != GR_ONE:
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        return num, den

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, value) -> "RationalFunction":
        return cls(HPolynomial.constant(value), HP_ONE, _reduced=True)

    @classmethod
    def hbar(cls, var: int) -> "RationalFunction":
        return cls(HPolynomial.hbar(var), HP_ONE, _reduced=True)

    @staticmethod
    def _coerce(value):
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, (int, Fraction, GaussianRational)):
            return RationalFunction.from_rational(value)
        return NotImplemented

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.constant_value()

    def is_hbar_free(self) -> bool:
        return self.is_constant()

    def depends_on_h2(self) -> bool:
        return self.num.degree_in(H2) > 0 or self.den.degree_in(H2) > 0

    def is_display_negative(self) -> bool:
        _, lead = self.num.leading() if not self.num.is_zero() else ((0, 0), GR_ZERO)
        return lead.is_display_negative()

    # -- field arithmetic ----------------------------------------------------

    @staticmethod
    def _monic_pair(num: HPolynomial, den: HPolynomial):
        if num.is_zero():
            return HP_ZERO, HP_ONE
        if den.is_one():
            return num, den
        _, lead = den.leading()
        if lead != GR_ONE:
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        return num, den

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            num = self.num + other.num
            if num.is_zero():
                return RF_ZERO
            g = hpoly_gcd(num, self.den)
            den = self.den
            if not g.is_one():
                num = num.divide_exact(g)
                den = den.divide_exact(g)
            return RationalFunction(*self._monic_pair(num, den), _reduced=True)
        # operands are reduced, so only the shared denominator factor can
        # cancel against the combined numerator
        g = hpoly_gcd(self.den, other.den)
        if g.is_one():
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
            return RationalFunction(*self._monic_pair(num, den), _reduced=True)
        d1 = self.den.divide_exact(g)
        d2 = other.den.divide_exact(g)
        num = self.num * d2 + other.num * d1
        if num.is_zero():
            return RF_ZERO
        g2 = hpoly_gcd(num, g)
        if g2.is_one():
            den = d1 * d2 * g
        else:
            num = num.divide_exact(g2)
            den = d1 * d2 * g.divide_exact(g2)
        return RationalFunction(*self._monic_pair(num, den), _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RF_ZERO
        if self.is_one():
            return other
        if other.is_one():
            return self
        # cross-reduce: each operand is already in lowest terms
        g1 = hpoly_gcd(self.num, other.den)
        g2 = hpoly_gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else self.num.divide_exact(g1)
        d2 = other.den if g1.is_one() else other.den.divide_exact(g1)
        n2 = other.num if g2.is_one() else other.num.divide_exact(g2)
        d1 = self.den if g2.is_one() else self.den.divide_exact(g2)
        return RationalFunction(*self._monic_pair(n1 * n2, d1 * d2), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(*self._monic_pair(self.den, self.num), _reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = RF_ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- calculus ------------------------------------------------------------

    def diff(self, var: int) -> "RationalFunction":
        """Exact partial derivative with respect to h1 or h2."""
        num = self.num.diff(var) * self.den - self.num * self.den.diff(var)
        if num.is_zero():
            return RF_ZERO
        # reduce against den twice: that exhausts the gcd with den^2
        den = self.den
        g1 = hpoly_gcd(num, den)
        rest = den
        if not g1.is_one():
            num = num.divide_exact(g1)
            rest = den.divide_exact(g1)
        g2 = hpoly_gcd(num, den)
        if not g2.is_one():
            num = num.divide_exact(g2)
            den = den.divide_exact(g2)
        return RationalFunction(*self._monic_pair(num, den * rest), _reduced=True)

    def eval_h2_jet(self):
        """Value and first h2-derivative at h2 = 0, as functions of h1 only.

        Raises PoleAtClassicalLimit when the reduced denominator vanishes
        identically at h2 = 0.
        """
        den0 = self.den.subs_h2_zero()
        if den0.is_zero():
            raise PoleAtClassicalLimit(
                f"pole at h2=0 in coefficient {self.render()}"
            )
        value = RationalFunction(self.num.subs_h2_zero(), den0)
        dnum = self.num.diff(H2) * self.den - self.num * self.den.diff(H2)
        derivative = RationalFunction(dnum.subs_h2_zero(), den0 * den0)
        return value, derivative

    def subs(self, h1_value, h2_value) -> GaussianRational:
        den = self.den.subs(h1_value, h2_value)
        if den.is_zero():
            raise PoleAtEvaluation(
                f"denominator of {self.render()} vanishes at h1={h1_value}, h2={h2_value}"
            )
        return self.num.subs(h1_value, h2_value) / den

    # -- canonical form ------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def render(self, h1_name="h1", h2_name="h2") -> str:
        num_str = self.num.render(h1_name, h2_name)
        if self.den.is_one():
            return num_str
        if len(self.num._terms) > 1 or ("+" in num_str[1:] or "-" in num_str[1:]):
            num_str = f"({num_str})"
        den_str = self.den.render(h1_name, h2_name)
        if len(self.den._terms) > 1 or "*" in den_str:
            den_str = f"({den_str})"
        return f"{num_str}/{den_str}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RationalFunction({self.render()!r})"


RF_ZERO = RationalFunction.from_rational(0)
RF_ONE = RationalFunction.from_rational(1)
RF_I = RationalFunction.from_rational(GR_I)
RF_H1 = RationalFunction.hbar(H1)
RF_H2 = RationalFunction.hbar(H2)
