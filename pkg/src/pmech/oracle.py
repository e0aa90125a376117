"""Brute-force word algebra used to cross-check the star product.

Operators q and p of each quantum degree of freedom satisfy [q, p] = i*hbar
of their sector; different degrees of freedom commute. Elements are stored
normal-ordered (all q powers left of p powers per degree of freedom).

Two deliberately different algorithms live here:

* a letter-sequence rewriter that repeatedly applies p q -> q p - i*hbar at
  an (optionally random) reducible position, used by the symmetrization
  average and by the confluence tests;
* a closed-form reordering used by nc_multiply.

Their agreement, and the agreement of quantized star products with word
products, is the correctness evidence for the bidifferential star series.
"""

from functools import lru_cache
from itertools import permutations

from .exactnum import (
    GR_I,
    H1,
    H2,
    HPolynomial,
    RF_ONE,
    RationalFunction,
)
from .symbols import KIND_P, KIND_Q, Monomial, Symbol

_MINUS_I_H = {
    1: RationalFunction(HPolynomial({(1, 0): -GR_I})),
    2: RationalFunction(HPolynomial({(0, 1): -GR_I})),
}

# A word maps each degree of freedom (sector, index) to (q power, p power).
NCWord = tuple


def _word_from_pairs(pairs) -> NCWord:
    return tuple(sorted((dof, exps) for dof, exps in pairs if exps != (0, 0)))


class NCElement:
    """Finite linear combination of normal-ordered words."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for word, coeff in terms.items():
                if not coeff.is_zero():
                    cleaned[word] = coeff
        object.__setattr__(self, "_terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("NCElement is immutable")

    @classmethod
    def zero(cls) -> "NCElement":
        return cls()

    @classmethod
    def word(cls, word: NCWord, coeff=RF_ONE) -> "NCElement":
        return cls({word: coeff})

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "NCElement") -> "NCElement":
        out = dict(self._terms)
        for word, coeff in other._terms.items():
            held = out.get(word)
            total = coeff if held is None else held + coeff
            if total.is_zero():
                out.pop(word, None)
            else:
                out[word] = total
        return NCElement(out)

    def __neg__(self) -> "NCElement":
        return NCElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "NCElement") -> "NCElement":
        return self + (-other)

    def scale(self, coeff) -> "NCElement":
        if isinstance(coeff, RationalFunction) and coeff.is_zero():
            return NCElement()
        return NCElement({w: c * coeff for w, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NCElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, coeff in sorted(self._terms.items()):
            factors = []
            for (sector, index), (qe, pe) in word:
                suffix = "" if index == 1 else f"_{index}"
                if qe:
                    factors.append(f"Q{sector}{suffix}" + (f"^{qe}" if qe > 1 else ""))
                if pe:
                    factors.append(f"P{sector}{suffix}" + (f"^{pe}" if pe > 1 else ""))
            body = "*".join(factors) if factors else "1"
            parts.append(f"({coeff})*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NCElement({self.render()!r})"


def _reorder_base(q_power: int, sector: int):
    """p q^n = q^n p - i hbar n q^(n-1)."""
    if q_power == 0:
        return {(0, 1): RF_ONE}
    return {
        (q_power, 1): RF_ONE,
        (q_power - 1, 0): _MINUS_I_H[sector] * q_power,
    }


@lru_cache(maxsize=None)
def _reorder(p_power: int, q_power: int, sector: int):
    """Normal ordering of p^m q^n for one degree of freedom.

    Returns {(q exponent, p exponent): coefficient}; peels one p from the
    left per recursion step.
    """
    if p_power == 0 or q_power == 0:
        return {(q_power, p_power): RF_ONE}
    out = {}
    for (qe, pe), coeff in _reorder(p_power - 1, q_power, sector).items():
        for (qe2, pe2), coeff2 in _reorder_base(qe, sector).items():
            key = (qe2, pe2 + pe)
            add = coeff * coeff2
            held = out.get(key)
            total = add if held is None else held + add
            if total.is_zero():
                out.pop(key, None)
            else:
                out[key] = total
    return out


def nc_multiply(a: NCElement, b: NCElement) -> NCElement:
    """Product in the word algebra, normal-ordered."""
    acc = {}
    for wa, ca in a._terms.items():
        for wb, cb in b._terms.items():
            coeff = ca * cb
            da = dict(wa)
            db = dict(wb)
            # per degree of freedom: (q^a p^b)(q^c p^d); dofs commute
            parts = [({}, coeff)]
            for dof in sorted(set(da) | set(db)):
                qa, pa = da.get(dof, (0, 0))
                qb, pb = db.get(dof, (0, 0))
                middle = _reorder(pa, qb, dof[0])
                new_parts = []
                for exps_map, c in parts:
                    for (qm, pm), cm in middle.items():
                        exps = (qa + qm, pm + pb)
                        updated = dict(exps_map)
                        updated[dof] = exps
                        new_parts.append((updated, c * cm))
                parts = new_parts
            for exps_map, c in parts:
                word = _word_from_pairs(exps_map.items())
                held = acc.get(word)
                total = c if held is None else held + c
                if total.is_zero():
                    acc.pop(word, None)
                else:
                    acc[word] = total
    return NCElement(acc)


# ---------------------------------------------------------------------------
# Letter-sequence rewriting (the slow, independently checkable route).
# ---------------------------------------------------------------------------


def normal_order_letters(letters, rng=None) -> NCElement:
    """Normal-order a product written as a sequence of letters.

    Each letter is (sector, index, kind) with kind 0 for q and 1 for p.
    The reducible position is chosen by rng when given (confluence checks),
    else the first one is used.
    """
    work = [(tuple(letters), RF_ONE)]
    acc = {}
    while work:
        word, coeff = work.pop()
        positions = [
            j for j in range(len(word) - 1) if word[j] > word[j + 1]
        ]
        if not positions:
            key = _letters_to_word(word)
            held = acc.get(key)
            total = coeff if held is None else held + coeff
            if total.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = total
            continue
        j = positions[0] if rng is None else rng.choice(positions)
        left, right = word[j], word[j + 1]
        swapped = word[:j] + (right, left) + word[j + 2 :]
        work.append((swapped, coeff))
        if left[:2] == right[:2]:
            # same degree of freedom, p before q: extra -i*hbar term
            dropped = word[:j] + word[j + 2 :]
            work.append((dropped, coeff * _MINUS_I_H[left[0]]))
    return NCElement(acc)


def _letters_to_word(letters) -> NCWord:
    exps = {}
    for sector, index, kind in letters:
        qe, pe = exps.get((sector, index), (0, 0))
        if kind == KIND_Q:
            qe += 1
        else:
            pe += 1
        exps[(sector, index)] = (qe, pe)
    return _word_from_pairs(exps.items())


# ---------------------------------------------------------------------------
# Weyl symmetrization.
# ---------------------------------------------------------------------------


_weyl_cache = {}


def _weyl_single_dof(sector: int, index: int, q_power: int, p_power: int) -> NCElement:
    key = (sector, index, q_power, p_power)
    cached = _weyl_cache.get(key)
    if cached is not None:
        return cached
    letters = [(sector, index, KIND_Q)] * q_power + [(sector, index, KIND_P)] * p_power
    seen = set(permutations(letters))
    total = NCElement.zero()
    for arrangement in seen:
        total = total + normal_order_letters(arrangement)
    result = total.scale(RationalFunction.from_rational(1) / len(seen))
    _weyl_cache[key] = result
    return result


def weyl_quantize(mono: Monomial) -> NCElement:
    """Average of all distinct q/p interleavings per degree of freedom."""
    by_dof = {}
    for (sector, kind, index), exp in mono.items():
        qe, pe = by_dof.get((sector, index), (0, 0))
        if kind == KIND_Q:
            qe += exp
        else:
            pe += exp
        by_dof[(sector, index)] = (qe, pe)
    result = NCElement.word(())
    for (sector, index), (qe, pe) in sorted(by_dof.items()):
        result = nc_multiply(result, _weyl_single_dof(sector, index, qe, pe))
    return result


def weyl_quantize_symbol(sym: Symbol) -> NCElement:
    """Linear extension of weyl_quantize to polynomial symbols."""
    total = NCElement.zero()
    for mono, coeff in sym.terms.items():
        total = total + weyl_quantize(mono).scale(coeff)
    return total


def oracle_star_check(a: Monomial, b: Monomial, n: int = 1) -> bool:
    """Does quantization intertwine the star product with word multiplication?"""
    from .brackets import UNIVERSAL, star

    sa = Symbol(n, {a: RF_ONE})
    sb = Symbol(n, {b: RF_ONE})
    left = weyl_quantize_symbol(star(sa, sb, UNIVERSAL))
    right = nc_multiply(weyl_quantize(a), weyl_quantize(b))
    return left == right
