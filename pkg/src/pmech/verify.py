"""Self-verification suites: the identities the engine is contractually
obliged to reproduce, runnable from the CLI and reused by the test suite.

Every check is an exact syntactic equality on canonical forms; the one
numeric check (trajectory against cos/sin) carries an explicit truncation
tolerance of 3e-5 from the order-8 Taylor remainder.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .brackets import (
    cc_bracket,
    moyal_bracket,
    poisson_bracket,
    qc_bracket,
    qc_third_term,
    aleksandrov_bracket,
    star,
    universal_bracket,
    UNIVERSAL,
)
from .dynamics import evolve_qc_jet, evolve_taylor, trajectory_numeric
from .errors import PoleAtClassicalLimit
from .exactnum import GaussianRational, RF_H1, RF_H2, RationalFunction
from .mechanise import lambda_factor, mechanise_universal
from .oracle import oracle_star_check
from .symbols import (
    JetObservable,
    Monomial,
    Symbol,
    all_vars,
    p,
    pvar,
    q,
    qvar,
)

DEFAULT_SEED = 29946


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def random_symbol(rng, n=1, max_degree=4, max_terms=3, classical=False) -> Symbol:
    """Sparse random polynomial with small Gaussian-rational coefficients."""
    variables = all_vars(n)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = {}
        for _ in range(rng.randint(0, max_degree)):
            var = rng.choice(variables)
            exps[var] = exps.get(var, 0) + 1
        re = Fraction(rng.randint(-4, 4))
        im = Fraction(0 if classical else rng.randint(-2, 2))
        if re == 0 and im == 0:
            re = Fraction(1)
        terms[Monomial(exps)] = RationalFunction.from_rational(GaussianRational(re, im))
    return Symbol(n, terms)


def _monomials_up_to(variables, max_degree):
    out = []
    for degree in range(max_degree + 1):
        for combo in combinations_with_replacement(variables, degree):
            exps = {}
            for var in combo:
                exps[var] = exps.get(var, 0) + 1
            out.append(Monomial(exps))
    return out


# -- criterion 1 -------------------------------------------------------------


def check_canonical(max_n=2) -> list:
    """Canonical relations in the universal, cc, and qc sectors, n <= max_n."""
    checks = []
    for n in range(1, max_n + 1):
        coords = [(sector, index) for sector in (1, 2) for index in range(1, n + 1)]
        qs = {key: Symbol.variable(qvar(*key), n) for key in coords}
        ps = {key: Symbol.variable(pvar(*key), n) for key in coords}
        mech_q = {key: mechanise_universal(sym).symbol for key, sym in qs.items()}
        mech_p = {key: mechanise_universal(sym).symbol for key, sym in ps.items()}
        ok = True
        for key_a in coords:
            for key_b in coords:
                delta = 1 if key_a == key_b else 0
                ub_qp = universal_bracket(mech_q[key_a], mech_p[key_b])
                ok &= ub_qp == Symbol.constant(delta, n)
                ok &= universal_bracket(mech_q[key_a], mech_q[key_b]).is_zero()
                ok &= universal_bracket(mech_p[key_a], mech_p[key_b]).is_zero()
                cc_qp = cc_bracket(qs[key_a], ps[key_b])
                ok &= cc_qp == Symbol.constant(delta, n)
                ok &= cc_bracket(qs[key_a], qs[key_b]).is_zero()
                ok &= cc_bracket(ps[key_a], ps[key_b]).is_zero()
                jet_qp = qc_bracket(mech_q[key_a], mech_p[key_b])
                ok &= jet_qp == JetObservable(
                    Symbol.constant(delta, n), Symbol.zero(n)
                )
                ok &= qc_bracket(mech_q[key_a], mech_q[key_b]).is_zero()
                ok &= qc_bracket(mech_p[key_a], mech_p[key_b]).is_zero()
        checks.append(Check(f"canonical relations, n={n}", bool(ok)))
    return checks


# -- criterion 2 -------------------------------------------------------------


def check_lemma_suite(count=100, seed=DEFAULT_SEED, max_degree=4) -> list:
    """Bilinearity, antisymmetry, Leibniz over the star product, Jacobi."""
    rng = random.Random(seed)
    bilinear = antisym = leibniz = jacobi = True
    two_i = GaussianRational(2, 1)
    for _ in range(count):
        a = random_symbol(rng, max_degree=max_degree)
        b = random_symbol(rng, max_degree=max_degree)
        c = random_symbol(rng, max_degree=max_degree)
        ab = universal_bracket(a, b)
        ba = universal_bracket(b, a)
        antisym &= ab == -ba
        combo = universal_bracket(a.scale(two_i) + b, c)
        bilinear &= combo == universal_bracket(a, c).scale(two_i) + universal_bracket(b, c)
        combo = universal_bracket(c, a.scale(two_i) + b)
        bilinear &= combo == universal_bracket(c, a).scale(two_i) + universal_bracket(c, b)
        bc = star(b, c, UNIVERSAL)
        lhs = universal_bracket(a, bc)
        rhs = star(ab, c, UNIVERSAL) + star(b, universal_bracket(a, c), UNIVERSAL)
        leibniz &= lhs == rhs
        cyc = (
            universal_bracket(ab, c)
            + universal_bracket(universal_bracket(b, c), a)
            + universal_bracket(universal_bracket(c, a), b)
        )
        jacobi &= cyc.is_zero()
    return [
        Check(f"bilinearity on {count} random triples", bool(bilinear)),
        Check(f"antisymmetry on {count} random triples", bool(antisym)),
        Check(f"Leibniz over star on {count} random triples", bool(leibniz)),
        Check(f"Jacobi on {count} random triples", bool(jacobi)),
    ]


# -- criterion 3 -------------------------------------------------------------


def check_poisson_limit(max_degree=5) -> list:
    """Moyal bracket at hbar = 0 equals the Poisson bracket, sector 1."""
    monomials = _monomials_up_to([qvar(1), pvar(1)], max_degree)
    ok = True
    count = 0
    for ma in monomials:
        sa = Symbol(1, {ma: RationalFunction.from_rational(1)})
        for mb in monomials:
            sb = Symbol(1, {mb: RationalFunction.from_rational(1)})
            moyal_at_zero = moyal_bracket(sa, sb).subs_hbars(0, 0)
            ok &= moyal_at_zero == poisson_bracket(sa, sb, sectors=(1,))
            count += 1
    return [Check(f"Moyal at hbar=0 equals Poisson on {count} monomial pairs", bool(ok))]


# -- criterion 4 -------------------------------------------------------------


def check_star_oracle(max_total_degree=6) -> list:
    """Quantization intertwines star products with word products."""
    variables = [qvar(1), pvar(1), qvar(2), pvar(2)]
    monomials = _monomials_up_to(variables, max_total_degree)
    ok = True
    count = 0
    for ma in monomials:
        for mb in monomials:
            if ma.degree() + mb.degree() > max_total_degree:
                continue
            ok &= oracle_star_check(ma, mb)
            count += 1
    return [Check(f"word-algebra oracle on {count} monomial pairs", bool(ok))]


# -- criteria 5 and 6 --------------------------------------------------------


def _rotation_pieces():
    q1, p1, q2, p2 = q(1), p(1), q(2), p(2)
    h_cc = q1 * p2 - q2 * p1
    return q1, p1, q2, p2, h_cc


def _cycle(first: Symbol, second: Symbol, order: int) -> list:
    base = [first, second, -first, -second]
    return [base[k % 4] for k in range(order + 1)]


def check_rotation(order=8, tolerance=3e-5) -> list:
    q1, p1, q2, p2, h_cc = _rotation_pieces()
    checks = []

    expected = {
        "q1": _cycle(q1, q2, order),
        "q2": _cycle(q2, -q1, order),
        "p1": _cycle(p1, p2, order),
        "p2": _cycle(p2, -p1, order),
    }
    observables = {"q1": q1, "q2": q2, "p1": p1, "p2": p2}
    ok = True
    for name, f in observables.items():
        series = evolve_taylor("cc", h_cc, f, order)
        ok &= series.coeffs == expected[name]
    checks.append(Check("classical rotation cycle to order 8", bool(ok)))

    series = evolve_taylor("cc", h_cc, q1, order)
    cos_row = trajectory_numeric(series, {qvar(1): 1}, [1])[0][1]
    sin_row = trajectory_numeric(series, {qvar(2): 1}, [1])[0][1]
    cos_err = abs(float(cos_row.re) - math.cos(1))
    sin_err = abs(float(sin_row.re) - math.sin(1))
    checks.append(
        Check(
            f"trajectory at t=1 within {tolerance:g} of cos(1)/sin(1)",
            cos_err <= tolerance and sin_err <= tolerance,
            f"errors {cos_err:.2e}, {sin_err:.2e}",
        )
    )

    mech_h = mechanise_universal(h_cc).symbol
    mech_p1 = mechanise_universal(p1).symbol
    mech_p2 = mechanise_universal(p2).symbol
    us = evolve_taylor("universal", mech_h, mech_p1, order)
    ok = us.coeffs == _cycle(mech_p1, mech_p2, order)
    checks.append(Check("two-constant rotation cycle of mechanised p1", bool(ok)))

    # p1(t) = cos t p1 + (h1/h2) sin t p2: odd coefficients carry Lambda2/Lambda1
    ratio = lambda_factor(2) / lambda_factor(1)
    checks.append(
        Check("momentum mixing ratio is h1/h2", ratio == RF_H1 / RF_H2)
    )

    classical = evolve_taylor("cc", h_cc, p1, order)
    substituted = [c.subs_hbars(1, 1).scale(2) for c in us.coeffs]
    checks.append(
        Check(
            "universal series at h1=h2 matches the classical matrix",
            substituted == classical.coeffs,
        )
    )
    return checks


# -- criteria 7, 8, 9 --------------------------------------------------------


def check_qc_example(seed=DEFAULT_SEED, jacobi_count=50) -> list:
    q1, p1, q2, p2, h_cc = _rotation_pieces()
    mech = mechanise_universal(h_cc).symbol
    mech_p1 = mechanise_universal(p1).symbol
    mech_p2 = mechanise_universal(p2).symbol
    zero = Symbol.zero(1)
    checks = []

    checks.append(
        Check(
            "two-term bracket of (H, Q1) vanishes",
            aleksandrov_bracket(mech.jet(), q1.jet()).is_zero(),
        )
    )
    checks.append(
        Check(
            "qc bracket (H, Q1) = (q2, 0)",
            qc_bracket(mech, q1) == JetObservable(q2, zero),
        )
    )
    checks.append(
        Check(
            "qc bracket (H, Q2) = (-q1, 0)",
            qc_bracket(mech, q2) == JetObservable(-q1, zero),
        )
    )
    checks.append(
        Check(
            "qc bracket (H, P1) = jet of mechanised p2",
            qc_bracket(mech, mech_p1) == mech_p2.jet()
            and mech_p2.jet() == JetObservable(p2, p2.scale(-1 / RF_H1)),
        )
    )
    checks.append(
        Check(
            "qc bracket (H, P2) = minus jet of mechanised p1",
            qc_bracket(mech, mech_p2) == -mech_p1.jet()
            and mech_p1.jet() == JetObservable(zero, p1.scale(1 / RF_H1)),
        )
    )
    checks.append(
        Check(
            "analytic third term of (H, Q1) is q2",
            qc_third_term(mech, q1) == q2,
        )
    )

    try:
        qc_bracket(q1, p1)
        pole_ok = False
    except PoleAtClassicalLimit:
        pole_ok = True
    checks.append(Check("pole detected for bare (q1, p1)", pole_ok))

    rng = random.Random(seed)
    ok = True
    for _ in range(jacobi_count):
        a = mechanise_universal(random_symbol(rng, max_degree=3, classical=True)).symbol
        b = mechanise_universal(random_symbol(rng, max_degree=3, classical=True)).symbol
        c = mechanise_universal(random_symbol(rng, max_degree=3, classical=True)).symbol
        cyc = (
            universal_bracket(universal_bracket(a, b), c)
            + universal_bracket(universal_bracket(b, c), a)
            + universal_bracket(universal_bracket(c, a), b)
        )
        ok &= cyc.jet().is_zero()
    checks.append(
        Check(f"qc Jacobi via jets on {jacobi_count} mechanised triples", bool(ok))
    )
    return checks


# -- suite registry ----------------------------------------------------------

SUITES = {
    "canonical": check_canonical,
    "lemma1": check_lemma_suite,
    "poisson-limit": check_poisson_limit,
    "star-oracle": check_star_oracle,
    "rotation": check_rotation,
    "qc-example": check_qc_example,
}


def run_suite(name: str, emit=print) -> bool:
    """Run one suite (or 'all'); emit one line per check, return success."""
    names = list(SUITES) if name == "all" else [name]
    passed = True
    for suite_name in names:
        for check in SUITES[suite_name]():
            status = "ok  " if check.ok else "FAIL"
            detail = f" ({check.detail})" if check.detail else ""
            emit(f"{status} [{suite_name}] {check.name}{detail}")
            passed &= check.ok
    return passed
